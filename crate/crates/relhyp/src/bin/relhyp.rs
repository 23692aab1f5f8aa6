//! Thin command-line front end: every subcommand assembles a `RunConfig`
//! and hands it to the library pipeline.

use clap::{Args, Parser, Subcommand};
use relhyp::config::{parse_config, AnalysisToggles, PeripheralDecl, PolicySpec, RunConfig, SpaceKind};
use relhyp::error::{Error, Result};
use relhyp::graph::ExportFormat;
use relhyp::pipeline::{run_pipeline, write_output};
use relhyp::words::Family;
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "relhyp",
    version,
    about = "Build Cayley balls, coned-off and cusped Cayley graphs, and measure hyperbolicity, coset penetration, fineness, and boundary structure"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Output directory (overrides the RELHYP_OUT environment variable).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build a Cayley ball and export it.
    Ball(SpaceArgs),
    /// Build a coned-off Cayley graph and export it.
    Cone(SpaceArgs),
    /// Build a cusped Cayley graph and export it.
    Cusp(SpaceArgs),
    /// Four-point and slim-triangle δ scan across radii.
    Delta(ScanArgs),
    /// Bounded-coset-penetration scan across radii.
    Bcp(ScanArgs),
    /// Circuit counts through identity-coset cone edges across radii.
    Fineness(ScanArgs),
    /// Boundary sample of the largest radius: visual metric, dendrogram,
    /// heatmap.
    Boundary(ScanArgs),
    /// Execute a full config file.
    Run { config: PathBuf },
}

#[derive(Args)]
struct GroupArgs {
    /// Group family: free | abelian | surface | direct | freeprod.
    #[arg(long, default_value = "free")]
    family: String,
    #[arg(long, default_value_t = 2)]
    rank: usize,
    #[arg(long, default_value_t = 2)]
    genus: usize,
    /// Product factors, e.g. "free:1|abelian:2".
    #[arg(long)]
    factors: Option<String>,
    /// Peripheral subgroup, repeatable: "label=cyclic:<word>",
    /// "label=factor:<i>", or "label=full".
    #[arg(long = "peripheral")]
    peripherals: Vec<String>,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, default_value_t = relhyp::DEFAULT_VERTEX_CAP)]
    cap: usize,
}

#[derive(Args)]
struct SpaceArgs {
    #[command(flatten)]
    group: GroupArgs,
    #[arg(long, default_value_t = 3)]
    radius: u32,
    /// Horoball depth for cusped spaces; default ⌈log₂R⌉ + 1.
    #[arg(long)]
    depth: Option<u32>,
    /// Export formats: dot | json | csv (repeatable, comma-separated).
    #[arg(long, default_value = "csv", value_delimiter = ',')]
    export: Vec<String>,
}

#[derive(Args)]
struct ScanArgs {
    #[command(flatten)]
    group: GroupArgs,
    /// Space kind the analysis runs on: ball | coned | cusped.
    #[arg(long, default_value = "ball")]
    space: String,
    #[arg(long, default_value = "2,3,4", value_delimiter = ',')]
    radii: Vec<u32>,
    #[arg(long)]
    depth: Option<u32>,
    /// δ policy: exhaustive | auto[:n] | sampled:<n>.
    #[arg(long, default_value = "auto")]
    policy: String,
    /// Inner sampling margin override.
    #[arg(long)]
    margin: Option<u32>,
    /// λ values for bcp, e.g. "1" or "1,2" or "3/2".
    #[arg(long, default_value = "1,2", value_delimiter = ',')]
    lambda: Vec<String>,
    #[arg(long, default_value_t = 1_000_000)]
    bcp_budget: u64,
    /// Maximum circuit length (paper units) for fineness.
    #[arg(long, default_value_t = 6)]
    fineness_n: u32,
    /// Visual-metric scale; "ln2" or a float.
    #[arg(long, default_value = "ln2")]
    epsilon: String,
    #[arg(long, default_value = "csv", value_delimiter = ',')]
    export: Vec<String>,
}

fn family_of(g: &GroupArgs) -> Result<Family> {
    let factors = || -> Result<Vec<Family>> {
        let text = g
            .factors
            .as_deref()
            .ok_or_else(|| Error::config("--factors required for product families"))?;
        text.split('|')
            .map(|part| {
                let (name, param) = part
                    .split_once(':')
                    .ok_or_else(|| Error::config(format!("bad factor {part:?}")))?;
                let p: usize = param
                    .parse()
                    .map_err(|_| Error::config(format!("bad factor parameter {param:?}")))?;
                Ok(match name {
                    "free" => Family::Free { rank: p },
                    "abelian" => Family::FreeAbelian { rank: p },
                    "surface" => Family::Surface { genus: p },
                    other => return Err(Error::config(format!("unknown factor family {other:?}"))),
                })
            })
            .collect()
    };
    Ok(match g.family.as_str() {
        "free" => Family::Free { rank: g.rank },
        "abelian" => Family::FreeAbelian { rank: g.rank },
        "surface" => Family::Surface { genus: g.genus },
        "direct" => Family::DirectProduct(factors()?),
        "freeprod" => Family::FreeProduct(factors()?),
        other => return Err(Error::config(format!("unknown family {other:?}"))),
    })
}

fn peripherals_of(g: &GroupArgs) -> Result<Vec<PeripheralDecl>> {
    g.peripherals
        .iter()
        .map(|p| {
            let (label, spec) = p
                .split_once('=')
                .ok_or_else(|| Error::config(format!("peripheral {p:?}: expected label=kind")))?;
            let label = label.trim().to_string();
            let spec = spec.trim();
            if spec == "full" {
                Ok(PeripheralDecl::Full { label })
            } else if let Some(w) = spec.strip_prefix("cyclic:") {
                Ok(PeripheralDecl::Cyclic { label, word: w.trim().to_string() })
            } else if let Some(i) = spec.strip_prefix("factor:") {
                Ok(PeripheralDecl::Factor {
                    label,
                    index: i
                        .trim()
                        .parse()
                        .map_err(|_| Error::config(format!("bad factor index {i:?}")))?,
                })
            } else {
                Err(Error::config(format!(
                    "peripheral {label:?}: expected cyclic:<word>, factor:<index>, or full"
                )))
            }
        })
        .collect()
}

fn formats_of(names: &[String]) -> Result<Vec<ExportFormat>> {
    names.iter().map(|n| n.parse::<ExportFormat>()).collect()
}

fn space_kind(name: &str) -> Result<SpaceKind> {
    Ok(match name {
        "ball" => SpaceKind::Ball,
        "coned" => SpaceKind::Coned,
        "cusped" => SpaceKind::Cusped,
        other => return Err(Error::config(format!("unknown space kind {other:?}"))),
    })
}

fn policy_of(text: &str) -> Result<PolicySpec> {
    if text == "exhaustive" {
        Ok(PolicySpec::Exhaustive)
    } else if text == "auto" {
        Ok(PolicySpec::Auto(100_000))
    } else if let Some(n) = text.strip_prefix("auto:") {
        Ok(PolicySpec::Auto(n.parse().map_err(|_| Error::config("bad auto count"))?))
    } else if let Some(n) = text.strip_prefix("sampled:") {
        Ok(PolicySpec::Sampled(n.parse().map_err(|_| Error::config("bad sample count"))?))
    } else {
        Err(Error::config(format!("unknown policy {text:?}")))
    }
}

fn lambdas_of(texts: &[String]) -> Result<Vec<(u32, u32)>> {
    texts
        .iter()
        .map(|t| {
            if let Some((n, d)) = t.split_once('/') {
                Ok((
                    n.parse().map_err(|_| Error::config(format!("bad lambda {t:?}")))?,
                    d.parse().map_err(|_| Error::config(format!("bad lambda {t:?}")))?,
                ))
            } else {
                Ok((t.parse().map_err(|_| Error::config(format!("bad lambda {t:?}")))?, 1))
            }
        })
        .collect()
}

fn epsilon_of(text: &str) -> Result<f64> {
    if text == "ln2" {
        Ok(std::f64::consts::LN_2)
    } else {
        text.parse().map_err(|_| Error::config(format!("bad epsilon {text:?}")))
    }
}

fn space_config(args: &SpaceArgs, kind: SpaceKind) -> Result<RunConfig> {
    Ok(RunConfig {
        family: family_of(&args.group)?,
        peripherals: peripherals_of(&args.group)?,
        space: kind,
        radii: vec![args.radius],
        depth: args.depth,
        analyses: AnalysisToggles::default(),
        graph_formats: formats_of(&args.export)?,
        seed: args.group.seed,
        cap: args.group.cap,
        ..RunConfig::default()
    })
}

fn scan_config(args: &ScanArgs, toggles: AnalysisToggles) -> Result<RunConfig> {
    Ok(RunConfig {
        family: family_of(&args.group)?,
        peripherals: peripherals_of(&args.group)?,
        space: space_kind(&args.space)?,
        radii: args.radii.clone(),
        depth: args.depth,
        analyses: toggles,
        policy: policy_of(&args.policy)?,
        margin: args.margin,
        lambdas: lambdas_of(&args.lambda)?,
        bcp_budget: args.bcp_budget,
        fineness_max: args.fineness_n,
        epsilon: epsilon_of(&args.epsilon)?,
        graph_formats: formats_of(&args.export)?,
        seed: args.group.seed,
        cap: args.group.cap,
        ..RunConfig::default()
    })
}

fn out_dir(cli_out: &Option<PathBuf>, config: &RunConfig) -> PathBuf {
    cli_out
        .clone()
        .or_else(|| std::env::var_os("RELHYP_OUT").map(PathBuf::from))
        .or_else(|| config.out_dir.clone())
        .unwrap_or_else(|| PathBuf::from("out"))
}

fn execute(config: RunConfig, dir: PathBuf) -> Result<()> {
    let output = run_pipeline(&config)?;
    let written = write_output(&output, &dir)?;
    for path in &written {
        println!("wrote {}", path.display());
    }
    for flag in &output.manifest.flags {
        eprintln!("flagged: {flag}");
    }
    Ok(())
}

fn main() {
    let cli = Cli::parse();
    let result = (|| -> Result<()> {
        let toggles = |d, b, f, bd| AnalysisToggles { delta: d, bcp: b, fineness: f, boundary: bd };
        let (config, dir) = match &cli.cmd {
            Cmd::Ball(args) => {
                let c = space_config(args, SpaceKind::Ball)?;
                let d = out_dir(&cli.out, &c);
                (c, d)
            }
            Cmd::Cone(args) => {
                let c = space_config(args, SpaceKind::Coned)?;
                let d = out_dir(&cli.out, &c);
                (c, d)
            }
            Cmd::Cusp(args) => {
                let c = space_config(args, SpaceKind::Cusped)?;
                let d = out_dir(&cli.out, &c);
                (c, d)
            }
            Cmd::Delta(args) => {
                let c = scan_config(args, toggles(true, false, false, false))?;
                let d = out_dir(&cli.out, &c);
                (c, d)
            }
            Cmd::Bcp(args) => {
                let c = scan_config(args, toggles(false, true, false, false))?;
                let d = out_dir(&cli.out, &c);
                (c, d)
            }
            Cmd::Fineness(args) => {
                let c = scan_config(args, toggles(false, false, true, false))?;
                let d = out_dir(&cli.out, &c);
                (c, d)
            }
            Cmd::Boundary(args) => {
                let c = scan_config(args, toggles(false, false, false, true))?;
                let d = out_dir(&cli.out, &c);
                (c, d)
            }
            Cmd::Run { config } => {
                let text = std::fs::read_to_string(config)?;
                let c = parse_config(&text)?;
                let d = out_dir(&cli.out, &c);
                (c, d)
            }
        };
        execute(config, dir)
    })();
    if let Err(e) = result {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}
