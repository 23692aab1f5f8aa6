//! Declarative run configuration: a line-oriented `key = value` format
//! with `[section]` headers, `#` comments, and strict validation (unknown
//! keys are rejected, radii must strictly increase, peripheral words must
//! parse in the configured group).
//!
//! ```text
//! [group]
//! family = abelian        # free | abelian | surface | direct | freeprod
//! rank = 2                # genus = g for surface, factors = free:1|free:1 for products
//!
//! [peripherals]
//! axis = cyclic:a         # cyclic:<word>  factor:<index>  full
//!
//! [space]
//! kind = coned            # ball | coned | cusped | horoball
//! radii = 2,3,4,5
//! depth = 3               # cusped only; default ceil(log2 R) + 1
//!
//! [analysis]
//! delta = on
//! policy = exhaustive     # or sampled:100000
//! margin = 0              # optional inner-margin override
//! bcp = on
//! lambda = 1              # rationals allowed: 3/2; lists allowed: 1,2
//! boundary = on
//! epsilon = ln2
//!
//! [output]
//! dir = out
//! graph_formats = csv
//! seed = 42
//! ```
//!
//! Words use generator letters with `'` for inverses and `[x,y]` for
//! commutators (`aba'b'` = `[a,b]`).

use crate::analysis::DeltaPolicy;
use crate::error::{Error, Result};
use crate::pipeline::PolicyChoice;
use crate::graph::ExportFormat;
use crate::words::{Family, GroupOracle, PeripheralFamily, PeripheralSpec};
use std::fmt::Write as _;
use std::path::PathBuf;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpaceKind {
    Ball,
    Coned,
    Cusped,
    /// Standalone horoball metric check over path graphs.
    Horoball,
}

impl SpaceKind {
    pub fn name(self) -> &'static str {
        match self {
            SpaceKind::Ball => "ball",
            SpaceKind::Coned => "coned",
            SpaceKind::Cusped => "cusped",
            SpaceKind::Horoball => "horoball",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PeripheralDecl {
    Cyclic { label: String, word: String },
    Factor { label: String, index: usize },
    Full { label: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolicySpec {
    Exhaustive,
    Sampled(u64),
    /// Exhaustive when the eligible set fits the cap, else sampled.
    Auto(u64),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct AnalysisToggles {
    pub delta: bool,
    pub bcp: bool,
    pub fineness: bool,
    pub boundary: bool,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub family: Family,
    pub peripherals: Vec<PeripheralDecl>,
    pub space: SpaceKind,
    pub radii: Vec<u32>,
    pub depth: Option<u32>,
    pub path_lengths: Vec<u32>,
    pub analyses: AnalysisToggles,
    pub policy: PolicySpec,
    pub margin: Option<u32>,
    pub lambdas: Vec<(u32, u32)>,
    pub allow_large_lambda: bool,
    pub bcp_budget: u64,
    pub fineness_max: u32,
    pub epsilon: f64,
    pub seed: u64,
    pub cap: usize,
    pub out_dir: Option<PathBuf>,
    pub graph_formats: Vec<ExportFormat>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            family: Family::Free { rank: 2 },
            peripherals: Vec::new(),
            space: SpaceKind::Ball,
            radii: vec![2, 3, 4],
            depth: None,
            path_lengths: vec![2, 4, 8, 16],
            analyses: AnalysisToggles::default(),
            policy: PolicySpec::Auto(100_000),
            margin: None,
            lambdas: vec![(1, 1), (2, 1)],
            allow_large_lambda: false,
            bcp_budget: 1_000_000,
            fineness_max: 6,
            epsilon: std::f64::consts::LN_2,
            seed: 42,
            cap: crate::DEFAULT_VERTEX_CAP,
            out_dir: None,
            graph_formats: vec![ExportFormat::Csv],
        }
    }
}

impl RunConfig {
    pub fn oracle(&self) -> Result<GroupOracle> {
        GroupOracle::new(self.family.clone())
    }

    pub fn peripheral_family(&self, oracle: &GroupOracle) -> Result<PeripheralFamily> {
        let mut specs = Vec::new();
        for decl in &self.peripherals {
            let spec = match decl {
                PeripheralDecl::Cyclic { label, word } => {
                    let w = oracle.alphabet().parse_word(word).map_err(|e| {
                        Error::config(format!("peripherals.{label}: {e}"))
                    })?;
                    PeripheralSpec::cyclic(label.clone(), w)
                }
                PeripheralDecl::Factor { label, index } => {
                    PeripheralSpec::factor(label.clone(), *index)
                }
                PeripheralDecl::Full { label } => PeripheralSpec::full(label.clone()),
            };
            specs.push(spec);
        }
        let fam = PeripheralFamily::new(specs)?;
        fam.validate(oracle)?;
        Ok(fam)
    }

    pub fn policy_choice(&self) -> PolicyChoice {
        match self.policy {
            PolicySpec::Exhaustive => PolicyChoice::Fixed(DeltaPolicy::Exhaustive),
            PolicySpec::Sampled(count) => {
                PolicyChoice::Fixed(DeltaPolicy::Sampled { count, seed: self.seed })
            }
            PolicySpec::Auto(count) => PolicyChoice::Auto { count, seed: self.seed },
        }
    }

    /// Length cap for quasigeodesic enumeration: λ · (largest radius),
    /// rounded up, so the cap never binds for in-ball endpoint pairs.
    pub fn bcp_max_len(&self) -> u32 {
        let r = *self.radii.last().unwrap_or(&4);
        let (num, den) = self.lambdas.iter().copied().max().unwrap_or((2, 1));
        (num * r).div_ceil(den).max(1)
    }

    /// The full effective configuration, re-serialized canonically. Parsing
    /// this text reproduces the config.
    pub fn canonical_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "[group]");
        match &self.family {
            Family::Free { rank } => {
                let _ = writeln!(s, "family = free\nrank = {rank}");
            }
            Family::FreeAbelian { rank } => {
                let _ = writeln!(s, "family = abelian\nrank = {rank}");
            }
            Family::Surface { genus } => {
                let _ = writeln!(s, "family = surface\ngenus = {genus}");
            }
            Family::DirectProduct(fs) => {
                let _ = writeln!(s, "family = direct\nfactors = {}", factors_text(fs));
            }
            Family::FreeProduct(fs) => {
                let _ = writeln!(s, "family = freeprod\nfactors = {}", factors_text(fs));
            }
        }
        let _ = writeln!(s, "\n[peripherals]");
        for p in &self.peripherals {
            match p {
                PeripheralDecl::Cyclic { label, word } => {
                    let _ = writeln!(s, "{label} = cyclic:{word}");
                }
                PeripheralDecl::Factor { label, index } => {
                    let _ = writeln!(s, "{label} = factor:{index}");
                }
                PeripheralDecl::Full { label } => {
                    let _ = writeln!(s, "{label} = full");
                }
            }
        }
        let _ = writeln!(s, "\n[space]\nkind = {}", self.space.name());
        let _ = writeln!(s, "radii = {}", join_nums(&self.radii));
        if let Some(d) = self.depth {
            let _ = writeln!(s, "depth = {d}");
        }
        if self.space == SpaceKind::Horoball {
            let _ = writeln!(s, "path_lengths = {}", join_nums(&self.path_lengths));
        }
        let _ = writeln!(s, "\n[analysis]");
        let _ = writeln!(s, "delta = {}", onoff(self.analyses.delta));
        let _ = writeln!(
            s,
            "policy = {}",
            match self.policy {
                PolicySpec::Exhaustive => "exhaustive".to_string(),
                PolicySpec::Sampled(n) => format!("sampled:{n}"),
                PolicySpec::Auto(n) => format!("auto:{n}"),
            }
        );
        if let Some(m) = self.margin {
            let _ = writeln!(s, "margin = {m}");
        }
        let _ = writeln!(s, "bcp = {}", onoff(self.analyses.bcp));
        let lams: Vec<String> = self
            .lambdas
            .iter()
            .map(|&(n, d)| if d == 1 { n.to_string() } else { format!("{n}/{d}") })
            .collect();
        let _ = writeln!(s, "lambda = {}", lams.join(","));
        if self.allow_large_lambda {
            let _ = writeln!(s, "allow_large_lambda = on");
        }
        let _ = writeln!(s, "bcp_budget = {}", self.bcp_budget);
        let _ = writeln!(s, "fineness = {}", onoff(self.analyses.fineness));
        let _ = writeln!(s, "fineness_n = {}", self.fineness_max);
        let _ = writeln!(s, "boundary = {}", onoff(self.analyses.boundary));
        let _ = writeln!(s, "epsilon = {}", self.epsilon);
        let _ = writeln!(s, "\n[output]");
        if let Some(dir) = &self.out_dir {
            let _ = writeln!(s, "dir = {}", dir.display());
        }
        let fmts: Vec<&str> = self
            .graph_formats
            .iter()
            .map(|f| match f {
                ExportFormat::Dot => "dot",
                ExportFormat::Json => "json",
                ExportFormat::Csv => "csv",
            })
            .collect();
        let _ = writeln!(s, "graph_formats = {}", fmts.join(","));
        let _ = writeln!(s, "seed = {}", self.seed);
        let _ = writeln!(s, "cap = {}", self.cap);
        s
    }
}

fn factors_text(fs: &[Family]) -> String {
    fs.iter()
        .map(|f| match f {
            Family::Free { rank } => format!("free:{rank}"),
            Family::FreeAbelian { rank } => format!("abelian:{rank}"),
            Family::Surface { genus } => format!("surface:{genus}"),
            _ => "nested".to_string(),
        })
        .collect::<Vec<_>>()
        .join("|")
}

fn join_nums(v: &[u32]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn onoff(b: bool) -> &'static str {
    if b {
        "on"
    } else {
        "off"
    }
}

/// Parse and validate a config. Syntax errors carry line numbers;
/// semantic errors carry the offending key path.
pub fn parse_config(text: &str) -> Result<RunConfig> {
    let mut cfg = RunConfig { lambdas: Vec::new(), ..RunConfig::default() };
    cfg.peripherals.clear();
    cfg.radii.clear();

    let mut family_name: Option<String> = None;
    let mut rank: Option<usize> = None;
    let mut genus: Option<usize> = None;
    let mut factors: Option<Vec<Family>> = None;
    let mut section = String::new();

    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let at = |msg: String| Error::config(format!("line {}: {msg}", lineno + 1));
        if let Some(rest) = line.strip_prefix('[') {
            let name = rest
                .strip_suffix(']')
                .ok_or_else(|| at("unterminated section header".to_string()))?;
            match name {
                "group" | "peripherals" | "space" | "analysis" | "output" => {
                    section = name.to_string();
                }
                other => return Err(at(format!("unknown section [{other}]"))),
            }
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .map(|(k, v)| (k.trim(), v.trim()))
            .ok_or_else(|| at("expected key = value".to_string()))?;
        if key.is_empty() || value.is_empty() {
            return Err(at("expected key = value".to_string()));
        }
        match section.as_str() {
            "group" => match key {
                "family" => family_name = Some(value.to_string()),
                "rank" => rank = Some(parse_num(value).map_err(|e| at(format!("rank: {e}")))?),
                "genus" => genus = Some(parse_num(value).map_err(|e| at(format!("genus: {e}")))?),
                "factors" => {
                    let mut fs = Vec::new();
                    for part in value.split('|') {
                        let (name, param) = part
                            .split_once(':')
                            .ok_or_else(|| at(format!("factors: expected family:param in {part:?}")))?;
                        let p: usize =
                            parse_num(param).map_err(|e| at(format!("factors: {e}")))?;
                        fs.push(match name.trim() {
                            "free" => Family::Free { rank: p },
                            "abelian" => Family::FreeAbelian { rank: p },
                            "surface" => Family::Surface { genus: p },
                            other => return Err(at(format!("factors: unknown family {other:?}"))),
                        });
                    }
                    factors = Some(fs);
                }
                other => return Err(at(format!("unknown key group.{other}"))),
            },
            "peripherals" => {
                let label = key.to_string();
                let decl = if value == "full" {
                    PeripheralDecl::Full { label }
                } else if let Some(word) = value.strip_prefix("cyclic:") {
                    PeripheralDecl::Cyclic { label, word: word.trim().to_string() }
                } else if let Some(idx) = value.strip_prefix("factor:") {
                    PeripheralDecl::Factor {
                        label,
                        index: parse_num(idx.trim())
                            .map_err(|e| at(format!("peripherals.{key}: {e}")))?,
                    }
                } else {
                    return Err(at(format!(
                        "peripherals.{key}: expected cyclic:<word>, factor:<index>, or full"
                    )));
                };
                cfg.peripherals.push(decl);
            }
            "space" => match key {
                "kind" => {
                    cfg.space = match value {
                        "ball" => SpaceKind::Ball,
                        "coned" => SpaceKind::Coned,
                        "cusped" => SpaceKind::Cusped,
                        "horoball" => SpaceKind::Horoball,
                        other => return Err(at(format!("unknown space kind {other:?}"))),
                    }
                }
                "radii" => {
                    cfg.radii = parse_num_list(value).map_err(|e| at(format!("radii: {e}")))?
                }
                "depth" => {
                    cfg.depth = Some(parse_num(value).map_err(|e| at(format!("depth: {e}")))?)
                }
                "path_lengths" => {
                    cfg.path_lengths =
                        parse_num_list(value).map_err(|e| at(format!("path_lengths: {e}")))?
                }
                other => return Err(at(format!("unknown key space.{other}"))),
            },
            "analysis" => match key {
                "delta" => cfg.analyses.delta = parse_bool(value).map_err(|e| at(e))?,
                "bcp" => cfg.analyses.bcp = parse_bool(value).map_err(|e| at(e))?,
                "fineness" => cfg.analyses.fineness = parse_bool(value).map_err(|e| at(e))?,
                "boundary" => cfg.analyses.boundary = parse_bool(value).map_err(|e| at(e))?,
                "policy" => {
                    cfg.policy = if value == "exhaustive" {
                        PolicySpec::Exhaustive
                    } else if value == "auto" {
                        PolicySpec::Auto(100_000)
                    } else if let Some(n) = value.strip_prefix("sampled:") {
                        PolicySpec::Sampled(
                            parse_num(n.trim()).map_err(|e| at(format!("policy: {e}")))?,
                        )
                    } else if let Some(n) = value.strip_prefix("auto:") {
                        PolicySpec::Auto(
                            parse_num(n.trim()).map_err(|e| at(format!("policy: {e}")))?,
                        )
                    } else {
                        return Err(at(format!(
                            "policy: expected exhaustive, auto[:n], or sampled:<count>, got {value:?}"
                        )));
                    }
                }
                "margin" => {
                    cfg.margin = Some(parse_num(value).map_err(|e| at(format!("margin: {e}")))?)
                }
                "lambda" => {
                    let mut lams = Vec::new();
                    for part in value.split(',') {
                        lams.push(parse_lambda(part.trim()).map_err(|e| at(format!("lambda: {e}")))?);
                    }
                    cfg.lambdas = lams;
                }
                "allow_large_lambda" => {
                    cfg.allow_large_lambda = parse_bool(value).map_err(|e| at(e))?
                }
                "bcp_budget" => {
                    cfg.bcp_budget =
                        parse_num(value).map_err(|e| at(format!("bcp_budget: {e}")))?
                }
                "fineness_n" => {
                    cfg.fineness_max =
                        parse_num(value).map_err(|e| at(format!("fineness_n: {e}")))?
                }
                "epsilon" => {
                    cfg.epsilon = if value == "ln2" {
                        std::f64::consts::LN_2
                    } else {
                        value
                            .parse::<f64>()
                            .map_err(|_| at(format!("epsilon: bad number {value:?}")))?
                    }
                }
                other => return Err(at(format!("unknown key analysis.{other}"))),
            },
            "output" => match key {
                "dir" => cfg.out_dir = Some(PathBuf::from(value)),
                "graph_formats" => {
                    let mut fmts = Vec::new();
                    for part in value.split(',') {
                        fmts.push(
                            part.trim()
                                .parse::<ExportFormat>()
                                .map_err(|e| at(format!("graph_formats: {e}")))?,
                        );
                    }
                    cfg.graph_formats = fmts;
                }
                "seed" => cfg.seed = parse_num(value).map_err(|e| at(format!("seed: {e}")))?,
                "cap" => cfg.cap = parse_num(value).map_err(|e| at(format!("cap: {e}")))?,
                other => return Err(at(format!("unknown key output.{other}"))),
            },
            "" => return Err(at("key outside any [section]".to_string())),
            _ => unreachable!("validated section"),
        }
    }

    cfg.family = match family_name.as_deref() {
        None | Some("free") => Family::Free { rank: rank.unwrap_or(2) },
        Some("abelian") => Family::FreeAbelian { rank: rank.unwrap_or(2) },
        Some("surface") => Family::Surface { genus: genus.unwrap_or(2) },
        Some("direct") => Family::DirectProduct(
            factors.ok_or_else(|| Error::config("group.factors required for direct products"))?,
        ),
        Some("freeprod") => Family::FreeProduct(
            factors.ok_or_else(|| Error::config("group.factors required for free products"))?,
        ),
        Some(other) => return Err(Error::config(format!("unknown family {other:?}"))),
    };
    if cfg.lambdas.is_empty() {
        cfg.lambdas = vec![(1, 1), (2, 1)];
    }
    if cfg.radii.is_empty() {
        cfg.radii = vec![2, 3, 4];
    }
    validate(&cfg)?;
    Ok(cfg)
}

fn validate(cfg: &RunConfig) -> Result<()> {
    crate::pipeline::check_radii(&cfg.radii)?;
    for &(num, den) in &cfg.lambdas {
        if den == 0 || num < den {
            return Err(Error::config(format!("lambda {num}/{den} must be >= 1")));
        }
        if num > 2 * den && !cfg.allow_large_lambda {
            return Err(Error::config(format!(
                "lambda {num}/{den} > 2 explodes combinatorially; set allow_large_lambda = on to proceed"
            )));
        }
    }
    if !(cfg.epsilon > 0.0) {
        return Err(Error::config("epsilon must be positive"));
    }
    if cfg.space == SpaceKind::Horoball && cfg.path_lengths.is_empty() {
        return Err(Error::config("horoball check needs path_lengths"));
    }
    // semantic validation of the group/peripheral combination
    let oracle = cfg.oracle()?;
    cfg.peripheral_family(&oracle)?;
    Ok(())
}

fn parse_num<T: std::str::FromStr>(s: &str) -> std::result::Result<T, String> {
    s.parse::<T>().map_err(|_| format!("bad number {s:?}"))
}

fn parse_num_list(s: &str) -> std::result::Result<Vec<u32>, String> {
    s.split(',').map(|p| parse_num(p.trim())).collect()
}

fn parse_bool(s: &str) -> std::result::Result<bool, String> {
    match s {
        "on" | "true" | "yes" => Ok(true),
        "off" | "false" | "no" => Ok(false),
        other => Err(format!("expected on/off, got {other:?}")),
    }
}

fn parse_lambda(s: &str) -> std::result::Result<(u32, u32), String> {
    if let Some((n, d)) = s.split_once('/') {
        Ok((parse_num(n.trim())?, parse_num(d.trim())?))
    } else {
        Ok((parse_num(s)?, 1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_config_fills_defaults() {
        let cfg = parse_config(
            "[group]\nfamily = free\nrank = 2\n\n[space]\nkind = ball\nradii = 2,3,4\n",
        )
        .unwrap();
        assert_eq!(cfg.family, Family::Free { rank: 2 });
        assert_eq!(cfg.radii, vec![2, 3, 4]);
        assert_eq!(cfg.epsilon, std::f64::consts::LN_2);
        assert_eq!(cfg.lambdas, vec![(1, 1), (2, 1)]);
        assert_eq!(cfg.cap, crate::DEFAULT_VERTEX_CAP);
    }

    #[test]
    fn commutator_peripheral_parses() {
        let cfg = parse_config(
            "[group]\nfamily = free\nrank = 2\n\n[peripherals]\ncommutator = cyclic:[a,b]\n\n[space]\nkind = coned\nradii = 2,3\n",
        )
        .unwrap();
        let oracle = cfg.oracle().unwrap();
        let fam = cfg.peripheral_family(&oracle).unwrap();
        assert_eq!(fam.len(), 1);
    }

    #[test]
    fn non_increasing_radii_are_rejected() {
        let err = parse_config("[space]\nkind = ball\nradii = 3,2\n").unwrap_err();
        assert!(err.to_string().contains("increasing"));
    }

    #[test]
    fn unknown_keys_are_rejected_with_line_numbers() {
        let err = parse_config("[space]\nkindd = ball\n").unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("line 2"), "{msg}");
        assert!(msg.contains("kindd"), "{msg}");
    }

    #[test]
    fn bad_peripheral_word_is_a_semantic_error_with_key_path() {
        let err = parse_config(
            "[group]\nfamily = free\nrank = 2\n\n[peripherals]\nbad = cyclic:xy\n\n[space]\nkind = coned\nradii = 2,3\n",
        )
        .unwrap_err();
        assert!(err.to_string().contains("peripherals.bad"), "{err}");
    }

    #[test]
    fn large_lambda_is_gated() {
        let err = parse_config("[analysis]\nlambda = 3\n").unwrap_err();
        assert!(err.to_string().contains("allow_large_lambda"));
        let ok = parse_config("[analysis]\nlambda = 3\nallow_large_lambda = on\n");
        assert!(ok.is_ok());
        let half = parse_config("[analysis]\nlambda = 3/2\n").unwrap();
        assert_eq!(half.lambdas, vec![(3, 2)]);
    }

    #[test]
    fn canonical_text_round_trips() {
        let cfg = parse_config(
            "[group]\nfamily = abelian\nrank = 2\n\n[peripherals]\naxis = cyclic:a\n\n[space]\nkind = coned\nradii = 2,3,4,5\n\n[analysis]\ndelta = on\npolicy = exhaustive\nmargin = 0\nbcp = on\nlambda = 1\n\n[output]\nseed = 7\n",
        )
        .unwrap();
        let text = cfg.canonical_text();
        let back = parse_config(&text).unwrap();
        assert_eq!(back.canonical_text(), text);
        assert_eq!(back.radii, cfg.radii);
        assert_eq!(back.seed, 7);
        assert_eq!(back.margin, Some(0));
    }

    #[test]
    fn product_families_parse() {
        let cfg = parse_config(
            "[group]\nfamily = direct\nfactors = free:1|abelian:2\n\n[space]\nkind = ball\nradii = 2,3\n",
        )
        .unwrap();
        assert_eq!(
            cfg.family,
            Family::DirectProduct(vec![Family::Free { rank: 1 }, Family::FreeAbelian { rank: 2 }])
        );
    }

    #[test]
    fn horoball_kind_requires_path_lengths() {
        let ok = parse_config("[space]\nkind = horoball\nradii = 2,3\npath_lengths = 2,4,8,16\ndepth = 4\n");
        assert!(ok.is_ok());
    }
}
