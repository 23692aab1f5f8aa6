//! Space construction and analysis orchestration: build a ball, coned, or
//! cusped space at one or more radii, pick the sampling-eligible vertex
//! set, run the requested analyses, and write deterministic outputs with a
//! content-digest manifest.

use crate::analysis::{self, DeltaPolicy, DeltaScan};
use crate::bcp::{self, BcpScan};
use crate::boundary::{self, BoundarySample};
use crate::cayley::{build_ball_capped, BallIndex};
use crate::config::{AnalysisToggles, RunConfig, SpaceKind};
use crate::coning::{cone_off, ConedGraph};
use crate::cusping::{build_cusped, build_horoball, default_depth, horoball_path_distance, CuspedGraph};
use crate::error::{Error, Result};
use crate::graph::{export_graph, ExportFormat, MetricGraph, VertexTag};
use crate::words::{GroupOracle, PeripheralFamily, Word};
use serde::Serialize;
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

/// One constructed space at one radius.
pub struct BuiltSpace {
    pub radius: u32,
    pub index: BallIndex,
    pub ball: MetricGraph,
    pub data: SpaceData,
}

pub enum SpaceData {
    Ball,
    Coned(ConedGraph),
    Cusped(CuspedGraph),
}

impl BuiltSpace {
    /// The space itself (ball, coned, or cusped graph).
    pub fn graph(&self) -> &MetricGraph {
        match &self.data {
            SpaceData::Ball => &self.ball,
            SpaceData::Coned(c) => &c.coned,
            SpaceData::Cusped(c) => &c.graph,
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match &self.data {
            SpaceData::Ball => "ball",
            SpaceData::Coned(_) => "coned",
            SpaceData::Cusped(_) => "cusped",
        }
    }
}

/// Build one space. `depth` applies to cusped spaces only; `None` uses
/// the default ⌈log₂ R⌉ + 1.
pub fn build_space(
    oracle: &GroupOracle,
    fam: &PeripheralFamily,
    kind: SpaceKind,
    radius: u32,
    depth: Option<u32>,
    cap: usize,
) -> Result<BuiltSpace> {
    let (ball, index) = build_ball_capped(oracle, radius, cap)?;
    let data = match kind {
        SpaceKind::Ball => SpaceData::Ball,
        SpaceKind::Coned => SpaceData::Coned(cone_off(&ball, &index, oracle, fam)?),
        SpaceKind::Cusped => {
            let k = depth.unwrap_or_else(|| default_depth(radius));
            SpaceData::Cusped(build_cusped(&ball, &index, oracle, fam, k)?)
        }
        SpaceKind::Horoball => {
            return Err(Error::config(
                "horoball checks run through run_pipeline, not build_space",
            ))
        }
    };
    Ok(BuiltSpace { radius, index, ball, data })
}

/// Default inner sampling margin per space kind. Ball geodesics of the
/// built-in families stay inside balls, so plain balls sample everywhere;
/// coned and cusped spaces keep a safety margin against truncation bias.
pub fn default_margin(kind: SpaceKind) -> u32 {
    match kind {
        SpaceKind::Ball | SpaceKind::Horoball => 0,
        SpaceKind::Coned => 2,
        SpaceKind::Cusped => 1,
    }
}

/// Sampling-eligible vertices: group vertices of word length ≤ R − margin,
/// cone vertices whose coset meets that inner ball, and horoball vertices
/// over an inner-ball base vertex (any depth).
pub fn eligible_vertices(space: &MetricGraph, radius: u32, margin: u32) -> Vec<u32> {
    let inner = radius.saturating_sub(margin) as usize;
    let mut out = Vec::new();
    for v in 0..space.vertex_count() as u32 {
        let ok = match space.tag(v) {
            VertexTag::Group { word } => word.len() <= inner,
            VertexTag::Horo { base, .. } => base.len() <= inner,
            VertexTag::Cone { .. } => space.neighbors(v).iter().any(|&(m, _)| {
                matches!(space.tag(m), VertexTag::Group { word } if word.len() <= inner)
            }),
        };
        if ok {
            out.push(v);
        }
    }
    out
}

/// Per-radius δ policy: fixed, or exhaustive whenever the eligible set
/// fits the exhaustive cap with a sampled fallback beyond it.
#[derive(Clone, Copy, Debug)]
pub enum PolicyChoice {
    Fixed(DeltaPolicy),
    Auto { count: u64, seed: u64 },
}

impl PolicyChoice {
    fn resolve(self, eligible: usize) -> DeltaPolicy {
        match self {
            PolicyChoice::Fixed(p) => p,
            PolicyChoice::Auto { count, seed } => {
                if eligible <= analysis::EXHAUSTIVE_CAP {
                    DeltaPolicy::Exhaustive
                } else {
                    DeltaPolicy::Sampled { count, seed }
                }
            }
        }
    }
}

/// δ scan across radii for one space family.
pub fn delta_scan(
    oracle: &GroupOracle,
    fam: &PeripheralFamily,
    kind: SpaceKind,
    radii: &[u32],
    depth: Option<u32>,
    policy: PolicyChoice,
    margin: Option<u32>,
    cap: usize,
) -> Result<DeltaScan> {
    check_radii(radii)?;
    let margin = margin.unwrap_or_else(|| default_margin(kind));
    let mut reports = Vec::new();
    for &r in radii {
        let space = build_space(oracle, fam, kind, r, depth, cap)?;
        let graph = space.graph();
        let matrix = graph.all_pairs(cap)?;
        let eligible = eligible_vertices(graph, r, margin);
        let resolved = policy.resolve(eligible.len());
        reports.push(analysis::measure_delta(graph, &matrix, &eligible, resolved, r, margin)?);
    }
    DeltaScan::from_reports(reports)
}

pub fn check_radii(radii: &[u32]) -> Result<()> {
    if radii.is_empty() {
        return Err(Error::config("radii list is empty"));
    }
    if radii.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::config(format!("radii must be strictly increasing, got {radii:?}")));
    }
    Ok(())
}

/// Fineness scan: circuit counts through the identity-coset cone edge of
/// each peripheral, across radii.
#[derive(Clone, Debug, Serialize)]
pub struct FinenessScan {
    pub max_paper: u32,
    pub per_radius: Vec<FinenessRadius>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FinenessRadius {
    pub radius: u32,
    /// (peripheral label, circuits of paper length ≤ max through the cone
    /// edge at the identity's coset)
    pub counts: Vec<(String, u64)>,
}

pub fn fineness_scan(
    oracle: &GroupOracle,
    fam: &PeripheralFamily,
    radii: &[u32],
    max_paper: u32,
    cap: usize,
) -> Result<FinenessScan> {
    check_radii(radii)?;
    if fam.is_empty() {
        return Err(Error::config("fineness scan needs at least one peripheral"));
    }
    let mut per_radius = Vec::new();
    for &r in radii {
        let space = build_space(oracle, fam, SpaceKind::Coned, r, None, cap)?;
        let coned = match &space.data {
            SpaceData::Coned(c) => c,
            _ => unreachable!(),
        };
        let identity = 0u32;
        let mut counts = Vec::new();
        for spec in fam.iter() {
            let key = spec.coset_key(oracle, &Word::empty())?;
            let cone = coned
                .cone_vertex(&spec.label, &key)
                .ok_or_else(|| Error::input("identity coset has no cone vertex"))?;
            let profile = analysis::fineness_profile(&coned.coned, &[(identity, cone)], max_paper)?;
            counts.push((spec.label.clone(), profile.entries[0].cumulative_paper(max_paper)));
        }
        per_radius.push(FinenessRadius { radius: r, counts });
    }
    Ok(FinenessScan { max_paper, per_radius })
}

/// BCP scan across radii (single-peripheral families; see `bcp`).
pub fn bcp_scan(
    oracle: &GroupOracle,
    fam: &PeripheralFamily,
    radii: &[u32],
    lambda: (u32, u32),
    max_paper_len: u32,
    budget: u64,
    cap: usize,
) -> Result<BcpScan> {
    check_radii(radii)?;
    let mut per_radius = Vec::new();
    for &r in radii {
        let space = build_space(oracle, fam, SpaceKind::Coned, r, None, cap)?;
        let coned = match &space.data {
            SpaceData::Coned(c) => c,
            _ => unreachable!(),
        };
        per_radius.push(bcp::bcp_radius_stats(
            coned,
            &space.index,
            oracle,
            fam,
            lambda,
            max_paper_len,
            budget,
            r,
            cap,
        )?);
    }
    bcp::assemble_scan(per_radius)
}

/// Boundary sample of one space at one radius.
pub fn boundary_sample(
    oracle: &GroupOracle,
    fam: &PeripheralFamily,
    kind: SpaceKind,
    radius: u32,
    depth: Option<u32>,
    epsilon: f64,
    cap: usize,
) -> Result<BoundarySample> {
    let space = build_space(oracle, fam, kind, radius, depth, cap)?;
    let graph = space.graph();
    let matrix = graph.all_pairs(cap)?;
    let sphere: Vec<u32> = space.index.sphere(radius)?.to_vec();
    boundary::sample_boundary(graph, &matrix, 0, &sphere, radius, epsilon)
}

/// Result of the circle-signal check on a boundary sample.
#[derive(Clone, Debug, Serialize)]
pub struct CircleCheck {
    pub cluster_count: usize,
    pub cluster_edge_count: usize,
    pub parabolic_points: usize,
    /// The raw cluster adjacency alone (an arc when a junction sits at the
    /// basepoint's own coset).
    pub raw_single_cycle: bool,
    pub raw_single_path: bool,
    /// Single cycle after restoring the omitted parabolic points.
    pub completed_single_cycle: bool,
}

/// Check the circle signal of a space's boundary sample at a calibrated
/// pair of thresholds: cluster the sphere in the visual metric, form the
/// cluster adjacency, restore one formal vertex per multi-armed
/// peripheral coset, and test for a single cycle.
pub fn boundary_circle_check(
    oracle: &GroupOracle,
    fam: &PeripheralFamily,
    kind: SpaceKind,
    radius: u32,
    depth: Option<u32>,
    epsilon: f64,
    theta2_cluster: u32,
    theta2_adj: u32,
    cap: usize,
) -> Result<CircleCheck> {
    let space = build_space(oracle, fam, kind, radius, depth, cap)?;
    let graph = space.graph();
    let matrix = graph.all_pairs(cap)?;
    let sphere: Vec<u32> = space.index.sphere(radius)?.to_vec();
    let sample = boundary::sample_boundary(graph, &matrix, 0, &sphere, radius, epsilon)?;

    // sphere arms per peripheral coset
    let mut arms: BTreeMap<(String, Word), Vec<usize>> = BTreeMap::new();
    for (i, &v) in sphere.iter().enumerate() {
        let word = space.index.word(v);
        for spec in fam.iter() {
            let key = spec.coset_key(oracle, word)?;
            arms.entry((spec.label.clone(), key)).or_default().push(i);
        }
    }
    let coset_arms: Vec<Vec<usize>> = arms.into_values().collect();
    let completed = boundary::completed_adjacency(&sample, theta2_cluster, theta2_adj, &coset_arms);
    Ok(CircleCheck {
        cluster_count: completed.clusters.len(),
        cluster_edge_count: completed.cluster_edges.len(),
        parabolic_points: completed.parabolic_links.len(),
        raw_single_cycle: boundary::is_single_cycle(
            completed.clusters.len(),
            &completed.cluster_edges,
        ),
        raw_single_path: boundary::is_single_path(
            completed.clusters.len(),
            &completed.cluster_edges,
        ),
        completed_single_cycle: completed.is_single_cycle(),
    })
}

/// Everything `run_pipeline` writes for one config: file names mapped to
/// byte contents, plus the manifest.
pub struct RunOutput {
    pub files: BTreeMap<String, Vec<u8>>,
    pub manifest: Manifest,
}

#[derive(Clone, Debug, Serialize)]
pub struct Manifest {
    pub tool: String,
    pub config: String,
    pub files: Vec<ManifestFile>,
    pub flags: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ManifestFile {
    pub path: String,
    pub bytes: usize,
    pub sha256: String,
}

fn digest(bytes: &[u8]) -> String {
    let mut h = Sha256::new();
    h.update(bytes);
    hex_string(&h.finalize())
}

fn hex_string(bytes: &[u8]) -> String {
    let mut s = String::with_capacity(bytes.len() * 2);
    for b in bytes {
        let _ = write!(s, "{b:02x}");
    }
    s
}

/// Execute a full configured run: build → analyses → exports. Returns all
/// artifacts in memory; `write_output` persists them.
pub fn run_pipeline(config: &RunConfig) -> Result<RunOutput> {
    let oracle = config.oracle()?;
    let fam = config.peripheral_family(&oracle)?;
    let mut files: BTreeMap<String, Vec<u8>> = BTreeMap::new();
    let mut flags: Vec<String> = Vec::new();

    if let SpaceKind::Horoball = config.space {
        // standalone horoball metric check over path graphs
        let mut report = String::from("paper_length,expected_paper,measured_paper\n");
        for &d in &config.path_lengths {
            let gamma = MetricGraph::path(d as usize);
            let h = build_horoball(&gamma, config.depth.unwrap_or(4))?;
            let measured = h.graph.distances_from(h.vertex(0, 0))?[h.vertex(d, 0) as usize];
            let expected = horoball_path_distance(d as u64, config.depth.unwrap_or(4));
            let _ = writeln!(report, "{d},{expected},{}", measured as f64 / 2.0);
            if measured as u64 != 2 * expected {
                flags.push(format!("horoball metric mismatch at path length {d}"));
            }
        }
        files.insert("horoball_metric.csv".to_string(), report.into_bytes());
        return finish_run(config, files, flags);
    }

    let kind = config.space;
    for &r in &config.radii {
        let space = build_space(&oracle, &fam, kind, r, config.depth, config.cap)?;
        for fmt in &config.graph_formats {
            let name = format!("{}_r{}.{}", space.kind_name(), r, format_ext(*fmt));
            files.insert(name, export_graph(space.graph(), *fmt).into_bytes());
        }
        if let SpaceData::Cusped(c) = &space.data {
            if c.horoballs.iter().any(|m| m.degenerate) {
                flags.push(format!("radius {r}: degenerate horoball (disconnected coset graph)"));
            }
        }
    }

    if config.analyses.delta {
        let scan = delta_scan(
            &oracle,
            &fam,
            kind,
            &config.radii,
            config.depth,
            config.policy_choice(),
            config.margin,
            config.cap,
        )?;
        files.insert(
            "delta_scan.json".to_string(),
            serde_json::to_vec_pretty(&scan).expect("serializable").into_iter().chain(*b"\n").collect(),
        );
        files.insert("delta_scan.csv".to_string(), delta_scan_csv(&scan).into_bytes());
        files.insert(
            "delta_scan.svg".to_string(),
            crate::plot::delta_chart(&scan).into_bytes(),
        );
    }

    if config.analyses.bcp {
        for &lambda in &config.lambdas {
            let scan = bcp_scan(
                &oracle,
                &fam,
                &config.radii,
                lambda,
                config.bcp_max_len(),
                config.bcp_budget,
                config.cap,
            )?;
            if scan.truncated {
                flags.push(format!(
                    "bcp at lambda {}/{}: enumeration budget exhausted; separations are lower bounds",
                    lambda.0, lambda.1
                ));
            }
            let name = if lambda.1 == 1 {
                format!("bcp_scan_l{}.json", lambda.0)
            } else {
                format!("bcp_scan_l{}_{}.json", lambda.0, lambda.1)
            };
            files.insert(
                name,
                serde_json::to_vec_pretty(&scan)
                    .expect("serializable")
                    .into_iter()
                    .chain(*b"\n")
                    .collect(),
            );
        }
    }

    if config.analyses.fineness {
        let scan = fineness_scan(&oracle, &fam, &config.radii, config.fineness_max, config.cap)?;
        files.insert(
            "fineness.json".to_string(),
            serde_json::to_vec_pretty(&scan).expect("serializable").into_iter().chain(*b"\n").collect(),
        );
    }

    if config.analyses.boundary {
        let r = *config.radii.last().expect("validated radii");
        let sample = boundary_sample(&oracle, &fam, kind, r, config.depth, config.epsilon, config.cap)?;
        files.insert("boundary.csv".to_string(), boundary::export_csv(&sample).into_bytes());
        files.insert("boundary.json".to_string(), boundary::export_json(&sample).into_bytes());
        files.insert(
            "boundary_heatmap.svg".to_string(),
            boundary::export_heatmap_svg(&sample).into_bytes(),
        );
        files.insert(
            "boundary_dendrogram.svg".to_string(),
            boundary::export_dendrogram_svg(&sample).into_bytes(),
        );
    }

    finish_run(config, files, flags)
}

fn finish_run(
    config: &RunConfig,
    files: BTreeMap<String, Vec<u8>>,
    flags: Vec<String>,
) -> Result<RunOutput> {
    let manifest = Manifest {
        tool: format!("relhyp {}", env!("CARGO_PKG_VERSION")),
        config: config.canonical_text(),
        files: files
            .iter()
            .map(|(path, bytes)| ManifestFile {
                path: path.clone(),
                bytes: bytes.len(),
                sha256: digest(bytes),
            })
            .collect(),
        flags,
    };
    Ok(RunOutput { files, manifest })
}

fn format_ext(fmt: ExportFormat) -> &'static str {
    match fmt {
        ExportFormat::Dot => "dot",
        ExportFormat::Json => "json",
        ExportFormat::Csv => "csv",
    }
}

fn delta_scan_csv(scan: &DeltaScan) -> String {
    let mut out = String::from(
        "radius,vertices,eligible,four_point_scaled,four_point_paper,slim_scaled,slim_paper\n",
    );
    for r in &scan.reports {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{}",
            r.radius,
            r.vertex_count,
            r.eligible_count,
            r.four_point_scaled(),
            r.four_point_paper(),
            r.slim_scaled,
            r.slim_paper()
        );
    }
    let _ = writeln!(out, "# four_point_verdict={}", scan.four_point_verdict);
    let _ = writeln!(out, "# slim_verdict={}", scan.slim_verdict);
    out
}

/// Write a run's artifacts plus `manifest.json` under `dir`.
pub fn write_output(out: &RunOutput, dir: &Path) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir)?;
    let mut written = Vec::new();
    for (name, bytes) in &out.files {
        let path = dir.join(name);
        std::fs::write(&path, bytes)?;
        written.push(path);
    }
    let manifest_path = dir.join("manifest.json");
    let mut manifest = serde_json::to_vec_pretty(&out.manifest).expect("serializable");
    manifest.push(b'\n');
    std::fs::write(&manifest_path, manifest)?;
    written.push(manifest_path);
    Ok(written)
}

/// Analysis toggles helper for subcommand-style callers.
pub fn toggles(delta: bool, bcp: bool, fineness: bool, boundary: bool) -> AnalysisToggles {
    AnalysisToggles { delta, bcp, fineness, boundary }
}
