//! Hyperbolicity measurement (four-point and slim-triangle δ), growth
//! verdicts across radii, and fineness profiling via circuit counts.
//!
//! Both δ statistics are computed on the scaled integer metric. The
//! four-point value is stored doubled (`four_point_x2`) so that
//! half-integers stay exact; reports expose scaled and paper-unit views.

use crate::error::{Error, Result};
use crate::graph::{DistanceMatrix, MetricGraph};
use crate::rng::{task_rng, Stream};
use rand::Rng;
use serde::Serialize;

/// Exhaustive δ scans are limited to this many eligible vertices.
pub const EXHAUSTIVE_CAP: usize = 120;

/// Fineness profiling is limited to this circuit length (paper units).
pub const FINENESS_CAP: u32 = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum DeltaPolicy {
    Exhaustive,
    Sampled { count: u64, seed: u64 },
}

impl DeltaPolicy {
    pub fn describe(&self) -> String {
        match self {
            DeltaPolicy::Exhaustive => "exhaustive".to_string(),
            DeltaPolicy::Sampled { count, seed } => format!("sampled({count}, seed {seed})"),
        }
    }
}

/// Hyperbolicity measurements of one space.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeltaReport {
    pub radius: u32,
    pub vertex_count: usize,
    pub eligible_count: usize,
    pub inner_margin: u32,
    pub policy: DeltaPolicy,
    /// Four-point δ in scaled units, doubled to stay integral.
    pub four_point_x2: u32,
    /// Slim-triangle δ in scaled units (an exact integer).
    pub slim_scaled: u32,
}

impl DeltaReport {
    pub fn four_point_scaled(&self) -> f64 {
        self.four_point_x2 as f64 / 2.0
    }

    pub fn four_point_paper(&self) -> f64 {
        self.four_point_x2 as f64 / 4.0
    }

    pub fn slim_paper(&self) -> f64 {
        self.slim_scaled as f64 / 2.0
    }
}

/// Four-point δ, doubled: max over vertex quadruples of (largest pairing
/// sum − second largest), where the pairings are d(w,x)+d(y,z),
/// d(w,y)+d(x,z), d(w,z)+d(x,y).
pub fn four_point_delta_x2(
    matrix: &DistanceMatrix,
    eligible: &[u32],
    policy: DeltaPolicy,
    radius: u32,
) -> Result<u32> {
    match policy {
        DeltaPolicy::Exhaustive => {
            if eligible.len() > EXHAUSTIVE_CAP {
                return Err(Error::resource(format!(
                    "exhaustive four-point scan over {} vertices exceeds the cap {EXHAUSTIVE_CAP}",
                    eligible.len()
                )));
            }
            let n = eligible.len();
            let mut best = 0u32;
            for i in 0..n {
                for j in i + 1..n {
                    let dij = matrix.get(eligible[i], eligible[j]) as u32;
                    for k in j + 1..n {
                        let dik = matrix.get(eligible[i], eligible[k]) as u32;
                        let djk = matrix.get(eligible[j], eligible[k]) as u32;
                        for l in k + 1..n {
                            let dil = matrix.get(eligible[i], eligible[l]) as u32;
                            let djl = matrix.get(eligible[j], eligible[l]) as u32;
                            let dkl = matrix.get(eligible[k], eligible[l]) as u32;
                            let q = quadruple_defect(dij + dkl, dik + djl, dil + djk);
                            if q > best {
                                best = q;
                            }
                        }
                    }
                }
            }
            Ok(best)
        }
        DeltaPolicy::Sampled { count, seed } => {
            if eligible.len() < 4 {
                return Ok(0);
            }
            let mut rng = task_rng(seed, Stream::DeltaQuadruples { radius });
            let mut best = 0u32;
            for _ in 0..count {
                let q = sample_distinct::<4>(&mut rng, eligible.len());
                let [i, j, k, l] = q.map(|x| eligible[x]);
                let s1 = matrix.get(i, j) as u32 + matrix.get(k, l) as u32;
                let s2 = matrix.get(i, k) as u32 + matrix.get(j, l) as u32;
                let s3 = matrix.get(i, l) as u32 + matrix.get(j, k) as u32;
                let q = quadruple_defect(s1, s2, s3);
                if q > best {
                    best = q;
                }
            }
            Ok(best)
        }
    }
}

#[inline]
fn quadruple_defect(s1: u32, s2: u32, s3: u32) -> u32 {
    let (mut a, mut b) = if s1 >= s2 { (s1, s2) } else { (s2, s1) };
    if s3 > a {
        b = a;
        a = s3;
    } else if s3 > b {
        b = s3;
    }
    a - b
}

fn sample_distinct<const N: usize>(rng: &mut impl Rng, n: usize) -> [usize; N] {
    let mut out = [0usize; N];
    let mut filled = 0;
    while filled < N {
        let x = rng.gen_range(0..n);
        if !out[..filled].contains(&x) {
            out[filled] = x;
            filled += 1;
        }
    }
    out
}

/// Slim-triangle δ in scaled units: max over triples of eligible vertices
/// of the largest distance from a point on one tie-broken geodesic side to
/// the union of the other two sides.
pub fn slim_delta_scaled(
    graph: &MetricGraph,
    matrix: &DistanceMatrix,
    eligible: &[u32],
    policy: DeltaPolicy,
    radius: u32,
) -> Result<u32> {
    let triple_value = |a: u32, b: u32, c: u32| -> Result<u32> {
        let side_ab = graph.extract_geodesic_with(matrix.row(b), a, b)?.vertices;
        let side_bc = graph.extract_geodesic_with(matrix.row(c), b, c)?.vertices;
        let side_ac = graph.extract_geodesic_with(matrix.row(c), a, c)?.vertices;
        let mut worst = 0u32;
        let sides = [&side_ab, &side_bc, &side_ac];
        for t in 0..3 {
            let third = sides[t];
            let others: Vec<u32> = sides[(t + 1) % 3]
                .iter()
                .chain(sides[(t + 2) % 3].iter())
                .copied()
                .collect();
            for &p in third {
                let near = others
                    .iter()
                    .map(|&q| matrix.get(p, q) as u32)
                    .min()
                    .expect("sides are non-empty");
                if near > worst {
                    worst = near;
                }
            }
        }
        Ok(worst)
    };

    match policy {
        DeltaPolicy::Exhaustive => {
            if eligible.len() > EXHAUSTIVE_CAP {
                return Err(Error::resource(format!(
                    "exhaustive slim-triangle scan over {} vertices exceeds the cap {EXHAUSTIVE_CAP}",
                    eligible.len()
                )));
            }
            let n = eligible.len();
            let mut best = 0u32;
            for i in 0..n {
                for j in i + 1..n {
                    for k in j + 1..n {
                        best = best.max(triple_value(eligible[i], eligible[j], eligible[k])?);
                    }
                }
            }
            Ok(best)
        }
        DeltaPolicy::Sampled { count, seed } => {
            if eligible.len() < 3 {
                return Ok(0);
            }
            let mut rng = task_rng(seed, Stream::DeltaTriples { radius });
            let mut best = 0u32;
            for _ in 0..count {
                let t = sample_distinct::<3>(&mut rng, eligible.len());
                best = best.max(triple_value(eligible[t[0]], eligible[t[1]], eligible[t[2]])?);
            }
            Ok(best)
        }
    }
}

/// Compute both δ statistics of one space.
pub fn measure_delta(
    graph: &MetricGraph,
    matrix: &DistanceMatrix,
    eligible: &[u32],
    policy: DeltaPolicy,
    radius: u32,
    inner_margin: u32,
) -> Result<DeltaReport> {
    let four_point_x2 = four_point_delta_x2(matrix, eligible, policy, radius)?;
    let slim_scaled = slim_delta_scaled(graph, matrix, eligible, policy, radius)?;
    Ok(DeltaReport {
        radius,
        vertex_count: graph.vertex_count(),
        eligible_count: eligible.len(),
        inner_margin,
        policy,
        four_point_x2,
        slim_scaled,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Bounded,
    Growing,
    Inconclusive,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Verdict::Bounded => "bounded",
            Verdict::Growing => "growing",
            Verdict::Inconclusive => "inconclusive",
        };
        f.write_str(s)
    }
}

/// Growth verdict for a δ series over increasing radii: bounded when the
/// last three values agree, growing when strictly increasing throughout,
/// inconclusive otherwise. Needs at least three entries.
pub fn growth_verdict(values: &[u64]) -> Result<Verdict> {
    if values.len() < 3 {
        return Err(Error::input("growth verdict needs at least 3 radii"));
    }
    let tail = &values[values.len() - 3..];
    if tail[0] == tail[1] && tail[1] == tail[2] {
        return Ok(Verdict::Bounded);
    }
    if values.windows(2).all(|w| w[0] < w[1]) {
        return Ok(Verdict::Growing);
    }
    Ok(Verdict::Inconclusive)
}

/// δ reports across radii with one verdict per series. The four-point
/// series drives the headline verdict (it involves no geodesic choices);
/// the slim series is reported alongside.
#[derive(Clone, Debug, Serialize)]
pub struct DeltaScan {
    pub reports: Vec<DeltaReport>,
    pub four_point_verdict: Verdict,
    pub slim_verdict: Verdict,
}

impl DeltaScan {
    pub fn from_reports(reports: Vec<DeltaReport>) -> Result<DeltaScan> {
        let four: Vec<u64> = reports.iter().map(|r| r.four_point_x2 as u64).collect();
        let slim: Vec<u64> = reports.iter().map(|r| r.slim_scaled as u64).collect();
        Ok(DeltaScan {
            four_point_verdict: growth_verdict(&four)?,
            slim_verdict: growth_verdict(&slim)?,
            reports,
        })
    }
}

/// Circuit counts through selected edges: for each edge, the number of
/// vertex-simple cycles through it per scaled length.
#[derive(Clone, Debug, Serialize)]
pub struct FinenessProfile {
    pub max_paper: u32,
    pub entries: Vec<EdgeCircuits>,
}

#[derive(Clone, Debug, Serialize)]
pub struct EdgeCircuits {
    pub u: u32,
    pub v: u32,
    /// counts[s] = number of simple cycles through (u,v) of scaled length
    /// exactly s.
    pub counts_by_scaled: Vec<u64>,
}

impl EdgeCircuits {
    /// Number of circuits of paper length ≤ `n`.
    pub fn cumulative_paper(&self, n: u32) -> u64 {
        let cap = (2 * n as usize).min(self.counts_by_scaled.len() - 1);
        self.counts_by_scaled[..=cap].iter().sum()
    }
}

/// Count vertex-simple cycles of paper length ≤ `max_paper` through each
/// selected edge. Each undirected cycle is counted once.
pub fn fineness_profile(
    graph: &MetricGraph,
    edges: &[(u32, u32)],
    max_paper: u32,
) -> Result<FinenessProfile> {
    if max_paper > FINENESS_CAP {
        return Err(Error::resource(format!(
            "circuit enumeration up to paper length {max_paper} exceeds the cap {FINENESS_CAP}"
        )));
    }
    let budget = 2 * max_paper as u16;
    let mut entries = Vec::with_capacity(edges.len());
    for &(u, v) in edges {
        let w = graph
            .edge_weight(u, v)
            .ok_or_else(|| Error::input(format!("({u},{v}) is not an edge")))?;
        let mut counts = vec![0u64; budget as usize + 1];
        if (w as u16) < budget {
            // distances to u prune the search; they may use the forbidden
            // edge, which only weakens the bound
            let dist_to_u = graph.distances_from(u)?;
            let mut visited = vec![false; graph.vertex_count()];
            visited[v as usize] = true;
            count_cycles(
                graph,
                u,
                v,
                v,
                w as u16,
                budget,
                &dist_to_u,
                &mut visited,
                &mut counts,
            );
        }
        entries.push(EdgeCircuits { u, v, counts_by_scaled: counts });
    }
    Ok(FinenessProfile { max_paper, entries })
}

/// DFS from `cur` toward `target`, avoiding the edge (target, start) and
/// revisits; `acc` is the cycle weight so far including the profiled edge.
#[allow(clippy::too_many_arguments)]
fn count_cycles(
    graph: &MetricGraph,
    target: u32,
    start: u32,
    cur: u32,
    acc: u16,
    budget: u16,
    dist_to_target: &[u16],
    visited: &mut Vec<bool>,
    counts: &mut [u64],
) {
    for &(next, w) in graph.neighbors(cur) {
        let total = acc + w as u16;
        if total > budget {
            continue;
        }
        if next == target {
            // closing the cycle is only allowed away from the profiled
            // edge itself
            if cur != start {
                counts[total as usize] += 1;
            }
            continue;
        }
        if visited[next as usize] {
            continue;
        }
        if total + dist_to_target[next as usize] > budget {
            continue;
        }
        visited[next as usize] = true;
        count_cycles(graph, target, start, next, total, budget, dist_to_target, visited, counts);
        visited[next as usize] = false;
    }
}
