//! (λ,0)-quasigeodesic enumeration in Cayley balls and the two bounded
//! coset penetration conditions.
//!
//! A path is a (λ,0)-quasigeodesic when every subpath q satisfies
//! length(q) ≤ λ·d(endpoints of q); with additive constant 0 such paths
//! are automatically vertex-simple. λ is a rational num/den ≥ 1 and all
//! checks are exact integer comparisons on the scaled metric.

use crate::cayley::BallIndex;
use crate::coning::{hat_path, is_without_backtracking, penetrations, ConedGraph};
use crate::error::{Error, Result};
use crate::graph::{DistanceMatrix, MetricGraph};
use crate::words::{GroupOracle, PeripheralFamily, Word};
use serde::Serialize;
use std::collections::BTreeMap;

/// Quasigeodesic enumeration parameters: λ = `lambda.0 / lambda.1` ≥ 1
/// with additive constant 0, and a cap on path length in paper units.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuasiParams {
    pub lambda: (u32, u32),
    pub max_paper_len: u32,
}

impl QuasiParams {
    pub fn new(lambda: (u32, u32), max_paper_len: u32) -> Result<Self> {
        if lambda.1 == 0 || lambda.0 < lambda.1 {
            return Err(Error::input(format!(
                "lambda must be a rational >= 1, got {}/{}",
                lambda.0, lambda.1
            )));
        }
        if max_paper_len == 0 {
            return Err(Error::input("max path length must be at least 1"));
        }
        Ok(QuasiParams { lambda, max_paper_len })
    }
}

/// Enumerated quasigeodesics; `truncated` is set when the expansion
/// budget ran out and the list is a lower bound.
#[derive(Clone, Debug)]
pub struct Enumeration {
    pub paths: Vec<Vec<u32>>,
    pub truncated: bool,
    pub expansions: u64,
}

/// Enumerate every (λ,0)-quasigeodesic from `u` to `v` in the base graph,
/// in lexicographic vertex order. Requires λ·d(u,v) ≤ max length (the cap
/// must not bind, so the enumeration is complete when not truncated).
pub fn enumerate_quasigeodesics(
    base: &MetricGraph,
    matrix: &DistanceMatrix,
    u: u32,
    v: u32,
    params: QuasiParams,
    budget: u64,
) -> Result<Enumeration> {
    let (num, den) = params.lambda;
    let d_uv = matrix.get(u, v) as u64;
    if num as u64 * d_uv > den as u64 * 2 * params.max_paper_len as u64 {
        return Err(Error::input(format!(
            "endpoints at scaled distance {d_uv} need more than the length cap {} at this lambda",
            params.max_paper_len
        )));
    }
    let mut state = Dfs {
        base,
        matrix,
        target: v,
        num: num as u64,
        den: den as u64,
        budget,
        expansions: 0,
        truncated: false,
        path: vec![u],
        prefix: vec![0],
        out: Vec::new(),
    };
    state.run();
    Ok(Enumeration { paths: state.out, truncated: state.truncated, expansions: state.expansions })
}

struct Dfs<'a> {
    base: &'a MetricGraph,
    matrix: &'a DistanceMatrix,
    target: u32,
    num: u64,
    den: u64,
    budget: u64,
    expansions: u64,
    truncated: bool,
    path: Vec<u32>,
    prefix: Vec<u64>,
    out: Vec<Vec<u32>>,
}

impl Dfs<'_> {
    fn run(&mut self) {
        let cur = *self.path.last().expect("non-empty path");
        if cur == self.target && self.path.len() > 1 {
            self.out.push(self.path.clone());
            return;
        }
        if cur == self.target && self.path.len() == 1 {
            // degenerate endpoints: the single-vertex path
            self.out.push(self.path.clone());
            return;
        }
        let here = *self.prefix.last().expect("prefix tracked");
        let neighbors: Vec<(u32, u8)> = self.base.neighbors(cur).to_vec();
        for (next, w) in neighbors {
            if self.truncated {
                return;
            }
            self.expansions += 1;
            if self.expansions > self.budget {
                self.truncated = true;
                return;
            }
            let total = here + w as u64;
            // admissible completion bound on the whole path
            let d_start_target = self.matrix.get(self.path[0], self.target) as u64;
            if self.den * (total + self.matrix.get(next, self.target) as u64)
                > self.num * d_start_target
            {
                continue;
            }
            // subpath condition against every prefix point
            let ok = (0..self.path.len()).all(|i| {
                let seg = total - self.prefix[i];
                let d = self.matrix.get(self.path[i], next) as u64;
                self.den * seg <= self.num * d
            });
            if !ok {
                continue;
            }
            self.path.push(next);
            self.prefix.push(total);
            self.run();
            self.path.pop();
            self.prefix.pop();
        }
    }
}

/// Independent post-hoc check: walk all O(n²) subpaths of `path` and
/// verify the (λ,0) inequality.
pub fn verify_quasigeodesic(
    matrix: &DistanceMatrix,
    base: &MetricGraph,
    path: &[u32],
    lambda: (u32, u32),
) -> Result<bool> {
    let mut prefix = vec![0u64];
    for pair in path.windows(2) {
        let w = base.edge_weight(pair[0], pair[1]).ok_or_else(|| {
            Error::input(format!("vertices {} and {} are not adjacent", pair[0], pair[1]))
        })?;
        prefix.push(prefix.last().unwrap() + w as u64);
    }
    for i in 0..path.len() {
        for j in i + 1..path.len() {
            let seg = prefix[j] - prefix[i];
            let d = matrix.get(path[i], path[j]) as u64;
            if lambda.1 as u64 * seg > lambda.0 as u64 * d {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Independent oracle for λ = 1: every geodesic from `u` to `v` by
/// walking the shortest-path DAG.
pub fn geodesics_via_dag(base: &MetricGraph, matrix: &DistanceMatrix, u: u32, v: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut path = vec![u];
    walk_dag(base, matrix, v, &mut path, &mut out);
    out
}

fn walk_dag(base: &MetricGraph, matrix: &DistanceMatrix, target: u32, path: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    let cur = *path.last().unwrap();
    if cur == target {
        out.push(path.clone());
        return;
    }
    let here = matrix.get(cur, target);
    for &(next, w) in base.neighbors(cur) {
        if matrix.get(next, target) + w as u16 == here {
            path.push(next);
            walk_dag(base, matrix, target, path, out);
            path.pop();
        }
    }
}

/// Separation data of one pair of quasigeodesics against the two BCP
/// conditions, with maxima and witnesses aggregated over many pairs.
#[derive(Clone, Debug, Default, Serialize)]
pub struct BcpReport {
    /// Largest enter-to-exit distance (scaled, in the base graph) over
    /// cosets penetrated by exactly one path of a pair.
    pub max_case1_scaled: u32,
    /// Largest entering-vertex separation over cosets penetrated by both.
    pub max_case2_enter_scaled: u32,
    /// Largest exiting-vertex separation over cosets penetrated by both.
    pub max_case2_exit_scaled: u32,
    pub pairs_checked: u64,
    pub witnesses: Vec<Witness>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    pub case: u8,
    pub peripheral: String,
    pub coset_key: String,
    pub separation_scaled: u32,
    pub path_a: Vec<u32>,
    pub path_a_words: Vec<String>,
    pub path_b: Vec<u32>,
    pub path_b_words: Vec<String>,
}

impl BcpReport {
    pub fn max_overall_scaled(&self) -> u32 {
        self.max_case1_scaled
            .max(self.max_case2_enter_scaled)
            .max(self.max_case2_exit_scaled)
    }
}

/// Check the BCP separation conditions for explicit pairs of
/// quasigeodesics in the base graph. Pairs must share their initial
/// vertex, end at paper distance ≤ 1 in the base graph, and hat to
/// backtracking-free paths.
pub fn bcp_check(
    coned: &ConedGraph,
    base_matrix: &DistanceMatrix,
    index: &BallIndex,
    pairs: &[(Vec<u32>, Vec<u32>)],
) -> Result<BcpReport> {
    let mut report = BcpReport::default();
    for (a, b) in pairs {
        let pen_a = hat_records(coned, a)?;
        let pen_b = hat_records(coned, b)?;
        accumulate_pair(coned, base_matrix, index, a, &pen_a, b, &pen_b, &mut report, 0)?;
    }
    Ok(report)
}

type PenMap = BTreeMap<(String, Word), (u32, u32)>;

fn hat_records(coned: &ConedGraph, path: &[u32]) -> Result<PenMap> {
    if path.is_empty() {
        return Err(Error::input("empty path"));
    }
    let hp = hat_path(coned, path)?;
    if !is_without_backtracking(coned, &hp)? {
        return Err(Error::input("path backtracks into a coset"));
    }
    let mut map = PenMap::new();
    for rec in penetrations(coned, &hp)? {
        map.insert((rec.peripheral, rec.key), (rec.entering, rec.exiting));
    }
    Ok(map)
}

#[allow(clippy::too_many_arguments)]
fn accumulate_pair(
    coned: &ConedGraph,
    base_matrix: &DistanceMatrix,
    index: &BallIndex,
    a: &[u32],
    pen_a: &PenMap,
    b: &[u32],
    pen_b: &PenMap,
    report: &mut BcpReport,
    _radius: u32,
) -> Result<()> {
    if a[0] != b[0] {
        return Err(Error::input("pair must share its initial vertex"));
    }
    let ea = *a.last().unwrap();
    let eb = *b.last().unwrap();
    if base_matrix.get(ea, eb) > 2 {
        return Err(Error::input("pair endpoints are more than 1 apart in the base graph"));
    }
    report.pairs_checked += 1;
    let mut keys: Vec<&(String, Word)> = pen_a.keys().chain(pen_b.keys()).collect();
    keys.sort();
    keys.dedup();
    let words = |p: &[u32]| -> Vec<String> {
        p.iter().map(|&v| coned.base.alphabet().render(index.word(v))).collect()
    };
    for key in keys {
        match (pen_a.get(key), pen_b.get(key)) {
            (Some(&(enter, exit)), None) | (None, Some(&(enter, exit))) => {
                let sep = base_matrix.get(enter, exit) as u32;
                if sep > report.max_case1_scaled {
                    report.max_case1_scaled = sep;
                    report.witnesses.retain(|w| w.case != 1);
                    report.witnesses.push(Witness {
                        case: 1,
                        peripheral: key.0.clone(),
                        coset_key: coned.base.alphabet().render(&key.1),
                        separation_scaled: sep,
                        path_a: a.to_vec(),
                        path_a_words: words(a),
                        path_b: b.to_vec(),
                        path_b_words: words(b),
                    });
                }
            }
            (Some(&(enter_a, exit_a)), Some(&(enter_b, exit_b))) => {
                let sep_enter = base_matrix.get(enter_a, enter_b) as u32;
                let sep_exit = base_matrix.get(exit_a, exit_b) as u32;
                if sep_enter > report.max_case2_enter_scaled {
                    report.max_case2_enter_scaled = sep_enter;
                }
                if sep_exit > report.max_case2_exit_scaled {
                    report.max_case2_exit_scaled = sep_exit;
                    report.witnesses.retain(|w| w.case != 2);
                    report.witnesses.push(Witness {
                        case: 2,
                        peripheral: key.0.clone(),
                        coset_key: coned.base.alphabet().render(&key.1),
                        separation_scaled: sep_exit,
                        path_a: a.to_vec(),
                        path_a_words: words(a),
                        path_b: b.to_vec(),
                        path_b_words: words(b),
                    });
                }
            }
            (None, None) => unreachable!("key from union"),
        }
    }
    Ok(())
}

/// Per-radius separation statistics of a scan.
#[derive(Clone, Debug, Serialize)]
pub struct BcpRadiusStats {
    pub radius: u32,
    pub lambda: (u32, u32),
    pub report: BcpReport,
    pub truncated: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BcpVerdict {
    BoundednessConsistent,
    ViolationWitnessed,
}

impl std::fmt::Display for BcpVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BcpVerdict::BoundednessConsistent => f.write_str("boundedness-consistent"),
            BcpVerdict::ViolationWitnessed => f.write_str("violation-witnessed"),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BcpScan {
    pub per_radius: Vec<BcpRadiusStats>,
    pub verdict: BcpVerdict,
    pub truncated: bool,
}

/// Scan verdict: violation-witnessed requires the max observed separation
/// to exceed the previous radius's maximum by at least one paper unit at
/// every step.
pub fn assemble_scan(per_radius: Vec<BcpRadiusStats>) -> Result<BcpScan> {
    if per_radius.is_empty() {
        return Err(Error::config("bcp scan needs at least one radius"));
    }
    let maxima: Vec<u32> = per_radius.iter().map(|s| s.report.max_overall_scaled()).collect();
    let violation = maxima.len() >= 2 && maxima.windows(2).all(|w| w[1] >= w[0] + 2);
    let truncated = per_radius.iter().any(|s| s.truncated);
    Ok(BcpScan {
        per_radius,
        verdict: if violation {
            BcpVerdict::ViolationWitnessed
        } else {
            BcpVerdict::BoundednessConsistent
        },
        truncated,
    })
}

/// Compute one radius of a BCP scan: enumerate quasigeodesic pairs from
/// the identity to all endpoint pairs at paper distance ≤ 1 and aggregate
/// their separations. Multi-peripheral families whose non-singleton
/// cosets overlap are rejected (penetration bookkeeping would depend on
/// the hat-path tie-break).
#[allow(clippy::too_many_arguments)]
pub fn bcp_radius_stats(
    coned: &ConedGraph,
    index: &BallIndex,
    oracle: &GroupOracle,
    fam: &PeripheralFamily,
    lambda: (u32, u32),
    max_paper_len: u32,
    budget: u64,
    radius: u32,
    cap: usize,
) -> Result<BcpRadiusStats> {
    reject_ambiguous_overlap(oracle, fam, index)?;
    let base = &coned.base;
    let matrix = base.all_pairs(cap)?;
    let params = QuasiParams::new(lambda, max_paper_len)?;
    let source = 0u32;
    let n = base.vertex_count() as u32;

    // quasigeodesics and penetration maps per endpoint, skipping paths
    // that backtrack (they are outside the BCP hypothesis)
    let mut truncated = false;
    let mut per_endpoint: Vec<Option<Vec<(Vec<u32>, PenMap)>>> = vec![None; n as usize];
    let mut get_paths = |v: u32, truncated: &mut bool| -> Result<Vec<(Vec<u32>, PenMap)>> {
        if per_endpoint[v as usize].is_none() {
            let en = enumerate_quasigeodesics(base, &matrix, source, v, params, budget)?;
            if en.truncated {
                *truncated = true;
            }
            let mut list = Vec::new();
            for p in en.paths {
                let hp = hat_path(coned, &p)?;
                if is_without_backtracking(coned, &hp)? {
                    let mut map = PenMap::new();
                    for rec in penetrations(coned, &hp)? {
                        map.insert((rec.peripheral, rec.key), (rec.entering, rec.exiting));
                    }
                    list.push((p, map));
                }
            }
            per_endpoint[v as usize] = Some(list);
        }
        Ok(per_endpoint[v as usize].clone().expect("just filled"))
    };

    let mut report = BcpReport::default();
    for v1 in 0..n {
        for v2 in v1..n {
            if matrix.get(v1, v2) > 2 {
                continue;
            }
            let list1 = get_paths(v1, &mut truncated)?;
            let list2 = if v1 == v2 { list1.clone() } else { get_paths(v2, &mut truncated)? };
            for (i, (a, pen_a)) in list1.iter().enumerate() {
                let start_j = if v1 == v2 { i + 1 } else { 0 };
                for (b, pen_b) in list2.iter().skip(start_j) {
                    accumulate_pair(coned, &matrix, index, a, pen_a, b, pen_b, &mut report, radius)?;
                }
            }
        }
    }
    Ok(BcpRadiusStats { radius, lambda, report, truncated })
}

/// Two peripherals overlap ambiguously when some ball vertex lies in
/// non-singleton cosets of both; hat-path rewriting would then depend on
/// peripheral list order. Such configurations are outside the scan's
/// built-in scope.
fn reject_ambiguous_overlap(
    oracle: &GroupOracle,
    fam: &PeripheralFamily,
    index: &BallIndex,
) -> Result<()> {
    if fam.len() < 2 {
        return Ok(());
    }
    let specs = fam.specs();
    let mut coset_sizes: Vec<BTreeMap<Word, usize>> = Vec::new();
    let mut vertex_keys: Vec<Vec<Word>> = Vec::new();
    for spec in specs {
        let mut sizes = BTreeMap::new();
        let mut keys = Vec::new();
        for word in index.words() {
            let key = spec.coset_key(oracle, word)?;
            *sizes.entry(key.clone()).or_insert(0) += 1;
            keys.push(key);
        }
        coset_sizes.push(sizes);
        vertex_keys.push(keys);
    }
    for v in 0..index.vertex_count() {
        let mut non_singleton = 0;
        for (p, keys) in vertex_keys.iter().enumerate() {
            if coset_sizes[p][&keys[v]] >= 2 {
                non_singleton += 1;
            }
        }
        if non_singleton >= 2 {
            return Err(Error::config(format!(
                "bcp scan rejects families whose non-singleton cosets overlap (vertex {} lies in {} of them); run peripherals separately",
                v, non_singleton
            )));
        }
    }
    Ok(())
}
