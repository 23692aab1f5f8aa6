//! Combinatorial horoballs and cusped Cayley graphs.
//!
//! A horoball over a graph Γ has vertex set V(Γ) × {0..K}, vertical edges
//! between consecutive depths, and a horizontal edge between (v,k) and
//! (w,k) whenever d_Γ(v,w) ≤ 2^k. All horoball edges have paper length 1
//! (weight 2).
//!
//! The cusped Cayley graph glues one horoball onto every peripheral coset
//! meeting the ball. The horoball's base is the coset's own Cayley graph
//! C(gP) — vertices are the coset elements inside the ball, edges are
//! right multiplications by the peripheral's generators — truncated to the
//! ball. Its depth-0 level is identified with the coset, so peripheral
//! generator edges materialize at level 0 even when the generator is not
//! an alphabet letter (they are then new weight-2 edges of the cusped
//! graph). When a peripheral generator leaves the ball, the truncated
//! coset graph may fall apart; such horoballs degenerate toward vertical
//! rays and are flagged in the construction metadata.

use crate::cayley::BallIndex;
use crate::error::{Error, Result};
use crate::graph::{GraphBuilder, MetricGraph, VertexTag, UNIT_EDGE};
use crate::words::{GroupOracle, PeripheralFamily, Word};
use std::collections::BTreeMap;

/// A standalone combinatorial horoball H(Γ).
#[derive(Clone, Debug)]
pub struct HoroballGraph {
    pub graph: MetricGraph,
    pub base_count: usize,
    pub depth: u32,
}

impl HoroballGraph {
    /// Vertex id of (base vertex `v`, depth `k`). Level-major layout.
    pub fn vertex(&self, v: u32, k: u32) -> u32 {
        k * self.base_count as u32 + v
    }
}

/// Per-coset metadata of a cusped construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HoroballMeta {
    pub peripheral: String,
    pub key: Word,
    pub members: usize,
    /// True when the truncated coset graph is disconnected (the horoball
    /// degenerates toward vertical rays).
    pub degenerate: bool,
}

/// A Cayley ball with horoballs glued along its peripheral cosets. Ball
/// vertices keep their indices; horoball vertices are appended.
#[derive(Clone, Debug)]
pub struct CuspedGraph {
    pub graph: MetricGraph,
    pub ball_count: u32,
    pub depth: u32,
    pub horoballs: Vec<HoroballMeta>,
    /// (peripheral label, coset key, base vertex, depth) → vertex id, for
    /// every depth ≥ 1 horoball vertex.
    horo_index: BTreeMap<(String, Word, u32, u32), u32>,
}

impl CuspedGraph {
    pub fn is_ball_vertex(&self, v: u32) -> bool {
        v < self.ball_count
    }

    pub fn horo_vertex(&self, peripheral: &str, key: &Word, base: u32, depth: u32) -> Option<u32> {
        self.horo_index
            .get(&(peripheral.to_string(), key.clone(), base, depth))
            .copied()
    }
}

/// Default truncation depth for radius-R balls: deeper levels add no
/// horizontal structure once 2^k exceeds the coset diameter.
pub fn default_depth(radius: u32) -> u32 {
    let mut k = 0u32;
    while (1u64 << k) < radius.max(1) as u64 {
        k += 1;
    }
    k + 1
}

/// Build the combinatorial horoball over a connected graph with depth `k`.
/// Base distances are the graph's own metric in paper units.
pub fn build_horoball(gamma: &MetricGraph, depth: u32) -> Result<HoroballGraph> {
    if gamma.vertex_count() == 0 {
        return Err(Error::input("horoball base graph is empty"));
    }
    if !gamma.is_connected() {
        return Err(Error::input("horoball base graph must be connected"));
    }
    for tag in gamma.tags() {
        if !tag.is_group() {
            return Err(Error::input("horoball base vertices must be group vertices"));
        }
    }
    let n = gamma.vertex_count();
    let matrix = gamma.all_pairs(n)?;
    let mut builder = GraphBuilder::new(gamma.alphabet().clone());
    for k in 0..=depth {
        for v in 0..n {
            let base = match gamma.tag(v as u32) {
                VertexTag::Group { word } => word.clone(),
                _ => unreachable!("checked above"),
            };
            builder.add_vertex(VertexTag::Horo {
                peripheral: String::new(),
                key: Word::empty(),
                base,
                depth: k,
            });
        }
    }
    let vid = |v: usize, k: u32| -> u32 { k * n as u32 + v as u32 };
    for k in 0..depth {
        for v in 0..n {
            builder.add_edge(vid(v, k), vid(v, k + 1), UNIT_EDGE)?;
        }
    }
    for k in 0..=depth {
        for u in 0..n {
            for v in u + 1..n {
                // paper distance <= 2^k means scaled distance <= 2^(k+1)
                let d = matrix.get(u as u32, v as u32);
                if (d as u64) <= (2u64 << k) {
                    builder.add_edge(vid(u, k), vid(v, k), UNIT_EDGE)?;
                }
            }
        }
    }
    Ok(HoroballGraph { graph: builder.finish(), base_count: n, depth })
}

/// Level-0 endpoint distance in a horoball over a path of paper length
/// `d`, by the climb-across-descend rule: min over climbing heights k of
/// 2k + ⌈d / 2^k⌉, in paper units.
pub fn horoball_path_distance(d: u64, max_depth: u32) -> u64 {
    (0..=max_depth as u64)
        .map(|k| 2 * k + d.div_ceil(1u64 << k))
        .min()
        .expect("at least depth 0")
}

/// Build the cusped Cayley graph: the ball plus one horoball per
/// (peripheral, coset) pair meeting the ball.
pub fn build_cusped(
    ball: &MetricGraph,
    index: &BallIndex,
    oracle: &GroupOracle,
    fam: &PeripheralFamily,
    depth: u32,
) -> Result<CuspedGraph> {
    fam.validate(oracle)?;
    let ball_count = ball.vertex_count() as u32;
    let mut builder = GraphBuilder::new(ball.alphabet().clone());
    for tag in ball.tags() {
        builder.add_vertex(tag.clone());
    }
    for &(u, v, w) in ball.edges() {
        builder.add_edge(u, v, w)?;
    }

    let mut horoballs = Vec::new();
    let mut horo_index = BTreeMap::new();
    for spec in fam.iter() {
        let mut gens = Vec::new();
        for g in spec.generators(oracle)? {
            gens.push(g.clone());
            gens.push(oracle.invert(&g)?);
        }
        let mut cosets: BTreeMap<Word, Vec<u32>> = BTreeMap::new();
        for (v, word) in index.words().iter().enumerate() {
            let key = spec.coset_key(oracle, word)?;
            cosets.entry(key).or_default().push(v as u32);
        }
        for (key, members) in cosets {
            let n = members.len();
            let local_of: BTreeMap<u32, usize> =
                members.iter().enumerate().map(|(i, &v)| (v, i)).collect();
            // truncated coset Cayley graph: peripheral-generator moves
            // between surviving coset elements, paper length 1 each
            let mut local_adj: Vec<Vec<usize>> = vec![Vec::new(); n];
            for (i, &v) in members.iter().enumerate() {
                for g in &gens {
                    let moved = oracle.multiply(index.word(v), g)?;
                    if let Some(w) = index.vertex_of(&moved) {
                        if let Some(&j) = local_of.get(&w) {
                            if i != j && !local_adj[i].contains(&j) {
                                local_adj[i].push(j);
                                local_adj[j].push(i);
                            }
                        }
                    }
                }
            }
            // level-0 identification with the coset graph: materialize its
            // edges between ball vertices (deduplicated with ball edges)
            for (i, neigh) in local_adj.iter().enumerate() {
                for &j in neigh {
                    if i < j {
                        builder.add_edge(members[i], members[j], UNIT_EDGE)?;
                    }
                }
            }
            // intrinsic paper distances within the truncated coset graph
            let local_dist = local_bfs(&local_adj);
            let degenerate = local_dist.iter().any(|row| row.iter().any(|&d| d == u32::MAX));
            horoballs.push(HoroballMeta {
                peripheral: spec.label.clone(),
                key: key.clone(),
                members: n,
                degenerate,
            });
            // horoball vertices at depth >= 1
            let mut level_ids: Vec<Vec<u32>> = vec![members.clone()];
            for k in 1..=depth {
                let mut ids = Vec::with_capacity(n);
                for &m in &members {
                    let id = builder.add_vertex(VertexTag::Horo {
                        peripheral: spec.label.clone(),
                        key: key.clone(),
                        base: index.word(m).clone(),
                        depth: k,
                    });
                    horo_index.insert((spec.label.clone(), key.clone(), m, k), id);
                    ids.push(id);
                }
                level_ids.push(ids);
            }
            for k in 0..depth as usize {
                for i in 0..n {
                    builder.add_edge(level_ids[k][i], level_ids[k + 1][i], UNIT_EDGE)?;
                }
            }
            for k in 1..=depth {
                for i in 0..n {
                    for j in i + 1..n {
                        let d = local_dist[i][j];
                        if d != u32::MAX && (d as u64) <= (1u64 << k) {
                            builder.add_edge(
                                level_ids[k as usize][i],
                                level_ids[k as usize][j],
                                UNIT_EDGE,
                            )?;
                        }
                    }
                }
            }
        }
    }

    Ok(CuspedGraph {
        graph: builder.finish(),
        ball_count,
        depth,
        horoballs,
        horo_index,
    })
}

/// All-pairs hop distances of a small adjacency-list graph.
fn local_bfs(adj: &[Vec<usize>]) -> Vec<Vec<u32>> {
    let n = adj.len();
    let mut out = vec![vec![u32::MAX; n]; n];
    for s in 0..n {
        let mut queue = std::collections::VecDeque::new();
        out[s][s] = 0;
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                if out[s][v] == u32::MAX {
                    out[s][v] = out[s][u] + 1;
                    queue.push_back(v);
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley::build_ball;
    use crate::words::PeripheralSpec;

    #[test]
    fn single_edge_horoball() {
        // one unit edge, depth 1: 4 vertices; horizontal at levels 0 and 1,
        // two verticals
        let gamma = MetricGraph::path(1);
        let h = build_horoball(&gamma, 1).unwrap();
        assert_eq!(h.graph.vertex_count(), 4);
        assert_eq!(h.graph.edge_count(), 4);
    }

    #[test]
    fn path_metric_matches_closed_form() {
        for d in [2u64, 4, 8, 16] {
            let gamma = MetricGraph::path(d as usize);
            let h = build_horoball(&gamma, 3).unwrap();
            let left = h.vertex(0, 0);
            let right = h.vertex(d as u32, 0);
            let got = h.graph.distances_from(left).unwrap()[right as usize];
            let expected = horoball_path_distance(d, 3);
            assert_eq!(got as u64, 2 * expected, "paper length {d}");
        }
        // paper-length 8 path, K = 3: endpoints end up at paper distance 6
        // (12 scaled)
        let gamma = MetricGraph::path(8);
        let h = build_horoball(&gamma, 3).unwrap();
        let d = h.graph.distances_from(h.vertex(0, 0)).unwrap()[h.vertex(8, 0) as usize];
        assert_eq!(d, 12);
    }

    #[test]
    fn eight_cycle_top_level_is_complete() {
        // diameter 4 <= 2^3, so level 3 is a complete graph on 8 vertices
        let gamma = MetricGraph::cycle(8);
        let h = build_horoball(&gamma, 3).unwrap();
        let level3: Vec<u32> = (0..8).map(|v| h.vertex(v, 3)).collect();
        let mut count = 0;
        for (i, &u) in level3.iter().enumerate() {
            for &v in &level3[i + 1..] {
                if h.graph.edge_weight(u, v).is_some() {
                    count += 1;
                }
            }
        }
        assert_eq!(count, 28);
    }

    #[test]
    fn horizontal_neighbourhoods_are_monotone_in_depth() {
        let gamma = MetricGraph::path(9);
        let h = build_horoball(&gamma, 3).unwrap();
        for k in 0..3u32 {
            for u in 0..10u32 {
                for v in 0..10u32 {
                    if u != v && h.graph.edge_weight(h.vertex(u, k), h.vertex(v, k)).is_some() {
                        assert!(
                            h.graph
                                .edge_weight(h.vertex(u, k + 1), h.vertex(v, k + 1))
                                .is_some(),
                            "level-{k} edge missing at level {}",
                            k + 1
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn disconnected_base_is_rejected() {
        let alphabet = crate::words::Alphabet::standard(1).unwrap();
        let mut b = GraphBuilder::new(alphabet);
        b.add_vertex(VertexTag::Group { word: Word::empty() });
        b.add_vertex(VertexTag::Group { word: Word::single(0) });
        let g = b.finish();
        assert!(build_horoball(&g, 2).is_err());
    }

    #[test]
    fn empty_family_returns_the_ball() {
        let f2 = GroupOracle::free(2).unwrap();
        let (ball, idx) = build_ball(&f2, 2).unwrap();
        let cusped = build_cusped(&ball, &idx, &f2, &PeripheralFamily::empty(), 2).unwrap();
        assert_eq!(cusped.graph.to_csv(), ball.to_csv());
        assert!(cusped.horoballs.is_empty());
    }

    #[test]
    fn z2_axis_horoballs() {
        let z2 = GroupOracle::free_abelian(2).unwrap();
        let (ball, idx) = build_ball(&z2, 2).unwrap();
        let fam =
            PeripheralFamily::new(vec![PeripheralSpec::cyclic("axis", z2.parse("a").unwrap())])
                .unwrap();
        let cusped = build_cusped(&ball, &idx, &z2, &fam, 2).unwrap();
        assert_eq!(cusped.horoballs.len(), 5);
        // the identity's coset segment a^{-2}..a^2 has 5 vertices, so its
        // horoball adds 10 vertices at depths 1 and 2
        let id_meta = cusped
            .horoballs
            .iter()
            .find(|m| m.key == Word::empty())
            .unwrap();
        assert_eq!(id_meta.members, 5);
        assert!(!id_meta.degenerate);
        // total added: segments of sizes 5,3,3,1,1 at 2 levels each
        assert_eq!(cusped.graph.vertex_count(), 13 + 2 * (5 + 3 + 3 + 1 + 1));
    }

    #[test]
    fn z2_coset_graph_reuses_ball_edges() {
        let z2 = GroupOracle::free_abelian(2).unwrap();
        let (ball, idx) = build_ball(&z2, 2).unwrap();
        let fam =
            PeripheralFamily::new(vec![PeripheralSpec::cyclic("axis", z2.parse("a").unwrap())])
                .unwrap();
        let cusped = build_cusped(&ball, &idx, &z2, &fam, 2).unwrap();
        // the peripheral generator a is an alphabet letter, so level-0
        // identification adds no new edges between ball vertices
        let ball_part: Vec<_> = cusped
            .graph
            .edges()
            .iter()
            .filter(|&&(u, v, _)| cusped.is_ball_vertex(u) && cusped.is_ball_vertex(v))
            .copied()
            .collect();
        assert_eq!(ball_part, ball.edges().to_vec());
    }

    #[test]
    fn f2_commutator_coset_graph_materializes_at_level_zero() {
        let f2 = GroupOracle::free(2).unwrap();
        let (ball, idx) = build_ball(&f2, 4).unwrap();
        let fam = PeripheralFamily::new(vec![PeripheralSpec::cyclic(
            "comm",
            f2.parse("[a,b]").unwrap(),
        )])
        .unwrap();
        let cusped = build_cusped(&ball, &idx, &f2, &fam, 3).unwrap();
        let e = idx.vertex_of(&Word::empty()).unwrap();
        let c = idx.vertex_of(&f2.parse("[a,b]").unwrap()).unwrap();
        let c_inv = idx.vertex_of(&f2.parse("[a,b]'").unwrap()).unwrap();
        // identity coset {c^-1, e, c} forms a 2-edge path in its own
        // Cayley graph; its edges appear at level 0 with paper length 1
        assert_eq!(cusped.graph.edge_weight(e, c), Some(UNIT_EDGE));
        assert_eq!(cusped.graph.edge_weight(e, c_inv), Some(UNIT_EDGE));
        assert_eq!(cusped.graph.edge_weight(c, c_inv), None);
        // at level 1 the pair (c, c^-1) comes within reach 2
        let h_c = cusped.horo_vertex("comm", &Word::empty(), c, 1).unwrap();
        let h_cinv = cusped.horo_vertex("comm", &Word::empty(), c_inv, 1).unwrap();
        assert_eq!(cusped.graph.edge_weight(h_c, h_cinv), Some(UNIT_EDGE));
        let id_meta = cusped.horoballs.iter().find(|m| m.key == Word::empty()).unwrap();
        assert_eq!(id_meta.members, 3);
        assert!(!id_meta.degenerate);
    }

    #[test]
    fn singleton_cosets_become_vertical_rays() {
        let f2 = GroupOracle::free(2).unwrap();
        let (ball, idx) = build_ball(&f2, 2).unwrap();
        let fam = PeripheralFamily::new(vec![PeripheralSpec::cyclic(
            "comm",
            f2.parse("[a,b]").unwrap(),
        )])
        .unwrap();
        let cusped = build_cusped(&ball, &idx, &f2, &fam, 2).unwrap();
        // the identity coset is a singleton at radius 2, so its horoball
        // is a single vertical ray
        let e = idx.vertex_of(&Word::empty()).unwrap();
        let ray1 = cusped.horo_vertex("comm", &Word::empty(), e, 1).unwrap();
        let ray2 = cusped.horo_vertex("comm", &Word::empty(), e, 2).unwrap();
        assert_eq!(cusped.graph.edge_weight(e, ray1), Some(UNIT_EDGE));
        assert_eq!(cusped.graph.edge_weight(ray1, ray2), Some(UNIT_EDGE));
        // the one two-element coset {b'a', a'b'} differs by a single
        // commutator move, so its coset graph stays connected and the
        // peripheral edge materializes at level 0
        let two = cusped.horoballs.iter().find(|m| m.members == 2).unwrap();
        assert!(!two.degenerate);
        let u = idx.vertex_of(&f2.parse("b'a'").unwrap()).unwrap();
        let v = idx.vertex_of(&f2.parse("a'b'").unwrap()).unwrap();
        assert_eq!(cusped.graph.edge_weight(u, v), Some(UNIT_EDGE));
    }

    #[test]
    fn full_group_peripheral_single_horoball() {
        let z2 = GroupOracle::free_abelian(2).unwrap();
        let (ball, idx) = build_ball(&z2, 2).unwrap();
        let fam = PeripheralFamily::new(vec![PeripheralSpec::full("whole")]).unwrap();
        let cusped = build_cusped(&ball, &idx, &z2, &fam, 2).unwrap();
        assert_eq!(cusped.horoballs.len(), 1);
        assert_eq!(cusped.horoballs[0].members, 13);
        assert!(!cusped.horoballs[0].degenerate);
        assert_eq!(cusped.graph.vertex_count(), 13 * 3);
    }

    #[test]
    fn default_depth_formula() {
        assert_eq!(default_depth(1), 1);
        assert_eq!(default_depth(2), 2);
        assert_eq!(default_depth(3), 3);
        assert_eq!(default_depth(4), 3);
        assert_eq!(default_depth(5), 4);
        assert_eq!(default_depth(8), 4);
    }

    #[test]
    fn horoball_distance_law() {
        assert_eq!(horoball_path_distance(2, 4), 2);
        assert_eq!(horoball_path_distance(4, 4), 4);
        assert_eq!(horoball_path_distance(8, 4), 6);
        assert_eq!(horoball_path_distance(16, 4), 8);
    }
}
