//! Coned-off Cayley graphs: one cone vertex per peripheral coset meeting
//! the ball, joined to the coset's elements by weight-1 (length ½) edges;
//! hat-paths reroute maximal intra-coset subpaths through the cone.

use crate::cayley::BallIndex;
use crate::error::{Error, Result};
use crate::graph::{GraphBuilder, MetricGraph, VertexTag, CONE_EDGE};
use crate::words::{GroupOracle, PeripheralFamily, Word};
use std::collections::BTreeMap;

/// A Cayley ball together with its coned-off version. Ball vertices keep
/// their indices; cone vertices are appended after them.
#[derive(Clone, Debug)]
pub struct ConedGraph {
    pub base: MetricGraph,
    pub coned: MetricGraph,
    base_count: u32,
    peripheral_labels: Vec<String>,
    cone_index: BTreeMap<(String, Word), u32>,
    /// `keys[p][v]` is the coset key of ball vertex `v` under the p-th
    /// peripheral (family list order).
    keys: Vec<Vec<Word>>,
}

/// One cone-vertex visit of a hat-path: the coset and the ball vertices
/// immediately before and after the cone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PenetrationRecord {
    pub peripheral: String,
    pub key: Word,
    pub cone_vertex: u32,
    pub entering: u32,
    pub exiting: u32,
}

impl ConedGraph {
    pub fn base_vertex_count(&self) -> u32 {
        self.base_count
    }

    pub fn cone_count(&self) -> usize {
        self.cone_index.len()
    }

    pub fn is_cone(&self, v: u32) -> bool {
        v >= self.base_count
    }

    pub fn cone_vertex(&self, peripheral: &str, key: &Word) -> Option<u32> {
        self.cone_index.get(&(peripheral.to_string(), key.clone())).copied()
    }

    pub fn cone_vertices(&self) -> impl Iterator<Item = (&(String, Word), &u32)> {
        self.cone_index.iter()
    }

    /// Coset key of ball vertex `v` under the `p`-th peripheral.
    pub fn key_of(&self, p: usize, v: u32) -> &Word {
        &self.keys[p][v as usize]
    }

    pub fn peripheral_count(&self) -> usize {
        self.peripheral_labels.len()
    }

    /// Ball neighbours of a cone vertex (the coset's members in the ball).
    pub fn coset_members(&self, cone: u32) -> Vec<u32> {
        self.coned.neighbors(cone).iter().map(|&(v, _)| v).collect()
    }
}

/// Cone off a Cayley ball. Every (peripheral, coset) pair meeting the ball
/// receives a cone vertex, including cosets meeting it in a single vertex
/// (degree-1 cones); analyses may filter those out.
pub fn cone_off(
    ball: &MetricGraph,
    index: &BallIndex,
    oracle: &GroupOracle,
    fam: &PeripheralFamily,
) -> Result<ConedGraph> {
    fam.validate(oracle)?;
    let base_count = ball.vertex_count() as u32;
    let mut builder = GraphBuilder::new(ball.alphabet().clone());
    for tag in ball.tags() {
        builder.add_vertex(tag.clone());
    }
    for &(u, v, w) in ball.edges() {
        builder.add_edge(u, v, w)?;
    }

    let mut keys: Vec<Vec<Word>> = Vec::with_capacity(fam.len());
    let mut cone_index = BTreeMap::new();
    for spec in fam.iter() {
        let mut per_vertex = Vec::with_capacity(index.vertex_count());
        let mut cosets: BTreeMap<Word, Vec<u32>> = BTreeMap::new();
        for (v, word) in index.words().iter().enumerate() {
            let key = spec.coset_key(oracle, word)?;
            cosets.entry(key.clone()).or_default().push(v as u32);
            per_vertex.push(key);
        }
        for (key, members) in cosets {
            let cone = builder.add_vertex(VertexTag::Cone {
                peripheral: spec.label.clone(),
                key: key.clone(),
            });
            for m in members {
                builder.add_edge(m, cone, CONE_EDGE)?;
            }
            cone_index.insert((spec.label.clone(), key), cone);
        }
        keys.push(per_vertex);
    }

    Ok(ConedGraph {
        base: ball.clone(),
        coned: builder.finish(),
        base_count,
        peripheral_labels: fam.iter().map(|s| s.label.clone()).collect(),
        cone_index,
        keys,
    })
}

/// Rewrite a path in the base ball as its hat-path in the coned graph:
/// each maximal subpath of ≥ 2 vertices lying in one peripheral coset is
/// replaced by entering-vertex → cone → exiting-vertex. Ties between
/// peripherals go to the earlier one in the family list.
pub fn hat_path(coned: &ConedGraph, path: &[u32]) -> Result<Vec<u32>> {
    if path.is_empty() {
        return Err(Error::input("hat_path needs a non-empty path"));
    }
    for &v in path {
        if v >= coned.base_count {
            return Err(Error::input(format!(
                "hat_path input must lie in the base Cayley graph; vertex {v} is a cone"
            )));
        }
    }
    for pair in path.windows(2) {
        if coned.base.edge_weight(pair[0], pair[1]).is_none() {
            return Err(Error::input(format!(
                "vertices {} and {} are not adjacent in the base graph",
                pair[0], pair[1]
            )));
        }
    }

    let mut out: Vec<u32> = vec![path[0]];
    let mut i = 0usize;
    while i + 1 < path.len() {
        let mut replaced = false;
        for (p, per_vertex) in coned.keys.iter().enumerate() {
            let key = &per_vertex[path[i] as usize];
            let mut j = i;
            while j + 1 < path.len() && per_vertex[path[j + 1] as usize] == *key {
                j += 1;
            }
            if j > i {
                let cone = coned
                    .cone_vertex(&coned.peripheral_labels[p], key)
                    .expect("coset of a ball vertex has a cone");
                out.push(cone);
                out.push(path[j]);
                i = j;
                replaced = true;
                break;
            }
        }
        if !replaced {
            out.push(path[i + 1]);
            i += 1;
        }
    }
    Ok(out)
}

/// Penetration records of a path in the coned graph, in path order.
pub fn penetrations(coned: &ConedGraph, hp: &[u32]) -> Result<Vec<PenetrationRecord>> {
    if hp.is_empty() {
        return Err(Error::input("penetrations needs a non-empty path"));
    }
    for pair in hp.windows(2) {
        if coned.coned.edge_weight(pair[0], pair[1]).is_none() {
            return Err(Error::input(format!(
                "vertices {} and {} are not adjacent in the coned graph",
                pair[0], pair[1]
            )));
        }
    }
    let mut out = Vec::new();
    for (i, &v) in hp.iter().enumerate() {
        if coned.is_cone(v) {
            if i == 0 || i + 1 == hp.len() {
                return Err(Error::input(
                    "malformed path: cone vertex at an endpoint has no entering/exiting pair",
                ));
            }
            let (peripheral, key) = match coned.coned.tag(v) {
                VertexTag::Cone { peripheral, key } => (peripheral.clone(), key.clone()),
                _ => unreachable!("vertices past base_count are cones"),
            };
            out.push(PenetrationRecord {
                peripheral,
                key,
                cone_vertex: v,
                entering: hp[i - 1],
                exiting: hp[i + 1],
            });
        }
    }
    Ok(out)
}

/// A path is without backtracking when no cone vertex repeats among its
/// penetrations.
pub fn is_without_backtracking(coned: &ConedGraph, hp: &[u32]) -> Result<bool> {
    let records = penetrations(coned, hp)?;
    let mut seen = std::collections::BTreeSet::new();
    for r in records {
        if !seen.insert(r.cone_vertex) {
            return Ok(false);
        }
    }
    Ok(true)
}
