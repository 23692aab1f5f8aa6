//! Finite weighted graphs with exact shortest-path machinery.
//!
//! All lengths are the usual graph lengths multiplied by 2, so that cone
//! edges (length ½) become weight 1 and ordinary edges weight 2, and every
//! distance is an exact integer. Reports convert back to paper units by
//! halving.

use crate::error::{Error, Result};
use crate::words::{Alphabet, Word};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt::Write as _;

/// Scaled length of an ordinary (length-1) edge.
pub const UNIT_EDGE: u8 = 2;
/// Scaled length of a cone (length-½) edge.
pub const CONE_EDGE: u8 = 1;

/// Sentinel for "unreachable" in distance arrays.
pub const INF: u16 = u16::MAX;

/// What a vertex stands for in a constructed space.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VertexTag {
    /// A group element, identified by its normal-form word.
    Group { word: Word },
    /// The cone point of one peripheral coset.
    Cone { peripheral: String, key: Word },
    /// A combinatorial-horoball vertex (base element, depth ≥ 1 in cusped
    /// spaces; depth 0 appears only in standalone horoballs).
    Horo { peripheral: String, key: Word, base: Word, depth: u32 },
}

impl VertexTag {
    pub fn is_group(&self) -> bool {
        matches!(self, VertexTag::Group { .. })
    }

    pub fn label(&self, alphabet: &Alphabet) -> String {
        match self {
            VertexTag::Group { word } => alphabet.render(word),
            VertexTag::Cone { peripheral, key } => {
                format!("CONE:{}:{}", peripheral, alphabet.render(key))
            }
            VertexTag::Horo { peripheral, key, base, depth } => format!(
                "HORO:{}:{}:{}:{}",
                peripheral,
                alphabet.render(key),
                alphabet.render(base),
                depth
            ),
        }
    }
}

/// A finite undirected graph with edge weights in {1, 2} and typed
/// vertices. Immutable once built.
#[derive(Clone, Debug)]
pub struct MetricGraph {
    alphabet: Alphabet,
    tags: Vec<VertexTag>,
    adj: Vec<Vec<(u32, u8)>>,
    edges: Vec<(u32, u32, u8)>,
}

pub struct GraphBuilder {
    alphabet: Alphabet,
    tags: Vec<VertexTag>,
    edges: BTreeMap<(u32, u32), u8>,
}

impl GraphBuilder {
    pub fn new(alphabet: Alphabet) -> Self {
        GraphBuilder { alphabet, tags: Vec::new(), edges: BTreeMap::new() }
    }

    pub fn add_vertex(&mut self, tag: VertexTag) -> u32 {
        self.tags.push(tag);
        (self.tags.len() - 1) as u32
    }

    pub fn vertex_count(&self) -> usize {
        self.tags.len()
    }

    /// Insert an undirected edge; re-adding an existing edge is a no-op,
    /// re-adding with a different weight is an error.
    pub fn add_edge(&mut self, u: u32, v: u32, weight: u8) -> Result<()> {
        if u == v {
            return Err(Error::input(format!("self-loop at vertex {u}")));
        }
        if (u as usize) >= self.tags.len() || (v as usize) >= self.tags.len() {
            return Err(Error::input(format!("edge ({u},{v}) references unknown vertex")));
        }
        if weight != CONE_EDGE && weight != UNIT_EDGE {
            return Err(Error::input(format!("edge weight {weight} not in {{1,2}}")));
        }
        let key = (u.min(v), u.max(v));
        match self.edges.insert(key, weight) {
            Some(old) if old != weight => Err(Error::input(format!(
                "edge ({},{}) added twice with weights {} and {}",
                key.0, key.1, old, weight
            ))),
            _ => Ok(()),
        }
    }

    pub fn finish(self) -> MetricGraph {
        let mut adj: Vec<Vec<(u32, u8)>> = vec![Vec::new(); self.tags.len()];
        let mut edges = Vec::with_capacity(self.edges.len());
        for (&(u, v), &w) in &self.edges {
            adj[u as usize].push((v, w));
            adj[v as usize].push((u, w));
            edges.push((u, v, w));
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        MetricGraph { alphabet: self.alphabet, tags: self.tags, adj, edges }
    }
}

impl MetricGraph {
    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn vertex_count(&self) -> usize {
        self.tags.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn tag(&self, v: u32) -> &VertexTag {
        &self.tags[v as usize]
    }

    pub fn tags(&self) -> &[VertexTag] {
        &self.tags
    }

    pub fn label(&self, v: u32) -> String {
        self.tags[v as usize].label(&self.alphabet)
    }

    /// Neighbours of `v` with edge weights, sorted by vertex index.
    pub fn neighbors(&self, v: u32) -> &[(u32, u8)] {
        &self.adj[v as usize]
    }

    pub fn edges(&self) -> &[(u32, u32, u8)] {
        &self.edges
    }

    pub fn edge_weight(&self, u: u32, v: u32) -> Option<u8> {
        self.adj[u as usize]
            .binary_search_by_key(&v, |&(n, _)| n)
            .ok()
            .map(|i| self.adj[u as usize][i].1)
    }

    fn check_vertex(&self, v: u32) -> Result<()> {
        if (v as usize) >= self.tags.len() {
            return Err(Error::input(format!("unknown vertex {v}")));
        }
        Ok(())
    }

    /// Exact single-source shortest paths under the {1,2} weighting, via a
    /// three-bucket dial scan (distances are settled in increasing order).
    pub fn distances_from(&self, source: u32) -> Result<Vec<u16>> {
        self.check_vertex(source)?;
        let n = self.tags.len();
        let mut dist = vec![INF; n];
        dist[source as usize] = 0;
        let mut buckets: [Vec<u32>; 3] = [vec![source], Vec::new(), Vec::new()];
        let mut pending = 1usize;
        let mut d: u16 = 0;
        while pending > 0 {
            let slot = (d % 3) as usize;
            let bucket = std::mem::take(&mut buckets[slot]);
            for u in bucket {
                pending -= 1;
                if dist[u as usize] != d {
                    continue; // stale entry
                }
                for &(v, w) in &self.adj[u as usize] {
                    let nd = d + w as u16;
                    if nd < dist[v as usize] {
                        dist[v as usize] = nd;
                        buckets[(nd % 3) as usize].push(v);
                        pending += 1;
                    }
                }
            }
            d += 1;
        }
        Ok(dist)
    }

    /// Exact all-pairs distance matrix. Errors when the vertex count
    /// exceeds `cap`.
    pub fn all_pairs(&self, cap: usize) -> Result<DistanceMatrix> {
        let n = self.tags.len();
        if n > cap {
            return Err(Error::resource(format!(
                "all-pairs matrix needs {n} vertices but the cap is {cap}"
            )));
        }
        let mut data = Vec::with_capacity(n * n);
        for v in 0..n {
            data.extend(self.distances_from(v as u32)?);
        }
        Ok(DistanceMatrix { n, data })
    }

    pub fn is_connected(&self) -> bool {
        if self.tags.is_empty() {
            return true;
        }
        self.distances_from(0)
            .map(|d| d.iter().all(|&x| x != INF))
            .unwrap_or(false)
    }

    /// Deterministic shortest path from `u` to `v`: at every step the next
    /// vertex is the smallest-index neighbour lying on some shortest path.
    pub fn extract_geodesic(&self, u: u32, v: u32) -> Result<GeodesicPath> {
        let dist_to_v = self.distances_from(v)?;
        self.extract_geodesic_with(&dist_to_v, u, v)
    }

    /// Same, reusing a precomputed distance array to `v`.
    pub fn extract_geodesic_with(&self, dist_to_v: &[u16], u: u32, v: u32) -> Result<GeodesicPath> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if dist_to_v[u as usize] == INF {
            return Err(Error::input(format!("vertices {u} and {v} are not connected")));
        }
        let total = dist_to_v[u as usize];
        let mut vertices = vec![u];
        let mut cur = u;
        while cur != v {
            let here = dist_to_v[cur as usize];
            let next = self.adj[cur as usize]
                .iter()
                .find(|&&(n, w)| dist_to_v[n as usize] + w as u16 == here)
                .map(|&(n, _)| n)
                .expect("shortest-path neighbour exists");
            vertices.push(next);
            cur = next;
        }
        Ok(GeodesicPath { vertices, total })
    }

    /// Total scaled weight of a vertex path; errors when consecutive
    /// vertices are not adjacent.
    pub fn path_weight(&self, path: &[u32]) -> Result<u16> {
        let mut total = 0u16;
        for pair in path.windows(2) {
            let w = self.edge_weight(pair[0], pair[1]).ok_or_else(|| {
                Error::input(format!("vertices {} and {} are not adjacent", pair[0], pair[1]))
            })?;
            total += w as u16;
        }
        Ok(total)
    }

    /// Edge-list export, one `u,v,weight` line per edge.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("u,v,weight\n");
        for &(u, v, w) in &self.edges {
            let _ = writeln!(out, "{u},{v},{w}");
        }
        out
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph G {\n");
        for (i, tag) in self.tags.iter().enumerate() {
            let _ = writeln!(out, "  {} [label=\"{}\"];", i, tag.label(&self.alphabet));
        }
        for &(u, v, w) in &self.edges {
            let _ = writeln!(out, "  {u} -- {v} [weight={w}];");
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> String {
        let doc = GraphJson {
            alphabet: self.alphabet.generator_names().to_vec(),
            vertices: self
                .tags
                .iter()
                .enumerate()
                .map(|(i, t)| VertexJson { id: i as u32, label: t.label(&self.alphabet) })
                .collect(),
            edges: self.edges.clone(),
        };
        serde_json::to_string_pretty(&doc).expect("graph serializes")
    }

    /// Rebuild a graph from its JSON export. Inverse of [`to_json`] up to
    /// vertex-index order.
    pub fn from_json(text: &str) -> Result<MetricGraph> {
        let doc: GraphJson =
            serde_json::from_str(text).map_err(|e| Error::input(format!("bad graph JSON: {e}")))?;
        let alphabet = Alphabet::new(doc.alphabet)?;
        let mut builder = GraphBuilder::new(alphabet);
        for (i, v) in doc.vertices.iter().enumerate() {
            if v.id as usize != i {
                return Err(Error::input("vertex ids must be dense and ordered"));
            }
            let tag = parse_label(&builder.alphabet, &v.label)?;
            builder.add_vertex(tag);
        }
        for &(u, v, w) in &doc.edges {
            builder.add_edge(u, v, w)?;
        }
        Ok(builder.finish())
    }

    /// Path graph with `n` unit (paper length 1) edges; vertices are the
    /// powers of a single generator.
    pub fn path(n: usize) -> MetricGraph {
        let alphabet = Alphabet::standard(1).expect("one generator");
        let mut b = GraphBuilder::new(alphabet);
        for i in 0..=n {
            let word = Word::from_letters(vec![0; i]);
            b.add_vertex(VertexTag::Group { word });
        }
        for i in 0..n {
            b.add_edge(i as u32, i as u32 + 1, UNIT_EDGE).expect("path edge");
        }
        b.finish()
    }

    /// Cycle graph with `n` unit edges.
    pub fn cycle(n: usize) -> MetricGraph {
        assert!(n >= 3, "cycle needs at least 3 vertices");
        let alphabet = Alphabet::standard(1).expect("one generator");
        let mut b = GraphBuilder::new(alphabet);
        for i in 0..n {
            let word = Word::from_letters(vec![0; i]);
            b.add_vertex(VertexTag::Group { word });
        }
        for i in 0..n {
            b.add_edge(i as u32, ((i + 1) % n) as u32, UNIT_EDGE).expect("cycle edge");
        }
        b.finish()
    }

    /// Complete graph with `n` vertices and unit edges.
    pub fn complete(n: usize) -> MetricGraph {
        let alphabet = Alphabet::standard(1).expect("one generator");
        let mut b = GraphBuilder::new(alphabet);
        for i in 0..n {
            let word = Word::from_letters(vec![0; i]);
            b.add_vertex(VertexTag::Group { word });
        }
        for i in 0..n {
            for j in i + 1..n {
                b.add_edge(i as u32, j as u32, UNIT_EDGE).expect("edge");
            }
        }
        b.finish()
    }

    /// Star with `leaves` cone edges around a central cone vertex.
    pub fn cone_star(leaves: usize) -> MetricGraph {
        let alphabet = Alphabet::standard(1).expect("one generator");
        let mut b = GraphBuilder::new(alphabet);
        let center = b.add_vertex(VertexTag::Cone {
            peripheral: "star".to_string(),
            key: Word::empty(),
        });
        for i in 0..leaves {
            let leaf = b.add_vertex(VertexTag::Group { word: Word::from_letters(vec![0; i + 1]) });
            b.add_edge(center, leaf, CONE_EDGE).expect("edge");
        }
        b.finish()
    }
}

fn parse_label(alphabet: &Alphabet, label: &str) -> Result<VertexTag> {
    if let Some(rest) = label.strip_prefix("CONE:") {
        let (peripheral, key) = rest
            .rsplit_once(':')
            .ok_or_else(|| Error::input(format!("bad cone label {label:?}")))?;
        return Ok(VertexTag::Cone {
            peripheral: peripheral.to_string(),
            key: alphabet.parse_word(key)?,
        });
    }
    if let Some(rest) = label.strip_prefix("HORO:") {
        let parts: Vec<&str> = rest.split(':').collect();
        if parts.len() != 4 {
            return Err(Error::input(format!("bad horoball label {label:?}")));
        }
        return Ok(VertexTag::Horo {
            peripheral: parts[0].to_string(),
            key: alphabet.parse_word(parts[1])?,
            base: alphabet.parse_word(parts[2])?,
            depth: parts[3]
                .parse()
                .map_err(|_| Error::input(format!("bad horoball depth in {label:?}")))?,
        });
    }
    Ok(VertexTag::Group { word: alphabet.parse_word(label)? })
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    alphabet: Vec<String>,
    vertices: Vec<VertexJson>,
    edges: Vec<(u32, u32, u8)>,
}

#[derive(Serialize, Deserialize)]
struct VertexJson {
    id: u32,
    label: String,
}

/// Symmetric matrix of exact scaled distances.
#[derive(Clone, Debug)]
pub struct DistanceMatrix {
    n: usize,
    data: Vec<u16>,
}

impl DistanceMatrix {
    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: u32, j: u32) -> u16 {
        self.data[i as usize * self.n + j as usize]
    }

    pub fn row(&self, i: u32) -> &[u16] {
        &self.data[i as usize * self.n..(i as usize + 1) * self.n]
    }

    pub fn max_finite(&self) -> u16 {
        self.data.iter().copied().filter(|&d| d != INF).max().unwrap_or(0)
    }
}

/// A concrete shortest path: vertex sequence plus its total scaled weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeodesicPath {
    pub vertices: Vec<u32>,
    pub total: u16,
}

impl GeodesicPath {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

/// Supported export formats for graphs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExportFormat {
    Dot,
    Json,
    Csv,
}

impl std::str::FromStr for ExportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dot" => Ok(ExportFormat::Dot),
            "json" => Ok(ExportFormat::Json),
            "csv" => Ok(ExportFormat::Csv),
            other => Err(Error::input(format!("unknown graph export format {other:?}"))),
        }
    }
}

/// Render a graph in the requested format.
pub fn export_graph(g: &MetricGraph, format: ExportFormat) -> String {
    match format {
        ExportFormat::Dot => g.to_dot(),
        ExportFormat::Json => g.to_json(),
        ExportFormat::Csv => g.to_csv(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Plain Dijkstra used as an independent oracle for the dial scan.
    fn dijkstra(g: &MetricGraph, src: u32) -> Vec<u32> {
        use std::cmp::Reverse;
        use std::collections::BinaryHeap;
        let n = g.vertex_count();
        let mut dist = vec![u32::MAX; n];
        dist[src as usize] = 0;
        let mut heap = BinaryHeap::new();
        heap.push(Reverse((0u32, src)));
        while let Some(Reverse((d, u))) = heap.pop() {
            if d > dist[u as usize] {
                continue;
            }
            for &(v, w) in g.neighbors(u) {
                let nd = d + w as u32;
                if nd < dist[v as usize] {
                    dist[v as usize] = nd;
                    heap.push(Reverse((nd, v)));
                }
            }
        }
        dist
    }

    fn random_graph(rng: &mut ChaCha8Rng, n: usize) -> MetricGraph {
        let alphabet = Alphabet::standard(1).unwrap();
        let mut b = GraphBuilder::new(alphabet);
        for i in 0..n {
            b.add_vertex(VertexTag::Group { word: Word::from_letters(vec![0; i]) });
        }
        // random spanning tree plus extra edges, mixed weights
        for i in 1..n {
            let j = rng.gen_range(0..i);
            let w = if rng.gen_bool(0.3) { CONE_EDGE } else { UNIT_EDGE };
            b.add_edge(i as u32, j as u32, w).unwrap();
        }
        for _ in 0..n {
            let i = rng.gen_range(0..n);
            let j = rng.gen_range(0..n);
            if i != j {
                let w = if rng.gen_bool(0.3) { CONE_EDGE } else { UNIT_EDGE };
                let _ = b.add_edge(i as u32, j as u32, w);
            }
        }
        b.finish()
    }

    #[test]
    fn distances_examples() {
        let p = MetricGraph::path(3);
        let d = p.distances_from(0).unwrap();
        assert_eq!(d[3], 6); // three unit edges, scaled

        let star = MetricGraph::cone_star(4);
        let d = star.distances_from(1).unwrap();
        assert_eq!(d[2], 2); // leaf to leaf through the cone point
    }

    #[test]
    fn all_pairs_examples() {
        let k3 = MetricGraph::complete(3);
        let m = k3.all_pairs(100).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let expect = if i == j { 0 } else { 2 };
                assert_eq!(m.get(i, j), expect);
            }
        }

        let c4 = MetricGraph::cycle(4);
        let m = c4.all_pairs(100).unwrap();
        assert_eq!(m.get(0, 2), 4);
        assert_eq!(m.get(1, 3), 4);
    }

    #[test]
    fn all_pairs_cap() {
        let p = MetricGraph::path(10);
        let err = p.all_pairs(5).unwrap_err();
        assert!(matches!(err, Error::Resource(_)));
        assert!(err.to_string().contains('5'));
    }

    #[test]
    fn dial_matches_dijkstra() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..50 {
            let n = rng.gen_range(2..60);
            let g = random_graph(&mut rng, n);
            let src = rng.gen_range(0..n) as u32;
            let dial = g.distances_from(src).unwrap();
            let oracle = dijkstra(&g, src);
            for v in 0..n {
                assert_eq!(dial[v] as u32, oracle[v]);
            }
        }
    }

    #[test]
    fn triangle_inequality_holds() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let g = random_graph(&mut rng, 40);
        let m = g.all_pairs(100).unwrap();
        let n = g.vertex_count() as u32;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    assert!(m.get(i, j) as u32 + m.get(j, k) as u32 >= m.get(i, k) as u32);
                }
            }
        }
    }

    #[test]
    fn geodesic_identity_and_tree_cases() {
        let p = MetricGraph::path(4);
        let g = p.extract_geodesic(2, 2).unwrap();
        assert_eq!(g.vertices, vec![2]);
        assert_eq!(g.total, 0);

        let g = p.extract_geodesic(0, 4).unwrap();
        assert_eq!(g.vertices, vec![0, 1, 2, 3, 4]);
        assert_eq!(g.total, 8);
    }

    #[test]
    fn geodesic_tie_break_is_deterministic() {
        let c4 = MetricGraph::cycle(4);
        let first = c4.extract_geodesic(0, 2).unwrap();
        for _ in 0..5 {
            assert_eq!(c4.extract_geodesic(0, 2).unwrap(), first);
        }
        // the smaller-index neighbour of 0 on a shortest path is 1
        assert_eq!(first.vertices, vec![0, 1, 2]);
    }

    #[test]
    fn geodesic_weight_matches_matrix_on_random_pairs() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let g = random_graph(&mut rng, 50);
        let m = g.all_pairs(100).unwrap();
        for _ in 0..1000 {
            let u = rng.gen_range(0..50) as u32;
            let v = rng.gen_range(0..50) as u32;
            let path = g.extract_geodesic(u, v).unwrap();
            assert_eq!(path.total, m.get(u, v));
            assert_eq!(g.path_weight(&path.vertices).unwrap(), path.total);
        }
    }

    #[test]
    fn distances_agree_with_matrix_rows() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let g = random_graph(&mut rng, 60);
        let m = g.all_pairs(100).unwrap();
        for _ in 0..100 {
            let src = rng.gen_range(0..60) as u32;
            assert_eq!(g.distances_from(src).unwrap(), m.row(src));
        }
    }

    #[test]
    fn csv_export_examples() {
        let p = MetricGraph::path(1);
        assert_eq!(p.to_csv(), "u,v,weight\n0,1,2\n");

        let star = MetricGraph::cone_star(1);
        assert_eq!(star.to_csv(), "u,v,weight\n0,1,1\n");
    }

    #[test]
    fn json_round_trip() {
        let star = MetricGraph::cone_star(3);
        let json = star.to_json();
        let back = MetricGraph::from_json(&json).unwrap();
        assert_eq!(back.to_json(), json);
        assert_eq!(back.to_csv(), star.to_csv());
        assert_eq!(back.tags(), star.tags());
    }

    #[test]
    fn unknown_format_is_an_input_error() {
        let err = "svg".parse::<ExportFormat>().unwrap_err();
        assert!(matches!(err, Error::Input(_)));
    }

    #[test]
    fn builder_rejects_bad_edges() {
        let alphabet = Alphabet::standard(1).unwrap();
        let mut b = GraphBuilder::new(alphabet);
        let v = b.add_vertex(VertexTag::Group { word: Word::empty() });
        assert!(b.add_edge(v, v, UNIT_EDGE).is_err());
        assert!(b.add_edge(v, 99, UNIT_EDGE).is_err());
        let u = b.add_vertex(VertexTag::Group { word: Word::single(0) });
        b.add_edge(u, v, UNIT_EDGE).unwrap();
        b.add_edge(v, u, UNIT_EDGE).unwrap(); // same edge, same weight: fine
        assert!(b.add_edge(v, u, CONE_EDGE).is_err());
    }
}
