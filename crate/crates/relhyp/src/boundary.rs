//! Finite-radius boundary sampling: Gromov products of sphere vertices, a
//! visual metric ρ(x,y) = exp(−ε·(x|y)), single-linkage clustering, and
//! deterministic CSV/JSON/SVG exports.
//!
//! Only sphere vertices (group elements at word length R) are sampled;
//! cone and horoball vertices head toward parabolic points, which this
//! approximation deliberately omits.

use crate::error::{Error, Result};
use crate::graph::{DistanceMatrix, MetricGraph, VertexTag};
use crate::plot;
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;

/// Doubled Gromov product 2·(x|y) in scaled units, so half-integers stay
/// integral: d(base,x) + d(base,y) − d(x,y). `(x|x)` doubles to 2·d(base,x).
pub fn gromov_product2(matrix: &DistanceMatrix, base: u32, x: u32, y: u32) -> u32 {
    let bx = matrix.get(base, x) as u32;
    let by = matrix.get(base, y) as u32;
    let xy = matrix.get(x, y) as u32;
    bx + by - xy
}

/// Paper-unit Gromov product from the doubled scaled value.
pub fn product2_to_paper(product2: u32) -> f64 {
    product2 as f64 / 4.0
}

/// One agglomeration step; clusters 0..n−1 are the sphere leaves and step
/// i creates cluster n+i by merging `a` and `b`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MergeStep {
    pub a: usize,
    pub b: usize,
    /// Single-linkage merge height in the visual metric.
    pub rho: f64,
    /// The exact doubled product realizing the merge.
    pub product2: u32,
    pub size: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Dendrogram {
    pub steps: Vec<MergeStep>,
    pub leaf_order: Vec<usize>,
}

/// A boundary sample of one space at one radius.
#[derive(Clone, Debug)]
pub struct BoundarySample {
    pub basepoint: u32,
    pub radius: u32,
    pub epsilon: f64,
    /// Sphere vertex ids in the ambient space.
    pub sphere: Vec<u32>,
    /// Rendered sphere words, aligned with `sphere`.
    pub words: Vec<String>,
    /// Row-major n×n doubled Gromov products.
    pub product2: Vec<u32>,
    pub dendrogram: Dendrogram,
}

impl BoundarySample {
    pub fn len(&self) -> usize {
        self.sphere.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sphere.is_empty()
    }

    #[inline]
    pub fn product2_at(&self, i: usize, j: usize) -> u32 {
        self.product2[i * self.sphere.len() + j]
    }

    pub fn rho(&self, i: usize, j: usize) -> f64 {
        if i == j {
            return 0.0;
        }
        (-self.epsilon * product2_to_paper(self.product2_at(i, j))).exp()
    }
}

/// Sample the boundary structure of a space: exact Gromov products of the
/// sphere vertices and their single-linkage dendrogram under ρ.
pub fn sample_boundary(
    graph: &MetricGraph,
    matrix: &DistanceMatrix,
    basepoint: u32,
    sphere: &[u32],
    radius: u32,
    epsilon: f64,
) -> Result<BoundarySample> {
    if sphere.is_empty() {
        return Err(Error::input("boundary sample needs a non-empty sphere"));
    }
    if !(epsilon > 0.0) {
        return Err(Error::input("epsilon must be positive"));
    }
    let n = sphere.len();
    let mut product2 = vec![0u32; n * n];
    for i in 0..n {
        for j in 0..n {
            product2[i * n + j] = gromov_product2(matrix, basepoint, sphere[i], sphere[j]);
        }
    }
    let words = sphere
        .iter()
        .map(|&v| match graph.tag(v) {
            VertexTag::Group { word } => graph.alphabet().render(word),
            other => other.label(graph.alphabet()),
        })
        .collect();
    let dendrogram = single_linkage(n, &product2, epsilon);
    Ok(BoundarySample {
        basepoint,
        radius,
        epsilon,
        sphere: sphere.to_vec(),
        words,
        product2,
        dendrogram,
    })
}

/// Single linkage on ρ: pairs merge in decreasing product order (ties
/// broken by index), which is increasing ρ order, so merge heights are
/// non-decreasing.
fn single_linkage(n: usize, product2: &[u32], epsilon: f64) -> Dendrogram {
    if n == 1 {
        return Dendrogram { steps: Vec::new(), leaf_order: vec![0] };
    }
    let mut pairs: Vec<(u32, usize, usize)> = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            pairs.push((product2[i * n + j], i, j));
        }
    }
    pairs.sort_unstable_by(|x, y| y.0.cmp(&x.0).then(x.1.cmp(&y.1)).then(x.2.cmp(&y.2)));

    let mut parent: Vec<usize> = (0..n).collect();
    let mut cluster_of: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut steps = Vec::with_capacity(n - 1);
    let mut children: Vec<(usize, usize)> = Vec::with_capacity(n - 1);
    let mut sizes: Vec<usize> = vec![1; n];
    for (p2, i, j) in pairs {
        let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
        if ri == rj {
            continue;
        }
        let (ca, cb) = (cluster_of[ri], cluster_of[rj]);
        let (a, b) = (ca.min(cb), ca.max(cb));
        let size = sizes[ri] + sizes[rj];
        parent[ri] = rj;
        let root = find(&mut parent, rj);
        cluster_of[root] = n + steps.len();
        sizes[root] = size;
        children.push((a, b));
        steps.push(MergeStep {
            a,
            b,
            rho: (-epsilon * product2_to_paper(p2)).exp(),
            product2: p2,
            size,
        });
        if steps.len() == n - 1 {
            break;
        }
    }

    // leaf order by depth-first traversal from the final cluster
    let mut leaf_order = Vec::with_capacity(n);
    let mut stack = vec![n + steps.len() - 1];
    while let Some(c) = stack.pop() {
        if c < n {
            leaf_order.push(c);
        } else {
            let (a, b) = children[c - n];
            stack.push(b);
            stack.push(a);
        }
    }
    Dendrogram { steps, leaf_order }
}

/// Connected clusters when all pairs with doubled product ≥ `theta2` are
/// linked. Clusters are sorted by smallest member; members are sorted.
pub fn clusters_at(sample: &BoundarySample, theta2: u32) -> Vec<Vec<usize>> {
    let n = sample.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for i in 0..n {
        for j in i + 1..n {
            if sample.product2_at(i, j) >= theta2 {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[ri] = rj;
                }
            }
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for i in 0..n {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push(i);
    }
    let mut out: Vec<Vec<usize>> = groups.into_values().collect();
    for g in &mut out {
        g.sort_unstable();
    }
    out.sort_by_key(|g| g[0]);
    out
}

pub fn cluster_count_at(sample: &BoundarySample, theta2: u32) -> usize {
    clusters_at(sample, theta2).len()
}

/// Adjacency between clusters: A ~ B when some cross pair reaches doubled
/// product ≥ `theta2_adj` (with `theta2_adj` < the clustering threshold).
pub fn cluster_adjacency(
    sample: &BoundarySample,
    theta2_cluster: u32,
    theta2_adj: u32,
) -> (Vec<Vec<usize>>, Vec<(usize, usize)>) {
    let clusters = clusters_at(sample, theta2_cluster);
    let mut of_vertex = vec![usize::MAX; sample.len()];
    for (c, members) in clusters.iter().enumerate() {
        for &m in members {
            of_vertex[m] = c;
        }
    }
    let mut edges = std::collections::BTreeSet::new();
    for i in 0..sample.len() {
        for j in i + 1..sample.len() {
            let (ci, cj) = (of_vertex[i], of_vertex[j]);
            if ci != cj && sample.product2_at(i, j) >= theta2_adj {
                edges.insert((ci.min(cj), ci.max(cj)));
            }
        }
    }
    (clusters, edges.into_iter().collect())
}

/// Cluster adjacency completed by the parabolic points the sphere sample
/// omits: each peripheral coset whose sphere representatives split across
/// several clusters contributes one formal vertex joined to those
/// clusters (the boundary of a relatively hyperbolic pair is the boundary
/// of the electrified space together with the parabolic points, and a
/// coset's sphere words are exactly the approach arms of its parabolic
/// point). The basepoint's own coset junction is invisible to Gromov
/// products — its two arms are antipodal as seen from inside the coset —
/// so circles always sample as arcs until their parabolic points return.
pub struct CompletedAdjacency {
    pub clusters: Vec<Vec<usize>>,
    /// Cluster-to-cluster adjacency from the visual metric.
    pub cluster_edges: Vec<(usize, usize)>,
    /// One entry per formal parabolic vertex: the clusters it joins.
    pub parabolic_links: Vec<Vec<usize>>,
}

impl CompletedAdjacency {
    /// Is the completed graph (clusters plus formal parabolic vertices) a
    /// single cycle?
    pub fn is_single_cycle(&self) -> bool {
        let n = self.clusters.len() + self.parabolic_links.len();
        let mut edges = self.cluster_edges.clone();
        for (i, links) in self.parabolic_links.iter().enumerate() {
            let formal = self.clusters.len() + i;
            for &c in links {
                edges.push((c.min(formal), c.max(formal)));
            }
        }
        is_single_cycle(n, &edges)
    }
}

/// Build the completed adjacency: visual-metric cluster adjacency plus
/// formal parabolic vertices. `coset_arms` lists, per peripheral coset
/// meeting the sphere, the sphere indices of its member words.
pub fn completed_adjacency(
    sample: &BoundarySample,
    theta2_cluster: u32,
    theta2_adj: u32,
    coset_arms: &[Vec<usize>],
) -> CompletedAdjacency {
    let (clusters, cluster_edges) = cluster_adjacency(sample, theta2_cluster, theta2_adj);
    let mut of_vertex = vec![usize::MAX; sample.len()];
    for (c, members) in clusters.iter().enumerate() {
        for &m in members {
            of_vertex[m] = c;
        }
    }
    let mut parabolic_links = Vec::new();
    for arms in coset_arms {
        let mut touched: Vec<usize> = arms.iter().map(|&i| of_vertex[i]).collect();
        touched.sort_unstable();
        touched.dedup();
        if touched.len() >= 2 {
            parabolic_links.push(touched);
        }
    }
    CompletedAdjacency { clusters, cluster_edges, parabolic_links }
}

/// A graph is a single path when it is connected with exactly two
/// endpoints of degree 1 and every other vertex of degree 2.
pub fn is_single_path(n: usize, edges: &[(usize, usize)]) -> bool {
    if n < 2 || edges.len() + 1 != n {
        return false;
    }
    let mut degree = vec![0usize; n];
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        degree[a] += 1;
        degree[b] += 1;
        adj[a].push(b);
        adj[b].push(a);
    }
    let ones = degree.iter().filter(|&&d| d == 1).count();
    if ones != 2 || degree.iter().any(|&d| d > 2 || d == 0) {
        return false;
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0usize];
    seen[0] = true;
    let mut count = 1;
    while let Some(u) = stack.pop() {
        for &v in &adj[u] {
            if !seen[v] {
                seen[v] = true;
                count += 1;
                stack.push(v);
            }
        }
    }
    count == n
}

/// A graph is a single cycle when it is connected with every vertex of
/// degree exactly 2 (so it has ≥ 3 vertices and as many edges).
pub fn is_single_cycle(n: usize, edges: &[(usize, usize)]) -> bool {
    if n < 3 || edges.len() != n {
        return false;
    }
    let mut degree = vec![0usize; n];
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        degree[a] += 1;
        degree[b] += 1;
        adj[a].push(b);
        adj[b].push(a);
    }
    if degree.iter().any(|&d| d != 2) {
        return false;
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0usize];
    seen[0] = true;
    let mut count = 1;
    while let Some(u) = stack.pop() {
        for &v in &adj[u] {
            if !seen[v] {
                seen[v] = true;
                count += 1;
                stack.push(v);
            }
        }
    }
    count == n
}

/// Full ρ matrix as CSV, first column and header row carrying the words.
pub fn export_csv(sample: &BoundarySample) -> String {
    let n = sample.len();
    let mut out = String::from("word");
    for w in &sample.words {
        let _ = write!(out, ",{w}");
    }
    out.push('\n');
    for i in 0..n {
        let _ = write!(out, "{}", sample.words[i]);
        for j in 0..n {
            let _ = write!(out, ",{}", sample.rho(i, j));
        }
        out.push('\n');
    }
    out
}

#[derive(Serialize, Deserialize, PartialEq, Debug)]
pub struct BoundaryJson {
    pub basepoint: u32,
    pub radius: u32,
    pub epsilon: f64,
    pub words: Vec<String>,
    pub product2: Vec<Vec<u32>>,
    pub dendrogram: Dendrogram,
}

pub fn export_json(sample: &BoundarySample) -> String {
    let n = sample.len();
    let doc = BoundaryJson {
        basepoint: sample.basepoint,
        radius: sample.radius,
        epsilon: sample.epsilon,
        words: sample.words.clone(),
        product2: (0..n)
            .map(|i| sample.product2[i * n..(i + 1) * n].to_vec())
            .collect(),
        dendrogram: sample.dendrogram.clone(),
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("serializable");
    s.push('\n');
    s
}

pub fn import_json(text: &str) -> Result<BoundaryJson> {
    serde_json::from_str(text).map_err(|e| Error::input(format!("bad boundary JSON: {e}")))
}

/// Heatmap of ρ with rows and columns in dendrogram leaf order; darker is
/// closer at infinity.
pub fn export_heatmap_svg(sample: &BoundarySample) -> String {
    let n = sample.len();
    let order = &sample.dendrogram.leaf_order;
    let cell = 8.0f64.min(640.0 / n as f64).max(1.0);
    let size = cell * n as f64;
    let mut svg = plot::Svg::new(size + 2.0, size + 2.0);
    for (ri, &i) in order.iter().enumerate() {
        for (rj, &j) in order.iter().enumerate() {
            let rho = sample.rho(i, j);
            let shade = (rho * 255.0).round().clamp(0.0, 255.0) as u8;
            svg.rect(
                1.0 + rj as f64 * cell,
                1.0 + ri as f64 * cell,
                cell,
                cell,
                &format!("rgb({shade},{shade},{shade})"),
            );
        }
    }
    svg.finish()
}

/// Dendrogram with leaves on the x-axis (leaf order) and merge height ρ
/// on the y-axis.
pub fn export_dendrogram_svg(sample: &BoundarySample) -> String {
    let n = sample.len();
    let width = 800.0;
    let height = 400.0;
    let margin = 20.0;
    let mut svg = plot::Svg::new(width, height);
    if n == 1 {
        svg.text(margin, height / 2.0, "single-point sphere");
        return svg.finish();
    }
    let xs_of_leaf = |pos: usize| -> f64 {
        margin + (width - 2.0 * margin) * (pos as f64 + 0.5) / n as f64
    };
    let y_of_rho = |rho: f64| -> f64 { height - margin - (height - 2.0 * margin) * rho };
    // position and current height per cluster id
    let mut pos = vec![0.0f64; n + sample.dendrogram.steps.len()];
    let mut top = vec![0.0f64; n + sample.dendrogram.steps.len()];
    for (slot, &leaf) in sample.dendrogram.leaf_order.iter().enumerate() {
        pos[leaf] = xs_of_leaf(slot);
        top[leaf] = 0.0;
    }
    for (s, step) in sample.dendrogram.steps.iter().enumerate() {
        let (xa, xb) = (pos[step.a], pos[step.b]);
        let (ya, yb) = (y_of_rho(top[step.a]), y_of_rho(top[step.b]));
        let y = y_of_rho(step.rho);
        svg.line(xa, ya, xa, y);
        svg.line(xb, yb, xb, y);
        svg.line(xa, y, xb, y);
        pos[n + s] = (xa + xb) / 2.0;
        top[n + s] = step.rho;
    }
    svg.finish()
}
