//! Combinatorial horoballs and cusped Cayley graphs.
//!
//! Shows a standalone horoball over a path graph, then the cusped free
//! group over its commutator subgroup, where peripheral edges materialize
//! at horoball level 0.
//!
//! Run with `cargo run --release --example cusp_space`.

use relhyp::cayley::build_ball;
use relhyp::cusping::{build_cusped, build_horoball, default_depth};
use relhyp::graph::MetricGraph;
use relhyp::words::{GroupOracle, PeripheralFamily, PeripheralSpec};

fn main() -> relhyp::Result<()> {
    // a horoball over an 8-edge path: distances contract logarithmically
    let gamma = MetricGraph::path(8);
    let h = build_horoball(&gamma, 3)?;
    println!(
        "horoball over an 8-edge path, depth 3: {} vertices, {} edges",
        h.graph.vertex_count(),
        h.graph.edge_count()
    );
    let d = h.graph.distances_from(h.vertex(0, 0))?;
    println!(
        "  level-0 endpoint distance: {} paper units (8 along the path)",
        d[h.vertex(8, 0) as usize] / 2
    );

    // the cusped free group over <[a,b]>
    let f2 = GroupOracle::free(2)?;
    let fam = PeripheralFamily::new(vec![PeripheralSpec::cyclic("comm", f2.parse("[a,b]")?)])?;
    let radius = 4;
    let depth = default_depth(radius);
    let (ball, index) = build_ball(&f2, radius)?;
    let cusped = build_cusped(&ball, &index, &f2, &fam, depth)?;
    println!(
        "\ncusped F2/<[a,b]> at radius {radius}, depth {depth}: {} vertices over a {}-vertex ball",
        cusped.graph.vertex_count(),
        ball.vertex_count()
    );
    let multi = cusped.horoballs.iter().filter(|m| m.members > 1).count();
    println!(
        "  {} horoballs, {} over multi-element cosets, {} degenerate",
        cusped.horoballs.len(),
        multi,
        cusped.horoballs.iter().filter(|m| m.degenerate).count()
    );

    // the identity coset {c^-1, 1, c} becomes a path of peripheral edges
    let e = index.vertex_of(&f2.parse("1")?).unwrap();
    let c = index.vertex_of(&f2.parse("[a,b]")?).unwrap();
    let c_inv = index.vertex_of(&f2.parse("[a,b]'")?).unwrap();
    println!(
        "  level-0 coset edges at the identity: d(1, [a,b]) = {} paper, d([a,b], [a,b]') = {} paper",
        cusped.graph.distances_from(e)?[c as usize] / 2,
        cusped.graph.distances_from(c)?[c_inv as usize] / 2,
    );
    println!(
        "  (in the plain ball those distances are {} and {})",
        ball.distances_from(e)?[c as usize] / 2,
        ball.distances_from(c)?[c_inv as usize] / 2,
    );
    Ok(())
}
