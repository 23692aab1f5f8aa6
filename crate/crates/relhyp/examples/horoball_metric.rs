//! The horoball distance law: level-0 endpoints of a horoball over a path
//! of paper length d end up at distance min over climbing heights k of
//! 2k + ⌈d / 2^k⌉ — climb, ride a long horizontal edge, descend.
//!
//! Run with `cargo run --release --example horoball_metric`.

use relhyp::cusping::{build_horoball, horoball_path_distance};
use relhyp::graph::MetricGraph;

fn main() -> relhyp::Result<()> {
    let depth = 4;
    println!("path length d | measured | min_k(2k + ceil(d/2^k))");
    for d in [2u64, 4, 8, 16] {
        let gamma = MetricGraph::path(d as usize);
        let h = build_horoball(&gamma, depth)?;
        let measured = h.graph.distances_from(h.vertex(0, 0))?[h.vertex(d as u32, 0) as usize];
        let expected = horoball_path_distance(d, depth);
        println!(
            "{d:>13} | {:>8} | {expected} {}",
            measured / 2,
            if measured as u64 == 2 * expected { "(exact match)" } else { "(MISMATCH)" }
        );
    }
    Ok(())
}
