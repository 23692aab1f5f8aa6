//! Circle signal in the boundary of the cusped free group over its
//! commutator subgroup.
//!
//! The sphere sample deliberately omits parabolic points, and the
//! basepoint lies inside the peripheral subgroup, so the circle always
//! samples as an arc cut at the basepoint's own parabolic point: the
//! cluster adjacency is a single path whose two ends are the commutator
//! directions [a,b] and [a,b]⁻¹. Restoring one formal vertex per
//! multi-armed peripheral coset closes the arc into a single cycle.
//!
//! Run with `cargo run --release --example boundary_circle`.

use relhyp::boundary::{self, cluster_adjacency};
use relhyp::config::SpaceKind;
use relhyp::pipeline::{boundary_circle_check, boundary_sample};
use relhyp::words::{GroupOracle, PeripheralFamily, PeripheralSpec};

fn main() -> relhyp::Result<()> {
    let f2 = GroupOracle::free(2)?;
    let fam = PeripheralFamily::new(vec![PeripheralSpec::cyclic("comm", f2.parse("[a,b]")?)])?;
    let radius = 4;
    let (theta_cluster, theta_adj) = (8, 4); // paper products 2 and 1

    let sample = boundary_sample(
        &f2,
        &fam,
        SpaceKind::Cusped,
        radius,
        None,
        std::f64::consts::LN_2,
        20_000,
    )?;
    let (clusters, edges) = cluster_adjacency(&sample, theta_cluster, theta_adj);
    println!(
        "cusped F2/<[a,b]> sphere at radius {radius}: {} words in {} clusters",
        sample.len(),
        clusters.len()
    );
    for (i, c) in clusters.iter().enumerate() {
        let head: Vec<&str> = c.iter().take(3).map(|&v| sample.words[v].as_str()).collect();
        let more = if c.len() > 3 { ", …" } else { "" };
        println!("  [{i}] {} words: {}{more}", c.len(), head.join(", "));
    }
    println!("  adjacency edges: {edges:?}");

    let check = boundary_circle_check(
        &f2,
        &fam,
        SpaceKind::Cusped,
        radius,
        None,
        std::f64::consts::LN_2,
        theta_cluster,
        theta_adj,
        20_000,
    )?;
    println!(
        "\nraw adjacency is a single arc: {} (cycle without completion: {})",
        check.raw_single_path, check.raw_single_cycle
    );
    println!(
        "restored parabolic points: {} — completed graph is a single cycle: {}",
        check.parabolic_points, check.completed_single_cycle
    );

    let dir = std::path::Path::new("out");
    std::fs::create_dir_all(dir)?;
    std::fs::write(dir.join("circle_heatmap.svg"), boundary::export_heatmap_svg(&sample))?;
    println!("\nwrote out/circle_heatmap.svg");
    Ok(())
}
