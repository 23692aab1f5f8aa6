//! Sphere clustering of the free group: the visual metric on the radius-R
//! sphere splits into 4, 12, 36, … clusters as the threshold tightens —
//! the branching of a Cantor set. Writes the heatmap and dendrogram SVGs.
//!
//! Run with `cargo run --release --example boundary_cantor`.

use relhyp::boundary::{self, cluster_count_at};
use relhyp::config::SpaceKind;
use relhyp::pipeline::boundary_sample;
use relhyp::words::{GroupOracle, PeripheralFamily};

fn main() -> relhyp::Result<()> {
    let f2 = GroupOracle::free(2)?;
    let radius = 4;
    let sample = boundary_sample(
        &f2,
        &PeripheralFamily::empty(),
        SpaceKind::Ball,
        radius,
        None,
        std::f64::consts::LN_2,
        20_000,
    )?;
    println!(
        "F2 sphere at radius {radius}: {} words, visual metric rho = 2^-(x|y)",
        sample.len()
    );
    for k in 1..radius {
        println!(
            "  clusters at threshold 2^-{k}: {} (= 4 * 3^{})",
            cluster_count_at(&sample, 4 * k),
            k - 1
        );
    }

    let dir = std::path::Path::new("out");
    std::fs::create_dir_all(dir)?;
    std::fs::write(dir.join("cantor_heatmap.svg"), boundary::export_heatmap_svg(&sample))?;
    std::fs::write(dir.join("cantor_dendrogram.svg"), boundary::export_dendrogram_svg(&sample))?;
    println!("\nwrote out/cantor_heatmap.svg (block-diagonal) and out/cantor_dendrogram.svg");
    Ok(())
}
