//! Three peripherals at once: the free group cusped over ⟨a⟩, ⟨b⟩, and
//! ⟨[a,b]⟩ together. At desk scale this only renders the boundary sample
//! as SVG — no topological claim is made about the limit picture.
//!
//! Run with `cargo run --release --example apollonian_gasket`.

use relhyp::boundary;
use relhyp::config::SpaceKind;
use relhyp::pipeline::{boundary_sample, build_space, SpaceData};
use relhyp::words::{GroupOracle, PeripheralFamily, PeripheralSpec};

fn main() -> relhyp::Result<()> {
    let f2 = GroupOracle::free(2)?;
    let fam = PeripheralFamily::new(vec![
        PeripheralSpec::cyclic("pa", f2.parse("a")?),
        PeripheralSpec::cyclic("pb", f2.parse("b")?),
        PeripheralSpec::cyclic("pc", f2.parse("[a,b]")?),
    ])?;
    let radius = 4;
    let space = build_space(&f2, &fam, SpaceKind::Cusped, radius, None, 20_000)?;
    if let SpaceData::Cusped(c) = &space.data {
        println!(
            "cusped F2 over three peripherals at radius {radius}: {} vertices, {} horoballs",
            c.graph.vertex_count(),
            c.horoballs.len()
        );
    }

    let sample = boundary_sample(
        &f2,
        &fam,
        SpaceKind::Cusped,
        radius,
        None,
        std::f64::consts::LN_2,
        20_000,
    )?;
    let dir = std::path::Path::new("out");
    std::fs::create_dir_all(dir)?;
    std::fs::write(dir.join("gasket_heatmap.svg"), boundary::export_heatmap_svg(&sample))?;
    std::fs::write(dir.join("gasket_dendrogram.svg"), boundary::export_dendrogram_svg(&sample))?;
    println!("wrote out/gasket_heatmap.svg and out/gasket_dendrogram.svg");
    Ok(())
}
