//! Cayley balls of the built-in group families: shortlex enumeration,
//! sphere growth, and the exact word metric.
//!
//! Run with `cargo run --release --example build_ball`.

use relhyp::cayley::build_ball;
use relhyp::words::{Family, GroupOracle};

fn main() -> relhyp::Result<()> {
    for (name, oracle, radius) in [
        ("free group F2", GroupOracle::free(2)?, 5u32),
        ("lattice Z^2", GroupOracle::free_abelian(2)?, 5),
        ("genus-2 surface group", GroupOracle::surface(2)?, 3),
        (
            "free product Z * Z^2",
            GroupOracle::new(Family::FreeProduct(vec![
                Family::FreeAbelian { rank: 1 },
                Family::FreeAbelian { rank: 2 },
            ]))?,
            3,
        ),
    ] {
        let (graph, index) = build_ball(&oracle, radius)?;
        println!("{name}: radius {radius}, {} vertices, {} edges", graph.vertex_count(), graph.edge_count());
        let sizes: Vec<usize> = (0..=radius).map(|k| index.sphere(k).unwrap().len()).collect();
        println!("  sphere sizes: {sizes:?}");

        // the graph metric agrees with word length
        let distances = graph.distances_from(0)?;
        let worst = index
            .words()
            .iter()
            .enumerate()
            .all(|(v, w)| distances[v] as usize == 2 * w.len());
        println!("  word metric exact: {worst}");

        // a few normal forms on the outer sphere
        let outer = index.sphere_words(radius)?;
        let sample: Vec<String> = outer.iter().take(5).map(|w| oracle.render(w)).collect();
        println!("  outer sphere starts: {}\n", sample.join(", "));
    }

    // exports: the same ball in three formats
    let f2 = GroupOracle::free(2)?;
    let (graph, _) = build_ball(&f2, 1)?;
    println!("F2 radius-1 ball as CSV:\n{}", graph.to_csv());
    println!("and as DOT:\n{}", graph.to_dot());
    Ok(())
}
