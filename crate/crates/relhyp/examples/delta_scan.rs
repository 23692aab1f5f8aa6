//! Hyperbolicity scans across radii for the built-in model spaces: the
//! free group (a tree, δ = 0), the integer lattice (δ grows), its
//! coned-off quotient over an axis (δ saturates), and cusped spaces.
//!
//! Run with `cargo run --release --example delta_scan`.

use relhyp::analysis::DeltaPolicy;
use relhyp::pipeline::PolicyChoice;
use relhyp::config::SpaceKind;
use relhyp::pipeline::delta_scan;
use relhyp::words::{GroupOracle, PeripheralFamily, PeripheralSpec};

fn show(name: &str, scan: &relhyp::analysis::DeltaScan) {
    println!("{name}");
    for r in &scan.reports {
        println!(
            "  R={:<2} vertices={:<5} eligible={:<4} four-point δ = {:>4} scaled ({} paper)   slim δ = {:>2} scaled ({} paper)",
            r.radius,
            r.vertex_count,
            r.eligible_count,
            r.four_point_scaled(),
            r.four_point_paper(),
            r.slim_scaled,
            r.slim_paper(),
        );
    }
    println!(
        "  verdicts: four-point {}, slim {}\n",
        scan.four_point_verdict, scan.slim_verdict
    );
}

fn main() -> relhyp::Result<()> {
    let cap = 20_000;
    let auto = PolicyChoice::Auto { count: 100_000, seed: 42 };
    let exhaustive = PolicyChoice::Fixed(DeltaPolicy::Exhaustive);

    let f2 = GroupOracle::free(2)?;
    let z2 = GroupOracle::free_abelian(2)?;
    let none = PeripheralFamily::empty();
    let axis = PeripheralFamily::new(vec![PeripheralSpec::cyclic("axis", z2.parse("a")?)])?;
    let comm = PeripheralFamily::new(vec![PeripheralSpec::cyclic("comm", f2.parse("[a,b]")?)])?;
    let whole = PeripheralFamily::new(vec![PeripheralSpec::full("whole")])?;

    // trees are 0-hyperbolic at every radius; small balls are scanned
    // exhaustively and large ones by seeded sampling
    let scan = delta_scan(&f2, &none, SpaceKind::Ball, &[2, 3, 4, 5], None, auto, None, cap)?;
    show("free group F2, plain balls", &scan);

    // the lattice is not hyperbolic: δ grows with the radius
    let scan = delta_scan(&z2, &none, SpaceKind::Ball, &[2, 3, 4, 5], None, exhaustive, None, cap)?;
    show("Z^2, plain balls", &scan);

    // coning off the a-axis collapses every row: quasi-line, δ saturates
    for margin in [0u32, 1, 2] {
        let scan = delta_scan(
            &z2,
            &axis,
            SpaceKind::Coned,
            &[2, 3, 4, 5],
            None,
            exhaustive,
            Some(margin),
            cap,
        )?;
        show(&format!("Z^2 coned over <a>, margin {margin}"), &scan);
    }

    // cusped free group over the commutator subgroup
    for margin in [0u32, 1] {
        let scan = delta_scan(
            &f2,
            &comm,
            SpaceKind::Cusped,
            &[3, 4, 5],
            None,
            auto,
            Some(margin),
            cap,
        )?;
        show(&format!("F2 cusped over <[a,b]>, margin {margin}"), &scan);
    }

    // cusped lattice over the whole group: a single horoball swallows the
    // flat and the space turns hyperbolic
    let scan = delta_scan(&z2, &whole, SpaceKind::Cusped, &[2, 4, 6], None, auto, Some(0), cap)?;
    show("Z^2 cusped over the whole group (sampled)", &scan);
    let scan = delta_scan(&z2, &none, SpaceKind::Ball, &[2, 4, 6], None, auto, None, cap)?;
    show("Z^2 plain balls at the same radii", &scan);

    Ok(())
}
