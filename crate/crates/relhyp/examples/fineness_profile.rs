//! Circuit growth through cone edges: a fine graph admits only finitely
//! many circuits of each length through an edge, so stabilizing counts
//! are evidence of fineness and growing counts rule it out.
//!
//! Run with `cargo run --release --example fineness_profile`.

use relhyp::pipeline::fineness_scan;
use relhyp::words::{GroupOracle, PeripheralFamily, PeripheralSpec};

fn main() -> relhyp::Result<()> {
    let max_paper = 6;

    // the coned lattice keeps acquiring short circuits through the
    // identity's cone edge as more of each row enters the ball
    let z2 = GroupOracle::free_abelian(2)?;
    let fam = PeripheralFamily::new(vec![PeripheralSpec::cyclic("axis", z2.parse("a")?)])?;
    let scan = fineness_scan(&z2, &fam, &[2, 3, 4], max_paper, 20_000)?;
    println!("coned Z^2/<a>, circuits of paper length <= {max_paper} through the identity cone edge:");
    for r in &scan.per_radius {
        println!("  R={}: {}", r.radius, r.counts[0].1);
    }

    // the commutator coset of the free group stabilizes immediately
    let f2 = GroupOracle::free(2)?;
    let fam = PeripheralFamily::new(vec![PeripheralSpec::cyclic("comm", f2.parse("[a,b]")?)])?;
    let scan = fineness_scan(&f2, &fam, &[4, 5, 6], max_paper, 20_000)?;
    println!("\nconed F2/<[a,b]>, same protocol:");
    for r in &scan.per_radius {
        println!("  R={}: {}", r.radius, r.counts[0].1);
    }
    println!("\ngrowing counts signal non-fineness; constants are consistent with a fine graph");
    Ok(())
}
