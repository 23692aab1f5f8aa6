//! The unbounded coset-penetration witness: two geodesics from the
//! identity to aⁿb in the coned-off lattice. One runs along the a-axis
//! and penetrates the identity coset for n paper units; the other steps
//! off the axis first and never enters it. Their case-1 separation grows
//! with the radius, so no uniform penetration bound can exist.
//!
//! Run with `cargo run --release --example bcp_witness`.

use relhyp::bcp::{bcp_check, BcpVerdict};
use relhyp::cayley::build_ball;
use relhyp::coning::cone_off;
use relhyp::pipeline::bcp_scan;
use relhyp::words::{GroupOracle, PeripheralFamily, PeripheralSpec};

fn main() -> relhyp::Result<()> {
    let z2 = GroupOracle::free_abelian(2)?;
    let fam = PeripheralFamily::new(vec![PeripheralSpec::cyclic("axis", z2.parse("a")?)])?;

    let radius = 5;
    let n = radius - 1;
    let (ball, index) = build_ball(&z2, radius)?;
    let coned = cone_off(&ball, &index, &z2, &fam)?;
    let matrix = ball.all_pairs(10_000)?;

    let v = |s: &str| index.vertex_of(&z2.parse(s).unwrap()).unwrap();
    let mut along_axis = vec![v("1")];
    for k in 1..=n {
        along_axis.push(v(&"a".repeat(k as usize)));
    }
    along_axis.push(v(&format!("{}b", "a".repeat(n as usize))));
    let mut off_axis = vec![v("1"), v("b")];
    for k in 1..=n {
        off_axis.push(v(&format!("{}b", "a".repeat(k as usize))));
    }

    let report = bcp_check(&coned, &matrix, &index, &[(along_axis, off_axis)])?;
    println!(
        "witness pair at radius {radius}: case-1 separation {} paper units (= R - 1 = {n})",
        report.max_case1_scaled / 2
    );
    for w in &report.witnesses {
        println!(
            "  case {} at coset {}:{} — paths\n    {}\n    {}",
            w.case,
            w.peripheral,
            w.coset_key,
            w.path_a_words.join(" "),
            w.path_b_words.join(" ")
        );
    }

    // the full scan enumerates every geodesic pair per radius
    let scan = bcp_scan(&z2, &fam, &[2, 3, 4, 5], (1, 1), 10, 1_000_000, 10_000)?;
    println!("\nscan over radii 2..5 at lambda 1:");
    for s in &scan.per_radius {
        println!(
            "  R={}: max case-1 {} paper, case-2 enter/exit {}/{} paper over {} pairs",
            s.radius,
            s.report.max_case1_scaled / 2,
            s.report.max_case2_enter_scaled / 2,
            s.report.max_case2_exit_scaled / 2,
            s.report.pairs_checked
        );
    }
    println!("verdict: {}", scan.verdict);
    assert_eq!(scan.verdict, BcpVerdict::ViolationWitnessed);
    Ok(())
}
