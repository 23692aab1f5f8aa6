//! Acceptance suite: one test per headline claim, each printing a
//! PASS line (run with `--nocapture` to see them). Wall-clock limits are
//! enforced in release builds; debug builds still check every assertion.

use relhyp::analysis::{DeltaPolicy, Verdict};
use relhyp::bcp::{self, BcpVerdict, QuasiParams};
use relhyp::boundary;
use relhyp::cayley::build_ball;
use relhyp::config::{parse_config, SpaceKind};
use relhyp::cusping::{build_horoball, horoball_path_distance};
use relhyp::graph::MetricGraph;
use relhyp::pipeline::{
    self, boundary_circle_check, boundary_sample, delta_scan, fineness_scan, run_pipeline,
    PolicyChoice,
};
use relhyp::words::{GroupOracle, PeripheralFamily, PeripheralSpec, Word};
use std::time::Instant;

const CAP: usize = 20_000;

fn check_runtime(name: &str, started: Instant, limit_secs: u64) {
    let elapsed = started.elapsed();
    if cfg!(debug_assertions) {
        return; // limits are calibrated for release builds
    }
    assert!(
        elapsed.as_secs_f64() < limit_secs as f64,
        "{name} took {elapsed:?}, limit {limit_secs}s"
    );
}

fn preset(name: &str) -> relhyp::config::RunConfig {
    let path = format!("{}/presets/{name}", env!("CARGO_MANIFEST_DIR"));
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"));
    parse_config(&text).unwrap_or_else(|e| panic!("{path}: {e}"))
}

#[test]
fn criterion_1_free_group_delta_is_zero() {
    let start = Instant::now();
    let f2 = GroupOracle::free(2).unwrap();
    let scan = delta_scan(
        &f2,
        &PeripheralFamily::empty(),
        SpaceKind::Ball,
        &[2, 3, 4, 5],
        None,
        PolicyChoice::Auto { count: 100_000, seed: 42 },
        None,
        CAP,
    )
    .unwrap();
    for r in &scan.reports {
        assert_eq!(r.four_point_x2, 0, "radius {}", r.radius);
        // radii up to 3 stay under the exhaustive cap, larger ones sample
        if r.radius <= 3 {
            assert_eq!(r.policy, DeltaPolicy::Exhaustive);
        } else {
            assert_eq!(r.policy, DeltaPolicy::Sampled { count: 100_000, seed: 42 });
        }
    }
    assert_eq!(scan.four_point_verdict, Verdict::Bounded);
    check_runtime("criterion 1", start, 30);
    println!(
        "C1 PASS ({:?}): F2 balls R=2..5 all report four-point delta = 0 exactly",
        start.elapsed()
    );
}

#[test]
fn criterion_2_lattice_delta_grows() {
    let start = Instant::now();
    let z2 = GroupOracle::free_abelian(2).unwrap();
    let scan = delta_scan(
        &z2,
        &PeripheralFamily::empty(),
        SpaceKind::Ball,
        &[2, 3, 4, 5],
        None,
        PolicyChoice::Fixed(DeltaPolicy::Exhaustive),
        None,
        CAP,
    )
    .unwrap();
    let series: Vec<u32> = scan.reports.iter().map(|r| r.four_point_x2).collect();
    // frozen from the independent brute-force oracle: the extremal
    // quadruple is the (±k,±k) square, so the series steps at even radii
    assert_eq!(series, vec![8, 8, 16, 16]);
    assert!(series.windows(2).all(|w| w[0] <= w[1]), "four-point delta decreased");
    assert!(series[3] > series[0], "no growth across the radius range");
    assert!(series[2] > series[1], "no strict step inside the range");
    check_runtime("criterion 2", start, 60);
    println!(
        "C2 PASS ({:?}): Z^2 ball four-point delta grows 2,2,4,4 (paper units) over R=2..5 — strict growth at even radii",
        start.elapsed()
    );
}

#[test]
fn criterion_3_z_rel_hyp_both_ways() {
    let start = Instant::now();
    let z2 = GroupOracle::free_abelian(2).unwrap();
    let axis =
        PeripheralFamily::new(vec![PeripheralSpec::cyclic("axis", z2.parse("a").unwrap())])
            .unwrap();

    // (a) the coned-off space is a quasi-line: delta saturates
    let scan = delta_scan(
        &z2,
        &axis,
        SpaceKind::Coned,
        &[2, 3, 4, 5],
        None,
        PolicyChoice::Fixed(DeltaPolicy::Exhaustive),
        Some(0),
        CAP,
    )
    .unwrap();
    assert_eq!(scan.four_point_verdict, Verdict::Bounded);
    assert_eq!(scan.slim_verdict, Verdict::Bounded);
    let tail: Vec<u32> = scan.reports[1..].iter().map(|r| r.four_point_x2).collect();
    assert!(tail.windows(2).all(|w| w[0] == w[1]), "last three radii disagree: {tail:?}");

    // (b) bounded coset penetration fails: separations grow by one paper
    // unit per radius, witnessed by concrete pairs
    let scan = pipeline::bcp_scan(&z2, &axis, &[2, 3, 4, 5], (1, 1), 10, 1_000_000, CAP).unwrap();
    assert_eq!(scan.verdict, BcpVerdict::ViolationWitnessed);
    for stats in &scan.per_radius {
        let r = stats.radius;
        assert!(
            stats.report.max_case1_scaled >= 2 * (r - 1),
            "radius {r}: case-1 separation below R-1 paper units"
        );
        assert!(!stats.report.witnesses.is_empty(), "radius {r}: no witness recorded");
    }
    // witnesses serialize
    let json = serde_json::to_string(&scan).unwrap();
    assert!(json.contains("path_a_words"));
    check_runtime("criterion 3", start, 60);
    println!(
        "C3 PASS ({:?}): coned Z^2/<a> delta bounded; bcp violation-witnessed with case-1 separations {:?} (scaled)",
        start.elapsed(),
        scan.per_radius.iter().map(|s| s.report.max_case1_scaled).collect::<Vec<_>>()
    );
}

#[test]
fn criterion_4_cusped_spaces_turn_hyperbolic() {
    let start = Instant::now();
    let f2 = GroupOracle::free(2).unwrap();
    let comm =
        PeripheralFamily::new(vec![PeripheralSpec::cyclic("comm", f2.parse("[a,b]").unwrap())])
            .unwrap();
    let scan = delta_scan(
        &f2,
        &comm,
        SpaceKind::Cusped,
        &[3, 4, 5],
        None, // depth defaults to ceil(log2 R) + 1 per radius
        PolicyChoice::Auto { count: 100_000, seed: 42 },
        Some(1),
        CAP,
    )
    .unwrap();
    assert_eq!(scan.four_point_verdict, Verdict::Bounded, "cusped F2/<[a,b]> not bounded");

    // contrast: one horoball over the whole lattice ball is hyperbolic,
    // the plain lattice is not (radii where strict growth is attainable)
    let z2 = GroupOracle::free_abelian(2).unwrap();
    let whole = PeripheralFamily::new(vec![PeripheralSpec::full("whole")]).unwrap();
    let cusped = delta_scan(
        &z2,
        &whole,
        SpaceKind::Cusped,
        &[2, 4, 6],
        None,
        PolicyChoice::Auto { count: 100_000, seed: 42 },
        Some(0),
        CAP,
    )
    .unwrap();
    assert_eq!(cusped.four_point_verdict, Verdict::Bounded, "cusped Z^2 not bounded");
    let plain = delta_scan(
        &z2,
        &PeripheralFamily::empty(),
        SpaceKind::Ball,
        &[2, 4, 6],
        None,
        PolicyChoice::Fixed(DeltaPolicy::Exhaustive),
        None,
        CAP,
    )
    .unwrap();
    assert_eq!(plain.four_point_verdict, Verdict::Growing, "plain Z^2 not growing");
    check_runtime("criterion 4", start, 120);
    println!(
        "C4 PASS ({:?}): cusped F2/<[a,b]> bounded {:?}; cusped Z^2 bounded {:?} vs plain Z^2 growing {:?} (x2-scaled)",
        start.elapsed(),
        scan.reports.iter().map(|r| r.four_point_x2).collect::<Vec<_>>(),
        cusped.reports.iter().map(|r| r.four_point_x2).collect::<Vec<_>>(),
        plain.reports.iter().map(|r| r.four_point_x2).collect::<Vec<_>>()
    );
}

#[test]
fn criterion_5_horoball_metric_oracle() {
    let start = Instant::now();
    for d in [2u64, 4, 8, 16] {
        let gamma = MetricGraph::path(d as usize);
        let h = build_horoball(&gamma, 4).unwrap();
        let measured = h.graph.distances_from(h.vertex(0, 0)).unwrap()[h.vertex(d as u32, 0) as usize];
        let expected = horoball_path_distance(d, 4);
        assert_eq!(measured as u64, 2 * expected, "paper length {d}");
    }
    check_runtime("criterion 5", start, 5);
    println!(
        "C5 PASS ({:?}): horoball level-0 distances match min_k(2k + ceil(d/2^k)) for d = 2,4,8,16",
        start.elapsed()
    );
}

#[test]
fn criterion_6_fineness_contrast() {
    let start = Instant::now();
    let z2 = GroupOracle::free_abelian(2).unwrap();
    let axis =
        PeripheralFamily::new(vec![PeripheralSpec::cyclic("axis", z2.parse("a").unwrap())])
            .unwrap();
    let grown = fineness_scan(&z2, &axis, &[2, 3, 4], 6, CAP).unwrap();
    let counts: Vec<u64> = grown.per_radius.iter().map(|r| r.counts[0].1).collect();
    assert_eq!(counts, vec![48, 210, 392], "frozen circuit counts changed");
    assert!(counts.windows(2).all(|w| w[0] < w[1]), "not strictly increasing: {counts:?}");

    let f2 = GroupOracle::free(2).unwrap();
    let comm =
        PeripheralFamily::new(vec![PeripheralSpec::cyclic("comm", f2.parse("[a,b]").unwrap())])
            .unwrap();
    let stable = fineness_scan(&f2, &comm, &[4, 5, 6], 6, CAP).unwrap();
    let counts: Vec<u64> = stable.per_radius.iter().map(|r| r.counts[0].1).collect();
    assert_eq!(counts, vec![2, 2, 2], "commutator cone-edge circuits not constant");
    check_runtime("criterion 6", start, 120);
    println!(
        "C6 PASS ({:?}): circuits through the identity cone edge grow 48,210,392 for Z^2/<a> and stay 2,2,2 for F2/<[a,b]>",
        start.elapsed()
    );
}

#[test]
fn criterion_7_boundary_branching_and_circle() {
    let start = Instant::now();
    // Cantor branching of the free group at radius 4
    let f2 = GroupOracle::free(2).unwrap();
    let sample = boundary_sample(
        &f2,
        &PeripheralFamily::empty(),
        SpaceKind::Ball,
        4,
        None,
        std::f64::consts::LN_2,
        CAP,
    )
    .unwrap();
    for (k, expect) in [(1u32, 4usize), (2, 12), (3, 36)] {
        assert_eq!(
            boundary::cluster_count_at(&sample, 4 * k),
            expect,
            "cluster count at threshold 2^-{k}"
        );
    }

    // circle signal of the cusped free group at the calibrated thresholds
    let comm =
        PeripheralFamily::new(vec![PeripheralSpec::cyclic("comm", f2.parse("[a,b]").unwrap())])
            .unwrap();
    let check = boundary_circle_check(
        &f2,
        &comm,
        SpaceKind::Cusped,
        4,
        None,
        std::f64::consts::LN_2,
        8, // cluster at paper product >= 2
        4, // adjacency at paper product >= 1
        CAP,
    )
    .unwrap();
    assert!(
        check.raw_single_path,
        "sphere clusters do not chain into a single arc: {check:?}"
    );
    assert_eq!(check.parabolic_points, 1, "expected one restored parabolic point");
    assert!(
        check.completed_single_cycle,
        "completed adjacency is not a single cycle: {check:?}"
    );

    // the three-peripheral demo preset renders its SVGs without claims
    let gasket = preset("c7c_apollonian_demo.cfg");
    let out = run_pipeline(&gasket).unwrap();
    let svg = out.files.get("boundary_heatmap.svg").expect("gasket heatmap");
    assert!(svg.starts_with(b"<svg"));
    assert!(out.files.contains_key("boundary_dendrogram.svg"));
    check_runtime("criterion 7", start, 60);
    println!(
        "C7 PASS ({:?}): F2 sphere clusters count 4/12/36; cusped F2/<[a,b]> clusters form an arc that closes into a single cycle through its parabolic point ({} clusters); gasket demo renders",
        start.elapsed(),
        check.cluster_count
    );
}

#[test]
fn criterion_8_invariant_suites() {
    let start = Instant::now();
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    // words-module algebra laws, 10^4 seeded cases per family
    for oracle in [
        GroupOracle::free(2).unwrap(),
        GroupOracle::free_abelian(2).unwrap(),
        GroupOracle::surface(2).unwrap(),
    ] {
        let letters = oracle.alphabet().letter_count();
        let mut rng = ChaCha8Rng::seed_from_u64(0xacce97);
        for _ in 0..10_000 {
            let len = rng.gen_range(0..=20);
            let u = Word::from_letters((0..len).map(|_| rng.gen_range(0..letters) as u8).collect());
            let len = rng.gen_range(0..=20);
            let v = Word::from_letters((0..len).map(|_| rng.gen_range(0..letters) as u8).collect());
            let nu = oracle.normalize(&u).unwrap();
            let nv = oracle.normalize(&v).unwrap();
            assert_eq!(oracle.normalize(&nu).unwrap(), nu);
            assert!(oracle.is_identity(&nu.concat(&nu.formal_inverse())).unwrap());
            assert_eq!(
                oracle.normalize(&u.concat(&v)).unwrap(),
                oracle.normalize(&nu.concat(&nv)).unwrap()
            );
        }
    }

    // graphcore: triangle inequality and geodesic validity on a mixed ball
    let z2 = GroupOracle::free_abelian(2).unwrap();
    let (ball, _) = build_ball(&z2, 4).unwrap();
    let m = ball.all_pairs(CAP).unwrap();
    let n = ball.vertex_count() as u32;
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                assert!(m.get(i, j) as u32 + m.get(j, k) as u32 >= m.get(i, k) as u32);
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce98);
    for _ in 0..1_000 {
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        let p = ball.extract_geodesic(u, v).unwrap();
        assert_eq!(p.total, m.get(u, v));
        assert_eq!(ball.path_weight(&p.vertices).unwrap(), p.total);
    }

    // bcp: post-hoc subpath verification of every enumerated quasigeodesic
    let lambda = (3, 2);
    let params = QuasiParams::new(lambda, 12).unwrap();
    let (ball3, _) = build_ball(&z2, 3).unwrap();
    let m3 = ball3.all_pairs(CAP).unwrap();
    for v in 0..ball3.vertex_count() as u32 {
        let en = bcp::enumerate_quasigeodesics(&ball3, &m3, 0, v, params, 10_000_000).unwrap();
        assert!(!en.truncated);
        for p in &en.paths {
            assert!(bcp::verify_quasigeodesic(&m3, &ball3, p, lambda).unwrap());
            let mut sorted = p.clone();
            sorted.sort_unstable();
            sorted.dedup();
            assert_eq!(sorted.len(), p.len(), "quasigeodesic repeats a vertex");
        }
    }

    // determinism: two identical preset runs are byte-identical
    let cfg = preset("c8_determinism.cfg");
    let run1 = run_pipeline(&cfg).unwrap();
    let run2 = run_pipeline(&cfg).unwrap();
    assert_eq!(run1.files.len(), run2.files.len());
    for (name, bytes) in &run1.files {
        assert_eq!(Some(bytes), run2.files.get(name).as_deref(), "{name} differs between runs");
    }
    assert_eq!(
        serde_json::to_string(&run1.manifest).unwrap(),
        serde_json::to_string(&run2.manifest).unwrap()
    );
    check_runtime("criterion 8", start, 60);
    println!(
        "C8 PASS ({:?}): algebra laws (3 families x 10^4 cases), metric and geodesic invariants, quasigeodesic post-hoc checks, and byte-identical reruns",
        start.elapsed()
    );
}

#[test]
fn all_presets_parse_and_run() {
    let dir = format!("{}/presets", env!("CARGO_MANIFEST_DIR"));
    let mut names: Vec<String> = std::fs::read_dir(&dir)
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    names.sort();
    assert!(!names.is_empty());
    for name in names {
        let cfg = preset(&name);
        // heavyweight presets already run in their criterion tests; here
        // every preset must at least build and execute end to end
        let out = run_pipeline(&cfg).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert!(!out.files.is_empty(), "{name} produced no files");
        assert_eq!(out.manifest.files.len(), out.files.len());
        println!("preset {name}: {} files", out.files.len());
    }
}
