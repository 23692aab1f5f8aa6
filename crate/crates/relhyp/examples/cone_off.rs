//! Coned-off Cayley graphs: cone vertices over peripheral cosets,
//! hat-paths, penetration records, and backtracking detection.
//!
//! Run with `cargo run --release --example cone_off`.

use relhyp::cayley::build_ball;
use relhyp::coning::{cone_off, hat_path, is_without_backtracking, penetrations};
use relhyp::words::{GroupOracle, PeripheralFamily, PeripheralSpec};

fn main() -> relhyp::Result<()> {
    let z2 = GroupOracle::free_abelian(2)?;
    let fam = PeripheralFamily::new(vec![PeripheralSpec::cyclic("axis", z2.parse("a")?)])?;
    let (ball, index) = build_ball(&z2, 3)?;
    let coned = cone_off(&ball, &index, &z2, &fam)?;
    println!(
        "Z^2 radius-3 ball: {} vertices; coned over <a>: {} cone vertices (one per row meeting the ball)",
        ball.vertex_count(),
        coned.cone_count()
    );
    for ((label, key), &cone) in coned.cone_vertices() {
        println!(
            "  cone {cone} over coset {label}:{} with {} members",
            z2.render(key),
            coned.coset_members(cone).len()
        );
    }

    // a straight run inside the axis coset reroutes through its cone
    let v = |s: &str| index.vertex_of(&z2.parse(s).unwrap()).unwrap();
    let path = vec![v("1"), v("a"), v("aa"), v("aab")];
    let words: Vec<String> = path.iter().map(|&x| z2.render(index.word(x))).collect();
    let hp = hat_path(&coned, &path)?;
    println!("\nbase path {} has scaled length {}", words.join(" -> "), ball.path_weight(&path)?);
    println!(
        "hat-path rewrites it to {} vertices with scaled length {}",
        hp.len(),
        coned.coned.path_weight(&hp)?
    );
    for rec in penetrations(&coned, &hp)? {
        println!(
            "  penetrates {}:{} entering at {} and exiting at {}",
            rec.peripheral,
            z2.render(&rec.key),
            z2.render(index.word(rec.entering)),
            z2.render(index.word(rec.exiting)),
        );
    }
    println!("without backtracking: {}", is_without_backtracking(&coned, &hp)?);

    // a path that leaves a coset and returns backtracks
    let back = vec![v("1"), v("a"), v("ab"), v("aab"), v("aa"), v("a")];
    let hp = hat_path(&coned, &back)?;
    println!(
        "\nthe loop {} backtracks: {}",
        back.iter().map(|&x| z2.render(index.word(x))).collect::<Vec<_>>().join(" -> "),
        !is_without_backtracking(&coned, &hp)?
    );

    // any two members of one coset are at most one paper unit apart
    let matrix = coned.coned.all_pairs(10_000)?;
    let mut worst = 0;
    for (_, &cone) in coned.cone_vertices() {
        let members = coned.coset_members(cone);
        for &x in &members {
            for &y in &members {
                worst = worst.max(matrix.get(x, y));
            }
        }
    }
    println!("\nlargest intra-coset distance in the coned graph: {worst} scaled (through the cone)");
    Ok(())
}
