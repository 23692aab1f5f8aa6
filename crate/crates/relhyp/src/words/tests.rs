use super::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_word(rng: &mut ChaCha8Rng, letters: usize, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    Word::from_letters((0..len).map(|_| rng.gen_range(0..letters) as Letter).collect())
}

fn oracles() -> Vec<GroupOracle> {
    vec![
        GroupOracle::free(2).unwrap(),
        GroupOracle::free_abelian(2).unwrap(),
        GroupOracle::surface(2).unwrap(),
        GroupOracle::new(Family::DirectProduct(vec![
            Family::Free { rank: 1 },
            Family::FreeAbelian { rank: 2 },
        ]))
        .unwrap(),
        GroupOracle::new(Family::FreeProduct(vec![
            Family::FreeAbelian { rank: 1 },
            Family::Free { rank: 1 },
        ]))
        .unwrap(),
    ]
}

#[test]
fn parse_and_render() {
    let o = GroupOracle::free(2).unwrap();
    let w = o.alphabet().parse_word("aba'b'").unwrap();
    assert_eq!(o.render(&w), "aba'b'");
    let c = o.alphabet().parse_word("[a,b]").unwrap();
    assert_eq!(w, c);
    let cinv = o.alphabet().parse_word("[a,b]'").unwrap();
    assert_eq!(o.normalize(&w.concat(&cinv)).unwrap(), Word::empty());
    assert_eq!(o.alphabet().parse_word("1").unwrap(), Word::empty());
    assert!(o.alphabet().parse_word("x").is_err());
}

#[test]
fn normalize_examples() {
    // free reduction
    let f2 = GroupOracle::free(2).unwrap();
    assert_eq!(f2.parse("aa'b").unwrap(), f2.parse("b").unwrap());

    // commutation relation
    let z2 = GroupOracle::free_abelian(2).unwrap();
    assert_eq!(z2.parse("bab'a").unwrap(), z2.parse("aa").unwrap());

    // defining relator of the genus-2 surface group
    let s2 = GroupOracle::surface(2).unwrap();
    assert_eq!(s2.parse("[a,b][c,d]").unwrap(), Word::empty());
}

#[test]
fn multiply_invert_examples() {
    let f2 = GroupOracle::free(2).unwrap();
    let a = f2.parse("a").unwrap();
    let ainv = f2.parse("a'").unwrap();
    assert_eq!(f2.multiply(&a, &ainv).unwrap(), Word::empty());
    let ab = f2.parse("ab").unwrap();
    assert_eq!(f2.invert(&ab).unwrap(), f2.parse("b'a'").unwrap());

    let z2 = GroupOracle::free_abelian(2).unwrap();
    let u = z2.parse("ab").unwrap();
    let v = z2.parse("a").unwrap();
    assert_eq!(z2.multiply(&u, &v).unwrap(), z2.parse("aab").unwrap());
}

#[test]
fn normalizer_laws_hold_on_random_words() {
    for oracle in oracles() {
        let letters = oracle.alphabet().letter_count();
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        for _ in 0..10_000 {
            let u = random_word(&mut rng, letters, 20);
            let v = random_word(&mut rng, letters, 20);
            let nu = oracle.normalize(&u).unwrap();
            // idempotence
            assert_eq!(oracle.normalize(&nu).unwrap(), nu);
            // inverse consistency
            assert_eq!(
                oracle.normalize(&nu.concat(&nu.formal_inverse())).unwrap(),
                Word::empty()
            );
            // congruence
            let nv = oracle.normalize(&v).unwrap();
            assert_eq!(
                oracle.normalize(&u.concat(&v)).unwrap(),
                oracle.normalize(&nu.concat(&nv)).unwrap(),
                "congruence failed in {}",
                oracle.family().describe()
            );
        }
    }
}

#[test]
fn product_families_agree_with_flat_ones() {
    let z2 = GroupOracle::free_abelian(2).unwrap();
    let prod = GroupOracle::new(Family::DirectProduct(vec![
        Family::FreeAbelian { rank: 1 },
        Family::FreeAbelian { rank: 1 },
    ]))
    .unwrap();
    let f2 = GroupOracle::free(2).unwrap();
    let fp = GroupOracle::new(Family::FreeProduct(vec![
        Family::Free { rank: 1 },
        Family::Free { rank: 1 },
    ]))
    .unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..2_000 {
        let w = random_word(&mut rng, 4, 16);
        assert_eq!(z2.normalize(&w).unwrap(), prod.normalize(&w).unwrap());
        assert_eq!(f2.normalize(&w).unwrap(), fp.normalize(&w).unwrap());
    }
}

#[test]
fn coset_key_examples() {
    // P = <a> inside Z^2: kill the a-component
    let z2 = GroupOracle::free_abelian(2).unwrap();
    let p = PeripheralSpec::cyclic("axis", z2.parse("a").unwrap());
    assert_eq!(
        p.coset_key(&z2, &z2.parse("aab").unwrap()).unwrap(),
        z2.parse("b").unwrap()
    );

    // P = <a> inside F2: the key strips the trailing a-power
    let f2 = GroupOracle::free(2).unwrap();
    let pa = PeripheralSpec::cyclic("axis", f2.parse("a").unwrap());
    let baa = f2.parse("baa").unwrap();
    assert_eq!(pa.coset_key(&f2, &baa).unwrap(), f2.parse("b").unwrap());

    // independent oracle: enumerate b<a> and take the shortlex-least
    let b = f2.parse("b").unwrap();
    let a = f2.parse("a").unwrap();
    let mut best: Option<Word> = None;
    for k in -8i32..=8 {
        let mut cur = b.clone();
        for _ in 0..k.abs() {
            let step = if k > 0 { a.clone() } else { f2.invert(&a).unwrap() };
            cur = f2.multiply(&cur, &step).unwrap();
        }
        if best.as_ref().map_or(true, |m| cur < *m) {
            best = Some(cur);
        }
    }
    assert_eq!(pa.coset_key(&f2, &baa).unwrap(), best.unwrap());

    // P = <[a,b]> inside F2: the commutator itself is a member
    let pc = PeripheralSpec::cyclic("commutator", f2.parse("[a,b]").unwrap());
    assert_eq!(
        pc.coset_key(&f2, &f2.parse("[a,b]").unwrap()).unwrap(),
        Word::empty()
    );
    assert!(pc.membership(&f2, &f2.parse("[a,b]").unwrap()).unwrap());
    assert!(!pc.membership(&f2, &f2.parse("ab").unwrap()).unwrap());
}

#[test]
fn coset_key_constant_on_orbits() {
    let cases: Vec<(GroupOracle, PeripheralSpec)> = vec![
        (
            GroupOracle::free(2).unwrap(),
            PeripheralSpec::cyclic("axis", Word::single(0)),
        ),
        (
            GroupOracle::free(2).unwrap(),
            PeripheralSpec::cyclic("comm", GroupOracle::free(2).unwrap().parse("[a,b]").unwrap()),
        ),
        (
            GroupOracle::free_abelian(2).unwrap(),
            PeripheralSpec::cyclic("axis", Word::single(0)),
        ),
        (
            GroupOracle::free_abelian(2).unwrap(),
            PeripheralSpec::factor("f1", 1),
        ),
        (
            GroupOracle::surface(2).unwrap(),
            PeripheralSpec::cyclic("comm", GroupOracle::surface(2).unwrap().parse("[a,b]").unwrap()),
        ),
    ];
    for (oracle, spec) in cases {
        spec.validate(&oracle).unwrap();
        let gens = spec.generators(&oracle).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..300 {
            let g = random_word(&mut rng, oracle.alphabet().letter_count(), 8);
            // random p in P as a word in the listed generators
            let mut p = Word::empty();
            for _ in 0..rng.gen_range(0..4) {
                let gen = &gens[rng.gen_range(0..gens.len())];
                let step = if rng.gen_bool(0.5) { gen.clone() } else { gen.formal_inverse() };
                p = p.concat(&step);
            }
            let key_g = spec.coset_key(&oracle, &g).unwrap();
            let key_gp = spec.coset_key(&oracle, &g.concat(&p)).unwrap();
            assert_eq!(key_g, key_gp, "coset key not orbit-constant");
        }
    }
}

#[test]
fn membership_iff_trivial_key() {
    let f2 = GroupOracle::free(2).unwrap();
    let pc = PeripheralSpec::cyclic("comm", f2.parse("[a,b]").unwrap());
    assert!(pc.membership(&f2, &Word::empty()).unwrap());
    let c2 = f2.parse("[a,b][a,b]").unwrap();
    assert!(pc.membership(&f2, &c2).unwrap());
    let c_inv = f2.parse("[a,b]'").unwrap();
    assert!(pc.membership(&f2, &c_inv).unwrap());
}

#[test]
fn full_and_factor_peripherals() {
    let z2 = GroupOracle::free_abelian(2).unwrap();
    let full = PeripheralSpec::full("whole");
    assert!(full.membership(&z2, &z2.parse("aabb'").unwrap()).unwrap());
    assert_eq!(full.coset_key(&z2, &z2.parse("ab").unwrap()).unwrap(), Word::empty());
    assert_eq!(full.generators(&z2).unwrap().len(), 2);

    let prod = GroupOracle::new(Family::DirectProduct(vec![
        Family::Free { rank: 1 },
        Family::Free { rank: 1 },
    ]))
    .unwrap();
    let f1 = PeripheralSpec::factor("second", 1);
    f1.validate(&prod).unwrap();
    assert!(f1.membership(&prod, &prod.parse("bb").unwrap()).unwrap());
    assert_eq!(
        f1.coset_key(&prod, &prod.parse("aab").unwrap()).unwrap(),
        prod.parse("aa").unwrap()
    );

    let fp = GroupOracle::new(Family::FreeProduct(vec![
        Family::Free { rank: 1 },
        Family::Free { rank: 1 },
    ]))
    .unwrap();
    let f0 = PeripheralSpec::factor("first", 0);
    assert_eq!(
        f0.coset_key(&fp, &fp.parse("baa").unwrap()).unwrap(),
        fp.parse("b").unwrap()
    );
    assert_eq!(f0.coset_key(&fp, &fp.parse("ab").unwrap()).unwrap(), fp.parse("ab").unwrap());
}

#[test]
fn dehn_reduce_examples() {
    let s2 = GroupOracle::surface(2).unwrap();
    let relator = s2.alphabet().parse_word("[a,b][c,d]").unwrap();

    // a cyclic permutation of the relator is trivial
    let mut rot = relator.letters().to_vec();
    rot.rotate_left(3);
    assert_eq!(dehn_reduce(2, &Word::from_letters(rot)).unwrap(), Word::empty());

    // generators are nontrivial
    let a = s2.alphabet().parse_word("a").unwrap();
    assert_eq!(dehn_reduce(2, &a).unwrap(), a);

    // more than half the relator rewrites to the shorter complement
    let first5 = Word::from_letters(relator.letters()[..5].to_vec());
    let reduced = dehn_reduce(2, &first5).unwrap();
    assert_eq!(reduced.len(), 3);
    let complement_inv = Word::from_letters(relator.letters()[5..].to_vec()).formal_inverse();
    assert_eq!(reduced, dehn_reduce(2, &complement_inv).unwrap());

    // brute-force identity check: first5 * reduced^{-1} is trivial
    assert!(s2.equal(&first5, &reduced).unwrap());
}

#[test]
fn dehn_never_increases_length() {
    let mut rng = ChaCha8Rng::seed_from_u64(1234);
    for _ in 0..2_000 {
        let w = random_word(&mut rng, 8, 24);
        let r = dehn_reduce(2, &w).unwrap();
        assert!(r.len() <= w.len());
    }
}

#[test]
fn surface_sphere_level_two_words_are_distinct() {
    // all 8*7 reduced two-letter words represent distinct elements
    let s2 = GroupOracle::surface(2).unwrap();
    let mut seen = std::collections::BTreeSet::new();
    for x in 0u8..8 {
        for y in 0u8..8 {
            if y == letter_inverse(x) {
                continue;
            }
            let n = s2.normalize(&Word::from_letters(vec![x, y])).unwrap();
            assert_eq!(n.len(), 2);
            assert!(seen.insert(n));
        }
    }
    assert_eq!(seen.len(), 56);
}

#[test]
fn shortlex_order() {
    let a = Word::from_letters(vec![0]);
    let b = Word::from_letters(vec![2]);
    let aa = Word::from_letters(vec![0, 0]);
    assert!(Word::empty() < a);
    assert!(a < b);
    assert!(b < aa);
}
