//! Property-based tests of the algebraic core: field axioms across tower
//! levels, polynomial division invariants, matrix algebra laws, and the
//! exactness of the field-level power-sum engine.

use std::sync::OnceLock;

use proptest::prelude::*;

use matwaring::fields::{FieldTower, Level};
use matwaring::matlin::{frobenius_form, FFMatrix};
use matwaring::polyring::Poly;

fn towers() -> &'static Vec<FieldTower> {
    static TOWERS: OnceLock<Vec<FieldTower>> = OnceLock::new();
    TOWERS.get_or_init(|| {
        vec![
            FieldTower::prime_field(2).unwrap(),
            FieldTower::prime_field(5).unwrap(),
            FieldTower::prime_field(13).unwrap(),
            FieldTower::new(2, 3, None).unwrap(),
            FieldTower::new(3, 2, None).unwrap(),
            FieldTower::new(2, 4, None).unwrap(),
        ]
    })
}

fn top_towers() -> &'static Vec<FieldTower> {
    static TOWERS: OnceLock<Vec<FieldTower>> = OnceLock::new();
    TOWERS.get_or_init(|| {
        vec![
            FieldTower::prime_field(3).unwrap().extend_top(3, None).unwrap(),
            FieldTower::new(2, 2, None).unwrap().extend_top(2, None).unwrap(),
            FieldTower::prime_field(5).unwrap().extend_top(2, None).unwrap(),
        ]
    })
}

proptest! {
    #[test]
    fn field_axioms(tidx in 0usize..6, seeds in prop::array::uniform3(any::<u64>())) {
        let tower = &towers()[tidx];
        let q = tower.q();
        let a = tower.element(Level::Mid, seeds[0] % q).unwrap();
        let b = tower.element(Level::Mid, seeds[1] % q).unwrap();
        let c = tower.element(Level::Mid, seeds[2] % q).unwrap();
        prop_assert_eq!(tower.add(a, b), tower.add(b, a));
        prop_assert_eq!(tower.mul(a, b), tower.mul(b, a));
        prop_assert_eq!(
            tower.add(tower.add(a, b), c),
            tower.add(a, tower.add(b, c))
        );
        prop_assert_eq!(
            tower.mul(tower.mul(a, b), c),
            tower.mul(a, tower.mul(b, c))
        );
        prop_assert_eq!(
            tower.mul(a, tower.add(b, c)),
            tower.add(tower.mul(a, b), tower.mul(a, c))
        );
        prop_assert_eq!(tower.add(a, tower.neg(a)).index, 0);
        if !a.is_zero() {
            let inv = tower.inv(a).unwrap();
            prop_assert_eq!(tower.mul(a, inv).index, 1);
        }
    }

    #[test]
    fn top_level_axioms_and_frobenius(tidx in 0usize..3, seeds in prop::array::uniform2(any::<u64>())) {
        let tower = &top_towers()[tidx];
        let card = tower.cardinality(Level::Top);
        let a = tower.element(Level::Top, seeds[0] % card).unwrap();
        let b = tower.element(Level::Top, seeds[1] % card).unwrap();
        prop_assert_eq!(tower.mul(a, b), tower.mul(b, a));
        // the Frobenius is a ring homomorphism and phi^n is the identity
        let fa = tower.frobenius(a);
        let fb = tower.frobenius(b);
        prop_assert_eq!(tower.frobenius(tower.add(a, b)), tower.add(fa, fb));
        prop_assert_eq!(tower.frobenius(tower.mul(a, b)), tower.mul(fa, fb));
        let n = tower.top_degree().unwrap();
        let mut x = a;
        for _ in 0..n {
            x = tower.frobenius(x);
        }
        prop_assert_eq!(x, a);
    }

    #[test]
    fn poly_divmod_invariant(tidx in 0usize..6, fc in proptest::collection::vec(any::<u64>(), 0..7), gc in proptest::collection::vec(any::<u64>(), 1..5)) {
        let tower = &towers()[tidx];
        let q = tower.q();
        let f = Poly::new(Level::Mid, fc.iter().map(|c| c % q).collect());
        let g = Poly::new(Level::Mid, gc.iter().map(|c| c % q).collect());
        prop_assume!(!g.is_zero());
        let (quo, rem) = f.divmod(tower, &g).unwrap();
        prop_assert_eq!(quo.mul(tower, &g).add(tower, &rem), f.clone());
        if let Some(dr) = rem.degree() {
            prop_assert!(dr < g.degree().unwrap());
        }
        // gcd divides both and is monic
        let d = f.gcd(tower, &g).unwrap();
        if !d.is_zero() {
            prop_assert!(d.is_monic());
            if !f.is_zero() {
                prop_assert!(f.rem(tower, &d).unwrap().is_zero());
            }
            prop_assert!(g.rem(tower, &d).unwrap().is_zero());
        }
    }

    #[test]
    fn matrix_algebra_laws(tidx in 0usize..6, n in 1usize..4, seed in any::<u64>()) {
        let tower = &towers()[tidx];
        let q = tower.q();
        let mut rng = matwaring::arith::SplitMix64::new(seed);
        let rand = |rng: &mut matwaring::arith::SplitMix64| {
            FFMatrix::new(Level::Mid, n, (0..n * n).map(|_| rng.below(q)).collect())
        };
        let a = rand(&mut rng);
        let b = rand(&mut rng);
        let c = rand(&mut rng);
        prop_assert_eq!(
            a.mul(tower, &b).mul(tower, &c),
            a.mul(tower, &b.mul(tower, &c))
        );
        prop_assert_eq!(
            a.mul(tower, &b.add(tower, &c)),
            a.mul(tower, &b).add(tower, &a.mul(tower, &c))
        );
        if let Ok(inv) = a.inverse(tower) {
            prop_assert_eq!(a.mul(tower, &inv), FFMatrix::identity(Level::Mid, n));
        }
        // trace is additive and similarity-invariant via the Frobenius form
        prop_assert_eq!(
            a.add(tower, &b).trace(tower),
            tower.add(a.trace(tower), b.trace(tower))
        );
        let form = frobenius_form(tower, &a);
        prop_assert_eq!(form.form_matrix(tower).trace(tower), a.trace(tower));
    }

    #[test]
    fn field_power_sum_engine_is_exact(tidx in 0usize..6, alpha_seed in any::<u64>(), k in 1u64..7) {
        let tower = &towers()[tidx];
        let q = tower.q();
        prop_assume!(q > (k - 1).pow(4));
        let alpha = tower.element(Level::Mid, alpha_seed % q).unwrap();
        let (x, y) = tower.two_kth_powers(alpha, k).unwrap();
        prop_assert_eq!(tower.add(tower.pow(x, k), tower.pow(y, k)), alpha);
        // determinism: least x first, then least y
        for xi in 0..x.index {
            let cand = tower.element(Level::Mid, xi).unwrap();
            let rest = tower.sub(alpha, tower.pow(cand, k));
            prop_assert!(tower.kth_root(rest, k).unwrap().is_none());
        }
    }
}

/// Exhaustive theorem coverage: three_powers succeeds and verifies on EVERY
/// matrix for every in-hypothesis (q, n, k) with q^(n^2) <= 2^16 and k > 1,
/// and on 1000 seeded samples for one parameter set above that ceiling.
///
/// The grid includes (8, 2, 3), whose trace bookkeeping can collide with the
/// nonexistence of trace-0 irreducible quadratics over even fields, and
/// (9, 2, 2) over a proper extension field.
#[test]
fn three_powers_exhaustive_theorem_coverage() {
    use matwaring::census::unpack_matrix;
    use matwaring::waring::{three_powers, verify};
    let grid: [(u64, usize, usize, u64); 7] = [
        (3, 1, 2, 2),
        (5, 1, 2, 2),
        (5, 1, 2, 3),
        (7, 1, 2, 2),
        (7, 1, 2, 3),
        (2, 3, 2, 3),
        (3, 2, 2, 2),
    ];
    for (p, m, n, k) in grid {
        let tower = FieldTower::new(p, m, None).unwrap();
        let q = tower.q();
        let space = q.pow((n * n) as u32);
        for code in 0..space {
            let a = unpack_matrix(&tower, n, code);
            let cert = three_powers(&tower, &a, k)
                .unwrap_or_else(|e| panic!("q={q} n={n} k={k} code={code}: {e}"));
            let outcome = verify(&cert);
            assert!(outcome.ok, "q={q} n={n} k={k} code={code}: {:?}", outcome.reasons);
        }
    }
    // randomized spot above the exhaustive ceiling: (3, 3, 2)
    let tower = FieldTower::prime_field(3).unwrap();
    let mut rng = matwaring::arith::SplitMix64::new(0x3332);
    for _ in 0..1000 {
        let a = FFMatrix::new(Level::Mid, 3, (0..9).map(|_| rng.below(3)).collect());
        let cert = three_powers(&tower, &a, 2).unwrap();
        assert!(verify(&cert).ok);
    }
}

/// Two-power decompositions across every p-part shape of the exponent:
/// k = p^a k' with a = 0, pure p-powers, and mixed products, over the
/// extension fields F_8 and F_9.
#[test]
fn two_powers_exponent_shapes_over_extension_fields() {
    use matwaring::waring::{two_powers, verify};
    // (q, k): F_8 with k = 2 (p), 3 (coprime), 6 (2*3); F_9 with k = 3 (p),
    // 2 (coprime), 6 (3*2); F_5 with k = 4 (coprime, composite)
    let grid: [(u64, usize, u64); 7] = [
        (2, 3, 2),
        (2, 3, 3),
        (2, 3, 6),
        (3, 2, 3),
        (3, 2, 2),
        (3, 2, 6),
        (5, 1, 4),
    ];
    for (p, m, k) in grid {
        let tower = FieldTower::new(p, m, None).unwrap();
        let q = tower.q();
        let mut rng = matwaring::arith::SplitMix64::new(q * 100 + k);
        for i in 0..3 {
            let a = FFMatrix::new(Level::Mid, 7, (0..49).map(|_| rng.below(q)).collect());
            let cert = two_powers(&tower, &a, k)
                .unwrap_or_else(|e| panic!("q={q} k={k} sample {i}: {e}"));
            assert_eq!(cert.terms.len(), 2);
            let outcome = verify(&cert);
            assert!(outcome.ok, "q={q} k={k} sample {i}: {:?}", outcome.reasons);
        }
    }
}

/// Encoding and Frobenius behavior on a full-size tower: F_2 <= F_{2^16}
/// round-trips every index and phi^16 fixes every element.
#[test]
fn large_tower_encoding_and_frobenius() {
    let tower = FieldTower::prime_field(2)
        .unwrap()
        .extend_top(16, None)
        .unwrap();
    let card = tower.cardinality(Level::Top);
    assert_eq!(card, 65536);
    let mut rng = matwaring::arith::SplitMix64::new(16);
    for idx in 0..card {
        let a = tower.element(Level::Top, idx).unwrap();
        // phi is exponentiation by q, and phi^n is the identity
        let mut x = a;
        for _ in 0..16 {
            x = tower.frobenius(x);
        }
        assert_eq!(x, a, "phi^16 moved index {idx}");
    }
    // homomorphism on random pairs
    for _ in 0..2000 {
        let a = tower.element(Level::Top, rng.below(card)).unwrap();
        let b = tower.element(Level::Top, rng.below(card)).unwrap();
        assert_eq!(
            tower.frobenius(tower.mul(a, b)),
            tower.mul(tower.frobenius(a), tower.frobenius(b))
        );
        assert_eq!(
            tower.frobenius(tower.add(a, b)),
            tower.add(tower.frobenius(a), tower.frobenius(b))
        );
        assert_eq!(tower.frobenius(a).index, tower.pow(a, 2).index);
    }
}

/// Counting argument pinning kth_root's soundness AND completeness on every
/// field up to 2^12: each returned root re-powers to its argument, and the
/// number of elements with a root equals the exact image size of x -> x^k,
/// so a single wrongly-missing root would break the count.
#[test]
fn kth_root_image_counts_full_desk_grid() {
    for (p, m) in matwaring::arith::prime_powers_up_to(1 << 12) {
        let tower = FieldTower::new(p, m, None).unwrap();
        let card = tower.cardinality(Level::Mid);
        let group = card - 1;
        for k in 1..=8u64 {
            let (_, k_coprime) = {
                // strip the p-part, which acts bijectively
                let mut e = 0u64;
                let mut rest = k;
                while rest % p == 0 {
                    rest /= p;
                    e += 1;
                }
                (e, rest)
            };
            let expected = if group == 0 {
                1
            } else if k_coprime % group == 0 {
                2 // image is {0, 1}
            } else {
                group / matwaring::arith::gcd(k_coprime % group, group) + 1
            };
            let mut with_root = 0u64;
            for idx in 0..card {
                let a = tower.element(Level::Mid, idx).unwrap();
                if let Some(r) = tower.kth_root(a, k).unwrap() {
                    assert_eq!(tower.pow(r, k), a, "q={card} k={k} idx={idx}");
                    with_root += 1;
                }
            }
            assert_eq!(with_root, expected, "q={card} k={k}: image size mismatch");
        }
    }
}

/// Towers are shareable across threads; concurrent arithmetic agrees with
/// sequential results.
#[test]
fn towers_are_thread_safe() {
    fn assert_send_sync<T: Send + Sync>() {}
    assert_send_sync::<FieldTower>();
    let tower = FieldTower::new(3, 2, None).unwrap().extend_top(2, None).unwrap();
    let card = tower.cardinality(Level::Top);
    let expected: Vec<u64> = (0..card)
        .map(|i| tower.pow(tower.element(Level::Top, i).unwrap(), 5).index)
        .collect();
    let results = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..4)
            .map(|t| {
                let tower = &tower;
                scope.spawn(move || {
                    (0..card)
                        .filter(|i| i % 4 == t)
                        .map(|i| (i, tower.pow(tower.element(Level::Top, i).unwrap(), 5).index))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        handles.into_iter().flat_map(|h| h.join().unwrap()).collect::<Vec<_>>()
    });
    for (i, v) in results {
        assert_eq!(v, expected[i as usize]);
    }
}

/// The field-level two-power engine covers every element of every field with
/// cardinality above (k-1)^4, across all prime powers up to 2^12.
#[test]
fn two_kth_powers_full_desk_grid() {
    for (p, m) in matwaring::arith::prime_powers_up_to(1 << 12) {
        let tower = FieldTower::new(p, m, None).unwrap();
        let card = tower.cardinality(Level::Mid);
        for k in 1..=9u64 {
            if card <= (k - 1).pow(4) {
                continue;
            }
            for idx in 0..card {
                let alpha = tower.element(Level::Mid, idx).unwrap();
                let (x, y) = tower
                    .two_kth_powers(alpha, k)
                    .unwrap_or_else(|e| panic!("q={card} k={k} alpha={idx}: {e}"));
                assert_eq!(tower.add(tower.pow(x, k), tower.pow(y, k)), alpha);
            }
        }
    }
}
