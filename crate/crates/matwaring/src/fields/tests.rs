use super::*;

fn f3() -> FieldTower {
    FieldTower::prime_field(3).unwrap()
}

/// F_9 as a mid level over F_3 with modulus x^2 + 1.
fn f9_mid() -> FieldTower {
    FieldTower::new(3, 2, Some(vec![1, 0, 1])).unwrap()
}

/// F_9 as a top level over F_3 with modulus x^2 + 1.
fn f9_top() -> FieldTower {
    f3().extend_top(2, Some(vec![1, 0, 1])).unwrap()
}

#[test]
fn construction_rejects_bad_moduli() {
    assert!(FieldTower::new(4, 1, None).is_err()); // 4 not prime
    assert!(FieldTower::new(3, 2, Some(vec![2, 0, 1])).is_err()); // x^2+2 = (x+1)(x+2)
    assert!(FieldTower::new(3, 2, Some(vec![1, 0, 2])).is_err()); // not monic
    assert!(f3().extend_top(2, Some(vec![2, 0, 1])).is_err());
}

#[test]
fn canonical_moduli_are_least() {
    // F_4: x^2 + x + 1 is the only irreducible quadratic over F_2.
    let f4 = FieldTower::new(2, 2, None).unwrap();
    assert_eq!(f4.base_modulus(), &[1, 1, 1]);
    // F_9: x^2 + 1 has encoding 1, the least irreducible.
    let f9 = FieldTower::new(3, 2, None).unwrap();
    assert_eq!(f9.base_modulus(), &[1, 0, 1]);
    // canonical top modulus over F_3 of degree 2 is also x^2 + 1
    let t = f3().extend_top(2, None).unwrap();
    assert_eq!(t.top_modulus().unwrap(), &[1, 0, 1]);
}

#[test]
fn prime_field_arithmetic() {
    let t = f3();
    let two = t.element(Level::Mid, 2).unwrap();
    assert_eq!(t.add(two, two).index, 1); // 2 + 2 = 1 in F_3
    let inv = t.inv(two).unwrap();
    assert_eq!(t.mul(two, inv).index, 1);
    assert_eq!(t.inv(t.zero(Level::Mid)), Err(Error::DivisionByZero));
}

#[test]
fn f9_multiplication_matches_hand_reduction() {
    let t = f9_mid();
    // x has index 3; x * x = -1 = 2
    let x = t.element(Level::Mid, 3).unwrap();
    assert_eq!(t.mul(x, x).index, 2);
    // (x+1)^2 = x^2 + 2x + 1 = 2x
    let x1 = t.element(Level::Mid, 4).unwrap();
    assert_eq!(t.mul(x1, x1).index, 6);
    // every nonzero a has a * inv(a) = 1
    for idx in 1..9 {
        let a = t.element(Level::Mid, idx).unwrap();
        assert_eq!(t.mul(a, t.inv(a).unwrap()).index, 1);
    }
}

#[test]
fn mid_tables_agree_with_raw_multiplication() {
    // q = 9 builds tables; verify against the raw digit path exhaustively.
    let t = f9_mid();
    assert!(t.mid_tables.is_some());
    for a in 0..9u64 {
        for b in 0..9u64 {
            assert_eq!(t.mid_mul(a, b), t.mid_mul_raw(a, b), "a={a} b={b}");
        }
    }
}

#[test]
fn frobenius_on_f9() {
    let t = f9_top();
    // phi(x) = x^3 = -x = 2x
    let x = t.element(Level::Top, 3).unwrap();
    assert_eq!(t.frobenius(x).index, 6);
    // mid-level elements are fixed
    let two = t.element(Level::Mid, 2).unwrap();
    assert_eq!(t.frobenius(two), two);
    // phi^n = id on every element
    let frob = FrobeniusMap::new(&t).unwrap();
    for idx in 0..9 {
        let a = t.element(Level::Top, idx).unwrap();
        assert_eq!(frob.apply_iter(a, 2), a);
    }
}

#[test]
fn frobenius_is_a_ring_homomorphism_exhaustively() {
    for (p, m, n) in [(2u64, 1usize, 4usize), (3, 1, 2), (2, 2, 3), (3, 2, 2)] {
        let t = FieldTower::new(p, m, None)
            .unwrap()
            .extend_top(n, None)
            .unwrap();
        let card = t.cardinality(Level::Top);
        for ai in 0..card {
            let a = t.element(Level::Top, ai).unwrap();
            // phi(a)^q-definition agreement
            assert_eq!(t.frobenius(a).index, t.idx_pow(Level::Top, ai, t.q()));
            for bi in 0..card.min(40) {
                let b = t.element(Level::Top, bi).unwrap();
                assert_eq!(t.frobenius(t.add(a, b)), t.add(t.frobenius(a), t.frobenius(b)));
                assert_eq!(t.frobenius(t.mul(a, b)), t.mul(t.frobenius(a), t.frobenius(b)));
            }
        }
    }
}

#[test]
fn orders_in_f9() {
    let t = f9_mid();
    let x = t.element(Level::Mid, 3).unwrap();
    assert_eq!(t.element_order(x).unwrap(), 4);
    let x1 = t.element(Level::Mid, 4).unwrap();
    assert_eq!(t.element_order(x1).unwrap(), 8);
    assert_eq!(t.element_order(t.one(Level::Mid)).unwrap(), 1);
    assert_eq!(
        t.element_order(t.zero(Level::Mid)),
        Err(Error::ZeroOrderUndefined)
    );
}

#[test]
fn order_divisibility_law() {
    // a^(ord) = 1 and a^d != 1 for every proper divisor d of ord
    let t = f9_mid();
    for idx in 1..9 {
        let a = t.element(Level::Mid, idx).unwrap();
        let ord = t.element_order(a).unwrap();
        assert_eq!(t.pow(a, ord).index, 1);
        for d in crate::arith::divisors(ord).unwrap() {
            if d != ord {
                assert_ne!(t.pow(a, d).index, 1, "idx={idx} d={d}");
            }
        }
    }
}

#[test]
fn primitive_elements() {
    assert_eq!(f3().find_primitive(Level::Mid).unwrap().index, 2);
    assert_eq!(f9_mid().find_primitive(Level::Mid).unwrap().index, 4); // x+1
    let f2 = FieldTower::prime_field(2).unwrap();
    assert_eq!(f2.find_primitive(Level::Mid).unwrap().index, 1);
    // top level of F_9 over F_3: same least primitive by the same scan
    assert_eq!(f9_top().find_primitive(Level::Top).unwrap().index, 4);
}

#[test]
fn discrete_log_examples() {
    let t = f9_mid();
    let g = t.find_primitive(Level::Mid).unwrap();
    assert_eq!(t.discrete_log(g, t.one(Level::Mid)).unwrap(), 0);
    assert_eq!(t.discrete_log(g, g).unwrap(), 1);
    // (x+1)^4 = 2
    let two = t.element(Level::Mid, 2).unwrap();
    assert_eq!(t.discrete_log(g, two).unwrap(), 4);
    assert_eq!(
        t.discrete_log(g, t.zero(Level::Mid)),
        Err(Error::NoLogarithm)
    );
    // every element gets its least exponent
    for idx in 1..9 {
        let a = t.element(Level::Mid, idx).unwrap();
        let e = t.discrete_log(g, a).unwrap();
        assert_eq!(t.pow(g, e), a);
        for smaller in 0..e {
            assert_ne!(t.pow(g, smaller), a);
        }
    }
}

#[test]
fn kth_root_examples() {
    let f7 = FieldTower::prime_field(7).unwrap();
    let six = f7.element(Level::Mid, 6).unwrap();
    assert_eq!(f7.kth_root(six, 3).unwrap().unwrap().index, 3); // least of {3,5,6}
    let two = f7.element(Level::Mid, 2).unwrap();
    assert_eq!(f7.kth_root(two, 3).unwrap(), None); // cubes in F_7 are {0,1,6}
    assert_eq!(f7.kth_root(six, 1).unwrap().unwrap(), six);
    assert_eq!(f7.kth_root(f7.zero(Level::Mid), 5).unwrap().unwrap().index, 0);
}

#[test]
fn kth_root_p_part_uses_inverse_frobenius() {
    // In F_9 with p = 3, cubing is a bijection; every element has a cube root.
    let t = f9_mid();
    for idx in 0..9 {
        let a = t.element(Level::Mid, idx).unwrap();
        let r = t.kth_root(a, 3).unwrap().unwrap();
        assert_eq!(t.pow(r, 3), a);
        // k = 6 = 3 * 2 mixes both parts
        if let Some(r6) = t.kth_root(a, 6).unwrap() {
            assert_eq!(t.pow(r6, 6), a);
        }
    }
}

#[test]
fn kth_root_exhaustive_cross_check() {
    // Wherever a root is returned it k-th-powers back; wherever none is
    // returned an exhaustive scan confirms absence.
    for (p, m) in [(2u64, 4usize), (3, 2), (5, 1), (7, 1), (13, 1)] {
        let t = FieldTower::new(p, m, None).unwrap();
        let card = t.cardinality(Level::Mid);
        for k in 1..=8u64 {
            for idx in 0..card {
                let a = t.element(Level::Mid, idx).unwrap();
                match t.kth_root(a, k).unwrap() {
                    Some(r) => {
                        assert_eq!(t.pow(r, k), a, "p={p} m={m} k={k} idx={idx}");
                        // least root: nothing smaller powers to a
                        for smaller in 0..r.index {
                            let s = t.element(Level::Mid, smaller).unwrap();
                            assert_ne!(t.pow(s, k), a);
                        }
                    }
                    None => {
                        for xi in 0..card {
                            let x = t.element(Level::Mid, xi).unwrap();
                            assert_ne!(t.pow(x, k), a, "missed root p={p} k={k} idx={idx}");
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn two_kth_powers_examples() {
    let t = f3();
    let two = t.element(Level::Mid, 2).unwrap();
    let (x, y) = t.two_kth_powers(two, 2).unwrap();
    assert_eq!((x.index, y.index), (1, 1)); // 1 + 1 = 2
    let f7 = FieldTower::prime_field(7).unwrap();
    let five = f7.element(Level::Mid, 5).unwrap();
    let (x, y) = f7.two_kth_powers(five, 3).unwrap();
    assert_eq!((x.index, y.index), (3, 3)); // 6 + 6 = 12 = 5
    let (x, y) = t.two_kth_powers(t.zero(Level::Mid), 4).unwrap();
    assert_eq!((x.index, y.index), (0, 0));
}

#[test]
fn two_kth_powers_guarantee_region_sweep() {
    // Every alpha decomposes whenever card > (k-1)^4, across all prime powers
    // up to a desk bound. This is the field-level engine behind the matrix
    // decompositions, so it gets a real sweep.
    for q in crate::arith::prime_powers_up_to(512) {
        let (p, m) = q;
        let t = FieldTower::new(p, m, None).unwrap();
        let card = t.cardinality(Level::Mid);
        for k in 1..=6u64 {
            if card <= (k - 1).pow(4) {
                continue;
            }
            for idx in 0..card {
                let a = t.element(Level::Mid, idx).unwrap();
                let (x, y) = t.two_kth_powers(a, k).unwrap_or_else(|e| {
                    panic!("p={p} m={m} k={k} idx={idx}: {e}");
                });
                assert_eq!(t.add(t.pow(x, k), t.pow(y, k)), a);
            }
        }
    }
}

#[test]
fn encoding_round_trips() {
    let t = FieldTower::new(2, 2, None).unwrap().extend_top(3, None).unwrap();
    for idx in 0..t.cardinality(Level::Top) {
        let mut coeffs = [0u64; MAX_DEGREE];
        t.top_decode(idx, &mut coeffs);
        assert_eq!(t.top_encode(&coeffs), idx);
    }
    // embed/project round trips
    for idx in 0..t.q() {
        let a = t.element(Level::Mid, idx).unwrap();
        let up = t.embed(a, Level::Top).unwrap();
        assert_eq!(t.project(up, Level::Mid), Some(a));
    }
    let y = t.element(Level::Top, t.q()).unwrap();
    assert_eq!(t.project(y, Level::Mid), None);
}

#[test]
fn trace_matches_orbit_sum_exhaustively() {
    for (p, m, n) in [(2u64, 1usize, 4usize), (3, 1, 3), (2, 2, 2), (3, 2, 2)] {
        let t = FieldTower::new(p, m, None)
            .unwrap()
            .extend_top(n, None)
            .unwrap();
        let frob = FrobeniusMap::new(&t).unwrap();
        for idx in 0..t.cardinality(Level::Top) {
            let a = t.element(Level::Top, idx).unwrap();
            let mut acc = t.zero(Level::Top);
            for v in frob.orbit_sequence(a) {
                acc = t.add(acc, v);
            }
            let tr = t.trace_to_mid(a).unwrap();
            assert_eq!(t.embed(tr, Level::Top).unwrap(), acc);
        }
    }
}

#[test]
fn embedding_is_a_field_homomorphism() {
    let t = FieldTower::new(3, 2, None).unwrap().extend_top(2, None).unwrap();
    for ai in 0..9u64 {
        for bi in 0..9u64 {
            let a = t.element(Level::Mid, ai).unwrap();
            let b = t.element(Level::Mid, bi).unwrap();
            let (ta, tb) = (t.embed(a, Level::Top).unwrap(), t.embed(b, Level::Top).unwrap());
            assert_eq!(t.embed(t.add(a, b), Level::Top).unwrap(), t.add(ta, tb));
            assert_eq!(t.embed(t.mul(a, b), Level::Top).unwrap(), t.mul(ta, tb));
        }
    }
}
