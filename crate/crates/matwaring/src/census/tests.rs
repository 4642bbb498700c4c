use super::*;
use crate::arith::SplitMix64;

fn f3() -> FieldTower {
    FieldTower::prime_field(3).unwrap()
}

#[test]
fn power_set_tiny_examples() {
    let f2 = FieldTower::prime_field(2).unwrap();
    let s = enumerate_powers(&f2, 1, 2).unwrap();
    assert_eq!(s.members(), &[0, 1]); // squares in F_2
    let s = enumerate_powers(&f3(), 1, 2).unwrap();
    assert_eq!(s.members(), &[0, 1]); // squares in F_3: 0, 1, 4 = 1
    let s = enumerate_powers(&f2, 2, 1).unwrap();
    assert_eq!(s.len(), 16); // k = 1 keeps everything
    // contains 0 and the identity
    let s = enumerate_powers(&f3(), 2, 2).unwrap();
    assert!(s.contains(0));
    let eye = pack_matrix(&f3(), &FFMatrix::identity(Level::Mid, 2));
    assert!(s.contains(eye));
    // budget
    let f5 = FieldTower::prime_field(5).unwrap();
    assert!(matches!(
        enumerate_powers(&f5, 4, 2),
        Err(Error::BudgetExceeded(_))
    ));
}

#[test]
fn power_set_closed_under_similarity() {
    let t = f3();
    let s = enumerate_powers(&t, 2, 2).unwrap();
    let mut rng = SplitMix64::new(17);
    let mut done = 0;
    while done < 100 {
        let u = FFMatrix::new(Level::Mid, 2, (0..4).map(|_| rng.below(3)).collect());
        let Ok(u_inv) = u.inverse(&t) else { continue };
        done += 1;
        for &code in s.members() {
            let x = unpack_matrix(&t, 2, code);
            let conj = u_inv.mul(&t, &x).mul(&t, &u);
            assert!(s.contains(pack_matrix(&t, &conj)));
        }
    }
}

#[test]
fn packing_round_trips() {
    let t = f3();
    let mut rng = SplitMix64::new(3);
    for _ in 0..50 {
        let a = FFMatrix::new(Level::Mid, 3, (0..9).map(|_| rng.below(3)).collect());
        assert_eq!(unpack_matrix(&t, 3, pack_matrix(&t, &a)), a);
    }
}

#[test]
fn closure_small_cases() {
    let t = f3();
    let s = enumerate_powers(&t, 2, 2).unwrap();
    let rep = closure_check(&t, &s, 3).unwrap();
    assert!(rep.holds); // q^n = 9 > (k-1)^4 = 1
    let f2 = FieldTower::prime_field(2).unwrap();
    let all = enumerate_powers(&f2, 2, 1).unwrap();
    assert!(closure_check(&f2, &all, 2).unwrap().holds);
    // two squares already cover M_2(F_3); the closure check agrees
    let rep2 = closure_check(&t, &s, 2).unwrap();
    assert!(rep2.holds);
}

#[test]
fn closure_counterexample_is_genuine() {
    // fourth powers in F_5 are {0, 1}: the scalar 3 is not a sum of two of
    // them, and the first counterexample the scan reports really is one
    let f5 = FieldTower::prime_field(5).unwrap();
    let s = enumerate_powers(&f5, 1, 4).unwrap();
    assert_eq!(s.members(), &[0, 1]);
    let rep = closure_check(&f5, &s, 2).unwrap();
    assert!(!rep.holds);
    assert_eq!(rep.first_counterexample, Some(3));
    let target = unpack_matrix(&f5, 1, 3);
    for &a in s.members() {
        let rest = target.sub(&f5, &unpack_matrix(&f5, 1, a));
        assert!(!s.contains(pack_matrix(&f5, &rest)));
    }
    // with three terms, 3 = 1 + 1 + 1 is reachable but 4 is not
    let rep3 = closure_check(&f5, &s, 3).unwrap();
    assert!(!rep3.holds);
    assert_eq!(rep3.first_counterexample, Some(4));
}

#[test]
fn orbit_count_examples() {
    let t = f3();
    let rep = orbit_distinct_count(&t, 2).unwrap();
    assert_eq!(rep.exact, 6); // 9 - 3 elements of F_3
    assert!((rep.divisor_bound - 2.0).abs() < 1e-9); // 9 - (4/2)*3 - 1
    assert!(rep.divisor_holds);
    let f2 = FieldTower::prime_field(2).unwrap();
    let rep = orbit_distinct_count(&f2, 1).unwrap();
    assert_eq!(rep.exact, 2); // every element has period 1 = n
    let rep = orbit_distinct_count(&f2, 4).unwrap();
    // exact count by Moebius over subfields: 16 - 4 = 12
    assert_eq!(rep.exact, 12);
    assert!(rep.divisor_holds);
}

#[test]
fn orbit_count_matches_moebius_formula() {
    // independent oracle: N = sum_{d | n} mu(n/d) q^d
    let moebius = |m: u64| -> i64 {
        let fac = crate::arith::factor(m).unwrap();
        if fac.iter().any(|&(_, e)| e > 1) {
            0
        } else if fac.len().is_multiple_of(2) {
            1
        } else {
            -1
        }
    };
    for (p, m, max_n) in [(2u64, 1usize, 10usize), (3, 1, 6), (2, 2, 5), (5, 1, 4)] {
        let tower = FieldTower::new(p, m, None).unwrap();
        let q = tower.q();
        for n in 1..=max_n {
            if (q as u128).pow(n as u32) > 1 << 16 {
                continue;
            }
            let rep = orbit_distinct_count(&tower, n).unwrap();
            let mut expected = 0i128;
            for d in crate::arith::divisors(n as u64).unwrap() {
                expected += moebius(n as u64 / d) as i128 * (q as i128).pow(d as u32);
            }
            assert_eq!(rep.exact as i128, expected, "q={q} n={n}");
        }
    }
}

#[test]
fn trace_fiber_k1_is_uniform() {
    // k = 1: the trace is a surjective F_q-linear map, every fiber has q^(n-1)
    for (p, m, n) in [(3u64, 1usize, 3usize), (2, 2, 2), (5, 1, 2)] {
        let tower = FieldTower::new(p, m, None).unwrap();
        let q = tower.q();
        let counts = trace_fiber_counts(&tower, n, 1).unwrap();
        for &c in &counts {
            assert_eq!(c, q.pow((n - 1) as u32));
        }
    }
}

#[test]
fn trace_fiber_example_vacuous() {
    let t = f3();
    let rep = trace_fiber_count(&t, 2, 2, 0).unwrap();
    assert_eq!(rep.bound, 3 + 27 - 81); // -51
    assert!(rep.vacuous && rep.holds);
    // hypotheses enforced
    assert!(trace_fiber_count(&t, 2, 3, 0).is_err()); // k >= q
    assert!(trace_fiber_count(&t, 1, 2, 0).is_err()); // n < 2
}

#[test]
fn trace_fiber_counts_sum_to_field_size() {
    for (p, m, n, k) in [(3u64, 1usize, 4usize, 2u64), (5, 1, 3, 3), (2, 2, 3, 3)] {
        let tower = FieldTower::new(p, m, None).unwrap();
        let q = tower.q();
        let counts = trace_fiber_counts(&tower, n, k).unwrap();
        let total: u64 = counts.iter().sum();
        assert_eq!(total, q.pow(n as u32));
    }
}

#[test]
fn divisor_bound_examples() {
    let rep = divisor_bound_check(8).unwrap();
    assert_eq!(rep.divisors, 4);
    assert!(rep.holds && rep.bound > 7.0 && rep.bound < 7.1);
    let rep = divisor_bound_check(1).unwrap();
    assert_eq!(rep.divisors, 1);
    assert!(rep.holds);
}

#[test]
fn sharp_condition_examples() {
    let rep = sharp_condition(3, 8, 2).unwrap();
    assert!(rep.final_holds);
    assert!((rep.final_lhs - 12.98).abs() < 0.01);
    let rep = sharp_condition(3, 7, 2).unwrap();
    assert!(!rep.final_holds);
    assert!(rep.final_lhs < -30.0 && rep.final_lhs > -45.0);
    let rep = sharp_condition(2, 9, 2).unwrap();
    assert!(rep.final_holds);
    assert!((rep.final_lhs - 18.9).abs() < 0.1);
}

#[test]
fn cohen_check_examples() {
    // (2, 2): only X^2+X+1 is irreducible, trace 1; t = 0 has none
    let f2 = FieldTower::prime_field(2).unwrap();
    let rep = cohen_check(&f2, 2).unwrap();
    assert!(rep.consistent);
    assert!(!rep.rows[0].exists);
    assert!(rep.rows[1].exists);
    assert!(rep.divergences_from_stated.is_empty());
    // (3, 2): t = 0 has no primitive polynomial although the stated
    // exception set says otherwise; traces 1 and 2 exist
    let rep = cohen_check(&f3(), 2).unwrap();
    assert!(rep.consistent);
    assert!(!rep.rows[0].exists);
    assert!(rep.rows[1].exists && rep.rows[2].exists);
    assert_eq!(rep.divergences_from_stated, vec![0]);
    // (4, 3): the stated exception pair is genuine
    let f4 = FieldTower::new(2, 2, None).unwrap();
    let rep = cohen_check(&f4, 3).unwrap();
    assert!(rep.consistent);
    assert!(!rep.rows[0].exists);
    for row in &rep.rows[1..] {
        assert!(row.exists);
    }
    assert!(rep.divergences_from_stated.is_empty());
    // (3, 3): every trace including 0 exists
    let rep = cohen_check(&f3(), 3).unwrap();
    assert!(rep.consistent);
    for row in &rep.rows {
        assert!(row.exists);
    }
}

#[test]
fn report_rows_and_csv() {
    let rows = sweep_sharp(&[3], 7, 8, 2).unwrap();
    assert_eq!(rows.len(), 2);
    assert!(!rows[0].holds && rows[1].holds);
    let csv = rows_to_csv(&rows);
    assert!(csv.starts_with("sweep,params,exact,bound,holds,note\n"));
    assert_eq!(csv.lines().count(), 3);
}

#[test]
fn sweeps_run_on_small_grids() {
    let rows = sweep_orbit_bounds(256).unwrap();
    assert!(rows.iter().all(|r| r.holds));
    let rows = sweep_trace_fibers(256).unwrap();
    assert!(rows.iter().all(|r| r.holds));
    let rows = sweep_divisor_bound(10_000, 256).unwrap();
    assert!(rows.iter().all(|r| r.holds));
    let rows = sweep_cohen(256).unwrap();
    assert!(rows.iter().all(|r| r.holds), "primitive census holds on the corrected exception set");
    // the (3, 2, t=0) row documents the divergence from the stated set
    assert!(rows
        .iter()
        .any(|r| r.params == "q=3 n=2 t=0" && r.note == "beyond stated exception set"));
}
