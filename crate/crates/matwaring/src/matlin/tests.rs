use super::canonical::ColumnPrescription;
use super::*;
use crate::arith::SplitMix64;
use crate::fields::FieldTower;

fn f3() -> FieldTower {
    FieldTower::prime_field(3).unwrap()
}

fn random_matrix(rng: &mut SplitMix64, level: Level, n: usize, card: u64) -> FFMatrix {
    FFMatrix::new(level, n, (0..n * n).map(|_| rng.below(card)).collect())
}

#[test]
fn square_of_companion_like_matrix() {
    let t = f3();
    let a = FFMatrix::from_rows(Level::Mid, &[vec![0, 2], vec![1, 0]]);
    let sq = a.pow(&t, 2);
    assert_eq!(sq, FFMatrix::from_rows(Level::Mid, &[vec![2, 0], vec![0, 2]]));
    // A^0 = I
    assert_eq!(a.pow(&t, 0), FFMatrix::identity(Level::Mid, 2));
}

#[test]
fn inverse_round_trip_over_f5() {
    let t = FieldTower::prime_field(5).unwrap();
    let mut rng = SplitMix64::new(7);
    let mut seen = 0;
    while seen < 25 {
        let a = random_matrix(&mut rng, Level::Mid, 3, 5);
        let Ok(inv) = a.inverse(&t) else { continue };
        seen += 1;
        assert_eq!(a.mul(&t, &inv), FFMatrix::identity(Level::Mid, 3));
        assert_eq!(inv.mul(&t, &a), FFMatrix::identity(Level::Mid, 3));
    }
    // singular matrices are reported
    let z = FFMatrix::zero(Level::Mid, 2);
    assert_eq!(z.inverse(&t), Err(crate::Error::SingularMatrix));
}

#[test]
fn solve_and_rank() {
    let t = f3();
    let a = FFMatrix::from_rows(Level::Mid, &[vec![1, 2], vec![2, 2]]);
    let x = a.solve_vec(&t, &[1, 0]).unwrap();
    assert_eq!(a.mat_vec(&t, &x), vec![1, 0]);
    assert_eq!(a.rank(&t), 2);
    let s = FFMatrix::from_rows(Level::Mid, &[vec![1, 2], vec![2, 1]]);
    assert_eq!(s.rank(&t), 1); // second row = 2 * first
}

#[test]
fn companion_examples() {
    let t = f3();
    let p = Poly::new(Level::Mid, vec![1, 0, 1]); // X^2+1
    let c = companion(&t, &p).unwrap();
    assert_eq!(c, FFMatrix::from_rows(Level::Mid, &[vec![0, 2], vec![1, 0]]));
    // X - a gives the 1x1 matrix [a]
    let lin = Poly::new(Level::Mid, vec![1, 1]); // X + 1 = X - 2
    assert_eq!(companion(&t, &lin).unwrap(), FFMatrix::new(Level::Mid, 1, vec![2]));
    // non-monic rejected
    assert!(companion(&t, &Poly::new(Level::Mid, vec![1, 2])).is_err());
}

#[test]
fn char_poly_of_companion_round_trip_exhaustive() {
    // char_poly(companion(P)) = P for all monic P of degree <= 4 over small fields
    for (p, m, maxd) in [(2u64, 1usize, 5usize), (3, 1, 4), (5, 1, 3), (2, 2, 3), (3, 2, 2)] {
        let t = FieldTower::new(p, m, None).unwrap();
        let q = t.q();
        for d in 1..=maxd {
            for enc in 0..q.pow(d as u32) {
                let mut coeffs = Vec::with_capacity(d + 1);
                let mut e = enc;
                for _ in 0..d {
                    coeffs.push(e % q);
                    e /= q;
                }
                coeffs.push(1);
                let poly = Poly::new(Level::Mid, coeffs);
                let c = companion(&t, &poly).unwrap();
                let (cp, mp) = char_min_poly(&t, &c);
                assert_eq!(cp, poly, "q={q} d={d} enc={enc}");
                assert_eq!(mp, poly);
            }
        }
    }
}

#[test]
fn char_min_poly_examples() {
    let t = f3();
    // diag(1, 2): char = (X-1)(X-2) = X^2 + 2, min the same
    let d = FFMatrix::from_rows(Level::Mid, &[vec![1, 0], vec![0, 2]]);
    let (cp, mp) = char_min_poly(&t, &d);
    assert_eq!(cp, Poly::new(Level::Mid, vec![2, 0, 1]));
    assert_eq!(mp, cp);
    // scalar 2I_3: char (X-2)^3, min X-2
    let s = FFMatrix::scalar(Level::Mid, 3, t.element(Level::Mid, 2).unwrap());
    let (cp, mp) = char_min_poly(&t, &s);
    let xm2 = Poly::new(Level::Mid, vec![1, 1]); // X - 2 = X + 1
    assert_eq!(mp, xm2);
    assert_eq!(cp, xm2.mul(&t, &xm2).mul(&t, &xm2));
}

#[test]
fn nonderogatory_checks() {
    let t = f3();
    let c = companion(&t, &Poly::new(Level::Mid, vec![1, 0, 1])).unwrap();
    assert!(is_nonderogatory(&t, &c));
    assert!(!is_nonderogatory(&t, &FFMatrix::identity(Level::Mid, 2)));
    // staircase with subdiagonal (2, 2), zeros below
    let a = FFMatrix::from_rows(
        Level::Mid,
        &[vec![1, 0, 2], vec![2, 1, 0], vec![0, 2, 1]],
    );
    assert!(has_staircase_shape(&a));
    assert!(is_nonderogatory(&t, &a));
}

#[test]
fn staircase_shape_implies_nonderogatory_randomized() {
    // random staircase matrices over several fields are all non-derogatory
    for (p, m) in [(2u64, 1usize), (3, 1), (2, 2), (3, 2), (5, 1), (7, 1)] {
        let t = FieldTower::new(p, m, None).unwrap();
        let q = t.q();
        let mut rng = SplitMix64::new(p * 100 + m as u64);
        for n in 2..=5usize {
            for _ in 0..20 {
                let mut a = FFMatrix::zero(Level::Mid, n);
                for i in 0..n {
                    for j in 0..n {
                        if j + 1 == i {
                            a.set(i, j, 1 + rng.below(q - 1));
                        } else if i <= j {
                            a.set(i, j, rng.below(q));
                        }
                    }
                }
                assert!(has_staircase_shape(&a));
                assert!(is_nonderogatory(&t, &a), "q={q} n={n}\n{a}");
            }
        }
    }
}

#[test]
fn frobenius_form_of_companion_is_identity_witness() {
    let t = f3();
    let p = Poly::new(Level::Mid, vec![2, 1, 0, 1]);
    let c = companion(&t, &p).unwrap();
    let form = frobenius_form(&t, &c);
    assert_eq!(form.invariant_factors(), &[p]);
    assert_eq!(form.witness().u(), &FFMatrix::identity(Level::Mid, 3));
}

#[test]
fn frobenius_form_of_scalar() {
    let t = f3();
    let alpha = t.element(Level::Mid, 2).unwrap();
    let s = FFMatrix::scalar(Level::Mid, 3, alpha);
    let form = frobenius_form(&t, &s);
    let xm2 = Poly::new(Level::Mid, vec![1, 1]);
    assert_eq!(form.invariant_factors(), &[xm2.clone(), xm2.clone(), xm2]);
    assert!(form.witness().verify(&t, &form.form_matrix(&t), &s));
}

#[test]
fn frobenius_form_of_distinct_diagonal_is_cyclic() {
    let t = f3();
    let d = FFMatrix::from_rows(Level::Mid, &[vec![1, 0], vec![0, 2]]);
    let form = frobenius_form(&t, &d);
    assert_eq!(form.invariant_factors().len(), 1);
    assert_eq!(form.invariant_factors()[0], Poly::new(Level::Mid, vec![2, 0, 1]));
}

#[test]
fn frobenius_form_randomized_contract() {
    // witness verifies, divisibility chain holds, product of factors has
    // degree n, and block sizes ascend
    for (p, m) in [(2u64, 1usize), (3, 1), (5, 1), (2, 2), (3, 2)] {
        let t = FieldTower::new(p, m, None).unwrap();
        let q = t.q();
        let mut rng = SplitMix64::new(p * 31 + m as u64);
        for n in 1..=6usize {
            for _ in 0..15 {
                let a = random_matrix(&mut rng, Level::Mid, n, q);
                let form = frobenius_form(&t, &a);
                assert!(form.witness().verify(&t, &form.form_matrix(&t), &a));
                let factors = form.invariant_factors();
                for w in factors.windows(2) {
                    assert!(w[1].rem(&t, &w[0]).unwrap().is_zero());
                    assert!(w[0].degree() <= w[1].degree());
                }
                let total: usize = factors.iter().map(|f| f.degree().unwrap()).sum();
                assert_eq!(total, n);
            }
        }
    }
}

#[test]
fn frobenius_form_exhaustive_tiny_spaces() {
    // every matrix of M_2(F_2), M_3(F_2), M_2(F_3) decomposes with a
    // verified witness
    for (p, n) in [(2u64, 2usize), (2, 3), (3, 2)] {
        let t = FieldTower::prime_field(p).unwrap();
        let total = p.pow((n * n) as u32);
        for enc in 0..total {
            let mut entries = Vec::with_capacity(n * n);
            let mut e = enc;
            for _ in 0..n * n {
                entries.push(e % p);
                e /= p;
            }
            let a = FFMatrix::new(Level::Mid, n, entries);
            let form = frobenius_form(&t, &a);
            assert!(form.witness().verify(&t, &form.form_matrix(&t), &a));
        }
    }
}

#[test]
fn cyclic_similarity_examples() {
    let t = f3();
    let c = companion(&t, &Poly::new(Level::Mid, vec![1, 0, 1])).unwrap();
    // A = B: witness relation holds (identity acceptable)
    let w = cyclic_similarity(&t, &c, &c).unwrap();
    assert!(w.verify(&t, &c, &c));
    // B = [[1,2],[2,2]] over F_3 has trace 0 and det 1-4 = 0-1 = ... char X^2+1
    let b = FFMatrix::from_rows(Level::Mid, &[vec![1, 2], vec![2, 2]]);
    let w = cyclic_similarity(&t, &c, &b).unwrap();
    assert!(w.verify(&t, &c, &b));
    assert_eq!(w.reduce(&t, &b), c);
    // different traces are not similar
    let other = companion(&t, &Poly::new(Level::Mid, vec![1, 1, 1])).unwrap();
    assert!(matches!(
        cyclic_similarity(&t, &c, &other),
        Err(crate::Error::NotSimilar(_))
    ));
}

#[test]
fn nonderogatory_iff_cyclic_similar_to_companion_of_minpoly() {
    let t = FieldTower::prime_field(5).unwrap();
    let mut rng = SplitMix64::new(99);
    for n in 2..=4usize {
        for _ in 0..40 {
            let a = random_matrix(&mut rng, Level::Mid, n, 5);
            let (_, mp) = char_min_poly(&t, &a);
            let nd = is_nonderogatory(&t, &a);
            if mp.degree() == Some(n) {
                let c = companion(&t, &mp).unwrap();
                let w = cyclic_similarity(&t, &a, &c);
                assert!(nd);
                assert!(w.is_ok());
                assert!(w.unwrap().verify(&t, &a, &c));
            } else {
                assert!(!nd);
            }
        }
    }
}

#[test]
fn completion_matches_spec_example() {
    let t = f3();
    let b = companion(&t, &Poly::new(Level::Mid, vec![1, 0, 1])).unwrap(); // [[0,2],[1,0]]
    let prescription = ColumnPrescription::new(2, vec![vec![1, 2]]).unwrap();
    let (a, w) = complete_prescribed_columns(&t, &b, &prescription).unwrap();
    assert_eq!(a, FFMatrix::from_rows(Level::Mid, &[vec![1, 2], vec![2, 2]]));
    assert!(w.verify(&t, &a, &b));
}

#[test]
fn completion_of_own_columns_is_identity() {
    let t = FieldTower::prime_field(5).unwrap();
    // B with staircase shape: prescribing B's own first columns returns B
    let b = FFMatrix::from_rows(
        Level::Mid,
        &[vec![2, 1, 4], vec![3, 0, 1], vec![0, 2, 2]],
    );
    let prescription = ColumnPrescription::from_matrix(&b).unwrap();
    let (a, w) = complete_prescribed_columns(&t, &b, &prescription).unwrap();
    assert_eq!(a, b);
    assert!(w.verify(&t, &a, &b));
}

#[test]
fn completion_rejects_bad_prescriptions() {
    let t = f3();
    let b = companion(&t, &Poly::new(Level::Mid, vec![1, 0, 1])).unwrap();
    // zero subdiagonal entry
    assert!(matches!(
        ColumnPrescription::new(2, vec![vec![1, 0]]),
        Err(crate::Error::PrescriptionViolation(_))
    ));
    // nonzero below the subdiagonal
    assert!(matches!(
        ColumnPrescription::new(3, vec![vec![0, 1, 2], vec![0, 0, 1]]),
        Err(crate::Error::PrescriptionViolation(_))
    ));
    // derogatory B is refused
    let eye = FFMatrix::identity(Level::Mid, 2);
    let pres = ColumnPrescription::new(2, vec![vec![1, 2]]).unwrap();
    assert_eq!(
        complete_prescribed_columns(&t, &eye, &pres).unwrap_err(),
        crate::Error::DegenerateBasis
    );
    let _ = b;
}

#[test]
fn completion_randomized_contract() {
    // output similar to B (witness re-check) and matches the prescription
    for (p, m) in [(3u64, 1usize), (2, 2), (5, 1)] {
        let t = FieldTower::new(p, m, None).unwrap();
        let q = t.q();
        let mut rng = SplitMix64::new(p + m as u64 * 1000);
        for n in 2..=5usize {
            for _ in 0..10 {
                // random non-derogatory B via a random staircase matrix
                let mut b = FFMatrix::zero(Level::Mid, n);
                for i in 0..n {
                    for j in 0..n {
                        if j + 1 == i {
                            b.set(i, j, 1 + rng.below(q - 1));
                        } else if i <= j {
                            b.set(i, j, rng.below(q));
                        }
                    }
                }
                // random conforming prescription
                let cols: Vec<Vec<u64>> = (0..n - 1)
                    .map(|j| {
                        (0..n)
                            .map(|i| {
                                if i == j + 1 {
                                    1 + rng.below(q - 1)
                                } else if i > j + 1 {
                                    0
                                } else {
                                    rng.below(q)
                                }
                            })
                            .collect()
                    })
                    .collect();
                let prescription = ColumnPrescription::new(n, cols.clone()).unwrap();
                let (a, w) = complete_prescribed_columns(&t, &b, &prescription).unwrap();
                assert!(w.verify(&t, &a, &b));
                for (j, col) in cols.iter().enumerate() {
                    for (i, &want) in col.iter().enumerate() {
                        assert_eq!(a.at(i, j), want);
                    }
                }
            }
        }
    }
}

/// Independent oracle: det(XI - A) by cofactor expansion over the
/// polynomial ring.
fn char_poly_by_cofactors(t: &FieldTower, a: &FFMatrix) -> Poly {
    let n = a.dim();
    let level = a.level();
    // entries of XI - A as polynomials
    let entry = |i: usize, j: usize| -> Poly {
        let neg = t.neg(a.get(i, j));
        if i == j {
            Poly::new(level, vec![neg.index, 1])
        } else {
            Poly::constant(neg)
        }
    };
    fn det(t: &FieldTower, cells: &[Vec<Poly>]) -> Poly {
        let n = cells.len();
        if n == 1 {
            return cells[0][0].clone();
        }
        let level = cells[0][0].level();
        let mut acc = Poly::zero(level);
        for (j, top) in cells[0].iter().enumerate() {
            if top.is_zero() {
                continue;
            }
            let minor: Vec<Vec<Poly>> = (1..n)
                .map(|r| {
                    (0..n)
                        .filter(|&c| c != j)
                        .map(|c| cells[r][c].clone())
                        .collect()
                })
                .collect();
            let term = top.mul(t, &det(t, &minor));
            acc = if j % 2 == 0 {
                acc.add(t, &term)
            } else {
                acc.sub(t, &term)
            };
        }
        acc
    }
    let cells: Vec<Vec<Poly>> = (0..n)
        .map(|i| (0..n).map(|j| entry(i, j)).collect())
        .collect();
    det(t, &cells)
}

#[test]
fn char_poly_agrees_with_cofactor_determinant() {
    for (p, m) in [(2u64, 1usize), (3, 1), (5, 1), (2, 2), (3, 2)] {
        let t = FieldTower::new(p, m, None).unwrap();
        let q = t.q();
        let mut rng = SplitMix64::new(p * 7 + m as u64);
        for n in 1..=4usize {
            for _ in 0..25 {
                let a = random_matrix(&mut rng, Level::Mid, n, q);
                let (from_form, _) = char_min_poly(&t, &a);
                let from_det = char_poly_by_cofactors(&t, &a);
                assert_eq!(from_form, from_det, "q={q} n={n}\n{a}");
            }
        }
    }
}

#[test]
fn min_poly_annihilates_and_is_minimal() {
    // the minimal polynomial kills A, and the iterates I, A, ..., A^{d-1}
    // stay independent in matrix space, so nothing of lower degree kills A
    for (p, m) in [(3u64, 1usize), (2, 2), (5, 1)] {
        let t = FieldTower::new(p, m, None).unwrap();
        let q = t.q();
        let mut rng = SplitMix64::new(p + m as u64);
        for n in 1..=4usize {
            for _ in 0..20 {
                let a = random_matrix(&mut rng, Level::Mid, n, q);
                let mp = minimal_polynomial(&t, &a);
                let d = mp.degree().unwrap();
                assert!(a.apply_poly(&t, &mp).is_zero());
                // flatten the iterates into vectors and row-reduce
                let mut rows: Vec<Vec<u64>> = Vec::new();
                let mut pw = FFMatrix::identity(Level::Mid, n);
                for _ in 0..d {
                    rows.push(pw.entries().to_vec());
                    pw = pw.mul(&t, &a);
                }
                // Gaussian elimination over the flattened space
                let mut rank = 0usize;
                let mut work = rows.clone();
                for col in 0..n * n {
                    let Some(pivot) = (rank..work.len()).find(|&r| work[r][col] != 0) else {
                        continue;
                    };
                    work.swap(rank, pivot);
                    let inv = t.idx_inv(Level::Mid, work[rank][col]).unwrap();
                    for x in work[rank].iter_mut() {
                        *x = t.idx_mul(Level::Mid, *x, inv);
                    }
                    for r in 0..work.len() {
                        if r != rank && work[r][col] != 0 {
                            let f = work[r][col];
                            for cc in 0..n * n {
                                let v = t.idx_sub(
                                    Level::Mid,
                                    work[r][cc],
                                    t.idx_mul(Level::Mid, f, work[rank][cc]),
                                );
                                work[r][cc] = v;
                            }
                        }
                    }
                    rank += 1;
                }
                assert_eq!(rank, d, "iterates dependent below the minimal degree");
            }
        }
    }
}

#[test]
fn matrix_text_round_trip() {
    let t = f3();
    let a = FFMatrix::from_rows(Level::Mid, &[vec![0, 1], vec![2, 0]]);
    let text = a.to_text(&t);
    assert_eq!(text, "3 1 2\n0 1\n2 0\n");
    let (p, m, n, entries) = parse_matrix_text(&text).unwrap();
    assert_eq!((p, m, n), (3, 1, 2));
    assert_eq!(FFMatrix::new(Level::Mid, n, entries), a);
    // json mirror
    let j = MatrixJson::from_matrix(&t, &a);
    let s = serde_json::to_string(&j).unwrap();
    let back: MatrixJson = serde_json::from_str(&s).unwrap();
    assert_eq!(back.to_matrix(&t, Level::Mid).unwrap(), a);
}
