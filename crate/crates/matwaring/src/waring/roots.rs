//! k-th roots of structured matrices: companion matrices of orbit
//! polynomials, block upper triangles, and matrices of known coprime order.

use crate::arith;
use crate::error::{Error, Result};
use crate::fields::{FFElement, FieldTower, Level};
use crate::matlin::{char_min_poly, companion, cyclic_similarity, FFMatrix};
use crate::polyring::{orbit_poly, KPowerWitness, Poly};

/// Explicit E with E^k = C_P for a validated k-power witness (P, a, k):
/// G = C_{Phi_a} plays multiplication by a, so G^k is non-derogatory with
/// characteristic polynomial Phi_{a^k} = P; conjugating G by the similarity
/// that carries G^k onto C_P yields the root.
pub fn kpower_companion_root(witness: &KPowerWitness) -> Result<FFMatrix> {
    witness.validate()?;
    let tower = &witness.tower;
    if witness.k == 1 {
        return companion(tower, &witness.poly);
    }
    let phi_a = orbit_poly(tower, witness.a)?;
    let g = companion(tower, &phi_a)?;
    let gk = g.pow(tower, witness.k);
    let c_p = companion(tower, &witness.poly)?;
    let u = cyclic_similarity(tower, &c_p, &gk).map_err(|e| {
        Error::WitnessInvalid(format!("G^k is not similar to the companion of P: {e}"))
    })?;
    let root = u.reduce(tower, &g);
    if root.pow(tower, witness.k) != c_p {
        return Err(Error::TheoremContradiction(
            "companion root failed to re-power to C_P".into(),
        ));
    }
    Ok(root)
}

/// Solve R = [[D, x], [0, t]] with R^k = [[D^k, d], [0, t^k]]: the top-right
/// column of R^k is (D^{k-1} + t D^{k-2} + ... + t^{k-1} I) x, and that
/// geometric sum is invertible precisely when t^k avoids the eigenvalues of
/// D^k.
pub fn block_root(
    tower: &FieldTower,
    d_root: &FFMatrix,
    d: &[u64],
    t: FFElement,
    k: u64,
) -> Result<FFMatrix> {
    assert!(k >= 1, "k must be a positive integer");
    let level = d_root.level();
    let nd = d_root.dim();
    assert_eq!(d.len(), nd, "column height must match the block");
    if t.is_zero() {
        return Err(Error::PreconditionViolated(
            "block root requires a nonzero corner scalar".into(),
        ));
    }
    // M = sum_{i<k} t^{k-1-i} D^i
    let mut m = FFMatrix::zero(level, nd);
    let mut dpow = FFMatrix::identity(level, nd);
    for i in 0..k {
        let coeff = tower.pow(t, k - 1 - i);
        m = m.add(tower, &dpow.scale(tower, coeff));
        if i + 1 < k {
            dpow = dpow.mul(tower, d_root);
        }
    }
    let x = m.solve_vec(tower, d).map_err(|_| Error::SingularGeometricSum)?;
    let n = nd + 1;
    let mut r = FFMatrix::zero(level, n);
    for i in 0..nd {
        for j in 0..nd {
            r.set(i, j, d_root.at(i, j));
        }
        r.set(i, nd, x[i]);
    }
    r.set(nd, nd, t.index);
    // verify the block identity before returning
    let rk = r.pow(tower, k);
    let dk = d_root.pow(tower, k);
    let tk = tower.pow(t, k);
    let mut ok = rk.at(nd, nd) == tk.index;
    for i in 0..nd {
        ok &= rk.at(i, nd) == d[i];
        ok &= rk.at(nd, i) == 0;
        for j in 0..nd {
            ok &= rk.at(i, j) == dk.at(i, j);
        }
    }
    if !ok {
        return Err(Error::TheoremContradiction(
            "block root k-th power does not match the prescribed block matrix".into(),
        ));
    }
    Ok(r)
}

/// Multiplicative order of an invertible matrix. Covers the two shapes the
/// decompositions produce: minimal polynomial (X-1)^j (order a power of the
/// characteristic) and irreducible minimal polynomial (order of a field
/// element), with a bounded brute-force scan as the general fallback.
pub fn matrix_order(tower: &FieldTower, b: &FFMatrix) -> Result<u64> {
    let n = b.dim();
    let level = b.level();
    let eye = FFMatrix::identity(level, n);
    if *b == eye {
        return Ok(1);
    }
    let (_, minpoly) = char_min_poly(tower, b);
    if minpoly.coeff(0).is_zero() {
        return Err(Error::InvalidInput("matrix is singular".into()));
    }
    let p = tower.p();
    // unipotent case: min poly (X-1)^j
    let x_minus_one = Poly::new(level, vec![tower.idx_neg(level, 1), 1]);
    let j = minpoly.degree().unwrap();
    let mut unipotent = Poly::one(level);
    for _ in 0..j {
        unipotent = unipotent.mul(tower, &x_minus_one);
    }
    if unipotent == minpoly {
        let mut ord = 1u64;
        let mut pw = b.clone();
        while pw != eye {
            pw = pw.pow(tower, p);
            ord *= p;
        }
        // strip: the loop alone gives the least power of p
        return Ok(ord);
    }
    // irreducible minimal polynomial: the matrix generates a field
    if level == Level::Mid && minpoly.is_irreducible(tower)? {
        let d = minpoly.degree().unwrap();
        let ext = tower
            .without_top()
            .extend_top(d, Some(minpoly.coeffs().to_vec()))?;
        let root_index = if d == 1 {
            // modulus Y - c: the class of X is the constant c
            tower.idx_neg(Level::Mid, minpoly.coeff(0).index)
        } else {
            ext.q()
        };
        let root = ext.element(Level::Top, root_index)?;
        let ord = ext.element_order(root)?;
        debug_assert_eq!(b.pow(tower, ord), eye);
        return Ok(ord);
    }
    // general fallback: bounded scan
    let mut pw = b.clone();
    for ord in 1..=(1u64 << 20) {
        if pw == eye {
            return Ok(ord);
        }
        pw = pw.mul(tower, b);
    }
    Err(Error::BudgetExceeded(
        "matrix order scan exceeded 2^20 steps".into(),
    ))
}

/// V with V^k = B for invertible B whose multiplicative order is coprime to
/// k: V = B^(k^{-1} mod ord B).
pub fn unipotent_root(tower: &FieldTower, b: &FFMatrix, k: u64) -> Result<FFMatrix> {
    assert!(k >= 1, "k must be a positive integer");
    let ord = matrix_order(tower, b).map_err(|e| match e {
        Error::InvalidInput(_) => Error::OrderNotCoprime,
        other => other,
    })?;
    let k_red = k % ord;
    if arith::gcd(k_red, ord) != 1 {
        return Err(Error::OrderNotCoprime);
    }
    let e = arith::mod_inverse(k_red, ord).ok_or(Error::OrderNotCoprime)?;
    let v = b.pow(tower, e);
    debug_assert_eq!(v.pow(tower, k), *b);
    Ok(v)
}
