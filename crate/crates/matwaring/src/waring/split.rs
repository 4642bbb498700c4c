//! Additive splittings of a non-scalar matrix: into a block-triangular part
//! plus a non-derogatory part with prescribed minimal polynomials, and into a
//! unipotent-spectrum part plus a companion part.

use crate::error::{Error, Result};
use crate::fields::{FFElement, FieldTower};
use crate::matlin::{
    companion, complete_prescribed_columns, frobenius_form, ColumnPrescription, FFMatrix,
    SimilarityWitness,
};
use crate::polyring::Poly;

/// Result of the non-scalar split in Frobenius coordinates:
/// A_frob = block_part + companion_part, where block_part has the shape
/// [[D, s_col], [0, corner]] with D similar to C_P, and companion_part is
/// non-derogatory with minimal polynomial Q.
#[derive(Debug, Clone)]
pub struct SplitResult {
    /// S = A_frob - E with the verified block shape.
    pub block_part: FFMatrix,
    /// Top-left (n-1) x (n-1) block of S, similar to C_P, an explicit k-th
    /// power whenever P is a k-power polynomial.
    pub d_block: FFMatrix,
    /// Top-right column of S.
    pub s_col: Vec<u64>,
    /// Bottom-right entry of S.
    pub corner: FFElement,
    /// E, non-derogatory with minimal polynomial Q.
    pub companion_part: FFMatrix,
    /// Relates Frobenius coordinates to the original: u^{-1} A u = A_frob.
    pub conjugator: SimilarityWitness,
    /// The Frobenius form of A itself.
    pub a_frob: FFMatrix,
}

/// Split a non-scalar A (over a field with more than two elements) as
/// A_frob = S + E: bring A to Frobenius form, conjugate C_P into a staircase
/// matrix D whose subdiagonal avoids {0, 1}, and complete A_frob - diag(D, t)
/// to a non-derogatory E with minimal polynomial Q. Requires the trace
/// bookkeeping Tr(Q) = Tr(A) - Tr(P) - corner, which pins S's corner.
pub fn split_nonscalar(
    tower: &FieldTower,
    a: &FFMatrix,
    p_poly: &Poly,
    corner: FFElement,
    q_poly: &Poly,
) -> Result<SplitResult> {
    let n = a.dim();
    let level = a.level();
    if tower.cardinality(level) == 2 {
        return Err(Error::PreconditionViolated(
            "the block split needs a field with more than two elements".into(),
        ));
    }
    if a.is_scalar() {
        return Err(Error::PreconditionViolated(
            "the block split is defined for non-scalar matrices".into(),
        ));
    }
    if p_poly.degree() != Some(n - 1) || !p_poly.is_monic() {
        return Err(Error::PreconditionViolated(format!(
            "P must be monic of degree {}",
            n - 1
        )));
    }
    if q_poly.degree() != Some(n) || !q_poly.is_monic() {
        return Err(Error::PreconditionViolated(format!(
            "Q must be monic of degree {n}"
        )));
    }
    let want_q_trace = tower.sub(
        tower.sub(a.trace(tower), p_poly.trace(tower)?),
        corner,
    );
    if q_poly.trace(tower)? != want_q_trace {
        return Err(Error::TraceMismatch(format!(
            "Tr(Q) must equal Tr(A) - Tr(P) - corner = index {}",
            want_q_trace.index
        )));
    }
    let form = frobenius_form(tower, a);
    let a_frob = form.form_matrix(tower);
    let conjugator = form.witness().clone();
    // D: C_P conjugated into staircase shape whose subdiagonal is the least
    // field element outside {0, 1}, so A_frob - diag(D, t) keeps a nonzero
    // subdiagonal wherever A_frob has 0 or 1.
    let c_p = companion(tower, p_poly)?;
    let d_block = if n - 1 == 1 {
        c_p.clone()
    } else {
        let fill = 2u64; // canonical encoding: index 2 is the least element not in {0, 1}
        let cols: Vec<Vec<u64>> = (0..n - 2)
            .map(|j| {
                (0..n - 1)
                    .map(|i| if i == j + 1 { fill } else { 0 })
                    .collect()
            })
            .collect();
        let prescription = ColumnPrescription::new(n - 1, cols)?;
        complete_prescribed_columns(tower, &c_p, &prescription)?.0
    };
    // E: completion of C_Q against the first n-1 columns of A_frob - diag(D, t)
    let mut diag_d = FFMatrix::zero(level, n);
    for i in 0..n - 1 {
        for j in 0..n - 1 {
            diag_d.set(i, j, d_block.at(i, j));
        }
    }
    diag_d.set(n - 1, n - 1, corner.index);
    let target = a_frob.sub(tower, &diag_d);
    let cols: Vec<Vec<u64>> = (0..n - 1)
        .map(|j| (0..n).map(|i| target.at(i, j)).collect())
        .collect();
    let prescription = ColumnPrescription::new(n, cols).map_err(|e| {
        Error::ShapeViolation(format!(
            "A_frob - diag(D, t) lost the staircase shape, which the construction guarantees: {e}"
        ))
    })?;
    let c_q = companion(tower, q_poly)?;
    let (companion_part, _) = complete_prescribed_columns(tower, &c_q, &prescription)?;
    let block_part = a_frob.sub(tower, &companion_part);
    // verify the block shape: top-left D, zero bottom row, prescribed corner
    let mut ok = block_part.at(n - 1, n - 1) == corner.index;
    for j in 0..n - 1 {
        ok &= block_part.at(n - 1, j) == 0;
        for i in 0..n - 1 {
            ok &= block_part.at(i, j) == d_block.at(i, j);
        }
    }
    if !ok {
        return Err(Error::ShapeViolation(
            "block part failed to assume the [[D, d], [0, t]] shape".into(),
        ));
    }
    let s_col = (0..n - 1).map(|i| block_part.at(i, n - 1)).collect();
    Ok(SplitResult {
        block_part,
        d_block,
        s_col,
        corner,
        companion_part,
        conjugator,
        a_frob,
    })
}

/// Split a non-scalar A as A_frob = B + C' where C' is similar to C_P and B
/// has characteristic polynomial (X-1)^n: subtract the block matrix D built
/// from identity-like blocks D(C_i) chained by -1 connectors, complete C_P
/// against the first n-1 columns of the difference, and verify the unipotent
/// spectrum of what remains. Requires Tr(P) = Tr(A) - n.
pub fn split_unipotent(
    tower: &FieldTower,
    a: &FFMatrix,
    p_poly: &Poly,
) -> Result<(FFMatrix, FFMatrix, SimilarityWitness)> {
    let n = a.dim();
    let level = a.level();
    if a.is_scalar() {
        return Err(Error::PreconditionViolated(
            "the unipotent split is defined for non-scalar matrices".into(),
        ));
    }
    if p_poly.degree() != Some(n) || !p_poly.is_monic() {
        return Err(Error::PreconditionViolated(format!(
            "P must be monic of degree {n}"
        )));
    }
    let n_in_field = tower.from_int(level, n as u64);
    let want_trace = tower.sub(a.trace(tower), n_in_field);
    if p_poly.trace(tower)? != want_trace {
        return Err(Error::TraceMismatch(format!(
            "Tr(P) must equal Tr(A) - n = index {}",
            want_trace.index
        )));
    }
    let form = frobenius_form(tower, a);
    let a_frob = form.form_matrix(tower);
    let conjugator = form.witness().clone();
    // D: per companion block C of size s with last column alphas, the block
    // D(C) = I with last column (alpha_0, ..., alpha_{s-2}, 1); consecutive
    // blocks chain with a -1 at the top of the previous block's last column.
    let mut d = FFMatrix::zero(level, n);
    let mut offset = 0usize;
    let minus_one = tower.idx_neg(level, 1);
    for factor in form.invariant_factors() {
        let s = factor.degree().unwrap();
        for i in 0..s {
            d.set(offset + i, offset + i, 1);
        }
        for i in 0..s.saturating_sub(1) {
            // alpha_i = -coeff_i of the factor
            let alpha = tower.neg(factor.coeff(i));
            d.set(offset + i, offset + s - 1, alpha.index);
        }
        if offset > 0 {
            // connector: -1 at (start of this block, end of previous block)
            d.set(offset, offset - 1, minus_one);
        }
        offset += s;
    }
    let target = a_frob.sub(tower, &d);
    let cols: Vec<Vec<u64>> = (0..n - 1)
        .map(|j| (0..n).map(|i| target.at(i, j)).collect())
        .collect();
    let prescription = ColumnPrescription::new(n, cols).map_err(|e| {
        Error::ShapeViolation(format!(
            "A_frob - D lost the staircase shape, which the construction guarantees: {e}"
        ))
    })?;
    let c_p = companion(tower, p_poly)?;
    let (c_prime, _) = complete_prescribed_columns(tower, &c_p, &prescription)?;
    let b = a_frob.sub(tower, &c_prime);
    // the characteristic polynomial of B must be (X-1)^n
    let (char_b, _) = crate::matlin::char_min_poly(tower, &b);
    let x_minus_one = Poly::new(level, vec![minus_one, 1]);
    let mut unipotent = Poly::one(level);
    for _ in 0..n {
        unipotent = unipotent.mul(tower, &x_minus_one);
    }
    if char_b != unipotent {
        return Err(Error::CharPolyViolation(format!(
            "characteristic polynomial of the remainder is {char_b}, not (X-1)^{n}"
        )));
    }
    Ok((b, c_prime, conjugator))
}
