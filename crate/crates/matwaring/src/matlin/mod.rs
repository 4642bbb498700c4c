//! Exact matrix linear algebra over tower levels: companion matrices,
//! characteristic and minimal polynomials through the invariant-factor
//! decomposition, Frobenius normal form with explicit similarity witnesses,
//! and prescribed-column similarity completions.

mod canonical;
#[cfg(test)]
mod tests;

pub use canonical::{
    complete_prescribed_columns, cyclic_similarity, frobenius_form, minimal_polynomial,
    ColumnPrescription, FrobeniusForm,
};

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fields::{FFElement, FieldTower, Level};
use crate::polyring::Poly;

/// Square matrix over one tower level, row-major canonical element indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FFMatrix {
    level: Level,
    n: usize,
    entries: Vec<u64>,
}

impl FFMatrix {
    pub fn new(level: Level, n: usize, entries: Vec<u64>) -> Self {
        assert_eq!(entries.len(), n * n, "entry count must be n^2");
        FFMatrix { level, n, entries }
    }

    pub fn zero(level: Level, n: usize) -> Self {
        FFMatrix {
            level,
            n,
            entries: vec![0; n * n],
        }
    }

    pub fn identity(level: Level, n: usize) -> Self {
        let mut m = Self::zero(level, n);
        for i in 0..n {
            m.entries[i * n + i] = 1;
        }
        m
    }

    pub fn scalar(level: Level, n: usize, alpha: FFElement) -> Self {
        assert_eq!(level, alpha.level, "mixed tower levels");
        let mut m = Self::zero(level, n);
        for i in 0..n {
            m.entries[i * n + i] = alpha.index;
        }
        m
    }

    /// Build from rows of index values.
    pub fn from_rows(level: Level, rows: &[Vec<u64>]) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        FFMatrix {
            level,
            n,
            entries: rows.iter().flatten().copied().collect(),
        }
    }

    pub fn level(&self) -> Level {
        self.level
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> u64 {
        self.entries[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.entries[i * self.n + j] = v;
    }

    pub fn get(&self, i: usize, j: usize) -> FFElement {
        FFElement {
            level: self.level,
            index: self.at(i, j),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&e| e == 0)
    }

    /// Whether the matrix is a scalar multiple of the identity.
    pub fn is_scalar(&self) -> bool {
        let d = self.at(0, 0);
        for i in 0..self.n {
            for j in 0..self.n {
                let want = if i == j { d } else { 0 };
                if self.at(i, j) != want {
                    return false;
                }
            }
        }
        true
    }

    fn check_pair(&self, rhs: &FFMatrix) {
        assert_eq!(self.level, rhs.level, "mixed tower levels");
        assert_eq!(self.n, rhs.n, "dimension mismatch");
    }

    pub fn add(&self, tower: &FieldTower, rhs: &FFMatrix) -> FFMatrix {
        self.check_pair(rhs);
        let entries = self
            .entries
            .iter()
            .zip(&rhs.entries)
            .map(|(&a, &b)| tower.idx_add(self.level, a, b))
            .collect();
        FFMatrix {
            level: self.level,
            n: self.n,
            entries,
        }
    }

    pub fn sub(&self, tower: &FieldTower, rhs: &FFMatrix) -> FFMatrix {
        self.check_pair(rhs);
        let entries = self
            .entries
            .iter()
            .zip(&rhs.entries)
            .map(|(&a, &b)| tower.idx_sub(self.level, a, b))
            .collect();
        FFMatrix {
            level: self.level,
            n: self.n,
            entries,
        }
    }

    pub fn neg(&self, tower: &FieldTower) -> FFMatrix {
        FFMatrix {
            level: self.level,
            n: self.n,
            entries: self
                .entries
                .iter()
                .map(|&a| tower.idx_neg(self.level, a))
                .collect(),
        }
    }

    pub fn mul(&self, tower: &FieldTower, rhs: &FFMatrix) -> FFMatrix {
        self.check_pair(rhs);
        let n = self.n;
        let level = self.level;
        let mut out = vec![0u64; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.at(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    let b = rhs.at(k, j);
                    if b != 0 {
                        let prod = tower.idx_mul(level, a, b);
                        out[i * n + j] = tower.idx_add(level, out[i * n + j], prod);
                    }
                }
            }
        }
        FFMatrix {
            level,
            n,
            entries: out,
        }
    }

    pub fn scale(&self, tower: &FieldTower, c: FFElement) -> FFMatrix {
        assert_eq!(self.level, c.level, "mixed tower levels");
        FFMatrix {
            level: self.level,
            n: self.n,
            entries: self
                .entries
                .iter()
                .map(|&a| tower.idx_mul(self.level, a, c.index))
                .collect(),
        }
    }

    /// Matrix power by square-and-multiply; A^0 is the identity.
    pub fn pow(&self, tower: &FieldTower, mut e: u64) -> FFMatrix {
        let mut acc = FFMatrix::identity(self.level, self.n);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(tower, &base);
            }
            base = base.mul(tower, &base);
            e >>= 1;
        }
        acc
    }

    pub fn mat_vec(&self, tower: &FieldTower, v: &[u64]) -> Vec<u64> {
        assert_eq!(v.len(), self.n);
        let n = self.n;
        let mut out = vec![0u64; n];
        for i in 0..n {
            let mut acc = 0u64;
            for j in 0..n {
                let a = self.at(i, j);
                if a != 0 && v[j] != 0 {
                    acc = tower.idx_add(self.level, acc, tower.idx_mul(self.level, a, v[j]));
                }
            }
            out[i] = acc;
        }
        out
    }

    pub fn trace(&self, tower: &FieldTower) -> FFElement {
        let mut acc = 0u64;
        for i in 0..self.n {
            acc = tower.idx_add(self.level, acc, self.at(i, i));
        }
        FFElement {
            level: self.level,
            index: acc,
        }
    }

    pub fn transpose(&self) -> FFMatrix {
        let n = self.n;
        let mut out = vec![0u64; n * n];
        for i in 0..n {
            for j in 0..n {
                out[j * n + i] = self.at(i, j);
            }
        }
        FFMatrix {
            level: self.level,
            n,
            entries: out,
        }
    }

    /// Gauss-Jordan inverse; SingularMatrix when rank < n.
    pub fn inverse(&self, tower: &FieldTower) -> Result<FFMatrix> {
        let n = self.n;
        let level = self.level;
        let mut work = self.clone();
        let mut inv = FFMatrix::identity(level, n);
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| work.at(r, col) != 0)
                .ok_or(Error::SingularMatrix)?;
            if pivot != col {
                for j in 0..n {
                    let (a, b) = (work.at(pivot, j), work.at(col, j));
                    work.set(pivot, j, b);
                    work.set(col, j, a);
                    let (a, b) = (inv.at(pivot, j), inv.at(col, j));
                    inv.set(pivot, j, b);
                    inv.set(col, j, a);
                }
            }
            let scale = tower.idx_inv(level, work.at(col, col))?;
            for j in 0..n {
                work.set(col, j, tower.idx_mul(level, work.at(col, j), scale));
                inv.set(col, j, tower.idx_mul(level, inv.at(col, j), scale));
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let factor = work.at(r, col);
                if factor == 0 {
                    continue;
                }
                for j in 0..n {
                    let w = tower.idx_sub(
                        level,
                        work.at(r, j),
                        tower.idx_mul(level, factor, work.at(col, j)),
                    );
                    work.set(r, j, w);
                    let v = tower.idx_sub(
                        level,
                        inv.at(r, j),
                        tower.idx_mul(level, factor, inv.at(col, j)),
                    );
                    inv.set(r, j, v);
                }
            }
        }
        Ok(inv)
    }

    /// Solve self * x = b for a single column vector.
    pub fn solve_vec(&self, tower: &FieldTower, b: &[u64]) -> Result<Vec<u64>> {
        assert_eq!(b.len(), self.n);
        let n = self.n;
        let level = self.level;
        let mut work = self.clone();
        let mut rhs = b.to_vec();
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| work.at(r, col) != 0)
                .ok_or(Error::SingularMatrix)?;
            if pivot != col {
                for j in 0..n {
                    let (a, bb) = (work.at(pivot, j), work.at(col, j));
                    work.set(pivot, j, bb);
                    work.set(col, j, a);
                }
                rhs.swap(pivot, col);
            }
            let scale = tower.idx_inv(level, work.at(col, col))?;
            for j in 0..n {
                work.set(col, j, tower.idx_mul(level, work.at(col, j), scale));
            }
            rhs[col] = tower.idx_mul(level, rhs[col], scale);
            for r in 0..n {
                if r == col {
                    continue;
                }
                let factor = work.at(r, col);
                if factor == 0 {
                    continue;
                }
                for j in 0..n {
                    let w = tower.idx_sub(
                        level,
                        work.at(r, j),
                        tower.idx_mul(level, factor, work.at(col, j)),
                    );
                    work.set(r, j, w);
                }
                rhs[r] = tower.idx_sub(level, rhs[r], tower.idx_mul(level, factor, rhs[col]));
            }
        }
        Ok(rhs)
    }

    pub fn rank(&self, tower: &FieldTower) -> usize {
        let n = self.n;
        let level = self.level;
        let mut work = self.clone();
        let mut rank = 0usize;
        for col in 0..n {
            let Some(pivot) = (rank..n).find(|&r| work.at(r, col) != 0) else {
                continue;
            };
            if pivot != rank {
                for j in 0..n {
                    let (a, b) = (work.at(pivot, j), work.at(rank, j));
                    work.set(pivot, j, b);
                    work.set(rank, j, a);
                }
            }
            let scale = tower.idx_inv(level, work.at(rank, col)).unwrap();
            for j in 0..n {
                work.set(rank, j, tower.idx_mul(level, work.at(rank, j), scale));
            }
            for r in 0..n {
                if r == rank {
                    continue;
                }
                let factor = work.at(r, col);
                if factor == 0 {
                    continue;
                }
                for j in 0..n {
                    let w = tower.idx_sub(
                        level,
                        work.at(r, j),
                        tower.idx_mul(level, factor, work.at(rank, j)),
                    );
                    work.set(r, j, w);
                }
            }
            rank += 1;
        }
        rank
    }

    /// Evaluate a polynomial at this matrix.
    pub fn apply_poly(&self, tower: &FieldTower, f: &Poly) -> FFMatrix {
        assert_eq!(self.level, f.level(), "mixed tower levels");
        let mut acc = FFMatrix::zero(self.level, self.n);
        for &c in f.coeffs().iter().rev() {
            acc = acc.mul(tower, self);
            if c != 0 {
                for i in 0..self.n {
                    let v = tower.idx_add(self.level, acc.at(i, i), c);
                    acc.set(i, i, v);
                }
            }
        }
        acc
    }

    /// f(B) applied to a vector without forming f(B).
    pub fn apply_poly_vec(&self, tower: &FieldTower, f: &Poly, v: &[u64]) -> Vec<u64> {
        let level = self.level;
        let mut acc = vec![0u64; self.n];
        for &c in f.coeffs().iter().rev() {
            acc = self.mat_vec(tower, &acc);
            if c != 0 {
                for (slot, &vi) in acc.iter_mut().zip(v) {
                    *slot = tower.idx_add(level, *slot, tower.idx_mul(level, c, vi));
                }
            }
        }
        acc
    }

    /// Text encoding: header "p m n", then n rows of n indices.
    pub fn to_text(&self, tower: &FieldTower) -> String {
        let mut s = format!("{} {} {}\n", tower.p(), tower.m(), self.n);
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|j| self.at(i, j).to_string()).collect();
            s.push_str(&row.join(" "));
            s.push('\n');
        }
        s
    }
}

impl fmt::Display for FFMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            write!(f, "[")?;
            for j in 0..self.n {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.at(i, j))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

/// JSON mirror of the matrix text format.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct MatrixJson {
    pub p: u64,
    pub m: usize,
    pub n: usize,
    pub rows: Vec<Vec<u64>>,
}

impl MatrixJson {
    pub fn from_matrix(tower: &FieldTower, mat: &FFMatrix) -> Self {
        MatrixJson {
            p: tower.p(),
            m: tower.m(),
            n: mat.dim(),
            rows: (0..mat.dim())
                .map(|i| (0..mat.dim()).map(|j| mat.at(i, j)).collect())
                .collect(),
        }
    }

    /// Rebuild at the given level, validating shape and entry ranges.
    pub fn to_matrix(&self, tower: &FieldTower, level: Level) -> Result<FFMatrix> {
        if self.p != tower.p() || self.m != tower.m() {
            return Err(Error::InvalidInput(format!(
                "matrix field F_{}^{} does not match tower F_{}^{}",
                self.p,
                self.m,
                tower.p(),
                tower.m()
            )));
        }
        if self.rows.len() != self.n || self.rows.iter().any(|r| r.len() != self.n) {
            return Err(Error::InvalidInput("matrix rows are not n x n".into()));
        }
        let card = tower.cardinality(level);
        let entries: Vec<u64> = self.rows.iter().flatten().copied().collect();
        if entries.iter().any(|&e| e >= card) {
            return Err(Error::InvalidInput(
                "matrix entry index outside the field".into(),
            ));
        }
        Ok(FFMatrix::new(level, self.n, entries))
    }
}

/// Parse the text encoding; returns (p, m, n, row-major entries).
pub fn parse_matrix_text(s: &str) -> Result<(u64, usize, usize, Vec<u64>)> {
    let mut tokens = s.split_whitespace();
    let mut next = |what: &str| -> Result<u64> {
        tokens
            .next()
            .ok_or_else(|| Error::Io(format!("matrix text ended before {what}")))?
            .parse::<u64>()
            .map_err(|e| Error::Io(format!("bad {what} in matrix text: {e}")))
    };
    let p = next("p")?;
    let m = next("m")? as usize;
    let n = next("n")? as usize;
    if n == 0 {
        return Err(Error::Io("matrix dimension must be positive".into()));
    }
    let mut entries = Vec::with_capacity(n * n);
    for _ in 0..n * n {
        entries.push(next("entry")?);
    }
    Ok((p, m, n, entries))
}

/// The companion matrix of a monic P = X^n - a_{n-1}X^{n-1} - ... - a_0:
/// ones on the subdiagonal, last column (a_0, ..., a_{n-1}); its
/// characteristic and minimal polynomials both equal P.
pub fn companion(tower: &FieldTower, poly: &Poly) -> Result<FFMatrix> {
    if !poly.is_monic() {
        return Err(Error::NotMonic);
    }
    let n = poly.degree().filter(|&d| d >= 1).ok_or(Error::NotMonic)?;
    let level = poly.level();
    let mut m = FFMatrix::zero(level, n);
    for i in 1..n {
        m.set(i, i - 1, 1);
    }
    for i in 0..n {
        // alpha_i = -coeff_i
        m.set(i, n - 1, tower.neg(poly.coeff(i)).index);
    }
    Ok(m)
}

/// An invertible U with the recorded relation U^{-1} * B * U = A.
#[derive(Debug, Clone)]
pub struct SimilarityWitness {
    u: FFMatrix,
    u_inv: FFMatrix,
}

impl SimilarityWitness {
    pub fn new(tower: &FieldTower, u: FFMatrix) -> Result<Self> {
        let u_inv = u.inverse(tower)?;
        Ok(SimilarityWitness { u, u_inv })
    }

    pub fn identity(level: Level, n: usize) -> Self {
        SimilarityWitness {
            u: FFMatrix::identity(level, n),
            u_inv: FFMatrix::identity(level, n),
        }
    }

    pub fn u(&self) -> &FFMatrix {
        &self.u
    }

    pub fn u_inv(&self) -> &FFMatrix {
        &self.u_inv
    }

    /// Check the recorded relation U^{-1} * b * u = a exactly.
    pub fn verify(&self, tower: &FieldTower, a: &FFMatrix, b: &FFMatrix) -> bool {
        self.u_inv.mul(tower, b).mul(tower, &self.u) == *a
            && self.u.mul(tower, &self.u_inv) == FFMatrix::identity(self.u.level(), self.u.dim())
    }

    /// U^{-1} x U: carry x from the b-side to the a-side.
    pub fn reduce(&self, tower: &FieldTower, x: &FFMatrix) -> FFMatrix {
        self.u_inv.mul(tower, x).mul(tower, &self.u)
    }

    /// U x U^{-1}: carry x from the a-side back to the b-side.
    pub fn lift(&self, tower: &FieldTower, x: &FFMatrix) -> FFMatrix {
        self.u.mul(tower, x).mul(tower, &self.u_inv)
    }

    /// Compose: if self relates (a, b) via U and inner relates (c, a) via V,
    /// the result relates (c, b) via U * V.
    pub fn compose(&self, tower: &FieldTower, inner: &SimilarityWitness) -> SimilarityWitness {
        SimilarityWitness {
            u: self.u.mul(tower, &inner.u),
            u_inv: inner.u_inv.mul(tower, &self.u_inv),
        }
    }
}

/// Structural sufficient condition for being non-derogatory: every
/// subdiagonal entry nonzero and everything below the subdiagonal zero.
pub fn has_staircase_shape(a: &FFMatrix) -> bool {
    let n = a.dim();
    for j in 0..n.saturating_sub(1) {
        if a.at(j + 1, j) == 0 {
            return false;
        }
        for i in j + 2..n {
            if a.at(i, j) != 0 {
                return false;
            }
        }
    }
    true
}

/// Whether the minimal polynomial has full degree n. The staircase shape is
/// used as a fast path; otherwise the minimal polynomial is computed.
pub fn is_nonderogatory(tower: &FieldTower, a: &FFMatrix) -> bool {
    if has_staircase_shape(a) {
        debug_assert_eq!(
            canonical::minimal_polynomial(tower, a).degree(),
            Some(a.dim())
        );
        return true;
    }
    canonical::minimal_polynomial(tower, a).degree() == Some(a.dim())
}

/// (characteristic polynomial, minimal polynomial), both monic: the product
/// of the invariant factors and the largest invariant factor.
pub fn char_min_poly(tower: &FieldTower, a: &FFMatrix) -> (Poly, Poly) {
    let form = frobenius_form(tower, a);
    (form.char_poly(tower), form.min_poly().clone())
}
