//! Raw polynomial arithmetic on little-endian coefficient vectors whose
//! entries are canonical element indices of some coefficient field. The
//! coefficient field is abstracted by [`CoeffOps`] so the same routines serve
//! F_p (validating base moduli), F_q (validating top moduli and backing the
//! public polynomial type), and F_{q^n}.
//!
//! The zero polynomial is the empty vector; all vectors are kept normalized
//! (no trailing zero coefficients).

use crate::arith;
use crate::error::{Error, Result};

pub(crate) trait CoeffOps {
    /// Cardinality of the coefficient field.
    fn card(&self) -> u64;
    fn add(&self, a: u64, b: u64) -> u64;
    fn neg(&self, a: u64) -> u64;
    fn mul(&self, a: u64, b: u64) -> u64;
    fn inv(&self, a: u64) -> Result<u64>;
    fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.neg(b))
    }
}

pub(crate) fn normalize(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

/// Degree; None for the zero polynomial.
pub(crate) fn degree(v: &[u64]) -> Option<usize> {
    if v.is_empty() {
        None
    } else {
        Some(v.len() - 1)
    }
}

pub(crate) fn is_monic(v: &[u64]) -> bool {
    v.last() == Some(&1)
}

pub(crate) fn add<C: CoeffOps>(ops: &C, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut out = vec![0u64; a.len().max(b.len())];
    for (i, o) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *o = ops.add(x, y);
    }
    normalize(&mut out);
    out
}

pub(crate) fn sub<C: CoeffOps>(ops: &C, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut out = vec![0u64; a.len().max(b.len())];
    for (i, o) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *o = ops.sub(x, y);
    }
    normalize(&mut out);
    out
}

pub(crate) fn mul<C: CoeffOps>(ops: &C, a: &[u64], b: &[u64]) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = ops.add(out[i + j], ops.mul(x, y));
        }
    }
    normalize(&mut out);
    out
}

pub(crate) fn scale<C: CoeffOps>(ops: &C, a: &[u64], c: u64) -> Vec<u64> {
    let mut out: Vec<u64> = a.iter().map(|&x| ops.mul(x, c)).collect();
    normalize(&mut out);
    out
}

/// Quotient and remainder of a by b; b must be nonzero.
pub(crate) fn divmod<C: CoeffOps>(ops: &C, a: &[u64], b: &[u64]) -> Result<(Vec<u64>, Vec<u64>)> {
    if b.is_empty() {
        return Err(Error::DivisionByZero);
    }
    let db = b.len() - 1;
    let lead_inv = ops.inv(b[db])?;
    let mut rem = a.to_vec();
    if rem.len() <= db && !(db == 0) {
        return Ok((Vec::new(), rem));
    }
    let mut quo = vec![0u64; rem.len().saturating_sub(db)];
    while rem.len() > db || (db == 0 && !rem.is_empty()) {
        let dr = rem.len() - 1;
        if dr < db {
            break;
        }
        let c = ops.mul(rem[dr], lead_inv);
        quo[dr - db] = c;
        for (j, &bj) in b.iter().enumerate() {
            let idx = dr - db + j;
            rem[idx] = ops.sub(rem[idx], ops.mul(c, bj));
        }
        normalize(&mut rem);
        if rem.is_empty() {
            break;
        }
    }
    normalize(&mut quo);
    Ok((quo, rem))
}

pub(crate) fn rem<C: CoeffOps>(ops: &C, a: &[u64], b: &[u64]) -> Result<Vec<u64>> {
    Ok(divmod(ops, a, b)?.1)
}

pub(crate) fn make_monic<C: CoeffOps>(ops: &C, a: &[u64]) -> Result<Vec<u64>> {
    match a.last() {
        None => Err(Error::DivisionByZero),
        Some(&1) => Ok(a.to_vec()),
        Some(&lead) => {
            let inv = ops.inv(lead)?;
            Ok(scale(ops, a, inv))
        }
    }
}

/// Monic gcd.
pub(crate) fn gcd<C: CoeffOps>(ops: &C, a: &[u64], b: &[u64]) -> Result<Vec<u64>> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    while !y.is_empty() {
        let r = rem(ops, &x, &y)?;
        x = y;
        y = r;
    }
    if x.is_empty() {
        Ok(x)
    } else {
        make_monic(ops, &x)
    }
}

pub(crate) fn eval<C: CoeffOps>(ops: &C, f: &[u64], x: u64) -> u64 {
    let mut acc = 0u64;
    for &c in f.iter().rev() {
        acc = ops.add(ops.mul(acc, x), c);
    }
    acc
}

/// base^exp mod modulus.
pub(crate) fn pow_mod<C: CoeffOps>(ops: &C, base: &[u64], mut exp: u64, modulus: &[u64]) -> Result<Vec<u64>> {
    let mut acc = vec![1u64];
    let mut b = rem(ops, base, modulus)?;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = rem(ops, &mul(ops, &acc, &b), modulus)?;
        }
        b = rem(ops, &mul(ops, &b, &b), modulus)?;
        exp >>= 1;
    }
    Ok(acc)
}

/// Rabin irreducibility test over the coefficient field of cardinality Q:
/// f of degree d is irreducible iff X^(Q^d) = X mod f and, for every prime
/// r | d, gcd(X^(Q^(d/r)) - X, f) = 1.
pub(crate) fn is_irreducible<C: CoeffOps>(ops: &C, f: &[u64]) -> Result<bool> {
    let d = match degree(f) {
        None | Some(0) => {
            return Err(Error::InvalidInput(
                "irreducibility is defined for nonconstant polynomials".into(),
            ))
        }
        Some(d) => d,
    };
    let f = make_monic(ops, f)?;
    if d == 1 {
        return Ok(true);
    }
    let q = ops.card();
    let x_poly = vec![0u64, 1];
    // u_j = X^(Q^j) mod f, computed by iterated Q-th powering.
    let mut u = rem(ops, &x_poly, &f)?;
    let critical: Vec<usize> = arith::factor(d as u64)
        .expect("degree fits in the trial division budget")
        .iter()
        .map(|&(r, _)| d / r as usize)
        .collect();
    for j in 1..=d {
        u = pow_mod(ops, &u, q, &f)?;
        if critical.contains(&j) {
            let diff = sub(ops, &u, &x_poly);
            let g = gcd(ops, &diff, &f)?;
            if degree(&g) != Some(0) {
                return Ok(false);
            }
        }
    }
    Ok(u == rem(ops, &x_poly, &f)?)
}
