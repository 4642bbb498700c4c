//! Multiplicative structure of the tower levels: element orders, primitive
//! elements, discrete logarithms, k-th roots, and sums of two k-th powers of
//! single field elements.

use std::collections::HashMap;

use crate::arith;
use crate::error::{Error, Result};

use super::{FFElement, FieldTower, Level};

/// Baby-step table cap for the discrete logarithm.
const BSGS_MEMORY_CAP: u64 = 1 << 20;
/// Cap on the number of candidate roots enumerated when picking the least one.
const ROOT_ENUM_CAP: u64 = 1 << 22;

impl FieldTower {
    /// Multiplicative order of a nonzero element.
    pub fn element_order(&self, a: FFElement) -> Result<u64> {
        if a.is_zero() {
            return Err(Error::ZeroOrderUndefined);
        }
        let group = self.cardinality(a.level) - 1;
        if group == 0 {
            return Ok(1);
        }
        let mut ord = group;
        for (r, _) in arith::factor(group)? {
            while ord.is_multiple_of(r) && self.idx_pow(a.level, a.index, ord / r) == 1 {
                ord /= r;
            }
        }
        Ok(ord)
    }

    /// Least-index element of full multiplicative order at the given level.
    pub fn find_primitive(&self, level: Level) -> Result<FFElement> {
        self.check_level(level);
        let cache = match level {
            Level::Prime => &self.primitive_prime,
            Level::Mid => &self.primitive_mid,
            Level::Top => &self.primitive_top,
        };
        if let Some(&idx) = cache.get() {
            return Ok(FFElement { level, index: idx });
        }
        let group = self.cardinality(level) - 1;
        let primes: Vec<u64> = arith::factor(group)?.into_iter().map(|(r, _)| r).collect();
        for idx in 1..self.cardinality(level) {
            if primes
                .iter()
                .all(|&r| self.idx_pow(level, idx, group / r) != 1)
            {
                let _ = cache.set(idx);
                return Ok(FFElement { level, index: idx });
            }
        }
        unreachable!("every finite field has a primitive element")
    }

    /// Least e >= 0 with g^e = a, for primitive g. Baby-step/giant-step with
    /// a memory cap and a sequential fallback.
    pub fn discrete_log(&self, g: FFElement, a: FFElement) -> Result<u64> {
        let level = g.level;
        assert_eq!(level, a.level, "mixed tower levels");
        if a.is_zero() {
            return Err(Error::NoLogarithm);
        }
        let group = self.cardinality(level) - 1;
        if a.index == 1 {
            return Ok(0);
        }
        let steps = (group as f64).sqrt().ceil() as u64 + 1;
        if steps > BSGS_MEMORY_CAP {
            // sequential scan
            let mut acc = 1u64;
            for e in 0..group {
                if acc == a.index {
                    return Ok(e);
                }
                acc = self.idx_mul(level, acc, g.index);
            }
            return Err(Error::NoLogarithm);
        }
        let mut baby: HashMap<u64, u64> = HashMap::with_capacity(steps as usize);
        let mut acc = 1u64;
        for j in 0..steps {
            baby.entry(acc).or_insert(j);
            acc = self.idx_mul(level, acc, g.index);
        }
        // giant stride g^{-steps}
        let stride = self.idx_inv(level, self.idx_pow(level, g.index, steps))?;
        let mut gamma = a.index;
        for i in 0..=steps {
            if let Some(&j) = baby.get(&gamma) {
                return Ok(i * steps + j);
            }
            gamma = self.idx_mul(level, gamma, stride);
        }
        Err(Error::NoLogarithm)
    }

    /// Least x (by index) with x^k = a, or None when a is not a k-th power.
    ///
    /// k splits as p^e * k' with gcd(k', p) = 1. The p^e part is undone by the
    /// inverse Frobenius bijection of the level over its prime field; the k'
    /// part reduces to a discrete logarithm.
    pub fn kth_root(&self, a: FFElement, k: u64) -> Result<Option<FFElement>> {
        assert!(k >= 1, "k must be a positive integer");
        if k == 1 || a.is_zero() {
            return Ok(Some(a));
        }
        let level = a.level;
        let (p_exp, k_coprime) = split_p_part(k, self.p());
        // x -> x^p is a bijection with inverse x -> x^(p^(D-1)).
        let total_deg = self.degree_over_prime(level) as u64;
        let mut beta = a;
        let back = (total_deg - (p_exp % total_deg)) % total_deg;
        for _ in 0..back {
            beta = self.pow(beta, self.p());
        }
        if k_coprime == 1 {
            return Ok(Some(beta));
        }
        let roots = self.kth_roots_coprime(beta, k_coprime)?;
        Ok(roots.into_iter().next())
    }

    /// All solutions of x^k = a for gcd(k, p) = 1 and a != 0, ascending by index.
    fn kth_roots_coprime(&self, a: FFElement, k: u64) -> Result<Vec<FFElement>> {
        let level = a.level;
        let group = self.cardinality(level) - 1;
        if group == 0 {
            return Ok(vec![self.one(level)]);
        }
        let k_red = k % group;
        if k_red == 0 {
            // x^k = 1 for every nonzero x
            return if a.index == 1 {
                Ok(vec![self.one(level)])
            } else {
                Ok(Vec::new())
            };
        }
        let d = arith::gcd(k_red, group);
        // solvable iff a^(group/d) = 1
        if self.idx_pow(level, a.index, group / d) != 1 {
            return Ok(Vec::new());
        }
        if d > ROOT_ENUM_CAP {
            return Err(Error::BudgetExceeded(format!(
                "k-th root candidate set of size {d}"
            )));
        }
        let g = self.find_primitive(level)?;
        let e = self.discrete_log(g, a)?;
        debug_assert_eq!(e % d, 0);
        let sub = group / d;
        let z0 = arith::mul_mod(
            e / d,
            arith::mod_inverse(k_red / d, sub).expect("coprime after dividing by gcd"),
            sub,
        );
        let mut roots: Vec<FFElement> = (0..d)
            .map(|j| self.pow(g, z0 + j * sub))
            .collect();
        roots.sort_by_key(|r| r.index);
        for r in &roots {
            debug_assert_eq!(self.pow(*r, k).index, a.index);
        }
        Ok(roots)
    }

    /// (x, y) with x^k + y^k = alpha: the least x (by index) such that
    /// alpha - x^k is a k-th power, then the least such y. alpha = 0 maps to
    /// (0, 0). Guaranteed to exist when the level cardinality exceeds
    /// (k-1)^4; outside that region exhaustion reports NoDecomposition.
    pub fn two_kth_powers(&self, alpha: FFElement, k: u64) -> Result<(FFElement, FFElement)> {
        assert!(k >= 1, "k must be a positive integer");
        let level = alpha.level;
        if alpha.is_zero() {
            return Ok((self.zero(level), self.zero(level)));
        }
        let card = self.cardinality(level);
        for x_idx in 0..card {
            let x = FFElement {
                level,
                index: x_idx,
            };
            let rest = self.sub(alpha, self.pow(x, k));
            if let Some(y) = self.kth_root(rest, k)? {
                return Ok((x, y));
            }
        }
        let guarantee = (k - 1).checked_pow(4).map(|g| card > g).unwrap_or(false);
        if guarantee {
            Err(Error::TheoremContradiction(format!(
                "two k-th powers search exhausted a field of cardinality {card} > (k-1)^4 with k={k}"
            )))
        } else {
            Err(Error::NoDecomposition(format!(
                "alpha index {} is not a sum of two {k}-th powers in a field of cardinality {card}",
                alpha.index
            )))
        }
    }
}

/// k = p^e * k' with gcd(k', p) = 1; returns (e, k').
pub(crate) fn split_p_part(k: u64, p: u64) -> (u64, u64) {
    let mut e = 0u64;
    let mut rest = k;
    while rest.is_multiple_of(p) {
        rest /= p;
        e += 1;
    }
    (e, rest)
}
