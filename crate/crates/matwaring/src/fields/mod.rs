//! Exact arithmetic in a two-level tower of finite fields
//! F_p <= F_q = F_{p^m} <= F_{q^n}, described by explicit irreducible moduli.
//!
//! Elements are carried as canonical integer indices: the base-p digits of an
//! index, little-endian, are the coordinates of the element in the fixed
//! polynomial basis of its level. Index 0 is the additive identity and index 1
//! the multiplicative identity at every level. All searches in this crate scan
//! indices ascending, so the encoding doubles as the tie-breaking order that
//! keeps certificates reproducible.

pub(crate) mod polyraw;
pub(crate) mod roots;

pub(crate) use polyraw::CoeffOps;

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::arith;
use crate::error::{Error, Result};

/// Hard cap on extension degrees so top-level arithmetic can run on stack
/// buffers. Desk-scale parameters stay far below it.
pub const MAX_DEGREE: usize = 32;

/// Which level of the tower an element lives at.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Level {
    /// The prime field F_p.
    Prime,
    /// The mid level F_q = F_{p^m}.
    Mid,
    /// The top level F_{q^n}.
    Top,
}

/// An element of one tower level, canonically encoded.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FFElement {
    pub level: Level,
    pub index: u64,
}

impl FFElement {
    pub fn is_zero(&self) -> bool {
        self.index == 0
    }
}

#[derive(Debug, Clone)]
struct MidTables {
    /// exp[i] = index of g^i for the least primitive g, length q-1.
    exp: Vec<u32>,
    /// log[idx] = i with g^i = idx, defined for idx >= 1.
    log: Vec<u32>,
}

#[derive(Debug, Clone)]
struct TopLevel {
    n: usize,
    /// Monic irreducible of degree n over the mid level, little-endian mid indices.
    modulus: Vec<u64>,
    card: u64,
    /// Matrix of the Frobenius x -> x^q in the power basis, row-major n x n mid indices.
    frob: Vec<u64>,
    /// trace(Y^j) for j < n, so trace is a dot product.
    trace_form: Vec<u64>,
}

/// Description of F_p <= F_{p^m} <= F_{q^n} with explicit moduli.
///
/// Immutable after construction; every operation is a pure function of its
/// inputs, so a tower can be shared freely across threads.
#[derive(Debug)]
pub struct FieldTower {
    p: u64,
    m: usize,
    base_modulus: Vec<u64>,
    q: u64,
    mid_tables: Option<MidTables>,
    top: Option<TopLevel>,
    primitive_prime: OnceLock<u64>,
    primitive_mid: OnceLock<u64>,
    primitive_top: OnceLock<u64>,
}

impl Clone for FieldTower {
    fn clone(&self) -> Self {
        FieldTower {
            p: self.p,
            m: self.m,
            base_modulus: self.base_modulus.clone(),
            q: self.q,
            mid_tables: self.mid_tables.clone(),
            top: self.top.clone(),
            primitive_prime: self.primitive_prime.clone(),
            primitive_mid: self.primitive_mid.clone(),
            primitive_top: self.primitive_top.clone(),
        }
    }
}

/// Mid-level coefficient field exposed to the raw polynomial routines.
pub(crate) struct MidOps<'a>(pub &'a FieldTower);

impl CoeffOps for MidOps<'_> {
    fn card(&self) -> u64 {
        self.0.q
    }
    fn add(&self, a: u64, b: u64) -> u64 {
        self.0.mid_add(a, b)
    }
    fn neg(&self, a: u64) -> u64 {
        self.0.mid_neg(a)
    }
    fn mul(&self, a: u64, b: u64) -> u64 {
        self.0.mid_mul(a, b)
    }
    fn inv(&self, a: u64) -> Result<u64> {
        self.0.mid_inv(a)
    }
}

/// Prime coefficient field for validating base moduli.
pub(crate) struct PrimeOps(pub u64);

impl CoeffOps for PrimeOps {
    fn card(&self) -> u64 {
        self.0
    }
    fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.0 {
            s - self.0
        } else {
            s
        }
    }
    fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.0 - a
        }
    }
    fn mul(&self, a: u64, b: u64) -> u64 {
        arith::mul_mod(a, b, self.0)
    }
    fn inv(&self, a: u64) -> Result<u64> {
        arith::mod_inverse(a, self.0).ok_or(Error::DivisionByZero)
    }
}

/// Any tower level as a coefficient field; backs the public polynomial type.
pub(crate) struct LevelOps<'a> {
    pub tower: &'a FieldTower,
    pub level: Level,
}

impl CoeffOps for LevelOps<'_> {
    fn card(&self) -> u64 {
        self.tower.cardinality(self.level)
    }
    fn add(&self, a: u64, b: u64) -> u64 {
        self.tower.idx_add(self.level, a, b)
    }
    fn neg(&self, a: u64) -> u64 {
        self.tower.idx_neg(self.level, a)
    }
    fn mul(&self, a: u64, b: u64) -> u64 {
        self.tower.idx_mul(self.level, a, b)
    }
    fn inv(&self, a: u64) -> Result<u64> {
        self.tower.idx_inv(self.level, a)
    }
}

/// Largest mid-level cardinality for which log/exp tables are built.
const TABLE_LIMIT: u64 = 1 << 16;
/// Budget for canonical-modulus searches.
const MODULUS_SEARCH_BUDGET: u64 = 1 << 24;

impl FieldTower {
    /// The prime field F_p as a trivial tower (m = 1).
    pub fn prime_field(p: u64) -> Result<Self> {
        Self::new(p, 1, None)
    }

    /// F_p <= F_{p^m}. When `base_modulus` is None the canonical modulus is
    /// used: the monic irreducible of degree m whose coefficient vector, read
    /// as a little-endian base-p integer, is smallest.
    pub fn new(p: u64, m: usize, base_modulus: Option<Vec<u64>>) -> Result<Self> {
        if !arith::is_prime(p) {
            return Err(Error::InvalidInput(format!("{p} is not prime")));
        }
        if m == 0 || m > MAX_DEGREE {
            return Err(Error::InvalidInput(format!(
                "extension degree m={m} out of range 1..={MAX_DEGREE}"
            )));
        }
        let q = (p as u128).checked_pow(m as u32).and_then(|v| {
            if v < (1u128 << 32) {
                Some(v as u64)
            } else {
                None
            }
        });
        let q = q.ok_or_else(|| {
            Error::InvalidInput(format!("mid-level cardinality {p}^{m} exceeds 2^32"))
        })?;
        let ops = PrimeOps(p);
        let modulus = match base_modulus {
            Some(v) => {
                validate_modulus(&ops, &v, m, "base")?;
                v
            }
            None => canonical_modulus(&ops, m)?,
        };
        let mut tower = FieldTower {
            p,
            m,
            base_modulus: modulus,
            q,
            mid_tables: None,
            top: None,
            primitive_prime: OnceLock::new(),
            primitive_mid: OnceLock::new(),
            primitive_top: OnceLock::new(),
        };
        if m > 1 && q <= TABLE_LIMIT {
            tower.build_mid_tables();
        }
        Ok(tower)
    }

    /// Attach the top level F_{q^n}. When `top_modulus` is None the canonical
    /// modulus over F_q is used (least little-endian base-q encoding).
    pub fn extend_top(&self, n: usize, top_modulus: Option<Vec<u64>>) -> Result<Self> {
        if n == 0 || n > MAX_DEGREE {
            return Err(Error::InvalidInput(format!(
                "top degree n={n} out of range 1..={MAX_DEGREE}"
            )));
        }
        let card = (self.q as u128).checked_pow(n as u32).and_then(|v| {
            if v < (1u128 << 63) {
                Some(v as u64)
            } else {
                None
            }
        });
        let card = card.ok_or_else(|| {
            Error::InvalidInput(format!(
                "top-level cardinality {}^{n} exceeds 2^63",
                self.q
            ))
        })?;
        let ops = MidOps(self);
        let modulus = match top_modulus {
            Some(v) => {
                validate_modulus(&ops, &v, n, "top")?;
                v
            }
            None => canonical_modulus(&ops, n)?,
        };
        let mut out = FieldTower {
            p: self.p,
            m: self.m,
            base_modulus: self.base_modulus.clone(),
            q: self.q,
            mid_tables: self.mid_tables.clone(),
            top: Some(TopLevel {
                n,
                modulus,
                card,
                frob: Vec::new(),
                trace_form: Vec::new(),
            }),
            primitive_prime: self.primitive_prime.clone(),
            primitive_mid: self.primitive_mid.clone(),
            primitive_top: OnceLock::new(),
        };
        out.precompute_top();
        Ok(out)
    }

    /// Drop the top level, keeping F_p <= F_q.
    pub fn without_top(&self) -> Self {
        let mut t = self.clone();
        t.top = None;
        t.primitive_top = OnceLock::new();
        t
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Cardinality of the mid level.
    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn base_modulus(&self) -> &[u64] {
        &self.base_modulus
    }

    pub fn top_degree(&self) -> Option<usize> {
        self.top.as_ref().map(|t| t.n)
    }

    pub fn top_modulus(&self) -> Option<&[u64]> {
        self.top.as_ref().map(|t| t.modulus.as_slice())
    }

    pub fn has_top(&self) -> bool {
        self.top.is_some()
    }

    pub fn cardinality(&self, level: Level) -> u64 {
        match level {
            Level::Prime => self.p,
            Level::Mid => self.q,
            Level::Top => self.top.as_ref().expect("tower has no top level").card,
        }
    }

    /// Degree of the level over the prime field.
    pub fn degree_over_prime(&self, level: Level) -> usize {
        match level {
            Level::Prime => 1,
            Level::Mid => self.m,
            Level::Top => self.m * self.top.as_ref().expect("tower has no top level").n,
        }
    }

    pub fn element(&self, level: Level, index: u64) -> Result<FFElement> {
        if index >= self.cardinality(level) {
            return Err(Error::InvalidInput(format!(
                "index {index} out of range for level of cardinality {}",
                self.cardinality(level)
            )));
        }
        Ok(FFElement { level, index })
    }

    pub fn zero(&self, level: Level) -> FFElement {
        FFElement { level, index: 0 }
    }

    pub fn one(&self, level: Level) -> FFElement {
        FFElement { level, index: 1 }
    }

    /// Integer c reduced into the prime subfield of `level`.
    pub fn from_int(&self, level: Level, c: u64) -> FFElement {
        FFElement {
            level,
            index: c % self.p,
        }
    }

    // ---- index-level arithmetic -------------------------------------------

    fn check_level(&self, level: Level) {
        if level == Level::Top {
            assert!(self.top.is_some(), "tower has no top level");
        }
    }

    pub(crate) fn idx_add(&self, level: Level, a: u64, b: u64) -> u64 {
        self.check_level(level);
        match level {
            Level::Prime => PrimeOps(self.p).add(a, b),
            Level::Mid => self.mid_add(a, b),
            Level::Top => self.top_map2(a, b, |t, x, y| t.mid_add(x, y)),
        }
    }

    pub(crate) fn idx_neg(&self, level: Level, a: u64) -> u64 {
        self.check_level(level);
        match level {
            Level::Prime => PrimeOps(self.p).neg(a),
            Level::Mid => self.mid_neg(a),
            Level::Top => self.top_map1(a, |t, x| t.mid_neg(x)),
        }
    }

    pub(crate) fn idx_sub(&self, level: Level, a: u64, b: u64) -> u64 {
        self.idx_add(level, a, self.idx_neg(level, b))
    }

    pub(crate) fn idx_mul(&self, level: Level, a: u64, b: u64) -> u64 {
        self.check_level(level);
        match level {
            Level::Prime => PrimeOps(self.p).mul(a, b),
            Level::Mid => self.mid_mul(a, b),
            Level::Top => self.top_mul(a, b),
        }
    }

    pub(crate) fn idx_inv(&self, level: Level, a: u64) -> Result<u64> {
        self.check_level(level);
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        match level {
            Level::Prime => PrimeOps(self.p).inv(a),
            Level::Mid => self.mid_inv(a),
            // card - 2 never underflows: a != 0 forces card >= 2.
            Level::Top => Ok(self.idx_pow(level, a, self.cardinality(level) - 2)),
        }
    }

    pub(crate) fn idx_pow(&self, level: Level, a: u64, mut e: u64) -> u64 {
        let mut acc = 1u64;
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.idx_mul(level, acc, base);
            }
            base = self.idx_mul(level, base, base);
            e >>= 1;
        }
        acc
    }

    // ---- element-level arithmetic -----------------------------------------

    fn same_level(&self, a: FFElement, b: FFElement) -> Level {
        assert_eq!(a.level, b.level, "mixed tower levels");
        a.level
    }

    pub fn add(&self, a: FFElement, b: FFElement) -> FFElement {
        let level = self.same_level(a, b);
        FFElement {
            level,
            index: self.idx_add(level, a.index, b.index),
        }
    }

    pub fn sub(&self, a: FFElement, b: FFElement) -> FFElement {
        let level = self.same_level(a, b);
        FFElement {
            level,
            index: self.idx_sub(level, a.index, b.index),
        }
    }

    pub fn neg(&self, a: FFElement) -> FFElement {
        FFElement {
            level: a.level,
            index: self.idx_neg(a.level, a.index),
        }
    }

    pub fn mul(&self, a: FFElement, b: FFElement) -> FFElement {
        let level = self.same_level(a, b);
        FFElement {
            level,
            index: self.idx_mul(level, a.index, b.index),
        }
    }

    pub fn inv(&self, a: FFElement) -> Result<FFElement> {
        Ok(FFElement {
            level: a.level,
            index: self.idx_inv(a.level, a.index)?,
        })
    }

    pub fn pow(&self, a: FFElement, e: u64) -> FFElement {
        FFElement {
            level: a.level,
            index: self.idx_pow(a.level, a.index, e),
        }
    }

    /// Embed an element into a higher level. The canonical encodings make
    /// every upward embedding the identity on indices.
    pub fn embed(&self, a: FFElement, target: Level) -> Result<FFElement> {
        self.check_level(target);
        let ok = matches!(
            (a.level, target),
            (Level::Prime, _) | (Level::Mid, Level::Mid) | (Level::Mid, Level::Top) | (Level::Top, Level::Top)
        );
        if !ok {
            return Err(Error::InvalidInput("embedding must go upward".into()));
        }
        // Prime -> Mid -> Top all keep the constant-coefficient encoding.
        Ok(FFElement {
            level: target,
            index: a.index,
        })
    }

    /// Project an element down a level if it lies in the subfield image.
    pub fn project(&self, a: FFElement, target: Level) -> Option<FFElement> {
        let bound = self.cardinality(target);
        let downward = matches!(
            (a.level, target),
            (Level::Top, Level::Mid) | (Level::Top, Level::Prime) | (Level::Mid, Level::Prime)
        ) || a.level == target;
        if downward && a.index < bound {
            Some(FFElement {
                level: target,
                index: a.index,
            })
        } else {
            None
        }
    }

    // ---- Frobenius and traces ---------------------------------------------

    /// The Frobenius x -> x^q of the top level over the mid level. Mid- and
    /// prime-level inputs are fixed points and pass through unchanged.
    pub fn frobenius(&self, a: FFElement) -> FFElement {
        match a.level {
            Level::Prime | Level::Mid => a,
            Level::Top => {
                let t = self.top.as_ref().expect("tower has no top level");
                let n = t.n;
                let mut coeffs = [0u64; MAX_DEGREE];
                self.top_decode(a.index, &mut coeffs);
                let mut out = [0u64; MAX_DEGREE];
                for (j, &c) in coeffs[..n].iter().enumerate() {
                    if c == 0 {
                        continue;
                    }
                    for i in 0..n {
                        let m = t.frob[i * n + j];
                        if m != 0 {
                            out[i] = self.mid_add(out[i], self.mid_mul(c, m));
                        }
                    }
                }
                FFElement {
                    level: Level::Top,
                    index: self.top_encode(&out),
                }
            }
        }
    }

    /// a + phi(a) + ... + phi^{n-1}(a), landing in the mid level.
    pub fn trace_to_mid(&self, a: FFElement) -> Result<FFElement> {
        match a.level {
            Level::Prime => {
                // degenerate: trace over a trivial extension
                Ok(FFElement {
                    level: Level::Mid,
                    index: a.index,
                })
            }
            Level::Mid => Ok(a),
            Level::Top => {
                let t = self.top.as_ref().expect("tower has no top level");
                let n = t.n;
                let mut coeffs = [0u64; MAX_DEGREE];
                self.top_decode(a.index, &mut coeffs);
                let mut acc = 0u64;
                for j in 0..n {
                    if coeffs[j] != 0 {
                        acc = self.mid_add(acc, self.mid_mul(coeffs[j], t.trace_form[j]));
                    }
                }
                Ok(FFElement {
                    level: Level::Mid,
                    index: acc,
                })
            }
        }
    }

    // ---- mid-level internals ----------------------------------------------

    pub(crate) fn mid_add(&self, a: u64, b: u64) -> u64 {
        if self.m == 1 {
            let s = a + b;
            return if s >= self.p { s - self.p } else { s };
        }
        if self.p == 2 {
            return a ^ b;
        }
        let mut out = 0u64;
        let mut weight = 1u64;
        let (mut x, mut y) = (a, b);
        for _ in 0..self.m {
            let d = (x % self.p + y % self.p) % self.p;
            out += d * weight;
            weight *= self.p;
            x /= self.p;
            y /= self.p;
        }
        out
    }

    pub(crate) fn mid_neg(&self, a: u64) -> u64 {
        if self.m == 1 {
            return if a == 0 { 0 } else { self.p - a };
        }
        if self.p == 2 {
            return a;
        }
        let mut out = 0u64;
        let mut weight = 1u64;
        let mut x = a;
        for _ in 0..self.m {
            let d = x % self.p;
            out += if d == 0 { 0 } else { self.p - d } * weight;
            weight *= self.p;
            x /= self.p;
        }
        out
    }

    pub(crate) fn mid_mul(&self, a: u64, b: u64) -> u64 {
        if self.m == 1 {
            return arith::mul_mod(a, b, self.p);
        }
        if a == 0 || b == 0 {
            return 0;
        }
        if let Some(t) = &self.mid_tables {
            let g = self.q - 1;
            let e = (t.log[a as usize] as u64 + t.log[b as usize] as u64) % g;
            return t.exp[e as usize] as u64;
        }
        self.mid_mul_raw(a, b)
    }

    fn mid_mul_raw(&self, a: u64, b: u64) -> u64 {
        let m = self.m;
        let p = self.p;
        let mut av = [0u64; MAX_DEGREE];
        let mut bv = [0u64; MAX_DEGREE];
        let mut prod = [0u64; 2 * MAX_DEGREE];
        let (mut x, mut y) = (a, b);
        for i in 0..m {
            av[i] = x % p;
            bv[i] = y % p;
            x /= p;
            y /= p;
        }
        for i in 0..m {
            if av[i] == 0 {
                continue;
            }
            for j in 0..m {
                if bv[j] != 0 {
                    prod[i + j] = (prod[i + j] + av[i] * bv[j]) % p;
                }
            }
        }
        // reduce by the monic base modulus
        for i in (m..=2 * m - 2).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            prod[i] = 0;
            for (j, &mj) in self.base_modulus[..m].iter().enumerate() {
                if mj != 0 {
                    let idx = i - m + j;
                    prod[idx] = (prod[idx] + p * p - (c * mj) % p) % p;
                }
            }
        }
        let mut out = 0u64;
        for i in (0..m).rev() {
            out = out * p + prod[i];
        }
        out
    }

    pub(crate) fn mid_inv(&self, a: u64) -> Result<u64> {
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        if self.m == 1 {
            return PrimeOps(self.p).inv(a);
        }
        if let Some(t) = &self.mid_tables {
            let g = self.q - 1;
            let e = (g - t.log[a as usize] as u64) % g;
            return Ok(t.exp[e as usize] as u64);
        }
        // a^(q-2)
        let mut acc = 1u64;
        let mut base = a;
        let mut e = self.q - 2;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mid_mul_raw(acc, base);
            }
            base = self.mid_mul_raw(base, base);
            e >>= 1;
        }
        Ok(acc)
    }

    fn build_mid_tables(&mut self) {
        let g_ord = self.q - 1;
        // Scan candidates ascending; the first whose power cycle has full
        // length is the least primitive element, which is also what
        // find_primitive must return for the mid level.
        let mut exp: Vec<u32> = Vec::with_capacity(g_ord as usize);
        for cand in 2..self.q {
            exp.clear();
            let mut acc = 1u64;
            loop {
                exp.push(acc as u32);
                acc = self.mid_mul_raw(acc, cand);
                if acc == 1 {
                    break;
                }
                if exp.len() as u64 > g_ord {
                    unreachable!("order exceeded group order");
                }
            }
            if exp.len() as u64 == g_ord {
                let mut log = vec![0u32; self.q as usize];
                for (i, &idx) in exp.iter().enumerate() {
                    log[idx as usize] = i as u32;
                }
                let generator = cand;
                self.mid_tables = Some(MidTables { exp, log });
                let _ = self.primitive_mid.set(generator);
                return;
            }
        }
        unreachable!("every finite field has a primitive element");
    }

    // ---- top-level internals ----------------------------------------------

    pub(crate) fn top_decode(&self, idx: u64, out: &mut [u64; MAX_DEGREE]) {
        let t = self.top.as_ref().expect("tower has no top level");
        let mut x = idx;
        for slot in out.iter_mut().take(t.n) {
            *slot = x % self.q;
            x /= self.q;
        }
    }

    pub(crate) fn top_encode(&self, coeffs: &[u64; MAX_DEGREE]) -> u64 {
        let t = self.top.as_ref().expect("tower has no top level");
        let mut out = 0u64;
        for i in (0..t.n).rev() {
            out = out * self.q + coeffs[i];
        }
        out
    }

    fn top_map1(&self, a: u64, f: impl Fn(&Self, u64) -> u64) -> u64 {
        let mut av = [0u64; MAX_DEGREE];
        self.top_decode(a, &mut av);
        let n = self.top.as_ref().unwrap().n;
        for slot in av.iter_mut().take(n) {
            *slot = f(self, *slot);
        }
        self.top_encode(&av)
    }

    fn top_map2(&self, a: u64, b: u64, f: impl Fn(&Self, u64, u64) -> u64) -> u64 {
        let mut av = [0u64; MAX_DEGREE];
        let mut bv = [0u64; MAX_DEGREE];
        self.top_decode(a, &mut av);
        self.top_decode(b, &mut bv);
        let n = self.top.as_ref().unwrap().n;
        for i in 0..n {
            av[i] = f(self, av[i], bv[i]);
        }
        self.top_encode(&av)
    }

    fn top_mul(&self, a: u64, b: u64) -> u64 {
        if a == 0 || b == 0 {
            return 0;
        }
        let t = self.top.as_ref().expect("tower has no top level");
        let n = t.n;
        if n == 1 {
            // modulus Y - c: elements are mid constants
            return self.mid_mul(a, b);
        }
        let mut av = [0u64; MAX_DEGREE];
        let mut bv = [0u64; MAX_DEGREE];
        self.top_decode(a, &mut av);
        self.top_decode(b, &mut bv);
        let mut prod = [0u64; 2 * MAX_DEGREE];
        for i in 0..n {
            if av[i] == 0 {
                continue;
            }
            for j in 0..n {
                if bv[j] != 0 {
                    prod[i + j] = self.mid_add(prod[i + j], self.mid_mul(av[i], bv[j]));
                }
            }
        }
        for i in (n..=2 * n - 2).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            prod[i] = 0;
            for (j, &mj) in t.modulus[..n].iter().enumerate() {
                if mj != 0 {
                    prod[i - n + j] = self.mid_sub(prod[i - n + j], self.mid_mul(c, mj));
                }
            }
        }
        let mut head = [0u64; MAX_DEGREE];
        head[..n].copy_from_slice(&prod[..n]);
        self.top_encode(&head)
    }

    fn mid_sub(&self, a: u64, b: u64) -> u64 {
        self.mid_add(a, self.mid_neg(b))
    }

    fn precompute_top(&mut self) {
        let n = self.top.as_ref().unwrap().n;
        let mut frob = vec![0u64; n * n];
        if n == 1 {
            // top level is a copy of the mid level; Frobenius is the identity
            frob[0] = 1;
        } else {
            // column j of the Frobenius matrix is (Y^j)^q = (Y^q)^j
            let yq = self.idx_pow(Level::Top, self.q, self.q);
            let mut col = 1u64;
            for j in 0..n {
                let mut coeffs = [0u64; MAX_DEGREE];
                self.top_decode(col, &mut coeffs);
                for i in 0..n {
                    frob[i * n + j] = coeffs[i];
                }
                if j + 1 < n {
                    col = self.top_mul(col, yq);
                }
            }
        }
        self.top.as_mut().unwrap().frob = frob;
        // trace(Y^j) = sum of the length-n Frobenius sequence of Y^j
        let mut trace_form = vec![0u64; n];
        for (j, slot) in trace_form.iter_mut().enumerate() {
            let basis_pow = if n == 1 {
                1u64
            } else {
                self.idx_pow(Level::Top, self.q, j as u64)
            };
            let mut elt = FFElement {
                level: Level::Top,
                index: basis_pow,
            };
            let mut acc = elt.index;
            for _ in 1..n {
                elt = self.frobenius(elt);
                acc = self.idx_add(Level::Top, acc, elt.index);
            }
            // Galois theory puts the trace in the mid level.
            assert!(acc < self.q, "trace of a basis power left the mid level");
            *slot = acc;
        }
        self.top.as_mut().unwrap().trace_form = trace_form;
    }
}

/// The Frobenius automorphism phi(x) = x^q of the top level, fixing the mid
/// level pointwise, with phi^n the identity.
#[derive(Debug, Clone, Copy)]
pub struct FrobeniusMap<'a> {
    tower: &'a FieldTower,
}

impl<'a> FrobeniusMap<'a> {
    pub fn new(tower: &'a FieldTower) -> Result<Self> {
        if !tower.has_top() {
            return Err(Error::InvalidInput(
                "Frobenius map requires a top level".into(),
            ));
        }
        Ok(Self { tower })
    }

    pub fn apply(&self, a: FFElement) -> FFElement {
        self.tower.frobenius(a)
    }

    /// phi^i(a).
    pub fn apply_iter(&self, a: FFElement, i: usize) -> FFElement {
        let mut x = a;
        let n = self.tower.top_degree().unwrap();
        for _ in 0..(i % n.max(1)) {
            x = self.tower.frobenius(x);
        }
        x
    }

    /// The full length-n sequence a, phi(a), ..., phi^{n-1}(a).
    pub fn orbit_sequence(&self, a: FFElement) -> Vec<FFElement> {
        let n = self.tower.top_degree().unwrap();
        let mut out = Vec::with_capacity(n);
        let mut x = a;
        for _ in 0..n {
            out.push(x);
            x = self.tower.frobenius(x);
        }
        out
    }
}

fn validate_modulus<C: CoeffOps>(ops: &C, v: &[u64], deg: usize, what: &str) -> Result<()> {
    if polyraw::degree(v) != Some(deg) {
        return Err(Error::InvalidInput(format!(
            "{what} modulus must have degree {deg}"
        )));
    }
    if !polyraw::is_monic(v) {
        return Err(Error::NotMonic);
    }
    if v.iter().any(|&c| c >= ops.card()) {
        return Err(Error::InvalidInput(format!(
            "{what} modulus has a coefficient outside its field"
        )));
    }
    if deg > 1 && !polyraw::is_irreducible(ops, v)? {
        return Err(Error::InvalidInput(format!("{what} modulus is reducible")));
    }
    Ok(())
}

/// Least monic irreducible of the given degree, ordered by the little-endian
/// base-card encoding of the non-leading coefficients.
fn canonical_modulus<C: CoeffOps>(ops: &C, deg: usize) -> Result<Vec<u64>> {
    let card = ops.card();
    let space = (card as u128).checked_pow(deg as u32);
    let budget = space
        .map(|s| s.min(MODULUS_SEARCH_BUDGET as u128) as u64)
        .unwrap_or(MODULUS_SEARCH_BUDGET);
    for enc in 0..budget {
        let mut coeffs = Vec::with_capacity(deg + 1);
        let mut e = enc;
        for _ in 0..deg {
            coeffs.push(e % card);
            e /= card;
        }
        coeffs.push(1);
        if deg == 1 || polyraw::is_irreducible(ops, &coeffs)? {
            return Ok(coeffs);
        }
    }
    Err(Error::BudgetExceeded(format!(
        "canonical modulus search of degree {deg}"
    )))
}

#[cfg(test)]
mod tests;
