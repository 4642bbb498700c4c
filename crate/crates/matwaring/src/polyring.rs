//! Polynomials over tower levels: ring arithmetic, the negated-coefficient
//! trace convention, irreducibility and primitivity tests, Frobenius orbit
//! polynomials, and the searches for irreducible / k-power irreducible
//! polynomials with prescribed trace.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith;
use crate::error::{Error, Result};
use crate::fields::{polyraw, FFElement, FieldTower, FrobeniusMap, Level, LevelOps};

/// Budget for prescribed-trace polynomial searches.
const POLY_SEARCH_BUDGET: u64 = 1 << 24;

/// Polynomial over one tower level; little-endian coefficient indices with no
/// trailing zeros, so the zero polynomial has an empty coefficient vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Poly {
    level: Level,
    coeffs: Vec<u64>,
}

impl Poly {
    pub fn new(level: Level, mut coeffs: Vec<u64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly { level, coeffs }
    }

    pub fn zero(level: Level) -> Self {
        Poly {
            level,
            coeffs: Vec::new(),
        }
    }

    pub fn one(level: Level) -> Self {
        Poly {
            level,
            coeffs: vec![1],
        }
    }

    /// The monomial X.
    pub fn x(level: Level) -> Self {
        Poly {
            level,
            coeffs: vec![0, 1],
        }
    }

    pub fn constant(e: FFElement) -> Self {
        Poly::new(e.level, vec![e.index])
    }

    /// X - a.
    pub fn x_minus(tower: &FieldTower, a: FFElement) -> Self {
        Poly::new(a.level, vec![tower.neg(a).index, 1])
    }

    pub fn from_elements(level: Level, elems: &[FFElement]) -> Self {
        assert!(elems.iter().all(|e| e.level == level), "mixed tower levels");
        Poly::new(level, elems.iter().map(|e| e.index).collect())
    }

    pub fn level(&self) -> Level {
        self.level
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&1)
    }

    /// Coefficient of X^i as an element (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> FFElement {
        FFElement {
            level: self.level,
            index: self.coeffs.get(i).copied().unwrap_or(0),
        }
    }

    fn ops<'a>(&self, tower: &'a FieldTower) -> LevelOps<'a> {
        LevelOps {
            tower,
            level: self.level,
        }
    }

    fn check_pair(&self, rhs: &Poly) {
        assert_eq!(self.level, rhs.level, "mixed tower levels");
    }

    fn wrap(&self, coeffs: Vec<u64>) -> Poly {
        Poly {
            level: self.level,
            coeffs,
        }
    }

    pub fn add(&self, tower: &FieldTower, rhs: &Poly) -> Poly {
        self.check_pair(rhs);
        self.wrap(polyraw::add(&self.ops(tower), &self.coeffs, &rhs.coeffs))
    }

    pub fn sub(&self, tower: &FieldTower, rhs: &Poly) -> Poly {
        self.check_pair(rhs);
        self.wrap(polyraw::sub(&self.ops(tower), &self.coeffs, &rhs.coeffs))
    }

    pub fn mul(&self, tower: &FieldTower, rhs: &Poly) -> Poly {
        self.check_pair(rhs);
        self.wrap(polyraw::mul(&self.ops(tower), &self.coeffs, &rhs.coeffs))
    }

    pub fn scale(&self, tower: &FieldTower, c: FFElement) -> Poly {
        assert_eq!(self.level, c.level, "mixed tower levels");
        self.wrap(polyraw::scale(&self.ops(tower), &self.coeffs, c.index))
    }

    /// Quotient and remainder; rhs must be nonzero.
    pub fn divmod(&self, tower: &FieldTower, rhs: &Poly) -> Result<(Poly, Poly)> {
        self.check_pair(rhs);
        let (q, r) = polyraw::divmod(&self.ops(tower), &self.coeffs, &rhs.coeffs)?;
        Ok((self.wrap(q), self.wrap(r)))
    }

    pub fn rem(&self, tower: &FieldTower, rhs: &Poly) -> Result<Poly> {
        Ok(self.divmod(tower, rhs)?.1)
    }

    /// Monic gcd.
    pub fn gcd(&self, tower: &FieldTower, rhs: &Poly) -> Result<Poly> {
        self.check_pair(rhs);
        Ok(self.wrap(polyraw::gcd(&self.ops(tower), &self.coeffs, &rhs.coeffs)?))
    }

    pub fn make_monic(&self, tower: &FieldTower) -> Result<Poly> {
        Ok(self.wrap(polyraw::make_monic(&self.ops(tower), &self.coeffs)?))
    }

    pub fn evaluate(&self, tower: &FieldTower, x: FFElement) -> FFElement {
        assert_eq!(self.level, x.level, "mixed tower levels");
        FFElement {
            level: self.level,
            index: polyraw::eval(&self.ops(tower), &self.coeffs, x.index),
        }
    }

    /// self^exp mod modulus.
    pub fn pow_mod(&self, tower: &FieldTower, exp: u64, modulus: &Poly) -> Result<Poly> {
        self.check_pair(modulus);
        Ok(self.wrap(polyraw::pow_mod(
            &self.ops(tower),
            &self.coeffs,
            exp,
            &modulus.coeffs,
        )?))
    }

    /// The trace of a monic P = X^n - a_{n-1} X^{n-1} - ... is a_{n-1}, the
    /// negated coefficient of X^{n-1}; it equals the sum of the roots.
    pub fn trace(&self, tower: &FieldTower) -> Result<FFElement> {
        if !self.is_monic() || self.degree() == Some(0) {
            return Err(Error::NotMonic);
        }
        let n = self.degree().unwrap();
        Ok(tower.neg(self.coeff(n - 1)))
    }

    /// Rabin's test: P of degree d over a field of cardinality Q is
    /// irreducible iff X^(Q^d) = X mod P and gcd(X^(Q^(d/r)) - X, P) = 1 for
    /// each prime r | d.
    pub fn is_irreducible(&self, tower: &FieldTower) -> Result<bool> {
        polyraw::is_irreducible(&self.ops(tower), &self.coeffs)
    }

    /// Whether the residue class of X generates the full multiplicative group
    /// of the quotient field. Requires self monic irreducible.
    pub fn is_primitive(&self, tower: &FieldTower) -> Result<bool> {
        let n = match self.degree() {
            None | Some(0) => {
                return Err(Error::InvalidInput(
                    "primitivity is defined for nonconstant polynomials".into(),
                ))
            }
            Some(n) => n,
        };
        if !self.is_monic() {
            return Err(Error::NotMonic);
        }
        let q = tower.cardinality(self.level);
        let group = (q as u128)
            .checked_pow(n as u32)
            .filter(|&v| v < (1 << 63))
            .map(|v| v as u64 - 1)
            .ok_or_else(|| Error::BudgetExceeded(format!("group order {q}^{n} - 1 exceeds 2^63")))?;
        let x = Poly::x(self.level);
        // X generates iff X^(group/r) != 1 for every prime r | group
        for (r, _) in arith::factor(group)? {
            if x.pow_mod(tower, group / r, self)? == Poly::one(self.level) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Comma-separated little-endian coefficient indices, e.g. "1,0,1" = X^2+1.
    pub fn to_text(&self) -> String {
        if self.coeffs.is_empty() {
            return "0".to_string();
        }
        self.coeffs
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn from_text(level: Level, s: &str) -> Result<Poly> {
        let coeffs: std::result::Result<Vec<u64>, _> =
            s.trim().split(',').map(|t| t.trim().parse::<u64>()).collect();
        let coeffs = coeffs.map_err(|e| Error::Io(format!("bad polynomial text: {e}")))?;
        Ok(Poly::new(level, coeffs))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (i, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "X")?,
                (1, c) => write!(f, "{c}X")?,
                (i, 1) => write!(f, "X^{i}")?,
                (i, c) => write!(f, "{c}X^{i}")?,
            }
        }
        Ok(())
    }
}

/// Least u >= 1 with phi^u(a) = a; always divides the top degree n.
pub fn orbit_period(tower: &FieldTower, a: FFElement) -> u64 {
    assert_eq!(a.level, Level::Top, "orbit period is a top-level notion");
    let n = tower.top_degree().expect("tower has no top level") as u64;
    let mut x = tower.frobenius(a);
    let mut u = 1u64;
    while x != a {
        x = tower.frobenius(x);
        u += 1;
        assert!(u <= n, "Frobenius orbit failed to close within n steps");
    }
    assert!(n.is_multiple_of(u), "orbit period must divide n");
    u
}

/// The orbit polynomial (X - a)(X - phi(a))...(X - phi^{n-1}(a)), expanded
/// over the top level and returned with its coefficients coerced into the mid
/// level, where Galois theory guarantees they live.
pub fn orbit_poly(tower: &FieldTower, a: FFElement) -> Result<Poly> {
    assert_eq!(a.level, Level::Top, "orbit polynomials are a top-level notion");
    let frob = FrobeniusMap::new(tower)?;
    let mut acc = Poly::one(Level::Top);
    for root in frob.orbit_sequence(a) {
        acc = acc.mul(tower, &Poly::x_minus(tower, root));
    }
    let mut mid_coeffs = Vec::with_capacity(acc.coeffs.len());
    for &c in acc.coeffs.iter() {
        let e = FFElement {
            level: Level::Top,
            index: c,
        };
        let down = tower
            .project(e, Level::Mid)
            .ok_or(Error::CoefficientNotInBase)?;
        mid_coeffs.push(down.index);
    }
    Ok(Poly::new(Level::Mid, mid_coeffs))
}

/// Deterministic ascending search for a monic irreducible (optionally
/// primitive) polynomial of degree n over the mid level with prescribed
/// trace: the coefficient of X^{n-1} is pinned to -t and the remaining free
/// coefficients are enumerated by their little-endian base-q encoding.
pub fn find_irreducible_with_trace(
    tower: &FieldTower,
    n: usize,
    t: FFElement,
    require_primitive: bool,
) -> Result<Poly> {
    assert!(n >= 1);
    let t = tower
        .project(t, Level::Mid)
        .or_else(|| tower.embed(t, Level::Mid).ok())
        .ok_or_else(|| Error::InvalidInput("trace must lie in the mid level".into()))?;
    let q = tower.q();
    // Cohen's exceptions: no primitive polynomial with trace 0 exists for
    // (q, n) in {(2, 2), (4, 3)}; reject up front.
    if require_primitive && t.index == 0 && ((q, n) == (2, 2) || (q, n) == (4, 3)) {
        return Err(Error::NoSuchPolynomial(format!(
            "primitive polynomials of degree {n} over F_{q} with trace 0 do not exist"
        )));
    }
    let pinned = tower.neg(t).index; // coefficient of X^{n-1}
    let free = n - 1;
    let space = (q as u128).checked_pow(free as u32).unwrap_or(u128::MAX);
    if space > POLY_SEARCH_BUDGET as u128 {
        return Err(Error::BudgetExceeded(format!(
            "trace-pinned polynomial search over {q}^{free} candidates"
        )));
    }
    for enc in 0..space as u64 {
        let mut coeffs = Vec::with_capacity(n + 1);
        let mut e = enc;
        for _ in 0..free {
            coeffs.push(e % q);
            e /= q;
        }
        coeffs.push(pinned);
        coeffs.push(1);
        let cand = Poly::new(Level::Mid, coeffs);
        if n > 1 && !cand.is_irreducible(tower)? {
            continue;
        }
        if require_primitive && !cand.is_primitive(tower)? {
            continue;
        }
        return Ok(cand);
    }
    Err(Error::NoSuchPolynomial(format!(
        "no {} polynomial of degree {n} over F_{q} with the prescribed trace",
        if require_primitive { "primitive" } else { "irreducible" }
    )))
}

/// Witness that a monic irreducible P of degree n over F_q is a k-power: the
/// orbit polynomial of a^k equals P and the orbit has full length n, which
/// makes the companion matrix of P an explicit k-th power. The tower whose
/// top level hosts `a` travels with the witness so downstream constructions
/// can replay it.
#[derive(Debug, Clone)]
pub struct KPowerWitness {
    pub tower: FieldTower,
    pub poly: Poly,
    pub a: FFElement,
    pub k: u64,
}

impl KPowerWitness {
    /// Recheck the defining properties.
    pub fn validate(&self) -> Result<()> {
        if self.a.level != Level::Top {
            return Err(Error::WitnessInvalid(
                "witness element must be top-level".into(),
            ));
        }
        let n = self
            .tower
            .top_degree()
            .ok_or_else(|| Error::WitnessInvalid("witness tower has no top level".into()))?;
        let ak = self.tower.pow(self.a, self.k);
        if orbit_period(&self.tower, ak) != n as u64 {
            return Err(Error::WitnessInvalid(
                "Frobenius orbit of a^k is shorter than n".into(),
            ));
        }
        let phi = orbit_poly(&self.tower, ak)?;
        if phi != self.poly {
            return Err(Error::WitnessInvalid(
                "orbit polynomial of a^k does not match the witnessed polynomial".into(),
            ));
        }
        Ok(())
    }
}

/// Deterministic ascending search over a in F_{q^n} for the first a whose
/// k-th power has a full-length Frobenius orbit with prescribed trace; the
/// returned polynomial orbit_poly(a^k) is then irreducible of degree n with
/// trace t and its companion matrix is a k-th power.
///
/// Success is guaranteed for n >= 7, gcd(k, q) = 1, k < q; exhaustion inside
/// that region is reported as a theorem-contradiction diagnostic.
pub fn find_kpower_irreducible_with_trace(
    tower: &FieldTower,
    n: usize,
    k: u64,
    t: FFElement,
) -> Result<KPowerWitness> {
    assert!(n >= 1 && k >= 1);
    let t = tower
        .project(t, Level::Mid)
        .or_else(|| tower.embed(t, Level::Mid).ok())
        .ok_or_else(|| Error::InvalidInput("trace must lie in the mid level".into()))?;
    let search = tower.without_top().extend_top(n, None)?;
    let frob = FrobeniusMap::new(&search)?;
    let card = search.cardinality(Level::Top);
    let q = search.q();
    for idx in 0..card {
        let a = FFElement {
            level: Level::Top,
            index: idx,
        };
        let ak = search.pow(a, k);
        let orbit = frob.orbit_sequence(ak);
        let distinct = (0..orbit.len())
            .all(|i| (i + 1..orbit.len()).all(|j| orbit[i].index != orbit[j].index));
        if !distinct {
            continue;
        }
        if search.trace_to_mid(ak)?.index != t.index {
            continue;
        }
        let poly = orbit_poly(&search, ak)?;
        debug_assert_eq!(poly.degree(), Some(n));
        return Ok(KPowerWitness {
            tower: search,
            poly,
            a,
            k,
        });
    }
    let guaranteed = n >= 7 && arith::gcd(k, q) == 1 && k < q;
    if guaranteed {
        Err(Error::TheoremContradiction(format!(
            "k-power irreducible search exhausted F_{q}^{n} with k={k}, trace index {} inside the guaranteed region",
            t.index
        )))
    } else {
        Err(Error::NoSuchPolynomial(format!(
            "no degree-{n} k-power irreducible polynomial over F_{q} with k={k} and trace index {}",
            t.index
        )))
    }
}
