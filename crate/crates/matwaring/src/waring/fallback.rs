//! Meet-in-the-middle exhaustive decomposition for tiny parameter spaces:
//! enumerate every k-th power in M_n(F_q), remember the least root of each,
//! and scan sum combinations in ascending packed order.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::fields::{FieldTower, Level};
use crate::matlin::FFMatrix;

use super::{ProvenanceStep, WaringCertificate};

/// Packed-space budget: refuse when q^(n^2) exceeds 2^24.
pub(crate) const FALLBACK_BUDGET: u64 = 1 << 24;

/// Base-q digit packing of the entries, row-major.
pub(crate) fn pack(tower: &FieldTower, m: &FFMatrix) -> u64 {
    let q = tower.cardinality(m.level());
    let mut out = 0u64;
    for &e in m.entries().iter().rev() {
        out = out * q + e;
    }
    out
}

pub(crate) fn unpack(tower: &FieldTower, level: Level, n: usize, mut code: u64) -> FFMatrix {
    let q = tower.cardinality(level);
    let mut entries = Vec::with_capacity(n * n);
    for _ in 0..n * n {
        entries.push(code % q);
        code /= q;
    }
    FFMatrix::new(level, n, entries)
}

/// All k-th power values in M_n(F_q), mapping each packed value to the least
/// (by packed encoding) root that produces it.
pub(crate) fn power_value_roots(
    tower: &FieldTower,
    level: Level,
    n: usize,
    k: u64,
) -> Result<BTreeMap<u64, u64>> {
    let q = tower.cardinality(level);
    let space = (q as u128).checked_pow((n * n) as u32);
    let space = match space {
        Some(s) if s <= FALLBACK_BUDGET as u128 => s as u64,
        _ => {
            return Err(Error::BudgetExceeded(format!(
                "power enumeration space {q}^{} exceeds 2^24",
                n * n
            )))
        }
    };
    let mut map: BTreeMap<u64, u64> = BTreeMap::new();
    for code in 0..space {
        let x = unpack(tower, level, n, code);
        let value = pack(tower, &x.pow(tower, k));
        map.entry(value).or_insert(code);
    }
    Ok(map)
}

/// Write A as a sum of r k-th powers by exhaustion; the returned terms form
/// the lexicographically least tuple of power values. NoDecomposition is a
/// genuine counterexample report, not a failure of the method.
pub fn exhaustive_fallback(
    tower: &FieldTower,
    a: &FFMatrix,
    k: u64,
    r: usize,
) -> Result<WaringCertificate> {
    assert!(r == 2 || r == 3, "the fallback emits 2- or 3-term sums");
    assert!(k >= 1);
    let level = a.level();
    let n = a.dim();
    let roots = power_value_roots(tower, level, n, k)?;
    let provenance = vec![
        ProvenanceStep::Route {
            construction: "exhaustive meet-in-the-middle".into(),
        },
        ProvenanceStep::Fallback {
            reason: format!(
                "enumerated {} distinct {k}-th power values in M_{n}(F_{})",
                roots.len(),
                tower.cardinality(level)
            ),
        },
    ];
    if r == 2 {
        for (&v1, &root1) in &roots {
            let rest = a.sub(tower, &unpack(tower, level, n, v1));
            let v2 = pack(tower, &rest);
            if let Some(&root2) = roots.get(&v2) {
                let terms = vec![
                    unpack(tower, level, n, root1),
                    unpack(tower, level, n, root2),
                ];
                return WaringCertificate::assemble(tower, a, k, terms, provenance);
            }
        }
    } else {
        for (&v1, &root1) in &roots {
            let rest1 = a.sub(tower, &unpack(tower, level, n, v1));
            for (&v2, &root2) in &roots {
                let rest2 = rest1.sub(tower, &unpack(tower, level, n, v2));
                let v3 = pack(tower, &rest2);
                if let Some(&root3) = roots.get(&v3) {
                    let terms = vec![
                        unpack(tower, level, n, root1),
                        unpack(tower, level, n, root2),
                        unpack(tower, level, n, root3),
                    ];
                    return WaringCertificate::assemble(tower, a, k, terms, provenance);
                }
            }
        }
    }
    Err(Error::NoDecomposition(format!(
        "exhaustion proves the target is not a sum of {r} {k}-th powers in M_{n}(F_{})",
        tower.cardinality(level)
    )))
}
