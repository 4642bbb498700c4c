//! The decomposition engine: splitting a matrix into a block part plus a
//! non-derogatory part, k-th roots of companion matrices and block triangles,
//! the field-case decompositions, and the top-level two- and three-power
//! algorithms, all emitting replayable certificates.

mod decompose;
mod fallback;
mod roots;
mod split;

pub use decompose::{irreducible_decompose, scalar_decompose, three_powers, two_powers};
pub use fallback::exhaustive_fallback;
pub use roots::{block_root, kpower_companion_root, matrix_order, unipotent_root};
pub use split::{split_nonscalar, split_unipotent, SplitResult};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fields::{FieldTower, Level};
use crate::matlin::{FFMatrix, MatrixJson, SimilarityWitness};

/// The coefficient field of a certificate: F_{p^m} with its base modulus.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u64,
    pub m: usize,
    /// Monic irreducible of degree m over F_p, little-endian digits.
    pub modulus: Vec<u64>,
}

impl FieldSpec {
    pub fn of_tower(tower: &FieldTower) -> Self {
        FieldSpec {
            p: tower.p(),
            m: tower.m(),
            modulus: tower.base_modulus().to_vec(),
        }
    }

    pub fn build_tower(&self) -> Result<FieldTower> {
        FieldTower::new(self.p, self.m, Some(self.modulus.clone()))
    }
}

/// One replayable record of a choice made during a decomposition. Every
/// nondeterministic-looking choice is a deterministic least-index pick, but
/// the log makes a chain of half a dozen conjugations debuggable.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "step", rename_all = "snake_case")]
pub enum ProvenanceStep {
    /// Which construction produced the certificate.
    Route { construction: String },
    /// Scalar target value.
    ScalarTarget { alpha: u64 },
    /// Sum of two k-th powers of a field element: x^k + y^k = alpha in the
    /// field of the given cardinality.
    FieldDecomposition {
        cardinality: u64,
        alpha: u64,
        k: u64,
        x: u64,
        y: u64,
    },
    /// Top-level modulus attached over the mid level.
    TopModulus { degree: usize, modulus: String },
    /// Primitive element found by ascending scan.
    PrimitiveElement { cardinality: u64, index: u64 },
    /// Orbit polynomial of witness^exponent.
    OrbitPolynomial {
        witness_index: u64,
        exponent: u64,
        poly: String,
    },
    /// Corner scalar chosen in the block split.
    CornerScalar { t: u64 },
    /// The degree-n polynomial with prescribed trace and its k-power witness.
    TracePolynomial {
        poly: String,
        trace: u64,
        kpower_witness_index: Option<u64>,
        kpower_exponent: Option<u64>,
    },
    /// Inversion of the p-part of k against the group order.
    PPartOrder {
        p_exponent: u32,
        coprime_part: u64,
        element_order: u64,
        root_exponent: u64,
    },
    /// A similarity relation u^{-1} * original * u = reduced, re-checkable.
    Witness {
        label: String,
        u: MatrixJson,
        reduced: MatrixJson,
        original: MatrixJson,
    },
    /// The exhaustive fallback was taken.
    Fallback { reason: String },
}

/// A machine-checkable decomposition A = sum of `terms[i]^k`, together with the
/// full provenance of every choice made while constructing it.
#[derive(Debug, Clone)]
pub struct WaringCertificate {
    pub field: FieldSpec,
    pub n: usize,
    pub k: u64,
    pub terms: Vec<FFMatrix>,
    pub target: FFMatrix,
    pub provenance: Vec<ProvenanceStep>,
}

/// Serialized form of a certificate.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CertificateJson {
    pub field: FieldSpec,
    pub n: usize,
    pub k: u64,
    pub terms: Vec<MatrixJson>,
    pub target: MatrixJson,
    pub provenance: Vec<ProvenanceStep>,
}

impl WaringCertificate {
    /// Assemble and check soundness: the terms must re-power and re-sum to
    /// the target exactly. Emitters rely on this as their final gate.
    pub(crate) fn assemble(
        tower: &FieldTower,
        target: &FFMatrix,
        k: u64,
        terms: Vec<FFMatrix>,
        provenance: Vec<ProvenanceStep>,
    ) -> Result<Self> {
        let mut sum = FFMatrix::zero(target.level(), target.dim());
        for t in &terms {
            sum = sum.add(tower, &t.pow(tower, k));
        }
        if sum != *target {
            return Err(Error::TheoremContradiction(
                "certificate terms do not re-sum to the target".into(),
            ));
        }
        Ok(WaringCertificate {
            field: FieldSpec::of_tower(tower),
            n: target.dim(),
            k,
            terms,
            target: target.clone(),
            provenance,
        })
    }

    pub fn to_json(&self, tower: &FieldTower) -> CertificateJson {
        CertificateJson {
            field: self.field.clone(),
            n: self.n,
            k: self.k,
            terms: self
                .terms
                .iter()
                .map(|t| MatrixJson::from_matrix(tower, t))
                .collect(),
            target: MatrixJson::from_matrix(tower, &self.target),
            provenance: self.provenance.clone(),
        }
    }

    pub fn from_json(json: &CertificateJson) -> Result<(FieldTower, Self)> {
        let tower = json.field.build_tower()?;
        let terms = json
            .terms
            .iter()
            .map(|m| m.to_matrix(&tower, Level::Mid))
            .collect::<Result<Vec<_>>>()?;
        let target = json.target.to_matrix(&tower, Level::Mid)?;
        Ok((
            tower.clone(),
            WaringCertificate {
                field: json.field.clone(),
                n: json.n,
                k: json.k,
                terms,
                target,
                provenance: json.provenance.clone(),
            },
        ))
    }
}

/// Outcome of re-verifying a certificate: valid, or a list of reasons.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyOutcome {
    pub ok: bool,
    pub reasons: Vec<String>,
}

/// Recompute the power sum in the stated field and replay every similarity
/// witness recorded in the provenance.
pub fn verify(cert: &WaringCertificate) -> VerifyOutcome {
    let mut reasons = Vec::new();
    let tower = match cert.field.build_tower() {
        Ok(t) => t,
        Err(e) => {
            return VerifyOutcome {
                ok: false,
                reasons: vec![format!("field specification does not build: {e}")],
            }
        }
    };
    if cert.k == 0 {
        reasons.push("exponent k must be positive".into());
    }
    if cert.target.dim() != cert.n {
        reasons.push(format!(
            "target is {}x{} but the certificate claims n = {}",
            cert.target.dim(),
            cert.target.dim(),
            cert.n
        ));
    }
    if cert.terms.is_empty() || cert.terms.len() > 3 {
        reasons.push(format!(
            "certificates carry 2 or 3 terms, found {}",
            cert.terms.len()
        ));
    }
    let card = tower.cardinality(Level::Mid);
    let in_range = |mat: &FFMatrix| mat.entries().iter().all(|&e| e < card);
    if !in_range(&cert.target) || !cert.terms.iter().all(in_range) {
        reasons.push("matrix entry index outside the stated field".into());
        return VerifyOutcome {
            ok: false,
            reasons,
        };
    }
    if cert.terms.iter().any(|t| t.dim() != cert.target.dim()) {
        reasons.push("term dimensions do not match the target".into());
        return VerifyOutcome {
            ok: false,
            reasons,
        };
    }
    if cert.k > 0 {
        let mut sum = FFMatrix::zero(cert.target.level(), cert.target.dim());
        for t in &cert.terms {
            sum = sum.add(&tower, &t.pow(&tower, cert.k));
        }
        if sum != cert.target {
            reasons.push("power sum of the terms does not equal the target".into());
        }
    }
    for (i, step) in cert.provenance.iter().enumerate() {
        if let ProvenanceStep::Witness {
            label,
            u,
            reduced,
            original,
        } = step
        {
            let rebuilt = (|| -> Result<bool> {
                let u = u.to_matrix(&tower, Level::Mid)?;
                let reduced = reduced.to_matrix(&tower, Level::Mid)?;
                let original = original.to_matrix(&tower, Level::Mid)?;
                let w = SimilarityWitness::new(&tower, u)?;
                Ok(w.verify(&tower, &reduced, &original))
            })();
            match rebuilt {
                Ok(true) => {}
                Ok(false) => {
                    reasons.push(format!("provenance step {i} ({label}): witness relation fails"))
                }
                Err(e) => reasons.push(format!(
                    "provenance step {i} ({label}): witness does not rebuild: {e}"
                )),
            }
        }
    }
    VerifyOutcome {
        ok: reasons.is_empty(),
        reasons,
    }
}
