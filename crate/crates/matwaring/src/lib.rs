//! Waring decompositions of matrices over finite fields.
//!
//! This crate writes an arbitrary square matrix A over F_q as an explicit sum
//! of two or three k-th powers of matrices, emits a machine-checkable
//! certificate of every decomposition, and carries an exhaustive desk-scale
//! census that validates the counting bounds the constructions rest on.
//!
//! The layers, bottom up:
//!
//! * [`fields`]: exact arithmetic in towers F_p <= F_{p^m} <= F_{q^n},
//!   Frobenius maps, element orders, discrete logs, k-th roots, and sums of
//!   two k-th powers of single field elements.
//! * [`polyring`]: polynomials over tower levels: irreducibility and
//!   primitivity, orbit polynomials, and the searches for (k-power)
//!   irreducible polynomials with prescribed trace.
//! * [`matlin`]: exact matrix algebra: companion matrices, Frobenius normal
//!   form with similarity witnesses, prescribed-column completions.
//! * [`waring`]: the decomposition engine and its certificates.
//! * [`census`]: exhaustive power-set oracles and bound validators.
//! * [`cli`]: the command-line front end (`decompose`, `verify`, `census`,
//!   `selftest`).
//!
//! Every search in the crate scans candidates in ascending canonical order,
//! so identical inputs always produce byte-identical certificates.

// Dense exact linear algebra indexes several flat buffers per loop; the
// iterator rewrites clippy suggests hide that addressing.
#![allow(clippy::needless_range_loop)]

pub mod arith;
pub mod census;
pub mod cli;
pub mod error;
pub mod fields;
pub mod matlin;
pub mod polyring;
pub mod suite;
pub mod waring;

pub use error::{Error, Result};
pub use fields::{FFElement, FieldTower, FrobeniusMap, Level};
pub use matlin::{FFMatrix, FrobeniusForm, SimilarityWitness};
pub use polyring::{KPowerWitness, Poly};
pub use waring::WaringCertificate;
