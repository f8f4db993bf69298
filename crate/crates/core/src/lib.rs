//! Linear codes over prime fields with multi-erasure repair locality.
//!
//! A coordinate has `(r, delta)` repair locality when `delta - 1` pairwise
//! disjoint sets of at most `r` other coordinates can each rebuild it. The
//! crate provides:
//!
//! - [`field`] and [`matrix`]: exact GF(q) arithmetic and elimination;
//! - [`code`]: linear codes, encoding and two independent distance oracles;
//! - [`locality`]: repair-set search, certificates, local repair and metrics;
//! - [`bounds`]: the closed-form length and distance bounds;
//! - [`constructions`]: the projective-plane codes, the block construction
//!   that meets the length bound, and the grid ("square") code.

pub mod bounds;
pub mod code;
pub mod combin;
pub mod constructions;
pub mod error;
pub mod field;
pub mod locality;
pub mod matrix;
pub mod rng;

pub use code::{Codeword, DistanceReport, LinearCode, VerifyMode};
pub use error::{Error, Result};
pub use field::Field;
pub use locality::{LocalityClass, LocalityProfile, RepairCertificate, RepairMetrics};
pub use matrix::FieldMatrix;
