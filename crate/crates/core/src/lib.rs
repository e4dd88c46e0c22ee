//! Exact projective lines over a field, treated as groupoids.
//!
//! A projective line is more than a bare point set: its points double as the
//! *directions* of projections between points, which makes the point set into
//! a groupoid whose vertex groups are the multiplicative group of the base
//! field. This crate implements that structure exactly (no floating point):
//!
//! - [`scalars`]: prime fields GF(p) and arbitrary-precision rationals;
//! - [`coordinate_line`]: the concrete line P(k²) with homogeneous
//!   coordinates, labeled arrows, composition and cross ratios via 2×2
//!   determinants;
//! - [`abstract_line`]: finite lines given by explicit composition tables,
//!   plus an exhaustive verifier that decides whether a table really is a
//!   projective line over GF(p);
//! - [`fundamental`]: three-transitivity — the unique projectivity through
//!   two triples, functoriality certificates and brute-force uniqueness
//!   censuses;
//! - [`moebius`]: 2×2 matrix tracking of projectivities, fractional linear
//!   transformations and PGL(2, q) enumeration;
//! - [`punctured`]: the canonical affine-line and vector-line structures on a
//!   line with one point removed;
//! - [`bundles`]: the cocycles of the canonical affine- and vector-line
//!   bundles, and the exhaustive uniqueness search for the 4-point line over
//!   GF(3).
//!
//! Everything is immutable and pure; all values are safe to share across
//! threads.

pub mod abstract_line;
pub mod bundles;
pub mod coordinate_line;
mod error;
pub mod fundamental;
pub mod moebius;
pub mod punctured;
pub mod scalars;

pub use abstract_line::{
    build_coordinate_model, AxiomGroup, AxiomReport, CoordinateModel, FiniteLine, LineArrow,
    PointId, VerifyOptions, Violation,
};
pub use bundles::{AffineAutomorphism, Gf3Certificate};
pub use coordinate_line::{Arrow, ProjPoint, Vec2};
pub use error::{Error, Result};
pub use fundamental::Projectivity;
pub use moebius::{Matrix2, ProjMatrix, ProjectiveValue};
pub use punctured::Chart;
pub use scalars::{FieldContext, Scalar};
