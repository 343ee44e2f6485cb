//! Exact polyhedral divisors on the projective line.
//!
//! This crate computes with the combinatorial data describing rational
//! torus actions of complexity one: polyhedral divisors over P¹ with a
//! common pointed tail cone, their degree and properness, the downgrade
//! cone realizing each divisor as an affine toric chart, divisorial fans
//! with their slice and degree compatibility rules, fan-level smoothness,
//! and a constructive, certified covering of a smooth complete fan by
//! charts isomorphic to affine space.
//!
//! All arithmetic is exact (arbitrary-precision integers and rationals);
//! all algorithms are deterministic, so reports are byte-reproducible.
//!
//! The `tfan` binary exposes the same operations on JSON fan documents;
//! the crate examples walk through each capability on the library API.

pub mod acover;
pub mod commands;
pub mod cone;
mod dd;
pub mod divfan;
pub mod error;
pub mod format;
pub mod lattice;
pub mod pdivisor;
pub mod polyhedron;
pub mod report;
pub mod toric;

pub use acover::{build_acover, verify_acover, ACoverCertificate, ACoverChart, ChartOrigin};
pub use cone::Cone;
pub use divfan::{DivisorialFan, Slice, SlicePoint, TailFan};
pub use error::GeomError;
pub use lattice::{Int, IntMatrix, LatticeVector, Rational, RationalVector};
pub use pdivisor::{AffineSpaceCertificate, Coefficient, PDivisor, PointOnP1};
pub use polyhedron::{Face, Polyhedron};
pub use report::{Finding, Report, Status};
pub use toric::ToricFan;
