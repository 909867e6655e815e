//! Quasi-cyclic LDPC codes from Euclidean geometries, adapted to be
//! self-orthogonal and lifted to CSS stabilizer codes.
//!
//! The pipeline, in module order:
//!
//! - [`field`]: log/antilog tables for F_{q^m} with a fixed primitive
//!   element.
//! - [`geometry`]: points and lines of EG(m, q), cyclic line classes,
//!   incidence vectors.
//! - [`binmat`]: the bit-packed GF(2) kernel (circulants, rank, overlap,
//!   cycles, minimum distance).
//! - [`construct`]: Type-I/Type-II parity-check assembly and the
//!   self-orthogonal adaptation, with verification built in.
//! - [`quantum`]: self-dual CSS codes, commutation checks, Pauli export.
//! - [`decode`]: syndrome sum-product decoding and degeneracy-aware
//!   classification.
//! - [`harness`]: Monte Carlo simulation, alist and result serialization.
//!
//! The `egqldpc` binary exposes the same functionality as subcommands; see
//! the README for the surface.

pub mod binmat;
pub mod construct;
pub mod decode;
mod error;
pub mod field;
pub mod geometry;
pub mod harness;
pub mod quantum;

pub use error::{Error, Result};
