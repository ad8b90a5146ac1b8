//! Matroid computation over small finite fields, centred on (k,l)-uniformity:
//! a matroid is (k,l)-uniform when it has no minor isomorphic to
//! U(k,k) ⊕ U(0,l).
//!
//! - [`gf`]: finite-field arithmetic and dense linear algebra.
//! - [`matroid`]: rank oracles, minors, duality, sums, connectivity.
//! - [`uniformity`]: three independent (k,l)-uniformity deciders and the
//!   structure classifiers for non-3-connected (2,2)-uniform matroids.
//! - [`binary`] and [`iso`]: canonical forms of binary matroids, isomorphism
//!   and minor testing.
//! - [`catalog`]: named matroids with fixed element labels.
//! - [`io`]: the matrix and graph text formats.
//! - [`search`]: isomorph-free enumeration of binary (k,l)-uniform matroids.
//! - [`verify`]: replayable checks of the classification results.

pub mod binary;
pub mod catalog;
pub mod error;
pub mod gf;
pub mod graph;
pub mod io;
pub mod iso;
pub mod mask;
pub mod matroid;
pub mod search;
pub mod uniformity;
pub mod verify;

pub use error::{Error, Result};
pub use gf::{FieldSpec, GfMatrix};
pub use graph::Graph;
pub use mask::Mask;
pub use matroid::{Matroid, MinorSpec};
pub use uniformity::KlPair;

