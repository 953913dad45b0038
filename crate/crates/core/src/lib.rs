//! Noncrossing chord diagram bases for multiqubit Werner operators, the
//! polygon Werner states, and separability of their two-qubit reductions.
//!
//! Exact arithmetic is used wherever the objects have small integer or
//! Gaussian-rational entries; floating point covers the cyclic states and
//! the randomized checks.

pub mod bitstrings;
pub mod chords;
pub mod complex;
pub mod error;
pub mod exact;
pub mod io;
pub mod linalg;
pub mod separability;
pub mod states;
pub mod werner_ops;

pub use bitstrings::BitString;
pub use chords::{ChordDiagram, OrientedChord, Symmetry};
pub use complex::{ComplexMatrix, ComplexVector};
pub use error::{Result, WernerError};
pub use exact::{Gaussian, Rational, ScaledGaussianOperator, ScaledIntState};
