//! Stationary amplitudes and stationary measures of coined discrete-time
//! quantum walks on the integer lattice `Z^d`.
//!
//! A walk is driven by a `2d x 2d` unitary [`Coin`]. Finitely supported
//! wavefunctions ([`FiniteState`]) evolve under [`evolution::step`]; the
//! [`symbol`] module holds the Laurent-polynomial Fourier picture, and
//! [`stationary`] turns the eigenvalue-1 eigenfunction of the Grover walk
//! into finitely supported stationary states and measures.
//!
//! Every numeric type is generic over [`Scalar`], with an exact
//! Gaussian-rational backend and a binary64 backend.

pub mod coin;
pub mod dd;
pub mod error;
pub mod evolution;
pub mod io;
pub mod lattice;
pub mod scalar;
pub mod stationary;
pub mod symbol;

pub use coin::{Coin, CoinKind};
pub use error::{Error, Result};
pub use lattice::{ChiralVector, FiniteState, LatticePoint, Measure, WeightSequence};
pub use num_complex::Complex64;
pub use num_rational::BigRational;
pub use scalar::{Backend, GaussianRational, Scalar};
pub use stationary::StationaryAtom;
pub use symbol::{LaurentPoly, SymbolMatrix, SymbolVector};
