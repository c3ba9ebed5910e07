//! Quiver-variety combinatorics, moment-map numerics for quiver
//! representations, and an exact block-matrix model of the coproduct on
//! convolution algebras together with its tensor-multiplicity consequences.
//!
//! Linear algebra is generic over [`Scalar`]; the aliases below fix the
//! fields used in practice.

pub mod coproduct;
pub mod error;
pub mod matrix;
pub mod oracle;
pub mod quiver;
pub mod random;
pub mod representation;
pub mod roots;
pub mod scalar;
pub mod selftest;
pub mod strata;
pub mod tensor_ade;

pub use error::{Error, Result};
pub use matrix::Matrix;
pub use quiver::{Arrow, CartanMatrix, DimVector, Quiver};
pub use representation::{FramingSplit, Rep};
pub use roots::{RootKind, RootList, TypeClass};
pub use strata::{FixedComponent, FixedStratumIndex, StratumIndex};
pub use tensor_ade::Weight;
pub use scalar::Scalar;

pub use num_complex::{Complex, Complex64};
pub use num_rational::BigRational;

/// Exact rationals.
pub type Rational = BigRational;
/// Exact Gaussian rationals.
pub type GaussianRational = Complex<BigRational>;

pub type RatMatrix = Matrix<Rational>;
pub type CMatrix = Matrix<Complex64>;
pub type GaussMatrix = Matrix<GaussianRational>;

pub type ComplexRep = Rep<Complex64>;
pub type ExactRep = Rep<GaussianRational>;
pub type RatClass = coproduct::CorrClass<Rational>;
