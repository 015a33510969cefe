//! Exact computer algebra for the quantum matrix algebra `Pol(Mat_n)_q`.

pub mod action;
pub mod algebra;
pub mod error;
pub mod fock;
pub mod invariants;
pub mod linalg;
pub mod partition;
pub mod ring;
pub mod symmetric;

pub use num_rational::BigRational;

pub use action::{UqGenerator, WeightVector};
pub use algebra::{Algebra, Element, GenIndex, Monomial};
pub use error::{Error, Result};
pub use partition::Partition;
pub use ring::{Coefficient, Field, LaurentPoly, RationalFunction, Scalar};
pub use symmetric::MultiPoly;
