//! Exact verification kernel for generalized complex structures on
//! `V ⊕ V*`, Courant brackets on `TM ⊕ T*M`, and the Nijenhuis tensors of
//! the twistor structures induced by a torsion-free connection.

pub mod courant;
pub mod error;
pub mod harness;
pub mod linalg;
pub mod matrix;
pub mod poly;
pub mod scalar;
pub mod twistor;

pub use error::{Error, Result};
pub use matrix::Matrix;
pub use scalar::{q, Dual, Field, Rational, Scalar};

/// Endomorphism of `V ⊕ V*` over exact rationals.
pub type Endo = Matrix<Rational>;
/// Element of `V ⊕ V*` over exact rationals.
pub type Element = linalg::GElement<Rational>;
/// Structure over exact rationals.
pub type Structure = linalg::GcStructure<Rational>;
