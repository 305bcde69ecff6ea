//! Certificates for solvability of the identity component of the automorphism
//! group of a finite-dimensional local commutative algebra K[X1..Xn]/I, with
//! an independent derivation-Lie-algebra oracle for characteristic 0.

pub mod algebra;
pub mod certifier;
pub mod deroracle;
pub mod field;
pub mod groebner;
pub(crate) mod linalg;
pub mod poly;

pub use algebra::{AdmissiblePresentation, AlgebraError, IdealPresentation, QuotientAlgebra};
pub use certifier::{certify, CertReport, CertRule, SearchConfig, Verdict};
pub use deroracle::{cross_check, derivation_space, derived_series, CrossCheck};
pub use field::{FieldSpec, Scalar};
pub use groebner::GroebnerBasis;
pub use poly::{LinearChange, Monomial, Polynomial};
