//! Exact computation of cores of ideals: the intersection of all minimal
//! reductions, for standard graded algebras and small one-dimensional local rings.

pub mod engine;
pub mod error;
pub mod field;
pub mod monomial;
mod parse;
pub mod graded;
pub mod groebner;
pub mod ideal;
pub mod linalg;
pub mod matrix;
pub mod module;
pub mod poly;
pub mod radical;
pub mod reduction;
pub mod report;
pub mod squarefree;

pub use error::{AlgebraError, Result};
pub use field::{Field, FieldSpec, PrimeField, Rationals};
pub use monomial::{Monomial, MonomialOrder};
pub use poly::{poly_arith, ArithOp, Poly, Ring};
pub use ideal::Ideal;
