//! Scalars, univariate and multivariate polynomials.

pub mod bipoly;
pub mod field;
pub mod mpoly;
pub mod poly;

pub use bipoly::{divided_difference, formal_residue, BiPoly};
pub use field::{frac, int, Field, Rational, Scalar, C64, DEFAULT_EPS};
pub use mpoly::{MPoly, VarTable};
pub use poly::{lagrange_interpolate, squarefree_decomposition, Poly};
