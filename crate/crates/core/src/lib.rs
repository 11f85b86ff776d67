//! Exact and floating-point algebra on the Mumford phase space of
//! `2×2` traceless polynomial Lax matrices, and the stratification of its
//! invariant fibers by the degree of `gcd(u, v, w)`.

pub mod algebra;
pub mod conformance;
pub mod corpus;
pub mod dynamics;
pub mod error;
pub mod flow;
pub mod json;
pub mod linalg;
pub mod mumford;
pub mod resultants;
pub mod strata;

pub use algebra::{frac, int, BiPoly, Field, MPoly, Poly, Rational, Scalar, VarTable, C64, DEFAULT_EPS};
pub use error::{Error, Result};
pub use linalg::Matrix;
