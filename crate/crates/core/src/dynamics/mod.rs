//! Lax vector fields, Poisson structures, and their compatibility with `μ_P`.

pub mod lax;
pub mod poisson;
pub mod pushforward;

pub use lax::{
    formal_lax_field, lax_field_at, lax_field_i, mumford_vars, sigma_float, sigma_of_matrix, symbolic_field,
    symbolic_moment_map, SymbolicField, TangentValue,
};
pub use poisson::{mu_x_check, BracketKind, Coord, Letter, MuXReport, PoissonStructure};
pub use pushforward::{pushforward_identity_check, PushforwardReport};
