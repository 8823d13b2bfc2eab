//! Elliptic problems on the periodic strip `𝕊¹ × (−∞, 0]`, truncated at depth `D`.

mod field;
mod forchheimer;
mod grid;
mod p1x;
mod poisson;

pub use field::{BoundaryField, StripField};
pub use forchheimer::{
    boundary_flux_g, boundary_flux_g_closed, forchheimer_source, neumann_data, GRADIENT_DEGENERACY,
};
pub use grid::{StripConfig, StripGrid};
pub use p1x::verify_p1x;
pub use poisson::{
    compute_b, harmonic_extension, solve_poisson_strip, solve_poisson_strip_with_tolerance, COMPATIBILITY_TOL,
    ROUGH_SOURCE_COMPATIBILITY_TOL, TRUNCATION_TOL,
};
