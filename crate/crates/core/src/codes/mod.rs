//! Approximate error-correction conditions, the complexity floor they imply
//! for codeword pairs, a region classifier contrasting codes with branches,
//! and an analytic rectangular surface-code rate model.

mod region;
mod residuals;
mod surface;

pub use region::{classify_region, Region};
pub use residuals::{beny_oreshkov_residuals, code_complexity_floor, error_complexity, CodeSpec, ComplexityFloor, ResidualReport};
pub use surface::{surface_logical_rate, SurfaceCodeModel, SurfaceRate};

/// Residuals at or below this magnitude count as an exact pass.
pub const EXACT_TOL: f64 = 1e-12;
