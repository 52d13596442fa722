//! Coherent states `|z> = sum_n z^n / sqrt([n]!) |n>` and their resolution of unity.
//!
//! Labels satisfy `|z|^2 < R`, where `R` is the convergence radius of the
//! deformed exponential. The resolution of unity is checked through radial
//! moments in `x = |z|^2`; the angular integral makes every off-diagonal
//! entry vanish exactly.

mod resolution;
mod state;

pub use resolution::{
    invert_weight_series, normalization_sq, resolution_check_jackson, weight_moment_check, weight_series,
    InversionEstimate, JacksonResolution, Measure, MomentResidual, WeightSeries, QUAD_TOL,
};
pub use state::{
    build_cs, build_cs_with_tol, coefficients, continuity_check, eigenstate_residual, normalization, overlap,
    overlap_closed_form, CoherentState, ContinuityCheck, EigenReport, AUTO_TAIL_TOL, FIXED_TAIL_TOL, MAX_AUTO_DIM,
};
