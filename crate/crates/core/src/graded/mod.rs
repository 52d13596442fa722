//! Exact `Z2`- and `Z3`-graded Grassmann algebras and the coherent states of
//! fermions and `k = 3` parafermions.
//!
//! Coefficients live in `Q(q)` with `q = e^{2 pi i / k}`, extended by an exact
//! `s = sqrt([2])`, `s^2 = 1 + q`; no floating point is involved. An element is
//! a sum of words `xibar^m xi^n |r><s|` with the variables in front. Variables
//! pass the matrix unit `|r><s|` with the phase `q^{r-s}`, which encodes
//! `xi a+ = q a+ xi` and `xibar a = q^2 a xibar`. How `xi` and `xibar` reorder is
//! a free choice, `xi xibar = r0 xibar xi` with `r0 = q^j`; [`resolution_scan`]
//! reports which `j` makes the resolution of unity work.
//!
//! Integration is `int dxibar dxi` with the inner integral over `xi`; `dxi` passes
//! `xibar` with phase `1 / r0`, so `int dxibar dxi xibar^{k-1} xi^{k-1} = r0^{1-k}`.
//!
//! ```
//! use qonkit::graded::{graded_resolution, closed_form_h, CyclotomicScalar};
//!
//! // k = 2, anticommuting variables, h = exp(-xibar xi) = 1 - xibar xi
//! let m = graded_resolution(2, 1, &closed_form_h(2).unwrap()).unwrap();
//! assert_eq!(m[0][0], CyclotomicScalar::one(2));
//! assert_eq!(m[1][1], CyclotomicScalar::one(2));
//! assert!(m[0][1].is_zero() && m[1][0].is_zero());
//! ```

mod cyclic;
mod element;
mod scalar;
mod states;
mod supercoherent;

pub use cyclic::CyclicElement;
pub use element::{berezin_integrate, graded_multiply, majid_integrate, GradedElement, Word};
pub use scalar::CyclotomicScalar;
pub use states::{
    build_graded_bra, build_graded_cs, closed_form_h, closed_form_overlap, displaced_vacuum,
    graded_cs_from_displacement, graded_overlap, graded_resolution, h_element, ket_coefficient, resolution_scan,
    solve_h, ConventionOutcome, HSolution, OperatorMatrix, OverlapReport,
};
pub use supercoherent::{supercoherent, SuperCoherentTable};
