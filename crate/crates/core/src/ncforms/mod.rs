//! Noncommuting coordinates `x^1..x^n` with `x^i x^j = q_ij x^j x^i`, their
//! deformed partial derivatives, and an exterior derivative with `d^2 = 0`.
//!
//! Coordinates are numbered from 0 in code. Polynomials are kept in canonical
//! order `x_0^{m_0} x_1^{m_1} ...`; forms are stored basis-first,
//! `sum_I dx^I w_I` with `I` strictly increasing.
//!
//! ```
//! use qonkit::ncforms::{exterior_d, NCForm, NCParams, NCPolynomial};
//! use qonkit::C64;
//!
//! let params = NCParams::phases(&[vec![0.0, 0.4], vec![-0.4, 0.0]]).unwrap();
//! let f = NCPolynomial::monomial(&params, &[1, 1], C64::new(1.0, 0.0)).unwrap();
//! let ddf = exterior_d(&exterior_d(&NCForm::function(f)));
//! assert!(ddf.max_abs() < 1e-12);
//! ```

mod form;
mod params;
mod poly;

pub use form::{canonical_dx, exterior_d, NCForm};
pub use params::{NCParams, CONSISTENCY_TOL};
pub use poly::{nc_partial, normal_order, normal_order_by_swaps, NCPolynomial};
