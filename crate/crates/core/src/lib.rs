//! Deformed calculus, braided wedge products, noncommutative forms, quon
//! oscillators, their statistics and coherent states, each paired with a
//! residual check.
//!
//! ```
//! use qonkit::{qcalc::qnumber, QParams};
//!
//! let q = QParams::one_param(0.5);
//! assert!((qnumber(3, &q).unwrap().re - 1.75).abs() < 1e-15);
//! ```
//!
//! The guide in `book/` walks through each module.

// Tensor and exponent loops index several arrays at once.
#![allow(clippy::needless_range_loop)]

pub mod acceptance;
pub mod braid;
pub mod coherent;
pub mod error;
pub mod fock;
pub mod graded;
pub mod ncforms;
pub mod qcalc;
pub mod quonstat;
pub mod random;

pub use error::{Error, Result};
pub use qcalc::{QParams, Scheme, C64};
