//! The guide's chapters, one module each, so that `cargo test` runs every
//! snippet against the current library.

#[doc = include_str!("src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("src/deformed-numbers.md")]
pub mod deformed_numbers {}
#[doc = include_str!("src/wedge-products.md")]
pub mod wedge_products {}
#[doc = include_str!("src/forms.md")]
pub mod forms {}
#[doc = include_str!("src/oscillators.md")]
pub mod oscillators {}
#[doc = include_str!("src/coherent-states.md")]
pub mod coherent_states {}
#[doc = include_str!("src/statistics.md")]
pub mod statistics {}
#[doc = include_str!("src/graded.md")]
pub mod graded {}
#[doc = include_str!("src/cli.md")]
pub mod cli {}
#[doc = include_str!("src/report-format.md")]
pub mod report_format {}
#[doc = include_str!("../README.md")]
pub mod readme {}
