//! Deformed wedge products on tensor powers of a finite-dimensional space.
//!
//! # Index convention
//!
//! A [`LambdaMatrix`] over `V` with `dim V = d` stores `Lambda^{ij}_{kl}` at
//! `entries[(i*d + j, k*d + l)]`, all indices 0-based. Basis tensors of
//! `V^{(x)n}` are numbered row-major: `e_{t_1} (x) ... (x) e_{t_n}` has index
//! `t_1 d^{n-1} + ... + t_n`. [`lift`] places an operator on factors
//! `(i, i+1)` as `I_{d^{i-1}} (x) op (x) I_{d^{n-i-1}}`.
//!
//! Products act on coefficient rows: a tensor `t` is sent to `t^T O`. With this
//! choice the degree-two form product is
//! `s^i ^ s^j = s^i (x) s^j - Lambda^{ij}_{kl} s^k (x) s^l`.
//!
//! ```
//! use qonkit::braid::{deformed_wedge, LambdaMatrix, WedgeConvention};
//! use qonkit::C64;
//!
//! let p = LambdaMatrix::permutation(2);
//! let e0 = vec![C64::new(1.0, 0.0), C64::new(0.0, 0.0)];
//! let e1 = vec![C64::new(0.0, 0.0), C64::new(1.0, 0.0)];
//! let w = deformed_wedge(&[e0, e1], &p, WedgeConvention::FormMinus).unwrap();
//! assert_eq!(w[1], C64::new(1.0, 0.0));
//! assert_eq!(w[2], C64::new(-1.0, 0.0));
//! ```

pub mod json;
mod residual;
mod symmetrizer;
mod tensor;
mod wavefunction;
mod wedge;

pub use residual::{
    braid_residual, compatibility_residual, multiparametric_lambda, multiparametric_s, ybe_residual, SMatrix,
};
pub use symmetrizer::{
    inversions, permutation_operator, permutations, q_symmetrizer, q_symmetrizer_with_cap, SymmetrizerNorm,
    SYMMETRIZER_CAP,
};
pub use tensor::{
    digits, flat_index, lift, row_apply_lifted, tensor_product, CMatrix, LambdaMatrix, SparseVec, TensorOperator,
};
pub use wavefunction::{check_exchange_factor, two_particle_wavefunction, PairWavefunction, EXCHANGE_TOL};
pub use wedge::{
    deformed_wedge, deformed_wedge_tensor, form_minus_left, form_minus_right, quon_phase_of, reduced_word, stat_plus,
    wedge_operator, wedge_space_dimension, WedgeConvention, DENSE_CAP, FACTOR_CAP, RANK_CAP, RANK_TOL,
};
