//! Seeded random instances for property checks and the acceptance suite.
//!
//! Every generator draws from a [`ChaCha8Rng`], so a seed reproduces the same
//! instances on every platform.

use std::f64::consts::PI;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::braid::{multiparametric_lambda, multiparametric_s, CMatrix, LambdaMatrix, SMatrix};
use crate::error::Result;
use crate::graded::{CyclotomicScalar, GradedElement, Word};
use crate::ncforms::{NCForm, NCParams, NCPolynomial};
use crate::qcalc::{QParams, C64};

pub type Rng64 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng64 {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn unimodular(rng: &mut Rng64) -> C64 {
    C64::from_polar(1.0, rng.gen_range(-PI..PI))
}

/// Entries with real and imaginary parts uniform in `[-1, 1)`.
pub fn complex(rng: &mut Rng64) -> C64 {
    C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

pub fn complex_vec(rng: &mut Rng64, len: usize) -> Vec<C64> {
    (0..len).map(|_| complex(rng)).collect()
}

pub fn complex_matrix(rng: &mut Rng64, rows: usize, cols: usize) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| complex(rng))
}

/// Exchange table with unimodular `q_ij` and `q_ji = conj(q_ij)`; diagonal 1.
pub fn exchange_table(rng: &mut Rng64, d: usize) -> CMatrix {
    let mut q = CMatrix::from_element(d, d, C64::new(1.0, 0.0));
    for i in 0..d {
        for j in i + 1..d {
            let z = unimodular(rng);
            q[(i, j)] = z;
            q[(j, i)] = z.conj();
        }
    }
    q
}

/// A multiparametric `Lambda` and its companion `S` with `p_i = 1`.
pub fn multiparametric_pair(rng: &mut Rng64, d: usize) -> Result<(LambdaMatrix, SMatrix)> {
    let q = exchange_table(rng, d);
    let lambda = multiparametric_lambda(d, &q)?;
    let s = multiparametric_s(d, &vec![C64::new(1.0, 0.0); d], &q)?;
    Ok((lambda, s))
}

/// A braid solution: a multiparametric `Lambda` (or `P`) conjugated by `A (x) A`
/// for a random well-conditioned `A`, times a random unimodular scalar.
pub fn braid_solution(rng: &mut Rng64, d: usize) -> Result<LambdaMatrix> {
    let base = if rng.gen_bool(0.8) {
        multiparametric_lambda(d, &exchange_table(rng, d))?
    } else {
        LambdaMatrix::permutation(d)
    };
    // identity plus a small perturbation keeps A invertible and well conditioned
    let a = CMatrix::identity(d, d) + complex_matrix(rng, d, d) * C64::new(0.3 / d as f64, 0.0);
    let a_inv = a.clone().try_inverse().expect("near-identity matrix is invertible");
    let aa = a.kronecker(&a);
    let aa_inv = a_inv.kronecker(&a_inv);
    let entries = &aa * base.entries() * &aa_inv * unimodular(rng);
    LambdaMatrix::new(d, entries)
}

/// A dense random `Lambda`, generically not a braid solution.
pub fn dense_lambda(rng: &mut Rng64, d: usize) -> Result<LambdaMatrix> {
    LambdaMatrix::new(d, complex_matrix(rng, d * d, d * d))
}

/// Commutation parameters `q_ij = e^{i theta_ij}`, `theta_ji = -theta_ij`, with `p_i = 1`.
pub fn nc_phases(rng: &mut Rng64, n: usize) -> Result<NCParams> {
    let mut theta = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let t = rng.gen_range(-PI..PI);
            theta[i][j] = t;
            theta[j][i] = -t;
        }
    }
    NCParams::phases(&theta)
}

/// Polynomial with up to `terms` monomials of total degree at most `max_degree`.
pub fn nc_polynomial(rng: &mut Rng64, params: &NCParams, terms: usize, max_degree: u32) -> Result<NCPolynomial> {
    let n = params.n();
    let mut out = Vec::with_capacity(terms);
    for _ in 0..terms {
        let mut e = vec![0u32; n];
        for _ in 0..rng.gen_range(0..=max_degree) {
            e[rng.gen_range(0..n)] += 1;
        }
        out.push((e, complex(rng)));
    }
    NCPolynomial::from_terms(params, out)
}

/// A word in `n` letters of length at most `max_len`.
pub fn nc_word(rng: &mut Rng64, n: usize, max_len: usize) -> Vec<usize> {
    let len = rng.gen_range(0..=max_len);
    (0..len).map(|_| rng.gen_range(0..n)).collect()
}

/// Form of the given degree with random components.
pub fn nc_form(rng: &mut Rng64, params: &NCParams, degree: usize) -> Result<NCForm> {
    let n = params.n();
    if degree == 0 {
        return Ok(NCForm::function(nc_polynomial(rng, params, 4, 3)?));
    }
    let mut form = NCForm::zero(params, degree);
    for _ in 0..3 {
        let idx: Vec<usize> = (0..degree).map(|_| rng.gen_range(0..n)).collect();
        form.add_component(&idx, &nc_polynomial(rng, params, 3, 3)?)?;
    }
    Ok(form)
}

/// One-parameter `q` uniform in `[0.1, 0.95]`.
pub fn one_param(rng: &mut Rng64) -> QParams {
    QParams::one_param(rng.gen_range(0.1..0.95))
}

/// Two-parameter `(q, p)` with `q` in `[0.2, 0.95]`, `p` in `[0.5, 1.5]`.
pub fn two_param(rng: &mut Rng64) -> QParams {
    QParams::two_param(rng.gen_range(0.2..0.95), rng.gen_range(0.5..1.5))
}

/// A single graded word with a small integer coefficient.
pub fn graded_word(rng: &mut Rng64, k: u32, reorder: u32) -> GradedElement {
    let w = Word::new(rng.gen_range(0..k), rng.gen_range(0..k), rng.gen_range(0..k), rng.gen_range(0..k));
    let c = if k == 2 {
        CyclotomicScalar::from_int(2, rng.gen_range(-3..=3))
    } else {
        CyclotomicScalar::from_coords(3, [0; 4].map(|_: i64| rng.gen_range(-3..=3))).expect("k = 3")
    };
    GradedElement::term(k, reorder, w, c).expect("valid word")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::{braid_residual, ybe_residual};

    #[test]
    fn seeds_reproduce() {
        let a = complex_vec(&mut rng(7), 5);
        let b = complex_vec(&mut rng(7), 5);
        assert_eq!(a, b);
        assert_ne!(a, complex_vec(&mut rng(8), 5));
    }

    #[test]
    fn conjugated_solutions_stay_solutions() {
        let mut r = rng(1);
        for d in 2..=3 {
            let lam = braid_solution(&mut r, d).unwrap();
            assert!(braid_residual(&lam) < 1e-12);
            assert!(ybe_residual(&lam) < 1e-12);
        }
        assert!(braid_residual(&dense_lambda(&mut r, 2).unwrap()) > 1e-3);
    }
}
