use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qcalc::C64;

use super::tensor::{digits, flat_index, CMatrix, TensorOperator};
use super::wedge::DENSE_CAP;

/// Default largest `n` for [`q_symmetrizer`].
pub const SYMMETRIZER_CAP: usize = 7;

/// Overall prefactor of `Q_n`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SymmetrizerNorm {
    None,
    /// `1/n!`, which makes `Q_n` a projector at `q = +-1`.
    #[default]
    InverseFactorial,
    InverseSqrtFactorial,
    /// `1/sqrt(n)`.
    InverseSqrtN,
}

impl SymmetrizerNorm {
    pub fn factor(self, n: usize) -> f64 {
        let fact: f64 = (1..=n).map(|k| k as f64).product();
        match self {
            SymmetrizerNorm::None => 1.0,
            SymmetrizerNorm::InverseFactorial => 1.0 / fact,
            SymmetrizerNorm::InverseSqrtFactorial => 1.0 / fact.sqrt(),
            SymmetrizerNorm::InverseSqrtN => 1.0 / (n as f64).sqrt(),
        }
    }
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        out.push(p.clone());
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).expect("a larger element exists");
        p.swap(i - 1, j);
        p[i..].reverse();
    }
}

/// Coxeter length: the number of inversions.
pub fn inversions(perm: &[usize]) -> usize {
    (0..perm.len()).map(|i| (i + 1..perm.len()).filter(|&j| perm[i] > perm[j]).count()).sum()
}

/// Permutation operator sending `e_{t_1} (x) ... (x) e_{t_n}` to `e_{t_{perm(1)}} (x) ... (x) e_{t_{perm(n)}}`
/// under the row action.
pub fn permutation_operator(d: usize, perm: &[usize]) -> Result<TensorOperator> {
    let n = perm.len();
    let size = dense_size(d, n)?;
    let mut m = CMatrix::zeros(size, size);
    for r in 0..size {
        let t = digits(r, d, n);
        let s: Vec<usize> = perm.iter().map(|&k| t[k]).collect();
        m[(r, flat_index(&s, d))] = C64::new(1.0, 0.0);
    }
    TensorOperator::new(d, n, m)
}

fn dense_size(d: usize, n: usize) -> Result<usize> {
    d.checked_pow(n as u32)
        .filter(|s| *s <= DENSE_CAP)
        .ok_or_else(|| Error::CapExceeded(format!("d^n for d = {d}, n = {n} exceeds the dense cap of {DENSE_CAP}")))
}

/// `Q_n = norm(n) * sum over S_n of q^{m(P)} P` on `V^{(x)n}` with `dim V = d`.
pub fn q_symmetrizer(n: usize, q: C64, d: usize, norm: SymmetrizerNorm) -> Result<TensorOperator> {
    q_symmetrizer_with_cap(n, q, d, norm, SYMMETRIZER_CAP)
}

pub fn q_symmetrizer_with_cap(n: usize, q: C64, d: usize, norm: SymmetrizerNorm, cap: usize) -> Result<TensorOperator> {
    if n > cap {
        return Err(Error::CapExceeded(format!("n = {n} exceeds the symmetrizer cap of {cap}")));
    }
    if n == 0 || d == 0 {
        return Err(Error::InvalidParameter("n and d must be positive".into()));
    }
    let size = dense_size(d, n)?;
    let mut m = CMatrix::zeros(size, size);
    let scale = norm.factor(n);
    for perm in permutations(n) {
        let coef = q.powu(inversions(&perm) as u32) * scale;
        for r in 0..size {
            let t = digits(r, d, n);
            let s: Vec<usize> = perm.iter().map(|&k| t[k]).collect();
            m[(r, flat_index(&s, d))] += coef;
        }
    }
    TensorOperator::new(d, n, m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::tensor::{lift, LambdaMatrix};

    #[test]
    fn permutation_counts() {
        assert_eq!(permutations(0).len(), 1);
        assert_eq!(permutations(4).len(), 24);
        let p = permutations(3);
        assert_eq!(p[0], vec![0, 1, 2]);
        assert_eq!(p[5], vec![2, 1, 0]);
        assert_eq!(inversions(&p[5]), 3);
    }

    #[test]
    fn unnormalized_three_term_expansion() {
        let q = C64::new(0.6, -0.2);
        let d = 2;
        let flip = LambdaMatrix::permutation(d);
        let p12 = lift(&flip, 1, 3).unwrap().into_matrix();
        let p23 = lift(&flip, 2, 3).unwrap().into_matrix();
        let id = CMatrix::identity(8, 8);
        let want = &id + (&p12 + &p23) * q + (&p12 * &p23 + &p23 * &p12) * q * q + &p23 * &p12 * &p23 * q * q * q;
        let got = q_symmetrizer(3, q, d, SymmetrizerNorm::None).unwrap();
        let diff = (got.matrix() - want).iter().map(|z| z.norm()).fold(0.0, f64::max);
        assert!(diff < 1e-15);
    }

    #[test]
    fn classical_points_give_projectors() {
        for q in [1.0, -1.0] {
            let s = q_symmetrizer(3, C64::new(q, 0.0), 2, SymmetrizerNorm::InverseFactorial).unwrap();
            let sq = s.compose(&s).unwrap();
            assert!(sq.max_abs_diff(&s).unwrap() < 1e-12);
        }
    }

    #[test]
    fn cap_is_enforced() {
        let err = q_symmetrizer(8, C64::new(1.0, 0.0), 1, SymmetrizerNorm::None).unwrap_err();
        assert!(matches!(err, Error::CapExceeded(_)));
    }
}
