use std::collections::BTreeMap;

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::qcalc::C64;

pub type CMatrix = DMatrix<C64>;

/// Sparse coefficient vector over the basis of `V^{(x)n}`, keyed by flat index.
pub type SparseVec = BTreeMap<usize, C64>;

/// A `d^2 x d^2` matrix acting on `V (x) V`.
///
/// `entries[(i*d + j, k*d + l)]` is the coefficient written `Lambda^{ij}_{kl}`.
#[derive(Clone, Debug, PartialEq)]
pub struct LambdaMatrix {
    d: usize,
    entries: CMatrix,
    // nonzero entries of each row, cached for the row action
    rows: Vec<Vec<(usize, C64)>>,
}

impl LambdaMatrix {
    pub fn new(d: usize, entries: CMatrix) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidParameter("dimension d must be positive".into()));
        }
        if entries.nrows() != d * d || entries.ncols() != d * d {
            return Err(Error::DimensionMismatch(format!(
                "expected a {0}x{0} matrix for d = {d}, got {1}x{2}",
                d * d,
                entries.nrows(),
                entries.ncols()
            )));
        }
        if entries.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(Error::InvalidParameter("matrix entries must be finite".into()));
        }
        let rows = (0..d * d)
            .map(|r| {
                (0..d * d)
                    .filter_map(|c| {
                        let v = entries[(r, c)];
                        (v != C64::new(0.0, 0.0)).then_some((c, v))
                    })
                    .collect()
            })
            .collect();
        Ok(Self { d, entries, rows })
    }

    /// Builds the matrix from `f(i, j, k, l) = Lambda^{ij}_{kl}`.
    pub fn from_fn(d: usize, f: impl Fn(usize, usize, usize, usize) -> C64) -> Result<Self> {
        let m = CMatrix::from_fn(d * d, d * d, |r, c| f(r / d, r % d, c / d, c % d));
        Self::new(d, m)
    }

    pub fn identity(d: usize) -> Self {
        Self::new(d, CMatrix::identity(d * d, d * d)).expect("identity is well formed")
    }

    /// The flip `P^{ij}_{kl} = delta^i_l delta^j_k`.
    pub fn permutation(d: usize) -> Self {
        Self::from_fn(d, |i, j, k, l| if i == l && j == k { C64::new(1.0, 0.0) } else { C64::new(0.0, 0.0) })
            .expect("flip is well formed")
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn entries(&self) -> &CMatrix {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize, k: usize, l: usize) -> C64 {
        self.entries[(i * self.d + j, k * self.d + l)]
    }

    pub fn scaled(&self, c: C64) -> Self {
        Self::new(self.d, self.entries.map(|z| z * c)).expect("scaling keeps the shape")
    }

    /// Matrix product `self * other`.
    pub fn compose(&self, other: &LambdaMatrix) -> Result<Self> {
        if self.d != other.d {
            return Err(Error::DimensionMismatch(format!("d = {} vs d = {}", self.d, other.d)));
        }
        Self::new(self.d, &self.entries * &other.entries)
    }

    pub(crate) fn row(&self, r: usize) -> &[(usize, C64)] {
        &self.rows[r]
    }
}

/// A `d^n x d^n` operator on `V^{(x)n}`.
///
/// Basis tensors `e_{t_1} (x) ... (x) e_{t_n}` are indexed row-major,
/// `t_1 * d^{n-1} + ... + t_n`, all digits 0-based.
#[derive(Clone, Debug, PartialEq)]
pub struct TensorOperator {
    d: usize,
    n: usize,
    matrix: CMatrix,
}

impl TensorOperator {
    pub fn new(d: usize, n: usize, matrix: CMatrix) -> Result<Self> {
        let size = d.checked_pow(n as u32).ok_or_else(|| Error::CapExceeded("d^n overflows".into()))?;
        if matrix.nrows() != size || matrix.ncols() != size {
            return Err(Error::DimensionMismatch(format!(
                "expected {size}x{size} for d = {d}, n = {n}, got {}x{}",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        Ok(Self { d, n, matrix })
    }

    pub fn identity(d: usize, n: usize) -> Self {
        let size = d.pow(n as u32);
        Self { d, n, matrix: CMatrix::identity(size, size) }
    }

    pub fn zeros(d: usize, n: usize) -> Self {
        let size = d.pow(n as u32);
        Self { d, n, matrix: CMatrix::zeros(size, size) }
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMatrix {
        self.matrix
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.d != other.d || self.n != other.n {
            return Err(Error::DimensionMismatch(format!(
                "(d, n) = ({}, {}) vs ({}, {})",
                self.d, self.n, other.d, other.n
            )));
        }
        Ok(())
    }

    pub fn compose(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(Self { d: self.d, n: self.n, matrix: &self.matrix * &other.matrix })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(Self { d: self.d, n: self.n, matrix: &self.matrix + &other.matrix })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(Self { d: self.d, n: self.n, matrix: &self.matrix - &other.matrix })
    }

    pub fn scale(&self, c: C64) -> Self {
        Self { d: self.d, n: self.n, matrix: self.matrix.map(|z| z * c) }
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.matrix.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        Ok(self.sub(other)?.max_abs())
    }

    /// Builds the operator whose row `r` is `row_of(e_r)`.
    pub fn from_row_action(d: usize, n: usize, row_of: impl Fn(usize) -> SparseVec) -> Self {
        let size = d.pow(n as u32);
        let mut matrix = CMatrix::zeros(size, size);
        for r in 0..size {
            for (c, v) in row_of(r) {
                matrix[(r, c)] = v;
            }
        }
        Self { d, n, matrix }
    }
}

/// Embeds `op` on factors `(position, position + 1)` of `V^{(x)n}`, 1-based.
pub fn lift(op: &LambdaMatrix, position: usize, n: usize) -> Result<TensorOperator> {
    check_position(position, n)?;
    let d = op.d();
    let left = CMatrix::identity(d.pow(position as u32 - 1), d.pow(position as u32 - 1));
    let right_dim = d.pow((n - position - 1) as u32);
    let right = CMatrix::identity(right_dim, right_dim);
    let m = left.kronecker(op.entries()).kronecker(&right);
    TensorOperator::new(d, n, m)
}

fn check_position(position: usize, n: usize) -> Result<()> {
    if n < 2 || position < 1 || position > n - 1 {
        return Err(Error::OutOfRange(format!(
            "position {position} is not in 1..={} for n = {n}",
            n.saturating_sub(1)
        )));
    }
    Ok(())
}

/// Row action `v -> v * lift(op, position, n)`.
pub fn row_apply_lifted(v: &SparseVec, op: &LambdaMatrix, position: usize, n: usize) -> SparseVec {
    let d = op.d();
    let inner = d.pow((n - position - 1) as u32);
    let dd = d * d;
    let mut out = SparseVec::new();
    for (&r, &coef) in v {
        let ab = (r / inner) % dd;
        let base = r - ab * inner;
        for &(c, lam) in op.row(ab) {
            *out.entry(base + c * inner).or_insert(C64::new(0.0, 0.0)) += coef * lam;
        }
    }
    out.retain(|_, z| *z != C64::new(0.0, 0.0));
    out
}

pub(crate) fn sparse_add_scaled(acc: &mut SparseVec, v: &SparseVec, c: C64) {
    for (&k, &z) in v {
        *acc.entry(k).or_insert(C64::new(0.0, 0.0)) += z * c;
    }
}

pub(crate) fn basis_vec(index: usize) -> SparseVec {
    let mut v = SparseVec::new();
    v.insert(index, C64::new(1.0, 0.0));
    v
}

/// Flat index of the digit tuple `t` in base `d`.
pub fn flat_index(t: &[usize], d: usize) -> usize {
    t.iter().fold(0, |acc, &x| acc * d + x)
}

/// Digit tuple of the flat index `r` for `n` factors in base `d`.
pub fn digits(mut r: usize, d: usize, n: usize) -> Vec<usize> {
    let mut t = vec![0; n];
    for slot in t.iter_mut().rev() {
        *slot = r % d;
        r /= d;
    }
    t
}

/// `f_1 (x) ... (x) f_n` for coordinate vectors of equal length `d`.
pub fn tensor_product(factors: &[Vec<C64>]) -> Result<(usize, Vec<C64>)> {
    let first = factors.first().ok_or_else(|| Error::InvalidParameter("at least one factor is required".into()))?;
    let d = first.len();
    if d == 0 {
        return Err(Error::InvalidParameter("factors must be nonempty vectors".into()));
    }
    let mut acc = vec![C64::new(1.0, 0.0)];
    for f in factors {
        if f.len() != d {
            return Err(Error::DimensionMismatch(format!("factor of length {} in a product over d = {d}", f.len())));
        }
        acc = acc.iter().flat_map(|a| f.iter().map(move |b| a * b)).collect();
    }
    Ok((d, acc))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lifting_the_identity_gives_the_identity() {
        let id = LambdaMatrix::identity(2);
        for n in 2..=4 {
            for i in 1..n {
                assert_eq!(lift(&id, i, n).unwrap(), TensorOperator::identity(2, n));
            }
        }
    }

    #[test]
    fn lifted_flip_swaps_the_first_two_factors() {
        let p = lift(&LambdaMatrix::permutation(2), 1, 3).unwrap();
        for a in 0..2 {
            for b in 0..2 {
                for c in 0..2 {
                    let src = flat_index(&[a, b, c], 2);
                    let dst = flat_index(&[b, a, c], 2);
                    let col = p.matrix().column(src);
                    for r in 0..8 {
                        let want = if r == dst { 1.0 } else { 0.0 };
                        assert_eq!(col[r], C64::new(want, 0.0));
                    }
                }
            }
        }
    }

    #[test]
    fn position_out_of_range_is_rejected() {
        let p = LambdaMatrix::permutation(2);
        assert!(matches!(lift(&p, 0, 3), Err(Error::OutOfRange(_))));
        assert!(matches!(lift(&p, 3, 3), Err(Error::OutOfRange(_))));
    }

    #[test]
    fn row_action_agrees_with_the_dense_lift() {
        let d = 2;
        let lam = LambdaMatrix::from_fn(d, |i, j, k, l| C64::new((i + 2 * j) as f64 - 0.5 * k as f64, l as f64 * 0.25))
            .unwrap();
        for pos in 1..=2 {
            let dense = lift(&lam, pos, 3).unwrap();
            for r in 0..8 {
                let row = row_apply_lifted(&basis_vec(r), &lam, pos, 3);
                for c in 0..8 {
                    let got = row.get(&c).copied().unwrap_or_default();
                    assert!((got - dense.matrix()[(r, c)]).norm() < 1e-15);
                }
            }
        }
    }

    #[test]
    fn bad_shapes_are_rejected() {
        assert!(LambdaMatrix::new(2, CMatrix::zeros(3, 3)).is_err());
        assert!(TensorOperator::new(2, 2, CMatrix::zeros(3, 3)).is_err());
        let a = TensorOperator::identity(2, 2);
        let b = TensorOperator::identity(2, 3);
        assert!(a.compose(&b).is_err());
    }
}
