use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::qcalc::C64;

/// Tolerance on `q_ij q_ji = 1`.
pub const CONSISTENCY_TOL: f64 = 1e-12;

/// Commutation data: `q[(i, j)]` for `i != j` and the bracket bases `p[i]`.
#[derive(Clone, Debug, PartialEq)]
pub struct NCParams {
    q: DMatrix<C64>,
    p: Vec<C64>,
}

impl NCParams {
    pub fn new(q: DMatrix<C64>, p: Vec<C64>) -> Result<Self> {
        let n = p.len();
        if n == 0 {
            return Err(Error::InvalidParameter("at least one coordinate is required".into()));
        }
        if q.nrows() != n || q.ncols() != n {
            return Err(Error::DimensionMismatch(format!(
                "q is {}x{} but there are {n} coordinates",
                q.nrows(),
                q.ncols()
            )));
        }
        if q.iter().chain(p.iter()).any(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(Error::InvalidParameter("parameters must be finite".into()));
        }
        for i in 0..n {
            for j in i + 1..n {
                let (a, b) = (q[(i, j)], q[(j, i)]);
                if a.norm() == 0.0 || b.norm() == 0.0 {
                    return Err(Error::InvalidParameter(format!("q[{i}][{j}] and q[{j}][{i}] must be nonzero")));
                }
                let miss = (a * b - C64::new(1.0, 0.0)).norm();
                if miss > CONSISTENCY_TOL {
                    return Err(Error::InconsistentExchange(format!(
                        "q[{i}][{j}] q[{j}][{i}] differs from 1 by {miss:e}"
                    )));
                }
            }
        }
        let mut q = q;
        for i in 0..n {
            q[(i, i)] = C64::new(1.0, 0.0);
        }
        Ok(Self { q, p })
    }

    /// All `q_ij = p_i = 1`.
    pub fn classical(n: usize) -> Result<Self> {
        Self::new(DMatrix::from_element(n, n, C64::new(1.0, 0.0)), vec![C64::new(1.0, 0.0); n])
    }

    /// `q_ij = e^{i theta[i][j]}` with `p_i = 1`; `theta` must be antisymmetric.
    pub fn phases(theta: &[Vec<f64>]) -> Result<Self> {
        let n = theta.len();
        let q = DMatrix::from_fn(n, n, |i, j| C64::from_polar(1.0, theta[i].get(j).copied().unwrap_or(f64::NAN)));
        Self::new(q, vec![C64::new(1.0, 0.0); n])
    }

    pub fn with_p(mut self, p: Vec<C64>) -> Result<Self> {
        if p.len() != self.p.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} bracket bases for {} coordinates",
                p.len(),
                self.p.len()
            )));
        }
        self.p = p;
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.p.len()
    }

    pub fn q(&self, i: usize, j: usize) -> C64 {
        self.q[(i, j)]
    }

    pub fn p(&self, i: usize) -> C64 {
        self.p[i]
    }

    pub fn q_matrix(&self) -> &DMatrix<C64> {
        &self.q
    }
}
