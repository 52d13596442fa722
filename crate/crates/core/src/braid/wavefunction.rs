use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::qcalc::C64;

/// Tolerance for the exchange-factor consistency conditions.
pub const EXCHANGE_TOL: f64 = 1e-12;

/// A two-particle amplitude sampled on `grid x grid`.
#[derive(Clone, Debug, PartialEq)]
pub struct PairWavefunction {
    pub grid: Vec<f64>,
    /// `values[(a, b)] = psi(grid[a], grid[b])`.
    pub values: DMatrix<C64>,
}

impl PairWavefunction {
    /// `max |psi(x2, x1) - q(x2, x1) psi(x1, x2)|` over all grid pairs.
    pub fn exchange_residual(&self, qfun: impl Fn(f64, f64) -> C64) -> f64 {
        let n = self.grid.len();
        let mut worst: f64 = 0.0;
        for a in 0..n {
            for b in 0..n {
                let q = qfun(self.grid[b], self.grid[a]);
                worst = worst.max((self.values[(b, a)] - q * self.values[(a, b)]).norm());
            }
        }
        worst
    }
}

/// Checks `q(x, y) q(y, x) = 1` and `q(x, y) = conj(q(y, x))` on every grid pair.
pub fn check_exchange_factor(grid: &[f64], qfun: impl Fn(f64, f64) -> C64) -> Result<()> {
    for &x in grid {
        for &y in grid {
            let (a, b) = (qfun(x, y), qfun(y, x));
            let unit = (a * b - C64::new(1.0, 0.0)).norm();
            let herm = (a - b.conj()).norm();
            if unit > EXCHANGE_TOL || herm > EXCHANGE_TOL {
                return Err(Error::InconsistentExchange(format!(
                    "at (x, y) = ({x}, {y}): |q(x,y) q(y,x) - 1| = {unit:e}, |q(x,y) - conj q(y,x)| = {herm:e}"
                )));
            }
        }
    }
    Ok(())
}

/// `psi(x1, x2) = (f1(x1) f2(x2) + q(x1, x2) f2(x1) f1(x2)) / 2` on the grid.
pub fn two_particle_wavefunction(
    grid: &[f64],
    f1: &[C64],
    f2: &[C64],
    qfun: impl Fn(f64, f64) -> C64,
) -> Result<PairWavefunction> {
    if f1.len() != grid.len() || f2.len() != grid.len() {
        return Err(Error::DimensionMismatch(format!(
            "grid has {} points but the functions have {} and {} samples",
            grid.len(),
            f1.len(),
            f2.len()
        )));
    }
    check_exchange_factor(grid, &qfun)?;
    let n = grid.len();
    let values = DMatrix::from_fn(n, n, |a, b| 0.5 * (f1[a] * f2[b] + qfun(grid[a], grid[b]) * f2[a] * f1[b]));
    Ok(PairWavefunction { grid: grid.to_vec(), values })
}
