//! Ideal quon gas: single-mode partition functions and occupation numbers.
//!
//! A mode carries `eta = beta (E - mu)` and a deformation `q`. With a
//! root-of-unity order `k` the mode holds at most `k - 1` quanta, so its
//! partition function is a finite geometric sum; without `k` it is the
//! bosonic one. The occupation `1 / (e^eta - q)` is complex for complex `q`.
//!
//! ```
//! use qonkit::quonstat::{occupation, ModeSpec};
//!
//! let fermi = occupation(&ModeSpec::quon(1.0, -1.0).unwrap()).unwrap();
//! assert!((fermi.re - 1.0 / (1f64.exp() + 1.0)).abs() < 1e-15);
//! ```

use serde::Serialize;

use crate::error::{Error, Result};
use crate::qcalc::{root_of_unity, SeriesSum, C64, DEFAULT_TOL};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ModeSpec {
    pub eta: f64,
    pub k: Option<u32>,
    pub q: C64,
}

impl ModeSpec {
    /// A mode with `q = e^{2 pi i / k}`.
    pub fn kfermion(eta: f64, k: u32) -> Result<Self> {
        let spec = Self { eta, k: Some(k), q: if k >= 2 { root_of_unity(k, 1) } else { C64::new(0.0, 0.0) } };
        spec.validate()?;
        Ok(spec)
    }

    /// A mode with an unrestricted Fock space and `|q| <= 1`.
    pub fn quon(eta: f64, q: impl Into<C64>) -> Result<Self> {
        let spec = Self { eta, k: None, q: q.into() };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.eta.is_nan() || self.eta <= 0.0 {
            return Err(Error::InvalidParameter(format!("eta must be positive, got {}", self.eta)));
        }
        if !(self.q.re.is_finite() && self.q.im.is_finite()) || self.q.norm() > 1.0 + 1e-12 {
            return Err(Error::InvalidParameter(format!("need |q| <= 1, got {}", self.q)));
        }
        if let Some(k) = self.k {
            if k < 2 {
                return Err(Error::InvalidParameter(format!("k must be at least 2, got {k}")));
            }
            if (self.q - root_of_unity(k, 1)).norm() > DEFAULT_TOL {
                return Err(Error::InvalidParameter(format!("q = {} is not e^(2 pi i / {k})", self.q)));
            }
        }
        Ok(())
    }

    /// `q^n`, exact on the angle when `k` is set.
    fn q_pow(&self, n: u32) -> C64 {
        match self.k {
            Some(k) => root_of_unity(k, n as i64),
            None => self.q.powu(n),
        }
    }
}

/// `(1 - e^{-eta k}) / (1 - e^{-eta})` with `k`, `1 / (1 - e^{-eta})` without.
pub fn partition_mode(spec: &ModeSpec) -> Result<f64> {
    spec.validate()?;
    let x = (-spec.eta).exp();
    Ok(match spec.k {
        Some(k) => (1.0 - x.powi(k as i32)) / (1.0 - x),
        None => 1.0 / (1.0 - x),
    })
}

/// `1 / (e^eta - q)`.
pub fn occupation(spec: &ModeSpec) -> Result<C64> {
    spec.validate()?;
    let x = (-spec.eta).exp();
    if spec.k.is_none() && spec.q.norm() * x >= 1.0 {
        return Err(Error::Divergence { modulus: spec.q.norm() * x, radius: 1.0 });
    }
    // x / (1 - q x) avoids overflow of e^eta
    let denom = C64::new(1.0, 0.0) - spec.q * x;
    if denom.norm() < f64::EPSILON {
        return Err(Error::SingularPoint(format!("e^eta = q at eta = {}", spec.eta)));
    }
    Ok(C64::new(x, 0.0) / denom)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FiniteSumComparison {
    /// `(1/Z) sum_{n<k} [n] e^{-eta n}` with `[n] = (q^n - 1)/(q - 1)`.
    pub finite_sum: C64,
    pub closed_form: C64,
    pub difference: f64,
}

pub fn occupation_finite_sum(spec: &ModeSpec) -> Result<FiniteSumComparison> {
    spec.validate()?;
    let k = spec.k.ok_or_else(|| Error::InvalidParameter("the finite sum needs a root-of-unity order k".into()))?;
    let x = (-spec.eta).exp();
    let qm1 = spec.q - 1.0;
    let mut sum = C64::new(0.0, 0.0);
    for n in 1..k {
        let bracket = (spec.q_pow(n) - 1.0) / qm1;
        sum += bracket * x.powi(n as i32);
    }
    let finite_sum = sum / partition_mode(spec)?;
    let closed_form = occupation(spec)?;
    Ok(FiniteSumComparison { finite_sum, closed_form, difference: (finite_sum - closed_form).norm() })
}

/// `sum_{j < terms} e^{-eta (j+1)} q^j` with its geometric tail bound.
pub fn occupation_series(spec: &ModeSpec, terms: usize) -> Result<SeriesSum> {
    spec.validate()?;
    let x = (-spec.eta).exp();
    let ratio = spec.q.norm() * x;
    if ratio >= 1.0 {
        return Err(Error::Divergence { modulus: ratio, radius: 1.0 });
    }
    let mut value = C64::new(0.0, 0.0);
    let mut term = C64::new(x, 0.0);
    for _ in 0..terms {
        value += term;
        term *= spec.q * x;
    }
    Ok(SeriesSum { value, tail_bound: term.norm() / (1.0 - ratio), terms })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GasRow {
    pub eta: f64,
    pub k: Option<u32>,
    pub partition: f64,
    pub occupation: C64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GasTable {
    pub rows: Vec<GasRow>,
    /// Product of the mode partition functions.
    pub partition_total: f64,
}

pub fn gas_scan(modes: &[ModeSpec]) -> Result<GasTable> {
    let rows = modes
        .iter()
        .map(|m| Ok(GasRow { eta: m.eta, k: m.k, partition: partition_mode(m)?, occupation: occupation(m)? }))
        .collect::<Result<Vec<_>>>()?;
    let partition_total = rows.iter().map(|r| r.partition).product();
    Ok(GasTable { rows, partition_total })
}

#[cfg(test)]
mod tests {
    use super::*;

    const E: f64 = std::f64::consts::E;

    #[test]
    fn partition_examples() {
        let z = partition_mode(&ModeSpec::kfermion(1.0, 2).unwrap()).unwrap();
        assert!((z - (1.0 + (-1f64).exp())).abs() < 1e-15);
        assert!((z - 1.367879).abs() < 1e-6);
        let z200 = partition_mode(&ModeSpec::kfermion(1.0, 200).unwrap()).unwrap();
        let bose = partition_mode(&ModeSpec::quon(1.0, 1.0).unwrap()).unwrap();
        assert!((z200 - bose).abs() < 1e-8);
        assert_eq!(partition_mode(&ModeSpec::kfermion(f64::INFINITY, 3).unwrap()).unwrap(), 1.0);
        assert!(partition_mode(&ModeSpec { eta: 0.0, k: None, q: C64::new(0.5, 0.0) }).is_err());
    }

    #[test]
    fn occupation_limits() {
        let fd = occupation(&ModeSpec::quon(1.0, -1.0).unwrap()).unwrap();
        assert!((fd.re - 1.0 / (E + 1.0)).abs() < 1e-15);
        let be = occupation(&ModeSpec::quon(1.0, 1.0).unwrap()).unwrap();
        assert!((be.re - 1.0 / (E - 1.0)).abs() < 1e-15);
        let boltz = occupation(&ModeSpec::quon(1.0, 0.0).unwrap()).unwrap();
        assert!((boltz.re - (-1f64).exp()).abs() < 1e-16);
    }

    #[test]
    fn finite_sum_matches_closed_form() {
        let c = occupation_finite_sum(&ModeSpec::kfermion(1.0, 2).unwrap()).unwrap();
        assert!((c.finite_sum.re - 1.0 / (E + 1.0)).abs() < 1e-15);
        let c = occupation_finite_sum(&ModeSpec::kfermion(0.7, 3).unwrap()).unwrap();
        assert!(c.difference < 1e-12);
        let c = occupation_finite_sum(&ModeSpec::kfermion(f64::INFINITY, 4).unwrap()).unwrap();
        assert_eq!(c.finite_sum, C64::new(0.0, 0.0));
    }

    #[test]
    fn series_examples() {
        let s = occupation_series(&ModeSpec::quon(1.0, 1.0).unwrap(), 60).unwrap();
        assert!((s.value.re - 1.0 / (E - 1.0)).abs() < 1e-10);
        let s = occupation_series(&ModeSpec::quon(1.0, -1.0).unwrap(), 60).unwrap();
        assert!((s.value.re - 1.0 / (E + 1.0)).abs() < 1e-10);
        let spec = ModeSpec::quon(0.2, 0.5).unwrap();
        let s = occupation_series(&spec, 30).unwrap();
        let exact = occupation(&spec).unwrap();
        assert!((s.value - exact).norm() <= s.tail_bound * (1.0 + 1e-12));
        assert!(s.tail_bound > 0.0);
    }

    #[test]
    fn product_structure() {
        let m = ModeSpec::kfermion(0.8, 3).unwrap();
        let t = gas_scan(&[m, m]).unwrap();
        let z = partition_mode(&m).unwrap();
        assert!((t.partition_total - z * z).abs() < 1e-15);
        assert_eq!(t.rows[0].occupation, occupation(&m).unwrap());
    }
}
