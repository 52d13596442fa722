//! Truncated ladder representations of the deformed oscillator.
//!
//! On the basis `|0>, ..., |D-1>`:
//! `a|n> = sqrt([n]) |n-1>`, `a+|n> = sqrt([n+1]) |n+1>`, `N|n> = n|n>`,
//! `Delta = a+ a = diag([n])` and `Delta' = diag([n+1] - q[n])`.
//! Square roots are principal. Relation checks drop the top level, where
//! truncation cuts the ladder.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;

use crate::braid::json::matrix_to_json;
use crate::braid::CMatrix;
use crate::error::{Error, Result};
use crate::qcalc::{qnumber, sqrt_qfactorial, QParams, Scheme, C64};

pub const DEFAULT_DIM: usize = 16;

#[derive(Clone, Debug, PartialEq)]
pub struct FockRep {
    pub params: QParams,
    pub dim: usize,
    pub a: CMatrix,
    pub a_dag: CMatrix,
    pub number: CMatrix,
    pub delta: CMatrix,
    pub delta_prime: CMatrix,
    /// Levels where `[n]` came out real and negative.
    pub warnings: Vec<String>,
}

/// Builds the `dim`-level representation.
pub fn build_rep(params: &QParams, dim: usize) -> Result<FockRep> {
    if dim < 2 {
        return Err(Error::InvalidParameter(format!("truncation dimension must be at least 2, got {dim}")));
    }
    params.validate()?;
    let brackets: Vec<C64> = (0..=dim as u32).map(|n| qnumber(n, params)).collect::<Result<_>>()?;
    let mut warnings = Vec::new();
    for (n, b) in brackets.iter().enumerate().take(dim).skip(1) {
        if b.im == 0.0 && b.re < 0.0 {
            warnings.push(format!("[{n}] = {} is negative; principal square root is imaginary", b.re));
        }
    }
    let zero = C64::new(0.0, 0.0);
    let mut a = CMatrix::from_element(dim, dim, zero);
    let mut a_dag = CMatrix::from_element(dim, dim, zero);
    for n in 1..dim {
        let s = brackets[n].sqrt();
        a[(n - 1, n)] = s;
        a_dag[(n, n - 1)] = s;
    }
    let number = CMatrix::from_fn(dim, dim, |r, c| if r == c { C64::new(r as f64, 0.0) } else { zero });
    let delta = &a_dag * &a;
    let delta_prime =
        CMatrix::from_fn(dim, dim, |r, c| if r == c { brackets[r + 1] - params.q * brackets[r] } else { zero });
    Ok(FockRep { params: *params, dim, a, a_dag, number, delta, delta_prime, warnings })
}

impl FockRep {
    /// `(a+)^n |0>` as a coordinate vector.
    pub fn raised_vacuum(&self, n: usize) -> Vec<C64> {
        let mut v = vec![C64::new(0.0, 0.0); self.dim];
        v[0] = C64::new(1.0, 0.0);
        for _ in 0..n {
            let w = &self.a_dag * nalgebra::DVector::from_vec(v);
            v = w.iter().copied().collect();
        }
        v
    }

    /// `sqrt([n]!)`, the expected amplitude of `(a+)^n |0>` on `|n>`.
    pub fn ladder_norm(&self, n: usize) -> Result<C64> {
        sqrt_qfactorial(n as u32, &self.params)
    }

    pub fn to_json(&self) -> Value {
        serde_json::json!({
            "dim": self.dim,
            "a": matrix_to_json(&self.a),
            "a_dag": matrix_to_json(&self.a_dag),
            "N": matrix_to_json(&self.number),
            "delta": matrix_to_json(&self.delta),
            "delta_prime": matrix_to_json(&self.delta_prime),
            "warnings": self.warnings,
        })
    }
}

/// Max residual of each relation on levels `0..D-2`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AlgebraReport {
    pub residuals: BTreeMap<String, f64>,
}

impl AlgebraReport {
    pub fn max(&self) -> f64 {
        self.residuals.values().copied().fold(0.0, f64::max)
    }

    pub fn passes(&self, tol: f64) -> bool {
        self.max() <= tol
    }
}

fn interior_max(m: &CMatrix) -> f64 {
    let k = m.nrows().saturating_sub(1);
    let mut worst: f64 = 0.0;
    for r in 0..k {
        for c in 0..k {
            worst = worst.max(m[(r, c)].norm());
        }
    }
    worst
}

pub const REL_QMUTATOR: &str = "a a+ - q a+ a - Delta'";
pub const REL_DELTA_A: &str = "a Delta - q Delta a - Delta' a";
pub const REL_DELTA_ADAG: &str = "Delta a+ - q a+ Delta - a+ Delta'";
pub const REL_A_N: &str = "[a, N] - a";
pub const REL_ADAG_N: &str = "[a+, N] + a+";

/// Residuals of the oscillator relations, top level excluded.
pub fn verify_algebra(rep: &FockRep) -> AlgebraReport {
    verify_matrices(&rep.params, &rep.a, &rep.a_dag, &rep.number, &rep.delta, &rep.delta_prime)
}

/// Same checks on arbitrary matrices, for negative controls.
pub fn verify_matrices(
    params: &QParams,
    a: &CMatrix,
    a_dag: &CMatrix,
    number: &CMatrix,
    delta: &CMatrix,
    delta_prime: &CMatrix,
) -> AlgebraReport {
    let q = params.q;
    let mut residuals = BTreeMap::new();
    residuals.insert(REL_QMUTATOR.to_string(), interior_max(&(a * a_dag - a_dag * a * q - delta_prime)));
    residuals.insert(REL_DELTA_A.to_string(), interior_max(&(a * delta - delta * a * q - delta_prime * a)));
    residuals
        .insert(REL_DELTA_ADAG.to_string(), interior_max(&(delta * a_dag - a_dag * delta * q - a_dag * delta_prime)));
    residuals.insert(REL_A_N.to_string(), interior_max(&(a * number - number * a - a)));
    residuals.insert(REL_ADAG_N.to_string(), interior_max(&(a_dag * number - number * a_dag + a_dag)));
    AlgebraReport { residuals }
}

/// Parameters of the `k`-fermion: the symmetric bracket at `q = e^{2 pi i / k}`,
/// except `k = 2`, where that bracket degenerates and the one-parameter
/// bracket at `q = -1` (the ordinary fermion) is used.
pub fn kfermion_params(k: u32) -> Result<QParams> {
    match k {
        0 | 1 => Err(Error::InvalidParameter(format!("k must be at least 2, got {k}"))),
        2 => QParams::root_of_unity(Scheme::OneParam, 2),
        _ => QParams::root_of_unity(Scheme::Symmetric, k),
    }
}

fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// `max(|a^k|, |(a+)^k|)` for the `k`-fermion on `dim` levels.
pub fn nilpotency_residual(k: u32, dim: usize) -> Result<f64> {
    if dim < k as usize {
        return Err(Error::InvalidParameter(format!("need at least k = {k} levels, got {dim}")));
    }
    let rep = build_rep(&kfermion_params(k)?, dim)?;
    let mut ak = rep.a.clone();
    let mut adk = rep.a_dag.clone();
    for _ in 1..k {
        ak = &ak * &rep.a;
        adk = &adk * &rep.a_dag;
    }
    Ok(max_abs(&ak).max(max_abs(&adk)))
}

/// `max_n |[n + k] - [n]|` over `n <= n_max` for the `k`-fermion bracket.
pub fn periodicity_residual(k: u32, n_max: u32) -> Result<f64> {
    let params = kfermion_params(k)?;
    let mut worst: f64 = 0.0;
    for n in 0..=n_max {
        worst = worst.max((qnumber(n + k, &params)? - qnumber(n, &params)?).norm());
    }
    Ok(worst)
}
