use serde::Serialize;

use crate::error::{Error, Result};
use crate::qcalc::{abs_qfactorial, jackson_integral, qexp_reciprocal_product, QParams, Scheme, C64};

use super::state::{coefficients, normalization};

/// Per-level diagonal of the assembled resolution operator.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct JacksonResolution {
    /// `M_nn` for `n < sub_dim`.
    pub diagonal: Vec<f64>,
    /// `max_n |M_nn - 1|`; off-diagonal entries vanish by the angular integral.
    pub residual: f64,
    pub sub_dim: usize,
}

fn jackson_q(params: &QParams) -> Result<f64> {
    let ok = params.scheme == Scheme::OneParam && params.q.im == 0.0 && params.q.re > 0.0 && params.q.re < 1.0;
    if !ok {
        return Err(Error::ConventionMismatch(
            "the Jackson resolution needs the one-parameter scheme with real 0 < q < 1".into(),
        ));
    }
    Ok(params.q.re)
}

/// Assembles `M = int_0^{R} d_q x |z><z| / exp_q(q x)` with `x = |z|^2` on the
/// Jackson nodes `x_k = R q^k`, level by level from the state coefficients.
pub fn resolution_check_jackson(params: &QParams, dim: usize, sub_dim: usize, tol: f64) -> Result<JacksonResolution> {
    let q = jackson_q(params)?;
    if sub_dim == 0 || sub_dim > dim {
        return Err(Error::InvalidParameter(format!("need 0 < sub_dim <= dim, got {sub_dim} and {dim}")));
    }
    let r = 1.0 / (1.0 - q);
    let qc = C64::new(q, 0.0);
    let mut diagonal = Vec::with_capacity(sub_dim);
    for n in 0..sub_dim {
        let level = |x: f64| {
            let z = C64::new(x.sqrt(), 0.0);
            let c = coefficients(params, z, n + 1).expect("brackets are nonzero for 0 < q < 1")[n];
            let weight = qexp_reciprocal_product(C64::new(q * x, 0.0), qc).expect("0 < q < 1");
            weight * c.norm_sqr()
        };
        diagonal.push(jackson_integral(level, r, q, tol)?.value.re);
    }
    let residual = diagonal.iter().map(|m| (m - 1.0).abs()).fold(0.0, f64::max);
    Ok(JacksonResolution { diagonal, residual, sub_dim })
}

/// A candidate measure for the resolution of unity in the variable `x = |z|^2`.
pub enum Measure<'a> {
    /// `W(x) dx` on `(0, upper)`; `upper` may be infinite.
    Density { w: &'a dyn Fn(f64) -> f64, upper: f64 },
    /// The Jackson measure on nodes `upper q^k`, with the normalization folded in.
    JacksonAtoms { q: f64, upper: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MomentResidual {
    pub n: usize,
    /// `pi int x^n N^2(x) W(x) dx`
    pub moment: f64,
    /// `|[n]|!`
    pub target: f64,
    pub residual: f64,
}

/// Quadrature accuracy target for density moments.
pub const QUAD_TOL: f64 = 1e-12;

/// `N^2(x) = 1 / exp_q(x)` (type 2); the ordinary exponential when undeformed.
pub fn normalization_sq(params: &QParams, x: f64) -> Result<f64> {
    if params.is_undeformed() {
        return Ok((-x).exp());
    }
    Ok(normalization(params, x)?.powi(2))
}

fn integrate(f: impl Fn(f64) -> f64, a: f64, b: f64) -> Result<f64> {
    let out = if b.is_finite() {
        quadrature::double_exponential::integrate(&f, a, b, QUAD_TOL)
    } else {
        // x = a + t / (1 - t)
        quadrature::double_exponential::integrate(
            |t: f64| {
                let s = 1.0 - t;
                f(a + t / s) / (s * s)
            },
            0.0,
            1.0,
            QUAD_TOL,
        )
    };
    let scale = out.integral.abs().max(1.0);
    if !(out.integral.is_finite() && out.error_estimate <= 1e3 * QUAD_TOL * scale) {
        return Err(Error::NonConvergence {
            iterations: out.num_function_evaluations as usize,
            detail: format!("quadrature error estimate {:e}", out.error_estimate),
        });
    }
    Ok(out.integral)
}

/// Moment residuals `r_n = |pi int x^n N^2 W dx - |[n]|!|` for `n < sub_dim`.
pub fn weight_moment_check(params: &QParams, measure: &Measure<'_>, sub_dim: usize) -> Result<Vec<MomentResidual>> {
    params.validate()?;
    let mut out = Vec::with_capacity(sub_dim);
    for n in 0..sub_dim {
        let target = abs_qfactorial(n as u32, params)?;
        let moment = match measure {
            Measure::Density { w, upper } => {
                if upper.is_nan() || *upper <= 0.0 {
                    return Err(Error::InvalidParameter(format!("upper limit must be positive, got {upper}")));
                }
                let f = |x: f64| {
                    if x <= 0.0 {
                        return 0.0;
                    }
                    let nsq = normalization_sq(params, x).unwrap_or(0.0);
                    x.powi(n as i32) * nsq * w(x)
                };
                std::f64::consts::PI * integrate(f, 0.0, *upper)?
            }
            Measure::JacksonAtoms { q, upper } => {
                let qc = C64::new(*q, 0.0);
                let f =
                    |x: f64| qexp_reciprocal_product(C64::new(q * x, 0.0), qc).expect("0 < q < 1") * x.powi(n as i32);
                jackson_integral(f, *upper, *q, QUAD_TOL)?.value.re
            }
        };
        out.push(MomentResidual { n, moment, target, residual: (moment - target).abs() });
    }
    Ok(out)
}

/// Truncated `sum_n |[n]|! (i y)^n / (pi n!)` with a convergence verdict.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct WeightSeries {
    pub value: C64,
    pub terms: usize,
    /// Last term magnitude.
    pub last_term: f64,
    /// Difference between the full and the half-length truncation.
    pub half_difference: f64,
    /// Last term and half-length difference both below `1e-10 max(1, |value|)`.
    pub converged: bool,
    /// Parameters lie in the regime where a weight is expected to exist.
    pub regime_ok: bool,
}

fn in_regime(params: &QParams) -> bool {
    let near = |a: f64, b: f64| (a - b).abs() <= 1e-12;
    let (q, p) = (params.q.norm(), params.p.norm());
    match params.scheme {
        Scheme::TwoParam => (q <= 1.0 + 1e-12 && near(p, 1.0)) || (near(q, 1.0) && p >= 1.0 - 1e-12),
        _ => q <= 1.0 + 1e-12,
    }
}

fn series_partial(params: &QParams, y: f64, terms: usize) -> Result<(C64, f64)> {
    let mut sum = C64::new(0.0, 0.0);
    // t_n = |[n]|! (i y)^n / n!, built by ratios to avoid overflow
    let mut t = C64::new(1.0, 0.0);
    let mut last = 1.0;
    let iy = C64::new(0.0, y);
    for n in 0..terms {
        if n > 0 {
            let bracket = crate::qcalc::qnumber(n as u32, params)?.norm();
            t = t * iy * (bracket / n as f64);
        }
        sum += t;
        last = t.norm();
    }
    Ok((sum / std::f64::consts::PI, last / std::f64::consts::PI))
}

pub fn weight_series(params: &QParams, y: f64, trunc: usize) -> Result<WeightSeries> {
    params.validate()?;
    if trunc < 2 {
        return Err(Error::InvalidParameter("need at least two terms".into()));
    }
    let (value, last_term) = series_partial(params, y, trunc)?;
    let (half, _) = series_partial(params, y, trunc / 2)?;
    let half_difference = (value - half).norm();
    let scale = value.norm().max(1.0);
    let converged = value.re.is_finite() && last_term <= 1e-10 * scale && half_difference <= 1e-10 * scale;
    Ok(WeightSeries { value, terms: trunc, last_term, half_difference, converged, regime_ok: in_regime(params) })
}

/// Advisory estimate of `N^2(x) W(x) = (1/2 pi) int e^{-i x y} Wbar(y) dy`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct InversionEstimate {
    pub value: f64,
    /// Half-width of the last window used.
    pub window: f64,
    /// The last two window doublings agreed to `1e-6` relative.
    pub stable: bool,
}

/// Integrates the series over `[-Y, Y]`, doubling `Y` from 1 while the series
/// stays convergent on the window, until two successive estimates agree.
pub fn invert_weight_series(params: &QParams, x: f64, trunc: usize) -> Result<InversionEstimate> {
    let mut window = 1.0;
    let mut prev: Option<f64> = None;
    let mut value = 0.0;
    for _ in 0..8 {
        let edge = weight_series(params, window, trunc)?;
        if !edge.converged {
            break;
        }
        let f = |y: f64| {
            let w = weight_series(params, y, trunc).map(|s| s.value).unwrap_or_default();
            (C64::new(0.0, -x * y).exp() * w).re
        };
        let q = quadrature::double_exponential::integrate(f, -window, window, 1e-10);
        value = q.integral / (2.0 * std::f64::consts::PI);
        if let Some(p) = prev {
            if (value - p).abs() <= 1e-6 * value.abs().max(1e-12) {
                return Ok(InversionEstimate { value, window, stable: true });
            }
        }
        prev = Some(value);
        window *= 2.0;
    }
    Ok(InversionEstimate { value, window, stable: false })
}
