use serde::Serialize;

use crate::error::{Error, Result};
use crate::fock::FockRep;
use crate::qcalc::{
    qexp_auto, qexp_reciprocal_product, qnumber, radius, ExpVariant, QParams, Scheme, C64, DEFAULT_TOL,
};

/// Target for `|c_{D-1}|^2` when the truncation is chosen automatically.
pub const AUTO_TAIL_TOL: f64 = 1e-12;
/// Largest `|c_D|^2` (first omitted term) accepted for an explicit truncation.
pub const FIXED_TAIL_TOL: f64 = DEFAULT_TOL;
/// Largest `q` for which the normalization uses the infinite product.
pub const PRODUCT_MAX_Q: f64 = 0.99;
/// Largest automatically chosen truncation.
pub const MAX_AUTO_DIM: usize = 200;

/// `sum_{n<D} z^n / sqrt([n]!) |n>`, optionally normalized.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CoherentState {
    pub params: QParams,
    pub z: C64,
    pub dim: usize,
    pub coeffs: Vec<C64>,
    pub normalized: bool,
    /// `exp_q(|z|^2)^{-1/2}` (type 2) when normalized, otherwise 1.
    pub norm_factor: f64,
}

/// Unnormalized coefficients `z^n / prod_{j<=n} sqrt([j])` for `n < dim`.
pub fn coefficients(params: &QParams, z: C64, dim: usize) -> Result<Vec<C64>> {
    let mut out = Vec::with_capacity(dim);
    let mut c = C64::new(1.0, 0.0);
    for n in 0..dim {
        if n > 0 {
            let b = qnumber(n as u32, params)?;
            if b.norm() == 0.0 {
                return Err(Error::SingularPoint(format!("[{n}] = 0: level {n} is unreachable")));
            }
            c = c * z / b.sqrt();
        }
        out.push(c);
    }
    Ok(out)
}

fn check_label(params: &QParams, z: C64) -> Result<()> {
    let r = radius(params);
    if z.norm_sqr() >= r {
        return Err(Error::Divergence { modulus: z.norm_sqr(), radius: r });
    }
    Ok(())
}

/// `exp_q(|z|^2)^{-1/2}` with the type-2 exponential.
///
/// For the one-parameter scheme with real `0 < q <= PRODUCT_MAX_Q` the
/// reciprocal is taken from the infinite product, which stays accurate up to
/// the radius. Closer to 1 the product converges too slowly and the series
/// (with a radius of at least 100) is used.
pub fn normalization(params: &QParams, x: f64) -> Result<f64> {
    let q = params.q;
    if params.scheme == Scheme::OneParam && q.im == 0.0 && q.re > 0.0 && q.re <= PRODUCT_MAX_Q && params.k.is_none() {
        return Ok(qexp_reciprocal_product(C64::new(x, 0.0), q)?.re.sqrt());
    }
    let e = qexp_auto(C64::new(x, 0.0), params, ExpVariant::Type2, DEFAULT_TOL * 1e-2)?;
    Ok(e.value.re.powf(-0.5))
}

/// Builds the state with the default tail tolerances.
///
/// `dim = None` picks the smallest `D` with `|c_{D-1}|^2 < AUTO_TAIL_TOL`
/// (at most `MAX_AUTO_DIM`); an explicit `D` must have `|c_D|^2 < FIXED_TAIL_TOL`.
pub fn build_cs(params: &QParams, z: C64, dim: Option<usize>, normalize: bool) -> Result<CoherentState> {
    build_cs_with_tol(
        params,
        z,
        dim,
        normalize,
        match dim {
            None => AUTO_TAIL_TOL,
            Some(_) => FIXED_TAIL_TOL,
        },
    )
}

/// As [`build_cs`] with an explicit tail tolerance; `f64::INFINITY` disables the check.
pub fn build_cs_with_tol(
    params: &QParams,
    z: C64,
    dim: Option<usize>,
    normalize: bool,
    tail_tol: f64,
) -> Result<CoherentState> {
    params.validate()?;
    check_label(params, z)?;
    let dim = match dim {
        Some(0) => return Err(Error::InvalidParameter("truncation dimension must be positive".into())),
        Some(d) => {
            let probe = coefficients(params, z, d + 1)?;
            let tail = probe[d].norm_sqr();
            if tail > tail_tol {
                return Err(Error::TruncationInsufficient { tail, tol: tail_tol, terms: d });
            }
            d
        }
        None => {
            let probe = coefficients(params, z, MAX_AUTO_DIM)?;
            match probe.iter().position(|c| c.norm_sqr() < tail_tol) {
                Some(i) => i + 1,
                None => {
                    return Err(Error::TruncationInsufficient {
                        tail: probe[MAX_AUTO_DIM - 1].norm_sqr(),
                        tol: tail_tol,
                        terms: MAX_AUTO_DIM,
                    })
                }
            }
        }
    };
    let mut coeffs = coefficients(params, z, dim)?;
    let norm_factor = if normalize { normalization(params, z.norm_sqr())? } else { 1.0 };
    if normalize {
        for c in &mut coeffs {
            *c *= norm_factor;
        }
    }
    Ok(CoherentState { params: *params, z, dim, coeffs, normalized: normalize, norm_factor })
}

impl CoherentState {
    pub fn norm_sqr(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "z": [self.z.re, self.z.im],
            "dim": self.dim,
            "normalized": self.normalized,
            "norm_factor": self.norm_factor,
            "coeffs": self.coeffs.iter().map(|c| [c.re, c.im]).collect::<Vec<_>>(),
        })
    }
}

/// Norms of `a|z> - z|z>`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct EigenReport {
    /// Levels `0..D-2`; vanishes up to rounding because the ladder is exact there.
    pub interior: f64,
    /// All levels, including the truncation term `|z c_{D-1}|` on the top level.
    pub full: f64,
    /// `|c_{D-1}| sqrt(|[D-1]|) + |z| |c_{D-1}|`.
    pub tail_bound: f64,
}

fn check_compatible(a: &QParams, b: &QParams) -> Result<()> {
    if a != b {
        return Err(Error::ConventionMismatch(format!("parameters differ: {a:?} vs {b:?}")));
    }
    Ok(())
}

pub fn eigenstate_residual(cs: &CoherentState, rep: &FockRep) -> Result<EigenReport> {
    check_compatible(&cs.params, &rep.params)?;
    if cs.dim != rep.dim {
        return Err(Error::DimensionMismatch(format!("state has {} levels, representation {}", cs.dim, rep.dim)));
    }
    let d = cs.dim;
    let v = nalgebra::DVector::from_vec(cs.coeffs.clone());
    let r = &rep.a * &v - &v * cs.z;
    let interior = r.iter().take(d - 1).map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    let full = r.norm();
    let last = cs.coeffs[d - 1].norm();
    let tail_bound = last * qnumber(d as u32 - 1, &cs.params)?.norm().sqrt() + cs.z.norm() * last;
    Ok(EigenReport { interior, full, tail_bound })
}

/// `<cs1|cs2>` as a coefficient inner product.
pub fn overlap(cs1: &CoherentState, cs2: &CoherentState) -> Result<C64> {
    check_compatible(&cs1.params, &cs2.params)?;
    if cs1.dim != cs2.dim {
        return Err(Error::DimensionMismatch(format!("{} vs {} levels", cs1.dim, cs2.dim)));
    }
    Ok(cs1.coeffs.iter().zip(&cs2.coeffs).map(|(a, b)| a.conj() * b).sum())
}

/// Closed form `N(|z1|^2) N(|z2|^2) exp_q(conj(z1) z2)` (type 2), ignoring truncation.
pub fn overlap_closed_form(cs1: &CoherentState, cs2: &CoherentState) -> Result<C64> {
    check_compatible(&cs1.params, &cs2.params)?;
    let e = qexp_auto(cs1.z.conj() * cs2.z, &cs1.params, ExpVariant::Type2, DEFAULT_TOL * 1e-2)?;
    Ok(e.value * cs1.norm_factor * cs2.norm_factor)
}

/// `|| |z> - |z'> ||^2` against `2 (1 - Re <z|z'>)`; equal for unit-norm states.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ContinuityCheck {
    pub distance_sq: f64,
    pub overlap_form: f64,
    pub difference: f64,
}

pub fn continuity_check(cs1: &CoherentState, cs2: &CoherentState) -> Result<ContinuityCheck> {
    let ov = overlap(cs1, cs2)?;
    let distance_sq = cs1.coeffs.iter().zip(&cs2.coeffs).map(|(a, b)| (a - b).norm_sqr()).sum::<f64>();
    let overlap_form = 2.0 * (1.0 - ov.re);
    Ok(ContinuityCheck { distance_sq, overlap_form, difference: (distance_sq - overlap_form).abs() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::build_rep;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    #[test]
    fn zero_label_is_the_vacuum() {
        let cs = build_cs(&QParams::one_param(0.5), c(0.0), Some(4), true).unwrap();
        assert_eq!(cs.coeffs, vec![c(1.0), c(0.0), c(0.0), c(0.0)]);
    }

    #[test]
    fn unnormalized_norm_is_the_q_exponential() {
        let params = QParams::one_param(0.5);
        let cs = build_cs(&params, c(0.8), None, false).unwrap();
        let e = qexp_auto(c(0.64), &params, ExpVariant::Type1, 1e-14).unwrap();
        assert!((cs.norm_sqr() - e.value.re).abs() < 1e-11);
    }

    #[test]
    fn classical_limit_gives_glauber_states() {
        let cs = build_cs(&QParams::one_param(1.0), c(0.5), None, true).unwrap();
        let mut fact = 1.0;
        for (n, coef) in cs.coeffs.iter().enumerate() {
            if n > 0 {
                fact *= n as f64;
            }
            let want = (-0.125f64).exp() * 0.5f64.powi(n as i32) / fact.sqrt();
            assert!((coef - c(want)).norm() < 1e-8);
        }
    }

    #[test]
    fn labels_outside_the_disc_are_rejected() {
        let err = build_cs(&QParams::one_param(0.5), c(1.5), None, false).unwrap_err();
        assert!(matches!(err, Error::Divergence { .. }));
    }

    #[test]
    fn small_explicit_truncation_is_rejected_or_flagged() {
        let params = QParams::one_param(0.5);
        assert!(matches!(build_cs(&params, c(0.8), Some(5), false), Err(Error::TruncationInsufficient { .. })));
        let cs = build_cs_with_tol(&params, c(0.8), Some(5), false, f64::INFINITY).unwrap();
        let rep = build_rep(&params, 5).unwrap();
        let report = eigenstate_residual(&cs, &rep).unwrap();
        assert!(report.full > 1e-3);
        assert!(report.full <= report.tail_bound);
    }

    #[test]
    fn eigenvalue_equation_on_the_interior() {
        let params = QParams::one_param(0.5);
        let cs = build_cs(&params, c(0.8), Some(25), false).unwrap();
        let rep = build_rep(&params, 25).unwrap();
        let report = eigenstate_residual(&cs, &rep).unwrap();
        assert!(report.interior < 1e-10);
        let top = 0.8 * cs.coeffs[24].norm();
        assert!((report.full - top).abs() < 1e-15);
        let cs = build_cs(&params, c(0.8), Some(45), false).unwrap();
        let rep = build_rep(&params, 45).unwrap();
        assert!(eigenstate_residual(&cs, &rep).unwrap().full < 1e-10);
    }

    #[test]
    fn overlaps_match_the_closed_form() {
        let params = QParams::one_param(0.5);
        let a = build_cs(&params, c(0.3), Some(40), true).unwrap();
        let b = build_cs(&params, c(0.5), Some(40), true).unwrap();
        let direct = overlap(&a, &b).unwrap();
        let closed = overlap_closed_form(&a, &b).unwrap();
        assert!((direct - closed).norm() < 1e-10);
        assert!((overlap(&a, &a).unwrap() - c(1.0)).norm() < 1e-10);
    }

    #[test]
    fn distance_follows_the_overlap() {
        let params = QParams::one_param(0.5);
        let a = build_cs(&params, C64::new(0.3, 0.2), Some(40), true).unwrap();
        let b = build_cs(&params, C64::new(-0.1, 0.6), Some(40), true).unwrap();
        let chk = continuity_check(&a, &b).unwrap();
        assert!(chk.difference < 1e-12, "{chk:?}");
        assert!(chk.distance_sq > 0.1);
    }
}
