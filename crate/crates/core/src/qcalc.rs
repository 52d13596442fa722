//! q-numbers and the q-special functions built on them.
//!
//! Three brackets are supported, selected by [`Scheme`]:
//!
//! | scheme      | `[n]`                                   | mutation relation          |
//! |-------------|-----------------------------------------|----------------------------|
//! | `OneParam`  | `(1 - q^n) / (1 - q)`                   | `aa+ - q a+a = 1`          |
//! | `TwoParam`  | `(q^n - p^-n) / (q - p^-1)`             | `aa+ - q a+a = p^-N`       |
//! | `Symmetric` | `(q^n - q^-n) / (q - q^-1)`             | `aa+ - q a+a = q^-N`       |
//!
//! Every bracket reduces to `n` at the undeformed point. Near that point the
//! closed forms cancel catastrophically, so evaluation switches to the finite
//! geometric-sum factorization, and to the exact integer within
//! [`UNDEFORMED_EPS`].

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type C64 = Complex64;

/// Default absolute tolerance for numeric comparisons.
pub const DEFAULT_TOL: f64 = 1e-10;

/// Distance to the undeformed point below which `[n] = n` is used verbatim.
pub const UNDEFORMED_EPS: f64 = 1e-12;

// closed forms are used only when the bracket denominator is at least this large
const CLOSED_FORM_MIN_DENOM: f64 = 1e-3;

const SERIES_TERM_CAP: usize = 20_000;
const JACKSON_ITER_CAP: usize = 200_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scheme {
    OneParam,
    TwoParam,
    Symmetric,
}

/// Deformation scheme and parameters.
///
/// `p` is only read by [`Scheme::TwoParam`]. When `k` is set the parameter
/// `q` is the primitive root `e^{2 pi i / k}` and its powers are reduced on
/// the exact angle, so `q^k = 1` holds bit-for-bit.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QParams {
    pub scheme: Scheme,
    pub q: C64,
    pub p: C64,
    pub k: Option<u32>,
}

impl QParams {
    pub fn one_param(q: impl Into<C64>) -> Self {
        Self { scheme: Scheme::OneParam, q: q.into(), p: C64::new(1.0, 0.0), k: None }
    }

    pub fn two_param(q: impl Into<C64>, p: impl Into<C64>) -> Self {
        Self { scheme: Scheme::TwoParam, q: q.into(), p: p.into(), k: None }
    }

    pub fn symmetric(q: impl Into<C64>) -> Self {
        Self { scheme: Scheme::Symmetric, q: q.into(), p: C64::new(1.0, 0.0), k: None }
    }

    /// `q = e^{2 pi i / k}` for the given scheme.
    pub fn root_of_unity(scheme: Scheme, k: u32) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidParameter(format!("root-of-unity order must be >= 2, got {k}")));
        }
        Ok(Self { scheme, q: root_of_unity(k, 1), p: C64::new(1.0, 0.0), k: Some(k) })
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.q.re.is_finite() && self.q.im.is_finite()) {
            return Err(Error::InvalidParameter("q must be finite".into()));
        }
        match self.scheme {
            Scheme::TwoParam if self.p.norm() == 0.0 || !self.p.norm().is_finite() => {
                return Err(Error::DegenerateParameter("two-parameter bracket needs finite nonzero p".into()));
            }
            Scheme::Symmetric if self.q.norm() == 0.0 => {
                return Err(Error::DegenerateParameter("symmetric bracket needs q != 0".into()));
            }
            _ => {}
        }
        if let Some(k) = self.k {
            if k < 2 {
                return Err(Error::InvalidParameter(format!("root-of-unity order must be >= 2, got {k}")));
            }
            let qk = self.q.powu(k);
            if (self.q.norm() - 1.0).abs() > DEFAULT_TOL || (qk - 1.0).norm() > DEFAULT_TOL {
                return Err(Error::InvalidParameter(format!("q = {} is not a {k}-th root of unity", self.q)));
            }
        }
        Ok(())
    }

    /// `q^n`, exact on the angle when `k` is set.
    pub fn q_pow(&self, n: i64) -> C64 {
        match self.k {
            Some(k) => root_of_unity(k, n),
            None => self.q.powi(n as i32),
        }
    }

    pub fn is_undeformed(&self) -> bool {
        let near_one = |z: C64| (z - 1.0).norm() <= UNDEFORMED_EPS;
        match self.scheme {
            Scheme::TwoParam => near_one(self.q) && near_one(self.p),
            _ => near_one(self.q),
        }
    }
}

/// `e^{2 pi i m / k}` with `m` reduced mod `k` first.
pub fn root_of_unity(k: u32, m: i64) -> C64 {
    let k = k as i64;
    let r = m.rem_euclid(k);
    match (r, k) {
        (0, _) => C64::new(1.0, 0.0),
        (r, k) if 2 * r == k => C64::new(-1.0, 0.0),
        (r, k) if 4 * r == k => C64::new(0.0, 1.0),
        (r, k) if 4 * r == 3 * k => C64::new(0.0, -1.0),
        _ => C64::from_polar(1.0, 2.0 * PI * r as f64 / k as f64),
    }
}

/// The deformed integer `[n]` for the selected scheme.
pub fn qnumber(n: u32, params: &QParams) -> Result<C64> {
    params.validate()?;
    if n == 0 {
        return Ok(C64::new(0.0, 0.0));
    }
    let nf = n as f64;
    let ni = n as i64;
    let q = params.q;
    match params.scheme {
        Scheme::OneParam => {
            if (q - 1.0).norm() <= UNDEFORMED_EPS {
                return Ok(C64::new(nf, 0.0));
            }
            let denom = C64::new(1.0, 0.0) - q;
            if denom.norm() >= CLOSED_FORM_MIN_DENOM {
                Ok((C64::new(1.0, 0.0) - params.q_pow(ni)) / denom)
            } else {
                Ok((0..ni).map(|j| params.q_pow(j)).sum())
            }
        }
        Scheme::TwoParam => {
            let pinv = params.p.inv();
            if params.is_undeformed() {
                return Ok(C64::new(nf, 0.0));
            }
            let denom = q - pinv;
            if denom.norm() >= CLOSED_FORM_MIN_DENOM {
                Ok((params.q_pow(ni) - pinv.powi(n as i32)) / denom)
            } else {
                // q^n - b^n = (q - b) * sum_j q^j b^(n-1-j)
                Ok((0..ni).map(|j| params.q_pow(j) * pinv.powi((ni - 1 - j) as i32)).sum())
            }
        }
        Scheme::Symmetric => {
            if (q - 1.0).norm() <= UNDEFORMED_EPS {
                return Ok(C64::new(nf, 0.0));
            }
            if (q + 1.0).norm() <= UNDEFORMED_EPS {
                let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
                return Ok(C64::new(sign * nf, 0.0));
            }
            let denom = q - q.inv();
            if denom.norm() >= CLOSED_FORM_MIN_DENOM {
                Ok((params.q_pow(ni) - params.q_pow(-ni)) / denom)
            } else {
                Ok((0..ni).map(|j| params.q_pow(ni - 1 - 2 * j)).sum())
            }
        }
    }
}

/// The two-parameter bracket with the alternative numerator `q^n - p^n`.
///
/// Kept for comparison only: it does not satisfy `[n+1] - q[n] = p^-n`.
pub fn qnumber_two_param_heading(n: u32, q: C64, p: C64) -> Result<C64> {
    if p.norm() == 0.0 {
        return Err(Error::DegenerateParameter("p must be nonzero".into()));
    }
    let denom = q - p.inv();
    if denom.norm() <= UNDEFORMED_EPS {
        return Err(Error::DegenerateParameter("q = 1/p makes the denominator vanish".into()));
    }
    Ok((q.powu(n) - p.powu(n)) / denom)
}

/// `[n]! = [n][n-1]...[1]`, with `[0]! = 1`.
pub fn qfactorial(n: u32, params: &QParams) -> Result<C64> {
    let mut acc = C64::new(1.0, 0.0);
    for j in 1..=n {
        acc *= qnumber(j, params)?;
    }
    Ok(acc)
}

/// `|[n]|! = |[n]| |[n-1]| ... |[1]|`.
pub fn abs_qfactorial(n: u32, params: &QParams) -> Result<f64> {
    let mut acc = 1.0;
    for j in 1..=n {
        acc *= qnumber(j, params)?.norm();
    }
    Ok(acc)
}

/// `prod_j sqrt([j])` using the principal square root of each factor.
///
/// This is the normalization produced by the ladder action
/// `(a+)^n |0> = sqrt([n]!) |n>`; it agrees with the principal root of `[n]!`
/// whenever every `[j]` is a nonnegative real.
pub fn sqrt_qfactorial(n: u32, params: &QParams) -> Result<C64> {
    let mut acc = C64::new(1.0, 0.0);
    for j in 1..=n {
        acc *= qnumber(j, params)?.sqrt();
    }
    Ok(acc)
}

/// Convergence radius of `sum x^n / [n]!` (and of the `|[n]|!` variant).
///
/// Returns `f64::INFINITY` when the bracket grows geometrically and `0.0`
/// when it decays.
pub fn radius(params: &QParams) -> f64 {
    if params.is_undeformed() {
        return f64::INFINITY;
    }
    let q = params.q;
    match params.scheme {
        Scheme::OneParam => {
            if q.norm() > 1.0 {
                f64::INFINITY
            } else {
                1.0 / (C64::new(1.0, 0.0) - q).norm()
            }
        }
        Scheme::TwoParam => {
            let pinv = params.p.inv();
            let dominant = q.norm().max(pinv.norm());
            if dominant > 1.0 + UNDEFORMED_EPS {
                f64::INFINITY
            } else if dominant < 1.0 - UNDEFORMED_EPS {
                0.0
            } else {
                1.0 / (q - pinv).norm()
            }
        }
        Scheme::Symmetric => {
            if (q.norm() - 1.0).abs() > UNDEFORMED_EPS {
                f64::INFINITY
            } else {
                1.0 / (q - q.inv()).norm()
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExpVariant {
    /// `sum x^n / [n]!`
    Type1,
    /// `sum x^n / |[n]|!`
    Type2,
}

/// A truncated series with a bound on the omitted tail.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeriesSum {
    pub value: C64,
    pub tail_bound: f64,
    pub terms: usize,
}

/// Deformed exponential truncated at `n = trunc`, checked against [`DEFAULT_TOL`].
pub fn qexp(x: C64, params: &QParams, variant: ExpVariant, trunc: usize) -> Result<SeriesSum> {
    qexp_with_tol(x, params, variant, trunc, DEFAULT_TOL)
}

/// Deformed exponential truncated at `n = trunc`.
///
/// The tail bound is `|t_N| rho / (1 - rho)` with `rho` the largest ratio
/// `|x| / |[m]|` over the next few indices and the limiting ratio
/// `|x| / R`. It must stay below `tol * max(1, |value|)`.
pub fn qexp_with_tol(x: C64, params: &QParams, variant: ExpVariant, trunc: usize, tol: f64) -> Result<SeriesSum> {
    params.validate()?;
    let r = radius(params);
    if x.norm() >= r {
        return Err(Error::Divergence { modulus: x.norm(), radius: r });
    }
    let mut term = C64::new(1.0, 0.0);
    let mut value = term;
    for n in 1..=trunc {
        let bracket = bracket_for(n as u32, params, variant)?;
        if bracket.norm() == 0.0 {
            return Err(Error::DegenerateParameter(format!("[{n}] = 0, so the exponential series is undefined")));
        }
        term *= x / bracket;
        value += term;
    }
    let mut rho: f64 = if r.is_finite() { x.norm() / r } else { 0.0 };
    for m in trunc + 1..=trunc + 8 {
        let b = bracket_for(m as u32, params, variant)?.norm();
        if b == 0.0 {
            rho = f64::INFINITY;
            break;
        }
        rho = rho.max(x.norm() / b);
    }
    let tail_bound = if rho < 1.0 { term.norm() * rho / (1.0 - rho) } else { f64::INFINITY };
    let sum = SeriesSum { value, tail_bound, terms: trunc + 1 };
    if tail_bound > tol * value.norm().max(1.0) {
        return Err(Error::TruncationInsufficient { tail: tail_bound, tol, terms: trunc + 1 });
    }
    Ok(sum)
}

/// Deformed exponential with the truncation grown until the tail meets `tol`.
pub fn qexp_auto(x: C64, params: &QParams, variant: ExpVariant, tol: f64) -> Result<SeriesSum> {
    let mut trunc = 32;
    loop {
        match qexp_with_tol(x, params, variant, trunc, tol) {
            Err(Error::TruncationInsufficient { .. }) if trunc < SERIES_TERM_CAP => trunc *= 2,
            other => return other,
        }
    }
}

fn bracket_for(n: u32, params: &QParams, variant: ExpVariant) -> Result<C64> {
    let b = qnumber(n, params)?;
    Ok(match variant {
        ExpVariant::Type1 => b,
        ExpVariant::Type2 => C64::new(b.norm(), 0.0),
    })
}

/// `1 / exp_q(x) = prod_{k>=0} (1 - q^k (1-q) x)` for `|q| < 1`.
///
/// The product is entire in `x`, so it is usable on and beyond the radius
/// where the series form diverges.
pub fn qexp_reciprocal_product(x: C64, q: C64) -> Result<C64> {
    if q.norm() >= 1.0 {
        return Err(Error::InvalidParameter(format!("product form needs |q| < 1, got |q| = {}", q.norm())));
    }
    let step = (C64::new(1.0, 0.0) - q) * x;
    let mut qk = C64::new(1.0, 0.0);
    let mut acc = C64::new(1.0, 0.0);
    for _ in 0..SERIES_TERM_CAP {
        let t = qk * step;
        acc *= C64::new(1.0, 0.0) - t;
        if t.norm() < 1e-18 || acc.norm() == 0.0 {
            return Ok(acc);
        }
        qk *= q;
    }
    Err(Error::NonConvergence { iterations: SERIES_TERM_CAP, detail: "infinite product did not settle".into() })
}

/// `exp_q(x) = 1 / prod_{k>=0} (1 - q^k (1-q) x)` for `|q| < 1`.
pub fn qexp_product(x: C64, q: C64) -> Result<C64> {
    let r = qexp_reciprocal_product(x, q)?;
    if r.norm() == 0.0 {
        return Err(Error::SingularPoint(format!("exp_q has a pole at x = {x}")));
    }
    Ok(r.inv())
}

/// Forward q-difference quotient `(f(x) - f(qx)) / (x (1 - q))`.
pub fn qderivative<F>(f: F, x: C64, q: C64) -> Result<C64>
where
    F: Fn(C64) -> C64,
{
    if x.norm() == 0.0 {
        return Err(Error::SingularPoint("the q-derivative quotient is undefined at x = 0".into()));
    }
    if (q - 1.0).norm() == 0.0 {
        return Err(Error::DegenerateParameter("q = 1 makes the q-difference quotient 0/0".into()));
    }
    Ok((f(x) - f(q * x)) / (x * (C64::new(1.0, 0.0) - q)))
}

/// Value of a Jackson sum together with how it was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct JacksonSum {
    pub value: C64,
    pub terms: usize,
    pub tail_estimate: f64,
}

/// Jackson integral `int_0^a f(x) d_q x = a (1-q) sum_k q^k f(q^k a)`.
///
/// Summation stops once the remaining terms, extrapolated geometrically from
/// the last few observed ratios, fall below `tol` relative to the running sum.
pub fn jackson_integral<F>(f: F, a: f64, q: f64, tol: f64) -> Result<JacksonSum>
where
    F: Fn(f64) -> C64,
{
    if !(q > 0.0 && q < 1.0) {
        return Err(Error::InvalidParameter(format!("Jackson integral needs 0 < q < 1, got {q}")));
    }
    if !(a > 0.0 && a.is_finite()) {
        return Err(Error::InvalidParameter(format!("upper limit must be positive and finite, got {a}")));
    }
    let mut sum = C64::new(0.0, 0.0);
    let mut weight = 1.0;
    let mut x = a;
    let mut prev_mag: Option<f64> = None;
    let mut ratios: Vec<f64> = Vec::with_capacity(4);
    let mut zero_run = 0usize;
    for k in 0..JACKSON_ITER_CAP {
        let term = f(x) * weight;
        sum += term;
        let mag = term.norm();
        if mag == 0.0 {
            zero_run += 1;
            // only the sampled function vanishing identically ends the sum here
            if zero_run >= 64 && k >= 64 {
                return Ok(JacksonSum { value: sum * a * (1.0 - q), terms: k + 1, tail_estimate: 0.0 });
            }
        } else {
            zero_run = 0;
            if let Some(pm) = prev_mag {
                if ratios.len() == 4 {
                    ratios.remove(0);
                }
                ratios.push(mag / pm);
            }
            prev_mag = Some(mag);
            if ratios.len() == 4 && k >= 8 {
                let rho = ratios.iter().cloned().fold(0.0, f64::max);
                if rho < 1.0 {
                    let tail = mag * rho / (1.0 - rho);
                    if tail <= tol * sum.norm() {
                        return Ok(JacksonSum {
                            value: sum * a * (1.0 - q),
                            terms: k + 1,
                            tail_estimate: tail * a * (1.0 - q),
                        });
                    }
                }
            }
        }
        weight *= q;
        x *= q;
    }
    Err(Error::NonConvergence {
        iterations: JACKSON_ITER_CAP,
        detail: "Jackson sum terms did not decay geometrically".into(),
    })
}

/// `int_0^{R_q} x^n / exp_q(q x) d_q x`, which equals `[n]_q!` exactly.
///
/// This is the q-Gamma form of the Jackson moment identity that makes the
/// Jackson-measure resolution of unity hold.
pub fn jackson_moment(n: u32, q: f64, tol: f64) -> Result<JacksonSum> {
    let rq = 1.0 / (1.0 - q);
    let qc = C64::new(q, 0.0);
    let weight = |x: f64| qexp_reciprocal_product(C64::new(q * x, 0.0), qc).expect("|q| < 1 checked");
    check_unit_interval(q)?;
    jackson_integral(|x| weight(x) * x.powi(n as i32), rq, q, tol)
}

/// `int_0^{R_q} x^n / exp_q(x) d_q x` with the unshifted weight.
///
/// This evaluates to `q^{n+1} [n]_q!`; see [`jackson_moment`] for the
/// identity that yields `[n]_q!`.
pub fn jackson_moment_unshifted(n: u32, q: f64, tol: f64) -> Result<JacksonSum> {
    check_unit_interval(q)?;
    let rq = 1.0 / (1.0 - q);
    let qc = C64::new(q, 0.0);
    jackson_integral(
        |x| qexp_reciprocal_product(C64::new(x, 0.0), qc).expect("|q| < 1 checked") * x.powi(n as i32),
        rq,
        q,
        tol,
    )
}

fn check_unit_interval(q: f64) -> Result<()> {
    if q > 0.0 && q < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("need 0 < q < 1, got {q}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    #[test]
    fn qnumber_zero_is_zero_for_every_scheme() {
        for p in [QParams::one_param(0.5), QParams::two_param(0.5, 1.3), QParams::symmetric(C64::new(0.0, 1.0))] {
            assert_eq!(qnumber(0, &p).unwrap(), c(0.0));
        }
    }

    #[test]
    fn qnumber_one_param_closed_form() {
        let v = qnumber(3, &QParams::one_param(0.5)).unwrap();
        assert_abs_diff_eq!(v.re, 1.75, epsilon = 1e-15);
        assert_abs_diff_eq!(v.im, 0.0);
    }

    #[test]
    fn qnumber_symmetric_cube_root() {
        let p = QParams::root_of_unity(Scheme::Symmetric, 3).unwrap();
        let v = qnumber(2, &p).unwrap();
        // oracle: sum_j q^(1 - 2j) = q + q^-1
        let q = p.q;
        let oracle = q + q.inv();
        assert!((v - oracle).norm() < 1e-15);
        assert!((v - c(-1.0)).norm() < 1e-15);
    }

    #[test]
    fn qfactorial_examples() {
        assert_eq!(qfactorial(0, &QParams::one_param(0.5)).unwrap(), c(1.0));
        let v = qfactorial(3, &QParams::one_param(0.5)).unwrap();
        assert_abs_diff_eq!(v.re, 2.625, epsilon = 1e-14);
        let at_i = QParams::root_of_unity(Scheme::Symmetric, 4).unwrap();
        assert_eq!(qfactorial(2, &at_i).unwrap(), c(0.0));
    }

    #[test]
    fn root_of_unity_bracket_vanishes_exactly() {
        for k in 3..=8 {
            let p = QParams::root_of_unity(Scheme::Symmetric, k).unwrap();
            assert_eq!(qnumber(k, &p).unwrap(), c(0.0), "k = {k}");
            let p = QParams::root_of_unity(Scheme::OneParam, k).unwrap();
            assert_eq!(qnumber(k, &p).unwrap(), c(0.0), "k = {k}");
        }
    }

    #[test]
    fn degenerate_parameters_are_rejected() {
        assert!(matches!(qnumber(2, &QParams::symmetric(0.0)), Err(Error::DegenerateParameter(_))));
        assert!(matches!(qnumber(2, &QParams::two_param(0.5, 0.0)), Err(Error::DegenerateParameter(_))));
    }

    #[test]
    fn two_param_at_q_equals_inverse_p_uses_the_limit() {
        // q = 1/p: [n] -> n q^(n-1)
        let p = QParams::two_param(0.5, 2.0);
        let v = qnumber(4, &p).unwrap();
        assert!((v - c(4.0 * 0.125)).norm() < 1e-15);
    }

    #[test]
    fn heading_variant_breaks_the_recurrence() {
        let (q, p) = (C64::new(0.6, 0.1), C64::new(1.2, -0.3));
        let params = QParams::two_param(q, p);
        let n = 3;
        let good = qnumber(n + 1, &params).unwrap() - q * qnumber(n, &params).unwrap();
        assert!((good - p.powi(-(n as i32))).norm() < 1e-12);
        let bad = qnumber_two_param_heading(n + 1, q, p).unwrap() - q * qnumber_two_param_heading(n, q, p).unwrap();
        assert!((bad - p.powi(-(n as i32))).norm() > 1e-3);
    }

    #[test]
    fn qexp_at_zero_is_one() {
        let s = qexp(c(0.0), &QParams::one_param(0.5), ExpVariant::Type1, 4).unwrap();
        assert_eq!(s.value, c(1.0));
    }

    #[test]
    fn qexp_matches_product_at_half() {
        let s = qexp_auto(c(1.0), &QParams::one_param(0.5), ExpVariant::Type1, 1e-15).unwrap();
        let prod = qexp_product(c(1.0), c(0.5)).unwrap();
        assert!((s.value - prod).norm() < 1e-10);
    }

    #[test]
    fn qexp_classical_limit_is_e() {
        let s = qexp_auto(c(1.0), &QParams::one_param(1.0 - 1e-8), ExpVariant::Type1, 1e-14).unwrap();
        assert!((s.value.re - std::f64::consts::E).abs() < 1e-6);
    }

    #[test]
    fn qexp_rejects_points_outside_the_radius() {
        let err = qexp(c(2.0), &QParams::one_param(0.5), ExpVariant::Type1, 50).unwrap_err();
        assert!(matches!(err, Error::Divergence { .. }));
    }

    #[test]
    fn qexp_reports_short_truncation() {
        let err = qexp(c(1.5), &QParams::one_param(0.5), ExpVariant::Type1, 5).unwrap_err();
        assert!(matches!(err, Error::TruncationInsufficient { .. }));
    }

    #[test]
    fn qderivative_of_monomial_and_constant() {
        let d = qderivative(|x| x * x, c(1.0), c(0.5)).unwrap();
        assert_abs_diff_eq!(d.re, 1.5, epsilon = 1e-15);
        let d0 = qderivative(|_| c(3.0), c(0.7), c(0.5)).unwrap();
        assert_eq!(d0, c(0.0));
        assert!(matches!(qderivative(|x| x, c(0.0), c(0.5)), Err(Error::SingularPoint(_))));
    }

    #[test]
    fn qderivative_fixes_the_exponential() {
        let params = QParams::one_param(0.5);
        let f = |x: C64| qexp_auto(x, &params, ExpVariant::Type1, 1e-15).unwrap().value;
        let d = qderivative(f, c(0.5), c(0.5)).unwrap();
        assert!((d - f(c(0.5))).norm() < 1e-8);
    }

    #[test]
    fn jackson_integral_examples() {
        let one = jackson_integral(|_| c(1.0), 1.0, 0.5, 1e-15).unwrap();
        assert!((one.value - c(1.0)).norm() < 1e-12);
        let lin = jackson_integral(c, 2.0, 0.9, 1e-15).unwrap();
        assert!((lin.value - c(4.0 / 1.9)).norm() < 1e-12);
    }

    #[test]
    fn jackson_moment_reproduces_the_q_factorial() {
        let m = jackson_moment(4, 0.5, 1e-15).unwrap();
        assert!((m.value.re - 4.921875).abs() < 1e-12);
        let unshifted = jackson_moment_unshifted(4, 0.5, 1e-15).unwrap();
        assert!((unshifted.value.re - 0.5f64.powi(5) * 4.921875).abs() < 1e-12);
    }

    #[test]
    fn jackson_integral_rejects_bad_q() {
        assert!(jackson_integral(|_| c(1.0), 1.0, 1.0, 1e-12).is_err());
        assert!(jackson_integral(|_| c(1.0), 1.0, 0.0, 1e-12).is_err());
    }

    #[test]
    fn jackson_integral_reports_non_convergence() {
        // f(x) = 1/x^2 makes the terms q^k / (q^k a)^2 grow
        let err = jackson_integral(|x| c(1.0 / (x * x)), 1.0, 0.5, 1e-12).unwrap_err();
        assert!(matches!(err, Error::NonConvergence { .. }));
    }
}
