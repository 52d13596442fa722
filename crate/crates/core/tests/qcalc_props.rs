use proptest::prelude::*;
use qonkit::qcalc::{jackson_moment, qderivative, qexp_auto, qexp_product, qnumber, radius, ExpVariant, QParams, C64};

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// `[n]` for the one-parameter bracket as a plain geometric sum.
fn geometric_bracket(n: u32, q: f64) -> f64 {
    (0..n).map(|j| q.powi(j as i32)).sum()
}

fn recurrence_residual(params: &QParams, rhs: impl Fn(u32) -> C64) -> f64 {
    let mut worst: f64 = 0.0;
    for n in 0..=50u32 {
        let next = qnumber(n + 1, params).unwrap();
        let prev = params.q * qnumber(n, params).unwrap();
        let target = rhs(n);
        let scale = 1f64.max(next.norm()).max(prev.norm()).max(target.norm());
        worst = worst.max((next - prev - target).norm() / scale);
    }
    worst
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn one_param_recurrence(re in -1.4f64..1.4, im in -1.4f64..1.4) {
        prop_assume!(c(re, im).norm() > 0.05);
        let params = QParams::one_param(c(re, im));
        prop_assert!(recurrence_residual(&params, |_| c(1.0, 0.0)) < 1e-12);
    }

    #[test]
    fn two_param_recurrence(q in 0.3f64..1.4, p in 0.7f64..1.4, phase in -3.0f64..3.0) {
        let params = QParams::two_param(C64::from_polar(q, phase), c(p, 0.0));
        let pc = c(p, 0.0);
        prop_assert!(recurrence_residual(&params, |n| pc.powi(-(n as i32))) < 1e-12);
    }

    #[test]
    fn symmetric_recurrence(r in 0.8f64..1.25, phase in -3.0f64..3.0) {
        let q = C64::from_polar(r, phase);
        let params = QParams::symmetric(q);
        prop_assert!(recurrence_residual(&params, |n| q.powi(-(n as i32))) < 1e-12);
    }

    #[test]
    fn type1_series_matches_product(qi in 0usize..3, frac in 0.0f64..0.9, angle in -3.1f64..3.1) {
        let q = [0.3, 0.5, 0.9][qi];
        let params = QParams::one_param(q);
        let x = C64::from_polar(frac * radius(&params), angle);
        let series = qexp_auto(x, &params, ExpVariant::Type1, 1e-14).unwrap();
        let product = qexp_product(x, c(q, 0.0)).unwrap();
        prop_assert!((series.value - product).norm() <= 1e-10 * product.norm().max(1.0));
    }

    #[test]
    fn jackson_moment_is_the_factorial(qi in 0usize..3, n in 0u32..=20) {
        let q = [0.3, 0.5, 0.9][qi];
        let moment = jackson_moment(n, q, 1e-14).unwrap().value;
        let target: f64 = (1..=n).map(|j| geometric_bracket(j, q)).product();
        prop_assert!((moment.re - target).abs() / target < 1e-8);
        prop_assert!(moment.im.abs() < 1e-8 * target);
    }
}

#[test]
fn q_derivative_reproduces_the_exponential() {
    for q in [0.3, 0.5, 0.9] {
        let params = QParams::one_param(q);
        let r = radius(&params);
        let f = |x: C64| qexp_auto(x, &params, ExpVariant::Type1, 1e-15).unwrap().value;
        for k in 0..20 {
            let x = C64::from_polar(0.8 * r * (k + 1) as f64 / 20.0, 0.7 * k as f64);
            let d = qderivative(f, x, c(q, 0.0)).unwrap();
            let e = f(x);
            assert!((d - e).norm() <= 1e-8 * e.norm().max(1.0), "q = {q}, x = {x}: {d} vs {e}");
        }
    }
}

/// `|[n] - n|` over an offset `eps` from the undeformed point, for each scheme.
fn limit_errors(eps: f64) -> [Vec<f64>; 3] {
    let one = |params: QParams| (0..=20u32).map(|n| (qnumber(n, &params).unwrap() - n as f64).norm()).collect();
    [
        one(QParams::one_param(1.0 + eps)),
        one(QParams::two_param(1.0 + eps, 1.0)),
        one(QParams::symmetric(C64::from_polar(1.0, eps))),
    ]
}

#[test]
fn brackets_approach_integers_linearly() {
    for eps in [1e-3, 1e-4, 1e-5, 1e-6] {
        let errs = limit_errors(eps);
        for scheme in &errs {
            for (n, e) in scheme.iter().enumerate() {
                let n = n as f64;
                assert!(*e <= n * n * n * eps + 1e-12, "n = {n}, eps = {eps}: {e}");
            }
        }
        // one offset parameter enters at first order with slope n(n-1)/2
        for scheme in &errs[..2] {
            for (n, e) in scheme.iter().enumerate().skip(2) {
                let slope = (n * (n - 1)) as f64 / 2.0;
                assert!((e / eps - slope).abs() <= 0.05 * slope, "n = {n}, eps = {eps}: slope {}", e / eps);
            }
        }
    }
}
