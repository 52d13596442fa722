use proptest::prelude::*;
use qonkit::qcalc::C64;
use qonkit::quonstat::{occupation, occupation_finite_sum, occupation_series, partition_mode, ModeSpec};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn series_within_its_tail_bound(r in 0.0f64..1.0, angle in -3.1f64..3.1, eta in 0.05f64..4.0, terms in 1usize..60) {
        let spec = ModeSpec::quon(eta, C64::from_polar(r, angle)).unwrap();
        let s = occupation_series(&spec, terms).unwrap();
        let exact = occupation(&spec).unwrap();
        prop_assert!((s.value - exact).norm() <= s.tail_bound * (1.0 + 1e-9) + 1e-15);
    }
}

/// `(1/Z) sum_{n<k} n_q e^{-eta n}` with every phase taken from the angle directly.
fn direct_average(k: u32, eta: f64) -> C64 {
    let q = C64::from_polar(1.0, 2.0 * std::f64::consts::PI / k as f64);
    let mut num = C64::new(0.0, 0.0);
    let mut z = 0.0;
    for n in 0..k {
        let bracket: C64 = (0..n).map(|j| q.powu(j)).sum();
        let w = (-eta * n as f64).exp();
        num += bracket * w;
        z += w;
    }
    num / z
}

#[test]
fn finite_sum_equals_the_closed_form() {
    for k in 2..=8 {
        for eta in [0.3, 0.7, 1.5] {
            let spec = ModeSpec::kfermion(eta, k).unwrap();
            let cmp = occupation_finite_sum(&spec).unwrap();
            assert!(cmp.difference < 1e-12, "k = {k}, eta = {eta}: {}", cmp.difference);
            assert!((direct_average(k, eta) - cmp.closed_form).norm() < 1e-12, "k = {k}, eta = {eta}");
        }
    }
}

#[test]
fn fermion_and_boson_limits() {
    for eta in [0.3f64, 0.7, 1.5, 4.0] {
        let fd = 1.0 / (eta.exp() + 1.0);
        let two = occupation(&ModeSpec::kfermion(eta, 2).unwrap()).unwrap();
        assert!((two.re - fd).abs() <= 4.0 * f64::EPSILON * fd && two.im.abs() < 1e-16, "eta = {eta}");

        let be_z = 1.0 / (1.0 - (-eta).exp());
        let z200 = partition_mode(&ModeSpec::kfermion(eta, 200).unwrap()).unwrap();
        assert!((z200 - be_z).abs() < 1e-8, "eta = {eta}");
    }
}

#[test]
fn partition_grows_monotonically_to_the_boson() {
    for eta in [0.05, 0.3, 1.0, 3.0] {
        let boson = partition_mode(&ModeSpec::quon(eta, 1.0).unwrap()).unwrap();
        let mut prev = 0.0;
        for k in 2..=400 {
            let z = partition_mode(&ModeSpec::kfermion(eta, k).unwrap()).unwrap();
            assert!(z >= prev && z <= boson * (1.0 + 1e-15), "eta = {eta}, k = {k}");
            prev = z;
        }
        assert!((boson - prev) / boson < (-eta * 400.0).exp() * 1.01 + 1e-15, "eta = {eta}");
    }
}
