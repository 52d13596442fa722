use proptest::prelude::*;
use qonkit::braid::{
    braid_residual, compatibility_residual, form_minus_left, form_minus_right, multiparametric_lambda,
    multiparametric_s, q_symmetrizer, wedge_space_dimension, ybe_residual, CMatrix, LambdaMatrix, SparseVec,
    SymmetrizerNorm,
};
use qonkit::qcalc::C64;
use qonkit::random::{braid_solution, complex, dense_lambda, rng};

fn random_tensor(seed: u64, len: usize) -> SparseVec {
    let mut r = rng(seed);
    (0..len).map(|i| (i, complex(&mut r))).collect()
}

fn max_diff(a: &SparseVec, b: &SparseVec) -> f64 {
    a.keys()
        .chain(b.keys())
        .map(|k| {
            let x = a.get(k).copied().unwrap_or_default();
            let y = b.get(k).copied().unwrap_or_default();
            (x - y).norm()
        })
        .fold(0.0, f64::max)
}

fn all_perms(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in all_perms(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

fn sign(perm: &[usize]) -> f64 {
    let mut seen = vec![false; perm.len()];
    let mut s = 1.0;
    for start in 0..perm.len() {
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = perm[i];
            len += 1;
        }
        if len > 0 && len % 2 == 0 {
            s = -s;
        }
    }
    s
}

/// `(1/n!) sum_sigma chi(sigma) [J = I o sigma]` on `(C^d)^{(x) n}`.
fn brute_symmetrizer(d: usize, n: usize, antisymmetric: bool) -> CMatrix {
    let size = d.pow(n as u32);
    let perms = all_perms(n);
    let norm = 1.0 / perms.len() as f64;
    let digits = |mut r: usize| {
        let mut v = vec![0; n];
        for slot in v.iter_mut().rev() {
            *slot = r % d;
            r /= d;
        }
        v
    };
    let mut m = CMatrix::zeros(size, size);
    for row in 0..size {
        let idx = digits(row);
        for perm in &perms {
            let col = perm.iter().fold(0, |acc, &p| acc * d + idx[p]);
            let chi = if antisymmetric { sign(perm) } else { 1.0 };
            m[(row, col)] += C64::new(chi * norm, 0.0);
        }
    }
    m
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn triple_wedge_is_associative(seed in any::<u64>(), d in 2usize..=4) {
        let lam = braid_solution(&mut rng(seed), d).unwrap();
        prop_assume!(braid_residual(&lam) < 1e-12);
        let v = random_tensor(seed ^ 0x5eed, d * d * d);
        let left = form_minus_left(&v, &lam, 3);
        let right = form_minus_right(&v, &lam, 3);
        prop_assert!(max_diff(&left, &right) < 1e-10);
    }

    #[test]
    fn exchange_relation_holds_for_reciprocal_tables(
        seed in any::<u64>(),
        d in 2usize..=4,
    ) {
        let mut r = rng(seed);
        let mut q = CMatrix::from_element(d, d, C64::new(1.0, 0.0));
        for i in 0..d {
            for j in i + 1..d {
                let z = C64::from_polar(0.5 + complex(&mut r).norm(), 3.0 * complex(&mut r).re);
                q[(i, j)] = z;
                q[(j, i)] = z.inv();
            }
        }
        let lam = multiparametric_lambda(d, &q).unwrap();
        let s = multiparametric_s(d, &vec![C64::new(1.0, 0.0); d], &q).unwrap();
        prop_assert!(compatibility_residual(&lam, &s).unwrap() < 1e-12);
    }
}

#[test]
fn braid_and_ybe_vanish_together() {
    for seed in 0..50u64 {
        let d = 2 + (seed % 2) as usize;
        let solution = braid_solution(&mut rng(seed), d).unwrap();
        assert!(braid_residual(&solution) < 1e-10, "seed {seed}");
        assert!(ybe_residual(&solution) < 1e-10, "seed {seed}");

        let other = dense_lambda(&mut rng(seed + 1000), d).unwrap();
        assert!(braid_residual(&other) > 1e-10, "seed {seed}");
        assert!(ybe_residual(&other) > 1e-10, "seed {seed}");
    }
}

#[test]
fn symmetrizers_at_plus_minus_one_are_the_projectors() {
    for n in 1..=5 {
        for (q, anti) in [(1.0, false), (-1.0, true)] {
            let qn = q_symmetrizer(n, C64::new(q, 0.0), 2, SymmetrizerNorm::InverseFactorial).unwrap();
            let m = qn.matrix();
            let oracle = brute_symmetrizer(2, n, anti);
            let diff = (m - &oracle).iter().map(|z| z.norm()).fold(0.0, f64::max);
            assert!(diff < 1e-12, "n = {n}, q = {q}: {diff}");
            let idem = (m * m - m).iter().map(|z| z.norm()).fold(0.0, f64::max);
            assert!(idem < 1e-12, "n = {n}, q = {q}: {idem}");
        }
    }
}

#[test]
fn classical_wedge_dimensions_are_binomial() {
    for d in 1..=5 {
        let p_mat = LambdaMatrix::permutation(d);
        let mut total = 0;
        for p in 0..=d {
            let dim = wedge_space_dimension(p, &p_mat).unwrap();
            assert_eq!(dim, binomial(d, p), "d = {d}, p = {p}");
            total += dim;
        }
        assert_eq!(total, 1 << d);
    }
}
