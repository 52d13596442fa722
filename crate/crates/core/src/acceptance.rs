//! The acceptance suite: ten criteria, each a list of checks with pinned
//! tolerances. Randomized checks draw from [`crate::random`] with the given seed.
//!
//! A check passes when `value <= tol`. Exact checks use `tol = 0` and count
//! mismatches or report a floating residual that must vanish identically.

use std::f64::consts::E;

use serde::Serialize;

use crate::braid::{
    braid_residual, compatibility_residual, deformed_wedge, lift, q_symmetrizer, ybe_residual, CMatrix, LambdaMatrix,
    SymmetrizerNorm, TensorOperator, WedgeConvention,
};
use crate::coherent::{
    build_cs, continuity_check, eigenstate_residual, overlap, overlap_closed_form, resolution_check_jackson,
};
use crate::error::Result;
use crate::fock::{build_rep, nilpotency_residual, verify_algebra, FockRep, REL_ADAG_N, REL_A_N};
use crate::graded::{
    build_graded_cs, closed_form_h, graded_overlap, graded_resolution, resolution_scan, supercoherent, CyclicElement,
    CyclotomicScalar, GradedElement,
};
use crate::ncforms::{exterior_d, NCForm, NCParams, NCPolynomial};
use crate::qcalc::{jackson_moment, jackson_moment_unshifted, qexp_auto, qfactorial, radius, ExpVariant, QParams, C64};
use crate::quonstat::{occupation, occupation_finite_sum, occupation_series, ModeSpec};
use crate::random::{self, Rng64};

pub const DEFAULT_SEED: u64 = 20240607;

pub const BRAID_TOL: f64 = 1e-12;
pub const SYMMETRIZER_TOL: f64 = 1e-12;
pub const D_SQUARED_TOL: f64 = 1e-12;
pub const OSCILLATOR_TOL: f64 = 1e-12;
pub const NILPOTENCY_TOL: f64 = 1e-12;
pub const MOMENT_REL_TOL: f64 = 1e-8;
pub const RESOLUTION_TOL: f64 = 1e-6;
pub const OVERLAP_TOL: f64 = 1e-10;
pub const FINITE_SUM_TOL: f64 = 1e-12;
/// Relative rounding allowance for the Fermi-Dirac and Bose-Einstein limits.
pub const CLASSICAL_DIST_REL_TOL: f64 = 4.0 * f64::EPSILON;
pub const BOSON_SECTOR_TOL: f64 = 1e-12;
/// Allowance for rounding in identities that hold exactly in real arithmetic.
pub const ROUNDING_TOL: f64 = 1e-14;
/// Deformations used for the `q -> 1` rate checks.
pub const LIMIT_STEPS: [f64; 3] = [1e-2, 1e-3, 1e-4];

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub label: String,
    pub value: f64,
    pub tol: f64,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CriterionReport {
    pub id: u8,
    pub title: &'static str,
    pub seed: u64,
    pub passed: bool,
    pub checks: Vec<Check>,
    /// Derived facts that are reported rather than asserted.
    pub notes: Vec<String>,
}

impl CriterionReport {
    fn new(id: u8, title: &'static str, seed: u64) -> Self {
        Self { id, title, seed, passed: true, checks: Vec::new(), notes: Vec::new() }
    }

    fn check(&mut self, label: impl Into<String>, value: f64, tol: f64) {
        let passed = value <= tol;
        self.passed &= passed;
        self.checks.push(Check { label: label.into(), value, tol, passed });
    }

    /// A check that failed to run counts as a failure with an infinite value.
    fn check_result(&mut self, label: impl Into<String>, value: Result<f64>, tol: f64) {
        let label = label.into();
        match value {
            Ok(v) => self.check(label, v, tol),
            Err(e) => {
                self.notes.push(format!("{label}: {e}"));
                self.check(label, f64::INFINITY, tol);
            }
        }
    }

    fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    /// `[PASS] 4 title (worst check)` on one line.
    pub fn summary_line(&self) -> String {
        let worst = self
            .checks
            .iter()
            .max_by(|a, b| {
                (a.value / a.tol.max(f64::MIN_POSITIVE)).total_cmp(&(b.value / b.tol.max(f64::MIN_POSITIVE)))
            })
            .map(|c| format!("{} = {:.3e} (tol {:.0e})", c.label, c.value, c.tol))
            .unwrap_or_default();
        format!("[{}] {:>2} {}: {}", if self.passed { "PASS" } else { "FAIL" }, self.id, self.title, worst)
    }
}

pub const TITLES: [&str; 10] = [
    "braid and Yang-Baxter equations",
    "q-symmetrizer limits",
    "d^2 = 0",
    "oscillator relations",
    "k-fermion nilpotency",
    "Jackson resolution of unity",
    "coherent-state identities",
    "quon statistics",
    "graded sector",
    "classical limits",
];

pub fn run_criterion(id: u8, seed: u64) -> Option<CriterionReport> {
    Some(match id {
        1 => braid_ybe(seed),
        2 => symmetrizer_limits(seed),
        3 => d_squared(seed),
        4 => oscillator_relations(seed),
        5 => kfermion_nilpotency(seed),
        6 => jackson_resolution(seed),
        7 => coherent_identities(seed),
        8 => quon_statistics(seed),
        9 => graded_sector(seed),
        10 => classical_limits(seed),
        _ => return None,
    })
}

pub fn run_all(seed: u64) -> Vec<CriterionReport> {
    (1..=10).filter_map(|id| run_criterion(id, seed)).collect()
}

fn sub_rng(seed: u64, id: u64) -> Rng64 {
    random::rng(seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(id))
}

fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// 50 random multiparametric `Lambda`, `d` cycling through 2, 3, 4.
pub fn braid_ybe(seed: u64) -> CriterionReport {
    let mut rep = CriterionReport::new(1, TITLES[0], seed);
    let mut rng = sub_rng(seed, 1);
    let (mut braid, mut ybe, mut compat) = (0.0f64, 0.0f64, 0.0f64);
    for t in 0..50 {
        let d = 2 + t % 3;
        match random::multiparametric_pair(&mut rng, d) {
            Ok((lam, s)) => {
                braid = braid.max(braid_residual(&lam));
                ybe = ybe.max(ybe_residual(&lam));
                compat = compat.max(compatibility_residual(&lam, &s).unwrap_or(f64::INFINITY));
            }
            Err(e) => {
                rep.note(e.to_string());
                braid = f64::INFINITY;
            }
        }
    }
    rep.check("max braid residual, 50 instances", braid, BRAID_TOL);
    rep.check("max Yang-Baxter residual of P Lambda", ybe, BRAID_TOL);
    rep.check("max |(E - S)(E + Lambda)|", compat, BRAID_TOL);
    rep
}

/// Permutations of `0..n` with their parity, by insertion.
fn signed_permutations(n: usize) -> Vec<(Vec<usize>, bool)> {
    let mut out = vec![(Vec::new(), false)];
    for k in 0..n {
        let mut next = Vec::new();
        for (p, odd) in &out {
            for pos in 0..=p.len() {
                let mut q = p.clone();
                q.insert(pos, k);
                // inserting k at pos jumps over len - pos smaller entries
                next.push((q, *odd ^ ((p.len() - pos) % 2 == 1)));
            }
        }
        out = next;
    }
    out
}

/// `(1/n!) sum_pi (+-1)^pi pi` acting on tensor slots, built from scratch.
fn brute_symmetrizer(n: usize, d: usize, anti: bool) -> CMatrix {
    let size = d.pow(n as u32);
    let perms = signed_permutations(n);
    let scale = 1.0 / perms.len() as f64;
    let mut m = CMatrix::zeros(size, size);
    for (perm, odd) in perms {
        let sign = if anti && odd { -1.0 } else { 1.0 };
        for r in 0..size {
            let mut digits = vec![0; n];
            let mut x = r;
            for slot in (0..n).rev() {
                digits[slot] = x % d;
                x /= d;
            }
            let col = perm.iter().fold(0, |acc, &k| acc * d + digits[k]);
            m[(r, col)] += C64::new(sign * scale, 0.0);
        }
    }
    m
}

pub fn symmetrizer_limits(seed: u64) -> CriterionReport {
    let mut rep = CriterionReport::new(2, TITLES[1], seed);
    let (mut brute, mut idem) = (0.0f64, 0.0f64);
    for (d, n_max) in [(2, 5), (3, 4)] {
        for n in 1..=n_max {
            for (q, anti) in [(1.0, false), (-1.0, true)] {
                match q_symmetrizer(n, C64::new(q, 0.0), d, SymmetrizerNorm::InverseFactorial) {
                    Ok(op) => {
                        let m = op.matrix();
                        brute = brute.max(max_abs(&(m - brute_symmetrizer(n, d, anti))));
                        idem = idem.max(max_abs(&(m * m - m)));
                    }
                    Err(e) => {
                        rep.note(e.to_string());
                        brute = f64::INFINITY;
                    }
                }
            }
        }
    }
    rep.check("max |Q_n - brute-force (anti)symmetrizer|, n <= 5", brute, SYMMETRIZER_TOL);
    rep.check("max |Q_n^2 - Q_n|", idem, SYMMETRIZER_TOL);

    let q = C64::new(0.7, 0.3);
    let eq65 = (|| -> Result<f64> {
        let mut worst = 0.0f64;
        for d in [2, 3] {
            let p = LambdaMatrix::permutation(d);
            let p12 = lift(&p, 1, 3)?;
            let p23 = lift(&p, 2, 3)?;
            let e = TensorOperator::identity(d, 3);
            let a = p12.compose(&p23)?;
            let b = p23.compose(&p12)?;
            let c = b.compose(&p23)?;
            let expected = e
                .add(&p12.scale(q))?
                .add(&p23.scale(q))?
                .add(&a.scale(q * q))?
                .add(&b.scale(q * q))?
                .add(&c.scale(q * q * q))?;
            let got = q_symmetrizer(3, q, d, SymmetrizerNorm::None)?;
            worst = worst.max(got.max_abs_diff(&expected)?);
        }
        Ok(worst)
    })();
    rep.check_result(
        "unnormalized Q_3 against E + qP12 + qP23 + q^2(P12P23 + P23P12) + q^3 P23P12P23",
        eq65,
        SYMMETRIZER_TOL,
    );
    rep
}

pub fn d_squared(seed: u64) -> CriterionReport {
    let mut rep = CriterionReport::new(3, TITLES[2], seed);
    let mut rng = sub_rng(seed, 3);
    let mut worst = 0.0f64;
    let mut nonzero_d = 0usize;
    for t in 0..50 {
        let n = 2 + t % 3;
        let degree = t % 3;
        let run = (|| -> Result<(f64, bool)> {
            let params = random::nc_phases(&mut rng, n)?;
            let form = random::nc_form(&mut rng, &params, degree)?;
            let d1 = exterior_d(&form);
            Ok((exterior_d(&d1).max_abs(), d1.max_abs() > 0.0))
        })();
        match run {
            Ok((v, nz)) => {
                worst = worst.max(v);
                nonzero_d += nz as usize;
            }
            Err(e) => {
                rep.note(e.to_string());
                worst = f64::INFINITY;
            }
        }
    }
    rep.check("max |d^2 w| coefficient, 50 random forms", worst, D_SQUARED_TOL);
    rep.note(format!("{nonzero_d} of 50 forms have d w != 0"));
    rep
}

fn interior(m: &CMatrix) -> f64 {
    let k = m.nrows() - 1;
    max_abs(&m.view((0, 0), (k, k)).into_owned())
}

/// `a a+ - q a+ a` minus the expected diagonal, on the interior block.
fn qmutator_against(rep: &FockRep, target: impl Fn(usize) -> C64) -> f64 {
    let lhs = &rep.a * &rep.a_dag - &rep.a_dag * &rep.a * rep.params.q;
    let t = CMatrix::from_fn(rep.dim, rep.dim, |r, c| if r == c { target(r) } else { C64::new(0.0, 0.0) });
    interior(&(lhs - t))
}

pub fn oscillator_relations(seed: u64) -> CriterionReport {
    use rand::Rng;
    let mut rep = CriterionReport::new(4, TITLES[3], seed);
    let mut rng = sub_rng(seed, 4);
    const D: usize = 16;
    let (mut one, mut two, mut sym, mut chain, mut number) = (0.0f64, 0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for t in 0..20 {
        let params = match t % 3 {
            0 => QParams::one_param(rng.gen_range(0.1..0.95)),
            1 => QParams::two_param(rng.gen_range(0.3..0.95), rng.gen_range(0.8..1.25)),
            _ => QParams::symmetric(rng.gen_range(0.75..1.3)),
        };
        let fock = match build_rep(&params, D) {
            Ok(f) => f,
            Err(e) => {
                rep.note(e.to_string());
                chain = f64::INFINITY;
                continue;
            }
        };
        let (q, p) = (params.q, params.p);
        match t % 3 {
            0 => one = one.max(qmutator_against(&fock, |_| C64::new(1.0, 0.0))),
            1 => two = two.max(qmutator_against(&fock, |n| p.powi(-(n as i32)))),
            _ => sym = sym.max(qmutator_against(&fock, |n| q.powi(-(n as i32)))),
        }
        let report = verify_algebra(&fock);
        for (name, v) in &report.residuals {
            if name == REL_A_N || name == REL_ADAG_N {
                // relative to the largest ladder entry
                number = number.max(*v / max_abs(&fock.a).max(1.0));
            } else {
                chain = chain.max(*v);
            }
        }
    }
    rep.check("a a+ - q a+ a = 1, one-parameter draws", one, OSCILLATOR_TOL);
    rep.check("a a+ - q a+ a = p^-N, two-parameter draws", two, OSCILLATOR_TOL);
    rep.check("a a+ - q a+ a = q^-N, symmetric draws", sym, OSCILLATOR_TOL);
    rep.check("q-mutation chain with Delta and Delta'", chain, OSCILLATOR_TOL);
    rep.check("[a, N] = a and [a+, N] = -a (exact up to rounding)", number, ROUNDING_TOL);
    rep
}

pub fn kfermion_nilpotency(seed: u64) -> CriterionReport {
    let mut rep = CriterionReport::new(5, TITLES[4], seed);
    for k in 2..=8u32 {
        rep.check_result(
            format!("max(|a^{k}|, |(a+)^{k}|), D = {}", 2 * k),
            nilpotency_residual(k, 2 * k as usize),
            NILPOTENCY_TOL,
        );
    }
    rep
}

pub fn jackson_resolution(seed: u64) -> CriterionReport {
    let mut rep = CriterionReport::new(6, TITLES[5], seed);
    for q in [0.3, 0.5, 0.9] {
        let params = QParams::one_param(q);
        let moments = (|| -> Result<(f64, f64)> {
            let (mut worst, mut unshifted) = (0.0f64, 0.0f64);
            for n in 0..=20u32 {
                let target = qfactorial(n, &params)?.re;
                let m = jackson_moment(n, q, 1e-16)?.value.re;
                worst = worst.max((m - target).abs() / target);
                let shifted = q.powi(n as i32 + 1) * target;
                let u = jackson_moment_unshifted(n, q, 1e-16)?.value.re;
                unshifted = unshifted.max((u - shifted).abs() / shifted);
            }
            Ok((worst, unshifted))
        })();
        match moments {
            Ok((w, p)) => {
                rep.check(format!("q = {q}: max_n<=20 rel |int x^n / exp_q(qx) d_qx - [n]!|"), w, MOMENT_REL_TOL);
                rep.note(format!("q = {q}: the unshifted weight 1/exp_q(x) gives q^(n+1) [n]! to rel {p:.1e}"));
            }
            Err(e) => rep.check_result(format!("q = {q}: moments"), Err(e), MOMENT_REL_TOL),
        }
        rep.check_result(
            format!("q = {q}: max |M_nn - 1| on a 12-level block"),
            resolution_check_jackson(&params, 40, 12, 1e-16).map(|r| r.residual),
            RESOLUTION_TOL,
        );
    }
    rep
}

/// `|z|^2` uniform below `0.8 min(R, 5)`.
fn random_label(rng: &mut Rng64, params: &QParams) -> C64 {
    use rand::Rng;
    let r = radius(params).min(5.0);
    let x: f64 = rng.gen_range(0.0..0.8) * r;
    C64::from_polar(x.sqrt(), rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI))
}

pub fn coherent_identities(seed: u64) -> CriterionReport {
    use rand::Rng;
    let mut rep = CriterionReport::new(7, TITLES[6], seed);
    let mut rng = sub_rng(seed, 7);
    let (mut tail_excess, mut interior, mut ov, mut cont) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for t in 0..30 {
        let params = if t % 2 == 0 {
            QParams::one_param(rng.gen_range(0.2..0.9))
        } else {
            // q > 1 makes the two-parameter series entire; q, 1/p < 1 would give R = 0
            QParams::two_param(rng.gen_range(1.05..1.6), rng.gen_range(0.8..1.25))
        };
        let (z1, z2) = (random_label(&mut rng, &params), random_label(&mut rng, &params));
        let run = (|| -> Result<(f64, f64, f64, f64)> {
            let a = build_cs(&params, z1, None, true)?;
            let fock = build_rep(&params, a.dim)?;
            let eig = eigenstate_residual(&a, &fock)?;
            // |r| <= |interior| + |top level| <= interior + tail bound
            let excess = (eig.full - eig.tail_bound - eig.interior).max(0.0);
            let b = build_cs(&params, z2, None, true)?;
            let dim = a.dim.max(b.dim) + 5;
            let (a, b) = (build_cs(&params, z1, Some(dim), true)?, build_cs(&params, z2, Some(dim), true)?);
            let o = (overlap(&a, &b)? - overlap_closed_form(&a, &b)?).norm();
            Ok((excess, eig.interior, o, continuity_check(&a, &b)?.difference))
        })();
        match run {
            Ok((e, i, o, c)) => {
                tail_excess = tail_excess.max(e);
                interior = interior.max(i);
                ov = ov.max(o);
                cont = cont.max(c);
            }
            Err(e) => {
                rep.note(format!("{params:?}, z = {z1}, {z2}: {e}"));
                ov = f64::INFINITY;
            }
        }
    }
    rep.check("eigen residual in excess of the analytic tail bound", tail_excess, ROUNDING_TOL);
    rep.check("eigen residual below the top level", interior, OVERLAP_TOL);
    rep.check("|<z|z'> - closed form|, 30 pairs", ov, OVERLAP_TOL);
    rep.check("| ||z> - |z'>||^2 - 2(1 - Re<z|z'>) |", cont, OVERLAP_TOL);
    rep
}

pub fn quon_statistics(seed: u64) -> CriterionReport {
    use rand::Rng;
    let mut rep = CriterionReport::new(8, TITLES[7], seed);
    let finite = (|| -> Result<f64> {
        let mut worst = 0.0f64;
        for k in 2..=8 {
            for eta in [0.25, 1.0, 3.0] {
                worst = worst.max(occupation_finite_sum(&ModeSpec::kfermion(eta, k)?)?.difference);
            }
        }
        Ok(worst)
    })();
    rep.check_result("|(1/Z) sum [n] e^(-eta n) - 1/(e^eta - q)|, k <= 8", finite, FINITE_SUM_TOL);
    let limits = (|| -> Result<f64> {
        let mut worst = 0.0f64;
        for eta in [0.5f64, 1.0, 2.0, 5.0] {
            let fd = 1.0 / (eta.exp() + 1.0);
            let be = 1.0 / (eta.exp() - 1.0);
            let f = occupation(&ModeSpec::quon(eta, -1.0)?)?;
            let b = occupation(&ModeSpec::quon(eta, 1.0)?)?;
            worst = worst.max((f.re - fd).abs() / fd).max((b.re - be).abs() / be).max(f.im.abs()).max(b.im.abs());
        }
        Ok(worst)
    })();
    rep.check_result("q = -1, 1 against Fermi-Dirac and Bose-Einstein (relative)", limits, CLASSICAL_DIST_REL_TOL);
    let mut rng = sub_rng(seed, 8);
    let mut excess = 0.0f64;
    for _ in 0..50 {
        let q = C64::from_polar(rng.gen_range(0.0..1.0), rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI));
        let eta: f64 = rng.gen_range(0.1..3.0);
        let run = (|| -> Result<f64> {
            let spec = ModeSpec::quon(eta, q)?;
            let s = occupation_series(&spec, 40)?;
            Ok(((s.value - occupation(&spec)?).norm() - s.tail_bound * (1.0 + 1e-9) - 1e-15).max(0.0))
        })();
        excess = excess.max(run.unwrap_or(f64::INFINITY));
    }
    rep.check("series error in excess of its tail bound, 50 draws", excess, 0.0);
    rep
}

fn count(b: bool) -> f64 {
    if b {
        0.0
    } else {
        1.0
    }
}

pub fn graded_sector(seed: u64) -> CriterionReport {
    let mut rep = CriterionReport::new(9, TITLES[8], seed);
    let run = (|| -> Result<()> {
        let identity2 = vec![
            vec![CyclotomicScalar::one(2), CyclotomicScalar::zero(2)],
            vec![CyclotomicScalar::zero(2), CyclotomicScalar::one(2)],
        ];
        let m = graded_resolution(2, 1, &closed_form_h(2)?)?;
        rep.check("fermionic resolution with h = 1 - xibar xi differs from I", count(m == identity2), 0.0);
        rep.check("fermionic overlap differs from 1 + xibar xi", count(graded_overlap(2, 1)?.matches), 0.0);
        let ket2 = build_graded_cs(2, 1)?;
        rep.check("xi^2 != 0 for k = 2", count(GradedElement::xi(2, 1)?.pow(2).is_zero() && !ket2.is_zero()), 0.0);

        let xi = GradedElement::xi(3, 0)?;
        let xb = GradedElement::xibar(3, 0)?;
        rep.check(
            "xi^3 or xibar^3 nonzero",
            count(xi.pow(3).is_zero() && xb.pow(3).is_zero() && !xi.pow(2).is_zero()),
            0.0,
        );
        let mut cyclic_fail = 0;
        for dual in [false, true] {
            let gen = |a| CyclicElement::generator(4, dual, a);
            let rho = if dual { CyclotomicScalar::q_pow(3, 2) } else { CyclotomicScalar::q(3) };
            for (a, b, c) in [(0, 1, 2), (2, 0, 3), (1, 3, 0), (0, 0, 1)] {
                let abc = gen(a)?.try_mul(&gen(b)?)?.try_mul(&gen(c)?)?;
                let bca = gen(b)?.try_mul(&gen(c)?)?.try_mul(&gen(a)?)?;
                cyclic_fail += !abc.try_sub(&bca.scale(&rho))?.is_zero() as u32;
            }
            for w in [[0, 1, 2, 3], [3, 3, 1, 0], [2, 2, 2, 2]] {
                let prod = w.iter().try_fold(CyclicElement::one(4, dual), |acc, &a| acc.try_mul(&gen(a)?))?;
                cyclic_fail += !prod.is_zero() as u32;
            }
            cyclic_fail += !gen(1)?.try_mul(&gen(1)?)?.try_mul(&gen(1)?)?.is_zero() as u32;
        }
        rep.check("cyclic relation and quartic vanishing failures", cyclic_fail as f64, 0.0);

        let mut rng = sub_rng(seed, 9);
        let mut assoc_fail = 0;
        for (k, reorders) in [(2u32, 0..2u32), (3, 0..3)] {
            for j in reorders {
                for _ in 0..200 {
                    let (x, y, z) = (
                        random::graded_word(&mut rng, k, j),
                        random::graded_word(&mut rng, k, j),
                        random::graded_word(&mut rng, k, j),
                    );
                    assoc_fail += (&(&x * &y) * &z != &x * &(&y * &z)) as u32;
                }
            }
        }
        rep.check("associativity failures, 200 random word triples per (k, reorder)", assoc_fail as f64, 0.0);

        let scan = resolution_scan(3)?;
        for o in &scan {
            let h = match &o.solution {
                Some(s) => s.coefficients.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", "),
                None => "no solution".into(),
            };
            rep.note(format!(
                "xi xibar = ({}) xibar xi: h = ({h}); equals (-q, 1, 1): {}; overlap 1 + q^2 xibar xi - q (xibar xi)^2: {}",
                o.phase, o.matches_closed_form_h, o.overlap_matches
            ));
        }
        rep.check(
            "reorder conventions without a solve-mode result",
            scan.iter().filter(|o| o.solution.is_none() && o.unsolvable.is_none()).count() as f64,
            0.0,
        );

        let t = supercoherent(C64::new(0.6, -0.3), 24, 0)?;
        rep.check("graded sector of f(a+ xi)|0> differs from |xi>", count(t.graded_sector_exact), 0.0);
        rep.check("boson sector |e^(z b+)|0> - z^m/sqrt(m!)| (relative)", t.boson_residual, BOSON_SECTOR_TOL);
        rep.note(format!("f(xi a+)|0> - |xi> = {}", t.xi_first_discrepancy));
        Ok(())
    })();
    if let Err(e) = run {
        rep.check_result("graded checks", Err(e), 0.0);
    }
    rep
}

/// `(form indices, exponents, coefficient)` triples.
type Components = Vec<(Vec<usize>, Vec<u32>, C64)>;

fn classical_d(f: &NCPolynomial) -> Result<Components> {
    let mut out = Vec::new();
    for (c, poly) in exterior_d(&NCForm::function(f.clone())).components() {
        for (e, v) in poly.terms() {
            out.push((c.clone(), e.clone(), *v));
        }
    }
    Ok(out)
}

/// Largest coefficient difference between two lists of `(dx, monomial, coefficient)`.
fn component_distance(a: &[(Vec<usize>, Vec<u32>, C64)], b: &[(Vec<usize>, Vec<u32>, C64)]) -> f64 {
    use std::collections::BTreeMap;
    let mut m: BTreeMap<(Vec<usize>, Vec<u32>), C64> = BTreeMap::new();
    for (c, e, v) in a {
        *m.entry((c.clone(), e.clone())).or_default() += v;
    }
    for (c, e, v) in b {
        *m.entry((c.clone(), e.clone())).or_default() -= v;
    }
    m.values().map(|z| z.norm()).fold(0.0, f64::max)
}

fn glauber_distance(eps: f64) -> Result<f64> {
    let z = 0.5;
    let cs = build_cs(&QParams::one_param(1.0 - eps), C64::new(z, 0.0), Some(30), true)?;
    let mut fact = 1.0;
    let mut worst = 0.0f64;
    for n in 0..=10 {
        if n > 0 {
            fact *= n as f64;
        }
        let want = (-z * z / 2.0).exp() * z.powi(n) / fact.sqrt();
        worst = worst.max((cs.coeffs[n as usize].re - want).abs());
    }
    Ok(worst)
}

pub fn classical_limits(seed: u64) -> CriterionReport {
    let mut rep = CriterionReport::new(10, TITLES[9], seed);
    const D: usize = 12;
    // rate constants: |[a, a+] - 1| = eps [n] <= eps (D - 2); the other two are measured bounds with margin
    const CCR_RATE: f64 = D as f64;
    const GLAUBER_RATE: f64 = 0.1;
    const FORMS_RATE: f64 = 5.0;

    let ccr = |eps: f64| -> Result<f64> {
        let f = build_rep(&QParams::one_param(1.0 - eps), D)?;
        Ok(interior(&(&f.a * &f.a_dag - &f.a_dag * &f.a - CMatrix::identity(D, D))))
    };
    rep.check_result("q = 1: |[a, a+] - 1| on levels 0..D-2", ccr(0.0), ROUNDING_TOL);
    rep.check_result("q = 1: coherent state against Glauber, n <= 10", glauber_distance(0.0), ROUNDING_TOL);

    let forms = (|| -> Result<(f64, Vec<f64>)> {
        let classical = NCParams::classical(3)?;
        let f = |p: &NCParams| {
            NCPolynomial::from_terms(
                p,
                [
                    (vec![2, 1, 0], C64::new(1.0, 0.0)),
                    (vec![0, 1, 1], C64::new(3.0, 0.0)),
                    (vec![1, 1, 1], C64::new(0.0, -2.0)),
                ],
            )
        };
        // exact classical check: d(x0^2 x1) = 2 x0 x1 dx0 + x0^2 dx1
        let g = NCPolynomial::monomial(&classical, &[2, 1, 0], C64::new(1.0, 0.0))?;
        let expected = vec![(vec![0], vec![1, 1, 0], C64::new(2.0, 0.0)), (vec![1], vec![2, 0, 0], C64::new(1.0, 0.0))];
        let exact = component_distance(&classical_d(&g)?, &expected);
        let base = classical_d(&f(&classical)?)?;
        let mut rates = Vec::new();
        for eps in LIMIT_STEPS {
            let theta = vec![
                vec![0.0, 0.7 * eps, -1.1 * eps],
                vec![-0.7 * eps, 0.0, 0.4 * eps],
                vec![1.1 * eps, -0.4 * eps, 0.0],
            ];
            let p = NCParams::phases(&theta)?;
            rates.push(component_distance(&classical_d(&f(&p)?)?, &base) / eps);
        }
        Ok((exact, rates))
    })();
    match forms {
        Ok((exact, rates)) => {
            rep.check("classical d(x0^2 x1) against 2 x0 x1 dx0 + x0^2 dx1", exact, 0.0);
            let worst = rates.iter().copied().fold(0.0, f64::max);
            rep.check("max |d_theta f - d f| / eps over eps = 1e-2, 1e-3, 1e-4", worst, FORMS_RATE);
        }
        Err(e) => rep.check_result("exterior calculus limit", Err(e), 0.0),
    }

    let mut ccr_rate = 0.0f64;
    let mut glauber_rate = 0.0f64;
    for eps in LIMIT_STEPS {
        ccr_rate = ccr_rate.max(ccr(eps).unwrap_or(f64::INFINITY) / eps);
        glauber_rate = glauber_rate.max(glauber_distance(eps).unwrap_or(f64::INFINITY) / eps);
    }
    rep.check("max |[a, a+] - 1| / (1 - q) for q = 1 - eps", ccr_rate, CCR_RATE);
    rep.check("max Glauber coefficient error / (1 - q), |z| = 0.5", glauber_rate, GLAUBER_RATE);

    let wedge = (|| -> Result<f64> {
        let p = LambdaMatrix::permutation(2);
        let e = |i: usize| (0..2).map(|j| C64::new((i == j) as u8 as f64, 0.0)).collect::<Vec<_>>();
        let w = deformed_wedge(&[e(0), e(1)], &p, WedgeConvention::FormMinus)?;
        let want = [0.0, 1.0, -1.0, 0.0];
        Ok(w.iter().zip(want).map(|(a, b)| (a - C64::new(b, 0.0)).norm()).fold(0.0, f64::max))
    })();
    rep.check_result("Lambda = P wedge e0 ^ e1 against e0 (x) e1 - e1 (x) e0", wedge, 0.0);

    let exp = qexp_auto(C64::new(1.0, 0.0), &QParams::one_param(1.0 - 1e-8), ExpVariant::Type1, 1e-14)
        .map(|s| (s.value.re - E).abs());
    rep.check_result("|exp_q(1) - e| at q = 1 - 1e-8", exp, 1e-6);
    rep
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn brute_force_permutations() {
        let perms = signed_permutations(3);
        assert_eq!(perms.len(), 6);
        let odd = perms.iter().filter(|(_, o)| *o).count();
        assert_eq!(odd, 3);
        let anti = brute_symmetrizer(2, 2, true);
        assert_eq!(anti[(1, 2)], C64::new(-0.5, 0.0));
    }

    #[test]
    fn reports_are_deterministic() {
        let a = serde_json::to_string(&symmetrizer_limits(3)).unwrap();
        let b = serde_json::to_string(&symmetrizer_limits(3)).unwrap();
        assert_eq!(a, b);
        assert!(run_criterion(11, 0).is_none());
    }
}
