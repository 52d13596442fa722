use serde_json::{json, Value};

use qonkit::acceptance::{
    self, BOSON_SECTOR_TOL, BRAID_TOL, D_SQUARED_TOL, FINITE_SUM_TOL, MOMENT_REL_TOL, NILPOTENCY_TOL, OSCILLATOR_TOL,
    OVERLAP_TOL, RESOLUTION_TOL, ROUNDING_TOL,
};
use qonkit::braid::{
    braid_residual, compatibility_residual, form_minus_left, form_minus_right, multiparametric_lambda,
    multiparametric_s, wedge_space_dimension, ybe_residual, LambdaMatrix, SparseVec, RANK_CAP,
};
use qonkit::coherent::{build_cs, eigenstate_residual, resolution_check_jackson};
use qonkit::fock::{build_rep, verify_algebra, REL_DELTA_A, REL_DELTA_ADAG, REL_QMUTATOR};
use qonkit::graded::{
    build_graded_bra, build_graded_cs, closed_form_h, graded_overlap, graded_resolution, resolution_scan,
    supercoherent, CyclotomicScalar, GradedElement,
};
use qonkit::ncforms::{exterior_d, normal_order, normal_order_by_swaps, NCForm, NCParams, NCPolynomial};
use qonkit::qcalc::{
    jackson_moment, qexp_auto, qfactorial, qnumber, radius, ExpVariant, QParams, Scheme, C64, DEFAULT_TOL,
};
use qonkit::quonstat::{occupation, occupation_finite_sum, occupation_series, partition_mode, ModeSpec};
use qonkit::random;

use crate::report::{Format, Report, Table};
use crate::{Command, Failure, ParamArgs, Preset, SchemeArg, VariantArg};

type Outcome = Result<(Report, Format), Failure>;

pub fn run(cmd: &Command) -> Outcome {
    match cmd {
        Command::Qcalc { params, n, x, variant, common } => {
            Ok((qcalc(params, *n, *x, *variant, common)?, common.format))
        }
        Command::BraidCheck { preset, d, q, lambda, export, dims, common } => {
            Ok((braid_check(*preset, *d, *q, lambda.as_deref(), export.as_deref(), *dims, common)?, common.format))
        }
        Command::NcformsCheck { n, trials, max_degree, classical, poly, common } => {
            Ok((ncforms_check(*n, *trials, *max_degree, *classical, poly.as_deref(), common)?, common.format))
        }
        Command::FockVerify { params, dim, matrices, common } => {
            Ok((fock_verify(params, *dim, *matrices, common)?, common.format))
        }
        Command::CsResolution { params, n, z, dim, common } => {
            Ok((cs_resolution(params, *n, *z, *dim, common)?, common.format))
        }
        Command::QuonDist { k, q, eta, eta_grid, common } => {
            let etas = match (eta, eta_grid) {
                (Some(e), _) => vec![*e],
                (None, Some(g)) => g.0.clone(),
                (None, None) => return Err(Failure::Usage("one of --eta or --eta-grid is required".into())),
            };
            Ok((quon_dist(*k, *q, &etas, common)?, common.format))
        }
        Command::GradedCheck { k, reorder, solve_h, z, dim_boson, triples, common } => Ok((
            graded_check(
                *k,
                reorder.unwrap_or(if *k == 2 { 1 } else { 0 }),
                *solve_h,
                *z,
                *dim_boson,
                *triples,
                common,
            )?,
            common.format,
        )),
        Command::AllAcceptance { only, common } => Ok((all_acceptance(only, common)?, common.format)),
    }
}

fn c(z: C64) -> Value {
    json!([z.re, z.im])
}

fn scheme_name(s: SchemeArg) -> &'static str {
    match s {
        SchemeArg::OneParam => "one-param",
        SchemeArg::TwoParam => "two-param",
        SchemeArg::Symmetric => "symmetric",
    }
}

fn build_params(args: &ParamArgs) -> Result<QParams, Failure> {
    let scheme = match args.scheme {
        SchemeArg::OneParam => Scheme::OneParam,
        SchemeArg::TwoParam => Scheme::TwoParam,
        SchemeArg::Symmetric => Scheme::Symmetric,
    };
    let params = match (args.k, args.q) {
        (Some(k), _) => QParams::root_of_unity(scheme, k)?,
        (None, Some(q)) => match scheme {
            Scheme::OneParam => QParams::one_param(q),
            Scheme::TwoParam => QParams::two_param(q, args.p),
            Scheme::Symmetric => QParams::symmetric(q),
        },
        (None, None) => return Err(Failure::Usage("one of --q or --k is required".into())),
    };
    params.validate()?;
    Ok(params)
}

fn params_json(args: &ParamArgs, params: &QParams) -> Value {
    json!({
        "scheme": scheme_name(args.scheme),
        "q": c(params.q),
        "p": c(params.p),
        "k": params.k,
    })
}

/// `[n+1] - q [n]` as a formula and its expected value for the scheme.
fn recurrence_target(params: &QParams, n: u32) -> (&'static str, C64) {
    match params.scheme {
        Scheme::OneParam => ("[n+1] - q[n] = 1", C64::new(1.0, 0.0)),
        Scheme::TwoParam => ("[n+1] - q[n] = p^-n", params.p.powi(-(n as i32))),
        Scheme::Symmetric => ("[n+1] - q[n] = q^-n", params.q_pow(-(n as i64))),
    }
}

fn jackson_q(params: &QParams) -> Option<f64> {
    let real = params.q.im == 0.0 && params.q.re > 0.0 && params.q.re < 1.0;
    (params.scheme == Scheme::OneParam && params.k.is_none() && real).then_some(params.q.re)
}

fn qcalc(
    args: &ParamArgs,
    n_max: u32,
    x: Option<C64>,
    variant: VariantArg,
    common: &crate::Common,
) -> Result<Report, Failure> {
    let params = build_params(args)?;
    let variant = match variant {
        VariantArg::Type1 => ExpVariant::Type1,
        VariantArg::Type2 => ExpVariant::Type2,
    };
    let mut config = params_json(args, &params);
    config["n"] = json!(n_max);
    config["x"] = x.map(c).unwrap_or(Value::Null);
    config["variant"] = json!(variant);
    let mut rep = Report::new("qcalc", common.seed, config);

    let mut table = Table::new(&["n", "bracket_re", "bracket_im", "factorial_re", "factorial_im"]);
    let mut worst: f64 = 0.0;
    let mut tag = "";
    for n in 0..=n_max {
        let b = qnumber(n, &params)?;
        let f = qfactorial(n, &params)?;
        table.push(vec![json!(n), json!(b.re), json!(b.im), json!(f.re), json!(f.im)]);
        let next = qnumber(n + 1, &params)?;
        let (t, target) = recurrence_target(&params, n);
        tag = t;
        let scale = 1f64.max(next.norm()).max((params.q * b).norm()).max(target.norm());
        worst = worst.max((next - params.q * b - target).norm() / scale);
    }
    rep.check(format!("{tag} (relative), n <= {n_max}"), worst, common.tol_or(1e-12));
    rep.table = Some(table);
    let r = radius(&params);
    rep.set("radius", if r.is_finite() { json!(r) } else { json!("inf") });

    if let Some(x) = x {
        let tol = common.tol_or(DEFAULT_TOL);
        let s = qexp_auto(x, &params, variant, tol * 1e-2)?;
        rep.set("qexp", json!({ "value": c(s.value), "tail_bound": s.tail_bound, "terms": s.terms }));
        rep.check("exp_q(x) series tail bound (relative)", s.tail_bound / s.value.norm().max(1.0), tol);
    }
    if let Some(q) = jackson_q(&params) {
        let mut worst: f64 = 0.0;
        for n in 0..=n_max {
            let m = jackson_moment(n, q, 1e-15)?.value;
            let target = qfactorial(n, &params)?.re;
            worst = worst.max((m.re - target).abs() / target).max(m.im.abs() / target);
        }
        rep.check(
            format!("int_0^R x^n / exp_q(qx) d_qx = [n]! (relative), n <= {n_max}"),
            worst,
            common.tol_or(MOMENT_REL_TOL),
        );
    }
    Ok(rep)
}

fn preset_name(p: Preset) -> &'static str {
    match p {
        Preset::Permutation => "permutation",
        Preset::Multiparametric => "multiparametric",
        Preset::BraidSolution => "braid-solution",
        Preset::Quon => "quon",
        Preset::Dense => "dense",
    }
}

fn random_tensor(rng: &mut random::Rng64, len: usize) -> SparseVec {
    (0..len).map(|i| (i, random::complex(rng))).collect()
}

fn sparse_distance(a: &SparseVec, b: &SparseVec) -> f64 {
    a.keys()
        .chain(b.keys())
        .map(|k| (a.get(k).copied().unwrap_or_default() - b.get(k).copied().unwrap_or_default()).norm())
        .fold(0.0, f64::max)
}

fn braid_check(
    preset: Preset,
    d: usize,
    q: Option<C64>,
    lambda: Option<&std::path::Path>,
    export: Option<&std::path::Path>,
    dims: bool,
    common: &crate::Common,
) -> Result<Report, Failure> {
    if d == 0 || d > 8 {
        return Err(Failure::Usage(format!("--d must be between 1 and 8, got {d}")));
    }
    let mut rng = random::rng(common.seed);
    let mut companion = None;
    let (source, lam) = match lambda {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
            (path.display().to_string(), LambdaMatrix::from_json_str(&text)?)
        }
        None => {
            let lam = match preset {
                Preset::Permutation => LambdaMatrix::permutation(d),
                Preset::Multiparametric => {
                    let table = random::exchange_table(&mut rng, d);
                    companion = Some(multiparametric_s(d, &vec![C64::new(1.0, 0.0); d], &table)?);
                    multiparametric_lambda(d, &table)?
                }
                Preset::BraidSolution => random::braid_solution(&mut rng, d)?,
                Preset::Quon => {
                    let q = q.ok_or_else(|| Failure::Usage("the quon preset needs --q".into()))?;
                    LambdaMatrix::permutation(d).scaled(q)
                }
                Preset::Dense => random::dense_lambda(&mut rng, d)?,
            };
            (preset_name(preset).to_string(), lam)
        }
    };
    let d = lam.d();
    let config = json!({ "source": source, "d": d, "q": q.map(c) });
    let mut rep = Report::new("braid-check", common.seed, config);
    let tol = common.tol_or(BRAID_TOL);
    rep.check("L12 L23 L12 = L23 L12 L23", braid_residual(&lam), tol);
    rep.check("R12 R13 R23 = R23 R13 R12 with R = P L", ybe_residual(&lam), tol);
    if let Some(s) = &companion {
        rep.check("(E - S)(E + L) = 0", compatibility_residual(&lam, s)?, tol);
    }
    if d.pow(3) <= RANK_CAP {
        let v = random_tensor(&mut rng, d.pow(3));
        let diff = sparse_distance(&form_minus_left(&v, &lam, 3), &form_minus_right(&v, &lam, 3));
        rep.check("(s1 ^ s2) ^ s3 = s1 ^ (s2 ^ s3)", diff, common.tol_or(DEFAULT_TOL));
    }
    if dims {
        let mut table = Table::new(&["p", "dimension"]);
        let mut p = 0;
        while p <= d && d.checked_pow(p as u32).is_some_and(|s| s <= RANK_CAP) {
            table.push(vec![json!(p), json!(wedge_space_dimension(p, &lam)?)]);
            p += 1;
        }
        rep.table = Some(table);
    }
    if let Some(path) = export {
        std::fs::write(path, lam.to_json().to_string())
            .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))?;
        rep.set("exported", path.display().to_string());
    }
    Ok(rep)
}

fn q_table(params: &NCParams) -> Value {
    let n = params.n();
    Value::Array((0..n).map(|i| Value::Array((0..n).map(|j| c(params.q(i, j))).collect())).collect())
}

fn ncforms_check(
    n: usize,
    trials: usize,
    max_degree: usize,
    classical: bool,
    poly: Option<&std::path::Path>,
    common: &crate::Common,
) -> Result<Report, Failure> {
    if n == 0 || n > 8 {
        return Err(Failure::Usage(format!("--n must be between 1 and 8, got {n}")));
    }
    let mut rng = random::rng(common.seed);
    let params = if classical { NCParams::classical(n)? } else { random::nc_phases(&mut rng, n)? };
    let config = json!({ "n": n, "trials": trials, "max_degree": max_degree, "classical": classical });
    let mut rep = Report::new("ncforms-check", common.seed, config);
    rep.set("q", q_table(&params));
    let tol = common.tol_or(D_SQUARED_TOL);

    let mut worst: f64 = 0.0;
    for t in 0..trials {
        let form = random::nc_form(&mut rng, &params, t % (max_degree + 1))?;
        worst = worst.max(exterior_d(&exterior_d(&form)).max_abs() / form.max_abs().max(1.0));
    }
    rep.check(format!("d^2 = 0 (relative), {trials} random forms"), worst, tol);

    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let word = random::nc_word(&mut rng, n, 8);
        let direct = normal_order(&word, &params)?;
        for leftmost in [true, false] {
            worst = worst.max(direct.sub(&normal_order_by_swaps(&word, &params, leftmost)?)?.max_abs());
        }
    }
    rep.check("normal ordering is independent of the swap order, 100 words", worst, tol);

    if let Some(path) = poly {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
        let f = NCPolynomial::from_text(&params, &text)?;
        let df = exterior_d(&NCForm::function(f.clone()));
        let components: serde_json::Map<String, Value> = df
            .components()
            .iter()
            .map(|(idx, w)| {
                (format!("dx{}", idx.iter().map(|i| i.to_string()).collect::<String>()), json!(w.to_text()))
            })
            .collect();
        rep.set("df", components);
        rep.check("d^2 f = 0 for the given polynomial", exterior_d(&df).max_abs() / f.max_abs().max(1.0), tol);
        rep.note(format!("df = {}", df.to_text().trim_end()));
    }
    Ok(rep)
}

fn fock_verify(args: &ParamArgs, dim: usize, matrices: bool, common: &crate::Common) -> Result<Report, Failure> {
    let params = build_params(args)?;
    let fock = build_rep(&params, dim)?;
    let mut config = params_json(args, &params);
    config["D"] = json!(dim);
    let mut rep = Report::new("fock-verify", common.seed, config);
    let tol = common.tol_or(OSCILLATOR_TOL);
    // each relation is compared with the size of the products it contains
    let max = |m: &qonkit::braid::CMatrix| m.iter().map(|z| z.norm()).fold(1.0, f64::max);
    let (a, delta, n) = (max(&fock.a), max(&fock.delta), dim as f64);
    for (relation, residual) in &verify_algebra(&fock).residuals {
        let scale = match relation.as_str() {
            REL_QMUTATOR => a * a,
            REL_DELTA_A | REL_DELTA_ADAG => a * delta,
            _ => a * n,
        };
        rep.check(format!("{relation} = 0 (relative), levels 0..D-2"), residual / scale, tol);
    }
    let mut table = Table::new(&["n", "bracket_re", "bracket_im", "delta_prime_re", "delta_prime_im"]);
    let mut worst: f64 = 0.0;
    let mut tag = "";
    for n in 0..dim {
        let b = qnumber(n as u32, &params)?;
        let dp = fock.delta_prime[(n, n)];
        table.push(vec![json!(n), json!(b.re), json!(b.im), json!(dp.re), json!(dp.im)]);
        if n + 1 < dim {
            let (t, target) = recurrence_target(&params, n as u32);
            tag = t;
            worst = worst.max((dp - target).norm() / target.norm().max(1.0));
        }
    }
    let rhs = tag.rsplit("= ").next().unwrap_or_default().replace('n', "N");
    rep.check(format!("a a+ - q a+ a = {rhs}, levels 0..D-2"), worst, tol);
    if let Some(k) = params.k {
        if dim >= k as usize {
            let mut ak = fock.a.clone();
            let mut adk = fock.a_dag.clone();
            for _ in 1..k {
                ak = &ak * &fock.a;
                adk = &adk * &fock.a_dag;
            }
            let r = ak.iter().chain(adk.iter()).map(|z| z.norm()).fold(0.0, f64::max);
            rep.check("a^k = (a+)^k = 0", r, common.tol_or(NILPOTENCY_TOL));
        }
        let mut worst: f64 = 0.0;
        for n in 0..dim as u32 {
            worst = worst.max((qnumber(n + k, &params)? - qnumber(n, &params)?).norm());
        }
        rep.check("[n + k] = [n]", worst, common.tol_or(NILPOTENCY_TOL));
    }
    for w in &fock.warnings {
        rep.note(w.clone());
    }
    rep.table = Some(table);
    if matrices {
        rep.set("representation", fock.to_json());
    }
    Ok(rep)
}

fn cs_resolution(
    args: &ParamArgs,
    levels: usize,
    z: Option<C64>,
    dim: Option<usize>,
    common: &crate::Common,
) -> Result<Report, Failure> {
    let params = build_params(args)?;
    let mut config = params_json(args, &params);
    config["n"] = json!(levels);
    config["z"] = z.map(c).unwrap_or(Value::Null);
    config["D"] = json!(dim);
    let mut rep = Report::new("cs-resolution", common.seed, config);
    let jq = jackson_q(&params);
    if jq.is_none() && z.is_none() {
        return Err(Failure::Usage(
            "the Jackson resolution needs the one-parameter scheme with real 0 < q < 1; pass --z to check a state"
                .into(),
        ));
    }
    if let Some(q) = jq {
        if levels == 0 {
            return Err(Failure::Usage("--n must be positive".into()));
        }
        let assembled = resolution_check_jackson(&params, levels, levels, 1e-15)?;
        let mut table = Table::new(&["n", "moment", "target", "residual", "assembled"]);
        let mut worst: f64 = 0.0;
        for n in 0..levels {
            let m = jackson_moment(n as u32, q, 1e-15)?.value.re;
            let target = qfactorial(n as u32, &params)?.re;
            let residual = (m - target).abs() / target;
            worst = worst.max(residual);
            table.push(vec![json!(n), json!(m), json!(target), json!(residual), json!(assembled.diagonal[n])]);
        }
        rep.check("int_0^R x^n / exp_q(qx) d_qx = [n]! (relative)", worst, common.tol_or(MOMENT_REL_TOL));
        rep.check(
            format!("int d_q|z|^2 |z><z| / exp_q(q|z|^2) = I on {levels} levels"),
            assembled.residual,
            common.tol_or(RESOLUTION_TOL),
        );
        rep.table = Some(table);
    }
    if let Some(z) = z {
        let cs = build_cs(&params, z, dim, true)?;
        let fock = build_rep(&params, cs.dim)?;
        let eig = eigenstate_residual(&cs, &fock)?;
        rep.check("a|z> = z|z> below the top level", eig.interior, common.tol_or(OVERLAP_TOL));
        rep.check(
            "|a|z> - z|z>| within the truncation bound",
            (eig.full - eig.tail_bound - eig.interior).max(0.0),
            common.tol_or(ROUNDING_TOL),
        );
        rep.check("<z|z> = 1", (cs.norm_sqr() - 1.0).abs(), common.tol_or(OVERLAP_TOL));
        rep.set("state", cs.to_json());
        rep.set("eigen", eig);
    }
    Ok(rep)
}

fn quon_dist(k: Option<u32>, q: C64, etas: &[f64], common: &crate::Common) -> Result<Report, Failure> {
    let q = match k {
        Some(k) => ModeSpec::kfermion(1.0, k)?.q,
        None => q,
    };
    let config = json!({ "k": k, "q": c(q), "eta": etas });
    let mut rep = Report::new("quon-dist", common.seed, config);
    let mut table = Table::new(&["eta", "Z", "f_real", "f_imag"]);
    let mut worst: f64 = 0.0;
    for &eta in etas {
        let spec = match k {
            Some(k) => ModeSpec::kfermion(eta, k)?,
            None => ModeSpec::quon(eta, q)?,
        };
        let f = occupation(&spec)?;
        table.push(vec![json!(eta), json!(partition_mode(&spec)?), json!(f.re), json!(f.im)]);
        let r = match k {
            Some(_) => occupation_finite_sum(&spec)?.difference,
            None => {
                let s = occupation_series(&spec, 200)?;
                ((s.value - f).norm() - s.tail_bound).max(0.0)
            }
        };
        worst = worst.max(r);
    }
    match k {
        Some(_) => rep.check("(1/Z) sum_n [n] e^(-eta n) = 1/(e^eta - q)", worst, common.tol_or(FINITE_SUM_TOL)),
        None => rep.check(
            "sum_j e^(-eta(j+1)) q^j = 1/(e^eta - q) within the tail bound",
            worst,
            common.tol_or(ROUNDING_TOL),
        ),
    }
    rep.table = Some(table);
    Ok(rep)
}

fn matrix_strings(m: &[Vec<CyclotomicScalar>]) -> Vec<Vec<String>> {
    m.iter().map(|row| row.iter().map(|x| x.to_string()).collect()).collect()
}

fn graded_check(
    k: u32,
    reorder: u32,
    solve_h: bool,
    z: Option<C64>,
    dim_boson: usize,
    triples: usize,
    common: &crate::Common,
) -> Result<Report, Failure> {
    if reorder >= k {
        return Err(Failure::Usage(format!("--reorder must be below k = {k}")));
    }
    let config = json!({ "k": k, "reorder": reorder, "solve_h": solve_h, "z": z.map(c), "dim_boson": dim_boson, "triples": triples });
    let mut rep = Report::new("graded-check", common.seed, config);
    let xi = GradedElement::xi(k, reorder)?;
    let xb = GradedElement::xibar(k, reorder)?;
    rep.exact("xi^k = xibar^k = 0", (!xi.pow(k).is_zero()) as usize + (!xb.pow(k).is_zero()) as usize);

    let mut rng = random::rng(common.seed);
    let mut fails = 0;
    for _ in 0..triples {
        let (x, y, w) = (
            random::graded_word(&mut rng, k, reorder),
            random::graded_word(&mut rng, k, reorder),
            random::graded_word(&mut rng, k, reorder),
        );
        fails += (&(&x * &y) * &w != &x * &(&y * &w)) as usize;
    }
    rep.exact(format!("(x y) z = x (y z), {triples} random word triples"), fails);

    let h = closed_form_h(k)?;
    let m = graded_resolution(k, reorder, &h)?;
    let off = m
        .iter()
        .enumerate()
        .flat_map(|(r, row)| row.iter().enumerate().map(move |(col, x)| (r, col, x)))
        .filter(|(r, col, x)| if r == col { !x.is_one() } else { !x.is_zero() })
        .count();
    let weights = h.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ");
    rep.exact(format!("int dxibar dxi h(xibar xi) |xi><xibar| = I with h = ({weights})"), off);
    let ov = graded_overlap(k, reorder)?;
    rep.exact(format!("<xibar|xi> = {}", ov.target), (!ov.matches) as usize);
    rep.set("ket", build_graded_cs(k, reorder)?.to_string());
    rep.set("bra", build_graded_bra(k, reorder)?.to_string());
    rep.set("resolution", matrix_strings(&m));
    rep.set("overlap", ov.computed.to_string());

    if solve_h {
        let scan = resolution_scan(k)?;
        let mut table = Table::new(&["reorder", "phase", "h", "unique", "matches_closed_form", "overlap_matches"]);
        for o in &scan {
            let (hs, unique) = match &o.solution {
                Some(s) => (s.coefficients.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; "), s.unique),
                None => (o.unsolvable.clone().unwrap_or_default(), false),
            };
            table.push(vec![
                json!(o.reorder),
                json!(o.phase.to_string()),
                json!(hs),
                json!(unique),
                json!(o.matches_closed_form_h),
                json!(o.overlap_matches),
            ]);
        }
        rep.exact(
            "every reorder convention gives a solution or an exact obstruction",
            scan.iter().filter(|o| o.solution.is_none() && o.unsolvable.is_none()).count(),
        );
        rep.set("scan", &scan);
        rep.table = Some(table);
    }
    if let Some(z) = z {
        if k != 3 {
            return Err(Failure::Usage("the supercoherent table uses k = 3".into()));
        }
        let t = supercoherent(z, dim_boson, reorder)?;
        rep.exact("f(a+ xi)|0> = |xi> in the graded sector", (!t.graded_sector_exact) as usize);
        rep.check("e^(z b+)|0> = sum z^m / sqrt(m!) |m> (relative)", t.boson_residual, common.tol_or(BOSON_SECTOR_TOL));
        rep.note(format!("f(xi a+)|0> - |xi> = {}", t.xi_first_discrepancy));
        rep.set("supercoherent", &t);
    }
    Ok(rep)
}

fn all_acceptance(only: &[u8], common: &crate::Common) -> Result<Report, Failure> {
    let ids: Vec<u8> = if only.is_empty() { (1..=10).collect() } else { only.to_vec() };
    let config = json!({ "criteria": ids });
    let mut rep = Report::new("all-acceptance", common.seed, config);
    let mut reports = Vec::new();
    for id in &ids {
        let r = acceptance::run_criterion(*id, common.seed)
            .ok_or_else(|| Failure::Usage(format!("no acceptance criterion {id}; use 1 to 10")))?;
        for ch in &r.checks {
            let tol = common.tol.unwrap_or(ch.tol);
            rep.check(format!("{}: {}", r.id, ch.label), ch.value, tol);
        }
        for n in &r.notes {
            rep.note(format!("{}: {n}", r.id));
        }
        reports.push(r);
    }
    let mut table = Table::new(&["criterion", "title", "pass"]);
    for r in &reports {
        let pass = rep.checks.iter().filter(|c| c.tag.starts_with(&format!("{}: ", r.id))).all(|c| c.pass);
        table.push(vec![json!(r.id), json!(r.title), json!(pass)]);
    }
    rep.table = Some(table);
    Ok(rep)
}
