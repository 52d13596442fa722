use serde::Serialize;

use super::element::{GradedElement, Word};
use super::scalar::{check_order, CyclotomicScalar};
use crate::error::{Error, Result};

type S = CyclotomicScalar;
pub type OperatorMatrix = Vec<Vec<CyclotomicScalar>>;

fn ket(k: u32, reorder: u32, r: u32) -> Result<GradedElement> {
    GradedElement::op(k, reorder, r, 0)
}

fn bra(k: u32, reorder: u32, s: u32) -> Result<GradedElement> {
    GradedElement::op(k, reorder, 0, s)
}

/// `|xi>`: `|0> - xi|1>` for `k = 2`, `|0> + q^2 xi|1> - s xi^2|2>` for `k = 3`.
///
/// Kets are stored as `|r><0|`.
pub fn build_graded_cs(k: u32, reorder: u32) -> Result<GradedElement> {
    check_order(k)?;
    let xi = GradedElement::xi(k, reorder)?;
    let mut out = ket(k, reorder, 0)?;
    let c1 = if k == 2 { S::from_int(2, -1) } else { S::q_pow(3, 2) };
    out = &out + &(&xi * &ket(k, reorder, 1)?).scale(&c1);
    if k == 3 {
        let s = S::s(3)?;
        out = &out - &(&xi.pow(2) * &ket(k, reorder, 2)?).scale(&s);
    }
    Ok(out)
}

/// `f(a+ xi)|0>` with `f(u) = 1 + u` (`k = 2`) or `1 + u - u^2` (`k = 3`).
pub fn graded_cs_from_displacement(k: u32, reorder: u32) -> Result<GradedElement> {
    check_order(k)?;
    let u = &GradedElement::a_dag(k, reorder)? * &GradedElement::xi(k, reorder)?;
    displaced_vacuum(&u)
}

/// `f(u)|0>` for a degree-one generator `u`.
pub fn displaced_vacuum(u: &GradedElement) -> Result<GradedElement> {
    let (k, j) = (u.order(), u.reorder());
    let mut f = &GradedElement::one(k, j)? + u;
    if k == 3 {
        f = &f - &u.pow(2);
    }
    Ok(&f * &ket(k, j, 0)?)
}

/// `<xibar|`: `<0| - <1| xibar` for `k = 2`, `<0| + q<1| xibar - s<2| xibar^2` for `k = 3`.
pub fn build_graded_bra(k: u32, reorder: u32) -> Result<GradedElement> {
    check_order(k)?;
    let xb = GradedElement::xibar(k, reorder)?;
    let mut out = bra(k, reorder, 0)?;
    let c1 = if k == 2 { S::from_int(2, -1) } else { S::q(3) };
    out = &out + &(&bra(k, reorder, 1)? * &xb).scale(&c1);
    if k == 3 {
        out = &out - &(&bra(k, reorder, 2)? * &xb.pow(2)).scale(&S::s(3)?);
    }
    Ok(out)
}

/// The overlap in closed form: `1 + xibar xi` (`k = 2`) or
/// `1 + q^2 xibar xi - q xibar xi xibar xi` (`k = 3`), on `|0><0|`.
pub fn closed_form_overlap(k: u32, reorder: u32) -> Result<GradedElement> {
    check_order(k)?;
    let vac = bra(k, reorder, 0)?;
    let x = &GradedElement::xibar(k, reorder)? * &GradedElement::xi(k, reorder)?;
    let g = if k == 2 {
        &GradedElement::one(2, reorder)? + &x
    } else {
        let lin = x.scale(&S::q_pow(3, 2));
        let quad = x.pow(2).scale(&S::q(3));
        &(&GradedElement::one(3, reorder)? + &lin) - &quad
    };
    Ok(&g * &vac)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OverlapReport {
    pub computed: GradedElement,
    pub target: GradedElement,
    /// `computed - target`, exact.
    pub difference: GradedElement,
    pub matches: bool,
}

/// `<xibar| |xi>` expanded symbolically and compared with the closed form.
pub fn graded_overlap(k: u32, reorder: u32) -> Result<OverlapReport> {
    let computed = &build_graded_bra(k, reorder)? * &build_graded_cs(k, reorder)?;
    let target = closed_form_overlap(k, reorder)?;
    let difference = &computed - &target;
    let matches = difference.is_zero();
    Ok(OverlapReport { computed, target, difference, matches })
}

/// `h(xibar xi) = sum_j h_j (xibar xi)^j` as an element.
pub fn h_element(k: u32, reorder: u32, h: &[CyclotomicScalar]) -> Result<GradedElement> {
    if h.len() > k as usize {
        return Err(Error::InvalidParameter(format!("h has {} coefficients, at most {k} are independent", h.len())));
    }
    let x = &GradedElement::xibar(k, reorder)? * &GradedElement::xi(k, reorder)?;
    let mut out = GradedElement::zero(k, reorder)?;
    for (j, c) in h.iter().enumerate() {
        out = &out + &x.pow(j as u32).scale(c);
    }
    Ok(out)
}

/// `int dxibar dxi h(xibar xi) |xi><xibar|` as a `k x k` matrix.
pub fn graded_resolution(k: u32, reorder: u32, h: &[CyclotomicScalar]) -> Result<OperatorMatrix> {
    let projector = &build_graded_cs(k, reorder)? * &build_graded_bra(k, reorder)?;
    (&h_element(k, reorder, h)? * &projector).integrate().operator_matrix()
}

/// The closed-form weights: `(1, -1)` for `k = 2`, `(-q, 1, 1)` for `k = 3`.
pub fn closed_form_h(k: u32) -> Result<Vec<CyclotomicScalar>> {
    check_order(k)?;
    Ok(if k == 2 { vec![S::one(2), S::from_int(2, -1)] } else { vec![-S::q(3), S::one(3), S::one(3)] })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HSolution {
    pub coefficients: Vec<CyclotomicScalar>,
    /// False when some coefficients are unconstrained (set to zero).
    pub unique: bool,
}

fn identity(k: u32) -> OperatorMatrix {
    (0..k).map(|r| (0..k).map(|c| if r == c { S::one(k) } else { S::zero(k) }).collect()).collect()
}

fn format_matrix(m: &OperatorMatrix) -> String {
    let rows: Vec<String> = m.iter().map(|r| r.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", ")).collect();
    format!("[{}]", rows.join("; "))
}

/// Solves `int h |xi><xibar| = I` for the `k` coefficients of `h`.
pub fn solve_h(k: u32, reorder: u32) -> Result<HSolution> {
    let basis: Vec<OperatorMatrix> = (0..k as usize)
        .map(|j| {
            let mut h = vec![S::zero(k); j + 1];
            h[j] = S::one(k);
            graded_resolution(k, reorder, &h)
        })
        .collect::<Result<_>>()?;
    let target = identity(k);
    let mut rows: Vec<Vec<S>> = Vec::new();
    for r in 0..k as usize {
        for c in 0..k as usize {
            let mut row: Vec<S> = basis.iter().map(|b| b[r][c].clone()).collect();
            row.push(target[r][c].clone());
            rows.push(row);
        }
    }
    let n = k as usize;
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..n {
        let Some(p) = (rank..rows.len()).find(|&i| !rows[i][col].is_zero()) else { continue };
        rows.swap(rank, p);
        let inv = rows[rank][col].inverse().expect("nonzero pivot");
        rows[rank] = rows[rank].iter().map(|x| x * &inv).collect();
        for i in 0..rows.len() {
            if i != rank && !rows[i][col].is_zero() {
                let f = rows[i][col].clone();
                let pivot_row = rows[rank].clone();
                for (x, y) in rows[i].iter_mut().zip(&pivot_row) {
                    *x = &*x - &(&f * y);
                }
            }
        }
        pivots.push(col);
        rank += 1;
    }
    let mut coefficients = vec![S::zero(k); n];
    for (i, &col) in pivots.iter().enumerate() {
        coefficients[col] = rows[i][n].clone();
    }
    if rows[rank..].iter().any(|r| !r[n].is_zero()) {
        let got = graded_resolution(k, reorder, &coefficients)?;
        let residual: OperatorMatrix =
            got.iter().zip(&target).map(|(a, b)| a.iter().zip(b).map(|(x, y)| x - y).collect()).collect();
        return Err(Error::Unsolvable(format!(
            "no h gives the identity for reorder phase q^{reorder}; best pivot solution leaves residual {}",
            format_matrix(&residual)
        )));
    }
    Ok(HSolution { coefficients, unique: rank == n })
}

/// Outcome of the resolution and overlap checks under one reorder convention.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConventionOutcome {
    /// Exponent `j` in `xi xibar = q^j xibar xi`.
    pub reorder: u32,
    pub phase: CyclotomicScalar,
    pub solution: Option<HSolution>,
    pub unsolvable: Option<String>,
    /// The solved `h` equals the closed-form weights.
    pub matches_closed_form_h: bool,
    /// The closed-form weights themselves give the identity.
    pub closed_form_h_resolves: bool,
    pub overlap_matches: bool,
}

/// Runs [`solve_h`] and [`graded_overlap`] for every reorder phase `q^j`, `j < k`.
pub fn resolution_scan(k: u32) -> Result<Vec<ConventionOutcome>> {
    check_order(k)?;
    let closed = closed_form_h(k)?;
    (0..k)
        .map(|j| {
            let (solution, unsolvable) = match solve_h(k, j) {
                Ok(s) => (Some(s), None),
                Err(Error::Unsolvable(msg)) => (None, Some(msg)),
                Err(e) => return Err(e),
            };
            let matches_closed_form_h = solution.as_ref().is_some_and(|s| s.coefficients == closed);
            let closed_form_h_resolves = graded_resolution(k, j, &closed)? == identity(k);
            Ok(ConventionOutcome {
                reorder: j,
                phase: S::q_pow(k, j as i64),
                solution,
                unsolvable,
                matches_closed_form_h,
                closed_form_h_resolves,
                overlap_matches: graded_overlap(k, j)?.matches,
            })
        })
        .collect()
}

/// Coefficient of `xi^n |n>` in a ket.
pub fn ket_coefficient(ket: &GradedElement, n: u32) -> CyclotomicScalar {
    ket.coefficient(Word::new(0, n, n, 0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kets_follow_from_the_displacement() {
        for (k, j) in [(2, 1), (3, 0), (3, 1), (3, 2)] {
            assert_eq!(build_graded_cs(k, j).unwrap(), graded_cs_from_displacement(k, j).unwrap());
        }
        let ket = build_graded_cs(3, 0).unwrap();
        assert_eq!(ket_coefficient(&ket, 2), -S::s(3).unwrap());
        assert_eq!(ket_coefficient(&build_graded_cs(2, 1).unwrap(), 1), S::from_int(2, -1));
    }

    #[test]
    fn fermionic_overlap_and_resolution() {
        assert!(graded_overlap(2, 1).unwrap().matches);
        let m = graded_resolution(2, 1, &closed_form_h(2).unwrap()).unwrap();
        assert_eq!(m, identity(2));
        assert_eq!(graded_resolution(2, 1, &[]).unwrap(), vec![vec![S::zero(2); 2]; 2]);
    }

    #[test]
    fn cubic_overlap_depends_on_the_reorder_phase() {
        let r = graded_overlap(3, 0).unwrap();
        assert!(r.matches, "{}", r.difference);
        assert!(!graded_overlap(3, 1).unwrap().matches);
        assert_eq!(r.computed.coefficient(Word::new(0, 0, 0, 0)), S::one(3));
    }

    #[test]
    fn solve_mode_recovers_the_weights_only_for_commuting_variables() {
        let scan = resolution_scan(3).unwrap();
        assert!(scan[0].matches_closed_form_h && scan[0].closed_form_h_resolves);
        for o in &scan[1..] {
            assert!(!o.matches_closed_form_h && !o.closed_form_h_resolves);
        }
        // h0 = -q / r0^2, h1 = 1, h2 = r0
        let s = solve_h(3, 1).unwrap();
        assert_eq!(s.coefficients, vec![-S::q_pow(3, -1), S::one(3), S::q(3)]);
    }
}
