use std::collections::BTreeMap;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qcalc::{C64, DEFAULT_TOL};

use super::symmetrizer::{permutations, SymmetrizerNorm};
use super::tensor::{
    basis_vec, digits, flat_index, row_apply_lifted, sparse_add_scaled, tensor_product, LambdaMatrix, SparseVec,
    TensorOperator,
};

/// Largest `d^n` for which dense operators are materialized.
pub const DENSE_CAP: usize = 1024;
/// Largest number of factors accepted by the wedge constructions.
pub const FACTOR_CAP: usize = 7;
/// Relative singular-value cutoff used by [`wedge_space_dimension`].
pub const RANK_TOL: f64 = 1e-9;

/// Which deformed product to build.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WedgeConvention {
    /// Forms: `s1 ^ s2 = s1 (x) s2 - Lambda (s1 (x) s2)`, nested to higher degree.
    FormMinus,
    /// Statistics: `Omega_(n) = (1/n!) sum over S_n of Lambda along a reduced word`.
    StatPlus,
    /// Quons: `Q_n = norm * sum q^{m(P)} P`; requires `Lambda = q P`.
    QuonPhase { norm: SymmetrizerNorm },
}

/// Row action of `T_m = sum_j (-1)^j L_{m-1} L_{m-2} ... L_{m-j}` on the first `m` factors.
fn left_step(v: &SparseVec, lam: &LambdaMatrix, m: usize, n: usize) -> SparseVec {
    let mut acc = v.clone();
    let mut u = v.clone();
    for j in 1..m {
        u = row_apply_lifted(&u, lam, m - j, n);
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        sparse_add_scaled(&mut acc, &u, C64::new(sign, 0.0));
    }
    acc
}

/// Row action of `S_m = sum_j (-1)^j L_s L_{s+1} ... L_{s+j-1}` on the last `m` factors.
fn right_step(v: &SparseVec, lam: &LambdaMatrix, m: usize, n: usize) -> SparseVec {
    let s = n - m + 1;
    let mut acc = v.clone();
    let mut u = v.clone();
    for j in 1..m {
        u = row_apply_lifted(&u, lam, s + j - 1, n);
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        sparse_add_scaled(&mut acc, &u, C64::new(sign, 0.0));
    }
    acc
}

/// `((f1 ^ f2) ^ f3) ^ ...` applied to the coefficient row `v`.
pub fn form_minus_left(v: &SparseVec, lam: &LambdaMatrix, n: usize) -> SparseVec {
    (2..=n).fold(v.clone(), |acc, m| left_step(&acc, lam, m, n))
}

/// `f1 ^ (f2 ^ (f3 ^ ...))` applied to the coefficient row `v`.
pub fn form_minus_right(v: &SparseVec, lam: &LambdaMatrix, n: usize) -> SparseVec {
    (2..=n).fold(v.clone(), |acc, m| right_step(&acc, lam, m, n))
}

/// Positions (1-based) of adjacent swaps that sort `perm`, always taking the
/// leftmost (`leftmost = true`) or rightmost descent first. Both words are reduced.
pub fn reduced_word(perm: &[usize], leftmost: bool) -> Vec<usize> {
    let mut p = perm.to_vec();
    let mut word = Vec::new();
    loop {
        let mut descents = (0..p.len().saturating_sub(1)).filter(|&i| p[i] > p[i + 1]);
        let next = if leftmost { descents.next() } else { descents.next_back() };
        match next {
            Some(i) => {
                p.swap(i, i + 1);
                word.push(i + 1);
            }
            None => return word,
        }
    }
}

/// `v * Omega_(n)` with `Omega_(n) = (1/n!) sum_{perm} Lambda_{word(perm)}`.
pub fn stat_plus(v: &SparseVec, lam: &LambdaMatrix, n: usize, leftmost: bool) -> SparseVec {
    let perms = permutations(n);
    let scale = C64::new(1.0 / perms.len() as f64, 0.0);
    let mut acc = SparseVec::new();
    for perm in &perms {
        let word = reduced_word(perm, leftmost);
        let u = word.iter().fold(v.clone(), |u, &pos| row_apply_lifted(&u, lam, pos, n));
        sparse_add_scaled(&mut acc, &u, scale);
    }
    acc
}

/// Returns `q` when `lam` equals `q P` to within `DEFAULT_TOL`.
pub fn quon_phase_of(lam: &LambdaMatrix) -> Result<C64> {
    let d = lam.d();
    let q = lam.get(0, 0, 0, 0);
    let flip = LambdaMatrix::permutation(d).scaled(q);
    let diff = (lam.entries() - flip.entries()).iter().map(|z| z.norm()).fold(0.0, f64::max);
    if diff > DEFAULT_TOL * q.norm().max(1.0) {
        return Err(Error::ConventionMismatch(format!(
            "the quon product needs Lambda = q P; closest q P is off by {diff:e}"
        )));
    }
    Ok(q)
}

fn quon_phase(v: &SparseVec, q: C64, norm: SymmetrizerNorm, d: usize, n: usize) -> SparseVec {
    let mut acc = SparseVec::new();
    let scale = C64::new(norm.factor(n), 0.0);
    for perm in permutations(n) {
        let inv = super::symmetrizer::inversions(&perm);
        let coef = q.powu(inv as u32) * scale;
        let mut moved = SparseVec::new();
        for (&r, &z) in v {
            let t = digits(r, d, n);
            let s: Vec<usize> = perm.iter().map(|&k| t[k]).collect();
            *moved.entry(flat_index(&s, d)).or_insert(C64::new(0.0, 0.0)) += z;
        }
        sparse_add_scaled(&mut acc, &moved, coef);
    }
    acc
}

fn check_factor_count(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidParameter("at least one factor is required".into()));
    }
    if n > FACTOR_CAP {
        return Err(Error::CapExceeded(format!("{n} factors exceeds the cap of {FACTOR_CAP}")));
    }
    Ok(())
}

fn to_sparse(v: &[C64]) -> SparseVec {
    v.iter().enumerate().filter(|(_, z)| **z != C64::new(0.0, 0.0)).map(|(i, z)| (i, *z)).collect()
}

fn to_dense(v: &SparseVec, size: usize) -> Vec<C64> {
    let mut out = vec![C64::new(0.0, 0.0); size];
    for (&i, &z) in v {
        out[i] = z;
    }
    out
}

fn sparse_max_diff(a: &SparseVec, b: &SparseVec) -> f64 {
    let mut diff: f64 = 0.0;
    for (k, z) in a {
        diff = diff.max((z - b.get(k).copied().unwrap_or_default()).norm());
    }
    for (k, z) in b {
        if !a.contains_key(k) {
            diff = diff.max(z.norm());
        }
    }
    diff
}

fn sparse_max_abs(a: &SparseVec) -> f64 {
    a.values().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Applies the chosen product to an already-formed tensor `t` in `V^{(x)n}`.
///
/// For three or more factors the two associativity-equivalent constructions
/// are both evaluated; if they disagree the result is rejected.
pub fn deformed_wedge_tensor(t: &[C64], n: usize, lam: &LambdaMatrix, convention: WedgeConvention) -> Result<Vec<C64>> {
    check_factor_count(n)?;
    let d = lam.d();
    let size = d.pow(n as u32);
    if t.len() != size {
        return Err(Error::DimensionMismatch(format!("tensor of length {} for d = {d}, n = {n}", t.len())));
    }
    let v = to_sparse(t);
    let out = match convention {
        WedgeConvention::FormMinus => {
            let left = form_minus_left(&v, lam, n);
            if n >= 3 {
                let right = form_minus_right(&v, lam, n);
                check_agreement(&left, &right)?;
            }
            left
        }
        WedgeConvention::StatPlus => {
            let a = stat_plus(&v, lam, n, true);
            if n >= 3 {
                let b = stat_plus(&v, lam, n, false);
                check_agreement(&a, &b)?;
            }
            a
        }
        WedgeConvention::QuonPhase { norm } => {
            let q = quon_phase_of(lam)?;
            quon_phase(&v, q, norm, d, n)
        }
    };
    Ok(to_dense(&out, size))
}

fn check_agreement(a: &SparseVec, b: &SparseVec) -> Result<()> {
    let difference = sparse_max_diff(a, b);
    if difference > DEFAULT_TOL * sparse_max_abs(a).max(1.0) {
        return Err(Error::AssociativityViolation { difference });
    }
    Ok(())
}

/// `f1 ^ f2 ^ ... ^ fn` for coordinate vectors in `V`.
pub fn deformed_wedge(factors: &[Vec<C64>], lam: &LambdaMatrix, convention: WedgeConvention) -> Result<Vec<C64>> {
    check_factor_count(factors.len())?;
    let (d, t) = tensor_product(factors)?;
    if d != lam.d() {
        return Err(Error::DimensionMismatch(format!("vectors of length {d} with Lambda over d = {}", lam.d())));
    }
    deformed_wedge_tensor(&t, factors.len(), lam, convention)
}

/// The dense operator `O` with `wedge(t) = t^T O`, without the associativity check.
pub fn wedge_operator(n: usize, lam: &LambdaMatrix, convention: WedgeConvention) -> Result<TensorOperator> {
    check_factor_count(n)?;
    let d = lam.d();
    if d.checked_pow(n as u32).filter(|s| *s <= DENSE_CAP).is_none() {
        return Err(Error::CapExceeded(format!("d^n for d = {d}, n = {n} exceeds the dense cap of {DENSE_CAP}")));
    }
    let q = match convention {
        WedgeConvention::QuonPhase { .. } => Some(quon_phase_of(lam)?),
        _ => None,
    };
    Ok(TensorOperator::from_row_action(d, n, |r| {
        let e = basis_vec(r);
        match convention {
            WedgeConvention::FormMinus => form_minus_left(&e, lam, n),
            WedgeConvention::StatPlus => stat_plus(&e, lam, n, true),
            WedgeConvention::QuonPhase { norm } => quon_phase(&e, q.expect("set above"), norm, d, n),
        }
    }))
}

/// Union-find over column indices, used to split the wedge rows into independent blocks.
struct Blocks {
    parent: Vec<usize>,
}

impl Blocks {
    fn new(n: usize) -> Self {
        Self { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }
}

/// Largest `d^p` accepted by [`wedge_space_dimension`].
pub const RANK_CAP: usize = 4096;

/// Dimension of the span of all degree-`p` products of basis covectors.
///
/// Computed as a numerical rank: singular values above `RANK_TOL` times the
/// largest singular value count.
pub fn wedge_space_dimension(p: usize, lam: &LambdaMatrix) -> Result<usize> {
    let d = lam.d();
    if p == 0 {
        return Ok(1);
    }
    let size = d
        .checked_pow(p as u32)
        .filter(|s| *s <= RANK_CAP)
        .ok_or_else(|| Error::CapExceeded(format!("d^p for d = {d}, p = {p} exceeds the cap of {RANK_CAP}")))?;
    let rows: Vec<SparseVec> = (0..size)
        .map(|r| {
            let mut row = form_minus_left(&basis_vec(r), lam, p);
            row.retain(|_, z| z.norm() > 0.0);
            row
        })
        .collect();

    let mut blocks = Blocks::new(size);
    for row in &rows {
        let mut cols = row.keys();
        if let Some(&first) = cols.next() {
            for &c in cols {
                blocks.union(first, c);
            }
        }
    }
    let mut grouped: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, row) in rows.iter().enumerate() {
        if let Some(&first) = row.keys().next() {
            let root = blocks.find(first);
            grouped.entry(root).or_default().push(i);
        }
    }

    let mut singular = Vec::new();
    for members in grouped.values() {
        let mut cols: Vec<usize> = members.iter().flat_map(|&i| rows[i].keys().copied()).collect();
        cols.sort_unstable();
        cols.dedup();
        let col_pos: BTreeMap<usize, usize> = cols.iter().enumerate().map(|(j, &c)| (c, j)).collect();
        let mut m = DMatrix::<C64>::zeros(members.len(), cols.len());
        for (a, &i) in members.iter().enumerate() {
            for (c, z) in &rows[i] {
                m[(a, col_pos[c])] = *z;
            }
        }
        singular.extend(m.singular_values().iter().copied());
    }
    let largest = singular.iter().copied().fold(0.0, f64::max);
    if largest == 0.0 {
        return Ok(0);
    }
    Ok(singular.iter().filter(|&&s| s > RANK_TOL * largest).count())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::residual::multiparametric_lambda;
    use crate::braid::tensor::{lift, CMatrix};

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    fn e(d: usize, i: usize) -> Vec<C64> {
        (0..d).map(|k| c(if k == i { 1.0 } else { 0.0 })).collect()
    }

    #[test]
    fn classical_forms_antisymmetrize() {
        let p = LambdaMatrix::permutation(2);
        let w = deformed_wedge(&[e(2, 0), e(2, 1)], &p, WedgeConvention::FormMinus).unwrap();
        assert_eq!(w, vec![c(0.0), c(1.0), c(-1.0), c(0.0)]);
    }

    #[test]
    fn negative_flip_statistics_is_half_antisymmetric() {
        let lam = LambdaMatrix::permutation(2).scaled(c(-1.0));
        let f1 = vec![c(1.0), c(2.0)];
        let f2 = vec![c(-0.5), c(3.0)];
        let w = deformed_wedge(&[f1.clone(), f2.clone()], &lam, WedgeConvention::StatPlus).unwrap();
        for a in 0..2 {
            for b in 0..2 {
                let want = 0.5 * (f1[a] * f2[b] - f2[a] * f1[b]);
                assert!((w[2 * a + b] - want).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn reduced_words_have_inversion_length() {
        for perm in permutations(4) {
            let inv = super::super::symmetrizer::inversions(&perm);
            assert_eq!(reduced_word(&perm, true).len(), inv);
            assert_eq!(reduced_word(&perm, false).len(), inv);
        }
    }

    #[test]
    fn left_nesting_reproduces_the_three_form_expansion() {
        // (E - L12)(E - L23 + L23 L12)
        let q = CMatrix::from_fn(2, 2, |i, j| {
            if i == j {
                c(0.0)
            } else if i == 0 {
                C64::new(0.3, 0.8)
            } else {
                c(2.5)
            }
        });
        let lam = multiparametric_lambda(2, &q).unwrap();
        let l12 = lift(&lam, 1, 3).unwrap().into_matrix();
        let l23 = lift(&lam, 2, 3).unwrap().into_matrix();
        let id = CMatrix::identity(8, 8);
        let want_left = (&id - &l12) * (&id - &l23 + &l23 * &l12);
        let want_right = (&id - &l23) * (&id - &l12 + &l12 * &l23);
        for r in 0..8 {
            let left = form_minus_left(&basis_vec(r), &lam, 3);
            let right = form_minus_right(&basis_vec(r), &lam, 3);
            for col in 0..8 {
                assert!((left.get(&col).copied().unwrap_or_default() - want_left[(r, col)]).norm() < 1e-14);
                assert!((right.get(&col).copied().unwrap_or_default() - want_right[(r, col)]).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn non_braid_lambda_is_rejected_for_three_factors() {
        let lam = LambdaMatrix::from_fn(2, |i, j, k, l| c(1.0 + (i + 2 * j + 3 * k + 5 * l) as f64 * 0.37)).unwrap();
        let f = vec![c(1.0), c(-0.7)];
        let g = vec![c(0.2), c(1.3)];
        let h = vec![c(-1.1), c(0.4)];
        let err = deformed_wedge(&[f.clone(), g.clone(), h.clone()], &lam, WedgeConvention::FormMinus).unwrap_err();
        assert!(matches!(err, Error::AssociativityViolation { .. }));
        let err = deformed_wedge(&[f, g, h], &lam, WedgeConvention::StatPlus).unwrap_err();
        assert!(matches!(err, Error::AssociativityViolation { .. }));
    }

    #[test]
    fn quon_phase_needs_a_scaled_flip() {
        let lam = LambdaMatrix::identity(2);
        let conv = WedgeConvention::QuonPhase { norm: SymmetrizerNorm::None };
        assert!(matches!(deformed_wedge(&[e(2, 0), e(2, 1)], &lam, conv), Err(Error::ConventionMismatch(_))));
    }

    #[test]
    fn quon_pair_matches_the_two_term_form() {
        let q = C64::new(0.3, 0.4);
        let lam = LambdaMatrix::permutation(2).scaled(q);
        let conv = WedgeConvention::QuonPhase { norm: SymmetrizerNorm::InverseSqrtN };
        let w = deformed_wedge(&[e(2, 0), e(2, 1)], &lam, conv).unwrap();
        let s = 1.0 / 2f64.sqrt();
        assert!((w[1] - c(s)).norm() < 1e-15);
        assert!((w[2] - q * s).norm() < 1e-15);
    }

    #[test]
    fn classical_dimensions_are_binomial() {
        let p4 = LambdaMatrix::permutation(4);
        assert_eq!(wedge_space_dimension(2, &p4).unwrap(), 6);
        let p3 = LambdaMatrix::permutation(3);
        let total: usize = (0..=3).map(|k| wedge_space_dimension(k, &p3).unwrap()).sum();
        assert_eq!(total, 8);
    }
}
