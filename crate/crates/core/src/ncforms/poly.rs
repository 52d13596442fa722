use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::qcalc::{qnumber, QParams, C64};

use super::params::NCParams;

/// A polynomial in canonical order: exponent tuple to coefficient.
#[derive(Clone, Debug, PartialEq)]
pub struct NCPolynomial {
    params: Arc<NCParams>,
    terms: BTreeMap<Vec<u32>, C64>,
}

fn zero() -> C64 {
    C64::new(0.0, 0.0)
}

impl NCPolynomial {
    pub fn zero(params: &NCParams) -> Self {
        Self { params: Arc::new(params.clone()), terms: BTreeMap::new() }
    }

    pub(crate) fn zero_shared(params: Arc<NCParams>) -> Self {
        Self { params, terms: BTreeMap::new() }
    }

    pub fn constant(params: &NCParams, c: C64) -> Self {
        let mut p = Self::zero(params);
        p.add_term(vec![0; params.n()], c);
        p
    }

    pub fn monomial(params: &NCParams, exponents: &[u32], c: C64) -> Result<Self> {
        if exponents.len() != params.n() {
            return Err(Error::DimensionMismatch(format!(
                "{} exponents for {} coordinates",
                exponents.len(),
                params.n()
            )));
        }
        let mut p = Self::zero(params);
        p.add_term(exponents.to_vec(), c);
        Ok(p)
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, merging repeats.
    pub fn from_terms(params: &NCParams, terms: impl IntoIterator<Item = (Vec<u32>, C64)>) -> Result<Self> {
        let mut p = Self::zero(params);
        for (e, c) in terms {
            if e.len() != params.n() {
                return Err(Error::DimensionMismatch(format!("{} exponents for {} coordinates", e.len(), params.n())));
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    pub(crate) fn add_term(&mut self, exponents: Vec<u32>, c: C64) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(exponents) {
            Entry::Vacant(slot) => {
                if c != zero() {
                    slot.insert(c);
                }
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if *slot.get() == zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn params(&self) -> &NCParams {
        &self.params
    }

    pub(crate) fn shared_params(&self) -> Arc<NCParams> {
        Arc::clone(&self.params)
    }

    pub fn n(&self) -> usize {
        self.params.n()
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, C64> {
        &self.terms
    }

    pub fn coefficient(&self, exponents: &[u32]) -> C64 {
        self.terms.get(exponents).copied().unwrap_or_else(zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest coefficient modulus (0 for the zero polynomial).
    pub fn max_abs(&self) -> f64 {
        self.terms.values().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn scale(&self, c: C64) -> Self {
        let mut out = Self::zero_shared(self.shared_params());
        for (e, v) in &self.terms {
            out.add_term(e.clone(), v * c);
        }
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_params(other)?;
        let mut out = self.clone();
        for (e, v) in &other.terms {
            out.add_term(e.clone(), *v);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(C64::new(-1.0, 0.0)))
    }

    /// Noncommutative product, reordered to canonical form.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_params(other)?;
        let n = self.n();
        let mut out = Self::zero_shared(self.shared_params());
        for (mu, a) in &self.terms {
            for (nu, b) in &other.terms {
                // every x_i on the left passes every x_j on the right with j < i
                let mut phase = C64::new(1.0, 0.0);
                for i in 0..n {
                    for j in 0..i {
                        let count = mu[i] * nu[j];
                        if count > 0 {
                            phase *= self.params.q(i, j).powi(count as i32);
                        }
                    }
                }
                let sum: Vec<u32> = mu.iter().zip(nu).map(|(x, y)| x + y).collect();
                out.add_term(sum, a * b * phase);
            }
        }
        Ok(out)
    }

    fn check_params(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.params, &other.params) || self.params == other.params {
            Ok(())
        } else {
            Err(Error::ConventionMismatch("polynomials carry different commutation parameters".into()))
        }
    }

    /// One line per term: exponents, then real and imaginary parts.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (e, c) in &self.terms {
            let exps: Vec<String> = e.iter().map(u32::to_string).collect();
            s.push_str(&format!("{} : {} {}\n", exps.join(" "), c.re, c.im));
        }
        s
    }

    /// Inverse of [`to_text`](Self::to_text).
    pub fn from_text(params: &NCParams, text: &str) -> Result<Self> {
        let mut terms = Vec::new();
        for (lineno, line) in text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty()) {
            let (lhs, rhs) =
                line.split_once(':').ok_or_else(|| Error::Parse(format!("line {}: missing ':'", lineno + 1)))?;
            let exps = lhs
                .split_whitespace()
                .map(|t| t.parse::<u32>().map_err(|e| Error::Parse(format!("line {}: {e}", lineno + 1))))
                .collect::<Result<Vec<_>>>()?;
            let parts = rhs
                .split_whitespace()
                .map(|t| t.parse::<f64>().map_err(|e| Error::Parse(format!("line {}: {e}", lineno + 1))))
                .collect::<Result<Vec<_>>>()?;
            if parts.len() != 2 {
                return Err(Error::Parse(format!("line {}: expected 're im'", lineno + 1)));
            }
            terms.push((exps, C64::new(parts[0], parts[1])));
        }
        Self::from_terms(params, terms)
    }
}

impl fmt::Display for NCPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            for (i, &m) in e.iter().enumerate() {
                match m {
                    0 => {}
                    1 => write!(f, "*x{i}")?,
                    _ => write!(f, "*x{i}^{m}")?,
                }
            }
        }
        Ok(())
    }
}

fn check_word(word: &[usize], params: &NCParams) -> Result<()> {
    if let Some(&bad) = word.iter().find(|&&i| i >= params.n()) {
        return Err(Error::OutOfRange(format!("coordinate index {bad} with {} coordinates", params.n())));
    }
    Ok(())
}

/// Canonical form of the product `x_{w_1} x_{w_2} ...`.
///
/// Each pair of letters out of order crosses exactly once, contributing `q_{ab}`.
pub fn normal_order(word: &[usize], params: &NCParams) -> Result<NCPolynomial> {
    check_word(word, params)?;
    let mut phase = C64::new(1.0, 0.0);
    for a in 0..word.len() {
        for b in a + 1..word.len() {
            if word[a] > word[b] {
                phase *= params.q(word[a], word[b]);
            }
        }
    }
    let mut exps = vec![0u32; params.n()];
    for &i in word {
        exps[i] += 1;
    }
    NCPolynomial::monomial(params, &exps, phase)
}

/// Reorders by explicit adjacent swaps, always resolving the leftmost or the
/// rightmost descent first. Agrees with [`normal_order`].
pub fn normal_order_by_swaps(word: &[usize], params: &NCParams, leftmost: bool) -> Result<NCPolynomial> {
    check_word(word, params)?;
    let mut w = word.to_vec();
    let mut phase = C64::new(1.0, 0.0);
    loop {
        let mut descents = (0..w.len().saturating_sub(1)).filter(|&i| w[i] > w[i + 1]);
        let next = if leftmost { descents.next() } else { descents.next_back() };
        let Some(i) = next else { break };
        phase *= params.q(w[i], w[i + 1]);
        w.swap(i, i + 1);
    }
    let mut exps = vec![0u32; params.n()];
    for &i in &w {
        exps[i] += 1;
    }
    NCPolynomial::monomial(params, &exps, phase)
}

/// `d_{i0}` on canonical monomials:
/// `d_{i0} x^mu = prod_{k < i0} q_{i0 k}^{-mu_k} [mu_{i0}]_{p_{i0}} x^{mu - e_{i0}}`.
pub fn nc_partial(i0: usize, poly: &NCPolynomial) -> Result<NCPolynomial> {
    let params = poly.params();
    if i0 >= params.n() {
        return Err(Error::OutOfRange(format!("coordinate index {i0} with {} coordinates", params.n())));
    }
    let bracket_params = QParams::one_param(params.p(i0));
    let mut out = NCPolynomial::zero_shared(poly.shared_params());
    for (mu, c) in poly.terms() {
        if mu[i0] == 0 {
            continue;
        }
        let mut coef = *c * qnumber(mu[i0], &bracket_params)?;
        for (k, &m) in mu.iter().enumerate().take(i0) {
            if m > 0 {
                coef *= params.q(i0, k).powi(-(m as i32));
            }
        }
        let mut e = mu.clone();
        e[i0] -= 1;
        out.add_term(e, coef);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::DMatrix;

    fn params3(c: C64) -> NCParams {
        let q = DMatrix::from_fn(3, 3, |i, j| match (i, j) {
            (1, 0) => c,
            (0, 1) => c.inv(),
            (2, 0) => C64::from_polar(1.0, 0.7),
            (0, 2) => C64::from_polar(1.0, -0.7),
            (2, 1) => C64::from_polar(1.0, -1.9),
            (1, 2) => C64::from_polar(1.0, 1.9),
            _ => C64::new(1.0, 0.0),
        });
        NCParams::new(q, vec![C64::new(0.5, 0.0), C64::new(2.0, 0.0), C64::new(1.0, 0.0)]).unwrap()
    }

    #[test]
    fn single_swap_picks_up_the_exchange_factor() {
        let c = C64::new(2.0, 1.0);
        let p = params3(c);
        let got = normal_order(&[1, 0], &p).unwrap();
        assert_eq!(got.coefficient(&[1, 1, 0]), c);
        let ordered = normal_order(&[0, 1, 1, 2], &p).unwrap();
        assert_eq!(ordered.coefficient(&[1, 2, 1]), C64::new(1.0, 0.0));
    }

    #[test]
    fn both_reduction_paths_agree() {
        let p = params3(C64::from_polar(1.0, 0.3));
        let a = normal_order_by_swaps(&[2, 1, 0], &p, true).unwrap();
        let b = normal_order_by_swaps(&[2, 1, 0], &p, false).unwrap();
        let c = normal_order(&[2, 1, 0], &p).unwrap();
        assert!((a.coefficient(&[1, 1, 1]) - b.coefficient(&[1, 1, 1])).norm() < 1e-15);
        assert!((a.coefficient(&[1, 1, 1]) - c.coefficient(&[1, 1, 1])).norm() < 1e-15);
    }

    #[test]
    fn partial_derivative_examples() {
        let p = params3(C64::new(3.0, 0.0));
        let one = C64::new(1.0, 0.0);
        let x1 = NCPolynomial::monomial(&p, &[1, 0, 0], one).unwrap();
        assert_eq!(nc_partial(0, &x1).unwrap(), NCPolynomial::constant(&p, one));

        let x1sq = NCPolynomial::monomial(&p, &[2, 0, 0], one).unwrap();
        let d = nc_partial(0, &x1sq).unwrap();
        assert!((d.coefficient(&[1, 0, 0]) - C64::new(1.5, 0.0)).norm() < 1e-15);

        let x1x2 = NCPolynomial::monomial(&p, &[1, 1, 0], one).unwrap();
        let d = nc_partial(1, &x1x2).unwrap();
        assert!((d.coefficient(&[1, 0, 0]) - C64::new(1.0 / 3.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn product_matches_word_ordering() {
        let p = params3(C64::from_polar(1.0, 1.1));
        let one = C64::new(1.0, 0.0);
        let x2 = NCPolynomial::monomial(&p, &[0, 1, 0], one).unwrap();
        let x1 = NCPolynomial::monomial(&p, &[1, 0, 0], one).unwrap();
        assert_eq!(x2.mul(&x1).unwrap(), normal_order(&[1, 0], &p).unwrap());
    }

    #[test]
    fn text_round_trip() {
        let p = params3(C64::new(2.0, 0.0));
        let f =
            NCPolynomial::from_terms(&p, [(vec![1, 0, 2], C64::new(0.5, -1.25)), (vec![0, 0, 0], C64::new(3.0, 0.0))])
                .unwrap();
        assert_eq!(NCPolynomial::from_text(&p, &f.to_text()).unwrap(), f);
        assert_eq!(f.to_string(), "(3+0i) + (0.5-1.25i)*x0*x2^2");
    }

    #[test]
    fn inconsistent_parameters_are_rejected() {
        let q = DMatrix::from_fn(2, 2, |i, j| if i == j { C64::new(1.0, 0.0) } else { C64::new(2.0, 0.0) });
        let err = NCParams::new(q, vec![C64::new(1.0, 0.0); 2]).unwrap_err();
        assert!(matches!(err, Error::InconsistentExchange(_)));
    }
}
