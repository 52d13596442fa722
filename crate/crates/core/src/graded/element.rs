use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Sub};

use serde::Serialize;

use super::scalar::{check_order, CyclotomicScalar};
use crate::error::{Error, Result};

/// `xibar^m xi^n |r><s|`; variables always sit left of the operator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Word {
    pub m: u32,
    pub n: u32,
    pub r: u32,
    pub s: u32,
}

impl Word {
    pub fn new(m: u32, n: u32, r: u32, s: u32) -> Self {
        Self { m, n, r, s }
    }

    /// Degree `r - s` of the operator part.
    pub fn op_degree(&self) -> i64 {
        self.r as i64 - self.s as i64
    }
}

/// Element of the graded algebra generated by `xi`, `xibar` and the `k x k`
/// matrix units, with `xi xibar = q^reorder xibar xi`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedElement {
    k: u32,
    reorder: u32,
    terms: BTreeMap<Word, CyclotomicScalar>,
}

impl GradedElement {
    /// The zero element; `reorder` is the exponent `j` in `r0 = q^j`.
    pub fn zero(k: u32, reorder: u32) -> Result<Self> {
        check_order(k)?;
        if reorder >= k {
            return Err(Error::InvalidParameter(format!("reorder exponent must be below k = {k}, got {reorder}")));
        }
        Ok(Self { k, reorder, terms: BTreeMap::new() })
    }

    fn empty(&self) -> Self {
        Self { k: self.k, reorder: self.reorder, terms: BTreeMap::new() }
    }

    /// `c xibar^m xi^n |r><s|`, zero when a power reaches `k`.
    pub fn term(k: u32, reorder: u32, word: Word, c: CyclotomicScalar) -> Result<Self> {
        let mut out = Self::zero(k, reorder)?;
        if word.r >= k || word.s >= k {
            return Err(Error::OutOfRange(format!("level out of range for k = {k}: {word:?}")));
        }
        if c.order() != k {
            return Err(Error::ConventionMismatch(format!("scalar of order {} in a k = {k} algebra", c.order())));
        }
        out.add_term(word, c);
        Ok(out)
    }

    /// `sum_r c xibar^m xi^n |r><r|`.
    pub fn variables(k: u32, reorder: u32, m: u32, n: u32, c: CyclotomicScalar) -> Result<Self> {
        let mut out = Self::zero(k, reorder)?;
        for r in 0..k {
            out.add_term(Word::new(m, n, r, r), c.clone());
        }
        Ok(out)
    }

    pub fn scalar(k: u32, reorder: u32, c: CyclotomicScalar) -> Result<Self> {
        Self::variables(k, reorder, 0, 0, c)
    }

    pub fn one(k: u32, reorder: u32) -> Result<Self> {
        Self::scalar(k, reorder, CyclotomicScalar::one(k))
    }

    pub fn xi(k: u32, reorder: u32) -> Result<Self> {
        Self::variables(k, reorder, 0, 1, CyclotomicScalar::one(k))
    }

    pub fn xibar(k: u32, reorder: u32) -> Result<Self> {
        Self::variables(k, reorder, 1, 0, CyclotomicScalar::one(k))
    }

    /// The matrix unit `|r><s|`.
    pub fn op(k: u32, reorder: u32, r: u32, s: u32) -> Result<Self> {
        Self::term(k, reorder, Word::new(0, 0, r, s), CyclotomicScalar::one(k))
    }

    /// `a+ = sum_n sqrt([n+1]) |n+1><n|` with `sqrt([1]) = 1`, `sqrt([2]) = s`.
    pub fn a_dag(k: u32, reorder: u32) -> Result<Self> {
        let mut out = Self::zero(k, reorder)?;
        for n in 0..k - 1 {
            out.add_term(Word::new(0, 0, n + 1, n), ladder_root(k, n + 1));
        }
        Ok(out)
    }

    /// `a = sum_n sqrt([n]) |n-1><n|`.
    pub fn a(k: u32, reorder: u32) -> Result<Self> {
        let mut out = Self::zero(k, reorder)?;
        for n in 1..k {
            out.add_term(Word::new(0, 0, n - 1, n), ladder_root(k, n));
        }
        Ok(out)
    }

    pub fn order(&self) -> u32 {
        self.k
    }

    pub fn reorder(&self) -> u32 {
        self.reorder
    }

    /// `r0 = q^reorder`.
    pub fn reorder_phase(&self) -> CyclotomicScalar {
        CyclotomicScalar::q_pow(self.k, self.reorder as i64)
    }

    pub fn terms(&self) -> &BTreeMap<Word, CyclotomicScalar> {
        &self.terms
    }

    pub fn coefficient(&self, word: Word) -> CyclotomicScalar {
        self.terms.get(&word).cloned().unwrap_or_else(|| CyclotomicScalar::zero(self.k))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, word: Word, c: CyclotomicScalar) {
        if word.m >= self.k || word.n >= self.k || c.is_zero() {
            return;
        }
        let slot = self.terms.entry(word).or_insert_with(|| CyclotomicScalar::zero(self.k));
        *slot = &*slot + &c;
        if slot.is_zero() {
            self.terms.remove(&word);
        }
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.k != other.k || self.reorder != other.reorder {
            return Err(Error::ConventionMismatch(format!(
                "k = {}, reorder = {} vs k = {}, reorder = {}",
                self.k, self.reorder, other.k, other.reorder
            )));
        }
        Ok(())
    }

    pub fn scale(&self, c: &CyclotomicScalar) -> Self {
        let mut out = self.empty();
        for (w, x) in &self.terms {
            out.add_term(*w, x * c);
        }
        out
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (w, x) in &other.terms {
            out.add_term(*w, x.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.scale(&CyclotomicScalar::from_int(self.k, -1)))
    }

    /// Product in canonical form. The operator of the left factor passes the
    /// variables of the right one (`O v = q^{-deg O} v O`), then `xi^n1` passes
    /// `xibar^m2` (`xi xibar = r0 xibar xi`).
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let k = self.k as i64;
        let mut out = self.empty();
        for (w1, x1) in &self.terms {
            for (w2, x2) in &other.terms {
                if w1.s != w2.r || w1.m + w2.m >= self.k || w1.n + w2.n >= self.k {
                    continue;
                }
                let e = -w1.op_degree() * (w2.m + w2.n) as i64 + self.reorder as i64 * (w1.n * w2.m) as i64;
                let phase = CyclotomicScalar::q_pow(self.k, e.rem_euclid(k));
                let word = Word::new(w1.m + w2.m, w1.n + w2.n, w1.r, w2.s);
                out.add_term(word, &(x1 * x2) * &phase);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::one(self.k, self.reorder).expect("valid order");
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// `int dxi`: keeps `xi^{k-1}`; `dxi` passes `xibar^m` with phase `r0^{-m}`.
    pub fn integrate_xi(&self) -> Self {
        let mut out = self.empty();
        for (w, x) in &self.terms {
            if w.n == self.k - 1 {
                let phase = CyclotomicScalar::q_pow(self.k, -((self.reorder * w.m) as i64));
                out.add_term(Word::new(w.m, 0, w.r, w.s), x * &phase);
            }
        }
        out
    }

    /// `int dxibar`: keeps `xibar^{k-1}`.
    pub fn integrate_xibar(&self) -> Self {
        let mut out = self.empty();
        for (w, x) in &self.terms {
            if w.m == self.k - 1 {
                out.add_term(Word::new(0, w.n, w.r, w.s), x.clone());
            }
        }
        out
    }

    /// `int dxibar dxi`, inner integral over `xi`.
    pub fn integrate(&self) -> Self {
        self.integrate_xi().integrate_xibar()
    }

    /// Operator part as a `k x k` matrix; errors if variables remain.
    pub fn operator_matrix(&self) -> Result<Vec<Vec<CyclotomicScalar>>> {
        let k = self.k as usize;
        let mut m = vec![vec![CyclotomicScalar::zero(self.k); k]; k];
        for (w, x) in &self.terms {
            if w.m != 0 || w.n != 0 {
                return Err(Error::InvalidParameter(format!("term {w:?} still carries variables")));
            }
            m[w.r as usize][w.s as usize] = x.clone();
        }
        Ok(m)
    }
}

fn ladder_root(k: u32, n: u32) -> CyclotomicScalar {
    match n {
        1 => CyclotomicScalar::one(k),
        _ => CyclotomicScalar::s(k).expect("level 2 exists only for k = 3"),
    }
}

/// Berezin integral `int dxibar dxi` for the Grassmann case.
pub fn berezin_integrate(x: &GradedElement) -> Result<GradedElement> {
    if x.order() != 2 {
        return Err(Error::ConventionMismatch(format!("Berezin integration needs k = 2, got k = {}", x.order())));
    }
    Ok(x.integrate())
}

/// Majid integral `int dxibar dxi` for the `Z3`-graded case.
pub fn majid_integrate(x: &GradedElement) -> Result<GradedElement> {
    if x.order() != 3 {
        return Err(Error::ConventionMismatch(format!("Majid integration needs k = 3, got k = {}", x.order())));
    }
    Ok(x.integrate())
}

/// Product with a convention check.
pub fn graded_multiply(x: &GradedElement, y: &GradedElement) -> Result<GradedElement> {
    x.try_mul(y)
}

impl Mul for &GradedElement {
    type Output = GradedElement;
    /// Panics on mixed conventions; use [`GradedElement::try_mul`] to handle them.
    fn mul(self, rhs: Self) -> GradedElement {
        self.try_mul(rhs).expect("graded elements with the same conventions")
    }
}

impl Add for &GradedElement {
    type Output = GradedElement;
    fn add(self, rhs: Self) -> GradedElement {
        self.try_add(rhs).expect("graded elements with the same conventions")
    }
}

impl Sub for &GradedElement {
    type Output = GradedElement;
    fn sub(self, rhs: Self) -> GradedElement {
        self.try_sub(rhs).expect("graded elements with the same conventions")
    }
}

fn power(name: &str, e: u32) -> Option<String> {
    match e {
        0 => None,
        1 => Some(name.to_string()),
        _ => Some(format!("{name}^{e}")),
    }
}

impl fmt::Display for GradedElement {
    /// Terms as `(coefficient) xibar^m xi^n |r><s|`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, c)| {
                let mut s = format!("({c})");
                for p in [power("xibar", w.m), power("xi", w.n)].into_iter().flatten() {
                    s += " ";
                    s += &p;
                }
                s + &format!(" |{}><{}|", w.r, w.s)
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

impl Serialize for GradedElement {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let terms: Vec<_> = self.terms.iter().map(|(w, c)| (w, c.to_string())).collect();
        let mut st = serializer.serialize_struct("GradedElement", 3)?;
        st.serialize_field("k", &self.k)?;
        st.serialize_field("reorder", &self.reorder)?;
        st.serialize_field("terms", &terms)?;
        st.end()
    }
}
