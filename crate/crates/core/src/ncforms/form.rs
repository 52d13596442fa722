use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::qcalc::C64;

use super::params::NCParams;
use super::poly::{nc_partial, NCPolynomial};

/// A `p`-form `sum_I dx^I w_I` over strictly increasing index tuples `I`.
#[derive(Clone, Debug, PartialEq)]
pub struct NCForm {
    params: Arc<NCParams>,
    degree: usize,
    components: BTreeMap<Vec<usize>, NCPolynomial>,
}

/// Sorts `dx^{i_1} ... dx^{i_p}` using `dx^a dx^b = -q_ab dx^b dx^a`.
///
/// Returns `None` when an index repeats (the product vanishes).
pub fn canonical_dx(indices: &[usize], params: &NCParams) -> Option<(Vec<usize>, C64)> {
    let mut w = indices.to_vec();
    let mut phase = C64::new(1.0, 0.0);
    for end in (1..w.len()).rev() {
        for i in 0..end {
            if w[i] == w[i + 1] {
                return None;
            }
            if w[i] > w[i + 1] {
                phase *= -params.q(w[i], w[i + 1]);
                w.swap(i, i + 1);
            }
        }
    }
    if w.windows(2).any(|p| p[0] == p[1]) {
        return None;
    }
    Some((w, phase))
}

impl NCForm {
    pub fn zero(params: &NCParams, degree: usize) -> Self {
        Self { params: Arc::new(params.clone()), degree, components: BTreeMap::new() }
    }

    /// A 0-form.
    pub fn function(f: NCPolynomial) -> Self {
        let params = f.shared_params();
        let mut components = BTreeMap::new();
        if !f.is_zero() {
            components.insert(Vec::new(), f);
        }
        Self { params, degree: 0, components }
    }

    /// Adds `dx^{indices} coefficient`, reordering the differentials first.
    pub fn add_component(&mut self, indices: &[usize], coefficient: &NCPolynomial) -> Result<()> {
        if indices.len() != self.degree {
            return Err(Error::DimensionMismatch(format!("{} differentials in a {}-form", indices.len(), self.degree)));
        }
        if let Some(&bad) = indices.iter().find(|&&i| i >= self.params.n()) {
            return Err(Error::OutOfRange(format!("coordinate index {bad} with {} coordinates", self.params.n())));
        }
        if coefficient.params() != self.params.as_ref() {
            return Err(Error::ConventionMismatch("coefficient carries different commutation parameters".into()));
        }
        if let Some((sorted, phase)) = canonical_dx(indices, &self.params) {
            self.accumulate(sorted, &coefficient.scale(phase));
        }
        Ok(())
    }

    fn accumulate(&mut self, indices: Vec<usize>, coefficient: &NCPolynomial) {
        let slot = self
            .components
            .entry(indices.clone())
            .or_insert_with(|| NCPolynomial::zero_shared(Arc::clone(&self.params)));
        *slot = slot.add(coefficient).expect("parameters checked on entry");
        if slot.is_zero() {
            self.components.remove(&indices);
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn params(&self) -> &NCParams {
        &self.params
    }

    pub fn components(&self) -> &BTreeMap<Vec<usize>, NCPolynomial> {
        &self.components
    }

    pub fn component(&self, indices: &[usize]) -> Option<&NCPolynomial> {
        self.components.get(indices)
    }

    /// Largest coefficient modulus over all components.
    pub fn max_abs(&self) -> f64 {
        self.components.values().map(NCPolynomial::max_abs).fold(0.0, f64::max)
    }

    /// Component blocks: `dx i_1 .. i_p` header then the polynomial in text form.
    pub fn to_text(&self) -> String {
        let mut s = format!("degree {}\n", self.degree);
        for (idx, poly) in &self.components {
            let ids: Vec<String> = idx.iter().map(usize::to_string).collect();
            s.push_str(&format!("dx {}\n", ids.join(" ")));
            s.push_str(&poly.to_text());
        }
        s
    }
}

impl fmt::Display for NCForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.components.is_empty() {
            return write!(f, "0");
        }
        for (k, (idx, poly)) in self.components.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            let dx: Vec<String> = idx.iter().map(|i| format!("dx{i}")).collect();
            if dx.is_empty() {
                write!(f, "[{poly}]")?;
            } else {
                write!(f, "{} [{poly}]", dx.join("^"))?;
            }
        }
        Ok(())
    }
}

/// `d(dx^I w_I) = (-1)^{|I|} sum_j dx^I dx^j d_j w_I`, reordered to canonical form.
pub fn exterior_d(form: &NCForm) -> NCForm {
    let n = form.params.n();
    let mut out = NCForm { params: Arc::clone(&form.params), degree: form.degree + 1, components: BTreeMap::new() };
    let sign = if form.degree.is_multiple_of(2) { 1.0 } else { -1.0 };
    for (idx, w) in &form.components {
        for j in 0..n {
            if idx.contains(&j) {
                continue;
            }
            let g = nc_partial(j, w).expect("index is in range");
            if g.is_zero() {
                continue;
            }
            let mut word = idx.clone();
            word.push(j);
            if let Some((sorted, phase)) = canonical_dx(&word, &form.params) {
                out.accumulate(sorted, &g.scale(phase * sign));
            }
        }
    }
    out
}
