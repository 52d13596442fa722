use std::collections::BTreeMap;
use std::fmt;

use super::scalar::CyclotomicScalar;
use crate::error::{Error, Result};

/// Multi-generator `Z3`-graded Grassmann algebra:
/// `xi_a xi_b xi_c = rho xi_b xi_c xi_a` with `rho = q` (or `q^2` for the dual
/// generators), and every product of four generators vanishes.
///
/// Quadratic words are independent. Cubic words are stored by their smallest
/// rotation; `xi_a^3 = 0` follows from the relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicElement {
    generators: u32,
    dual: bool,
    terms: BTreeMap<Vec<u32>, CyclotomicScalar>,
}

impl CyclicElement {
    pub fn zero(generators: u32, dual: bool) -> Self {
        Self { generators, dual, terms: BTreeMap::new() }
    }

    pub fn one(generators: u32, dual: bool) -> Self {
        let mut out = Self::zero(generators, dual);
        out.add_word(Vec::new(), CyclotomicScalar::one(3));
        out
    }

    pub fn generator(generators: u32, dual: bool, a: u32) -> Result<Self> {
        if a >= generators {
            return Err(Error::OutOfRange(format!("generator {a} of {generators}")));
        }
        let mut out = Self::zero(generators, dual);
        out.add_word(vec![a], CyclotomicScalar::one(3));
        Ok(out)
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, CyclotomicScalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn rho(&self) -> i64 {
        if self.dual {
            2
        } else {
            1
        }
    }

    fn add_word(&mut self, word: Vec<u32>, c: CyclotomicScalar) {
        let (word, c) = match word.len() {
            0..=2 => (word, c),
            3 => {
                if word[0] == word[1] && word[1] == word[2] {
                    return;
                }
                // w = rho^j rot^j(w)
                let best = (0..3)
                    .map(|j| {
                        let mut r = word.clone();
                        r.rotate_left(j);
                        (r, j as i64)
                    })
                    .min()
                    .expect("three rotations");
                (best.0, &c * &CyclotomicScalar::q_pow(3, self.rho() * best.1))
            }
            _ => return,
        };
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(word.clone()).or_insert_with(|| CyclotomicScalar::zero(3));
        *slot = &*slot + &c;
        if slot.is_zero() {
            self.terms.remove(&word);
        }
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if (self.generators, self.dual) != (other.generators, other.dual) {
            return Err(Error::ConventionMismatch("cyclic elements from different algebras".into()));
        }
        Ok(())
    }

    pub fn scale(&self, c: &CyclotomicScalar) -> Self {
        let mut out = Self::zero(self.generators, self.dual);
        for (w, x) in &self.terms {
            out.add_word(w.clone(), x * c);
        }
        out
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (w, x) in &other.terms {
            out.add_word(w.clone(), x.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.scale(&CyclotomicScalar::from_int(3, -1)))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = Self::zero(self.generators, self.dual);
        for (w1, x1) in &self.terms {
            for (w2, x2) in &other.terms {
                out.add_word([w1.as_slice(), w2.as_slice()].concat(), x1 * x2);
            }
        }
        Ok(out)
    }
}

impl fmt::Display for CyclicElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let name = if self.dual { "xibar" } else { "xi" };
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, c)| {
                let letters: Vec<String> = w.iter().map(|a| format!("{name}{a}")).collect();
                if letters.is_empty() {
                    format!("({c})")
                } else {
                    format!("({c}) {}", letters.join(" "))
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(g: &[u32], dual: bool) -> CyclicElement {
        g.iter().fold(CyclicElement::one(4, dual), |acc, &a| {
            acc.try_mul(&CyclicElement::generator(4, dual, a).unwrap()).unwrap()
        })
    }

    #[test]
    fn cyclic_relation() {
        let q = CyclotomicScalar::q(3);
        for dual in [false, true] {
            let rho = if dual { &q * &q } else { q.clone() };
            let lhs = word(&[2, 0, 1], dual);
            let rhs = word(&[0, 1, 2], dual).scale(&rho);
            assert!(lhs.try_sub(&rhs).unwrap().is_zero());
            assert!(word(&[0, 1, 2], dual).try_sub(&word(&[1, 2, 0], dual).scale(&rho)).unwrap().is_zero());
        }
    }

    #[test]
    fn cubes_and_quartics_vanish() {
        assert!(word(&[1, 1, 1], false).is_zero());
        assert!(word(&[0, 1, 2, 3], false).is_zero());
        assert!(!word(&[0, 0, 1], false).is_zero());
        assert!(!word(&[1, 0], false).try_sub(&word(&[0, 1], false)).unwrap().is_zero());
    }
}
