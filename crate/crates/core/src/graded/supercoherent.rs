use serde::Serialize;

use super::element::GradedElement;
use super::scalar::CyclotomicScalar;
use super::states::{build_graded_cs, displaced_vacuum, graded_cs_from_displacement, ket_coefficient};
use crate::error::{Error, Result};
use crate::qcalc::C64;

/// `|z, xi> = |z> (x) |xi>` for a boson and a `k = 3` parafermion.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuperCoherentTable {
    pub z: C64,
    pub dim_boson: usize,
    pub reorder: u32,
    /// `g_n`, the coefficient of `xi^n |n>` in `|xi>`.
    pub graded: Vec<CyclotomicScalar>,
    /// `z^m / sqrt(m!)`.
    pub boson: Vec<C64>,
    /// `e^{z b+}|0>` on the truncated boson space.
    pub displaced_boson: Vec<C64>,
    /// `entries[m][n]`: numeric value of `z^m / sqrt(m!) g_n`, the coefficient of `xi^n |m>|n>`.
    pub entries: Vec<Vec<C64>>,
    /// `f(a+ xi)|0>` equals `|xi>` exactly.
    pub graded_sector_exact: bool,
    /// `max_m |e^{z b+}|0>_m - z^m / sqrt(m!)| / max(1, |z^m / sqrt(m!)|)`.
    pub boson_residual: f64,
    /// `f(xi a+)|0> - |xi>`, exact.
    pub xi_first_discrepancy: GradedElement,
}

pub fn supercoherent(z: C64, dim_boson: usize, reorder: u32) -> Result<SuperCoherentTable> {
    if dim_boson == 0 {
        return Err(Error::InvalidParameter("boson truncation must be positive".into()));
    }
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::InvalidParameter(format!("label must be finite, got {z}")));
    }
    let ket = build_graded_cs(3, reorder)?;
    let graded: Vec<CyclotomicScalar> = (0..3).map(|n| ket_coefficient(&ket, n)).collect();

    let mut boson = Vec::with_capacity(dim_boson);
    let mut c = C64::new(1.0, 0.0);
    for m in 0..dim_boson {
        if m > 0 {
            c = c * z / (m as f64).sqrt();
        }
        boson.push(c);
    }
    // sum_j (z b+)^j / j! |0>, with b+|m> = sqrt(m+1)|m+1>; exact after dim_boson terms
    let mut displaced_boson = vec![C64::new(0.0, 0.0); dim_boson];
    let mut v = displaced_boson.clone();
    v[0] = C64::new(1.0, 0.0);
    for j in 0..dim_boson {
        if j > 0 {
            let mut w = vec![C64::new(0.0, 0.0); dim_boson];
            for m in 0..dim_boson - 1 {
                w[m + 1] = v[m] * z * ((m + 1) as f64).sqrt() / j as f64;
            }
            v = w;
        }
        for (d, x) in displaced_boson.iter_mut().zip(&v) {
            *d += x;
        }
    }
    let boson_residual =
        boson.iter().zip(&displaced_boson).map(|(a, b)| (a - b).norm() / a.norm().max(1.0)).fold(0.0, f64::max);

    let numeric: Vec<C64> = graded.iter().map(CyclotomicScalar::to_c64).collect();
    let entries = boson.iter().map(|b| numeric.iter().map(|g| b * g).collect()).collect();

    let graded_sector_exact = graded_cs_from_displacement(3, reorder)? == ket;
    let u = &GradedElement::xi(3, reorder)? * &GradedElement::a_dag(3, reorder)?;
    let xi_first_discrepancy = &displaced_vacuum(&u)? - &ket;

    Ok(SuperCoherentTable {
        z,
        dim_boson,
        reorder,
        graded,
        boson,
        displaced_boson,
        entries,
        graded_sector_exact,
        boson_residual,
        xi_first_discrepancy,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_label_gives_the_graded_ket() {
        let t = supercoherent(C64::new(0.0, 0.0), 4, 0).unwrap();
        assert_eq!(t.boson[0], C64::new(1.0, 0.0));
        assert!(t.boson[1..].iter().all(|c| c.norm() == 0.0));
        assert_eq!(t.graded[0], CyclotomicScalar::one(3));
    }

    #[test]
    fn product_and_displacement_forms_agree() {
        let t = supercoherent(C64::new(0.7, -0.4), 20, 0).unwrap();
        assert!(t.graded_sector_exact);
        assert!(t.boson_residual < 1e-12);
        let mut fact = 1.0;
        for m in 0..20 {
            if m > 0 {
                fact *= m as f64;
            }
            let want = C64::new(0.7, -0.4).powu(m as u32) / fact.sqrt();
            assert!((t.entries[m][0] - want).norm() < 1e-14);
        }
    }

    #[test]
    fn xi_first_ordering_changes_the_phases() {
        let t = supercoherent(C64::new(0.5, 0.0), 3, 0).unwrap();
        assert!(!t.xi_first_discrepancy.is_zero());
    }
}
