use crate::error::{Error, Result};
use crate::qcalc::C64;

use super::tensor::{lift, CMatrix, LambdaMatrix};

fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// `max |L12 L23 L12 - L23 L12 L23|` over `V^{(x)3}`.
pub fn braid_residual(lambda: &LambdaMatrix) -> f64 {
    let l12 = lift(lambda, 1, 3).expect("position 1 is valid for n = 3").into_matrix();
    let l23 = lift(lambda, 2, 3).expect("position 2 is valid for n = 3").into_matrix();
    let lhs = &l12 * &l23 * &l12;
    let rhs = &l23 * &l12 * &l23;
    max_abs(&(lhs - rhs))
}

/// Yang-Baxter residual of `R = P * Lambda`.
///
/// `R13` is `R23` conjugated by the swap of the first two factors.
pub fn ybe_residual(lambda: &LambdaMatrix) -> f64 {
    let d = lambda.d();
    let p = LambdaMatrix::permutation(d);
    let r = p.compose(lambda).expect("same d");
    let r12 = lift(&r, 1, 3).expect("valid position").into_matrix();
    let r23 = lift(&r, 2, 3).expect("valid position").into_matrix();
    let p12 = lift(&p, 1, 3).expect("valid position").into_matrix();
    let r13 = &p12 * &r23 * &p12;
    let lhs = &r12 * &r13 * &r23;
    let rhs = &r23 * &r13 * &r12;
    max_abs(&(lhs - rhs))
}

fn check_exchange(d: usize, q: &CMatrix) -> Result<()> {
    if d == 0 {
        return Err(Error::InvalidParameter("dimension d must be positive".into()));
    }
    if q.nrows() != d || q.ncols() != d {
        return Err(Error::DimensionMismatch(format!(
            "exchange table is {}x{}, expected {d}x{d}",
            q.nrows(),
            q.ncols()
        )));
    }
    for i in 0..d {
        for j in 0..d {
            if i != j && q[(i, j)] == C64::new(0.0, 0.0) {
                return Err(Error::InvalidParameter(format!("q[{i}][{j}] must be nonzero")));
            }
        }
    }
    Ok(())
}

/// `Lambda^{ii}_{ii} = 1`, `Lambda^{ij}_{ji} = q[(i, j)]` for `i != j`, zero elsewhere.
///
/// Only the off-diagonal entries of `q` are read.
pub fn multiparametric_lambda(d: usize, q: &CMatrix) -> Result<LambdaMatrix> {
    check_exchange(d, q)?;
    LambdaMatrix::from_fn(d, |i, j, k, l| {
        if i == j && k == i && l == i {
            C64::new(1.0, 0.0)
        } else if i != j && k == j && l == i {
            q[(i, j)]
        } else {
            C64::new(0.0, 0.0)
        }
    })
}

/// The companion of a multiparametric `Lambda`, carrying `p_i` on the diagonal.
#[derive(Clone, Debug, PartialEq)]
pub struct SMatrix {
    inner: LambdaMatrix,
}

impl SMatrix {
    pub fn new(inner: LambdaMatrix) -> Self {
        Self { inner }
    }

    pub fn as_lambda(&self) -> &LambdaMatrix {
        &self.inner
    }

    pub fn d(&self) -> usize {
        self.inner.d()
    }
}

/// `S^{ii}_{ii} = p[i]`, `S^{ij}_{ji} = q[(i, j)]` for `i != j`.
pub fn multiparametric_s(d: usize, p: &[C64], q: &CMatrix) -> Result<SMatrix> {
    check_exchange(d, q)?;
    if p.len() != d {
        return Err(Error::DimensionMismatch(format!("{} diagonal parameters for d = {d}", p.len())));
    }
    let m = LambdaMatrix::from_fn(d, |i, j, k, l| {
        if i == j && k == i && l == i {
            p[i]
        } else if i != j && k == j && l == i {
            q[(i, j)]
        } else {
            C64::new(0.0, 0.0)
        }
    })?;
    Ok(SMatrix::new(m))
}

/// `max |(E - S)(E + Lambda)|` on `V (x) V`.
pub fn compatibility_residual(lambda: &LambdaMatrix, s: &SMatrix) -> Result<f64> {
    if lambda.d() != s.d() {
        return Err(Error::DimensionMismatch(format!("d = {} vs d = {}", lambda.d(), s.d())));
    }
    let n = lambda.d() * lambda.d();
    let e = CMatrix::identity(n, n);
    let prod = (&e - s.as_lambda().entries()) * (&e + lambda.entries());
    Ok(max_abs(&prod))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::tensor::{flat_index, TensorOperator};

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    fn exchange_table(d: usize, f: impl Fn(usize, usize) -> C64) -> CMatrix {
        CMatrix::from_fn(d, d, |i, j| if i == j { c(0.0) } else { f(i, j) })
    }

    #[test]
    fn flip_satisfies_both_equations() {
        for d in 1..=4 {
            let p = LambdaMatrix::permutation(d);
            assert_eq!(braid_residual(&p), 0.0);
            assert_eq!(ybe_residual(&p), 0.0);
        }
    }

    #[test]
    fn unit_exchange_reproduces_the_flip() {
        let q = exchange_table(3, |_, _| c(1.0));
        assert_eq!(multiparametric_lambda(3, &q).unwrap(), LambdaMatrix::permutation(3));
    }

    #[test]
    fn reciprocal_exchange_satisfies_braid_and_ybe() {
        let q = exchange_table(3, |i, j| {
            let a = C64::from_polar(1.0 + 0.3 * i as f64, 0.7 * j as f64);
            if i < j {
                a
            } else {
                C64::new(1.0, 0.0) / C64::from_polar(1.0 + 0.3 * j as f64, 0.7 * i as f64)
            }
        });
        let lam = multiparametric_lambda(3, &q).unwrap();
        assert!(braid_residual(&lam) < 1e-12);
        assert!(ybe_residual(&lam) < 1e-12);
    }

    #[test]
    fn arbitrary_exchange_still_satisfies_braid() {
        let q = exchange_table(2, |i, _| if i == 0 { c(2.0) } else { c(3.0) });
        let lam = multiparametric_lambda(2, &q).unwrap();
        assert!(braid_residual(&lam) < 1e-12);
    }

    #[test]
    fn compatibility_holds_for_reciprocal_pairs_with_unit_diagonal() {
        let q = exchange_table(2, |i, _| if i == 0 { c(2.0) } else { c(0.5) });
        let lam = multiparametric_lambda(2, &q).unwrap();
        let s = multiparametric_s(2, &[c(1.0), c(1.0)], &q).unwrap();
        assert_eq!(compatibility_residual(&lam, &s).unwrap(), 0.0);
    }

    #[test]
    fn zero_exchange_is_rejected() {
        let q = exchange_table(2, |_, _| c(0.0));
        assert!(matches!(multiparametric_lambda(2, &q), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn lifted_product_matches_index_contraction() {
        // (L12 L23)^{abc}_{xyz} = sum_m L^{ab}_{xm} L^{mc}_{yz}
        let d = 2;
        let lam = LambdaMatrix::from_fn(d, |i, j, k, l| {
            C64::new(1.0 + i as f64 - 0.5 * j as f64 + 0.25 * k as f64, 0.1 * l as f64 - 0.3 * i as f64)
        })
        .unwrap();
        let prod = lift(&lam, 1, 3).unwrap().compose(&lift(&lam, 2, 3).unwrap()).unwrap();
        let mut brute = TensorOperator::zeros(d, 3).into_matrix();
        for a in 0..d {
            for b in 0..d {
                for cc in 0..d {
                    for x in 0..d {
                        for y in 0..d {
                            for z in 0..d {
                                let mut s = c(0.0);
                                for m in 0..d {
                                    s += lam.get(a, b, x, m) * lam.get(m, cc, y, z);
                                }
                                brute[(flat_index(&[a, b, cc], d), flat_index(&[x, y, z], d))] = s;
                            }
                        }
                    }
                }
            }
        }
        let diff = (prod.matrix() - brute).iter().map(|z| z.norm()).fold(0.0, f64::max);
        assert!(diff < 1e-14, "{diff}");
    }
}
