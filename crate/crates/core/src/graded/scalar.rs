use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::qcalc::C64;

/// Exact element of `Q(q)` (`q = e^{2 pi i / k}`, `k` in {2, 3}), extended by
/// `s` with `s^2 = 1 + q` when `k = 3`.
///
/// Stored on the basis `{1, q, s, q s}`; for `k = 2` only the first slot is used
/// (`q = -1`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CyclotomicScalar {
    k: u32,
    c: [BigRational; 4],
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub(crate) fn check_order(k: u32) -> Result<()> {
    if k == 2 || k == 3 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("graded algebras are implemented for k = 2 and k = 3, got {k}")))
    }
}

// (a + b q)(c + d q) with q^2 = -1 - q
fn mul_q3(a: &BigRational, b: &BigRational, c: &BigRational, d: &BigRational) -> (BigRational, BigRational) {
    let bd = b * d;
    (a * c - &bd, a * d + b * c - bd)
}

impl CyclotomicScalar {
    fn raw(k: u32, c: [BigRational; 4]) -> Self {
        Self { k, c }
    }

    pub fn zero(k: u32) -> Self {
        Self::raw(k, [rat(0), rat(0), rat(0), rat(0)])
    }

    pub fn from_rational(k: u32, r: BigRational) -> Self {
        let mut x = Self::zero(k);
        x.c[0] = r;
        x
    }

    pub fn from_int(k: u32, n: i64) -> Self {
        Self::from_rational(k, rat(n))
    }

    pub fn one(k: u32) -> Self {
        Self::from_int(k, 1)
    }

    /// `a + b q + c s + d q s` from integer coordinates; `k = 2` accepts only `a`.
    pub fn from_coords(k: u32, coords: [i64; 4]) -> Result<Self> {
        check_order(k)?;
        if k == 2 && coords[1..].iter().any(|&c| c != 0) {
            return Err(Error::InvalidParameter("for k = 2 only the rational coordinate is allowed".into()));
        }
        Ok(Self::raw(k, coords.map(rat)))
    }

    /// The root of unity `q`.
    pub fn q(k: u32) -> Self {
        if k == 2 {
            return Self::from_int(2, -1);
        }
        let mut x = Self::zero(k);
        x.c[1] = rat(1);
        x
    }

    /// `s = sqrt([2]) = sqrt(1 + q)`; only defined for `k = 3`.
    pub fn s(k: u32) -> Result<Self> {
        if k != 3 {
            return Err(Error::InvalidParameter(format!("sqrt([2]) is only adjoined for k = 3, got k = {k}")));
        }
        let mut x = Self::zero(3);
        x.c[2] = rat(1);
        Ok(x)
    }

    /// `q^e` for any integer exponent.
    pub fn q_pow(k: u32, e: i64) -> Self {
        match e.rem_euclid(k as i64) {
            0 => Self::one(k),
            1 => Self::q(k),
            _ => Self::raw(k, [rat(-1), rat(-1), rat(0), rat(0)]),
        }
    }

    pub fn order(&self) -> u32 {
        self.k
    }

    /// Rational coordinates on `{1, q, s, q s}`.
    pub fn coords(&self) -> &[BigRational; 4] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.c[0].is_one() && self.c[1..].iter().all(Zero::is_zero)
    }

    fn same_order(&self, other: &Self) {
        assert_eq!(self.k, other.k, "cyclotomic scalars of different orders");
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        Self::raw(self.k, self.c.clone().map(|c| c * r))
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if self.k == 2 {
            return Some(Self::from_rational(2, self.c[0].recip()));
        }
        let [a, b, c, d] = &self.c;
        // N = A^2 - B^2 (1 + q) with A = a + b q, B = c + d q
        let (a2, b2) = mul_q3(a, b, a, b);
        let (c2, d2) = mul_q3(c, d, c, d);
        let (t0, t1) = mul_q3(&c2, &d2, &rat(1), &rat(1));
        let (n0, n1) = (a2 - t0, b2 - t1);
        // (n0 + n1 q)^{-1} = (n0 + n1 q^2) / (n0^2 - n0 n1 + n1^2)
        let norm = &n0 * &n0 - &n0 * &n1 + &n1 * &n1;
        let (i0, i1) = ((&n0 - &n1) / &norm, -(&n1 / &norm));
        let (p0, p1) = mul_q3(a, b, &i0, &i1);
        let (r0, r1) = mul_q3(c, d, &i0, &i1);
        Some(Self::raw(3, [p0, p1, -r0, -r1]))
    }

    /// Complex value with `s` the principal square root of `1 + q`.
    pub fn to_c64(&self) -> C64 {
        use num_traits::ToPrimitive;
        let f = |r: &BigRational| r.to_f64().unwrap_or(f64::NAN);
        let q = crate::qcalc::root_of_unity(self.k, 1);
        let s = (C64::new(1.0, 0.0) + q).sqrt();
        if self.k == 2 {
            return C64::new(f(&self.c[0]), 0.0);
        }
        (C64::new(f(&self.c[0]), 0.0) + q * f(&self.c[1])) + (C64::new(f(&self.c[2]), 0.0) + q * f(&self.c[3])) * s
    }
}

impl Add for &CyclotomicScalar {
    type Output = CyclotomicScalar;
    fn add(self, rhs: Self) -> CyclotomicScalar {
        self.same_order(rhs);
        let mut c = self.c.clone();
        for (x, y) in c.iter_mut().zip(&rhs.c) {
            *x += y;
        }
        CyclotomicScalar::raw(self.k, c)
    }
}

impl Sub for &CyclotomicScalar {
    type Output = CyclotomicScalar;
    fn sub(self, rhs: Self) -> CyclotomicScalar {
        self + &(-rhs)
    }
}

impl Neg for &CyclotomicScalar {
    type Output = CyclotomicScalar;
    fn neg(self) -> CyclotomicScalar {
        CyclotomicScalar::raw(self.k, self.c.clone().map(|c| -c))
    }
}

impl Mul for &CyclotomicScalar {
    type Output = CyclotomicScalar;
    fn mul(self, rhs: Self) -> CyclotomicScalar {
        self.same_order(rhs);
        if self.k == 2 {
            return CyclotomicScalar::from_rational(2, &self.c[0] * &rhs.c[0]);
        }
        let [a, b, c, d] = &self.c;
        let [e, f, g, h] = &rhs.c;
        // (A + B s)(C + D s) = AC + BD (1 + q) + (AD + BC) s
        let (ac0, ac1) = mul_q3(a, b, e, f);
        let (bd0, bd1) = mul_q3(c, d, g, h);
        let (bds0, bds1) = mul_q3(&bd0, &bd1, &rat(1), &rat(1));
        let (ad0, ad1) = mul_q3(a, b, g, h);
        let (bc0, bc1) = mul_q3(c, d, e, f);
        CyclotomicScalar::raw(3, [ac0 + bds0, ac1 + bds1, ad0 + bc0, ad1 + bc1])
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for CyclotomicScalar {
            type Output = CyclotomicScalar;
            fn $m(self, rhs: Self) -> CyclotomicScalar {
                (&self).$m(&rhs)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for CyclotomicScalar {
    type Output = CyclotomicScalar;
    fn neg(self) -> CyclotomicScalar {
        -&self
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for CyclotomicScalar {
    /// `a + b·q + c·s + d·q·s`, skipping zero terms.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        const NAMES: [&str; 4] = ["", "q", "s", "q·s"];
        let mut out = String::new();
        for (c, name) in self.c.iter().zip(NAMES) {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let body = match (mag.is_one(), name.is_empty()) {
                (true, true) => "1".to_string(),
                (true, false) => name.to_string(),
                (false, true) => fmt_rational(&mag),
                (false, false) => format!("{}·{name}", fmt_rational(&mag)),
            };
            let neg = c.is_negative();
            if out.is_empty() {
                out = if neg { format!("-{body}") } else { body };
            } else {
                out += if neg { " - " } else { " + " };
                out += &body;
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        f.write_str(&out)
    }
}

impl Serialize for CyclotomicScalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type S = CyclotomicScalar;

    #[test]
    fn cube_root_relations() {
        let q = S::q(3);
        let one = S::one(3);
        assert!((&(&one + &q) + &(&q * &q)).is_zero());
        assert!((&(&q * &q) * &q).is_one());
        let s = S::s(3).unwrap();
        assert_eq!(&s * &s, &one + &q);
        assert_eq!(S::q_pow(3, -1), &q * &q);
        assert_eq!(S::q_pow(2, 3), S::from_int(2, -1));
    }

    #[test]
    fn inverses_are_exact() {
        let x = S::from_coords(3, [2, -1, 3, 5]).unwrap();
        assert!((&x * &x.inverse().unwrap()).is_one());
        let y = S::from_coords(3, [0, 0, 1, 0]).unwrap();
        assert!((&y * &y.inverse().unwrap()).is_one());
        assert!(S::zero(3).inverse().is_none());
        assert!((&S::from_int(2, -3) * &S::from_int(2, -3).inverse().unwrap()).is_one());
    }

    #[test]
    fn numeric_values() {
        let q = S::q(3).to_c64();
        assert!((q - crate::qcalc::root_of_unity(3, 1)).norm() < 1e-15);
        let s = S::s(3).unwrap().to_c64();
        assert!((s * s - (C64::new(1.0, 0.0) + q)).norm() < 1e-15);
    }

    #[test]
    fn display() {
        assert_eq!(S::from_coords(3, [1, -1, 0, 2]).unwrap().to_string(), "1 - q + 2·q·s");
        assert_eq!(S::zero(3).to_string(), "0");
        assert_eq!((-S::s(3).unwrap()).to_string(), "-s");
        assert_eq!(S::from_rational(2, BigRational::new(1.into(), 2.into())).to_string(), "1/2");
    }

    #[test]
    fn wrong_orders_are_rejected() {
        assert!(S::s(2).is_err());
        assert!(S::from_coords(4, [1, 0, 0, 0]).is_err());
        assert!(S::from_coords(2, [1, 1, 0, 0]).is_err());
    }
}
