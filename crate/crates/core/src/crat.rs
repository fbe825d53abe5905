//! Exact complex-rational scalars, the coefficient field for everything
//! symbolic in this crate.

use crate::special::{ln_ratio_abs, ratio_to_f64};
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// A complex number with exact rational real and imaginary parts.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl CRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    pub fn zero() -> Self {
        Self::new(BigRational::zero(), BigRational::zero())
    }

    pub fn one() -> Self {
        Self::new(BigRational::one(), BigRational::zero())
    }

    pub fn i() -> Self {
        Self::new(BigRational::zero(), BigRational::one())
    }

    pub fn from_int(v: i64) -> Self {
        Self::real(BigRational::from_integer(v.into()))
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        Self::new(
            BigRational::from_integer(re.into()),
            BigRational::from_integer(im.into()),
        )
    }

    pub fn real(re: BigRational) -> Self {
        Self::new(re, BigRational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    /// |c|² as an exact rational.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        Self::new(&self.re * s, &self.im * s)
    }

    pub fn to_complex64(&self) -> Complex64 {
        Complex64::new(ratio_to_f64(&self.re), ratio_to_f64(&self.im))
    }

    /// (ln |c|, arg c); magnitudes far outside f64 range stay finite in
    /// the log representation.
    pub fn log_polar(&self) -> (f64, f64) {
        if self.is_zero() {
            return (f64::NEG_INFINITY, 0.0);
        }
        let lr = if self.re.is_zero() {
            f64::NEG_INFINITY
        } else {
            ln_ratio_abs(&self.re)
        };
        let li = if self.im.is_zero() {
            f64::NEG_INFINITY
        } else {
            ln_ratio_abs(&self.im)
        };
        let m = lr.max(li);
        // scaled parts are O(1); sign comes back from the rationals
        let sr = if self.re.is_negative() { -1.0 } else { 1.0 };
        let si = if self.im.is_negative() { -1.0 } else { 1.0 };
        let xr = if lr.is_finite() { sr * (lr - m).exp() } else { 0.0 };
        let xi = if li.is_finite() { si * (li - m).exp() } else { 0.0 };
        let mag = (xr * xr + xi * xi).sqrt();
        (m + mag.ln(), xi.atan2(xr))
    }
}

impl fmt::Display for CRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            write!(f, "{}i", self.im)
        } else if self.im.is_negative() {
            write!(f, "{}{}i", self.re, self.im)
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

impl fmt::Debug for CRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Add for &CRational {
    type Output = CRational;
    fn add(self, rhs: &CRational) -> CRational {
        CRational::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub for &CRational {
    type Output = CRational;
    fn sub(self, rhs: &CRational) -> CRational {
        CRational::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul for &CRational {
    type Output = CRational;
    fn mul(self, rhs: &CRational) -> CRational {
        CRational::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Neg for &CRational {
    type Output = CRational;
    fn neg(self) -> CRational {
        CRational::new(-self.re.clone(), -self.im.clone())
    }
}

impl Neg for CRational {
    type Output = CRational;
    fn neg(self) -> CRational {
        CRational::new(-self.re, -self.im)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn field_ops() {
        let a = CRational::new(rat(1, 2), rat(-1, 3));
        let b = CRational::from_ints(2, 5);
        let prod = &a * &b;
        // (1/2 − i/3)(2 + 5i) = 1 + 5/3 + i(5/2 − 2/3)
        assert_eq!(prod.re, rat(8, 3));
        assert_eq!(prod.im, rat(11, 6));
        assert_eq!((&a + &b).re, rat(5, 2));
        assert_eq!((&a - &a), CRational::zero());
        assert_eq!(a.norm_sqr(), rat(13, 36));
        assert_eq!((&a.conj()).im, rat(1, 3));
    }

    #[test]
    fn log_polar_matches_direct() {
        let a = CRational::from_ints(-3, 4);
        let (lm, arg) = a.log_polar();
        assert!((lm - 5f64.ln()).abs() < 1e-14);
        assert!((arg - 4f64.atan2(-3.0)).abs() < 1e-14);
        let z = CRational::zero().log_polar();
        assert_eq!(z.0, f64::NEG_INFINITY);
    }

    #[test]
    fn display_forms() {
        assert_eq!(CRational::from_ints(1, -2).to_string(), "1-2i");
        assert_eq!(CRational::from_ints(0, 3).to_string(), "3i");
        assert_eq!(CRational::from_int(7).to_string(), "7");
    }
}
