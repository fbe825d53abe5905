//! Exact inner products and even-p Lᵖ norms on the polynomial-Gaussian
//! class, via closed-form Gaussian moments. π stays symbolic: every value
//! is a rational times an integer power of π, so closed-form identities
//! are exact equalities.

use crate::crat::CRational;
use crate::error::{Error, Result};
use crate::gaussian::GaussianFn;
use crate::multi_index::MultiIndex;
use crate::special::{format_rational, ln_ratio_abs, parse_rational, ratio_to_f64};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::fmt;

/// rational · π^pi_power, canonically reduced (zero has pi_power 0).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExactValue {
    rational: BigRational,
    pi_power: i32,
}

impl ExactValue {
    pub fn new(rational: BigRational, pi_power: i32) -> Self {
        if rational.is_zero() {
            Self::zero()
        } else {
            Self { rational, pi_power }
        }
    }

    pub fn zero() -> Self {
        Self {
            rational: BigRational::zero(),
            pi_power: 0,
        }
    }

    pub fn one() -> Self {
        Self {
            rational: BigRational::one(),
            pi_power: 0,
        }
    }

    pub fn from_rational(r: BigRational) -> Self {
        Self::new(r, 0)
    }

    pub fn rational(&self) -> &BigRational {
        &self.rational
    }

    pub fn pi_power(&self) -> i32 {
        self.pi_power
    }

    pub fn is_zero(&self) -> bool {
        self.rational.is_zero()
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(&self.rational * &other.rational, self.pi_power + other.pi_power)
    }

    pub fn div(&self, other: &Self) -> Self {
        assert!(!other.is_zero(), "division of exact values by zero");
        Self::new(&self.rational / &other.rational, self.pi_power - other.pi_power)
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        Self::new(&self.rational * r, self.pi_power)
    }

    /// Addition requires matching π powers (or a zero operand); mixed powers
    /// would leave the symbolic form, which nothing in this crate needs.
    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        assert_eq!(
            self.pi_power, other.pi_power,
            "adding exact values with different π powers"
        );
        Self::new(&self.rational + &other.rational, self.pi_power)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn to_f64(&self) -> f64 {
        ratio_to_f64(&self.rational) * PI.powi(self.pi_power)
    }

    /// ln |value|; panics on zero.
    pub fn ln_abs(&self) -> f64 {
        ln_ratio_abs(&self.rational) + self.pi_power as f64 * PI.ln()
    }
}

impl fmt::Display for ExactValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.pi_power {
            0 => write!(f, "{}", self.rational),
            1 => write!(f, "{}·π", self.rational),
            p => write!(f, "{}·π^{}", self.rational, p),
        }
    }
}

impl Serialize for ExactValue {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            rational: &'a str,
            pi_power: i32,
        }
        Repr {
            rational: &format_rational(&self.rational),
            pi_power: self.pi_power,
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for ExactValue {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            rational: String,
            pi_power: i32,
        }
        let r = Repr::deserialize(de)?;
        let rational = parse_rational(&r.rational).map_err(serde::de::Error::custom)?;
        Ok(ExactValue::new(rational, r.pi_power))
    }
}

/// Complex variant for inner products: (re + i·im)·π^pi_power.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CExact {
    pub re: BigRational,
    pub im: BigRational,
    pub pi_power: i32,
}

impl CExact {
    pub fn new(re: BigRational, im: BigRational, pi_power: i32) -> Self {
        if re.is_zero() && im.is_zero() {
            Self::zero()
        } else {
            Self { re, im, pi_power }
        }
    }

    pub fn zero() -> Self {
        Self {
            re: BigRational::zero(),
            im: BigRational::zero(),
            pi_power: 0,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn coeff(&self) -> CRational {
        CRational::new(self.re.clone(), self.im.clone())
    }

    /// The real part as an ExactValue; asserts the value is real.
    pub fn expect_real(&self) -> ExactValue {
        assert!(
            self.im.is_zero(),
            "expected a real exact value, got imaginary part {}",
            self.im
        );
        ExactValue::new(self.re.clone(), self.pi_power)
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        assert_eq!(self.pi_power, other.pi_power);
        Self::new(&self.re + &other.re, &self.im + &other.im, self.pi_power)
    }
}

/// ∫_{ℂⁿ} z^a z̄^b e^{−t|z|²} dz: zero off the diagonal, Πⱼ π·aⱼ!/t^{aⱼ+1}
/// on it.
pub fn gaussian_moment(a: &MultiIndex, b: &MultiIndex, t: &BigRational) -> Result<ExactValue> {
    if a.n() != b.n() {
        return Err(Error::DimensionMismatch(a.n(), b.n()));
    }
    if !t.is_positive() {
        return Err(Error::InvalidParameter(format!(
            "Gaussian moment needs t > 0, got {t}"
        )));
    }
    if a != b {
        return Ok(ExactValue::zero());
    }
    let n = a.n();
    let mut rational = BigRational::one();
    for j in 0..n {
        let aj = a.get(j);
        let fact = BigRational::from_integer(crate::special::factorial_big(aj as u64));
        let mut tp = BigRational::one();
        for _ in 0..=aj {
            tp *= t;
        }
        rational *= fact / tp;
    }
    Ok(ExactValue::new(rational, n as i32))
}

/// Exact L² inner product ⟨g, h⟩ = ∫ g·h̄. Mixed widths integrate against
/// the averaged exponent (t_g + t_h)/2.
pub fn inner_exact(g: &GaussianFn, h: &GaussianFn) -> Result<CExact> {
    if g.n() != h.n() {
        return Err(Error::DimensionMismatch(g.n(), h.n()));
    }
    let n = g.n();
    let t = (g.width() + h.width()) / BigRational::from_integer(2.into());
    let mut acc = CExact::zero();
    for (ka, ca) in g.poly().terms() {
        for (kb, cb) in h.poly().terms() {
            // off-diagonal monomials integrate to zero; skip them before
            // touching any big-integer arithmetic
            let diagonal =
                (0..n).all(|j| ka.a.get(j) + kb.b.get(j) == ka.b.get(j) + kb.a.get(j));
            if !diagonal {
                continue;
            }
            let a = ka.a.plus(&kb.b);
            let b = ka.b.plus(&kb.a);
            let m = gaussian_moment(&a, &b, &t)?;
            if m.is_zero() {
                continue;
            }
            let c = ca * &cb.conj();
            let scaled_re = &c.re * m.rational();
            let scaled_im = &c.im * m.rational();
            acc = acc.add(&CExact::new(scaled_re, scaled_im, m.pi_power()));
        }
    }
    Ok(acc)
}

/// ‖g‖₂² as an exact value.
pub fn norm_sq_exact(g: &GaussianFn) -> ExactValue {
    inner_exact(g, g)
        .expect("matching dimensions")
        .expect_real()
}

/// ‖g‖ₚᵖ for even integer p ≥ 2, exactly: |g|ᵖ = (g·ḡ)^{p/2} is again a
/// polynomial-Gaussian and integrates by moments. The p-th root is left to
/// the caller's float boundary.
pub fn lp_norm_exact_even(g: &GaussianFn, p: u32) -> Result<ExactValue> {
    if p < 2 || p % 2 != 0 {
        return Err(Error::NonEvenExponent(p.to_string()));
    }
    let sq = g.product(&g.conj())?;
    let mut pw = sq.clone();
    for _ in 1..(p / 2) {
        pw = pw.product(&sq)?;
    }
    // pw represents |g|^p with weight e^{−(p·t/2)|z|²}; its moment integral
    // uses t' = p·t/2
    let t = g.width() * BigRational::from_integer((p / 2).into());
    let mut acc = ExactValue::zero();
    for (k, c) in pw.poly().terms() {
        let m = gaussian_moment(&k.a, &k.b, &t)?;
        if m.is_zero() {
            continue;
        }
        debug_assert!(c.is_real(), "diagonal coefficients of |g|^p are real");
        acc = acc.add(&m.scale(&c.re));
    }
    Ok(acc)
}
