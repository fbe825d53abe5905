//! Exact evaluation of radial profiles Σ c_m·(r²)^m · e^{−t·r²/2}.
//!
//! The monomial coefficients of high-index radial eigenfunctions alternate
//! in sign with magnitudes vastly larger than the function values, so a
//! floating-point Horner pass loses every significant digit long before
//! k ~ 60. Here the polynomial part is summed in exact integer arithmetic
//! (the radius enters as the exact dyadic rational r², so the only rounding
//! is one final conversion), which keeps quadrature of |f_k|ᵖ honest at any
//! k the sweeps reach.

use crate::crat::CRational;
use crate::evaluator::LogComplex;
use crate::special::{ln_big, ratio_to_f64};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

/// A radial polynomial-Gaussian profile with integer-cleared coefficients.
#[derive(Clone, Debug)]
pub struct ExactRadialProfile {
    n: usize,
    /// numerators of c_m (common denominator cleared out)
    re: Vec<BigInt>,
    im: Vec<BigInt>,
    /// ln of the (positive) common denominator
    ln_denom: f64,
    t: f64,
    degree: usize,
}

impl ExactRadialProfile {
    /// Build from the coefficients of Σ c_m·s^m (s = |z|²) and the Gaussian
    /// width t.
    pub fn new(coeffs: &[CRational], t: &BigRational, n: usize) -> Self {
        let mut denom = BigInt::one();
        for c in coeffs {
            denom = denom.lcm(c.re.denom()).lcm(c.im.denom());
        }
        let clear = |r: &BigRational| -> BigInt { r.numer() * (&denom / r.denom()) };
        let re: Vec<BigInt> = coeffs.iter().map(|c| clear(&c.re)).collect();
        let im: Vec<BigInt> = coeffs.iter().map(|c| clear(&c.im)).collect();
        let mut degree = 0;
        for (m, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                degree = m;
            }
        }
        Self {
            n,
            re,
            im,
            ln_denom: ln_big(&denom),
            t: ratio_to_f64(t),
            degree,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Highest power of r² present.
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn width(&self) -> f64 {
        self.t
    }

    /// Profile value at radius r in log-polar form. The polynomial sum is
    /// exact; only the final magnitude/argument extraction rounds.
    pub fn eval_log(&self, r: f64) -> LogComplex {
        assert!(r.is_finite() && r >= 0.0, "radius must be finite and ≥ 0");
        let gauss = -0.5 * self.t * r * r;
        if r == 0.0 {
            let (re0, im0) = (&self.re[0], &self.im[0]);
            if re0.is_zero() && im0.is_zero() {
                return LogComplex::zero();
            }
            let (ln, arg) = ln_arg_pair(re0, im0);
            return LogComplex::new(ln - self.ln_denom + gauss, arg);
        }
        let (s_m, s_e) = dyadic_square(r);
        let k = self.degree as i64;
        let min_e = if s_e >= 0 { 0 } else { s_e * k };
        let mut t_re = BigInt::zero();
        let mut t_im = BigInt::zero();
        let mut pw = BigInt::one();
        for m in 0..=self.degree {
            if m > 0 {
                pw *= &s_m;
            }
            if self.re[m].is_zero() && self.im[m].is_zero() {
                continue;
            }
            let shift = (s_e * m as i64 - min_e) as u64;
            let shifted: BigInt = &pw << shift;
            t_re += &self.re[m] * &shifted;
            t_im += &self.im[m] * &shifted;
        }
        if t_re.is_zero() && t_im.is_zero() {
            return LogComplex::zero();
        }
        let (ln, arg) = ln_arg_pair(&t_re, &t_im);
        LogComplex::new(
            ln + min_e as f64 * std::f64::consts::LN_2 - self.ln_denom + gauss,
            arg,
        )
    }

    /// Plain value; overflows to ±inf outside the f64 range.
    pub fn value(&self, r: f64) -> num_complex::Complex64 {
        self.eval_log(r).to_complex()
    }
}

/// ln |re + i·im| and its argument for an exact integer pair.
fn ln_arg_pair(re: &BigInt, im: &BigInt) -> (f64, f64) {
    let sq = re * re + im * im;
    let ln = 0.5 * ln_big(&sq);
    let bits = re.magnitude().bits().max(im.magnitude().bits());
    let shift = bits.saturating_sub(64);
    let fr = (re >> shift).to_f64().unwrap();
    let fi = (im >> shift).to_f64().unwrap();
    (ln, fi.atan2(fr))
}

/// r² as an exact dyadic rational: (mantissa, exponent) with r² = m·2^e.
fn dyadic_square(r: f64) -> (BigInt, i64) {
    let bits = r.to_bits();
    let exp_bits = ((bits >> 52) & 0x7ff) as i64;
    let frac = bits & 0x000f_ffff_ffff_ffff;
    let (mant, exp) = if exp_bits == 0 {
        (frac, -1074i64)
    } else {
        (frac | (1u64 << 52), exp_bits - 1075)
    };
    let m = BigInt::from(mant);
    (&m * &m, 2 * exp)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eigen::{build_radial, radial_closed_forms};
    use num_complex::Complex64;

    fn profile_of(n: usize, k: u32) -> ExactRadialProfile {
        let f = build_radial(n, k);
        let coeffs = f.radial_profile().expect("radial");
        ExactRadialProfile::new(&coeffs, f.width(), n)
    }

    #[test]
    fn matches_direct_evaluation_at_small_k() {
        for n in 1..=2usize {
            for k in 0..=8u32 {
                let f = build_radial(n, k);
                let prof = profile_of(n, k);
                for r in [0.0, 0.3, 1.0, 2.5, 4.0] {
                    let mut z = vec![Complex64::new(0.0, 0.0); n];
                    z[0] = Complex64::new(r, 0.0);
                    let direct = f.evaluate(&z);
                    let via = prof.value(r);
                    let scale = direct.norm().max(1e-12);
                    assert!(
                        (direct - via).norm() < 1e-10 * scale,
                        "n={n} k={k} r={r}: {direct} vs {via}"
                    );
                }
            }
        }
    }

    #[test]
    fn origin_value_matches_closed_form_at_large_k() {
        for n in 1..=2usize {
            for k in [16u32, 32, 64, 100] {
                let prof = profile_of(n, k);
                let (v0, _) = radial_closed_forms(n, k);
                let got = prof.eval_log(0.0);
                assert!(got.arg.abs() < 1e-12, "positive at the origin");
                assert!(
                    (got.ln_mag - v0.ln_abs()).abs() < 1e-10,
                    "n={n} k={k}: {} vs {}",
                    got.ln_mag,
                    v0.ln_abs()
                );
            }
        }
    }

    #[test]
    fn no_cancellation_blowup_in_oscillatory_region() {
        // at k = 64 the float Horner sum is garbage; the exact sum must stay
        // bounded by the origin value (Laguerre-type profiles peak there)
        let prof = profile_of(1, 64);
        let ln0 = prof.eval_log(0.0).ln_mag;
        let mut r = 0.1;
        while r < 16.0 {
            let l = prof.eval_log(r);
            assert!(
                l.ln_mag <= ln0 + 1e-9,
                "r={r}: profile exceeds origin value"
            );
            r += 0.17;
        }
    }

    #[test]
    fn dyadic_decomposition_is_exact() {
        for r in [1.0f64, 0.5, 3.141592653589793, 1e-3, 255.875] {
            let (m, e) = dyadic_square(r);
            let back = m.to_f64().unwrap() * 2f64.powi(e as i32);
            assert_eq!(back, r * r, "r={r}");
        }
    }

    #[test]
    fn complex_coefficients_carry_phase() {
        // i·f_2 has argument π/2 wherever f_2 > 0
        let f = build_radial(1, 2);
        let coeffs: Vec<CRational> = f
            .radial_profile()
            .unwrap()
            .iter()
            .map(|c| &CRational::i() * c)
            .collect();
        let prof = ExactRadialProfile::new(&coeffs, f.width(), 1);
        let l = prof.eval_log(0.1);
        assert!((l.arg - std::f64::consts::FRAC_PI_2).abs() < 1e-12);
    }
}
