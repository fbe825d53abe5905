//! Scalar special functions and big-integer helpers: log-gamma, factorials,
//! binomials, and safe conversions from arbitrary-precision values to f64.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use std::f64::consts::PI;

/// ln Γ(x) for x > 0.
///
/// Lanczos (g = 5, 6 terms) below 20, Stirling with Bernoulli corrections
/// above; absolute error stays below ~1e-12 on the whole range used here
/// (arguments up to a few 10⁶ in the sweep code).
pub fn ln_gamma(x: f64) -> f64 {
    assert!(x > 0.0, "ln_gamma needs a positive argument, got {x}");
    if x < 20.0 {
        lanczos_ln_gamma(x)
    } else {
        stirling_ln_gamma(x)
    }
}

fn lanczos_ln_gamma(x: f64) -> f64 {
    const COEFFS: [f64; 6] = [
        76.18009172947146,
        -86.50532032941677,
        24.01409824083091,
        -1.231739572450155,
        0.1208650973866179e-2,
        -0.5395239384953e-5,
    ];
    let tmp = x + 5.5;
    let log = (x + 0.5) * tmp.ln() - tmp;
    let mut series = 1.000000000190015;
    let mut denom = x;
    for c in COEFFS {
        denom += 1.0;
        series += c / denom;
    }
    log + (2.5066282746310005 * series / x).ln()
}

fn stirling_ln_gamma(x: f64) -> f64 {
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    (x - 0.5) * x.ln() - x
        + 0.5 * (2.0 * PI).ln()
        + inv * (1.0 / 12.0 + inv2 * (-1.0 / 360.0 + inv2 * (1.0 / 1260.0 - inv2 / 1680.0)))
}

/// ln k! through `ln_gamma`.
pub fn ln_factorial(k: u64) -> f64 {
    ln_gamma(k as f64 + 1.0)
}

/// ln C(n, k) for n ≥ k.
pub fn ln_binomial(n: u64, k: u64) -> f64 {
    assert!(k <= n);
    ln_factorial(n) - ln_factorial(k) - ln_factorial(n - k)
}

/// k! as an exact integer.
pub fn factorial_big(k: u64) -> BigInt {
    let mut acc = BigInt::from(1u32);
    for i in 2..=k {
        acc *= BigInt::from(i);
    }
    acc
}

/// C(n, k) as an exact integer.
pub fn binomial_big(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut num = BigInt::from(1u32);
    let mut den = BigInt::from(1u32);
    for i in 0..k {
        num *= BigInt::from(n - i);
        den *= BigInt::from(i + 1);
    }
    num / den
}

/// (Σ parts)! / Π partsⱼ! as an exact integer.
pub fn multinomial_big(parts: &[u32]) -> BigInt {
    let mut acc = BigInt::from(1u32);
    let mut total: u64 = 0;
    for &p in parts {
        total += p as u64;
        acc *= binomial_big(total, p as u64);
    }
    acc
}

/// ln |x| for a nonzero big integer, accurate to a few ulps.
pub fn ln_big(x: &BigInt) -> f64 {
    assert!(!x.is_zero(), "ln_big of zero");
    let bits = x.magnitude().bits();
    if bits <= 53 {
        return x.magnitude().to_f64().unwrap().ln();
    }
    let shift = bits - 53;
    let top = (x.magnitude() >> shift).to_f64().unwrap();
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// ln |r| for a nonzero rational.
pub fn ln_ratio_abs(r: &BigRational) -> f64 {
    assert!(!r.is_zero(), "ln_ratio_abs of zero");
    ln_big(r.numer()) - ln_big(r.denom())
}

/// Correctly scaled rational → f64 conversion; huge magnitudes overflow to
/// ±inf instead of producing NaN.
pub fn ratio_to_f64(r: &BigRational) -> f64 {
    if r.is_zero() {
        return 0.0;
    }
    let n_bits = r.numer().magnitude().bits();
    let d_bits = r.denom().magnitude().bits();
    let shift_n = n_bits.saturating_sub(80);
    let shift_d = d_bits.saturating_sub(80);
    let n = (r.numer().magnitude() >> shift_n).to_f64().unwrap();
    let d = (r.denom().magnitude() >> shift_d).to_f64().unwrap();
    let sign = if r.is_negative() { -1.0 } else { 1.0 };
    sign * (n / d) * pow2(shift_n as i64 - shift_d as i64)
}

/// 2^e with exact scaling (powers of two multiply exactly until they
/// saturate to inf/0).
fn pow2(e: i64) -> f64 {
    if e >= 0 {
        let mut acc = 1.0f64;
        let mut left = e;
        while left > 0 {
            let step = left.min(1000);
            acc *= 2.0f64.powi(step as i32);
            left -= step;
        }
        acc
    } else {
        1.0 / pow2(-e)
    }
}

/// Parse "p/q" or "p" into an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational, String> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = num
        .parse()
        .map_err(|e| format!("bad rational numerator {num:?}: {e}"))?;
    let d: BigInt = den
        .parse()
        .map_err(|e| format!("bad rational denominator {den:?}: {e}"))?;
    if d.is_zero() {
        return Err(format!("zero denominator in rational {s:?}"));
    }
    Ok(BigRational::new(n, d))
}

/// Format a rational as "p" or "p/q" (canonical reduced form).
pub fn format_rational(r: &BigRational) -> String {
    r.to_string()
}
