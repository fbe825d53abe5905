//! Numeric evaluators for the quadrature engine.
//!
//! Values travel in log-polar form (ln magnitude + argument) so that
//! functions whose scales dwarf the f64 range — high-index eigenfunctions
//! before normalization — integrate without overflow. A prepared Gaussian
//! carries an exact radial profile when one exists, which the engine uses
//! to collapse integrals to one dimension.

use crate::gaussian::GaussianFn;
use crate::profile::ExactRadialProfile;
use crate::special::ratio_to_f64;
use num_complex::Complex64;

/// A complex value as (ln |v|, arg v).
#[derive(Clone, Copy, Debug)]
pub struct LogComplex {
    pub ln_mag: f64,
    pub arg: f64,
}

impl LogComplex {
    pub fn new(ln_mag: f64, arg: f64) -> Self {
        Self { ln_mag, arg }
    }

    pub fn zero() -> Self {
        Self {
            ln_mag: f64::NEG_INFINITY,
            arg: 0.0,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.ln_mag == f64::NEG_INFINITY
    }

    pub fn from_complex(v: Complex64) -> Self {
        if v == Complex64::new(0.0, 0.0) {
            Self::zero()
        } else {
            Self::new(v.norm().ln(), v.arg())
        }
    }

    pub fn to_complex(self) -> Complex64 {
        if self.is_zero() {
            return Complex64::new(0.0, 0.0);
        }
        Complex64::from_polar(self.ln_mag.exp(), self.arg)
    }

    /// v·e^{−shift} as a plain complex number.
    pub fn to_complex_shifted(self, ln_shift: f64) -> Complex64 {
        if self.is_zero() {
            return Complex64::new(0.0, 0.0);
        }
        Complex64::from_polar((self.ln_mag - ln_shift).exp(), self.arg)
    }
}

/// |u| of a single-monomial Gaussian: |c|·Π|zⱼ|^{powⱼ}·e^{−t|z|²/2}. Such
/// magnitudes have no angular dependence, which collapses full-space
/// integrals to the radii alone.
#[derive(Clone, Debug)]
pub struct MonomialShape {
    pub pow: Vec<f64>,
    pub ln_coeff: f64,
    pub t: f64,
}

/// Anything the quadrature engine can integrate.
pub trait Evaluator: Sync {
    /// Number of complex coordinates.
    fn ncomplex(&self) -> usize;

    /// Value at z in log-polar form.
    fn eval_log(&self, z: &[Complex64]) -> LogComplex;

    /// Plain value (overflow possible for extreme scales).
    fn eval(&self, z: &[Complex64]) -> Complex64 {
        self.eval_log(z).to_complex()
    }

    /// Exact radial profile, when |value| depends on |z| alone.
    fn radial_profile(&self) -> Option<&ExactRadialProfile> {
        None
    }

    /// Single-monomial magnitude structure, when available.
    fn monomial_structure(&self) -> Option<MonomialShape> {
        None
    }

    /// Radius scale containing the function's mass (before the tail
    /// multiplier from the quadrature spec is applied).
    fn tail_radius(&self) -> f64;

    /// How far the mass has been translated away from the origin.
    fn center_offset(&self) -> f64 {
        0.0
    }
}

struct PreparedTerm {
    a: Vec<u32>,
    b: Vec<u32>,
    ln_mag: f64,
    arg: f64,
}

/// A Gaussian-class function readied for repeated numeric evaluation.
pub struct PreparedGaussian {
    n: usize,
    t: f64,
    terms: Vec<PreparedTerm>,
    profile: Option<ExactRadialProfile>,
    degree: u64,
}

impl PreparedGaussian {
    pub fn new(g: &GaussianFn) -> Self {
        let profile = g
            .radial_profile()
            .map(|coeffs| ExactRadialProfile::new(&coeffs, g.width(), g.n()));
        Self::build(g, profile)
    }

    /// Skip radial detection; forces the generic tensor paths. Used to
    /// cross-check the fast path against the general one.
    pub fn without_profile(g: &GaussianFn) -> Self {
        Self::build(g, None)
    }

    fn build(g: &GaussianFn, profile: Option<ExactRadialProfile>) -> Self {
        let terms = g
            .poly()
            .terms()
            .map(|(k, c)| {
                let (ln_mag, arg) = c.log_polar();
                PreparedTerm {
                    a: k.a.entries().to_vec(),
                    b: k.b.entries().to_vec(),
                    ln_mag,
                    arg,
                }
            })
            .collect();
        Self {
            n: g.n(),
            t: ratio_to_f64(g.width()),
            terms,
            profile,
            degree: g.degree(),
        }
    }
}

impl Evaluator for PreparedGaussian {
    fn ncomplex(&self) -> usize {
        self.n
    }

    fn eval_log(&self, z: &[Complex64]) -> LogComplex {
        debug_assert_eq!(z.len(), self.n);
        if let Some(p) = &self.profile {
            let r = z.iter().map(|zj| zj.norm_sqr()).sum::<f64>().sqrt();
            return p.eval_log(r);
        }
        let ln_r: Vec<f64> = z.iter().map(|zj| zj.norm().ln()).collect();
        let arg_z: Vec<f64> = z.iter().map(|zj| zj.arg()).collect();
        let norm_sq: f64 = z.iter().map(|zj| zj.norm_sqr()).sum();
        // per-term log magnitudes, then one shifted accumulation
        let mut max_ln = f64::NEG_INFINITY;
        let mut lns = Vec::with_capacity(self.terms.len());
        for term in &self.terms {
            let mut lm = term.ln_mag;
            for j in 0..self.n {
                let pow = (term.a[j] + term.b[j]) as f64;
                if pow > 0.0 {
                    lm += pow * ln_r[j];
                }
            }
            lns.push(lm);
            if lm > max_ln {
                max_ln = lm;
            }
        }
        if max_ln == f64::NEG_INFINITY {
            return LogComplex::zero();
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for (term, lm) in self.terms.iter().zip(&lns) {
            if *lm == f64::NEG_INFINITY {
                continue;
            }
            let mut arg = term.arg;
            for j in 0..self.n {
                arg += (term.a[j] as f64 - term.b[j] as f64) * arg_z[j];
            }
            acc += Complex64::from_polar((lm - max_ln).exp(), arg);
        }
        if acc == Complex64::new(0.0, 0.0) {
            return LogComplex::zero();
        }
        LogComplex::new(max_ln + acc.norm().ln() - 0.5 * self.t * norm_sq, acc.arg())
    }

    fn radial_profile(&self) -> Option<&ExactRadialProfile> {
        self.profile.as_ref()
    }

    fn monomial_structure(&self) -> Option<MonomialShape> {
        if self.terms.len() != 1 {
            return None;
        }
        let term = &self.terms[0];
        Some(MonomialShape {
            pow: (0..self.n)
                .map(|j| (term.a[j] + term.b[j]) as f64)
                .collect(),
            ln_coeff: term.ln_mag,
            t: self.t,
        })
    }

    fn tail_radius(&self) -> f64 {
        // polynomial mass sits inside r ≲ √(2·deg/t); the constant keeps a
        // Gaussian core cushion for low degrees
        let deg = self.degree as f64;
        (2.0 * deg.sqrt() + 4.0) / self.t.sqrt()
    }
}

/// z ↦ g(√|m|·z), conjugated for negative m. Exact coordinate scaling at
/// the evaluator level, for scale factors whose square root is irrational.
pub struct ScaledEvaluator<'a> {
    inner: &'a PreparedGaussian,
    root: f64,
    conjugate: bool,
}

impl<'a> ScaledEvaluator<'a> {
    pub fn new(inner: &'a PreparedGaussian, m: i64) -> Self {
        assert!(m != 0, "scale factor must be nonzero");
        Self {
            inner,
            root: (m.unsigned_abs() as f64).sqrt(),
            conjugate: m < 0,
        }
    }
}

impl Evaluator for ScaledEvaluator<'_> {
    fn ncomplex(&self) -> usize {
        self.inner.ncomplex()
    }

    fn eval_log(&self, z: &[Complex64]) -> LogComplex {
        let w: Vec<Complex64> = z.iter().map(|zj| zj * self.root).collect();
        let l = self.inner.eval_log(&w);
        if self.conjugate {
            LogComplex::new(l.ln_mag, -l.arg)
        } else {
            l
        }
    }

    fn tail_radius(&self) -> f64 {
        self.inner.tail_radius() / self.root
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crat::CRational;
    use crate::multi_index::MultiIndex;
    use crate::poly::{CPoly, ExpPair};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn mi(v: &[u32]) -> MultiIndex {
        MultiIndex::new(v.to_vec())
    }

    #[test]
    fn log_complex_roundtrip() {
        let v = Complex64::new(-2.5, 1.25);
        let l = LogComplex::from_complex(v);
        assert!((l.to_complex() - v).norm() < 1e-14);
        assert!(LogComplex::zero().to_complex() == Complex64::new(0.0, 0.0));
        let shifted = LogComplex::new(700.0, 0.5).to_complex_shifted(699.0);
        assert!((shifted.norm() - 1.0f64.exp()).abs() < 1e-12);
    }

    #[test]
    fn prepared_matches_direct_evaluation() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..25 {
            let n = rng.gen_range(1..=2);
            let mut p = CPoly::zero(n);
            for _ in 0..5 {
                let a: Vec<u32> = (0..n).map(|_| rng.gen_range(0..=3)).collect();
                let b: Vec<u32> = (0..n).map(|_| rng.gen_range(0..=3)).collect();
                p.add_term(
                    ExpPair::new(mi(&a), mi(&b)),
                    CRational::from_ints(rng.gen_range(-4..=4), rng.gen_range(-4..=4)),
                );
            }
            let g = GaussianFn::standard(p);
            let prep = PreparedGaussian::without_profile(&g);
            for _ in 0..8 {
                let z: Vec<Complex64> = (0..n)
                    .map(|_| Complex64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)))
                    .collect();
                let direct = g.evaluate(&z);
                let via = prep.eval(&z);
                assert!(
                    (direct - via).norm() <= 1e-10 * (1.0 + direct.norm()),
                    "{direct} vs {via}"
                );
            }
        }
    }

    #[test]
    fn prepared_uses_profile_for_radial_functions() {
        let f = crate::eigen::build_radial(2, 3);
        let prep = PreparedGaussian::new(&f);
        assert!(prep.radial_profile().is_some());
        let z = [Complex64::new(0.4, -0.2), Complex64::new(-1.1, 0.3)];
        let via = prep.eval(&z);
        let direct = f.evaluate(&z);
        assert!((via - direct).norm() < 1e-10 * (1.0 + direct.norm()));
    }

    #[test]
    fn scaled_evaluator_substitutes_coordinates() {
        // g = z̄·e^{−|z|²/2}, m = 3: u(z) = √3·z̄·e^{−3|z|²/2}
        let g = GaussianFn::standard(CPoly::monomial(mi(&[0]), mi(&[1]), CRational::one()));
        let prep = PreparedGaussian::new(&g);
        let u = ScaledEvaluator::new(&prep, 3);
        let z = [Complex64::new(0.7, 0.2)];
        let want = (z[0] * 3f64.sqrt()).conj() * (-1.5 * z[0].norm_sqr()).exp();
        assert!((u.eval(&z) - want).norm() < 1e-12);

        // negative m conjugates the value
        let u_neg = ScaledEvaluator::new(&prep, -3);
        assert!((u_neg.eval(&z) - want.conj()).norm() < 1e-12);
    }

    #[test]
    fn eval_log_handles_huge_scales() {
        // z̄^200·e^{−|z|²/2} at |z| = 20: magnitude e^{200·ln20 − 200} ≈ e^{399},
        // far outside f64 but finite in log form
        let g = GaussianFn::standard(CPoly::monomial(mi(&[0]), mi(&[200]), CRational::one()));
        let prep = PreparedGaussian::without_profile(&g);
        let l = prep.eval_log(&[Complex64::new(20.0, 0.0)]);
        let expect = 200.0 * 20f64.ln() - 200.0;
        assert!((l.ln_mag - expect).abs() < 1e-9 * expect);
    }
}
