//! The polynomial-Gaussian class p(z, z̄)·e^{−t|z|²/2} and the operators
//! acting on it: ladder raise/lower and the twisted Laplacian.
//!
//! The raising map used throughout is the operator −½D*ⱼ, which on the
//! width-1 class acts on the polynomial part as p ↦ ∂zⱼp − z̄ⱼp. With this
//! normalization the eigenfunctions built from z^β e^{−|z|²/2} satisfy
//! f_{α,α}(0) = α! and the radial combinations have positive value at the
//! origin; the opposite sign choice flips both by (−1)^{|α|}. Norms and
//! projections are insensitive to the choice.

use crate::crat::CRational;
use crate::error::{Error, Result};
use crate::multi_index::MultiIndex;
use crate::poly::{CPoly, ExpPair};
use crate::special::{format_rational, parse_rational, ratio_to_f64};
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

/// p(z, z̄)·e^{−t|z|²/2} with exact polynomial part and rational width t > 0.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GaussianFn {
    poly: CPoly,
    width: BigRational,
    n: usize,
}

impl GaussianFn {
    pub fn new(poly: CPoly, width: BigRational) -> Result<Self> {
        if !width.is_positive() {
            return Err(Error::InvalidParameter(format!(
                "Gaussian width must be positive, got {width}"
            )));
        }
        Ok(Self {
            n: poly.n(),
            poly,
            width,
        })
    }

    /// Width-1 member of the class.
    pub fn standard(poly: CPoly) -> Self {
        Self::new(poly, BigRational::one()).expect("width 1 is positive")
    }

    /// e^{−|z|²/2} in n complex coordinates.
    pub fn vacuum(n: usize) -> Self {
        Self::standard(CPoly::one(n))
    }

    /// z^β·e^{−|z|²/2}.
    pub fn holomorphic(beta: &MultiIndex) -> Self {
        Self::standard(CPoly::z_pow(beta))
    }

    pub fn poly(&self) -> &CPoly {
        &self.poly
    }

    pub fn width(&self) -> &BigRational {
        &self.width
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn degree(&self) -> u64 {
        self.poly.degree()
    }

    fn require_width_one(&self) -> Result<()> {
        if self.width.is_one() {
            Ok(())
        } else {
            Err(Error::WidthNotOne(self.width.to_string()))
        }
    }

    fn with_same_width(&self, poly: CPoly) -> Self {
        Self {
            n: poly.n(),
            poly,
            width: self.width.clone(),
        }
    }

    /// Raising map −½D*ⱼ: p ↦ ∂zⱼp − z̄ⱼp. Sends an eigenfunction of
    /// eigenvalue μ to one of eigenvalue μ + 2.
    pub fn ladder_raise(&self, j: usize) -> Result<Self> {
        self.require_width_one()?;
        self.check_coord(j)?;
        Ok(self.with_same_width(self.poly.diff_z(j).sub(&self.poly.mul_zbar(j))))
    }

    /// Lowering map Dⱼ: p ↦ 2∂z̄ⱼp. Annihilates holomorphic polynomials.
    pub fn ladder_lower(&self, j: usize) -> Result<Self> {
        self.require_width_one()?;
        self.check_coord(j)?;
        Ok(self.with_same_width(
            self.poly
                .diff_zbar(j)
                .scale(&CRational::from_int(2)),
        ))
    }

    /// D*ⱼ itself (twice the negated raising map): p ↦ 2(z̄ⱼp − ∂zⱼp).
    pub fn ladder_raise_dstar(&self, j: usize) -> Result<Self> {
        let raised = self.ladder_raise(j)?;
        Ok(raised.with_same_width(raised.poly.scale(&CRational::from_int(-2))))
    }

    /// The twisted Laplacian on the width-1 class:
    /// p ↦ n·p + Σⱼ (2z̄ⱼ∂z̄ⱼp − 2∂zⱼ∂z̄ⱼp).
    pub fn apply_l(&self) -> Result<Self> {
        self.require_width_one()?;
        let mut acc = self
            .poly
            .scale(&CRational::from_int(self.n as i64));
        let two = CRational::from_int(2);
        for j in 0..self.n {
            let dzb = self.poly.diff_zbar(j);
            acc = acc.add(&dzb.mul_zbar(j).scale(&two));
            acc = acc.sub(&dzb.diff_z(j).scale(&two));
        }
        Ok(self.with_same_width(acc))
    }

    /// Pointwise value at z ∈ ℂⁿ.
    pub fn evaluate(&self, z: &[Complex64]) -> Complex64 {
        assert_eq!(z.len(), self.n, "evaluation point dimension mismatch");
        let norm_sq: f64 = z.iter().map(|zj| zj.norm_sqr()).sum();
        let t = ratio_to_f64(&self.width);
        self.poly.eval(z) * (-0.5 * t * norm_sq).exp()
    }

    /// Pointwise product; Gaussian widths add.
    pub fn product(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(self.n, other.n));
        }
        Self::new(self.poly.mul(&other.poly), &self.width + &other.width)
    }

    /// Complex conjugate (same width).
    pub fn conj(&self) -> Self {
        self.with_same_width(self.poly.conj())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(self.n, other.n));
        }
        if self.width != other.width {
            return Err(Error::InvalidParameter(
                "cannot add Gaussians of different widths".into(),
            ));
        }
        Ok(self.with_same_width(self.poly.add(&other.poly)))
    }

    pub fn scale_coeff(&self, c: &CRational) -> Self {
        self.with_same_width(self.poly.scale(c))
    }

    /// ∂zⱼ of the full function (including the Gaussian factor):
    /// p ↦ ∂zⱼp − (t/2)z̄ⱼp, any width.
    pub fn diff_z_full(&self, j: usize) -> Self {
        let half_t = &self.width / BigRational::from_integer(2.into());
        self.with_same_width(
            self.poly
                .diff_z(j)
                .sub(&self.poly.mul_zbar(j).scale_rat(&half_t)),
        )
    }

    /// ∂z̄ⱼ of the full function: p ↦ ∂z̄ⱼp − (t/2)zⱼp, any width.
    pub fn diff_zbar_full(&self, j: usize) -> Self {
        let half_t = &self.width / BigRational::from_integer(2.into());
        self.with_same_width(
            self.poly
                .diff_zbar(j)
                .sub(&self.poly.mul_z(j).scale_rat(&half_t)),
        )
    }

    /// Euclidean Laplacian Δ = 4Σⱼ∂zⱼ∂z̄ⱼ of the full function, any width.
    pub fn laplacian_full(&self) -> Self {
        let mut acc = CPoly::zero(self.n);
        for j in 0..self.n {
            acc = acc.add(
                &self
                    .diff_zbar_full(j)
                    .diff_z_full(j)
                    .poly,
            );
        }
        self.with_same_width(acc.scale(&CRational::from_int(4)))
    }

    /// If the polynomial part is a function of |z|² alone, return the
    /// coefficients c_m of Σ c_m (|z|²)^m. Detection is exact: every term
    /// must have matching z/z̄ exponents and the coefficients must be
    /// proportional to the multinomial expansion of (Σⱼ zⱼz̄ⱼ)^m.
    pub fn radial_profile(&self) -> Option<Vec<CRational>> {
        let deg2 = self.poly.degree();
        if deg2 % 2 != 0 {
            return None;
        }
        let top = (deg2 / 2) as usize;
        let mut coeffs = vec![CRational::zero(); top + 1];
        let mut seen = vec![false; top + 1];
        for (key, c) in self.poly.terms() {
            if key.a != key.b {
                return None;
            }
            let m = key.a.order() as usize;
            let mult = crate::special::multinomial_big(key.a.entries());
            let expected_unit = c.scale(&BigRational::new(BigInt::one(), mult.clone()));
            if !seen[m] {
                coeffs[m] = expected_unit;
                seen[m] = true;
            } else if coeffs[m] != expected_unit {
                return None;
            }
        }
        // every multi-index of each present degree must appear with the
        // right multiplicity; missing companions mean the polynomial is not
        // a function of |z|² (except for the trivial n = 1 case)
        if self.n > 1 {
            for m in 0..=top {
                if !seen[m] {
                    continue;
                }
                let present = self
                    .poly
                    .terms()
                    .filter(|(k, _)| k.a == k.b && k.a.order() as usize == m)
                    .count();
                let needed = crate::multi_index::compositions(self.n, m as u32).len();
                if present != needed {
                    return None;
                }
            }
        }
        Some(coeffs)
    }

    fn check_coord(&self, j: usize) -> Result<()> {
        if j < self.n {
            Ok(())
        } else {
            Err(Error::InvalidParameter(format!(
                "coordinate index {j} out of range for n = {}",
                self.n
            )))
        }
    }
}

use num_bigint::BigInt;

// --- serialization -------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct TermRepr {
    a: Vec<u32>,
    b: Vec<u32>,
    re: String,
    im: String,
}

#[derive(Serialize, Deserialize)]
struct GaussianRepr {
    n: usize,
    t: String,
    terms: Vec<TermRepr>,
}

impl Serialize for GaussianFn {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let terms = self
            .poly
            .terms()
            .map(|(k, c)| TermRepr {
                a: k.a.entries().to_vec(),
                b: k.b.entries().to_vec(),
                re: format_rational(&c.re),
                im: format_rational(&c.im),
            })
            .collect();
        GaussianRepr {
            n: self.n,
            t: format_rational(&self.width),
            terms,
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for GaussianFn {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as DeError;
        let repr = GaussianRepr::deserialize(de)?;
        let width = parse_rational(&repr.t).map_err(DeError::custom)?;
        let mut poly = CPoly::zero(repr.n);
        for t in repr.terms {
            if t.a.len() != repr.n || t.b.len() != repr.n {
                return Err(DeError::custom(format!(
                    "term exponents must have length n = {}",
                    repr.n
                )));
            }
            let re = parse_rational(&t.re).map_err(DeError::custom)?;
            let im = parse_rational(&t.im).map_err(DeError::custom)?;
            poly.add_term(
                ExpPair::new(MultiIndex::new(t.a), MultiIndex::new(t.b)),
                CRational::new(re, im),
            );
        }
        GaussianFn::new(poly, width).map_err(DeError::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn mi(v: &[u32]) -> MultiIndex {
        MultiIndex::new(v.to_vec())
    }

    fn zbar_pow(n: usize, j: usize, k: u32) -> GaussianFn {
        let mut b = vec![0u32; n];
        b[j] = k;
        GaussianFn::standard(CPoly::monomial(
            MultiIndex::zeros(n),
            MultiIndex::new(b),
            CRational::one(),
        ))
    }

    pub(crate) fn random_gaussian(rng: &mut ChaCha8Rng, n: usize, deg: u32, terms: usize) -> GaussianFn {
        let mut p = CPoly::zero(n);
        for _ in 0..terms {
            let a: Vec<u32> = (0..n).map(|_| rng.gen_range(0..=deg / 2)).collect();
            let b: Vec<u32> = (0..n).map(|_| rng.gen_range(0..=deg / 2)).collect();
            p.add_term(
                ExpPair::new(mi(&a), mi(&b)),
                CRational::from_ints(rng.gen_range(-4..=4), rng.gen_range(-4..=4)),
            );
        }
        GaussianFn::standard(p)
    }

    #[test]
    fn raise_on_vacuum_and_monomial() {
        // raise(e^{−|z|²/2}) has polynomial −z̄
        let g = GaussianFn::vacuum(1);
        let r = g.ladder_raise(0).unwrap();
        assert_eq!(
            r.poly(),
            &CPoly::monomial(mi(&[0]), mi(&[1]), CRational::from_int(-1))
        );
        // raise(z·e^{−|z|²/2}) has polynomial 1 − zz̄
        let z = GaussianFn::holomorphic(&mi(&[1]));
        let r = z.ladder_raise(0).unwrap();
        let expect = CPoly::one(1).sub(&CPoly::monomial(mi(&[1]), mi(&[1]), CRational::one()));
        assert_eq!(r.poly(), &expect);
        // linearity: raise(0) = 0
        let zero = GaussianFn::standard(CPoly::zero(1));
        assert!(zero.ladder_raise(0).unwrap().is_zero());
    }

    #[test]
    fn lower_annihilates_holomorphic() {
        let g = GaussianFn::holomorphic(&mi(&[5]));
        assert!(g.ladder_lower(0).unwrap().is_zero());
        // lower(z̄·e) = 2e
        let zb = zbar_pow(1, 0, 1);
        assert_eq!(
            zb.ladder_lower(0).unwrap().poly(),
            &CPoly::constant(1, CRational::from_int(2))
        );
    }

    #[test]
    fn width_must_be_one_for_ladder_algebra() {
        let wide = GaussianFn::new(CPoly::one(1), BigRational::from_integer(2.into())).unwrap();
        assert!(matches!(wide.ladder_raise(0), Err(Error::WidthNotOne(_))));
        assert!(matches!(wide.ladder_lower(0), Err(Error::WidthNotOne(_))));
        assert!(matches!(wide.apply_l(), Err(Error::WidthNotOne(_))));
        assert!(GaussianFn::new(CPoly::one(1), BigRational::zero()).is_err());
    }

    #[test]
    fn twisted_laplacian_eigenvalues() {
        // vacuum → n·vacuum
        for n in 1..=3 {
            let g = GaussianFn::vacuum(n);
            let lg = g.apply_l().unwrap();
            assert_eq!(lg.poly(), &g.poly().scale(&CRational::from_int(n as i64)));
        }
        // z̄^k e → (1 + 2k)·(same), n = 1
        for k in 0..=6u32 {
            let g = zbar_pow(1, 0, k);
            let lg = g.apply_l().unwrap();
            let mu = 1 + 2 * k as i64;
            assert_eq!(lg.poly(), &g.poly().scale(&CRational::from_int(mu)));
        }
        // z^β e → n·(same) for any β
        let g = GaussianFn::holomorphic(&mi(&[3, 2]));
        let lg = g.apply_l().unwrap();
        assert_eq!(lg.poly(), &g.poly().scale(&CRational::from_int(2)));
    }

    #[test]
    fn commutator_d_dstar_is_4() {
        // D(D*g) − D*(Dg) = 4g exactly, on 200 random polynomials
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        for trial in 0..200 {
            let n = rng.gen_range(1..=3);
            let g = random_gaussian(&mut rng, n, 6, 5);
            let j = rng.gen_range(0..n);
            let a = g.ladder_raise_dstar(j).unwrap().ladder_lower(j).unwrap();
            let b = g.ladder_lower(j).unwrap().ladder_raise_dstar(j).unwrap();
            let diff = a.poly().sub(b.poly());
            assert_eq!(
                diff,
                g.poly().scale(&CRational::from_int(4)),
                "trial {trial}"
            );
        }
    }

    #[test]
    fn raise_lower_commutator_is_minus_2() {
        // [D, −½D*] = −2: lower(raise g) − raise(lower g) = −2g
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let n = rng.gen_range(1..=3);
            let g = random_gaussian(&mut rng, n, 6, 4);
            let j = rng.gen_range(0..n);
            let a = g.ladder_raise(j).unwrap().ladder_lower(j).unwrap();
            let b = g.ladder_lower(j).unwrap().ladder_raise(j).unwrap();
            assert_eq!(a.poly().sub(b.poly()), g.poly().scale(&CRational::from_int(-2)));
        }
    }

    #[test]
    fn ladder_intertwining_with_l() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for _ in 0..60 {
            let n = rng.gen_range(1..=3);
            let g = random_gaussian(&mut rng, n, 6, 4);
            let j = rng.gen_range(0..n);
            // L·raise − raise·L = 2·raise
            let lhs = g
                .ladder_raise(j)
                .unwrap()
                .apply_l()
                .unwrap()
                .poly()
                .sub(g.apply_l().unwrap().ladder_raise(j).unwrap().poly());
            let rhs = g.ladder_raise(j).unwrap().poly().scale(&CRational::from_int(2));
            assert_eq!(lhs, rhs);
            // L·lower − lower·L = −2·lower
            let lhs = g
                .ladder_lower(j)
                .unwrap()
                .apply_l()
                .unwrap()
                .poly()
                .sub(g.apply_l().unwrap().ladder_lower(j).unwrap().poly());
            let rhs = g
                .ladder_lower(j)
                .unwrap()
                .poly()
                .scale(&CRational::from_int(-2));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn apply_l_matches_finite_differences_of_xy_form() {
        // L = −½ Σⱼ [(∂xⱼ + iyⱼ)² + (∂yⱼ − ixⱼ)²] applied by central
        // differences, compared with the symbolic result at random points
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let h = 1e-4;
        for _ in 0..20 {
            let n = rng.gen_range(1..=2usize);
            let g = random_gaussian(&mut rng, n, 5, 4);
            if g.is_zero() {
                continue;
            }
            let lg = g.apply_l().unwrap();
            let z: Vec<Complex64> = (0..n)
                .map(|_| Complex64::new(rng.gen_range(-0.8..0.8), rng.gen_range(-0.8..0.8)))
                .collect();
            let mut acc = Complex64::new(0.0, 0.0);
            for j in 0..n {
                let shift = |dx: f64, dy: f64| {
                    let mut w = z.clone();
                    w[j] += Complex64::new(dx, dy);
                    g.evaluate(&w)
                };
                let u0 = g.evaluate(&z);
                let (x, y) = (z[j].re, z[j].im);
                let i = Complex64::i();
                let dxx = (shift(h, 0.0) - 2.0 * u0 + shift(-h, 0.0)) / (h * h);
                let dyy = (shift(0.0, h) - 2.0 * u0 + shift(0.0, -h)) / (h * h);
                let dx = (shift(h, 0.0) - shift(-h, 0.0)) / (2.0 * h);
                let dy = (shift(0.0, h) - shift(0.0, -h)) / (2.0 * h);
                acc += -0.5
                    * (dxx + 2.0 * i * y * dx - y * y * u0 + dyy - 2.0 * i * x * dy
                        - x * x * u0);
            }
            let expect = lg.evaluate(&z);
            let scale = expect.norm().max(1.0);
            assert!(
                (acc - expect).norm() < 1e-6 * scale,
                "fd {acc} vs symbolic {expect}"
            );
        }
    }

    #[test]
    fn evaluate_known_values() {
        let g = GaussianFn::vacuum(1);
        assert!((g.evaluate(&[Complex64::new(0.0, 0.0)]) - 1.0).norm() < 1e-15);
        let zb = zbar_pow(1, 0, 1);
        let got = zb.evaluate(&[Complex64::new(1.0, 0.0)]);
        assert!((got - (-0.5f64).exp()).norm() < 1e-15);
    }

    #[test]
    fn radial_profile_detection() {
        // 3 − 2|z|² in n = 2: needs both zz̄ diagonal terms
        let mut p = CPoly::constant(2, CRational::from_int(3));
        p = p.add(&CPoly::monomial(mi(&[1, 0]), mi(&[1, 0]), CRational::from_int(-2)));
        p = p.add(&CPoly::monomial(mi(&[0, 1]), mi(&[0, 1]), CRational::from_int(-2)));
        let g = GaussianFn::standard(p);
        let prof = g.radial_profile().unwrap();
        assert_eq!(prof[0], CRational::from_int(3));
        assert_eq!(prof[1], CRational::from_int(-2));

        // missing companion term → not radial
        let mut p = CPoly::constant(2, CRational::from_int(3));
        p = p.add(&CPoly::monomial(mi(&[1, 0]), mi(&[1, 0]), CRational::from_int(-2)));
        assert!(GaussianFn::standard(p).radial_profile().is_none());

        // |z|⁴ in n = 2 carries multinomial weight 2 on the cross term
        let mut p = CPoly::monomial(mi(&[2, 0]), mi(&[2, 0]), CRational::one());
        p = p.add(&CPoly::monomial(mi(&[0, 2]), mi(&[0, 2]), CRational::one()));
        p = p.add(&CPoly::monomial(mi(&[1, 1]), mi(&[1, 1]), CRational::from_int(2)));
        let g = GaussianFn::standard(p);
        assert_eq!(g.radial_profile().unwrap()[2], CRational::one());

        // off-diagonal exponents → not radial
        let p = CPoly::monomial(mi(&[1]), mi(&[0]), CRational::one());
        assert!(GaussianFn::standard(p).radial_profile().is_none());
    }

    #[test]
    fn json_schema_roundtrip() {
        let mut p = CPoly::zero(2);
        p.add_term(
            ExpPair::new(mi(&[1, 0]), mi(&[0, 2])),
            CRational::new(
                BigRational::new(1.into(), 3.into()),
                BigRational::new((-2).into(), 7.into()),
            ),
        );
        let g = GaussianFn::new(p, BigRational::new(3.into(), 2.into())).unwrap();
        let js = serde_json::to_string(&g).unwrap();
        assert!(js.contains("\"t\":\"3/2\""));
        assert!(js.contains("\"re\":\"1/3\""));
        let back: GaussianFn = serde_json::from_str(&js).unwrap();
        assert_eq!(back, g);
        // byte stability
        assert_eq!(serde_json::to_string(&back).unwrap(), js);
    }
}
