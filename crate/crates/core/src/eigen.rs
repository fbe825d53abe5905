//! The eigenbasis of the twisted Laplacian: functions f_{α,β} generated
//! from z^β·e^{−|z|²/2} by |α| applications of the raising map, with
//! eigenvalue n + 2|α|, plus the radial eigenfunctions f_k and their
//! closed-form values.

use crate::error::{Error, Result};
use crate::exact::ExactValue;
use crate::gaussian::GaussianFn;
use crate::multi_index::{compositions, MultiIndex};
use crate::poly::CPoly;
use crate::special::{binomial_big, factorial_big, multinomial_big};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

/// Index (α, β) of an eigenfunction; the eigenvalue n + 2|α| depends on α
/// alone.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct EigenLabel {
    alpha: MultiIndex,
    beta: MultiIndex,
}

impl EigenLabel {
    pub fn new(alpha: MultiIndex, beta: MultiIndex) -> Result<Self> {
        if alpha.n() != beta.n() {
            return Err(Error::DimensionMismatch(alpha.n(), beta.n()));
        }
        Ok(Self { alpha, beta })
    }

    pub fn alpha(&self) -> &MultiIndex {
        &self.alpha
    }

    pub fn beta(&self) -> &MultiIndex {
        &self.beta
    }

    pub fn n(&self) -> usize {
        self.alpha.n()
    }

    pub fn eigenvalue(&self) -> u64 {
        self.n() as u64 + 2 * self.alpha.order()
    }

    /// ‖f_{α,β}‖₂² = πⁿ·α!·β!.
    pub fn norm_sq(&self) -> ExactValue {
        let r = BigRational::from_integer(self.alpha.factorial() * self.beta.factorial());
        ExactValue::new(r, self.n() as i32)
    }
}

#[derive(Serialize, Deserialize)]
struct LabelRepr {
    alpha: Vec<u32>,
    beta: Vec<u32>,
    n: usize,
}

impl Serialize for EigenLabel {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        LabelRepr {
            alpha: self.alpha.entries().to_vec(),
            beta: self.beta.entries().to_vec(),
            n: self.n(),
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for EigenLabel {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as DeError;
        let r = LabelRepr::deserialize(de)?;
        if r.alpha.len() != r.n || r.beta.len() != r.n {
            return Err(DeError::custom("label entries must have length n"));
        }
        EigenLabel::new(MultiIndex::new(r.alpha), MultiIndex::new(r.beta))
            .map_err(DeError::custom)
    }
}

/// An eigenfunction together with its label and eigenvalue.
#[derive(Clone, Debug)]
pub struct Eigenfunction {
    pub label: EigenLabel,
    pub func: GaussianFn,
    pub eigenvalue: u64,
}

/// One point of the spectrum: μ = n + 2k = λ².
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct SpectrumPoint {
    pub n: usize,
    pub k: u64,
    pub mu: u64,
    pub lambda: f64,
}

impl SpectrumPoint {
    pub fn new(n: usize, k: u64) -> Self {
        let mu = n as u64 + 2 * k;
        Self {
            n,
            k,
            mu,
            lambda: (mu as f64).sqrt(),
        }
    }
}

/// One-dimensional building block: |α| = a raises applied to z^b·e^{−|z|²/2}.
fn eigen_poly_1d(a: u32, b: u32) -> CPoly {
    let mut g = GaussianFn::holomorphic(&MultiIndex::new(vec![b]));
    for _ in 0..a {
        g = g.ladder_raise(0).expect("width stays 1 under raising");
    }
    g.poly().clone()
}

/// f_{α,β}: the raising map applied α-fold to z^β·e^{−|z|²/2}. Built as a
/// tensor product of one-dimensional factors, which agrees exactly with
/// raising in n dimensions since the coordinate operators commute.
pub fn build_eigenfunction(label: &EigenLabel) -> Eigenfunction {
    let n = label.n();
    let mut poly = eigen_poly_1d(label.alpha.get(0), label.beta.get(0));
    for j in 1..n {
        poly = poly.tensor(&eigen_poly_1d(label.alpha.get(j), label.beta.get(j)));
    }
    let func = GaussianFn::standard(poly);
    let eigenvalue = label.eigenvalue();
    #[cfg(debug_assertions)]
    {
        let lf = func.apply_l().expect("width 1");
        let scaled = func
            .poly()
            .scale(&crate::crat::CRational::from_int(eigenvalue as i64));
        debug_assert!(
            lf.poly() == &scaled,
            "eigenfunction identity failed for {label:?}"
        );
    }
    Eigenfunction {
        label: label.clone(),
        func,
        eigenvalue,
    }
}

/// ‖f_{α,β}‖₂² = πⁿ·α!·β! (closed form; `inner_exact` reproduces it).
pub fn exact_l2_norm_sq(label: &EigenLabel) -> ExactValue {
    label.norm_sq()
}

/// The radial eigenfunction f_k = 4^{−k} Σ_{|α|=k} C(k,α)·f_{α,α},
/// eigenvalue n + 2k. Its polynomial part depends on |z|² alone.
pub fn build_radial(n: usize, k: u32) -> GaussianFn {
    // cache the 1-D diagonal factors f_{m,m} once
    let pieces: Vec<CPoly> = (0..=k).map(|m| eigen_poly_1d(m, m)).collect();
    let four_pow_k = BigRational::new(BigInt::from(1), BigInt::from(4).pow(k));
    let mut acc = CPoly::zero(n);
    for alpha in compositions(n, k) {
        let mut poly = pieces[alpha.get(0) as usize].clone();
        for j in 1..n {
            poly = poly.tensor(&pieces[alpha.get(j) as usize]);
        }
        let weight = BigRational::from_integer(multinomial_big(alpha.entries())) * &four_pow_k;
        acc = acc.add(&poly.scale_rat(&weight));
    }
    GaussianFn::standard(acc)
}

/// Closed forms for the radial eigenfunction: value at the origin
/// 4^{−k}·k!·C(n+k−1, k) and squared L² norm 4^{−2k}·πⁿ·k!²·C(n+k−1, k).
pub fn radial_closed_forms(n: usize, k: u32) -> (ExactValue, ExactValue) {
    let kf = factorial_big(k as u64);
    let binom = binomial_big(n as u64 + k as u64 - 1, k as u64);
    let four_k = BigInt::from(4).pow(k);
    let value_at_zero = ExactValue::new(
        BigRational::new(&kf * &binom, four_k.clone()),
        0,
    );
    let norm_sq = ExactValue::new(
        BigRational::new(&kf * &kf * &binom, &four_k * &four_k),
        n as i32,
    );
    (value_at_zero, norm_sq)
}

/// All labels with |α| = k and |β| ≤ max_beta, in canonical order
/// (α ascending lex, then β graded ascending).
pub fn enumerate_labels(n: usize, k: u32, max_beta: u32) -> Vec<EigenLabel> {
    let alphas = compositions(n, k);
    let mut betas = Vec::new();
    for j in 0..=max_beta {
        betas.extend(compositions(n, j));
    }
    let mut out = Vec::with_capacity(alphas.len() * betas.len());
    for alpha in &alphas {
        for beta in &betas {
            out.push(EigenLabel::new(alpha.clone(), beta.clone()).expect("same n"));
        }
    }
    out
}
