//! Multivariate polynomials in (z₁..zₙ, z̄₁..z̄ₙ) over the complex rationals.
//!
//! Terms are keyed by exponent pairs (a, b) for z^a z̄^b and kept in a map
//! ordered by total degree, then lexicographically on the concatenated
//! exponents, so iteration and serialization are byte-stable. Zero
//! coefficients are never stored; all arithmetic is exact.

use crate::crat::CRational;
use crate::multi_index::MultiIndex;
use num_complex::Complex64;
use num_rational::BigRational;
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

/// Exponents of a single monomial z^a z̄^b.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ExpPair {
    pub a: MultiIndex,
    pub b: MultiIndex,
}

impl ExpPair {
    pub fn new(a: MultiIndex, b: MultiIndex) -> Self {
        assert_eq!(a.n(), b.n(), "exponent pair with mismatched lengths");
        Self { a, b }
    }

    pub fn degree(&self) -> u64 {
        self.a.order() + self.b.order()
    }

    fn key_iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.a.iter().chain(self.b.iter())
    }
}

impl Ord for ExpPair {
    // graded, then lexicographic on the concatenated (a, b)
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.key_iter().cmp(other.key_iter()))
    }
}

impl PartialOrd for ExpPair {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial in (z, z̄) with exact complex-rational coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct CPoly {
    n: usize,
    terms: BTreeMap<ExpPair, CRational>,
}

impl CPoly {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n: usize, c: CRational) -> Self {
        let mut p = Self::zero(n);
        p.add_term(ExpPair::new(MultiIndex::zeros(n), MultiIndex::zeros(n)), c);
        p
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, CRational::one())
    }

    /// c · z^a z̄^b.
    pub fn monomial(a: MultiIndex, b: MultiIndex, c: CRational) -> Self {
        let n = a.n();
        let mut p = Self::zero(n);
        p.add_term(ExpPair::new(a, b), c);
        p
    }

    /// z^beta (a pure holomorphic monomial with coefficient 1).
    pub fn z_pow(beta: &MultiIndex) -> Self {
        Self::monomial(beta.clone(), MultiIndex::zeros(beta.n()), CRational::one())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Total degree; zero polynomial reports 0.
    pub fn degree(&self) -> u64 {
        self.terms.keys().map(|k| k.degree()).max().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExpPair, &CRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, key: &ExpPair) -> CRational {
        self.terms.get(key).cloned().unwrap_or_else(CRational::zero)
    }

    /// Leading term in the graded-lex order, if any.
    pub fn leading(&self) -> Option<(&ExpPair, &CRational)> {
        self.terms.iter().next_back()
    }

    pub(crate) fn add_term(&mut self, key: ExpPair, c: CRational) {
        assert_eq!(key.a.n(), self.n, "term dimension mismatch");
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(key) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let sum = &*e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "polynomial dimension mismatch");
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let mut out = Self::zero(self.n);
        for (k, c) in &self.terms {
            out.terms.insert(k.clone(), -c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "polynomial dimension mismatch");
        let mut out = Self::zero(self.n);
        for (ka, ca) in &self.terms {
            for (kb, cb) in &other.terms {
                let key = ExpPair::new(ka.a.plus(&kb.a), ka.b.plus(&kb.b));
                out.add_term(key, ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: &CRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        let mut out = Self::zero(self.n);
        for (k, v) in &self.terms {
            out.terms.insert(k.clone(), v * c);
        }
        out
    }

    pub fn scale_rat(&self, s: &BigRational) -> Self {
        self.scale(&CRational::real(s.clone()))
    }

    /// ∂/∂zⱼ (z̄ exponents untouched).
    pub fn diff_z(&self, j: usize) -> Self {
        let mut out = Self::zero(self.n);
        for (k, c) in &self.terms {
            let e = k.a.get(j);
            if e == 0 {
                continue;
            }
            let mut a = k.a.entries().to_vec();
            a[j] -= 1;
            let key = ExpPair::new(MultiIndex::new(a), k.b.clone());
            out.add_term(key, c.scale(&BigRational::from_integer(e.into())));
        }
        out
    }

    /// ∂/∂z̄ⱼ.
    pub fn diff_zbar(&self, j: usize) -> Self {
        let mut out = Self::zero(self.n);
        for (k, c) in &self.terms {
            let e = k.b.get(j);
            if e == 0 {
                continue;
            }
            let mut b = k.b.entries().to_vec();
            b[j] -= 1;
            let key = ExpPair::new(k.a.clone(), MultiIndex::new(b));
            out.add_term(key, c.scale(&BigRational::from_integer(e.into())));
        }
        out
    }

    /// Multiply by zⱼ.
    pub fn mul_z(&self, j: usize) -> Self {
        let mut out = Self::zero(self.n);
        for (k, c) in &self.terms {
            out.terms
                .insert(ExpPair::new(k.a.raised(j), k.b.clone()), c.clone());
        }
        out
    }

    /// Multiply by z̄ⱼ.
    pub fn mul_zbar(&self, j: usize) -> Self {
        let mut out = Self::zero(self.n);
        for (k, c) in &self.terms {
            out.terms
                .insert(ExpPair::new(k.a.clone(), k.b.raised(j)), c.clone());
        }
        out
    }

    /// Complex conjugate: coefficients conjugated, z and z̄ exponents swapped.
    pub fn conj(&self) -> Self {
        let mut out = Self::zero(self.n);
        for (k, c) in &self.terms {
            out.terms
                .insert(ExpPair::new(k.b.clone(), k.a.clone()), c.conj());
        }
        out
    }

    /// Evaluate at a point of ℂⁿ using per-coordinate power tables.
    pub fn eval(&self, z: &[Complex64]) -> Complex64 {
        assert_eq!(z.len(), self.n, "evaluation point dimension mismatch");
        if self.terms.is_empty() {
            return Complex64::new(0.0, 0.0);
        }
        let mut max_a = vec![0u32; self.n];
        let mut max_b = vec![0u32; self.n];
        for k in self.terms.keys() {
            for j in 0..self.n {
                max_a[j] = max_a[j].max(k.a.get(j));
                max_b[j] = max_b[j].max(k.b.get(j));
            }
        }
        let pow_table = |base: Complex64, top: u32| -> Vec<Complex64> {
            let mut v = Vec::with_capacity(top as usize + 1);
            let mut acc = Complex64::new(1.0, 0.0);
            v.push(acc);
            for _ in 0..top {
                acc *= base;
                v.push(acc);
            }
            v
        };
        let zp: Vec<Vec<Complex64>> = (0..self.n).map(|j| pow_table(z[j], max_a[j])).collect();
        let zbp: Vec<Vec<Complex64>> =
            (0..self.n).map(|j| pow_table(z[j].conj(), max_b[j])).collect();
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, c) in &self.terms {
            let mut m = c.to_complex64();
            for j in 0..self.n {
                m *= zp[j][k.a.get(j) as usize] * zbp[j][k.b.get(j) as usize];
            }
            acc += m;
        }
        acc
    }

    /// Tensor product across disjoint coordinate blocks: the result lives in
    /// n₁+n₂ coordinates with `self` acting on the first block.
    pub fn tensor(&self, other: &Self) -> Self {
        let n = self.n + other.n;
        let mut out = Self::zero(n);
        for (ka, ca) in &self.terms {
            for (kb, cb) in &other.terms {
                let mut a = ka.a.entries().to_vec();
                a.extend_from_slice(kb.a.entries());
                let mut b = ka.b.entries().to_vec();
                b.extend_from_slice(kb.b.entries());
                out.terms.insert(
                    ExpPair::new(MultiIndex::new(a), MultiIndex::new(b)),
                    ca * cb,
                );
            }
        }
        out
    }
}

impl fmt::Debug for CPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(k, c)| format!("({})·z^{:?}z̄^{:?}", c, k.a, k.b))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
