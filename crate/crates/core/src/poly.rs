//! Exact sparse polynomials over the rationals and the Hermitian coefficient
//! form `r(z, z̄) = Z* C Z`.
//!
//! Real polynomials live on the nonnegative orthant `x_k >= 0`; a diagonal
//! Hermitian polynomial corresponds to one via `x_k = |z_k|^2`, and the
//! squared norm `‖z‖^2` corresponds to `ℓ(x) = x_1 + … + x_n`.
//!
//! Monomials are totally ordered lexicographically on exponent vectors with
//! `x_1` most significant. The order is multiplicative.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Shorthand for an integer-valued rational.
pub fn rat(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Shorthand for `num / den`.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Exponent vector of a monomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    /// Panics on an empty exponent vector.
    pub fn new(exps: Vec<u32>) -> Self {
        assert!(!exps.is_empty(), "a multi-index needs at least one variable");
        MultiIndex(exps)
    }

    pub fn zero(n: usize) -> Self {
        MultiIndex::new(vec![0; n])
    }

    /// The unit vector `e^k` (0-based `k`).
    pub fn unit(n: usize, k: usize) -> Self {
        let mut v = vec![0; n];
        v[k] = 1;
        MultiIndex::new(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn get(&self, k: usize) -> u32 {
        self.0[k]
    }

    pub fn add(&self, other: &MultiIndex) -> MultiIndex {
        debug_assert_eq!(self.len(), other.len());
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self - other`, or `None` if some coordinate would go negative.
    pub fn checked_sub(&self, other: &MultiIndex) -> Option<MultiIndex> {
        debug_assert_eq!(self.len(), other.len());
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(MultiIndex)
    }

    /// `self + e^plus - e^minus`, if it stays nonnegative.
    pub fn shifted(&self, plus: usize, minus: usize) -> Option<MultiIndex> {
        let mut v = self.0.clone();
        v[plus] += 1;
        v[minus] = v[minus].checked_sub(1)?;
        Some(MultiIndex(v))
    }

    /// All multi-indices of `n` variables and total degree `degree`, ascending.
    pub fn all_of_degree(n: usize, degree: u32) -> Vec<MultiIndex> {
        fn rec(n: usize, rem: u32, prefix: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
            if prefix.len() + 1 == n {
                prefix.push(rem);
                out.push(MultiIndex(prefix.clone()));
                prefix.pop();
                return;
            }
            for a in 0..=rem {
                prefix.push(a);
                rec(n, rem - a, prefix, out);
                prefix.pop();
            }
        }
        assert!(n >= 1);
        let mut out = Vec::new();
        rec(n, degree, &mut Vec::with_capacity(n), &mut out);
        out.sort();
        out
    }

    /// All multi-indices of `n` variables with total degree at most `degree`.
    pub fn all_up_to_degree(n: usize, degree: u32) -> Vec<MultiIndex> {
        let mut out: Vec<_> = (0..=degree).flat_map(|k| Self::all_of_degree(n, k)).collect();
        out.sort();
        out
    }

    /// `d! / (δ_1! ⋯ δ_n!)` where `d = |δ|`.
    pub fn multinomial(&self) -> BigUint {
        let mut acc = BigUint::one();
        let mut total = 0u32;
        for &e in &self.0 {
            for i in 1..=e {
                total += 1;
                acc *= BigUint::from(total);
                acc /= BigUint::from(i);
            }
        }
        acc
    }
}

impl From<&[u32]> for MultiIndex {
    fn from(v: &[u32]) -> Self {
        MultiIndex::new(v.to_vec())
    }
}

impl<const N: usize> From<[u32; N]> for MultiIndex {
    fn from(v: [u32; N]) -> Self {
        MultiIndex::new(v.to_vec())
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// `(N₊, N₋)`: counts of positive and negative squares.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SignaturePair {
    pub n_plus: usize,
    pub n_minus: usize,
}

impl SignaturePair {
    pub fn new(n_plus: usize, n_minus: usize) -> Self {
        SignaturePair { n_plus, n_minus }
    }

    pub fn rank(&self) -> usize {
        self.n_plus + self.n_minus
    }

    /// `N₋ / N₊`, defined only when `N₊ > 0`.
    pub fn ratio(&self) -> Option<Rational> {
        (self.n_plus > 0).then(|| ratio(self.n_minus as i64, self.n_plus as i64))
    }
}

impl fmt::Display for SignaturePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.n_plus, self.n_minus)
    }
}

/// A finitely supported map `MultiIndex -> Rational` with no stored zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RealSparsePoly {
    n: usize,
    terms: BTreeMap<MultiIndex, Rational>,
}

impl RealSparsePoly {
    pub fn zero(n: usize) -> Self {
        assert!(n >= 1, "a polynomial needs at least one variable");
        RealSparsePoly { n, terms: BTreeMap::new() }
    }

    pub fn one(n: usize) -> Self {
        Self::monomial(MultiIndex::zero(n), rat(1))
    }

    pub fn monomial(alpha: MultiIndex, coef: Rational) -> Self {
        let mut p = Self::zero(alpha.len());
        p.add_term(alpha, coef);
        p
    }

    /// Collects terms, summing repeated exponents and dropping zeros.
    pub fn from_terms<I>(n: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (MultiIndex, Rational)>,
    {
        let mut p = Self::zero(n);
        for (alpha, c) in terms {
            if alpha.len() != n {
                let len = alpha.len();
                return Err(Error::LengthMismatch(alpha, len, n));
            }
            p.add_term(alpha, c);
        }
        Ok(p)
    }

    /// Convenience constructor for integer coefficients; panics on bad lengths.
    pub fn from_int_terms(n: usize, terms: &[(&[u32], i64)]) -> Self {
        Self::from_terms(n, terms.iter().map(|(e, c)| (MultiIndex::from(*e), rat(*c))))
            .expect("exponent lengths match n")
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn add_term(&mut self, alpha: MultiIndex, c: Rational) {
        debug_assert_eq!(alpha.len(), self.n);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(alpha) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn coeff(&self, alpha: &MultiIndex) -> Rational {
        self.terms.get(alpha).cloned().unwrap_or_else(Rational::zero)
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&MultiIndex, &Rational)> + '_ {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &MultiIndex> + '_ {
        self.terms.keys()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(MultiIndex::degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(MultiIndex::degree);
        match degs.next() {
            None => true,
            Some(d0) => degs.all(|d| d == d0),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.n);
        for (a, v) in &self.terms {
            out.add_term(a.clone(), v * c);
        }
        out
    }

    pub fn min_coefficient(&self) -> Option<(&MultiIndex, &Rational)> {
        self.terms.iter().min_by(|a, b| a.1.cmp(b.1).then_with(|| a.0.cmp(b.0)))
    }

    pub fn has_nonnegative_coefficients(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    pub fn positive_support(&self) -> BTreeSet<MultiIndex> {
        self.terms.iter().filter(|(_, c)| c.is_positive()).map(|(a, _)| a.clone()).collect()
    }

    pub fn negative_support(&self) -> BTreeSet<MultiIndex> {
        self.terms.iter().filter(|(_, c)| c.is_negative()).map(|(a, _)| a.clone()).collect()
    }

    /// Number of strictly positive and strictly negative coefficients.
    pub fn sign_counts(&self) -> SignaturePair {
        let n_plus = self.terms.values().filter(|c| c.is_positive()).count();
        SignaturePair::new(n_plus, self.terms.len() - n_plus)
    }

    /// Homogeneous parts `p_j`, ascending by degree; empty for zero.
    pub fn homogeneous_components(&self) -> Vec<RealSparsePoly> {
        let mut parts: BTreeMap<u32, RealSparsePoly> = BTreeMap::new();
        for (a, c) in &self.terms {
            parts
                .entry(a.degree())
                .or_insert_with(|| RealSparsePoly::zero(self.n))
                .terms
                .insert(a.clone(), c.clone());
        }
        parts.into_values().collect()
    }

    /// `self · ℓ`, one convolution pass.
    fn times_simplex(&self) -> Self {
        let mut out = Self::zero(self.n);
        for (a, c) in &self.terms {
            for k in 0..self.n {
                out.add_term(a.add(&MultiIndex::unit(self.n, k)), c.clone());
            }
        }
        out
    }

    /// `p · (x_1 + … + x_n)^d` by `d` successive convolutions with `ℓ`.
    pub fn multiply_by_simplex_power(&self, d: u32) -> Self {
        (0..d).fold(self.clone(), |acc, _| acc.times_simplex())
    }

    /// Same product through the closed multinomial formula
    /// `coeff(A) = Σ_{|δ|=d} multinomial(d; δ) · coeff_p(A - δ)`.
    pub fn multiply_by_simplex_power_multinomial(&self, d: u32) -> Self {
        let deltas: Vec<(MultiIndex, Rational)> = MultiIndex::all_of_degree(self.n, d)
            .into_iter()
            .map(|delta| {
                let w = Rational::from_integer(BigInt::from(delta.multinomial()));
                (delta, w)
            })
            .collect();
        let mut out = Self::zero(self.n);
        for (a, c) in &self.terms {
            for (delta, w) in &deltas {
                out.add_term(a.add(delta), c * w);
            }
        }
        out
    }

    /// `p · Σ_j x^{α_j}` for distinct multi-indices `α_j`.
    pub fn multiply_by_diagonal_multiplier(&self, s: &[MultiIndex]) -> Result<Self> {
        validate_multiplier(self.n, s)?;
        let mut out = Self::zero(self.n);
        for (a, c) in &self.terms {
            for alpha in s {
                out.add_term(a.add(alpha), c.clone());
            }
        }
        Ok(out)
    }

    /// Adds `x_n` so every term has total degree `degree` (which must bound
    /// the current degree). The result has `n + 1` variables.
    pub fn homogenize(&self, degree: u32) -> Self {
        let mut out = Self::zero(self.n + 1);
        for (a, c) in &self.terms {
            let mut v = a.exps().to_vec();
            v.push(degree.checked_sub(a.degree()).expect("degree bounds the polynomial"));
            out.add_term(MultiIndex::new(v), c.clone());
        }
        out
    }

    /// Sets the last variable to 1. The result has `n - 1` variables.
    pub fn dehomogenize(&self) -> Self {
        assert!(self.n >= 2);
        let mut out = Self::zero(self.n - 1);
        for (a, c) in &self.terms {
            out.add_term(MultiIndex::new(a.exps()[..self.n - 1].to_vec()), c.clone());
        }
        out
    }
}

pub(crate) fn validate_multiplier(n: usize, s: &[MultiIndex]) -> Result<()> {
    if s.is_empty() {
        return Err(Error::EmptyMultiplier);
    }
    let mut seen = BTreeSet::new();
    for alpha in s {
        if alpha.len() != n {
            return Err(Error::LengthMismatch(alpha.clone(), alpha.len(), n));
        }
        if !seen.insert(alpha) {
            return Err(Error::DuplicateMultiplierTerm(alpha.clone()));
        }
    }
    Ok(())
}

impl Add for &RealSparsePoly {
    type Output = RealSparsePoly;
    fn add(self, rhs: &RealSparsePoly) -> RealSparsePoly {
        assert_eq!(self.n, rhs.n);
        let mut out = self.clone();
        for (a, c) in &rhs.terms {
            out.add_term(a.clone(), c.clone());
        }
        out
    }
}

impl Sub for &RealSparsePoly {
    type Output = RealSparsePoly;
    fn sub(self, rhs: &RealSparsePoly) -> RealSparsePoly {
        self + &(-rhs)
    }
}

impl Neg for &RealSparsePoly {
    type Output = RealSparsePoly;
    fn neg(self) -> RealSparsePoly {
        self.scale(&rat(-1))
    }
}

impl fmt::Display for RealSparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (a, c)) in self.terms.iter().rev().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            if i > 0 {
                write!(f, " {sign} ")?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            let mag = c.abs();
            let is_const = a.degree() == 0;
            if !mag.is_one() || is_const {
                write!(f, "{mag}")?;
            }
            for (k, e) in a.exps().iter().enumerate() {
                match e {
                    0 => {}
                    1 => write!(f, "x{}", k + 1)?,
                    _ => write!(f, "x{}^{}", k + 1, e)?,
                }
            }
        }
        Ok(())
    }
}

/// An element of `Q(i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussianRational { re, im }
    }

    pub fn real(re: Rational) -> Self {
        GaussianRational { re, im: Rational::zero() }
    }

    pub fn zero() -> Self {
        Self::real(Rational::zero())
    }

    pub fn one() -> Self {
        Self::real(Rational::one())
    }

    pub fn i() -> Self {
        GaussianRational::new(Rational::zero(), Rational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussianRational::new(self.re.clone(), -self.im.clone())
    }

    /// `|z|^2`.
    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn scale(&self, c: &Rational) -> Self {
        GaussianRational::new(&self.re * c, &self.im * c)
    }

    /// Panics on division by zero.
    pub fn inv(&self) -> Self {
        let n = self.norm_sqr();
        assert!(!n.is_zero(), "division by zero");
        GaussianRational::new(&self.re / &n, -&self.im / &n)
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (rational_to_f64(&self.re), rational_to_f64(&self.im))
    }
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or_else(|| {
        // numerator/denominator too large for a direct conversion
        let (n, d) = (r.numer(), r.denom());
        let shift = n.bits().max(d.bits()).saturating_sub(900) as usize;
        (n >> shift).to_f64().unwrap_or(f64::NAN) / (d >> shift).to_f64().unwrap_or(f64::NAN)
    })
}

impl From<Rational> for GaussianRational {
    fn from(r: Rational) -> Self {
        GaussianRational::real(r)
    }
}

impl Add for &GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub for &GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-&self.re, -&self.im)
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            write!(f, "{}i", self.im)
        } else if self.im.is_negative() {
            write!(f, "{} - {}i", self.re, -&self.im)
        } else {
            write!(f, "{} + {}i", self.re, self.im)
        }
    }
}

/// Coefficient form `r(z, z̄) = Σ c_{αβ} z^α z̄^β` with `c_{αβ} = conj(c_{βα})`.
///
/// Both triangles are stored; constructors complete and validate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermitianPoly {
    n: usize,
    entries: BTreeMap<(MultiIndex, MultiIndex), GaussianRational>,
}

impl HermitianPoly {
    pub fn zero(n: usize) -> Self {
        assert!(n >= 1);
        HermitianPoly { n, entries: BTreeMap::new() }
    }

    /// Builds from listed entries. An entry whose mirror is absent is
    /// completed by conjugation; a listed mirror must be the exact conjugate,
    /// and diagonal entries must be real. Repeated listings are rejected.
    pub fn from_entries<I>(n: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (MultiIndex, MultiIndex, GaussianRational)>,
    {
        let mut listed: BTreeMap<(MultiIndex, MultiIndex), GaussianRational> = BTreeMap::new();
        for (a, b, c) in entries {
            for idx in [&a, &b] {
                if idx.len() != n {
                    return Err(Error::LengthMismatch(idx.clone(), idx.len(), n));
                }
            }
            if listed.insert((a.clone(), b.clone()), c).is_some() {
                return Err(Error::Parse(format!("entry ({a}, {b}) listed twice")));
            }
        }
        let mut out = Self::zero(n);
        for ((a, b), c) in &listed {
            if a == b && !c.is_real() {
                return Err(Error::NotHermitian(a.to_string(), b.to_string()));
            }
            if let Some(mirror) = listed.get(&(b.clone(), a.clone())) {
                if *mirror != c.conj() {
                    return Err(Error::NotHermitian(a.to_string(), b.to_string()));
                }
            }
            if !c.is_zero() {
                out.entries.insert((a.clone(), b.clone()), c.clone());
                out.entries.insert((b.clone(), a.clone()), c.conj());
            }
        }
        Ok(out)
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn entry(&self, alpha: &MultiIndex, beta: &MultiIndex) -> GaussianRational {
        self.entries
            .get(&(alpha.clone(), beta.clone()))
            .cloned()
            .unwrap_or_else(GaussianRational::zero)
    }

    /// All nonzero entries, both triangles.
    pub fn entries(&self) -> impl Iterator<Item = (&MultiIndex, &MultiIndex, &GaussianRational)> {
        self.entries.iter().map(|((a, b), c)| (a, b, c))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Adds `c` at `(α, β)` and `conj(c)` at `(β, α)` (once on the diagonal,
    /// where `c` must be real).
    pub fn add_hermitian_pair(&mut self, alpha: &MultiIndex, beta: &MultiIndex, c: &GaussianRational) {
        if alpha == beta {
            debug_assert!(c.is_real());
            self.add_raw(alpha.clone(), beta.clone(), c);
        } else {
            self.add_raw(alpha.clone(), beta.clone(), c);
            self.add_raw(beta.clone(), alpha.clone(), &c.conj());
        }
    }

    fn add_raw(&mut self, a: MultiIndex, b: MultiIndex, c: &GaussianRational) {
        let key = (a, b);
        let v = match self.entries.remove(&key) {
            Some(old) => &old + c,
            None => c.clone(),
        };
        if !v.is_zero() {
            self.entries.insert(key, v);
        }
    }

    /// Monomials appearing in either slot, ascending.
    pub fn basis(&self) -> Vec<MultiIndex> {
        let set: BTreeSet<&MultiIndex> = self.entries.keys().map(|(a, _)| a).collect();
        set.into_iter().cloned().collect()
    }

    pub fn is_diagonal(&self) -> bool {
        self.entries.keys().all(|(a, b)| a == b)
    }

    /// Diagonal form of a real polynomial, `x_k -> |z_k|^2`.
    pub fn from_real_diagonal(p: &RealSparsePoly) -> Self {
        let mut out = Self::zero(p.nvars());
        for (a, c) in p.terms() {
            out.entries.insert((a.clone(), a.clone()), GaussianRational::real(c.clone()));
        }
        out
    }

    /// Inverse of [`HermitianPoly::from_real_diagonal`].
    pub fn to_real_diagonal(&self) -> Result<RealSparsePoly> {
        let mut p = RealSparsePoly::zero(self.n);
        for ((a, b), c) in &self.entries {
            if a != b {
                return Err(Error::NotDiagonal(a.clone(), b.clone()));
            }
            p.add_term(a.clone(), c.re.clone());
        }
        Ok(p)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.n);
        for ((a, b), v) in &self.entries {
            let w = v.scale(c);
            if !w.is_zero() {
                out.entries.insert((a.clone(), b.clone()), w);
            }
        }
        out
    }

    /// `Σ_i scale_i · |row_i · Z|^2` over the given monomial basis.
    pub fn from_weighted_rows(
        n: usize,
        basis: &[MultiIndex],
        rows: &[Vec<GaussianRational>],
        scales: &[Rational],
    ) -> Self {
        let mut out = Self::zero(n);
        for (row, s) in rows.iter().zip(scales) {
            // |Σ_a row_a z^a|^2 = Σ_{a,b} row_a conj(row_b) z^a z̄^b
            for (i, ra) in row.iter().enumerate() {
                if ra.is_zero() {
                    continue;
                }
                for (j, rb) in row.iter().enumerate() {
                    if rb.is_zero() {
                        continue;
                    }
                    let v = (ra * &rb.conj()).scale(s);
                    out.add_raw(basis[i].clone(), basis[j].clone(), &v);
                }
            }
        }
        out
    }

    /// Coefficient form of `r(z, z̄) · ‖z‖^{2d}`. Since `‖z‖^{2d} =
    /// Σ_{|δ|=d} multinomial(d; δ) |z^δ|^2` is diagonal, entry `(α+δ, β+δ)`
    /// collects `multinomial(d; δ) · c_{αβ}`.
    pub fn multiply_by_norm_power(&self, d: u32) -> Self {
        let weighted: Vec<(MultiIndex, Rational)> = MultiIndex::all_of_degree(self.n, d)
            .into_iter()
            .map(|delta| {
                let w = Rational::from_integer(BigInt::from(delta.multinomial()));
                (delta, w)
            })
            .collect();
        self.multiply_by_weighted_diagonal(&weighted)
    }

    /// Coefficient form of `r · Σ_j |z^{α_j}|^2` for distinct `α_j`.
    pub fn multiply_by_diagonal_multiplier(&self, s: &[MultiIndex]) -> Result<Self> {
        validate_multiplier(self.n, s)?;
        let weighted: Vec<_> = s.iter().map(|a| (a.clone(), rat(1))).collect();
        Ok(self.multiply_by_weighted_diagonal(&weighted))
    }

    fn multiply_by_weighted_diagonal(&self, weighted: &[(MultiIndex, Rational)]) -> Self {
        let mut out = Self::zero(self.n);
        for ((a, b), c) in &self.entries {
            for (delta, w) in weighted {
                out.add_raw(a.add(delta), b.add(delta), &c.scale(w));
            }
        }
        out
    }
}

impl Add for &HermitianPoly {
    type Output = HermitianPoly;
    fn add(self, rhs: &HermitianPoly) -> HermitianPoly {
        assert_eq!(self.n, rhs.n);
        let mut out = self.clone();
        for ((a, b), c) in &rhs.entries {
            out.add_raw(a.clone(), b.clone(), c);
        }
        out
    }
}

impl Sub for &HermitianPoly {
    type Output = HermitianPoly;
    fn sub(self, rhs: &HermitianPoly) -> HermitianPoly {
        self + &rhs.scale(&rat(-1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: usize, terms: &[(&[u32], i64)]) -> RealSparsePoly {
        RealSparsePoly::from_int_terms(n, terms)
    }

    #[test]
    fn difference_times_l_is_difference_of_squares() {
        let q = p(2, &[(&[1, 0], 1), (&[0, 1], -1)]);
        assert_eq!(q.multiply_by_simplex_power(1), p(2, &[(&[2, 0], 1), (&[0, 2], -1)]));
    }

    #[test]
    fn binomial_expansion_of_one() {
        let got = RealSparsePoly::one(2).multiply_by_simplex_power(2);
        assert_eq!(got, p(2, &[(&[2, 0], 1), (&[1, 1], 2), (&[0, 2], 1)]));
        assert_eq!(got, RealSparsePoly::one(2).multiply_by_simplex_power_multinomial(2));
    }

    #[test]
    fn simplex_power_zero_is_identity() {
        let q = p(3, &[(&[1, 0, 2], 3), (&[0, 1, 0], -2)]);
        assert_eq!(q.multiply_by_simplex_power(0), q);
    }

    #[test]
    fn diagonal_multiplier_examples() {
        let x1 = p(2, &[(&[1, 0], 1)]);
        let s = [MultiIndex::from([1, 0]), MultiIndex::from([0, 1])];
        assert_eq!(
            x1.multiply_by_diagonal_multiplier(&s).unwrap(),
            p(2, &[(&[2, 0], 1), (&[1, 1], 1)])
        );
        let diff = p(2, &[(&[1, 0], 1), (&[0, 1], -1)]);
        assert_eq!(
            diff.multiply_by_diagonal_multiplier(&[MultiIndex::from([2, 0])]).unwrap(),
            p(2, &[(&[3, 0], 1), (&[2, 1], -1)])
        );
        let s = [MultiIndex::from([1, 1]), MultiIndex::from([2, 0])];
        assert_eq!(
            RealSparsePoly::one(2).multiply_by_diagonal_multiplier(&s).unwrap(),
            p(2, &[(&[1, 1], 1), (&[2, 0], 1)])
        );
    }

    #[test]
    fn duplicate_multiplier_term_rejected() {
        let s = [MultiIndex::from([1, 0]), MultiIndex::from([1, 0])];
        let err = RealSparsePoly::one(2).multiply_by_diagonal_multiplier(&s).unwrap_err();
        assert!(matches!(err, Error::DuplicateMultiplierTerm(_)));
    }

    #[test]
    fn homogeneous_components_ascending() {
        let q = p(2, &[(&[2, 0], 1), (&[0, 1], 1)]);
        let parts = q.homogeneous_components();
        assert_eq!(parts, vec![p(2, &[(&[0, 1], 1)]), p(2, &[(&[2, 0], 1)])]);
        assert_eq!(p(2, &[(&[2, 0], 1), (&[1, 1], -3)]).homogeneous_components().len(), 1);
        assert!(RealSparsePoly::zero(2).homogeneous_components().is_empty());
    }

    #[test]
    fn zero_polynomial_has_no_degree() {
        assert_eq!(RealSparsePoly::zero(3).degree(), None);
        assert_eq!(RealSparsePoly::one(3).degree(), Some(0));
    }

    #[test]
    fn sign_counts_of_small_examples() {
        // x^2 + y^2 + xz - xy
        let q = p(3, &[(&[2, 0, 0], 1), (&[0, 2, 0], 1), (&[1, 0, 1], 1), (&[1, 1, 0], -1)]);
        assert_eq!(q.sign_counts(), SignaturePair::new(3, 1));
        assert_eq!(RealSparsePoly::zero(2).sign_counts(), SignaturePair::new(0, 0));
    }

    #[test]
    fn bridge_of_norm_squared_is_simplex_form() {
        let r = HermitianPoly::from_entries(
            2,
            [
                (MultiIndex::from([1, 0]), MultiIndex::from([1, 0]), GaussianRational::one()),
                (MultiIndex::from([0, 1]), MultiIndex::from([0, 1]), GaussianRational::one()),
            ],
        )
        .unwrap();
        assert_eq!(r.to_real_diagonal().unwrap(), p(2, &[(&[1, 0], 1), (&[0, 1], 1)]));

        let q = p(2, &[(&[1, 1], -1)]);
        let h = HermitianPoly::from_real_diagonal(&q);
        assert_eq!(h.entry(&MultiIndex::from([1, 1]), &MultiIndex::from([1, 1])), GaussianRational::real(rat(-1)));

        let sq = p(2, &[(&[2, 0], 1), (&[0, 2], -1)]);
        assert_eq!(HermitianPoly::from_real_diagonal(&sq).to_real_diagonal().unwrap(), sq);
    }

    #[test]
    fn bridge_rejects_off_diagonal() {
        let r = HermitianPoly::from_entries(
            2,
            [(MultiIndex::from([1, 0]), MultiIndex::from([0, 1]), GaussianRational::one())],
        )
        .unwrap();
        assert!(matches!(r.to_real_diagonal(), Err(Error::NotDiagonal(..))));
    }

    #[test]
    fn hermitian_completion_and_validation() {
        let a = MultiIndex::from([1, 0]);
        let b = MultiIndex::from([0, 1]);
        let c = GaussianRational::new(ratio(1, 2), rat(-1));
        let r = HermitianPoly::from_entries(2, [(a.clone(), b.clone(), c.clone())]).unwrap();
        assert_eq!(r.entry(&b, &a), c.conj());

        let bad = HermitianPoly::from_entries(2, [(a.clone(), b.clone(), c.clone()), (b.clone(), a.clone(), c.clone())]);
        assert!(matches!(bad, Err(Error::NotHermitian(..))));

        let complex_diag = HermitianPoly::from_entries(2, [(a.clone(), a.clone(), GaussianRational::i())]);
        assert!(matches!(complex_diag, Err(Error::NotHermitian(..))));
    }

    #[test]
    fn norm_power_matches_real_product_on_diagonals() {
        let q = p(2, &[(&[1, 0], 1), (&[0, 1], -1)]);
        let h = HermitianPoly::from_real_diagonal(&q).multiply_by_norm_power(3);
        assert_eq!(h.to_real_diagonal().unwrap(), q.multiply_by_simplex_power(3));
    }

    #[test]
    fn multinomial_values() {
        assert_eq!(MultiIndex::from([2, 1, 1]).multinomial(), BigUint::from(12u32));
        assert_eq!(MultiIndex::from([0, 0]).multinomial(), BigUint::from(1u32));
        assert_eq!(MultiIndex::from([3, 3]).multinomial(), BigUint::from(20u32));
    }

    #[test]
    fn lattice_sizes() {
        assert_eq!(MultiIndex::all_of_degree(3, 6).len(), 28);
        assert_eq!(MultiIndex::all_of_degree(2, 4).len(), 5);
        assert_eq!(MultiIndex::all_up_to_degree(2, 2).len(), 6);
    }

    #[test]
    fn display_is_readable() {
        let q = p(2, &[(&[2, 0], 1), (&[1, 1], -2), (&[0, 0], 3)]);
        assert_eq!(q.to_string(), "x1^2 - 2x1x2 + 3");
    }
}
