//! Signature-preserving normalization of `r = ‖A Z‖² - ‖B Z‖²`.
//!
//! Unitary row operations inside each block, the absorption
//! `B -> √λ B` for `0 < λ <= 1`, and 2×2 hyperbolic rotations between an
//! `A` row and a `B` row bring the stacked matrix `[A; B]` to a form whose
//! rows have pairwise distinct leading columns.
//!
//! The hyperbolic entries are irrational, so this module works in `f64`;
//! exactness is kept on the origin polynomial only.

use std::collections::HashMap;

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::inertia::{holomorphic_decomposition, signature};
use crate::poly::{rat, rational_to_f64, HermitianPoly, MultiIndex, Rational, SignaturePair};
use crate::psi::in_psi_hermitian;

type C = Complex64;

/// Tolerances for the pipeline.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    /// Bound on `‖T*JT - J‖ / ‖T‖²`.
    pub local: f64,
    /// Bound on the relative coefficient error of the reconstruction.
    pub global: f64,
    /// A pivot below this fraction of its row norm is a breakdown.
    pub pivot: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { local: 1e-12, global: 1e-9, pivot: 1e-10 }
    }
}

/// Largest denominator used for the λ of an absorption step.
pub const LAMBDA_DENOMINATOR: i64 = 1_000_000;

#[derive(Clone, Debug, PartialEq)]
pub struct DecomposedForm {
    pub n: usize,
    pub basis: Vec<MultiIndex>,
    pub plus_rows: Vec<Vec<C>>,
    pub minus_rows: Vec<Vec<C>>,
    /// The exact polynomial this form was derived from (λ-adjusted while
    /// that can be done exactly).
    pub origin: Option<HermitianPoly>,
    /// Exact positive and negative parts of `origin` matching the current
    /// rows up to unitary changes; dropped once rows of `A` and `B` mix.
    exact_parts: Option<(HermitianPoly, HermitianPoly)>,
}

fn frob(rows: &[Vec<C>]) -> f64 {
    rows.iter().flatten().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

fn lead(row: &[C]) -> Option<usize> {
    row.iter().position(|z| !z.is_zero())
}

impl DecomposedForm {
    pub fn new(n: usize, basis: Vec<MultiIndex>, plus_rows: Vec<Vec<C>>, minus_rows: Vec<Vec<C>>) -> Result<Self> {
        for row in plus_rows.iter().chain(&minus_rows) {
            if row.len() != basis.len() {
                return Err(Error::Parse(format!("row of length {} for a basis of {}", row.len(), basis.len())));
            }
        }
        for b in &basis {
            if b.len() != n {
                return Err(Error::LengthMismatch(b.clone(), b.len(), n));
            }
        }
        Ok(DecomposedForm { n, basis, plus_rows, minus_rows, origin: None, exact_parts: None })
    }

    /// Float rows `√scale · row` from the exact decomposition of `r`.
    pub fn from_hermitian(r: &HermitianPoly) -> Result<Self> {
        let dec = holomorphic_decomposition(r)?;
        let to_rows = |rows: &[Vec<crate::poly::GaussianRational>], scales: &[Rational]| -> Vec<Vec<C>> {
            rows.iter()
                .zip(scales)
                .map(|(row, s)| {
                    let w = rational_to_f64(s).sqrt();
                    row.iter()
                        .map(|g| {
                            let (re, im) = g.to_f64_pair();
                            C::new(re * w, im * w)
                        })
                        .collect()
                })
                .collect()
        };
        let n = r.nvars();
        Ok(DecomposedForm {
            n,
            plus_rows: to_rows(&dec.plus_rows, &dec.plus_scales),
            minus_rows: to_rows(&dec.minus_rows, &dec.minus_scales),
            exact_parts: Some((dec.positive_part(n), dec.negative_part(n))),
            basis: dec.basis,
            origin: Some(r.clone()),
        })
    }

    /// Attaches the exact polynomial this form represents.
    pub fn with_origin(mut self, r: HermitianPoly) -> Self {
        self.origin = Some(r);
        self.exact_parts = None;
        self
    }

    /// `(number of A rows, number of B rows)`.
    pub fn signature(&self) -> SignaturePair {
        SignaturePair::new(self.plus_rows.len(), self.minus_rows.len())
    }

    /// Whether `origin` still equals this form exactly up to rounding.
    pub fn has_exact_parts(&self) -> bool {
        self.exact_parts.is_some()
    }

    /// Coefficient matrix `H[a][b] = Σ A_ia conj(A_ib) - Σ B_ja conj(B_jb)`.
    pub fn matrix(&self) -> Vec<Vec<C>> {
        let k = self.basis.len();
        let mut h = vec![vec![C::zero(); k]; k];
        for (rows, sign) in [(&self.plus_rows, 1.0), (&self.minus_rows, -1.0)] {
            for row in rows.iter() {
                for a in 0..k {
                    if row[a].is_zero() {
                        continue;
                    }
                    for b in 0..k {
                        h[a][b] += row[a] * row[b].conj() * sign;
                    }
                }
            }
        }
        h
    }

    /// The coefficient matrix of `r` on this form's basis, in floating point.
    pub fn origin_matrix(&self) -> Option<Vec<Vec<C>>> {
        let origin = self.origin.as_ref()?;
        Some(hermitian_to_f64(origin, &self.basis))
    }
}

/// Coefficient matrix of `r` on `basis` in floating point. Entries outside
/// `basis` are dropped.
pub fn hermitian_to_f64(r: &HermitianPoly, basis: &[MultiIndex]) -> Vec<Vec<C>> {
    let index: HashMap<&MultiIndex, usize> = basis.iter().enumerate().map(|(i, b)| (b, i)).collect();
    let k = basis.len();
    let mut h = vec![vec![C::zero(); k]; k];
    for (a, b, c) in r.entries() {
        if let (Some(&i), Some(&j)) = (index.get(a), index.get(b)) {
            let (re, im) = c.to_f64_pair();
            h[i][j] = C::new(re, im);
        }
    }
    h
}

/// Largest entrywise difference divided by the largest entry of `target`.
pub fn relative_error(got: &[Vec<C>], target: &[Vec<C>]) -> f64 {
    let scale = target.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max);
    let diff = got
        .iter()
        .flatten()
        .zip(target.iter().flatten())
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max);
    if scale == 0.0 {
        diff
    } else {
        diff / scale
    }
}

fn eigenvalues(h: &[Vec<C>]) -> Vec<f64> {
    let k = h.len();
    if k == 0 {
        return Vec::new();
    }
    let m = DMatrix::from_fn(k, k, |i, j| (h[i][j] + h[j][i].conj()) * 0.5);
    m.symmetric_eigenvalues().iter().copied().collect()
}

/// Inertia of a Hermitian float matrix; eigenvalues within `tol` times the
/// spectral radius count as zero.
pub fn float_inertia(h: &[Vec<C>], tol: f64) -> (usize, usize, usize) {
    let ev = eigenvalues(h);
    let radius = ev.iter().map(|v| v.abs()).fold(0.0, f64::max);
    let cut = tol * radius;
    let pos = ev.iter().filter(|&&v| v > cut).count();
    let neg = ev.iter().filter(|&&v| v < -cut).count();
    (pos, neg, ev.len() - pos - neg)
}

/// Whether `H · ‖z‖²` is positive semidefinite up to `tol` relative to its
/// spectral radius.
pub fn float_in_psi1(n: usize, basis: &[MultiIndex], h: &[Vec<C>], tol: f64) -> bool {
    let mut index: HashMap<MultiIndex, usize> = HashMap::new();
    let mut shifted = Vec::new();
    for b in basis {
        for k in 0..n {
            let s = b.add(&MultiIndex::unit(n, k));
            index.entry(s.clone()).or_insert_with(|| {
                shifted.push(s);
                shifted.len() - 1
            });
        }
    }
    let dim = shifted.len();
    let mut prod = vec![vec![C::zero(); dim]; dim];
    for (i, a) in basis.iter().enumerate() {
        for (j, b) in basis.iter().enumerate() {
            if h[i][j].is_zero() {
                continue;
            }
            for k in 0..n {
                let e = MultiIndex::unit(n, k);
                prod[index[&a.add(&e)]][index[&b.add(&e)]] += h[i][j];
            }
        }
    }
    let ev = eigenvalues(&prod);
    let radius = ev.iter().map(|v| v.abs()).fold(0.0, f64::max);
    ev.iter().all(|&v| v >= -tol * radius)
}

/// `B -> √λ B`. With exact parts available the origin becomes `P - λN`
/// exactly and its `Ψ₁` membership is re-checked exactly; otherwise the
/// check is in floating point.
pub fn lambda_scale(form: &DecomposedForm, lambda: &Rational) -> Result<DecomposedForm> {
    if *lambda < Rational::zero() || *lambda > rat(1) {
        return Err(Error::LambdaOutOfRange(lambda.to_string()));
    }
    let s = rational_to_f64(lambda).sqrt();
    let mut out = form.clone();
    for row in &mut out.minus_rows {
        for z in row.iter_mut() {
            *z *= s;
        }
    }
    if let Some((p, neg)) = &form.exact_parts {
        let scaled = neg.scale(lambda);
        out.origin = Some(p - &scaled);
        out.exact_parts = Some((p.clone(), scaled));
    }
    Ok(out)
}

/// Whether the λ-scaled form keeps `Ψ₁` membership: exactly when the form
/// carries exact parts, else in floating point.
pub fn lambda_preserves_psi1(form: &DecomposedForm, tol: f64) -> Result<bool> {
    match (&form.exact_parts, &form.origin) {
        (Some(_), Some(origin)) => Ok(in_psi_hermitian(origin, 1)?.member),
        _ => Ok(float_in_psi1(form.n, &form.basis, &form.matrix(), tol)),
    }
}

/// One hyperbolic rotation between an `A` row and a `B` row.
#[derive(Clone, Debug, PartialEq)]
pub struct HyperbolicStep {
    pub t: [[C; 2]; 2],
    pub pivot_col: usize,
    /// `(index into A, index into B)`.
    pub rows: (usize, usize),
    /// λ applied to `B` just before this step, if any.
    pub lambda_used: Option<Rational>,
}

impl HyperbolicStep {
    /// `‖T*JT - J‖_F` with `J = diag(1, -1)`.
    pub fn j_defect(&self) -> f64 {
        let t = &self.t;
        let j = [1.0, -1.0];
        let mut acc = 0.0;
        for a in 0..2 {
            for b in 0..2 {
                let v: C = (0..2).map(|k| t[k][a].conj() * t[k][b] * j[k]).sum();
                let target = if a == b { j[a] } else { 0.0 };
                acc += (v - target).norm_sqr();
            }
        }
        acc.sqrt()
    }

    /// `‖T‖_F²`.
    pub fn norm_sqr(&self) -> f64 {
        self.t.iter().flatten().map(|z| z.norm_sqr()).sum()
    }

    /// Whether `‖T*JT - J‖ <= tol · ‖T‖²`.
    pub fn j_orthogonal(&self, tol: f64) -> bool {
        self.j_defect() <= tol * self.norm_sqr()
    }
}

/// `T = t₂₂ [[1, -conj(ρ)], [-ρ, 1]]` with `ρ = b₁/a₁` and
/// `t₂₂ = 1/√(1 - |ρ|²)`, so that the second entry of `T (a₁, b₁)ᵗ`
/// vanishes and `|t₁₁|² - |t₂₁|² = 1`.
pub fn hyperbolic_eliminate(a1: C, b1: C) -> Result<HyperbolicStep> {
    if a1.norm() <= b1.norm() {
        return Err(Error::PivotDominanceViolated { a1: a1.norm(), b1: b1.norm() });
    }
    let rho = b1 / a1;
    let t22 = 1.0 / (1.0 - rho.norm_sqr()).sqrt();
    let one = C::new(t22, 0.0);
    Ok(HyperbolicStep {
        t: [[one, -rho.conj() * t22], [-rho * t22, one]],
        pivot_col: 0,
        rows: (0, 0),
        lambda_used: None,
    })
}

/// Unitary (Householder) row reduction of `rows[from..]` to row-echelon
/// form, columns in basis order. Subcolumns below `cut` are zeroed; a
/// subcolumn already zero below its pivot is left alone.
fn echelonize(rows: &mut [Vec<C>], cut: f64) {
    let m = rows.len();
    let Some(cols) = rows.first().map(Vec::len) else { return };
    let mut r = 0;
    for c in 0..cols {
        if r == m {
            break;
        }
        let norm: f64 = (r..m).map(|i| rows[i][c].norm_sqr()).sum::<f64>().sqrt();
        if norm <= cut {
            for row in rows.iter_mut().skip(r) {
                row[c] = C::zero();
            }
            continue;
        }
        let tail: f64 = (r + 1..m).map(|i| rows[i][c].norm_sqr()).sum::<f64>().sqrt();
        if tail > cut {
            let x0 = rows[r][c];
            let phase = if x0.norm() == 0.0 { C::new(1.0, 0.0) } else { x0 / x0.norm() };
            // v = x + phase·‖x‖·e₁, H = I - 2 v v* / (v* v)
            let mut v: Vec<C> = (r..m).map(|i| rows[i][c]).collect();
            v[0] += phase * norm;
            let vv: f64 = v.iter().map(|z| z.norm_sqr()).sum();
            for col in c..cols {
                let dot: C = v.iter().zip(r..m).map(|(vi, i)| vi.conj() * rows[i][col]).sum();
                let f = dot * (2.0 / vv);
                for (vi, i) in v.iter().zip(r..m) {
                    rows[i][col] -= vi * f;
                }
            }
            rows[r][c] = -phase * norm;
        }
        for row in rows.iter_mut().skip(r + 1) {
            row[c] = C::zero();
        }
        r += 1;
    }
    for row in rows.iter_mut().skip(r) {
        for z in row.iter_mut() {
            *z = C::zero();
        }
    }
}

/// Echelonizes `rows` and fails if the rank drops.
fn echelonize_checked(rows: &mut [Vec<C>], scale: f64, tol: &Tolerances, what: &str) -> Result<()> {
    echelonize(rows, tol.local * scale);
    if let Some(i) = rows.iter().position(|r| r.iter().all(|z| z.is_zero())) {
        return Err(Error::NumericalBreakdown(format!("{what} row {i} vanished during echelonization")));
    }
    Ok(())
}

/// Whether the rows of `[A; B]` have pairwise distinct leading columns.
pub fn is_partial_row_echelon(form: &DecomposedForm) -> bool {
    let mut seen = std::collections::HashSet::new();
    form.plus_rows.iter().chain(&form.minus_rows).filter_map(|r| lead(r)).all(|c| seen.insert(c))
}

/// Output of [`partial_row_echelon`].
#[derive(Clone, Debug, PartialEq)]
pub struct Reduction {
    pub form: DecomposedForm,
    pub steps: Vec<HyperbolicStep>,
    /// Coefficient matrix the output must reproduce: the input with every
    /// λ absorption applied.
    pub target: Vec<Vec<C>>,
    /// Signature of the exact origin.
    pub origin_signature: SignaturePair,
}

impl Reduction {
    pub fn reconstruction_error(&self) -> f64 {
        relative_error(&self.form.matrix(), &self.target)
    }

    pub fn max_j_defect_ratio(&self) -> f64 {
        self.steps.iter().map(|s| s.j_defect() / s.norm_sqr()).fold(0.0, f64::max)
    }
}

/// `λ = ½|a₁/b₁|²` rounded down to denominator `LAMBDA_DENOMINATOR`.
fn choose_lambda(a1: C, b1: C) -> Result<Rational> {
    let limit = (a1.norm() / b1.norm()).powi(2);
    let num = ((limit / 2.0) * LAMBDA_DENOMINATOR as f64).floor().max(1.0);
    let num = num.to_i64().unwrap_or(LAMBDA_DENOMINATOR);
    let lambda = Rational::new(BigInt::from(num), BigInt::from(LAMBDA_DENOMINATOR));
    if rational_to_f64(&lambda) >= limit {
        return Err(Error::NumericalBreakdown(format!("pivot ratio {limit:e} too small for a rational λ")));
    }
    Ok(lambda)
}

/// Brings the stacked matrix to partial row-echelon form.
///
/// Both blocks are first echelonized unitarily. Columns are then scanned left
/// to right; when a column leads both an `A` row and a `B` row, `B` is first
/// scaled by a rational λ if `|a₁| <= |b₁|`, then the pair is rotated so the
/// `B` entry vanishes, and the remaining `B` rows are re-echelonized.
///
/// Requires an exact origin in `Ψ₁`. The output is checked for echelon form,
/// reconstruction within `tol.global`, and `Ψ₁` membership in floating point.
pub fn partial_row_echelon(form: &DecomposedForm, tol: &Tolerances) -> Result<Reduction> {
    let origin = form.origin.as_ref().ok_or(Error::MissingOrigin)?;
    if !in_psi_hermitian(origin, 1)?.member {
        return Err(Error::NotInPsiD(1));
    }
    let origin_signature = signature(origin)?;
    let mut out = form.clone();
    let mut target = form.matrix();
    let scale = frob(&out.plus_rows).max(frob(&out.minus_rows)).max(f64::MIN_POSITIVE);
    echelonize_checked(&mut out.plus_rows, scale, tol, "A")?;
    echelonize_checked(&mut out.minus_rows, scale, tol, "B")?;
    let mut steps = Vec::new();
    let cols = out.basis.len();
    for c in 0..cols {
        let Some(i) = out.plus_rows.iter().position(|r| lead(r) == Some(c)) else { continue };
        let Some(j) = out.minus_rows.iter().position(|r| lead(r) == Some(c)) else { continue };
        let a1 = out.plus_rows[i][c];
        let mut b1 = out.minus_rows[j][c];
        let a_norm = frob(std::slice::from_ref(&out.plus_rows[i]));
        if a1.norm() < tol.pivot * a_norm {
            return Err(Error::NumericalBreakdown(format!("pivot {a1} in column {c} is negligible")));
        }
        let mut lambda_used = None;
        if a1.norm() <= b1.norm() {
            let lambda = choose_lambda(a1, b1)?;
            let before = out.matrix();
            out = lambda_scale(&out, &lambda)?;
            let after = out.matrix();
            // target moves by the same change of the B block
            for a in 0..cols {
                for b in 0..cols {
                    target[a][b] += after[a][b] - before[a][b];
                }
            }
            b1 = out.minus_rows[j][c];
            lambda_used = Some(lambda);
        }
        let mut step = hyperbolic_eliminate(a1, b1)?;
        step.pivot_col = c;
        step.rows = (i, j);
        step.lambda_used = lambda_used;
        let t = step.t;
        let (ra, rb) = (out.plus_rows[i].clone(), out.minus_rows[j].clone());
        for col in 0..cols {
            out.plus_rows[i][col] = t[0][0] * ra[col] + t[0][1] * rb[col];
            out.minus_rows[j][col] = t[1][0] * ra[col] + t[1][1] * rb[col];
        }
        out.minus_rows[j][c] = C::zero();
        out.exact_parts = None;
        // rows of B leading after c are re-echelonized among themselves
        let mut active: Vec<usize> = (0..out.minus_rows.len())
            .filter(|&k| lead(&out.minus_rows[k]).is_none_or(|l| l > c))
            .collect();
        active.sort_by_key(|&k| (lead(&out.minus_rows[k]), k));
        let mut block: Vec<Vec<C>> = active.iter().map(|&k| out.minus_rows[k].clone()).collect();
        echelonize_checked(&mut block, scale, tol, "B")?;
        for (k, row) in active.iter().zip(block) {
            out.minus_rows[*k] = row;
        }
        steps.push(step);
    }
    let reduction = Reduction { form: out, steps, target, origin_signature };
    if !is_partial_row_echelon(&reduction.form) {
        return Err(Error::NumericalBreakdown("output is not in partial row-echelon form".into()));
    }
    let err = reduction.reconstruction_error();
    if err > tol.global {
        return Err(Error::NumericalBreakdown(format!("reconstruction error {err:e} exceeds {:e}", tol.global)));
    }
    if reduction.form.signature() != origin_signature {
        return Err(Error::NumericalBreakdown("row counts differ from the exact signature".into()));
    }
    if !float_in_psi1(reduction.form.n, &reduction.form.basis, &reduction.form.matrix(), tol.global) {
        return Err(Error::NumericalBreakdown("output left Psi_1 beyond tolerance".into()));
    }
    Ok(reduction)
}
