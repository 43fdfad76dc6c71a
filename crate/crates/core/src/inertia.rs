//! Exact inertia of Hermitian matrices over `Q(i)` by congruence.
//!
//! By Sylvester's law the counts of positive, negative and zero entries of
//! any congruent diagonal form are invariants, so a rational elimination
//! gives the signature without ever computing an eigenvalue.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::{GaussianRational, HermitianPoly, MultiIndex, Rational, SignaturePair};

/// Hard ceiling on the dense dimension.
pub const DEFAULT_MAX_DIM: usize = 2048;

/// The active dimension cap: `PSI_MAX_DIM` may lower it, never raise it.
pub fn max_dim() -> usize {
    std::env::var("PSI_MAX_DIM")
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .map_or(DEFAULT_MAX_DIM, |v| v.min(DEFAULT_MAX_DIM))
}

/// Dense Hermitian matrix indexed by an ordered monomial basis.
///
/// Entry `(i, j)` is the coefficient of `z^{basis_i} z̄^{basis_j}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermitianMatrix {
    basis: Vec<MultiIndex>,
    data: Vec<GaussianRational>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Inertia {
    pub n_plus: usize,
    pub n_minus: usize,
    pub n_zero: usize,
}

impl Inertia {
    pub fn signature(&self) -> SignaturePair {
        SignaturePair::new(self.n_plus, self.n_minus)
    }
}

/// One elimination step, recorded so runs can be compared.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PivotStep {
    /// Column/row `target` += `factor` · column/row `source`, used when the
    /// remaining diagonal is entirely zero.
    Combine {
        target: usize,
        source: usize,
        factor: GaussianRational,
    },
    /// 1×1 pivot at `index`.
    Pivot { index: usize, value: Rational },
}

/// `transform* · M · transform = diag(diag)`, with `inverse = transform⁻¹`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CongruenceFactorization {
    pub diag: Vec<Rational>,
    pub transform: Vec<Vec<GaussianRational>>,
    pub inverse: Vec<Vec<GaussianRational>>,
    pub pivot_log: Vec<PivotStep>,
}

impl CongruenceFactorization {
    pub fn inertia(&self) -> Inertia {
        let n_plus = self.diag.iter().filter(|v| v.is_positive()).count();
        let n_minus = self.diag.iter().filter(|v| v.is_negative()).count();
        Inertia {
            n_plus,
            n_minus,
            n_zero: self.diag.len() - n_plus - n_minus,
        }
    }
}

/// Outcome of the semidefiniteness test.
#[derive(Clone, Debug)]
pub enum PsdCheck {
    Yes(Box<CongruenceFactorization>),
    /// `witness* · M · witness = value < 0`.
    No {
        witness: Vec<GaussianRational>,
        value: Rational,
    },
}

impl PsdCheck {
    pub fn is_psd(&self) -> bool {
        matches!(self, PsdCheck::Yes(_))
    }
}

impl HermitianMatrix {
    /// Validates Hermitian symmetry, basis uniqueness and the size cap.
    pub fn new(basis: Vec<MultiIndex>, rows: Vec<Vec<GaussianRational>>) -> Result<Self> {
        let dim = basis.len();
        let limit = max_dim();
        if dim > limit {
            return Err(Error::ExplicitLimit { dim, limit });
        }
        let mut sorted = basis.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != dim {
            return Err(Error::Parse("matrix basis has duplicate monomials".into()));
        }
        if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
            return Err(Error::Parse(format!("matrix must be {dim}x{dim}")));
        }
        for i in 0..dim {
            for j in i..dim {
                if rows[i][j] != rows[j][i].conj() {
                    return Err(Error::NotHermitian(i.to_string(), j.to_string()));
                }
            }
        }
        Ok(HermitianMatrix {
            basis,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Coefficient matrix of `r` on its own basis.
    pub fn from_poly(r: &HermitianPoly) -> Result<Self> {
        let basis = r.basis();
        let dim = basis.len();
        let limit = max_dim();
        if dim > limit {
            return Err(Error::ExplicitLimit { dim, limit });
        }
        let pos = |a: &MultiIndex| basis.binary_search(a).expect("basis covers entries");
        let mut data = vec![GaussianRational::zero(); dim * dim];
        for (a, b, c) in r.entries() {
            data[pos(a) * dim + pos(b)] = c.clone();
        }
        Ok(HermitianMatrix { basis, data })
    }

    /// Real diagonal matrix on a synthetic basis `(0), (1), …`.
    pub fn diagonal(values: &[Rational]) -> Self {
        let dim = values.len();
        let mut data = vec![GaussianRational::zero(); dim * dim];
        for (i, v) in values.iter().enumerate() {
            data[i * dim + i] = GaussianRational::real(v.clone());
        }
        HermitianMatrix {
            basis: synthetic_basis(dim),
            data,
        }
    }

    /// Matrix on a synthetic basis; validates symmetry.
    pub fn from_rows(rows: Vec<Vec<GaussianRational>>) -> Result<Self> {
        Self::new(synthetic_basis(rows.len()), rows)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[MultiIndex] {
        &self.basis
    }

    pub fn get(&self, i: usize, j: usize) -> &GaussianRational {
        &self.data[i * self.dim() + j]
    }

    pub fn rows(&self) -> Vec<Vec<GaussianRational>> {
        self.data.chunks(self.dim().max(1)).map(<[_]>::to_vec).take(self.dim()).collect()
    }

    /// `v* M v`, real because `M` is Hermitian.
    pub fn quadratic_form(&self, v: &[GaussianRational]) -> Rational {
        let dim = self.dim();
        let mut acc = GaussianRational::zero();
        for i in 0..dim {
            if v[i].is_zero() {
                continue;
            }
            let mut row = GaussianRational::zero();
            for j in 0..dim {
                if !v[j].is_zero() {
                    row = &row + &(self.get(i, j) * &v[j]);
                }
            }
            acc = &acc + &(&v[i].conj() * &row);
        }
        debug_assert!(acc.im.is_zero());
        acc.re
    }

    /// `T* M T` for a square `T`.
    pub fn congruent(&self, t: &[Vec<GaussianRational>]) -> Vec<Vec<GaussianRational>> {
        let dim = self.dim();
        let mt: Vec<Vec<GaussianRational>> = (0..dim)
            .map(|i| {
                (0..dim)
                    .map(|j| {
                        (0..dim).fold(GaussianRational::zero(), |acc, k| &acc + &(self.get(i, k) * &t[k][j]))
                    })
                    .collect()
            })
            .collect();
        (0..dim)
            .map(|i| {
                (0..dim)
                    .map(|j| (0..dim).fold(GaussianRational::zero(), |acc, k| &acc + &(&t[k][i].conj() * &mt[k][j])))
                    .collect()
            })
            .collect()
    }

    /// Symmetric elimination with largest-magnitude diagonal pivots. When
    /// the remaining diagonal vanishes, a combination step creates a
    /// nonzero diagonal entry without leaving `Q(i)`.
    pub fn congruence_factorization(&self) -> CongruenceFactorization {
        let dim = self.dim();
        let mut w: Vec<Vec<GaussianRational>> = self.rows();
        let mut t = identity(dim);
        let mut l = identity(dim);
        let mut active = vec![true; dim];
        let mut log = Vec::new();

        loop {
            let pivot = (0..dim)
                .filter(|&i| active[i] && !w[i][i].re.is_zero())
                .fold(None::<usize>, |best, i| match best {
                    Some(b) if w[b][b].re.abs() >= w[i][i].re.abs() => Some(b),
                    _ => Some(i),
                });
            let k = match pivot {
                Some(k) => k,
                None => {
                    let pair = (0..dim)
                        .filter(|&i| active[i])
                        .flat_map(|i| (i + 1..dim).map(move |j| (i, j)))
                        .find(|&(i, j)| active[j] && !w[i][j].is_zero());
                    let Some((i, j)) = pair else { break };
                    let factor = if w[i][j].re.is_zero() {
                        w[i][j].conj()
                    } else {
                        GaussianRational::one()
                    };
                    // column i += factor·column j, then row i += conj(factor)·row j
                    for row in w.iter_mut() {
                        let add = &factor * &row[j];
                        row[i] = &row[i] + &add;
                    }
                    let cf = factor.conj();
                    for c in 0..dim {
                        let add = &cf * &w[j][c];
                        w[i][c] = &w[i][c] + &add;
                    }
                    for row in t.iter_mut() {
                        let add = &factor * &row[j];
                        row[i] = &row[i] + &add;
                    }
                    for c in 0..dim {
                        let sub = &factor * &l[i][c];
                        l[j][c] = &l[j][c] - &sub;
                    }
                    log.push(PivotStep::Combine { target: i, source: j, factor });
                    continue;
                }
            };

            let pv = w[k][k].re.clone();
            let inv = GaussianRational::real(BigRational::one() / &pv);
            for r in 0..dim {
                if r == k || !active[r] || w[k][r].is_zero() {
                    continue;
                }
                let f = &w[k][r] * &inv;
                for row in w.iter_mut() {
                    let sub = &f * &row[k];
                    row[r] = &row[r] - &sub;
                }
                let fc = f.conj();
                for c in 0..dim {
                    let sub = &fc * &w[k][c];
                    w[r][c] = &w[r][c] - &sub;
                }
                for row in t.iter_mut() {
                    let sub = &f * &row[k];
                    row[r] = &row[r] - &sub;
                }
                for c in 0..dim {
                    let add = &f * &l[r][c];
                    l[k][c] = &l[k][c] + &add;
                }
            }
            active[k] = false;
            log.push(PivotStep::Pivot { index: k, value: pv });
        }

        CongruenceFactorization {
            diag: (0..dim).map(|i| w[i][i].re.clone()).collect(),
            transform: t,
            inverse: l,
            pivot_log: log,
        }
    }

    pub fn inertia(&self) -> Inertia {
        self.congruence_factorization().inertia()
    }

    pub fn is_positive_semidefinite(&self) -> PsdCheck {
        let fac = self.congruence_factorization();
        match fac.diag.iter().position(|v| v.is_negative()) {
            None => PsdCheck::Yes(Box::new(fac)),
            Some(i) => PsdCheck::No {
                witness: fac.transform.iter().map(|row| row[i].clone()).collect(),
                value: fac.diag[i].clone(),
            },
        }
    }
}

fn synthetic_basis(dim: usize) -> Vec<MultiIndex> {
    (0..dim as u32).map(|i| MultiIndex::new(vec![i])).collect()
}

fn identity(dim: usize) -> Vec<Vec<GaussianRational>> {
    (0..dim)
        .map(|i| {
            (0..dim)
                .map(|j| if i == j { GaussianRational::one() } else { GaussianRational::zero() })
                .collect()
        })
        .collect()
}

/// `r = Σ scale_i |plus_i · Z|^2 - Σ scale_j |minus_j · Z|^2` with exact
/// squared scales in place of square roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HolomorphicDecomposition {
    pub basis: Vec<MultiIndex>,
    pub plus_rows: Vec<Vec<GaussianRational>>,
    pub plus_scales: Vec<Rational>,
    pub minus_rows: Vec<Vec<GaussianRational>>,
    pub minus_scales: Vec<Rational>,
}

impl HolomorphicDecomposition {
    pub fn signature(&self) -> SignaturePair {
        SignaturePair::new(self.plus_rows.len(), self.minus_rows.len())
    }

    /// The positive part `Σ scale_i |plus_i · Z|^2`.
    pub fn positive_part(&self, n: usize) -> HermitianPoly {
        HermitianPoly::from_weighted_rows(n, &self.basis, &self.plus_rows, &self.plus_scales)
    }

    /// The negative part `Σ scale_j |minus_j · Z|^2` (returned nonnegative).
    pub fn negative_part(&self, n: usize) -> HermitianPoly {
        HermitianPoly::from_weighted_rows(n, &self.basis, &self.minus_rows, &self.minus_scales)
    }

    pub fn reconstruct(&self, n: usize) -> HermitianPoly {
        &self.positive_part(n) - &self.negative_part(n)
    }
}

/// Splits `r` into linearly independent positive and negative squares.
pub fn holomorphic_decomposition(r: &HermitianPoly) -> Result<HolomorphicDecomposition> {
    let m = HermitianMatrix::from_poly(r)?;
    let fac = m.congruence_factorization();
    let mut out = HolomorphicDecomposition {
        basis: m.basis().to_vec(),
        plus_rows: Vec::new(),
        plus_scales: Vec::new(),
        minus_rows: Vec::new(),
        minus_scales: Vec::new(),
    };
    // M = L* Δ L, so entry (a, b) = Σ_i Δ_i conj(L_ia) L_ib; the holomorphic
    // row for square i is conj(L_i).
    for (i, d) in fac.diag.iter().enumerate() {
        if d.is_zero() {
            continue;
        }
        let row: Vec<GaussianRational> = fac.inverse[i].iter().map(GaussianRational::conj).collect();
        if d.is_positive() {
            out.plus_rows.push(row);
            out.plus_scales.push(d.clone());
        } else {
            out.minus_rows.push(row);
            out.minus_scales.push(-d.clone());
        }
    }
    Ok(out)
}

/// Signature pair of a Hermitian polynomial.
pub fn signature(r: &HermitianPoly) -> Result<SignaturePair> {
    Ok(HermitianMatrix::from_poly(r)?.inertia().signature())
}
