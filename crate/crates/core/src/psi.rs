//! Membership in the classes `Ψ_d = { r : r·‖z‖^{2d} is a Hermitian sum of squares }`.
//!
//! Diagonal inputs reduce to coefficient nonnegativity of `p·ℓ^d`; general
//! inputs to exact semidefiniteness of the product's coefficient matrix.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::inertia::{CongruenceFactorization, HermitianMatrix, Inertia, PsdCheck};
use crate::poly::{GaussianRational, HermitianPoly, MultiIndex, Rational, RealSparsePoly};

/// Default search cap for [`min_psi_index`].
pub const DEFAULT_D_MAX: u32 = 16;
/// Largest accepted cap.
pub const HARD_D_MAX: u32 = 64;

/// Either representation a membership question can be asked about.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnyPoly {
    Real(RealSparsePoly),
    Hermitian(HermitianPoly),
}

impl AnyPoly {
    pub fn nvars(&self) -> usize {
        match self {
            AnyPoly::Real(p) => p.nvars(),
            AnyPoly::Hermitian(r) => r.nvars(),
        }
    }
}

#[derive(Clone, Debug)]
pub enum Certificate {
    /// Every coefficient of the diagonal product is nonnegative.
    NonnegativeProduct { terms: usize },
    /// The diagonal product has `value < 0` at `monomial`.
    NegativeCoefficient { monomial: MultiIndex, value: Rational },
    /// The product's coefficient matrix is semidefinite.
    Psd {
        inertia: Inertia,
        factorization: Box<CongruenceFactorization>,
    },
    /// `witness* C witness = value < 0` for the product matrix `C` on `basis`.
    NegativeDirection {
        basis: Vec<MultiIndex>,
        witness: Vec<GaussianRational>,
        value: Rational,
    },
}

#[derive(Clone, Debug)]
pub struct PsiReport {
    pub d: u32,
    pub member: bool,
    pub certificate: Certificate,
}

fn report_from_product(d: u32, product: &RealSparsePoly) -> PsiReport {
    match product.min_coefficient() {
        Some((mono, value)) if value.is_negative() => PsiReport {
            d,
            member: false,
            certificate: Certificate::NegativeCoefficient {
                monomial: mono.clone(),
                value: value.clone(),
            },
        },
        _ => PsiReport {
            d,
            member: true,
            certificate: Certificate::NonnegativeProduct { terms: product.len() },
        },
    }
}

fn report_from_matrix(d: u32, product: &HermitianPoly) -> Result<PsiReport> {
    let m = HermitianMatrix::from_poly(product)?;
    Ok(match m.is_positive_semidefinite() {
        PsdCheck::Yes(fac) => PsiReport {
            d,
            member: true,
            certificate: Certificate::Psd {
                inertia: fac.inertia(),
                factorization: fac,
            },
        },
        PsdCheck::No { witness, value } => PsiReport {
            d,
            member: false,
            certificate: Certificate::NegativeDirection {
                basis: m.basis().to_vec(),
                witness,
                value,
            },
        },
    })
}

/// `p ∈ Ψ_d` for a real (diagonal) polynomial.
pub fn in_psi_diagonal(p: &RealSparsePoly, d: u32) -> PsiReport {
    report_from_product(d, &p.multiply_by_simplex_power(d))
}

/// `r ∈ Ψ_d` through the coefficient matrix of `r·‖z‖^{2d}`.
pub fn in_psi_hermitian(r: &HermitianPoly, d: u32) -> Result<PsiReport> {
    report_from_matrix(d, &r.multiply_by_norm_power(d))
}

pub fn in_psi(input: &AnyPoly, d: u32) -> Result<PsiReport> {
    match input {
        AnyPoly::Real(p) => Ok(in_psi_diagonal(p, d)),
        AnyPoly::Hermitian(r) => in_psi_hermitian(r, d),
    }
}

/// Whether `r · Σ_j |z^{α_j}|^2` is a squared norm. The reported `d` is the
/// number of multiplier terms.
pub fn in_psi_general_multiplier(input: &AnyPoly, s: &[MultiIndex]) -> Result<PsiReport> {
    let tag = s.len() as u32;
    match input {
        AnyPoly::Real(p) => Ok(report_from_product(tag, &p.multiply_by_diagonal_multiplier(s)?)),
        AnyPoly::Hermitian(r) => report_from_matrix(tag, &r.multiply_by_diagonal_multiplier(s)?),
    }
}

/// Smallest `d <= d_max` with membership, or `None` if there is none.
/// Membership is monotone in `d`, so the sweep stops at the first success.
pub fn min_psi_index(input: &AnyPoly, d_max: u32) -> Result<Option<u32>> {
    if d_max > HARD_D_MAX {
        return Err(Error::CapExceeded(d_max, HARD_D_MAX));
    }
    let diagonal = match input {
        AnyPoly::Real(p) => Some(p.clone()),
        AnyPoly::Hermitian(r) if r.is_diagonal() => Some(r.to_real_diagonal()?),
        AnyPoly::Hermitian(_) => None,
    };
    if let Some(p) = diagonal {
        let mut product = p;
        for d in 0..=d_max {
            if product.has_nonnegative_coefficients() {
                return Ok(Some(d));
            }
            product = product.multiply_by_simplex_power(1);
        }
        return Ok(None);
    }
    let AnyPoly::Hermitian(r) = input else { unreachable!() };
    let mut product = r.clone();
    for d in 0..=d_max {
        if report_from_matrix(d, &product)?.member {
            return Ok(Some(d));
        }
        product = product.multiply_by_norm_power(1);
    }
    Ok(None)
}

/// Coefficient of `x^A` in `p·ℓ^d` straight from the multinomial formula,
/// independent of the convolution used for membership.
pub fn product_coefficient(p: &RealSparsePoly, d: u32, monomial: &MultiIndex) -> Rational {
    MultiIndex::all_of_degree(p.nvars(), d)
        .into_iter()
        .filter_map(|delta| {
            let base = monomial.checked_sub(&delta)?;
            let c = p.coeff(&base);
            (!c.is_zero()).then(|| c * Rational::from_integer(BigInt::from(delta.multinomial())))
        })
        .fold(Rational::zero(), |acc, v| acc + v)
}

/// Re-checks a non-membership certificate exactly. Membership certificates
/// are re-checked by recomposing the factorization.
pub fn verify_certificate(input: &AnyPoly, report: &PsiReport) -> Result<bool> {
    match (&report.certificate, input) {
        (Certificate::NegativeCoefficient { monomial, value }, AnyPoly::Real(p)) => {
            let c = product_coefficient(p, report.d, monomial);
            Ok(!report.member && c == *value && c.is_negative())
        }
        (Certificate::NonnegativeProduct { .. }, AnyPoly::Real(p)) => {
            Ok(report.member && in_psi_diagonal(p, report.d).member)
        }
        (Certificate::NegativeDirection { witness, value, .. }, AnyPoly::Hermitian(r)) => {
            let m = HermitianMatrix::from_poly(&r.multiply_by_norm_power(report.d))?;
            let q = m.quadratic_form(witness);
            Ok(!report.member && q == *value && q.is_negative())
        }
        (Certificate::Psd { factorization, .. }, AnyPoly::Hermitian(r)) => {
            let m = HermitianMatrix::from_poly(&r.multiply_by_norm_power(report.d))?;
            let c = m.congruent(&factorization.transform);
            let diag_ok = (0..m.dim()).all(|i| {
                (0..m.dim()).all(|j| {
                    if i == j {
                        c[i][j] == GaussianRational::real(factorization.diag[i].clone())
                    } else {
                        c[i][j].is_zero()
                    }
                })
            });
            Ok(report.member && diag_ok && factorization.diag.iter().all(|v| !v.is_negative()))
        }
        _ => Ok(false),
    }
}
