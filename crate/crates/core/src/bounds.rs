//! Signature-ratio bounds on concrete inputs, and the fiber-counting
//! certificate behind the `d = 1` diagonal bound.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::binomial;

use crate::error::{Error, Result};
use crate::poly::{rat, MultiIndex, Rational, RealSparsePoly, SignaturePair};
use crate::psi::in_psi_diagonal;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundReport {
    pub n: usize,
    pub d: u32,
    pub signature: SignaturePair,
    pub bound: Rational,
    /// `N₊ = N₋ = 0`, or `N₊ > 0` and `N₋/N₊ < bound`.
    pub satisfied: bool,
    /// `N₊ > 0` and `N₋/N₊ < bound` strictly.
    pub strict: bool,
}

/// Ceiling on `N₋/N₊` for members of `Ψ_d` in `n` variables: `n - 1` for
/// `d = 1`, `C(n-1+d, d) - 1` otherwise.
pub fn ratio_ceiling(n: usize, d: u32) -> Rational {
    if d == 1 {
        rat(n as i64 - 1)
    } else {
        Rational::from_integer(binomial(BigInt::from(n - 1 + d as usize), BigInt::from(d))) - rat(1)
    }
}

pub fn verify_ratio_bound(sig: SignaturePair, n: usize, d: u32) -> BoundReport {
    let bound = ratio_ceiling(n, d);
    let strict = sig.ratio().is_some_and(|r| r < bound);
    let satisfied = sig.rank() == 0 || strict;
    BoundReport { n, d, signature: sig, bound, satisfied, strict }
}

/// For `p ∈ Ψ_d`: either no negatives, or at least `n` positives.
pub fn verify_min_positive(p: &RealSparsePoly, d: u32) -> Result<bool> {
    if !in_psi_diagonal(p, d).member {
        return Err(Error::NotInPsiD(d));
    }
    let sig = p.sign_counts();
    Ok(sig.n_minus == 0 || sig.n_plus >= p.nvars())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PigeonholeCertificate {
    /// Each negative monomial `α` mapped to `α + e^n - e^{j₀}`.
    pub assignment: BTreeMap<MultiIndex, MultiIndex>,
    pub max_fiber: usize,
    /// The positive monomial with no preimage; `None` when there are no
    /// positives.
    pub least_monomial: Option<MultiIndex>,
}

impl PigeonholeCertificate {
    pub fn fibers(&self) -> BTreeMap<&MultiIndex, usize> {
        let mut out = BTreeMap::new();
        for target in self.assignment.values() {
            *out.entry(target).or_insert(0) += 1;
        }
        out
    }
}

/// Least monomial when `x_n` is the most significant variable.
fn least_by_last_variable<'a>(set: impl Iterator<Item = &'a MultiIndex>) -> Option<&'a MultiIndex> {
    set.min_by(|a, b| a.exps().iter().rev().cmp(b.exps().iter().rev()))
}

/// Builds the map `f(α) = α + e^n - e^{j₀}` on the negative support, with
/// `j₀ < n` minimal such that the image is a positive monomial, and checks
/// that every fiber has at most `n - 1` elements and that the least positive
/// monomial (with `x_n` most significant) has none. Together these give
/// `N₋ <= (n-1)(N₊-1)`.
pub fn pigeonhole_certificate(p: &RealSparsePoly) -> Result<PigeonholeCertificate> {
    if !p.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    if !in_psi_diagonal(p, 1).member {
        return Err(Error::NotInPsiD(1));
    }
    let n = p.nvars();
    let pos = p.positive_support();
    let last = n - 1;
    let mut assignment = BTreeMap::new();
    for alpha in p.negative_support() {
        let image = (0..last)
            .filter_map(|j| alpha.shifted(last, j))
            .find(|beta| pos.contains(beta))
            .ok_or_else(|| Error::CertificateFailure(format!("no positive neighbour for negative monomial {alpha}")))?;
        assignment.insert(alpha, image);
    }
    let mut cert = PigeonholeCertificate { assignment, max_fiber: 0, least_monomial: None };
    let (max_fiber, least_count) = {
        let fibers = cert.fibers();
        let least = least_by_last_variable(pos.iter());
        (fibers.values().copied().max().unwrap_or(0), least.and_then(|b| fibers.get(b).copied()))
    };
    if max_fiber > n - 1 {
        return Err(Error::CertificateFailure(format!("a fiber has {max_fiber} > {} elements", n - 1)));
    }
    let least = least_by_last_variable(pos.iter()).cloned();
    if let (Some(b), Some(count)) = (&least, least_count) {
        return Err(Error::CertificateFailure(format!("least positive monomial {b} has {count} preimages")));
    }
    cert.max_fiber = max_fiber;
    cert.least_monomial = least;
    Ok(cert)
}
