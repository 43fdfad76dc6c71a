//! Explicit polynomial families with exact coefficients.
//!
//! Every constructor here builds a candidate; membership claims are checked
//! by callers through [`crate::psi`], never assumed.

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::poly::{rat, ratio, MultiIndex, Rational, RealSparsePoly};
use crate::psi::in_psi_diagonal;
use crate::search::{realize_magnitudes, repair_pattern, Sign, SignPattern};

/// Coefficient of `x^α` in `p_D`: `n - 1` on the boundary of the simplex and
/// on interior points with `Σ_{k<n} k·α_k ≡ D (mod n)`, otherwise `-1`.
pub fn gamma(alpha: &MultiIndex, degree: u32, n: usize) -> Result<i64> {
    if alpha.len() != n {
        return Err(Error::LengthMismatch(alpha.clone(), alpha.len(), n));
    }
    if alpha.degree() != degree {
        return Err(Error::DegreeMismatch {
            alpha: alpha.clone(),
            found: alpha.degree(),
            expected: degree,
        });
    }
    let top = n as i64 - 1;
    if alpha.exps().contains(&0) {
        return Ok(top);
    }
    let weighted: i64 = (0..n - 1).map(|k| (k as i64 + 1) * alpha.get(k) as i64).sum();
    Ok(if (weighted - degree as i64).rem_euclid(n as i64) == 0 { top } else { -1 })
}

/// `p_D = Σ_{|α|=D} γ(α) x^α`.
pub fn generate_pd(n: usize, degree: u32) -> RealSparsePoly {
    assert!(n >= 1);
    let terms = MultiIndex::all_of_degree(n, degree).into_iter().map(|alpha| {
        let g = gamma(&alpha, degree, n).expect("lattice point of the right degree");
        (alpha, rat(g))
    });
    RealSparsePoly::from_terms(n, terms).expect("lengths match")
}

fn binom(n: u32, k: u32) -> BigInt {
    binomial(BigInt::from(n), BigInt::from(k))
}

/// The counting lower bound for `N₋(p_D)/N₊(p_D)`: with
/// `b = (n-1)/n · C(D-n, n-1)` negatives guaranteed among
/// `C(D+n-1, n-1)` terms, the value is `b / (C(D+n-1, n-1) - b)`.
pub fn pd_ratio_lower_bound(n: usize, degree: u32) -> Result<Rational> {
    if degree as usize <= 3 * n {
        return Err(Error::DomainTooSmall { n, degree });
    }
    let n32 = n as u32;
    let neg = ratio(n as i64 - 1, n as i64) * Rational::from_integer(binom(degree - n32, n32 - 1));
    let total = Rational::from_integer(binom(degree + n32 - 1, n32 - 1));
    Ok(&neg / &(total - &neg))
}

/// The two-variable family of power `d` and degree `D = (d+1)m`:
/// coefficient of `x_1^{D-j} x_2^j` is `2^d - 1` when `(d+1) | j`, else `-1`.
pub fn generate_two_var(d: u32, m: u32) -> Result<RealSparsePoly> {
    if d < 1 || m < 1 {
        return Err(Error::ParamsInfeasible(format!("two-variable family needs d, m >= 1 (got d={d}, m={m})")));
    }
    let degree = (d + 1) * m;
    let top = Rational::from_integer((BigInt::one() << d) - 1);
    let terms = (0..=degree).map(|j| {
        let c = if j % (d + 1) == 0 { top.clone() } else { rat(-1) };
        (MultiIndex::new(vec![degree - j, j]), c)
    });
    RealSparsePoly::from_terms(2, terms)
}

/// Row-skip parameter used when none is given: `⌊d/2⌋`.
pub fn auto_nu(d: u32) -> u32 {
    d / 2
}

fn inductive_pattern(n: usize, d: u32, k: u32, nu: u32) -> Result<SignPattern> {
    if n < 3 {
        return Err(Error::ParamsInfeasible(format!("inductive family needs n >= 3, got {n}")));
    }
    if nu >= d {
        return Err(Error::ParamsInfeasible(format!("need nu < d, got nu={nu}, d={d}")));
    }
    if k < 2 * (nu + 1) {
        return Err(Error::ParamsInfeasible(format!("need k >= 2(nu+1) = {}, got k={k}", 2 * (nu + 1))));
    }
    let inner = d - nu;
    let base = if n == 3 {
        SignPattern::from_poly(&generate_two_var(inner, k)?)?
    } else {
        inductive_pattern(n - 1, inner, k, auto_nu(inner))?
    };
    // layer footprint: the base pattern with its last variable set to 1
    let layer: Vec<(Vec<u32>, Sign)> = base
        .nonzero()
        .map(|(a, s)| (a.exps()[..n - 2].to_vec(), s))
        .collect();
    let degree = base.degree() + k;
    let mut pat = SignPattern::new(n, degree);
    for j in 0..=k {
        for (head, s) in &layer {
            let sign = if j == 0 || j == k {
                Sign::Pos
            } else if j % (nu + 1) == 0 {
                *s
            } else {
                Sign::Neg
            };
            let used: u32 = head.iter().sum::<u32>() + j;
            let mut exps = head.clone();
            exps.push(j);
            exps.push(degree - used);
            pat.set(MultiIndex::new(exps), sign);
        }
    }
    Ok(repair_pattern(&pat, d))
}

/// Layered family for power `d` in `n >= 3` variables.
///
/// Layers `j = 0..=k` in `x_{n-1}` (with `x_n = 1`): layers with
/// `(nu+1) | j` repeat the `(n-1)`-variable pattern for power `d - nu`, the
/// other inner layers are all negative, and layers `0` and `k` are all
/// positive. The `n = 3` base is the two-variable family with `m = k`; for
/// larger `n` the base recurses with `nu = ⌊d'/2⌋`. Negatives that no
/// positive can cover are then made positive, and magnitudes come from
/// [`realize_magnitudes`].
///
/// The result is in `x_1, …, x_{n-1}` unless `homogenize` is set, in which
/// case `x_n` is restored. Membership checks need the homogeneous form.
pub fn generate_inductive(n: usize, d: u32, k: u32, nu: Option<u32>, homogenize: bool) -> Result<RealSparsePoly> {
    let nu = nu.unwrap_or_else(|| auto_nu(d));
    let pat = inductive_pattern(n, d, k, nu)?;
    let p = realize_magnitudes(&pat, d)?;
    Ok(if homogenize { p } else { p.dehomogenize() })
}

/// `q_k = x_1^k + x_2^k + x_2^{k-1}(x_3 + … + x_n) - ε x_1 x_2^{k-1}`.
pub fn generate_qk(n: usize, k: u32, epsilon: &Rational) -> Result<RealSparsePoly> {
    if n < 3 || k < 2 {
        return Err(Error::ParamsInfeasible(format!("q_k needs n >= 3 and k >= 2 (got n={n}, k={k})")));
    }
    let mono = |pairs: &[(usize, u32)]| {
        let mut v = vec![0; n];
        for &(i, e) in pairs {
            v[i] += e;
        }
        MultiIndex::new(v)
    };
    let mut terms = vec![(mono(&[(0, k)]), rat(1)), (mono(&[(1, k)]), rat(1))];
    for i in 2..n {
        terms.push((mono(&[(1, k - 1), (i, 1)]), rat(1)));
    }
    terms.push((mono(&[(0, 1), (1, k - 1)]), -epsilon.clone()));
    RealSparsePoly::from_terms(n, terms)
}

/// Smallest exponent tried by [`generate_qk_auto`] is `2^-EPSILON_FLOOR_LOG2`.
pub const EPSILON_FLOOR_LOG2: u32 = 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QkInstance {
    pub poly: RealSparsePoly,
    pub epsilon: Rational,
    /// The power at which membership was confirmed.
    pub power: u32,
}

/// `q_k` with `ε` found by halving from 1 until `q_k ∈ Ψ_{k-1}`, falling
/// back to `Ψ_k`.
pub fn generate_qk_auto(n: usize, k: u32) -> Result<QkInstance> {
    generate_qk(n, k, &rat(1))?;
    for power in [k - 1, k] {
        let mut eps = rat(1);
        for _ in 0..=EPSILON_FLOOR_LOG2 {
            let poly = generate_qk(n, k, &eps)?;
            if in_psi_diagonal(&poly, power).member {
                return Ok(QkInstance { poly, epsilon: eps, power });
            }
            eps /= rat(2);
        }
    }
    Err(Error::EpsilonSearchFailed(k))
}

/// `(x_1 + x_2)^4 - λ x_1^2 x_2^2`.
pub fn generate_lambda_example(lambda: &Rational) -> RealSparsePoly {
    let mut p = RealSparsePoly::one(2).multiply_by_simplex_power(4);
    p.add_term(MultiIndex::new(vec![2, 2]), -lambda.clone());
    p
}

/// Whether `λ` lies in `[0, 16)`, where the example is positive on the
/// sphere and so lies in some `Ψ_d`.
pub fn lambda_in_range(lambda: &Rational) -> bool {
    !lambda.is_negative() && *lambda < rat(16)
}

/// The 13-term sextic in `x, y, z` whose diagram has 7 positive and
/// 6 negative points.
pub fn example_fig2() -> RealSparsePoly {
    RealSparsePoly::from_int_terms(
        3,
        &[
            (&[1, 1, 4], 2),
            (&[3, 0, 3], 2),
            (&[0, 3, 3], 2),
            (&[2, 2, 2], 2),
            (&[4, 1, 1], 2),
            (&[1, 4, 1], 2),
            (&[3, 3, 0], 2),
            (&[2, 1, 3], -1),
            (&[1, 2, 3], -1),
            (&[3, 1, 2], -1),
            (&[1, 3, 2], -1),
            (&[3, 2, 1], -1),
            (&[2, 3, 1], -1),
        ],
    )
}

/// `x² + y² + xz - xy`.
pub fn example_fig1() -> RealSparsePoly {
    RealSparsePoly::from_int_terms(3, &[(&[2, 0, 0], 1), (&[0, 2, 0], 1), (&[1, 0, 1], 1), (&[1, 1, 0], -1)])
}

/// A family and its parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    Pd { n: usize, degree: u32 },
    TwoVar { d: u32, m: u32 },
    Inductive { n: usize, d: u32, k: u32, nu: Option<u32>, homogenize: bool },
    Qk { n: usize, k: u32, epsilon: Option<Rational> },
    Lambda { lambda: Rational },
    Fig2,
}

impl Family {
    pub fn generate(&self) -> Result<RealSparsePoly> {
        match self {
            Family::Pd { n, degree } => {
                if *n < 2 || *degree < 1 {
                    return Err(Error::ParamsInfeasible(format!("p_D needs n >= 2 and D >= 1 (got n={n}, D={degree})")));
                }
                Ok(generate_pd(*n, *degree))
            }
            Family::TwoVar { d, m } => generate_two_var(*d, *m),
            Family::Inductive { n, d, k, nu, homogenize } => generate_inductive(*n, *d, *k, *nu, *homogenize),
            Family::Qk { n, k, epsilon: Some(e) } => generate_qk(*n, *k, e),
            Family::Qk { n, k, epsilon: None } => Ok(generate_qk_auto(*n, *k)?.poly),
            Family::Lambda { lambda } => Ok(generate_lambda_example(lambda)),
            Family::Fig2 => Ok(example_fig2()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    fn mi(v: &[u32]) -> MultiIndex {
        MultiIndex::from(v)
    }

    #[test]
    fn gamma_values() {
        assert_eq!(gamma(&mi(&[1, 1, 4]), 6, 3).unwrap(), 2);
        assert_eq!(gamma(&mi(&[2, 1, 3]), 6, 3).unwrap(), -1);
        assert_eq!(gamma(&mi(&[6, 0, 0]), 6, 3).unwrap(), 2);
        assert!(matches!(gamma(&mi(&[1, 1, 3]), 6, 3), Err(Error::DegreeMismatch { .. })));
    }

    #[test]
    fn pd_small_cases() {
        let p = generate_pd(3, 6);
        assert_eq!(p.len(), 28);
        assert!(in_psi_diagonal(&p, 1).member);
        let q = generate_pd(2, 3);
        assert_eq!(q.len(), 4);
        assert!(in_psi_diagonal(&q, 1).member);
    }

    #[test]
    fn lower_bound_domain() {
        assert!(matches!(pd_ratio_lower_bound(3, 9), Err(Error::DomainTooSmall { .. })));
        let v = pd_ratio_lower_bound(2, 9).unwrap();
        assert!(v > Rational::zero() && v < rat(1));
    }

    #[test]
    fn two_var_small() {
        let p = generate_two_var(2, 3).unwrap();
        assert_eq!(p.sign_counts().ratio().unwrap(), ratio(6, 4));
        let q = generate_two_var(1, 2).unwrap();
        let signs: Vec<bool> = (0..=4).map(|j| q.coeff(&mi(&[4 - j, j])) > Rational::zero()).collect();
        assert_eq!(signs, vec![true, false, true, false, true]);
        assert!(in_psi_diagonal(&generate_two_var(3, 2).unwrap(), 3).member);
        assert!(generate_two_var(0, 2).is_err());
    }

    #[test]
    fn qk_structure() {
        let q = generate_qk(3, 2, &ratio(1, 4)).unwrap();
        let expected = RealSparsePoly::from_terms(
            3,
            [
                (mi(&[2, 0, 0]), rat(1)),
                (mi(&[0, 2, 0]), rat(1)),
                (mi(&[0, 1, 1]), rat(1)),
                (mi(&[1, 1, 0]), ratio(-1, 4)),
            ],
        )
        .unwrap();
        assert_eq!(q, expected);
    }

    #[test]
    fn lambda_middle_cancels_at_six() {
        let p = generate_lambda_example(&rat(6));
        assert!(p.coeff(&mi(&[2, 2])).is_zero());
        assert_eq!(p.len(), 4);
        assert!(lambda_in_range(&rat(0)));
        assert!(!lambda_in_range(&rat(16)));
        assert!(!lambda_in_range(&rat(-1)));
    }

    #[test]
    fn fig2_constant() {
        let p = example_fig2();
        assert_eq!(p.len(), 13);
        assert!(p.is_homogeneous());
        assert_eq!(p.degree(), Some(6));
    }

    #[test]
    fn inductive_rejects_bad_params() {
        assert!(matches!(generate_inductive(2, 2, 10, Some(0), true), Err(Error::ParamsInfeasible(_))));
        assert!(matches!(generate_inductive(3, 2, 10, Some(2), true), Err(Error::ParamsInfeasible(_))));
        assert!(matches!(generate_inductive(3, 3, 3, Some(1), true), Err(Error::ParamsInfeasible(_))));
    }

    #[test]
    fn inductive_small_member() {
        let p = generate_inductive(3, 2, 6, Some(0), true).unwrap();
        assert!(p.is_homogeneous());
        assert!(in_psi_diagonal(&p, 2).member);
        let flat = generate_inductive(3, 2, 6, Some(0), false).unwrap();
        assert_eq!(flat.nvars(), 2);
        assert_eq!(flat.homogenize(p.degree().unwrap()), p);
    }
}
