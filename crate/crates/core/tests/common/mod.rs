#![allow(dead_code)]

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use psi_classes::poly::{rat, GaussianRational, HermitianPoly, MultiIndex, Rational, RealSparsePoly};
use psi_classes::search::{realize_magnitudes, repair_pattern, Sign, SignPattern};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn mi(v: &[u32]) -> MultiIndex {
    MultiIndex::from(v)
}

/// `p · (x_1 + … + x_n)^d` by expanding every one of the `n^d` words.
pub fn brute_simplex_product(p: &RealSparsePoly, d: u32) -> BTreeMap<MultiIndex, Rational> {
    let n = p.nvars();
    let mut words: Vec<Vec<u32>> = vec![vec![0; n]];
    for _ in 0..d {
        let mut next = Vec::with_capacity(words.len() * n);
        for w in &words {
            for k in 0..n {
                let mut v = w.clone();
                v[k] += 1;
                next.push(v);
            }
        }
        words = next;
    }
    let mut out: BTreeMap<MultiIndex, Rational> = BTreeMap::new();
    for (a, c) in p.terms() {
        for w in &words {
            let key: Vec<u32> = a.exps().iter().zip(w).map(|(x, y)| x + y).collect();
            *out.entry(MultiIndex::new(key)).or_insert_with(Rational::zero) += c;
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

pub fn random_pattern(rng: &mut ChaCha8Rng, n: usize, degree: u32) -> SignPattern {
    let mut pat = SignPattern::new(n, degree);
    for a in MultiIndex::all_of_degree(n, degree) {
        let s = match rng.gen_range(0..5) {
            0 | 1 => Sign::Neg,
            2 | 3 => Sign::Pos,
            _ => Sign::Zero,
        };
        pat.set(a, s);
    }
    pat
}

/// A diagonal `Ψ₁` member: a random pattern made feasible, realized, with
/// each positive coefficient enlarged by a random factor.
pub fn random_diagonal_member(rng: &mut ChaCha8Rng, n: usize, degree: u32) -> RealSparsePoly {
    let pat = repair_pattern(&random_pattern(rng, n, degree), 1);
    let p = realize_magnitudes(&pat, 1).expect("repaired pattern is feasible");
    let terms: Vec<(MultiIndex, Rational)> = p
        .terms()
        .map(|(a, c)| {
            let c = if *c > Rational::zero() { c * rat(rng.gen_range(1..4)) } else { c.clone() };
            (a.clone(), c)
        })
        .collect();
    RealSparsePoly::from_terms(n, terms).unwrap()
}

fn gauss(re: i64, im: i64) -> GaussianRational {
    GaussianRational::new(rat(re), rat(im))
}

/// Householder reflection `I - 2vv*/(v*v)` for a random Gaussian-integer `v`:
/// unitary with Gaussian-rational entries.
pub fn householder(rng: &mut ChaCha8Rng, n: usize) -> Vec<Vec<GaussianRational>> {
    let v: Vec<GaussianRational> = loop {
        let v: Vec<_> = (0..n).map(|_| gauss(rng.gen_range(-3..=3), rng.gen_range(-3..=3))).collect();
        if v.iter().any(|x| !x.is_zero()) {
            break v;
        }
    };
    let norm: Rational = v.iter().map(|x| x.norm_sqr()).sum();
    let factor = rat(2) / norm;
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let id = if i == j { GaussianRational::one() } else { GaussianRational::zero() };
                    &id - &(&v[i] * &v[j].conj()).scale(&factor)
                })
                .collect()
        })
        .collect()
}

/// Coefficients in `w` of `(Uw)^α`.
fn expand_power(u: &[Vec<GaussianRational>], alpha: &MultiIndex) -> BTreeMap<MultiIndex, GaussianRational> {
    let n = alpha.len();
    let mut acc: BTreeMap<MultiIndex, GaussianRational> = BTreeMap::new();
    acc.insert(MultiIndex::zero(n), GaussianRational::one());
    for (k, &e) in alpha.exps().iter().enumerate() {
        for _ in 0..e {
            let mut next: BTreeMap<MultiIndex, GaussianRational> = BTreeMap::new();
            for (m, c) in &acc {
                for (j, ukj) in u[k].iter().enumerate() {
                    if ukj.is_zero() {
                        continue;
                    }
                    let key = m.add(&MultiIndex::unit(n, j));
                    let v = next.entry(key).or_insert_with(GaussianRational::zero);
                    *v = &*v + &(c * ukj);
                }
            }
            next.retain(|_, v| !v.is_zero());
            acc = next;
        }
    }
    acc
}

/// `r(Uw, conj(Uw))` as a Hermitian polynomial in `w`.
pub fn substitute(r: &HermitianPoly, u: &[Vec<GaussianRational>]) -> HermitianPoly {
    let n = r.nvars();
    let mut cache: BTreeMap<MultiIndex, BTreeMap<MultiIndex, GaussianRational>> = BTreeMap::new();
    for b in r.basis() {
        let e = expand_power(u, &b);
        cache.insert(b, e);
    }
    let mut acc: BTreeMap<(MultiIndex, MultiIndex), GaussianRational> = BTreeMap::new();
    for (a, b, c) in r.entries() {
        for (g, fa) in &cache[a] {
            let left = c * fa;
            for (h, fb) in &cache[b] {
                let v = acc.entry((g.clone(), h.clone())).or_insert_with(GaussianRational::zero);
                *v = &*v + &(&left * &fb.conj());
            }
        }
    }
    let entries: Vec<_> = acc.into_iter().filter(|(_, v)| !v.is_zero()).filter(|((g, h), _)| g <= h).map(|((g, h), v)| (g, h, v)).collect();
    HermitianPoly::from_entries(n, entries).expect("substitution keeps Hermitian symmetry")
}

/// `Σ |g|²` for a random holomorphic `g` of the given degree.
pub fn random_square(rng: &mut ChaCha8Rng, n: usize, degree: u32) -> HermitianPoly {
    let basis = MultiIndex::all_of_degree(n, degree);
    let row: Vec<GaussianRational> = basis
        .iter()
        .map(|_| if rng.gen_bool(0.5) { gauss(rng.gen_range(-2..=2), rng.gen_range(-2..=2)) } else { GaussianRational::zero() })
        .collect();
    HermitianPoly::from_weighted_rows(n, &basis, &[row], &[rat(1)])
}

pub fn add_hermitian(a: &HermitianPoly, b: &HermitianPoly) -> HermitianPoly {
    let mut out = a.clone();
    for (x, y, c) in b.entries() {
        if x <= y {
            out.add_hermitian_pair(x, y, c);
        }
    }
    out
}

/// A random `Ψ₁` member with `n ∈ {2, 3}` and at most ten basis monomials:
/// a diagonal member conjugated by a rational unitary, sometimes plus a
/// square.
pub fn random_psi1_member(rng: &mut ChaCha8Rng) -> HermitianPoly {
    let (n, degree) = if rng.gen_bool(0.5) { (2, rng.gen_range(1..=6)) } else { (3, rng.gen_range(1..=3)) };
    let p = random_diagonal_member(rng, n, degree);
    let u = householder(rng, n);
    let mut r = substitute(&HermitianPoly::from_real_diagonal(&p), &u);
    if rng.gen_bool(0.3) {
        r = add_hermitian(&r, &random_square(rng, n, degree));
    }
    r
}

pub fn big(v: i64) -> BigInt {
    BigInt::from(v)
}
