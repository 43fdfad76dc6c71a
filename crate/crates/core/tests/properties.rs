mod common;

use num_traits::{ToPrimitive, Zero};
use proptest::prelude::*;

use psi_classes::bounds::{pigeonhole_certificate, verify_ratio_bound};
use psi_classes::generators::{generate_inductive, generate_pd, generate_two_var};
use psi_classes::inertia::{signature, HermitianMatrix, PsdCheck};
use psi_classes::poly::{rat, ratio, GaussianRational, HermitianPoly, MultiIndex, Rational, RealSparsePoly};
use psi_classes::psi::{in_psi, in_psi_diagonal, in_psi_hermitian, verify_certificate, AnyPoly};
use psi_classes::reduction::{is_partial_row_echelon, partial_row_echelon, DecomposedForm, Tolerances};
use psi_classes::search::{
    realize_magnitudes, search_max_ratio, support_feasible, SearchConfig, SignPattern, Strategy as SearchStrategy,
};

use common::{brute_simplex_product, random_diagonal_member, random_pattern, random_psi1_member, rng};

fn poly_strategy(n: usize, max_exp: u32, max_terms: usize) -> impl Strategy<Value = RealSparsePoly> {
    prop::collection::vec((prop::collection::vec(0..=max_exp, n), -6i64..=6, 1i64..=4), 0..=max_terms).prop_map(
        move |terms| {
            let mut p = RealSparsePoly::zero(n);
            for (e, num, den) in terms {
                p.add_term(MultiIndex::new(e), ratio(num, den));
            }
            p
        },
    )
}

fn homogeneous_strategy(n: usize, degree: u32) -> impl Strategy<Value = RealSparsePoly> {
    let lattice = MultiIndex::all_of_degree(n, degree);
    let len = lattice.len();
    prop::collection::vec(-3i64..=3, len).prop_map(move |coefs| {
        RealSparsePoly::from_terms(n, lattice.iter().cloned().zip(coefs.into_iter().map(rat))).unwrap()
    })
}

fn gauss_strategy() -> impl Strategy<Value = GaussianRational> {
    (-3i64..=3, -3i64..=3).prop_map(|(a, b)| GaussianRational::new(rat(a), rat(b)))
}

fn hermitian_rows(dim: usize) -> impl Strategy<Value = Vec<Vec<GaussianRational>>> {
    (prop::collection::vec(gauss_strategy(), dim * dim), prop::collection::vec(-3i64..=3, dim)).prop_map(
        move |(raw, diag)| {
            let mut rows = vec![vec![GaussianRational::zero(); dim]; dim];
            for i in 0..dim {
                rows[i][i] = GaussianRational::real(rat(diag[i]));
                for j in i + 1..dim {
                    rows[i][j] = raw[i * dim + j].clone();
                    rows[j][i] = raw[i * dim + j].conj();
                }
            }
            rows
        },
    )
}

/// Unit upper times unit lower triangular, plus a nonzero diagonal scale.
fn invertible(dim: usize) -> impl Strategy<Value = Vec<Vec<GaussianRational>>> {
    (
        prop::collection::vec(gauss_strategy(), dim * dim),
        prop::collection::vec(gauss_strategy(), dim * dim),
        prop::collection::vec(prop_oneof![-3i64..=-1, 1i64..=3], dim),
    )
        .prop_map(move |(u, l, s)| {
            let mut out = vec![vec![GaussianRational::zero(); dim]; dim];
            for i in 0..dim {
                for j in 0..dim {
                    let mut acc = GaussianRational::zero();
                    for k in 0..dim {
                        let uik = if i == k { GaussianRational::one() } else if i < k { u[i * dim + k].clone() } else { continue };
                        let lkj = if k == j { GaussianRational::one() } else if k > j { l[k * dim + j].clone() } else { continue };
                        acc = &acc + &(&uik * &lkj);
                    }
                    out[i][j] = acc.scale(&rat(s[j]));
                }
            }
            out
        })
}

fn small_hermitian_poly() -> impl Strategy<Value = HermitianPoly> {
    let basis = MultiIndex::all_of_degree(2, 2);
    hermitian_rows(basis.len()).prop_map(move |rows| {
        let mut entries = Vec::new();
        for i in 0..basis.len() {
            for j in i..basis.len() {
                entries.push((basis[i].clone(), basis[j].clone(), rows[i][j].clone()));
            }
        }
        HermitianPoly::from_entries(2, entries).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn simplex_product_is_additive(p in poly_strategy(3, 3, 6), q in poly_strategy(3, 3, 6), d in 0u32..4) {
        let lhs = (&p + &q).multiply_by_simplex_power(d);
        let rhs = &p.multiply_by_simplex_power(d) + &q.multiply_by_simplex_power(d);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn simplex_power_matches_iteration_and_oracle(p in poly_strategy(3, 3, 5), d in 0u32..5) {
        let once = p.multiply_by_simplex_power(d);
        let stepped = (0..d).fold(p.clone(), |acc, _| acc.multiply_by_simplex_power(1));
        prop_assert_eq!(&once, &stepped);
        prop_assert_eq!(&once, &p.multiply_by_simplex_power_multinomial(d));
        let brute = brute_simplex_product(&p, d);
        let got: Vec<_> = once.terms().map(|(a, c)| (a.clone(), c.clone())).collect();
        let want: Vec<_> = brute.into_iter().collect();
        prop_assert_eq!(got, want);
    }

    #[test]
    fn homogeneous_product_degree(p in homogeneous_strategy(3, 3), d in 0u32..4) {
        let prod = p.multiply_by_simplex_power(d);
        prop_assert!(prod.support().all(|a| a.degree() == 3 + d));
    }

    #[test]
    fn unit_multiplier_is_simplex(p in poly_strategy(4, 2, 6)) {
        let units: Vec<_> = (0..4).map(|k| MultiIndex::unit(4, k)).collect();
        prop_assert_eq!(p.multiply_by_diagonal_multiplier(&units).unwrap(), p.multiply_by_simplex_power(1));
    }

    #[test]
    fn sign_counts_match_inertia(p in poly_strategy(3, 3, 8)) {
        let r = HermitianPoly::from_real_diagonal(&p);
        prop_assert_eq!(signature(&r).unwrap(), p.sign_counts());
    }

    #[test]
    fn sylvester_invariance(m in hermitian_rows(4), t in invertible(4)) {
        let a = HermitianMatrix::from_rows(m).unwrap();
        let b = HermitianMatrix::from_rows(a.congruent(&t)).unwrap();
        prop_assert_eq!(a.inertia(), b.inertia());
    }

    #[test]
    fn inertia_adds_over_direct_sums(m in hermitian_rows(3), k in hermitian_rows(2)) {
        let mut rows = vec![vec![GaussianRational::zero(); 5]; 5];
        for i in 0..3 { for j in 0..3 { rows[i][j] = m[i][j].clone(); } }
        for i in 0..2 { for j in 0..2 { rows[3 + i][3 + j] = k[i][j].clone(); } }
        let a = HermitianMatrix::from_rows(m).unwrap().inertia();
        let b = HermitianMatrix::from_rows(k).unwrap().inertia();
        let s = HermitianMatrix::from_rows(rows).unwrap().inertia();
        prop_assert_eq!((s.n_plus, s.n_minus, s.n_zero), (a.n_plus + b.n_plus, a.n_minus + b.n_minus, a.n_zero + b.n_zero));
    }

    #[test]
    fn psd_witness_is_sound_and_factorization_deterministic(m in hermitian_rows(4)) {
        let a = HermitianMatrix::from_rows(m).unwrap();
        match a.is_positive_semidefinite() {
            PsdCheck::No { witness, value } => {
                prop_assert!(value < Rational::zero());
                prop_assert_eq!(a.quadratic_form(&witness), value);
            }
            PsdCheck::Yes(_) => prop_assert_eq!(a.inertia().n_minus, 0),
        }
        prop_assert_eq!(a.congruence_factorization().pivot_log, a.congruence_factorization().pivot_log);
    }

    #[test]
    fn membership_nests_diagonal(p in homogeneous_strategy(3, 2), d in 0u32..4) {
        if in_psi_diagonal(&p, d).member {
            prop_assert!(in_psi_diagonal(&p, d + 1).member);
        }
    }

    #[test]
    fn membership_nests_hermitian(r in small_hermitian_poly(), d in 0u32..3) {
        if in_psi_hermitian(&r, d).unwrap().member {
            prop_assert!(in_psi_hermitian(&r, d + 1).unwrap().member);
        }
    }

    #[test]
    fn diagonal_and_hermitian_agree(p in homogeneous_strategy(2, 3), d in 0u32..4) {
        let diag = in_psi_diagonal(&p, d).member;
        let herm = in_psi_hermitian(&HermitianPoly::from_real_diagonal(&p), d).unwrap().member;
        prop_assert_eq!(diag, herm);
    }

    #[test]
    fn certificates_verify(p in homogeneous_strategy(2, 3), r in small_hermitian_poly(), d in 0u32..3) {
        for input in [AnyPoly::Real(p.clone()), AnyPoly::Hermitian(r.clone())] {
            let report = in_psi(&input, d).unwrap();
            prop_assert!(verify_certificate(&input, &report).unwrap());
        }
    }

    #[test]
    fn feasibility_matches_realization(seed in any::<u64>(), n in 2usize..=3, degree in 1u32..=3, d in 1u32..=2) {
        let pat = random_pattern(&mut rng(seed), n, degree);
        let feasible = support_feasible(&pat, d).is_feasible();
        let realized = realize_magnitudes(&pat, d);
        prop_assert_eq!(feasible, realized.is_ok());
        // independent check: with negatives at -1 and positives at one more
        // than the largest possible negative mass, the brute product is
        // nonnegative exactly when the pattern is feasible
        let big = rat(1 + pat.counts().n_minus as i64 * (n as i64).pow(d));
        let terms = pat.nonzero().map(|(a, s)| {
            (a.clone(), if s == psi_classes::search::Sign::Pos { big.clone() } else { rat(-1) })
        });
        let p = RealSparsePoly::from_terms(n, terms).unwrap();
        let oracle = brute_simplex_product(&p, d).values().all(|c| *c >= Rational::zero());
        prop_assert_eq!(feasible, oracle);
        if let Ok(q) = realized {
            prop_assert!(in_psi_diagonal(&q, d).member);
            prop_assert!(verify_ratio_bound(q.sign_counts(), n, d).satisfied);
        }
    }

    #[test]
    fn random_diagonal_members_have_certificates(seed in any::<u64>(), n in 2usize..=4, degree in 1u32..=4) {
        let p = random_diagonal_member(&mut rng(seed), n, degree);
        prop_assert!(in_psi_diagonal(&p, 1).member);
        let cert = pigeonhole_certificate(&p).unwrap();
        prop_assert!(cert.max_fiber < n);
        if let Some(b) = &cert.least_monomial {
            prop_assert!(!cert.fibers().contains_key(b));
        }
        let sig = p.sign_counts();
        prop_assert!(sig.n_minus == 0 || sig.n_minus < (n - 1) * sig.n_plus);
        prop_assert!(verify_ratio_bound(sig, n, 1).satisfied);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn hermitian_members_obey_the_ceiling(seed in any::<u64>()) {
        let r = random_psi1_member(&mut rng(seed));
        prop_assert!(in_psi_hermitian(&r, 1).unwrap().member);
        let report = verify_ratio_bound(signature(&r).unwrap(), r.nvars(), 1);
        prop_assert!(report.satisfied, "{:?}", report);
    }

    #[test]
    fn reduction_invariants(seed in any::<u64>()) {
        let r = random_psi1_member(&mut rng(seed));
        let form = DecomposedForm::from_hermitian(&r).unwrap();
        let red = partial_row_echelon(&form, &Tolerances::default()).unwrap();
        prop_assert!(is_partial_row_echelon(&red.form));
        let mut leads: Vec<usize> = red.form.plus_rows.iter().chain(&red.form.minus_rows)
            .filter_map(|row| row.iter().position(|z| z.norm() > 0.0))
            .collect();
        let total = leads.len();
        leads.sort();
        leads.dedup();
        prop_assert_eq!(leads.len(), total);
        prop_assert_eq!(red.form.signature(), signature(&r).unwrap());
        prop_assert!(red.reconstruction_error() <= 1e-9);
        for s in &red.steps {
            prop_assert!(s.j_defect() <= 1e-12 * s.norm_sqr());
        }
    }

    #[test]
    fn search_is_sound_and_deterministic(seed in any::<u64>(), degree in 3u32..=5, greedy in any::<bool>()) {
        let mut config = SearchConfig::new(if greedy { SearchStrategy::Greedy } else { SearchStrategy::Local });
        config.seed = seed;
        config.budget = 5_000;
        config.restarts = 2;
        let run = |c: &SearchConfig| match search_max_ratio(3, degree, 1, c) {
            Ok(r) => r,
            Err(psi_classes::Error::BudgetExhausted(r)) => *r,
            Err(e) => panic!("{e}"),
        };
        let a = run(&config);
        prop_assert_eq!(&a, &run(&config));
        prop_assert!(in_psi_diagonal(&a.realized, 1).member);
        prop_assert!(verify_ratio_bound(a.realized.sign_counts(), 3, 1).satisfied);
        prop_assert_eq!(SignPattern::from_poly(&a.realized).unwrap(), a.best);
    }
}

#[test]
fn pd_members_are_strictly_below_the_ceiling() {
    for n in 2..=4usize {
        for degree in 1..=14u32 {
            let p = generate_pd(n, degree);
            assert!(in_psi_diagonal(&p, 1).member, "n={n} D={degree}");
            let sig = p.sign_counts();
            assert!(sig.n_minus == 0 || sig.ratio().unwrap() < rat(n as i64 - 1), "n={n} D={degree}: {sig}");
        }
    }
}

#[test]
fn two_var_ratio_formula() {
    for d in 1..=4u32 {
        for m in 1..=5u32 {
            let p = generate_two_var(d, m).unwrap();
            let degree = (d + 1) * m;
            assert_eq!(p.sign_counts().ratio().unwrap(), ratio((d * degree) as i64, (degree + d + 1) as i64));
            assert!(in_psi_diagonal(&p, d).member, "d={d} m={m}");
            assert!(verify_ratio_bound(p.sign_counts(), 2, d).satisfied);
        }
    }
}

#[test]
fn inductive_ratio_rises_toward_its_limit() {
    for (d, nu) in [(2u32, 0u32), (2, 1), (3, 1)] {
        let mut last_ratio = 0.0;
        let mut last_gap = f64::INFINITY;
        for k in [6u32, 12, 24, 48] {
            let p = generate_inductive(3, d, k, Some(nu), true).unwrap();
            assert!(in_psi_diagonal(&p, d).member, "d={d} nu={nu} k={k}");
            assert!(verify_ratio_bound(p.sign_counts(), 3, d).satisfied);
            let r = p.sign_counts().ratio().unwrap().to_f64().unwrap();
            let base = generate_two_var(d - nu, k).unwrap().sign_counts().ratio().unwrap().to_f64().unwrap();
            let limit = nu as f64 + (nu as f64 + 1.0) * base;
            let gap = limit - r;
            assert!(r > last_ratio, "d={d} nu={nu} k={k}: ratio {r} not above {last_ratio}");
            assert!(gap > 0.0 && gap < last_gap, "d={d} nu={nu} k={k}: gap {gap} after {last_gap}");
            last_ratio = r;
            last_gap = gap;
        }
    }
}
