//! Sign patterns on the degree-`D` lattice: the covering test for
//! feasibility, exact magnitude realization, and searches maximizing
//! `N₋/N₊`.
//!
//! A pattern is feasible for power `d` when every product monomial
//! `A = β + δ` (`|δ| = d`) that receives a negative contributor also
//! receives a positive one. Feasibility is then realized by scaling all
//! positive coefficients to a common large value.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::generators::generate_pd;
use crate::poly::{rat, MultiIndex, Rational, RealSparsePoly, SignaturePair};

/// Largest candidate set the exhaustive strategy accepts.
pub const EXHAUSTIVE_MAX_POINTS: usize = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Neg,
    Zero,
    Pos,
}

/// Signs on the degree-`D` lattice of `n` variables. Points not stored are
/// `Zero`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignPattern {
    n: usize,
    degree: u32,
    signs: BTreeMap<MultiIndex, Sign>,
}

impl SignPattern {
    /// The all-zero pattern.
    pub fn new(n: usize, degree: u32) -> Self {
        assert!(n >= 1);
        SignPattern { n, degree, signs: BTreeMap::new() }
    }

    pub fn from_sets<P, N>(n: usize, degree: u32, pos: P, neg: N) -> Result<Self>
    where
        P: IntoIterator<Item = MultiIndex>,
        N: IntoIterator<Item = MultiIndex>,
    {
        let mut pat = Self::new(n, degree);
        for (points, sign) in [(pos.into_iter().collect::<Vec<_>>(), Sign::Pos), (neg.into_iter().collect(), Sign::Neg)] {
            for alpha in points {
                pat.check_point(&alpha)?;
                if pat.signs.insert(alpha.clone(), sign).is_some() {
                    return Err(Error::Parse(format!("point {alpha} listed twice")));
                }
            }
        }
        Ok(pat)
    }

    /// Signs of a homogeneous polynomial.
    pub fn from_poly(p: &RealSparsePoly) -> Result<Self> {
        if !p.is_homogeneous() {
            return Err(Error::NotHomogeneous);
        }
        let degree = p.degree().unwrap_or(0);
        Self::from_sets(p.nvars(), degree, p.positive_support(), p.negative_support())
    }

    fn check_point(&self, alpha: &MultiIndex) -> Result<()> {
        if alpha.len() != self.n {
            return Err(Error::LengthMismatch(alpha.clone(), alpha.len(), self.n));
        }
        if alpha.degree() != self.degree {
            return Err(Error::DegreeMismatch {
                alpha: alpha.clone(),
                found: alpha.degree(),
                expected: self.degree,
            });
        }
        Ok(())
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Every lattice point, ascending.
    pub fn lattice(&self) -> Vec<MultiIndex> {
        MultiIndex::all_of_degree(self.n, self.degree)
    }

    pub fn sign(&self, alpha: &MultiIndex) -> Sign {
        self.signs.get(alpha).copied().unwrap_or(Sign::Zero)
    }

    /// Panics if `alpha` is not a lattice point.
    pub fn set(&mut self, alpha: MultiIndex, sign: Sign) {
        self.check_point(&alpha).expect("point on the lattice");
        if sign == Sign::Zero {
            self.signs.remove(&alpha);
        } else {
            self.signs.insert(alpha, sign);
        }
    }

    /// Nonzero points with their signs, ascending.
    pub fn nonzero(&self) -> impl Iterator<Item = (&MultiIndex, Sign)> + '_ {
        self.signs.iter().map(|(a, s)| (a, *s))
    }

    pub fn positive(&self) -> impl Iterator<Item = &MultiIndex> + '_ {
        self.nonzero().filter(|(_, s)| *s == Sign::Pos).map(|(a, _)| a)
    }

    pub fn negative(&self) -> impl Iterator<Item = &MultiIndex> + '_ {
        self.nonzero().filter(|(_, s)| *s == Sign::Neg).map(|(a, _)| a)
    }

    pub fn counts(&self) -> SignaturePair {
        let pos = self.positive().count();
        SignaturePair::new(pos, self.signs.len() - pos)
    }

    /// `N₋/N₊`, or zero when there are no positives.
    pub fn ratio(&self) -> Rational {
        self.counts().ratio().unwrap_or_else(Rational::zero)
    }

    /// Signs over the whole lattice in ascending order; used for tie-breaks.
    pub fn key(&self) -> Vec<Sign> {
        self.lattice().iter().map(|a| self.sign(a)).collect()
    }
}

/// Outcome of the covering test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Feasibility {
    Feasible,
    /// The least product monomial with only negative contributors.
    Violated(MultiIndex),
}

impl Feasibility {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Feasibility::Feasible)
    }
}

/// Per-product contributor counts over a fixed list of points. Flipping a
/// point updates only the products it covers.
struct Evaluator {
    points: Vec<MultiIndex>,
    index: HashMap<MultiIndex, usize>,
    products: Vec<MultiIndex>,
    covers: Vec<Vec<usize>>,
    contributors: Vec<Vec<usize>>,
    pos: Vec<u32>,
    neg: Vec<u32>,
    bad: usize,
    signs: Vec<Sign>,
    n_pos: usize,
    n_neg: usize,
}

impl Evaluator {
    fn new(points: Vec<MultiIndex>, d: u32) -> Self {
        let n = points.first().map_or(1, |p| p.len());
        let deltas = MultiIndex::all_of_degree(n, d);
        let mut product_index: HashMap<MultiIndex, usize> = HashMap::new();
        let mut products = Vec::new();
        let mut covers = Vec::with_capacity(points.len());
        let mut contributors: Vec<Vec<usize>> = Vec::new();
        for (i, p) in points.iter().enumerate() {
            let mut cov = Vec::with_capacity(deltas.len());
            for delta in &deltas {
                let a = p.add(delta);
                let k = *product_index.entry(a.clone()).or_insert_with(|| {
                    products.push(a);
                    contributors.push(Vec::new());
                    products.len() - 1
                });
                contributors[k].push(i);
                cov.push(k);
            }
            covers.push(cov);
        }
        let m = products.len();
        let index = points.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        Evaluator {
            signs: vec![Sign::Zero; points.len()],
            points,
            index,
            products,
            covers,
            contributors,
            pos: vec![0; m],
            neg: vec![0; m],
            bad: 0,
            n_pos: 0,
            n_neg: 0,
        }
    }

    fn is_bad(&self, k: usize) -> bool {
        self.neg[k] > 0 && self.pos[k] == 0
    }

    fn set(&mut self, i: usize, sign: Sign) {
        let old = self.signs[i];
        if old == sign {
            return;
        }
        for j in 0..self.covers[i].len() {
            let k = self.covers[i][j];
            let was_bad = self.is_bad(k);
            match old {
                Sign::Pos => self.pos[k] -= 1,
                Sign::Neg => self.neg[k] -= 1,
                Sign::Zero => {}
            }
            match sign {
                Sign::Pos => self.pos[k] += 1,
                Sign::Neg => self.neg[k] += 1,
                Sign::Zero => {}
            }
            match (was_bad, self.is_bad(k)) {
                (false, true) => self.bad += 1,
                (true, false) => self.bad -= 1,
                _ => {}
            }
        }
        match old {
            Sign::Pos => self.n_pos -= 1,
            Sign::Neg => self.n_neg -= 1,
            Sign::Zero => {}
        }
        match sign {
            Sign::Pos => self.n_pos += 1,
            Sign::Neg => self.n_neg += 1,
            Sign::Zero => {}
        }
        self.signs[i] = sign;
    }

    fn load(&mut self, pat: &SignPattern) {
        for i in 0..self.points.len() {
            let s = pat.sign(&self.points[i]);
            self.set(i, s);
        }
    }

    fn feasible(&self) -> bool {
        self.bad == 0
    }

    fn pattern(&self, n: usize, degree: u32) -> SignPattern {
        let mut pat = SignPattern::new(n, degree);
        for (p, s) in self.points.iter().zip(&self.signs) {
            if *s != Sign::Zero {
                pat.signs.insert(p.clone(), *s);
            }
        }
        pat
    }

    fn counts(&self) -> (usize, usize) {
        (self.n_pos, self.n_neg)
    }
}

/// Compares `a.1/a.0` with `b.1/b.0` for `(pos, neg)` counts; no positives
/// ranks lowest.
fn cmp_ratio(a: (usize, usize), b: (usize, usize)) -> Ordering {
    match (a.0, b.0) {
        (0, 0) => Ordering::Equal,
        (0, _) => Ordering::Less,
        (_, 0) => Ordering::Greater,
        _ => (a.1 * b.0).cmp(&(b.1 * a.0)),
    }
}

fn nonzero_points(pat: &SignPattern) -> Vec<MultiIndex> {
    pat.nonzero().map(|(a, _)| a.clone()).collect()
}

/// Covering test for power `d`.
pub fn support_feasible(pat: &SignPattern, d: u32) -> Feasibility {
    let mut ev = Evaluator::new(nonzero_points(pat), d);
    ev.load(pat);
    (0..ev.products.len())
        .filter(|&k| ev.is_bad(k))
        .map(|k| ev.products[k].clone())
        .min()
        .map_or(Feasibility::Feasible, Feasibility::Violated)
}

/// Flips negatives to positives until the pattern is feasible: for each
/// uncovered product monomial, ascending, its largest negative contributor
/// becomes positive.
pub fn repair_pattern(pat: &SignPattern, d: u32) -> SignPattern {
    let mut ev = Evaluator::new(nonzero_points(pat), d);
    ev.load(pat);
    let mut order: Vec<usize> = (0..ev.products.len()).collect();
    order.sort_by(|&a, &b| ev.products[a].cmp(&ev.products[b]));
    for k in order {
        if ev.is_bad(k) {
            let i = *ev.contributors[k]
                .iter()
                .filter(|&&i| ev.signs[i] == Sign::Neg)
                .max_by(|&&a, &&b| ev.points[a].cmp(&ev.points[b]))
                .expect("a bad product has a negative contributor");
            ev.set(i, Sign::Pos);
        }
    }
    ev.pattern(pat.n, pat.degree)
}

/// Negatives get `-1`; positives get `1 +` the largest multinomial-weighted
/// negative mass entering any product monomial.
pub fn realize_magnitudes(pat: &SignPattern, d: u32) -> Result<RealSparsePoly> {
    if let Feasibility::Violated(a) = support_feasible(pat, d) {
        return Err(Error::Infeasible(a));
    }
    let mut mass: HashMap<MultiIndex, BigInt> = HashMap::new();
    let deltas: Vec<(MultiIndex, BigInt)> = MultiIndex::all_of_degree(pat.n, d)
        .into_iter()
        .map(|delta| {
            let w = BigInt::from(delta.multinomial());
            (delta, w)
        })
        .collect();
    for beta in pat.negative() {
        for (delta, w) in &deltas {
            *mass.entry(beta.add(delta)).or_default() += w;
        }
    }
    let m = rat(1) + Rational::from_integer(mass.into_values().max().unwrap_or_default());
    let terms = pat.nonzero().map(|(a, s)| {
        let c = if s == Sign::Pos { m.clone() } else { rat(-1) };
        (a.clone(), c)
    });
    RealSparsePoly::from_terms(pat.n, terms)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Strategy {
    Exhaustive,
    Greedy,
    Local,
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strategy::Exhaustive => "exhaustive",
            Strategy::Greedy => "greedy",
            Strategy::Local => "local",
        })
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "exhaustive" => Ok(Strategy::Exhaustive),
            "greedy" => Ok(Strategy::Greedy),
            "local" => Ok(Strategy::Local),
            other => Err(Error::Parse(format!("unknown strategy {other:?}"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub strategy: Strategy,
    /// Maximum number of pattern evaluations (GREEDY and LOCAL).
    pub budget: u64,
    pub seed: u64,
    /// Restricts nonzero signs to these lattice points; `None` means the
    /// whole lattice.
    pub support: Option<Vec<MultiIndex>>,
    /// Perturbation restarts after the first LOCAL climb.
    pub restarts: u32,
}

impl SearchConfig {
    pub fn new(strategy: Strategy) -> Self {
        SearchConfig { strategy, budget: 100_000, seed: 0, support: None, restarts: 8 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchResult {
    pub n: usize,
    pub degree: u32,
    pub d: u32,
    pub best: SignPattern,
    pub ratio: Rational,
    pub evaluations: u64,
    pub strategy: Strategy,
    pub seed: u64,
    pub realized: RealSparsePoly,
}

/// Best feasible pattern found under `config`. GREEDY and LOCAL report
/// [`Error::BudgetExhausted`] with the best pattern so far if the budget runs
/// out before their first run completes.
pub fn search_max_ratio(n: usize, degree: u32, d: u32, config: &SearchConfig) -> Result<SearchResult> {
    if n < 2 {
        return Err(Error::InvalidSearch("need at least two variables".into()));
    }
    if d < 1 {
        return Err(Error::InvalidSearch("power d must be at least 1".into()));
    }
    let points = match &config.support {
        Some(s) => {
            let probe = SignPattern::new(n, degree);
            let mut s = s.clone();
            for a in &s {
                probe.check_point(a)?;
            }
            s.sort();
            s.dedup();
            s
        }
        None => MultiIndex::all_of_degree(n, degree),
    };
    let (best, evaluations, complete) = match config.strategy {
        Strategy::Exhaustive => {
            let (pat, evals) = exhaustive(n, degree, d, &points)?;
            (pat, evals, true)
        }
        Strategy::Greedy => greedy(n, degree, d, points, config),
        Strategy::Local => local(n, degree, d, points, config),
    };
    let result = SearchResult {
        n,
        degree,
        d,
        ratio: best.ratio(),
        realized: realize_magnitudes(&best, d)?,
        best,
        evaluations,
        strategy: config.strategy,
        seed: config.seed,
    };
    if complete {
        Ok(result)
    } else {
        Err(Error::BudgetExhausted(Box::new(result)))
    }
}

/// Enumerates every positive set `P` within `points`. For fixed `P` the
/// largest admissible negative set is every other point all of whose
/// product monomials are covered by `P`, so this is optimal over all
/// patterns supported in `points`.
fn exhaustive(n: usize, degree: u32, d: u32, points: &[MultiIndex]) -> Result<(SignPattern, u64)> {
    let l = points.len();
    if l > EXHAUSTIVE_MAX_POINTS {
        return Err(Error::InvalidSearch(format!(
            "exhaustive search needs at most {EXHAUSTIVE_MAX_POINTS} candidate points, got {l}"
        )));
    }
    let ev = Evaluator::new(points.to_vec(), d);
    let product_masks: Vec<u32> = ev
        .contributors
        .iter()
        .map(|c| c.iter().fold(0u32, |m, &i| m | (1 << i)))
        .collect();
    let point_covers: Vec<Vec<u32>> = ev
        .covers
        .iter()
        .map(|cov| cov.iter().map(|&k| product_masks[k]).collect())
        .collect();
    let full: u32 = if l == 32 { u32::MAX } else { (1u32 << l) - 1 };
    let mut best: Option<(u32, u32)> = None;
    let mut evals = 0u64;
    for pmask in 1..=full {
        evals += 1;
        let mut nmask = 0u32;
        for i in 0..l {
            if pmask & (1 << i) == 0 && point_covers[i].iter().all(|&m| m & pmask != 0) {
                nmask |= 1 << i;
            }
        }
        let cand = (pmask, nmask);
        best = Some(match best {
            None => cand,
            Some(cur) => {
                let cc = (pmask.count_ones() as usize, nmask.count_ones() as usize);
                let bc = (cur.0.count_ones() as usize, cur.1.count_ones() as usize);
                match cmp_ratio(cc, bc) {
                    Ordering::Greater => cand,
                    Ordering::Less => cur,
                    Ordering::Equal => {
                        if mask_key(cand, l) < mask_key(cur, l) {
                            cand
                        } else {
                            cur
                        }
                    }
                }
            }
        });
    }
    let mut pat = SignPattern::new(n, degree);
    if let Some((pmask, nmask)) = best {
        for (i, p) in points.iter().enumerate() {
            if pmask & (1 << i) != 0 {
                pat.set(p.clone(), Sign::Pos);
            } else if nmask & (1 << i) != 0 {
                pat.set(p.clone(), Sign::Neg);
            }
        }
    }
    Ok((pat, evals))
}

fn mask_key((pmask, nmask): (u32, u32), l: usize) -> Vec<Sign> {
    (0..l)
        .map(|i| {
            if pmask & (1 << i) != 0 {
                Sign::Pos
            } else if nmask & (1 << i) != 0 {
                Sign::Neg
            } else {
                Sign::Zero
            }
        })
        .collect()
}

/// All positive, then in a seeded order: positive to negative where
/// feasible, then positive to zero where feasible and helpful.
fn greedy(n: usize, degree: u32, d: u32, points: Vec<MultiIndex>, config: &SearchConfig) -> (SignPattern, u64, bool) {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut ev = Evaluator::new(points, d);
    for i in 0..ev.points.len() {
        ev.set(i, Sign::Pos);
    }
    let mut order: Vec<usize> = (0..ev.points.len()).collect();
    order.shuffle(&mut rng);
    let mut evals = 0u64;
    for target in [Sign::Neg, Sign::Zero] {
        for &i in &order {
            if ev.signs[i] != Sign::Pos {
                continue;
            }
            if evals >= config.budget {
                return (ev.pattern(n, degree), evals, false);
            }
            evals += 1;
            let before = ev.counts();
            ev.set(i, target);
            if !ev.feasible() || cmp_ratio(ev.counts(), before) == Ordering::Less || ev.n_pos == 0 {
                ev.set(i, Sign::Pos);
            }
        }
    }
    (ev.pattern(n, degree), evals, true)
}

/// Moves available from one pattern.
#[derive(Clone, Copy, Debug)]
enum Move {
    Flip(usize, Sign),
    /// Translate by `e^plus - e^minus`; vacated points become positive.
    Shift(usize, usize),
}

struct Climber {
    ev: Evaluator,
    n: usize,
    evals: u64,
    budget: u64,
}

impl Climber {
    fn key(&self) -> Vec<Sign> {
        self.ev.signs.clone()
    }

    fn shift_signs(&self, plus: usize, minus: usize) -> Vec<Sign> {
        self.ev
            .points
            .iter()
            .map(|a| {
                let src = a.shifted(minus, plus);
                match src.and_then(|s| self.ev.index.get(&s)) {
                    Some(&j) => self.ev.signs[j],
                    None => Sign::Pos,
                }
            })
            .collect()
    }

    fn apply_signs(&mut self, signs: &[Sign]) {
        for (i, s) in signs.iter().enumerate() {
            self.ev.set(i, *s);
        }
    }

    /// Evaluates a move and reverts it. Returns the counts and key if the
    /// result is feasible.
    fn probe(&mut self, mv: Move) -> Option<((usize, usize), Vec<Sign>)> {
        self.evals += 1;
        match mv {
            Move::Flip(i, s) => {
                let old = self.ev.signs[i];
                self.ev.set(i, s);
                let out = self.ev.feasible().then(|| (self.ev.counts(), self.key()));
                self.ev.set(i, old);
                out
            }
            Move::Shift(plus, minus) => {
                let saved = self.ev.signs.clone();
                let shifted = self.shift_signs(plus, minus);
                self.apply_signs(&shifted);
                let out = self.ev.feasible().then(|| (self.ev.counts(), self.key()));
                self.apply_signs(&saved);
                out
            }
        }
    }

    fn apply(&mut self, mv: Move) {
        match mv {
            Move::Flip(i, s) => self.ev.set(i, s),
            Move::Shift(plus, minus) => {
                let shifted = self.shift_signs(plus, minus);
                self.apply_signs(&shifted);
            }
        }
    }

    /// Steepest ascent from the current (feasible) state. Returns false if
    /// the budget ran out first.
    fn climb(&mut self) -> bool {
        loop {
            let current = self.ev.counts();
            let mut moves: Vec<Move> = Vec::new();
            for i in 0..self.ev.points.len() {
                for s in [Sign::Neg, Sign::Zero, Sign::Pos] {
                    if s != self.ev.signs[i] {
                        moves.push(Move::Flip(i, s));
                    }
                }
            }
            for plus in 0..self.n {
                for minus in 0..self.n {
                    if plus != minus {
                        moves.push(Move::Shift(plus, minus));
                    }
                }
            }
            let mut best: Option<(Move, (usize, usize), Vec<Sign>)> = None;
            for mv in moves {
                if self.evals >= self.budget {
                    return false;
                }
                let Some((counts, key)) = self.probe(mv) else { continue };
                if cmp_ratio(counts, current) != Ordering::Greater {
                    continue;
                }
                let better = match &best {
                    None => true,
                    Some((_, bc, bk)) => match cmp_ratio(counts, *bc) {
                        Ordering::Greater => true,
                        Ordering::Equal => key < *bk,
                        Ordering::Less => false,
                    },
                };
                if better {
                    best = Some((mv, counts, key));
                }
            }
            match best {
                Some((mv, _, _)) => self.apply(mv),
                None => return true,
            }
        }
    }
}

/// Steepest ascent over sign flips and lattice shifts, started from the
/// signs of `p_D` and then from seeded perturbations of the incumbent.
fn local(n: usize, degree: u32, d: u32, points: Vec<MultiIndex>, config: &SearchConfig) -> (SignPattern, u64, bool) {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut ev = Evaluator::new(points, d);
    let start = generate_pd(n, degree.max(1));
    for i in 0..ev.points.len() {
        let c = start.coeff(&ev.points[i]);
        let s = if c > Rational::zero() { Sign::Pos } else if c < Rational::zero() { Sign::Neg } else { Sign::Zero };
        ev.set(i, s);
    }
    if !ev.feasible() {
        // a support restriction can break the p_D pattern; start all positive
        for i in 0..ev.points.len() {
            ev.set(i, Sign::Pos);
        }
    }
    let mut climber = Climber { ev, n, evals: 0, budget: config.budget };
    if !climber.climb() {
        return (climber.ev.pattern(n, degree), climber.evals, false);
    }
    let mut best = (climber.ev.counts(), climber.key());
    let len = climber.ev.points.len();
    for _ in 0..config.restarts {
        if len == 0 {
            break;
        }
        climber.apply_signs(&best.1.clone());
        let flips = 1 + rng.gen_range(0..(len / 10).max(1));
        for _ in 0..flips {
            let i = rng.gen_range(0..len);
            climber.ev.set(i, Sign::Pos);
        }
        let finished = climber.climb();
        let cand = (climber.ev.counts(), climber.key());
        let better = match cmp_ratio(cand.0, best.0) {
            Ordering::Greater => true,
            Ordering::Equal => cand.1 < best.1,
            Ordering::Less => false,
        };
        if better {
            best = cand;
        }
        if !finished {
            break;
        }
    }
    climber.apply_signs(&best.1);
    (climber.ev.pattern(n, degree), climber.evals, true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::ratio;

    fn mi(v: &[u32]) -> MultiIndex {
        MultiIndex::from(v)
    }

    fn fig1() -> SignPattern {
        SignPattern::from_sets(3, 2, [mi(&[2, 0, 0]), mi(&[0, 2, 0]), mi(&[1, 0, 1])], [mi(&[1, 1, 0])]).unwrap()
    }

    #[test]
    fn lone_negative_is_infeasible() {
        let pat = SignPattern::from_sets(2, 2, [], [mi(&[1, 1])]).unwrap();
        assert_eq!(support_feasible(&pat, 1), Feasibility::Violated(mi(&[1, 2])));
        assert!(matches!(realize_magnitudes(&pat, 1), Err(Error::Infeasible(_))));
    }

    #[test]
    fn figure_one_pattern_realizes() {
        let pat = fig1();
        assert!(support_feasible(&pat, 1).is_feasible());
        let p = realize_magnitudes(&pat, 1).unwrap();
        assert!(p.multiply_by_simplex_power(1).has_nonnegative_coefficients());
        assert_eq!(SignPattern::from_poly(&p).unwrap(), pat);
    }

    #[test]
    fn all_positive_realizes_trivially() {
        let mut pat = SignPattern::new(3, 3);
        for a in pat.lattice() {
            pat.set(a, Sign::Pos);
        }
        let p = realize_magnitudes(&pat, 2).unwrap();
        assert!(p.terms().all(|(_, c)| *c == rat(1)));
    }

    #[test]
    fn repair_fixes_a_lone_negative() {
        let pat = SignPattern::from_sets(2, 2, [mi(&[2, 0])], [mi(&[1, 1]), mi(&[0, 2])]).unwrap();
        assert!(!support_feasible(&pat, 1).is_feasible());
        let fixed = repair_pattern(&pat, 1);
        assert!(support_feasible(&fixed, 1).is_feasible());
        assert_eq!(fixed.sign(&mi(&[0, 2])), Sign::Pos);
        assert_eq!(fixed.sign(&mi(&[1, 1])), Sign::Neg);
    }

    #[test]
    fn exhaustive_n2_d4() {
        let res = search_max_ratio(2, 4, 1, &SearchConfig::new(Strategy::Exhaustive)).unwrap();
        assert!(res.ratio < rat(1));
        assert_eq!(res.ratio, ratio(2, 3));
        assert!(res.realized.multiply_by_simplex_power(1).has_nonnegative_coefficients());
    }

    #[test]
    fn exhaustive_rejects_large_lattice() {
        assert!(matches!(
            search_max_ratio(3, 6, 1, &SearchConfig::new(Strategy::Exhaustive)),
            Err(Error::InvalidSearch(_))
        ));
    }

    #[test]
    fn greedy_and_local_are_deterministic() {
        for strategy in [Strategy::Greedy, Strategy::Local] {
            let mut cfg = SearchConfig::new(strategy);
            cfg.seed = 7;
            cfg.budget = 20_000;
            let a = search_max_ratio(3, 5, 1, &cfg).unwrap();
            let b = search_max_ratio(3, 5, 1, &cfg).unwrap();
            assert_eq!(a, b);
            assert!(a.realized.multiply_by_simplex_power(1).has_nonnegative_coefficients());
        }
    }

    #[test]
    fn tiny_budget_reports_exhaustion() {
        let mut cfg = SearchConfig::new(Strategy::Local);
        cfg.budget = 3;
        match search_max_ratio(3, 6, 1, &cfg) {
            Err(Error::BudgetExhausted(best)) => {
                assert!(support_feasible(&best.best, 1).is_feasible());
                assert_eq!(best.evaluations, 3);
            }
            other => panic!("expected exhaustion, got {other:?}"),
        }
    }
}
