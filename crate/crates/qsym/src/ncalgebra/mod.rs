//! Non-commutative polynomial engine over the generators
//! `{x, y, z, dx, dy, dz}` with q-commutation rewrite rules.
//!
//! Canonical (normal-ordered) form puts coordinates before derivatives, each
//! block sorted `x < y < z`. The rule set, oriented toward that order:
//!
//! - `x_j x_i -> q^{-1} x_i x_j` for `i < j`,
//! - `d_j d_i -> q d_i d_j` for `i < j`,
//! - `d_i x_j -> q x_j d_i` for `i != j`,
//! - `d_i x_i -> 1 + q^2 x_i d_i + (q^2 - 1) sum_{j>i} x_j d_j`.
//!
//! Coefficients are Laurent polynomials in `q` ([`QLaurent`]), so identity
//! checks distinguish true zeros from cancellation noise. The module is a
//! verifier: residuals of printed identities are reported, never "fixed".

mod matrix;
mod qlaurent;

pub use matrix::{
    enumerate_conventions, matrix_algebra_check, Convention, Mat2, MatrixReport, ReflectionAxis,
};
pub use qlaurent::{QLaurent, COEFF_TOL};

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::dilation::{sqrt_spectrum, SqrtBranch};
use crate::qcore::Deformation;
use crate::series::TruncatedSeries;

/// A generator of the algebra: three coordinates, three derivatives.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Gen {
    X,
    Y,
    Z,
    Dx,
    Dy,
    Dz,
}

impl Gen {
    pub const ALL: [Gen; 6] = [Gen::X, Gen::Y, Gen::Z, Gen::Dx, Gen::Dy, Gen::Dz];

    /// Position in the canonical order (coordinates first, then derivatives).
    pub fn rank(self) -> usize {
        match self {
            Gen::X => 0,
            Gen::Y => 1,
            Gen::Z => 2,
            Gen::Dx => 3,
            Gen::Dy => 4,
            Gen::Dz => 5,
        }
    }

    pub fn is_derivative(self) -> bool {
        self.rank() >= 3
    }

    pub fn axis(self) -> usize {
        self.rank() % 3
    }

    fn coordinate(axis: usize) -> Gen {
        [Gen::X, Gen::Y, Gen::Z][axis]
    }

    fn derivative(axis: usize) -> Gen {
        [Gen::Dx, Gen::Dy, Gen::Dz][axis]
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Gen::X => "x",
            Gen::Y => "y",
            Gen::Z => "z",
            Gen::Dx => "dx",
            Gen::Dy => "dy",
            Gen::Dz => "dz",
        }
    }
}

/// An ordered word over the generators (empty word = scalar).
pub type Word = Vec<Gen>;

fn is_descent(a: Gen, b: Gen) -> bool {
    match (a.is_derivative(), b.is_derivative()) {
        (false, false) | (true, true) => a.rank() > b.rank(),
        (false, true) => false,
        (true, false) => true,
    }
}

fn word_is_canonical(w: &[Gen]) -> bool {
    w.windows(2).all(|p| !is_descent(p[0], p[1]))
}

/// A finite sum of coefficient-weighted words.
#[derive(Clone, PartialEq, Default)]
pub struct NCPoly {
    terms: BTreeMap<Word, QLaurent>,
    canonical: bool,
}

impl NCPoly {
    pub fn zero() -> Self {
        NCPoly {
            terms: BTreeMap::new(),
            canonical: true,
        }
    }

    pub fn one() -> Self {
        NCPoly::word(QLaurent::one(), vec![])
    }

    pub fn gen(g: Gen) -> Self {
        NCPoly::word(QLaurent::one(), vec![g])
    }

    pub fn word(coeff: QLaurent, letters: Word) -> Self {
        let mut terms = BTreeMap::new();
        let canonical = word_is_canonical(&letters);
        if !coeff.is_zero() {
            terms.insert(letters, coeff);
        }
        NCPoly { terms, canonical }
    }

    pub fn scalar(c: Complex64) -> Self {
        NCPoly::word(QLaurent::scalar(c), vec![])
    }

    pub fn is_canonical(&self) -> bool {
        self.canonical
    }

    pub fn is_zero(&self) -> bool {
        self.terms.values().all(|c| c.is_zero())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &QLaurent)> {
        self.terms.iter()
    }

    pub fn max_coeff_norm(&self) -> f64 {
        self.terms.values().map(|c| c.max_norm()).fold(0.0, f64::max)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (w, c) in &other.terms {
            let entry = terms.entry(w.clone()).or_insert_with(QLaurent::zero);
            *entry = &*entry + c;
        }
        terms.retain(|_, c| !c.is_zero());
        let canonical = terms.keys().all(|w| word_is_canonical(w));
        NCPoly { terms, canonical }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -&*c;
        }
        out
    }

    pub fn scale(&self, c: &QLaurent) -> Self {
        let mut terms = BTreeMap::new();
        for (w, v) in &self.terms {
            let prod = v * c;
            if !prod.is_zero() {
                terms.insert(w.clone(), prod);
            }
        }
        let canonical = terms.keys().all(|w| word_is_canonical(w));
        NCPoly { terms, canonical }
    }

    /// Free product: concatenate words, multiply coefficients. The result is
    /// generally not canonical.
    pub fn mul(&self, other: &Self) -> Self {
        let mut terms: BTreeMap<Word, QLaurent> = BTreeMap::new();
        for (wa, ca) in &self.terms {
            for (wb, cb) in &other.terms {
                let mut w = wa.clone();
                w.extend_from_slice(wb);
                let prod = ca * cb;
                let entry = terms.entry(w).or_insert_with(QLaurent::zero);
                *entry = &*entry + &prod;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        let canonical = terms.keys().all(|w| word_is_canonical(w));
        NCPoly { terms, canonical }
    }

    /// Evaluate every coefficient at a concrete `q`.
    pub fn eval_coeffs(&self, q: Complex64) -> Vec<(Word, Complex64)> {
        self.terms
            .iter()
            .map(|(w, c)| (w.clone(), c.eval(q)))
            .collect()
    }
}

impl fmt::Display for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (w, c) in &self.terms {
            if !first {
                write!(f, "  +  ")?;
            }
            first = false;
            write!(f, "({c})")?;
            for g in w {
                write!(f, " {}", g.symbol())?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Replacement for the adjacent pair `(a, b)` when it violates the canonical
/// order; `None` when `a b` is already ordered. `dims` bounds the sum in the
/// `d_i x_i` rule (3 for the full space, 2 for the quantum plane).
fn rewrite_pair(a: Gen, b: Gen, dims: usize) -> Option<Vec<(QLaurent, Word)>> {
    if !is_descent(a, b) {
        return None;
    }
    match (a.is_derivative(), b.is_derivative()) {
        // coordinate pair out of order: x_j x_i = q^{-1} x_i x_j (i < j)
        (false, false) => Some(vec![(QLaurent::qpow(-1), vec![b, a])]),
        // derivative pair out of order: d_j d_i = q d_i d_j (i < j)
        (true, true) => Some(vec![(QLaurent::qpow(1), vec![b, a])]),
        (false, true) => unreachable!("not a descent"),
        // derivative before coordinate
        (true, false) => {
            let i = a.axis();
            let j = b.axis();
            if i != j {
                Some(vec![(QLaurent::qpow(1), vec![b, a])])
            } else {
                // d_i x_i = 1 + q^2 x_i d_i + (q^2 - 1) sum_{m > i} x_m d_m
                let q2 = QLaurent::qpow(2);
                let q2m1 = &QLaurent::qpow(2) - &QLaurent::one();
                let mut out = vec![
                    (QLaurent::one(), vec![]),
                    (q2, vec![Gen::coordinate(i), Gen::derivative(i)]),
                ];
                for m in (i + 1)..dims {
                    out.push((q2m1.clone(), vec![Gen::coordinate(m), Gen::derivative(m)]));
                }
                Some(out)
            }
        }
    }
}

/// Where in a word the next rewrite is applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    LeftmostDescent,
    RightmostDescent,
}

/// The q-commutation rule set. The rules themselves are fixed; the struct
/// carries the number of dimensions the `d_i x_i` sum runs over (3 for the
/// full space, 2 for the quantum plane), the application strategy, and a
/// step budget that doubles as the termination assertion.
#[derive(Debug, Clone)]
pub struct RewriteSystem {
    pub dims: usize,
    pub strategy: Strategy,
    pub max_steps: usize,
}

impl Default for RewriteSystem {
    fn default() -> Self {
        RewriteSystem {
            dims: 3,
            strategy: Strategy::LeftmostDescent,
            max_steps: 20_000_000,
        }
    }
}

impl RewriteSystem {
    pub fn with_strategy(strategy: Strategy) -> Self {
        RewriteSystem {
            strategy,
            ..Default::default()
        }
    }

    /// The two-dimensional (quantum plane) restriction of the rules.
    pub fn plane() -> Self {
        RewriteSystem {
            dims: 2,
            ..Default::default()
        }
    }
}

/// Exhaustively rewrite into canonical form. Terminates because every rule
/// either strictly reduces the number of derivative-before-coordinate
/// inversions or keeps it fixed while reducing same-class disorder (the
/// scalar branch of the `d_i x_i` rule reduces degree outright).
pub fn normal_order(p: &NCPoly, rules: &RewriteSystem) -> NCPoly {
    let mut canonical: BTreeMap<Word, QLaurent> = BTreeMap::new();
    let mut work: Vec<(Word, QLaurent)> = p
        .terms()
        .map(|(w, c)| (w.clone(), c.clone()))
        .collect();
    let mut steps = 0usize;
    while let Some((word, coeff)) = work.pop() {
        steps += 1;
        assert!(
            steps <= rules.max_steps,
            "rewrite budget exceeded: non-terminating rule application?"
        );
        let descent = match rules.strategy {
            Strategy::LeftmostDescent => {
                (0..word.len().saturating_sub(1)).find(|&i| is_descent(word[i], word[i + 1]))
            }
            Strategy::RightmostDescent => (0..word.len().saturating_sub(1))
                .rev()
                .find(|&i| is_descent(word[i], word[i + 1])),
        };
        match descent {
            None => {
                let entry = canonical.entry(word).or_insert_with(QLaurent::zero);
                *entry = &*entry + &coeff;
            }
            Some(i) => {
                let replacements = rewrite_pair(word[i], word[i + 1], rules.dims).unwrap();
                for (factor, mid) in replacements {
                    let mut w = Vec::with_capacity(word.len() + mid.len());
                    w.extend_from_slice(&word[..i]);
                    w.extend_from_slice(&mid);
                    w.extend_from_slice(&word[i + 2..]);
                    work.push((w, &coeff * &factor));
                }
            }
        }
    }
    canonical.retain(|_, c| !c.is_zero());
    NCPoly {
        terms: canonical,
        canonical: true,
    }
}

/// `normal_order(a b - b a)`.
pub fn commutator(a: &NCPoly, b: &NCPoly, rules: &RewriteSystem) -> NCPoly {
    normal_order(&a.mul(b).sub(&b.mul(a)), rules)
}

/// `normal_order(lhs - rhs)`: the residual of a printed identity. Zero means
/// the identity holds in the algebra; anything else is the deliverable.
pub fn verify_identity(lhs: &NCPoly, rhs: &NCPoly, rules: &RewriteSystem) -> NCPoly {
    normal_order(&lhs.sub(rhs), rules)
}

/// Confluence fuzz report.
#[derive(Debug, Clone)]
pub struct FuzzReport {
    pub trials: usize,
    pub divergences: usize,
    pub max_rewrite_terms: usize,
}

/// Random words normal-ordered under both strategies must agree exactly.
pub fn confluence_fuzz(seed: u64, trials: usize, max_degree: usize) -> FuzzReport {
    let mut rng = StdRng::seed_from_u64(seed);
    let left = RewriteSystem::with_strategy(Strategy::LeftmostDescent);
    let right = RewriteSystem::with_strategy(Strategy::RightmostDescent);
    let mut divergences = 0;
    let mut max_rewrite_terms = 0;
    for _ in 0..trials {
        let len = rng.random_range(1..=max_degree);
        let word: Word = (0..len)
            .map(|_| Gen::ALL[rng.random_range(0..6)])
            .collect();
        let p = NCPoly::word(QLaurent::one(), word);
        let a = normal_order(&p, &left);
        let b = normal_order(&p, &right);
        max_rewrite_terms = max_rewrite_terms.max(a.num_terms());
        if !a.sub(&b).is_zero() {
            divergences += 1;
        }
    }
    FuzzReport {
        trials,
        divergences,
        max_rewrite_terms,
    }
}

/// Apply a word to a 3-variable series with *classical* semantics
/// (coordinates multiply, derivatives differentiate). Independent oracle for
/// the `q = 1` limit of the rewrite system.
pub fn apply_word_classical(word: &[Gen], f: &TruncatedSeries) -> TruncatedSeries {
    let mut out = f.clone();
    for g in word.iter().rev() {
        out = if g.is_derivative() {
            out.differentiate(g.axis())
        } else {
            // multiply by the coordinate: shift the exponent directly
            let terms: Vec<_> = out
                .terms()
                .filter(|(e, _)| (e[0] as usize + e[1] as usize + e[2] as usize) < out.order())
                .map(|(e, c)| {
                    let mut key = *e;
                    key[g.axis()] += 1;
                    (key, *c)
                })
                .collect();
            TruncatedSeries::from_terms(3, out.order(), terms)
        };
    }
    out
}

/// Apply an [`NCPoly`] with classical semantics at a concrete `q`.
pub fn apply_poly_classical(p: &NCPoly, q: Complex64, f: &TruncatedSeries) -> TruncatedSeries {
    let mut acc = TruncatedSeries::zero(3, f.order());
    for (w, c) in p.terms() {
        let applied = apply_word_classical(w, f);
        acc = acc.add(&applied.scale(c.eval(q)));
    }
    acc
}

/// Apply a word in the *diagonal representation*: coordinates act as
/// `x_i Q_i` and derivatives as the matching composite `Q`-operators, the
/// concrete realization whose defining relations are exactly the rewrite
/// rules. Monomials map to scalar multiples of monomials, so this gives an
/// independent check of the whole rule set at deformed `q`.
pub fn apply_word_diagonal(
    word: &[Gen],
    d: &Deformation,
    degrees: [usize; 3],
) -> Option<(Complex64, [usize; 3])> {
    let branch = SqrtBranch::InversionAtPi;
    let mut deg = degrees;
    let mut coeff = Complex64::ONE;
    for g in word.iter().rev() {
        let axis = g.axis();
        if g.is_derivative() {
            if deg[axis] == 0 {
                return None; // the monomial is annihilated
            }
            // d first, then Q(d_axis), then plain q-powers of later axes
            coeff *= Complex64::new(deg[axis] as f64, 0.0);
            deg[axis] -= 1;
            coeff *= sqrt_spectrum(d, branch, deg[axis]);
            let later: usize = deg[axis + 1..].iter().sum();
            coeff *= d.qpow_int(later as i64);
        } else {
            // Q_axis first, then multiply by the coordinate
            coeff *= sqrt_spectrum(d, branch, deg[axis]);
            let later: usize = deg[axis + 1..].iter().sum();
            coeff *= d.qpow_int(later as i64);
            deg[axis] += 1;
        }
    }
    Some((coeff, deg))
}

/// Apply an [`NCPoly`] in the diagonal representation to a monomial,
/// collecting the (coefficient, degrees) images of every term.
pub fn apply_poly_diagonal(
    p: &NCPoly,
    d: &Deformation,
    degrees: [usize; 3],
) -> BTreeMap<[usize; 3], Complex64> {
    let mut acc: BTreeMap<[usize; 3], Complex64> = BTreeMap::new();
    for (w, c) in p.terms() {
        if let Some((coeff, deg)) = apply_word_diagonal(w, d, degrees) {
            *acc.entry(deg).or_insert(Complex64::ZERO) += coeff * c.eval(d.q());
        }
    }
    acc.retain(|_, v| v.norm() > 1e-14);
    acc
}

/// The plane operators used by the closure checks: `p_x = -i q^2 dx`,
/// `p_y = -i q dy`, `L_z = -i q (q y dx - x dy)`.
pub fn plane_momentum_x() -> NCPoly {
    NCPoly::word(QLaurent::term(Complex64::new(0.0, -1.0), 2), vec![Gen::Dx])
}

pub fn plane_momentum_y() -> NCPoly {
    NCPoly::word(QLaurent::term(Complex64::new(0.0, -1.0), 1), vec![Gen::Dy])
}

pub fn plane_angular_momentum() -> NCPoly {
    let minus_iq2 = QLaurent::term(Complex64::new(0.0, -1.0), 2);
    let plus_iq = QLaurent::term(Complex64::new(0.0, 1.0), 1);
    NCPoly::word(minus_iq2, vec![Gen::Y, Gen::Dx])
        .add(&NCPoly::word(plus_iq, vec![Gen::X, Gen::Dy]))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rules() -> RewriteSystem {
        RewriteSystem::default()
    }

    fn q_at(q: Complex64, p: &NCPoly) -> Vec<(Word, Complex64)> {
        p.eval_coeffs(q)
            .into_iter()
            .filter(|(_, c)| c.norm() > 1e-12)
            .collect()
    }

    #[test]
    fn single_rule_applications() {
        // yx -> q^{-1} xy
        let yx = NCPoly::word(QLaurent::one(), vec![Gen::Y, Gen::X]);
        let nf = normal_order(&yx, &rules());
        assert_eq!(nf.num_terms(), 1);
        let (w, c) = nf.terms().next().unwrap();
        assert_eq!(w, &vec![Gen::X, Gen::Y]);
        assert_eq!(c, &QLaurent::qpow(-1));

        // dx x -> 1 + q^2 x dx + (q^2-1) y dy + (q^2-1) z dz
        let dxx = NCPoly::word(QLaurent::one(), vec![Gen::Dx, Gen::X]);
        let nf = normal_order(&dxx, &rules());
        assert_eq!(nf.num_terms(), 4);
        let q2m1 = &QLaurent::qpow(2) - &QLaurent::one();
        for (w, c) in nf.terms() {
            match w.as_slice() {
                [] => assert_eq!(c, &QLaurent::one()),
                [Gen::X, Gen::Dx] => assert_eq!(c, &QLaurent::qpow(2)),
                [Gen::Y, Gen::Dy] | [Gen::Z, Gen::Dz] => assert_eq!(c, &q2m1),
                other => panic!("unexpected word {other:?}"),
            }
        }

        // classical limit: dx x -> 1 + x dx
        let at_one = q_at(Complex64::ONE, &nf);
        assert_eq!(at_one.len(), 2);
    }

    #[test]
    fn linearity_of_normal_order() {
        let r = rules();
        let a = NCPoly::word(QLaurent::one(), vec![Gen::Dy, Gen::X, Gen::Dx, Gen::Y]);
        let b = NCPoly::word(QLaurent::one(), vec![Gen::Dz, Gen::Z, Gen::Dz]);
        let alpha = QLaurent::term(Complex64::new(2.0, 1.0), 1);
        let beta = QLaurent::term(Complex64::new(-1.0, 0.5), -2);
        let lhs = normal_order(&a.scale(&alpha).add(&b.scale(&beta)), &r);
        let rhs = normal_order(&a, &r)
            .scale(&alpha)
            .add(&normal_order(&b, &r).scale(&beta));
        assert!(lhs.sub(&rhs).is_zero());
    }

    #[test]
    fn commutator_basics() {
        let r = rules();
        // [dx, dy] has normal form (q^{-1} - ... ) dx dy; at q = 1 it vanishes
        let c = commutator(&NCPoly::gen(Gen::Dx), &NCPoly::gen(Gen::Dy), &r);
        assert!(q_at(Complex64::ONE, &c).is_empty());
        // [a, a] = 0 identically
        let a = NCPoly::word(QLaurent::qpow(1), vec![Gen::X, Gen::Dy, Gen::Z]);
        assert!(commutator(&a, &a, &r).is_zero());
    }

    #[test]
    fn euclidean_algebra_at_q_one() {
        // R = y dx - x dy, P_x = dx, P_y = dy:
        // [R, P_x] = P_y, [R, P_y] = -P_x, [P_x, P_y] = 0 at q = 1
        let r = rules();
        let rot = NCPoly::word(QLaurent::one(), vec![Gen::Y, Gen::Dx]).sub(&NCPoly::word(
            QLaurent::one(),
            vec![Gen::X, Gen::Dy],
        ));
        let px = NCPoly::gen(Gen::Dx);
        let py = NCPoly::gen(Gen::Dy);

        let c1 = commutator(&rot, &px, &r);
        let c1_at_1: BTreeMap<Word, Complex64> = q_at(Complex64::ONE, &c1).into_iter().collect();
        assert_eq!(c1_at_1.len(), 1);
        assert!((c1_at_1[&vec![Gen::Dy]] - Complex64::ONE).norm() < 1e-14);

        let c2 = commutator(&rot, &py, &r);
        let c2_at_1: BTreeMap<Word, Complex64> = q_at(Complex64::ONE, &c2).into_iter().collect();
        assert_eq!(c2_at_1.len(), 1);
        assert!((c2_at_1[&vec![Gen::Dx]] + Complex64::ONE).norm() < 1e-14);

        let c3 = commutator(&px, &py, &r);
        assert!(q_at(Complex64::ONE, &c3).is_empty());
    }

    #[test]
    fn exchange_relations_verify_to_zero() {
        // p_x y = q y p_x and p_y x = q x p_y, symbolically in q
        let r = rules();
        let px = plane_momentum_x();
        let py = plane_momentum_y();
        let y = NCPoly::gen(Gen::Y);
        let x = NCPoly::gen(Gen::X);

        let lhs = px.mul(&y);
        let rhs = y.mul(&px).scale(&QLaurent::qpow(1));
        assert!(verify_identity(&lhs, &rhs, &r).is_zero());

        let lhs = py.mul(&x);
        let rhs = x.mul(&py).scale(&QLaurent::qpow(1));
        assert!(verify_identity(&lhs, &rhs, &r).is_zero());

        // p_y p_x = q p_x p_y
        let lhs = py.mul(&px);
        let rhs = px.mul(&py).scale(&QLaurent::qpow(1));
        assert!(verify_identity(&lhs, &rhs, &r).is_zero());
    }

    #[test]
    fn confluence_on_small_words() {
        // degree-1 words are trivially confluent; a deterministic fuzz pass
        // over random degree <= 6 words must show zero divergences
        let report = confluence_fuzz(7, 1000, 6);
        assert_eq!(report.divergences, 0);
        assert_eq!(report.trials, 1000);
    }

    #[test]
    fn classical_oracle_matches_engine_at_q_one() {
        // engine normal form evaluated at q = 1 must act on polynomials
        // exactly like the original word under classical semantics
        let mut rng = StdRng::seed_from_u64(11);
        let r = rules();
        let basis: Vec<TruncatedSeries> = (0..4)
            .map(|i| {
                TruncatedSeries::monomial(3, 12, &[i % 3, (i + 1) % 3, i % 2], Complex64::ONE)
            })
            .collect();
        for _ in 0..500 {
            let len = rng.random_range(1..=5);
            let word: Word = (0..len)
                .map(|_| Gen::ALL[rng.random_range(0..6)])
                .collect();
            let p = NCPoly::word(QLaurent::one(), word.clone());
            let nf = normal_order(&p, &r);
            for f in &basis {
                let direct = apply_word_classical(&word, f);
                let via_nf = apply_poly_classical(&nf, Complex64::ONE, f);
                assert!(
                    direct.sub(&via_nf).max_coeff_norm() < 1e-10,
                    "word {word:?} disagrees with classical collection"
                );
            }
        }
    }

    #[test]
    fn rewrite_terminates_within_budget() {
        // worst-case degree-10 word: all derivatives before all coordinates
        let word: Word = vec![
            Gen::Dz,
            Gen::Dy,
            Gen::Dx,
            Gen::Dx,
            Gen::Dy,
            Gen::Z,
            Gen::Z,
            Gen::Y,
            Gen::X,
            Gen::X,
        ];
        let p = NCPoly::word(QLaurent::one(), word);
        let nf = normal_order(&p, &rules());
        assert!(nf.is_canonical());
        assert!(nf.num_terms() > 0);
    }
}
