//! Truncated power-series arithmetic over complex coefficients in one to
//! three commuting variables.
//!
//! A [`TruncatedSeries`] stores a sparse map from exponent multi-indices to
//! complex coefficients, together with an explicit truncation order `N`
//! (maximum total degree retained). Binary operations assert that both
//! operands use the same number of variables and truncate the result to the
//! minimum of the two orders, so every truncation is auditable from the
//! value itself. Values are immutable after construction and all operations
//! are pure functions.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

/// Maximum number of commuting variables a series can carry.
pub const MAX_VARS: usize = 3;

/// Exponent multi-index. Unused trailing axes are always zero.
pub type Exponents = [u16; MAX_VARS];

fn total_degree(e: &Exponents) -> usize {
    e.iter().map(|&x| x as usize).sum()
}

/// A complex-coefficient power series truncated at a fixed total degree.
#[derive(Clone, PartialEq)]
pub struct TruncatedSeries {
    nvars: usize,
    order: usize,
    coeffs: BTreeMap<Exponents, Complex64>,
}

impl TruncatedSeries {
    /// The zero series in `nvars` variables, truncated at total degree `order`.
    pub fn zero(nvars: usize, order: usize) -> Self {
        assert!(
            (1..=MAX_VARS).contains(&nvars),
            "nvars must be in 1..={MAX_VARS}, got {nvars}"
        );
        Self {
            nvars,
            order,
            coeffs: BTreeMap::new(),
        }
    }

    /// Constant series with value `c`.
    pub fn constant(nvars: usize, order: usize, c: Complex64) -> Self {
        let mut s = Self::zero(nvars, order);
        if c != Complex64::ZERO {
            s.coeffs.insert([0, 0, 0], c);
        }
        s
    }

    /// The multiplicative identity.
    pub fn one(nvars: usize, order: usize) -> Self {
        Self::constant(nvars, order, Complex64::ONE)
    }

    /// Single monomial `coeff * x0^e0 x1^e1 ...`.
    ///
    /// Panics if the monomial degree exceeds `order` or uses an axis beyond
    /// `nvars`.
    pub fn monomial(nvars: usize, order: usize, exps: &[usize], coeff: Complex64) -> Self {
        assert_eq!(exps.len(), nvars, "exponent list must match nvars");
        let mut key = [0u16; MAX_VARS];
        for (i, &e) in exps.iter().enumerate() {
            key[i] = u16::try_from(e).expect("exponent too large");
        }
        assert!(
            total_degree(&key) <= order,
            "monomial degree {} exceeds truncation order {}",
            total_degree(&key),
            order
        );
        let mut s = Self::zero(nvars, order);
        if coeff != Complex64::ZERO {
            s.coeffs.insert(key, coeff);
        }
        s
    }

    /// One-variable series from the coefficient list `c[k] * x^k`.
    /// Coefficients beyond `order` are dropped.
    pub fn from_coeffs_1var(order: usize, coeffs: &[Complex64]) -> Self {
        let mut s = Self::zero(1, order);
        for (k, &c) in coeffs.iter().enumerate() {
            if k <= order && c != Complex64::ZERO {
                s.coeffs.insert([k as u16, 0, 0], c);
            }
        }
        s
    }

    /// Build from an iterator of `(exponents, coefficient)`. Terms over the
    /// truncation order are dropped; duplicate keys accumulate.
    pub fn from_terms<I>(nvars: usize, order: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Exponents, Complex64)>,
    {
        let mut s = Self::zero(nvars, order);
        for (e, c) in terms {
            if total_degree(&e) <= order {
                let entry = s.coeffs.entry(e).or_insert(Complex64::ZERO);
                *entry += c;
            }
        }
        s.coeffs.retain(|_, v| *v != Complex64::ZERO);
        s
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Coefficient of the given exponent multi-index (zero if absent).
    pub fn coefficient(&self, exps: &[usize]) -> Complex64 {
        assert_eq!(exps.len(), self.nvars, "exponent list must match nvars");
        let mut key = [0u16; MAX_VARS];
        for (i, &e) in exps.iter().enumerate() {
            key[i] = e as u16;
        }
        self.coeffs.get(&key).copied().unwrap_or(Complex64::ZERO)
    }

    /// Coefficient of `x^k` for a one-variable series.
    pub fn coeff1(&self, k: usize) -> Complex64 {
        assert_eq!(self.nvars, 1);
        self.coeffs
            .get(&[k as u16, 0, 0])
            .copied()
            .unwrap_or(Complex64::ZERO)
    }

    /// Iterate retained terms in deterministic (lexicographic) key order.
    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Complex64)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Largest coefficient magnitude; zero for the empty series.
    pub fn max_coeff_norm(&self) -> f64 {
        self.coeffs.values().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Coefficient-wise sum. Result order is `min(N_self, N_other)`.
    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(
            self.nvars, other.nvars,
            "cannot add series in different numbers of variables"
        );
        let order = self.order.min(other.order);
        let mut out = Self::zero(self.nvars, order);
        for (e, c) in self.coeffs.iter().chain(other.coeffs.iter()) {
            if total_degree(e) <= order {
                let entry = out.coeffs.entry(*e).or_insert(Complex64::ZERO);
                *entry += c;
            }
        }
        out.coeffs.retain(|_, v| *v != Complex64::ZERO);
        out
    }

    pub fn negate(&self) -> Self {
        let mut out = self.clone();
        for v in out.coeffs.values_mut() {
            *v = -*v;
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.negate())
    }

    /// Multiply every coefficient by `c`.
    pub fn scale(&self, c: Complex64) -> Self {
        if c == Complex64::ZERO {
            return Self::zero(self.nvars, self.order);
        }
        let mut out = self.clone();
        for v in out.coeffs.values_mut() {
            *v *= c;
        }
        out
    }

    /// Cauchy product truncated to `min(N_self, N_other)`.
    pub fn multiply(&self, other: &Self) -> Self {
        assert_eq!(
            self.nvars, other.nvars,
            "cannot multiply series in different numbers of variables"
        );
        let order = self.order.min(other.order);
        let mut acc: BTreeMap<Exponents, Complex64> = BTreeMap::new();
        for (ea, ca) in &self.coeffs {
            let da = total_degree(ea);
            if da > order {
                continue;
            }
            for (eb, cb) in &other.coeffs {
                if da + total_degree(eb) > order {
                    continue;
                }
                let mut key = [0u16; MAX_VARS];
                for i in 0..MAX_VARS {
                    key[i] = ea[i] + eb[i];
                }
                let entry = acc.entry(key).or_insert(Complex64::ZERO);
                *entry += ca * cb;
            }
        }
        acc.retain(|_, v| *v != Complex64::ZERO);
        Self {
            nvars: self.nvars,
            order,
            coeffs: acc,
        }
    }

    /// Term-wise partial derivative along `axis`. The truncation order drops
    /// by one (a degree-N coefficient can no longer be trusted after the
    /// degree-(N+1) information was discarded).
    pub fn differentiate(&self, axis: usize) -> Self {
        assert!(axis < self.nvars, "axis {axis} out of range");
        let order = self.order.saturating_sub(1);
        let mut out = Self::zero(self.nvars, order);
        for (e, c) in &self.coeffs {
            if e[axis] == 0 {
                continue;
            }
            let mut key = *e;
            key[axis] -= 1;
            if total_degree(&key) <= order {
                out.coeffs
                    .insert(key, c * Complex64::new(e[axis] as f64, 0.0));
            }
        }
        out
    }

    /// Rescale the argument along `axis`: the coefficient of `x_axis^j` is
    /// multiplied by `lambda^j`. Monomials are eigenvectors of this map.
    pub fn scale_argument(&self, axis: usize, lambda: Complex64) -> Self {
        assert!(axis < self.nvars, "axis {axis} out of range");
        let mut powers = Vec::with_capacity(self.order + 2);
        powers.push(Complex64::ONE);
        let max_e = self
            .coeffs
            .keys()
            .map(|e| e[axis] as usize)
            .max()
            .unwrap_or(0);
        for _ in 0..max_e {
            let last = *powers.last().unwrap();
            powers.push(last * lambda);
        }
        let mut out = Self::zero(self.nvars, self.order);
        for (e, c) in &self.coeffs {
            let val = c * powers[e[axis] as usize];
            if val != Complex64::ZERO {
                out.coeffs.insert(*e, val);
            }
        }
        out
    }

    /// Evaluate the truncated polynomial at a point. For one variable this is
    /// a Horner sweep; in several variables powers are cached per axis.
    pub fn evaluate(&self, point: &[Complex64]) -> Complex64 {
        assert_eq!(point.len(), self.nvars, "point dimension must match nvars");
        if self.nvars == 1 {
            let mut acc = Complex64::ZERO;
            for k in (0..=self.order).rev() {
                acc = acc * point[0] + self.coeff1(k);
            }
            return acc;
        }
        let mut powers: Vec<Vec<Complex64>> = Vec::with_capacity(self.nvars);
        for &x in point {
            let mut v = Vec::with_capacity(self.order + 1);
            v.push(Complex64::ONE);
            for _ in 0..self.order {
                let last = *v.last().unwrap();
                v.push(last * x);
            }
            powers.push(v);
        }
        let mut acc = Complex64::ZERO;
        for (e, c) in &self.coeffs {
            let mut term = *c;
            for (axis, p) in powers.iter().enumerate() {
                term *= p[e[axis] as usize];
            }
            acc += term;
        }
        acc
    }

    /// Lower the truncation order, discarding higher-degree terms.
    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order);
        let mut out = Self::zero(self.nvars, order);
        for (e, c) in &self.coeffs {
            if total_degree(e) <= order {
                out.coeffs.insert(*e, *c);
            }
        }
        out
    }

    /// Drop coefficients with magnitude at or below `threshold`. Retained
    /// coefficients are untouched.
    pub fn prune(&self, threshold: f64) -> Self {
        let mut out = self.clone();
        out.coeffs.retain(|_, v| v.norm() > threshold);
        out
    }
}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruncatedSeries(nvars={}, N={};", self.nvars, self.order)?;
        for (e, c) in self.coeffs.iter().take(12) {
            write!(f, " [{},{},{}]:{:.6e}+{:.6e}i", e[0], e[1], e[2], c.re, c.im)?;
        }
        if self.coeffs.len() > 12 {
            write!(f, " ... {} terms", self.coeffs.len())?;
        }
        write!(f, ")")
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        TruncatedSeries::add(self, rhs)
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        TruncatedSeries::sub(self, rhs)
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        TruncatedSeries::multiply(self, rhs)
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        self.negate()
    }
}
