//! Laurent polynomials in the deformation parameter `q` with complex
//! coefficients — the coefficient ring for symbolic identity verification.
//!
//! All identity checks in this crate involve integer (or Gaussian-integer)
//! coefficients of small height, so double-precision arithmetic on them is
//! exact and a symbolic zero really is a zero.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

/// Threshold below which a coefficient counts as zero. Integer-height
/// arithmetic is exact, so this only guards against explicit cancellation.
pub const COEFF_TOL: f64 = 1e-12;

/// `sum_n c_n q^n` with `n` ranging over (possibly negative) integers.
#[derive(Clone, PartialEq, Default)]
pub struct QLaurent {
    terms: BTreeMap<i64, Complex64>,
}

impl QLaurent {
    pub fn zero() -> Self {
        QLaurent::default()
    }

    pub fn one() -> Self {
        QLaurent::scalar(Complex64::ONE)
    }

    pub fn scalar(c: Complex64) -> Self {
        let mut terms = BTreeMap::new();
        if c != Complex64::ZERO {
            terms.insert(0, c);
        }
        QLaurent { terms }
    }

    /// `q^n`.
    pub fn qpow(n: i64) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(n, Complex64::ONE);
        QLaurent { terms }
    }

    /// `c * q^n`.
    pub fn term(c: Complex64, n: i64) -> Self {
        let mut terms = BTreeMap::new();
        if c != Complex64::ZERO {
            terms.insert(n, c);
        }
        QLaurent { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.values().all(|c| c.norm() <= COEFF_TOL)
    }

    pub fn max_norm(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Evaluate at a concrete `q != 0`.
    pub fn eval(&self, q: Complex64) -> Complex64 {
        self.terms
            .iter()
            .map(|(&n, &c)| c * q.powi(n as i32))
            .sum()
    }

    pub fn scale(&self, c: Complex64) -> Self {
        if c == Complex64::ZERO {
            return QLaurent::zero();
        }
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v *= c;
        }
        out
    }

    /// Multiply by `q^n` (shift all exponents).
    pub fn shift(&self, n: i64) -> Self {
        QLaurent {
            terms: self.terms.iter().map(|(&k, &v)| (k + n, v)).collect(),
        }
    }

    fn normalized(mut self) -> Self {
        self.terms.retain(|_, c| *c != Complex64::ZERO);
        self
    }
}

impl Add for &QLaurent {
    type Output = QLaurent;
    fn add(self, rhs: &QLaurent) -> QLaurent {
        let mut out = self.clone();
        for (&n, &c) in &rhs.terms {
            *out.terms.entry(n).or_insert(Complex64::ZERO) += c;
        }
        out.normalized()
    }
}

impl Sub for &QLaurent {
    type Output = QLaurent;
    fn sub(self, rhs: &QLaurent) -> QLaurent {
        self + &(-rhs)
    }
}

impl Neg for &QLaurent {
    type Output = QLaurent;
    fn neg(self) -> QLaurent {
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v = -*v;
        }
        out
    }
}

impl Mul for &QLaurent {
    type Output = QLaurent;
    fn mul(self, rhs: &QLaurent) -> QLaurent {
        let mut out = QLaurent::zero();
        for (&na, &ca) in &self.terms {
            for (&nb, &cb) in &rhs.terms {
                *out.terms.entry(na + nb).or_insert(Complex64::ZERO) += ca * cb;
            }
        }
        out.normalized()
    }
}

impl fmt::Debug for QLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for QLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&n, &c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let coeff = if c.im == 0.0 {
                format!("{}", c.re)
            } else if c.re == 0.0 {
                format!("{}i", c.im)
            } else {
                format!("({}+{}i)", c.re, c.im)
            };
            match n {
                0 => write!(f, "{coeff}")?,
                1 => write!(f, "{coeff}*q")?,
                _ => write!(f, "{coeff}*q^{n}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_and_eval() {
        let a = &QLaurent::qpow(2) - &QLaurent::one(); // q^2 - 1
        let b = &QLaurent::qpow(-1) + &QLaurent::qpow(1); // q^{-1} + q
        let prod = &a * &b; // q^3 + q - q^{-1} - q
        let q = Complex64::new(0.7, 0.3);
        let direct = (q.powi(2) - Complex64::ONE) * (q.inv() + q);
        assert!((prod.eval(q) - direct).norm() < 1e-14);

        assert!((&a - &a).is_zero());
        assert!(!a.is_zero());
        assert_eq!(a.shift(3), &QLaurent::qpow(5) - &QLaurent::qpow(3));
    }
}
