//! Dense univariate polynomials with integer coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

/// Integer polynomial stored densely, `coeffs[i]` being the coefficient of `λ^i`.
///
/// The coefficient vector never ends in a zero, so the zero polynomial is the
/// empty vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(into = "Vec<i64>", from = "Vec<i64>")]
pub struct Polynomial {
    coeffs: Vec<i64>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Polynomial { coeffs: vec![1] }
    }

    /// `c · λ^degree`.
    pub fn monomial(c: i64, degree: usize) -> Self {
        let mut coeffs = vec![0; degree + 1];
        coeffs[degree] = c;
        Polynomial::new(coeffs)
    }

    /// `λ - root`.
    pub fn linear(root: i64) -> Self {
        Polynomial::new(vec![-root, 1])
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> i64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x: i64) -> i64 {
        self.coeffs.iter().rev().fold(0, |acc, &c| acc * x + c)
    }

    /// Synthetic division by `λ - root`; returns quotient and remainder.
    pub fn div_rem_linear(&self, root: i64) -> (Polynomial, i64) {
        if self.coeffs.is_empty() {
            return (Polynomial::zero(), 0);
        }
        let n = self.coeffs.len();
        let mut quotient = vec![0; n - 1];
        let mut carry = 0i64;
        for i in (0..n).rev() {
            let value = self.coeffs[i] + carry * root;
            if i == 0 {
                return (Polynomial::new(quotient), value);
            }
            quotient[i - 1] = value;
            carry = value;
        }
        unreachable!()
    }

    /// Exact division by `λ - root`, `None` if there is a remainder.
    pub fn div_exact_linear(&self, root: i64) -> Option<Polynomial> {
        let (q, r) = self.div_rem_linear(root);
        (r == 0).then_some(q)
    }

    /// Multiplicity of `root` as a root. The zero polynomial reports `None`.
    pub fn root_multiplicity(&self, root: i64) -> Option<usize> {
        if self.is_zero() {
            return None;
        }
        let mut p = self.clone();
        let mut t = 0;
        while let Some(q) = p.div_exact_linear(root) {
            p = q;
            t += 1;
        }
        Some(t)
    }

    /// `self^e`.
    pub fn pow(&self, e: usize) -> Polynomial {
        (0..e).fold(Polynomial::one(), |acc, _| &acc * self)
    }
}

impl From<Vec<i64>> for Polynomial {
    fn from(v: Vec<i64>) -> Self {
        Polynomial::new(v)
    }
}

impl From<Polynomial> for Vec<i64> {
    fn from(p: Polynomial) -> Self {
        p.coeffs
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![0i64; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else { "+" };
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let a = c.abs();
            match (i, a) {
                (0, _) => write!(f, "{a}")?,
                (1, 1) => write!(f, "λ")?,
                (1, _) => write!(f, "{a}λ")?,
                (_, 1) => write!(f, "λ^{i}")?,
                _ => write!(f, "{a}λ^{i}")?,
            }
            first = false;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_and_eval() {
        let p = Polynomial::new(vec![2, -3, 1]);
        assert_eq!(p.to_string(), "λ^2 - 3λ + 2");
        assert_eq!(p.eval(1), 0);
        assert_eq!(p.eval(2), 0);
        assert_eq!(p.eval(3), 2);
        assert_eq!(Polynomial::new(vec![-1, 1]).to_string(), "λ - 1");
        assert_eq!(Polynomial::zero().to_string(), "0");
    }

    #[test]
    fn synthetic_division() {
        // (λ-1)^2 (λ-2)
        let p = &Polynomial::linear(1).pow(2) * &Polynomial::linear(2);
        assert_eq!(p.root_multiplicity(1), Some(2));
        let (q, r) = p.div_rem_linear(1);
        assert_eq!(r, 0);
        assert_eq!(q, &Polynomial::linear(1) * &Polynomial::linear(2));
        assert_eq!(Polynomial::new(vec![1, 1]).div_rem_linear(1), (Polynomial::one(), 2));
        assert_eq!(Polynomial::zero().root_multiplicity(1), None);
    }

    #[test]
    fn trailing_zeros_trimmed() {
        assert_eq!(Polynomial::new(vec![1, 0, 0]).degree(), Some(0));
        assert!(Polynomial::new(vec![0, 0]).is_zero());
        let p = Polynomial::new(vec![1, 2]);
        assert!((&p - &p).is_zero());
    }
}
