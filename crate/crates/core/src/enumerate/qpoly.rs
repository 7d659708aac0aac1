//! Polynomials in q with big-integer coefficients.

use std::fmt;
use std::ops::{Add, Mul};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Coefficients in ascending powers of q, without trailing zeros. The zero
/// polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QPolynomial {
    coeffs: Vec<BigInt>,
}

impl QPolynomial {
    pub fn new(coeffs: Vec<BigInt>) -> QPolynomial {
        let mut p = QPolynomial { coeffs };
        p.trim();
        p
    }

    pub fn from_i64s(coeffs: &[i64]) -> QPolynomial {
        QPolynomial::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> QPolynomial {
        QPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> QPolynomial {
        QPolynomial::monomial(0)
    }

    /// q^k.
    pub fn monomial(k: usize) -> QPolynomial {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = BigInt::one();
        QPolynomial { coeffs }
    }

    /// [k] = 1 + q + … + q^(k−1).
    pub fn q_integer(k: usize) -> QPolynomial {
        QPolynomial::new(vec![BigInt::one(); k])
    }

    /// Gaussian binomial coefficient, by the recurrence
    /// [m, k] = [m−1, k−1] + q^k [m−1, k].
    pub fn q_binomial(m: usize, k: usize) -> QPolynomial {
        if k > m {
            return QPolynomial::zero();
        }
        // row[j] holds [i, j] for the current i.
        let mut row = vec![QPolynomial::one()];
        for i in 1..=m {
            let mut next = Vec::with_capacity(i + 1);
            for j in 0..=i.min(k) {
                let mut p = if j < row.len() {
                    row[j].shift(j)
                } else {
                    QPolynomial::zero()
                };
                if j > 0 {
                    p = &p + &row[j - 1];
                }
                next.push(p);
            }
            row = next;
        }
        row.swap_remove(k)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    /// Multiply by q^k.
    fn shift(&self, k: usize) -> QPolynomial {
        if self.is_zero() {
            return QPolynomial::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        QPolynomial { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, q: i64) -> BigInt {
        let q = BigInt::from(q);
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * &q + c)
    }

    /// Exact division; fails unless `divisor` divides `self` with integer
    /// quotient and zero remainder.
    pub fn div_exact(&self, divisor: &QPolynomial) -> Result<QPolynomial> {
        let d = divisor.degree().ok_or(Error::InexactDivision)?;
        let lead = &divisor.coeffs[d];
        let mut rem = self.coeffs.clone();
        if rem.len() <= d {
            return if self.is_zero() {
                Ok(QPolynomial::zero())
            } else {
                Err(Error::InexactDivision)
            };
        }
        let mut quot = vec![BigInt::zero(); rem.len() - d];
        for i in (0..quot.len()).rev() {
            let top = &rem[i + d];
            if top.is_zero() {
                continue;
            }
            if !(top % lead).is_zero() {
                return Err(Error::InexactDivision);
            }
            let c = top / lead;
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[i + j] -= &c * dc;
            }
            quot[i] = c;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(Error::InexactDivision);
        }
        Ok(QPolynomial::new(quot))
    }

    /// Space-separated coefficients in ascending order; `0` for the zero
    /// polynomial.
    pub fn coefficient_string(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.coeffs
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl Add for &QPolynomial {
    type Output = QPolynomial;

    fn add(self, rhs: &QPolynomial) -> QPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let zero = BigInt::zero();
        let coeffs = (0..n)
            .map(|i| self.coeffs.get(i).unwrap_or(&zero) + rhs.coeffs.get(i).unwrap_or(&zero))
            .collect();
        QPolynomial::new(coeffs)
    }
}

impl Mul for &QPolynomial {
    type Output = QPolynomial;

    fn mul(self, rhs: &QPolynomial) -> QPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return QPolynomial::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        QPolynomial::new(coeffs)
    }
}

impl fmt::Display for QPolynomial {
    /// Human-readable form such as `1 + q^3 + 2q^8`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let negative = c < &BigInt::zero();
            let abs = if negative { -c } else { c.clone() };
            match (first, negative) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            first = false;
            let unit = abs.is_one();
            match k {
                0 => write!(f, "{abs}")?,
                1 if unit => f.write_str("q")?,
                1 => write!(f, "{abs}q")?,
                _ if unit => write!(f, "q^{k}")?,
                _ => write!(f, "{abs}q^{k}")?,
            }
        }
        Ok(())
    }
}

/// The q-analogue [2] / ([n+1][2n+1]) · [3n choose n] of the fish count,
/// equivalently [2] / ([2n+1][3n+1]) · [3n+1 choose n+1].
pub fn g_polynomial(n: usize) -> Result<QPolynomial> {
    let numerator = &QPolynomial::q_integer(2) * &QPolynomial::q_binomial(3 * n, n);
    let denominator = &QPolynomial::q_integer(n + 1) * &QPolynomial::q_integer(2 * n + 1);
    numerator.div_exact(&denominator)
}
