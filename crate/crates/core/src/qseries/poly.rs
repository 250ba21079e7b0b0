use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::ser::{Serialize, SerializeSeq, Serializer};

use crate::error::{Error, Result};

/// Truncated power series in `q` with exact integer coefficients.
///
/// Holds exactly `trunc + 1` coefficients. Binary operations on operands
/// with different truncations work at the smaller one.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QPoly {
    coeffs: Vec<BigInt>,
}

impl QPoly {
    pub fn zero(trunc: u64) -> Self {
        QPoly {
            coeffs: vec![BigInt::zero(); trunc as usize + 1],
        }
    }

    pub fn one(trunc: u64) -> Self {
        Self::monomial(BigInt::one(), 0, trunc)
    }

    /// `coeff * q^exp`, or zero if `exp > trunc`.
    pub fn monomial(coeff: BigInt, exp: u64, trunc: u64) -> Self {
        let mut p = Self::zero(trunc);
        if exp <= trunc {
            p.coeffs[exp as usize] = coeff;
        }
        p
    }

    /// Builds a series from coefficients `c_0, c_1, ...`; the truncation is
    /// `coeffs.len() - 1`.
    ///
    /// # Panics
    /// If `coeffs` is empty.
    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        assert!(!coeffs.is_empty(), "a series keeps at least the constant term");
        QPoly { coeffs }
    }

    /// Small-integer convenience constructor. Missing coefficients up to
    /// `trunc` are zero; extra ones are dropped.
    pub fn from_i64s(coeffs: &[i64], trunc: u64) -> Self {
        let mut p = Self::zero(trunc);
        for (slot, &c) in p.coeffs.iter_mut().zip(coeffs) {
            *slot = BigInt::from(c);
        }
        p
    }

    /// Sparse constructor from `(exponent, coefficient)` pairs; repeated
    /// exponents accumulate.
    pub fn from_terms(terms: &[(u64, i64)], trunc: u64) -> Self {
        let mut p = Self::zero(trunc);
        for &(e, c) in terms {
            if e <= trunc {
                p.coeffs[e as usize] += c;
            }
        }
        p
    }

    pub fn trunc(&self) -> u64 {
        self.coeffs.len() as u64 - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    /// Coefficient of `q^n`, or `None` beyond the truncation.
    pub fn coeff(&self, n: u64) -> Option<&BigInt> {
        self.coeffs.get(n as usize)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Drops every degree above `trunc`.
    ///
    /// # Panics
    /// If `trunc` exceeds the current truncation; series are never
    /// silently extended.
    pub fn truncate(&self, trunc: u64) -> QPoly {
        assert!(
            trunc <= self.trunc(),
            "cannot extend a series known to q^{} up to q^{}",
            self.trunc(),
            trunc
        );
        QPoly {
            coeffs: self.coeffs[..=trunc as usize].to_vec(),
        }
    }

    pub fn lowest_degree(&self) -> Option<u64> {
        self.coeffs.iter().position(|c| !c.is_zero()).map(|n| n as u64)
    }

    /// Least `n` with a negative coefficient.
    pub fn first_negative(&self) -> Option<(u64, BigInt)> {
        self.coeffs
            .iter()
            .enumerate()
            .find(|(_, c)| c.is_negative())
            .map(|(n, c)| (n as u64, c.clone()))
    }

    pub fn is_nonnegative(&self) -> bool {
        self.first_negative().is_none()
    }

    /// Multiplicative inverse up to the truncation.
    pub fn invert(&self) -> Result<QPoly> {
        let a0 = &self.coeffs[0];
        let sign = if a0.is_one() {
            BigInt::one()
        } else if *a0 == -BigInt::one() {
            -BigInt::one()
        } else {
            return Err(Error::NonUnitConstantTerm(a0.to_string()));
        };
        let n = self.coeffs.len();
        let mut inv = vec![BigInt::zero(); n];
        inv[0] = sign.clone();
        for k in 1..n {
            let mut acc = BigInt::zero();
            for i in 1..=k {
                if !self.coeffs[i].is_zero() {
                    acc += &self.coeffs[i] * &inv[k - i];
                }
            }
            // a0 * g_k = -sum_{i>=1} a_i g_{k-i}, and 1/a0 = a0 for a0 = +-1
            inv[k] = -(acc * &sign);
        }
        Ok(QPoly { coeffs: inv })
    }

    /// In place: multiply by `1 / (1 - q^e)`.
    ///
    /// # Panics
    /// If `e == 0`.
    pub fn div_one_minus(&mut self, e: u64) {
        assert!(e > 0, "1/(1 - q^0) is not a power series");
        let e = e as usize;
        for n in e..self.coeffs.len() {
            let (lo, hi) = self.coeffs.split_at_mut(n);
            if !lo[n - e].is_zero() {
                hi[0] += &lo[n - e];
            }
        }
    }

    /// In place: multiply by `(1 - q^e)`.
    pub fn mul_one_minus(&mut self, e: u64) {
        self.mul_binomial(e, false);
    }

    /// In place: multiply by `(1 + q^e)`.
    pub fn mul_one_plus(&mut self, e: u64) {
        self.mul_binomial(e, true);
    }

    fn mul_binomial(&mut self, e: u64, plus: bool) {
        assert!(e > 0, "binomial factor needs a positive exponent");
        let e = e as usize;
        for n in (e..self.coeffs.len()).rev() {
            let (lo, hi) = self.coeffs.split_at_mut(n);
            if lo[n - e].is_zero() {
                continue;
            }
            if plus {
                hi[0] += &lo[n - e];
            } else {
                hi[0] -= &lo[n - e];
            }
        }
    }

    /// Multiply by `q^k`, keeping the truncation.
    pub fn shift_up(&self, k: u64) -> QPoly {
        let mut out = Self::zero(self.trunc());
        let k = k as usize;
        for (n, c) in self.coeffs.iter().enumerate() {
            if n + k < out.coeffs.len() {
                out.coeffs[n + k] = c.clone();
            }
        }
        out
    }

    /// Exact division by `q^k`. The result is known to degree `trunc - k`.
    pub fn shift_down(&self, k: u64) -> Result<QPoly> {
        if let Some(deg) = self.coeffs.iter().take(k as usize).position(|c| !c.is_zero()) {
            return Err(Error::Division {
                shift: k,
                degree: deg as u64,
            });
        }
        if k > self.trunc() {
            return Err(Error::Division {
                shift: k,
                degree: self.trunc(),
            });
        }
        Ok(QPoly {
            coeffs: self.coeffs[k as usize..].to_vec(),
        })
    }

    pub fn scale(&self, factor: &BigInt) -> QPoly {
        QPoly {
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    fn zip_with(&self, rhs: &QPoly, f: impl Fn(&BigInt, &BigInt) -> BigInt) -> QPoly {
        QPoly {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }
}

impl Add for &QPoly {
    type Output = QPoly;
    fn add(self, rhs: &QPoly) -> QPoly {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &QPoly {
    type Output = QPoly;
    fn sub(self, rhs: &QPoly) -> QPoly {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Mul for &QPoly {
    type Output = QPoly;

    /// Cauchy product, dropping degrees above the smaller truncation.
    fn mul(self, rhs: &QPoly) -> QPoly {
        let n = self.coeffs.len().min(rhs.coeffs.len());
        let mut out = vec![BigInt::zero(); n];
        for (i, a) in self.coeffs[..n].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs[..n - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        QPoly { coeffs: out }
    }
}

impl Neg for &QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        QPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for QPoly {
            type Output = QPoly;
            fn $method(self, rhs: QPoly) -> QPoly {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        -&self
    }
}

/// Coefficients from `q^0` to `q^trunc`, each as a decimal string.
impl Serialize for QPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.coeffs.len()))?;
        for c in &self.coeffs {
            seq.serialize_element(&c.to_string())?;
        }
        seq.end()
    }
}

/// Writes the nonzero terms in ascending degree, e.g. `1 + 2q - q^3`;
/// the zero series is written `0`.
impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let abs = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            match (n, abs.is_one()) {
                (0, _) => write!(f, "{abs}")?,
                (1, true) => write!(f, "q")?,
                (1, false) => write!(f, "{abs}q")?,
                (_, true) => write!(f, "q^{n}")?,
                (_, false) => write!(f, "{abs}q^{n}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64], n: u64) -> QPoly {
        QPoly::from_i64s(c, n)
    }

    #[test]
    fn difference_of_squares() {
        let f = p(&[1, 1], 5);
        let g = p(&[1, -1], 5);
        assert_eq!(&f * &g, p(&[1, 0, -1], 5));
    }

    #[test]
    fn hand_cauchy_product() {
        assert_eq!(&p(&[1, 1, 1], 2) * &p(&[1, 1], 2), p(&[1, 2, 2], 2));
    }

    #[test]
    fn identity_and_min_truncation() {
        let f = p(&[3, -1, 4, 1, -5], 4);
        assert_eq!(&f * &QPoly::one(4), f);
        let short = QPoly::one(2);
        assert_eq!((&f * &short).trunc(), 2);
        assert_eq!((&f + &short).trunc(), 2);
    }

    #[test]
    fn geometric_and_fibonacci_inverses() {
        assert_eq!(p(&[1, -1], 4).invert().unwrap(), p(&[1, 1, 1, 1, 1], 4));
        assert_eq!(QPoly::one(3).invert().unwrap(), QPoly::one(3));
        assert_eq!(
            p(&[1, -1, -1], 5).invert().unwrap(),
            p(&[1, 1, 2, 3, 5, 8], 5)
        );
        assert_eq!(p(&[-1, 1], 3).invert().unwrap(), p(&[-1, -1, -1, -1], 3));
    }

    #[test]
    fn non_unit_constant_term() {
        assert!(matches!(
            p(&[2, 1], 3).invert(),
            Err(Error::NonUnitConstantTerm(_))
        ));
        assert!(p(&[0, 1], 3).invert().is_err());
    }

    #[test]
    fn binomial_factors_agree_with_multiplication() {
        let mut f = p(&[1, 2, 0, -1, 3, 0, 1], 6);
        let g = f.clone();
        f.mul_one_minus(2);
        assert_eq!(f, &g * &p(&[1, 0, -1], 6));
        f.div_one_minus(2);
        assert_eq!(f, g);
        let mut h = g.clone();
        h.mul_one_plus(3);
        assert_eq!(h, &g * &p(&[1, 0, 0, 1], 6));
    }

    #[test]
    fn shifts() {
        let f = p(&[0, 0, 1, 2], 5);
        assert_eq!(f.shift_down(2).unwrap(), p(&[1, 2], 3));
        assert_eq!(
            f.shift_down(3),
            Err(Error::Division {
                shift: 3,
                degree: 2
            })
        );
        assert_eq!(p(&[1, 2], 3).shift_up(2), p(&[0, 0, 1, 2], 3));
    }

    #[test]
    fn display() {
        assert_eq!(QPoly::one(5).to_string(), "1");
        assert_eq!(QPoly::zero(2).to_string(), "0");
        assert_eq!(p(&[1, -1, 0, 2], 3).to_string(), "1 - q + 2q^3");
        assert_eq!(p(&[0, 0, -3], 3).to_string(), "-3q^2");
    }

    #[test]
    fn first_negative_scan() {
        assert_eq!(QPoly::zero(4).first_negative(), None);
        assert_eq!(
            p(&[1, 0, 2, -1, -5], 4).first_negative(),
            Some((3, BigInt::from(-1)))
        );
    }
}
