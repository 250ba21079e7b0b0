use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::QPoly;

/// Truncated series in `(z, q)` with exact coefficients.
///
/// Stored as one row per q-degree `n <= trunc`, each row dense in the
/// z-exponent `m` with trailing zeros trimmed. Every product built here
/// has `m <= n / (smallest generator)`, so rows stay short.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZQPoly {
    rows: Vec<Vec<BigInt>>,
}

impl ZQPoly {
    pub fn zero(trunc: u64) -> Self {
        ZQPoly {
            rows: vec![Vec::new(); trunc as usize + 1],
        }
    }

    pub fn one(trunc: u64) -> Self {
        let mut p = Self::zero(trunc);
        p.rows[0].push(BigInt::one());
        p
    }

    pub fn trunc(&self) -> u64 {
        self.rows.len() as u64 - 1
    }

    /// Coefficient of `z^m q^n` (zero beyond the stored range).
    pub fn coeff(&self, m: u64, n: u64) -> BigInt {
        self.rows
            .get(n as usize)
            .and_then(|r| r.get(m as usize))
            .cloned()
            .unwrap_or_default()
    }

    /// The coefficients of `q^n`, indexed by z-exponent.
    pub fn row(&self, n: u64) -> &[BigInt] {
        &self.rows[n as usize]
    }

    pub fn max_z_degree(&self) -> u64 {
        self.rows
            .iter()
            .map(|r| r.len().saturating_sub(1) as u64)
            .max()
            .unwrap_or(0)
    }

    /// Iterates nonzero coefficients as `(m, n, value)` in `(n, m)` order.
    pub fn terms(&self) -> impl Iterator<Item = (u64, u64, &BigInt)> + '_ {
        self.rows.iter().enumerate().flat_map(|(n, row)| {
            row.iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(move |(m, c)| (m as u64, n as u64, c))
        })
    }

    /// Lexicographically least `(n, m)` with a negative coefficient,
    /// returned as `(m, n, value)`.
    pub fn first_negative(&self) -> Option<(u64, u64, BigInt)> {
        self.negatives().next()
    }

    /// All negative coefficients in `(n, m)` order.
    pub fn negatives(&self) -> impl Iterator<Item = (u64, u64, BigInt)> + '_ {
        self.terms()
            .filter(|(_, _, c)| c.is_negative())
            .map(|(m, n, c)| (m, n, c.clone()))
    }

    /// Sets `z = 1`.
    pub fn at_z_one(&self) -> QPoly {
        QPoly::from_coeffs(
            self.rows
                .iter()
                .map(|r| r.iter().fold(BigInt::zero(), |acc, c| acc + c))
                .collect(),
        )
    }

    /// In place: multiply by `1 / (1 - z^[z] q^e)`.
    pub fn div_one_minus(&mut self, e: u64, z: bool) {
        assert!(e > 0, "generator exponent must be positive");
        let e = e as usize;
        for n in e..self.rows.len() {
            let (lo, hi) = self.rows.split_at_mut(n);
            add_shifted(&mut hi[0], &lo[n - e], z);
        }
    }

    /// In place: multiply by `(1 + z^[z] q^e)`.
    pub fn mul_one_plus(&mut self, e: u64, z: bool) {
        assert!(e > 0, "generator exponent must be positive");
        let e = e as usize;
        for n in (e..self.rows.len()).rev() {
            let (lo, hi) = self.rows.split_at_mut(n);
            add_shifted(&mut hi[0], &lo[n - e], z);
        }
    }

    fn combine(&self, rhs: &ZQPoly, negate_rhs: bool) -> ZQPoly {
        let n = self.rows.len().min(rhs.rows.len());
        let rows = (0..n)
            .map(|i| {
                let (a, b) = (&self.rows[i], &rhs.rows[i]);
                let mut row = vec![BigInt::zero(); a.len().max(b.len())];
                for (slot, c) in row.iter_mut().zip(a) {
                    *slot += c;
                }
                for (slot, c) in row.iter_mut().zip(b) {
                    if negate_rhs {
                        *slot -= c;
                    } else {
                        *slot += c;
                    }
                }
                trim(&mut row);
                row
            })
            .collect();
        ZQPoly { rows }
    }
}

fn add_shifted(dst: &mut Vec<BigInt>, src: &[BigInt], z: bool) {
    let dz = usize::from(z);
    if src.is_empty() {
        return;
    }
    if dst.len() < src.len() + dz {
        dst.resize(src.len() + dz, BigInt::zero());
    }
    for (m, c) in src.iter().enumerate() {
        if !c.is_zero() {
            dst[m + dz] += c;
        }
    }
}

fn trim(row: &mut Vec<BigInt>) {
    while row.last().is_some_and(Zero::is_zero) {
        row.pop();
    }
}

impl Add for &ZQPoly {
    type Output = ZQPoly;
    fn add(self, rhs: &ZQPoly) -> ZQPoly {
        self.combine(rhs, false)
    }
}

impl Sub for &ZQPoly {
    type Output = ZQPoly;
    fn sub(self, rhs: &ZQPoly) -> ZQPoly {
        self.combine(rhs, true)
    }
}

impl Neg for &ZQPoly {
    type Output = ZQPoly;
    fn neg(self) -> ZQPoly {
        ZQPoly {
            rows: self
                .rows
                .iter()
                .map(|r| r.iter().map(|c| -c).collect())
                .collect(),
        }
    }
}

impl Add for ZQPoly {
    type Output = ZQPoly;
    fn add(self, rhs: ZQPoly) -> ZQPoly {
        &self + &rhs
    }
}

impl Sub for ZQPoly {
    type Output = ZQPoly;
    fn sub(self, rhs: ZQPoly) -> ZQPoly {
        &self - &rhs
    }
}
