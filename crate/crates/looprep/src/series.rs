//! Truncated bivariate power series over exact integers, just enough for
//! coefficient extraction from rational generating functions.

use num::{BigInt, One, Zero};

/// Series in x, y truncated to total ordinates ≤ `deg` in each variable
/// (a (deg+1)×(deg+1) coefficient grid).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiSeries {
    deg: usize,
    coeffs: Vec<BigInt>,
}

impl BiSeries {
    pub fn zero(deg: usize) -> Self {
        BiSeries {
            deg,
            coeffs: vec![BigInt::zero(); (deg + 1) * (deg + 1)],
        }
    }

    pub fn one(deg: usize) -> Self {
        let mut s = Self::zero(deg);
        s.set(0, 0, BigInt::one());
        s
    }

    /// Monomial c·x^i·y^j.
    pub fn monomial(deg: usize, i: usize, j: usize, c: i64) -> Self {
        let mut s = Self::zero(deg);
        if i <= deg && j <= deg {
            s.set(i, j, BigInt::from(c));
        }
        s
    }

    pub fn deg(&self) -> usize {
        self.deg
    }

    pub fn coeff(&self, i: usize, j: usize) -> &BigInt {
        &self.coeffs[i * (self.deg + 1) + j]
    }

    fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.coeffs[i * (self.deg + 1) + j] = v;
    }

    pub fn add(&self, other: &BiSeries) -> BiSeries {
        assert_eq!(self.deg, other.deg);
        let mut out = self.clone();
        for (a, b) in out.coeffs.iter_mut().zip(&other.coeffs) {
            *a += b;
        }
        out
    }

    pub fn sub(&self, other: &BiSeries) -> BiSeries {
        assert_eq!(self.deg, other.deg);
        let mut out = self.clone();
        for (a, b) in out.coeffs.iter_mut().zip(&other.coeffs) {
            *a -= b;
        }
        out
    }

    pub fn mul(&self, other: &BiSeries) -> BiSeries {
        assert_eq!(self.deg, other.deg);
        let d = self.deg;
        let mut out = BiSeries::zero(d);
        for i1 in 0..=d {
            for j1 in 0..=d {
                let a = self.coeff(i1, j1);
                if a.is_zero() {
                    continue;
                }
                for i2 in 0..=(d - i1) {
                    for j2 in 0..=(d - j1) {
                        let b = other.coeff(i2, j2);
                        if b.is_zero() {
                            continue;
                        }
                        let idx = (i1 + i2) * (d + 1) + (j1 + j2);
                        out.coeffs[idx] += a * b;
                    }
                }
            }
        }
        out
    }

    /// Multiplicative inverse; requires constant term ±1 so the result
    /// stays integral.
    pub fn inverse(&self) -> BiSeries {
        let d = self.deg;
        let c00 = self.coeff(0, 0).clone();
        assert!(
            c00 == BigInt::one() || c00 == -BigInt::one(),
            "inverse requires unit constant term"
        );
        let mut inv = BiSeries::zero(d);
        // graded-lexicographic recursion on (a*b)(i,j) = [i=j=0]
        for i in 0..=d {
            for j in 0..=d {
                let mut acc = if i == 0 && j == 0 {
                    BigInt::one()
                } else {
                    BigInt::zero()
                };
                for k in 0..=i {
                    for l in 0..=j {
                        if k == 0 && l == 0 {
                            continue;
                        }
                        acc -= self.coeff(k, l) * inv.coeff(i - k, j - l);
                    }
                }
                inv.set(i, j, acc / &c00);
            }
        }
        inv
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_of_geometric() {
        // 1/(1-x) = sum x^i
        let f = BiSeries::one(6).sub(&BiSeries::monomial(6, 1, 0, 1));
        let inv = f.inverse();
        for i in 0..=6 {
            assert_eq!(*inv.coeff(i, 0), BigInt::one());
            if i > 0 {
                assert!(inv.coeff(0, i).is_zero() || i == 0);
            }
        }
        assert_eq!(f.mul(&inv), BiSeries::one(6));
    }

    #[test]
    fn delannoy_generating_function() {
        // 1/(1-x-y-xy) has the Delannoy numbers as coefficients
        let denom = BiSeries::one(8)
            .sub(&BiSeries::monomial(8, 1, 0, 1))
            .sub(&BiSeries::monomial(8, 0, 1, 1))
            .sub(&BiSeries::monomial(8, 1, 1, 1));
        let inv = denom.inverse();
        assert_eq!(*inv.coeff(2, 2), BigInt::from(13));
        assert_eq!(*inv.coeff(3, 3), BigInt::from(63));
    }
}
