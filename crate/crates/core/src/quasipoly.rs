//! Quasi-polynomials: one polynomial with rational coefficients per residue
//! class of the argument modulo a period.

use std::fmt;

use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedMul, Zero};

use crate::error::{Error, Result};
use crate::poly::IntPolynomial;
use crate::scalar::{self, ExactInt};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuasiPolynomial<T: Clone + num_integer::Integer> {
    period: usize,
    /// `polys[i]` applies when `J ≡ i (mod period)`; coefficients by ascending power.
    polys: Vec<Vec<Ratio<T>>>,
}

impl<T: ExactInt> QuasiPolynomial<T> {
    pub fn new(polys: Vec<Vec<Ratio<T>>>) -> Self {
        assert!(!polys.is_empty(), "period must be positive");
        QuasiPolynomial {
            period: polys.len(),
            polys,
        }
    }

    pub fn period(&self) -> usize {
        self.period
    }

    pub fn residue_poly(&self, residue: usize) -> &[Ratio<T>] {
        &self.polys[residue % self.period]
    }

    /// Value at `j`; errors unless the value is an integer.
    pub fn eval(&self, j: u64) -> Result<T> {
        let x = Ratio::from_integer(scalar::lift::<T>(j as i128, "quasi-polynomial")?);
        let mut acc = Ratio::zero();
        for c in self.residue_poly((j % self.period as u64) as usize).iter().rev() {
            acc = acc
                .checked_mul(&x)
                .and_then(|v: Ratio<T>| v.checked_add(c))
                .ok_or(Error::Overflow("quasi-polynomial"))?;
        }
        if acc.is_integer() {
            Ok(acc.to_integer())
        } else {
            Err(Error::NonIntegral(j))
        }
    }
}

impl<T: ExactInt> fmt::Display for QuasiPolynomial<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.polys.iter().enumerate() {
            write!(f, "J ≡ {i:>2} (mod {}):", self.period)?;
            if p.iter().all(Zero::is_zero) {
                write!(f, " 0")?;
            }
            for (e, c) in p.iter().enumerate().rev() {
                if c.is_zero() {
                    continue;
                }
                match e {
                    0 => write!(f, " + ({c})")?,
                    1 => write!(f, " + ({c})J")?,
                    _ => write!(f, " + ({c})J^{e}")?,
                }
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// `scale * (J + r1)(J + r2) + constant` as rational coefficients.
fn scaled_quadratic<T: ExactInt>(scale: Ratio<T>, r1: i64, r2: i64, constant: i64) -> Vec<Ratio<T>> {
    let lin = |r: i64| IntPolynomial::<T>::from_terms(&[(0, r), (1, 1)]).expect("small");
    let quad = lin(r1).checked_mul(&lin(r2)).expect("small");
    let mut coeffs: Vec<Ratio<T>> = (0..=2)
        .map(|e| scale.clone() * Ratio::from_integer(quad.coeff(e)))
        .collect();
    coeffs[0] = coeffs[0].clone() + Ratio::from_integer(T::from_i64(constant).expect("small"));
    coeffs
}

/// Number of trivial zeros with magic number `J`, period 12: zero for even
/// `J`; `3/4 (J-1)(J-2)` for `J ≡ 1, 5`; the same plus 4 for `J ≡ 9`;
/// `3/4 (J+1)(J-4)` for `J ≡ 7, 11`; the same plus 4 for `J ≡ 3`.
pub fn trivial_zero_quasipoly<T: ExactInt>() -> QuasiPolynomial<T> {
    let three_quarters = Ratio::new(T::from_i64(3).expect("small"), T::from_i64(4).expect("small"));
    let polys = (0..12)
        .map(|residue| match residue {
            1 | 5 => scaled_quadratic(three_quarters.clone(), -1, -2, 0),
            9 => scaled_quadratic(three_quarters.clone(), -1, -2, 4),
            7 | 11 => scaled_quadratic(three_quarters.clone(), 1, -4, 0),
            3 => scaled_quadratic(three_quarters.clone(), 1, -4, 4),
            _ => vec![Ratio::zero()],
        })
        .collect();
    QuasiPolynomial::new(polys)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn trivial_zero_examples() {
        let q = trivial_zero_quasipoly::<i64>();
        assert_eq!(q.period(), 12);
        assert_eq!(q.eval(2).unwrap(), 0);
        assert_eq!(q.eval(3).unwrap(), 1);
        assert_eq!(q.eval(13).unwrap(), 99);
        assert_eq!(q.eval(15).unwrap(), 136);
        assert_eq!(q.eval(0).unwrap(), 0);
        assert_eq!(q.eval(1).unwrap(), 0);
        let b = trivial_zero_quasipoly::<BigInt>();
        assert_eq!(b.eval(15).unwrap(), BigInt::from(136));
    }

    #[test]
    fn values_are_nonnegative_integers() {
        let q = trivial_zero_quasipoly::<i64>();
        for j in 0..1000 {
            assert!(q.eval(j).unwrap() >= 0);
        }
    }

    #[test]
    fn non_integral_value_is_an_error() {
        let half = Ratio::new(1i64, 2);
        let q = QuasiPolynomial::new(vec![vec![Ratio::zero(), half]]);
        assert_eq!(q.eval(2).unwrap(), 1);
        assert_eq!(q.eval(3), Err(Error::NonIntegral(3)));
    }

    #[test]
    fn display_lists_every_class() {
        let text = trivial_zero_quasipoly::<i64>().to_string();
        assert_eq!(text.lines().count(), 12);
        assert!(text.contains("J ≡  1 (mod 12): + (3/4)J^2 + (-9/4)J + (3/2)"));
    }
}
