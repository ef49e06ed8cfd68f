//! Binomial coefficients over any [`ExactInt`] with the zero convention
//! outside `0 <= k <= n`.

use crate::error::Result;
use crate::scalar::{self, ExactInt};

/// `n choose k`, or zero when `k < 0` or `k > n`.
pub fn binomial<T: ExactInt>(n: i64, k: i64) -> Result<T> {
    if k < 0 || n < 0 || k > n {
        return Ok(T::zero());
    }
    let k = k.min(n - k);
    let mut acc = T::one();
    for i in 0..k {
        let num: T = scalar::lift((n - i) as i128, "binomial")?;
        let den: T = scalar::lift((i + 1) as i128, "binomial")?;
        acc = scalar::mul(&acc, &num, "binomial")? / den;
    }
    Ok(acc)
}

/// Pascal's triangle memoized up to a row bound; lookups past the bound fall
/// back to [`binomial`].
#[derive(Debug, Clone)]
pub struct BinomialTable<T> {
    rows: Vec<Vec<T>>,
}

impl<T: ExactInt> BinomialTable<T> {
    /// Builds rows `0..=max_n`. With a fixed-width scalar, rows stop at the
    /// first one that would overflow.
    pub fn new(max_n: u32) -> Self {
        let mut rows: Vec<Vec<T>> = Vec::with_capacity(max_n as usize + 1);
        rows.push(vec![T::one()]);
        'build: for n in 1..=max_n as usize {
            let prev = &rows[n - 1];
            let mut row = Vec::with_capacity(n + 1);
            row.push(T::one());
            for k in 1..n {
                match prev[k - 1].checked_add(&prev[k]) {
                    Some(v) => row.push(v),
                    None => break 'build,
                }
            }
            row.push(T::one());
            rows.push(row);
        }
        BinomialTable { rows }
    }

    /// Largest row held in memory.
    pub fn max_n(&self) -> u32 {
        (self.rows.len() - 1) as u32
    }

    pub fn get(&self, n: i64, k: i64) -> Result<T> {
        if k < 0 || n < 0 || k > n {
            return Ok(T::zero());
        }
        match self.rows.get(n as usize) {
            Some(row) => Ok(row[k as usize].clone()),
            None => binomial(n, k),
        }
    }
}
