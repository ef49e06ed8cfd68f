//! The Clebsch-Gordan function `C(M)` on semi-magic squares.
//!
//! Two independent evaluators: the alternating binomial sum ([`cg_sum`],
//! [`CgEvaluator`]) and a bivariate power-series expansion
//! ([`cg_series_oracle`]) that never touches a binomial coefficient.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;

use crate::binomial::{binomial, BinomialTable};
use crate::error::Result;
use crate::scalar::{self, ExactInt};
use crate::square::{from_topline_rc, hex_region, SemiMagicSquare, TopLine};

/// An exact value of `C(M)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CgValue<T>(pub T);

impl<T: ExactInt> CgValue<T> {
    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn value(&self) -> &T {
        &self.0
    }
}

impl<T: fmt::Display> fmt::Display for CgValue<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

struct Params {
    a: i64,
    b: i64,
    k: i64,
    r: i64,
    c: i64,
}

fn params(m: &SemiMagicSquare) -> Params {
    let top = m.top_line();
    Params {
        a: top.a as i64,
        b: top.b as i64,
        k: top.k as i64,
        r: m.r() as i64,
        c: m.c() as i64,
    }
}

fn alternating_sum<T, F>(m: &SemiMagicSquare, mut choose: F) -> Result<CgValue<T>>
where
    T: ExactInt,
    F: FnMut(i64, i64) -> Result<T>,
{
    const W: &str = "cg_sum";
    let Params { a, b, k, r, c } = params(m);
    let mut acc = T::zero();
    for l in 0..=k {
        let t1 = choose(c, r - l)?;
        if t1.is_zero() {
            continue;
        }
        let t2 = choose(b + k - l, b)?;
        let t3 = choose(a + l, a)?;
        let term = scalar::mul(&scalar::mul(&t1, &t2, W)?, &t3, W)?;
        acc = if l % 2 == 0 {
            scalar::add(&acc, &term, W)?
        } else {
            scalar::sub(&acc, &term, W)?
        };
    }
    Ok(CgValue(acc))
}

/// `C(M)` by the explicit alternating sum over `l = 0..=k`.
pub fn cg_sum<T: ExactInt>(m: &SemiMagicSquare) -> Result<CgValue<T>> {
    alternating_sum(m, binomial::<T>)
}

/// Alternating-sum evaluator backed by a memoized Pascal triangle, for sweeps
/// over many squares of bounded magic number.
#[derive(Debug, Clone)]
pub struct CgEvaluator<T> {
    table: BinomialTable<T>,
}

impl<T: ExactInt> CgEvaluator<T> {
    /// Every binomial argument of `C(M)` is at most `J`, so `max_j` rows suffice.
    pub fn new(max_j: u32) -> Self {
        CgEvaluator {
            table: BinomialTable::new(max_j),
        }
    }

    pub fn eval(&self, m: &SemiMagicSquare) -> Result<CgValue<T>> {
        alternating_sum(m, |n, k| self.table.get(n, k))
    }
}

/// Zero test using `i128` with a `BigInt` retry on overflow.
#[derive(Debug, Clone)]
pub struct ZeroTester {
    fast: CgEvaluator<i128>,
    exact: CgEvaluator<BigInt>,
}

impl ZeroTester {
    pub fn new(max_j: u32) -> Self {
        ZeroTester {
            fast: CgEvaluator::new(max_j),
            exact: CgEvaluator::new(max_j),
        }
    }

    pub fn is_zero(&self, m: &SemiMagicSquare) -> bool {
        match self.fast.eval(m) {
            Ok(v) => v.is_zero(),
            Err(_) => self.exact.eval(m).expect("BigInt cannot overflow").is_zero(),
        }
    }
}

/// Dense bivariate series truncated to `deg_x <= max_x`, `deg_y <= max_y`.
struct BiSeries<T> {
    max_y: usize,
    coeffs: Vec<Vec<T>>,
}

impl<T: ExactInt> BiSeries<T> {
    fn one(max_x: usize, max_y: usize) -> Self {
        let mut coeffs = vec![vec![T::zero(); max_y + 1]; max_x + 1];
        coeffs[0][0] = T::one();
        BiSeries { max_y, coeffs }
    }

    /// self *= (x + y)
    fn mul_x_plus_y(&mut self) -> Result<()> {
        for i in (0..self.coeffs.len()).rev() {
            for j in (0..=self.max_y).rev() {
                let mut v = T::zero();
                if i > 0 {
                    v = scalar::add(&v, &self.coeffs[i - 1][j], "cg_series")?;
                }
                if j > 0 {
                    v = scalar::add(&v, &self.coeffs[i][j - 1], "cg_series")?;
                }
                self.coeffs[i][j] = v;
            }
        }
        Ok(())
    }

    /// self /= (1 - x)
    fn div_one_minus_x(&mut self) -> Result<()> {
        for i in 1..self.coeffs.len() {
            for j in 0..=self.max_y {
                let v = scalar::add(&self.coeffs[i][j], &self.coeffs[i - 1][j], "cg_series")?;
                self.coeffs[i][j] = v;
            }
        }
        Ok(())
    }

    /// self /= (1 + y)
    fn div_one_plus_y(&mut self) -> Result<()> {
        for row in self.coeffs.iter_mut() {
            for j in 1..=self.max_y {
                let v = scalar::sub(&row[j], &row[j - 1], "cg_series")?;
                row[j] = v;
            }
        }
        Ok(())
    }
}

/// `C(M)` as the coefficient of `x^s y^r` in
/// `(x+y)^c / ((1-x)^(b+1) (1+y)^(a+1))`.
pub fn cg_series_oracle<T: ExactInt>(m: &SemiMagicSquare) -> Result<CgValue<T>> {
    let top = m.top_line();
    let (s, r, c) = (m.s() as usize, m.r() as usize, m.c());
    let mut series = BiSeries::<T>::one(s, r);
    for _ in 0..c {
        series.mul_x_plus_y()?;
    }
    for _ in 0..=top.b {
        series.div_one_minus_x()?;
    }
    for _ in 0..=top.a {
        series.div_one_plus_y()?;
    }
    Ok(CgValue(series.coeffs[s][r].clone()))
}

/// `C(M)` at every point of the hexagon of `top`, keyed by `(r, c)`.
pub fn cg_hexagon<T: ExactInt>(top: TopLine) -> Result<BTreeMap<(u32, u32), CgValue<T>>> {
    let eval = CgEvaluator::<T>::new(top.magic_number());
    hex_region(top)
        .points
        .into_iter()
        .map(|(r, c)| {
            let m = from_topline_rc(top, r as i64, c as i64)?;
            Ok(((r, c), eval.eval(&m)?))
        })
        .collect()
}

/// Convenience: `C(M)` as a `BigInt`.
pub fn cg_value(m: &SemiMagicSquare) -> BigInt {
    cg_sum::<BigInt>(m).expect("BigInt cannot overflow").0
}
