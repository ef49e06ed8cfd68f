//! Univariate integer polynomials and rational generating functions whose
//! denominators have constant term `±1`, so every series coefficient is an
//! integer obtainable without division.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::scalar::{self, ExactInt};

/// Dense coefficients, index = exponent, trailing zeros trimmed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntPolynomial<T> {
    coeffs: Vec<T>,
}

impl<T: ExactInt> IntPolynomial<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPolynomial { coeffs: vec![T::one()] }
    }

    pub fn monomial(coeff: T, exp: usize) -> Self {
        let mut coeffs = vec![T::zero(); exp + 1];
        coeffs[exp] = coeff;
        IntPolynomial::new(coeffs)
    }

    /// From `(exponent, coefficient)` pairs; repeated exponents add up.
    pub fn from_terms(terms: &[(usize, i64)]) -> Result<Self> {
        let len = terms.iter().map(|&(e, _)| e + 1).max().unwrap_or(0);
        let mut coeffs = vec![T::zero(); len];
        for &(e, c) in terms {
            let c: T = scalar::lift(c as i128, "polynomial literal")?;
            coeffs[e] = scalar::add(&coeffs[e], &c, "polynomial literal")?;
        }
        Ok(IntPolynomial::new(coeffs))
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coeff(&self, exp: usize) -> T {
        self.coeffs.get(exp).cloned().unwrap_or_else(T::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| scalar::add(&self.coeff(i), &other.coeff(i), "polynomial add"))
            .collect::<Result<Vec<T>>>()?;
        Ok(IntPolynomial::new(coeffs))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| scalar::sub(&self.coeff(i), &other.coeff(i), "polynomial sub"))
            .collect::<Result<Vec<T>>>()?;
        Ok(IntPolynomial::new(coeffs))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        if self.is_zero() || other.is_zero() {
            return Ok(IntPolynomial::zero());
        }
        let mut coeffs = vec![T::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                let p = scalar::mul(a, b, "polynomial mul")?;
                coeffs[i + j] = scalar::add(&coeffs[i + j], &p, "polynomial mul")?;
            }
        }
        Ok(IntPolynomial::new(coeffs))
    }

    pub fn checked_pow(&self, exp: u32) -> Result<Self> {
        let mut acc = IntPolynomial::one();
        for _ in 0..exp {
            acc = acc.checked_mul(self)?;
        }
        Ok(acc)
    }

    pub fn scale(&self, factor: &T) -> Result<Self> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| scalar::mul(c, factor, "polynomial scale"))
            .collect::<Result<Vec<T>>>()?;
        Ok(IntPolynomial::new(coeffs))
    }

    pub fn eval(&self, x: &T) -> Result<T> {
        let mut acc = T::zero();
        for c in self.coeffs.iter().rev() {
            acc = scalar::add(&scalar::mul(&acc, x, "polynomial eval")?, c, "polynomial eval")?;
        }
        Ok(acc)
    }
}

impl<T: ExactInt> fmt::Display for IntPolynomial<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (e, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if c.is_negative() {
                f.write_str("-")?;
            } else if !first {
                f.write_str("+")?;
            }
            first = false;
            if e == 0 || !mag.is_one() {
                write!(f, "{mag}")?;
            }
            match e {
                0 => {}
                1 => f.write_str("x")?,
                _ => write!(f, "x^{e}")?,
            }
        }
        Ok(())
    }
}

/// `numerator / denominator` as a formal power series.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalGF<T> {
    numerator: IntPolynomial<T>,
    denominator: IntPolynomial<T>,
}

impl<T: ExactInt> RationalGF<T> {
    pub fn new(numerator: IntPolynomial<T>, denominator: IntPolynomial<T>) -> Result<Self> {
        let c0 = denominator.coeff(0);
        if !c0.abs().is_one() {
            return Err(Error::InvalidDenominator);
        }
        Ok(RationalGF { numerator, denominator })
    }

    pub fn polynomial(p: IntPolynomial<T>) -> Self {
        RationalGF {
            numerator: p,
            denominator: IntPolynomial::one(),
        }
    }

    pub fn zero() -> Self {
        RationalGF::polynomial(IntPolynomial::zero())
    }

    pub fn numerator(&self) -> &IntPolynomial<T> {
        &self.numerator
    }

    pub fn denominator(&self) -> &IntPolynomial<T> {
        &self.denominator
    }

    /// Coefficients of `x^0 ..= x^n`, from the recurrence
    /// `d0 a_i = p_i - sum_{j>=1} d_j a_{i-j}`.
    pub fn series_coeffs(&self, n: usize) -> Result<Vec<T>> {
        const W: &str = "series expansion";
        let den = self.denominator.coeffs();
        let d0 = den[0].clone();
        let mut out: Vec<T> = Vec::with_capacity(n + 1);
        for i in 0..=n {
            let mut v = self.numerator.coeff(i);
            for j in 1..den.len().min(i + 1) {
                if den[j].is_zero() {
                    continue;
                }
                v = scalar::sub(&v, &scalar::mul(&den[j], &out[i - j], W)?, W)?;
            }
            // d0 is ±1, so dividing equals multiplying
            out.push(scalar::mul(&v, &d0, W)?);
        }
        Ok(out)
    }

    pub fn coefficient(&self, n: usize) -> Result<T> {
        Ok(self.series_coeffs(n)?.pop().expect("n+1 coefficients"))
    }

    /// Sum over a common denominator, without cancellation.
    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        if self.denominator == other.denominator {
            return RationalGF::new(
                self.numerator.checked_add(&other.numerator)?,
                self.denominator.clone(),
            );
        }
        let num = self
            .numerator
            .checked_mul(&other.denominator)?
            .checked_add(&other.numerator.checked_mul(&self.denominator)?)?;
        RationalGF::new(num, self.denominator.checked_mul(&other.denominator)?)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        RationalGF::new(
            self.numerator.checked_mul(&other.numerator)?,
            self.denominator.checked_mul(&other.denominator)?,
        )
    }

    pub fn scale(&self, factor: &T) -> Result<Self> {
        RationalGF::new(self.numerator.scale(factor)?, self.denominator.clone())
    }

    /// Equality as rational functions, by cross-multiplication.
    pub fn same_function(&self, other: &Self) -> Result<bool> {
        Ok(self.numerator.checked_mul(&other.denominator)?
            == other.numerator.checked_mul(&self.denominator)?)
    }
}

pub fn series_coeffs<T: ExactInt>(gf: &RationalGF<T>, n: usize) -> Result<Vec<T>> {
    gf.series_coeffs(n)
}

pub fn gf_add<T: ExactInt>(gfs: &[RationalGF<T>]) -> Result<RationalGF<T>> {
    gfs.iter()
        .try_fold(RationalGF::zero(), |acc, g| acc.checked_add(g))
}

pub fn gf_mul<T: ExactInt>(gfs: &[RationalGF<T>]) -> Result<RationalGF<T>> {
    gfs.iter().try_fold(
        RationalGF::polynomial(IntPolynomial::one()),
        |acc, g| acc.checked_mul(g),
    )
}

impl<T: ExactInt> fmt::Display for RationalGF<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.numerator, self.denominator)
    }
}

/// Grammar (whitespace ignored):
///
/// ```text
/// gf      := product [ '/' product ]
/// product := factor ( [ '*' ] factor )*      '*' may be dropped before '('
/// factor  := [ '-' ] primary
/// primary := '(' sum ')' [ '^' uint ] | term
/// sum     := [ '+' | '-' ] product ( ( '+' | '-' ) product )*
/// term    := uint [ 'x' [ '^' uint ] ] | 'x' [ '^' uint ]
/// ```
///
/// Example: `x^3(1+9x^2+16x^4+27x^6+19x^8)/((1-x^4)^2(1-x^6))`. A bare sum
/// needs parentheses before `/`.
impl<T: ExactInt> FromStr for RationalGF<T> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut p = Parser { chars: &chars, pos: 0 };
        let num = p.product()?;
        let den = if p.eat('/') { p.product()? } else { IntPolynomial::one() };
        if p.pos != chars.len() {
            return Err(p.error("trailing input"));
        }
        RationalGF::new(num, den)
    }
}

impl<T: ExactInt> FromStr for IntPolynomial<T> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut p = Parser { chars: &chars, pos: 0 };
        let poly = p.product()?;
        if p.pos != chars.len() {
            return Err(p.error("trailing input"));
        }
        Ok(poly)
    }
}

struct Parser<'a> {
    chars: &'a [char],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, what: &str) -> Error {
        let seen: String = self.chars.iter().collect();
        Error::Parse(format!("{what} at position {} in {seen:?}", self.pos))
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn uint(&mut self) -> Option<u64> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        self.chars[start..self.pos].iter().collect::<String>().parse().ok()
    }

    fn exponent(&mut self) -> Result<u32> {
        if self.eat('^') {
            let e = self.uint().ok_or_else(|| self.error("expected exponent"))?;
            u32::try_from(e).map_err(|_| self.error("exponent too large"))
        } else {
            Ok(1)
        }
    }

    fn product<T: ExactInt>(&mut self) -> Result<IntPolynomial<T>> {
        let mut acc = self.factor()?;
        while self.eat('*') || self.peek() == Some('(') {
            acc = acc.checked_mul(&self.factor()?)?;
        }
        Ok(acc)
    }

    fn factor<T: ExactInt>(&mut self) -> Result<IntPolynomial<T>> {
        let negate = self.eat('-');
        let base = if self.eat('(') {
            let inner = self.sum()?;
            if !self.eat(')') {
                return Err(self.error("expected ')'"));
            }
            let e = self.exponent()?;
            inner.checked_pow(e)?
        } else {
            self.term()?
        };
        if negate {
            base.scale(&-T::one())
        } else {
            Ok(base)
        }
    }

    fn sum<T: ExactInt>(&mut self) -> Result<IntPolynomial<T>> {
        let mut acc = IntPolynomial::zero();
        let mut first = true;
        loop {
            let negative = if self.eat('-') {
                true
            } else {
                // a leading '+' is optional, later ones are required
                if !self.eat('+') && !first {
                    break;
                }
                false
            };
            first = false;
            let t: IntPolynomial<T> = self.product()?;
            acc = if negative { acc.checked_sub(&t)? } else { acc.checked_add(&t)? };
        }
        Ok(acc)
    }

    fn term<T: ExactInt>(&mut self) -> Result<IntPolynomial<T>> {
        let coeff = self.uint();
        let has_x = self.eat('x');
        if coeff.is_none() && !has_x {
            return Err(self.error("expected a term"));
        }
        let exp = if has_x { self.exponent()? as usize } else { 0 };
        let c: T = scalar::lift(coeff.unwrap_or(1) as i128, "polynomial literal")?;
        Ok(IntPolynomial::monomial(c, exp))
    }
}
