//! Weakly semi-magic squares of size three, their top-line parametrization
//! and exhaustive enumeration.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::binomial::binomial;
use crate::error::{Error, Result};
use crate::scalar::{self, ExactInt};
use crate::Exec;

/// Default upper bound on the magic number accepted by enumerating operations.
pub const DEFAULT_J_CAP: u32 = 64;

/// A 3x3 grid of nonnegative integers whose six line sums agree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SemiMagicSquare {
    cells: [[u32; 3]; 3],
}

/// Checks both defining conditions and returns the square.
pub fn validate(grid: [[i64; 3]; 3]) -> Result<SemiMagicSquare> {
    SemiMagicSquare::new(grid)
}

impl SemiMagicSquare {
    pub fn new(grid: [[i64; 3]; 3]) -> Result<Self> {
        for (row, line) in grid.iter().enumerate() {
            for (col, &value) in line.iter().enumerate() {
                if value < 0 {
                    return Err(Error::NegativeEntry { row, col, value });
                }
            }
        }
        let rows = [0, 1, 2].map(|i| grid[i].iter().sum::<i64>());
        let cols = [0, 1, 2].map(|j| grid.iter().map(|row| row[j]).sum::<i64>());
        if rows.iter().chain(cols.iter()).any(|&s| s != rows[0]) {
            return Err(Error::NotSemiMagic { rows, cols });
        }
        if u32::try_from(rows[0]).is_err() {
            return Err(Error::Overflow("magic number"));
        }
        Ok(SemiMagicSquare {
            cells: grid.map(|row| row.map(|v| v as u32)),
        })
    }

    /// Caller guarantees equal line sums.
    pub(crate) fn from_cells(cells: [[u32; 3]; 3]) -> Self {
        debug_assert!({
            let j: u64 = cells[0].iter().map(|&v| v as u64).sum();
            (0..3).all(|i| cells[i].iter().map(|&v| v as u64).sum::<u64>() == j)
                && (0..3).all(|c| cells.iter().map(|row| row[c] as u64).sum::<u64>() == j)
        });
        SemiMagicSquare { cells }
    }

    pub fn zero() -> Self {
        SemiMagicSquare { cells: [[0; 3]; 3] }
    }

    /// The all-ones square `U`.
    pub fn ones() -> Self {
        SemiMagicSquare { cells: [[1; 3]; 3] }
    }

    pub fn cells(&self) -> &[[u32; 3]; 3] {
        &self.cells
    }

    pub fn entry(&self, row: usize, col: usize) -> u32 {
        self.cells[row][col]
    }

    /// Row-major 9-tuple; its lexicographic order is the derived `Ord`.
    pub fn flat(&self) -> [u32; 9] {
        let c = &self.cells;
        [
            c[0][0], c[0][1], c[0][2], c[1][0], c[1][1], c[1][2], c[2][0], c[2][1], c[2][2],
        ]
    }

    pub fn magic_number(&self) -> u32 {
        self.cells[0].iter().sum()
    }

    pub fn top_line(&self) -> TopLine {
        let [a, b, k] = self.cells[0];
        TopLine { a, b, k }
    }

    /// Entry (2,1).
    pub fn r(&self) -> u32 {
        self.cells[1][0]
    }

    /// Entry (2,2).
    pub fn s(&self) -> u32 {
        self.cells[1][1]
    }

    /// Entry (3,3).
    pub fn c(&self) -> u32 {
        self.cells[2][2]
    }

    pub fn min_entry(&self) -> u32 {
        self.flat().into_iter().min().unwrap_or(0)
    }

    pub fn transpose(&self) -> Self {
        let c = &self.cells;
        SemiMagicSquare {
            cells: [0, 1, 2].map(|i| [c[0][i], c[1][i], c[2][i]]),
        }
    }

    pub fn rows(&self) -> [[u32; 3]; 3] {
        self.cells
    }

    pub fn columns(&self) -> [[u32; 3]; 3] {
        self.transpose().cells
    }

    pub fn determinant(&self) -> i128 {
        let m = self.cells.map(|row| row.map(i128::from));
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }
}

/// Standard 3x3 determinant.
pub fn determinant(m: &SemiMagicSquare) -> i128 {
    m.determinant()
}

impl fmt::Display for SemiMagicSquare {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.cells.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{} {} {}", row[0], row[1], row[2])?;
        }
        Ok(())
    }
}

/// Accepts three lines of three whitespace-separated integers. A `/` may
/// stand in for a line break.
impl FromStr for SemiMagicSquare {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lines: Vec<&str> = s
            .split(['\n', '/'])
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .collect();
        if lines.len() != 3 {
            return Err(Error::Parse(format!("expected 3 rows, found {}", lines.len())));
        }
        let mut grid = [[0i64; 3]; 3];
        for (i, line) in lines.iter().enumerate() {
            let vals = line
                .split_whitespace()
                .map(|t| t.parse::<i64>().map_err(|e| Error::Parse(format!("{t:?}: {e}"))))
                .collect::<Result<Vec<_>>>()?;
            if vals.len() != 3 {
                return Err(Error::Parse(format!(
                    "row {} has {} entries, expected 3",
                    i + 1,
                    vals.len()
                )));
            }
            grid[i].copy_from_slice(&vals);
        }
        SemiMagicSquare::new(grid)
    }
}

/// The first row `(a, b, k)` of a square.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct TopLine {
    pub a: u32,
    pub b: u32,
    pub k: u32,
}

impl TopLine {
    pub fn new(a: u32, b: u32, k: u32) -> Self {
        TopLine { a, b, k }
    }

    pub fn magic_number(&self) -> u32 {
        self.a + self.b + self.k
    }

    /// Closed-form number of squares with this top line.
    pub fn count(&self) -> u64 {
        topline_count(*self)
    }
}

impl fmt::Display for TopLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.a, self.b, self.k)
    }
}

impl FromStr for TopLine {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').collect();
        if parts.len() != 3 {
            return Err(Error::Parse(format!("top line {s:?}: expected a,b,k")));
        }
        let mut v = [0u32; 3];
        for (slot, part) in v.iter_mut().zip(&parts) {
            *slot = part
                .parse()
                .map_err(|e| Error::Parse(format!("top line {s:?}: {e}")))?;
        }
        Ok(TopLine::new(v[0], v[1], v[2]))
    }
}

/// The feasible `(r, c)` pairs for a top line, in row-major order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HexRegion {
    pub top: TopLine,
    pub points: Vec<(u32, u32)>,
}

impl HexRegion {
    pub fn contains(&self, r: u32, c: u32) -> bool {
        in_region(self.top, r as i64, c as i64)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

fn in_region(top: TopLine, r: i64, c: i64) -> bool {
    let (a, b, k) = (top.a as i64, top.b as i64, top.k as i64);
    (0..=b + k).contains(&r) && (0..=a + b).contains(&c) && (-k..=a).contains(&(c - r))
}

/// The unique square with top row `top`, entry (2,1) = `r` and entry (3,3) = `c`.
pub fn from_topline_rc(top: TopLine, r: i64, c: i64) -> Result<SemiMagicSquare> {
    let (a, b, k) = (top.a as i64, top.b as i64, top.k as i64);
    let j = a + b + k;
    let s = c - r + k;
    let grid = [[a, b, k], [r, s, j - r - s], [j - a - r, j - b - s, c]];
    if grid.iter().flatten().any(|&v| v < 0) {
        return Err(Error::OutOfRegion {
            top: top.to_string(),
            r,
            c,
        });
    }
    Ok(SemiMagicSquare::from_cells(grid.map(|row| row.map(|v| v as u32))))
}

pub fn hex_region(top: TopLine) -> HexRegion {
    let (a, b, k) = (top.a, top.b, top.k);
    let mut points = Vec::with_capacity(topline_count(top) as usize);
    for r in 0..=b + k {
        // -k <= c - r <= a, clipped to 0..=a+b
        let lo = r.saturating_sub(k);
        let hi = (r + a).min(a + b);
        points.extend((lo..=hi).map(|c| (r, c)));
    }
    HexRegion { top, points }
}

pub fn topline_count(top: TopLine) -> u64 {
    let (a, b, k) = (top.a as u64, top.b as u64, top.k as u64);
    1 + (a + b + k) + (a * b + a * k + b * k)
}

/// All compositions of `j` into three parts, in triangle order: `a` is the
/// triangle row, `b` the position within the row.
pub fn toplines(j: u32) -> Vec<TopLine> {
    let mut out = Vec::with_capacity(((j as usize + 1) * (j as usize + 2)) / 2);
    for a in 0..=j {
        for b in 0..=j - a {
            out.push(TopLine::new(a, b, j - a - b));
        }
    }
    out
}

fn check_cap(j: u32, cap: u32) -> Result<()> {
    if j > cap {
        Err(Error::CapExceeded { j, cap })
    } else {
        Ok(())
    }
}

fn squares_of(top: TopLine) -> impl Iterator<Item = SemiMagicSquare> {
    hex_region(top)
        .points
        .into_iter()
        .map(move |(r, c)| from_topline_rc(top, r as i64, c as i64).expect("region point"))
}

/// Every square of magic number `j`, using the default cap.
pub fn enumerate(j: u32) -> Result<Vec<SemiMagicSquare>> {
    enumerate_with(j, DEFAULT_J_CAP, Exec::Serial)
}

/// Every square of magic number `j` exactly once, ordered by top line
/// (triangle order) and then row-major `(r, c)`. The order does not depend
/// on `exec`.
pub fn enumerate_with(j: u32, cap: u32, exec: Exec) -> Result<Vec<SemiMagicSquare>> {
    check_cap(j, cap)?;
    let tops = toplines(j);
    Ok(match exec {
        Exec::Serial => tops.into_iter().flat_map(squares_of).collect(),
        Exec::Parallel => tops
            .into_par_iter()
            .map(|t| squares_of(t).collect::<Vec<_>>())
            .collect::<Vec<_>>()
            .concat(),
    })
}

/// The closed forms for the number of squares with magic number `J`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum H3Form {
    /// `(J+1)(J+2)(J^2+3J+4)/8`
    Product,
    /// `3 C(J+3,4) + C(J+2,2)`
    Binom3,
    /// `C(J+5,5) - C(J+2,5)`
    Binom2Diff,
    /// `C(J+4,4) + C(J+3,4) + C(J+2,4)`
    Binom3Sum,
}

impl H3Form {
    pub const ALL: [H3Form; 4] = [
        H3Form::Product,
        H3Form::Binom3,
        H3Form::Binom2Diff,
        H3Form::Binom3Sum,
    ];
}

pub fn h3_closed<T: ExactInt>(j: u64, form: H3Form) -> Result<T> {
    const W: &str = "h3_closed";
    let n = j as i64;
    let jj: T = scalar::lift(j as i128, W)?;
    let c = |v: i128| scalar::lift::<T>(v, W);
    match form {
        H3Form::Product => {
            let f1 = scalar::add(&jj, &c(1)?, W)?;
            let f2 = scalar::add(&jj, &c(2)?, W)?;
            let sq = scalar::mul(&jj, &jj, W)?;
            let three_j = scalar::mul(&c(3)?, &jj, W)?;
            let f3 = scalar::add(&scalar::add(&sq, &three_j, W)?, &c(4)?, W)?;
            let prod = scalar::mul(&scalar::mul(&f1, &f2, W)?, &f3, W)?;
            Ok(prod / c(8)?)
        }
        H3Form::Binom3 => {
            let t = scalar::mul(&c(3)?, &binomial::<T>(n + 3, 4)?, W)?;
            scalar::add(&t, &binomial::<T>(n + 2, 2)?, W)
        }
        H3Form::Binom2Diff => scalar::sub(&binomial::<T>(n + 5, 5)?, &binomial::<T>(n + 2, 5)?, W),
        H3Form::Binom3Sum => {
            let s = scalar::add(&binomial::<T>(n + 4, 4)?, &binomial::<T>(n + 3, 4)?, W)?;
            scalar::add(&s, &binomial::<T>(n + 2, 4)?, W)
        }
    }
}

/// `H_3(J)` as a machine integer; exact for every `J` below about 2^30.
pub fn h3(j: u64) -> u128 {
    let j = j as u128;
    (j + 1) * (j + 2) * (j * j + 3 * j + 4) / 8
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn sq(rows: [[i64; 3]; 3]) -> SemiMagicSquare {
        SemiMagicSquare::new(rows).unwrap()
    }

    #[test]
    fn validate_examples() {
        assert_eq!(validate([[0; 3]; 3]).unwrap().magic_number(), 0);
        assert_eq!(sq([[2, 5, 1], [2, 1, 5], [4, 2, 2]]).magic_number(), 8);
        assert!(matches!(
            validate([[1, 0, 0], [0, 1, 0], [0, 1, 0]]),
            Err(Error::NotSemiMagic { .. })
        ));
        assert!(matches!(
            validate([[-1, 1, 0], [1, -1, 0], [0, 0, 0]]),
            Err(Error::NegativeEntry { row: 0, col: 0, value: -1 })
        ));
        assert_eq!(SemiMagicSquare::ones().magic_number(), 3);
    }

    #[test]
    fn parse_and_display() {
        let m: SemiMagicSquare = "2 5 1\n2 1 5\n4 2 2\n".parse().unwrap();
        assert_eq!(m, sq([[2, 5, 1], [2, 1, 5], [4, 2, 2]]));
        assert_eq!(m.to_string(), "2 5 1\n2 1 5\n4 2 2");
        let slash: SemiMagicSquare = "2 5 1 / 2 1 5 / 4 2 2".parse().unwrap();
        assert_eq!(slash, m);
        assert!("1 2 3\n4 5 6".parse::<SemiMagicSquare>().is_err());
        assert!("1 2\n4 5 6\n1 1 1".parse::<SemiMagicSquare>().is_err());
        assert_eq!("2,5,1".parse::<TopLine>().unwrap(), TopLine::new(2, 5, 1));
        assert!("2, 5,1".parse::<TopLine>().is_err());
        assert!("2,5".parse::<TopLine>().is_err());
    }

    #[test]
    fn from_topline_rc_examples() {
        let top = TopLine::new(2, 5, 1);
        assert_eq!(
            from_topline_rc(top, 2, 2).unwrap(),
            sq([[2, 5, 1], [2, 1, 5], [4, 2, 2]])
        );
        assert_eq!(
            from_topline_rc(TopLine::new(0, 0, 0), 0, 0).unwrap(),
            SemiMagicSquare::zero()
        );
        assert!(matches!(
            from_topline_rc(top, 6, 0),
            Err(Error::OutOfRegion { r: 6, c: 0, .. })
        ));
        assert!(from_topline_rc(top, -1, 0).is_err());
        // boxed squares of the J=4 arrays
        assert_eq!(
            from_topline_rc(TopLine::new(0, 4, 0), 3, 3).unwrap(),
            sq([[0, 4, 0], [3, 0, 1], [1, 0, 3]])
        );
        assert_eq!(
            from_topline_rc(TopLine::new(3, 0, 1), 1, 2).unwrap(),
            sq([[3, 0, 1], [1, 2, 1], [0, 2, 2]])
        );
        assert_eq!(
            from_topline_rc(TopLine::new(1, 2, 1), 2, 2).unwrap(),
            sq([[1, 2, 1], [2, 1, 1], [1, 1, 2]])
        );
    }

    #[test]
    fn hex_region_examples() {
        assert_eq!(hex_region(TopLine::new(2, 5, 1)).len(), 26);
        assert_eq!(hex_region(TopLine::new(0, 0, 0)).points, vec![(0, 0)]);
        let diag = hex_region(TopLine::new(0, 4, 0));
        assert_eq!(diag.len(), 5);
        assert!(diag.points.iter().all(|&(r, c)| r == c));
        let region = hex_region(TopLine::new(1, 2, 1));
        assert!(region.contains(2, 2));
        assert!(!region.contains(0, 2));
    }

    #[test]
    fn topline_count_examples() {
        assert_eq!(topline_count(TopLine::new(0, 0, 0)), 1);
        assert_eq!(topline_count(TopLine::new(3, 0, 1)), 8);
        assert_eq!(topline_count(TopLine::new(1, 2, 1)), 10);
        assert_eq!(topline_count(TopLine::new(0, 4, 0)), 5);
    }

    #[test]
    fn toplines_examples() {
        assert_eq!(toplines(0), vec![TopLine::new(0, 0, 0)]);
        assert_eq!(toplines(4).len(), 15);
        assert_eq!(toplines(8).len(), 45);
        let t = toplines(2);
        assert_eq!(t[0], TopLine::new(0, 0, 2));
        assert_eq!(t[2], TopLine::new(0, 2, 0));
        assert_eq!(t[5], TopLine::new(2, 0, 0));
    }

    #[test]
    fn enumerate_examples() {
        assert_eq!(enumerate(0).unwrap(), vec![SemiMagicSquare::zero()]);
        assert_eq!(enumerate(4).unwrap().len(), 120);
        assert_eq!(enumerate(2).unwrap().len(), 21);
        assert_eq!(
            enumerate_with(65, DEFAULT_J_CAP, Exec::Serial),
            Err(Error::CapExceeded { j: 65, cap: 64 })
        );
        assert_eq!(
            enumerate_with(9, 64, Exec::Parallel).unwrap(),
            enumerate_with(9, 64, Exec::Serial).unwrap()
        );
    }

    #[test]
    fn h3_closed_examples() {
        for (j, v) in [(0u64, 1i64), (1, 6), (2, 21), (3, 55), (4, 120), (8, 1035)] {
            for form in H3Form::ALL {
                assert_eq!(h3_closed::<i64>(j, form).unwrap(), v, "J={j} {form:?}");
            }
            assert_eq!(h3(j), v as u128);
        }
        assert_eq!(
            h3_closed::<BigInt>(1000, H3Form::Binom2Diff).unwrap(),
            BigInt::from(h3(1000))
        );
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(SemiMagicSquare::ones().determinant(), 0);
        assert_eq!(sq([[1, 0, 0], [0, 1, 0], [0, 0, 1]]).determinant(), 1);
        assert_eq!(sq([[0, 1, 0], [1, 0, 0], [0, 0, 1]]).determinant(), -1);
        assert_eq!(sq([[2, 5, 1], [2, 1, 5], [4, 2, 2]]).determinant(), 64);
        assert_eq!(sq([[8, 8, 8], [2, 9, 13], [14, 7, 3]]).determinant(), 0);
    }
}
