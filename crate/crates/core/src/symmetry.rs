//! The 72-element group of determinantal symmetries acting on squares.
//!
//! Elements are kept in the normal form `R(σ) C(τ) T^ε`. `R(σ)` sends row `i`
//! to row `σ(i)`, `C(τ)` sends column `j` to column `τ(j)`, and `T` transposes;
//! the rightmost factor acts first.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::reduction::{n3_count, reduced_squares};
use crate::square::SemiMagicSquare;

/// A permutation of `{0, 1, 2}` stored as its images.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Perm3([u8; 3]);

impl Perm3 {
    pub const IDENTITY: Perm3 = Perm3([0, 1, 2]);

    /// All six permutations in lexicographic order of their images.
    pub const ALL: [Perm3; 6] = [
        Perm3([0, 1, 2]),
        Perm3([0, 2, 1]),
        Perm3([1, 0, 2]),
        Perm3([1, 2, 0]),
        Perm3([2, 0, 1]),
        Perm3([2, 1, 0]),
    ];

    pub fn from_images(images: [u8; 3]) -> Option<Perm3> {
        let mut seen = [false; 3];
        for &i in &images {
            if i > 2 || std::mem::replace(&mut seen[i as usize], true) {
                return None;
            }
        }
        Some(Perm3(images))
    }

    pub fn images(&self) -> [u8; 3] {
        self.0
    }

    pub fn image(&self, i: usize) -> usize {
        self.0[i] as usize
    }

    /// `self ∘ other`: apply `other` first.
    pub fn then_after(&self, other: &Perm3) -> Perm3 {
        Perm3(other.0.map(|i| self.0[i as usize]))
    }

    pub fn inverse(&self) -> Perm3 {
        let mut inv = [0u8; 3];
        for (i, &p) in self.0.iter().enumerate() {
            inv[p as usize] = i as u8;
        }
        Perm3(inv)
    }

    /// Cycle notation on `{1,2,3}`; `e` for the identity.
    pub fn cycle_notation(&self) -> String {
        let mut out = String::new();
        let mut done = [false; 3];
        for start in 0..3 {
            if done[start] || self.image(start) == start {
                continue;
            }
            out.push('(');
            let mut i = start;
            while !done[i] {
                done[i] = true;
                out.push(char::from(b'1' + i as u8));
                i = self.image(i);
            }
            out.push(')');
        }
        if out.is_empty() {
            out.push('e');
        }
        out
    }

    /// Parses `e`, a single cycle such as `23` or `132` (without the
    /// parentheses), or one-line notation prefixed with `=` such as `=132`.
    pub fn parse_body(s: &str) -> Result<Perm3> {
        let bad = || Error::Parse(format!("permutation {s:?}"));
        let s = s.trim();
        if s.is_empty() || s == "e" {
            return Ok(Perm3::IDENTITY);
        }
        let digits = |t: &str| -> Result<Vec<u8>> {
            t.chars()
                .map(|ch| match ch {
                    '1'..='3' => Ok(ch as u8 - b'1'),
                    _ => Err(bad()),
                })
                .collect()
        };
        if let Some(line) = s.strip_prefix('=') {
            let d = digits(line)?;
            let arr: [u8; 3] = d.try_into().map_err(|_| bad())?;
            return Perm3::from_images(arr).ok_or_else(bad);
        }
        let d = digits(s)?;
        if d.len() < 2 || d.len() > 3 {
            return Err(bad());
        }
        let mut images = [0u8, 1, 2];
        for (idx, &from) in d.iter().enumerate() {
            images[from as usize] = d[(idx + 1) % d.len()];
        }
        Perm3::from_images(images)
            .filter(|_| d.iter().collect::<HashSet<_>>().len() == d.len())
            .ok_or_else(bad)
    }
}

/// An element `R(σ) C(τ) T^ε` of the determinantal symmetry group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupElement {
    pub row: Perm3,
    pub col: Perm3,
    pub transpose: bool,
}

impl GroupElement {
    pub const IDENTITY: GroupElement = GroupElement {
        row: Perm3::IDENTITY,
        col: Perm3::IDENTITY,
        transpose: false,
    };

    pub const TRANSPOSE: GroupElement = GroupElement {
        row: Perm3::IDENTITY,
        col: Perm3::IDENTITY,
        transpose: true,
    };

    pub fn new(row: Perm3, col: Perm3, transpose: bool) -> Self {
        GroupElement { row, col, transpose }
    }

    pub fn rows(row: Perm3) -> Self {
        GroupElement::new(row, Perm3::IDENTITY, false)
    }

    pub fn cols(col: Perm3) -> Self {
        GroupElement::new(Perm3::IDENTITY, col, false)
    }

    /// All 72 elements in a fixed order.
    pub fn all() -> Vec<GroupElement> {
        let mut out = Vec::with_capacity(72);
        for row in Perm3::ALL {
            for col in Perm3::ALL {
                for transpose in [false, true] {
                    out.push(GroupElement { row, col, transpose });
                }
            }
        }
        out
    }

    /// `self ∘ other`, renormalized using `T R(σ) T = C(σ)`.
    pub fn compose(&self, other: &GroupElement) -> GroupElement {
        let (row, col) = if self.transpose {
            // T R(σ2) C(τ2) = R(τ2) C(σ2) T
            (self.row.then_after(&other.col), self.col.then_after(&other.row))
        } else {
            (self.row.then_after(&other.row), self.col.then_after(&other.col))
        };
        GroupElement {
            row,
            col,
            transpose: self.transpose ^ other.transpose,
        }
    }

    pub fn inverse(&self) -> GroupElement {
        // (R C T)^-1 = T C^-1 R^-1 = R(τ^-1) C(σ^-1) T
        if self.transpose {
            GroupElement::new(self.col.inverse(), self.row.inverse(), true)
        } else {
            GroupElement::new(self.row.inverse(), self.col.inverse(), false)
        }
    }

    pub fn apply(&self, m: &SemiMagicSquare) -> SemiMagicSquare {
        let src = if self.transpose { m.transpose() } else { *m };
        let cells = src.cells();
        let mut out = [[0u32; 3]; 3];
        for (i, row) in cells.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                out[self.row.image(i)][self.col.image(j)] = v;
            }
        }
        SemiMagicSquare::from_cells(out)
    }
}

/// `g ∘ h`.
pub fn compose(g: &GroupElement, h: &GroupElement) -> GroupElement {
    g.compose(h)
}

pub fn apply(g: &GroupElement, m: &SemiMagicSquare) -> SemiMagicSquare {
    g.apply(m)
}

/// Text form `R(σ)C(τ)T^ε` with σ, τ in cycle notation, e.g. `R(23)C(e)T^1`.
impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cyc = |p: &Perm3| {
            let s = p.cycle_notation();
            // strip the outer parentheses of a single cycle
            if s.matches('(').count() == 1 {
                s[1..s.len() - 1].to_string()
            } else {
                s
            }
        };
        write!(
            f,
            "R({})C({})T^{}",
            cyc(&self.row),
            cyc(&self.col),
            u8::from(self.transpose)
        )
    }
}

impl FromStr for GroupElement {
    type Err = Error;

    /// Each of the three factors may be omitted: `R(23)`, `C(132)T`,
    /// `T^0`, `R(=213)C(e)T^1`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |why: &str| Error::Parse(format!("group element {s:?}: {why}"));
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut rest = compact.as_str();
        let take_perm = |prefix: char, rest: &mut &str| -> Result<Perm3> {
            if let Some(after) = rest.strip_prefix(prefix) {
                let body = after.strip_prefix('(').ok_or_else(|| bad("expected '('"))?;
                let close = body.find(')').ok_or_else(|| bad("expected ')'"))?;
                let p = Perm3::parse_body(&body[..close])?;
                *rest = &body[close + 1..];
                Ok(p)
            } else {
                Ok(Perm3::IDENTITY)
            }
        };
        let row = take_perm('R', &mut rest)?;
        let col = take_perm('C', &mut rest)?;
        let transpose = match rest {
            "" | "T^0" => false,
            "T" | "T^1" => true,
            _ => return Err(bad("trailing input")),
        };
        Ok(GroupElement { row, col, transpose })
    }
}

/// Isomorphism type of a stabilizer subgroup, as used in the orbit table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum StabilizerClass {
    /// The whole group (order 72).
    Full,
    /// Dihedral of order 12.
    D12,
    /// Dihedral of order 8.
    D8,
    /// Order 6.
    S3,
    /// Klein four-group.
    Z2xZ2,
    /// Order 2, generated by an element with a transpose factor.
    Z2TransposeType,
    /// Order 2, generated by a pure row/column permutation.
    Z2RowSwapType,
    Trivial,
    /// Any other order; never observed on semi-magic squares.
    Other(u32),
}

impl StabilizerClass {
    pub fn of(stabilizer: &[GroupElement]) -> StabilizerClass {
        match stabilizer.len() {
            72 => StabilizerClass::Full,
            12 => StabilizerClass::D12,
            8 => StabilizerClass::D8,
            6 => StabilizerClass::S3,
            4 => StabilizerClass::Z2xZ2,
            2 => {
                let g = stabilizer
                    .iter()
                    .find(|g| **g != GroupElement::IDENTITY)
                    .expect("order-2 subgroup has a non-identity element");
                if g.transpose {
                    StabilizerClass::Z2TransposeType
                } else {
                    StabilizerClass::Z2RowSwapType
                }
            }
            1 => StabilizerClass::Trivial,
            n => StabilizerClass::Other(n as u32),
        }
    }

    pub fn name(&self) -> String {
        match self {
            StabilizerClass::Full => "G".into(),
            StabilizerClass::D12 => "D12".into(),
            StabilizerClass::D8 => "D8".into(),
            StabilizerClass::S3 => "S3".into(),
            StabilizerClass::Z2xZ2 => "Z2xZ2".into(),
            StabilizerClass::Z2TransposeType => "Z2<T>".into(),
            StabilizerClass::Z2RowSwapType => "Z2<R(23)>".into(),
            StabilizerClass::Trivial => "e".into(),
            StabilizerClass::Other(n) => format!("order{n}"),
        }
    }
}

impl fmt::Display for StabilizerClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// Elements fixing `m`.
pub fn stabilizer(m: &SemiMagicSquare) -> Vec<GroupElement> {
    GroupElement::all()
        .into_iter()
        .filter(|g| g.apply(m) == *m)
        .collect()
}

pub fn stabilizer_class(m: &SemiMagicSquare) -> StabilizerClass {
    StabilizerClass::of(&stabilizer(m))
}

/// A G-orbit with its lexicographically least member as representative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orbit {
    pub representative: SemiMagicSquare,
    pub size: usize,
    pub stabilizer_order: usize,
    pub stabilizer_class: StabilizerClass,
    /// Sorted ascending; the first element is the representative.
    pub members: Vec<SemiMagicSquare>,
}

impl Orbit {
    pub fn contains(&self, m: &SemiMagicSquare) -> bool {
        self.members.binary_search(m).is_ok()
    }
}

pub fn orbit(m: &SemiMagicSquare) -> Orbit {
    let elements = GroupElement::all();
    let mut members: Vec<SemiMagicSquare> = elements.iter().map(|g| g.apply(m)).collect();
    members.sort_unstable();
    members.dedup();
    let stab: Vec<GroupElement> = elements.into_iter().filter(|g| g.apply(m) == *m).collect();
    Orbit {
        representative: members[0],
        size: members.len(),
        stabilizer_order: stab.len(),
        stabilizer_class: StabilizerClass::of(&stab),
        members,
    }
}

/// Splits a G-stable set of squares into orbits sorted by (size, representative).
pub fn orbit_decompose(squares: &[SemiMagicSquare]) -> Result<Vec<Orbit>> {
    let universe: HashSet<SemiMagicSquare> = squares.iter().copied().collect();
    let mut seen: HashSet<SemiMagicSquare> = HashSet::with_capacity(universe.len());
    let mut orbits = Vec::new();
    for m in squares {
        if seen.contains(m) {
            continue;
        }
        let o = orbit(m);
        for member in &o.members {
            if !universe.contains(member) {
                return Err(Error::NotClosedUnderAction);
            }
            seen.insert(*member);
        }
        orbits.push(o);
    }
    orbits.sort_by_key(|o| (o.size, o.representative));
    Ok(orbits)
}

/// Where an expected bucket count comes from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Expectation {
    /// A formula row of the table applies.
    Formula(i64),
    /// The residue class of `J` is not listed for this bucket, so none are expected.
    Unlisted,
    /// The row's stated range excludes `J`, or its formula is negative here.
    NotApplicable,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RowStatus {
    Match,
    Mismatch,
    NotApplicable,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Table1Row {
    pub size: usize,
    pub class: StabilizerClass,
    pub expected: Expectation,
    pub observed: u64,
    pub status: RowStatus,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Table1Report {
    pub j: u32,
    pub rows: Vec<Table1Row>,
    /// Sum of orbit sizes over the reduced squares.
    pub total_size: u64,
    /// `|N_3(J)|` from the closed difference formula.
    pub expected_total: u64,
}

impl Table1Report {
    pub fn all_match(&self) -> bool {
        self.total_size == self.expected_total
            && self.rows.iter().all(|r| r.status != RowStatus::Mismatch)
    }
}

/// The buckets of the reduced-square orbit table, in table order.
pub const TABLE1_BUCKETS: [(usize, StabilizerClass); 8] = [
    (1, StabilizerClass::Full),
    (6, StabilizerClass::D12),
    (9, StabilizerClass::D8),
    (12, StabilizerClass::S3),
    (18, StabilizerClass::Z2xZ2),
    (36, StabilizerClass::Z2TransposeType),
    (36, StabilizerClass::Z2RowSwapType),
    (72, StabilizerClass::Trivial),
];

/// Predicted number of reduced-square orbits of the given bucket at `j`.
pub fn table1_expected(j: u32, size: usize, class: StabilizerClass) -> Expectation {
    use Expectation::*;
    use StabilizerClass as S;
    let j = j as i64;
    if j == 0 {
        return if (size, class) == (1, S::Full) { Formula(1) } else { Unlisted };
    }
    let odd = j % 2 == 1;
    let half = j / 2; // t for J = 2t or J = 2t+1
    let quarter = j / 4; // t for J = 4t or J = 4t+2
    let clamp = |v: i64| if v < 0 { NotApplicable } else { Formula(v) };
    match (size, class) {
        (1, S::Full) => Unlisted,
        (6, S::D12) => Formula(if odd { 1 } else { 2 }),
        (9, S::D8) => match j % 4 {
            2 => Formula(1),
            0 => Formula(2),
            _ => Unlisted,
        },
        (12, S::S3) => clamp(if odd { half } else { half - 1 }),
        (18, S::Z2xZ2) => match j % 4 {
            0 => clamp(5 * quarter - 3),
            2 => clamp(5 * quarter),
            _ => clamp(2 * half),
        },
        (36, S::Z2TransposeType) => {
            let t = half;
            clamp(if odd { 3 * t * (t - 1) / 2 } else { (t - 1) * (3 * t - 4) / 2 })
        }
        (36, S::Z2RowSwapType) => match j % 4 {
            0 => clamp(quarter - 1),
            2 => clamp(quarter),
            _ => Unlisted,
        },
        (72, S::Trivial) => {
            let t = if odd { half } else { quarter };
            match j % 4 {
                _ if odd && j >= 7 => clamp(t * (t - 1) * (t - 2) / 6),
                0 if j >= 8 => clamp(t * (t - 1) * (4 * t - 5) / 3),
                2 if j >= 10 => clamp(t * (t - 1) * (4 * t + 1) / 3),
                _ => NotApplicable,
            }
        }
        _ => Unlisted,
    }
}

/// Buckets the orbits of the reduced squares of magic number `j` and compares
/// each bucket with the orbit table.
pub fn verify_table1(j: u32) -> Result<Table1Report> {
    let reduced = reduced_squares(j)?;
    let orbits = orbit_decompose(&reduced)?;
    Ok(table1_report(j, &orbits))
}

pub fn table1_report(j: u32, orbits: &[Orbit]) -> Table1Report {
    let mut observed: BTreeMap<(usize, StabilizerClass), u64> = BTreeMap::new();
    for o in orbits {
        *observed.entry((o.size, o.stabilizer_class)).or_default() += 1;
    }
    let mut rows = Vec::new();
    let judge = |expected: &Expectation, seen: u64| match expected {
        Expectation::Formula(v) if *v == seen as i64 => RowStatus::Match,
        Expectation::Unlisted if seen == 0 => RowStatus::Match,
        Expectation::NotApplicable => RowStatus::NotApplicable,
        _ => RowStatus::Mismatch,
    };
    for (size, class) in TABLE1_BUCKETS {
        let expected = table1_expected(j, size, class);
        let seen = observed.remove(&(size, class)).unwrap_or(0);
        let status = judge(&expected, seen);
        rows.push(Table1Row {
            size,
            class,
            expected,
            observed: seen,
            status,
        });
    }
    // buckets the table has no row for
    for ((size, class), seen) in observed {
        rows.push(Table1Row {
            size,
            class,
            expected: Expectation::Unlisted,
            observed: seen,
            status: RowStatus::Mismatch,
        });
    }
    Table1Report {
        j,
        rows,
        total_size: orbits.iter().map(|o| o.size as u64).sum(),
        expected_total: n3_count(j as u64) as u64,
    }
}
