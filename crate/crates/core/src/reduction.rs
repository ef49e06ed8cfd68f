//! Shifting by the all-ones square `U`: minimal entries, reduced squares and
//! the partition of each magic number by smallest value.

use std::collections::BTreeMap;

use crate::error::Result;
use crate::square::{enumerate, h3, SemiMagicSquare};

/// `M = s U + N` with `N` reduced (containing a zero entry).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReducedDecomposition {
    pub s: u32,
    pub reduced: SemiMagicSquare,
}

pub fn min_entry(m: &SemiMagicSquare) -> u32 {
    m.min_entry()
}

pub fn is_reduced(m: &SemiMagicSquare) -> bool {
    m.min_entry() == 0
}

pub fn reduce(m: &SemiMagicSquare) -> ReducedDecomposition {
    let s = m.min_entry();
    ReducedDecomposition {
        s,
        reduced: SemiMagicSquare::from_cells(m.cells().map(|row| row.map(|v| v - s))),
    }
}

/// `M + s U`.
pub fn shift(m: &SemiMagicSquare, s: u32) -> SemiMagicSquare {
    SemiMagicSquare::from_cells(m.cells().map(|row| row.map(|v| v + s)))
}

/// `|N_3(J)| = H_3(J) - H_3(J-3)`, with `H_3` of a negative argument taken as 0.
pub fn n3_count(j: u64) -> u128 {
    h3(j) - if j >= 3 { h3(j - 3) } else { 0 }
}

/// The reduced squares of magic number `j`, in enumeration order.
pub fn reduced_squares(j: u32) -> Result<Vec<SemiMagicSquare>> {
    Ok(enumerate(j)?.into_iter().filter(is_reduced).collect())
}

/// Blocks `s U + N_3(J - 3s)` keyed by the smallest entry `s`.
pub fn partition_by_smallest(j: u32) -> Result<BTreeMap<u32, Vec<SemiMagicSquare>>> {
    let mut blocks = BTreeMap::new();
    for s in 0..=j / 3 {
        let block = reduced_squares(j - 3 * s)?
            .iter()
            .map(|n| shift(n, s))
            .collect();
        blocks.insert(s, block);
    }
    Ok(blocks)
}
