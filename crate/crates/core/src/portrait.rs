//! Text and SVG portraits: triangles of per-top-line statistics and hexagons
//! of `C` values.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::census::{is_trivial_zero, ZeroCensus};
use crate::cg::cg_hexagon;
use crate::error::{Error, Result};
use crate::square::{hex_region, topline_count, toplines, TopLine, DEFAULT_J_CAP};
use crate::Exec;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TriangleLabel {
    SquareCounts,
    ZeroCounts,
    TrivialCounts,
    /// Members per top line of one orbit of the zero locus, indexed in
    /// (size, representative) order.
    OrbitCounts(usize),
}

impl FromStr for TriangleLabel {
    type Err = Error;

    /// `squares`, `zeros`, `trivial`, or `orbit:<id>`.
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "squares" => Ok(TriangleLabel::SquareCounts),
            "zeros" => Ok(TriangleLabel::ZeroCounts),
            "trivial" => Ok(TriangleLabel::TrivialCounts),
            _ => s
                .strip_prefix("orbit:")
                .and_then(|id| id.parse().ok())
                .map(TriangleLabel::OrbitCounts)
                .ok_or_else(|| Error::Parse(format!("triangle label {s:?}"))),
        }
    }
}

/// Per-top-line values arranged as the triangle of compositions of `J`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrianglePortrait {
    pub j: u32,
    pub label: TriangleLabel,
    /// In triangle order (see [`toplines`]).
    pub values: Vec<(TopLine, u64)>,
}

impl TrianglePortrait {
    pub fn value(&self, top: TopLine) -> Option<u64> {
        self.values.iter().find(|(t, _)| *t == top).map(|(_, v)| *v)
    }

    /// Row `a` holds the top lines `(a, b, J-a-b)` for `b = 0..=J-a`.
    pub fn rows(&self) -> Vec<Vec<u64>> {
        let mut rows = vec![Vec::new(); self.j as usize + 1];
        for (t, v) in &self.values {
            rows[t.a as usize].push(*v);
        }
        rows
    }

    pub fn total(&self) -> u64 {
        self.values.iter().map(|(_, v)| v).sum()
    }
}

pub fn triangle(j: u32, label: TriangleLabel) -> Result<TrianglePortrait> {
    triangle_with(j, label, DEFAULT_J_CAP, Exec::Serial)
}

pub fn triangle_with(j: u32, label: TriangleLabel, cap: u32, exec: Exec) -> Result<TrianglePortrait> {
    if j > cap {
        return Err(Error::CapExceeded { j, cap });
    }
    if label == TriangleLabel::SquareCounts {
        let values = toplines(j).into_iter().map(|t| (t, topline_count(t))).collect();
        return Ok(TrianglePortrait { j, label, values });
    }
    triangle_from_census(&ZeroCensus::compute(j, cap, exec)?, label)
}

pub fn triangle_from_census(census: &ZeroCensus, label: TriangleLabel) -> Result<TrianglePortrait> {
    let j = census.j;
    let mut counts: BTreeMap<TopLine, u64> = BTreeMap::new();
    let mut tally = |squares: &mut dyn Iterator<Item = &crate::square::SemiMagicSquare>| {
        for m in squares {
            *counts.entry(m.top_line()).or_default() += 1;
        }
    };
    match label {
        TriangleLabel::SquareCounts => {
            return Ok(TrianglePortrait {
                j,
                label,
                values: toplines(j).into_iter().map(|t| (t, topline_count(t))).collect(),
            })
        }
        TriangleLabel::ZeroCounts => tally(&mut census.zeros.iter()),
        TriangleLabel::TrivialCounts => tally(&mut census.zeros.iter().filter(|m| is_trivial_zero(m))),
        TriangleLabel::OrbitCounts(id) => {
            let orbit = census.orbits.get(id).ok_or(Error::UnknownOrbit {
                id,
                count: census.orbits.len(),
            })?;
            tally(&mut orbit.members.iter())
        }
    }
    let values = toplines(j)
        .into_iter()
        .map(|t| (t, counts.get(&t).copied().unwrap_or(0)))
        .collect();
    Ok(TrianglePortrait { j, label, values })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HexKind {
    Cg,
    Occupancy,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HexCell {
    Value(BigInt),
    Star,
}

impl HexCell {
    fn text(&self) -> String {
        match self {
            HexCell::Value(v) => v.to_string(),
            HexCell::Star => "*".to_string(),
        }
    }
}

/// One hexagon: rows `r = 0..=b+k`, columns `c = 0..=a+b`, cells only at
/// feasible points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HexPortrait {
    pub top: TopLine,
    pub cells: BTreeMap<(u32, u32), HexCell>,
}

impl HexPortrait {
    pub fn dims(&self) -> (u32, u32) {
        (self.top.b + self.top.k + 1, self.top.a + self.top.b + 1)
    }

    pub fn value(&self, r: u32, c: u32) -> Option<&BigInt> {
        match self.cells.get(&(r, c)) {
            Some(HexCell::Value(v)) => Some(v),
            _ => None,
        }
    }
}

pub fn hexagon(top: TopLine, kind: HexKind) -> HexPortrait {
    let cells = match kind {
        HexKind::Occupancy => hex_region(top)
            .points
            .into_iter()
            .map(|p| (p, HexCell::Star))
            .collect(),
        HexKind::Cg => cg_hexagon::<BigInt>(top)
            .expect("BigInt cannot overflow")
            .into_iter()
            .map(|(p, v)| (p, HexCell::Value(v.0)))
            .collect(),
    };
    HexPortrait { top, cells }
}

pub trait Render {
    fn render_text(&self) -> String;
    fn render_svg(&self) -> String;
}

pub fn render_text<P: Render>(portrait: &P) -> String {
    portrait.render_text()
}

pub fn render_svg<P: Render>(portrait: &P) -> String {
    portrait.render_svg()
}

/// Even cell width at least one wider than the widest entry.
fn cell_width<'a>(texts: impl Iterator<Item = &'a str>) -> usize {
    let w = texts.map(str::len).max().unwrap_or(1) + 1;
    w + w % 2
}

const SVG_CELL: usize = 40;

fn svg_open(width: usize, height: usize) -> String {
    format!(
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n\
         <svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{width}\" height=\"{height}\" \
         font-family=\"monospace\" font-size=\"12\" text-anchor=\"middle\">\n"
    )
}

fn svg_cell(out: &mut String, x: usize, y: usize, text: &str, fill: &str) {
    let _ = writeln!(
        out,
        "  <rect x=\"{x}\" y=\"{y}\" width=\"{SVG_CELL}\" height=\"{SVG_CELL}\" fill=\"{fill}\" stroke=\"#999999\"/>"
    );
    let _ = writeln!(
        out,
        "  <text x=\"{}\" y=\"{}\">{text}</text>",
        x + SVG_CELL / 2,
        y + SVG_CELL / 2 + 4
    );
}

impl Render for TrianglePortrait {
    /// Row `a` is shifted right by `a` half-cells.
    fn render_text(&self) -> String {
        let texts: Vec<String> = self.values.iter().map(|(_, v)| v.to_string()).collect();
        let w = cell_width(texts.iter().map(String::as_str));
        let mut out = String::new();
        for (a, row) in self.rows().iter().enumerate() {
            let mut line = " ".repeat(a * w / 2);
            for v in row {
                let _ = write!(line, "{v:>w$}");
            }
            out.push_str(line.trim_end());
            out.push('\n');
        }
        out
    }

    fn render_svg(&self) -> String {
        let n = self.j as usize + 1;
        let mut out = svg_open(n * SVG_CELL, n * SVG_CELL);
        for (a, row) in self.rows().iter().enumerate() {
            for (b, v) in row.iter().enumerate() {
                let x = a * SVG_CELL / 2 + b * SVG_CELL;
                let fill = if *v == 0 { "#ffffff" } else { "#dde8f5" };
                svg_cell(&mut out, x, a * SVG_CELL, &v.to_string(), fill);
            }
        }
        out.push_str("</svg>\n");
        out
    }
}

impl Render for HexPortrait {
    fn render_text(&self) -> String {
        let texts: Vec<String> = self.cells.values().map(HexCell::text).collect();
        let w = cell_width(texts.iter().map(String::as_str));
        let (rows, cols) = self.dims();
        let mut out = String::new();
        for r in 0..rows {
            let mut line = String::new();
            for c in 0..cols {
                let t = self.cells.get(&(r, c)).map(HexCell::text).unwrap_or_default();
                let _ = write!(line, "{t:>w$}");
            }
            out.push_str(line.trim_end());
            out.push('\n');
        }
        out
    }

    fn render_svg(&self) -> String {
        let (rows, cols) = self.dims();
        let mut out = svg_open(cols as usize * SVG_CELL, rows as usize * SVG_CELL);
        for ((r, c), cell) in &self.cells {
            let fill = match cell {
                HexCell::Value(v) if *v == BigInt::from(0) => "#f5c6c6",
                _ => "#dde8f5",
            };
            svg_cell(
                &mut out,
                *c as usize * SVG_CELL,
                *r as usize * SVG_CELL,
                &cell.text(),
                fill,
            );
        }
        out.push_str("</svg>\n");
        out
    }
}
