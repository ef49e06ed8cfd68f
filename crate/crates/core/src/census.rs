//! The zero locus of `C(M)` per magic number: census records, trivial zeros
//! and their orbits, and the determinant-zero comparison.

use std::collections::HashSet;
use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cg::ZeroTester;
use crate::error::{Error, Result};
use crate::square::{
    from_topline_rc, hex_region, toplines, SemiMagicSquare, TopLine, DEFAULT_J_CAP,
};
use crate::symmetry::{orbit, orbit_decompose, Orbit};
use crate::Exec;

/// A zero of `C` as seven integers: the five parameters of the square, its
/// minimal entry and its determinant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ZeroRecord {
    pub a: u32,
    pub b: u32,
    pub k: u32,
    pub r: u32,
    pub c: u32,
    pub min_entry: u32,
    pub det: i128,
}

impl ZeroRecord {
    pub fn from_square(m: &SemiMagicSquare) -> Self {
        let top = m.top_line();
        ZeroRecord {
            a: top.a,
            b: top.b,
            k: top.k,
            r: m.r(),
            c: m.c(),
            min_entry: m.min_entry(),
            det: m.determinant(),
        }
    }

    pub fn top_line(&self) -> TopLine {
        TopLine::new(self.a, self.b, self.k)
    }

    pub fn magic_number(&self) -> u32 {
        self.a + self.b + self.k
    }

    pub fn square(&self) -> Result<SemiMagicSquare> {
        from_topline_rc(self.top_line(), self.r as i64, self.c as i64)
    }
}

fn zeros_of_topline(top: TopLine, tester: &ZeroTester) -> Vec<SemiMagicSquare> {
    hex_region(top)
        .points
        .into_iter()
        .map(|(r, c)| from_topline_rc(top, r as i64, c as i64).expect("region point"))
        .filter(|m| tester.is_zero(m))
        .collect()
}

/// Squares of magic number `j` with `C(M) = 0`, in enumeration order.
pub fn zero_squares(j: u32, cap: u32, exec: Exec) -> Result<Vec<SemiMagicSquare>> {
    if j > cap {
        return Err(Error::CapExceeded { j, cap });
    }
    let tester = ZeroTester::new(j);
    let tops = toplines(j);
    Ok(match exec {
        Exec::Serial => tops.into_iter().flat_map(|t| zeros_of_topline(t, &tester)).collect(),
        Exec::Parallel => tops
            .into_par_iter()
            .map(|t| zeros_of_topline(t, &tester))
            .collect::<Vec<_>>()
            .concat(),
    })
}

pub fn zero_locus(j: u32) -> Result<Vec<ZeroRecord>> {
    zero_locus_with(j, DEFAULT_J_CAP, Exec::Serial)
}

pub fn zero_locus_with(j: u32, cap: u32, exec: Exec) -> Result<Vec<ZeroRecord>> {
    Ok(zero_squares(j, cap, exec)?
        .iter()
        .map(ZeroRecord::from_square)
        .collect())
}

/// All entries positive, `J` odd, and two equal rows or two equal columns.
pub fn is_trivial_zero(m: &SemiMagicSquare) -> bool {
    if m.magic_number().is_multiple_of(2) || m.min_entry() == 0 {
        return false;
    }
    let matching = |lines: [[u32; 3]; 3]| {
        lines[0] == lines[1] || lines[0] == lines[2] || lines[1] == lines[2]
    };
    matching(m.rows()) || matching(m.columns())
}

/// The zero locus of one magic number split into orbits.
#[derive(Debug, Clone)]
pub struct ZeroCensus {
    pub j: u32,
    pub zeros: Vec<SemiMagicSquare>,
    /// Sorted by (size, representative).
    pub orbits: Vec<Orbit>,
}

impl ZeroCensus {
    pub fn compute(j: u32, cap: u32, exec: Exec) -> Result<Self> {
        let zeros = zero_squares(j, cap, exec)?;
        let orbits = orbit_decompose(&zeros)?;
        Ok(ZeroCensus { j, zeros, orbits })
    }

    pub fn records(&self) -> Vec<ZeroRecord> {
        self.zeros.iter().map(ZeroRecord::from_square).collect()
    }

    pub fn trivial_zeros(&self) -> impl Iterator<Item = &SemiMagicSquare> {
        self.zeros.iter().filter(|m| is_trivial_zero(m))
    }

    pub fn trivial_orbits(&self) -> impl Iterator<Item = &Orbit> {
        self.orbits.iter().filter(|o| is_trivial_zero(&o.representative))
    }

    pub fn nontrivial_orbits(&self) -> impl Iterator<Item = &Orbit> {
        self.orbits.iter().filter(|o| !is_trivial_zero(&o.representative))
    }

    pub fn trivial_census(&self) -> TrivialCensus {
        let orbits: Vec<Orbit> = self.trivial_orbits().cloned().collect();
        TrivialCensus {
            j: self.j,
            h3t: orbits.iter().map(|o| o.size as u64).sum(),
            o3t: orbits.len() as u64,
            orbits,
        }
    }

    pub fn detzero_comparison(&self) -> DetZeroReport {
        let det_zero = self.zeros.iter().filter(|m| m.determinant() == 0).count();
        let trivial = self.trivial_zeros().count();
        let nontrivial: Vec<ZeroRecord> = self
            .zeros
            .iter()
            .filter(|m| !is_trivial_zero(m))
            .map(ZeroRecord::from_square)
            .collect();
        DetZeroReport {
            j: self.j,
            zeros: self.zeros.len(),
            det_zero,
            trivial,
            nontrivial_det_zero: det_zero - trivial,
            nontrivial,
        }
    }
}

/// Counts of trivial zeros (`H_3^T`) and trivial orbits (`O_3^T`).
#[derive(Debug, Clone)]
pub struct TrivialCensus {
    pub j: u32,
    pub h3t: u64,
    pub o3t: u64,
    pub orbits: Vec<Orbit>,
}

pub fn trivial_census(j: u32) -> Result<TrivialCensus> {
    Ok(ZeroCensus::compute(j, DEFAULT_J_CAP, Exec::Serial)?.trivial_census())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DetZeroReport {
    pub j: u32,
    pub zeros: usize,
    /// Zeros whose determinant vanishes.
    pub det_zero: usize,
    /// Trivial zeros; each has determinant zero.
    pub trivial: usize,
    /// `det_zero - trivial`: non-trivial zeros hiding among the singular ones.
    pub nontrivial_det_zero: usize,
    pub nontrivial: Vec<ZeroRecord>,
}

pub fn detzero_comparison(j: u32) -> Result<DetZeroReport> {
    Ok(ZeroCensus::compute(j, DEFAULT_J_CAP, Exec::Serial)?.detzero_comparison())
}

/// The square with top line `top` whose lower two rows are equal, i.e. the
/// fixed point of the lower-row swap at the center of the hexagon.
pub fn hexagon_center(top: TopLine) -> Option<SemiMagicSquare> {
    let (a, b, k) = (top.a as i64, top.b as i64, top.k as i64);
    if (b + k) % 2 != 0 || (a + k) % 2 != 0 {
        return None;
    }
    from_topline_rc(top, (b + k) / 2, (a + b) / 2).ok()
}

/// Size of the union of the trivial orbits through the hexagon centers of
/// `tops` (the orbit named by a top line). Top lines of another magic number,
/// or whose center is not a trivial zero, contribute nothing.
pub fn star_union(j: u32, tops: &[TopLine]) -> Result<usize> {
    if j > DEFAULT_J_CAP {
        return Err(Error::CapExceeded { j, cap: DEFAULT_J_CAP });
    }
    let mut union: HashSet<SemiMagicSquare> = HashSet::new();
    for top in tops.iter().filter(|t| t.magic_number() == j) {
        if let Some(center) = hexagon_center(*top).filter(is_trivial_zero) {
            union.extend(orbit(&center).members);
        }
    }
    Ok(union.len())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CsvSort {
    /// Determinant, then minimal entry, then `(a, b, k, r, c)`.
    #[default]
    DetThenMin,
    EnumOrder,
}

fn sorted(records: &[ZeroRecord], sort: CsvSort) -> Vec<ZeroRecord> {
    let mut out = records.to_vec();
    if sort == CsvSort::DetThenMin {
        out.sort_by_key(|z| (z.det, z.min_entry, z.a, z.b, z.k, z.r, z.c));
    }
    out
}

#[derive(Debug, Serialize, Deserialize)]
struct Row {
    #[serde(rename = "J")]
    j: u32,
    a: u32,
    b: u32,
    k: u32,
    r: u32,
    c: u32,
    min: u32,
    det: i128,
}

impl From<&ZeroRecord> for Row {
    fn from(z: &ZeroRecord) -> Self {
        Row {
            j: z.magic_number(),
            a: z.a,
            b: z.b,
            k: z.k,
            r: z.r,
            c: z.c,
            min: z.min_entry,
            det: z.det,
        }
    }
}

pub const CSV_HEADER: &str = "J,a,b,k,r,c,min,det";

pub fn write_csv<W: Write>(out: W, records: &[ZeroRecord], sort: CsvSort) -> Result<()> {
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    w.write_record(CSV_HEADER.split(','))?;
    for z in sorted(records, sort) {
        w.serialize(Row::from(&z))?;
    }
    w.flush().map_err(|e| Error::Csv(e.to_string()))?;
    Ok(())
}

/// `J,a,b,k,r,c,min,det` with LF line endings.
pub fn export_csv(records: &[ZeroRecord], sort: CsvSort) -> Result<Vec<u8>> {
    let mut buf = Vec::new();
    write_csv(&mut buf, records, sort)?;
    Ok(buf)
}

pub fn parse_csv(bytes: &[u8]) -> Result<Vec<ZeroRecord>> {
    let mut rdr = csv::ReaderBuilder::new().has_headers(true).from_reader(bytes);
    let header: Vec<String> = rdr.headers()?.iter().map(str::to_string).collect();
    if header.join(",") != CSV_HEADER {
        return Err(Error::Csv(format!("unexpected header {:?}", header.join(","))));
    }
    rdr.deserialize::<Row>()
        .map(|row| {
            let row = row?;
            let z = ZeroRecord {
                a: row.a,
                b: row.b,
                k: row.k,
                r: row.r,
                c: row.c,
                min_entry: row.min,
                det: row.det,
            };
            if z.magic_number() != row.j {
                return Err(Error::Csv(format!("J = {} disagrees with top line", row.j)));
            }
            Ok(z)
        })
        .collect()
}

/// The CSV fields as a JSON array of objects.
pub fn export_json(records: &[ZeroRecord], sort: CsvSort) -> Result<Vec<u8>> {
    let rows: Vec<Row> = sorted(records, sort).iter().map(Row::from).collect();
    let mut buf = serde_json::to_vec_pretty(&rows)?;
    buf.push(b'\n');
    Ok(buf)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cg::cg_value;
    use num_traits::Zero;

    fn sq(rows: [[i64; 3]; 3]) -> SemiMagicSquare {
        SemiMagicSquare::new(rows).unwrap()
    }

    #[test]
    fn zero_locus_examples() {
        assert_eq!(zero_locus(8).unwrap().len(), 18);
        assert_eq!(zero_locus(2).unwrap().len(), 0);
        let j8 = zero_locus(8).unwrap();
        assert!(j8.contains(&ZeroRecord::from_square(&sq([[2, 5, 1], [2, 1, 5], [4, 2, 2]]))));
        for z in &j8 {
            assert!(cg_value(&z.square().unwrap()).is_zero());
        }
        assert!(matches!(
            zero_locus_with(70, 64, Exec::Serial),
            Err(Error::CapExceeded { j: 70, cap: 64 })
        ));
    }

    #[test]
    fn trivial_zero_examples() {
        assert!(is_trivial_zero(&SemiMagicSquare::ones()));
        assert!(is_trivial_zero(&sq([[1, 5, 9], [7, 5, 3], [7, 5, 3]])));
        assert!(!is_trivial_zero(&sq([[9, 3, 3], [3, 11, 1], [3, 1, 11]])));
        // matching lines but a zero entry
        assert!(!is_trivial_zero(&sq([[3, 0, 0], [0, 0, 3], [0, 3, 0]])));
        assert!(!is_trivial_zero(&sq([[2, 1, 1], [1, 2, 1], [1, 1, 2]])));
        // even J with matching rows
        assert!(!is_trivial_zero(&sq([[2, 2, 2], [2, 2, 2], [2, 2, 2]])));
    }

    #[test]
    fn census_examples() {
        let t4 = trivial_census(4).unwrap();
        assert_eq!((t4.h3t, t4.o3t, t4.orbits.len()), (0, 0, 0));
        let t5 = trivial_census(5).unwrap();
        assert_eq!((t5.h3t, t5.o3t), (9, 1));
        let d8 = detzero_comparison(8).unwrap();
        assert_eq!(d8.trivial, 0);
        assert_eq!(d8.nontrivial.len(), 18);
    }

    #[test]
    fn star_union_examples() {
        assert_eq!(star_union(15, &[TopLine::new(5, 5, 5)]).unwrap(), 1);
        assert_eq!(star_union(13, &[]).unwrap(), 0);
        assert_eq!(star_union(15, &[TopLine::new(2, 5, 1)]).unwrap(), 0);
        assert_eq!(
            hexagon_center(TopLine::new(1, 5, 9)),
            Some(sq([[1, 5, 9], [7, 5, 3], [7, 5, 3]]))
        );
        assert_eq!(hexagon_center(TopLine::new(2, 5, 1)), None);
    }

    #[test]
    fn csv_export() {
        assert_eq!(export_csv(&[], CsvSort::DetThenMin).unwrap(), b"J,a,b,k,r,c,min,det\n");
        let recs = zero_locus(8).unwrap();
        let bytes = export_csv(&recs, CsvSort::DetThenMin).unwrap();
        let text = String::from_utf8(bytes.clone()).unwrap();
        assert_eq!(text.lines().count(), 19);
        assert!(!text.contains('\r'));
        assert!(text.lines().all(|l| !l.ends_with(',')));
        let back = parse_csv(&bytes).unwrap();
        let mut expect = recs.clone();
        expect.sort_by_key(|z| (z.det, z.min_entry, z.a, z.b, z.k, z.r, z.c));
        assert_eq!(back, expect);
        let enum_order = export_csv(&recs, CsvSort::EnumOrder).unwrap();
        assert_eq!(parse_csv(&enum_order).unwrap(), recs);
        assert!(parse_csv(b"J,a,b\n1,2,3\n").is_err());
        assert!(parse_csv(b"J,a,b,k,r,c,min,det\n9,2,5,1,2,2,1,64\n").is_err());
    }

    #[test]
    fn json_export() {
        let recs = zero_locus(8).unwrap();
        let bytes = export_json(&recs[..1], CsvSort::EnumOrder).unwrap();
        let v: serde_json::Value = serde_json::from_slice(&bytes).unwrap();
        let obj = &v[0];
        assert_eq!(obj["J"], 8);
        assert_eq!(obj["a"], recs[0].a);
        assert_eq!(obj["det"].as_i64().unwrap() as i128, recs[0].det);
    }
}
