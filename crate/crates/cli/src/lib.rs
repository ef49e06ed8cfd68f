//! Command-line surface of the `semimagic` library.
//!
//! [`run`] is the whole program minus process plumbing, so tests can drive it
//! in-process. Exit codes: 0 success, 1 failed verification or runtime error,
//! 2 usage error (including a magic number above `--cap`).

pub mod verify;

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use semimagic::census::{hexagon_center, write_csv};
use semimagic::portrait::{hexagon, HexKind, Render, TriangleLabel};
use semimagic::reduction::reduced_squares;
use semimagic::symmetry::{stabilizer, table1_report, RowStatus};
use semimagic::{
    cg_series_oracle, cg_sum, enumerate_with, export_json, from_topline_rc, hex_region, orbit,
    orbit_decompose, star_union, trivial_zero_quasipoly, CsvSort, Error, Exec, Gf, GroupElement,
    Orbit, SemiMagicSquare, TopLine, ZeroCensus, DEFAULT_J_CAP,
};
use serde::Serialize;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "semimagic", version, about = "Exact census of 3x3 semi-magic squares and the zeros of their Clebsch-Gordan function")]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Largest magic number accepted without complaint.
    #[arg(long, global = true, default_value_t = DEFAULT_J_CAP)]
    pub cap: u32,
    /// Write output to this file instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads: 1 runs serially, 0 uses every core. Output is the same either way.
    #[arg(long, global = true, default_value_t = 0)]
    pub threads: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Number of squares of magic number J, or of one top line.
    Count(CountArgs),
    /// List squares of magic number J (optionally of one top line).
    Enumerate(EnumerateArgs),
    /// Evaluate C(M) for one square.
    Cg(CgArgs),
    /// Hexagon portrait of one top line.
    Hexagon(HexagonArgs),
    /// Triangle portrait of per-top-line counts.
    Triangle(TriangleArgs),
    /// The zeros of C at magic number J.
    Zeros(ZerosArgs),
    /// Orbits under the 72-element symmetry group.
    Orbits(OrbitsArgs),
    /// Trivial/non-trivial census of the zeros at magic number J.
    Census(CensusArgs),
    /// Cross-check closed forms, generating functions and enumeration.
    Verify(VerifyArgs),
    /// Series coefficients of a rational generating function.
    Series(SeriesArgs),
}

#[derive(Debug, Args)]
pub struct CountArgs {
    #[arg(long, required_unless_present = "top", conflicts_with = "top")]
    pub j: Option<u32>,
    #[arg(long)]
    pub top: Option<TopLine>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ListFormat {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PortraitFormat {
    Text,
    Svg,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Text,
    Json,
}

#[derive(Debug, Args)]
pub struct EnumerateArgs {
    #[arg(long, required_unless_present = "top")]
    pub j: Option<u32>,
    /// Restrict to one top line.
    #[arg(long)]
    pub top: Option<TopLine>,
    #[arg(long, value_enum, default_value_t = ListFormat::Text)]
    pub format: ListFormat,
}

#[derive(Debug, Args)]
pub struct CgArgs {
    #[arg(long, requires = "rc", conflicts_with = "square")]
    pub top: Option<TopLine>,
    /// Hexagon coordinates `r,c`.
    #[arg(long, requires = "top", value_parser = parse_pair)]
    pub rc: Option<(i64, i64)>,
    /// File holding the square, three rows of three integers (`-` for stdin).
    #[arg(long, required_unless_present = "top")]
    pub square: Option<PathBuf>,
    /// Use the generating-function evaluator instead of the binomial sum.
    #[arg(long)]
    pub oracle: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum HexWhat {
    Cg,
    Occupancy,
}

#[derive(Debug, Args)]
pub struct HexagonArgs {
    #[arg(long)]
    pub top: TopLine,
    #[arg(long, value_enum, default_value_t = HexWhat::Cg)]
    pub what: HexWhat,
    #[arg(long, value_enum, default_value_t = PortraitFormat::Text)]
    pub format: PortraitFormat,
}

#[derive(Debug, Args)]
pub struct TriangleArgs {
    #[arg(long)]
    pub j: u32,
    /// `squares`, `zeros`, `trivial` or `orbit:<id>` (ids as listed by `orbits`).
    #[arg(long, default_value = "squares")]
    pub label: TriangleLabel,
    #[arg(long, value_enum, default_value_t = PortraitFormat::Text)]
    pub format: PortraitFormat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SortArg {
    DetThenMin,
    Enum,
}

#[derive(Debug, Args)]
pub struct ZerosArgs {
    #[arg(long)]
    pub j: u32,
    #[arg(long, value_enum, default_value_t = ListFormat::Text)]
    pub format: ListFormat,
    #[arg(long, value_enum, default_value_t = SortArg::DetThenMin)]
    pub sort: SortArg,
}

#[derive(Debug, Args)]
pub struct OrbitsArgs {
    #[arg(long, required_unless_present = "square", conflicts_with = "square")]
    pub j: Option<u32>,
    /// Decompose the zero locus (default).
    #[arg(long, conflicts_with = "reduced")]
    pub zeros: bool,
    /// Decompose the reduced squares and compare with the orbit table.
    #[arg(long)]
    pub reduced: bool,
    /// Orbit of the square in this file (`-` for stdin).
    #[arg(long)]
    pub square: Option<PathBuf>,
    /// Print only the image of `--square` under this group element, e.g. `R(23)C(e)T`.
    #[arg(long, requires = "square")]
    pub act: Option<GroupElement>,
    #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
    pub format: ReportFormat,
}

#[derive(Debug, Args)]
pub struct CensusArgs {
    #[arg(long)]
    pub j: u32,
    /// Report the union of the trivial orbits through these top lines (repeatable).
    #[arg(long)]
    pub star: Vec<TopLine>,
    #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
    pub format: ReportFormat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    All,
    Counts,
    Cg,
    Table1,
    Gf,
    Census,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 24)]
    pub max_j: u32,
    #[arg(long, value_enum, default_value_t = Suite::All)]
    pub suite: Suite,
    #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
    pub format: ReportFormat,
}

#[derive(Debug, Args)]
pub struct SeriesArgs {
    /// A rational function such as `(1+x+x^2)/(1-x)^5`.
    #[arg(long)]
    pub gf: Gf,
    /// Number of coefficients, starting at x^0.
    #[arg(long, default_value_t = 20)]
    pub terms: usize,
}

fn parse_pair(s: &str) -> Result<(i64, i64), String> {
    let (r, c) = s.split_once(',').ok_or("expected r,c")?;
    let parse = |t: &str| t.trim().parse::<i64>().map_err(|e| format!("{t:?}: {e}"));
    Ok((parse(r)?, parse(c)?))
}

/// A bad combination of otherwise well-formed flags.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

/// What a command produced, before it is routed to `--out` or the writer.
struct Outcome {
    bytes: Vec<u8>,
    passed: bool,
}

impl Outcome {
    fn ok(bytes: impl Into<Vec<u8>>) -> Self {
        Outcome { bytes: bytes.into(), passed: true }
    }
}

/// Parses `args` (program name first) and runs the command, writing results
/// to `out` and diagnostics to `err`.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(&cli) {
        Ok(outcome) => {
            let written = match &cli.common.out {
                Some(path) => fs::write(path, &outcome.bytes).with_context(|| format!("writing {}", path.display())),
                None => out.write_all(&outcome.bytes).map_err(Into::into),
            };
            if let Err(e) = written {
                let _ = writeln!(err, "error: {e:#}");
                return EXIT_FAILURE;
            }
            if outcome.passed {
                EXIT_OK
            } else {
                EXIT_FAILURE
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            let usage = e.downcast_ref::<Usage>().is_some()
                || matches!(e.downcast_ref::<Error>(), Some(Error::CapExceeded { .. }));
            if usage {
                EXIT_USAGE
            } else {
                EXIT_FAILURE
            }
        }
    }
}

fn execute(cli: &Cli) -> anyhow::Result<Outcome> {
    let common = &cli.common;
    let exec = if common.threads == 1 { Exec::Serial } else { Exec::Parallel };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(common.threads)
        .build()
        .context("starting worker threads")?;
    pool.install(|| dispatch(&cli.command, common.cap, exec))
}

fn check_cap(j: u32, cap: u32) -> anyhow::Result<()> {
    if j > cap {
        return Err(Error::CapExceeded { j, cap }.into());
    }
    Ok(())
}

fn dispatch(command: &Command, cap: u32, exec: Exec) -> anyhow::Result<Outcome> {
    match command {
        Command::Count(a) => count(a, cap, exec),
        Command::Enumerate(a) => enumerate(a, cap, exec),
        Command::Cg(a) => cg(a),
        Command::Hexagon(a) => hexagon_cmd(a),
        Command::Triangle(a) => triangle_cmd(a, cap, exec),
        Command::Zeros(a) => zeros(a, cap, exec),
        Command::Orbits(a) => orbits(a, cap, exec),
        Command::Census(a) => census(a, cap, exec),
        Command::Verify(a) => {
            check_cap(a.max_j, cap)?;
            let report = verify::run_suite(a.max_j, a.suite, exec)?;
            let bytes = match a.format {
                ReportFormat::Text => report.to_text(),
                ReportFormat::Json => json(&report)?,
            };
            Ok(Outcome { bytes: bytes.into_bytes(), passed: report.passed() })
        }
        Command::Series(a) => {
            let coeffs = match a.terms {
                0 => Vec::new(),
                n => a.gf.series_coeffs(n - 1)?,
            };
            let line: Vec<String> = coeffs.iter().map(BigInt::to_string).collect();
            Ok(Outcome::ok(format!("{}\n", line.join(","))))
        }
    }
}

fn json<T: Serialize>(value: &T) -> anyhow::Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

/// `a b k / r . . / . . c` flattened to one line.
pub fn one_line(m: &SemiMagicSquare) -> String {
    m.rows()
        .iter()
        .map(|r| format!("{} {} {}", r[0], r[1], r[2]))
        .collect::<Vec<_>>()
        .join(" / ")
}

fn read_square(path: &PathBuf) -> anyhow::Result<SemiMagicSquare> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        s
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?
    };
    Ok(text.parse()?)
}

fn count(a: &CountArgs, cap: u32, exec: Exec) -> anyhow::Result<Outcome> {
    let n = match (a.j, a.top) {
        (_, Some(top)) => hex_region(top).len(),
        (Some(j), None) => enumerate_with(j, cap, exec)?.len(),
        (None, None) => bail!(Usage("count needs --j or --top".into())),
    };
    Ok(Outcome::ok(format!("{n}\n")))
}

fn enumerate(a: &EnumerateArgs, cap: u32, exec: Exec) -> anyhow::Result<Outcome> {
    if let (Some(j), Some(top)) = (a.j, a.top) {
        if top.magic_number() != j {
            bail!(Usage(format!("top line {top} has magic number {}, not {j}", top.magic_number())));
        }
    }
    let squares: Vec<SemiMagicSquare> = match a.top {
        Some(top) => {
            check_cap(top.magic_number(), cap)?;
            hex_region(top)
                .points
                .iter()
                .map(|&(r, c)| from_topline_rc(top, r as i64, c as i64))
                .collect::<Result<_, _>>()?
        }
        None => enumerate_with(a.j.expect("clap requires --j"), cap, exec)?,
    };
    let bytes = match a.format {
        ListFormat::Text => squares.iter().map(|m| one_line(m) + "\n").collect::<String>().into_bytes(),
        ListFormat::Csv => {
            let mut s = String::from("J,a,b,k,r,c\n");
            for m in &squares {
                let t = m.top_line();
                s += &format!("{},{},{},{},{},{}\n", m.magic_number(), t.a, t.b, t.k, m.r(), m.c());
            }
            s.into_bytes()
        }
        ListFormat::Json => json(&squares.iter().map(|m| m.rows()).collect::<Vec<_>>())?.into_bytes(),
    };
    Ok(Outcome::ok(bytes))
}

fn cg(a: &CgArgs) -> anyhow::Result<Outcome> {
    let m = match (&a.square, a.top, a.rc) {
        (Some(path), _, _) => read_square(path)?,
        (None, Some(top), Some((r, c))) => from_topline_rc(top, r, c)?,
        _ => bail!(Usage("cg needs --square FILE or --top a,b,k with --rc r,c".into())),
    };
    let value = if a.oracle { cg_series_oracle::<BigInt>(&m)? } else { cg_sum::<BigInt>(&m)? };
    Ok(Outcome::ok(format!("{value}\n")))
}

fn hexagon_cmd(a: &HexagonArgs) -> anyhow::Result<Outcome> {
    let kind = match a.what {
        HexWhat::Cg => HexKind::Cg,
        HexWhat::Occupancy => HexKind::Occupancy,
    };
    let p = hexagon(a.top, kind);
    let bytes = match a.format {
        PortraitFormat::Text => p.render_text(),
        PortraitFormat::Svg => p.render_svg(),
        PortraitFormat::Json => {
            let cells: Vec<(u32, u32, String)> = p
                .cells
                .iter()
                .map(|(&(r, c), v)| {
                    let text = match v {
                        semimagic::portrait::HexCell::Value(v) => v.to_string(),
                        semimagic::portrait::HexCell::Star => "*".to_string(),
                    };
                    (r, c, text)
                })
                .collect();
            json(&cells)?
        }
    };
    Ok(Outcome::ok(bytes))
}

fn triangle_cmd(a: &TriangleArgs, cap: u32, exec: Exec) -> anyhow::Result<Outcome> {
    let t = semimagic::portrait::triangle_with(a.j, a.label, cap, exec)?;
    let bytes = match a.format {
        PortraitFormat::Text => t.render_text(),
        PortraitFormat::Svg => t.render_svg(),
        PortraitFormat::Json => json(&t.rows())?,
    };
    Ok(Outcome::ok(bytes))
}

fn zeros(a: &ZerosArgs, cap: u32, exec: Exec) -> anyhow::Result<Outcome> {
    let records = semimagic::zero_locus_with(a.j, cap, exec)?;
    let sort = match a.sort {
        SortArg::DetThenMin => CsvSort::DetThenMin,
        SortArg::Enum => CsvSort::EnumOrder,
    };
    let bytes = match a.format {
        ListFormat::Csv => {
            let mut buf = Vec::new();
            write_csv(&mut buf, &records, sort)?;
            buf
        }
        ListFormat::Json => export_json(&records, sort)?,
        ListFormat::Text => {
            let mut ordered = records.clone();
            if sort == CsvSort::DetThenMin {
                ordered.sort_by_key(|z| (z.det, z.min_entry, z.a, z.b, z.k, z.r, z.c));
            }
            let mut s = String::new();
            for z in &ordered {
                s += &format!("{}  min={} det={}\n", one_line(&z.square()?), z.min_entry, z.det);
            }
            s.into_bytes()
        }
    };
    Ok(Outcome::ok(bytes))
}

#[derive(Serialize)]
struct OrbitRow {
    id: usize,
    size: usize,
    stabilizer_order: usize,
    stabilizer: String,
    trivial: bool,
    representative: [[u32; 3]; 3],
}

fn orbit_rows(orbits: &[Orbit]) -> Vec<OrbitRow> {
    orbits
        .iter()
        .enumerate()
        .map(|(id, o)| OrbitRow {
            id,
            size: o.size,
            stabilizer_order: o.stabilizer_order,
            stabilizer: o.stabilizer_class.name(),
            trivial: semimagic::is_trivial_zero(&o.representative),
            representative: o.representative.rows(),
        })
        .collect()
}

fn orbit_lines(rows: &[OrbitRow]) -> String {
    let mut s = String::new();
    for r in rows {
        let rep = SemiMagicSquare::new(r.representative.map(|row| row.map(i64::from))).expect("orbit member");
        s += &format!(
            "#{:<3} size {:>2}  stabilizer {:<14} {:<11} rep {}\n",
            r.id,
            r.size,
            format!("{}({})", r.stabilizer, r.stabilizer_order),
            if r.trivial { "trivial" } else { "non-trivial" },
            one_line(&rep)
        );
    }
    s
}

fn orbits(a: &OrbitsArgs, cap: u32, exec: Exec) -> anyhow::Result<Outcome> {
    if let Some(path) = &a.square {
        let m = read_square(path)?;
        if let Some(g) = a.act {
            return Ok(Outcome::ok(format!("{}\n", g.apply(&m))));
        }
        let o = orbit(&m);
        let stab: Vec<String> = stabilizer(&m).iter().map(ToString::to_string).collect();
        let bytes = match a.format {
            ReportFormat::Json => {
                #[derive(Serialize)]
                struct Single {
                    size: usize,
                    stabilizer: String,
                    elements: Vec<String>,
                    members: Vec<[[u32; 3]; 3]>,
                }
                json(&Single {
                    size: o.size,
                    stabilizer: o.stabilizer_class.name(),
                    elements: stab,
                    members: o.members.iter().map(|m| m.rows()).collect(),
                })?
            }
            ReportFormat::Text => {
                let mut s = format!(
                    "size {}  stabilizer {} of order {}: {}\n",
                    o.size,
                    o.stabilizer_class.name(),
                    o.stabilizer_order,
                    stab.join(" ")
                );
                for m in &o.members {
                    s += &(one_line(m) + "\n");
                }
                s
            }
        };
        return Ok(Outcome::ok(bytes));
    }
    let j = a.j.expect("clap requires --j without --square");
    check_cap(j, cap)?;
    let squares = if a.reduced { reduced_squares(j)? } else { semimagic::census::zero_squares(j, cap, exec)? };
    let decomposed = orbit_decompose(&squares)?;
    let rows = orbit_rows(&decomposed);
    if !a.reduced {
        let bytes = match a.format {
            ReportFormat::Json => json(&rows)?,
            ReportFormat::Text => format!("J={j}: {} zeros, {} orbits\n", squares.len(), rows.len()) + &orbit_lines(&rows),
        };
        return Ok(Outcome::ok(bytes));
    }
    let report = table1_report(j, &decomposed);
    let passed = report.all_match();
    let bytes = match a.format {
        ReportFormat::Json => {
            #[derive(Serialize)]
            struct Reduced<'a> {
                orbits: &'a [OrbitRow],
                table: &'a semimagic::Table1Report,
            }
            json(&Reduced { orbits: &rows, table: &report })?
        }
        ReportFormat::Text => {
            let mut s = format!("J={j}: {} reduced squares, {} orbits\n", squares.len(), rows.len());
            s += &orbit_lines(&rows);
            for r in &report.rows {
                let status = match r.status {
                    RowStatus::Match => "match",
                    RowStatus::Mismatch => "MISMATCH",
                    RowStatus::NotApplicable => "n/a",
                };
                s += &format!(
                    "table size {:>2} {:<10} expected {:<14} observed {:<4} {status}\n",
                    r.size,
                    r.class.name(),
                    format!("{:?}", r.expected),
                    r.observed
                );
            }
            s += &format!("sum of orbit sizes {} (expected {})\n", report.total_size, report.expected_total);
            s
        }
    };
    Ok(Outcome { bytes: bytes.into_bytes(), passed })
}

#[derive(Serialize)]
struct CensusSummary {
    j: u32,
    zeros: usize,
    orbits: usize,
    trivial_zeros: u64,
    trivial_orbits: u64,
    predicted_trivial_zeros: i64,
    nontrivial_zeros: usize,
    det_zero: usize,
    nontrivial_det_zero: usize,
    star: Option<usize>,
    orbit_list: Vec<OrbitRow>,
}

fn census(a: &CensusArgs, cap: u32, exec: Exec) -> anyhow::Result<Outcome> {
    let c = ZeroCensus::compute(a.j, cap, exec)?;
    let t = c.trivial_census();
    let d = c.detzero_comparison();
    let predicted = trivial_zero_quasipoly::<i64>().eval(a.j as u64)?;
    let star = if a.star.is_empty() { None } else { Some(star_union(a.j, &a.star)?) };
    let summary = CensusSummary {
        j: a.j,
        zeros: c.zeros.len(),
        orbits: c.orbits.len(),
        trivial_zeros: t.h3t,
        trivial_orbits: t.o3t,
        predicted_trivial_zeros: predicted,
        nontrivial_zeros: d.nontrivial.len(),
        det_zero: d.det_zero,
        nontrivial_det_zero: d.nontrivial_det_zero,
        star,
        orbit_list: orbit_rows(&c.orbits),
    };
    let bytes = match a.format {
        ReportFormat::Json => json(&summary)?,
        ReportFormat::Text => {
            let mut s = format!("J={}: {} zeros, {} orbits\n", a.j, summary.zeros, summary.orbits);
            s += &format!(
                "trivial: {} zeros in {} orbits (quasi-polynomial predicts {})\n",
                t.h3t, t.o3t, predicted
            );
            s += &format!("non-trivial: {} zeros\n", summary.nontrivial_zeros);
            s += &format!(
                "determinant zero: {} ({} of them non-trivial)\n",
                d.det_zero, d.nontrivial_det_zero
            );
            if let Some(n) = star {
                let tops: Vec<String> = a.star.iter().map(ToString::to_string).collect();
                let centers = a.star.iter().filter(|t| hexagon_center(**t).is_some()).count();
                s += &format!("star through {} ({} centered): {n} zeros\n", tops.join(" "), centers);
            }
            s += &orbit_lines(&summary.orbit_list);
            s
        }
    };
    Ok(Outcome::ok(bytes))
}
