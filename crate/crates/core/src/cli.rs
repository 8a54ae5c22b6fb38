//! Command-line front end: `mrbound <command> SPEC [options]`.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num_traits::Signed;

use crate::document::{parse_rational_literal, ParsedSpec, RecurrenceDoc};
use crate::error::{Error, Result};
use crate::heights::{finite_part_exact, height_k, lemma_check};
use crate::interval::{format_sig, RealInterval};
use crate::multirec::{format_subset, identically_vanishing_subsums, sample_points, shell, LatticePoint, MultiRecurrence};
use crate::numberfield::{DEFAULT_CAP, DEFAULT_PREC};
use crate::verifier::{evertse_probe, parse_rational, scan_shells, Place, ProbeReport, ScanReport, VerifierConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_UNDECIDED: i32 = 3;

const SIG_DIGITS: u32 = 12;
const DISPLAY_BITS: u32 = 48;

pub const SCAN_HEADER: &str = "N,min_ratio_lo,min_ratio_hi,argmin,points_total,skipped_vanishing,skipped_zero_f,undecided";
pub const PROBE_HEADER: &str =
    "N,c_emp_min_lo,c_emp_min_hi,argmin,running_min_lo,running_min_hi,points_evaluated,skipped,undecided";

#[derive(Parser, Debug)]
#[command(name = "mrbound", version, about = "Exact multi-recurrence evaluation and growth-bound scans over number fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Common {
    /// Recurrence document (JSON).
    spec: PathBuf,
    /// Embedding index used for |·|.
    #[arg(long, default_value_t = 0)]
    place: usize,
    /// Starting working precision in bits.
    #[arg(long, default_value_t = DEFAULT_PREC)]
    precision: u32,
}

#[derive(Args, Debug)]
struct ScanArgs {
    #[command(flatten)]
    common: Common,
    /// Comparison term, 1-based position in the document.
    #[arg(long)]
    i0: usize,
    /// Epsilon as a decimal or fraction.
    #[arg(long)]
    eps: String,
    #[arg(long = "max-norm")]
    max_norm: u64,
    /// Write CSV here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate G at a point exactly.
    Eval {
        #[command(flatten)]
        common: Common,
        /// Lattice point, e.g. `10` or `3,4`.
        #[arg(long)]
        point: String,
    },
    /// Look for identically vanishing subsums containing a term.
    Check {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        i0: usize,
    },
    /// Scan shells 1..=N and emit the ratio CSV.
    Scan(ScanArgs),
    /// Check the height bound for one term's polynomial on sampled points.
    Lemma {
        #[command(flatten)]
        common: Common,
        #[arg(long = "term-index")]
        term_index: usize,
        #[arg(long, default_value_t = 500)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long = "max-norm", default_value_t = 100)]
        max_norm: u64,
    },
    /// Height of a field element given by its coordinates.
    Height {
        #[command(flatten)]
        common: Common,
        /// Comma-separated rational coordinates, e.g. `1/2,1/2`.
        #[arg(long, allow_hyphen_values = true)]
        element: String,
    },
    /// Emit the per-shell minimum of the empirical constant as CSV.
    Probe(ScanArgs),
}

/// Runs the tool on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{}", text);
                return EXIT_USAGE;
            }
            let _ = write!(out, "{}", text);
            return EXIT_OK;
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {}", e);
            EXIT_INPUT
        }
    }
}

fn load(path: &Path) -> Result<ParsedSpec> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::parse(path.display().to_string(), format!("cannot read file: {}", e)))?;
    RecurrenceDoc::from_json(&text)?.validate()
}

fn io(e: std::io::Error) -> Error {
    Error::parse("output", e.to_string())
}

/// Parses `10`, `3,4` or `(3;4)`.
pub fn parse_point(s: &str) -> Result<LatticePoint> {
    let t = s.trim().trim_start_matches('(').trim_end_matches(')');
    let coords = t
        .split([',', ';'])
        .map(|c| c.trim().parse::<u64>().map_err(|_| Error::parse("point", format!("bad coordinate {:?}", c))))
        .collect::<Result<Vec<_>>>()?;
    Ok(LatticePoint::new(coords))
}

fn fmt_iv(iv: &RealInterval) -> String {
    format!("[{},{}]", format_sig(iv.lo(), SIG_DIGITS), format_sig(iv.hi(), SIG_DIGITS))
}

fn config(spec: &ParsedSpec, g: &MultiRecurrence, a: &ScanArgs) -> Result<VerifierConfig> {
    let mut cfg = VerifierConfig::new(parse_rational(&a.eps)?, spec.canonical_index(g, a.i0)?, a.max_norm);
    cfg.precision = a.common.precision;
    cfg.cap = DEFAULT_CAP;
    cfg.place = Place::Archimedean(a.common.place);
    Ok(cfg)
}

fn dispatch(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::Eval { common, point } => {
            let spec = load(&common.spec)?;
            let g = spec.recurrence()?;
            let n = parse_point(&point)?;
            let v = g.eval(&n)?;
            let abs = match v.as_rational() {
                Some(q) => RealInterval::from_rational(&q.abs(), common.precision),
                None => {
                    if common.place >= g.field().degree() {
                        return Err(Error::IndexOutOfRange { index: common.place, len: g.field().degree() });
                    }
                    v.abs_at(common.place, DISPLAY_BITS)?
                }
            };
            writeln!(out, "G = {} (exact), |G| ∈ {}", v, fmt_iv(&abs)).map_err(io)?;
            Ok(EXIT_OK)
        }
        Command::Check { common, i0 } => {
            let spec = load(&common.spec)?;
            check(&spec, i0, out)
        }
        Command::Scan(a) => {
            let spec = load(&a.common.spec)?;
            let g = spec.recurrence()?;
            let cfg = config(&spec, &g, &a)?;
            let report = scan_shells(&g, &cfg)?;
            let csv = scan_csv(&report);
            emit(&csv, a.out.as_deref(), out)?;
            match report.threshold {
                Some(t) => writeln!(err, "threshold estimate: {}", t),
                None => writeln!(err, "threshold estimate: not reached within N_max = {}", cfg.max_norm),
            }
            .map_err(io)?;
            if report.total_undecided() > 0 {
                for n in &report.undecided_points {
                    writeln!(err, "undecided at cap: {}", n).map_err(io)?;
                }
                return Ok(EXIT_UNDECIDED);
            }
            Ok(EXIT_OK)
        }
        Command::Probe(a) => {
            let spec = load(&a.common.spec)?;
            let g = spec.recurrence()?;
            let cfg = config(&spec, &g, &a)?;
            let report = match evertse_probe(&g, &cfg) {
                Err(Error::DegenerateA) => {
                    writeln!(err, "probe disabled: A = 1 (all conjugates of all bases lie on the unit circle), so epsilon' is undefined").map_err(io)?;
                    return Ok(EXIT_INPUT);
                }
                r => r?,
            };
            emit(&probe_csv(&report), a.out.as_deref(), out)?;
            if let Some(e) = &report.constants.epsilon_prime {
                writeln!(err, "z = {}, A ∈ {}, epsilon' ∈ {}", report.constants.z, fmt_iv(&report.constants.a), fmt_iv(e))
                    .map_err(io)?;
            }
            for n in &report.nonpositive {
                writeln!(err, "internal error: non-positive enclosure at {}", n).map_err(io)?;
            }
            Ok(if report.total_undecided() > 0 { EXIT_UNDECIDED } else { EXIT_OK })
        }
        Command::Lemma { common, term_index, samples, seed, max_norm } => {
            let spec = load(&common.spec)?;
            let g = spec.recurrence()?;
            let i = spec.canonical_index(&g, term_index)?;
            let f = g.term(i)?.poly();
            let points = sample_points(g.arity(), samples, max_norm.max(1), seed);
            let r = lemma_check(f, &points, common.precision)?;
            let c = &r.constants;
            writeln!(out, "c1 ∈ {}", fmt_iv(&c.c1)).map_err(io)?;
            writeln!(out, "c2 = {}", c.c2).map_err(io)?;
            writeln!(out, "c ∈ {}", fmt_iv(&c.c)).map_err(io)?;
            writeln!(out, "D = {}, m = {}", c.degree, c.m).map_err(io)?;
            writeln!(
                out,
                "points = {}, passed = {}, skipped_zero = {}, violations = {}, undecided = {}",
                points.len(),
                r.passed,
                r.skipped_zero.len(),
                r.violations.len(),
                r.undecided.len()
            )
            .map_err(io)?;
            for v in &r.violations {
                writeln!(err, "violation at {}: height {} > {}", v.point, fmt_iv(&v.height), format_sig(&v.bound, SIG_DIGITS))
                    .map_err(io)?;
            }
            Ok(if r.is_ok() { EXIT_OK } else { EXIT_UNDECIDED })
        }
        Command::Height { common, element } => {
            let spec = load(&common.spec)?;
            let coords = element
                .split(',')
                .enumerate()
                .map(|(i, c)| parse_rational_literal(c, &format!("element[{}]", i)))
                .collect::<Result<Vec<_>>>()?;
            let x = spec.field.element(coords)?;
            let h = height_k(&x, common.precision)?;
            writeln!(out, "H_K({}) ∈ {}", x, fmt_iv(&h)).map_err(io)?;
            writeln!(out, "finite part = {}", finite_part_exact(&x)?).map_err(io)?;
            Ok(EXIT_OK)
        }
    }
}

/// Largest shell searched for pointwise vanishing by `check`.
const CHECK_SHELLS: u64 = 8;

fn check(spec: &ParsedSpec, i0: usize, out: &mut dyn Write) -> Result<i32> {
    let raw = &spec.raw_terms;
    let subsets = identically_vanishing_subsums(raw, i0, crate::multirec::DEFAULT_SUBSET_CAP)?;
    if !subsets.is_empty() {
        for s in &subsets {
            writeln!(out, "identically vanishing subsum containing i0: {}", format_subset(s)).map_err(io)?;
        }
        writeln!(out, "hypothesis fails for i0 = {}", i0).map_err(io)?;
        return Ok(EXIT_OK);
    }
    let symmetric = raw.iter().enumerate().any(|(i, a)| {
        raw.iter().enumerate().any(|(j, b)| {
            if i == j || a.bases() == b.bases() {
                return false;
            }
            let mut x: Vec<_> = a.bases().iter().map(|e| e.coords().to_vec()).collect();
            let mut y: Vec<_> = b.bases().iter().map(|e| e.coords().to_vec()).collect();
            x.sort();
            y.sort();
            x == y
        })
    });
    let mut line = String::from("no identically vanishing subsum containing i0");
    if symmetric {
        line.push_str("; pointwise vanishing possible (full sum has symmetric bases)");
    }
    writeln!(out, "{}", line).map_err(io)?;
    let g = spec.recurrence()?;
    let i = spec.canonical_index(&g, i0)?;
    let mut hits = 0usize;
    let mut first: Option<(LatticePoint, Vec<usize>)> = None;
    let mut total = 0usize;
    for norm in 0..=CHECK_SHELLS {
        for n in shell(g.arity(), norm) {
            total += 1;
            let v = g.pointwise_vanishing_subsums(&n, i)?;
            if let Some(s) = v.first() {
                hits += 1;
                if first.is_none() {
                    first = Some((n.clone(), s.clone()));
                }
            }
        }
    }
    match first {
        Some((n, s)) => writeln!(
            out,
            "pointwise vanishing at {} of {} points with |n| <= {}; first at {} with subset {} (canonical indices)",
            hits,
            total,
            CHECK_SHELLS,
            n,
            format_subset(&s)
        ),
        None => writeln!(out, "no pointwise vanishing at the {} points with |n| <= {}", total, CHECK_SHELLS),
    }
    .map_err(io)?;
    Ok(EXIT_OK)
}

fn emit(text: &str, path: Option<&Path>, out: &mut dyn Write) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Error::parse(p.display().to_string(), e.to_string())),
        None => out.write_all(text.as_bytes()).map_err(io),
    }
}

fn opt_pair(iv: Option<&RealInterval>) -> (String, String) {
    match iv {
        Some(iv) => (format_sig(iv.lo(), SIG_DIGITS), format_sig(iv.hi(), SIG_DIGITS)),
        None => (String::new(), String::new()),
    }
}

/// Shell report as CSV; empty ratio fields for shells without evaluated points.
pub fn scan_csv(report: &ScanReport) -> String {
    let mut s = String::from(SCAN_HEADER);
    s.push('\n');
    for r in &report.shells {
        let (lo, hi) = opt_pair(r.min_ratio.as_ref());
        let arg = r.argmin.as_ref().map(|p| p.to_string()).unwrap_or_default();
        s.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            r.norm, lo, hi, arg, r.points_total, r.skipped_vanishing, r.skipped_zero_f, r.undecided
        ));
    }
    s
}

pub fn probe_csv(report: &ProbeReport) -> String {
    let mut s = String::from(PROBE_HEADER);
    s.push('\n');
    for r in &report.rows {
        let (lo, hi) = opt_pair(r.min.as_ref());
        let (rlo, rhi) = opt_pair(r.running_min.as_ref());
        let arg = r.argmin.as_ref().map(|p| p.to_string()).unwrap_or_default();
        s.push_str(&format!(
            "{},{},{},{},{},{},{},{},{}\n",
            r.norm, lo, hi, arg, rlo, rhi, r.evaluated, r.skipped, r.undecided
        ));
    }
    s
}
