//! Command-line front end. `run` parses arguments, writes to the given
//! sink and returns the process exit code: 0 on success, 1 when a
//! verification fails, 2 on usage or input errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde_json::json;

use crate::bijections::{certify_all, RoundTripReport};
use crate::cache::CountCache;
use crate::catalog::{
    builtin_catalog, parse_catalog, reports_table, verify_range_with, CatalogEntry, FormulaDescriptor, Status,
    VerificationReport,
};
use crate::enumerate::{descent_polynomial, generate_avoiders};
use crate::error::{Error, Result};
use crate::pattern::PatternSet;
use crate::series::{egf_coefficients, Series, DEFAULT_ORDER};
use crate::stats::{check_factorization, s3_subsets};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
    /// `n value` lines, starting at n = 1.
    Bfile,
}

#[derive(Parser, Debug)]
#[command(name = "nonnest", version, about = "Counts nonnesting permutations of {1,1,...,n,n} avoiding patterns")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub global: GlobalOpts,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalOpts {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    pub format: Format,
    /// Count cache file (default: $NONNEST_CACHE, else .nonnest-cache.jsonl).
    #[arg(long, global = true)]
    pub cache: Option<PathBuf>,
    /// Do not read or write the count cache.
    #[arg(long, global = true)]
    pub no_cache: bool,
    /// Worker threads for counting.
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    pub parallel: Option<u32>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print c_1..c_n for a pattern set ("" for no patterns).
    Count {
        patterns: String,
        #[arg(short, long)]
        n: usize,
    },
    /// List the avoiders of size n, one per line.
    Enumerate {
        patterns: String,
        #[arg(short, long)]
        n: usize,
    },
    /// Check catalog formulas against brute-force counts.
    Verify(VerifyArgs),
    /// Report how the conjectured formulas compare with brute force.
    Conjecture(VerifyArgs),
    /// Round-trip and image certification of the bijections.
    Bijections {
        #[arg(short, long)]
        n: usize,
    },
    /// Descent polynomials over the avoiders, for sizes 1..n.
    Descents {
        patterns: String,
        #[arg(short, long)]
        n: usize,
    },
    /// Descent factorization for every subset of S_3, sizes 1..n.
    Factorization {
        #[arg(short, long)]
        n: usize,
    },
    /// Dump generating-function coefficients of series-backed catalog entries.
    Series {
        /// Truncation order.
        #[arg(long, default_value_t = DEFAULT_ORDER)]
        order: usize,
        #[arg(long, default_value = "")]
        entries: String,
        #[arg(long)]
        catalog: Option<PathBuf>,
    },
}

#[derive(Args, Debug, Clone)]
pub struct VerifyArgs {
    #[arg(short, long)]
    pub n: usize,
    /// Substring of the anchor or OEIS id, or an exact pattern list.
    #[arg(long, default_value = "")]
    pub entries: String,
    /// Catalog file to use instead of the bundled one.
    #[arg(long)]
    pub catalog: Option<PathBuf>,
    /// Also verify every reverse/complement image of each key.
    #[arg(long)]
    pub symmetry: bool,
    /// Stop starting new sizes after this many seconds; the report marks the rest skipped.
    #[arg(long)]
    pub max_seconds: Option<u64>,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut (dyn Write + Send)) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let pool = match cli.global.parallel {
        Some(k) => rayon::ThreadPoolBuilder::new().num_threads(k as usize).build(),
        None => rayon::ThreadPoolBuilder::new().build(),
    };
    let pool = match pool {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    match pool.install(|| dispatch(&cli, out)) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}

fn open_cache(g: &GlobalOpts) -> Result<CountCache> {
    if g.no_cache {
        return Ok(CountCache::in_memory());
    }
    CountCache::open(g.cache.clone().unwrap_or_else(CountCache::default_path))
}

fn close_cache(cache: &CountCache) -> Result<()> {
    let checked = cache.spot_check(3)?;
    if checked > 0 {
        eprintln!("cache: {} hits, {checked} spot-checked", cache.hit_count());
    }
    cache.flush()?;
    Ok(())
}

fn load_catalog(path: &Option<PathBuf>) -> Result<Vec<CatalogEntry>> {
    match path {
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| Error::Catalog(format!("{}: {e}", p.display())))?;
            parse_catalog(&text)
        }
        None => Ok(builtin_catalog()),
    }
}

fn io(e: std::io::Error) -> Error {
    Error::Catalog(format!("write failed: {e}"))
}

fn need_n(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::Precondition("-n must be at least 1".into()));
    }
    Ok(())
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Result<i32> {
    let fmt = cli.global.format;
    match &cli.command {
        Command::Count { patterns, n } => {
            need_n(*n)?;
            let set: PatternSet = patterns.parse()?;
            let cache = open_cache(&cli.global)?;
            let counts: Vec<BigUint> = (1..=*n).map(|k| cache.count(k, &set)).collect();
            close_cache(&cache)?;
            write_sequence(out, fmt, &set, &counts)?;
            Ok(EXIT_OK)
        }
        Command::Enumerate { patterns, n } => {
            let set: PatternSet = patterns.parse()?;
            if fmt == Format::Json {
                let words: Vec<String> = generate_avoiders(*n, &set).map(|p| p.word().to_spaced()).collect();
                writeln!(out, "{}", serde_json::to_string(&words).expect("strings")).map_err(io)?;
            } else {
                for p in generate_avoiders(*n, &set) {
                    writeln!(out, "{}", p.word().to_spaced()).map_err(io)?;
                }
            }
            Ok(EXIT_OK)
        }
        Command::Verify(args) => {
            let entries: Vec<CatalogEntry> = load_catalog(&args.catalog)?
                .into_iter()
                .filter(|e| e.status == Status::Proven && e.matches_filter(&args.entries))
                .collect();
            let reports = run_verification(cli, args, &entries)?;
            write_reports(out, fmt, &reports)?;
            let failed = reports.iter().filter(|r| !r.passed()).count();
            if fmt == Format::Table {
                writeln!(out, "{} reports, {failed} failed", reports.len()).map_err(io)?;
            }
            Ok(if failed == 0 { EXIT_OK } else { EXIT_VERIFY_FAILED })
        }
        Command::Conjecture(args) => {
            let entries: Vec<CatalogEntry> = load_catalog(&args.catalog)?
                .into_iter()
                .filter(|e| e.status == Status::Conjectured && e.matches_filter(&args.entries))
                .collect();
            let reports = run_verification(cli, args, &entries)?;
            write_reports(out, fmt, &reports)?;
            if fmt == Format::Table {
                let agree = reports.iter().filter(|r| r.all_match()).count();
                writeln!(out, "{agree} of {} conjectures agree with brute force", reports.len()).map_err(io)?;
            }
            Ok(EXIT_OK)
        }
        Command::Bijections { n } => {
            need_n(*n)?;
            let reports = certify_all(*n);
            write_round_trips(out, fmt, &reports)?;
            Ok(if reports.iter().all(RoundTripReport::passed) { EXIT_OK } else { EXIT_VERIFY_FAILED })
        }
        Command::Descents { patterns, n } => {
            need_n(*n)?;
            let set: PatternSet = patterns.parse()?;
            write_descents(out, fmt, &set, *n)?;
            Ok(EXIT_OK)
        }
        Command::Factorization { n } => {
            need_n(*n)?;
            let mut failures = 0;
            let mut rows = Vec::new();
            for sigma in s3_subsets() {
                for k in 1..=*n {
                    let f = check_factorization(k, &sigma)?;
                    if !f.holds {
                        failures += 1;
                    }
                    rows.push(f);
                }
            }
            match fmt {
                Format::Json => {
                    writeln!(out, "{}", serde_json::to_string_pretty(&rows).expect("plain data")).map_err(io)?
                }
                Format::Csv => {
                    writeln!(out, "sigma,n,holds").map_err(io)?;
                    for f in &rows {
                        writeln!(out, "\"{}\",{},{}", f.sigma, f.n, f.holds).map_err(io)?;
                    }
                }
                Format::Table | Format::Bfile => {
                    for f in rows.iter().filter(|f| f.n == *n || !f.holds) {
                        writeln!(out, "{{{}}} n={} {}: {}", f.sigma, f.n, if f.holds { "ok" } else { "FAIL" }, f.left)
                            .map_err(io)?;
                    }
                    writeln!(out, "{} checks, {failures} failed", rows.len()).map_err(io)?;
                }
            }
            Ok(if failures == 0 { EXIT_OK } else { EXIT_VERIFY_FAILED })
        }
        Command::Series { order, entries, catalog } => {
            let catalog = load_catalog(catalog)?;
            let mut dumps = Vec::new();
            for e in catalog.iter().filter(|e| e.matches_filter(entries)) {
                if let Some(coeffs) = series_coefficients(&e.formula, *order)? {
                    dumps.push(json!({ "anchor": e.anchor, "patterns": e.key_string(), "coefficients": coeffs }));
                }
            }
            match fmt {
                Format::Json => {
                    writeln!(out, "{}", serde_json::to_string_pretty(&dumps).expect("plain data")).map_err(io)?
                }
                _ => {
                    for d in &dumps {
                        let c: Vec<&str> = d["coefficients"].as_array().expect("array").iter().filter_map(|v| v.as_str()).collect();
                        writeln!(out, "{}: {}", d["patterns"].as_str().unwrap_or(""), c.join(" ")).map_err(io)?;
                    }
                }
            }
            Ok(EXIT_OK)
        }
    }
}

/// Coefficients `c_0..=c_order` for entries given by a generating function.
fn series_coefficients(f: &FormulaDescriptor, order: usize) -> Result<Option<Vec<String>>> {
    Ok(match f {
        FormulaDescriptor::OgfRational { numerator, denominator } => {
            Some(Series::from_i64(numerator, order).div(&Series::from_i64(denominator, order))?.to_strings())
        }
        FormulaDescriptor::OgfAlgebraic { p, q, r, shift } => {
            let o = order + shift;
            let num = (&Series::from_i64(p, o) - &Series::from_i64(q, o).sqrt()?).shift_down(*shift)?;
            Some(num.div(&Series::from_i64(r, order))?.to_strings())
        }
        FormulaDescriptor::Egf { egf } => {
            Some(egf_coefficients(egf, order)?.iter().map(ToString::to_string).collect())
        }
        _ => None,
    })
}

fn run_verification(cli: &Cli, args: &VerifyArgs, entries: &[CatalogEntry]) -> Result<Vec<VerificationReport>> {
    need_n(args.n)?;
    let cache = open_cache(&cli.global)?;
    let count = |n: usize, s: &PatternSet| cache.count(n, s);
    let targets: Vec<(&CatalogEntry, PatternSet)> = entries
        .iter()
        .flat_map(|e| {
            let key = e.key();
            let sets: Vec<PatternSet> = if args.symmetry { key.symmetry_orbit().into_iter().collect() } else { vec![key] };
            sets.into_iter().map(move |s| (e, s))
        })
        .collect();
    let budget = args.max_seconds.map(Duration::from_secs);
    let start = Instant::now();
    let mut reports: Vec<VerificationReport> =
        targets.iter().map(|(e, s)| verify_range_with(e, s, 1, 0, count)).collect();
    // Size by size, so a time budget cuts every entry at the same n.
    for n in 1..=args.n {
        if budget.is_some_and(|b| start.elapsed() > b) {
            for r in &mut reports {
                r.skipped.extend((n..=args.n).filter(|&k| k >= r.valid_from));
            }
            break;
        }
        let step: Vec<VerificationReport> = {
            use rayon::prelude::*;
            targets.par_iter().map(|(e, s)| verify_range_with(e, s, n, n, count)).collect()
        };
        for (r, s) in reports.iter_mut().zip(step) {
            r.rows.extend(s.rows);
            r.errors.extend(s.errors);
        }
    }
    close_cache(&cache)?;
    Ok(reports)
}

fn write_sequence(out: &mut dyn Write, fmt: Format, set: &PatternSet, counts: &[BigUint]) -> Result<()> {
    match fmt {
        Format::Table => {
            for (i, c) in counts.iter().enumerate() {
                writeln!(out, "{:>3}  {c}", i + 1).map_err(io)?;
            }
        }
        Format::Bfile => {
            for (i, c) in counts.iter().enumerate() {
                writeln!(out, "{} {c}", i + 1).map_err(io)?;
            }
        }
        Format::Csv => {
            writeln!(out, "n,count").map_err(io)?;
            for (i, c) in counts.iter().enumerate() {
                writeln!(out, "{},{c}", i + 1).map_err(io)?;
            }
        }
        Format::Json => {
            let counts: Vec<String> = counts.iter().map(ToString::to_string).collect();
            writeln!(out, "{}", json!({ "patterns": set.to_compact(), "counts": counts })).map_err(io)?;
        }
    }
    Ok(())
}

fn write_reports(out: &mut dyn Write, fmt: Format, reports: &[VerificationReport]) -> Result<()> {
    match fmt {
        Format::Table => write!(out, "{}", reports_table(reports)).map_err(io)?,
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(reports).expect("plain data")).map_err(io)?,
        Format::Csv => {
            writeln!(out, "anchor,patterns,n,predicted,observed,match").map_err(io)?;
            for r in reports {
                for row in &r.rows {
                    writeln!(out, "{},\"{}\",{},{},{},{}", r.anchor, r.patterns, row.n, row.predicted, row.observed, row.matches)
                        .map_err(io)?;
                }
            }
        }
        Format::Bfile => {
            for r in reports {
                writeln!(out, "# {} {}", r.patterns, r.description).map_err(io)?;
                for row in &r.rows {
                    writeln!(out, "{} {}", row.n, row.observed).map_err(io)?;
                }
            }
        }
    }
    Ok(())
}

fn write_round_trips(out: &mut dyn Write, fmt: Format, reports: &[RoundTripReport]) -> Result<()> {
    match fmt {
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(reports).expect("plain data")).map_err(io)?,
        Format::Csv => {
            writeln!(out, "map,n,domainSize,roundTripFailures,imageMismatches").map_err(io)?;
            for r in reports {
                writeln!(out, "{},{},{},{},{}", r.map, r.n, r.domain_size, r.round_trip_failures, r.image_mismatch.len())
                    .map_err(io)?;
            }
        }
        Format::Table | Format::Bfile => {
            for r in reports {
                writeln!(
                    out,
                    "{:<12} n={:<2} domain={:<7} failures={} mismatches={} {}",
                    r.map,
                    r.n,
                    r.domain_size,
                    r.round_trip_failures,
                    r.image_mismatch.len(),
                    if r.passed() { "ok" } else { "FAIL" }
                )
                .map_err(io)?;
                for m in r.image_mismatch.iter().take(5) {
                    writeln!(out, "    {m}").map_err(io)?;
                }
            }
        }
    }
    Ok(())
}

fn write_descents(out: &mut dyn Write, fmt: Format, set: &PatternSet, n_max: usize) -> Result<()> {
    let polys: Vec<_> = (1..=n_max).map(|n| (n, descent_polynomial(n, set))).collect();
    match fmt {
        Format::Json => {
            let rows: Vec<_> = polys
                .iter()
                .map(|(n, p)| {
                    json!({ "n": n, "coefficients": p, "total": p.eval_at_one().to_string(), "palindromic": p.is_palindromic() })
                })
                .collect();
            writeln!(out, "{}", serde_json::to_string_pretty(&rows).expect("plain data")).map_err(io)?;
        }
        Format::Csv => {
            writeln!(out, "n,descents,count").map_err(io)?;
            for (n, p) in &polys {
                for (d, c) in p.coefficients().iter().enumerate() {
                    writeln!(out, "{n},{d},{c}").map_err(io)?;
                }
            }
        }
        Format::Table | Format::Bfile => {
            for (n, p) in &polys {
                let sym = if p.is_palindromic() { "palindromic" } else { "" };
                writeln!(out, "{n:>3}  {p}  {sym}").map_err(io)?;
            }
        }
    }
    Ok(())
}
