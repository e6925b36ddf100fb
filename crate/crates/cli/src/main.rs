use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::process::ExitCode;

use bsgeo::automata::{build_dn, build_dn_prime, expand_to_on, Automaton};
use bsgeo::bfs::{bfs_spheres, DEFAULT_NODE_BUDGET};
use bsgeo::geodesic::{geodesic, minimal_vector, path_length};
use bsgeo::group::{GroupElement, GroupError, GroupParams, Word};
use bsgeo::growth::{growth_rate_with, GrowthError, GrowthReport, DEFAULT_EMPIRICAL_LENGTH};
use bsgeo::verify::{run_suite, SuiteConfig};
use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::json;
use thiserror::Error;

#[derive(Debug, Parser)]
#[command(name = "bsgeo", version, about = "Geodesics, automata and growth rates of BS(1,n)")]
struct Cli {
    /// Node budget for breadth-first searches.
    #[arg(long, global = true, env = "BSG_NODE_BUDGET", default_value_t = DEFAULT_NODE_BUDGET)]
    budget: usize,

    /// Write output to this file instead of stdout.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Dn,
    Dnprime,
    On,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Geodesic word for the normal form t^-u a^v t^w.
    Geodesic {
        #[arg(short, value_parser = clap::value_parser!(u32).range(2..))]
        n: u32,
        u: u64,
        #[arg(allow_hyphen_values = true)]
        v: BigInt,
        w: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Sphere sizes |S_n(0)|, …, |S_n(R)| by breadth-first search.
    Spheres {
        #[arg(short, value_parser = clap::value_parser!(u32).range(2..))]
        n: u32,
        #[arg(short = 'R', long)]
        radius: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Export one of the automata D_n, D_n′ or O_n.
    Automaton {
        #[arg(short, value_parser = clap::value_parser!(u32).range(2..))]
        n: u32,
        #[arg(value_enum)]
        kind: Kind,
        #[arg(long, conflicts_with = "json")]
        dot: bool,
        #[arg(long)]
        json: bool,
        /// Run the automaton on a string: comma-separated digits, or a word in a/t notation.
        #[arg(long, allow_hyphen_values = true)]
        accepts: Option<String>,
        /// Print accepted-string counts for lengths 0..=N.
        #[arg(long, value_name = "N")]
        count: Option<usize>,
    },
    /// Growth-rate polynomial, its smallest root and the empirical rate.
    Growth {
        #[arg(short, value_parser = clap::value_parser!(u32).range(2..), required_unless_present = "table")]
        n: Option<u32>,
        /// Length N used for the empirical ratio f(N)/f(N-1).
        #[arg(long, value_name = "N", default_value_t = DEFAULT_EMPIRICAL_LENGTH)]
        empirical: usize,
        /// Report a range of n, e.g. 2..8.
        #[arg(long, value_parser = parse_range, conflicts_with = "n")]
        table: Option<RangeInclusive<u32>>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run the oracle checks and print one line per check.
    Verify {
        #[arg(short, value_parser = clap::value_parser!(u32).range(2..))]
        n: u32,
        #[arg(short = 'R', long, default_value_t = 8)]
        radius: usize,
        /// Longest words compared against the O_n language (capped by the radius).
        #[arg(long, default_value_t = 8)]
        language_len: usize,
        /// Longest digit strings for the preimage-count check.
        #[arg(long, default_value_t = 6)]
        clamp_len: usize,
        /// Also check the shape map over |v| ≤ --shape-max-v and u, w ≤ --shape-max-uw.
        #[arg(long)]
        shape_map: bool,
        #[arg(long, default_value_t = 100)]
        shape_max_v: i64,
        #[arg(long, default_value_t = 4)]
        shape_max_uw: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Budget(GroupError),
    #[error("verification failed")]
    Verification,
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Verification => 1,
            CliError::Usage(_) => 2,
            CliError::Budget(_) => 3,
            CliError::Io(_) | CliError::Csv(_) | CliError::Json(_) => 1,
        }
    }
}

impl From<GroupError> for CliError {
    fn from(e: GroupError) -> Self {
        match e {
            GroupError::BudgetExceeded { .. } => CliError::Budget(e),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<GrowthError> for CliError {
    fn from(e: GrowthError) -> Self {
        CliError::Usage(e.to_string())
    }
}

fn parse_range(s: &str) -> Result<RangeInclusive<u32>, String> {
    let (lo, hi) = s
        .split_once("..=")
        .or_else(|| s.split_once(".."))
        .or_else(|| s.split_once('-'))
        .ok_or_else(|| format!("expected a range like 2..8, got {s:?}"))?;
    let lo: u32 = lo.trim().parse().map_err(|e| format!("{e}"))?;
    let hi: u32 = hi.trim().parse().map_err(|e| format!("{e}"))?;
    if lo < 2 || hi < lo {
        return Err(format!("range must satisfy 2 ≤ start ≤ end, got {s:?}"));
    }
    Ok(lo..=hi)
}

/// At least 15 significant digits.
fn sig15(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return x.to_string();
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (14 - magnitude).max(0) as usize;
    format!("{x:.decimals$}")
}

fn params(n: u32) -> Result<GroupParams, CliError> {
    Ok(GroupParams::new(n)?)
}

fn cmd_geodesic(out: &mut dyn Write, n: u32, u: u64, v: BigInt, w: u64, format: Format) -> Result<(), CliError> {
    let p = params(n)?;
    let g = match GroupElement::new(u, v.clone(), w, p) {
        Ok(g) => g,
        Err(_) => {
            let g = GroupElement::normalized(u, v.clone(), w, p);
            log::warn!("({u}, {v}, {w}) is not a normal form for n = {n}; using {g}");
            g
        }
    };
    let x = minimal_vector(&g, n);
    let pw = geodesic(&g, n);
    let length = path_length(&x, g.u, g.w, n);
    match format {
        Format::Json => {
            let value = json!({
                "n": n,
                "element": {"u": g.u, "v": g.v.to_string(), "w": g.w},
                "word": pw.word.to_string(),
                "compact": pw.word.to_compact(),
                "length": length,
                "shape": pw.shape.number(),
                "strict_shape1": pw.strict1,
                "minimal_vector": x.digits(),
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&value)?)?;
        }
        Format::Text => {
            let word = if pw.word.is_empty() { "(empty)".to_string() } else { pw.word.to_string() };
            writeln!(out, "element: {g}")?;
            writeln!(out, "word: {word}")?;
            writeln!(out, "length: {length}")?;
            let strict = if pw.strict1 { " (strict)" } else { "" };
            writeln!(out, "shape: {}{strict}", pw.shape.number())?;
            writeln!(out, "minimal vector: {x}")?;
        }
        Format::Csv => {
            let mut csv = csv::Writer::from_writer(out);
            csv.write_record(["u", "v", "w", "word", "length", "shape", "minimal_vector"])?;
            csv.write_record([
                g.u.to_string(),
                g.v.to_string(),
                g.w.to_string(),
                pw.word.to_string(),
                length.to_string(),
                pw.shape.number().to_string(),
                x.to_string(),
            ])?;
            csv.flush()?;
        }
    }
    Ok(())
}

fn write_spheres(out: &mut dyn Write, n: u32, sizes: &[u64], format: Format) -> Result<(), CliError> {
    match format {
        Format::Text => {
            let line: Vec<String> = sizes.iter().map(u64::to_string).collect();
            writeln!(out, "{}", line.join(" "))?;
        }
        Format::Json => {
            let value = json!({"n": n, "radius": sizes.len().saturating_sub(1), "sizes": sizes});
            writeln!(out, "{value}")?;
        }
        Format::Csv => {
            let mut csv = csv::Writer::from_writer(out);
            csv.write_record(["radius", "size"])?;
            for (r, s) in sizes.iter().enumerate() {
                csv.write_record([r.to_string(), s.to_string()])?;
            }
            csv.flush()?;
        }
    }
    Ok(())
}

fn cmd_spheres(out: &mut dyn Write, n: u32, radius: usize, budget: usize, format: Format) -> Result<(), CliError> {
    match bfs_spheres(params(n)?, radius, budget) {
        Ok(ball) => write_spheres(out, n, &ball.sphere_sizes(), format),
        Err(e @ GroupError::BudgetExceeded { .. }) => {
            if let GroupError::BudgetExceeded { sphere_sizes, .. } = &e {
                write_spheres(out, n, sphere_sizes, format)?;
            }
            Err(e.into())
        }
        Err(e) => Err(e.into()),
    }
}

fn export<S>(out: &mut dyn Write, automaton: &Automaton<S>, name: &str, dot: bool, json: bool) -> Result<(), CliError>
where
    S: Ord + Clone + std::fmt::Display,
{
    if dot {
        write!(out, "{}", automaton.to_dot(name))?;
    } else if json {
        writeln!(out, "{}", serde_json::to_string_pretty(&automaton.to_table())?)?;
    } else {
        write!(out, "{automaton}")?;
    }
    Ok(())
}

fn report_counts<S>(out: &mut dyn Write, automaton: &Automaton<S>, count: Option<usize>) -> Result<(), CliError>
where
    S: Ord + Clone + std::fmt::Display,
{
    if let Some(len) = count {
        for (i, c) in automaton.count_accepted(len).counts().iter().enumerate() {
            writeln!(out, "f({i}) = {c}")?;
        }
    }
    Ok(())
}

fn parse_digits(s: &str) -> Result<Vec<i64>, CliError> {
    s.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| CliError::Usage(format!("not a digit: {t:?}"))))
        .collect()
}

fn cmd_automaton(
    out: &mut dyn Write,
    n: u32,
    kind: Kind,
    dot: bool,
    json: bool,
    accepts: Option<String>,
    count: Option<usize>,
) -> Result<(), CliError> {
    params(n)?;
    let usage = |e: bsgeo::automata::AutomatonError| CliError::Usage(e.to_string());
    match kind {
        Kind::Dn | Kind::Dnprime => {
            let (automaton, name) = if kind == Kind::Dn {
                (build_dn(n), format!("D{n}"))
            } else {
                (build_dn_prime(n), format!("D{n}prime"))
            };
            if let Some(s) = accepts {
                let verdict = automaton.accepts(&parse_digits(&s)?).map_err(usage)?;
                writeln!(out, "{}", if verdict { "accepted" } else { "rejected" })?;
            } else {
                export(out, &automaton, &name, dot, json)?;
            }
            report_counts(out, &automaton, count)?;
        }
        Kind::On => {
            let automaton = expand_to_on(n);
            if let Some(s) = accepts {
                let word: Word = s.parse()?;
                let verdict = automaton.accepts(word.letters()).map_err(usage)?;
                writeln!(out, "{}", if verdict { "accepted" } else { "rejected" })?;
            } else {
                export(out, &automaton, &format!("O{n}"), dot, json)?;
            }
            report_counts(out, &automaton, count)?;
        }
    }
    Ok(())
}

fn cmd_growth(out: &mut dyn Write, ns: RangeInclusive<u32>, single: bool, length: usize, format: Format) -> Result<(), CliError> {
    let reports: Vec<GrowthReport> = ns.map(|n| growth_rate_with(n, length)).collect::<Result<_, _>>()?;
    match format {
        Format::Json if single => {
            writeln!(out, "{}", serde_json::to_string_pretty(&reports[0].to_json())?)?;
        }
        Format::Json => {
            let all: Vec<_> = reports.iter().map(GrowthReport::to_json).collect();
            writeln!(out, "{}", serde_json::to_string_pretty(&all)?)?;
        }
        Format::Csv => {
            let mut csv = csv::Writer::from_writer(out);
            csv.write_record(["n", "root", "rate"])?;
            for r in &reports {
                csv.write_record([r.n.to_string(), sig15(r.root), sig15(r.rate)])?;
            }
            csv.flush()?;
        }
        Format::Text if single => {
            let r = &reports[0];
            writeln!(out, "n: {}", r.n)?;
            writeln!(out, "alpha: {}", r.alpha)?;
            writeln!(out, "polynomial: {}", r.polynomial)?;
            writeln!(out, "root: {}", sig15(r.root))?;
            writeln!(out, "rate: {}", sig15(r.rate))?;
            let f = r.empirical_counts.last().map(ToString::to_string).unwrap_or_default();
            writeln!(
                out,
                "empirical: N={} f(N)={f} ratio={}",
                r.empirical_length(),
                sig15(r.empirical_rate)
            )?;
        }
        Format::Text => {
            writeln!(out, "{:>3}  {:<18}  {:<18}  {:<18}", "n", "smallest root", "growth rate", "empirical ratio")?;
            for r in &reports {
                writeln!(
                    out,
                    "{:>3}  {:<18}  {:<18}  {:<18}",
                    r.n,
                    sig15(r.root),
                    sig15(r.rate),
                    sig15(r.empirical_rate)
                )?;
            }
        }
    }
    Ok(())
}

fn cmd_verify(out: &mut dyn Write, n: u32, config: SuiteConfig, format: Format) -> Result<(), CliError> {
    let report = run_suite(n, &config)?;
    match format {
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&report)?)?,
        Format::Text | Format::Csv => {
            for r in &report.reports {
                let status = if r.passed { "PASS" } else { "FAIL" };
                writeln!(out, "{status} {}: {} ({} cases)", r.name, r.summary, r.checked)?;
                for f in &r.failures {
                    writeln!(out, "    {f}")?;
                }
            }
            if let Some(e) = &report.error {
                writeln!(out, "SKIP ball-based checks: {e}")?;
                writeln!(out, "partial spheres: {:?}", report.partial_spheres)?;
            }
        }
    }
    if report.error.is_some() {
        return Err(CliError::Budget(GroupError::BudgetExceeded {
            budget: config.node_budget,
            completed_radius: report.partial_spheres.len().saturating_sub(1),
            sphere_sizes: report.partial_spheres,
        }));
    }
    if report.reports.iter().all(|r| r.passed) {
        Ok(())
    } else {
        Err(CliError::Verification)
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let mut out: Box<dyn Write> = match &cli.output {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    let result = match cli.command {
        Command::Geodesic { n, u, v, w, format } => cmd_geodesic(&mut out, n, u, v, w, format),
        Command::Spheres { n, radius, format } => cmd_spheres(&mut out, n, radius, cli.budget, format),
        Command::Automaton {
            n,
            kind,
            dot,
            json,
            accepts,
            count,
        } => cmd_automaton(&mut out, n, kind, dot, json, accepts, count),
        Command::Growth {
            n,
            empirical,
            table,
            format,
        } => {
            let single = table.is_none();
            let ns = table.unwrap_or_else(|| {
                let n = n.expect("clap requires n without --table");
                n..=n
            });
            cmd_growth(&mut out, ns, single, empirical, format)
        }
        Command::Verify {
            n,
            radius,
            language_len,
            clamp_len,
            shape_map,
            shape_max_v,
            shape_max_uw,
            format,
        } => {
            let config = SuiteConfig {
                radius,
                node_budget: cli.budget,
                language_len,
                clamp_len,
                shape_map,
                shape_max_v,
                shape_max_uw,
            };
            cmd_verify(&mut out, n, config, format)
        }
    };
    out.flush()?;
    result
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            if !matches!(e, CliError::Verification) {
                eprintln!("error: {e}");
            }
            ExitCode::from(e.exit_code())
        }
    }
}
