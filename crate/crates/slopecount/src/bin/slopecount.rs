use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use slopecount::cache::{Cache, CacheKey};
use slopecount::core::graphs::enumerate_wheels;
use slopecount::core::pointcount::{classify_point, CountMethod, OrbitCheck};
use slopecount::core::treepoly::export_polynomials;
use slopecount::core::weights::check_modulus;
use slopecount::core::{EdgeWeighting, IdealSpec, Wheel};
use slopecount::suites::{self, Suite, SuiteReport};
use slopecount::{
    count_zeros, default_threads, tabulate_by_type, CountOptions, CountReport, Error,
};

const EXIT_FAILURE: u8 = 1;
const EXIT_BUDGET: u8 = 2;
const EXIT_USAGE: u8 = 64;
const EXIT_DATA: u8 = 65;

/// Count and classify the zeros of wheel tree polynomials of `K_n` over
/// small prime fields.
#[derive(Parser, Debug)]
#[command(name = "slopecount", version)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Number of vertices.
    #[arg(long, global = true, value_parser = clap::value_parser!(u8).range(1..=12))]
    n: Option<u8>,
    /// Field size, a prime up to 13.
    #[arg(long, global = true, value_parser = parse_modulus)]
    q: Option<u8>,
    /// `I` (all wheels) or `J` (3-wheels only).
    #[arg(long, global = true)]
    ideal: Option<IdealSpec>,
    /// Worker threads for point enumeration [default: $SLOPECOUNT_THREADS or all cores].
    #[arg(long, global = true, value_parser = clap::value_parser!(u16).range(1..))]
    threads: Option<u16>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// JSON-lines file of finished counts to reuse.
    #[arg(long, global = true)]
    cache: Option<PathBuf>,
    /// Use the slow reference checks everywhere.
    #[arg(long, global = true)]
    paranoid: bool,
    /// Enumerate beyond the default size limits.
    #[arg(long, global = true)]
    override_budget: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Count the common zeros of an ideal's wheel polynomials.
    CountZeros,
    /// Zero status of one point, e.g. `2:4:100101` or `3:4:001120`.
    Classify { point: String },
    /// Run an exhaustive property suite.
    Verify {
        #[arg(long, value_parser = parse_suite)]
        theorem: Suite,
        /// Largest wheel size for `treenotzero`.
        #[arg(long, default_value_t = 5)]
        max_k: usize,
    },
    /// Zeros and non-zeros of one wheel polynomial, by point type.
    Table {
        /// Wheel such as `W(1;2,3,4)` [default: the first 3-wheel of K_n].
        #[arg(long)]
        wheel: Option<String>,
    },
    /// Print the wheel polynomials of an ideal, one per line (JSON strings with
    /// `--format json`).
    ExportPoly,
}

fn parse_modulus(s: &str) -> Result<u8, String> {
    let q: u32 = s.parse().map_err(|_| format!("`{s}` is not a number"))?;
    check_modulus(q).map_err(|e| e.to_string())
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse()
}

/// Error paired with its exit status.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    fn data(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_DATA,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Budget { .. } | Error::SuiteLimit { .. } => EXIT_BUDGET,
            Error::CrossCheck { .. } => EXIT_FAILURE,
            Error::Core(slopecount::core::Error::Parse { .. }) => EXIT_DATA,
            Error::Io(_) | Error::Json(_) => EXIT_DATA,
            Error::Core(_) | Error::Pool(_) | Error::ShortcutUnsupported { .. } => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match run(&cli) {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(if out.passed { 0 } else { EXIT_FAILURE })
        }
        Err(f) => {
            eprintln!("slopecount: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

struct Output {
    text: String,
    passed: bool,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, passed: true }
    }
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    let g = &cli.global;
    match &cli.command {
        Command::CountZeros => cmd_count_zeros(g),
        Command::Classify { point } => cmd_classify(g, point),
        Command::Verify { theorem, max_k } => cmd_verify(g, *theorem, *max_k),
        Command::Table { wheel } => cmd_table(g, wheel.as_deref()),
        Command::ExportPoly => cmd_export_poly(g),
    }
}

fn required_n(g: &Global, what: &str) -> Result<usize, Failure> {
    g.n.map(usize::from)
        .ok_or_else(|| Failure::usage(format!("{what} needs --n")))
}

fn options(g: &Global) -> CountOptions {
    CountOptions {
        threads: g.threads.map_or_else(default_threads, usize::from),
        budget: if g.override_budget {
            u128::MAX
        } else {
            CountOptions::default().budget
        },
        method: g.paranoid.then_some(CountMethod::Polynomial),
        ..CountOptions::default()
    }
}

fn json<T: Serialize>(value: &T) -> Result<String, Failure> {
    let mut s = serde_json::to_string(value).map_err(|e| Failure::data(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn cached<F>(g: &Global, key: CacheKey, compute: F) -> Result<CountReport, Failure>
where
    F: FnOnce() -> Result<CountReport, Error>,
{
    Ok(match &g.cache {
        Some(path) => Cache::new(path).get_or_insert_with(&key, compute)?,
        None => compute()?,
    })
}

fn cmd_count_zeros(g: &Global) -> Result<Output, Failure> {
    let n = required_n(g, "count-zeros")?;
    let q = g.q.unwrap_or(2);
    let ideal = g.ideal.unwrap_or(IdealSpec::I);
    let key = CacheKey {
        ideal: Some(ideal),
        ..CacheKey::new("count-zeros", n, q)
    };
    let opts = options(g);
    let report = cached(g, key, || count_zeros(n, q, ideal, &opts))?;
    let text = match g.format {
        Format::Json => json(&report)?,
        Format::Csv => format!(
            "n,q,ideal,zeros,total,elapsed_ms\n{n},{q},{ideal},{},{},{}\n",
            report.zero_count, report.total_points, report.elapsed_ms
        ),
        Format::Text => format!(
            "{} zeros of {ideal}_{n} over F_{q} among {} points ({} ms)\n",
            report.zero_count, report.total_points, report.elapsed_ms
        ),
    };
    Ok(Output::ok(text))
}

fn cmd_classify(g: &Global, point: &str) -> Result<Output, Failure> {
    let a: EdgeWeighting = point.parse().map_err(|e: slopecount::core::Error| {
        Failure::data(format!("cannot parse `{point}`: {e}"))
    })?;
    let c = classify_point(&a);
    let text = match g.format {
        Format::Json => json(&c)?,
        Format::Csv => format!(
            "point,n,q,zero_i,zero_j,is_cograph\n{},{},{},{},{},{}\n",
            c.point,
            c.n,
            c.q,
            c.zero_i,
            c.zero_j,
            c.is_cograph.map_or(String::new(), |b| b.to_string())
        ),
        Format::Text => {
            let mut s = format!(
                "{}: zero of I: {}, zero of J: {}\n",
                c.point, c.zero_i, c.zero_j
            );
            if let Some(w) = &c.first_violating_wheel {
                let _ = writeln!(s, "first non-vanishing wheel: {w}");
            }
            if let (Some(graph), Some(cograph)) = (&c.graph, c.is_cograph) {
                let _ = writeln!(s, "graph {graph}, cograph: {cograph}");
            }
            s
        }
    };
    Ok(Output::ok(text))
}

fn cmd_verify(g: &Global, suite: Suite, max_k: usize) -> Result<Output, Failure> {
    let report = match suite {
        Suite::Theorem1 => {
            let orbits = if g.paranoid {
                OrbitCheck::BruteForce
            } else {
                OrbitCheck::FastPath
            };
            suites::theorem1(
                required_n(g, "verify --theorem 1")?,
                orbits,
                g.override_budget,
            )?
        }
        Suite::TreeNotZero => {
            suites::treenotzero(g.n.map_or(6, usize::from), max_k, g.override_budget)?
        }
        Suite::Cog5Cyc => suites::cog5cyc(g.n.map_or(4, usize::from), g.override_budget)?,
        Suite::Generalize => match g.q {
            Some(q) => suites::generalize(&[q])?,
            None => suites::generalize(&[3, 5])?,
        },
    };
    let text = match g.format {
        Format::Json => json(&report)?,
        Format::Csv => suite_csv(&report),
        Format::Text => suite_text(&report),
    };
    Ok(Output {
        text,
        passed: report.passed,
    })
}

fn verdict(passed: bool) -> &'static str {
    if passed {
        "PASS"
    } else {
        "FAIL"
    }
}

fn suite_text(r: &SuiteReport) -> String {
    let mut s = String::new();
    let _ = write!(s, "verify {}", r.suite);
    if let Some(n) = r.n {
        let _ = write!(s, " n={n}");
    }
    s.push('\n');
    for (name, count) in &r.counts {
        let _ = writeln!(s, "  {name} = {count}");
    }
    for c in &r.checks {
        let _ = writeln!(
            s,
            "  {} {} ({} checked, {} failed)",
            verdict(c.passed()),
            c.name,
            c.checked,
            c.failures
        );
        if let Some(w) = &c.counterexample {
            let _ = writeln!(s, "    counterexample: {w}");
        }
    }
    let _ = writeln!(s, "{}", verdict(r.passed));
    s
}

fn suite_csv(r: &SuiteReport) -> String {
    let mut s = String::from("check,checked,failures,result,counterexample\n");
    for c in &r.checks {
        let w = c
            .counterexample
            .as_deref()
            .unwrap_or("")
            .replace('"', "\"\"");
        let _ = writeln!(
            s,
            "\"{}\",{},{},{},\"{w}\"",
            c.name,
            c.checked,
            c.failures,
            verdict(c.passed())
        );
    }
    s
}

fn cmd_table(g: &Global, wheel: Option<&str>) -> Result<Output, Failure> {
    let n = g.n.map_or(4, usize::from);
    let q = g.q.unwrap_or(3);
    let wheel: Wheel = match wheel {
        Some(text) => text
            .parse()
            .map_err(|e: slopecount::core::Error| Failure::usage(format!("--wheel: {e}")))?,
        None => enumerate_wheels(n, IdealSpec::J)
            .into_iter()
            .next()
            .ok_or_else(|| Failure::usage(format!("K_{n} has no wheels")))?,
    };
    if wheel.vertices().max().is_some_and(|v| v > n) {
        return Err(Failure::usage(format!("{wheel} does not fit in K_{n}")));
    }
    let key = CacheKey {
        wheel: Some(wheel.to_string()),
        ..CacheKey::new("table", n, q)
    };
    let opts = options(g);
    let report = cached(g, key, || tabulate_by_type(n, q, &wheel, &opts))?;
    let rows = report.per_type.as_deref().unwrap_or_default();
    let zeros = report.zero_count;
    let non_zeros = report.total_points - zeros;
    let text = match g.format {
        Format::Json => json(&report)?,
        Format::Csv => {
            let mut s = String::from("type,zeros,non_zeros\n");
            for r in rows {
                let _ = writeln!(s, "\"{}\",{},{}", r.partition, r.zeros, r.non_zeros);
            }
            let _ = writeln!(s, "Total,{zeros},{non_zeros}");
            s
        }
        Format::Text => {
            let mut s = format!("{wheel} over F_{q}, n = {n}\n");
            let _ = writeln!(s, "{:<16} {:>10} {:>10}", "type", "zeros", "non-zeros");
            for r in rows {
                let _ = writeln!(s, "{:<16} {:>10} {:>10}", r.partition, r.zeros, r.non_zeros);
            }
            let _ = writeln!(s, "{:<16} {:>10} {:>10}", "Total", zeros, non_zeros);
            s
        }
    };
    Ok(Output::ok(text))
}

fn cmd_export_poly(g: &Global) -> Result<Output, Failure> {
    let n = required_n(g, "export-poly")?;
    let lines = export_polynomials(n, g.ideal.unwrap_or(IdealSpec::I));
    let text = match g.format {
        Format::Json => lines.iter().map(json).collect::<Result<String, _>>()?,
        Format::Csv | Format::Text => lines.iter().map(|l| format!("{l}\n")).collect(),
    };
    Ok(Output::ok(text))
}
