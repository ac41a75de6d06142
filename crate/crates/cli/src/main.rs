use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde::Serialize;
use serde_json::json;

use pisot_doubling::golden::{self, GoldenVerdict};
use pisot_doubling::measure::{cylinder_bounds_endpoints, Endpoint, MeasureBracket};
use pisot_doubling::prob::{decimal_string, exact_string, parse_rational};
use pisot_doubling::report::{analyze, RunConfig, SeriesEntry, Verdict, DECIMAL_DIGITS};
use pisot_doubling::verify::{all_passed, run_suites, InjectedFault};
use pisot_doubling::witness::{self, DEFAULT_K_CAP};
use pisot_doubling::{Level, PisotField, ProbabilityPair};

#[derive(Parser)]
#[command(
    name = "pisot-doubling",
    version,
    about = "Doubling analysis of m-bonacci self-similar measures"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Scan levels 2..depth and report a verdict.
    Analyze(AnalyzeArgs),
    /// Exact witness ratio R_k for m >= 3.
    Witness(WitnessArgs),
    /// The golden-ratio case m = 2.
    Golden(GoldenArgs),
    /// Run the structural verification suites.
    Verify(VerifyArgs),
    /// Bracket the measure of an interval with cylinders.
    Oracle(OracleArgs),
    /// Print the golden-ratio offspring graph, one `FROM TO` edge per line.
    Graph(OutArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
    Text,
}

#[derive(Args)]
struct OutArgs {
    /// Write to FILE instead of stdout.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct AnalyzeArgs {
    #[arg(long)]
    m: usize,
    /// p1 as an exact rational, e.g. 1/3.
    #[arg(long)]
    p1: String,
    #[arg(long)]
    depth: u32,
    /// Certificates must exceed this ratio.
    #[arg(long, default_value = "1000")]
    threshold: String,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Re-derive every merge by exact comparison.
    #[arg(long)]
    audit: bool,
    #[arg(long)]
    max_points: Option<usize>,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args)]
struct WitnessArgs {
    #[arg(long)]
    m: usize,
    #[arg(long)]
    p1: String,
    /// Number of cycles.
    #[arg(
        long,
        conflicts_with = "threshold",
        required_unless_present = "threshold"
    )]
    k: Option<u64>,
    /// Find the least k with R_k above this value.
    #[arg(long)]
    threshold: Option<String>,
    /// Largest level rank built for the cross-validation.
    #[arg(long, default_value_t = 14)]
    cross_depth: u32,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args)]
struct GoldenArgs {
    #[arg(long)]
    p1: String,
    #[arg(long, default_value_t = 16)]
    depth: u32,
    #[arg(long, default_value = "1000")]
    threshold: String,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    m: usize,
    #[arg(long)]
    depth: u32,
    #[arg(long, default_value = "1/2")]
    p1: String,
    /// Corrupt the deepest level first (gap or label).
    #[arg(long)]
    inject_fault: Option<InjectedFault>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args)]
struct OracleArgs {
    #[arg(long)]
    m: usize,
    #[arg(long)]
    p1: String,
    /// Endpoints: rationals, 0.<binary digits>, dJ, or R*ATOM.
    #[arg(long, num_args = 2, value_names = ["A", "B"], allow_hyphen_values = true)]
    interval: Vec<String>,
    #[arg(long, default_value_t = 16)]
    depth: u32,
    #[command(flatten)]
    out: OutArgs,
}

fn sink(out: &OutArgs) -> Result<Box<dyn Write>> {
    Ok(match &out.out {
        Some(path) => {
            Box::new(File::create(path).with_context(|| format!("creating {}", path.display()))?)
        }
        None => Box::new(io::stdout().lock()),
    })
}

fn prob(p1: &str) -> Result<ProbabilityPair> {
    Ok(ProbabilityPair::new(parse_rational(p1)?)?)
}

fn ratio_json(x: &BigRational) -> serde_json::Value {
    json!({ "exact": exact_string(x), "decimal": decimal_string(x, DECIMAL_DIGITS) })
}

fn write_csv(w: &mut dyn Write, series: &[SeriesEntry]) -> Result<()> {
    let mut csv = csv::Writer::from_writer(w);
    for row in series {
        csv.serialize(row)?;
    }
    if series.is_empty() {
        csv.write_record([
            "n",
            "num_points",
            "max_ratio_exact",
            "max_ratio_decimal",
            "argmax_index",
        ])?;
    }
    csv.flush()?;
    Ok(())
}

fn summary(v: &Verdict) -> String {
    let mut s = format!(
        "verdict: {} (m={}, p=({}, {}), depth {}",
        v.tag, v.m, v.p1, v.p2, v.depth_completed
    );
    if let Some(c) = &v.certificate {
        s += &format!(", certificate index {} ratio {}", c.index, c.value_decimal);
    }
    if v.reflected {
        s += ", reflected";
    }
    s.push(')');
    s
}

fn cmd_analyze(a: AnalyzeArgs) -> Result<bool> {
    let mut cfg = RunConfig::parse(a.m, &a.p1, a.depth)?;
    cfg.threshold = parse_rational(&a.threshold)?;
    cfg.audit = a.audit;
    if let Some(cap) = a.max_points {
        cfg.max_points = cap;
    }
    let v = analyze(&cfg)?;
    let mut w = sink(&a.out)?;
    match a.format {
        Format::Csv => {
            write_csv(&mut w, &v.series)?;
            eprintln!("{}", summary(&v));
        }
        Format::Json => writeln!(w, "{}", serde_json::to_string_pretty(&v)?)?,
        Format::Text => {
            for e in &v.series {
                writeln!(
                    w,
                    "n={:<3} points={:<9} max_ratio={} ({})",
                    e.n, e.num_points, e.max_ratio_decimal, e.max_ratio_exact
                )?;
            }
            writeln!(w, "{}", summary(&v))?;
        }
    }
    if let Some(why) = &v.truncated {
        eprintln!("stopped early: {why}");
        return Ok(false);
    }
    Ok(true)
}

#[derive(Serialize)]
struct WitnessReport {
    m: usize,
    p1: String,
    p2: String,
    reflected: bool,
    k: u64,
    r_k: serde_json::Value,
    path_agrees: bool,
    /// `None` when `km + 2` exceeds the cross-validation depth.
    cross_validation: Option<Result<(), String>>,
}

fn cmd_witness(a: WitnessArgs) -> Result<bool> {
    if a.m < 3 {
        bail!("the witness path needs m >= 3; for m = 2 use the `golden` subcommand");
    }
    let p = prob(&a.p1)?;
    let (q, reflected) = p.normalized();
    let k = match (a.k, &a.threshold) {
        (Some(k), _) => k,
        (None, Some(t)) => {
            witness::divergence_certificate(a.m, &p, &parse_rational(t)?, DEFAULT_K_CAP)?.k
        }
        (None, None) => unreachable!("clap requires one of --k, --threshold"),
    };
    let r = witness::r_k(a.m, &q, k)?;
    let path_agrees = witness::r_k_by_path(a.m, &q, k)? == r;
    let rank = k * a.m as u64 + 2;
    let cross_validation = if rank <= u64::from(a.cross_depth) {
        let field = PisotField::new(a.m)?;
        let level = Level::build(&field, &q, rank as u32)?;
        Some(witness::cross_validate(a.m, &q, k, &level).map_err(|f| f.to_string()))
    } else {
        None
    };
    let ok = path_agrees && !matches!(cross_validation, Some(Err(_)));
    let report = WitnessReport {
        m: a.m,
        p1: exact_string(&q.p1()),
        p2: exact_string(&q.p2()),
        reflected,
        k,
        r_k: ratio_json(&r),
        path_agrees,
        cross_validation,
    };
    let mut w = sink(&a.out)?;
    match a.format {
        Format::Json => writeln!(w, "{}", serde_json::to_string_pretty(&report)?)?,
        _ => {
            writeln!(
                w,
                "m={} p=({}, {}) k={k}{}",
                a.m,
                report.p1,
                report.p2,
                if reflected { " (reflected)" } else { "" }
            )?;
            writeln!(
                w,
                "R_k = {} ~ {}",
                exact_string(&r),
                decimal_string(&r, DECIMAL_DIGITS)
            )?;
            writeln!(w, "matrix path agrees: {path_agrees}")?;
            match &report.cross_validation {
                Some(Ok(())) => writeln!(w, "cross-validation at rank {rank}: PASS")?,
                Some(Err(e)) => writeln!(w, "cross-validation at rank {rank}: FAIL {e}")?,
                None => writeln!(
                    w,
                    "cross-validation skipped: rank {rank} > {}",
                    a.cross_depth
                )?,
            }
        }
    }
    Ok(ok)
}

fn cmd_golden(a: GoldenArgs) -> Result<bool> {
    let p = prob(&a.p1)?;
    let threshold = parse_rational(&a.threshold)?;
    let verdict = golden::verdict_golden(&p, a.depth, &threshold);
    let mut w = sink(&a.out)?;
    let value = match &verdict {
        Ok(GoldenVerdict::BalancedToDepth {
            depth,
            triples_checked,
        }) => json!({
            "tag": "doubling-consistent-to-depth",
            "depth": depth,
            "triples_checked": triples_checked,
        }),
        Ok(GoldenVerdict::NonDoubling(c)) => json!({
            "tag": "non-doubling-certified",
            "p1": exact_string(&c.prob.p1()),
            "p2": exact_string(&c.prob.p2()),
            "reflected": c.reflected,
            "ell": c.ell,
            "r_ell": ratio_json(&c.r_ell),
            "lower_bound": ratio_json(&c.lower_bound),
            "threshold": exact_string(&c.threshold),
        }),
        Err(e) => json!({ "tag": "failed", "detail": e }),
    };
    match a.format {
        Format::Json => writeln!(w, "{}", serde_json::to_string_pretty(&value)?)?,
        _ => match &verdict {
            Ok(GoldenVerdict::BalancedToDepth { depth, triples_checked }) => {
                writeln!(w, "all {triples_checked} triples up to rank {depth} are 2-balanced and satisfy the H1/H2 relations")?
            }
            Ok(GoldenVerdict::NonDoubling(c)) => {
                writeln!(
                    w,
                    "ell={} R_ell={} ~ {} lower bound {} ~ {}{}",
                    c.ell,
                    exact_string(&c.r_ell),
                    decimal_string(&c.r_ell, DECIMAL_DIGITS),
                    exact_string(&c.lower_bound),
                    decimal_string(&c.lower_bound, DECIMAL_DIGITS),
                    if c.reflected { " (reflected)" } else { "" }
                )?;
            }
            Err(e) => writeln!(w, "FAIL {e}")?,
        },
    }
    Ok(verdict.is_ok())
}

fn cmd_verify(a: VerifyArgs) -> Result<bool> {
    let p = prob(&a.p1)?;
    let outcomes = run_suites(a.m, &p, a.depth, a.inject_fault)?;
    let mut w = sink(&a.out)?;
    match a.format {
        Format::Json => writeln!(w, "{}", serde_json::to_string_pretty(&outcomes)?)?,
        _ => {
            for o in &outcomes {
                writeln!(w, "{o}")?;
            }
        }
    }
    Ok(all_passed(&outcomes))
}

fn bracket_json(b: &MeasureBracket) -> serde_json::Value {
    json!({
        "depth": b.depth,
        "lower": ratio_json(&b.lower),
        "upper": ratio_json(&b.upper),
        "width": ratio_json(&b.width()),
    })
}

fn cmd_oracle(a: OracleArgs) -> Result<bool> {
    let p = prob(&a.p1)?;
    let field = PisotField::new(a.m)?;
    let lo = Endpoint::parse(&a.interval[0], a.m)?;
    let hi = Endpoint::parse(&a.interval[1], a.m)?;
    let bracket = cylinder_bounds_endpoints(&field, &p, &lo, &hi, a.depth)?;
    let mut w = sink(&a.out)?;
    let mut value = bracket_json(&bracket);
    value["interval"] = json!([a.interval[0], a.interval[1]]);
    value["m"] = json!(a.m);
    value["p1"] = json!(exact_string(&p.p1()));
    writeln!(w, "{}", serde_json::to_string_pretty(&value)?)?;
    Ok(true)
}

fn cmd_graph(a: OutArgs) -> Result<bool> {
    sink(&a)?.write_all(golden::offspring_graph_text().as_bytes())?;
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Analyze(a) => cmd_analyze(a),
        Command::Witness(a) => cmd_witness(a),
        Command::Golden(a) => cmd_golden(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Oracle(a) => cmd_oracle(a),
        Command::Graph(a) => cmd_graph(a),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
