//! `nwhyp`: hyperbolicity certificates for `f_c(x) = x^2 + c`, `c <= -2`.
//!
//! Every subcommand prints a deterministic JSON report (see [`report`]); the
//! data-producing subcommands (`nw`, `plot`) print raw CSV/TSV when no
//! `--out` file is given. Exit codes: 0 verified/ok, 1 a checked inequality
//! was falsified, 2 usage error, 3 unsupported parameter or inapplicable
//! method.

mod report;

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use nwhyp_core::certificates::{
    certify_gap, certify_metric, certify_weight, choose_exponent, default_exponent,
    nonhyperbolicity_witness, weight_expansion, weight_ratio, CertStatus, HyperbolicityVerdict,
    Method,
};
use nwhyp_core::map::regime_threshold_c;
use nwhyp_core::nonwandering::{build, to_csv_string, to_json_string, total_length, CantorApprox};
use nwhyp_core::render::float17;
use nwhyp_core::symbolic::{decode, itinerary, DEFAULT_DECODE_DEPTH_CAP};
use nwhyp_core::{analyze, MapParams, Regime, Word};
use report::Report;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "nwhyp",
    version,
    about = "Numerical hyperbolicity certificates for the non-wandering set of x^2 + c, c <= -2"
)]
struct Cli {
    /// Worker threads for parallel sweeps (0 = automatic). Results are
    /// byte-identical for every setting.
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,

    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Derived constants of the map: fixed points, gap half-width, regime.
    Analyze {
        /// Parameter of the map x^2 + c; must satisfy c <= -2.
        #[arg(long, allow_hyphen_values = true)]
        c: f64,
        #[arg(long, value_enum, default_value_t = ReportFormat::Json)]
        format: ReportFormat,
    },
    /// Finite approximation of the non-wandering set (2^(depth+1) intervals).
    Nw {
        #[arg(long, allow_hyphen_values = true)]
        c: f64,
        /// Refinement depth of the interval cover.
        #[arg(long, default_value_t = 12)]
        depth: usize,
        #[arg(long, value_enum, default_value_t = DataFormat::Csv)]
        format: DataFormat,
        /// Write the component list here and print a JSON report instead.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run hyperbolicity certificates and report verdicts.
    Certify {
        #[arg(long, allow_hyphen_values = true)]
        c: f64,
        #[arg(long, default_value_t = 12)]
        depth: usize,
        /// Cocycle length for the derivative checks |Df^n| >= C lambda^n.
        #[arg(long, default_value_t = 12)]
        n: usize,
        /// Grid size for the metric contraction scan.
        #[arg(long, default_value_t = 512)]
        grid: usize,
        /// Which construction to run; `all` runs every method applicable at c.
        #[arg(long, value_enum, default_value_t = MethodArg::All)]
        method: MethodArg,
        #[arg(long, value_enum, default_value_t = ReportFormat::Json)]
        format: ReportFormat,
    },
    /// Symbolic itinerary of a point through the two-cell partition.
    Itinerary {
        #[arg(long, allow_hyphen_values = true)]
        c: f64,
        /// Starting point; must stay in the coding cells for n steps.
        #[arg(long, allow_hyphen_values = true)]
        x: f64,
        /// Number of symbols to read.
        #[arg(long, default_value_t = 12)]
        n: usize,
        #[arg(long, value_enum, default_value_t = ReportFormat::Json)]
        format: ReportFormat,
    },
    /// Point of the invariant set realizing a word, by cylinder refinement.
    Decode {
        #[arg(long, allow_hyphen_values = true)]
        c: f64,
        /// Word over {0, 1}, e.g. 0110.
        #[arg(long)]
        word: String,
        /// Target bracket width.
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        #[arg(long, value_enum, default_value_t = ReportFormat::Json)]
        format: ReportFormat,
    },
    /// Non-hyperbolicity evidence at c = -2 (flat critical orbit vs 4^n).
    Witness {
        #[arg(long, allow_hyphen_values = true)]
        c: f64,
        /// Longest cocycle length tabulated.
        #[arg(long, default_value_t = 12)]
        n: usize,
        #[arg(long, value_enum, default_value_t = ReportFormat::Json)]
        format: ReportFormat,
    },
    /// Tab-separated samples of a certificate quantity, ready for plotting.
    Plot {
        #[arg(long, allow_hyphen_values = true)]
        c: f64,
        /// mu: weighted one-step expansion 2|x| R(x)^M on [alpha, p];
        /// ratio: weight quotient R(x) on [alpha, p];
        /// cantor: the cover components at --depth.
        #[arg(long, value_enum)]
        quantity: Quantity,
        #[arg(long, default_value_t = 12)]
        depth: usize,
        /// Number of sample points on [alpha, p].
        #[arg(long, default_value_t = 512)]
        grid: usize,
        /// Write the TSV here and print a JSON report instead.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq)]
enum ReportFormat {
    Json,
    Text,
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq)]
enum DataFormat {
    Csv,
    Json,
}

impl DataFormat {
    fn as_str(self) -> &'static str {
        match self {
            DataFormat::Csv => "csv",
            DataFormat::Json => "json",
        }
    }
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq)]
enum MethodArg {
    Gap,
    Metric,
    Weight,
    All,
}

impl MethodArg {
    fn as_str(self) -> &'static str {
        match self {
            MethodArg::Gap => "gap",
            MethodArg::Metric => "metric",
            MethodArg::Weight => "weight",
            MethodArg::All => "all",
        }
    }
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq)]
enum Quantity {
    Mu,
    Ratio,
    Cantor,
}

impl Quantity {
    fn as_str(self) -> &'static str {
        match self {
            Quantity::Mu => "mu",
            Quantity::Ratio => "ratio",
            Quantity::Cantor => "cantor",
        }
    }
}

/// CLI-level error: either a core error (mapped to exit 3, except a failed
/// exponent escalation, which is a falsification and maps to 1), a message
/// for situations the core cannot phrase (inapplicable commands, with the
/// actionable alternative), or an I/O failure on --out.
enum CliError {
    Core(nwhyp_core::Error),
    Inapplicable(String),
    Io { path: PathBuf, source: std::io::Error },
}

impl From<nwhyp_core::Error> for CliError {
    fn from(e: nwhyp_core::Error) -> Self {
        CliError::Core(e)
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Core(e) => e.fmt(f),
            CliError::Inapplicable(msg) => f.write_str(msg),
            CliError::Io { path, source } => {
                write!(f, "cannot write {}: {}", path.display(), source)
            }
        }
    }
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(nwhyp_core::Error::EscalationFailed { .. }) => 1,
            CliError::Core(_) => 3,
            CliError::Inapplicable(_) => 3,
            CliError::Io { .. } => 2,
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn main() {
    let cli = Cli::parse();
    if cli.threads > 0 {
        // Ignore the error: a second build_global in one process (tests) is
        // harmless, the first pool wins and results do not depend on it.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build_global();
    }
    let code = match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    };
    std::process::exit(code);
}

fn run(cmd: Cmd) -> CliResult<i32> {
    match cmd {
        Cmd::Analyze { c, format } => cmd_analyze(c, format),
        Cmd::Nw {
            c,
            depth,
            format,
            out,
        } => cmd_nw(c, depth, format, out),
        Cmd::Certify {
            c,
            depth,
            n,
            grid,
            method,
            format,
        } => cmd_certify(c, depth, n, grid, method, format),
        Cmd::Itinerary { c, x, n, format } => cmd_itinerary(c, x, n, format),
        Cmd::Decode {
            c,
            word,
            tol,
            format,
        } => cmd_decode(c, &word, tol, format),
        Cmd::Witness { c, n, format } => cmd_witness(c, n, format),
        Cmd::Plot {
            c,
            quantity,
            depth,
            grid,
            out,
        } => cmd_plot(c, quantity, depth, grid, out),
    }
}

fn emit(report: &Report, format: ReportFormat) {
    match format {
        ReportFormat::Json => println!("{}", report.to_json()),
        ReportFormat::Text => print!("{}", report.to_text()),
    }
}

fn write_data(path: &PathBuf, data: &str) -> CliResult<()> {
    std::fs::write(path, data).map_err(|source| CliError::Io {
        path: path.clone(),
        source,
    })
}

fn cmd_analyze(c: f64, format: ReportFormat) -> CliResult<i32> {
    let m = analyze(c)?;
    let report = Report {
        command: "analyze",
        params_echo: json!({ "c": c }),
        results: json!({
            "alpha": m.alpha,
            "c": m.c,
            "escape_bound": m.default_escape_bound(),
            "k": m.k,
            "p_minus": m.p_minus,
            "p_plus": m.p_plus,
            "regime": m.regime.as_str(),
            "regime_threshold_c": regime_threshold_c(),
            "sqrt_k": m.sqrt_k,
        }),
        status: "ok",
    };
    emit(&report, format);
    Ok(0)
}

/// Upper bound `2 (p - alpha) (2 alpha)^{-depth}` printed next to the
/// measured total length. It is the per-branch contraction estimate; the
/// measured value can exceed it because the number of components doubles
/// each level.
fn length_bound(m: &MapParams, depth: usize) -> f64 {
    2.0 * (m.p_plus - m.alpha) * (2.0 * m.alpha).powi(-(depth as i32))
}

fn require_gap(m: &MapParams, what: &str) -> CliResult<()> {
    if m.regime == Regime::NonHypBoundary {
        return Err(CliError::Inapplicable(format!(
            "{what} requires c < -2; at c = -2 the non-wandering set is the full \
             interval [-2, 2] and is not hyperbolic. Run `nwhyp witness --c -2` \
             for the explicit evidence."
        )));
    }
    Ok(())
}

fn cmd_nw(c: f64, depth: usize, format: DataFormat, out: Option<PathBuf>) -> CliResult<i32> {
    let m = analyze(c)?;
    require_gap(&m, "the Cantor cover construction")?;
    let a = build(&m, depth)?;
    let data = match format {
        DataFormat::Csv => to_csv_string(&a),
        DataFormat::Json => to_json_string(&a),
    };
    match out {
        None => {
            if format == DataFormat::Csv {
                // Headline numbers as an extra CSV comment, so a bare `nw`
                // shows the measured length next to the contraction bound.
                println!(
                    "# total_length={} length_bound={}",
                    float17(total_length(&a)),
                    float17(length_bound(&m, depth))
                );
            }
            print!("{data}");
        }
        Some(path) => {
            write_data(&path, &data)?;
            let report = Report {
                command: "nw",
                params_echo: json!({ "c": c, "depth": depth, "format": format.as_str() }),
                results: json!({
                    "components": a.components.len(),
                    "depth": a.depth,
                    "length_bound": length_bound(&m, depth),
                    "out": path.display().to_string(),
                    "total_length": total_length(&a),
                }),
                status: "ok",
            };
            emit(&report, ReportFormat::Json);
        }
    }
    Ok(0)
}

fn falsification_value(verdict: &HyperbolicityVerdict) -> Value {
    match &verdict.falsification {
        None => Value::Null,
        Some(ck) => json!({ "lhs": ck.lhs, "n": ck.n, "rhs": ck.rhs, "x": ck.x }),
    }
}

fn verdict_common(verdict: &HyperbolicityVerdict) -> Value {
    json!({
        "falsification": falsification_value(verdict),
        "lambda": verdict.lambda,
        "method": verdict.method.as_str(),
        "prefactor": verdict.prefactor,
        "sample_count": verdict.sample_count,
        "status": verdict.status.as_str(),
        "verified_n": verdict.verified_n,
    })
}

fn merge(base: Value, extra: Value) -> Value {
    let (Value::Object(mut b), Value::Object(e)) = (base, extra) else {
        unreachable!("merge is only used on objects");
    };
    b.extend(e);
    Value::Object(b)
}

fn cmd_certify(
    c: f64,
    depth: usize,
    n: usize,
    grid: usize,
    method: MethodArg,
    format: ReportFormat,
) -> CliResult<i32> {
    let m = analyze(c)?;
    require_gap(&m, "every hyperbolicity certificate")?;
    let a = build(&m, depth)?;
    let requested: Vec<Method> = match method {
        MethodArg::Gap => vec![Method::Gap],
        MethodArg::Metric => vec![Method::Metric],
        MethodArg::Weight => vec![Method::Weight],
        MethodArg::All => {
            let mut v = Vec::new();
            if m.regime == Regime::EasyGap {
                v.push(Method::Gap);
            }
            v.push(Method::Metric);
            v.push(Method::Weight);
            v
        }
    };
    let mut certificates = Vec::new();
    let mut all_verified = true;
    for method in requested {
        let (value, status) = run_method(&m, &a, method, n, grid)?;
        if status != CertStatus::Verified {
            all_verified = false;
        }
        certificates.push(value);
    }
    let report = Report {
        command: "certify",
        params_echo: json!({
            "c": c,
            "depth": depth,
            "grid": grid,
            "method": method.as_str(),
            "n": n,
        }),
        results: json!({
            "certificates": certificates,
            "regime": m.regime.as_str(),
        }),
        status: if all_verified { "ok" } else { "falsified" },
    };
    emit(&report, format);
    Ok(if all_verified { 0 } else { 1 })
}

fn run_method(
    m: &MapParams,
    a: &CantorApprox,
    method: Method,
    n: usize,
    grid: usize,
) -> CliResult<(Value, CertStatus)> {
    match method {
        Method::Gap => {
            let (_cert, verdict) = certify_gap(m, a, n)?;
            Ok((verdict_common(&verdict), verdict.status))
        }
        Method::Metric => {
            let (cert, verdict) = certify_metric(m, a, grid, n)?;
            let value = merge(
                verdict_common(&verdict),
                json!({
                    "Lambda": cert.contraction,
                    "argmin": [cert.argmin.0, cert.argmin.1],
                    "c_A": cert.prefactor,
                }),
            );
            Ok((value, verdict.status))
        }
        Method::Weight => {
            let exponent = if m.regime == Regime::HardGap {
                choose_exponent(m, a)?
            } else {
                default_exponent(m)
            };
            let (cert, verdict) = certify_weight(m, a, exponent, n)?;
            let value = merge(
                verdict_common(&verdict),
                json!({ "M": cert.exponent, "argmin": cert.argmin_x }),
            );
            Ok((value, verdict.status))
        }
        Method::NonHyperbolic => unreachable!("witness runs through its own subcommand"),
    }
}

fn cmd_itinerary(c: f64, x: f64, n: usize, format: ReportFormat) -> CliResult<i32> {
    let m = analyze(c)?;
    let w = itinerary(&m, x, n)?;
    let report = Report {
        command: "itinerary",
        params_echo: json!({ "c": c, "n": n, "x": x }),
        results: json!({
            "boundary_ambiguous": w.boundary_ambiguous,
            "word": w.to_string(),
        }),
        status: "ok",
    };
    emit(&report, format);
    Ok(0)
}

fn cmd_decode(c: f64, word: &str, tol: f64, format: ReportFormat) -> CliResult<i32> {
    let m = analyze(c)?;
    let w: Word = word.parse()?;
    let d = decode(&m, &w, tol, DEFAULT_DECODE_DEPTH_CAP);
    let report = Report {
        command: "decode",
        params_echo: json!({ "c": c, "tol": tol, "word": word }),
        results: json!({
            "converged": d.converged,
            "hi": d.bracket.hi(),
            "lo": d.bracket.lo(),
            "point": d.point,
            "width": d.width,
        }),
        status: "ok",
    };
    emit(&report, format);
    Ok(0)
}

fn cmd_witness(c: f64, n: usize, format: ReportFormat) -> CliResult<i32> {
    let m = analyze(c)?;
    let (w, verdict) = nonhyperbolicity_witness(&m, n)?;
    if format == ReportFormat::Text {
        // A table is more useful than flattened key paths here: the flat
        // cocycle along the critical orbit against the 4^n growth at its tail.
        println!("non-hyperbolicity witness at c = -2: orbit 0 -> -2 -> 2");
        println!("n\t|Df^n(0)|\t|Df^n(-2)| (= 4^n)");
        for (i, (z, e)) in w
            .zero_derivatives
            .iter()
            .zip(w.expanding_derivatives.iter())
            .enumerate()
        {
            println!("{}\t{}\t{}", i + 1, float17(*z), float17(*e));
        }
        println!(
            "orbit density check on [-2, 2]: max gap {} over {} points (pass: {})",
            float17(w.density.max_gap),
            w.density.points,
            w.density.pass
        );
        return Ok(0);
    }
    let report = Report {
        command: "witness",
        params_echo: json!({ "c": c, "n": n }),
        results: json!({
            "density": {
                "max_gap": w.density.max_gap,
                "pass": w.density.pass,
                "points": w.density.points,
            },
            "expanding_derivatives": w.expanding_derivatives,
            "orbit": w.orbit,
            "verdict": verdict_common(&verdict),
            "zero_derivatives": w.zero_derivatives,
        }),
        status: "ok",
    };
    emit(&report, format);
    Ok(0)
}

fn cmd_plot(
    c: f64,
    quantity: Quantity,
    depth: usize,
    grid: usize,
    out: Option<PathBuf>,
) -> CliResult<i32> {
    let m = analyze(c)?;
    require_gap(&m, "plotting certificate quantities")?;
    let grid = grid.max(2);
    let mut data = String::new();
    let mut exponent: Option<u32> = None;
    let rows;
    match quantity {
        Quantity::Cantor => {
            let a = build(&m, depth)?;
            data.push_str(&format!(
                "# c={} quantity=cantor depth={}\n",
                float17(c),
                depth
            ));
            for comp in &a.components {
                data.push_str(&float17(comp.lo()));
                data.push('\t');
                data.push_str(&float17(comp.hi()));
                data.push('\n');
            }
            rows = a.components.len();
        }
        Quantity::Mu | Quantity::Ratio => {
            if quantity == Quantity::Mu {
                let ex = if m.regime == Regime::HardGap {
                    choose_exponent(&m, &build(&m, depth)?)?
                } else {
                    default_exponent(&m)
                };
                exponent = Some(ex);
                data.push_str(&format!(
                    "# c={} quantity=mu M={ex} grid={grid}\n",
                    float17(c)
                ));
            } else {
                data.push_str(&format!("# c={} quantity=ratio grid={grid}\n", float17(c)));
            }
            let step = (m.p_plus - m.alpha) / (grid - 1) as f64;
            for i in 0..grid {
                let x = if i + 1 == grid {
                    m.p_plus
                } else {
                    m.alpha + step * i as f64
                };
                let y = match quantity {
                    Quantity::Mu => weight_expansion(&m, x, exponent.unwrap())?,
                    Quantity::Ratio => weight_ratio(&m, x)?,
                    Quantity::Cantor => unreachable!(),
                };
                data.push_str(&float17(x));
                data.push('\t');
                data.push_str(&float17(y));
                data.push('\n');
            }
            rows = grid;
        }
    }
    match out {
        None => print!("{data}"),
        Some(path) => {
            write_data(&path, &data)?;
            let mut results = json!({
                "out": path.display().to_string(),
                "quantity": quantity.as_str(),
                "rows": rows,
            });
            if let Some(ex) = exponent {
                results = merge(results, json!({ "M": ex }));
            }
            let report = Report {
                command: "plot",
                params_echo: json!({ "c": c, "depth": depth, "grid": grid, "quantity": quantity.as_str() }),
                results,
                status: "ok",
            };
            emit(&report, ReportFormat::Json);
        }
    }
    Ok(0)
}
