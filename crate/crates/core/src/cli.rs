//! The `superweier` command line.
//!
//! Four subcommands: `eval` (point values of `F_n`, `W_N`, `𝒲_{N,n}`, `W`),
//! `bound` (the explicit error budgets as JSON), `sweep` (convergence
//! tables as CSV), and `phase` (the regime diagram as CSV and/or SVG).
//!
//! Output discipline: data files are byte-reproducible for fixed arguments
//! and precision — 17 significant digits for every real, LF line endings,
//! no timestamps. Provenance (arguments, precision, package version) goes
//! to a `.meta.json` sidecar instead. Exit codes: 0 success, 1 numerical
//! failure, 2 validation failure.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;

use clap::error::ErrorKind;
use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use rug::ops::Pow;
use rug::Float;

use crate::bounds;
use crate::error::Error;
use crate::numerics::{self, to_cartesian_unchecked, LogPolarComplex, PrecisionConfig};
use crate::regimes::{self, Schedule};
use crate::superosc;
use crate::svg;
use crate::weierstrass::{self, Strictness, WeierstrassParams};

/// Environment variable supplying the default mantissa bits when
/// `--prec-bits` is absent.
pub const PREC_BITS_ENV: &str = "SUPERWEIER_PREC_BITS";

#[derive(Parser)]
#[command(
    name = "superweier",
    version,
    about = "Superoscillating approximants of the Weierstrass function: evaluation, explicit error bounds, convergence experiments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate F_n, W_N, the superoscillating approximant, or W at a point
    Eval(EvalArgs),
    /// Emit the per-frequency or global error budget as JSON
    Bound(BoundArgs),
    /// Run a fixed-N or joint-limit sweep and write the CSV table
    Sweep(SweepArgs),
    /// Tabulate and plot the convergence phase diagram
    Phase(PhaseArgs),
}

#[derive(Args, Clone)]
struct CommonArgs {
    /// Working precision in mantissa bits (default from SUPERWEIER_PREC_BITS, else 128)
    #[arg(long, global = true)]
    prec_bits: Option<u32>,
    /// Precision doublings allowed when cancellation is detected
    #[arg(long, global = true, default_value_t = 3)]
    max_escalations: u32,
    /// Enforce the classical hypotheses (b odd integer, ab > 1 + 3*pi/2)
    #[arg(long, global = true)]
    strict: bool,
}

#[derive(Args)]
#[command(group(ArgGroup::new("target").required(true).args(["eval_fn", "eval_super", "truncated", "weier"])))]
struct EvalArgs {
    /// Evaluate the superoscillating sequence F_n(x; alpha)
    #[arg(long = "fn")]
    eval_fn: bool,
    /// Evaluate the approximant sum of a^m F_n(x; b^m pi), m = 0..=N
    #[arg(long = "super")]
    eval_super: bool,
    /// Evaluate the truncated series W_N(x)
    #[arg(long)]
    truncated: bool,
    /// Evaluate W(x) to within --tol
    #[arg(long)]
    weier: bool,

    /// Oscillation order n
    #[arg(long)]
    n: Option<u64>,
    /// Truncation index N
    #[arg(long = "N")]
    n_trunc: Option<u32>,
    /// Target frequency (accepts pi literals such as `pi`, `3pi`, `2.5pi`)
    #[arg(long)]
    alpha: Option<String>,
    /// Evaluation point (accepts pi literals)
    #[arg(long)]
    x: Option<String>,
    #[arg(long)]
    a: Option<String>,
    #[arg(long)]
    b: Option<String>,
    /// Tail tolerance for --weier
    #[arg(long)]
    tol: Option<String>,
    /// Also print the target wave e^{i alpha x} and the absolute error (--fn only)
    #[arg(long)]
    compare: bool,

    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
#[command(group(ArgGroup::new("kind").required(true).args(["single", "global"])))]
struct BoundArgs {
    /// Per-frequency budget {K, J, bound}
    #[arg(long)]
    single: bool,
    /// Whole-series budget {S1, S2, K_max, min_n, bound}
    #[arg(long)]
    global: bool,

    #[arg(long)]
    n: Option<u64>,
    #[arg(long)]
    alpha: Option<String>,
    /// Half-width M of the interval [-M, M]
    #[arg(long = "M")]
    half_width: Option<String>,
    #[arg(long)]
    a: Option<String>,
    #[arg(long)]
    b: Option<String>,
    #[arg(long = "N")]
    n_trunc: Option<u32>,
    /// Also write the JSON to this path
    #[arg(long)]
    out: Option<String>,

    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
#[command(group(ArgGroup::new("mode").required(true).args(["joint", "fixed_n"])))]
struct SweepArgs {
    /// Sweep N along a growth schedule n_N = round(c * N^p * beta^N)
    #[arg(long)]
    joint: bool,
    /// Sweep n at fixed N
    #[arg(long = "fixed-N")]
    fixed_n: bool,

    #[arg(long)]
    a: Option<String>,
    #[arg(long)]
    b: Option<String>,
    #[arg(long = "M")]
    half_width: Option<String>,
    #[arg(long, default_value_t = 1001)]
    grid_points: usize,
    /// CSV output path (a .meta.json sidecar is written next to it)
    #[arg(long)]
    out: String,
    /// Also write an error chart to this SVG path
    #[arg(long)]
    svg: Option<String>,
    /// Largest schedule order accepted before giving up
    #[arg(long, default_value_t = regimes::DEFAULT_ORDER_BUDGET)]
    budget: u64,

    /// Schedule coefficient c (joint mode)
    #[arg(long)]
    c: Option<String>,
    /// Schedule power p (joint mode)
    #[arg(long)]
    p: Option<String>,
    /// Schedule base beta (joint mode)
    #[arg(long)]
    beta: Option<String>,
    #[arg(long = "N-max")]
    n_max: Option<u32>,

    /// Truncation index N (fixed-N mode)
    #[arg(long = "N")]
    n_trunc: Option<u32>,
    /// Comma-separated oscillation orders (fixed-N mode)
    #[arg(long = "n-list")]
    n_list: Option<String>,

    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PhaseFormat {
    Csv,
    Svg,
    Both,
}

#[derive(Args)]
struct PhaseArgs {
    #[arg(long)]
    a: Option<String>,
    #[arg(long)]
    b: Option<String>,
    #[arg(long = "M")]
    half_width: Option<String>,
    /// Comma-separated strictly increasing schedule bases; default spans the
    /// wall: ab^3 * {1/3, 2/3, 1, 3/2, 3}
    #[arg(long = "beta-grid")]
    beta_grid: Option<String>,
    #[arg(long = "N-max", default_value_t = 4)]
    n_max: u32,
    #[arg(long, default_value_t = 257)]
    grid_points: usize,
    /// Output base path; writes <out>.csv and/or <out>.svg
    #[arg(long)]
    out: String,
    #[arg(long, value_enum, default_value_t = PhaseFormat::Both)]
    format: PhaseFormat,
    #[arg(long, default_value_t = regimes::DEFAULT_ORDER_BUDGET)]
    budget: u64,

    #[command(flatten)]
    common: CommonArgs,
}

enum CliError {
    Usage(String),
    Op(Error),
    Io(std::io::Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Op(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// Parses and runs; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let echo: Vec<String> = argv
        .iter()
        .skip(1)
        .map(|s| s.to_string_lossy().into_owned())
        .collect();
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = e.print();
            return code;
        }
    };
    let outcome = match cli.command {
        Command::Eval(a) => cmd_eval(a),
        Command::Bound(a) => cmd_bound(a),
        Command::Sweep(a) => cmd_sweep(a, &echo),
        Command::Phase(a) => cmd_phase(a, &echo),
    };
    match outcome {
        Ok(()) => 0,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            2
        }
        Err(CliError::Op(e)) => {
            eprintln!("error: {e}");
            if e.is_numerical() {
                1
            } else {
                2
            }
        }
        Err(CliError::Io(e)) => {
            eprintln!("io error: {e}");
            1
        }
    }
}

fn require<T>(opt: Option<T>, name: &str) -> CliResult<T> {
    opt.ok_or_else(|| CliError::Usage(format!("--{name} is required for this mode")))
}

fn resolve_prec(common: &CommonArgs) -> CliResult<PrecisionConfig> {
    let bits = match common.prec_bits {
        Some(b) => b,
        None => match std::env::var(PREC_BITS_ENV) {
            Ok(v) => v.parse::<u32>().map_err(|_| {
                CliError::Usage(format!("{PREC_BITS_ENV} must be an integer, got `{v}`"))
            })?,
            Err(_) => 128,
        },
    };
    Ok(PrecisionConfig::new(bits, common.max_escalations)?)
}

fn strictness(common: &CommonArgs) -> Strictness {
    if common.strict {
        Strictness::Strict
    } else {
        Strictness::Basic
    }
}

/// Parses a real argument, understanding `pi` literals (`pi`, `-pi`,
/// `3pi`, `2.5pi`) so frequencies can be passed as exact multiples of π.
fn parse_real(text: &str, bits: u32, name: &str) -> CliResult<Float> {
    let t = text.trim();
    let make_err = || CliError::Usage(format!("--{name}: cannot parse `{text}` as a real number"));
    if let Some(prefix) = t.strip_suffix("pi") {
        let mult = match prefix.trim() {
            "" | "+" => Float::with_val(bits, 1),
            "-" => Float::with_val(bits, -1),
            p => Float::parse(p)
                .map(|v| Float::with_val(bits, v))
                .map_err(|_| make_err())?,
        };
        return Ok(mult * numerics::float_pi(bits));
    }
    Float::parse(t)
        .map(|v| Float::with_val(bits, v))
        .map_err(|_| make_err())
}

fn parse_params(
    a: Option<String>,
    b: Option<String>,
    common: &CommonArgs,
    bits: u32,
) -> CliResult<WeierstrassParams> {
    let a = parse_real(&require(a, "a")?, bits, "a")?;
    let b = parse_real(&require(b, "b")?, bits, "b")?;
    Ok(weierstrass::validate_params(a, b, strictness(common))?)
}

/// 17 significant digits: enough to round-trip an IEEE double, and the
/// fixed width keeps data files byte-stable.
fn g17(v: &Float) -> String {
    format!("{v:.17e}")
}

fn g17_opt(v: &Option<Float>) -> String {
    v.as_ref().map(g17).unwrap_or_default()
}

/// Cartesian rendering cap: values with |ln modulus| beyond 700·ln(10) are
/// printed in log-polar form instead.
fn cartesian_cap(bits: u32) -> Float {
    Float::with_val(bits, 700) * Float::with_val(bits, 10).ln()
}

fn fmt_logpolar(v: &LogPolarComplex) -> String {
    if v.log_modulus.clone().abs() <= cartesian_cap(v.log_modulus.prec()) {
        let z = to_cartesian_unchecked(v);
        format!("({}, {})", g17(&z.re), g17(&z.im))
    } else {
        format!(
            "(log10_modulus {}, phase {})",
            g17(&v.log10_modulus()),
            g17(&v.phase)
        )
    }
}

fn cmd_eval(args: EvalArgs) -> CliResult<()> {
    let prec = resolve_prec(&args.common)?;
    let bits = prec.mantissa_bits();
    if args.eval_fn {
        let n = require(args.n, "n")?;
        let alpha = parse_real(&require(args.alpha, "alpha")?, bits, "alpha")?;
        let x = parse_real(&require(args.x, "x")?, bits, "x")?;
        let v = superosc::eval_fn(n, &alpha, &x, &prec)?;
        println!("F_n = {}", fmt_logpolar(&v));
        if args.compare {
            let wb = prec.mantissa_bits() + 64;
            let theta = Float::with_val(wb, &alpha) * Float::with_val(wb, &x);
            let (sin, cos) = theta.sin_cos(Float::new(wb));
            let target = numerics::CartesianComplex::new(cos, sin);
            println!("target = ({}, {})", g17(&target.re), g17(&target.im));
            if v.log_modulus.clone().abs() <= cartesian_cap(v.log_modulus.prec()) {
                let err = to_cartesian_unchecked(&v).distance(&target);
                println!("abs_error = {}", g17(&err));
            } else {
                println!("abs_error = (beyond cartesian range; see log10_modulus)");
            }
        }
    } else if args.eval_super {
        let params = parse_params(args.a, args.b, &args.common, bits)?;
        let n_trunc = require(args.n_trunc, "N")?;
        let n = require(args.n, "n")?;
        let x = parse_real(&require(args.x, "x")?, bits, "x")?;
        let v = weierstrass::eval_super_weierstrass(&params, n_trunc, n, &x, &prec)?;
        println!("W_super = {}", fmt_logpolar(&v));
    } else if args.truncated {
        let params = parse_params(args.a, args.b, &args.common, bits)?;
        let n_trunc = require(args.n_trunc, "N")?;
        let x = parse_real(&require(args.x, "x")?, bits, "x")?;
        let v = weierstrass::eval_truncated(&params, n_trunc, &x, &prec);
        println!("W_N = ({}, {})", g17(&v.re), g17(&v.im));
    } else {
        let params = parse_params(args.a, args.b, &args.common, bits)?;
        let x = parse_real(&require(args.x, "x")?, bits, "x")?;
        let tol = parse_real(&require(args.tol, "tol")?, bits, "tol")?;
        let (v, n_used) = weierstrass::eval_weierstrass(&params, &x, &tol, &prec)?;
        println!("W = ({}, {})", g17(&v.re), g17(&v.im));
        println!("N_used = {n_used}");
    }
    Ok(())
}

fn write_output(path: &str, content: &str) -> CliResult<()> {
    fs::write(path, content)?;
    Ok(())
}

fn cmd_bound(args: BoundArgs) -> CliResult<()> {
    let prec = resolve_prec(&args.common)?;
    let bits = prec.mantissa_bits();
    let half_width = parse_real(&require(args.half_width.clone(), "M")?, bits, "M")?;
    let json = if args.single {
        let n = require(args.n, "n")?;
        let alpha = parse_real(&require(args.alpha, "alpha")?, bits, "alpha")?;
        let budget = bounds::single_term_bound(n, &alpha, &half_width)?;
        format!(
            "{{\"K\": {}, \"J\": {}, \"bound\": {}}}\n",
            g17(&budget.k),
            g17(&budget.j),
            g17(&budget.bound)
        )
    } else {
        let params = parse_params(args.a, args.b, &args.common, bits)?;
        let n_trunc = require(args.n_trunc, "N")?;
        let n = require(args.n, "n")?;
        let budget = bounds::global_bound(&params, &half_width, n_trunc, n)?;
        format!(
            "{{\"S1\": {}, \"S2\": {}, \"K_max\": {}, \"min_n\": {}, \"bound\": {}}}\n",
            g17(&budget.s1),
            g17(&budget.s2),
            g17(&budget.k_max),
            budget.min_n,
            g17(&budget.bound)
        )
    };
    print!("{json}");
    if let Some(path) = args.out {
        write_output(&path, &json)?;
    }
    Ok(())
}

fn json_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for ch in s.chars() {
        match ch {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            c if (c as u32) < 0x20 => {
                let _ = write!(out, "\\u{:04x}", c as u32);
            }
            c => out.push(c),
        }
    }
    out
}

/// Provenance sidecar: arguments and precision, no timestamps or machine
/// identifiers, so the data files themselves stay byte-comparable.
fn write_sidecar(
    base: &str,
    command: &str,
    echo: &[String],
    prec: &PrecisionConfig,
) -> CliResult<()> {
    let args_json: Vec<String> = echo
        .iter()
        .map(|a| format!("\"{}\"", json_escape(a)))
        .collect();
    let content = format!(
        "{{\"command\": \"{}\", \"args\": [{}], \"prec_bits\": {}, \"max_escalations\": {}, \"version\": \"{}\"}}\n",
        command,
        args_json.join(", "),
        prec.mantissa_bits(),
        prec.max_escalations(),
        env!("CARGO_PKG_VERSION")
    );
    write_output(&format!("{base}.meta.json"), &content)
}

const SWEEP_HEADER: &str = "N,n,R_N,sup_err_E1,bound_E1,tail_E2,total_bound,admissible";

fn parse_u64_list(text: &str, name: &str) -> CliResult<Vec<u64>> {
    let items: Result<Vec<u64>, _> = text.split(',').map(|s| s.trim().parse::<u64>()).collect();
    items.map_err(|_| CliError::Usage(format!("--{name}: expected comma-separated integers")))
}

fn cmd_sweep(args: SweepArgs, echo: &[String]) -> CliResult<()> {
    let prec = resolve_prec(&args.common)?;
    let bits = prec.mantissa_bits();
    let params = parse_params(args.a.clone(), args.b.clone(), &args.common, bits)?;
    let half_width = parse_real(&require(args.half_width.clone(), "M")?, bits, "M")?;

    let mut csv = String::new();
    csv.push_str(SWEEP_HEADER);
    csv.push('\n');
    let mut chart_measured: Vec<(f64, f64)> = Vec::new();
    let mut chart_bound: Vec<(f64, f64)> = Vec::new();
    let joint_mode = args.joint;

    if joint_mode {
        let schedule = Schedule::new(
            parse_real(&require(args.c.clone(), "c")?, bits, "c")?,
            parse_real(&require(args.p.clone(), "p")?, bits, "p")?,
            parse_real(&require(args.beta.clone(), "beta")?, bits, "beta")?,
        )?;
        let n_max = require(args.n_max, "N-max")?;
        let trace = regimes::joint_convergence_run(
            &params,
            &schedule,
            n_max,
            &half_width,
            args.grid_points,
            args.budget,
            &prec,
        )?;
        for row in &trace.rows {
            let _ = writeln!(
                csv,
                "{},{},{},{},{},{},{},{}",
                row.n_trunc,
                row.n_osc,
                g17(&row.ratio),
                g17_opt(&row.sup_err_e1),
                g17_opt(&row.bound_e1),
                g17(&row.tail_e2),
                g17_opt(&row.total_bound),
                row.admissible
            );
            if let (Some(sup), Some(total)) = (&row.sup_err_e1, &row.total_bound) {
                chart_measured.push((row.n_trunc as f64, sup.to_f64().log10()));
                chart_bound.push((row.n_trunc as f64, total.to_f64().log10()));
            }
        }
    } else {
        let n_trunc = require(args.n_trunc, "N")?;
        let n_list = parse_u64_list(&require(args.n_list.clone(), "n-list")?, "n-list")?;
        if n_list.is_empty() {
            return Err(CliError::Usage("--n-list must be non-empty".into()));
        }
        let sups = regimes::iterated_limit_check(
            &params,
            n_trunc,
            &half_width,
            &n_list,
            args.grid_points,
            &prec,
        )?;
        let wb = bits + 64;
        let tail = params.truncation_tail(n_trunc, wb);
        let floor = Float::with_val(wb, 4) * &half_width / numerics::float_pi(wb);
        for (&n, sup) in n_list.iter().zip(&sups) {
            let budget = bounds::global_budget_unchecked(&params, &half_width, n_trunc, n)?;
            let admissible = Float::with_val(wb, n) >= floor.clone().max(&budget.k_max);
            let wall: Float =
                Float::with_val(wb, params.a()) * Float::with_val(wb, params.b()).pow(3u32);
            let ratio = wall.pow(n_trunc) / Float::with_val(wb, n);
            let total = budget.bound.clone() + &tail;
            let _ = writeln!(
                csv,
                "{},{},{},{},{},{},{},{}",
                n_trunc,
                n,
                g17(&ratio),
                g17(sup),
                g17(&budget.bound),
                g17(&tail),
                g17(&total),
                admissible
            );
            chart_measured.push(((n as f64).log10(), sup.to_f64().log10()));
            chart_bound.push(((n as f64).log10(), budget.bound.to_f64().log10()));
        }
    }

    write_output(&args.out, &csv)?;
    write_sidecar(&args.out, "sweep", echo, &prec)?;
    if let Some(svg_path) = &args.svg {
        let (title, x_label) = if joint_mode {
            ("joint-limit sweep", "N")
        } else {
            ("fixed-N refinement", "log10 n")
        };
        let chart = svg::line_chart(
            title,
            x_label,
            "log10 error",
            &[
                svg::Series {
                    name: "measured sup error",
                    dashed: false,
                    points: chart_measured,
                },
                svg::Series {
                    name: "analytic bound",
                    dashed: true,
                    points: chart_bound,
                },
            ],
        );
        write_output(svg_path, &chart)?;
    }
    Ok(())
}

const PHASE_HEADER: &str = "beta,N,n,R_N,log10_error_or_bound,regime,measured";

fn cmd_phase(args: PhaseArgs, echo: &[String]) -> CliResult<()> {
    let prec = resolve_prec(&args.common)?;
    let bits = prec.mantissa_bits();
    let params = parse_params(args.a.clone(), args.b.clone(), &args.common, bits)?;
    let half_width = parse_real(&require(args.half_width.clone(), "M")?, bits, "M")?;

    let wb = bits + 64;
    let wall: Float = Float::with_val(wb, params.a()) * Float::with_val(wb, params.b()).pow(3u32);
    let betas: Vec<Float> = match &args.beta_grid {
        Some(text) => text
            .split(',')
            .map(|s| parse_real(s, bits, "beta-grid"))
            .collect::<CliResult<Vec<_>>>()?,
        None => [
            wall.clone() / 3u32,
            wall.clone() * 2u32 / 3u32,
            wall.clone(),
            wall.clone() * 3u32 / 2u32,
            wall.clone() * 3u32,
        ]
        .to_vec(),
    };

    let cells = regimes::phase_diagram(
        &params,
        &betas,
        args.n_max,
        &half_width,
        args.grid_points,
        args.budget,
        &prec,
    )?;

    if args.format != PhaseFormat::Svg {
        let mut csv = String::new();
        csv.push_str(PHASE_HEADER);
        csv.push('\n');
        for c in &cells {
            let _ = writeln!(
                csv,
                "{},{},{},{},{},{},{}",
                g17(&c.beta),
                c.n_trunc,
                c.n_osc.map(|n| n.to_string()).unwrap_or_default(),
                g17(&c.ratio),
                g17_opt(&c.log10_error_or_bound),
                c.regime,
                c.measured
            );
        }
        write_output(&format!("{}.csv", args.out), &csv)?;
    }
    if args.format != PhaseFormat::Csv {
        let subtitle = format!("(a = {}, b = {})", params.a().to_f64(), params.b().to_f64());
        let map = svg::phase_map(&cells, wall.to_f64(), &subtitle);
        write_output(&format!("{}.svg", args.out), &map)?;
    }
    write_sidecar(&args.out, "phase", echo, &prec)?;
    Ok(())
}
