mod output;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use backlund_core::backlund::{track_zeta, WindowReport};
use backlund_core::contour::{trace_arg_along, window_side_path, ArgSample};
use backlund_core::{
    backlund_l_path, count_zeros_to, rect_boundary, select_window_params, theta_asymptotic,
    theta_exact, track_arg_along, verify_range_with_step, winding_number, xi, zeta, Error,
    EvalParams, WindowSpec,
};
use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

const EX_USAGE: u8 = 64;
const MAX_DEMO_POINTS: usize = 6;

#[derive(Debug, Parser)]
#[command(
    name = "backlund",
    version,
    about = "Zeta zero counting and height-window verification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ThetaMode {
    Exact,
    Asymptotic,
    Both,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum DumpPath {
    /// Joining path between the two critical-line end points
    C2,
    /// L-path at T + delta
    C11,
    /// L-path at T - delta
    C12,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate zeta(sigma + it)
    #[command(allow_negative_numbers = true)]
    Zeta {
        #[arg(long)]
        sigma: f64,
        #[arg(long)]
        t: f64,
    },
    /// Riemann–Siegel theta, exact and/or by its five-term expansion
    #[command(allow_negative_numbers = true)]
    Theta {
        #[arg(long)]
        t: f64,
        #[arg(long, value_enum, default_value = "both")]
        mode: ThetaMode,
    },
    /// Evaluate the completed function xi(sigma + it)
    #[command(allow_negative_numbers = true)]
    Xi {
        #[arg(long)]
        sigma: f64,
        #[arg(long)]
        t: f64,
    },
    /// Number of zeros with 0 < Im s < t
    #[command(allow_negative_numbers = true)]
    Count {
        #[arg(long)]
        t: f64,
        #[arg(long, default_value_t = 0.1)]
        epsilon: f64,
    },
    /// Decompose N(t + delta) - N(t - delta); without --delta the window is
    /// chosen from the candidate ladder
    #[command(allow_negative_numbers = true)]
    Window {
        #[arg(long)]
        t: f64,
        #[arg(long)]
        delta: Option<f64>,
        #[arg(long)]
        epsilon: Option<f64>,
    },
    /// Locate critical-line zeros in a range and verify every window
    #[command(allow_negative_numbers = true)]
    Verify {
        #[arg(long = "t-min")]
        t_min: f64,
        #[arg(long = "t-max")]
        t_max: f64,
        #[arg(long, default_value_t = 0.1)]
        step: f64,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Winding number of a random rational function around a square
    #[command(name = "winding-demo")]
    WindingDemo {
        #[arg(long)]
        zeros: usize,
        #[arg(long)]
        poles: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Write the tracked samples of a window contour as CSV
    #[command(name = "dump-contour", allow_negative_numbers = true)]
    DumpContour {
        #[arg(long)]
        t: f64,
        #[arg(long)]
        delta: f64,
        #[arg(long)]
        epsilon: f64,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value = "c2")]
        path: DumpPath,
    },
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Numeric(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Domain(..) | Error::InvalidParams(_) | Error::InvalidPath(_) => {
                Failure::Usage(e.to_string())
            }
            e => Failure::Numeric(e),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

/// Successful outcomes; `Unverified` maps to exit code 2.
enum Outcome {
    Ok,
    Unverified,
}

fn params_from_env() -> Result<EvalParams, Failure> {
    match std::env::var("BACKLUND_EPS") {
        Ok(v) => {
            let eps: f64 = v
                .trim()
                .parse()
                .map_err(|_| Failure::Usage(format!("BACKLUND_EPS is not a number: {v:?}")))?;
            Ok(EvalParams::with_target_eps(eps)?)
        }
        Err(_) => Ok(EvalParams::default()),
    }
}

fn finite(name: &str, x: f64) -> Result<f64, Failure> {
    if x.is_finite() {
        Ok(x)
    } else {
        Err(Failure::Usage(format!("--{name} must be finite")))
    }
}

fn emit<T: Serialize>(value: &T) -> Result<(), Failure> {
    let mut out = io::stdout().lock();
    out.write_all(output::to_json(value)?.as_bytes())?;
    Ok(())
}

#[derive(Serialize)]
struct PointValue {
    sigma: f64,
    t: f64,
    re: f64,
    im: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    est_abs_err: Option<f64>,
}

#[derive(Serialize)]
struct CountReport {
    height: f64,
    epsilon: f64,
    count: i64,
}

#[derive(Serialize)]
struct UnverifiableReport {
    t_center: f64,
    unverifiable: bool,
    reason: String,
}

#[derive(Serialize)]
struct Point {
    re: f64,
    im: f64,
}

#[derive(Serialize)]
struct WindingReport {
    seed: u64,
    rectangle: [f64; 4],
    zeros: Vec<Point>,
    poles: Vec<Point>,
    arg_change: f64,
    winding_number: i64,
    expected: i64,
}

fn run(cli: Cli) -> Result<Outcome, Failure> {
    let p = params_from_env()?;
    match cli.command {
        Command::Zeta { sigma, t } => {
            let s = Complex64::new(finite("sigma", sigma)?, finite("t", t)?);
            let z = zeta(s, &p)?;
            emit(&PointValue {
                sigma,
                t,
                re: z.value.re,
                im: z.value.im,
                est_abs_err: Some(z.est_abs_err),
            })?;
        }
        Command::Xi { sigma, t } => {
            let s = Complex64::new(finite("sigma", sigma)?, finite("t", t)?);
            let v = xi(s, &p)?;
            emit(&PointValue {
                sigma,
                t,
                re: v.re,
                im: v.im,
                est_abs_err: None,
            })?;
        }
        Command::Theta { t, mode } => {
            let t = finite("t", t)?;
            let mut out = io::stdout().lock();
            match mode {
                ThetaMode::Exact => writeln!(out, "exact {}", output::fmt_sig15(theta_exact(t)?))?,
                ThetaMode::Asymptotic => writeln!(
                    out,
                    "asymptotic {}",
                    output::fmt_sig15(theta_asymptotic(t)?)
                )?,
                ThetaMode::Both => {
                    let e = theta_exact(t)?;
                    let a = theta_asymptotic(t)?;
                    writeln!(out, "exact {}", output::fmt_sig15(e))?;
                    writeln!(out, "asymptotic {}", output::fmt_sig15(a))?;
                    writeln!(out, "difference {}", output::fmt_sig15(a - e))?;
                }
            }
        }
        Command::Count { t, epsilon } => {
            let height = finite("t", t)?;
            let epsilon = finite("epsilon", epsilon)?;
            let count = count_zeros_to(height, epsilon, &p)?;
            emit(&CountReport {
                height,
                epsilon,
                count,
            })?;
        }
        Command::Window { t, delta, epsilon } => {
            let t = finite("t", t)?;
            let spec = match delta {
                Some(d) => WindowSpec::new(
                    t,
                    finite("delta", d)?,
                    finite("epsilon", epsilon.unwrap_or(0.1))?,
                )?,
                None => match select_window_params(t, &p) {
                    Ok(mut w) => {
                        if let Some(e) = epsilon {
                            w = WindowSpec::new(t, w.delta, finite("epsilon", e)?)?;
                        }
                        w
                    }
                    Err(e @ Error::LadderExhausted { .. }) => {
                        emit(&UnverifiableReport {
                            t_center: t,
                            unverifiable: true,
                            reason: e.to_string(),
                        })?;
                        return Ok(Outcome::Unverified);
                    }
                    Err(e) => return Err(e.into()),
                },
            };
            let report: WindowReport = backlund_core::window_count(&spec, &p)?;
            emit(&report)?;
        }
        Command::Verify {
            t_min,
            t_max,
            step,
            format,
        } => {
            let report = verify_range_with_step(
                finite("t-min", t_min)?,
                finite("t-max", t_max)?,
                finite("step", step)?,
                &p,
            )?;
            match format {
                Format::Json => emit(&report)?,
                Format::Text => write_verify_text(&report)?,
            }
            if !report.unverifiable.is_empty() {
                return Ok(Outcome::Unverified);
            }
        }
        Command::WindingDemo { zeros, poles, seed } => {
            if zeros > MAX_DEMO_POINTS || poles > MAX_DEMO_POINTS {
                return Err(Failure::Usage(format!(
                    "--zeros and --poles are limited to {MAX_DEMO_POINTS}"
                )));
            }
            let report = winding_demo(zeros, poles, seed, &p)?;
            emit(&report)?;
            if report.winding_number != report.expected {
                return Err(Failure::Numeric(Error::Quantization {
                    value: report.arg_change / (2.0 * std::f64::consts::PI),
                }));
            }
        }
        Command::DumpContour {
            t,
            delta,
            epsilon,
            out,
            path,
        } => {
            let w = WindowSpec::new(
                finite("t", t)?,
                finite("delta", delta)?,
                finite("epsilon", epsilon)?,
            )?;
            let contour = match path {
                DumpPath::C2 => window_side_path(w.epsilon, w.lower(), w.upper())?,
                DumpPath::C11 => backlund_l_path(w.epsilon, w.upper())?,
                DumpPath::C12 => backlund_l_path(w.epsilon, w.lower())?,
            };
            // pole guard and zero checks first, with the same evaluator as the counts
            track_zeta(&contour, &p)?;
            let f = |s: Complex64| zeta(s, &p).map(|z| z.value);
            let (_, samples): (_, Vec<ArgSample>) = trace_arg_along(&contour, &f, &p)?;
            let file = BufWriter::new(File::create(&out)?);
            output::write_samples_csv(file, &samples)?;
        }
    }
    Ok(Outcome::Ok)
}

fn write_verify_text(r: &backlund_core::RangeReport) -> Result<(), Failure> {
    let mut out = io::stdout().lock();
    let f = output::fmt_sig15;
    writeln!(out, "range {} {}", f(r.t_min), f(r.t_max))?;
    for z in &r.zeros {
        writeln!(
            out,
            "zero {} bracket [{}, {}] verified {}",
            f(z.refined_t),
            f(z.bracket_lo),
            f(z.bracket_hi),
            z.window_verified
        )?;
    }
    for w in &r.windows {
        writeln!(
            out,
            "window {} delta {} count {} theta {} c2 {} sign_changes {}/{} bound {}",
            f(w.t_center),
            f(w.delta_used),
            w.window_count,
            f(w.theta_term),
            f(w.c2_term),
            w.sign_changes_c11,
            w.sign_changes_c12,
            w.bound_satisfied
        )?;
    }
    for u in &r.unverifiable {
        writeln!(
            out,
            "unverifiable [{}, {}] {}",
            f(u.t_lo),
            f(u.t_hi),
            u.reason
        )?;
    }
    let s = &r.summary;
    writeln!(
        out,
        "summary zeros {} windows {} verified {} unverifiable {} discrepancies {} bound_violations {}",
        s.total_zeros,
        s.total_windows,
        s.verified_windows,
        s.unverifiable_windows,
        s.discrepancies.len(),
        s.bound_violations.len()
    )?;
    Ok(())
}

fn winding_demo(
    zeros: usize,
    poles: usize,
    seed: u64,
    p: &EvalParams,
) -> Result<WindingReport, Failure> {
    let rect = rect_boundary(-1.0, 1.0, -1.0, 1.0)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut draw = |n: usize| -> Vec<Complex64> {
        (0..n)
            .map(|_| Complex64::new(rng.gen_range(-0.75..0.75), rng.gen_range(-0.75..0.75)))
            .collect()
    };
    let zs = draw(zeros);
    let ps = draw(poles);
    let f = |s: Complex64| -> backlund_core::Result<Complex64> {
        let num: Complex64 = zs.iter().map(|a| s - a).product();
        let den: Complex64 = ps.iter().map(|b| s - b).product();
        Ok(num / den)
    };
    let arg_change = track_arg_along(&rect, &f, p)?.arg_change;
    let winding = winding_number(&rect, &f, p)?;
    let pts = |v: &[Complex64]| v.iter().map(|z| Point { re: z.re, im: z.im }).collect();
    Ok(WindingReport {
        seed,
        rectangle: [-1.0, 1.0, -1.0, 1.0],
        zeros: pts(&zs),
        poles: pts(&ps),
        arg_change,
        winding_number: winding,
        expected: zeros as i64 - poles as i64,
    })
}

#[derive(Serialize)]
struct ErrorReport {
    error: &'static str,
    message: String,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EX_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Unverified) => ExitCode::from(2),
        Err(Failure::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(EX_USAGE)
        }
        Err(Failure::Numeric(e)) => {
            let kind = match e {
                Error::ZeroOnPath { .. } => "zero_on_path",
                Error::RefinementBudget { .. } => "refinement_budget",
                Error::Quantization { .. } => "quantization",
                Error::NonConvergence { .. } => "non_convergence",
                Error::ZetaPole(_) | Error::GammaPole(_) | Error::PoleGuard => "pole",
                Error::LadderExhausted { .. } => "ladder_exhausted",
                _ => "numeric",
            };
            let report = ErrorReport {
                error: kind,
                message: e.to_string(),
            };
            let body = serde_json::to_string(&report).unwrap_or_else(|_| e.to_string());
            eprintln!("{body}");
            ExitCode::from(1)
        }
        Err(Failure::Io(msg)) => {
            let body = serde_json::to_string(&ErrorReport {
                error: "io",
                message: msg,
            })
            .unwrap_or_default();
            eprintln!("{body}");
            ExitCode::from(1)
        }
    }
}
