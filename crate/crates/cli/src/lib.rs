//! Command-line surface for the q-damped oscillator toolkit.
//!
//! Every subcommand is a pure function of its flags: the same invocation
//! always produces the same bytes. CSV goes to `--output` (or stdout);
//! summaries go to stderr unless the command's main product is text.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use qdamp_core::degenerate::degenerate_basis;
use qdamp_core::modulation::{modulate, self_similar_windows};
use qdamp_core::oscillator::{
    build_basis, characteristic_roots, q_wronskian, residual, sampled_residual,
    wronskian_closed_form, CRITICAL_TOL,
};
use qdamp_core::output::{linspace, push_row};
use qdamp_core::riccati::riccati_samples;
use qdamp_core::special::eq_zeros;
use qdamp_core::{
    ModulationSpec, OscillatorSpec, QError, QParam, QSeries, Regime, DEFAULT_ORDER,
    DEFAULT_TAIL_TOL,
};

/// Exit status for a check that ran but did not hold.
pub const EXIT_VERIFY_FAILED: i32 = 1;
/// Exit status for invalid parameters or evaluation outside a domain.
pub const EXIT_DOMAIN: i32 = 2;
/// Exit status when a truncated series is too short for the request.
pub const EXIT_TAIL_GUARD: i32 = 3;

/// Threshold used by `verify` for every residual it reports.
pub const VERIFY_TOL: f64 = 1e-8;

#[derive(Debug, Parser)]
#[command(
    name = "qdamp",
    version,
    about = "q-damped harmonic oscillator: roots, solutions and checks as CSV"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Characteristic roots and damping regime
    Roots(CommonArgs),
    /// Sample A x1 + B x2 on [t0, t1] as CSV
    Solve(CommonArgs),
    /// Report residuals, q-Wronskian and Riccati checks
    Verify(CommonArgs),
    /// Positive zeros of e_q(-omega t)
    Zeros {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, default_value_t = 5)]
        count: usize,
    },
    /// Solutions of (D_q + omega)^n x = 0 sampled as CSV
    Degenerate {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, default_value_t = 3)]
        n: usize,
    },
    /// q-Riccati transform y = D_q x / x and its residual as CSV
    Riccati {
        #[command(flatten)]
        common: CommonArgs,
        /// Points closer than this to a zero of x (at t or qt) are skipped
        #[arg(long, default_value_t = 1e-2)]
        exclusion: f64,
    },
    /// Self-similar windows (0, s] of the (modulated) solution
    Windows {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, value_delimiter = ',', default_values_t = vec![0.5, 0.05])]
        scales: Vec<f64>,
        #[arg(long, default_value_t = 1000)]
        points: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModulationArg {
    None,
    Qperiodic,
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    #[arg(long, default_value_t = 2.0)]
    pub q: f64,
    #[arg(long = "Gamma", default_value_t = 0.0)]
    pub gamma: f64,
    #[arg(long, default_value_t = 1.0)]
    pub omega: f64,
    #[arg(long = "A", default_value_t = 1.0, allow_negative_numbers = true)]
    pub a: f64,
    #[arg(long = "A-im", default_value_t = 0.0, allow_negative_numbers = true)]
    pub a_im: f64,
    #[arg(long = "B", default_value_t = 1.0, allow_negative_numbers = true)]
    pub b: f64,
    #[arg(long = "B-im", default_value_t = 0.0, allow_negative_numbers = true)]
    pub b_im: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub t0: f64,
    #[arg(long, default_value_t = 10.0, allow_negative_numbers = true)]
    pub t1: f64,
    /// Number of samples on [t0, t1], endpoints included
    #[arg(long, default_value_t = 1000)]
    pub steps: usize,
    /// Truncation order of the power series
    #[arg(long, default_value_t = DEFAULT_ORDER)]
    pub order: usize,
    #[arg(long, value_enum, default_value_t = ModulationArg::None)]
    pub modulation: ModulationArg,
    /// CSV destination; stdout when omitted
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommandKind {
    Roots,
    Solve,
    Verify,
    Zeros,
    Degenerate,
    Riccati,
    Windows,
}

/// Validated parameters of one invocation.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: CommandKind,
    pub spec: OscillatorSpec,
    pub a: Complex64,
    pub b: Complex64,
    pub t0: f64,
    pub t1: f64,
    pub steps: usize,
    pub order: usize,
    pub modulation: Option<ModulationSpec>,
    pub output: Option<PathBuf>,
    pub count: usize,
    pub n: usize,
    pub exclusion: f64,
    pub scales: Vec<f64>,
    pub points: usize,
}

#[derive(Debug)]
pub enum CliError {
    Q(QError),
    Verify(String),
    Io(std::io::Error),
}

impl From<QError> for CliError {
    fn from(e: QError) -> Self {
        CliError::Q(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Q(QError::TailGuard { .. }) => EXIT_TAIL_GUARD,
            CliError::Q(_) => EXIT_DOMAIN,
            CliError::Verify(_) | CliError::Io(_) => EXIT_VERIFY_FAILED,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Q(e) => write!(f, "{e}"),
            CliError::Verify(msg) => write!(f, "verification failed: {msg}"),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

type CliResult<T> = Result<T, CliError>;

impl RunConfig {
    pub fn from_cli(cli: Cli) -> CliResult<Self> {
        let (command, common, count, n, exclusion, scales, points) = match cli.command {
            Command::Roots(c) => (CommandKind::Roots, c, 5, 3, 1e-2, vec![0.5, 0.05], 1000),
            Command::Solve(c) => (CommandKind::Solve, c, 5, 3, 1e-2, vec![0.5, 0.05], 1000),
            Command::Verify(c) => (CommandKind::Verify, c, 5, 3, 1e-2, vec![0.5, 0.05], 1000),
            Command::Zeros { common, count } => {
                (CommandKind::Zeros, common, count, 3, 1e-2, vec![], 1000)
            }
            Command::Degenerate { common, n } => {
                (CommandKind::Degenerate, common, 5, n, 1e-2, vec![], 1000)
            }
            Command::Riccati { common, exclusion } => {
                (CommandKind::Riccati, common, 5, 3, exclusion, vec![], 1000)
            }
            Command::Windows {
                common,
                scales,
                points,
            } => (CommandKind::Windows, common, 5, 3, 1e-2, scales, points),
        };
        let q = QParam::new(common.q)?;
        let spec = OscillatorSpec::new(common.gamma, common.omega, q)?;
        if !(common.t0 < common.t1) {
            return Err(QError::InvalidParameter(format!(
                "need t0 < t1 (got t0={}, t1={})",
                common.t0, common.t1
            ))
            .into());
        }
        if common.steps < 2 {
            return Err(QError::InvalidParameter("need steps >= 2".into()).into());
        }
        if common.order < 2 {
            return Err(QError::InvalidParameter("need order >= 2".into()).into());
        }
        let modulation = match common.modulation {
            ModulationArg::None => None,
            ModulationArg::Qperiodic => Some(ModulationSpec::qperiodic(1.0, q)),
        };
        Ok(RunConfig {
            command,
            spec,
            a: Complex64::new(common.a, common.a_im),
            b: Complex64::new(common.b, common.b_im),
            t0: common.t0,
            t1: common.t1,
            steps: common.steps,
            order: common.order,
            modulation,
            output: common.output,
            count,
            n,
            exclusion,
            scales,
            points,
        })
    }

    fn grid(&self) -> Vec<f64> {
        let g = linspace(self.t0, self.t1, self.steps);
        if self.modulation.is_some() {
            g.into_iter().filter(|&t| t > 0.0).collect()
        } else {
            g
        }
    }

    fn positive_grid(&self) -> Vec<f64> {
        linspace(self.t0, self.t1, self.steps)
            .into_iter()
            .filter(|&t| t > 0.0)
            .collect()
    }
}

/// Parses `args`, runs the command and returns the process exit status.
pub fn run_from_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_DOMAIN } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match RunConfig::from_cli(cli).and_then(|cfg| run(&cfg, out, err)) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

pub fn run(cfg: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> CliResult<()> {
    match cfg.command {
        CommandKind::Roots => {
            out.write_all(roots_report(&cfg.spec).as_bytes())?;
            Ok(())
        }
        CommandKind::Verify => {
            let (report, failure) = verify_report(cfg)?;
            out.write_all(report.as_bytes())?;
            match failure {
                Some(msg) => Err(CliError::Verify(msg)),
                None => Ok(()),
            }
        }
        CommandKind::Solve => emit(cfg, &solve_csv(cfg)?, out, err),
        CommandKind::Zeros => emit(cfg, &zeros_csv(cfg)?, out, err),
        CommandKind::Degenerate => {
            let (csv, summary) = degenerate_csv(cfg)?;
            err.write_all(summary.as_bytes())?;
            emit(cfg, &csv, out, err)
        }
        CommandKind::Riccati => emit(cfg, &riccati_csv(cfg)?, out, err),
        CommandKind::Windows => emit(cfg, &windows_csv(cfg)?, out, err),
    }
}

fn emit(cfg: &RunConfig, csv: &str, out: &mut dyn Write, err: &mut dyn Write) -> CliResult<()> {
    match &cfg.output {
        Some(path) => {
            fs::write(path, csv)?;
            writeln!(
                err,
                "wrote {} ({} data rows)",
                path.display(),
                csv.lines().count().saturating_sub(1)
            )?;
        }
        None => out.write_all(csv.as_bytes())?,
    }
    Ok(())
}

fn fmt_complex(z: Complex64) -> String {
    // drop the sign of negative zero
    let z = z + Complex64::new(0.0, 0.0);
    if z.im == 0.0 {
        format!("{}", z.re)
    } else if z.im < 0.0 {
        format!("{}-{}i", z.re, -z.im)
    } else {
        format!("{}+{}i", z.re, z.im)
    }
}

pub fn roots_report(spec: &OscillatorSpec) -> String {
    let r = characteristic_roots(spec, CRITICAL_TOL);
    match r.regime {
        Regime::Critical => format!(
            "lambda = {} (double), regime=critical\n",
            fmt_complex(r.lambda1)
        ),
        Regime::Under => format!(
            "lambda1 = {}, lambda2 = {}, regime=under, Omega={}\n",
            fmt_complex(r.lambda1),
            fmt_complex(r.lambda2),
            r.big_omega.unwrap_or(0.0)
        ),
        Regime::Over => format!(
            "lambda1 = {}, lambda2 = {}, regime=over\n",
            fmt_complex(r.lambda1),
            fmt_complex(r.lambda2)
        ),
    }
}

fn combined_solution(cfg: &RunConfig) -> CliResult<QSeries> {
    Ok(build_basis(&cfg.spec, cfg.order)?
        .with_coefficients(cfg.a, cfg.b)
        .combined())
}

/// Rows `[t, value...]` with a `x` / `x_re,x_im` header chosen from the data.
fn value_table(lead: &[&str], rows: &[(Vec<f64>, Complex64)]) -> String {
    let real = rows.iter().all(|(_, v)| v.im == 0.0);
    let mut out = lead.join(",");
    out.push_str(if real { ",x\n" } else { ",x_re,x_im\n" });
    for (cells, v) in rows {
        let mut row = cells.clone();
        row.push(v.re);
        if !real {
            row.push(v.im);
        }
        push_row(&mut out, &row);
    }
    out
}

pub fn solve_csv(cfg: &RunConfig) -> CliResult<String> {
    let x = combined_solution(cfg)?;
    let eval: Box<dyn Fn(f64) -> qdamp_core::Result<Complex64>> = match cfg.modulation {
        Some(m) => Box::new(modulate(x, m)),
        None => Box::new(move |t| x.eval(t, DEFAULT_TAIL_TOL)),
    };
    let rows = cfg
        .grid()
        .into_iter()
        .map(|t| Ok((vec![t], eval(t)?)))
        .collect::<CliResult<Vec<_>>>()?;
    Ok(value_table(&["t"], &rows))
}

pub fn zeros_csv(cfg: &RunConfig) -> CliResult<String> {
    let zeros = eq_zeros(cfg.spec.q, cfg.spec.omega, cfg.count)?;
    let mut out = String::from("k,t\n");
    for (k, z) in zeros.iter().enumerate() {
        writeln!(out, "{k},{z:?}").unwrap();
    }
    Ok(out)
}

pub fn degenerate_csv(cfg: &RunConfig) -> CliResult<(String, String)> {
    let fam = degenerate_basis(cfg.spec.omega, cfg.n, cfg.spec.q, cfg.order)?;
    let mut summary = String::new();
    for (k, d) in fam.annihilation_defects()?.iter().enumerate() {
        writeln!(
            summary,
            "annihilation (D_q + {})^{} x{k}: {d:e}",
            cfg.spec.omega, cfg.n
        )
        .unwrap();
    }
    let det = fam.wronskian_det_at_origin();
    writeln!(
        summary,
        "generalized q-Wronskian at t=0: {}",
        fmt_complex(det)
    )
    .unwrap();

    let mut out = String::from("t");
    for k in 0..cfg.n {
        write!(out, ",x{k}").unwrap();
    }
    out.push('\n');
    for t in linspace(cfg.t0, cfg.t1, cfg.steps) {
        let mut row = vec![t];
        for m in &fam.members {
            row.push(m.eval(t, DEFAULT_TAIL_TOL)?.re);
        }
        push_row(&mut out, &row);
    }
    Ok((out, summary))
}

pub fn riccati_csv(cfg: &RunConfig) -> CliResult<String> {
    let x = combined_solution(cfg)?;
    let samples = riccati_samples(&cfg.spec, &x, &cfg.positive_grid(), cfg.exclusion)?;
    let real = samples
        .iter()
        .all(|s| s.y.im == 0.0 && s.residual.im == 0.0);
    let mut out = String::from(if real {
        "t,y,residual\n"
    } else {
        "t,y_re,y_im,residual_re,residual_im\n"
    });
    for s in &samples {
        if real {
            push_row(&mut out, &[s.t, s.y.re, s.residual.re]);
        } else {
            push_row(
                &mut out,
                &[s.t, s.y.re, s.y.im, s.residual.re, s.residual.im],
            );
        }
    }
    Ok(out)
}

pub fn windows_csv(cfg: &RunConfig) -> CliResult<String> {
    let x = combined_solution(cfg)?;
    let windows = match cfg.modulation {
        Some(m) => self_similar_windows(modulate(x, m), &cfg.scales, cfg.points)?,
        None => self_similar_windows(|t| x.eval(t, DEFAULT_TAIL_TOL), &cfg.scales, cfg.points)?,
    };
    let rows: Vec<(Vec<f64>, Complex64)> = cfg
        .scales
        .iter()
        .zip(&windows)
        .flat_map(|(&s, w)| w.t.iter().zip(&w.x).map(move |(&t, &v)| (vec![s, t], v)))
        .collect();
    Ok(value_table(&["scale", "t"], &rows))
}

/// Text report plus the first violated check, if any.
pub fn verify_report(cfg: &RunConfig) -> CliResult<(String, Option<String>)> {
    let spec = &cfg.spec;
    let basis = build_basis(spec, cfg.order)?.with_coefficients(cfg.a, cfg.b);
    let mut report = String::new();
    let mut failure: Option<String> = None;
    let check = |name: &str, value: f64, failure: &mut Option<String>| {
        if !(value <= VERIFY_TOL) && failure.is_none() {
            *failure = Some(format!("{name} = {value:e} exceeds {VERIFY_TOL:e}"));
        }
    };

    writeln!(
        report,
        "regime={} q={} Gamma={} omega={} order={}",
        basis.regime, spec.q, spec.gamma, spec.omega, cfg.order
    )
    .unwrap();

    let mut series_max = 0.0f64;
    for (label, x) in basis.labels.iter().zip([&basis.x1, &basis.x2]) {
        let r = residual(spec, x)?.max_abs() / x.max_abs().max(f64::MIN_POSITIVE);
        writeln!(report, "series residual [{label}]: {r:e}").unwrap();
        series_max = series_max.max(r);
    }
    check("series residual", series_max, &mut failure);

    // relative to the size of the individual terms
    let x = basis.combined();
    let grid = cfg.positive_grid();
    let mut sampled_max = 0.0f64;
    for &t in &grid {
        let f = |s: f64| x.eval(s, DEFAULT_TAIL_TOL);
        let r = sampled_residual(spec, f, t)?;
        let q = spec.q.value();
        let scale = 1.0
            + x.dq().dq().eval(t, DEFAULT_TAIL_TOL)?.norm()
            + spec.gamma * x.dq().eval(t, DEFAULT_TAIL_TOL)?.norm()
            + spec.omega * spec.omega * (f(t)?.norm() + f(q * t)?.norm() + f(q * q * t)?.norm());
        sampled_max = sampled_max.max(r.norm() / scale);
    }
    writeln!(
        report,
        "sampled residual (relative, {} points): {sampled_max:e}",
        grid.len()
    )
    .unwrap();
    check("sampled residual", sampled_max, &mut failure);

    let w0 = q_wronskian(&basis, 0.0)?;
    writeln!(report, "q-Wronskian W(0) = {}", fmt_complex(w0)).unwrap();
    if basis.regime == Regime::Critical {
        let radius = spec.closed_form_radius();
        let inside: Vec<f64> = grid
            .iter()
            .copied()
            .filter(|&t| t < 0.95 * radius)
            .collect();
        let mut max_diff = 0.0f64;
        let mut min_abs = f64::INFINITY;
        for &t in &inside {
            let ws = q_wronskian(&basis, t)?.re;
            let wc = wronskian_closed_form(spec, t)?;
            max_diff = max_diff.max((ws - wc).abs() / wc.abs());
            min_abs = min_abs.min(ws.abs());
        }
        writeln!(
            report,
            "q-Wronskian series vs -omega e_q(-omega t)^2 on {} points below 0.95 x radius {radius}: max rel diff {max_diff:e}, min |W| {min_abs:e}",
            inside.len()
        )
        .unwrap();
        check("Wronskian closed-form difference", max_diff, &mut failure);
    } else {
        let t = cfg.t1.min(1.0);
        writeln!(
            report,
            "q-Wronskian W({t}) = {}",
            fmt_complex(q_wronskian(&basis, t)?)
        )
        .unwrap();
    }

    let samples = riccati_samples(spec, &x, &grid, 1e-2)?;
    let worst = samples
        .iter()
        .map(|s| s.relative_residual())
        .fold(0.0, f64::max);
    writeln!(
        report,
        "riccati residual (relative): max {worst:e} over {} of {} points",
        samples.len(),
        grid.len()
    )
    .unwrap();
    check("riccati residual", worst, &mut failure);

    writeln!(
        report,
        "status: {}",
        if failure.is_none() { "ok" } else { "FAILED" }
    )
    .unwrap();
    Ok((report, failure))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run_from_args(
            std::iter::once("qdamp").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn roots_lines() {
        let (code, out, _) = run_args(&["roots", "--q", "2", "--Gamma", "2", "--omega", "1"]);
        assert_eq!(code, 0);
        assert_eq!(out, "lambda = -1 (double), regime=critical\n");
        let (_, out, _) = run_args(&["roots", "--Gamma", "5", "--omega", "2"]);
        assert_eq!(out, "lambda1 = -1, lambda2 = -4, regime=over\n");
        let (_, out, _) = run_args(&["roots", "--Gamma", "0", "--omega", "1"]);
        assert_eq!(
            out,
            "lambda1 = 0+1i, lambda2 = 0-1i, regime=under, Omega=1\n"
        );
    }

    #[test]
    fn invalid_config_exits_2() {
        for args in [
            &["solve", "--q", "1"][..],
            &["solve", "--t0", "1", "--t1", "1"],
            &["solve", "--steps", "1"],
            &["solve", "--order", "1"],
            &["solve", "--omega", "-1"],
            &["solve", "--bogus"],
        ] {
            let (code, _, err) = run_args(args);
            assert_eq!(code, EXIT_DOMAIN, "{args:?}");
            assert!(!err.is_empty());
        }
    }

    #[test]
    fn short_series_exits_3() {
        let (code, out, err) = run_args(&[
            "solve", "--q", "1.1", "--Gamma", "1", "--t1", "50", "--order", "10",
        ]);
        assert_eq!(code, EXIT_TAIL_GUARD);
        assert!(out.is_empty());
        assert!(err.contains("tail guard"), "{err}");
    }

    #[test]
    fn complex_coefficients_switch_header() {
        let (_, out, _) = run_args(&["solve", "--Gamma", "1", "--B-im", "1", "--steps", "2"]);
        assert!(out.starts_with("t,x_re,x_im\n"));
        let (_, out, _) = run_args(&["solve", "--Gamma", "1", "--steps", "2"]);
        assert!(out.starts_with("t,x\n"));
    }

    #[test]
    fn modulated_grid_skips_origin() {
        let (code, out, _) = run_args(&[
            "solve",
            "--modulation",
            "qperiodic",
            "--steps",
            "5",
            "--t1",
            "4",
        ]);
        assert_eq!(code, 0);
        let first = out.lines().nth(1).unwrap();
        assert!(first.starts_with("1.0,"), "{first}");
        assert_eq!(out.lines().count(), 5);
    }

    #[test]
    fn zeros_are_powers_of_q() {
        let (_, out, _) = run_args(&["zeros", "--q", "3", "--omega", "1", "--count", "3"]);
        assert_eq!(out, "k,t\n0,1.5\n1,4.5\n2,13.5\n");
    }

    #[test]
    fn degenerate_reports_norms_on_stderr() {
        let (code, out, err) = run_args(&["degenerate", "--n", "2", "--steps", "2", "--t1", "1"]);
        assert_eq!(code, 0);
        assert!(out.starts_with("t,x0,x1\n"));
        assert_eq!(
            err.lines()
                .filter(|l| l.starts_with("annihilation"))
                .count(),
            2
        );
        assert!(err.contains("at t=0: -1"), "{err}");
    }

    #[test]
    fn verify_passes_for_critical_defaults() {
        let (code, out, _) = run_args(&["verify", "--q", "2", "--Gamma", "2", "--omega", "1"]);
        assert_eq!(code, 0, "{out}");
        assert!(out.contains("W(0) = -1"));
        assert!(out.ends_with("status: ok\n"));
    }

    #[test]
    fn windows_default_scales() {
        let (_, out, _) = run_args(&["windows", "--points", "3"]);
        let scales: Vec<&str> = out
            .lines()
            .skip(1)
            .map(|l| l.split(',').next().unwrap())
            .collect();
        assert_eq!(scales, ["0.5", "0.5", "0.5", "0.05", "0.05", "0.05"]);
    }
}
