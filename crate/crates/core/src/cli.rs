//! Command-line front end: argument parsing, commands and CSV output.
//!
//! Every command writes `#`-prefixed metadata lines (the first one holds the
//! fully resolved config as JSON), then a header row, then data rows. Floats
//! use Rust's shortest round-trip formatting. Column orders are listed in
//! `docs/formats.md`.

use std::fmt::Write as _;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Parser, ValueEnum};

use crate::config::{parse_config, RunConfig};
use crate::error::{Error, Result};
use crate::evolution::{
    evolve, expected_sums, rhs_consistency, verify_against_direct, EvolveOptions,
};
use crate::ladder::{ladder_checks, ladder_init, ladder_step};
use crate::moment_flow::{betas, evolve_moments, moment_rhs, nu_by_quadrature};
use crate::orthopoly::{coefficients_from_moments, mass, moments, stieltjes_procedure};
use crate::quadrature::DiscreteMeasure;
use crate::weight::GeneralizedJacobiWeight;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// Recurrence coefficients a_n, b_n, gamma_n for n = 0..=nmax
    Coeffs,
    /// Ladder node values and their identity residuals for k = 0..=n
    Ladder,
    /// Integrate the deformation system over [t0, t1]
    Evolve,
    /// Integrate the linear moment flow over [t0, t1]
    Moments,
    /// Evolve, then compare every sample with direct recomputation
    Verify,
    /// Run the invariant suite on the configured weight
    Selftest,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Coeffs => "coeffs",
            Command::Ladder => "ladder",
            Command::Evolve => "evolve",
            Command::Moments => "moments",
            Command::Verify => "verify",
            Command::Selftest => "selftest",
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "semiclassical", version, about = "Orthogonal polynomials for moving generalized Jacobi weights")]
pub struct Args {
    #[arg(value_enum)]
    pub command: Command,
    /// JSON run configuration
    #[arg(long)]
    pub config: PathBuf,
    /// Output file (default: stdout)
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    pub t0: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub t1: Option<f64>,
    /// Integrator relative tolerance
    #[arg(long)]
    pub rtol: Option<f64>,
    /// Repeat the coefficient computation with twice the quadrature points
    /// and fail with exit code 4 if the results differ by more than verify.rtol
    #[arg(long)]
    pub selfcheck: bool,
    /// Reject unknown config keys
    #[arg(long)]
    pub strict: bool,
}

/// Result of a command, mapped onto the process exit code.
#[derive(Debug, Clone, PartialEq)]
pub enum Status {
    Success,
    ConfigError(String),
    NumericalFailure(String),
    VerificationFailed(String),
}

impl Status {
    pub fn code(&self) -> i32 {
        match self {
            Status::Success => 0,
            Status::ConfigError(_) => 2,
            Status::NumericalFailure(_) => 3,
            Status::VerificationFailed(_) => 4,
        }
    }

    pub fn message(&self) -> Option<&str> {
        match self {
            Status::Success => None,
            Status::ConfigError(m) | Status::NumericalFailure(m) | Status::VerificationFailed(m) => Some(m),
        }
    }
}

/// Applies command-line overrides on top of a parsed config.
pub fn apply_overrides(cfg: &mut RunConfig, args: &Args) -> Result<()> {
    if let Some(n) = args.n {
        cfg.n = n;
    }
    if let Some(t0) = args.t0 {
        cfg.evolve.t0 = t0;
    }
    if let Some(t1) = args.t1 {
        cfg.evolve.t1 = t1;
    }
    if let Some(r) = args.rtol {
        if !(r > 0.0 && r.is_finite()) {
            return Err(Error::config("--rtol", "must be positive"));
        }
        cfg.evolve.rtol = r;
    }
    for (name, v) in [("--t0", cfg.evolve.t0), ("--t1", cfg.evolve.t1)] {
        if !v.is_finite() {
            return Err(Error::config(name, "must be finite"));
        }
    }
    cfg.strict |= args.strict;
    cfg.build_weight()?;
    Ok(())
}

/// Full CLI entry point. Returns the process exit code.
pub fn run_cli<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args = match Args::try_parse_from(argv) {
        Ok(a) => a,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(stderr, "{e}");
                return 2;
            }
            let _ = write!(stdout, "{e}");
            return 0;
        }
    };
    let fail = |stderr: &mut dyn Write, status: Status| {
        if let Some(m) = status.message() {
            let _ = writeln!(stderr, "error: {m}");
        }
        status.code()
    };
    let text = match std::fs::read_to_string(&args.config) {
        Ok(t) => t,
        Err(e) => {
            return fail(
                stderr,
                Status::ConfigError(format!("cannot read {}: {e}", args.config.display())),
            )
        }
    };
    let (mut cfg, warnings) = match parse_config(&text, args.strict) {
        Ok(r) => r,
        Err(e) => return fail(stderr, Status::ConfigError(e.to_string())),
    };
    for w in &warnings {
        let _ = writeln!(stderr, "warning: {w}");
    }
    if let Err(e) = apply_overrides(&mut cfg, &args) {
        return fail(stderr, Status::ConfigError(e.to_string()));
    }

    let mut buf = Vec::new();
    let mut status = run_command(args.command, &cfg, &mut buf);
    if status == Status::Success && args.selfcheck {
        status = selfcheck(&cfg, &mut buf);
    }
    let written = match &args.output {
        Some(path) => std::fs::write(path, &buf),
        None => stdout.write_all(&buf),
    };
    if let Err(e) = written {
        let _ = writeln!(stderr, "error: cannot write output: {e}");
        return 1;
    }
    fail(stderr, status)
}

/// Formats a float with the shortest representation that parses back to the
/// same value.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:?}")
}

fn row(out: &mut String, cells: impl IntoIterator<Item = String>) {
    let cells: Vec<String> = cells.into_iter().collect();
    out.push_str(&cells.join(","));
    out.push('\n');
}

fn indexed(prefix: &str, m: usize) -> impl Iterator<Item = String> + '_ {
    (1..=m).map(move |j| format!("{prefix}_{j}"))
}

fn floats(v: &[f64]) -> impl Iterator<Item = String> + '_ {
    v.iter().map(|&x| fmt_f64(x))
}

fn classify(err: Error, cmd: Command, t: f64) -> Status {
    match err {
        Error::Config { .. } => Status::ConfigError(err.to_string()),
        Error::EndpointCollision { last_good_t } => Status::NumericalFailure(format!(
            "EndpointCollision in `{}`, last good t = {last_good_t}: {err}",
            cmd.name()
        )),
        Error::StepCollapse { t, .. } => Status::NumericalFailure(format!(
            "StepCollapse in `{}`, last good t = {t}: {err}",
            cmd.name()
        )),
        Error::LostOrthogonality { .. } => Status::NumericalFailure(format!(
            "LostOrthogonality in `{}` at t = {t}: {err}",
            cmd.name()
        )),
        other => Status::NumericalFailure(format!("`{}` failed at t = {t}: {other}", cmd.name())),
    }
}

/// Runs one command and writes its CSV to `out`.
pub fn run_command(cmd: Command, cfg: &RunConfig, out: &mut dyn Write) -> Status {
    let mut text = String::new();
    let _ = writeln!(text, "# config: {}", cfg.to_json());
    let _ = writeln!(text, "# command: {}", cmd.name());
    let t_fail = match cmd {
        Command::Coeffs | Command::Ladder | Command::Selftest => cfg.eval_time(),
        _ => cfg.evolve.t0,
    };
    let result = (|| -> Result<Status> {
        let w = cfg.build_weight()?;
        match cmd {
            Command::Coeffs => coeffs(cfg, &w, &mut text),
            Command::Ladder => ladder(cfg, &w, &mut text),
            Command::Evolve => evolve_cmd(cfg, &w, &mut text),
            Command::Moments => moments_cmd(cfg, &w, &mut text),
            Command::Verify => verify(cfg, &w, &mut text),
            Command::Selftest => selftest(cfg, &w, &mut text),
        }
    })();
    let status = match result {
        Ok(s) => s,
        Err(e) => classify(e, cmd, t_fail),
    };
    if out.write_all(text.as_bytes()).is_err() {
        return Status::NumericalFailure("cannot write output".into());
    }
    status
}

fn coeffs(cfg: &RunConfig, w: &GeneralizedJacobiWeight, out: &mut String) -> Result<Status> {
    let t = cfg.eval_time();
    let nmax = cfg.nmax.unwrap_or(cfg.n);
    let table = stieltjes_procedure(w, t, nmax, cfg.npts)?;
    let _ = writeln!(out, "# t: {}", fmt_f64(t));
    row(out, ["n", "a_n", "b_n", "gamma_n"].map(String::from));
    for k in 0..=nmax {
        row(
            out,
            [
                k.to_string(),
                fmt_f64(table.a[k]),
                fmt_f64(table.b[k]),
                fmt_f64(table.gamma[k]),
            ],
        );
    }
    Ok(Status::Success)
}

fn ladder(cfg: &RunConfig, w: &GeneralizedJacobiWeight, out: &mut String) -> Result<Status> {
    let t = cfg.eval_time();
    let m = w.m();
    let table = stieltjes_procedure(w, t, cfg.n + 1, cfg.npts)?;
    let nodes = w.node_data(t)?;
    let _ = writeln!(out, "# t: {}", fmt_f64(t));
    let _ = writeln!(out, "# nodes: {}", floats(&nodes.x).collect::<Vec<_>>().join(" "));
    row(
        out,
        std::iter::once("n".to_string())
            .chain(indexed("theta", m))
            .chain(indexed("omega", m))
            .chain(
                [
                    "theta_sum",
                    "xtheta_gap",
                    "omega_gap",
                    "relation_residual",
                    "wronskian_dev",
                    "step_dev",
                ]
                .map(String::from),
            ),
    );
    let mut prev = None;
    for k in 0..=cfg.n {
        let lv = ladder_init(w, &table, t, k, cfg.npts)?;
        let rep = ladder_checks(w, &table, &lv, t, cfg.npts, 20, k as u64)?;
        let step_dev = match &prev {
            Some(p) => {
                let s = ladder_step(p, &nodes.x, table.a[k - 1], table.a[k], table.b[k - 1])?;
                rel_max(&s.theta, &lv.theta).max(rel_max(&s.omega, &lv.omega))
            }
            None => 0.0,
        };
        row(
            out,
            std::iter::once(k.to_string())
                .chain(floats(&lv.theta))
                .chain(floats(&lv.omega))
                .chain(floats(&[
                    rep.theta_sum,
                    rep.xtheta_gap,
                    rep.omega_gap,
                    rep.relation_residual,
                    rep.wronskian_dev.unwrap_or(0.0),
                    step_dev,
                ])),
        );
        prev = Some(lv);
    }
    Ok(Status::Success)
}

fn rel_max(a: &[f64], b: &[f64]) -> f64 {
    let scale = b.iter().fold(0.0_f64, |s, v| s.max(v.abs()));
    let diff = a.iter().zip(b).fold(0.0, |s, (x, y)| crate::nan_max(s, (x - y).abs()));
    if scale > 0.0 {
        diff / scale
    } else {
        diff
    }
}

fn evolve_options(cfg: &RunConfig) -> EvolveOptions {
    EvolveOptions {
        tol: cfg.tolerance(),
        samples: cfg.evolve.samples,
        npts: cfg.npts,
        reproject: false,
    }
}

const DRIFT_COLUMNS: [&str; 5] = [
    "drift_theta_sum",
    "drift_theta_prev_sum",
    "drift_xtheta_sum",
    "drift_xtheta_prev_sum",
    "drift_omega_sum",
];

fn evolve_cmd(cfg: &RunConfig, w: &GeneralizedJacobiWeight, out: &mut String) -> Result<Status> {
    cfg.require_span()?;
    let m = w.m();
    let rep = evolve(w, cfg.n, cfg.evolve.t0, cfg.evolve.t1, evolve_options(cfg))?;
    let _ = writeln!(
        out,
        "# steps: accepted {} rejected {} evaluations {}",
        rep.stats.accepted, rep.stats.rejected, rep.stats.evaluations
    );
    let _ = writeln!(out, "# max_drift: {}", fmt_f64(rep.drift()));
    row(
        out,
        ["t", "a", "b", "gamma"]
            .map(String::from)
            .into_iter()
            .chain(indexed("theta", m))
            .chain(indexed("theta_prev", m))
            .chain(indexed("omega", m))
            .chain(DRIFT_COLUMNS.map(String::from)),
    );
    for s in &rep.samples {
        let sums = s.conserved_sums(&w.trajectory().positions(s.t));
        let drift: Vec<f64> = sums.iter().zip(&rep.initial_sums).map(|(a, b)| a - b).collect();
        row(
            out,
            floats(&[s.t, s.a, s.b, s.gamma])
                .chain(floats(&s.theta))
                .chain(floats(&s.theta_prev))
                .chain(floats(&s.omega))
                .chain(floats(&drift)),
        );
    }
    Ok(Status::Success)
}

fn moments_cmd(cfg: &RunConfig, w: &GeneralizedJacobiWeight, out: &mut String) -> Result<Status> {
    cfg.require_span()?;
    let m = w.m();
    let n = cfg.n;
    let rep = evolve_moments(w, n, cfg.evolve.t0, cfg.evolve.t1, evolve_options(cfg))?;
    let mut rows = String::new();
    let mut worst = 0.0_f64;
    for s in &rep.samples {
        let direct = nu_by_quadrature(w, n, s.t, cfg.npts)?;
        worst = worst.max(rel_max(&s.nu, &direct.nu));
        let x1 = w.trajectory().positions(s.t)[0];
        let mu = DiscreteMeasure::new(w, s.t, cfg.npts)?.integrate(|u| (u - x1).powi(n as i32));
        let gap = (mu - s.nu[0]).abs() / mu.abs();
        row(
            &mut rows,
            std::iter::once(fmt_f64(s.t))
                .chain(floats(&s.nu))
                .chain(floats(&[mu, gap])),
        );
    }
    let _ = writeln!(out, "# max_deviation_vs_quadrature: {}", fmt_f64(worst));
    row(
        out,
        std::iter::once("t".to_string())
            .chain(indexed("nu", m))
            .chain(["mu_n", "gap"].map(String::from)),
    );
    out.push_str(&rows);
    Ok(Status::Success)
}

fn verify(cfg: &RunConfig, w: &GeneralizedJacobiWeight, out: &mut String) -> Result<Status> {
    cfg.require_span()?;
    let rep = evolve(w, cfg.n, cfg.evolve.t0, cfg.evolve.t1, evolve_options(cfg))?;
    let devs = verify_against_direct(w, &rep, cfg.npts)?;
    let worst = devs.iter().map(|d| d.max()).fold(0.0, crate::nan_max);
    let _ = writeln!(out, "# max_drift: {}", fmt_f64(rep.drift()));
    let _ = writeln!(out, "# max_deviation: {}", fmt_f64(worst));
    row(
        out,
        [
            "t",
            "dev_a",
            "dev_b",
            "dev_gamma",
            "dev_theta",
            "dev_theta_prev",
            "dev_omega",
            "ladder_residual",
            "dev_max",
        ]
        .map(String::from),
    );
    for d in &devs {
        row(
            out,
            floats(&[
                d.t,
                d.a,
                d.b,
                d.gamma,
                d.theta,
                d.theta_prev,
                d.omega,
                d.ladder_residual,
                d.max(),
            ]),
        );
    }
    Ok(if worst <= cfg.verify_rtol {
        Status::Success
    } else {
        Status::VerificationFailed(format!(
            "largest relative deviation {worst:e} exceeds verify.rtol = {:e}",
            cfg.verify_rtol
        ))
    })
}

struct Check {
    name: &'static str,
    value: f64,
    tolerance: f64,
    /// `true` when smaller is better; `false` for lower bounds such as orders.
    upper: bool,
}

impl Check {
    fn passed(&self) -> bool {
        if self.upper {
            self.value <= self.tolerance
        } else {
            self.value >= self.tolerance
        }
    }
}

fn selftest(cfg: &RunConfig, w: &GeneralizedJacobiWeight, out: &mut String) -> Result<Status> {
    let t = cfg.eval_time();
    let n = cfg.n;
    let npts = cfg.npts;
    let nodes = w.node_data(t)?;
    let mut checks = Vec::new();

    let m0 = mass(w, t, npts)?;
    let m1 = mass(w, t, 2 * npts)?;
    checks.push(Check {
        name: "mass_refinement",
        value: (m0 - m1).abs() / m1.abs(),
        tolerance: 1e-12,
        upper: true,
    });

    let table = stieltjes_procedure(w, t, n + 1, npts)?;
    let fine = stieltjes_procedure(w, t, n + 1, 2 * npts)?;
    checks.push(Check {
        name: "coefficient_refinement",
        value: table_gap(&table, &fine, 0.5 * nodes.width()),
        tolerance: 1e-10,
        upper: true,
    });

    let measure = DiscreteMeasure::new(w, t, npts)?;
    let mut ortho = 0.0_f64;
    for i in 0..=n {
        for j in 0..=i {
            let pi = table.poly(i);
            let pj = table.poly(j);
            let g = measure.integrate(|u| pi(u) * pj(u));
            let want = if i == j { 1.0 } else { 0.0 };
            ortho = crate::nan_max(ortho, (g - want).abs());
        }
    }
    checks.push(Check {
        name: "orthonormality",
        value: ortho,
        tolerance: 1e-10,
        upper: true,
    });

    let hn = n.clamp(1, 6);
    let mu = moments(w, t, 2 * hn + 1, npts)?;
    let mut hankel = 0.0_f64;
    for k in 1..=hn {
        let (a2, b) = coefficients_from_moments(&mu, nodes.x[0], k)?;
        let ta2 = table.a[k] * table.a[k];
        hankel = hankel
            .max((a2 - ta2).abs() / ta2)
            .max((b - table.b[k]).abs() / table.b[k].abs().max(0.5 * nodes.width()));
    }
    checks.push(Check {
        name: "hankel_ratios",
        value: hankel,
        tolerance: 1e-6,
        upper: true,
    });

    let mut logderiv = 0.0_f64;
    for i in 0..nodes.m() - 1 {
        let x = 0.5 * (nodes.x[i] + nodes.x[i + 1]);
        let ld = w.eval_v_and_logderivs(x, t)?;
        let h = 1e-5 * (nodes.x[i + 1] - nodes.x[i]);
        let fd = ((w.eval(x + h, t)?).ln() - (w.eval(x - h, t)?).ln()) / (2.0 * h);
        let two_v_over_w = 2.0 * ld.v / nodes.w(x);
        let scale = ld.dlogw_dx.abs().max(1.0);
        logderiv = logderiv
            .max((fd - ld.dlogw_dx).abs() / scale)
            .max((two_v_over_w - ld.dlogw_dx).abs() / scale);
    }
    checks.push(Check {
        name: "log_derivative",
        value: logderiv,
        tolerance: 1e-6,
        upper: true,
    });

    if w.all_alpha_positive() {
        let mut residue = 0.0_f64;
        let mut relation = 0.0_f64;
        let mut wronskian = 0.0_f64;
        let mut step = 0.0_f64;
        let mut prev = None;
        for k in 0..=n {
            let lv = ladder_init(w, &table, t, k, npts)?;
            let rep = ladder_checks(w, &table, &lv, t, npts, 20, k as u64)?;
            residue = residue.max(rep.max_residue_gap());
            relation = relation.max(rep.relation_residual);
            wronskian = wronskian.max(rep.wronskian_dev.unwrap_or(0.0));
            if let Some(p) = &prev {
                let s = ladder_step(p, &nodes.x, table.a[k - 1], table.a[k], table.b[k - 1])?;
                step = step.max(rel_max(&s.theta, &lv.theta)).max(rel_max(&s.omega, &lv.omega));
            }
            prev = Some(lv);
        }
        checks.push(Check { name: "residue_sums", value: residue, tolerance: 1e-8, upper: true });
        checks.push(Check { name: "ladder_relation", value: relation, tolerance: 1e-7, upper: true });
        checks.push(Check { name: "wronskian", value: wronskian, tolerance: 1e-8, upper: true });
        checks.push(Check { name: "ladder_step", value: step, tolerance: 1e-6, upper: true });

        if n >= 1 {
            let s = crate::evolution::direct_state(w, n, t, npts)?;
            let sums = s.conserved_sums(&nodes.x);
            let want = expected_sums(n, w.alpha_sum());
            let gap = sums
                .iter()
                .zip(&want)
                .map(|(a, b)| (a - b).abs() / b.abs().max(1.0))
                .fold(0.0, crate::nan_max);
            checks.push(Check { name: "conserved_sums", value: gap, tolerance: 1e-8, upper: true });

            if nodes.xdot.iter().any(|&v| v != 0.0) {
                let errs = rhs_consistency(w, n, t, &[1e-3, 5e-4], npts)?;
                let order = if errs[0] < 1e-9 { f64::INFINITY } else { (errs[0] / errs[1]).log2() };
                checks.push(Check { name: "rhs_fd_order", value: order, tolerance: 1.9, upper: false });
            }
        }
    }

    let h = 1e-4;
    let beta = betas(n, w.m());
    let nu = nu_by_quadrature(w, n, t, npts)?;
    let rates = moment_rhs(&nu.nu, &nodes, w.alpha(), &beta)?;
    let plus = nu_by_quadrature(w, n, t + h, npts)?;
    let minus = nu_by_quadrature(w, n, t - h, npts)?;
    let scale = nu.nu.iter().fold(1.0_f64, |s, v| s.max(v.abs()));
    let flow = (0..w.m())
        .map(|j| ((plus.nu[j] - minus.nu[j]) / (2.0 * h) - rates[j]).abs() / scale)
        .fold(0.0, crate::nan_max);
    checks.push(Check { name: "moment_flow_rhs", value: flow, tolerance: 1e-6, upper: true });

    row(out, ["check", "value", "tolerance", "passed"].map(String::from));
    for c in &checks {
        row(
            out,
            [
                c.name.to_string(),
                fmt_f64(c.value),
                fmt_f64(c.tolerance),
                c.passed().to_string(),
            ],
        );
    }
    let failed: Vec<&str> = checks.iter().filter(|c| !c.passed()).map(|c| c.name).collect();
    Ok(if failed.is_empty() {
        Status::Success
    } else {
        Status::VerificationFailed(format!("selftest checks failed: {}", failed.join(", ")))
    })
}

fn table_gap(
    a: &crate::orthopoly::RecurrenceTable,
    b: &crate::orthopoly::RecurrenceTable,
    half_width: f64,
) -> f64 {
    let mut gap = 0.0_f64;
    for k in 0..a.a.len().min(b.a.len()) {
        gap = gap
            .max((a.a[k] - b.a[k]).abs() / b.a[k].abs().max(f64::MIN_POSITIVE))
            .max((a.b[k] - b.b[k]).abs() / b.b[k].abs().max(half_width))
            .max((a.gamma[k] - b.gamma[k]).abs() / b.gamma[k].abs());
    }
    gap
}

/// Recomputes the coefficient table with twice the quadrature points and
/// appends the comparison as a metadata line.
pub fn selfcheck(cfg: &RunConfig, out: &mut dyn Write) -> Status {
    let t = cfg.eval_time();
    let deg = cfg.nmax.unwrap_or(cfg.n).max(cfg.n);
    let run = || -> Result<f64> {
        let w = cfg.build_weight()?;
        let coarse = stieltjes_procedure(&w, t, deg, cfg.npts)?;
        let fine = stieltjes_procedure(&w, t, deg, 2 * cfg.npts)?;
        Ok(table_gap(&coarse, &fine, 0.5 * w.node_data(t)?.width()))
    };
    let status = match run() {
        Ok(gap) => {
            if writeln!(out, "# selfcheck: npts {} vs {} max relative gap {}", cfg.npts, 2 * cfg.npts, fmt_f64(gap)).is_err() {
                return Status::NumericalFailure("cannot write output".into());
            }
            if gap <= cfg.verify_rtol {
                Status::Success
            } else {
                Status::VerificationFailed(format!(
                    "selfcheck gap {gap:e} exceeds verify.rtol = {:e}",
                    cfg.verify_rtol
                ))
            }
        }
        Err(e) => classify(e, Command::Coeffs, t),
    };
    status
}

/// Convenience for the binary: run against the real stdout and stderr.
pub fn main_with_args<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let stdout = io::stdout();
    let stderr = io::stderr();
    run_cli(argv, &mut stdout.lock(), &mut stderr.lock())
}
