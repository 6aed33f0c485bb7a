//! `su2mt`: minimum-time control on SU(2) from the command line.

mod output;
mod suites;
mod target;

use std::f64::consts::TAU;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use su2_mintime::extremals::{Extremal, ThreeControlExtremal, TwoControlExtremal};
use su2_mintime::frontline::{
    critical_curve_three, critical_frequency_two, critical_time_two, frontline_sample_three, frontline_sample_two,
};
use su2_mintime::oracle::verify_solution;
use su2_mintime::solver::{diagonal_min_time, diameter, min_time, swap_min_time};
use su2_mintime::{ControlMode, Error, ModelParams};

use output::{emit, Report, Table};
use target::Target;

#[derive(Debug, Parser)]
#[command(name = "su2mt", version, about = "Minimum-time evolutions on SU(2) with drift and bounded controls")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Two,
    Three,
}

impl From<Mode> for ControlMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Two => ControlMode::Two,
            Mode::Three => ControlMode::Three,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Table1,
    Examples,
    Pmp,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Quantity {
    Diameter,
    Tc,
    Wc,
}

#[derive(Debug, Args)]
struct ModelArgs {
    /// Control bound (> 0).
    #[arg(long, allow_negative_numbers = true)]
    gamma: f64,
    /// Drift frequency.
    #[arg(long, allow_negative_numbers = true)]
    omega0: f64,
    #[arg(long, value_enum)]
    mode: Mode,
}

impl ModelArgs {
    fn model(&self) -> Result<ModelParams, CliError> {
        Ok(ModelParams::new(self.omega0, self.gamma, self.mode.into())?)
    }

    fn json(&self) -> Value {
        json!({
            "gamma": self.gamma,
            "omega0": self.omega0,
            "mode": ControlMode::from(self.mode).to_string(),
        })
    }
}

#[derive(Debug, Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Write here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

/// `lo:hi:n`, n evenly spaced values.
#[derive(Debug, Clone, Copy, PartialEq)]
struct Span {
    lo: f64,
    hi: f64,
    n: usize,
}

impl FromStr for Span {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').collect();
        let [lo, hi, n] = parts.as_slice() else {
            return Err(format!("expected lo:hi:n, got {s:?}"));
        };
        let num = |v: &str| match v.trim().parse::<f64>() {
            Ok(x) if x.is_finite() => Ok(x),
            _ => Err(format!("not a finite number: {v:?}")),
        };
        let n: usize = n.trim().parse().map_err(|_| format!("not a count: {n:?}"))?;
        if n == 0 {
            return Err("range needs at least one point".into());
        }
        Ok(Span {
            lo: num(lo)?,
            hi: num(hi)?,
            n,
        })
    }
}

impl Span {
    fn values(&self) -> Vec<f64> {
        if self.n == 1 {
            return vec![self.lo];
        }
        (0..self.n)
            .map(|i| self.lo + (self.hi - self.lo) * i as f64 / (self.n - 1) as f64)
            .collect()
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Minimum time and optimal extremal for a target, checked by the oracle.
    Solve {
        #[command(flatten)]
        model: ModelArgs,
        /// `x,y`, `polar:r,psi`, `diag:LAMBDA` or `swap`.
        #[arg(long, allow_hyphen_values = true)]
        target: Target,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Worst-case time over all targets.
    Diameter {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Front line at a fixed time, with admissibility flags.
    Frontline {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        time: f64,
        #[arg(long, default_value_t = 201)]
        n: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Samples of one extremal and its controls.
    Trajectory {
        #[command(flatten)]
        model: ModelArgs,
        /// `alpha` (three controls) or `omega` (two controls).
        #[arg(long, allow_negative_numbers = true)]
        param: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        phi: f64,
        /// End time; defaults to the diameter.
        #[arg(long)]
        time: Option<f64>,
        #[arg(long, default_value_t = 201)]
        n: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Runs a check suite and reports each check.
    Verify {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, value_enum, default_value = "all")]
        suite: Suite,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Tabulates a quantity over a grid of models.
    Sweep {
        #[arg(long, value_enum)]
        mode: Mode,
        #[arg(long, value_enum)]
        quantity: Quantity,
        #[arg(long, allow_hyphen_values = true)]
        gamma_range: Span,
        #[arg(long, allow_hyphen_values = true)]
        omega0_range: Span,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] Error),
    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Core(
                Error::InvalidModel(_)
                | Error::OutsideDisk { .. }
                | Error::Domain(_)
                | Error::ModeMismatch { .. }
                | Error::RegimeMismatch { .. },
            ) => 1,
            CliError::Core(_) | CliError::Io(_) => 2,
        }
    }
}

struct Outcome {
    report: Report,
    passed: bool,
}

fn finish(outcome: Outcome, output: &OutputArgs) -> Result<bool, CliError> {
    let text = match output.format {
        Format::Csv => outcome.report.table.to_csv(),
        Format::Json => outcome.report.render_json(),
    };
    emit(&text, output.out.as_deref())?;
    Ok(outcome.passed)
}

fn single(inputs: Value, regime: String, table: Table, verification: Option<Value>, passed: bool) -> Outcome {
    Outcome {
        report: Report {
            inputs,
            regime: Some(regime),
            table,
            single: true,
            verification,
        },
        passed,
    }
}

fn cmd_solve(model: &ModelArgs, target: Target) -> Result<Outcome, CliError> {
    let mp = model.model()?;
    let point = target.point();
    let sol = match target {
        Target::Swap => swap_min_time(&mp)?,
        Target::Diagonal(l) => diagonal_min_time(l.rem_euclid(TAU), &mp)?,
        _ => min_time(&point, &mp)?,
    };
    let check = verify_solution(&sol, &point, &mp)?;
    let failures: Vec<String> = check.failures.iter().map(|c| c.to_string()).collect();
    for f in &failures {
        eprintln!("verification failed: {f}");
    }
    let mut t = Table::new(&[
        "t_f",
        "param",
        "phi",
        "regime",
        "residual",
        "closed_form_residual",
        "replay_residual",
        "verified",
    ]);
    t.push(vec![
        sol.t_f.into(),
        sol.param.into(),
        sol.phi.into(),
        sol.regime.to_string().into(),
        sol.residual.into(),
        check.closed_form_residual.into(),
        check.replay_residual.into(),
        check.passed().into(),
    ]);
    let mut inputs = model.json();
    inputs["target"] = json!(target.to_string());
    let verification = json!({
        "passed": check.passed(),
        "closed_form_residual": check.closed_form_residual,
        "replay_residual": check.replay_residual,
        "earlier_hit": check.earlier_hit,
        "failures": failures,
    });
    Ok(single(inputs, sol.regime.to_string(), t, Some(verification), check.passed()))
}

fn cmd_diameter(model: &ModelArgs) -> Result<Outcome, CliError> {
    let d = diameter(&model.model()?);
    let mut t = Table::new(&["t_max", "worst_x", "worst_y", "worst_param", "open_limit", "regime"]);
    t.push(vec![
        d.t_max.into(),
        d.worst_point.x.into(),
        d.worst_point.y.into(),
        d.worst_param.into(),
        d.open_limit.into(),
        d.regime.to_string().into(),
    ]);
    Ok(single(model.json(), d.regime.to_string(), t, None, true))
}

fn many(inputs: Value, regime: Option<String>, table: Table) -> Outcome {
    Outcome {
        report: Report {
            inputs,
            regime,
            table,
            single: false,
            verification: None,
        },
        passed: true,
    }
}

fn check_time(t: f64) -> Result<(), CliError> {
    if t.is_finite() && t >= 0.0 {
        Ok(())
    } else {
        Err(CliError::Usage(format!("time must be finite and nonnegative, got {t}")))
    }
}

fn cmd_frontline(model: &ModelArgs, time: f64, n: usize) -> Result<Outcome, CliError> {
    check_time(time)?;
    let mp = model.model()?;
    let line = match mp.mode() {
        ControlMode::Three => frontline_sample_three(&mp, time, n)?,
        ControlMode::Two => frontline_sample_two(&mp, time, n)?,
    };
    let mut t = Table::new(&["param", "x", "y", "admissible"]);
    for s in &line.samples {
        t.push(vec![s.param.into(), s.point.x.into(), s.point.y.into(), s.admissible.into()]);
    }
    let mut inputs = model.json();
    inputs["time"] = json!(time);
    inputs["n"] = json!(n);
    Ok(many(inputs, Some(mp.regime().to_string()), t))
}

fn cmd_trajectory(model: &ModelArgs, param: f64, phi: f64, time: Option<f64>, n: usize) -> Result<Outcome, CliError> {
    let mp = model.model()?;
    let t_end = time.unwrap_or_else(|| diameter(&mp).t_max);
    check_time(t_end)?;
    if n < 2 {
        return Err(CliError::Usage(format!("need at least 2 samples, got {n}")));
    }
    let e = match mp.mode() {
        ControlMode::Three => Extremal::Three(ThreeControlExtremal::new(param, phi)?),
        ControlMode::Two => Extremal::Two(TwoControlExtremal::new(param, phi)?),
    };
    let mut t = Table::new(&["t", "x", "y", "ux", "uy", "uz"]);
    for i in 0..n {
        let s = t_end * i as f64 / (n - 1) as f64;
        let p = e.state(&mp, s).project();
        let u = e.controls(&mp, s)?;
        t.push(vec![s.into(), p.x.into(), p.y.into(), u.ux.into(), u.uy.into(), u.uz.into()]);
    }
    let mut inputs = model.json();
    inputs["param"] = json!(param);
    inputs["phi"] = json!(phi);
    inputs["time"] = json!(t_end);
    inputs["n"] = json!(n);
    Ok(many(inputs, Some(mp.regime().to_string()), t))
}

fn cmd_verify(model: &ModelArgs, suite: Suite) -> Result<Outcome, CliError> {
    let mp = model.model()?;
    let mut rows = Vec::new();
    if matches!(suite, Suite::Table1 | Suite::All) {
        rows.extend(suites::table1(&mp)?);
    }
    if matches!(suite, Suite::Examples | Suite::All) {
        rows.extend(suites::examples()?);
    }
    if matches!(suite, Suite::Pmp | Suite::All) {
        rows.extend(suites::pmp(&mp)?);
    }
    let passed = rows.iter().all(|r| r.passed);
    let mut t = Table::new(&suites::COLUMNS);
    for r in &rows {
        if !r.passed {
            eprintln!("FAIL {}: {} (expected {:?}, tolerance {})", r.check, r.value, r.expected, r.tolerance);
        }
        t.push(r.cells());
    }
    let mut inputs = model.json();
    inputs["suite"] = json!(format!("{suite:?}").to_lowercase());
    let verification = json!({
        "passed": passed,
        "checks": rows.len(),
        "failed": rows.iter().filter(|r| !r.passed).count(),
    });
    let mut out = many(inputs, Some(mp.regime().to_string()), t);
    out.report.verification = Some(verification);
    out.passed = passed;
    Ok(out)
}

fn sweep_value(mp: &ModelParams, quantity: Quantity) -> f64 {
    match (quantity, mp.mode()) {
        (Quantity::Diameter, _) => diameter(mp).t_max,
        (Quantity::Tc, ControlMode::Three) => critical_curve_three(mp).map_or(f64::NAN, |c| c.t_c),
        (Quantity::Wc, ControlMode::Three) => critical_curve_three(mp).map_or(f64::NAN, |c| c.param_c),
        (Quantity::Tc, ControlMode::Two) => critical_time_two(mp).unwrap_or(f64::NAN),
        (Quantity::Wc, ControlMode::Two) => critical_frequency_two(mp).unwrap_or(f64::NAN),
    }
}

fn cmd_sweep(mode: Mode, quantity: Quantity, gammas: Span, omegas: Span) -> Result<Outcome, CliError> {
    let mut t = Table::new(&["gamma", "omega0", "regime", "value"]);
    for g in gammas.values() {
        for w0 in omegas.values() {
            let mp = ModelParams::new(w0, g, mode.into())?;
            t.push(vec![g.into(), w0.into(), mp.regime().to_string().into(), sweep_value(&mp, quantity).into()]);
        }
    }
    let span = |s: Span| json!({"lo": s.lo, "hi": s.hi, "n": s.n});
    let inputs = json!({
        "mode": ControlMode::from(mode).to_string(),
        "quantity": format!("{quantity:?}").to_lowercase(),
        "gamma_range": span(gammas),
        "omega0_range": span(omegas),
    });
    Ok(many(inputs, None, t))
}

fn run(cli: Cli) -> Result<bool, CliError> {
    let (outcome, output) = match &cli.command {
        Command::Solve { model, target, output } => (cmd_solve(model, *target)?, output),
        Command::Diameter { model, output } => (cmd_diameter(model)?, output),
        Command::Frontline { model, time, n, output } => (cmd_frontline(model, *time, *n)?, output),
        Command::Trajectory {
            model,
            param,
            phi,
            time,
            n,
            output,
        } => (cmd_trajectory(model, *param, *phi, *time, *n)?, output),
        Command::Verify { model, suite, output } => (cmd_verify(model, *suite)?, output),
        Command::Sweep {
            mode,
            quantity,
            gamma_range,
            omega0_range,
            output,
        } => (cmd_sweep(*mode, *quantity, *gamma_range, *omega0_range)?, output),
    };
    finish(outcome, output)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
