use std::f64::consts::PI;

use su2_mintime::extremals::{omega_from_beta, verify_pmp, Extremal, ThreeControlExtremal, TwoControlExtremal};
use su2_mintime::oracle::{brute_diameter, verify_solution, OracleConfig};
use su2_mintime::solver::{diagonal_min_time, diameter, min_time, swap_min_time, Solution};
use su2_mintime::{ControlMode, DiskPoint, ModelParams, Result};

use crate::output::Cell;

/// Oracle diameter grid resolution limits the agreement to this.
pub const DIAMETER_ORACLE_TOL: f64 = 0.02;
/// Reference values are quoted to 9 significant digits.
pub const REFERENCE_TOL: f64 = 1e-7;
pub const PMP_TOL: f64 = 1e-9;

#[allow(clippy::approx_constant)]
const QUARTER_TURN: f64 = 1.5707963;

#[derive(Debug, Clone, PartialEq)]
pub struct CheckRow {
    pub check: String,
    pub passed: bool,
    pub value: f64,
    pub expected: Option<f64>,
    pub tolerance: f64,
    pub detail: String,
}

impl CheckRow {
    fn compare(check: String, value: f64, expected: f64, tolerance: f64) -> Self {
        CheckRow {
            check,
            passed: (value - expected).abs() <= tolerance,
            value,
            expected: Some(expected),
            tolerance,
            detail: String::new(),
        }
    }

    fn bound(check: String, value: f64, tolerance: f64) -> Self {
        CheckRow {
            check,
            passed: value <= tolerance,
            value,
            expected: None,
            tolerance,
            detail: String::new(),
        }
    }

    pub fn cells(&self) -> Vec<Cell> {
        vec![
            self.check.clone().into(),
            self.passed.into(),
            self.value.into(),
            self.expected.into(),
            self.tolerance.into(),
            self.detail.clone().into(),
        ]
    }
}

pub const COLUMNS: [&str; 6] = ["check", "passed", "value", "expected", "tolerance", "detail"];

fn verified(label: &str, sol: &Solution, target: &DiskPoint, mp: &ModelParams) -> Result<CheckRow> {
    let report = verify_solution(sol, target, mp)?;
    let names: Vec<String> = report.failures.iter().map(|c| c.to_string()).collect();
    Ok(CheckRow {
        check: format!("{label} verified"),
        passed: report.passed(),
        value: report.replay_residual,
        expected: None,
        tolerance: su2_mintime::oracle::REPLAY_TOL,
        detail: names.join("; "),
    })
}

/// Closed-form diameter against the brute-force oracle for one model.
pub fn table1(mp: &ModelParams) -> Result<Vec<CheckRow>> {
    let d = diameter(mp);
    let brute = brute_diameter(mp, &OracleConfig::for_model(mp))?;
    let mut rows = vec![CheckRow::compare(
        format!("diameter {} vs oracle", d.regime),
        brute,
        d.t_max,
        DIAMETER_ORACLE_TOL,
    )];
    if !d.open_limit {
        let sol = min_time(&d.worst_point, mp)?;
        rows.push(CheckRow::compare(
            "worst point reached at the diameter".into(),
            sol.t_f,
            d.t_max,
            1e-6 * d.t_max,
        ));
    }
    Ok(rows)
}

enum Example {
    Solve(&'static str, ModelParams, fn(&ModelParams) -> Result<(Solution, DiskPoint)>, f64),
    Diameter(&'static str, ModelParams, f64),
}

fn model(mode: ControlMode, omega0: f64, gamma: f64) -> ModelParams {
    ModelParams::new(omega0, gamma, mode).expect("valid reference model")
}

fn examples_list() -> Vec<Example> {
    use ControlMode::{Three, Two};
    vec![
        Example::Solve(
            "swap (two controls without drift)",
            model(Two, 0.0, 1.0),
            |mp| Ok((swap_min_time(mp)?, DiskPoint::ORIGIN)),
            PI,
        ),
        Example::Solve(
            "diagonal pi/2 (two controls without drift)",
            model(Two, 0.0, 1.0),
            |mp| Ok((diagonal_min_time(QUARTER_TURN, mp)?, DiskPoint::from_polar(1.0, QUARTER_TURN))),
            5.44139809,
        ),
        Example::Solve(
            "diagonal 2pi/3 (three controls gamma 3 omega0 1)",
            model(Three, 1.0, 3.0),
            |mp| {
                let p = DiskPoint::from_polar(1.0, 2.0 * PI / 3.0);
                Ok((min_time(&p, mp)?, p))
            },
            2.09439510,
        ),
        Example::Diameter("diameter three-weak", model(Three, 3.0, 1.0), 4.18879020),
        Example::Diameter("diameter two-weak", model(Two, 2.0, 1.0), 5.08320369),
        Example::Diameter("diameter two-middle", model(Two, 1.2, 1.0), 6.18018227),
    ]
}

/// Fixed reference problems with known answers.
pub fn examples() -> Result<Vec<CheckRow>> {
    let mut rows = Vec::new();
    for ex in examples_list() {
        match ex {
            Example::Solve(label, mp, run, want) => {
                let (sol, target) = run(&mp)?;
                rows.push(CheckRow::compare(label.to_string(), sol.t_f, want, REFERENCE_TOL));
                rows.push(verified(label, &sol, &target, &mp)?);
            }
            Example::Diameter(label, mp, want) => {
                rows.push(CheckRow::compare(label.to_string(), diameter(&mp).t_max, want, REFERENCE_TOL));
            }
        }
    }
    Ok(rows)
}

/// Maximum-principle residuals along a fan of extremals, then oracle
/// verification of a handful of solved targets.
pub fn pmp(mp: &ModelParams) -> Result<Vec<CheckRow>> {
    let t_end = diameter(mp).t_max;
    let grid: Vec<f64> = (0..=128).map(|j| t_end * j as f64 / 128.0).collect();
    let mut worst = 0.0f64;
    for k in 0..=8 {
        let s = -0.9 + 0.225 * k as f64;
        let e = match mp.mode() {
            ControlMode::Three => Extremal::Three(ThreeControlExtremal::new(s, 0.0)?),
            ControlMode::Two => Extremal::Two(TwoControlExtremal::new(omega_from_beta(s, mp), 0.0)?),
        };
        worst = worst.max(verify_pmp(&e, mp, &grid)?);
    }
    let mut rows = vec![CheckRow::bound("controls maximise the Hamiltonian".into(), worst, PMP_TOL)];
    for (r, psi) in [(0.3, 0.5), (0.6, 2.5), (0.8, 4.0), (0.95, 5.5)] {
        let target = DiskPoint::from_polar(r, psi);
        let sol = min_time(&target, mp)?;
        rows.push(verified(&format!("target r={r} psi={psi}"), &sol, &target, mp)?);
    }
    Ok(rows)
}
