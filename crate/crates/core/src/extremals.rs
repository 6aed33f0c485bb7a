//! Candidate optimal (extremal) controls, trajectories and costates.
//!
//! With three controls the extremals are labelled by `alpha in [-1, 1]` and a
//! transverse phase `phi`:
//!
//! ```text
//! u = gamma (sqrt(1 - alpha^2) cos(omega0 t + phi), sqrt(1 - alpha^2) sin(omega0 t + phi), alpha)
//! ```
//!
//! With two controls (`u_z = 0`) they are labelled by a rotation frequency
//! `omega in R` and `phi`, `u = gamma (cos(omega t + phi), sin(omega t + phi), 0)`.
//! In both cases the evolution is a fixed rotation in a rotating frame and has
//! a closed form; [`propagate_numeric`] integrates the Schroedinger equation
//! directly and serves as an independent check.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::su2::{ControlMode, DiskPoint, ModelParams, Su2Operator};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Integration steps per unit of `max(gamma, |omega0|) * t` used by default.
pub const STEPS_PER_UNIT: f64 = 4096.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ThreeControlExtremal {
    alpha: f64,
    phi: f64,
}

impl ThreeControlExtremal {
    pub fn new(alpha: f64, phi: f64) -> Result<Self> {
        if !(alpha.abs() <= 1.0) || !phi.is_finite() {
            return Err(Error::Domain(format!("alpha = {alpha} outside [-1, 1]")));
        }
        Ok(ThreeControlExtremal { alpha, phi })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TwoControlExtremal {
    omega: f64,
    phi: f64,
}

impl TwoControlExtremal {
    pub fn new(omega: f64, phi: f64) -> Result<Self> {
        if !omega.is_finite() || !phi.is_finite() {
            return Err(Error::Domain(format!("omega = {omega}, phi = {phi}")));
        }
        Ok(TwoControlExtremal { omega, phi })
    }

    /// The extremal with `b / a = beta`, `beta in (-1, 1)`. This maps the real
    /// line of frequencies onto a bounded interval; `r^2` depends on `omega`
    /// only through `a`, i.e. through `|beta|`.
    pub fn from_beta(beta: f64, mp: &ModelParams, phi: f64) -> Result<Self> {
        if !(beta.abs() < 1.0) {
            return Err(Error::Domain(format!("beta = {beta} outside (-1, 1)")));
        }
        Self::new(omega_from_beta(beta, mp), phi)
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    /// `b = omega0 - omega`.
    pub fn detuning(&self, mp: &ModelParams) -> f64 {
        mp.omega0() - self.omega
    }

    /// `a = sqrt(b^2 + gamma^2)`, the rotation rate in the co-rotating frame.
    pub fn rate(&self, mp: &ModelParams) -> f64 {
        self.detuning(mp).hypot(mp.gamma())
    }

    pub fn beta(&self, mp: &ModelParams) -> f64 {
        self.detuning(mp) / self.rate(mp)
    }
}

pub fn omega_from_beta(beta: f64, mp: &ModelParams) -> f64 {
    mp.omega0() - mp.gamma() * beta / (1.0 - beta * beta).sqrt()
}

/// Either family of extremals.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum Extremal {
    Three(ThreeControlExtremal),
    Two(TwoControlExtremal),
}

impl Extremal {
    /// `alpha` for three controls, `omega` for two.
    pub fn param(&self) -> f64 {
        match self {
            Extremal::Three(e) => e.alpha,
            Extremal::Two(e) => e.omega,
        }
    }

    pub fn phi(&self) -> f64 {
        match self {
            Extremal::Three(e) => e.phi,
            Extremal::Two(e) => e.phi,
        }
    }

    pub fn mode(&self) -> ControlMode {
        match self {
            Extremal::Three(_) => ControlMode::Three,
            Extremal::Two(_) => ControlMode::Two,
        }
    }

    pub fn controls(&self, mp: &ModelParams, t: f64) -> Result<ControlSample> {
        match self {
            Extremal::Three(e) => controls_three(e, mp, t),
            Extremal::Two(e) => controls_two(e, mp, t),
        }
    }

    pub fn state(&self, mp: &ModelParams, t: f64) -> Su2Operator {
        match self {
            Extremal::Three(e) => state_three(e, mp, t),
            Extremal::Two(e) => state_two(e, mp, t),
        }
    }

    pub fn costate(&self, mp: &ModelParams, t: f64) -> Costate {
        match self {
            Extremal::Three(e) => costate_three(e, mp, t),
            Extremal::Two(e) => costate_two(e, mp, t),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ControlSample {
    pub t: f64,
    pub ux: f64,
    pub uy: f64,
    pub uz: f64,
}

impl ControlSample {
    pub const fn zero(t: f64) -> Self {
        ControlSample {
            t,
            ux: 0.0,
            uy: 0.0,
            uz: 0.0,
        }
    }

    pub fn norm(&self) -> f64 {
        (self.ux * self.ux + self.uy * self.uy + self.uz * self.uz).sqrt()
    }
}

/// Costate coefficients `b_k = i <M, X^dag S_k X>`, normalised to `|b| = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Costate {
    pub bx: f64,
    pub by: f64,
    pub bz: f64,
    /// Transverse magnitude `sqrt(bx^2 + by^2)`.
    pub mu: f64,
    /// Transverse phase, linear in time.
    pub phase: f64,
    /// Set when `mu = 0` (three controls with `|alpha| = 1`).
    pub degenerate: bool,
}

impl Costate {
    pub fn norm(&self) -> f64 {
        (self.bx * self.bx + self.by * self.by + self.bz * self.bz).sqrt()
    }
}

pub fn controls_three(e: &ThreeControlExtremal, mp: &ModelParams, t: f64) -> Result<ControlSample> {
    mp.require_mode(ControlMode::Three)?;
    let g = mp.gamma();
    let s = (1.0 - e.alpha * e.alpha).max(0.0).sqrt();
    let (sn, cs) = (mp.omega0() * t + e.phi).sin_cos();
    Ok(ControlSample {
        t,
        ux: g * s * cs,
        uy: g * s * sn,
        uz: g * e.alpha,
    })
}

pub fn controls_two(e: &TwoControlExtremal, mp: &ModelParams, t: f64) -> Result<ControlSample> {
    mp.require_mode(ControlMode::Two)?;
    let g = mp.gamma();
    let (sn, cs) = (e.omega * t + e.phi).sin_cos();
    Ok(ControlSample {
        t,
        ux: g * cs,
        uy: g * sn,
        uz: 0.0,
    })
}

/// Closed-form trajectory for three controls, `X = e^{-i omega0 S_z t} Z`.
pub fn state_three(e: &ThreeControlExtremal, mp: &ModelParams, t: f64) -> Su2Operator {
    let tau = 0.5 * t;
    let (sg, cg) = (mp.gamma() * tau).sin_cos();
    let s = (1.0 - e.alpha * e.alpha).max(0.0).sqrt();
    let drift = Complex64::from_polar(1.0, -mp.omega0() * tau);
    let a = drift * Complex64::new(cg, -e.alpha * sg);
    let b = -I * s * sg * Complex64::from_polar(1.0, -(mp.omega0() * tau + e.phi));
    Su2Operator::normalized(a, b)
}

/// Closed-form trajectory for two controls, `X = e^{-i omega S_z t} Z`.
pub fn state_two(e: &TwoControlExtremal, mp: &ModelParams, t: f64) -> Su2Operator {
    let tau = 0.5 * t;
    let b = e.detuning(mp);
    let a = e.rate(mp);
    let (sa, ca) = (a * tau).sin_cos();
    let frame = Complex64::from_polar(1.0, -e.omega * tau);
    let x11 = frame * Complex64::new(ca, -(b / a) * sa);
    let x12 = -I * (mp.gamma() / a) * sa * Complex64::from_polar(1.0, -(e.omega * tau + e.phi));
    Su2Operator::normalized(x11, x12)
}

/// Disk image of the three-control extremal `alpha` at time `t`:
/// `x + i y = e^{-i omega0 tau} (cos(gamma tau) - i alpha sin(gamma tau))`.
pub fn disk_three(alpha: f64, mp: &ModelParams, t: f64) -> DiskPoint {
    let tau = 0.5 * t;
    let (sw, cw) = (mp.omega0() * tau).sin_cos();
    let (sg, cg) = (mp.gamma() * tau).sin_cos();
    DiskPoint {
        x: cw * cg - alpha * sw * sg,
        y: -sw * cg - alpha * cw * sg,
    }
}

/// Disk image of the two-control extremal `omega` at time `t`.
pub fn disk_two(omega: f64, mp: &ModelParams, t: f64) -> DiskPoint {
    let tau = 0.5 * t;
    let b = mp.omega0() - omega;
    let a = b.hypot(mp.gamma());
    disk_two_ab(omega, b / a, a * tau, omega * tau)
}

/// Same as [`disk_two`] parametrised by `beta = b / a` (see
/// [`TwoControlExtremal::from_beta`]). Stable for `|beta| -> 1`.
pub fn disk_two_beta(beta: f64, mp: &ModelParams, t: f64) -> DiskPoint {
    let tau = 0.5 * t;
    let c = (1.0 - beta * beta).sqrt();
    let a = mp.gamma() / c;
    let omega = mp.omega0() - beta * a;
    disk_two_ab(omega, beta, a * tau, omega * tau)
}

fn disk_two_ab(_omega: f64, beta: f64, a_tau: f64, w_tau: f64) -> DiskPoint {
    let (sw, cw) = w_tau.sin_cos();
    let (sa, ca) = a_tau.sin_cos();
    DiskPoint {
        x: cw * ca - beta * sw * sa,
        y: -sw * ca - beta * cw * sa,
    }
}

/// Polar form `(r^2, psi)` of [`disk_two`] for `0 <= t < 2 pi / a`.
///
/// `r^2 = 1 - (gamma / a)^2 sin^2(a tau)`. The angle is continuous in `t`,
/// starts at 0 and equals `-omega tau - atan((b/a) tan(a tau))` plus a branch
/// offset of `-sign(b) pi` once `a tau` passes `pi / 2`.
pub fn polar_two(omega: f64, mp: &ModelParams, t: f64) -> Result<(f64, f64)> {
    let e = TwoControlExtremal::new(omega, 0.0)?;
    let a = e.rate(mp);
    let b = e.detuning(mp);
    let tau = 0.5 * t;
    let q = a * tau;
    if !(0.0..std::f64::consts::PI).contains(&q) {
        return Err(Error::Domain(format!(
            "polar form needs 0 <= t < 2 pi / a = {}, got t = {t}",
            2.0 * std::f64::consts::PI / a
        )));
    }
    let g = mp.gamma();
    let r2 = 1.0 - (g / a).powi(2) * q.sin().powi(2);
    let half = std::f64::consts::FRAC_PI_2;
    let psi = if q == half {
        -omega * tau - b.signum() * half * if b == 0.0 { 0.0 } else { 1.0 }
    } else {
        let base = -omega * tau - ((b / a) * q.tan()).atan();
        if q < half {
            base
        } else if b > 0.0 {
            base - std::f64::consts::PI
        } else {
            base + std::f64::consts::PI
        }
    };
    Ok((r2, psi))
}

/// Costate of a three-control extremal with `|b| = 1`: `b_z = alpha`,
/// `mu = sqrt(1 - alpha^2)`, transverse phase `omega0 t + phi`.
pub fn costate_three(e: &ThreeControlExtremal, mp: &ModelParams, t: f64) -> Costate {
    let mu = (1.0 - e.alpha * e.alpha).max(0.0).sqrt();
    let phase = mp.omega0() * t + e.phi;
    let (sn, cs) = phase.sin_cos();
    Costate {
        bx: mu * cs,
        by: mu * sn,
        bz: e.alpha,
        mu,
        phase,
        degenerate: mu == 0.0,
    }
}

/// Costate of a two-control extremal with `|b| = 1`: `mu = gamma / a`,
/// `b_z = (omega0 - omega) / a`, so that `omega = omega0 - gamma b_z / mu`.
pub fn costate_two(e: &TwoControlExtremal, mp: &ModelParams, t: f64) -> Costate {
    let a = e.rate(mp);
    let mu = mp.gamma() / a;
    let phase = e.omega * t + e.phi;
    let (sn, cs) = phase.sin_cos();
    Costate {
        bx: mu * cs,
        by: mu * sn,
        bz: e.detuning(mp) / a,
        mu,
        phase,
        degenerate: false,
    }
}

/// Maximum over `t_grid` of the deviation between the extremal controls and
/// the maximising controls `gamma b / |b|` built from its costate.
pub fn verify_pmp(e: &Extremal, mp: &ModelParams, t_grid: &[f64]) -> Result<f64> {
    mp.require_mode(e.mode())?;
    let g = mp.gamma();
    let mut worst = 0.0f64;
    for &t in t_grid {
        let u = e.controls(mp, t)?;
        let c = e.costate(mp, t);
        if c.degenerate {
            return Err(Error::DegenerateCostate);
        }
        let res = match e {
            Extremal::Three(_) => {
                let n = c.norm();
                let (dx, dy, dz) = (u.ux - g * c.bx / n, u.uy - g * c.by / n, u.uz - g * c.bz / n);
                (dx * dx + dy * dy + dz * dz).sqrt()
            }
            Extremal::Two(_) => {
                let n = c.bx.hypot(c.by);
                (u.ux - g * c.bx / n).hypot(u.uy - g * c.by / n) + u.uz.abs()
            }
        };
        worst = worst.max(res);
    }
    Ok(worst)
}

/// Default step count for [`propagate_numeric`] over `[0, t]`.
pub fn default_steps(mp: &ModelParams, t: f64) -> usize {
    let scale = mp.gamma().max(mp.omega0().abs());
    ((STEPS_PER_UNIT * scale * t.abs()).ceil() as usize).max(1)
}

fn schroedinger_rhs(omega0: f64, u: &ControlSample, a: Complex64, b: Complex64) -> (Complex64, Complex64) {
    let hz = omega0 + u.uz;
    let hxy = Complex64::new(u.ux, -u.uy);
    let da = -0.5 * I * (hz * a - hxy * b.conj());
    let db = -0.5 * I * (hz * b + hxy * a.conj());
    (da, db)
}

/// Integrates `dX/dt = -i (omega0 S_z + u_x S_x + u_y S_y + u_z S_z) X`,
/// `X(0) = I`, with classical fixed-step RK4, renormalising the first row
/// after every step.
pub fn propagate_numeric<F>(mp: &ModelParams, controls: F, t_final: f64, steps: usize) -> Su2Operator
where
    F: Fn(f64) -> ControlSample,
{
    let steps = steps.max(1);
    let h = t_final / steps as f64;
    let w0 = mp.omega0();
    let mut a = Complex64::new(1.0, 0.0);
    let mut b = Complex64::new(0.0, 0.0);
    for k in 0..steps {
        let t = k as f64 * h;
        let u0 = controls(t);
        let um = controls(t + 0.5 * h);
        let u1 = controls(t + h);
        let (ka1, kb1) = schroedinger_rhs(w0, &u0, a, b);
        let (ka2, kb2) = schroedinger_rhs(w0, &um, a + 0.5 * h * ka1, b + 0.5 * h * kb1);
        let (ka3, kb3) = schroedinger_rhs(w0, &um, a + 0.5 * h * ka2, b + 0.5 * h * kb2);
        let (ka4, kb4) = schroedinger_rhs(w0, &u1, a + h * ka3, b + h * kb3);
        a += h / 6.0 * (ka1 + 2.0 * ka2 + 2.0 * ka3 + ka4);
        b += h / 6.0 * (kb1 + 2.0 * kb2 + 2.0 * kb3 + kb4);
        let n = (a.norm_sqr() + b.norm_sqr()).sqrt();
        a /= n;
        b /= n;
    }
    Su2Operator::normalized(a, b)
}

fn costate_rhs(omega0: f64, u: &ControlSample, b: [f64; 3]) -> [f64; 3] {
    let w = omega0 + u.uz;
    [
        -w * b[1] + u.uy * b[2],
        w * b[0] - u.ux * b[2],
        u.ux * b[1] - u.uy * b[0],
    ]
}

/// Integrates the costate equations
/// `b_x' = -(omega0 + u_z) b_y + u_y b_z`, `b_y' = (omega0 + u_z) b_x - u_x b_z`,
/// `b_z' = u_x b_y - u_y b_x` along the given controls with RK4.
pub fn propagate_costate<F>(mp: &ModelParams, controls: F, b0: [f64; 3], t_final: f64, steps: usize) -> [f64; 3]
where
    F: Fn(f64) -> ControlSample,
{
    let steps = steps.max(1);
    let h = t_final / steps as f64;
    let w0 = mp.omega0();
    let axpy = |b: [f64; 3], k: [f64; 3], s: f64| [b[0] + s * k[0], b[1] + s * k[1], b[2] + s * k[2]];
    let mut b = b0;
    for k in 0..steps {
        let t = k as f64 * h;
        let u0 = controls(t);
        let um = controls(t + 0.5 * h);
        let u1 = controls(t + h);
        let k1 = costate_rhs(w0, &u0, b);
        let k2 = costate_rhs(w0, &um, axpy(b, k1, 0.5 * h));
        let k3 = costate_rhs(w0, &um, axpy(b, k2, 0.5 * h));
        let k4 = costate_rhs(w0, &u1, axpy(b, k3, h));
        for i in 0..3 {
            b[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
    }
    b
}
