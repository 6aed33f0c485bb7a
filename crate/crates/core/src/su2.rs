//! SU(2) arithmetic, the `(r, psi, phi)` parametrization, the disk projection
//! and regime classification.
//!
//! An element of SU(2) is stored by its first row `(a, b)`; the full matrix is
//! `[[a, b], [-conj(b), conj(a)]]`. Writing `a = r e^{i psi}` and
//! `b = sqrt(1 - r^2) e^{i phi}`, minimum times do not depend on `phi`, so the
//! reachable-set geometry lives in the closed unit disk `x + i y = a`.

use std::f64::consts::{PI, TAU};
use std::fmt;
use std::ops::Mul;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerance on `|a|^2 + |b|^2 = 1`.
pub const UNITARITY_TOL: f64 = 1e-12;

/// Relative tolerance used to decide the regime boundaries `gamma = |omega0|`
/// and `gamma = |omega0| / sqrt(3)`.
pub const REGIME_REL_TOL: f64 = 1e-9;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Wraps an angle into `[0, 2pi)`.
pub fn wrap_angle(theta: f64) -> f64 {
    let w = theta.rem_euclid(TAU);
    // rem_euclid can round up to exactly TAU for tiny negative inputs.
    if w >= TAU {
        0.0
    } else {
        w
    }
}

/// Wraps an angle into `(-pi, pi]`.
pub fn wrap_signed(theta: f64) -> f64 {
    let w = wrap_angle(theta);
    if w > PI {
        w - TAU
    } else {
        w
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Su2Operator {
    a: Complex64,
    b: Complex64,
}

impl Su2Operator {
    pub const IDENTITY: Su2Operator = Su2Operator {
        a: Complex64::new(1.0, 0.0),
        b: Complex64::new(0.0, 0.0),
    };

    /// Builds `[[a, b], [-conj(b), conj(a)]]`, rejecting non-unit rows.
    pub fn new(a: Complex64, b: Complex64) -> Result<Self> {
        let norm = a.norm_sqr() + b.norm_sqr();
        if !norm.is_finite() || (norm - 1.0).abs() > UNITARITY_TOL {
            return Err(Error::Domain(format!(
                "|a|^2 + |b|^2 = {norm}, expected 1"
            )));
        }
        Ok(Su2Operator { a, b })
    }

    /// Rescales `(a, b)` onto the unit sphere. Used by the numeric propagator
    /// after every step.
    pub fn normalized(a: Complex64, b: Complex64) -> Self {
        let n = (a.norm_sqr() + b.norm_sqr()).sqrt();
        Su2Operator { a: a / n, b: b / n }
    }

    pub fn a(&self) -> Complex64 {
        self.a
    }

    pub fn b(&self) -> Complex64 {
        self.b
    }

    pub fn matrix(&self) -> [[Complex64; 2]; 2] {
        [[self.a, self.b], [-self.b.conj(), self.a.conj()]]
    }

    pub fn dagger(&self) -> Self {
        Su2Operator {
            a: self.a.conj(),
            b: -self.b,
        }
    }

    pub fn unitarity_defect(&self) -> f64 {
        (self.a.norm_sqr() + self.b.norm_sqr() - 1.0).abs()
    }

    pub fn from_params(p: GroupParams) -> Self {
        let r = p.r();
        let a = Complex64::from_polar(r, p.psi());
        let b = Complex64::from_polar((1.0 - r * r).max(0.0).sqrt(), p.phi());
        Su2Operator { a, b }
    }

    /// Inverse of [`Su2Operator::from_params`]. At `r = 0` the diagonal phase
    /// is undefined and reported as 0; likewise the off-diagonal phase at `r = 1`.
    pub fn to_params(&self) -> GroupParams {
        let r = self.a.norm().min(1.0);
        let psi = if r <= f64::EPSILON { 0.0 } else { wrap_angle(self.a.arg()) };
        let phi = if self.b.norm() <= f64::EPSILON {
            0.0
        } else {
            wrap_angle(self.b.arg())
        };
        GroupParams {
            r,
            psi,
            phi,
        }
    }

    /// Projects onto the unit disk: `x + i y` is the upper-left entry.
    pub fn project(&self) -> DiskPoint {
        DiskPoint {
            x: self.a.re,
            y: self.a.im,
        }
    }

    /// `exp(-i (cx Sx + cy Sy + cz Sz) t)` with `S_k = sigma_k / 2`, in closed form
    /// `cos(nu t/2) I - i sin(nu t/2) (c . sigma) / nu`.
    pub fn exp(cx: f64, cy: f64, cz: f64, t: f64) -> Self {
        let nu = (cx * cx + cy * cy + cz * cz).sqrt();
        if nu == 0.0 {
            return Self::IDENTITY;
        }
        let half = 0.5 * nu * t;
        let (s, c) = half.sin_cos();
        let s = s / nu;
        Su2Operator {
            a: Complex64::new(c, -s * cz),
            b: -I * s * Complex64::new(cx, -cy),
        }
    }

    /// Frobenius norm of `self - other`.
    pub fn distance(&self, other: &Su2Operator) -> f64 {
        // Both rows of the difference have the same norm.
        (2.0 * ((self.a - other.a).norm_sqr() + (self.b - other.b).norm_sqr())).sqrt()
    }
}

impl Mul for Su2Operator {
    type Output = Su2Operator;

    fn mul(self, rhs: Su2Operator) -> Su2Operator {
        Su2Operator {
            a: self.a * rhs.a - self.b * rhs.b.conj(),
            b: self.a * rhs.b + self.b * rhs.a.conj(),
        }
    }
}

/// `(r, psi, phi)` coordinates of an SU(2) element.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GroupParams {
    r: f64,
    psi: f64,
    phi: f64,
}

impl GroupParams {
    pub fn new(r: f64, psi: f64, phi: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&r) || !psi.is_finite() || !phi.is_finite() {
            return Err(Error::Domain(format!("group parameters ({r}, {psi}, {phi})")));
        }
        Ok(GroupParams {
            r,
            psi: wrap_angle(psi),
            phi: wrap_angle(phi),
        })
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn psi(&self) -> f64 {
        self.psi
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }
}

/// A point `x + i y` of the closed unit disk. Each point stands for the family
/// of SU(2) elements sharing the upper-left entry.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiskPoint {
    pub x: f64,
    pub y: f64,
}

impl DiskPoint {
    pub const ORIGIN: DiskPoint = DiskPoint { x: 0.0, y: 0.0 };
    pub const IDENTITY: DiskPoint = DiskPoint { x: 1.0, y: 0.0 };

    pub fn new(x: f64, y: f64) -> Self {
        DiskPoint { x, y }
    }

    pub fn from_polar(r: f64, psi: f64) -> Self {
        let (s, c) = psi.sin_cos();
        DiskPoint { x: r * c, y: r * s }
    }

    pub fn from_complex(z: Complex64) -> Self {
        DiskPoint { x: z.re, y: z.im }
    }

    pub fn to_complex(self) -> Complex64 {
        Complex64::new(self.x, self.y)
    }

    pub fn r(&self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn r2(&self) -> f64 {
        self.x * self.x + self.y * self.y
    }

    /// Polar angle in `[0, 2pi)`.
    pub fn angle(&self) -> f64 {
        if self.x == 0.0 && self.y == 0.0 {
            0.0
        } else {
            wrap_angle(self.y.atan2(self.x))
        }
    }

    pub fn in_disk(&self) -> bool {
        self.r2() <= 1.0 + UNITARITY_TOL
    }

    pub fn distance(&self, other: &DiskPoint) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }

    /// Lifts the point to SU(2) with off-diagonal phase `phi`.
    pub fn lift(&self, phi: f64) -> Su2Operator {
        let r = self.r().min(1.0);
        Su2Operator {
            a: self.to_complex(),
            b: Complex64::from_polar((1.0 - r * r).max(0.0).sqrt(), phi),
        }
    }
}

impl fmt::Display for DiskPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ControlMode {
    /// `u_x, u_y, u_z` all available.
    Three,
    /// `u_z = 0`.
    Two,
}

impl fmt::Display for ControlMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ControlMode::Three => "three",
            ControlMode::Two => "two",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Regime {
    ThreeStrong,
    ThreeEqual,
    ThreeWeak,
    TwoStrong,
    TwoMiddle,
    TwoWeak,
}

impl Regime {
    pub fn mode(&self) -> ControlMode {
        match self {
            Regime::ThreeStrong | Regime::ThreeEqual | Regime::ThreeWeak => ControlMode::Three,
            _ => ControlMode::Two,
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Regime::ThreeStrong => "three-strong",
            Regime::ThreeEqual => "three-equal",
            Regime::ThreeWeak => "three-weak",
            Regime::TwoStrong => "two-strong",
            Regime::TwoMiddle => "two-middle",
            Regime::TwoWeak => "two-weak",
        })
    }
}

/// Drift `omega0` along `S_z`, control bound `gamma` on the Euclidean norm of
/// the control vector, and the number of control channels.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ModelParams {
    omega0: f64,
    gamma: f64,
    mode: ControlMode,
}

impl ModelParams {
    pub fn new(omega0: f64, gamma: f64, mode: ControlMode) -> Result<Self> {
        if !omega0.is_finite() {
            return Err(Error::InvalidModel(format!("omega0 = {omega0}")));
        }
        if !(gamma.is_finite() && gamma > 0.0) {
            return Err(Error::InvalidModel(format!("gamma = {gamma} must be > 0")));
        }
        Ok(ModelParams {
            omega0,
            gamma,
            mode,
        })
    }

    pub fn three(omega0: f64, gamma: f64) -> Result<Self> {
        Self::new(omega0, gamma, ControlMode::Three)
    }

    pub fn two(omega0: f64, gamma: f64) -> Result<Self> {
        Self::new(omega0, gamma, ControlMode::Two)
    }

    pub fn omega0(&self) -> f64 {
        self.omega0
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn mode(&self) -> ControlMode {
        self.mode
    }

    pub fn with_mode(&self, mode: ControlMode) -> Self {
        ModelParams { mode, ..*self }
    }

    pub fn regime(&self) -> Regime {
        classify_regime(self)
    }

    /// Equality tolerance for regime boundaries.
    pub fn tol_eq(&self) -> f64 {
        REGIME_REL_TOL * self.gamma.max(self.omega0.abs())
    }

    /// Upper bound on the speed of any trajectory in the disk: the operator norm
    /// of the Hamiltonian, `(|omega0| + gamma) / 2`.
    pub fn max_speed(&self) -> f64 {
        0.5 * (self.omega0.abs() + self.gamma)
    }

    pub(crate) fn require_mode(&self, expected: ControlMode) -> Result<()> {
        if self.mode != expected {
            return Err(Error::ModeMismatch {
                expected,
                found: self.mode,
            });
        }
        Ok(())
    }
}

pub fn classify_regime(p: &ModelParams) -> Regime {
    let g = p.gamma;
    let w = p.omega0.abs();
    let tol = p.tol_eq();
    match p.mode {
        ControlMode::Three => {
            if (g - w).abs() <= tol {
                Regime::ThreeEqual
            } else if g > w {
                Regime::ThreeStrong
            } else {
                Regime::ThreeWeak
            }
        }
        ControlMode::Two => {
            if g >= w - tol {
                Regime::TwoStrong
            } else if g <= w / 3f64.sqrt() + tol {
                Regime::TwoWeak
            } else {
                Regime::TwoMiddle
            }
        }
    }
}

pub fn distance(m1: &Su2Operator, m2: &Su2Operator) -> f64 {
    m1.distance(m2)
}

pub fn disk_distance(p1: &DiskPoint, p2: &DiskPoint) -> f64 {
    p1.distance(p2)
}
