use std::f64::consts::TAU;
use std::fmt;
use std::str::FromStr;

use su2_mintime::DiskPoint;

/// Target accepted by `solve`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Target {
    /// Disk coordinates `x,y`.
    Point(DiskPoint),
    /// `polar:r,psi`.
    Polar { r: f64, psi: f64 },
    /// `diag:lambda`, the diagonal operator with disk point `e^{i lambda}`.
    Diagonal(f64),
    Swap,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum TargetError {
    #[error("expected two comma-separated numbers, got {0:?}")]
    Pair(String),
    #[error("not a finite number: {0:?}")]
    Number(String),
    #[error("target ({x}, {y}) lies outside the unit disk")]
    OutsideDisk { x: f64, y: f64 },
    #[error("polar radius must lie in [0, 1], got {0}")]
    Radius(f64),
}

fn number(s: &str) -> Result<f64, TargetError> {
    match s.trim().parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => Err(TargetError::Number(s.trim().to_string())),
    }
}

fn pair(s: &str) -> Result<(f64, f64), TargetError> {
    let mut it = s.split(',');
    match (it.next(), it.next(), it.next()) {
        (Some(a), Some(b), None) => Ok((number(a)?, number(b)?)),
        _ => Err(TargetError::Pair(s.to_string())),
    }
}

impl FromStr for Target {
    type Err = TargetError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("swap") {
            return Ok(Target::Swap);
        }
        if let Some(rest) = s.strip_prefix("diag:") {
            return Ok(Target::Diagonal(number(rest)?));
        }
        if let Some(rest) = s.strip_prefix("polar:") {
            let (r, psi) = pair(rest)?;
            if !(0.0..=1.0).contains(&r) {
                return Err(TargetError::Radius(r));
            }
            return Ok(Target::Polar { r, psi });
        }
        let (x, y) = pair(s)?;
        if x * x + y * y > 1.0 + 1e-12 {
            return Err(TargetError::OutsideDisk { x, y });
        }
        Ok(Target::Point(DiskPoint::new(x, y)))
    }
}

impl Target {
    pub fn point(&self) -> DiskPoint {
        match *self {
            Target::Point(p) => p,
            Target::Polar { r, psi } => DiskPoint::from_polar(r, psi),
            Target::Diagonal(lambda) => DiskPoint::from_polar(1.0, lambda.rem_euclid(TAU)),
            Target::Swap => DiskPoint::ORIGIN,
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Target::Point(p) => write!(f, "{},{}", p.x, p.y),
            Target::Polar { r, psi } => write!(f, "polar:{r},{psi}"),
            Target::Diagonal(l) => write!(f, "diag:{l}"),
            Target::Swap => f.write_str("swap"),
        }
    }
}
