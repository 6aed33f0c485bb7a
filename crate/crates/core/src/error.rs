use thiserror::Error;

use crate::su2::{ControlMode, Regime};

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid model parameters: {0}")]
    InvalidModel(String),

    #[error("operation requires {expected:?} mode, model is in {found:?} mode")]
    ModeMismatch {
        expected: ControlMode,
        found: ControlMode,
    },

    #[error("operation requires regime {expected}, model is in {found:?}")]
    RegimeMismatch {
        expected: &'static str,
        found: Regime,
    },

    #[error("target ({x}, {y}) lies outside the unit disk")]
    OutsideDisk { x: f64, y: f64 },

    #[error("argument outside the domain: {0}")]
    Domain(String),

    /// |alpha| = 1 leaves the transverse costate at zero, so the control law
    /// cannot be recovered from the costate direction.
    #[error("degenerate costate (transverse component vanishes)")]
    DegenerateCostate,

    /// With no drift the two-control critical trajectory collapses onto the
    /// identity and its frequency diverges.
    #[error("critical trajectory degenerates to the initial point (omega0 = 0)")]
    DegenerateCritical,

    #[error("no root found: {0}")]
    NoRoot(String),

    #[error("oracle inconsistency: {0}")]
    Inconsistent(String),
}
