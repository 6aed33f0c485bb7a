//! Minimum-time control of a two-level quantum system.
//!
//! The system evolves on SU(2) under a fixed drift `omega0 S_z` and a bounded
//! control field `|u| <= gamma`, with either three control channels or two
//! (`u_z = 0`). Operators are identified up to the phase of their
//! off-diagonal entry, which reduces every target to a point of the closed
//! unit disk.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod extremals;
pub mod frontline;
pub mod oracle;
mod roots;
pub mod solver;
pub mod su2;

pub use error::{Error, Result};
pub use su2::{ControlMode, DiskPoint, GroupParams, ModelParams, Regime, Su2Operator};
