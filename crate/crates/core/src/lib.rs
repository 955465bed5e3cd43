//! Path-information erasure in a symmetric two-path interferometer whose
//! which-path marker is a qudit prepared in a pure state.
//!
//! The crate computes fringe visibility and distinguishability, plays the
//! path- and phase-guessing games with Shannon-entropy scoring, and checks
//! that the which-phase information recovered by the best erasing
//! measurement equals the which-path information it destroys. The
//! [`cavity`] module maps an atom–cavity Michelson interferometer onto the
//! same canonical parameters.

pub mod cavity;
pub mod discrimination;
pub mod dist;
pub mod error;
pub mod games;
pub mod interferometer;
pub mod optimize;
pub mod qstate;

pub use error::{Error, Result};
pub use num_complex::Complex64;
