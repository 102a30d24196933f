//! Exhaustive and sampled verification of quantitative manipulation bounds
//! for social choice functions on rankings.
//!
//! Small instances are enumerated with exact rational arithmetic; larger ones
//! are estimated by seeded Monte Carlo whose results do not depend on the
//! number of worker threads.

pub mod cli;
pub mod error;
pub mod exact;
pub mod influence;
pub mod manipulation;
pub mod paths;
pub mod ranking;
pub mod sampling;
pub mod scf;

pub use error::{Error, Result};
pub use ranking::{AdjTransposition, Alt, Profile, Ranking};
pub use sampling::{Estimate, Mode};
pub use scf::{Scf, TabularScf};
