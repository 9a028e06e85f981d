//! Sequential-jury voting model.
//!
//! An odd jury votes between two equiprobable states of Nature; each juror
//! holds a private signal in `[-1, +1]` whose informativeness scales with an
//! ability in `[0, 1]`, votes honestly given the public voting record, and
//! the majority verdict wins. Reliability — the probability the verdict
//! matches Nature — depends on the voting order, and this crate provides:
//!
//! - [`signal`]: the linear signal model (densities, Bayes updates, honest
//!   thresholds, inverse-CDF sampling);
//! - [`trio`]: exact three-juror reliabilities for sequential, simultaneous
//!   and jointly optimised (strategic) voting, herding-region analysis,
//!   homogeneity/heterogeneity indices and the fixed-mean diversity curve;
//! - [`duo`]: two jurors under the unanimity rule;
//! - [`sim`]: a general-size Monte Carlo simulator with a splittable,
//!   thread-count-independent RNG, ordering constructors (SO/AO/ADO) and
//!   paired ordering studies;
//! - [`deliberation`]: full-information (signal-revealing) voting and the
//!   binary-signal warm-up model;
//! - [`boundary`]: sequential-vs-simultaneous comparison maps;
//! - [`verify`]: a catalog of named numerical checks covering every claim
//!   the crate's closed forms rest on, with machine-readable reports.

pub mod boundary;
pub mod deliberation;
pub mod duo;
pub mod error;
pub mod signal;
pub mod sim;
pub mod trio;
pub mod verify;

pub use error::Error;
pub use signal::{Ability, Belief, NatureState, Signal};

