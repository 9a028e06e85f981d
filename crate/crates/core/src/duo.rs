//! Two jurors voting sequentially under the unanimity rule: one alternative
//! (`A`) is favoured, and the verdict goes to `A` unless both vote `B`. The
//! first voter deciding `A` ends the vote; otherwise the second voter sees
//! the `B` vote, updates, and decides.
//!
//! This is the reduction target for the last-two-voters result on odd
//! juries: once the first `n - 2` majority votes leave one alternative a
//! single vote ahead, the remaining two jurors face exactly this problem.

use crate::error::Error;
use crate::signal::{self, Ability, Belief, Signal};

/// Prior on the favoured alternative plus the two abilities in voting order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DuoSetting {
    pub theta: Belief,
    pub first: Ability,
    pub second: Ability,
}

impl DuoSetting {
    pub fn new(theta: Belief, first: Ability, second: Ability) -> Self {
        DuoSetting { theta, first, second }
    }

    pub fn from_values(theta: f64, first: f64, second: f64) -> Result<Self, Error> {
        Ok(DuoSetting::new(
            Belief::new(theta)?,
            Ability::new(first)?,
            Ability::new(second)?,
        ))
    }
}

/// Second-voter state reached only after a first vote for `B`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DuoTail {
    /// Posterior on `A` given the first voter went `B`.
    pub belief_after_b: Belief,
    /// Honest threshold of the second voter at that posterior.
    pub threshold: Signal,
}

/// Honest thresholds of the duo. `tail` is `None` when the first voter herds
/// to the favoured alternative (threshold -1), which makes a `B` vote a
/// probability-zero event and the second voter unreachable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DuoThresholds {
    pub first_threshold: Signal,
    pub tail: Option<DuoTail>,
}

pub fn duo_thresholds(setting: &DuoSetting) -> DuoThresholds {
    let theta = setting.theta.prob_a();
    let (b, c) = (setting.first.value(), setting.second.value());
    let ybar = signal::threshold_raw(theta, b);
    if ybar <= -1.0 {
        return DuoThresholds {
            first_threshold: Signal::new_unchecked(-1.0),
            tail: None,
        };
    }
    let fb = signal::cdf_a(b, ybar);
    let gb = signal::cdf_b(b, ybar);
    let denom = theta * fb + (1.0 - theta) * gb;
    let theta_bar = if denom > 0.0 { theta * fb / denom } else { theta };
    DuoThresholds {
        first_threshold: Signal::new_unchecked(ybar),
        tail: Some(DuoTail {
            belief_after_b: Belief::new_unchecked(theta_bar),
            threshold: Signal::new_unchecked(signal::threshold_raw(theta_bar, c)),
        }),
    }
}

pub(crate) fn duo_reliability_raw(theta: f64, b: f64, c: f64) -> f64 {
    let ybar = signal::threshold_raw(theta, b);
    if ybar <= -1.0 {
        // First voter always votes A: the verdict is A, right iff Nature is.
        return theta;
    }
    let fb = signal::cdf_a(b, ybar);
    let gb = signal::cdf_b(b, ybar);
    let denom = theta * fb + (1.0 - theta) * gb;
    let theta_bar = if denom > 0.0 { theta * fb / denom } else { theta };
    let zbar = signal::threshold_raw(theta_bar, c);
    let q_a = (1.0 - fb) + fb * (1.0 - signal::cdf_a(c, zbar));
    let q_b = gb * signal::cdf_b(c, zbar);
    theta * q_a + (1.0 - theta) * q_b
}

/// Probability the unanimity verdict matches Nature.
pub fn duo_reliability(setting: &DuoSetting) -> f64 {
    duo_reliability_raw(
        setting.theta.prob_a(),
        setting.first.value(),
        setting.second.value(),
    )
}
