//! Two-state linear signal model.
//!
//! Nature is in one of two states, `A` or `B`. A juror of ability `a` in
//! `[0, 1]` observes a private signal `s` in `[-1, +1]` drawn with density
//! `(1 + a·s)/2` when Nature is `A` and `(1 - a·s)/2` when Nature is `B`, so
//! positive signals favour `A` and ability scales how informative the signal
//! is. An ability-0 signal is uniform noise; at ability 1 the density is the
//! steepest line that is still a density on the interval.
//!
//! The module provides the densities and CDFs, the single-signal Bayes
//! update, the honest voting threshold, and inverse-CDF sampling for the
//! simulator. Everything here is a pure function.

use crate::error::Error;

/// The two states of Nature a jury votes between.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NatureState {
    A,
    B,
}

impl NatureState {
    pub fn opposite(self) -> Self {
        match self {
            NatureState::A => NatureState::B,
            NatureState::B => NatureState::A,
        }
    }
}

/// Juror ability in `[0, 1]`: the slope of the signal density, and a linear
/// proxy for the probability `1/2 + a/4` of a correct sign.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Ability(f64);

impl Ability {
    pub fn new(value: f64) -> Result<Self, Error> {
        if (0.0..=1.0).contains(&value) {
            Ok(Ability(value))
        } else {
            Err(Error::AbilityRange(value))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// Private evidence in `[-1, +1]`; positive values favour state `A`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Signal(f64);

impl Signal {
    pub fn new(value: f64) -> Result<Self, Error> {
        if (-1.0..=1.0).contains(&value) {
            Ok(Signal(value))
        } else {
            Err(Error::SignalRange(value))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub(crate) fn new_unchecked(value: f64) -> Self {
        debug_assert!((-1.0..=1.0).contains(&value));
        Signal(value)
    }
}

/// Probability that Nature is `A`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Belief(f64);

impl Belief {
    pub const NEUTRAL: Belief = Belief(0.5);

    pub fn new(prob_a: f64) -> Result<Self, Error> {
        if (0.0..=1.0).contains(&prob_a) {
            Ok(Belief(prob_a))
        } else {
            Err(Error::BeliefRange(prob_a))
        }
    }

    pub fn prob_a(self) -> f64 {
        self.0
    }

    pub(crate) fn new_unchecked(prob_a: f64) -> Self {
        debug_assert!((0.0..=1.0).contains(&prob_a));
        Belief(prob_a)
    }
}

// Raw f64 kernels shared with the simulator's hot loop.

#[inline]
pub(crate) fn density_a(a: f64, s: f64) -> f64 {
    (1.0 + a * s) / 2.0
}

#[inline]
pub(crate) fn density_b(a: f64, s: f64) -> f64 {
    (1.0 - a * s) / 2.0
}

#[inline]
pub(crate) fn cdf_a(a: f64, s: f64) -> f64 {
    (s + 1.0) * (a * s - a + 2.0) / 4.0
}

#[inline]
pub(crate) fn cdf_b(a: f64, s: f64) -> f64 {
    (s + 1.0) * (a - a * s + 2.0) / 4.0
}

#[inline]
pub(crate) fn posterior_raw(theta: f64, a: f64, s: f64) -> f64 {
    let denom = 2.0 * a * s * theta - a * s + 1.0;
    if denom <= 0.0 {
        // Only reachable from a prior certainty contradicted by a certain
        // signal; keep the absorbed prior.
        return theta;
    }
    theta * (1.0 + a * s) / denom
}

/// Honest voting threshold of an ability-`a` juror holding prior `theta`:
/// the signal at which the posterior is exactly 1/2. Saturates at -1 (always
/// vote `A`) or +1 (always vote `B`) when the prior is too strong for the
/// signal to overturn, which is the herding case. `a = 0` takes the limit
/// from above.
#[inline]
pub(crate) fn threshold_raw(theta: f64, a: f64) -> f64 {
    if theta == 0.5 {
        0.0
    } else if theta > 0.5 {
        if a < 2.0 * theta - 1.0 {
            -1.0
        } else {
            ((1.0 - 2.0 * theta) / a).max(-1.0)
        }
    } else if a < 1.0 - 2.0 * theta {
        1.0
    } else {
        ((1.0 - 2.0 * theta) / a).min(1.0)
    }
}

#[inline]
pub(crate) fn sample_a_raw(a: f64, u: f64) -> f64 {
    debug_assert!((0.0..1.0).contains(&u));
    // Root of F_a(s) = u, written so the a -> 0 limit is exact.
    let disc = (1.0 - a) * (1.0 - a) + 4.0 * a * u;
    let s = (a + 4.0 * u - 2.0) / (1.0 + disc.sqrt());
    s.clamp(-1.0, 1.0)
}

#[inline]
pub(crate) fn sample_b_raw(a: f64, u: f64) -> f64 {
    // G_a(s) = 1 - F_a(-s), so invert F at 1-u and negate.
    -sample_a_raw(a, 1.0 - u)
}

/// Signal density under the given state: `(1 ± a·s)/2`.
pub fn density(state: NatureState, a: Ability, s: Signal) -> f64 {
    match state {
        NatureState::A => density_a(a.value(), s.value()),
        NatureState::B => density_b(a.value(), s.value()),
    }
}

/// Cumulative signal distribution under the given state.
pub fn cdf(state: NatureState, a: Ability, s: Signal) -> f64 {
    match state {
        NatureState::A => cdf_a(a.value(), s.value()),
        NatureState::B => cdf_b(a.value(), s.value()),
    }
}

/// Bayes update of the belief in `A` after observing one signal.
pub fn posterior_from_signal(theta: Belief, a: Ability, s: Signal) -> Belief {
    Belief::new_unchecked(posterior_raw(theta.prob_a(), a.value(), s.value()))
}

/// Probability of `A` given that an ability-`a` signal landed at or above
/// `tau`, under the neutral prior: `1/2 + (1 + tau)·a/4`.
pub fn prob_a_given_signal_above(tau: Signal, a: Ability) -> Result<f64, Error> {
    if tau.value() >= 1.0 {
        return Err(Error::DegenerateCondition);
    }
    Ok(0.5 + (1.0 + tau.value()) * a.value() / 4.0)
}

/// Honest voting threshold; see [`threshold_raw`] for the case split.
pub fn honest_threshold(theta: Belief, a: Ability) -> Signal {
    Signal::new_unchecked(threshold_raw(theta.prob_a(), a.value()))
}

/// Inverse-CDF sampling: maps a uniform `u` in `[0, 1)` to the signal with
/// `cdf(state, a, s) = u`. Closed-form quadratic root, no rejection, so a
/// fixed uniform stream reproduces the same signals.
pub fn sample_signal(state: NatureState, a: Ability, u: f64) -> Signal {
    assert!((0.0..1.0).contains(&u), "uniform draw {u} outside [0, 1)");
    let s = match state {
        NatureState::A => sample_a_raw(a.value(), u),
        NatureState::B => sample_b_raw(a.value(), u),
    };
    Signal::new_unchecked(s)
}
