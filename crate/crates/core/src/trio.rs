//! Exact three-juror machinery under sequential majority voting with a
//! neutral prior: voting thresholds after each history, herding-region
//! classification, the piecewise closed-form reliability, simultaneous and
//! strategic voting benchmarks, homogeneity/heterogeneity indices and the
//! fixed-mean diversity curve.
//!
//! Conventions: a [`TrioOrder`] lists abilities in voting-position order. The
//! first voter's honest threshold under the neutral prior is 0, so the
//! remaining thresholds depend only on the abilities. Region boundaries are
//! closed exactly as defined (`b <= a/2` herds the second voter, `c <= rho`
//! herds the third); reliability is continuous across them, so the boundary
//! choice affects tags only, never values.

use crate::error::Error;
use crate::signal::{self, Ability, Belief, NatureState, Signal};

/// Abilities of a three-member jury in voting-position order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrioOrder {
    first: Ability,
    second: Ability,
    third: Ability,
}

impl TrioOrder {
    pub fn new(first: Ability, second: Ability, third: Ability) -> Self {
        TrioOrder { first, second, third }
    }

    /// Convenience constructor from raw values.
    pub fn from_values(a: f64, b: f64, c: f64) -> Result<Self, Error> {
        Ok(TrioOrder::new(Ability::new(a)?, Ability::new(b)?, Ability::new(c)?))
    }

    pub fn first(&self) -> Ability {
        self.first
    }

    pub fn second(&self) -> Ability {
        self.second
    }

    pub fn third(&self) -> Ability {
        self.third
    }

    pub(crate) fn raw(&self) -> (f64, f64, f64) {
        (self.first.value(), self.second.value(), self.third.value())
    }
}

/// Which voters herd for a given voting order. The three tags partition the
/// ability cube.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegionTag {
    /// The second voter copies the first vote (`b <= a/2`); the third voter
    /// never gets a say.
    SecondHerds,
    /// The second voter looks at their signal but the third copies the
    /// standing majority (`c <= rho(a, b)`).
    ThirdHerds,
    /// Nobody herds.
    NoHerding,
}

/// The two undecided vote histories a third voter can face.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VoteHistory {
    AB,
    BA,
}

/// A full strategic threshold profile: the first voter's threshold, the
/// second voter's thresholds after an `A` or `B` first vote, and the third
/// voter's thresholds after split histories `AB` and `BA`. (Histories `AA`
/// and `BB` already decide the verdict.)
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StrategicProfile {
    pub first: Signal,
    pub second_after_a: Signal,
    pub second_after_b: Signal,
    pub third_after_ab: Signal,
    pub third_after_ba: Signal,
}

impl StrategicProfile {
    pub fn from_values(x: f64, y1: f64, y2: f64, z1: f64, z2: f64) -> Result<Self, Error> {
        Ok(StrategicProfile {
            first: Signal::new(x)?,
            second_after_a: Signal::new(y1)?,
            second_after_b: Signal::new(y2)?,
            third_after_ab: Signal::new(z1)?,
            third_after_ba: Signal::new(z2)?,
        })
    }

    /// The honest thresholds for this voting order: a feasible profile, so
    /// strategic reliability can never fall below honest reliability.
    pub fn honest(trio: TrioOrder) -> Self {
        let (a, b, c) = trio.raw();
        let y = second_threshold_raw(a, b);
        // When the second voter herds the split histories are unreachable;
        // keep the herding convention for the third threshold.
        let z = if b <= a / 2.0 { 1.0 } else { third_threshold_raw(a, b, c) };
        StrategicProfile {
            first: Signal::new_unchecked(0.0),
            second_after_a: Signal::new_unchecked(y),
            second_after_b: Signal::new_unchecked(-y),
            third_after_ab: Signal::new_unchecked(z),
            third_after_ba: Signal::new_unchecked(-z),
        }
    }

    /// The label-swapped profile `(-x, -y2, -y1, -z2, -z1)`, which decides
    /// `(B, A)` exactly as this one decides `(A, B)`.
    pub fn mirrored(&self) -> Self {
        StrategicProfile {
            first: Signal::new_unchecked(-self.first.value()),
            second_after_a: Signal::new_unchecked(-self.second_after_b.value()),
            second_after_b: Signal::new_unchecked(-self.second_after_a.value()),
            third_after_ab: Signal::new_unchecked(-self.third_after_ba.value()),
            third_after_ba: Signal::new_unchecked(-self.third_after_ab.value()),
        }
    }

    pub(crate) fn raw(&self) -> [f64; 5] {
        [
            self.first.value(),
            self.second_after_a.value(),
            self.second_after_b.value(),
            self.third_after_ab.value(),
            self.third_after_ba.value(),
        ]
    }
}

/// Homogeneity (`<= 1`) and heterogeneity (`>= 1`, possibly infinite)
/// indices of a sorted ability triple: the worst adjacent ability ratio and
/// its reciprocal counterpart.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AbilityIndices {
    pub homogeneity: f64,
    pub heterogeneity: f64,
}

// --- thresholds and regions ---------------------------------------------

/// Posterior on `A` after the first voter (ability `a`, threshold 0) votes:
/// `(2 + a)/4` after an `A` vote, `(2 - a)/4` after a `B` vote.
#[inline]
pub(crate) fn belief_after_first_raw(a: f64, vote: NatureState) -> f64 {
    match vote {
        NatureState::A => (2.0 + a) / 4.0,
        NatureState::B => (2.0 - a) / 4.0,
    }
}

/// Public belief held by the second voter given the first vote.
pub fn belief_after_first(a: Ability, vote: NatureState) -> Belief {
    Belief::new_unchecked(belief_after_first_raw(a.value(), vote))
}

/// Second voter's honest threshold after a first vote for `A`:
/// `-1` when `b <= a/2` (herd), else `-a/(2b)`.
#[inline]
pub(crate) fn second_threshold_raw(a: f64, b: f64) -> f64 {
    if b <= a / 2.0 {
        -1.0
    } else {
        -a / (2.0 * b)
    }
}

/// Herding cutoff for the third voter: reliability-relevant only when the
/// second voter does not herd (`b > a/2`), where it is positive.
#[inline]
pub(crate) fn herding_cutoff_raw(a: f64, b: f64) -> f64 {
    2.0 * (2.0 * b - a) / (8.0 - a * a - 2.0 * a * b)
}

/// Third voter's honest threshold after the history `A`, `B`:
/// `1` when `c <= rho(a, b)` (herd with the last vote), else `rho(a, b)/c`.
#[inline]
pub(crate) fn third_threshold_raw(a: f64, b: f64, c: f64) -> f64 {
    let rho = herding_cutoff_raw(a, b);
    if c <= rho {
        1.0
    } else {
        rho / c
    }
}

/// Honest threshold of the second voter given the first vote.
pub fn second_threshold(a: Ability, b: Ability, first_vote: NatureState) -> Signal {
    let y = second_threshold_raw(a.value(), b.value());
    Signal::new_unchecked(match first_vote {
        NatureState::A => y,
        NatureState::B => -y,
    })
}

/// The third-voter herding cutoff. Errors when the second voter herds
/// (`b <= a/2`), because the third voter is then never reached.
pub fn herding_cutoff(a: Ability, b: Ability) -> Result<f64, Error> {
    if b.value() <= a.value() / 2.0 {
        return Err(Error::SecondVoterHerds { a: a.value(), b: b.value() });
    }
    Ok(herding_cutoff_raw(a.value(), b.value()))
}

/// Honest threshold of the third voter after a split history.
pub fn third_threshold(trio: TrioOrder, history: VoteHistory) -> Result<Signal, Error> {
    let (a, b, c) = trio.raw();
    if b <= a / 2.0 {
        return Err(Error::SecondVoterHerds { a, b });
    }
    let z = third_threshold_raw(a, b, c);
    Ok(Signal::new_unchecked(match history {
        VoteHistory::AB => z,
        VoteHistory::BA => -z,
    }))
}

/// Partition of the ability cube by who herds.
pub fn classify_region(trio: TrioOrder) -> RegionTag {
    let (a, b, c) = trio.raw();
    if b <= a / 2.0 {
        RegionTag::SecondHerds
    } else if c <= herding_cutoff_raw(a, b) {
        RegionTag::ThirdHerds
    } else {
        RegionTag::NoHerding
    }
}

// --- sequential reliability ----------------------------------------------

/// Reliability when the second voter herds: the first vote decides.
#[inline]
pub(crate) fn q_second_herds(a: f64) -> f64 {
    (2.0 + a) / 4.0
}

/// Reliability when only the third voter herds.
#[inline]
pub(crate) fn q_third_herds(a: f64, b: f64) -> f64 {
    (a * a + 4.0 * b * (b + 2.0)) / (16.0 * b)
}

/// Reliability when nobody herds.
#[inline]
pub(crate) fn q_no_herding(a: f64, b: f64, c: f64) -> f64 {
    let d = 8.0 - a * a - 2.0 * a * b;
    let t = 2.0 * b - a;
    let num = 4.0 * t * t * t + 4.0 * d * (16.0 * b + (a + 2.0 * b) * (a + 2.0 * b)) * c
        + t * d * d * c * c;
    num / (128.0 * b * d * c)
}

#[inline]
pub(crate) fn reliability_sequential_raw(a: f64, b: f64, c: f64) -> f64 {
    if b <= a / 2.0 {
        q_second_herds(a)
    } else if c <= herding_cutoff_raw(a, b) {
        q_third_herds(a, b)
    } else {
        q_no_herding(a, b, c)
    }
}

/// Probability that the majority verdict of honest sequential voting in this
/// order matches the state of Nature, under the neutral prior.
pub fn reliability_sequential(trio: TrioOrder) -> f64 {
    let (a, b, c) = trio.raw();
    reliability_sequential_raw(a, b, c)
}

// --- simultaneous voting ---------------------------------------------------

/// Reliability of simultaneous majority voting at arbitrary thresholds.
pub(crate) fn simultaneous_value(theta: f64, a: f64, b: f64, c: f64, x: f64, y: f64, z: f64) -> f64 {
    let (fa, fb, fc) = (signal::cdf_a(a, x), signal::cdf_a(b, y), signal::cdf_a(c, z));
    let (ga, gb, gc) = (signal::cdf_b(a, x), signal::cdf_b(b, y), signal::cdf_b(c, z));
    let when_a =
        (1.0 - fa) * (1.0 - fb) + (1.0 - fa) * fb * (1.0 - fc) + fa * (1.0 - fb) * (1.0 - fc);
    let when_b = ga * gb + ga * (1.0 - gb) * gc + (1.0 - ga) * gb * gc;
    theta * when_a + (1.0 - theta) * when_b
}

#[inline]
pub(crate) fn reliability_simultaneous_raw(theta: f64, a: f64, b: f64, c: f64) -> f64 {
    let x = signal::threshold_raw(theta, a);
    let y = signal::threshold_raw(theta, b);
    let z = signal::threshold_raw(theta, c);
    simultaneous_value(theta, a, b, c, x, y, z)
}

/// Reliability of simultaneous (secret-ballot) honest voting: every juror
/// uses their single-signal threshold for the prior `theta`.
pub fn reliability_simultaneous(theta: Belief, a: Ability, b: Ability, c: Ability) -> f64 {
    reliability_simultaneous_raw(theta.prob_a(), a.value(), b.value(), c.value())
}

// --- strategic voting -------------------------------------------------------

/// Reliability of sequential majority voting at an arbitrary threshold
/// profile. Honest voting is the special case of the honest profile;
/// strategic voting maximises over profiles.
pub(crate) fn strategic_value(theta: f64, a: f64, b: f64, c: f64, p: &[f64; 5]) -> f64 {
    let [x, y1, y2, z1, z2] = *p;
    let fa = signal::cdf_a(a, x);
    let (fb1, fb2) = (signal::cdf_a(b, y1), signal::cdf_a(b, y2));
    let (fc1, fc2) = (signal::cdf_a(c, z1), signal::cdf_a(c, z2));
    let ga = signal::cdf_b(a, x);
    let (gb1, gb2) = (signal::cdf_b(b, y1), signal::cdf_b(b, y2));
    let (gc1, gc2) = (signal::cdf_b(c, z1), signal::cdf_b(c, z2));
    // Verdict A when Nature is A: patterns AA*, ABA, BAA.
    let when_a = (1.0 - fa) * (1.0 - fb1)
        + (1.0 - fa) * fb1 * (1.0 - fc1)
        + fa * (1.0 - fb2) * (1.0 - fc2);
    // Verdict B when Nature is B: patterns BB*, ABB, BAB.
    let when_b = ga * gb2 + (1.0 - ga) * gb1 * gc1 + ga * (1.0 - gb2) * gc2;
    theta * when_a + (1.0 - theta) * when_b
}

/// Reliability of the jury when the three voters commit to the given
/// threshold profile.
pub fn reliability_strategic(
    theta: Belief,
    a: Ability,
    b: Ability,
    c: Ability,
    profile: &StrategicProfile,
) -> f64 {
    strategic_value(theta.prob_a(), a.value(), b.value(), c.value(), &profile.raw())
}

const ASCENT_TOL: f64 = 1e-12;
const ASCENT_MAX_SWEEPS: usize = 500;

/// Maximise a quadratic slice over `[-1, 1]` given values at -1, 0, +1.
fn quadratic_slice_argmax(f_m1: f64, f_0: f64, f_p1: f64) -> (f64, f64) {
    let alpha = 0.5 * (f_p1 + f_m1) - f_0;
    let beta = 0.5 * (f_p1 - f_m1);
    let mut best = (-1.0, f_m1);
    if f_p1 > best.1 {
        best = (1.0, f_p1);
    }
    if f_0 > best.1 {
        best = (0.0, f_0);
    }
    if alpha < 0.0 {
        let v = (-beta / (2.0 * alpha)).clamp(-1.0, 1.0);
        let fv = (alpha * v + beta) * v + f_0;
        if fv > best.1 {
            best = (v, fv);
        }
    }
    best
}

fn coordinate_ascent(
    objective: &impl Fn(&[f64; 4]) -> f64,
    start: [f64; 4],
) -> ([f64; 4], f64) {
    let mut point = start;
    let mut value = objective(&point);
    for _ in 0..ASCENT_MAX_SWEEPS {
        let before = value;
        for k in 0..4 {
            let saved = point[k];
            let eval = |v: f64, point: &mut [f64; 4]| {
                point[k] = v;
                objective(point)
            };
            let f_m1 = eval(-1.0, &mut point);
            let f_0 = eval(0.0, &mut point);
            let f_p1 = eval(1.0, &mut point);
            let (v, fv) = quadratic_slice_argmax(f_m1, f_0, f_p1);
            if fv > value {
                point[k] = v;
                value = fv;
            } else {
                point[k] = saved;
            }
        }
        if value - before < ASCENT_TOL {
            break;
        }
    }
    (point, value)
}

/// Best reliability the jury can reach by jointly committing to thresholds,
/// under the neutral prior. By the label-swap symmetry the first voter's
/// threshold can be fixed at 0, and the objective is then quadratic in each
/// remaining threshold, so each coordinate slice is maximised in closed form.
/// A deterministic multi-start (a 9-point grid per second/third-voter
/// coordinate, mirrored across the symmetry, plus the honest and
/// all-zero profiles) guards against local maxima and also guarantees the
/// result is at least the honest sequential and simultaneous values.
pub fn optimize_strategic(
    theta: Belief,
    a: Ability,
    b: Ability,
    c: Ability,
) -> Result<(f64, StrategicProfile), Error> {
    if theta.prob_a() != 0.5 {
        return Err(Error::UnsupportedPrior(theta.prob_a()));
    }
    let (a, b, c) = (a.value(), b.value(), c.value());
    let objective = |p: &[f64; 4]| strategic_value(0.5, a, b, c, &[0.0, p[0], p[1], p[2], p[3]]);

    let honest = StrategicProfile::honest(TrioOrder::from_values(a, b, c).expect("validated"));
    let h = honest.raw();
    let mut starts: Vec<[f64; 4]> = vec![[h[1], h[2], h[3], h[4]], [0.0; 4]];
    let grid: Vec<f64> = (0..9).map(|k| -1.0 + 0.25 * k as f64).collect();
    for &y in &grid {
        for &z in &grid {
            starts.push([y, -y, z, -z]);
        }
    }

    let mut best_point = starts[0];
    let mut best_value = f64::NEG_INFINITY;
    for start in starts {
        let (point, value) = coordinate_ascent(&objective, start);
        if value > best_value {
            best_value = value;
            best_point = point;
        }
    }

    let profile = StrategicProfile {
        first: Signal::new_unchecked(0.0),
        second_after_a: Signal::new_unchecked(best_point[0]),
        second_after_b: Signal::new_unchecked(best_point[1]),
        third_after_ab: Signal::new_unchecked(best_point[2]),
        third_after_ba: Signal::new_unchecked(best_point[3]),
    };
    Ok((best_value, profile))
}

// --- indices and diversity ---------------------------------------------------

/// Homogeneity and heterogeneity indices of a sorted triple `a <= b <= c`.
/// Ratios with a zero denominator are skipped; an all-zero triple has both
/// indices 1, and `(0, 0, c)` with `c > 0` has infinite heterogeneity.
pub fn ability_indices(a: Ability, b: Ability, c: Ability) -> Result<AbilityIndices, Error> {
    let (a, b, c) = (a.value(), b.value(), c.value());
    if !(a <= b && b <= c) {
        return Err(Error::UnsortedTriple(a, b, c));
    }
    Ok(AbilityIndices {
        homogeneity: homogeneity_raw(a, b, c),
        heterogeneity: heterogeneity_raw(a, b, c),
    })
}

pub(crate) fn homogeneity_raw(a: f64, b: f64, c: f64) -> f64 {
    let mut min = f64::INFINITY;
    if b > 0.0 {
        min = min.min(a / b);
    }
    if c > 0.0 {
        min = min.min(b / c);
    }
    if min.is_infinite() {
        1.0
    } else {
        min
    }
}

pub(crate) fn heterogeneity_raw(a: f64, b: f64, c: f64) -> f64 {
    let mut min = f64::INFINITY;
    if a > 0.0 {
        min = min.min(b / a);
    }
    if b > 0.0 {
        min = min.min(c / b);
    }
    if min.is_infinite() && c == 0.0 {
        1.0
    } else {
        min
    }
}

/// The unique ability triple with mean `m` and both adjacent ratios equal to
/// `mu`, returned sorted ascending.
pub fn diversity_abilities(m: f64, mu: f64) -> (f64, f64, f64) {
    let t = mu * mu + mu + 1.0;
    (3.0 * m / t, 3.0 * m * mu / t, 3.0 * m * mu * mu / t)
}

/// Indicator polynomial for the third voter herding in the optimal order of
/// the diversity parametrisation: nonnegative exactly when the least-able
/// juror herds.
pub(crate) fn diversity_herd_indicator(m: f64, mu: f64) -> f64 {
    let t = mu * mu + mu + 1.0;
    2.0 * t * t * (2.0 * mu * mu - mu - 4.0) + 9.0 * (2.0 * mu + 1.0) * mu * mu * m * m
}

/// Herding branch of the diversity curve.
pub(crate) fn diversity_q_herding(m: f64, mu: f64) -> f64 {
    let t = mu * mu + mu + 1.0;
    3.0 * (4.0 * mu * mu + 1.0) * m / (16.0 * t) + 0.5
}

pub(crate) fn diversity_q_num(m: f64, mu: f64) -> f64 {
    let t = 1.0 + mu + mu * mu;
    let t2 = t * t;
    let t3 = t2 * t;
    let t4 = t2 * t2;
    let t5 = t4 * t;
    243.0 * m.powi(5) * mu.powi(4) * (2.0 * mu - 1.0) * (1.0 + 2.0 * mu) * (1.0 + 2.0 * mu)
        - 576.0 * m * m * mu.powi(3) * (1.0 + 2.0 * mu) * t3
        + 512.0 * mu * t5
        - 108.0
            * m.powi(3)
            * mu
            * mu
            * t2
            * (-4.0 + mu + 22.0 * mu * mu + 12.0 * mu.powi(3) + 8.0 * mu.powi(4))
        + 12.0
            * m
            * t4
            * (-16.0 + mu * (40.0 + mu * (31.0 + 2.0 * mu * (19.0 - 6.0 * mu + 4.0 * mu * mu))))
}

pub(crate) fn diversity_q_den(m: f64, mu: f64) -> f64 {
    let t = 1.0 + mu + mu * mu;
    128.0
        * mu
        * t.powi(3)
        * (8.0 + mu * (16.0 + mu * (24.0 + 8.0 * mu * (2.0 + mu) - 9.0 * m * m * (1.0 + 2.0 * mu))))
}

/// Reliability of the optimally ordered jury with mean ability `m` and
/// heterogeneity index `mu`, evaluated through the two-branch closed form.
/// Rejects parameter pairs whose top ability would exceed 1.
pub fn diversity_reliability(m: f64, mu: f64) -> Result<f64, Error> {
    if !(m > 0.0 && m < 1.0) || !(mu >= 1.0) {
        return Err(Error::DiversityDomain { m, mu });
    }
    let (_, _, top) = diversity_abilities(m, mu);
    if top > 1.0 {
        return Err(Error::DiversityDomain { m, mu });
    }
    if diversity_herd_indicator(m, mu) >= 0.0 {
        Ok(diversity_q_herding(m, mu))
    } else {
        Ok(diversity_q_num(m, mu) / diversity_q_den(m, mu))
    }
}
