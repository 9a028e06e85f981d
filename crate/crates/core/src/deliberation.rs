//! Full-information voting variants.
//!
//! Sequential deliberation: each juror reveals their signal along with their
//! vote, so the juror in position `m` holds the first `m` signal-ability
//! pairs and votes for the state the pooled posterior favours. Also here:
//! the per-juror correct-vote probability, and the binary-signal warm-up
//! model in which three jurors receive correct binary signals with known
//! probabilities and the question is when honest sequential voting recovers
//! the full-information solution (FIS).

use crate::error::Error;
use crate::signal::{self, Ability, Belief, NatureState, Signal};
use crate::sim::JuryOrdering;

/// One juror's private evidence with the ability that produced it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SignalAbilityPair {
    pub signal: Signal,
    pub ability: Ability,
}

impl SignalAbilityPair {
    pub fn new(signal: Signal, ability: Ability) -> Self {
        SignalAbilityPair { signal, ability }
    }
}

/// A binary-signal juror: the probability in `[1/2, 1]` that their signal
/// matches the state of Nature.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct BinaryJuror(f64);

impl BinaryJuror {
    pub fn new(p: f64) -> Result<Self, Error> {
        if (0.5..=1.0).contains(&p) {
            Ok(BinaryJuror(p))
        } else {
            Err(Error::AccuracyRange(p))
        }
    }

    pub fn accuracy(self) -> f64 {
        self.0
    }
}

/// Voting position of the strongest juror in the binary warm-up model.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VotePosition {
    First,
    Second,
    Third,
}

/// Posterior on `A` given a whole set of signal-ability pairs, computed by
/// iterating the single-signal Bayes update. The order of the pairs cannot
/// matter: each update multiplies the same likelihood ratio in.
pub fn full_info_posterior(theta: Belief, pairs: &[SignalAbilityPair]) -> Belief {
    let mut t = theta.prob_a();
    for pair in pairs {
        t = signal::posterior_raw(t, pair.ability.value(), pair.signal.value());
    }
    Belief::new_unchecked(t)
}

/// Deliberation votes: juror `m` sees the first `m` pairs (their own
/// included) and votes `A` exactly when the pooled posterior is at least 1/2.
pub fn deliberation_votes(
    ordering: &JuryOrdering,
    signals: &[Signal],
    theta0: Belief,
) -> Result<Vec<NatureState>, Error> {
    if signals.len() != ordering.len() {
        return Err(Error::LengthMismatch {
            expected: ordering.len(),
            got: signals.len(),
        });
    }
    let raw: Vec<f64> = signals.iter().map(|s| s.value()).collect();
    Ok(deliberation_votes_raw(
        ordering.abilities(),
        &raw,
        theta0.prob_a(),
    ))
}

pub(crate) fn deliberation_votes_raw(abilities: &[f64], signals: &[f64], theta0: f64) -> Vec<NatureState> {
    let mut theta = theta0;
    let mut votes = Vec::with_capacity(abilities.len());
    for (&a, &s) in abilities.iter().zip(signals) {
        theta = signal::posterior_raw(theta, a, s);
        votes.push(if theta >= 0.5 { NatureState::A } else { NatureState::B });
    }
    votes
}

/// Majority verdict of a vote list.
pub fn majority_verdict(votes: &[NatureState]) -> NatureState {
    let a_votes = votes.iter().filter(|v| **v == NatureState::A).count();
    if 2 * a_votes > votes.len() {
        NatureState::A
    } else {
        NatureState::B
    }
}

pub(crate) fn correct_vote_prob_raw(theta: f64, a: f64) -> f64 {
    let t = 1.0 - 2.0 * theta;
    if a < t.abs() || a == 0.0 {
        // Herds to the prior, so the vote is right whenever the prior is.
        return theta.max(1.0 - theta);
    }
    (a * a + 2.0 * a + t * t) / (4.0 * a)
}

/// Probability that a lone honest juror of ability `a` votes correctly given
/// prior `theta`. Continuous across the herding boundary `a = |1 - 2·theta|`.
pub fn single_vote_correct_prob(theta: Belief, a: Ability) -> f64 {
    correct_vote_prob_raw(theta.prob_a(), a.value())
}

/// In the binary model, the accuracy above which a lone strong signal beats
/// two opposing weaker ones: `pq / (1 - p - q + 2pq)`.
pub fn lone_signal_cutoff(p: BinaryJuror, q: BinaryJuror) -> Result<f64, Error> {
    let (p, q) = (p.accuracy(), q.accuracy());
    let denom = 1.0 - p - q + 2.0 * p * q;
    if denom <= 0.0 {
        return Err(Error::DegenerateCutoff);
    }
    Ok(p * q / denom)
}

/// Unnormalised posterior weights for the two states.
#[derive(Clone, Copy)]
struct Odds {
    for_a: f64,
    for_b: f64,
}

impl Odds {
    const NEUTRAL: Odds = Odds { for_a: 1.0, for_b: 1.0 };

    fn observe(self, accuracy: f64, sig: NatureState) -> Odds {
        match sig {
            NatureState::A => Odds {
                for_a: self.for_a * accuracy,
                for_b: self.for_b * (1.0 - accuracy),
            },
            NatureState::B => Odds {
                for_a: self.for_a * (1.0 - accuracy),
                for_b: self.for_b * accuracy,
            },
        }
    }

    /// Honest decision; exact ties go to the voter's own signal.
    fn decide(self, own: NatureState) -> NatureState {
        if self.for_a > self.for_b {
            NatureState::A
        } else if self.for_a < self.for_b {
            NatureState::B
        } else {
            own
        }
    }
}

/// Worst normalised gap, over all eight signal patterns, between the
/// posterior weight of the sequential majority verdict and that of the other
/// state. Nonnegative means the verdict always is a full-information
/// solution. Patterns that are impossible under both states are skipped.
pub(crate) fn fis_worst_gap(p: f64, q: f64, r: f64, position_of_r: VotePosition) -> f64 {
    let order: [f64; 3] = match position_of_r {
        VotePosition::First => [r, p, q],
        VotePosition::Second => [p, r, q],
        VotePosition::Third => [p, q, r],
    };
    let states = [NatureState::A, NatureState::B];
    let mut worst = f64::INFINITY;
    for &s1 in &states {
        for &s2 in &states {
            for &s3 in &states {
                let sigs = [s1, s2, s3];
                let full = sigs
                    .iter()
                    .zip(&order)
                    .fold(Odds::NEUTRAL, |o, (&sig, &acc)| o.observe(acc, sig));
                if full.for_a + full.for_b == 0.0 {
                    continue;
                }
                let mut public = Odds::NEUTRAL;
                let mut votes = [NatureState::A; 3];
                for (i, (&sig, &acc)) in sigs.iter().zip(&order).enumerate() {
                    let if_a = public.observe(acc, NatureState::A).decide(NatureState::A);
                    let if_b = public.observe(acc, NatureState::B).decide(NatureState::B);
                    if if_a == if_b {
                        // Herd vote: reveals nothing.
                        votes[i] = if_a;
                    } else {
                        votes[i] = if sig == NatureState::A { if_a } else { if_b };
                        public = public.observe(acc, sig);
                    }
                }
                let verdict = majority_verdict(&votes);
                let (win, lose) = match verdict {
                    NatureState::A => (full.for_a, full.for_b),
                    NatureState::B => (full.for_b, full.for_a),
                };
                let gap = (win - lose) / (win + lose);
                if gap < worst {
                    worst = gap;
                }
            }
        }
    }
    worst
}

/// Whether honest sequential binary voting recovers the full-information
/// solution for every signal pattern, with the strongest juror in the given
/// position and the weaker two in ascending order around them.
pub fn fis_always_attained(
    p: BinaryJuror,
    q: BinaryJuror,
    r: BinaryJuror,
    position_of_r: VotePosition,
) -> Result<bool, Error> {
    let (p, q, r) = (p.accuracy(), q.accuracy(), r.accuracy());
    if !(p <= q && q <= r) {
        return Err(Error::UnsortedTriple(p, q, r));
    }
    Ok(fis_worst_gap(p, q, r, position_of_r) >= 0.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn pair(s: f64, a: f64) -> SignalAbilityPair {
        SignalAbilityPair::new(Signal::new(s).unwrap(), Ability::new(a).unwrap())
    }

    fn juror(p: f64) -> BinaryJuror {
        BinaryJuror::new(p).unwrap()
    }

    /// Closed-form pooled posterior via elementary symmetric polynomials of
    /// the products `s_i * a_i`; kept here purely as a test oracle.
    fn closed_form_posterior(theta: f64, pairs: &[SignalAbilityPair]) -> f64 {
        let pis: Vec<f64> = pairs
            .iter()
            .map(|p| p.signal.value() * p.ability.value())
            .collect();
        // Coefficients of prod (1 + pi*x) give the elementary symmetric sums.
        let mut elem = vec![0.0; pis.len() + 1];
        elem[0] = 1.0;
        for (i, &pi) in pis.iter().enumerate() {
            for k in (1..=i + 1).rev() {
                elem[k] += pi * elem[k - 1];
            }
        }
        let numerator: f64 = theta * pis.iter().map(|p| 1.0 + p).product::<f64>();
        let mut denominator = 1.0;
        for (m, &e) in elem.iter().enumerate().skip(1) {
            let weight = if m % 2 == 1 { 2.0 * theta - 1.0 } else { 1.0 };
            denominator += weight * e;
        }
        numerator / denominator
    }

    #[test]
    fn posterior_trivial_cases() {
        assert_eq!(
            full_info_posterior(Belief::NEUTRAL, &[]).prob_a(),
            0.5
        );
        let single = full_info_posterior(Belief::NEUTRAL, &[pair(0.4, 0.5)]);
        assert!((single.prob_a() - (1.0 + 0.2) / 2.0).abs() < 1e-15);
        let cancel = full_info_posterior(Belief::NEUTRAL, &[pair(0.5, 0.8), pair(-0.5, 0.8)]);
        assert!((cancel.prob_a() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn posterior_matches_closed_form() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for _ in 0..500 {
            let n = rng.gen_range(1..=7);
            let theta = rng.gen::<f64>();
            let pairs: Vec<_> = (0..n)
                .map(|_| pair(rng.gen::<f64>() * 2.0 - 1.0, rng.gen::<f64>()))
                .collect();
            let got = full_info_posterior(Belief::new(theta).unwrap(), &pairs).prob_a();
            let want = closed_form_posterior(theta, &pairs);
            assert!((got - want).abs() < 1e-10, "theta={theta}, pairs={pairs:?}");
        }
    }

    #[test]
    fn posterior_is_permutation_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        for _ in 0..200 {
            let pairs: Vec<_> = (0..5)
                .map(|_| pair(rng.gen::<f64>() * 2.0 - 1.0, rng.gen::<f64>()))
                .collect();
            let mut shuffled = pairs.clone();
            shuffled.reverse();
            shuffled.swap(0, 2);
            let a = full_info_posterior(Belief::NEUTRAL, &pairs).prob_a();
            let b = full_info_posterior(Belief::NEUTRAL, &shuffled).prob_a();
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn posterior_with_zero_abilities_keeps_prior() {
        let pairs: Vec<_> = (0..4).map(|k| pair(0.4 - 0.2 * k as f64, 0.0)).collect();
        assert_eq!(
            full_info_posterior(Belief::new(0.3).unwrap(), &pairs).prob_a(),
            0.3
        );
    }

    #[test]
    fn last_deliberation_vote_is_order_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(47);
        for _ in 0..200 {
            let abilities: Vec<f64> = (0..3).map(|_| rng.gen()).collect();
            let signals: Vec<f64> = (0..3).map(|_| rng.gen::<f64>() * 2.0 - 1.0).collect();
            let mut last = None;
            for perm in [[0, 1, 2], [2, 0, 1], [1, 2, 0], [2, 1, 0]] {
                let a: Vec<f64> = perm.iter().map(|&i| abilities[i]).collect();
                let s: Vec<f64> = perm.iter().map(|&i| signals[i]).collect();
                let votes = deliberation_votes_raw(&a, &s, 0.5);
                match last {
                    None => last = Some(votes[2]),
                    Some(v) => assert_eq!(v, votes[2]),
                }
            }
        }
    }

    #[test]
    fn single_juror_votes_signal_sign() {
        let ordering = JuryOrdering::custom(&[0.7]).unwrap();
        let votes =
            deliberation_votes(&ordering, &[Signal::new(0.3).unwrap()], Belief::NEUTRAL).unwrap();
        assert_eq!(votes, vec![NatureState::A]);
        let votes =
            deliberation_votes(&ordering, &[Signal::new(-0.3).unwrap()], Belief::NEUTRAL).unwrap();
        assert_eq!(votes, vec![NatureState::B]);
    }

    #[test]
    fn correct_vote_probability() {
        for &a in &[0.0, 0.3, 1.0] {
            assert!(
                (single_vote_correct_prob(Belief::NEUTRAL, Ability::new(a).unwrap())
                    - (0.5 + a / 4.0))
                    .abs()
                    < 1e-15
            );
        }
        // Herding case returns the prior.
        assert_eq!(
            single_vote_correct_prob(Belief::new(0.9).unwrap(), Ability::new(0.5).unwrap()),
            0.9
        );
        // Quadrature oracle for the general case: P(s >= tau | A)·theta +
        // P(s < tau | B)·(1-theta) with the honest threshold.
        let (theta, a) = (0.6, 0.8);
        let tau = signal::threshold_raw(theta, a);
        let oracle =
            theta * (1.0 - signal::cdf_a(a, tau)) + (1.0 - theta) * signal::cdf_b(a, tau);
        assert!((oracle - 0.7125).abs() < 1e-12);
        let got = single_vote_correct_prob(Belief::new(theta).unwrap(), Ability::new(a).unwrap());
        assert!((got - 0.7125).abs() < 1e-15);
    }

    #[test]
    fn correct_vote_prob_continuous_at_herding_boundary() {
        for theta in [0.6, 0.75, 0.9] {
            let a = 2.0 * theta - 1.0;
            let inside = correct_vote_prob_raw(theta, a);
            let below = correct_vote_prob_raw(theta, a - 1e-9);
            assert!((inside - below).abs() < 1e-8);
            assert!((inside - theta).abs() < 1e-12);
        }
    }

    #[test]
    fn correct_vote_prob_nondecreasing_in_ability() {
        for tk in 0..=100 {
            let theta = tk as f64 / 100.0;
            let mut prev = correct_vote_prob_raw(theta, 0.0);
            for ak in 1..=100 {
                let a = ak as f64 / 100.0;
                let p = correct_vote_prob_raw(theta, a);
                assert!(p >= prev - 1e-12, "theta={theta}, a={a}");
                prev = p;
            }
        }
    }

    #[test]
    fn lone_signal_cutoff_values() {
        assert_eq!(lone_signal_cutoff(juror(0.5), juror(0.5)).unwrap(), 0.5);
        let c = lone_signal_cutoff(juror(0.6), juror(0.6)).unwrap();
        assert!((c - 0.36 / 0.52).abs() < 1e-15);
        let c = lone_signal_cutoff(juror(0.9), juror(0.9)).unwrap();
        assert!((c - 0.81 / 0.82).abs() < 1e-15);
        // Direct Bayes oracle on the two-against-one event.
        let (p, q, r) = (0.6, 0.7, 0.75);
        let post_a = r * (1.0 - p) * (1.0 - q);
        let post_b = (1.0 - r) * p * q;
        let cutoff = lone_signal_cutoff(juror(p), juror(q)).unwrap();
        assert_eq!(post_a >= post_b, r >= cutoff);
    }

    #[test]
    fn fis_median_second_holds_on_examples() {
        assert!(fis_always_attained(juror(0.6), juror(0.7), juror(0.8), VotePosition::Second)
            .unwrap());
        assert!(fis_always_attained(juror(0.5), juror(0.5), juror(0.5), VotePosition::Second)
            .unwrap());
        assert!(fis_always_attained(juror(0.5), juror(0.75), juror(1.0), VotePosition::Second)
            .unwrap());
    }

    #[test]
    fn fis_fails_first_when_strong_juror_below_cutoff() {
        // r < cutoff(p, q): an opposing pair should overrule, but a cascade
        // behind the strong first voter ignores it.
        let (p, q) = (0.55, 0.6);
        let cutoff = lone_signal_cutoff(juror(p), juror(q)).unwrap();
        let r = 0.62;
        assert!(r > q && r < cutoff);
        assert!(!fis_always_attained(juror(p), juror(q), juror(r), VotePosition::First).unwrap());
    }

    #[test]
    fn fis_fails_third_when_strong_juror_above_cutoff() {
        // r > cutoff(p, q): the strong signal should dictate, but the first
        // two agreeing against it decide the majority before r votes.
        let (p, q) = (0.6, 0.6);
        let r = 0.75;
        assert!(r > lone_signal_cutoff(juror(p), juror(q)).unwrap());
        assert!(!fis_always_attained(juror(p), juror(q), juror(r), VotePosition::Third).unwrap());
    }

    #[test]
    fn fis_rejects_unsorted() {
        assert!(fis_always_attained(juror(0.9), juror(0.6), juror(0.7), VotePosition::First)
            .is_err());
    }
}
