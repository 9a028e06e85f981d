//! General-size sequential honest-voting simulator.
//!
//! Orderings are built from an ability set (seniority, anti-seniority,
//! ascending-descending, custom), vote transcripts follow the recursive
//! honest-threshold rule, and reliabilities are estimated by Monte Carlo.
//!
//! RNG contract: all randomness comes from ChaCha8. Trial `t` of a run with
//! master seed `S` draws from the ChaCha stream `(S, t)` (`set_stream`), so
//! counts are bit-identical for any thread count; nested experiments derive
//! sub-seeds with SplitMix64. Parallel runs partition the trial range into
//! fixed-size chunks and sum integer counts, which is order-independent.

use rayon::prelude::*;

use crate::error::Error;
use crate::signal::{self, Belief, NatureState, Signal};
use crate::trio;

pub(crate) mod rng {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    pub(crate) fn base(seed: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(seed)
    }

    /// The generator for one trial: same master key, dedicated stream.
    #[inline]
    pub(crate) fn at_stream(base: &ChaCha8Rng, stream: u64) -> ChaCha8Rng {
        let mut rng = base.clone();
        rng.set_stream(stream);
        rng.set_word_pos(0);
        rng
    }

    pub(crate) fn splitmix64(mut z: u64) -> u64 {
        z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Independent sub-seed for a nested experiment.
    pub(crate) fn derive(seed: u64, salt: u64) -> u64 {
        splitmix64(seed ^ splitmix64(salt))
    }
}

const TRIAL_CHUNK: u64 = 8192;
const SEARCH_SALT: u64 = 0x5EA7;
const JURY_SALT: u64 = 0x4A57;

/// How a voting order was produced from an ability set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderingLabel {
    /// Descending ability (SO).
    Seniority,
    /// Ascending ability (AO).
    AntiSeniority,
    /// Median first, rising to the best, then the rest descending (ADO).
    AscendingDescending,
    Custom,
    AsGenerated,
}

impl OrderingLabel {
    pub fn code(self) -> &'static str {
        match self {
            OrderingLabel::Seniority => "SO",
            OrderingLabel::AntiSeniority => "AO",
            OrderingLabel::AscendingDescending => "ADO",
            OrderingLabel::Custom => "custom",
            OrderingLabel::AsGenerated => "as-generated",
        }
    }
}

/// Abilities in voting-position order.
#[derive(Debug, Clone, PartialEq)]
pub struct JuryOrdering {
    abilities: Vec<f64>,
    label: OrderingLabel,
}

impl JuryOrdering {
    fn validated(abilities: Vec<f64>, label: OrderingLabel) -> Result<Self, Error> {
        if abilities.is_empty() {
            return Err(Error::EmptyJury);
        }
        for &a in &abilities {
            if !(0.0..=1.0).contains(&a) {
                return Err(Error::AbilityRange(a));
            }
        }
        Ok(JuryOrdering { abilities, label })
    }

    /// Descending ability order.
    pub fn seniority(set: &[f64]) -> Result<Self, Error> {
        let mut v = set.to_vec();
        v.sort_by(|x, y| y.total_cmp(x));
        Self::validated(v, OrderingLabel::Seniority)
    }

    /// Ascending ability order.
    pub fn anti_seniority(set: &[f64]) -> Result<Self, Error> {
        let mut v = set.to_vec();
        v.sort_by(f64::total_cmp);
        Self::validated(v, OrderingLabel::AntiSeniority)
    }

    /// Ascending-descending order for an odd set `a_1 < … < a_{2m+1}`:
    /// `(a_{m+1}, …, a_n, a_m, …, a_1)` — median first, the best in the
    /// middle position, the weakest last.
    pub fn ascending_descending(set: &[f64]) -> Result<Self, Error> {
        if set.len() % 2 == 0 {
            return Err(Error::EvenJurySize(set.len()));
        }
        let mut sorted = set.to_vec();
        sorted.sort_by(f64::total_cmp);
        Self::validated(ado_arrangement(&sorted), OrderingLabel::AscendingDescending)
    }

    /// An explicit voting order.
    pub fn custom(order: &[f64]) -> Result<Self, Error> {
        Self::validated(order.to_vec(), OrderingLabel::Custom)
    }

    /// A randomly generated jury kept in its generated order.
    pub fn as_generated(order: &[f64]) -> Result<Self, Error> {
        Self::validated(order.to_vec(), OrderingLabel::AsGenerated)
    }

    pub fn abilities(&self) -> &[f64] {
        &self.abilities
    }

    pub fn label(&self) -> OrderingLabel {
        self.label
    }

    pub fn len(&self) -> usize {
        self.abilities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.abilities.is_empty()
    }
}

/// ADO arrangement of an ascending-sorted slice.
fn ado_arrangement(sorted: &[f64]) -> Vec<f64> {
    let m = sorted.len() / 2;
    let mut out = Vec::with_capacity(sorted.len());
    out.extend_from_slice(&sorted[m..]);
    out.extend(sorted[..m].iter().rev());
    out
}

/// Which state signals are drawn under.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NatureSelect {
    Fixed(NatureState),
    /// Alternate A and B across trials.
    Symmetric,
}

impl NatureSelect {
    #[inline]
    fn for_trial(self, trial: u64) -> NatureState {
        match self {
            NatureSelect::Fixed(s) => s,
            NatureSelect::Symmetric => {
                if trial % 2 == 0 {
                    NatureState::A
                } else {
                    NatureState::B
                }
            }
        }
    }
}

/// Monte Carlo run configuration. `threads = 0` uses the ambient rayon pool;
/// any other value runs inside a dedicated pool of that size. Results do not
/// depend on the thread count either way.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimConfig {
    pub trials: u64,
    pub seed: u64,
    pub threads: usize,
    pub theta0: f64,
    pub nature: NatureSelect,
}

impl Default for SimConfig {
    fn default() -> Self {
        SimConfig {
            trials: 100_000,
            seed: 0,
            threads: 0,
            theta0: 0.5,
            nature: NatureSelect::Fixed(NatureState::A),
        }
    }
}

fn run_in_pool<T: Send>(threads: usize, job: impl FnOnce() -> T + Send) -> T {
    if threads == 0 {
        job()
    } else {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .expect("worker pool")
            .install(job)
    }
}

/// One jury's voting record.
#[derive(Debug, Clone, PartialEq)]
pub struct VoteTranscript {
    pub votes: Vec<NatureState>,
    /// Public belief in `A` held just before each vote; starts at the prior.
    pub beliefs: Vec<Belief>,
    pub verdict: NatureState,
    /// Zero-based position whose vote clinched the majority.
    pub decided_at: usize,
}

/// One honest voting step: the vote and the updated public belief. Saturated
/// thresholds are herd votes and reveal nothing, so the belief is unchanged.
#[inline]
pub(crate) fn next_vote(theta: f64, a: f64, s: f64) -> (bool, f64) {
    let tau = signal::threshold_raw(theta, a);
    if tau <= -1.0 {
        return (true, theta);
    }
    if tau >= 1.0 {
        return (false, theta);
    }
    let fa = signal::cdf_a(a, tau);
    let fb = signal::cdf_b(a, tau);
    if s >= tau {
        let num = theta * (1.0 - fa);
        let den = num + (1.0 - theta) * (1.0 - fb);
        (true, if den > 0.0 { num / den } else { theta })
    } else {
        let num = theta * fa;
        let den = num + (1.0 - theta) * fb;
        (false, if den > 0.0 { num / den } else { theta })
    }
}

/// Majority verdict with early exit once it is clinched.
#[inline]
pub(crate) fn verdict_fast(abilities: &[f64], signals: &[f64], theta0: f64) -> NatureState {
    let majority = abilities.len() / 2 + 1;
    let mut votes_a = 0usize;
    let mut votes_b = 0usize;
    let mut theta = theta0;
    for (&a, &s) in abilities.iter().zip(signals) {
        let (vote_a, next) = next_vote(theta, a, s);
        theta = next;
        if vote_a {
            votes_a += 1;
            if votes_a >= majority {
                return NatureState::A;
            }
        } else {
            votes_b += 1;
            if votes_b >= majority {
                return NatureState::B;
            }
        }
    }
    if votes_a > votes_b {
        NatureState::A
    } else {
        NatureState::B
    }
}

/// Run the full sequential honest vote and record every step.
pub fn vote_sequence(
    ordering: &JuryOrdering,
    signals: &[Signal],
    theta0: Belief,
) -> Result<VoteTranscript, Error> {
    let n = ordering.len();
    if signals.len() != n {
        return Err(Error::LengthMismatch { expected: n, got: signals.len() });
    }
    if n % 2 == 0 {
        return Err(Error::EvenJurySize(n));
    }
    let majority = n / 2 + 1;
    let mut votes = Vec::with_capacity(n);
    let mut beliefs = Vec::with_capacity(n);
    let mut theta = theta0.prob_a();
    let mut votes_a = 0usize;
    let mut votes_b = 0usize;
    let mut decided_at = None;
    for (i, (&a, s)) in ordering.abilities().iter().zip(signals).enumerate() {
        beliefs.push(Belief::new_unchecked(theta));
        let (vote_a, next) = next_vote(theta, a, s.value());
        theta = next;
        if vote_a {
            votes_a += 1;
            votes.push(NatureState::A);
        } else {
            votes_b += 1;
            votes.push(NatureState::B);
        }
        if decided_at.is_none() && (votes_a >= majority || votes_b >= majority) {
            decided_at = Some(i);
        }
    }
    Ok(VoteTranscript {
        verdict: if votes_a > votes_b { NatureState::A } else { NatureState::B },
        votes,
        beliefs,
        decided_at: decided_at.expect("odd jury always clinches"),
    })
}

#[inline]
pub(crate) fn draw_signal(rng: &mut rand_chacha::ChaCha8Rng, nature: NatureState, a: f64) -> f64 {
    let u = rand::Rng::gen::<f64>(rng);
    match nature {
        NatureState::A => signal::sample_a_raw(a, u),
        NatureState::B => signal::sample_b_raw(a, u),
    }
}

/// Monte Carlo reliability estimate with a 90% normal-approximation radius.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReliabilityEstimate {
    pub trials: u64,
    pub correct: u64,
    pub estimate: f64,
    pub half_width_90: f64,
}

impl ReliabilityEstimate {
    fn from_counts(correct: u64, trials: u64) -> Self {
        let p = correct as f64 / trials as f64;
        ReliabilityEstimate {
            trials,
            correct,
            estimate: p,
            half_width_90: 1.645 * (p * (1.0 - p) / trials as f64).sqrt(),
        }
    }
}

/// Estimate the probability that the majority verdict matches Nature for a
/// fixed ordering. Deterministic in `(seed, trials)`.
pub fn estimate_reliability(
    ordering: &JuryOrdering,
    cfg: &SimConfig,
) -> Result<ReliabilityEstimate, Error> {
    if ordering.len() % 2 == 0 {
        return Err(Error::EvenJurySize(ordering.len()));
    }
    if cfg.trials == 0 {
        return Err(Error::ZeroTrials);
    }
    let abilities = ordering.abilities().to_vec();
    let cfg = *cfg;
    let correct = run_in_pool(cfg.threads, move || {
        let base = rng::base(cfg.seed);
        let chunks = cfg.trials.div_ceil(TRIAL_CHUNK);
        (0..chunks)
            .into_par_iter()
            .map(|chunk| {
                let lo = chunk * TRIAL_CHUNK;
                let hi = (lo + TRIAL_CHUNK).min(cfg.trials);
                let mut signals = vec![0.0; abilities.len()];
                let mut hits = 0u64;
                for t in lo..hi {
                    let mut r = rng::at_stream(&base, t);
                    let nature = cfg.nature.for_trial(t);
                    for (slot, &a) in signals.iter_mut().zip(&abilities) {
                        *slot = draw_signal(&mut r, nature, a);
                    }
                    hits += (verdict_fast(&abilities, &signals, cfg.theta0) == nature) as u64;
                }
                hits
            })
            .sum()
    });
    Ok(ReliabilityEstimate::from_counts(correct, cfg.trials))
}

/// A rule for arranging a randomly generated jury.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderingRule {
    Seniority,
    AntiSeniority,
    AscendingDescending,
    AsGenerated,
}

impl OrderingRule {
    pub fn code(self) -> &'static str {
        match self {
            OrderingRule::Seniority => "SO",
            OrderingRule::AntiSeniority => "AO",
            OrderingRule::AscendingDescending => "ADO",
            OrderingRule::AsGenerated => "as-generated",
        }
    }

    /// Arrange `(ability, signal)` pairs for voting.
    fn arrange(self, pairs: &[(f64, f64)], out: &mut Vec<(f64, f64)>) {
        out.clear();
        out.extend_from_slice(pairs);
        match self {
            OrderingRule::AsGenerated => {}
            OrderingRule::Seniority => out.sort_by(|x, y| y.0.total_cmp(&x.0)),
            OrderingRule::AntiSeniority => out.sort_by(|x, y| x.0.total_cmp(&y.0)),
            OrderingRule::AscendingDescending => {
                out.sort_by(|x, y| x.0.total_cmp(&y.0));
                let m = pairs.len() / 2;
                let mut arranged = Vec::with_capacity(pairs.len());
                arranged.extend_from_slice(&out[m..]);
                arranged.extend(out[..m].iter().rev());
                *out = arranged;
            }
        }
    }
}

/// Paired verdict tallies for two arrangements of the same random juries,
/// each jury evaluated on a single juror-to-signal assignment.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ComparisonTable {
    pub jury_size: usize,
    pub juries: u64,
    /// Neither arrangement correct.
    pub n_bb: u64,
    /// Both correct.
    pub n_aa: u64,
    /// Only the first arrangement (X) correct.
    pub n_ab: u64,
    /// Only the second arrangement (Y) correct.
    pub n_ba: u64,
}

impl ComparisonTable {
    /// Fraction of disagreements won by the second arrangement:
    /// `n_BA / (n_BA + n_AB)`.
    pub fn r(&self) -> f64 {
        self.n_ba as f64 / (self.n_ba + self.n_ab) as f64
    }
}

/// Generate `juries` random juries (abilities uniform on `[0, 1)`), assign
/// each juror one signal drawn under Nature `A`, evaluate both arrangements
/// of the same pairs, and tally the verdict pairs `(X, Y)`.
pub fn compare_orderings(
    size: usize,
    juries: u64,
    pair: (OrderingRule, OrderingRule),
    cfg: &SimConfig,
) -> Result<ComparisonTable, Error> {
    if size % 2 == 0 {
        return Err(Error::EvenJurySize(size));
    }
    if size == 0 {
        return Err(Error::EmptyJury);
    }
    if juries == 0 {
        return Err(Error::ZeroTrials);
    }
    let cfg = *cfg;
    let counts = run_in_pool(cfg.threads, move || {
        let base = rng::base(cfg.seed);
        let chunks = juries.div_ceil(TRIAL_CHUNK);
        (0..chunks)
            .into_par_iter()
            .map(|chunk| {
                let lo = chunk * TRIAL_CHUNK;
                let hi = (lo + TRIAL_CHUNK).min(juries);
                let mut tally = [0u64; 4];
                let mut pairs = vec![(0.0, 0.0); size];
                let mut arranged = Vec::with_capacity(size);
                let mut abilities = vec![0.0; size];
                let mut signals = vec![0.0; size];
                for j in lo..hi {
                    let mut r = rng::at_stream(&base, j);
                    for slot in pairs.iter_mut() {
                        slot.0 = rand::Rng::gen::<f64>(&mut r);
                    }
                    for slot in pairs.iter_mut() {
                        slot.1 = signal::sample_a_raw(slot.0, rand::Rng::gen::<f64>(&mut r));
                    }
                    let mut verdicts = [NatureState::A; 2];
                    for (k, rule) in [pair.0, pair.1].into_iter().enumerate() {
                        rule.arrange(&pairs, &mut arranged);
                        for (i, &(a, s)) in arranged.iter().enumerate() {
                            abilities[i] = a;
                            signals[i] = s;
                        }
                        verdicts[k] = verdict_fast(&abilities, &signals, cfg.theta0);
                    }
                    let idx = match verdicts {
                        [NatureState::B, NatureState::B] => 0,
                        [NatureState::A, NatureState::A] => 1,
                        [NatureState::A, NatureState::B] => 2,
                        [NatureState::B, NatureState::A] => 3,
                    };
                    tally[idx] += 1;
                }
                tally
            })
            .reduce(
                || [0u64; 4],
                |mut acc, t| {
                    for (a, b) in acc.iter_mut().zip(t) {
                        *a += b;
                    }
                    acc
                },
            )
    });
    Ok(ComparisonTable {
        jury_size: size,
        juries,
        n_bb: counts[0],
        n_aa: counts[1],
        n_ab: counts[2],
        n_ba: counts[3],
    })
}

/// Per-jury result of the reordering study.
#[derive(Debug, Clone, PartialEq)]
pub struct JuryDelta {
    pub abilities: Vec<f64>,
    pub rho_as_generated: f64,
    pub rho_ado: f64,
    pub delta: f64,
}

/// One frequency bin `[lo, hi)` of the improvement histogram.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HistogramBin {
    pub lo: f64,
    pub hi: f64,
    pub count: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AdoStudy {
    pub per_jury: Vec<JuryDelta>,
    pub mean: f64,
    pub min: f64,
    pub max: f64,
    /// Frequency distribution of the improvements in 0.02-wide bins.
    pub histogram: Vec<HistogramBin>,
}

const ADO_BIN_WIDTH: f64 = 0.02;

/// For random juries of the given odd size, estimate reliability in the
/// generated order and after reordering to ADO, and report the improvement
/// distribution. Each estimate uses `trials_per_jury` trials on its own
/// derived seed.
pub fn ado_improvement_study(
    size: usize,
    juries: u64,
    trials_per_jury: u64,
    cfg: &SimConfig,
) -> Result<AdoStudy, Error> {
    if size % 2 == 0 {
        return Err(Error::EvenJurySize(size));
    }
    if juries == 0 || trials_per_jury == 0 {
        return Err(Error::ZeroTrials);
    }
    let cfg = *cfg;
    let per_jury: Vec<JuryDelta> = run_in_pool(cfg.threads, move || {
        let jury_base = rng::base(rng::derive(cfg.seed, JURY_SALT));
        (0..juries)
            .into_par_iter()
            .map(|j| {
                let mut r = rng::at_stream(&jury_base, j);
                let abilities: Vec<f64> =
                    (0..size).map(|_| rand::Rng::gen::<f64>(&mut r)).collect();
                let given = JuryOrdering::as_generated(&abilities).expect("valid jury");
                let ado = JuryOrdering::ascending_descending(&abilities).expect("odd jury");
                let est = |ordering: &JuryOrdering, salt: u64| {
                    let sub = SimConfig {
                        trials: trials_per_jury,
                        seed: rng::derive(cfg.seed, 2 * j + salt),
                        threads: 0,
                        ..cfg
                    };
                    estimate_reliability(ordering, &sub).expect("odd jury").estimate
                };
                let rho_given = est(&given, 1);
                let rho_ado = est(&ado, 2);
                JuryDelta {
                    abilities,
                    rho_as_generated: rho_given,
                    rho_ado,
                    delta: rho_ado - rho_given,
                }
            })
            .collect()
    });

    let deltas: Vec<f64> = per_jury.iter().map(|d| d.delta).collect();
    let mean = deltas.iter().sum::<f64>() / deltas.len().max(1) as f64;
    let min = deltas.iter().copied().fold(f64::INFINITY, f64::min);
    let max = deltas.iter().copied().fold(f64::NEG_INFINITY, f64::max);

    let mut histogram = Vec::new();
    if !deltas.is_empty() {
        let lo_bin = (min / ADO_BIN_WIDTH).floor() as i64;
        let hi_bin = (max / ADO_BIN_WIDTH).floor() as i64;
        for bin in lo_bin..=hi_bin {
            let lo = bin as f64 * ADO_BIN_WIDTH;
            let hi = lo + ADO_BIN_WIDTH;
            let count = deltas.iter().filter(|&&d| d >= lo && d < hi).count() as u64;
            histogram.push(HistogramBin { lo, hi, count });
        }
    }

    Ok(AdoStudy { per_jury, mean, min, max, histogram })
}

/// Paired hit counts for two arrangements of one fixed jury evaluated on
/// common signal draws. Used for low-variance A/B comparisons and the
/// re-check protocol of the reordering study.
#[derive(Debug, Clone, Copy, Default)]
pub struct PairedHits {
    pub trials: u64,
    pub x_hits: u64,
    pub y_hits: u64,
    /// Trials where exactly one arrangement was correct.
    pub disagreements: u64,
}

pub fn paired_reliability(
    x: &JuryOrdering,
    y: &JuryOrdering,
    cfg: &SimConfig,
) -> Result<PairedHits, Error> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch { expected: x.len(), got: y.len() });
    }
    if x.len() % 2 == 0 {
        return Err(Error::EvenJurySize(x.len()));
    }
    if cfg.trials == 0 {
        return Err(Error::ZeroTrials);
    }
    // Pair juror draws by ability value: both orderings hold the same
    // multiset, so sort-rank gives a stable juror identity.
    let n = x.len();
    let mut sorted = x.abilities().to_vec();
    sorted.sort_by(f64::total_cmp);
    let mut sorted_y = y.abilities().to_vec();
    sorted_y.sort_by(f64::total_cmp);
    if sorted != sorted_y {
        return Err(Error::LengthMismatch { expected: n, got: n });
    }
    let rank = |order: &JuryOrdering| -> Vec<usize> {
        let mut used = vec![false; n];
        order
            .abilities()
            .iter()
            .map(|&a| {
                let k = sorted
                    .iter()
                    .enumerate()
                    .position(|(i, &v)| v == a && !used[i])
                    .expect("ability present");
                used[k] = true;
                k
            })
            .collect()
    };
    let (x_rank, y_rank) = (rank(x), rank(y));
    let sorted = std::sync::Arc::new(sorted);
    let cfg = *cfg;
    let (x_hits, y_hits, disagreements) = run_in_pool(cfg.threads, move || {
        let base = rng::base(cfg.seed);
        let chunks = cfg.trials.div_ceil(TRIAL_CHUNK);
        (0..chunks)
            .into_par_iter()
            .map(|chunk| {
                let lo = chunk * TRIAL_CHUNK;
                let hi = (lo + TRIAL_CHUNK).min(cfg.trials);
                let mut draws = vec![0.0; n];
                let mut ab = vec![0.0; n];
                let mut sg = vec![0.0; n];
                let mut acc = (0u64, 0u64, 0u64);
                for t in lo..hi {
                    let mut r = rng::at_stream(&base, t);
                    let nature = cfg.nature.for_trial(t);
                    for (slot, &a) in draws.iter_mut().zip(sorted.iter()) {
                        *slot = match nature {
                            NatureState::A => signal::sample_a_raw(a, rand::Rng::gen(&mut r)),
                            NatureState::B => signal::sample_b_raw(a, rand::Rng::gen(&mut r)),
                        };
                    }
                    let mut verdicts = [NatureState::A; 2];
                    for (k, ranks) in [&x_rank, &y_rank].into_iter().enumerate() {
                        for (i, &j) in ranks.iter().enumerate() {
                            ab[i] = sorted[j];
                            sg[i] = draws[j];
                        }
                        verdicts[k] = verdict_fast(&ab, &sg, cfg.theta0);
                    }
                    let xc = verdicts[0] == nature;
                    let yc = verdicts[1] == nature;
                    acc.0 += xc as u64;
                    acc.1 += yc as u64;
                    acc.2 += (xc != yc) as u64;
                }
                acc
            })
            .reduce(|| (0, 0, 0), |a, b| (a.0 + b.0, a.1 + b.1, a.2 + b.2))
    });
    Ok(PairedHits { trials: cfg.trials, x_hits, y_hits, disagreements })
}

/// One ranked row of an exhaustive order search.
#[derive(Debug, Clone, PartialEq)]
pub struct SearchEntry {
    pub ordering: Vec<f64>,
    pub estimate: f64,
    pub half_width_90: f64,
}

/// How search entries are scored.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchMode {
    /// Closed-form trio reliability; only valid for three abilities.
    Exact,
    /// Monte Carlo estimate per permutation.
    MonteCarlo,
}

const SEARCH_SIZE_LIMIT: usize = 7;

/// Score every voting order of an ability set (optionally only those with
/// the last two abilities descending) and rank them best-first. Guarded to
/// at most seven jurors (7!/2 = 2520 orderings).
pub fn exhaustive_order_search(
    abilities: &[f64],
    mode: SearchMode,
    trials: u64,
    constrain_last_two: bool,
    cfg: &SimConfig,
) -> Result<Vec<SearchEntry>, Error> {
    let n = abilities.len();
    if n > SEARCH_SIZE_LIMIT {
        return Err(Error::JuryTooLarge { size: n, limit: SEARCH_SIZE_LIMIT });
    }
    if n % 2 == 0 {
        return Err(Error::EvenJurySize(n));
    }
    if mode == SearchMode::Exact && n != 3 {
        return Err(Error::ExactSearchSize(n));
    }
    if mode == SearchMode::MonteCarlo && trials == 0 {
        return Err(Error::ZeroTrials);
    }
    for &a in abilities {
        if !(0.0..=1.0).contains(&a) {
            return Err(Error::AbilityRange(a));
        }
    }

    use itertools::Itertools;
    let perms: Vec<Vec<f64>> = (0..n)
        .permutations(n)
        .map(|idx| idx.into_iter().map(|i| abilities[i]).collect::<Vec<f64>>())
        .filter(|order| !constrain_last_two || order[n - 2] >= order[n - 1])
        .collect();

    let cfg = *cfg;
    let mut entries: Vec<SearchEntry> = run_in_pool(cfg.threads, move || {
        perms
            .into_par_iter()
            .enumerate()
            .map(|(k, order)| match mode {
                SearchMode::Exact => {
                    let trio = trio::TrioOrder::from_values(order[0], order[1], order[2])
                        .expect("validated abilities");
                    SearchEntry {
                        ordering: order,
                        estimate: trio::reliability_sequential(trio),
                        half_width_90: 0.0,
                    }
                }
                SearchMode::MonteCarlo => {
                    let jury = JuryOrdering::custom(&order).expect("validated abilities");
                    let sub = SimConfig {
                        trials,
                        seed: rng::derive(cfg.seed, SEARCH_SALT + k as u64),
                        threads: 0,
                        ..cfg
                    };
                    let est = estimate_reliability(&jury, &sub).expect("odd jury");
                    SearchEntry {
                        ordering: order,
                        estimate: est.estimate,
                        half_width_90: est.half_width_90,
                    }
                }
            })
            .collect()
    });
    entries.sort_by(|a, b| {
        b.estimate
            .total_cmp(&a.estimate)
            .then_with(|| a.ordering.iter().map(|v| v.to_bits()).cmp(b.ordering.iter().map(|v| v.to_bits())))
    });
    Ok(entries)
}
