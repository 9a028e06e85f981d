//! Batch verification harness: every claim the library relies on — optimal
//! orderings, monotonicity, scheme comparisons, index thresholds and the
//! sign conditions behind them — is bound to a named, runnable check with a
//! machine-readable report.
//!
//! The checks are numerical evidence on grids and quasi-random point sets,
//! not proofs: a passing report says no violation was found at the tested
//! resolution, and a failing one reproduces deterministically from
//! `(check id, resolution, seed, worst-case input)`.

mod engine;
pub(crate) mod polys;

use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::deliberation::{correct_vote_prob_raw, fis_worst_gap, VotePosition};
use crate::duo::duo_reliability_raw;
use crate::error::Error;
use crate::sim::{self, rng, JuryOrdering, NatureSelect, SimConfig};
use crate::trio::{
    self, herding_cutoff_raw, heterogeneity_raw, homogeneity_raw, reliability_sequential_raw,
    reliability_simultaneous_raw,
};
use engine::{scan_region, ClaimKind, Halton, ScanOutcome};

/// Resolution and seeding for a check run. `grid_step: None` uses each
/// check's documented default (0.05 for ability-triple grids, 0.01 for
/// finite-difference sweeps, 0.02 for the binary-accuracy grid).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CheckConfig {
    pub grid_step: Option<f64>,
    /// Target number of accepted quasi-random points per sampled check.
    pub sample_points: usize,
    /// Trials per Monte Carlo comparison.
    pub mc_trials: u64,
    /// Juries/triples per Monte Carlo or optimizer check.
    pub mc_juries: usize,
    pub seed: u64,
}

impl CheckConfig {
    /// Seconds-scale profile; the default.
    pub fn fast() -> Self {
        CheckConfig {
            grid_step: None,
            sample_points: 100_000,
            mc_trials: 100_000,
            mc_juries: 50,
            seed: 0x5EED,
        }
    }

    /// Paper-scale Monte Carlo counts.
    pub fn thorough() -> Self {
        CheckConfig { mc_trials: 1_000_000, mc_juries: 200, ..CheckConfig::fast() }
    }
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig::fast()
    }
}

/// The smallest margin seen by a check and where it occurred.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WorstCase {
    pub inputs: Vec<f64>,
    pub margin: f64,
}

/// Outcome of one check run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport {
    pub check_id: String,
    pub domain_description: String,
    pub points_tested: u64,
    pub violations: u64,
    pub worst_case: WorstCase,
    /// Fraction of generated points that fell inside the constraint region;
    /// makes degenerate regions visible.
    pub accept_rate: f64,
    pub elapsed_ms: u64,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

/// Static description of a registered check.
#[derive(Debug, Clone, Copy)]
pub struct CheckInfo {
    pub id: &'static str,
    pub claim: &'static str,
    pub domain: &'static str,
}

struct CheckDef {
    info: CheckInfo,
    run: fn(&CheckConfig) -> ScanOutcome,
}

/// Clearance used to keep strictly-positive polynomial checks off the
/// degenerate edges of their open regions, where the polynomials tend to
/// zero and any finite tolerance would misfire.
const CLEARANCE: f64 = 1e-3;

/// Tolerance for the optimizer-vs-closed-form checks.
const STRATEGIC_TOL: f64 = 1e-6;

fn resolved_step(cfg: &CheckConfig, default: f64) -> f64 {
    cfg.grid_step.unwrap_or(default)
}

/// Grid `{step, 2·step, …} ∪ {1}`, optionally with 0 prepended.
fn grid_values(step: f64, include_zero: bool) -> Vec<f64> {
    let mut vals = Vec::new();
    if include_zero {
        vals.push(0.0);
    }
    let mut k = 1u64;
    loop {
        let v = k as f64 * step;
        if v >= 1.0 - 1e-12 {
            vals.push(1.0);
            break;
        }
        vals.push(v);
        k += 1;
    }
    vals
}

// --- ordering comparisons on ability grids -----------------------------------

pub(crate) fn argmax_scan(
    q: &(impl Fn(f64, f64, f64) -> f64 + Sync),
    step: f64,
) -> ScanOutcome {
    let vals = grid_values(step, false);
    let n = vals.len();
    let mut triples = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                triples.push((vals[i], vals[j], vals[k]));
            }
        }
    }
    triples
        .into_par_iter()
        .fold(ScanOutcome::empty, |mut acc, (a, b, c)| {
            let best = q(b, c, a);
            let others = [
                q(a, b, c),
                q(a, c, b),
                q(b, a, c),
                q(c, a, b),
                q(c, b, a),
            ];
            let margin = others.iter().fold(f64::INFINITY, |m, &v| m.min(best - v));
            acc.attempted += 1;
            acc.record(ClaimKind::Strict, &[a, b, c], margin);
            acc
        })
        .reduce(ScanOutcome::empty, ScanOutcome::merge)
}

fn check_thm2(cfg: &CheckConfig) -> ScanOutcome {
    argmax_scan(&reliability_sequential_raw, resolved_step(cfg, 0.05))
}

fn pairwise_scan(
    margin: &(impl Fn(f64, f64, f64) -> f64 + Sync),
    step: f64,
    include_zero_a: bool,
) -> ScanOutcome {
    let ab_vals = grid_values(step, include_zero_a);
    let c_vals = grid_values(step, true);
    let mut points = Vec::new();
    for (i, &a) in ab_vals.iter().enumerate() {
        for &b in &ab_vals[i + 1..] {
            for &c in &c_vals {
                points.push((a, b, c));
            }
        }
    }
    points
        .into_par_iter()
        .fold(ScanOutcome::empty, |mut acc, (a, b, c)| {
            acc.attempted += 1;
            acc.record(ClaimKind::Strict, &[a, b, c], margin(a, b, c));
            acc
        })
        .reduce(ScanOutcome::empty, ScanOutcome::merge)
}

fn check_prop2(cfg: &CheckConfig) -> ScanOutcome {
    // a = 0 is excluded: there the two orders tie exactly (the swapped
    // second voter herds on an uninformative first vote).
    pairwise_scan(
        &|a, b, c| reliability_sequential_raw(a, b, c) - reliability_sequential_raw(b, a, c),
        resolved_step(cfg, 0.05),
        false,
    )
}

fn check_prop3(cfg: &CheckConfig) -> ScanOutcome {
    pairwise_scan(
        &|a, b, c| reliability_sequential_raw(b, c, a) - reliability_sequential_raw(a, c, b),
        resolved_step(cfg, 0.05),
        true,
    )
}

fn check_thm4(cfg: &CheckConfig) -> ScanOutcome {
    let vals = grid_values(resolved_step(cfg, 0.05), true);
    let n = vals.len();
    let mut triples = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                triples.push((vals[i], vals[j], vals[k]));
            }
        }
    }
    triples
        .into_par_iter()
        .fold(ScanOutcome::empty, |mut acc, (a, b, c)| {
            let margin =
                reliability_sequential_raw(c, b, a) - reliability_sequential_raw(a, b, c);
            acc.attempted += 1;
            acc.record(ClaimKind::Strict, &[a, b, c], margin);
            acc
        })
        .reduce(ScanOutcome::empty, ScanOutcome::merge)
}

fn check_thm3(cfg: &CheckConfig) -> ScanOutcome {
    let h = resolved_step(cfg, 0.01);
    let vals = grid_values(h, true);
    let n = vals.len();
    (0..n * n * n)
        .into_par_iter()
        .fold(ScanOutcome::empty, |mut acc, flat| {
            let a = vals[flat % n];
            let b = vals[(flat / n) % n];
            let c = vals[flat / (n * n)];
            let base = reliability_sequential_raw(a, b, c);
            if b + h <= 1.0 + 1e-12 {
                let m = reliability_sequential_raw(a, (b + h).min(1.0), c) - base;
                acc.attempted += 1;
                acc.record(ClaimKind::NonStrict, &[a, b, c, 1.0], m);
            }
            if c + h <= 1.0 + 1e-12 {
                let m = reliability_sequential_raw(a, b, (c + h).min(1.0)) - base;
                acc.attempted += 1;
                acc.record(ClaimKind::NonStrict, &[a, b, c, 2.0], m);
            }
            if a >= c / 2.0 && a + h <= 1.0 + 1e-12 {
                let m = reliability_sequential_raw((a + h).min(1.0), b, c) - base;
                acc.attempted += 1;
                acc.record(ClaimKind::NonStrict, &[a, b, c, 0.0], m);
            }
            acc
        })
        .reduce(ScanOutcome::empty, ScanOutcome::merge)
}

// --- scheme comparisons -------------------------------------------------------

fn check_thm5_homogeneous(cfg: &CheckConfig) -> ScanOutcome {
    scan_region(
        &[(0.0, 1.0); 3],
        resolved_step(cfg, 0.05),
        cfg.sample_points,
        cfg.seed,
        ClaimKind::NonStrict,
        |p| p[0] <= p[1] && p[1] <= p[2] && homogeneity_raw(p[0], p[1], p[2]) >= 6.0 / 7.0,
        |p| {
            reliability_simultaneous_raw(0.5, p[0], p[1], p[2])
                - reliability_sequential_raw(p[1], p[2], p[0])
        },
    )
}

fn check_thm5_heterogeneous(cfg: &CheckConfig) -> ScanOutcome {
    scan_region(
        &[(0.0, 1.0); 3],
        resolved_step(cfg, 0.05),
        cfg.sample_points,
        cfg.seed,
        ClaimKind::NonStrict,
        |p| p[0] <= p[1] && p[1] <= p[2] && heterogeneity_raw(p[0], p[1], p[2]) >= 4.0 / 3.0,
        |p| {
            reliability_sequential_raw(p[1], p[2], p[0])
                - reliability_simultaneous_raw(0.5, p[0], p[1], p[2])
        },
    )
}

/// Largest heterogeneity whose induced top ability stays within the unit
/// interval for a given mean, capped for the sweeps.
fn diversity_mu_cap(m: f64) -> f64 {
    const CAP: f64 = 8.0;
    if 3.0 * m <= 1.0 {
        return CAP;
    }
    let k = 3.0 * m - 1.0;
    ((1.0 + (1.0 + 4.0 * k).sqrt()) / (2.0 * k)).min(CAP)
}

fn check_thm6(cfg: &CheckConfig) -> ScanOutcome {
    let h = resolved_step(cfg, 0.01);
    let ms: Vec<f64> = (1..=9).map(|k| k as f64 / 10.0).collect();
    ms.into_par_iter()
        .fold(ScanOutcome::empty, |mut acc, m| {
            let cap = diversity_mu_cap(m);
            let mut mu = 1.0;
            while mu + h <= cap {
                let lo = trio::diversity_reliability(m, mu).expect("in domain");
                let hi = trio::diversity_reliability(m, mu + h).expect("in domain");
                acc.attempted += 1;
                acc.record(ClaimKind::Strict, &[m, mu], hi - lo);
                mu += h;
            }
            acc
        })
        .reduce(ScanOutcome::empty, ScanOutcome::merge)
}

fn sorted_halton_triples(seed: u64, count: usize, accept: impl Fn(f64, f64, f64) -> bool) -> Vec<[f64; 3]> {
    let halton = Halton::new(&[(0.0, 1.0); 3], seed);
    let mut out = Vec::with_capacity(count);
    let mut idx = 1u64;
    let mut point = [0.0; 3];
    while out.len() < count && idx < 50_000_000 {
        halton.point(idx, &mut point);
        idx += 1;
        let mut t = point;
        t.sort_by(f64::total_cmp);
        if accept(t[0], t[1], t[2]) {
            out.push(t);
        }
    }
    out
}

fn check_thm7_heterogeneous(cfg: &CheckConfig) -> ScanOutcome {
    let triples = sorted_halton_triples(rng::derive(cfg.seed, 0x77), cfg.mc_juries, |a, b, c| {
        heterogeneity_raw(a, b, c) >= 7.0 / 4.0
    });
    triples
        .into_par_iter()
        .fold(ScanOutcome::empty, |mut acc, [a, b, c]| {
            let order = trio::TrioOrder::from_values(b, c, a).expect("unit interval");
            let honest = trio::reliability_sequential(order);
            let (opt, _) = trio::optimize_strategic(
                crate::signal::Belief::NEUTRAL,
                order.first(),
                order.second(),
                order.third(),
            )
            .expect("neutral prior");
            acc.attempted += 1;
            acc.record(ClaimKind::NonStrict, &[a, b, c], STRATEGIC_TOL - (opt - honest).abs());
            acc
        })
        .reduce(ScanOutcome::empty, ScanOutcome::merge)
}

fn check_thm7_equal(cfg: &CheckConfig) -> ScanOutcome {
    let halton = Halton::new(&[(0.0, 1.0)], rng::derive(cfg.seed, 0x7e));
    let mut point = [0.0];
    (1..=cfg.mc_juries as u64)
        .map(|i| {
            halton.point(i, &mut point);
            point[0]
        })
        .collect::<Vec<f64>>()
        .into_par_iter()
        .fold(ScanOutcome::empty, |mut acc, a| {
            let ab = crate::signal::Ability::new(a).expect("unit interval");
            let sim = trio::reliability_simultaneous(crate::signal::Belief::NEUTRAL, ab, ab, ab);
            let (opt, _) =
                trio::optimize_strategic(crate::signal::Belief::NEUTRAL, ab, ab, ab)
                    .expect("neutral prior");
            acc.attempted += 1;
            acc.record(ClaimKind::NonStrict, &[a], STRATEGIC_TOL - (opt - sim).abs());
            acc
        })
        .reduce(ScanOutcome::empty, ScanOutcome::merge)
}

// --- Monte Carlo checks -------------------------------------------------------

fn check_thm1_last_two(cfg: &CheckConfig) -> ScanOutcome {
    let base = rng::base(rng::derive(cfg.seed, 0x7811));
    (0..cfg.mc_juries as u64)
        .collect::<Vec<u64>>()
        .into_par_iter()
        .fold(ScanOutcome::empty, |mut acc, j| {
            let mut r = rng::at_stream(&base, j);
            let abilities: Vec<f64> = (0..5).map(|_| rand::Rng::gen::<f64>(&mut r)).collect();
            let mut swapped = abilities.clone();
            if swapped[3] < swapped[4] {
                swapped.swap(3, 4);
            }
            let margin = if swapped == abilities {
                0.0
            } else {
                let x = JuryOrdering::as_generated(&abilities).expect("valid");
                let y = JuryOrdering::custom(&swapped).expect("valid");
                let sub = SimConfig {
                    trials: cfg.mc_trials,
                    seed: rng::derive(cfg.seed, 0x7812 + j),
                    threads: 0,
                    theta0: 0.5,
                    nature: NatureSelect::Fixed(crate::signal::NatureState::A),
                };
                let paired = sim::paired_reliability(&x, &y, &sub).expect("same multiset");
                let d = paired.y_hits as f64 - paired.x_hits as f64;
                d + 3.0 * (paired.disagreements as f64).sqrt()
            };
            acc.attempted += 1;
            let mut inputs = abilities;
            inputs.push(j as f64);
            acc.record(ClaimKind::NonStrict, &inputs, margin);
            acc
        })
        .reduce(ScanOutcome::empty, ScanOutcome::merge)
}

fn check_thm8_deliberation(cfg: &CheckConfig) -> ScanOutcome {
    let triples = sorted_halton_triples(rng::derive(cfg.seed, 0x78de), cfg.mc_juries, |_, _, _| true);
    const PERMS: [[usize; 3]; 6] = [
        [2, 1, 0], // seniority
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
    ];
    triples
        .into_par_iter()
        .enumerate()
        .fold(ScanOutcome::empty, |mut acc, (t_idx, sorted)| {
            let base = rng::base(rng::derive(cfg.seed, 0x78d0 + t_idx as u64));
            let mut diff_sum = [0i64; 6];
            let mut diff_abs = [0u64; 6];
            for t in 0..cfg.mc_trials {
                let mut r = rng::at_stream(&base, t);
                let signals = [
                    crate::signal::sample_a_raw(sorted[0], rand::Rng::gen(&mut r)),
                    crate::signal::sample_a_raw(sorted[1], rand::Rng::gen(&mut r)),
                    crate::signal::sample_a_raw(sorted[2], rand::Rng::gen(&mut r)),
                ];
                let mut correct = [false; 6];
                for (p, perm) in PERMS.iter().enumerate() {
                    let mut theta = 0.5;
                    let mut a_votes = 0u32;
                    for &i in perm {
                        theta = crate::signal::posterior_raw(theta, sorted[i], signals[i]);
                        a_votes += (theta >= 0.5) as u32;
                    }
                    correct[p] = a_votes >= 2;
                }
                for p in 1..6 {
                    let d = correct[0] as i64 - correct[p] as i64;
                    diff_sum[p] += d;
                    diff_abs[p] += d.unsigned_abs();
                }
            }
            for p in 1..6 {
                let margin = diff_sum[p] as f64 + 3.0 * (diff_abs[p] as f64).sqrt();
                acc.attempted += 1;
                acc.record(
                    ClaimKind::NonStrict,
                    &[sorted[0], sorted[1], sorted[2], p as f64],
                    margin,
                );
            }
            acc
        })
        .reduce(ScanOutcome::empty, ScanOutcome::merge)
}

// --- duo and single-juror checks ----------------------------------------------

fn check_lemma1(cfg: &CheckConfig) -> ScanOutcome {
    let h = resolved_step(cfg, 0.05);
    let thetas = grid_values(h, true);
    let abilities = grid_values(h, true);
    let mut points = Vec::new();
    for &theta in &thetas {
        for (i, &b) in abilities.iter().enumerate() {
            for &c in &abilities[i + 1..] {
                points.push((theta, b, c));
            }
        }
    }
    points
        .into_par_iter()
        .fold(ScanOutcome::empty, |mut acc, (theta, b, c)| {
            let margin = duo_reliability_raw(theta, c, b) - duo_reliability_raw(theta, b, c);
            acc.attempted += 1;
            acc.record(ClaimKind::NonStrict, &[theta, b, c], margin);
            acc
        })
        .reduce(ScanOutcome::empty, ScanOutcome::merge)
}

fn check_lemma2(cfg: &CheckConfig) -> ScanOutcome {
    let h = resolved_step(cfg, 0.01);
    let thetas = grid_values(h, true);
    let abilities = grid_values(h, true);
    thetas
        .into_par_iter()
        .fold(ScanOutcome::empty, |mut acc, theta| {
            for &a in &abilities {
                if a + h > 1.0 + 1e-12 {
                    continue;
                }
                let margin = correct_vote_prob_raw(theta, (a + h).min(1.0))
                    - correct_vote_prob_raw(theta, a);
                acc.attempted += 1;
                acc.record(ClaimKind::NonStrict, &[theta, a], margin);
            }
            acc
        })
        .reduce(ScanOutcome::empty, ScanOutcome::merge)
}

// --- binary warm-up model ------------------------------------------------------

fn binary_grid(step: f64) -> Vec<f64> {
    let mut vals = vec![0.5];
    let mut k = 1u64;
    loop {
        let v = 0.5 + k as f64 * step;
        if v >= 1.0 - 1e-12 {
            vals.push(1.0);
            break;
        }
        vals.push(v);
        k += 1;
    }
    vals
}

fn fis_scan(step: f64, position: VotePosition) -> ScanOutcome {
    let vals = binary_grid(step);
    let n = vals.len();
    let mut triples = Vec::new();
    for i in 0..n {
        for j in i..n {
            for k in j..n {
                triples.push((vals[i], vals[j], vals[k]));
            }
        }
    }
    triples
        .into_par_iter()
        .fold(ScanOutcome::empty, |mut acc, (p, q, r)| {
            acc.attempted += 1;
            acc.record(ClaimKind::NonStrict, &[p, q, r], fis_worst_gap(p, q, r, position));
            acc
        })
        .reduce(ScanOutcome::empty, ScanOutcome::merge)
}

fn check_prop1_median_second(cfg: &CheckConfig) -> ScanOutcome {
    fis_scan(resolved_step(cfg, 0.02), VotePosition::Second)
}

/// Existence check: passes when the grid contains a genuine failure, which
/// is then reported as the worst case.
fn fis_counterexample_scan(step: f64, position: VotePosition) -> ScanOutcome {
    let mut scan = fis_scan(step, position);
    let found = scan.worst_margin < -1e-9;
    scan.violations = if found { 0 } else { 1 };
    scan
}

fn check_prop1_first_fails(cfg: &CheckConfig) -> ScanOutcome {
    fis_counterexample_scan(resolved_step(cfg, 0.02), VotePosition::First)
}

fn check_prop1_last_fails(cfg: &CheckConfig) -> ScanOutcome {
    fis_counterexample_scan(resolved_step(cfg, 0.02), VotePosition::Third)
}

// --- fixed examples --------------------------------------------------------------

fn check_abler_not_always_better(_cfg: &CheckConfig) -> ScanOutcome {
    let cases = [
        ([0.25, 0.125, 0.5], [0.0, 0.125, 0.5]),
        ([0.01, 0.96, 0.9375], [0.0, 0.96, 0.9375]),
        ([0.1, 0.05, 0.9], [0.0, 0.05, 0.9]),
    ];
    let mut acc = ScanOutcome::empty();
    for (abler, weaker) in cases {
        let margin = reliability_sequential_raw(weaker[0], weaker[1], weaker[2])
            - reliability_sequential_raw(abler[0], abler[1], abler[2]);
        acc.attempted += 1;
        let inputs: Vec<f64> = abler.iter().chain(&weaker).copied().collect();
        acc.record(ClaimKind::Strict, &inputs, margin);
    }
    acc
}

// --- appendix sign conditions ------------------------------------------------------

fn check_f1(cfg: &CheckConfig) -> ScanOutcome {
    scan_region(
        &[(0.0, 1.0); 3],
        resolved_step(cfg, 0.05),
        cfg.sample_points,
        cfg.seed,
        ClaimKind::Strict,
        |p| {
            let (a, b, c) = (p[0], p[1], p[2]);
            a >= b / 2.0 + CLEARANCE
                && a <= b - CLEARANCE
                && c >= herding_cutoff_raw(b, a) + CLEARANCE
                && c <= herding_cutoff_raw(a, b)
        },
        |p| polys::swap12_h3_vs_s(p[0], p[1], p[2]),
    )
}

fn check_f2(cfg: &CheckConfig) -> ScanOutcome {
    scan_region(
        &[(0.0, 1.0); 3],
        resolved_step(cfg, 0.05),
        cfg.sample_points,
        cfg.seed,
        ClaimKind::Strict,
        |p| {
            let (a, b, c) = (p[0], p[1], p[2]);
            b >= CLEARANCE && a <= b / 2.0 && c >= herding_cutoff_raw(a, b) + CLEARANCE && c <= 1.0
        },
        |p| polys::swap12_s_vs_h2(p[0], p[1], p[2]),
    )
}

fn check_f3(cfg: &CheckConfig) -> ScanOutcome {
    scan_region(
        &[(0.0, 1.0); 3],
        resolved_step(cfg, 0.05),
        cfg.sample_points,
        cfg.seed,
        ClaimKind::Strict,
        |p| {
            let (a, b, c) = (p[0], p[1], p[2]);
            a >= b / 2.0 + CLEARANCE && a <= b - CLEARANCE && c >= herding_cutoff_raw(a, b) + CLEARANCE
        },
        |p| polys::swap12_s_vs_s(p[0], p[1], p[2]),
    )
}

fn check_f4(cfg: &CheckConfig) -> ScanOutcome {
    scan_region(
        &[(0.0, 1.0); 3],
        resolved_step(cfg, 0.05),
        cfg.sample_points,
        cfg.seed,
        ClaimKind::Strict,
        |p| {
            let (a, b, c) = (p[0], p[1], p[2]);
            a <= b - CLEARANCE
                && c >= b / 2.0 + CLEARANCE
                && a <= herding_cutoff_raw(b, c)
                && b >= herding_cutoff_raw(a, c) + CLEARANCE
        },
        |p| polys::swap13_h3_vs_s(p[0], p[1], p[2]),
    )
}

fn check_f5(cfg: &CheckConfig) -> ScanOutcome {
    scan_region(
        &[(0.0, 1.0); 3],
        resolved_step(cfg, 0.05),
        cfg.sample_points,
        cfg.seed,
        ClaimKind::Strict,
        |p| {
            let (a, b, c) = (p[0], p[1], p[2]);
            a <= b - CLEARANCE
                && c >= b / 2.0 + CLEARANCE
                && a >= herding_cutoff_raw(b, c) + CLEARANCE
                && b >= herding_cutoff_raw(a, c) + CLEARANCE
        },
        |p| polys::swap13_s_vs_s(p[0], p[1], p[2]),
    )
}

fn check_h1(cfg: &CheckConfig) -> ScanOutcome {
    scan_region(
        &[(0.0, 1.0); 3],
        resolved_step(cfg, 0.05),
        cfg.sample_points,
        cfg.seed,
        ClaimKind::NonStrict,
        |p| p[0] <= p[1] && p[1] <= p[2] && homogeneity_raw(p[0], p[1], p[2]) >= 6.0 / 7.0,
        |p| polys::sim_minus_seq(p[0], p[1], p[2]),
    )
}

fn check_h2(cfg: &CheckConfig) -> ScanOutcome {
    scan_region(
        &[(0.0, 1.0); 3],
        resolved_step(cfg, 0.05),
        cfg.sample_points,
        cfg.seed,
        ClaimKind::NonStrict,
        |p| {
            p[0] <= p[1]
                && p[1] <= p[2]
                && heterogeneity_raw(p[0], p[1], p[2]) >= 4.0 / 3.0
                && polys::seq_herding_branch(p[0], p[1], p[2])
        },
        |p| polys::seq_minus_sim_herding(p[0], p[1], p[2]),
    )
}

fn check_neg_h1(cfg: &CheckConfig) -> ScanOutcome {
    scan_region(
        &[(0.0, 1.0); 3],
        resolved_step(cfg, 0.05),
        cfg.sample_points,
        cfg.seed,
        ClaimKind::NonStrict,
        |p| {
            p[0] <= p[1]
                && p[1] <= p[2]
                && heterogeneity_raw(p[0], p[1], p[2]) >= 4.0 / 3.0
                && !polys::seq_herding_branch(p[0], p[1], p[2])
        },
        |p| -polys::sim_minus_seq(p[0], p[1], p[2]),
    )
}

fn check_omega(cfg: &CheckConfig) -> ScanOutcome {
    scan_region(
        &[(0.0, 1.0), (0.0, 1.0), (-1.0, 1.0), (-1.0, 1.0), (-1.0, 1.0), (-1.0, 1.0)],
        0.0,
        cfg.sample_points,
        cfg.seed,
        ClaimKind::NonStrict,
        |p| p[1] >= 1.75 * p[0],
        |p| polys::strategic_margin_form(p[0], p[1], p[1], p[2], p[3], p[4], p[5]),
    )
}

fn check_w_increasing(cfg: &CheckConfig) -> ScanOutcome {
    let h = resolved_step(cfg, 0.01);
    scan_region(
        &[(CLEARANCE, 1.0 - CLEARANCE), (1.0, 8.0)],
        0.0,
        cfg.sample_points,
        cfg.seed,
        ClaimKind::Strict,
        move |p| p[1] + h <= 8.0 && trio::diversity_herd_indicator(p[0], p[1]) >= 0.0,
        move |p| {
            trio::diversity_herd_indicator(p[0], p[1] + h)
                - trio::diversity_herd_indicator(p[0], p[1])
        },
    )
}

fn check_qbar1_increasing(cfg: &CheckConfig) -> ScanOutcome {
    let h = resolved_step(cfg, 0.01);
    scan_region(
        &[(CLEARANCE, 1.0 - CLEARANCE), (1.0, 8.0)],
        0.0,
        cfg.sample_points,
        cfg.seed,
        ClaimKind::Strict,
        move |p| p[1] + h <= 8.0,
        move |p| trio::diversity_q_herding(p[0], p[1] + h) - trio::diversity_q_herding(p[0], p[1]),
    )
}

fn check_qbar2_increasing(cfg: &CheckConfig) -> ScanOutcome {
    let h = resolved_step(cfg, 0.01);
    let qbar2 = |m: f64, mu: f64| trio::diversity_q_num(m, mu) / trio::diversity_q_den(m, mu);
    scan_region(
        &[(CLEARANCE, 1.0 - CLEARANCE), (1.0, 8.0)],
        0.0,
        cfg.sample_points,
        cfg.seed,
        ClaimKind::Strict,
        move |p| p[1] + h <= 8.0,
        move |p| qbar2(p[0], p[1] + h) - qbar2(p[0], p[1]),
    )
}

// --- catalog -------------------------------------------------------------------

static CATALOG: &[CheckDef] = &[
    CheckDef {
        info: CheckInfo {
            id: "thm1-last-two",
            claim: "Reordering the last two voters of a five-member jury into descending ability never lowers reliability (paired Monte Carlo, 3-sigma slack)",
            domain: "random juries of size 5, abilities uniform on [0,1]",
        },
        run: check_thm1_last_two,
    },
    CheckDef {
        info: CheckInfo {
            id: "thm2-optimal-order",
            claim: "(median, best, worst) is the strict argmax of trio reliability over all six voting orders",
            domain: "sorted distinct positive ability triples on a grid",
        },
        run: check_thm2,
    },
    CheckDef {
        info: CheckInfo {
            id: "thm3-ability-monotone",
            claim: "Trio reliability is nondecreasing in the second and third abilities everywhere, and in the first ability above half the third",
            domain: "forward differences on the full ability-cube grid",
        },
        run: check_thm3,
    },
    CheckDef {
        info: CheckInfo {
            id: "thm4-so-beats-ao",
            claim: "Descending-ability voting strictly beats ascending-ability voting for distinct triples",
            domain: "sorted distinct ability triples on a grid (weakest may be zero)",
        },
        run: check_thm4,
    },
    CheckDef {
        info: CheckInfo {
            id: "thm5-homogeneous-sim",
            claim: "Homogeneity index >= 6/7 makes simultaneous voting at least as reliable as optimally ordered sequential voting",
            domain: "sorted triples with homogeneity >= 6/7 (grid + quasi-random)",
        },
        run: check_thm5_homogeneous,
    },
    CheckDef {
        info: CheckInfo {
            id: "thm5-heterogeneous-seq",
            claim: "Heterogeneity index >= 4/3 makes optimally ordered sequential voting at least as reliable as simultaneous voting",
            domain: "sorted triples with heterogeneity >= 4/3 (grid + quasi-random)",
        },
        run: check_thm5_heterogeneous,
    },
    CheckDef {
        info: CheckInfo {
            id: "thm6-diversity-monotone",
            claim: "At fixed mean ability the optimally ordered reliability strictly increases with the heterogeneity index",
            domain: "means 0.1..0.9, heterogeneity swept over the valid domain (capped at 8)",
        },
        run: check_thm6,
    },
    CheckDef {
        info: CheckInfo {
            id: "thm7-strategic-heterogeneous",
            claim: "Heterogeneity >= 7/4 makes honest voting in the optimal order attain the strategic optimum (within 1e-6)",
            domain: "sampled sorted triples with heterogeneity >= 7/4",
        },
        run: check_thm7_heterogeneous,
    },
    CheckDef {
        info: CheckInfo {
            id: "thm7-strategic-equal",
            claim: "Equal abilities make simultaneous honest voting attain the strategic optimum (within 1e-6)",
            domain: "sampled equal-ability juries",
        },
        run: check_thm7_equal,
    },
    CheckDef {
        info: CheckInfo {
            id: "thm8-deliberation-seniority",
            claim: "With signals revealed (deliberation), the seniority order maximises verdict correctness (paired Monte Carlo, 3-sigma slack)",
            domain: "sampled ability triples, all six orders on common signal draws",
        },
        run: check_thm8_deliberation,
    },
    CheckDef {
        info: CheckInfo {
            id: "lemma1-duo-seniority",
            claim: "Under the unanimity rule the abler of two jurors should vote first, for every prior",
            domain: "prior x ability-pair grid",
        },
        run: check_lemma1,
    },
    CheckDef {
        info: CheckInfo {
            id: "lemma2-correctness-monotone",
            claim: "A lone juror's probability of voting correctly is nondecreasing in ability, for every prior",
            domain: "forward differences on the prior x ability grid",
        },
        run: check_lemma2,
    },
    CheckDef {
        info: CheckInfo {
            id: "prop1-median-second",
            claim: "Binary signals: honest sequential voting recovers the full-information solution for every pattern when the strongest juror votes second",
            domain: "sorted accuracy triples on a grid over [1/2, 1]",
        },
        run: check_prop1_median_second,
    },
    CheckDef {
        info: CheckInfo {
            id: "prop1-first-fails",
            claim: "Binary signals: some accuracy triple misses the full-information solution when the strongest juror votes first (existence; the triple is reported)",
            domain: "sorted accuracy triples on a grid over [1/2, 1]",
        },
        run: check_prop1_first_fails,
    },
    CheckDef {
        info: CheckInfo {
            id: "prop1-last-fails",
            claim: "Binary signals: some accuracy triple misses the full-information solution when the strongest juror votes last (existence; the triple is reported)",
            domain: "sorted accuracy triples on a grid over [1/2, 1]",
        },
        run: check_prop1_last_fails,
    },
    CheckDef {
        info: CheckInfo {
            id: "prop2-first-two",
            claim: "Starting with the weaker of the first two voters is strictly better (positive first abilities)",
            domain: "grid pairs a < b with every third ability",
        },
        run: check_prop2,
    },
    CheckDef {
        info: CheckInfo {
            id: "prop3-end-voters",
            claim: "Swapping a weaker first voter with a stronger last voter strictly helps, for any middle voter",
            domain: "grid pairs a < b with every middle ability",
        },
        run: check_prop3,
    },
    CheckDef {
        info: CheckInfo {
            id: "abler-not-always-better",
            claim: "Raising one ability can strictly lower reliability (three fixed witness juries)",
            domain: "fixed example juries",
        },
        run: check_abler_not_always_better,
    },
    CheckDef {
        info: CheckInfo {
            id: "f1-positive",
            claim: "Witness polynomial for the first-two swap (third-herding vs no-herding branch) is positive",
            domain: "b/2 < a < b, cutoff(b,a) < c <= cutoff(a,b), 1e-3 clearance off open edges",
        },
        run: check_f1,
    },
    CheckDef {
        info: CheckInfo {
            id: "f2-positive",
            claim: "Witness polynomial for the first-two swap (no-herding vs second-herding branch) is positive",
            domain: "a <= b/2, c > cutoff(a,b), 1e-3 clearance off open edges",
        },
        run: check_f2,
    },
    CheckDef {
        info: CheckInfo {
            id: "f3-positive",
            claim: "Witness polynomial for the first-two swap (both orders free of herding) is positive",
            domain: "b/2 < a < b, c > cutoff(a,b), 1e-3 clearance off open edges",
        },
        run: check_f3,
    },
    CheckDef {
        info: CheckInfo {
            id: "f4-positive",
            claim: "Witness polynomial for the end-voters swap (third-herding vs no-herding branch) is positive",
            domain: "a < b, c > b/2, a <= cutoff(b,c) < b herding split, 1e-3 clearance",
        },
        run: check_f4,
    },
    CheckDef {
        info: CheckInfo {
            id: "f5-positive",
            claim: "Witness polynomial for the end-voters swap (both orders free of herding) is positive",
            domain: "a < b, c > b/2, both orders past their cutoffs, 1e-3 clearance",
        },
        run: check_f5,
    },
    CheckDef {
        info: CheckInfo {
            id: "h1-nonneg",
            claim: "Simultaneous-minus-sequential witness is nonnegative when homogeneity >= 6/7",
            domain: "sorted triples with homogeneity >= 6/7",
        },
        run: check_h1,
    },
    CheckDef {
        info: CheckInfo {
            id: "h2-nonneg",
            claim: "Sequential-minus-simultaneous witness is nonnegative when heterogeneity >= 4/3, on its third-herding branch",
            domain: "sorted triples, heterogeneity >= 4/3, herding branch condition",
        },
        run: check_h2,
    },
    CheckDef {
        info: CheckInfo {
            id: "negh1-nonneg",
            claim: "Negated simultaneous-minus-sequential witness is nonnegative when heterogeneity >= 4/3, off the herding branch",
            domain: "sorted triples, heterogeneity >= 4/3, complement of the herding branch",
        },
        run: check_neg_h1,
    },
    CheckDef {
        info: CheckInfo {
            id: "omega-nonneg",
            claim: "Strategic-optimality margin form is nonnegative when the top-to-middle ability ratio is at least 7/4",
            domain: "c >= 1.75 b with all four late thresholds free in [-1, 1]",
        },
        run: check_omega,
    },
    CheckDef {
        info: CheckInfo {
            id: "w-increasing",
            claim: "The diversity herding indicator increases in heterogeneity wherever it is nonnegative",
            domain: "mean x heterogeneity box, forward differences",
        },
        run: check_w_increasing,
    },
    CheckDef {
        info: CheckInfo {
            id: "qbar1-increasing",
            claim: "The herding branch of the diversity curve strictly increases in heterogeneity",
            domain: "mean x heterogeneity box, forward differences",
        },
        run: check_qbar1_increasing,
    },
    CheckDef {
        info: CheckInfo {
            id: "qbar2-increasing",
            claim: "The rational branch of the diversity curve strictly increases in heterogeneity",
            domain: "mean x heterogeneity box, forward differences",
        },
        run: check_qbar2_increasing,
    },
];

/// All registered check ids, in catalog order.
pub fn check_ids() -> Vec<&'static str> {
    CATALOG.iter().map(|c| c.info.id).collect()
}

/// Static id/claim/domain description of every registered check.
pub fn check_infos() -> Vec<CheckInfo> {
    CATALOG.iter().map(|c| c.info).collect()
}

fn build_report(id: &str, domain: &str, outcome: ScanOutcome, elapsed_ms: u64) -> CheckReport {
    let margin = if outcome.worst_margin.is_finite() {
        outcome.worst_margin
    } else {
        f64::MAX
    };
    CheckReport {
        check_id: id.to_string(),
        domain_description: domain.to_string(),
        points_tested: outcome.accepted,
        violations: outcome.violations,
        worst_case: WorstCase { inputs: outcome.worst_inputs, margin },
        accept_rate: if outcome.attempted == 0 {
            1.0
        } else {
            outcome.accepted as f64 / outcome.attempted as f64
        },
        elapsed_ms,
    }
}

/// Run a single registered check.
pub fn run_check(check_id: &str, cfg: &CheckConfig) -> Result<CheckReport, Error> {
    let def = CATALOG
        .iter()
        .find(|c| c.info.id == check_id)
        .ok_or_else(|| Error::UnknownCheck(check_id.to_string()))?;
    let start = Instant::now();
    let outcome = (def.run)(cfg);
    Ok(build_report(
        def.info.id,
        def.info.domain,
        outcome,
        start.elapsed().as_millis() as u64,
    ))
}

/// Run the whole catalog. The run is a pass only if every report is.
pub fn run_all(cfg: &CheckConfig) -> Vec<CheckReport> {
    CATALOG
        .par_iter()
        .map(|def| {
            let start = Instant::now();
            let outcome = (def.run)(cfg);
            build_report(def.info.id, def.info.domain, outcome, start.elapsed().as_millis() as u64)
        })
        .collect()
}
