//! Point generation and violation counting for the claim checks.
//!
//! A check scans a deterministic grid over the bounding box plus a
//! seed-shifted Halton sequence, keeps the points inside the cited
//! constraint region (rejection), and evaluates a margin at each. Strict
//! claims demand a margin above `STRICT_TOL` at every tested point;
//! claims that permit equality on boundaries only flag margins below
//! `-BOUNDARY_TOL`. The smallest margin seen is reported with its inputs so
//! a failure reproduces from `(check, resolution, seed, worst-case input)`.

use rayon::prelude::*;

use crate::sim::rng::splitmix64;

pub(crate) const STRICT_TOL: f64 = 1e-12;
pub(crate) const BOUNDARY_TOL: f64 = 1e-12;

/// How a margin is judged.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum ClaimKind {
    /// Margin must exceed `STRICT_TOL`.
    Strict,
    /// Margin must not fall below `-BOUNDARY_TOL`.
    NonStrict,
}

impl ClaimKind {
    #[inline]
    pub(crate) fn violated(self, margin: f64) -> bool {
        match self {
            ClaimKind::Strict => !(margin > STRICT_TOL),
            ClaimKind::NonStrict => !(margin >= -BOUNDARY_TOL),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub(crate) struct ScanOutcome {
    pub accepted: u64,
    pub attempted: u64,
    pub violations: u64,
    pub worst_margin: f64,
    pub worst_inputs: Vec<f64>,
}

impl ScanOutcome {
    pub(crate) fn empty() -> Self {
        ScanOutcome {
            accepted: 0,
            attempted: 0,
            violations: 0,
            worst_margin: f64::INFINITY,
            worst_inputs: Vec::new(),
        }
    }

    #[inline]
    pub(crate) fn record(&mut self, kind: ClaimKind, inputs: &[f64], margin: f64) {
        self.accepted += 1;
        if kind.violated(margin) {
            self.violations += 1;
        }
        if margin < self.worst_margin {
            self.worst_margin = margin;
            self.worst_inputs = inputs.to_vec();
        }
    }

    pub(crate) fn merge(mut self, other: ScanOutcome) -> Self {
        self.accepted += other.accepted;
        self.attempted += other.attempted;
        self.violations += other.violations;
        // Deterministic tie-break so parallel reduction order cannot matter.
        let other_wins = other.worst_margin < self.worst_margin
            || (other.worst_margin == self.worst_margin
                && other
                    .worst_inputs
                    .iter()
                    .map(|v| v.to_bits())
                    .lt(self.worst_inputs.iter().map(|v| v.to_bits())));
        if other_wins {
            self.worst_margin = other.worst_margin;
            self.worst_inputs = other.worst_inputs;
        }
        self
    }
}

const HALTON_PRIMES: [u64; 6] = [2, 3, 5, 7, 11, 13];

/// Van der Corput radical inverse.
fn radical_inverse(mut n: u64, base: u64) -> f64 {
    let mut inv = 0.0;
    let mut denom = 1.0;
    while n > 0 {
        denom *= base as f64;
        inv += (n % base) as f64 / denom;
        n /= base;
    }
    inv
}

/// Halton sequence with a per-dimension seed shift (rotation modulo 1),
/// mapped into the bounding box.
pub(crate) struct Halton {
    shifts: Vec<f64>,
    bounds: Vec<(f64, f64)>,
}

impl Halton {
    pub(crate) fn new(bounds: &[(f64, f64)], seed: u64) -> Self {
        assert!(bounds.len() <= HALTON_PRIMES.len(), "extend the prime table");
        let shifts = (0..bounds.len())
            .map(|d| splitmix64(seed ^ (d as u64 + 1)) as f64 / u64::MAX as f64)
            .collect();
        Halton { shifts, bounds: bounds.to_vec() }
    }

    #[inline]
    pub(crate) fn point(&self, index: u64, out: &mut [f64]) {
        for (d, slot) in out.iter_mut().enumerate() {
            let u = (radical_inverse(index, HALTON_PRIMES[d]) + self.shifts[d]).fract();
            let (lo, hi) = self.bounds[d];
            *slot = lo + (hi - lo) * u;
        }
    }
}

const MAX_ATTEMPT_FACTOR: u64 = 512;
const BATCH: u64 = 1 << 15;

/// Grid + quasi-random scan of a region.
pub(crate) fn scan_region<R, M>(
    bounds: &[(f64, f64)],
    grid_step: f64,
    target_samples: usize,
    seed: u64,
    kind: ClaimKind,
    region: R,
    margin: M,
) -> ScanOutcome
where
    R: Fn(&[f64]) -> bool + Sync,
    M: Fn(&[f64]) -> f64 + Sync,
{
    let dims = bounds.len();
    let mut outcome = ScanOutcome::empty();

    // Deterministic grid part; only worthwhile in low dimension.
    if dims <= 3 && grid_step > 0.0 {
        let counts: Vec<u64> = bounds
            .iter()
            .map(|&(lo, hi)| ((hi - lo) / grid_step).round() as u64 + 1)
            .collect();
        let total: u64 = counts.iter().product();
        let grid = (0..total)
            .into_par_iter()
            .fold(ScanOutcome::empty, |mut acc, flat| {
                let mut point = vec![0.0; dims];
                let mut rest = flat;
                for d in 0..dims {
                    let k = rest % counts[d];
                    rest /= counts[d];
                    let (lo, hi) = bounds[d];
                    point[d] = (lo + k as f64 * grid_step).min(hi);
                }
                acc.attempted += 1;
                if region(&point) {
                    acc.record(kind, &point, margin(&point));
                }
                acc
            })
            .reduce(ScanOutcome::empty, ScanOutcome::merge);
        outcome = outcome.merge(grid);
    }

    // Quasi-random part: batches until enough accepted points.
    let halton = Halton::new(bounds, seed);
    let max_attempts = (target_samples as u64).saturating_mul(MAX_ATTEMPT_FACTOR);
    let mut next_index = 1u64;
    let mut accepted_qr = 0u64;
    while accepted_qr < target_samples as u64 && next_index <= max_attempts {
        let hi = (next_index + BATCH).min(max_attempts + 1);
        let batch = (next_index..hi)
            .into_par_iter()
            .fold(ScanOutcome::empty, |mut acc, idx| {
                let mut point = vec![0.0; dims];
                halton.point(idx, &mut point);
                acc.attempted += 1;
                if region(&point) {
                    acc.record(kind, &point, margin(&point));
                }
                acc
            })
            .reduce(ScanOutcome::empty, ScanOutcome::merge);
        accepted_qr += batch.accepted;
        outcome = outcome.merge(batch);
        next_index = hi;
    }
    outcome
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn halton_points_stay_in_bounds_and_are_seed_stable() {
        let bounds = [(0.0, 1.0), (-1.0, 1.0), (0.5, 2.0)];
        let h1 = Halton::new(&bounds, 7);
        let h2 = Halton::new(&bounds, 7);
        let h3 = Halton::new(&bounds, 8);
        let mut p1 = [0.0; 3];
        let mut p2 = [0.0; 3];
        let mut p3 = [0.0; 3];
        let mut any_differs = false;
        for i in 1..500 {
            h1.point(i, &mut p1);
            h2.point(i, &mut p2);
            h3.point(i, &mut p3);
            assert_eq!(p1, p2);
            for (d, &(lo, hi)) in bounds.iter().enumerate() {
                assert!(p1[d] >= lo && p1[d] <= hi);
            }
            any_differs |= p1 != p3;
        }
        assert!(any_differs, "different seeds should shift the sequence");
    }

    #[test]
    fn scan_counts_true_violations() {
        // x + y > 1/2 fails on part of the unit square.
        let out = scan_region(
            &[(0.0, 1.0), (0.0, 1.0)],
            0.25,
            1000,
            3,
            ClaimKind::Strict,
            |_| true,
            |p| p[0] + p[1] - 0.5,
        );
        assert!(out.violations > 0);
        assert!(out.worst_margin <= -0.4);

        // x + y >= 0 on the square holds everywhere.
        let ok = scan_region(
            &[(0.0, 1.0), (0.0, 1.0)],
            0.25,
            1000,
            3,
            ClaimKind::NonStrict,
            |_| true,
            |p| p[0] + p[1],
        );
        assert_eq!(ok.violations, 0);
        assert_eq!(ok.worst_margin, 0.0);
    }

    #[test]
    fn rejection_reports_acceptance() {
        let out = scan_region(
            &[(0.0, 1.0), (0.0, 1.0)],
            0.0,
            2000,
            9,
            ClaimKind::NonStrict,
            |p| p[0] + p[1] < 0.5,
            |_| 1.0,
        );
        assert!(out.accepted >= 2000);
        let rate = out.accepted as f64 / out.attempted as f64;
        assert!((rate - 0.125).abs() < 0.02, "acceptance rate {rate}");
    }

    #[test]
    fn scan_is_deterministic() {
        let run = || {
            scan_region(
                &[(0.0, 1.0); 3],
                0.2,
                5000,
                11,
                ClaimKind::Strict,
                |p| p[0] < p[1],
                |p| p[1] - p[0] + p[2],
            )
        };
        let a = run();
        let b = run();
        assert_eq!(a, b);
    }
}
