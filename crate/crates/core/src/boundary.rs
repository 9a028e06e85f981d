//! Sequential-vs-simultaneous comparison data for a fixed middle ability.
//!
//! For sorted abilities `a <= b <= c` with `b` fixed, scans the square
//! `a in [0, b]`, `c in [b, 1]`, comparing optimally ordered sequential
//! voting against simultaneous voting at the neutral prior, and refines the
//! zero-crossing curve by bisection. Also reports the two guarantee
//! rectangles: homogeneity at least 6/7 (simultaneous at least as good) and
//! heterogeneity at least 4/3 (sequential at least as good).

use serde::Serialize;

use crate::trio::{reliability_sequential_raw, reliability_simultaneous_raw};

/// Sign of the sequential advantage at one grid point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridPoint {
    pub a: f64,
    pub c: f64,
    /// `1` sequential better, `-1` simultaneous better, `0` within 1e-12.
    pub sign: i8,
}

/// A point on the refined zero-crossing curve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CrossingPoint {
    pub a: f64,
    pub c: f64,
    /// |sequential - simultaneous| left after bisection.
    pub residual: f64,
}

/// Axis-aligned `(a, c)` rectangle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Rect {
    pub a_min: f64,
    pub a_max: f64,
    pub c_min: f64,
    pub c_max: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundaryData {
    pub middle_ability: f64,
    pub grid_step: f64,
    pub grid: Vec<GridPoint>,
    pub crossing: Vec<CrossingPoint>,
    /// Homogeneity >= 6/7: simultaneous voting is at least as reliable.
    pub simultaneous_rect: Rect,
    /// Heterogeneity >= 4/3: sequential voting is at least as reliable.
    pub sequential_rect: Rect,
}

/// Sequential advantage `Q(b, c, a) - Q_sim(1/2; a, b, c)` for sorted
/// abilities, with the sequential jury in its optimal order.
pub fn sequential_advantage(a: f64, b: f64, c: f64) -> f64 {
    reliability_sequential_raw(b, c, a) - reliability_simultaneous_raw(0.5, a, b, c)
}

const SIGN_TOL: f64 = 1e-12;
const BISECT_ITERS: usize = 60;

pub fn boundary_scan(middle_ability: f64, grid_step: f64) -> BoundaryData {
    let b = middle_ability;
    let steps_a = (b / grid_step).round() as usize;
    let steps_c = ((1.0 - b) / grid_step).round() as usize;
    let a_at = |i: usize| (i as f64 * grid_step).min(b);
    let c_at = |j: usize| (b + j as f64 * grid_step).min(1.0);

    let mut grid = Vec::with_capacity((steps_a + 1) * (steps_c + 1));
    for i in 0..=steps_a {
        for j in 0..=steps_c {
            let (a, c) = (a_at(i), c_at(j));
            let d = sequential_advantage(a, b, c);
            let sign = if d > SIGN_TOL {
                1
            } else if d < -SIGN_TOL {
                -1
            } else {
                0
            };
            grid.push(GridPoint { a, c, sign });
        }
    }

    // One crossing per a-column, found at the first sign change in c and
    // refined by bisection.
    let mut crossing = Vec::new();
    for i in 0..=steps_a {
        let a = a_at(i);
        let mut prev_c = c_at(0);
        let mut prev_d = sequential_advantage(a, b, prev_c);
        for j in 1..=steps_c {
            let c = c_at(j);
            let d = sequential_advantage(a, b, c);
            if prev_d.signum() != d.signum() && prev_d != 0.0 {
                let (mut lo, mut hi, mut d_lo) = (prev_c, c, prev_d);
                for _ in 0..BISECT_ITERS {
                    let mid = 0.5 * (lo + hi);
                    let d_mid = sequential_advantage(a, b, mid);
                    if d_mid.signum() == d_lo.signum() {
                        lo = mid;
                        d_lo = d_mid;
                    } else {
                        hi = mid;
                    }
                }
                let c_star = 0.5 * (lo + hi);
                crossing.push(CrossingPoint {
                    a,
                    c: c_star,
                    residual: sequential_advantage(a, b, c_star).abs(),
                });
                break;
            }
            prev_c = c;
            prev_d = d;
        }
    }

    // lambda(a, b, c) >= 6/7 <=> a >= 6b/7 and c <= 7b/6;
    // mu(a, b, c) >= 4/3 <=> a <= 3b/4 and c >= 4b/3.
    let simultaneous_rect = Rect {
        a_min: 6.0 * b / 7.0,
        a_max: b,
        c_min: b,
        c_max: (7.0 * b / 6.0).min(1.0),
    };
    let sequential_rect = Rect {
        a_min: 0.0,
        a_max: 3.0 * b / 4.0,
        c_min: (4.0 * b / 3.0).min(1.0),
        c_max: 1.0,
    };

    BoundaryData {
        middle_ability: b,
        grid_step,
        grid,
        crossing,
        simultaneous_rect,
        sequential_rect,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rectangles_at_middle_half() {
        let data = boundary_scan(0.5, 0.05);
        let sim = data.simultaneous_rect;
        assert!((sim.a_min - 3.0 / 7.0).abs() < 1e-12);
        assert!((sim.c_max - 7.0 / 12.0).abs() < 1e-12);
        let seq = data.sequential_rect;
        assert!((seq.a_max - 3.0 / 8.0).abs() < 1e-12);
        assert!((seq.c_min - 2.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn known_points_fall_on_the_right_sides() {
        // Homogeneous corner: simultaneous better.
        assert!(sequential_advantage(0.45, 0.5, 0.55) < 0.0);
        // Heterogeneous corner: sequential better.
        assert!(sequential_advantage(0.3, 0.5, 0.7) > 0.0);
    }

    #[test]
    fn crossing_points_are_near_zero() {
        let data = boundary_scan(0.5, 0.02);
        assert!(!data.crossing.is_empty());
        for p in &data.crossing {
            assert!(p.residual <= 1e-10, "residual {} at a={}", p.residual, p.a);
        }
    }

    #[test]
    fn crossing_separates_the_rectangles() {
        let data = boundary_scan(0.5, 0.01);
        for p in &data.crossing {
            if p.a <= data.sequential_rect.a_max {
                assert!(p.c < data.sequential_rect.c_min, "crossing above the sequential rectangle at a={}", p.a);
            }
            if p.a >= data.simultaneous_rect.a_min {
                assert!(p.c > data.simultaneous_rect.c_max, "crossing below the simultaneous rectangle at a={}", p.a);
            }
        }
    }
}
