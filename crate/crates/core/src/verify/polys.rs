//! Witness polynomials for the inequality checks.
//!
//! Each polynomial is the numerator of a reliability difference over a
//! positive denominator, so its sign on the relevant region certifies the
//! corresponding comparison. The unit tests pin every transcription to the
//! closed-form reliabilities through exact rational identities.

/// First-two-voters swap, weaker-first side in the third-herding region vs
/// swapped order with nobody herding:
/// `q_h3(a,b) - q_s(b,a,c) = f1 / (128·a·b·c·(8 - b² - 2ab))`.
pub(crate) fn swap12_h3_vs_s(a: f64, b: f64, c: f64) -> f64 {
    let d = 8.0 - 2.0 * a * b - b * b;
    -4.0 * (2.0 * a - b).powi(3) * b
        + 4.0 * d * (2.0 * a.powi(3) - 4.0 * a * a * b + 4.0 * a * b * b - b.powi(3)) * c
        - b * (2.0 * a - b) * d * d * c * c
}

/// First-two-voters swap, no herding vs swapped order herding the second:
/// `q_s(a,b,c) - (b+2)/4 = f2 / (128·b·c·(8 - a² - 2ab))`.
pub(crate) fn swap12_s_vs_h2(a: f64, b: f64, c: f64) -> f64 {
    let d = 8.0 - a * a - 2.0 * a * b;
    -4.0 * (a - 2.0 * b).powi(3)
        + 4.0 * d * (a * a + 4.0 * a * b - 4.0 * b * b) * c
        + (2.0 * b - a) * d * d * c * c
}

/// First-two-voters swap with nobody herding either way:
/// `q_s(a,b,c) - q_s(b,a,c) = (b-a)·f3 / (128·a·b·c·(8-2ab-a²)·(8-2ab-b²))`.
pub(crate) fn swap12_s_vs_s(a: f64, b: f64, c: f64) -> f64 {
    let da = 8.0 - 2.0 * a * b - a * a;
    let db = 8.0 - 2.0 * a * b - b * b;
    c * c * (a + b) * da * (8.0 - a * a - b * b) * db
        - 4.0 * c * da * (a * a + a * b + b * b) * db
        - 4.0 * (a + b)
            * (10.0 * a.powi(3) * b - 7.0 * a * a * b * b - 8.0 * a * a + 10.0 * a * b.powi(3)
                - 16.0 * a * b
                - 8.0 * b * b)
}

/// End-voters swap, third-herding side vs no herding:
/// `q_h3(b,c) - q_s(a,c,b) = f4 / (128·b·c·(8 - a² - 2ac))`.
pub(crate) fn swap13_h3_vs_s(a: f64, b: f64, c: f64) -> f64 {
    4.0 * a.powi(3) - 32.0 * a * a * b + 4.0 * a.powi(4) * b + 64.0 * a * b * b
        - 16.0 * a.powi(3) * b * b
        + a.powi(5) * b * b
        + 64.0 * b.powi(3)
        - 8.0 * a * a * b.powi(3)
        - 24.0 * a * a * c
        - 128.0 * a * b * c
        + 24.0 * a.powi(3) * b * c
        - 128.0 * b * b * c
        + 2.0 * a.powi(4) * b * b * c
        - 16.0 * a * b.powi(3) * c
        + 48.0 * a * c * c
        + 128.0 * b * c * c
        + 16.0 * a * a * b * c * c
        + 64.0 * a * b * b * c * c
        - 4.0 * a.powi(3) * b * b * c * c
        - 32.0 * c.powi(3)
        - 32.0 * a * b * c.powi(3)
        - 8.0 * a * a * b * b * c.powi(3)
}

/// End-voters swap with nobody herding either way:
/// `q_s(b,c,a) - q_s(a,c,b) = (b-a)·f5 / (128·a·b·c·(8-a²-2ac)·(8-b²-2bc))`.
pub(crate) fn swap13_s_vs_s(a: f64, b: f64, c: f64) -> f64 {
    -32.0 * a.powi(3) + 224.0 * a * a * b - 32.0 * a.powi(4) * b + 224.0 * a * b * b
        + 36.0 * a.powi(3) * b * b
        - 8.0 * a.powi(5) * b * b
        - 32.0 * b.powi(3)
        + 36.0 * a * a * b.powi(3)
        - 4.0 * a.powi(4) * b.powi(3)
        - 32.0 * a * b.powi(4)
        - 4.0 * a.powi(3) * b.powi(4)
        + a.powi(5) * b.powi(4)
        - 8.0 * a * a * b.powi(5)
        + a.powi(4) * b.powi(5)
        + 192.0 * a * a * c
        + 192.0 * a * b * c
        - 56.0 * a.powi(3) * b * c
        + 192.0 * b * b * c
        - 144.0 * a * a * b * b * c
        - 8.0 * a.powi(4) * b * b * c
        - 56.0 * a * b.powi(3) * c
        - 16.0 * a.powi(3) * b.powi(3) * c
        + 2.0 * a.powi(5) * b.powi(3) * c
        - 8.0 * a * a * b.powi(4) * c
        + 4.0 * a.powi(4) * b.powi(4) * c
        + 2.0 * a.powi(3) * b.powi(5) * c
        - 384.0 * a * c * c
        - 384.0 * b * c * c
        - 48.0 * a * a * b * c * c
        - 48.0 * a * b * b * c * c
        + 16.0 * a.powi(3) * b * b * c * c
        + 16.0 * a * a * b.powi(3) * c * c
        + 4.0 * a.powi(4) * b.powi(3) * c * c
        + 4.0 * a.powi(3) * b.powi(4) * c * c
        + 256.0 * c.powi(3)
        + 128.0 * a * b * c.powi(3)
}

/// Simultaneous minus optimally ordered sequential, no-herding branch:
/// `Q_sim(1/2;a,b,c) - q_s(b,c,a) = h1 / (128·a·c·(8 - 2bc - b²))`.
pub(crate) fn sim_minus_seq(a: f64, b: f64, c: f64) -> f64 {
    64.0 * a * a * b - 32.0 * a * b * b + 4.0 * b.powi(3) - 16.0 * a * a * b.powi(3)
        + 4.0 * a * b.powi(4)
        + a * a * b.powi(5)
        - 24.0 * b * b * c
        - 16.0 * a * a * b * b * c
        + 8.0 * a * b.powi(3) * c
        + 2.0 * a * a * b.powi(4) * c
        + 48.0 * b * c * c
        - 32.0 * c.powi(3)
}

/// Optimally ordered sequential minus simultaneous, third-herding branch:
/// `q_h3(b,c) - Q_sim(1/2;a,b,c) = h2 / (32·c)`. The branch applies exactly
/// when `a·(b² + 2bc - 8) + 4c >= 2b`, i.e. when the least-able juror herds
/// in the order `(b, c, a)`.
pub(crate) fn seq_minus_sim_herding(a: f64, b: f64, c: f64) -> f64 {
    b * c * (a * c - 4.0) + 4.0 * c * (c - a) + 2.0 * b * b
}

/// Whether the third-herding branch above is the active one.
pub(crate) fn seq_herding_branch(a: f64, b: f64, c: f64) -> bool {
    a * (b * b + 2.0 * b * c - 8.0) + 4.0 * c >= 2.0 * b
}

/// Strategic-optimality margin form: for abilities `(b, c, 4b/7)` in voting
/// order and first threshold 0,
/// `q_h3(b,c) - Q_str(1/2; b,c,4b/7; 0,y1,y2,z1,z2) = Omega(b,c,c,…) / (112·c)`.
#[allow(clippy::too_many_arguments)]
pub(crate) fn strategic_margin_form(
    b: f64,
    c: f64,
    d: f64,
    y1: f64,
    y2: f64,
    z1: f64,
    z2: f64,
) -> f64 {
    7.0 * c * c * (2.0 - z1 + y1 * y1 * (1.0 + z1) - y2 * y2 * (z2 - 1.0) + z2)
        + b * c
            * (-22.0 + 7.0 * z1 + 4.0 * z1 * z1 + y1 * (3.0 + 7.0 * z1 + 4.0 * z1 * z1) - 7.0 * z2
                + 4.0 * z2 * z2
                + y2 * (-3.0 + 7.0 * z2 - 4.0 * z2 * z2))
        + b * b
            * (7.0
                + d * d
                    * ((1.0 - y1 * y1) * (1.0 - z1 * z1) + (1.0 - y2 * y2) * (1.0 - z2 * z2)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trio::{
        herding_cutoff_raw, q_no_herding, q_third_herds, reliability_simultaneous_raw,
        strategic_value,
    };
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn rng() -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(4242)
    }

    /// Abilities bounded away from zero so the rational identities have
    /// nonzero denominators.
    fn draw(r: &mut ChaCha8Rng) -> f64 {
        0.05 + 0.95 * r.gen::<f64>()
    }

    #[test]
    fn swap12_identities() {
        let mut r = rng();
        for _ in 0..2000 {
            let (a, b, c) = (draw(&mut r), draw(&mut r), draw(&mut r));
            let lhs1 = q_third_herds(a, b) - q_no_herding(b, a, c);
            let rhs1 = swap12_h3_vs_s(a, b, c) / (128.0 * a * b * c * (8.0 - b * b - 2.0 * a * b));
            assert!((lhs1 - rhs1).abs() < 1e-12, "f1 at ({a}, {b}, {c})");

            let lhs2 = q_no_herding(a, b, c) - (b + 2.0) / 4.0;
            let rhs2 = swap12_s_vs_h2(a, b, c) / (128.0 * b * c * (8.0 - a * a - 2.0 * a * b));
            assert!((lhs2 - rhs2).abs() < 1e-12, "f2 at ({a}, {b}, {c})");

            let lhs3 = q_no_herding(a, b, c) - q_no_herding(b, a, c);
            let rhs3 = (b - a) * swap12_s_vs_s(a, b, c)
                / (128.0
                    * a
                    * b
                    * c
                    * (8.0 - 2.0 * a * b - a * a)
                    * (8.0 - 2.0 * a * b - b * b));
            assert!((lhs3 - rhs3).abs() < 1e-12, "f3 at ({a}, {b}, {c})");
        }
    }

    #[test]
    fn swap13_identities() {
        let mut r = rng();
        for _ in 0..2000 {
            let (a, b, c) = (draw(&mut r), draw(&mut r), draw(&mut r));
            let lhs4 = q_third_herds(b, c) - q_no_herding(a, c, b);
            let rhs4 = swap13_h3_vs_s(a, b, c) / (128.0 * b * c * (8.0 - a * a - 2.0 * a * c));
            assert!((lhs4 - rhs4).abs() < 1e-12, "f4 at ({a}, {b}, {c})");

            let lhs5 = q_no_herding(b, c, a) - q_no_herding(a, c, b);
            let rhs5 = (b - a) * swap13_s_vs_s(a, b, c)
                / (128.0
                    * a
                    * b
                    * c
                    * (8.0 - a * a - 2.0 * a * c)
                    * (8.0 - b * b - 2.0 * b * c));
            assert!((lhs5 - rhs5).abs() < 1e-12, "f5 at ({a}, {b}, {c})");
        }
    }

    #[test]
    fn sim_vs_seq_identities() {
        let mut r = rng();
        for _ in 0..2000 {
            let (a, b, c) = (draw(&mut r), draw(&mut r), draw(&mut r));
            let lhs = reliability_simultaneous_raw(0.5, a, b, c) - q_no_herding(b, c, a);
            let rhs = sim_minus_seq(a, b, c) / (128.0 * a * c * (8.0 - 2.0 * b * c - b * b));
            assert!((lhs - rhs).abs() < 1e-12, "h1 at ({a}, {b}, {c})");

            let lhs = q_third_herds(b, c) - reliability_simultaneous_raw(0.5, a, b, c);
            let rhs = seq_minus_sim_herding(a, b, c) / (32.0 * c);
            assert!((lhs - rhs).abs() < 1e-12, "h2 at ({a}, {b}, {c})");
        }
    }

    #[test]
    fn herding_branch_condition_matches_region() {
        // The h2 branch condition is algebra for "the third voter of the
        // order (b, c, a) herds", i.e. a <= rho(b, c).
        let mut r = rng();
        for _ in 0..5000 {
            let (a, b, c) = (draw(&mut r), draw(&mut r), draw(&mut r));
            let by_condition = seq_herding_branch(a, b, c);
            let by_region = a <= herding_cutoff_raw(b, c);
            assert_eq!(by_condition, by_region, "at ({a}, {b}, {c})");
        }
    }

    #[test]
    fn strategic_margin_identity() {
        let mut r = rng();
        for _ in 0..2000 {
            let (b, c) = (draw(&mut r), draw(&mut r));
            let thresholds: Vec<f64> = (0..4).map(|_| r.gen::<f64>() * 2.0 - 1.0).collect();
            let (y1, y2, z1, z2) =
                (thresholds[0], thresholds[1], thresholds[2], thresholds[3]);
            let lhs = q_third_herds(b, c)
                - strategic_value(0.5, b, c, 4.0 * b / 7.0, &[0.0, y1, y2, z1, z2]);
            let rhs = strategic_margin_form(b, c, c, y1, y2, z1, z2) / (112.0 * c);
            assert!(
                (lhs - rhs).abs() < 1e-12,
                "Omega at ({b}, {c}, {y1}, {y2}, {z1}, {z2})"
            );
        }
    }

    #[test]
    fn strategic_expansion_matches_product_form() {
        // Polynomial expansion of the strategic reliability at the neutral
        // prior, kept as an independent transcription of the same quantity.
        #[allow(clippy::too_many_arguments)]
        fn expansion(
            a: f64,
            b: f64,
            c: f64,
            x: f64,
            y1: f64,
            y2: f64,
            z1: f64,
            z2: f64,
        ) -> f64 {
            (a * (x * x - 1.0)
                * (b * c
                    * (y1 * y1 * (z1 * z1 - 1.0) + y2 * y2 * (z2 * z2 - 1.0)
                        - z1 * z1
                        - z2 * z2
                        + 2.0)
                    + 4.0 * (y1 * (z1 + 1.0) + y2 * (z2 - 1.0) + z1 - z2 - 2.0))
                + 4.0
                    * (b * ((x - 1.0) * y1 * y1 * (z1 + 1.0) + (x + 1.0) * y2 * y2 * (z2 - 1.0)
                        - x * z1
                        - x * z2
                        + z1
                        - z2
                        + 2.0)
                        + c * ((x - 1.0) * y1 * (z1 * z1 - 1.0)
                            + (x + 1.0) * y2 * (z2 * z2 - 1.0)
                            + x * z1 * z1
                            - x * z2 * z2
                            - z1 * z1
                            - z2 * z2
                            + 2.0)
                        + 8.0))
                / 64.0
        }
        let mut r = rng();
        for _ in 0..2000 {
            let (a, b, c) = (r.gen::<f64>(), r.gen::<f64>(), r.gen::<f64>());
            let t: Vec<f64> = (0..5).map(|_| r.gen::<f64>() * 2.0 - 1.0).collect();
            let via_products = strategic_value(0.5, a, b, c, &[t[0], t[1], t[2], t[3], t[4]]);
            let via_expansion = expansion(a, b, c, t[0], t[1], t[2], t[3], t[4]);
            assert!(
                (via_products - via_expansion).abs() < 1e-12,
                "at ({a}, {b}, {c}, {t:?})"
            );
        }
    }
}
