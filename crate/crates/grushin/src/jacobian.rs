//! The quasiconformal-Jacobian weight layer for `|x|^β` on the plane.
//!
//! Composing the inverse flattening map with a biLipschitz embedding of
//! `G_α` produces a quasisymmetric map of the plane whose Jacobian is
//! comparable to `|x|^β` with `α = −2β/(2 + β)`; the biLipschitz factor only
//! contributes a bounded multiplicative constant, so the density arithmetic
//! lives entirely in the inverse coordinate map and the Grushin volume
//! element `|x|^{−α/2} dx dy`. This module exposes:
//!
//! * [`alpha_for_beta`] — the exponent algebra and regime classification of
//!   `β`;
//! * [`jacobian_density`] — the pointwise density `(2/(2+α)) · |u|^β`
//!   split into its coordinate and volume factors;
//! * [`acl_integrability`] — the local-integrability test for `|x|^{−t/2}`
//!   that obstructs absolute continuity on lines when it fails;
//! * [`semmes_quasidistance`] — the ball-measure quasidistance
//!   `δ(z, z′) = (∫_{B(z, |z−z′|)} |x|^β dA)^{1/2}` for integrable weights.

use rand::Rng;
use serde::Serialize;

use crate::error::Error;
use crate::sampling;
use crate::Result;

/// Where a weight exponent `β` falls in the solvability landscape of the
/// `|x|^β` Jacobian problem.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum WeightRegime {
    /// `β = 0`: the identity map already has the right Jacobian.
    TrivialIdentity,
    /// `−1 < β < 0`: locally integrable weights, settled affirmatively by
    /// Semmes' construction.
    SemmesRange,
    /// `−2 < β ≤ −1`: non-integrable weights realized through the Grushin
    /// flattening maps.
    GrushinRange,
    /// `β ≤ −2`: open; the ACL obstruction applies to any candidate that is
    /// absolutely continuous on lines.
    Open,
    /// `β > 0`: no quasisymmetric map has such a Jacobian.
    Rejected,
}

/// A weight exponent with its derived Grushin parameter, when one exists.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WeightExponent {
    pub beta: f64,
    /// `α = −2β/(2+β)`, defined for `−2 < β < 0`.
    pub derived_alpha: Option<f64>,
    pub regime: WeightRegime,
}

/// Classify `β` and compute the Grushin parameter realizing it.
pub fn alpha_for_beta(beta: f64) -> WeightExponent {
    let regime = if beta > 0.0 {
        WeightRegime::Rejected
    } else if beta == 0.0 {
        WeightRegime::TrivialIdentity
    } else if beta > -1.0 {
        WeightRegime::SemmesRange
    } else if beta > -2.0 {
        WeightRegime::GrushinRange
    } else {
        WeightRegime::Open
    };
    let derived_alpha = match regime {
        WeightRegime::SemmesRange | WeightRegime::GrushinRange => Some(-2.0 * beta / (2.0 + beta)),
        _ => None,
    };
    WeightExponent {
        beta,
        derived_alpha,
        regime,
    }
}

/// Pointwise Jacobian density of the composite map at abscissa `u` of the
/// image plane.
///
/// `total = euclidean_factor × grushin_density ∝ |u|^β` exactly in the
/// exponent; the suppressed biLipschitz factor is a constant.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DensityProbe {
    pub u: f64,
    /// `(2/(2+α)) · |u|^{−α/(2+α)}`: the derivative of the inverse
    /// coordinate map `u ↦ |u|^{2/(2+α)}`.
    pub euclidean_factor: f64,
    /// `|x|^{−α/2}` evaluated at `x = |u|^{2/(2+α)}`, i.e. `|u|^{−α/(2+α)}`:
    /// the Grushin volume density carried through the change of variables.
    pub grushin_density: f64,
    pub total: f64,
}

/// Probe the Jacobian density at `u ≠ 0` for `β ∈ (−2, 0)`.
pub fn jacobian_density(u: f64, beta: f64) -> Result<DensityProbe> {
    let exponent = alpha_for_beta(beta);
    let alpha = exponent.derived_alpha.ok_or(Error::BetaOutOfRange(beta))?;
    if u == 0.0 {
        return Err(Error::AxisSingularity);
    }
    let decay = -alpha / (2.0 + alpha);
    let euclidean_factor = 2.0 / (2.0 + alpha) * u.abs().powf(decay);
    let grushin_density = u.abs().powf(decay);
    Ok(DensityProbe {
        u,
        euclidean_factor,
        grushin_density,
        total: euclidean_factor * grushin_density,
    })
}

/// One truncated integral `∫_{lower_limit}^{1} x^{−t/2} dx` of a divergence
/// certificate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PartialIntegral {
    pub lower_limit: f64,
    pub value: f64,
}

/// Local integrability of `|x|^{−t/2}` across the axis on horizontal lines.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AclReport {
    /// The probed derivative exponent `t`.
    pub exponent: f64,
    /// True exactly when `t < 2`.
    pub integrable: bool,
    /// `∫₀¹ x^{−t/2} dx = 2/(2 − t)` when integrable.
    pub integral: Option<f64>,
    /// For `t ≥ 2`: truncated integrals at shrinking lower limits, growing
    /// beyond any bound.
    pub divergence: Vec<PartialIntegral>,
}

/// Decide whether a map with directional derivative of order `|x|^{−t/2}`
/// can be absolutely continuous on horizontal lines.
///
/// The derivative is locally integrable iff `−t/2 > −1`, i.e. `t < 2`; at
/// and above that threshold the report carries a divergence certificate
/// instead of an integral value.
pub fn acl_integrability(t: f64) -> AclReport {
    let integrable = t < 2.0;
    if integrable {
        return AclReport {
            exponent: t,
            integrable,
            integral: Some(2.0 / (2.0 - t)),
            divergence: Vec::new(),
        };
    }
    let divergence = (1..=8)
        .map(|k| {
            let lower_limit = 10f64.powi(-k);
            let value = if t == 2.0 {
                -lower_limit.ln()
            } else {
                // ∫_δ^1 x^{−t/2} dx = (δ^{1−t/2} − 1) / (t/2 − 1)
                (lower_limit.powf(1.0 - 0.5 * t) - 1.0) / (0.5 * t - 1.0)
            };
            PartialIntegral { lower_limit, value }
        })
        .collect();
    AclReport {
        exponent: t,
        integrable,
        integral: None,
        divergence,
    }
}

/// Stratified Monte Carlo estimate of the ball-measure quasidistance
/// `δ(z₁, z₂) = μ(B(z₁, |z₁ − z₂|))^{1/2}` for `dμ = |x|^β dA`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SemmesEstimate {
    /// The quasidistance value `√I`.
    pub value: f64,
    /// Standard error of `value` (delta method through the square root).
    pub std_error: f64,
    /// The ball measure `I = ∫_B |x|^β dA` itself.
    pub integral: f64,
    pub integral_std_error: f64,
    pub samples_used: usize,
    pub strata_per_axis: usize,
}

impl SemmesEstimate {
    /// `std_error / value`, or 0 for the degenerate zero estimate.
    pub fn relative_std_error(&self) -> f64 {
        if self.value > 0.0 {
            self.std_error / self.value
        } else {
            0.0
        }
    }
}

/// Estimate `δ(z1, z2)` for the weight `|x|^β`, `β > −1`.
///
/// The axis singularity is absorbed by the substitution
/// `w = sign(x)·|x|^{1+β}`, under which `|x|^β dx = dw/(1+β)`; the sampler
/// then integrates a bounded indicator over a `(w, y)` rectangle, stratified
/// on both axes with one deterministic RNG substream per stratum. Degenerate
/// input `z1 = z2` yields the zero estimate.
pub fn semmes_quasidistance(
    z1: [f64; 2],
    z2: [f64; 2],
    beta: f64,
    mc_samples: usize,
    seed: u64,
) -> Result<SemmesEstimate> {
    for v in [z1[0], z1[1], z2[0], z2[1]] {
        if !v.is_finite() {
            return Err(Error::NonFiniteCoordinate(v));
        }
    }
    if beta <= -1.0 {
        return Err(Error::NonIntegrableWeight(beta));
    }
    if mc_samples == 0 {
        return Err(Error::NoSamples);
    }
    let radius = crate::plane::euclidean_distance(z1, z2);
    if radius == 0.0 {
        return Ok(SemmesEstimate {
            value: 0.0,
            std_error: 0.0,
            integral: 0.0,
            integral_std_error: 0.0,
            samples_used: 0,
            strata_per_axis: 0,
        });
    }

    let warp = |x: f64| x.signum() * x.abs().powf(1.0 + beta);
    let unwarp = |w: f64| {
        if w == 0.0 {
            0.0
        } else {
            w.signum() * w.abs().powf(1.0 / (1.0 + beta))
        }
    };
    let (cx, cy) = (z1[0], z1[1]);
    let w_lo = warp(cx - radius);
    let w_hi = warp(cx + radius);
    let y_lo = cy - radius;
    let y_hi = cy + radius;

    let k = (((mc_samples as f64) / 8.0).sqrt().floor() as usize).clamp(1, 64);
    let per_stratum = mc_samples.div_ceil(k * k);
    let dw = (w_hi - w_lo) / k as f64;
    let dy = (y_hi - y_lo) / k as f64;
    // |x|^β dx dy = dw dy / (1+β): each stratum carries measure m.
    let m = dw * dy / (1.0 + beta);

    let mut integral = 0.0;
    let mut variance = 0.0;
    for s in 0..k * k
    {
        let (si, sj) = (s % k, s / k);
        let w0 = w_lo + si as f64 * dw;
        let y0 = y_lo + sj as f64 * dy;
        let mut rng = sampling::stream(seed, s as u64);
        let mut hits = 0usize;
        for _ in 0..per_stratum {
            let w = rng.gen_range(w0..w0 + dw);
            let y = rng.gen_range(y0..y0 + dy);
            let x = unwarp(w);
            let ddx = x - cx;
            let ddy = y - cy;
            if ddx * ddx + ddy * ddy <= radius * radius {
                hits += 1;
            }
        }
        let p = hits as f64 / per_stratum as f64;
        integral += m * p;
        if per_stratum > 1 {
            variance += m * m * p * (1.0 - p) / (per_stratum - 1) as f64;
        }
    }
    let integral_std_error = variance.sqrt();
    let value = integral.sqrt();
    let std_error = if value > 0.0 {
        integral_std_error / (2.0 * value)
    } else {
        0.0
    };
    Ok(SemmesEstimate {
        value,
        std_error,
        integral,
        integral_std_error,
        samples_used: k * k * per_stratum,
        strata_per_axis: k,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponent_algebra_anchors() {
        let w = alpha_for_beta(-1.0);
        assert_eq!(w.regime, WeightRegime::GrushinRange);
        assert!((w.derived_alpha.unwrap() - 2.0).abs() < 1e-15);

        let w = alpha_for_beta(-2.0 / 3.0);
        assert_eq!(w.regime, WeightRegime::SemmesRange);
        assert!((w.derived_alpha.unwrap() - 1.0).abs() < 1e-15);

        let w = alpha_for_beta(0.0);
        assert_eq!(w.regime, WeightRegime::TrivialIdentity);
        assert_eq!(w.derived_alpha, None);

        assert_eq!(alpha_for_beta(-2.0).regime, WeightRegime::Open);
        assert_eq!(alpha_for_beta(-3.0).regime, WeightRegime::Open);
        assert_eq!(alpha_for_beta(0.5).regime, WeightRegime::Rejected);
        assert_eq!(alpha_for_beta(0.5).derived_alpha, None);
    }

    #[test]
    fn exponent_round_trip_and_monotonicity() {
        let mut prev_alpha = f64::INFINITY;
        for i in 0..1000 {
            let beta = -2.0 + 2.0 * (i as f64 + 0.5) / 1000.0;
            let alpha = alpha_for_beta(beta).derived_alpha.unwrap();
            assert!(alpha > 0.0);
            assert!(alpha < prev_alpha, "alpha must decrease in beta");
            prev_alpha = alpha;
            let back = -2.0 * alpha / (2.0 + alpha);
            assert!((back - beta).abs() < 1e-12, "beta {beta}: round trip {back}");
        }
        assert!(alpha_for_beta(-1.9999).derived_alpha.unwrap() > 1e3);
        assert!(alpha_for_beta(-1e-4).derived_alpha.unwrap() < 1e-3);
    }

    #[test]
    fn density_anchors() {
        // beta = -1 gives alpha = 2 and total = (1/2)|u|^{-1}.
        let probe = jacobian_density(0.25, -1.0).unwrap();
        assert!((probe.total - 2.0).abs() < 1e-12, "{probe:?}");
        assert!((probe.euclidean_factor - 1.0).abs() < 1e-12);
        assert!((probe.grushin_density - 2.0).abs() < 1e-12);
        let probe = jacobian_density(1.0, -1.0).unwrap();
        assert!((probe.total - 0.5).abs() < 1e-15);
        assert_eq!(probe.total, probe.euclidean_factor * probe.grushin_density);
    }

    #[test]
    fn density_log_log_slope_is_beta() {
        for beta in [-0.3, -2.0 / 3.0, -1.0, -1.5, -1.9] {
            let (u1, u2) = (0.1, 0.9);
            let t1 = jacobian_density(u1, beta).unwrap().total;
            let t2 = jacobian_density(u2, beta).unwrap().total;
            let slope = (t2 / t1).ln() / (u2 / u1).ln();
            assert!((slope - beta).abs() < 1e-9, "beta {beta}: slope {slope}");
        }
    }

    #[test]
    fn density_matches_area_distortion_oracle() {
        // Push a small square around (u, v) through the inverse map and
        // weight by the Grushin volume element; the measured area ratio must
        // match the probe within 1%. The x-integral uses the closed-form
        // antiderivative of x^{-alpha/2}, independent of the probe algebra.
        let side = 1e-5;
        for beta in [-0.5, -1.0, -1.5] {
            let alpha = alpha_for_beta(beta).derived_alpha.unwrap();
            let p = crate::plane::MetricParams::new(alpha).unwrap();
            for u in [0.25, 0.7, 2.0] {
                let x_of = |u: f64| crate::qs::inverse_map([u, 0.0], p).x();
                let (x0, x1) = (x_of(u - 0.5 * side), x_of(u + 0.5 * side));
                let weighted_width = if (alpha - 2.0).abs() < 1e-12 {
                    (x1 / x0).ln()
                } else {
                    let e = 1.0 - 0.5 * alpha;
                    (x1.powf(e) - x0.powf(e)) / e
                };
                let measured = weighted_width * side / (side * side);
                let probe = jacobian_density(u, beta).unwrap();
                assert!(
                    (measured / probe.total - 1.0).abs() < 0.01,
                    "beta {beta}, u {u}: oracle {measured} vs probe {}",
                    probe.total
                );
            }
        }
    }

    #[test]
    fn density_rejects_out_of_range() {
        assert!(matches!(
            jacobian_density(1.0, 0.0),
            Err(Error::BetaOutOfRange(_))
        ));
        assert!(matches!(
            jacobian_density(1.0, -2.0),
            Err(Error::BetaOutOfRange(_))
        ));
        assert!(matches!(
            jacobian_density(0.0, -1.0),
            Err(Error::AxisSingularity)
        ));
    }

    #[test]
    fn acl_anchors() {
        let report = acl_integrability(1.0);
        assert!(report.integrable);
        assert_eq!(report.integral, Some(2.0));
        assert!(report.divergence.is_empty());

        let report = acl_integrability(2.0);
        assert!(!report.integrable);
        assert_eq!(report.integral, None);

        let report = acl_integrability(3.0);
        assert!(!report.integrable);
        // Partial integrals grow like delta^{-1/2}: deep in the tail, two
        // decades of shrinkage scale the value by 10.
        let v4 = report.divergence[3].value; // delta = 1e-4
        let v6 = report.divergence[5].value; // delta = 1e-6
        assert!((v6 / v4 - 10.0).abs() < 0.2, "growth ratio {}", v6 / v4);
        for pair in report.divergence.windows(2) {
            assert!(pair[1].value > pair[0].value);
        }
    }

    #[test]
    fn acl_threshold_is_sharp() {
        assert!(acl_integrability(2.0 - 1e-9).integrable);
        assert!(!acl_integrability(2.0 + 1e-9).integrable);
        assert!(!acl_integrability(2.0).integrable);
        assert!(acl_integrability(0.0).integrable);
        assert!(acl_integrability(-4.0).integrable);
    }

    #[test]
    fn acl_partial_integrals_match_quadrature() {
        let report = acl_integrability(3.0);
        let delta = report.divergence[0].lower_limit;
        let by_quad = crate::quad::integrate(|x: f64| x.powf(-1.5), delta, 1.0, 1e-12);
        assert!((report.divergence[0].value - by_quad).abs() < 1e-9);
    }

    #[test]
    fn semmes_unit_disk_unweighted() {
        // beta = 0: the measure is plain area, delta = sqrt(pi) * r.
        let est = semmes_quasidistance([0.0, 0.0], [1.0, 0.0], 0.0, 40_000, 42).unwrap();
        let want = std::f64::consts::PI.sqrt();
        assert!(est.std_error > 0.0);
        assert!(
            (est.value - want).abs() <= 3.0 * est.std_error,
            "{} vs {want} (se {})",
            est.value,
            est.std_error
        );
    }

    #[test]
    fn semmes_singular_weight_reference() {
        // beta = -1/2, unit ball at the origin: the ball measure is
        // 6.99215347811232 by 30-digit quadrature of 8∫₀¹√(1−w⁴)dw.
        let reference = 6.99215347811232f64.sqrt();
        let est = semmes_quasidistance([0.0, 0.0], [0.0, 1.0], -0.5, 40_000, 42).unwrap();
        assert!(
            (est.value - reference).abs() <= 3.0 * est.std_error,
            "{} vs {reference} (se {})",
            est.value,
            est.std_error
        );
    }

    #[test]
    fn semmes_rejections_and_degenerate() {
        assert!(matches!(
            semmes_quasidistance([0.0, 0.0], [1.0, 0.0], -1.0, 100, 1),
            Err(Error::NonIntegrableWeight(_))
        ));
        assert!(matches!(
            semmes_quasidistance([0.0, 0.0], [1.0, 0.0], -1.5, 100, 1),
            Err(Error::NonIntegrableWeight(_))
        ));
        assert!(matches!(
            semmes_quasidistance([0.0, 0.0], [1.0, 0.0], 0.0, 0, 1),
            Err(Error::NoSamples)
        ));
        let zero = semmes_quasidistance([0.3, 0.4], [0.3, 0.4], -0.5, 100, 1).unwrap();
        assert_eq!(zero.value, 0.0);
    }

    #[test]
    fn semmes_deterministic_in_seed() {
        let a = semmes_quasidistance([0.1, -0.2], [0.6, 0.3], -0.25, 5000, 9).unwrap();
        let b = semmes_quasidistance([0.1, -0.2], [0.6, 0.3], -0.25, 5000, 9).unwrap();
        assert_eq!(a, b);
        let c = semmes_quasidistance([0.1, -0.2], [0.6, 0.3], -0.25, 5000, 10).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn semmes_doubling_is_bounded() {
        // Doubling the radius multiplies the ball measure by a bounded
        // factor for beta in (-1, 0]; record the observed ratio bound.
        let mut rng = sampling::stream(3, 0);
        let mut worst: f64 = 0.0;
        for _ in 0..10 {
            let z1 = [rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)];
            let dir: [f64; 2] = [rng.gen_range(-0.5..0.5), rng.gen_range(-0.5..0.5)];
            let z2 = [z1[0] + dir[0], z1[1] + dir[1]];
            let z2_far = [z1[0] + 2.0 * dir[0], z1[1] + 2.0 * dir[1]];
            if crate::plane::euclidean_distance(z1, z2) < 1e-3 {
                continue;
            }
            for beta in [0.0, -0.5, -0.9] {
                let near = semmes_quasidistance(z1, z2, beta, 20_000, 5).unwrap();
                let far = semmes_quasidistance(z1, z2_far, beta, 20_000, 5).unwrap();
                let ratio = far.value / near.value;
                assert!(ratio.is_finite() && ratio > 1.0, "beta {beta}: {ratio}");
                worst = worst.max(ratio);
            }
        }
        assert!(worst < 8.0, "doubling ratio envelope {worst}");
    }
}
