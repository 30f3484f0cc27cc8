//! The quasisymmetric flattening maps `F_α` and their verification
//! machinery.
//!
//! `F_α(x, y) = (x|x|^{α/2}, y)` straightens the Grushin plane onto the
//! Euclidean plane. Quantitatively, for every base point `z` there is an
//! increasing scale function `f_z` with
//!
//! ```text
//! C⁻¹ · f_z(d(z, z′)) ≤ |F(z) − F(z′)| ≤ C · f_z(d(z, z′))
//! ```
//!
//! where `f_z(r) = r²` except when the pair stays within a few multiples of
//! the base point's distance to the axis, in which case `f_z(r) = |x| · r`.
//! [`classify_case`] reproduces that case split, [`sandwich_check`]
//! measures the displayed inequality pair by pair, and [`eta_estimate`]
//! builds the empirical modulus table that lower-bounds any valid
//! quasisymmetry gauge `η`.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::Error;
use crate::plane::{quasidistance, GrushinPoint, MetricParams, Norm, Region};
use crate::sampling;
use crate::Result;

/// Geometry of a point pair relative to the singular axis, after the
/// normalization that puts the base point at `(x, 0)` with `x ≥ 0`.
///
/// Writing `r` for the quasidistance of the pair and `x′` for the other
/// point's abscissa:
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CaseLabel {
    /// `x = 0`: the base point sits on the axis.
    AxisBase,
    /// `x > 0` and `r ≤ 3x`: the pair lives at the base point's own scale,
    /// where the plane looks Riemannian.
    Near,
    /// `x > 0`, `r > 3x`, and `|x′| ≤ x`: a far pair whose other endpoint
    /// hugs the axis at least as tightly as the base.
    FarInner,
    /// `x > 0`, `r > 3x`, and `x < |x′| < r/3`: a far pair with both
    /// abscissae small against the separation.
    FarMiddle,
    /// `x > 0`, `r > 3x`, and `|x′| ≥ r/3`: a far pair whose other endpoint
    /// is comparably far from the axis as the separation itself.
    FarOuter,
}

/// The scale function `f_z` attached to a classified pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum ScaleFunction {
    /// `f_z(r) = r²`.
    Quadratic,
    /// `f_z(r) = coefficient · r`, with the coefficient equal to the base
    /// point's distance `|x|` to the axis.
    LinearInX { coefficient: f64 },
}

impl ScaleFunction {
    pub fn eval(&self, r: f64) -> f64 {
        match self {
            ScaleFunction::Quadratic => r * r,
            ScaleFunction::LinearInX { coefficient } => coefficient * r,
        }
    }

    /// The coefficient as stored: `0` for the quadratic form.
    pub fn coefficient(&self) -> f64 {
        match self {
            ScaleFunction::Quadratic => 0.0,
            ScaleFunction::LinearInX { coefficient } => *coefficient,
        }
    }
}

/// The flattening map `F_α(x, y) = (x·|x|^{α/2}, y)`.
///
/// Odd in `x`, fixes the vertical axis pointwise, strictly increasing in `x`.
pub fn forward_map(z: GrushinPoint, p: MetricParams) -> [f64; 2] {
    [z.x() * z.x().abs().powf(p.half_alpha()), z.y()]
}

/// Exact inverse of [`forward_map`]: sends the first coordinate to
/// `sign(u) · |u|^{2/(2+α)}`.
pub fn inverse_map(w: [f64; 2], p: MetricParams) -> GrushinPoint {
    let u = w[0];
    let x = if u == 0.0 {
        0.0
    } else {
        u.signum() * u.abs().powf(p.y_exponent())
    };
    GrushinPoint::raw(x, w[1])
}

/// Classify a pair and produce its scale function.
///
/// The pair is normalized internally — translated so the base point has
/// `y = 0` and reflected so it has `x ≥ 0`; the label describes the
/// normalized pair. Boundary ties resolve toward [`CaseLabel::Near`] at
/// `r = 3x` and toward [`CaseLabel::FarOuter`] at `|x′| = r/3`.
pub fn classify_case(
    z: GrushinPoint,
    zp: GrushinPoint,
    p: MetricParams,
) -> (CaseLabel, ScaleFunction) {
    let x = z.x().abs();
    let xp = if z.x() < 0.0 { -zp.x() } else { zp.x() };
    let r = quasidistance(z, zp, p);
    if x == 0.0 {
        return (CaseLabel::AxisBase, ScaleFunction::Quadratic);
    }
    if r <= 3.0 * x {
        return (CaseLabel::Near, ScaleFunction::LinearInX { coefficient: x });
    }
    if xp.abs() <= x {
        (CaseLabel::FarInner, ScaleFunction::Quadratic)
    } else if xp.abs() >= r / 3.0 {
        (CaseLabel::FarOuter, ScaleFunction::Quadratic)
    } else {
        (CaseLabel::FarMiddle, ScaleFunction::Quadratic)
    }
}

/// Acceptance window for the sandwich ratio `|F(z) − F(z′)| / f_z(r)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SandwichWindow {
    pub lower: f64,
    pub upper: f64,
}

impl SandwichWindow {
    /// Symmetric window `[1/c, c]`.
    pub fn symmetric(c: f64) -> Self {
        Self {
            lower: 1.0 / c,
            upper: c,
        }
    }

    /// The widest window with explicit constants for `α = 2` under the
    /// `L∞` image norm: `[1/12, 20]`.
    pub fn classical_linf() -> Self {
        Self {
            lower: 1.0 / 12.0,
            upper: 20.0,
        }
    }
}

/// Outcome of one sandwich measurement.
///
/// The measured ratio is taken against the scale functions of both
/// orientations of the pair (the sandwich must hold with `z` and `z′`
/// exchanged); `lower_ratio`/`upper_ratio` are the smaller and larger of
/// the two.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SandwichCheck {
    pub lower_ratio: f64,
    pub upper_ratio: f64,
    pub passed: bool,
    pub norm_used: Norm,
    /// Case of the forward orientation `(z, z′)`.
    pub case: CaseLabel,
    /// Quasidistance of the pair.
    pub distance: f64,
}

/// Measure the sandwich inequality for one pair.
///
/// `passed` iff both orientation ratios lie inside the window. Degenerate
/// pairs (`z = z′`) are rejected.
pub fn sandwich_check(
    z: GrushinPoint,
    zp: GrushinPoint,
    p: MetricParams,
    window: SandwichWindow,
    norm: Norm,
) -> Result<SandwichCheck> {
    if z == zp {
        return Err(Error::DegeneratePair);
    }
    let d = quasidistance(z, zp, p);
    let (case, scale_fwd) = classify_case(z, zp, p);
    let (_, scale_swp) = classify_case(zp, z, p);
    let image = norm.distance(forward_map(z, p), forward_map(zp, p));
    let r_fwd = image / scale_fwd.eval(d);
    let r_swp = image / scale_swp.eval(d);
    let lower_ratio = r_fwd.min(r_swp);
    let upper_ratio = r_fwd.max(r_swp);
    Ok(SandwichCheck {
        lower_ratio,
        upper_ratio,
        passed: lower_ratio >= window.lower && upper_ratio <= window.upper,
        norm_used: norm,
        case,
        distance: d,
    })
}

/// Per-pair record of a [`sandwich_scan`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SandwichSample {
    pub index: usize,
    pub z1: GrushinPoint,
    pub z2: GrushinPoint,
    pub check: SandwichCheck,
}

/// Aggregate of a [`sandwich_scan`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SandwichSummary {
    pub min_lower_ratio: f64,
    pub max_upper_ratio: f64,
    pub violations: usize,
    pub window: SandwichWindow,
    pub norm: Norm,
    pub alpha: f64,
    pub seed: u64,
    pub sample_count: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SandwichScan {
    pub samples: Vec<SandwichSample>,
    pub summary: SandwichSummary,
}

/// Run [`sandwich_check`] over `n_pairs` pairs sampled uniformly in
/// `region`, deterministically in `seed`.
pub fn sandwich_scan(
    region: Region,
    p: MetricParams,
    n_pairs: usize,
    seed: u64,
    window: SandwichWindow,
    norm: Norm,
) -> Result<SandwichScan> {
    if n_pairs == 0 {
        return Err(Error::NoSamples);
    }
    let samples: Vec<SandwichSample> = (0..n_pairs)
        .into_par_iter()
        .map(|index| {
            let mut rng = sampling::stream(seed, index as u64);
            let (z1, z2) = sampling::sample_pair(&mut rng, region, p);
            let check = sandwich_check(z1, z2, p, window, norm)
                .expect("sampled pairs are nondegenerate");
            SandwichSample {
                index,
                z1,
                z2,
                check,
            }
        })
        .collect();
    let (min_lower, max_upper, violations) = samples.iter().fold(
        (f64::INFINITY, f64::NEG_INFINITY, 0usize),
        |(lo, hi, bad), s| {
            (
                lo.min(s.check.lower_ratio),
                hi.max(s.check.upper_ratio),
                bad + usize::from(!s.check.passed),
            )
        },
    );
    let summary = SandwichSummary {
        min_lower_ratio: min_lower,
        max_upper_ratio: max_upper,
        violations,
        window,
        norm,
        alpha: p.alpha(),
        seed,
        sample_count: n_pairs,
    };
    Ok(SandwichScan { samples, summary })
}

/// Which map the η estimator drives.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum EtaMap {
    /// The flattening map, with image ratios in the chosen plane norm.
    Forward,
    /// The identity on the quasimetric plane: image ratios are again
    /// quasidistance ratios, so the envelope must reproduce `η(t) = t`.
    /// Test hook for the estimator plumbing.
    Identity,
}

/// The binned ratio range covers `log₁₀ t ∈ [−2, 2]`.
pub const ETA_LOG10_MIN: f64 = -2.0;
pub const ETA_LOG10_MAX: f64 = 2.0;

/// One bin of the empirical modulus table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EtaBin {
    pub log10_lo: f64,
    pub log10_hi: f64,
    pub count: u64,
    /// Largest image ratio observed for domain ratios in this bin.
    pub max_ratio: Option<f64>,
}

/// Samples falling outside the binned range.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Default)]
pub struct EtaTail {
    pub count: u64,
    pub max_ratio: Option<f64>,
}

/// Empirical quasisymmetry modulus: for each bin of the domain ratio
/// `t = d(z₃, z₁)/d(z₂, z₁)`, the maximal observed image ratio
/// `ρ = |F(z₃) − F(z₁)|/|F(z₂) − F(z₁)|`. The monotone-regularized envelope
/// is a lower bound for any valid gauge `η` on the sampled region.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EtaTable {
    pub bins: Vec<EtaBin>,
    /// Running maximum of `max_ratio` across bins (nondecreasing).
    pub envelope: Vec<Option<f64>>,
    pub underflow: EtaTail,
    pub overflow: EtaTail,
    pub n_triples: usize,
    pub seed: u64,
    pub map: EtaMap,
    pub norm: Norm,
    pub alpha: f64,
    pub region: Region,
}

impl EtaTable {
    /// Index of the bin containing domain ratio `t`, if it is in range.
    pub fn bin_index(&self, t: f64) -> Option<usize> {
        let n = self.bins.len() as f64;
        let pos = (t.log10() - ETA_LOG10_MIN) / (ETA_LOG10_MAX - ETA_LOG10_MIN) * n;
        if pos < 0.0 || pos >= n {
            return None;
        }
        Some(pos as usize)
    }

    /// Regularized envelope value at domain ratio `t = 1`.
    pub fn envelope_at_one(&self) -> Option<f64> {
        self.bin_index(1.0).and_then(|i| self.envelope[i])
    }
}

struct EtaAcc {
    counts: Vec<u64>,
    maxes: Vec<f64>,
    underflow: (u64, f64),
    overflow: (u64, f64),
}

impl EtaAcc {
    fn new(n_bins: usize) -> Self {
        Self {
            counts: vec![0; n_bins],
            maxes: vec![f64::NEG_INFINITY; n_bins],
            underflow: (0, f64::NEG_INFINITY),
            overflow: (0, f64::NEG_INFINITY),
        }
    }

    fn record(&mut self, t: f64, rho: f64) {
        let n = self.counts.len() as f64;
        let pos = (t.log10() - ETA_LOG10_MIN) / (ETA_LOG10_MAX - ETA_LOG10_MIN) * n;
        if pos < 0.0 {
            self.underflow.0 += 1;
            self.underflow.1 = self.underflow.1.max(rho);
        } else if pos >= n {
            self.overflow.0 += 1;
            self.overflow.1 = self.overflow.1.max(rho);
        } else {
            let i = pos as usize;
            self.counts[i] += 1;
            self.maxes[i] = self.maxes[i].max(rho);
        }
    }

    fn merge(mut self, other: EtaAcc) -> EtaAcc {
        for i in 0..self.counts.len() {
            self.counts[i] += other.counts[i];
            self.maxes[i] = self.maxes[i].max(other.maxes[i]);
        }
        self.underflow.0 += other.underflow.0;
        self.underflow.1 = self.underflow.1.max(other.underflow.1);
        self.overflow.0 += other.overflow.0;
        self.overflow.1 = self.overflow.1.max(other.overflow.1);
        self
    }
}

fn tail(stat: (u64, f64)) -> EtaTail {
    EtaTail {
        count: stat.0,
        max_ratio: (stat.0 > 0).then_some(stat.1),
    }
}

/// Estimate the quasisymmetry modulus of `F_α` (or the identity hook) over
/// `n_triples` sampled triples. Deterministic in `seed`; triples with any
/// pairwise quasidistance under the degeneracy floor are resampled.
pub fn eta_estimate(
    region: Region,
    p: MetricParams,
    n_triples: usize,
    seed: u64,
    n_bins: usize,
    map: EtaMap,
    norm: Norm,
) -> Result<EtaTable> {
    if n_triples == 0 {
        return Err(Error::NoSamples);
    }
    if n_bins < 2 {
        return Err(Error::TooFewBins(n_bins));
    }
    let acc = (0..n_triples)
        .into_par_iter()
        .fold(
            || EtaAcc::new(n_bins),
            |mut acc, index| {
                let mut rng = sampling::stream(seed, index as u64);
                let (z1, z2, z3) = sampling::sample_triple(&mut rng, region, p);
                let t = quasidistance(z3, z1, p) / quasidistance(z2, z1, p);
                let rho = match map {
                    EtaMap::Identity => t,
                    EtaMap::Forward => {
                        let f1 = forward_map(z1, p);
                        norm.distance(forward_map(z3, p), f1)
                            / norm.distance(forward_map(z2, p), f1)
                    }
                };
                acc.record(t, rho);
                acc
            },
        )
        .reduce(|| EtaAcc::new(n_bins), EtaAcc::merge);

    let width = (ETA_LOG10_MAX - ETA_LOG10_MIN) / n_bins as f64;
    let bins: Vec<EtaBin> = (0..n_bins)
        .map(|i| EtaBin {
            log10_lo: ETA_LOG10_MIN + i as f64 * width,
            log10_hi: ETA_LOG10_MIN + (i + 1) as f64 * width,
            count: acc.counts[i],
            max_ratio: (acc.counts[i] > 0).then_some(acc.maxes[i]),
        })
        .collect();
    let mut envelope = Vec::with_capacity(n_bins);
    let mut running: Option<f64> = None;
    for bin in &bins {
        if let Some(m) = bin.max_ratio {
            running = Some(running.map_or(m, |r| r.max(m)));
        }
        envelope.push(running);
    }
    Ok(EtaTable {
        bins,
        envelope,
        underflow: tail(acc.underflow),
        overflow: tail(acc.overflow),
        n_triples,
        seed,
        map,
        norm,
        alpha: p.alpha(),
        region,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(x: f64, y: f64) -> GrushinPoint {
        GrushinPoint::new(x, y).unwrap()
    }

    fn alpha(a: f64) -> MetricParams {
        MetricParams::new(a).unwrap()
    }

    #[test]
    fn forward_map_anchors() {
        let p = alpha(2.0);
        assert_eq!(forward_map(pt(0.0, 5.0), p), [0.0, 5.0]);
        assert_eq!(forward_map(pt(2.0, 1.0), p), [4.0, 1.0]);
        assert_eq!(forward_map(pt(-3.0, 0.0), p), [-9.0, 0.0]);
        // Odd in x for every alpha.
        for a in [0.5, 1.0, 3.0] {
            let p = alpha(a);
            let w = forward_map(pt(1.3, -0.2), p);
            let wr = forward_map(pt(-1.3, -0.2), p);
            assert_eq!(w[0], -wr[0]);
            assert_eq!(w[1], wr[1]);
        }
    }

    #[test]
    fn inverse_map_anchors() {
        let p = alpha(2.0);
        let z = inverse_map([4.0, 1.0], p);
        assert!((z.x() - 2.0).abs() < 1e-15);
        assert_eq!(z.y(), 1.0);
        let z = inverse_map([0.0, -7.0], alpha(0.8));
        assert_eq!((z.x(), z.y()), (0.0, -7.0));
    }

    #[test]
    fn round_trip_bijection() {
        let mut rng = sampling::stream(5, 0);
        for a in [0.5, 1.0, 2.0, 4.0] {
            let p = alpha(a);
            for _ in 0..2500 {
                let z = sampling::sample_point(&mut rng, Region::standard());
                let back = inverse_map(forward_map(z, p), p);
                let scale = z.x().abs().max(z.y().abs()).max(1e-30);
                assert!(
                    (back.x() - z.x()).abs() <= 1e-12 * scale.max(1.0),
                    "alpha {a}: {z:?} -> {back:?}"
                );
                assert_eq!(back.y(), z.y());
            }
        }
    }

    #[test]
    fn classify_axis_base() {
        let (label, scale) = classify_case(pt(0.0, 0.0), pt(1.0, 1.0), alpha(2.0));
        assert_eq!(label, CaseLabel::AxisBase);
        assert_eq!(scale, ScaleFunction::Quadratic);
    }

    #[test]
    fn classify_near_hand_example() {
        // d = max{0.5, min{1, 0.4}} = 0.5 <= 6.
        let (label, scale) = classify_case(pt(2.0, 0.0), pt(2.5, 1.0), alpha(2.0));
        assert_eq!(label, CaseLabel::Near);
        assert_eq!(scale, ScaleFunction::LinearInX { coefficient: 2.0 });
        assert_eq!(scale.eval(0.5), 1.0);
    }

    #[test]
    fn classify_far_inner_hand_example() {
        // d = min{2, 40} = 2 > 0.3, |x'| = 0.05 <= 0.1.
        let p = alpha(2.0);
        let d = quasidistance(pt(0.1, 0.0), pt(0.05, 4.0), p);
        assert!((d - 2.0).abs() < 1e-15);
        let (label, scale) = classify_case(pt(0.1, 0.0), pt(0.05, 4.0), p);
        assert_eq!(label, CaseLabel::FarInner);
        assert_eq!(scale, ScaleFunction::Quadratic);
    }

    #[test]
    fn classification_uses_normalized_coordinates() {
        let p = alpha(2.0);
        // Same pair, vertically translated and reflected: same label.
        let (l1, _) = classify_case(pt(2.0, 0.0), pt(2.5, 1.0), p);
        let (l2, _) = classify_case(pt(-2.0, 7.0), pt(-2.5, 8.0), p);
        assert_eq!(l1, l2);
    }

    #[test]
    fn sandwich_near_window_hand_example() {
        // Image L-inf distance max{2.25, 1} = 2.25, f_z(0.5) = 1.0.
        let p = alpha(2.0);
        let check = sandwich_check(
            pt(2.0, 0.0),
            pt(2.5, 1.0),
            p,
            SandwichWindow::classical_linf(),
            Norm::Linf,
        )
        .unwrap();
        assert!(check.passed, "{check:?}");
        assert_eq!(check.case, CaseLabel::Near);
        // Forward ratio 2.25/1.0; swapped base 2.5 gives 2.25/1.25.
        assert!((check.upper_ratio - 2.25).abs() < 1e-12);
        assert!((check.lower_ratio - 1.8).abs() < 1e-12);
    }

    #[test]
    fn sandwich_axis_pairs_are_exact() {
        let p = alpha(2.0);
        let w = SandwichWindow::classical_linf();
        // Origin to (1,1): image distance 1, f_z(1) = 1.
        let check = sandwich_check(pt(0.0, 0.0), pt(1.0, 1.0), p, w, Norm::Linf).unwrap();
        assert_eq!(check.case, CaseLabel::AxisBase);
        assert!((check.upper_ratio - 1.0).abs() < 1e-12);
        // Axis pair (0,0)-(0,t): d = sqrt(t), image distance t, ratio 1.
        for t in [0.25, 1.0, 3.0] {
            let check = sandwich_check(pt(0.0, 0.0), pt(0.0, t), p, w, Norm::Linf).unwrap();
            assert!(
                (check.lower_ratio - 1.0).abs() < 1e-12
                    && (check.upper_ratio - 1.0).abs() < 1e-12,
                "t = {t}: {check:?}"
            );
        }
    }

    #[test]
    fn sandwich_rejects_degenerate_pair() {
        let p = alpha(2.0);
        let err = sandwich_check(
            pt(1.0, 1.0),
            pt(1.0, 1.0),
            p,
            SandwichWindow::symmetric(20.0),
            Norm::Linf,
        );
        assert!(matches!(err, Err(Error::DegeneratePair)));
    }

    #[test]
    fn scale_function_contraction() {
        let quad = ScaleFunction::Quadratic;
        let lin = ScaleFunction::LinearInX { coefficient: 1.7 };
        for (eps, r) in [(0.5, 2.0), (0.01, 100.0), (0.999, 0.3)] {
            assert!(quad.eval(eps * r) <= eps * quad.eval(r));
            let lhs = lin.eval(eps * r);
            let rhs = eps * lin.eval(r);
            assert!(lhs <= rhs + 2.0 * f64::EPSILON * rhs);
        }
    }

    #[test]
    fn eta_identity_envelope_tracks_t() {
        let table = eta_estimate(
            Region::standard(),
            alpha(2.0),
            20_000,
            42,
            16,
            EtaMap::Identity,
            Norm::Linf,
        )
        .unwrap();
        for (bin, env) in table.bins.iter().zip(&table.envelope) {
            if bin.count >= 500 {
                let upper = 10f64.powf(bin.log10_hi);
                let env = env.expect("populated bin has an envelope");
                assert!(
                    env <= upper && env >= 10f64.powf(bin.log10_lo),
                    "identity envelope {env} outside bin ({}, {})",
                    bin.log10_lo,
                    bin.log10_hi
                );
            }
        }
        assert!(table.envelope_at_one().is_some());
    }

    #[test]
    fn eta_envelope_is_monotone() {
        let table = eta_estimate(
            Region::standard(),
            alpha(2.0),
            10_000,
            7,
            24,
            EtaMap::Forward,
            Norm::Linf,
        )
        .unwrap();
        let mut prev = f64::NEG_INFINITY;
        for env in table.envelope.iter().flatten() {
            assert!(*env >= prev);
            prev = *env;
        }
        assert_eq!(
            table.bins.iter().map(|b| b.count).sum::<u64>()
                + table.underflow.count
                + table.overflow.count,
            10_000
        );
    }

    #[test]
    fn eta_rejects_bad_config() {
        let r = Region::standard();
        assert!(matches!(
            eta_estimate(r, alpha(2.0), 0, 1, 8, EtaMap::Forward, Norm::Linf),
            Err(Error::NoSamples)
        ));
        assert!(matches!(
            eta_estimate(r, alpha(2.0), 10, 1, 1, EtaMap::Forward, Norm::Linf),
            Err(Error::TooFewBins(1))
        ));
    }

    #[test]
    fn sandwich_scan_deterministic() {
        let region = Region::standard();
        let p = alpha(2.0);
        let w = SandwichWindow::classical_linf();
        let a = sandwich_scan(region, p, 500, 42, w, Norm::Linf).unwrap();
        let b = sandwich_scan(region, p, 500, 42, w, Norm::Linf).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.summary.violations, 0, "{:?}", a.summary);
    }
}
