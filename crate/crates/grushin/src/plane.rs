//! Domain types and the explicit metric formulas of the plane `G_α`.
//!
//! The quasidistance implemented here is the closed-form expression
//!
//! ```text
//! d(z₁, z₂) = max{ |x₁ − x₂|,
//!                  min{ |y₁ − y₂|^{2/(2+α)},
//!                       |y₁ − y₂| / max{|x₁|^{α/2}, |x₂|^{α/2}} } }
//! ```
//!
//! which is comparable to the Carnot-Carathéodory distance with a constant
//! depending only on `α` (see [`crate::cc`] for the empirical side of that
//! statement). Path lengths are measured against the line element
//! `ds² = dx² + |x|^{−α} dy²`: horizontal and vertical segments have exact
//! closed forms, slanted segments fall back to adaptive quadrature.

use serde::Serialize;

use crate::error::Error;
use crate::quad;
use crate::Result;

/// Absolute quadrature tolerance applied to each slanted segment.
pub const SEGMENT_TOLERANCE: f64 = 1e-10;

/// A point of the Grushin plane in its global `(x, y)` coordinates.
///
/// Construction rejects non-finite coordinates; everything downstream may
/// assume finite inputs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GrushinPoint {
    x: f64,
    y: f64,
}

impl GrushinPoint {
    pub fn new(x: f64, y: f64) -> Result<Self> {
        if !x.is_finite() {
            return Err(Error::NonFiniteCoordinate(x));
        }
        if !y.is_finite() {
            return Err(Error::NonFiniteCoordinate(y));
        }
        Ok(Self { x, y })
    }

    pub fn origin() -> Self {
        Self { x: 0.0, y: 0.0 }
    }

    /// Internal constructor for coordinates already known to be finite.
    pub(crate) const fn raw(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    #[inline]
    pub fn x(&self) -> f64 {
        self.x
    }

    #[inline]
    pub fn y(&self) -> f64 {
        self.y
    }

    /// Vertical translation `(x, y) ↦ (x, y + c)`.
    pub fn translated_y(&self, c: f64) -> Result<Self> {
        Self::new(self.x, self.y + c)
    }

    /// Reflection `(x, y) ↦ (−x, y)` through the singular axis.
    pub fn reflected_x(&self) -> Self {
        Self {
            x: -self.x,
            y: self.y,
        }
    }
}

/// The exponent `α > 0` selecting the space `G_α`; `α = 2` is the classical
/// Grushin plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MetricParams {
    alpha: f64,
}

impl MetricParams {
    pub fn new(alpha: f64) -> Result<Self> {
        if !(alpha.is_finite() && alpha > 0.0) {
            return Err(Error::InvalidAlpha(alpha));
        }
        Ok(Self { alpha })
    }

    /// The classical Grushin plane, `α = 2`.
    pub fn classical() -> Self {
        Self { alpha: 2.0 }
    }

    #[inline]
    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// Exponent `2/(2+α)` governing vertical snowflaking near the axis.
    #[inline]
    pub fn y_exponent(&self) -> f64 {
        2.0 / (2.0 + self.alpha)
    }

    /// `α/2`, the power of `|x|` in the vertical cost density `|x|^{−α/2}`.
    #[inline]
    pub fn half_alpha(&self) -> f64 {
        0.5 * self.alpha
    }
}

/// Which operand of the quasidistance formula produced the value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum QuasiBranch {
    /// The horizontal gap `|x₁ − x₂|` won the outer max.
    HorizontalGap,
    /// The snowflake term `|Δy|^{2/(2+α)}` won the inner min.
    VerticalPower,
    /// The ratio term `|Δy| / max{|x₁|^{α/2}, |x₂|^{α/2}}` won the inner min.
    VerticalRatio,
}

/// The Grushin quasidistance between two points.
///
/// Symmetric, zero exactly on the diagonal, and invariant under vertical
/// translation and reflection through the axis. When both points sit on the
/// axis the ratio operand degenerates to `|Δy|/0`; the unique continuous
/// extension treats it as `+∞`, so the min resolves to the snowflake term.
pub fn quasidistance(z1: GrushinPoint, z2: GrushinPoint, p: MetricParams) -> f64 {
    quasidistance_with_branch(z1, z2, p).0
}

/// [`quasidistance`] together with the operand that realized the value.
///
/// Ties resolve in the order: horizontal gap over the min term, snowflake
/// power over the ratio.
pub fn quasidistance_with_branch(
    z1: GrushinPoint,
    z2: GrushinPoint,
    p: MetricParams,
) -> (f64, QuasiBranch) {
    let dx = (z1.x - z2.x).abs();
    let dy = (z1.y - z2.y).abs();
    if dy == 0.0 {
        return (dx, QuasiBranch::HorizontalGap);
    }
    let power = dy.powf(p.y_exponent());
    // max{|x1|, |x2|}^{α/2} is 0 exactly when both points lie on the axis;
    // dy > 0 then gives ratio = +∞ and the min picks the snowflake term.
    let scale = z1.x.abs().max(z2.x.abs()).powf(p.half_alpha());
    let ratio = dy / scale;
    let (min_part, min_branch) = if power <= ratio {
        (power, QuasiBranch::VerticalPower)
    } else {
        (ratio, QuasiBranch::VerticalRatio)
    };
    if dx >= min_part {
        (dx, QuasiBranch::HorizontalGap)
    } else {
        (min_part, min_branch)
    }
}

/// Norm used for distances between image-plane points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Norm {
    Linf,
    Euclidean,
}

impl Norm {
    pub fn distance(&self, a: [f64; 2], b: [f64; 2]) -> f64 {
        match self {
            Norm::Linf => linf_distance(a, b),
            Norm::Euclidean => euclidean_distance(a, b),
        }
    }
}

/// Coordinatewise max-absolute-difference on the plane.
///
/// Satisfies `linf ≤ euclidean ≤ √2 · linf`.
pub fn linf_distance(a: [f64; 2], b: [f64; 2]) -> f64 {
    (a[0] - b[0]).abs().max((a[1] - b[1]).abs())
}

/// Euclidean distance on the plane.
pub fn euclidean_distance(a: [f64; 2], b: [f64; 2]) -> f64 {
    (a[0] - b[0]).hypot(a[1] - b[1])
}

/// Axis-aligned rectangle, used as sampling region and grid extent.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Region {
    x_min: f64,
    y_min: f64,
    x_max: f64,
    y_max: f64,
}

impl Region {
    pub fn new(x_min: f64, y_min: f64, x_max: f64, y_max: f64) -> Result<Self> {
        for v in [x_min, y_min, x_max, y_max] {
            if !v.is_finite() {
                return Err(Error::NonFiniteCoordinate(v));
            }
        }
        if !(x_min < x_max && y_min < y_max) {
            return Err(Error::EmptyRegion);
        }
        Ok(Self {
            x_min,
            y_min,
            x_max,
            y_max,
        })
    }

    /// The default experimental window `[−2, 2] × [−2, 2]`.
    pub fn standard() -> Self {
        Self {
            x_min: -2.0,
            y_min: -2.0,
            x_max: 2.0,
            y_max: 2.0,
        }
    }

    pub fn x_min(&self) -> f64 {
        self.x_min
    }
    pub fn y_min(&self) -> f64 {
        self.y_min
    }
    pub fn x_max(&self) -> f64 {
        self.x_max
    }
    pub fn y_max(&self) -> f64 {
        self.y_max
    }

    pub fn width(&self) -> f64 {
        self.x_max - self.x_min
    }

    pub fn height(&self) -> f64 {
        self.y_max - self.y_min
    }

    pub fn contains(&self, z: GrushinPoint) -> bool {
        self.x_min <= z.x && z.x <= self.x_max && self.y_min <= z.y && z.y <= self.y_max
    }

    /// Largest `|x|` over the region; bounds the cheapest vertical travel.
    pub fn max_abs_x(&self) -> f64 {
        self.x_min.abs().max(self.x_max.abs())
    }
}

/// Length of a candidate path: a nonnegative real, or `Infinite` for paths
/// that violate admissibility (vertical motion on the axis, or an
/// axis-crossing slanted segment with a divergent improper integral).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum ExtendedLength {
    Finite(f64),
    Infinite,
}

impl ExtendedLength {
    pub fn is_finite(&self) -> bool {
        matches!(self, ExtendedLength::Finite(_))
    }

    pub fn as_finite(&self) -> Option<f64> {
        match self {
            ExtendedLength::Finite(v) => Some(*v),
            ExtendedLength::Infinite => None,
        }
    }

    /// The length as a plain float, with `Infinite ↦ f64::INFINITY`.
    pub fn to_f64(&self) -> f64 {
        match self {
            ExtendedLength::Finite(v) => *v,
            ExtendedLength::Infinite => f64::INFINITY,
        }
    }
}

impl std::ops::Add for ExtendedLength {
    type Output = ExtendedLength;

    fn add(self, rhs: ExtendedLength) -> ExtendedLength {
        match (self, rhs) {
            (ExtendedLength::Finite(a), ExtendedLength::Finite(b)) => ExtendedLength::Finite(a + b),
            _ => ExtendedLength::Infinite,
        }
    }
}

/// An ordered list of at least two vertices, read as the concatenation of
/// straight segments between consecutive vertices.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PolyPath {
    vertices: Vec<GrushinPoint>,
}

impl PolyPath {
    /// Build a path, rejecting fewer than two vertices and coincident
    /// consecutive vertices.
    pub fn new(vertices: Vec<GrushinPoint>) -> Result<Self> {
        if vertices.len() < 2 {
            return Err(Error::PathTooShort(vertices.len()));
        }
        for (i, pair) in vertices.windows(2).enumerate() {
            if pair[0] == pair[1] {
                return Err(Error::DuplicateVertex(i, i + 1));
            }
        }
        Ok(Self { vertices })
    }

    pub fn vertices(&self) -> &[GrushinPoint] {
        &self.vertices
    }

    pub fn segments(&self) -> impl Iterator<Item = (GrushinPoint, GrushinPoint)> + '_ {
        self.vertices.windows(2).map(|w| (w[0], w[1]))
    }

    /// The same path traversed backwards.
    pub fn reversed(&self) -> PolyPath {
        let mut vertices = self.vertices.clone();
        vertices.reverse();
        PolyPath { vertices }
    }

    /// Concatenate with a path that starts where this one ends.
    pub fn concat(&self, other: &PolyPath) -> Result<PolyPath> {
        if self.vertices.last() != other.vertices.first() {
            return Err(Error::PathMismatch);
        }
        let mut vertices = self.vertices.clone();
        vertices.extend_from_slice(&other.vertices[1..]);
        Ok(PolyPath { vertices })
    }

    /// Insert the midpoint of every segment. Leaves the traced curve, and
    /// hence its length, unchanged.
    pub fn refined(&self) -> PolyPath {
        let mut vertices = Vec::with_capacity(2 * self.vertices.len() - 1);
        for (a, b) in self.segments() {
            vertices.push(a);
            let mid = GrushinPoint {
                x: 0.5 * (a.x + b.x),
                y: 0.5 * (a.y + b.y),
            };
            // Midpoint can collide with an endpoint once coordinates reach
            // ulp scale; skip it rather than create a duplicate vertex.
            if mid != a && mid != b {
                vertices.push(mid);
            }
        }
        vertices.push(*self.vertices.last().expect("path has vertices"));
        PolyPath { vertices }
    }
}

/// Grushin length of a single straight segment.
///
/// Horizontal segments cost `|Δx|` exactly; vertical segments at `x ≠ 0`
/// cost `|Δy| · |x|^{−α/2}` exactly; slanted segments are integrated
/// adaptively. A vertical segment on the axis is `Infinite` for every `α`.
/// A slanted segment whose `x`-range touches `0` has an improper integral:
/// convergent for `α < 2` (returned), divergent for `α ≥ 2` (`Infinite`).
pub fn segment_length(a: GrushinPoint, b: GrushinPoint, p: MetricParams) -> ExtendedLength {
    let dx = b.x - a.x;
    let dy = b.y - a.y;
    if dy == 0.0 {
        return ExtendedLength::Finite(dx.abs());
    }
    if dx == 0.0 {
        if a.x == 0.0 {
            return ExtendedLength::Infinite;
        }
        return ExtendedLength::Finite(dy.abs() * a.x.abs().powf(-p.half_alpha()));
    }
    let slope = dy / dx;
    let lo = a.x.min(b.x);
    let hi = a.x.max(b.x);
    let integrand = move |x: f64| (1.0 + slope * slope * x.abs().powf(-p.alpha())).sqrt();
    if lo > 0.0 || hi < 0.0 {
        return ExtendedLength::Finite(quad::integrate(integrand, lo, hi, SEGMENT_TOLERANCE));
    }
    // x-range touches or crosses the axis.
    if p.alpha() >= 2.0 {
        return ExtendedLength::Infinite;
    }
    let left = improper_from_axis(-lo, slope, p);
    let right = improper_from_axis(hi, slope, p);
    ExtendedLength::Finite(left + right)
}

/// `∫₀^c √(1 + m² x^{−α}) dx` for `α < 2`, via the substitution
/// `x = u^{2/(2−α)}` which turns the integrand into the smooth
/// `p·√(u^{2p−2} + m²)` with `p = 2/(2−α)`.
fn improper_from_axis(c: f64, slope: f64, p: MetricParams) -> f64 {
    debug_assert!(p.alpha() < 2.0);
    if c <= 0.0 {
        return 0.0;
    }
    let pw = 2.0 / (2.0 - p.alpha());
    let upper = c.powf(1.0 / pw);
    let m2 = slope * slope;
    let g = move |u: f64| pw * (u.powf(2.0 * pw - 2.0) + m2).sqrt();
    quad::integrate(g, 0.0, upper, SEGMENT_TOLERANCE)
}

/// Total Grushin length of a polygonal path: the sum of its segment
/// lengths, `Infinite` as soon as any segment is inadmissible.
pub fn path_length(path: &PolyPath, p: MetricParams) -> ExtendedLength {
    let mut total = ExtendedLength::Finite(0.0);
    for (a, b) in path.segments() {
        total = total + segment_length(a, b, p);
        if !total.is_finite() {
            return ExtendedLength::Infinite;
        }
    }
    total
}
