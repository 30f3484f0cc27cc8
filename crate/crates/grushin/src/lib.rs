//! Numerical toolkit for the generalized Grushin plane `G_α`.
//!
//! The Grushin plane is the metric completion of `ℝ² \ {x = 0}` under the
//! Riemannian line element
//!
//! ```text
//! ds² = dx² + |x|^{−α} dy²,        α > 0
//! ```
//!
//! Vertical motion gets cheaper far from the `y`-axis and impossibly
//! expensive on it, so geodesics detour sideways before travelling
//! vertically and the axis itself carries a snowflaked geometry. This crate
//! exposes that structure as testable operations:
//!
//! * [`plane`] — domain types, the explicit quasidistance comparable to the
//!   Carnot-Carathéodory distance, and exact/adaptive length of polygonal
//!   paths under the Grushin line element.
//! * [`cc`] — Carnot-Carathéodory distance estimators: the closed-form
//!   staircase family, an independent grid shortest-path oracle, and
//!   empirical comparability scans between the two and the quasidistance.
//! * [`qs`] — the quasisymmetric flattening maps `F_α(x, y) = (x|x|^{α/2}, y)`,
//!   the case machinery behind their distortion bounds, sandwich checks, and
//!   an empirical quasisymmetry-modulus estimator.
//! * [`jacobian`] — the quasiconformal-Jacobian weight layer for `|x|^β`:
//!   the exponent algebra `α = −2β/(2 + β)`, Jacobian density probes,
//!   the ACL local-integrability criterion, and the ball-measure
//!   quasidistance `δ` for weighted measures.
//!
//! All operations are pure functions of their arguments; randomized scans
//! take explicit seeds and derive per-sample substreams so results are
//! bit-reproducible regardless of thread scheduling.

pub mod cc;
mod error;
pub mod jacobian;
pub mod plane;
pub mod qs;
mod quad;
mod sampling;

pub use error::Error;
pub use plane::{
    euclidean_distance, linf_distance, path_length, quasidistance, quasidistance_with_branch,
    ExtendedLength, GrushinPoint, MetricParams, Norm, PolyPath, QuasiBranch, Region,
};

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Pairs and triples closer than this quasidistance are treated as
/// degenerate by the sampling scans and resampled.
pub const DEGENERACY_THRESHOLD: f64 = 1e-12;
