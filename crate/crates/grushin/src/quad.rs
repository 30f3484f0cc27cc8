//! Adaptive Gauss-Legendre quadrature used by the segment-length integrals.
//!
//! 15-point panels with recursive bisection: a panel is accepted when the
//! two-half refinement agrees with the whole-panel estimate to the requested
//! absolute tolerance. Callers pre-split segments at the `x = 0` singularity
//! (and substitute it away for convergent improper integrals), so panels
//! only ever see smooth integrands and the recursion stays shallow.

/// 15-point Gauss-Legendre rule on [-1, 1]: (node, weight).
const GL15: [(f64, f64); 15] = [
    (-9.87992518020485377e-01, 3.07532419961186465e-02),
    (-9.37273392400705951e-01, 7.03660474881080689e-02),
    (-8.48206583410427206e-01, 1.07159220467171773e-01),
    (-7.24417731360170070e-01, 1.39570677926153908e-01),
    (-5.70972172608538830e-01, 1.66269205816993781e-01),
    (-3.94151347077563385e-01, 1.86161000015561878e-01),
    (-2.01194093997434514e-01, 1.98431485327111246e-01),
    (0.00000000000000000e+00, 2.02578241925560898e-01),
    (2.01194093997434514e-01, 1.98431485327111246e-01),
    (3.94151347077563385e-01, 1.86161000015561878e-01),
    (5.70972172608538830e-01, 1.66269205816993781e-01),
    (7.24417731360170070e-01, 1.39570677926153908e-01),
    (8.48206583410427206e-01, 1.07159220467171773e-01),
    (9.37273392400705951e-01, 7.03660474881080689e-02),
    (9.87992518020485377e-01, 3.07532419961186465e-02),
];

const MAX_DEPTH: u32 = 48;

fn gl15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> f64 {
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut sum = 0.0;
    for &(node, weight) in &GL15 {
        sum += weight * f(mid + half * node);
    }
    sum * half
}

fn refine<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, whole: f64, tol: f64, depth: u32) -> f64 {
    let mid = 0.5 * (a + b);
    let left = gl15(f, a, mid);
    let right = gl15(f, mid, b);
    let split = left + right;
    if (split - whole).abs() <= tol || depth >= MAX_DEPTH {
        return split;
    }
    refine(f, a, mid, left, 0.5 * tol, depth + 1) + refine(f, mid, b, right, 0.5 * tol, depth + 1)
}

/// Integrate `f` over `[a, b]` to absolute tolerance `tol`.
///
/// `f` is never evaluated at the interval endpoints (Gauss nodes are
/// interior), so integrands that are singular exactly at an endpoint are
/// tolerated, though convergence is then up to the caller's substitution.
pub(crate) fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    let whole = gl15(&f, a, b);
    refine(&f, a, b, whole, tol, 0)
}
