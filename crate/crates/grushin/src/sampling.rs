//! Deterministic seeded sampling for the empirical scans.
//!
//! Every scan derives one RNG substream per sample index from `(seed, index)`
//! via the ChaCha stream mechanism, so results are bit-identical no matter
//! how samples are scheduled across threads.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::plane::{quasidistance, GrushinPoint, MetricParams, Region};
use crate::DEGENERACY_THRESHOLD;

/// RNG substream for sample `index` under `seed`.
pub(crate) fn stream(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

pub(crate) fn sample_point(rng: &mut impl Rng, region: Region) -> GrushinPoint {
    let x = rng.gen_range(region.x_min()..region.x_max());
    let y = rng.gen_range(region.y_min()..region.y_max());
    GrushinPoint::raw(x, y)
}

/// A pair with quasidistance at least [`DEGENERACY_THRESHOLD`]; degenerate
/// draws are discarded and redrawn from the same stream.
pub(crate) fn sample_pair(
    rng: &mut impl Rng,
    region: Region,
    p: MetricParams,
) -> (GrushinPoint, GrushinPoint) {
    loop {
        let z1 = sample_point(rng, region);
        let z2 = sample_point(rng, region);
        if quasidistance(z1, z2, p) >= DEGENERACY_THRESHOLD {
            return (z1, z2);
        }
    }
}

/// A triple whose pairwise quasidistances all clear the degeneracy floor.
pub(crate) fn sample_triple(
    rng: &mut impl Rng,
    region: Region,
    p: MetricParams,
) -> (GrushinPoint, GrushinPoint, GrushinPoint) {
    loop {
        let z1 = sample_point(rng, region);
        let z2 = sample_point(rng, region);
        let z3 = sample_point(rng, region);
        if quasidistance(z1, z2, p) >= DEGENERACY_THRESHOLD
            && quasidistance(z1, z3, p) >= DEGENERACY_THRESHOLD
            && quasidistance(z2, z3, p) >= DEGENERACY_THRESHOLD
        {
            return (z1, z2, z3);
        }
    }
}
