//! Carnot-Carathéodory distance estimators.
//!
//! Two independent routes to `d_CC`:
//!
//! * [`staircase_distance`] — the closed-form optimum over the
//!   horizontal-vertical-horizontal staircase family. The objective
//!   `L(s) = |x₁ − s| + |x₂ − s| + |Δy| · |s|^{−α/2}` is piecewise smooth
//!   with a single power-law term, so its minimum over `s ≠ 0` is attained
//!   at one of four explicit candidates: the stationary points
//!   `s = ±(α|Δy|/4)^{2/(2+α)}` or the endpoint abscissae. Always an upper
//!   bound for `d_CC`.
//! * [`GridSolver`] / [`grid_cc_distance`] — shortest paths on a 4-neighbor
//!   lattice whose vertical edges are weighted by the column density
//!   `|x|^{−α/2}`. Columns are offset by half a cell so no node sits on the
//!   axis; the axis simply carries no cheap vertical motion, matching the
//!   admissibility constraint. Converges to within the `√2` axis-parallel
//!   overshoot of `d_CC` as the mesh refines.
//!
//! [`comparability_scan`] samples point pairs and reports the empirical
//! ratio envelope between the quasidistance and the better of the two
//! estimators, which is how the comparability constant `C(α)` is measured.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::Error;
use crate::plane::{quasidistance, GrushinPoint, MetricParams, Region};
use crate::sampling;
use crate::Result;

/// Which candidate realized the staircase minimum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum StaircaseBranch {
    /// A stationary pivot `s = ±(α|Δy|/4)^{2/(2+α)}` strictly beyond both
    /// endpoint abscissae.
    InteriorOptimum,
    /// The pivot sits at `x₁`: vertical run first, then one horizontal leg.
    EndpointX1,
    /// The pivot sits at `x₂`: one horizontal leg, then the vertical run.
    EndpointX2,
    /// Both endpoints share the pivot abscissa: a single vertical segment.
    PureVertical,
}

/// Result of minimizing the staircase objective for one pair of endpoints.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StaircaseSolution {
    /// Abscissa `s` of the vertical run.
    pub pivot_abscissa: f64,
    /// Grushin length of the realized staircase; an upper bound for `d_CC`.
    pub length: f64,
    pub branch: StaircaseBranch,
}

/// Minimize the staircase objective between `z1` and `z2`.
///
/// With `Δy = 0` the staircase degenerates to the horizontal segment: the
/// length is `|x₁ − x₂|`, the pivot is reported at `x₂`, and the
/// `PureVertical` branch is excluded.
pub fn staircase_distance(
    z1: GrushinPoint,
    z2: GrushinPoint,
    p: MetricParams,
) -> StaircaseSolution {
    let dy = (z2.y() - z1.y()).abs();
    if dy == 0.0 {
        return StaircaseSolution {
            pivot_abscissa: z2.x(),
            length: (z1.x() - z2.x()).abs(),
            branch: StaircaseBranch::EndpointX2,
        };
    }
    let stationary = (p.alpha() * dy / 4.0).powf(p.y_exponent());
    let objective = |s: f64| {
        (z1.x() - s).abs() + (z2.x() - s).abs() + dy * s.abs().powf(-p.half_alpha())
    };
    let mut best_s = f64::NAN;
    let mut best_len = f64::INFINITY;
    for s in [stationary, -stationary, z1.x(), z2.x()] {
        if s == 0.0 {
            continue;
        }
        let len = objective(s);
        if len < best_len {
            best_len = len;
            best_s = s;
        }
    }
    debug_assert!(best_len.is_finite());
    let branch = if best_s == z1.x() && best_s == z2.x() {
        StaircaseBranch::PureVertical
    } else if best_s == z1.x() {
        StaircaseBranch::EndpointX1
    } else if best_s == z2.x() {
        StaircaseBranch::EndpointX2
    } else {
        StaircaseBranch::InteriorOptimum
    };
    StaircaseSolution {
        pivot_abscissa: best_s,
        length: best_len,
        branch,
    }
}

/// The polygonal path realizing a staircase solution, with degenerate legs
/// dropped. `None` when the two endpoints coincide.
pub fn staircase_path(
    z1: GrushinPoint,
    z2: GrushinPoint,
    solution: &StaircaseSolution,
) -> Option<crate::plane::PolyPath> {
    let s = solution.pivot_abscissa;
    let mut vertices = vec![z1];
    for v in [
        GrushinPoint::raw(s, z1.y()),
        GrushinPoint::raw(s, z2.y()),
        z2,
    ] {
        if *vertices.last().expect("nonempty") != v {
            vertices.push(v);
        }
    }
    if vertices.len() < 2 {
        return None;
    }
    Some(crate::plane::PolyPath::new(vertices).expect("consecutive vertices deduplicated"))
}

const MIN_RESOLUTION: u32 = 8;
const LANDMARK_COUNT: usize = 8;

#[derive(Debug, Clone, Copy)]
struct HeapEntry {
    priority: f64,
    cost: f64,
    node: u32,
}

impl PartialEq for HeapEntry {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for HeapEntry {}
impl PartialOrd for HeapEntry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for HeapEntry {
    fn cmp(&self, other: &Self) -> Ordering {
        // Reversed: BinaryHeap is a max-heap, we want smallest priority first.
        other
            .priority
            .total_cmp(&self.priority)
            .then_with(|| other.node.cmp(&self.node))
    }
}

/// Reusable per-thread workspace for shortest-path queries.
#[derive(Debug)]
pub struct GridScratch {
    cost: Vec<f64>,
    stamp: Vec<u32>,
    epoch: u32,
    heap: BinaryHeap<HeapEntry>,
}

impl GridScratch {
    fn new(nodes: usize) -> Self {
        Self {
            cost: vec![f64::INFINITY; nodes],
            stamp: vec![0; nodes],
            epoch: 0,
            heap: BinaryHeap::new(),
        }
    }

    fn begin(&mut self) {
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            self.stamp.fill(0);
            self.epoch = 1;
        }
        self.heap.clear();
    }

    #[inline]
    fn get(&self, node: u32) -> f64 {
        if self.stamp[node as usize] == self.epoch {
            self.cost[node as usize]
        } else {
            f64::INFINITY
        }
    }

    #[inline]
    fn set(&mut self, node: u32, value: f64) {
        self.stamp[node as usize] = self.epoch;
        self.cost[node as usize] = value;
    }
}

/// Shortest-path oracle on a half-cell-offset lattice over a region.
///
/// Horizontal edges cost one cell width; vertical edges cost one cell height
/// times the column density `|x|^{−α/2}`. Built once per `(region, α,
/// resolution)` and reused across queries; [`GridSolver::with_landmarks`]
/// additionally precomputes distance tables from a handful of boundary nodes
/// to drive an A* lower bound for repeated queries.
pub struct GridSolver {
    params: MetricParams,
    region: Region,
    resolution: u32,
    nx: usize,
    ny: usize,
    hx: f64,
    hy: f64,
    col_x: Vec<f64>,
    vcost: Vec<f64>,
    /// Cheapest vertical density over all columns, for the analytic bound.
    min_vertical_density: f64,
    /// Interleaved landmark distance tables: entry `node * landmark_count + l`.
    landmark_dist: Option<Vec<f64>>,
    landmark_count: usize,
}

impl GridSolver {
    pub fn new(region: Region, p: MetricParams, resolution: u32) -> Result<Self> {
        if resolution < MIN_RESOLUTION {
            return Err(Error::ResolutionTooSmall {
                min: MIN_RESOLUTION,
                got: resolution,
            });
        }
        let nx = resolution as usize;
        let hx = region.width() / resolution as f64;
        let ny = ((region.height() / hx).round() as usize).max(1);
        let hy = region.height() / ny as f64;
        let col_x: Vec<f64> = (0..nx)
            .map(|i| region.x_min() + (i as f64 + 0.5) * hx)
            .collect();
        let vcost: Vec<f64> = col_x
            .iter()
            .map(|&x| {
                if x == 0.0 {
                    // No vertical motion on the axis. The half-cell offset
                    // avoids this for symmetric regions; it can still occur
                    // for general ones.
                    f64::INFINITY
                } else {
                    hy * x.abs().powf(-p.half_alpha())
                }
            })
            .collect();
        let max_abs_col = col_x.iter().fold(0.0f64, |m, &x| m.max(x.abs()));
        let min_vertical_density = max_abs_col.powf(-p.half_alpha());
        Ok(Self {
            params: p,
            region,
            resolution,
            nx,
            ny,
            hx,
            hy,
            col_x,
            vcost,
            min_vertical_density,
            landmark_dist: None,
            landmark_count: 0,
        })
    }

    /// Precompute landmark distance tables (full Dijkstra per landmark) so
    /// repeated queries can prune with the triangle-inequality bound.
    pub fn with_landmarks(mut self) -> Self {
        let nodes = self.nx * self.ny;
        let landmarks = self.landmark_nodes();
        let k = landmarks.len();
        let tables: Vec<Vec<f64>> = landmarks
            .par_iter()
            .map(|&l| self.full_dijkstra(l))
            .collect();
        let mut interleaved = vec![0.0f64; nodes * k];
        for (li, table) in tables.iter().enumerate() {
            for (node, &d) in table.iter().enumerate() {
                interleaved[node * k + li] = d;
            }
        }
        self.landmark_dist = Some(interleaved);
        self.landmark_count = k;
        self
    }

    pub fn resolution(&self) -> u32 {
        self.resolution
    }

    pub fn params(&self) -> MetricParams {
        self.params
    }

    pub fn region(&self) -> Region {
        self.region
    }

    /// Cell width of the lattice (the `h` in the convergence statements).
    pub fn cell_width(&self) -> f64 {
        self.hx
    }

    pub fn scratch(&self) -> GridScratch {
        GridScratch::new(self.nx * self.ny)
    }

    fn landmark_nodes(&self) -> Vec<u32> {
        let (nx, ny) = (self.nx, self.ny);
        let cols = [0, nx / 2, nx - 1];
        let rows = [0, ny / 2, ny - 1];
        let mut nodes: Vec<u32> = Vec::new();
        for &c in &cols {
            for &r in &rows {
                if c == nx / 2 && r == ny / 2 {
                    continue; // center adds nothing as a landmark
                }
                let node = (c * ny + r) as u32;
                if !nodes.contains(&node) {
                    nodes.push(node);
                }
            }
        }
        nodes.truncate(LANDMARK_COUNT);
        nodes
    }

    #[inline]
    fn node_of(&self, z: GrushinPoint) -> u32 {
        let i = (((z.x() - self.region.x_min()) / self.hx) as usize).min(self.nx - 1);
        let j = (((z.y() - self.region.y_min()) / self.hy) as usize).min(self.ny - 1);
        (i * self.ny + j) as u32
    }

    /// Whether two points collapse to the same lattice node, i.e. are
    /// indistinguishable at this oracle's resolution.
    pub fn same_node(&self, z1: GrushinPoint, z2: GrushinPoint) -> bool {
        self.node_of(z1) == self.node_of(z2)
    }

    fn check_inside(&self, z: GrushinPoint) -> Result<()> {
        if !self.region.contains(z) {
            return Err(Error::OutsideRegion { x: z.x(), y: z.y() });
        }
        Ok(())
    }

    fn full_dijkstra(&self, source: u32) -> Vec<f64> {
        let nodes = self.nx * self.ny;
        let mut dist = vec![f64::INFINITY; nodes];
        let mut heap = BinaryHeap::with_capacity(nodes / 4);
        dist[source as usize] = 0.0;
        heap.push(HeapEntry {
            priority: 0.0,
            cost: 0.0,
            node: source,
        });
        while let Some(HeapEntry { cost, node, .. }) = heap.pop() {
            if cost > dist[node as usize] {
                continue;
            }
            self.relax_neighbors(node, cost, |nbr, cand| {
                if cand < dist[nbr as usize] {
                    dist[nbr as usize] = cand;
                    heap.push(HeapEntry {
                        priority: cand,
                        cost: cand,
                        node: nbr,
                    });
                }
            });
        }
        dist
    }

    #[inline]
    fn relax_neighbors(&self, node: u32, cost: f64, mut visit: impl FnMut(u32, f64)) {
        let ny = self.ny;
        let node = node as usize;
        let col = node / ny;
        let row = node % ny;
        if col > 0 {
            visit((node - ny) as u32, cost + self.hx);
        }
        if col + 1 < self.nx {
            visit((node + ny) as u32, cost + self.hx);
        }
        let vc = self.vcost[col];
        if vc.is_finite() {
            if row > 0 {
                visit((node - 1) as u32, cost + vc);
            }
            if row + 1 < ny {
                visit((node + 1) as u32, cost + vc);
            }
        }
    }

    /// Lattice shortest-path length between the nodes nearest `z1` and `z2`.
    pub fn distance(&self, z1: GrushinPoint, z2: GrushinPoint) -> Result<f64> {
        self.distance_with(&mut self.scratch(), z1, z2)
    }

    /// [`GridSolver::distance`] with caller-provided scratch space, for
    /// query loops.
    pub fn distance_with(
        &self,
        scratch: &mut GridScratch,
        z1: GrushinPoint,
        z2: GrushinPoint,
    ) -> Result<f64> {
        self.check_inside(z1)?;
        self.check_inside(z2)?;
        let source = self.node_of(z1);
        let target = self.node_of(z2);
        if source == target {
            return Ok(0.0);
        }

        let k = self.landmark_count;
        let mut target_landmarks = [0.0f64; LANDMARK_COUNT];
        if let Some(tables) = &self.landmark_dist {
            let base = target as usize * k;
            target_landmarks[..k].copy_from_slice(&tables[base..base + k]);
        }
        let (tcol, trow) = ((target as usize) / self.ny, (target as usize) % self.ny);
        let (tx, ty_row) = (self.col_x[tcol], trow as f64);

        let heuristic = |node: u32| -> f64 {
            let n = node as usize;
            let col = n / self.ny;
            let row = n % self.ny;
            // Net horizontal travel is unavoidable; net vertical travel
            // costs at least the cheapest column density.
            let dx = (self.col_x[col] - tx).abs();
            let dy_rows = (row as f64 - ty_row).abs() * self.hy;
            let mut h = dx.max(dy_rows * self.min_vertical_density);
            if let Some(tables) = &self.landmark_dist {
                let base = n * k;
                for (l, &dt) in target_landmarks[..k].iter().enumerate() {
                    let bound = (tables[base + l] - dt).abs();
                    if bound > h {
                        h = bound;
                    }
                }
            }
            h
        };

        scratch.begin();
        scratch.set(source, 0.0);
        scratch.heap.push(HeapEntry {
            priority: heuristic(source),
            cost: 0.0,
            node: source,
        });
        while let Some(HeapEntry { cost, node, .. }) = scratch.heap.pop() {
            if node == target {
                return Ok(cost);
            }
            if cost > scratch.get(node) {
                continue;
            }
            let mut pending: [(u32, f64); 4] = [(0, 0.0); 4];
            let mut count = 0;
            self.relax_neighbors(node, cost, |nbr, cand| {
                if cand < scratch.get(nbr) {
                    pending[count] = (nbr, cand);
                    count += 1;
                }
            });
            for &(nbr, cand) in &pending[..count] {
                scratch.set(nbr, cand);
                scratch.heap.push(HeapEntry {
                    priority: cand + heuristic(nbr),
                    cost: cand,
                    node: nbr,
                });
            }
        }
        unreachable!("the lattice is connected; the target is always reached")
    }
}

/// One-shot grid estimate of `d_CC(z1, z2)`.
///
/// Builds the lattice, runs a single query, and discards the solver. Use
/// [`GridSolver`] directly when issuing many queries against one grid.
pub fn grid_cc_distance(
    z1: GrushinPoint,
    z2: GrushinPoint,
    p: MetricParams,
    resolution: u32,
    region: Region,
) -> Result<f64> {
    GridSolver::new(region, p, resolution)?.distance(z1, z2)
}

/// Empirical min/max ratio statistics between the quasidistance and the
/// Carnot-Carathéodory estimators over one sampled region.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ComparabilityReport {
    pub ratio_min: f64,
    pub ratio_max: f64,
    pub sample_count: usize,
    pub region: Region,
    pub seed: u64,
    pub alpha: f64,
    pub resolution: u32,
}

impl ComparabilityReport {
    /// The empirical comparability constant `C = max{ratio_max, 1/ratio_min}`.
    pub fn comparability_constant(&self) -> f64 {
        self.ratio_max.max(1.0 / self.ratio_min)
    }
}

/// Per-pair record of a comparability scan.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PairSample {
    pub index: usize,
    pub z1: GrushinPoint,
    pub z2: GrushinPoint,
    pub quasidistance: f64,
    pub staircase: f64,
    pub grid: f64,
    /// `quasidistance / min(staircase, grid)`.
    pub ratio: f64,
}

/// A comparability scan with its per-sample records.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparabilityScan {
    pub samples: Vec<PairSample>,
    pub report: ComparabilityReport,
}

/// Sample `n_samples` point pairs uniformly in `region` and record the ratio
/// `quasidistance / min(staircase, grid)` for each.
///
/// Deterministic for a fixed seed: sample `i` draws from the substream
/// `(seed, i)` regardless of scheduling. Pairs that are degenerate — closer
/// than the global threshold, or indistinguishable at the grid resolution —
/// are resampled, since ratio statistics are undefined at coincident points.
pub fn comparability_scan(
    region: Region,
    p: MetricParams,
    n_samples: usize,
    seed: u64,
    resolution: u32,
) -> Result<ComparabilityScan> {
    if n_samples == 0 {
        return Err(Error::NoSamples);
    }
    let solver = GridSolver::new(region, p, resolution)?.with_landmarks();
    let samples: Vec<PairSample> = (0..n_samples)
        .into_par_iter()
        .map_init(
            || solver.scratch(),
            |scratch, index| {
                let mut rng = sampling::stream(seed, index as u64);
                let (z1, z2) = loop {
                    let (z1, z2) = sampling::sample_pair(&mut rng, region, p);
                    if !solver.same_node(z1, z2) {
                        break (z1, z2);
                    }
                };
                let quasi = quasidistance(z1, z2, p);
                let staircase = staircase_distance(z1, z2, p).length;
                let grid = solver
                    .distance_with(scratch, z1, z2)
                    .expect("sampled points lie inside the region");
                PairSample {
                    index,
                    z1,
                    z2,
                    quasidistance: quasi,
                    staircase,
                    grid,
                    ratio: quasi / staircase.min(grid),
                }
            },
        )
        .collect();
    let (ratio_min, ratio_max) = samples.iter().fold(
        (f64::INFINITY, f64::NEG_INFINITY),
        |(lo, hi), s| (lo.min(s.ratio), hi.max(s.ratio)),
    );
    let report = ComparabilityReport {
        ratio_min,
        ratio_max,
        sample_count: n_samples,
        region,
        seed,
        alpha: p.alpha(),
        resolution,
    };
    Ok(ComparabilityScan { samples, report })
}
