//! Helpers shared by the integration tests: tolerances, Hausdorff
//! distances on the tripod, component splitting, non-uniqueness witnesses
//! and the rule for matching exact nearest-point sets against grid clouds.
#![allow(dead_code)]

use smpa::metrics::{from_magnitude, magnitude};
use smpa::oracle::{cloud_slack, oracle_dist, oracle_rho, GridSpec};
use smpa::{
    distance_to_set, project_ray, rho, Base, Combine, Interval, MetricId, ProjectionResult, RaySet,
    SElem, SVector, Sign,
};

/// Exact-rational comparisons in floating point.
pub const EXACT: f64 = 1e-12;
/// Triangle-inequality slack.
pub const TRIANGLE: f64 = 1e-9;
/// Hausdorff and distance agreement between exact routines and grid oracles.
pub const GRID_AGREEMENT: f64 = 2e-3;

/// Per-coordinate magnitude distance `ρ_{0,2}`.
pub fn rho02(x: &SVector, y: &SVector) -> f64 {
    rho(MetricId::new(Combine::Max, Base::D2), x, y).expect("same dimension")
}

/// Distance from `p` to the nearest point of a cloud in `𝕊`, with the cloud
/// organised per ray as sorted magnitudes (the origin is in every list).
struct RayIndex {
    rays: [Vec<f64>; 3],
}

impl RayIndex {
    fn new(points: &[SElem]) -> Self {
        let mut rays: [Vec<f64>; 3] = Default::default();
        for &p in points {
            let m = magnitude(p);
            if m == 0.0 {
                for r in rays.iter_mut() {
                    r.push(0.0);
                }
            } else {
                rays[p.sign().index()].push(m);
            }
        }
        for r in rays.iter_mut() {
            r.sort_by(f64::total_cmp);
        }
        RayIndex { rays }
    }

    fn nearest(&self, p: SElem, base: Base) -> f64 {
        let m = magnitude(p);
        let mut best = f64::INFINITY;
        for s in Sign::ALL {
            let list = &self.rays[s.index()];
            if list.is_empty() {
                continue;
            }
            if m == 0.0 || s == p.sign() {
                let k = list.partition_point(|&q| q < m);
                for q in [k.checked_sub(1), Some(k)].into_iter().flatten().filter_map(|i| list.get(i)) {
                    best = best.min(base.dist_mag(s, m, s, *q));
                }
            } else {
                best = best.min(base.dist_mag(p.sign(), m, s, list[0]));
            }
        }
        best
    }
}

/// Hausdorff distance between two finite subsets of `𝕊` under `d₁` (the
/// distance between `Φ`-images).
pub fn hausdorff_1d(a: &[SElem], b: &[SElem]) -> f64 {
    let (ia, ib) = (RayIndex::new(a), RayIndex::new(b));
    let one = a.iter().map(|&p| ib.nearest(p, Base::D1)).fold(0.0, f64::max);
    let two = b.iter().map(|&p| ia.nearest(p, Base::D1)).fold(0.0, f64::max);
    one.max(two)
}

/// Hausdorff distance between two finite subsets of `𝕊ⁿ` under `id`.
pub fn hausdorff(a: &[SVector], b: &[SVector], id: MetricId) -> f64 {
    let dir = |p: &[SVector], q: &[SVector]| {
        p.iter()
            .map(|x| q.iter().map(|y| rho(id, x, y).unwrap()).fold(f64::INFINITY, f64::min))
            .fold(0.0, f64::max)
    };
    dir(a, b).max(dir(b, a))
}

pub fn first_coords(points: &[SVector]) -> Vec<SElem> {
    points.iter().map(|p| p.get(0)).collect()
}

/// Connected components of a closed subset of `𝕊`: all intervals touching
/// the origin form one component, every other interval is its own.
pub fn components(c: &RaySet) -> Vec<RaySet> {
    let mut star: [Vec<Interval>; 3] = Default::default();
    let mut out = Vec::new();
    for s in Sign::ALL {
        for &iv in c.ray(s) {
            if iv.lo == 0.0 {
                star[s.index()].push(iv);
            } else {
                let mut lists: [Vec<Interval>; 3] = Default::default();
                lists[s.index()].push(iv);
                let [p, m, b] = lists;
                out.push(RaySet::new(p, m, b));
            }
        }
    }
    if star.iter().any(|l| !l.is_empty()) {
        let [p, m, b] = star;
        out.push(RaySet::new(p, m, b));
    }
    out
}

/// Point at arc length `s` along the `d₂`-geodesic from `p` to `q`.
fn geodesic_point(p: SElem, q: SElem, s: f64) -> SElem {
    let (mp, mq) = (magnitude(p), magnitude(q));
    if mp == 0.0 {
        return from_magnitude(q.sign(), s);
    }
    if mq == 0.0 || p.sign() == q.sign() {
        let m = if mq >= mp { mp + s } else { mp - s };
        return from_magnitude(p.sign(), m.max(0.0));
    }
    if s <= mp {
        from_magnitude(p.sign(), mp - s)
    } else {
        from_magnitude(q.sign(), s - mp)
    }
}

/// Searches for a point with at least two nearest points in `c`: for each
/// pair of components, bisects along the geodesic between their closest
/// points for a point equidistant from both components.
pub fn non_uniqueness_witness(c: &RaySet, base: Base) -> Option<(SElem, ProjectionResult<SElem>)> {
    let comps = components(c);
    for i in 0..comps.len() {
        for j in i + 1..comps.len() {
            let (k1, k2) = (&comps[i], &comps[j]);
            let (mut p, mut q, mut len) = (SElem::ZERO, SElem::ZERO, f64::INFINITY);
            for &u in &k1.endpoints() {
                for &v in &k2.endpoints() {
                    let d = Base::D2.dist(u, v);
                    if d < len {
                        (p, q, len) = (u, v, d);
                    }
                }
            }
            let f = |s: f64| {
                let x = geodesic_point(p, q, s);
                distance_to_set(x, k1, base).unwrap() - distance_to_set(x, k2, base).unwrap()
            };
            let (mut lo, mut hi) = (0.0, len);
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if mid <= lo || mid >= hi {
                    break;
                }
                if f(mid) < 0.0 {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            let x = geodesic_point(p, q, 0.5 * (lo + hi));
            let proj = project_ray(x, c, base).unwrap();
            if proj.len() >= 2 {
                return Some((x, proj));
            }
        }
    }
    None
}

/// Compares an exact nearest-point set with a grid argmin cloud.
///
/// With `τ` the cloud slack, the grid optimum is at most `F + τ` (the grid
/// point nearest an exact minimizer), so every cloud point has excess
/// `E ≤ 2τ` over the exact optimum `F`. The checks:
///
/// * every exact point has a cloud point within one grid step (`ρ_{0,2}`);
/// * the grid optimum is not below `F`, and within [`GRID_AGREEMENT`] of it;
/// * every cloud point scores at most `F + E`;
/// * every cloud point is near-optimal in each coordinate separately:
///   `d(x(i), y(i)) ≤ d*ᵢ + e` with `e = E` for the sum combine (and for
///   `n = 1`) and `e = √(2FE + E²)` for the Euclidean combine.
///
/// The last check is the coordinatewise form of factorization. Cloud points
/// need not lie close to the exact set itself: a coordinate with two
/// candidates on different rays at almost equal distance contributes both.
pub fn match_cloud(
    x: &SVector,
    exact: &ProjectionResult<SVector>,
    cloud: &ProjectionResult<SVector>,
    id: MetricId,
    g: &GridSpec,
) -> Result<(), String> {
    let n = x.len();
    let h = g.resolution;
    let tau = cloud_slack(id, n, g);
    let f = exact.distance;
    if (cloud.distance - f).abs() > GRID_AGREEMENT {
        return Err(format!("distances differ: exact {f}, grid {}", cloud.distance));
    }
    if cloud.distance < f - 1e-9 {
        return Err(format!("grid optimum {} below exact optimum {f}", cloud.distance));
    }
    for p in &exact.points {
        let near = cloud.points.iter().map(|y| rho02(p, y)).fold(f64::INFINITY, f64::min);
        if near > h + 1e-9 {
            return Err(format!("exact point {p:?} is {near} from the grid cloud"));
        }
    }
    let excess = 2.0 * tau;
    let per_coord = match id.combine {
        _ if n == 1 => excess,
        Combine::Sum => excess,
        Combine::Euclid => (2.0 * f * excess + excess * excess).sqrt(),
        Combine::Max => f64::INFINITY,
    } + 1e-9;
    let best: Vec<f64> = (0..n).map(|i| oracle_dist(id.base, x.get(i), exact.points[0].get(i))).collect();
    for y in &cloud.points {
        let score = oracle_rho(id, x, y);
        if score > f + excess + 1e-9 {
            return Err(format!("cloud point {y:?} scores {score}, optimum {f}"));
        }
        for (i, &di) in best.iter().enumerate() {
            let d = oracle_dist(id.base, x.get(i), y.get(i));
            if d > di + per_coord {
                return Err(format!(
                    "cloud point {y:?}: coordinate {i} at distance {d}, optimum {di} (allowed excess {per_coord})"
                ));
            }
        }
    }
    Ok(())
}

pub fn as_vectors(p: ProjectionResult<SElem>) -> ProjectionResult<SVector> {
    ProjectionResult {
        points: p.points.into_iter().map(SVector::from).collect(),
        distance: p.distance,
        singleton: p.singleton,
    }
}
