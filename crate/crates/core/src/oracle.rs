//! Brute-force reference implementations used to validate the analytic
//! routines: grid nearest-point search, parameter-grid enumeration of
//! semimodule segments, and grid-graph connectivity.
//!
//! The oracle deliberately avoids the analytic code paths: distances are
//! recomputed through independent models of the tripod (complex
//! coordinates for `d₁`, an `ℓ¹` "T" picture for `d₂`), and segment points
//! are evaluated through the pair algebra.

use std::collections::VecDeque;

use crate::algebra::{ExtReal, Pair, SElem, Sign};
use crate::error::{Error, Result};
use crate::metrics::{Base, Combine, MetricId, SVector};
use crate::projection::ProjectionResult;
use crate::sets::{BoxSet, RaySet};

/// Grid parameters of the oracle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    /// Step in the magnitude coordinate.
    pub resolution: f64,
    /// Unbounded intervals are clipped here.
    pub max_magnitude: f64,
    pub seed: u64,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec { resolution: 1e-3, max_magnitude: 3f64.exp(), seed: 42 }
    }
}

impl GridSpec {
    pub fn new(resolution: f64, max_magnitude: f64, seed: u64) -> Result<Self> {
        let g = GridSpec { resolution, max_magnitude, seed };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        let ok = self.resolution.is_finite()
            && self.max_magnitude.is_finite()
            && self.resolution > 0.0
            && self.resolution < self.max_magnitude;
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidValue(format!(
                "need 0 < resolution < max_magnitude, got {} and {}",
                self.resolution, self.max_magnitude
            )))
        }
    }
}

/// Magnitude `e^|a|` computed directly.
fn mag(a: SElem) -> f64 {
    a.abs().value().map_or(0.0, f64::exp)
}

/// Element on a ray with the given magnitude.
fn elem(ray: Sign, m: f64) -> SElem {
    if m <= 0.0 {
        SElem::ZERO
    } else {
        SElem::new(ray, ExtReal::real(m.ln()))
    }
}

fn angle(s: Sign) -> f64 {
    use std::f64::consts::PI;
    match s {
        Sign::Balanced => 0.0,
        Sign::Plus => 2.0 * PI / 3.0,
        Sign::Minus => 4.0 * PI / 3.0,
    }
}

/// `d₁` through complex coordinates `m·e^{iφ}`.
fn d1_complex(a: SElem, b: SElem) -> f64 {
    let (ma, mb) = (mag(a), mag(b));
    let (pa, pb) = (angle(a.sign()), angle(b.sign()));
    let dx = ma * pa.cos() - mb * pb.cos();
    let dy = ma * pa.sin() - mb * pb.sin();
    dx.hypot(dy)
}

/// `d₂` in the model `⊕m ↦ (m, 0)`, `⊖m ↦ (−m, 0)`, `m• ↦ (0, m)` with the
/// `ℓ¹` distance.
fn d2_taxicab(a: SElem, b: SElem) -> f64 {
    let t = |x: SElem| {
        let m = mag(x);
        match x.sign() {
            Sign::Plus => (m, 0.0),
            Sign::Minus => (-m, 0.0),
            Sign::Balanced => (0.0, m),
        }
    };
    let ((x1, y1), (x2, y2)) = (t(a), t(b));
    (x1 - x2).abs() + (y1 - y2).abs()
}

/// Distance on `𝕊` by the oracle's own route.
pub fn oracle_dist(base: Base, a: SElem, b: SElem) -> f64 {
    match base {
        Base::D1 => d1_complex(a, b),
        Base::D2 => d2_taxicab(a, b),
    }
}

fn combine(c: Combine, ds: &[f64]) -> f64 {
    match c {
        Combine::Max => ds.iter().copied().fold(0.0, f64::max),
        Combine::Euclid => ds.iter().map(|d| d * d).sum::<f64>().sqrt(),
        Combine::Sum => ds.iter().sum(),
    }
}

/// `ρ_{k,j}` by the oracle's own route.
pub fn oracle_rho(id: MetricId, x: &SVector, y: &SVector) -> f64 {
    let ds: Vec<f64> =
        x.coords().iter().zip(y.coords()).map(|(&a, &b)| oracle_dist(id.base, a, b)).collect();
    combine(id.combine, &ds)
}

/// Lipschitz constant of the combine function with respect to the largest
/// coordinate change.
fn lipschitz(c: Combine, n: usize) -> f64 {
    match c {
        Combine::Max => 1.0,
        Combine::Euclid => (n as f64).sqrt(),
        Combine::Sum => n as f64,
    }
}

/// Objective slack of the argmin cloud: moving every coordinate by one grid
/// step changes the objective by at most this much.
pub fn cloud_slack(id: MetricId, n: usize, g: &GridSpec) -> f64 {
    lipschitz(id.combine, n) * g.resolution + 1e-9
}

/// Grid points of a closed subset of `𝕊`, clipped at `max_magnitude`.
pub fn grid_points(c: &RaySet, g: &GridSpec) -> Vec<SElem> {
    let h = g.resolution;
    let mut out: Vec<SElem> = Vec::new();
    for s in Sign::ALL {
        for iv in c.ray(s) {
            if iv.lo > g.max_magnitude {
                continue;
            }
            let top = iv.hi.min(g.max_magnitude);
            let mut k = 0usize;
            loop {
                let m = iv.lo + k as f64 * h;
                if m >= top {
                    break;
                }
                out.push(elem(s, m));
                k += 1;
            }
            out.push(elem(s, top));
        }
    }
    let mut unique = Vec::with_capacity(out.len());
    for p in out {
        if p.is_zero() && unique.contains(&SElem::ZERO) {
            continue;
        }
        unique.push(p);
    }
    unique
}

/// Upper bound on the number of points in an oracle argmin cloud.
const MAX_CLOUD: usize = 5_000_000;

/// Grid argmin of `ρ_{k,j}(x, ·)` over a box: all grid points whose
/// objective is within [`cloud_slack`] of the best grid value.
///
/// The enumeration is a depth-first search over coordinates with each
/// coordinate's grid sorted by its distance to `x(i)`; since every combine
/// function is monotone in each coordinate distance, a branch is cut as soon
/// as its lower bound exceeds the threshold. The result is therefore exactly
/// the set a full scan of the product grid would return.
pub fn grid_project(
    x: &SVector,
    a: &BoxSet,
    id: MetricId,
    g: &GridSpec,
) -> Result<ProjectionResult<SVector>> {
    g.validate()?;
    if x.len() != a.dim() {
        return Err(Error::DimensionMismatch { left: x.len(), right: a.dim() });
    }
    if a.is_empty() {
        return Err(Error::EmptySet);
    }
    let n = a.dim();
    let mut lists: Vec<Vec<(f64, SElem)>> = Vec::with_capacity(n);
    for (f, &xi) in a.factors.iter().zip(x.coords()) {
        let mut list: Vec<(f64, SElem)> =
            grid_points(f, g).into_iter().map(|y| (oracle_dist(id.base, xi, y), y)).collect();
        if list.is_empty() {
            return Err(Error::EmptyGrid { max_magnitude: g.max_magnitude });
        }
        list.sort_by(|p, q| p.0.total_cmp(&q.0).then(p.1.cmp(&q.1)));
        lists.push(list);
    }
    let mins: Vec<f64> = lists.iter().map(|l| l[0].0).collect();
    let best = combine(id.combine, &mins);
    let threshold = best + cloud_slack(id, n, g);

    let mut cloud: Vec<(SVector, f64)> = Vec::new();
    let mut partial = mins.clone();
    let mut chosen = vec![SElem::ZERO; n];
    #[allow(clippy::too_many_arguments)]
    fn dfs(
        depth: usize,
        lists: &[Vec<(f64, SElem)>],
        mins: &[f64],
        partial: &mut Vec<f64>,
        chosen: &mut Vec<SElem>,
        c: Combine,
        threshold: f64,
        cloud: &mut Vec<(SVector, f64)>,
    ) -> Result<()> {
        if depth == lists.len() {
            if cloud.len() >= MAX_CLOUD {
                return Err(Error::Precondition("oracle argmin cloud is too large".into()));
            }
            let v = combine(c, partial);
            cloud.push((SVector::new(chosen.clone()).expect("nonempty"), v));
            return Ok(());
        }
        for &(d, y) in &lists[depth] {
            partial[depth] = d;
            if combine(c, partial) > threshold {
                break;
            }
            chosen[depth] = y;
            dfs(depth + 1, lists, mins, partial, chosen, c, threshold, cloud)?;
        }
        partial[depth] = mins[depth];
        Ok(())
    }
    dfs(0, &lists, &mins, &mut partial, &mut chosen, id.combine, threshold, &mut cloud)?;
    cloud.sort_by(|p, q| p.0.cmp(&q.0));
    let singleton = cloud.len() == 1;
    Ok(ProjectionResult { points: cloud.into_iter().map(|(p, _)| p).collect(), distance: best, singleton })
}

/// `λ ⊗ a` in the pair algebra.
fn pair_scale(lambda: ExtReal, a: SElem) -> Pair {
    Pair::new(lambda, ExtReal::EPS).otimes(a.to_pair())
}

/// Class of a pair, treating components within `1e-12` as equal.
fn classify_tol(p: Pair) -> SElem {
    match (p.first.value(), p.second.value()) {
        (Some(x), Some(y)) if (x - y).abs() <= 1e-12 => SElem::new(Sign::Balanced, p.first.max(p.second)),
        _ => p.classify(),
    }
}

/// Parameter values `μ = e^λ ∈ [0, 1]` for one family: a uniform grid whose
/// step moves every coordinate by at most `h` in magnitude, plus the values
/// at which a coordinate of `λ⊗a` ties with `b`.
fn family_params(a: &SVector, b: &SVector, h: f64) -> Vec<ExtReal> {
    let top = a.coords().iter().map(|&x| mag(x)).fold(0.0, f64::max);
    let mut out = vec![ExtReal::EPS, ExtReal::ZERO];
    if top > 0.0 {
        let steps = (top / h).ceil() as usize;
        for k in 1..steps {
            out.push(ExtReal::real((k as f64 / steps as f64).ln()));
        }
    }
    for (&x, &y) in a.coords().iter().zip(b.coords()) {
        if let (Some(ax), Some(by)) = (x.abs().value(), y.abs().value()) {
            if by - ax <= 0.0 {
                out.push(ExtReal::real(by - ax));
            }
        }
    }
    out
}

/// Point cloud of `[a, b]_sm` obtained by evaluating `(λ⊗a) ⊕ (γ⊗b)` with
/// `λ ⊕ γ = 0` on a parameter grid.
pub fn grid_segment_sm(a: &SVector, b: &SVector, g: &GridSpec) -> Result<Vec<SVector>> {
    g.validate()?;
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch { left: a.len(), right: b.len() });
    }
    let eval = |lambda: ExtReal, gamma: ExtReal| -> SVector {
        let coords = a
            .coords()
            .iter()
            .zip(b.coords())
            .map(|(&x, &y)| classify_tol(pair_scale(lambda, x).oplus(pair_scale(gamma, y))))
            .collect();
        SVector::new(coords).expect("nonempty")
    };
    let mut cloud: Vec<SVector> = Vec::new();
    for lambda in family_params(a, b, g.resolution) {
        cloud.push(eval(lambda, ExtReal::ZERO));
    }
    for gamma in family_params(b, a, g.resolution) {
        cloud.push(eval(ExtReal::ZERO, gamma));
    }
    cloud.sort();
    cloud.dedup();
    Ok(cloud)
}

/// Connectivity of the grid graph of `C`: consecutive grid points on a ray
/// at most one step apart are joined, and every grid point within one step
/// of the origin is joined to a common hub.
pub fn grid_connected(c: &RaySet, g: &GridSpec) -> Result<bool> {
    g.validate()?;
    if c.is_empty() {
        return Err(Error::EmptySet);
    }
    let h = g.resolution;
    let mut nodes: Vec<(Sign, f64)> = Vec::new();
    for s in Sign::ALL {
        let mut ms: Vec<f64> = grid_points(c, g)
            .into_iter()
            .filter(|p| p.sign() == s && !p.is_zero())
            .map(mag)
            .collect();
        ms.sort_by(f64::total_cmp);
        nodes.extend(ms.into_iter().map(|m| (s, m)));
    }
    let hub = nodes.len();
    let has_origin = grid_points(c, g).contains(&SElem::ZERO);
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); hub + 1];
    for i in 0..hub {
        let (s, m) = nodes[i];
        if i + 1 < hub && nodes[i + 1].0 == s && nodes[i + 1].1 - m <= h * (1.0 + 1e-9) {
            adj[i].push(i + 1);
            adj[i + 1].push(i);
        }
        if m <= h * (1.0 + 1e-9) {
            adj[i].push(hub);
            adj[hub].push(i);
        }
    }
    let hub_used = has_origin || !adj[hub].is_empty();
    let total = hub + usize::from(hub_used);
    if total == 0 {
        return Err(Error::EmptyGrid { max_magnitude: g.max_magnitude });
    }
    let start = if hub > 0 { 0 } else { hub };
    let mut seen = vec![false; hub + 1];
    let mut queue = VecDeque::from([start]);
    seen[start] = true;
    let mut count = 0;
    while let Some(i) = queue.pop_front() {
        count += 1;
        for &k in &adj[i] {
            if !seen[k] {
                seen[k] = true;
                queue.push_back(k);
            }
        }
    }
    Ok(count == total)
}

/// Seeded random instances for property tests.
pub mod random {
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    use super::{elem, grid_connected, GridSpec};
    use crate::algebra::{ExtReal, SElem, Sign};
    use crate::metrics::SVector;
    use crate::sets::{is_semimodule_convex, BoxSet, Interval, RaySet};

    /// Smallest gap between generated intervals on one ray, and smallest
    /// positive magnitude, so that grid oracles at the default resolution
    /// resolve every gap.
    pub const MIN_GAP: f64 = 0.02;

    pub fn rng(seed: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(seed)
    }

    fn sign(rng: &mut impl Rng) -> Sign {
        Sign::ALL[rng.gen_range(0..3)]
    }

    /// `e^U`, `U` uniform in `[−3, 3]`.
    pub fn magnitude(rng: &mut impl Rng) -> f64 {
        rng.gen_range(-3.0f64..=3.0).exp()
    }

    /// A random element; the origin with probability 1/10.
    pub fn selem(rng: &mut impl Rng) -> SElem {
        if rng.gen_bool(0.1) {
            SElem::ZERO
        } else {
            SElem::new(sign(rng), ExtReal::real(rng.gen_range(-3.0..=3.0)))
        }
    }

    pub fn svector(rng: &mut impl Rng, n: usize) -> SVector {
        SVector::new((0..n).map(|_| selem(rng)).collect()).expect("n ≥ 1")
    }

    /// 1–4 intervals on one ray with magnitudes `e^U`; the last one is
    /// unbounded with probability 1/10.
    fn ray_intervals(rng: &mut impl Rng, from_origin: bool) -> Vec<Interval> {
        let k = rng.gen_range(1..=4);
        loop {
            let mut ends: Vec<f64> = (0..2 * k).map(|_| magnitude(rng)).collect();
            ends.sort_by(f64::total_cmp);
            if ends[0] < MIN_GAP {
                continue;
            }
            // Point intervals now and then.
            let mut ivs: Vec<Interval> = ends
                .chunks(2)
                .map(|c| {
                    let hi = if rng.gen_bool(0.15) { c[0] } else { c[1] };
                    Interval { lo: c[0], hi }
                })
                .collect();
            let gaps_ok = ivs.windows(2).all(|w| w[1].lo - w[0].hi >= MIN_GAP);
            if !gaps_ok {
                continue;
            }
            if from_origin {
                ivs[0].lo = 0.0;
            }
            if rng.gen_bool(0.1) {
                ivs.last_mut().expect("k ≥ 1").hi = f64::INFINITY;
            }
            return ivs;
        }
    }

    /// A random closed set: 1–3 nonempty rays with 1–4 intervals each; the
    /// origin is included with probability 1/2.
    pub fn rayset(rng: &mut impl Rng) -> RaySet {
        let mut lists: [Vec<Interval>; 3] = Default::default();
        let count = rng.gen_range(1..=3);
        let mut rays = Sign::ALL.to_vec();
        for i in (1..3).rev() {
            rays.swap(i, rng.gen_range(0..=i));
        }
        let origin = rng.gen_bool(0.5);
        for (i, &s) in rays.iter().take(count).enumerate() {
            lists[s.index()] = ray_intervals(rng, origin && i == 0);
        }
        let [plus, minus, balanced] = lists;
        RaySet::new(plus, minus, balanced)
    }

    /// `e^U`, or `+∞` with probability 1/10.
    fn top(rng: &mut impl Rng) -> f64 {
        if rng.gen_bool(0.1) {
            f64::INFINITY
        } else {
            magnitude(rng)
        }
    }

    /// A random connected set: one interval on one ray, or a star of 2–3
    /// intervals from the origin.
    pub fn connected_rayset(rng: &mut impl Rng) -> RaySet {
        let mut lists: [Vec<Interval>; 3] = Default::default();
        if rng.gen_bool(0.5) {
            let s = sign(rng);
            let (p, q) = (magnitude(rng), top(rng));
            let lo = if rng.gen_bool(0.3) { 0.0 } else { p.min(q) };
            lists[s.index()] = vec![Interval { lo, hi: p.max(q) }];
        } else {
            let skip = if rng.gen_bool(0.5) { Some(sign(rng)) } else { None };
            for s in Sign::ALL.into_iter().filter(|&s| Some(s) != skip) {
                lists[s.index()] = vec![Interval { lo: 0.0, hi: top(rng) }];
            }
        }
        let [plus, minus, balanced] = lists;
        RaySet::new(plus, minus, balanced)
    }

    /// A random set that the grid-graph oracle finds disconnected.
    pub fn disconnected_rayset(rng: &mut impl Rng) -> RaySet {
        let g = GridSpec::default();
        loop {
            let c = rayset(rng);
            if !grid_connected(&c, &g).expect("nonempty") {
                return c;
            }
        }
    }

    /// A random semimodule convex set, drawn from single intervals with end
    /// points in `{0, 1/2, 1, 2, 3, ∞}` and kept if convex.
    pub fn semimodule_convex_rayset(rng: &mut impl Rng) -> RaySet {
        const ENDS: [f64; 6] = [0.0, 0.5, 1.0, 2.0, 3.0, f64::INFINITY];
        loop {
            let mut lists: [Vec<Interval>; 3] = Default::default();
            for list in lists.iter_mut() {
                if rng.gen_bool(0.6) {
                    let i = rng.gen_range(0..5);
                    let j = rng.gen_range(i..6);
                    if ENDS[j] > 0.0 {
                        list.push(Interval { lo: ENDS[i], hi: ENDS[j] });
                    }
                }
            }
            let [plus, minus, balanced] = lists;
            let c = RaySet::new(plus, minus, balanced);
            if !c.is_empty() && is_semimodule_convex(&c).expect("nonempty") {
                return c;
            }
        }
    }

    /// A box with `n` random factors drawn by `factor`.
    pub fn boxset(rng: &mut impl Rng, n: usize, factor: fn(&mut ChaCha8Rng) -> RaySet) -> BoxSet {
        let mut inner = ChaCha8Rng::seed_from_u64(rng.gen());
        BoxSet::new((0..n).map(|_| factor(&mut inner)).collect()).expect("n ≥ 1")
    }

    /// A point of a ray with magnitude `m`.
    pub fn on_ray(s: Sign, m: f64) -> SElem {
        elem(s, m)
    }
}
