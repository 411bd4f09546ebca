//! Metric projections: the sets `P_{d,K}(x)` of nearest points of `K` to `x`.

use serde::{Deserialize, Serialize};

use crate::algebra::{SElem, Sign};
use crate::error::{Error, Result};
use crate::metrics::{check_dims, from_magnitude, magnitude, rho, Base, Combine, MetricId, SVector};
use crate::segments::{Arc, Piece, SegmentSet};
use crate::sets::{is_connected, BoxSet, RaySet};

/// Candidates within this absolute distance of the minimum are all reported.
pub const TIE_TOL: f64 = 1e-9;

/// Upper bound on the number of points `project_box_max` will emit.
const MAX_CLOUD: usize = 10_000_000;

/// The nearest points of a set to a query, with the common distance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProjectionResult<P> {
    pub points: Vec<P>,
    pub distance: f64,
    pub singleton: bool,
}

impl<P> ProjectionResult<P> {
    fn new(points: Vec<P>, distance: f64) -> Self {
        let singleton = points.len() == 1;
        ProjectionResult { points, distance, singleton }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Keeps the candidates within [`TIE_TOL`] of the best score, without
/// duplicates, in order of first appearance.
fn argmin<P: PartialEq>(scored: Vec<(P, f64)>) -> Result<ProjectionResult<P>> {
    let best = scored.iter().map(|(_, d)| *d).fold(f64::INFINITY, f64::min);
    if !best.is_finite() {
        return Err(Error::EmptySet);
    }
    let mut points: Vec<P> = Vec::new();
    for (p, d) in scored {
        if d <= best + TIE_TOL && !points.contains(&p) {
            points.push(p);
        }
    }
    Ok(ProjectionResult::new(points, best))
}

/// Nearest points of a closed set `C ⊆ 𝕊` to `x` under `d₁` or `d₂`.
///
/// Only finitely many candidates can be nearest: on the ray of `x` the
/// clamp of `x` into each interval, and on the other rays the lowest point
/// of the first interval, because cross-ray distances increase with the
/// magnitude.
pub fn project_ray(x: SElem, c: &RaySet, base: Base) -> Result<ProjectionResult<SElem>> {
    if c.is_empty() {
        return Err(Error::EmptySet);
    }
    let mx = magnitude(x);
    let mut scored = Vec::new();
    for s in Sign::ALL {
        let list = c.ray(s);
        let candidates: Vec<f64> = if s == x.sign() {
            list.iter().map(|iv| iv.clamp(mx)).collect()
        } else {
            list.first().map(|iv| iv.lo).into_iter().collect()
        };
        for m in candidates {
            scored.push((from_magnitude(s, m), base.dist_mag(x.sign(), mx, s, m)));
        }
    }
    argmin(scored)
}

/// The attained distance `d(x, C)`.
pub fn distance_to_set(x: SElem, c: &RaySet, base: Base) -> Result<f64> {
    Ok(project_ray(x, c, base)?.distance)
}

/// A closed set of `𝕊` is Chebyshev (for `d₁` and for `d₂`) exactly when it
/// is connected.
pub fn is_chebyshev(c: &RaySet) -> Result<bool> {
    is_connected(c)
}

/// Nearest point in `A₁ ∪ A₂` by comparing the nearest points in each part.
/// Requires `A₁`, `A₂` and their union to be Chebyshev.
pub fn project_union(x: SElem, a1: &RaySet, a2: &RaySet, base: Base) -> Result<SElem> {
    for (name, set) in [("A1", a1.clone()), ("A2", a2.clone()), ("A1 ∪ A2", a1.union(a2))] {
        if !is_chebyshev(&set)? {
            return Err(Error::Precondition(format!("{name} is not a Chebyshev set")));
        }
    }
    let p1 = project_ray(x, a1, base)?;
    let p2 = project_ray(x, a2, base)?;
    Ok(if p1.distance <= p2.distance { p1.points[0] } else { p2.points[0] })
}

fn check_box(x: &SVector, a: &BoxSet) -> Result<()> {
    if x.len() != a.dim() {
        return Err(Error::DimensionMismatch { left: x.len(), right: a.dim() });
    }
    if a.is_empty() {
        return Err(Error::EmptySet);
    }
    Ok(())
}

/// All tuples with one entry from each list, in lexicographic order.
pub(crate) fn cartesian(lists: &[Vec<SElem>]) -> Vec<SVector> {
    let mut out: Vec<Vec<SElem>> = vec![Vec::new()];
    for list in lists {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                list.iter().map(move |&y| {
                    let mut v = prefix.clone();
                    v.push(y);
                    v
                })
            })
            .collect();
    }
    out.into_iter().map(|v| SVector::new(v).expect("nonempty")).collect()
}

/// Nearest points of a box `A = ΠAᵢ` under `ρ_{1,j}` or `ρ_{2,j}`: the
/// product of the coordinatewise nearest-point sets. The max-combine metrics
/// do not factor this way and are rejected; see [`project_box_max`].
pub fn project_box(x: &SVector, a: &BoxSet, id: MetricId) -> Result<ProjectionResult<SVector>> {
    if id.combine == Combine::Max {
        return Err(Error::MaxCombineNotFactorizable);
    }
    check_box(x, a)?;
    let per: Vec<ProjectionResult<SElem>> = a
        .factors
        .iter()
        .zip(x.coords())
        .map(|(f, &xi)| project_ray(xi, f, id.base))
        .collect::<Result<_>>()?;
    let distance = id.combine.apply(per.iter().map(|p| p.distance));
    let lists: Vec<Vec<SElem>> = per.into_iter().map(|p| p.points).collect();
    Ok(ProjectionResult::new(cartesian(&lists), distance))
}

/// Grid points of `C` with magnitude at most `bound`: every interval is
/// sampled at spacing `h` from its lower end, plus its (clipped) upper end.
pub(crate) fn ray_grid(c: &RaySet, h: f64, bound: f64) -> Vec<SElem> {
    let mut out = Vec::new();
    for s in Sign::ALL {
        for iv in c.ray(s) {
            if iv.lo > bound {
                continue;
            }
            let top = iv.hi.min(bound);
            let steps = ((top - iv.lo) / h).floor() as usize;
            for k in 0..=steps {
                out.push(from_magnitude(s, iv.lo + k as f64 * h));
            }
            if iv.lo + steps as f64 * h < top {
                out.push(from_magnitude(s, top));
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Nearest points of a box under a max-combine metric `ρ_{0,j}`, sampled on
/// a grid of the given resolution.
///
/// The optimal value is `F = maxᵢ d(x(i), Aᵢ)`, and the nearest-point set is
/// the product of the sublevel sets `{y ∈ Aᵢ : d(x(i), y) ≤ F}`, which is in
/// general infinite. Each sublevel set is sampled on the grid (together with
/// its exact nearest points) and the samples are multiplied out.
pub fn project_box_max(
    x: &SVector,
    a: &BoxSet,
    base: Base,
    resolution: f64,
) -> Result<ProjectionResult<SVector>> {
    if !(resolution > 0.0 && resolution.is_finite()) {
        return Err(Error::InvalidValue(format!("resolution must be positive, got {resolution}")));
    }
    check_box(x, a)?;
    let per: Vec<ProjectionResult<SElem>> = a
        .factors
        .iter()
        .zip(x.coords())
        .map(|(f, &xi)| project_ray(xi, f, base))
        .collect::<Result<_>>()?;
    let best = per.iter().map(|p| p.distance).fold(0.0, f64::max);
    let mut lists = Vec::with_capacity(a.dim());
    let mut size: usize = 1;
    for ((f, &xi), p) in a.factors.iter().zip(x.coords()).zip(&per) {
        // Any y with d(x(i), y) ≤ F has magnitude at most |x(i)| + F.
        let bound = magnitude(xi) + best + 2.0 * resolution;
        let mut list: Vec<SElem> = ray_grid(f, resolution, bound)
            .into_iter()
            .filter(|&y| base.dist(xi, y) <= best + TIE_TOL)
            .collect();
        for &q in &p.points {
            if !list.contains(&q) {
                list.push(q);
            }
        }
        list.sort();
        size = size.saturating_mul(list.len());
        lists.push(list);
    }
    if size > MAX_CLOUD {
        return Err(Error::Precondition(format!(
            "the argmin cloud would have {size} points; use a coarser resolution"
        )));
    }
    let id = MetricId::new(Combine::Max, base);
    let points = cartesian(&lists);
    let distance = points
        .iter()
        .map(|p| rho(id, x, p).expect("same dimension"))
        .fold(f64::INFINITY, f64::min);
    Ok(ProjectionResult::new(points, distance))
}

/// Minimiser of a convex function on `[0, 1]` by golden-section search.
fn golden_min(f: impl Fn(f64) -> f64) -> f64 {
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    let mut p = hi - g * (hi - lo);
    let mut q = lo + g * (hi - lo);
    let (mut fp, mut fq) = (f(p), f(q));
    for _ in 0..200 {
        if fp <= fq {
            hi = q;
            q = p;
            fq = fp;
            p = hi - g * (hi - lo);
            fp = f(p);
        } else {
            lo = p;
            p = q;
            fp = fq;
            q = lo + g * (hi - lo);
            fq = f(q);
        }
        if hi - lo < 1e-15 {
            break;
        }
    }
    (lo + hi) / 2.0
}

/// Nearest points of a (possibly non-closed) segment set.
///
/// The distance along an arc is convex in the arc parameter, so each arc
/// contributes its minimiser (one representative if the minimum is flat).
/// A minimum at an open arc end is only an infimum. If the overall
/// infimum is not attained by any point of the set the result is
/// [`Error::NotAttained`].
pub fn project_segment_set(
    x: &SVector,
    s: &SegmentSet,
    id: MetricId,
) -> Result<ProjectionResult<SVector>> {
    let mut attained: Vec<(SVector, f64)> = Vec::new();
    let mut infimum = f64::INFINITY;
    for piece in &s.pieces {
        match piece {
            Piece::Point(p) => {
                let d = rho(id, x, p)?;
                infimum = infimum.min(d);
                attained.push((p.clone(), d));
            }
            Piece::Arc(arc) => {
                check_dims(x, &arc.from)?;
                let (p, d, reached) = arc_min(x, arc, id);
                infimum = infimum.min(d);
                if reached {
                    attained.push((p, d));
                }
            }
        }
    }
    if s.pieces.is_empty() {
        return Err(Error::EmptySet);
    }
    let best = attained.iter().map(|(_, d)| *d).fold(f64::INFINITY, f64::min);
    if infimum < best - TIE_TOL {
        return Err(Error::NotAttained { infimum });
    }
    argmin(attained)
}

/// Closest point of the closure of an arc, its distance, and whether the
/// arc itself contains it.
fn arc_min(x: &SVector, arc: &Arc, id: MetricId) -> (SVector, f64, bool) {
    let f = |t: f64| rho(id, x, &arc.point_at(t)).expect("same dimension");
    let t = golden_min(f);
    let (d0, d1, dt) = (f(0.0), f(1.0), f(t));
    if d0 <= dt + TIE_TOL && d0 <= d1 {
        (arc.from.clone(), d0, arc.closed_lo)
    } else if d1 <= dt + TIE_TOL {
        (arc.to.clone(), d1, arc.closed_hi)
    } else {
        (arc.point_at(t), dt, true)
    }
}
