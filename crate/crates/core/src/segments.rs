//! Segments in `𝕊ⁿ`: geometric segments (`D₂`-geodesics) via the Ψ-chart,
//! traditional segments, and semimodule segments with their piece structure.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::{ExtReal, SElem, Sign};
use crate::error::{Error, Result};
use crate::metrics::{check_dims, from_magnitude, magnitude, rho, MetricId, SVector};

/// Tolerance used by [`d_segment_contains`].
pub const SEGMENT_TOL: f64 = 1e-9;

/// Event parameters closer than this are treated as one event.
const EVENT_TOL: f64 = 1e-12;

/// Per-coordinate pair of rays `(u(j), v(j))`; the chart `Ψ` sends the `u`-ray
/// to the positive half-line and the `v`-ray to the negative one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "Vec<(Sign, Sign)>", try_from = "Vec<(Sign, Sign)>")]
pub struct PsiChart {
    pub pairs: Vec<(Sign, Sign)>,
}

/// The first tag in the order `⊕, ⊖, •` that differs from `s`.
fn other_ray(s: Sign) -> Sign {
    if s == Sign::Plus {
        Sign::Minus
    } else {
        Sign::Plus
    }
}

impl PsiChart {
    pub fn new(pairs: Vec<(Sign, Sign)>) -> Result<Self> {
        if let Some(j) = pairs.iter().position(|(u, v)| u == v) {
            return Err(Error::InvalidValue(format!("chart coordinate {j} uses the same ray twice")));
        }
        Ok(PsiChart { pairs })
    }

    /// The chart used for the geometric segment from `a` to `b`: `u(j)` is the
    /// ray of `a(j)` and `v(j)` that of `b(j)`. Where this is ambiguous (a zero
    /// coordinate, or both on the same ray) the free tag is the first one in
    /// the order `⊕, ⊖, •` that differs from the fixed one.
    pub fn for_endpoints(a: &SVector, b: &SVector) -> Result<Self> {
        check_dims(a, b)?;
        let pairs = a
            .coords()
            .iter()
            .zip(b.coords())
            .map(|(x, y)| match (x.is_zero(), y.is_zero()) {
                (true, true) => (Sign::Plus, Sign::Minus),
                (true, false) => (other_ray(y.sign()), y.sign()),
                (false, true) => (x.sign(), other_ray(x.sign())),
                (false, false) if x.sign() == y.sign() => (x.sign(), other_ray(x.sign())),
                (false, false) => (x.sign(), y.sign()),
            })
            .collect();
        Ok(PsiChart { pairs })
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

/// `Ψ(x)`: `+e^|x(j)|` on the `u(j)`-ray, `−e^|x(j)|` on the `v(j)`-ray and
/// `0` at `ε•`.
pub fn psi(chart: &PsiChart, x: &SVector) -> Result<Vec<f64>> {
    if chart.len() != x.len() {
        return Err(Error::DimensionMismatch { left: chart.len(), right: x.len() });
    }
    chart
        .pairs
        .iter()
        .zip(x.coords())
        .enumerate()
        .map(|(j, (&(u, v), &a))| {
            if a.is_zero() {
                Ok(0.0)
            } else if a.sign() == u {
                Ok(magnitude(a))
            } else if a.sign() == v {
                Ok(-magnitude(a))
            } else {
                Err(Error::OffChart { coord: j })
            }
        })
        .collect()
}

/// Pulls a point of `ℝⁿ` back through the chart.
pub fn psi_inverse(chart: &PsiChart, p: &[f64]) -> SVector {
    let coords = chart
        .pairs
        .iter()
        .zip(p)
        .map(|(&(u, v), &s)| {
            if s > 0.0 {
                from_magnitude(u, s)
            } else if s < 0.0 {
                from_magnitude(v, -s)
            } else {
                SElem::ZERO
            }
        })
        .collect();
    SVector::new(coords).expect("charts have at least one coordinate")
}

/// A geometric segment: a broken line in Ψ-coordinates together with the
/// chart that pulls it back to `𝕊ⁿ`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BrokenLine {
    pub chart: PsiChart,
    /// Interior breakpoint parameters, strictly increasing in `(0, 1)`.
    pub t: Vec<f64>,
    /// `Ψ(a), x₀, …, x_{k−1}, Ψ(b)`.
    pub vertices: Vec<Vec<f64>>,
    pub length: f64,
}

fn euclid(p: &[f64], q: &[f64]) -> f64 {
    p.iter().zip(q).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

/// The geometric segment `[a, b]_g`.
///
/// In the chart of [`PsiChart::for_endpoints`] the segment is the straight
/// line from `Ψ(a)` to `Ψ(b)`; it is broken wherever a coordinate changes
/// sign, i.e. at `t_j = A_j / (A_j − B_j)` for every coordinate whose
/// Ψ-values have strictly opposite signs. Equal parameters give one vertex,
/// and crossing coordinates are set to exactly `0` there.
pub fn geometric_segment(a: &SVector, b: &SVector) -> Result<BrokenLine> {
    let chart = PsiChart::for_endpoints(a, b)?;
    let pa = psi(&chart, a)?;
    let pb = psi(&chart, b)?;

    let mut crossings: Vec<(f64, usize)> = pa
        .iter()
        .zip(&pb)
        .enumerate()
        .filter(|(_, (&x, &y))| (x > 0.0 && y < 0.0) || (x < 0.0 && y > 0.0))
        .map(|(j, (&x, &y))| (x / (x - y), j))
        .collect();
    crossings.sort_by(|p, q| p.0.total_cmp(&q.0).then(p.1.cmp(&q.1)));

    // Group crossings that share a parameter.
    let mut groups: Vec<(f64, Vec<usize>)> = Vec::new();
    for (t, j) in crossings {
        match groups.last_mut() {
            Some((t0, js)) if (t - *t0).abs() <= EVENT_TOL => js.push(j),
            _ => groups.push((t, vec![j])),
        }
    }

    let mut vertices = vec![pa.clone()];
    let mut ts = Vec::with_capacity(groups.len());
    for (t, js) in &groups {
        let mut x: Vec<f64> = pa.iter().zip(&pb).map(|(&p, &q)| (1.0 - t) * p + t * q).collect();
        for &j in js {
            x[j] = 0.0;
        }
        ts.push(*t);
        vertices.push(x);
    }
    vertices.push(pb);

    let length = vertices.windows(2).map(|w| euclid(&w[0], &w[1])).sum();
    Ok(BrokenLine { chart, t: ts, vertices, length })
}

impl BrokenLine {
    /// The vertices pulled back to `𝕊ⁿ`.
    pub fn vertex_points(&self) -> Vec<SVector> {
        self.vertices.iter().map(|v| psi_inverse(&self.chart, v)).collect()
    }

    /// The point at parameter `t ∈ [0, 1]` along the segment.
    pub fn point_at(&self, t: f64) -> SVector {
        let (first, last) = (&self.vertices[0], &self.vertices[self.vertices.len() - 1]);
        let mut p: Vec<f64> = first.iter().zip(last).map(|(&x, &y)| (1.0 - t) * x + t * y).collect();
        // Keep exact zeros at the breakpoints.
        for (k, &tk) in self.t.iter().enumerate() {
            if (tk - t).abs() <= EVENT_TOL {
                for (pj, vj) in p.iter_mut().zip(&self.vertices[k + 1]) {
                    if *vj == 0.0 {
                        *pj = 0.0;
                    }
                }
            }
        }
        psi_inverse(&self.chart, &p)
    }

    /// The broken line as a [`SegmentSet`]: one arc per straight piece (the
    /// first one closed at both ends, the others closed at their far end).
    pub fn to_segment_set(&self) -> SegmentSet {
        let points = self.vertex_points();
        if points.windows(2).all(|w| w[0] == w[1]) {
            return SegmentSet { pieces: vec![Piece::Point(points[0].clone())] };
        }
        let mut pieces = Vec::new();
        for (k, w) in self.vertices.windows(2).enumerate() {
            let rays = w[0]
                .iter()
                .zip(&w[1])
                .zip(&self.chart.pairs)
                .map(|((&p, &q), &(u, v))| if p < 0.0 || q < 0.0 { v } else { u })
                .collect();
            let arc = Arc {
                rays,
                from: points[k].clone(),
                to: points[k + 1].clone(),
                closed_lo: k == 0,
                closed_hi: true,
            };
            pieces.push(Piece::Arc(arc));
        }
        SegmentSet { pieces }
    }
}

/// A piece of a [`SegmentSet`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(into = "crate::json::PieceWire", try_from = "crate::json::PieceWire")]
pub enum Piece {
    Point(SVector),
    Arc(Arc),
}

/// A curve in `𝕊ⁿ` that is affine in the magnitude coordinate of every
/// coordinate ray: coordinate `j` runs along `rays[j]` from `|from(j)|` to
/// `|to(j)|` (in `m = e^|·|`). `from` and `to` are the limit points at the
/// two ends, which belong to the arc only if the matching flag is set.
#[derive(Debug, Clone, PartialEq)]
pub struct Arc {
    pub rays: Vec<Sign>,
    pub from: SVector,
    pub to: SVector,
    pub closed_lo: bool,
    pub closed_hi: bool,
}

impl Arc {
    fn magnitudes(&self, j: usize) -> (f64, f64) {
        (magnitude(self.from.get(j)), magnitude(self.to.get(j)))
    }

    /// The point at parameter `s ∈ [0, 1]`.
    pub fn point_at(&self, s: f64) -> SVector {
        if s <= 0.0 {
            return self.from.clone();
        }
        if s >= 1.0 {
            return self.to.clone();
        }
        let coords = (0..self.rays.len())
            .map(|j| {
                let (m0, m1) = self.magnitudes(j);
                if m0 == m1 {
                    self.from.get(j)
                } else {
                    from_magnitude(self.rays[j], (1.0 - s) * m0 + s * m1)
                }
            })
            .collect();
        SVector::new(coords).expect("arcs have at least one coordinate")
    }

    /// Largest change of magnitude over the arc.
    pub fn magnitude_span(&self) -> f64 {
        (0..self.rays.len())
            .map(|j| {
                let (m0, m1) = self.magnitudes(j);
                (m1 - m0).abs()
            })
            .fold(0.0, f64::max)
    }

    /// Membership, respecting open ends. Interior points are matched with a
    /// relative tolerance of `1e-9`.
    pub fn contains(&self, p: &SVector) -> bool {
        if p.len() != self.rays.len() {
            return false;
        }
        if *p == self.from {
            return self.closed_lo;
        }
        if *p == self.to {
            return self.closed_hi;
        }
        let mut s_found: Option<f64> = None;
        for j in 0..self.rays.len() {
            let (m0, m1) = self.magnitudes(j);
            let x = p.get(j);
            if m0 == m1 {
                if x != self.from.get(j) {
                    return false;
                }
                continue;
            }
            if !x.is_zero() && x.sign() != self.rays[j] {
                return false;
            }
            let s = (magnitude(x) - m0) / (m1 - m0);
            match s_found {
                None => s_found = Some(s),
                Some(s0) if (s - s0).abs() <= 1e-9 * (1.0 + s0.abs()) => {}
                Some(_) => return false,
            }
        }
        match s_found {
            Some(s) => s > 0.0 && s < 1.0,
            None => false,
        }
    }
}

impl Piece {
    pub fn contains(&self, p: &SVector) -> bool {
        match self {
            Piece::Point(q) => q == p,
            Piece::Arc(arc) => arc.contains(p),
        }
    }

    /// The end points of the closure of the piece.
    pub fn closure_ends(&self) -> Vec<&SVector> {
        match self {
            Piece::Point(q) => vec![q],
            Piece::Arc(arc) => vec![&arc.from, &arc.to],
        }
    }
}

/// A finite union of pairwise disjoint points and arcs in `𝕊ⁿ`.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(into = "crate::json::SegmentSetWire", from = "crate::json::SegmentSetWire")]
pub struct SegmentSet {
    pub pieces: Vec<Piece>,
}

impl SegmentSet {
    pub fn contains(&self, p: &SVector) -> bool {
        self.pieces.iter().any(|piece| piece.contains(p))
    }

    /// Isolated points of the set (point pieces that no arc reaches).
    pub fn isolated_points(&self) -> Vec<&SVector> {
        self.pieces
            .iter()
            .enumerate()
            .filter_map(|(i, piece)| match piece {
                Piece::Point(q) => {
                    let touched = self.pieces.iter().enumerate().any(|(k, other)| {
                        k != i && other.closure_ends().into_iter().any(|e| e == q)
                    });
                    (!touched).then_some(q)
                }
                Piece::Arc(_) => None,
            })
            .collect()
    }

    /// Whether the set is closed: every open arc end is a point of the set.
    pub fn is_closed(&self) -> bool {
        self.pieces.iter().all(|piece| match piece {
            Piece::Point(_) => true,
            Piece::Arc(arc) => {
                (arc.closed_lo || self.contains(&arc.from))
                    && (arc.closed_hi || self.contains(&arc.to))
            }
        })
    }

    /// Sample points covering the closure of the set, spaced at most `step`
    /// apart in every magnitude coordinate along each arc.
    pub fn sample(&self, step: f64) -> Vec<SVector> {
        let mut out = Vec::new();
        for piece in &self.pieces {
            match piece {
                Piece::Point(q) => out.push(q.clone()),
                Piece::Arc(arc) => {
                    let n = (arc.magnitude_span() / step).ceil().max(1.0) as usize;
                    out.extend((0..=n).map(|i| arc.point_at(i as f64 / n as f64)));
                }
            }
        }
        out
    }
}

/// Number of connected components of a segment set. Two pieces are joined
/// when an end point of the closure of one of them belongs to the other.
pub fn component_count(s: &SegmentSet) -> usize {
    let n = s.pieces.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for i in 0..n {
        for k in 0..n {
            if i == k {
                continue;
            }
            if s.pieces[i].closure_ends().into_iter().any(|e| s.pieces[k].contains(e)) {
                let (ri, rk) = (find(&mut parent, i), find(&mut parent, k));
                parent[ri] = rk;
            }
        }
    }
    (0..n).filter(|&i| find(&mut parent, i) == i).count()
}

/// `z ∈ [x, y]_d`, i.e. `d(x,z) + d(z,y) = d(x,y)` up to [`SEGMENT_TOL`].
pub fn d_segment_contains(x: &SVector, y: &SVector, z: &SVector, id: MetricId) -> Result<bool> {
    let lhs = rho(id, x, z)? + rho(id, z, y)?;
    Ok((lhs - rho(id, x, y)?).abs() <= SEGMENT_TOL)
}

/// The traditional segment: the preimage of the chord between `[ⁿΦ](a)` and
/// `[ⁿΦ](b)`. It exists only when the chord stays on the tripods, i.e. when
/// in every coordinate both ends share a ray or one of them is `ε•`.
/// Returns `None` otherwise.
pub fn traditional_segment(a: &SVector, b: &SVector) -> Result<Option<SegmentSet>> {
    check_dims(a, b)?;
    let mut rays = Vec::with_capacity(a.len());
    for (x, y) in a.coords().iter().zip(b.coords()) {
        let ray = match (x.is_zero(), y.is_zero()) {
            (true, true) => Sign::Balanced,
            (true, false) => y.sign(),
            (false, true) => x.sign(),
            (false, false) if x.sign() == y.sign() => x.sign(),
            (false, false) => return Ok(None),
        };
        rays.push(ray);
    }
    if a == b {
        return Ok(Some(SegmentSet { pieces: vec![Piece::Point(a.clone())] }));
    }
    let arc = Arc { rays, from: a.clone(), to: b.clone(), closed_lo: true, closed_hi: true };
    Ok(Some(SegmentSet { pieces: vec![Piece::Arc(arc)] }))
}

/// How coordinate `j` of `(λ ⊗ a) ⊕ b` depends on `λ`.
#[derive(Clone, Copy)]
enum CoordKind {
    /// `a(j) = ε•`: always `b(j)`.
    Fixed,
    /// `b(j) = ε•`: always `λ ⊗ a(j)`.
    Moving,
    /// `b(j)` below `λ_j = |b(j)| − |a(j)|`, `λ ⊗ a(j)` above it.
    Switch(f64),
}

/// The one-parameter family `{(λ ⊗ a) ⊕ b : λ ∈ [ε, 0]}`, split at the
/// parameters where some coordinate switches from `b(j)` to `λ ⊗ a(j)`.
fn family_pieces(a: &SVector, b: &SVector, points: &mut Vec<SVector>, arcs: &mut Vec<Arc>) {
    let n = a.len();
    let kinds: Vec<CoordKind> = a
        .coords()
        .iter()
        .zip(b.coords())
        .map(|(x, y)| match (x.is_zero(), y.is_zero()) {
            (true, _) => CoordKind::Fixed,
            (false, true) => CoordKind::Moving,
            (false, false) => {
                let lj = y.abs().to_f64() - x.abs().to_f64();
                if lj <= 0.0 {
                    CoordKind::Switch(lj)
                } else {
                    CoordKind::Fixed
                }
            }
        })
        .collect();

    let mut events: Vec<f64> = kinds
        .iter()
        .filter_map(|k| match *k {
            CoordKind::Switch(l) if l < 0.0 => Some(l),
            _ => None,
        })
        .collect();
    events.sort_by(f64::total_cmp);
    events.dedup_by(|p, q| (*p - *q).abs() <= EVENT_TOL);

    let at = |l: f64, e: f64| (l - e).abs() <= EVENT_TOL;
    let build = |coords: Vec<SElem>| SVector::new(coords).expect("nonempty");

    // Value at an event or at λ = 0. A coordinate whose switch sits exactly
    // at the event takes magnitude |b(j)| there, so ties stay exact.
    let value_at = |lambda: f64| -> SVector {
        build(
            (0..n)
                .map(|j| {
                    let (x, y) = (a.get(j), b.get(j));
                    if lambda == 0.0 {
                        return x.oplus(y);
                    }
                    match kinds[j] {
                        CoordKind::Fixed => y,
                        CoordKind::Moving => x.scale(ExtReal::real(lambda)),
                        CoordKind::Switch(l) if at(l, lambda) => {
                            SElem::new(x.sign(), y.abs()).oplus(y)
                        }
                        CoordKind::Switch(l) if lambda > l => x.scale(ExtReal::real(lambda)),
                        CoordKind::Switch(_) => y,
                    }
                })
                .collect(),
        )
    };

    points.push(b.clone());
    for &e in &events {
        points.push(value_at(e));
    }
    points.push(value_at(0.0));

    // Open arcs between consecutive parameters.
    let mut bounds: Vec<Option<f64>> = vec![None];
    bounds.extend(events.iter().map(|&e| Some(e)));
    bounds.push(Some(0.0));
    for w in bounds.windows(2) {
        let (lo, hi) = (w[0], w[1].expect("upper bounds are finite"));
        let moving = |j: usize| match kinds[j] {
            CoordKind::Moving => true,
            CoordKind::Switch(l) => lo.is_some_and(|lo| l <= lo + EVENT_TOL),
            CoordKind::Fixed => false,
        };
        let mut rays = Vec::with_capacity(n);
        let mut from = Vec::with_capacity(n);
        let mut to = Vec::with_capacity(n);
        let mut any_moving = false;
        for (j, &kind) in kinds.iter().enumerate() {
            let (x, y) = (a.get(j), b.get(j));
            if moving(j) {
                any_moving = true;
                rays.push(x.sign());
                from.push(match (lo, kind) {
                    (None, _) => SElem::ZERO,
                    (Some(lo), CoordKind::Switch(l)) if at(l, lo) => SElem::new(x.sign(), y.abs()),
                    (Some(lo), _) => x.scale(ExtReal::real(lo)),
                });
                to.push(if hi == 0.0 { x } else { x.scale(ExtReal::real(hi)) });
            } else {
                rays.push(y.sign());
                from.push(y);
                to.push(y);
            }
        }
        if any_moving {
            arcs.push(Arc {
                rays,
                from: build(from),
                to: build(to),
                closed_lo: false,
                closed_hi: false,
            });
        } else {
            points.push(build(from));
        }
    }
}

/// The semimodule segment `[a, b]_sm = {(λ⊗a) ⊕ (γ⊗b) : λ ⊕ γ = 0}`.
///
/// Since `λ ⊕ γ = 0` forces one of the scalars to be `0`, the segment is the
/// union of the families `{(λ⊗a) ⊕ b}` and `{a ⊕ (γ⊗b)}`, `λ, γ ∈ [ε, 0]`.
/// Each family is computed symbolically; an arc end is closed when its
/// limit point is attained by the family.
pub fn semimodule_segment(a: &SVector, b: &SVector) -> Result<SegmentSet> {
    check_dims(a, b)?;
    let mut points = Vec::new();
    let mut arcs = Vec::new();
    family_pieces(a, b, &mut points, &mut arcs);
    family_pieces(b, a, &mut points, &mut arcs);

    let mut unique: Vec<SVector> = Vec::new();
    for p in points {
        if !unique.contains(&p) {
            unique.push(p);
        }
    }
    let mut claimed = vec![false; unique.len()];
    let mut kept_arcs: Vec<Arc> = Vec::new();
    for mut arc in arcs {
        if kept_arcs.contains(&arc) {
            continue;
        }
        for (i, p) in unique.iter().enumerate() {
            if claimed[i] {
                continue;
            }
            if !arc.closed_lo && *p == arc.from {
                arc.closed_lo = true;
                claimed[i] = true;
            } else if !arc.closed_hi && *p == arc.to {
                arc.closed_hi = true;
                claimed[i] = true;
            }
        }
        kept_arcs.push(arc);
    }
    let mut pieces: Vec<Piece> = unique
        .into_iter()
        .zip(claimed)
        .filter(|(_, c)| !c)
        .map(|(p, _)| Piece::Point(p))
        .collect();
    pieces.extend(kept_arcs.into_iter().map(Piece::Arc));
    Ok(SegmentSet { pieces })
}

impl fmt::Display for SegmentSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, piece) in self.pieces.iter().enumerate() {
            if i > 0 {
                f.write_str(" ∪ ")?;
            }
            match piece {
                Piece::Point(p) => write!(f, "{{{p:?}}}")?,
                Piece::Arc(arc) => write!(
                    f,
                    "{}{:?} — {:?}{}",
                    if arc.closed_lo { "[" } else { "(" },
                    arc.from,
                    arc.to,
                    if arc.closed_hi { "]" } else { ")" }
                )?,
            }
        }
        Ok(())
    }
}
