//! Closed subsets of `𝕊` as finite unions of ray intervals, boxes in `𝕊ⁿ`,
//! and the connectedness and convexity predicates on them.
//!
//! Every ray is parameterised by the magnitude coordinate `m = e^|a|`, so
//! that the origin `ε•` sits at `m = 0` on all three rays and `d₂` is linear
//! along each ray.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::{SElem, Sign};
use crate::error::{Error, Result};
use crate::metrics::{from_magnitude, magnitude, SVector};
use crate::segments::{Piece, SegmentSet};

/// A closed interval `[lo, hi]` of magnitudes, `hi` possibly `+∞`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(into = "crate::json::IntervalWire", try_from = "crate::json::IntervalWire")]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !(lo.is_finite() && lo >= 0.0 && !hi.is_nan() && lo <= hi) {
            return Err(Error::InvalidValue(format!("bad magnitude interval [{lo}, {hi}]")));
        }
        Ok(Interval { lo, hi })
    }

    pub fn point(m: f64) -> Result<Self> {
        Interval::new(m, m)
    }

    pub fn contains(&self, m: f64) -> bool {
        self.lo <= m && m <= self.hi
    }

    /// The point of the interval closest to `m`.
    pub fn clamp(&self, m: f64) -> f64 {
        m.clamp(self.lo, self.hi)
    }

    pub fn is_degenerate(&self) -> bool {
        self.lo == self.hi
    }
}

/// A closed subset of `𝕊` given by sorted, disjoint intervals of magnitudes
/// on each of the three rays. The origin belongs to the set exactly when some
/// interval starts at `0`.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(into = "crate::json::RaySetWire", from = "crate::json::RaySetWire")]
pub struct RaySet {
    rays: [Vec<Interval>; 3],
}

fn canonical_ray(mut list: Vec<Interval>) -> Vec<Interval> {
    list.sort_by(|p, q| p.lo.total_cmp(&q.lo));
    let mut out: Vec<Interval> = Vec::with_capacity(list.len());
    for iv in list {
        match out.last_mut() {
            Some(last) if iv.lo <= last.hi => last.hi = last.hi.max(iv.hi),
            _ => out.push(iv),
        }
    }
    out
}

impl RaySet {
    /// Builds a set from per-ray interval lists (in any order, possibly
    /// overlapping) and brings it into canonical form.
    pub fn new(plus: Vec<Interval>, minus: Vec<Interval>, balanced: Vec<Interval>) -> Self {
        let mut rays = [canonical_ray(plus), canonical_ray(minus), canonical_ray(balanced)];
        // The origin is one point shared by all rays: keep a bare `[0, 0]`
        // only if no other interval already reaches it, and then only on the
        // balanced ray.
        let reaches = |r: &Vec<Interval>| r.first().is_some_and(|iv| iv.lo == 0.0 && iv.hi > 0.0);
        let has_origin = rays.iter().any(|r| r.first().is_some_and(|iv| iv.lo == 0.0));
        let reached = rays.iter().any(reaches);
        for r in rays.iter_mut() {
            if r.first().is_some_and(|iv| iv.lo == 0.0 && iv.hi == 0.0) {
                r.remove(0);
            }
        }
        if has_origin && !reached {
            rays[Sign::Balanced.index()].insert(0, Interval { lo: 0.0, hi: 0.0 });
        }
        RaySet { rays }
    }

    pub fn empty() -> Self {
        RaySet::default()
    }

    /// The set `{ε•}`.
    pub fn origin() -> Self {
        RaySet::from_points(&[SElem::ZERO])
    }

    /// A finite set of points.
    pub fn from_points(points: &[SElem]) -> Self {
        let mut lists: [Vec<Interval>; 3] = Default::default();
        for &p in points {
            let m = magnitude(p);
            lists[p.sign().index()].push(Interval { lo: m, hi: m });
        }
        let [plus, minus, balanced] = lists;
        RaySet::new(plus, minus, balanced)
    }

    /// A single interval of magnitudes on one ray.
    pub fn interval(ray: Sign, lo: f64, hi: f64) -> Result<Self> {
        let mut lists: [Vec<Interval>; 3] = Default::default();
        lists[ray.index()].push(Interval::new(lo, hi)?);
        let [plus, minus, balanced] = lists;
        Ok(RaySet::new(plus, minus, balanced))
    }

    /// The intervals on one ray.
    pub fn ray(&self, sign: Sign) -> &[Interval] {
        &self.rays[sign.index()]
    }

    pub fn is_empty(&self) -> bool {
        self.rays.iter().all(Vec::is_empty)
    }

    pub fn contains_origin(&self) -> bool {
        self.rays.iter().any(|r| r.first().is_some_and(|iv| iv.lo == 0.0))
    }

    pub fn contains(&self, a: SElem) -> bool {
        if a.is_zero() {
            return self.contains_origin();
        }
        let m = magnitude(a);
        self.ray(a.sign()).iter().any(|iv| iv.contains(m))
    }

    /// Membership with an absolute tolerance on the magnitude.
    pub fn contains_approx(&self, a: SElem, tol: f64) -> bool {
        let m = magnitude(a);
        let near = |r: &[Interval]| r.iter().any(|iv| iv.lo - tol <= m && m <= iv.hi + tol);
        if m <= tol && self.contains_origin() {
            return true;
        }
        near(self.ray(a.sign()))
    }

    pub fn union(&self, other: &RaySet) -> RaySet {
        let join = |s: Sign| [self.ray(s), other.ray(s)].concat();
        RaySet::new(join(Sign::Plus), join(Sign::Minus), join(Sign::Balanced))
    }

    /// Rays that carry at least one interval.
    pub fn nonempty_rays(&self) -> Vec<Sign> {
        Sign::ALL.into_iter().filter(|&s| !self.ray(s).is_empty()).collect()
    }

    /// Total number of intervals.
    pub fn interval_count(&self) -> usize {
        self.rays.iter().map(Vec::len).sum()
    }

    /// The closure of a segment set in `𝕊` (dimension one).
    pub fn closure_of(s: &SegmentSet) -> Result<RaySet> {
        let mut lists: [Vec<Interval>; 3] = Default::default();
        for piece in &s.pieces {
            match piece {
                Piece::Point(p) => {
                    one_dim(p)?;
                    let m = magnitude(p.get(0));
                    lists[p.get(0).sign().index()].push(Interval { lo: m, hi: m });
                }
                Piece::Arc(arc) => {
                    one_dim(&arc.from)?;
                    let (m0, m1) = (magnitude(arc.from.get(0)), magnitude(arc.to.get(0)));
                    lists[arc.rays[0].index()].push(Interval { lo: m0.min(m1), hi: m0.max(m1) });
                }
            }
        }
        let [plus, minus, balanced] = lists;
        Ok(RaySet::new(plus, minus, balanced))
    }

    /// End points of all intervals as elements (finite ends only).
    pub fn endpoints(&self) -> Vec<SElem> {
        let mut out = Vec::new();
        for s in Sign::ALL {
            for iv in self.ray(s) {
                out.push(from_magnitude(s, iv.lo));
                if iv.hi.is_finite() && iv.hi != iv.lo {
                    out.push(from_magnitude(s, iv.hi));
                }
            }
        }
        out
    }
}

fn one_dim(p: &SVector) -> Result<()> {
    if p.len() != 1 {
        return Err(Error::DimensionMismatch { left: p.len(), right: 1 });
    }
    Ok(())
}

impl fmt::Display for RaySet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("∅");
        }
        let mut first = true;
        for s in Sign::ALL {
            for iv in self.ray(s) {
                if !first {
                    f.write_str(" ∪ ")?;
                }
                first = false;
                write!(f, "{s}[{}, {}]", iv.lo, iv.hi)?;
            }
        }
        Ok(())
    }
}

/// A product `A₁ × … × Aₙ` of closed subsets of `𝕊`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(into = "crate::json::BoxSetWire", try_from = "crate::json::BoxSetWire")]
pub struct BoxSet {
    pub factors: Vec<RaySet>,
}

impl BoxSet {
    pub fn new(factors: Vec<RaySet>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::InvalidValue("a box needs at least one factor".into()));
        }
        Ok(BoxSet { factors })
    }

    /// `Aⁿ`.
    pub fn power(a: &RaySet, n: usize) -> Result<Self> {
        BoxSet::new(vec![a.clone(); n])
    }

    pub fn dim(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.iter().any(RaySet::is_empty)
    }

    pub fn contains(&self, x: &SVector) -> bool {
        x.len() == self.dim() && self.factors.iter().zip(x.coords()).all(|(f, &a)| f.contains(a))
    }
}

fn nonempty(c: &RaySet) -> Result<()> {
    if c.is_empty() {
        Err(Error::EmptySet)
    } else {
        Ok(())
    }
}

/// Connectedness: a single interval on one ray, or a star of single
/// intervals that all start at the origin.
pub fn is_connected(c: &RaySet) -> Result<bool> {
    nonempty(c)?;
    let rays = c.nonempty_rays();
    if rays.iter().any(|&s| c.ray(s).len() != 1) {
        return Ok(false);
    }
    Ok(rays.len() == 1 || rays.iter().all(|&s| c.ray(s)[0].lo == 0.0))
}

/// Traditional convexity (`Φ(C)` convex in `ℂ`): one interval on one ray.
pub fn is_traditionally_convex(c: &RaySet) -> Result<bool> {
    nonempty(c)?;
    Ok(c.interval_count() == 1)
}

/// Geometric convexity; in `𝕊` it coincides with connectedness.
pub fn is_geometrically_convex(c: &RaySet) -> Result<bool> {
    is_connected(c)
}

/// Semimodule convexity: `[a, b]_sm ⊆ C` for all `a, b ∈ C`.
///
/// Writing `m_a ≥ m_b`, the family `{(λ⊗a) ⊕ b}` consists of `b`, the
/// points of the ray of `a` with magnitude in `(m_b, m_a]`, and — when the
/// signs differ and `b ≠ ε•` — the balanced point of magnitude `m_b`. The
/// requirement that these lie in `C` for every pair reduces to conditions
/// on the interval end points:
///
/// * every ray carries at most one interval, starting at `0` if `ε• ∈ C`;
/// * if `l_τ < h_σ` for rays `σ ≠ τ` then `l_σ ≤ l_τ`;
/// * for `σ, τ ∈ {⊕, ⊖}` distinct with `l_τ ≤ h_σ`, the balanced interval
///   contains `[l_τ, min(h_τ, h_σ)]`.
///
/// Here `[l_σ, h_σ]` is the interval on ray `σ`, ignoring a bare origin.
pub fn is_semimodule_convex(c: &RaySet) -> Result<bool> {
    nonempty(c)?;
    let origin = c.contains_origin();
    let mut parts: [Option<Interval>; 3] = [None; 3];
    for s in Sign::ALL {
        let list = c.ray(s);
        match list {
            [] => {}
            [iv] if iv.hi == 0.0 => {}
            [iv] => {
                if origin && iv.lo != 0.0 {
                    return Ok(false);
                }
                parts[s.index()] = Some(*iv);
            }
            _ => return Ok(false),
        }
    }
    for sigma in Sign::ALL {
        let Some(is) = parts[sigma.index()] else { continue };
        for tau in Sign::ALL {
            if tau == sigma {
                continue;
            }
            let Some(it) = parts[tau.index()] else { continue };
            if it.lo < is.hi && is.lo > it.lo {
                return Ok(false);
            }
            if sigma != Sign::Balanced && tau != Sign::Balanced && it.lo <= is.hi {
                let need_hi = it.hi.min(is.hi);
                match parts[Sign::Balanced.index()] {
                    Some(ib) if ib.lo <= it.lo && ib.hi >= need_hi => {}
                    _ => return Ok(false),
                }
            }
        }
    }
    Ok(true)
}

/// A box is box semimodule convex when every factor is semimodule convex.
pub fn is_box_semimodule_convex(a: &BoxSet) -> Result<bool> {
    for f in &a.factors {
        if !is_semimodule_convex(f)? {
            return Ok(false);
        }
    }
    Ok(true)
}
