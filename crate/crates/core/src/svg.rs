//! Standalone SVG pictures of objects in `𝕊` and `𝕊²` through the tripod
//! embedding `Φ`: one tripod panel per coordinate, sets drawn as strokes,
//! points as dots (hollow when they are a missing end point), projections
//! as arrows.
//!
//! Output is a pure function of the scene, so identical inputs give
//! byte-identical files.

use std::fmt::Write as _;

use crate::algebra::Sign;
use crate::error::{Error, Result};
use crate::metrics::{phi, ray_direction, ComplexPoint, SVector};
use crate::projection::ProjectionResult;
use crate::segments::{BrokenLine, Piece, SegmentSet};
use crate::sets::{BoxSet, RaySet};

const PANEL_PX: f64 = 360.0;

#[derive(Debug, Clone, Copy, PartialEq)]
enum Item {
    Stroke { panel: usize, from: ComplexPoint, to: ComplexPoint, ray: Option<Sign> },
    Dot { panel: usize, at: ComplexPoint, hollow: bool },
    Marker { panel: usize, at: ComplexPoint },
    Arrow { panel: usize, from: ComplexPoint, to: ComplexPoint },
}

impl Item {
    fn panel(&self) -> usize {
        match *self {
            Item::Stroke { panel, .. }
            | Item::Dot { panel, .. }
            | Item::Marker { panel, .. }
            | Item::Arrow { panel, .. } => panel,
        }
    }

    fn extent(&self) -> f64 {
        let r = |p: ComplexPoint| p.re.hypot(p.im);
        match *self {
            Item::Stroke { from, to, .. } | Item::Arrow { from, to, .. } => r(from).max(r(to)),
            Item::Dot { at, .. } | Item::Marker { at, .. } => r(at),
        }
    }
}

/// A picture made of tripod panels, one per coordinate.
#[derive(Debug, Clone, PartialEq)]
pub struct Scene {
    panels: usize,
    items: Vec<Item>,
    /// Magnitude at which unbounded intervals are cut.
    pub clip: f64,
}

impl Scene {
    /// A scene for objects in `𝕊ⁿ`, `n ∈ {1, 2}`.
    pub fn new(n: usize) -> Result<Self> {
        if !(1..=2).contains(&n) {
            return Err(Error::InvalidValue(format!("SVG output supports n ≤ 2, got n = {n}")));
        }
        Ok(Scene { panels: n, items: Vec::new(), clip: 0.0 })
    }

    fn check(&self, n: usize) -> Result<()> {
        if n != self.panels {
            return Err(Error::DimensionMismatch { left: n, right: self.panels });
        }
        Ok(())
    }

    /// Draws a closed subset of `𝕊` in one panel.
    pub fn add_rayset(&mut self, panel: usize, c: &RaySet) -> Result<()> {
        if panel >= self.panels {
            return Err(Error::InvalidValue(format!("no panel {panel}")));
        }
        let finite_top = Sign::ALL
            .iter()
            .flat_map(|&s| c.ray(s).iter().flat_map(|iv| [iv.lo, iv.hi]))
            .filter(|m| m.is_finite())
            .fold(1.0, f64::max);
        let clip = if self.clip > 0.0 { self.clip } else { finite_top * 1.25 };
        for s in Sign::ALL {
            let d = ray_direction(s);
            let at = |m: f64| ComplexPoint::new(d.re * m, d.im * m);
            for iv in c.ray(s) {
                let hi = iv.hi.min(clip);
                if iv.lo == hi {
                    self.items.push(Item::Dot { panel, at: at(iv.lo), hollow: false });
                } else {
                    self.items.push(Item::Stroke { panel, from: at(iv.lo), to: at(hi), ray: Some(s) });
                }
            }
        }
        Ok(())
    }

    /// Draws every factor of a box in its own panel.
    pub fn add_box(&mut self, a: &BoxSet) -> Result<()> {
        self.check(a.dim())?;
        for (i, f) in a.factors.iter().enumerate() {
            self.add_rayset(i, f)?;
        }
        Ok(())
    }

    /// Draws a point of `𝕊ⁿ` (one dot per coordinate).
    pub fn add_point(&mut self, x: &SVector) -> Result<()> {
        self.check(x.len())?;
        for (panel, &a) in x.coords().iter().enumerate() {
            self.items.push(Item::Dot { panel, at: phi(a), hollow: false });
        }
        Ok(())
    }

    /// Draws a segment set; missing arc end points are drawn hollow.
    pub fn add_segment_set(&mut self, s: &SegmentSet) -> Result<()> {
        for piece in &s.pieces {
            match piece {
                Piece::Point(p) => self.add_point(p)?,
                Piece::Arc(arc) => {
                    self.check(arc.from.len())?;
                    for panel in 0..self.panels {
                        let (from, to) = (phi(arc.from.get(panel)), phi(arc.to.get(panel)));
                        if from != to {
                            let ray = Some(arc.rays[panel]);
                            self.items.push(Item::Stroke { panel, from, to, ray });
                        }
                        if !arc.closed_lo && !s.contains(&arc.from) {
                            self.items.push(Item::Dot { panel, at: from, hollow: true });
                        }
                        if !arc.closed_hi && !s.contains(&arc.to) {
                            self.items.push(Item::Dot { panel, at: to, hollow: true });
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Draws a geometric segment with its breakpoints marked.
    pub fn add_broken_line(&mut self, line: &BrokenLine) -> Result<()> {
        self.add_segment_set(&line.to_segment_set())?;
        let points = line.vertex_points();
        for v in &points[1..points.len() - 1] {
            for (panel, &a) in v.coords().iter().enumerate() {
                self.items.push(Item::Marker { panel, at: phi(a) });
            }
        }
        Ok(())
    }

    /// Draws arrows from `x` to each of its nearest points.
    pub fn add_projection(&mut self, x: &SVector, p: &ProjectionResult<SVector>) -> Result<()> {
        self.add_point(x)?;
        for y in &p.points {
            self.check(y.len())?;
            for panel in 0..self.panels {
                let (from, to) = (phi(x.get(panel)), phi(y.get(panel)));
                if from != to {
                    self.items.push(Item::Arrow { panel, from, to });
                }
                self.items.push(Item::Dot { panel, at: to, hollow: false });
            }
        }
        Ok(())
    }

    /// Renders the scene to an SVG 1.1 document.
    pub fn render(&self) -> String {
        let reach = self.items.iter().map(Item::extent).fold(1.0, f64::max) * 1.15;
        // A tripod of radius R spans [−R/2, R] × [−R√3/2, R√3/2].
        let (w, h) = (1.5 * reach, 3f64.sqrt() * reach);
        let gap = 0.2 * reach;
        let total_w = self.panels as f64 * w + (self.panels - 1) as f64 * gap;
        let (mx, my) = (0.1 * total_w, 0.1 * h);
        let (view_w, view_h) = (total_w + 2.0 * mx, h + 2.0 * my);
        let scale = PANEL_PX / view_h;
        let (px_w, px_h) = (view_w * scale, view_h * scale);
        let origin_x = |panel: usize| mx + 0.5 * reach + panel as f64 * (w + gap);
        let to_px = |panel: usize, p: ComplexPoint| {
            ((origin_x(panel) + p.re) * scale, (my + 0.5 * h - p.im) * scale)
        };

        let mut s = String::new();
        let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{px_w:.1}" height="{px_h:.1}" viewBox="0 0 {px_w:.1} {px_h:.1}">"#
        );
        s.push_str(concat!(
            "<defs><marker id=\"head\" viewBox=\"0 0 10 10\" refX=\"9\" refY=\"5\" ",
            "markerWidth=\"6\" markerHeight=\"6\" orient=\"auto\">",
            "<path d=\"M0,0 L10,5 L0,10 z\" fill=\"#c0392b\"/></marker></defs>\n",
        ));
        let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
        for panel in 0..self.panels {
            let (ox, oy) = to_px(panel, ComplexPoint::default());
            for sign in Sign::ALL {
                let d = ray_direction(sign);
                let (ex, ey) = to_px(panel, ComplexPoint::new(d.re * reach, d.im * reach));
                let _ = writeln!(
                    s,
                    r##"<line x1="{ox:.2}" y1="{oy:.2}" x2="{ex:.2}" y2="{ey:.2}" stroke="#b0b0b0" stroke-width="1"/>"##
                );
                let (lx, ly) = to_px(panel, ComplexPoint::new(d.re * reach * 1.04, d.im * reach * 1.04));
                let _ = writeln!(
                    s,
                    r##"<text x="{lx:.2}" y="{ly:.2}" font-size="12" fill="#808080" text-anchor="middle">{sign}</text>"##
                );
            }
            if self.panels > 1 {
                let (tx, ty) = to_px(panel, ComplexPoint::new(0.25 * reach, -0.95 * reach));
                let _ = writeln!(
                    s,
                    r##"<text x="{tx:.2}" y="{ty:.2}" font-size="12" fill="#404040" text-anchor="middle">coordinate {}</text>"##,
                    panel + 1
                );
            }
        }
        for item in &self.items {
            let panel = item.panel();
            match *item {
                Item::Stroke { from, to, ray, .. } => {
                    let (x1, y1) = to_px(panel, from);
                    let (x2, y2) = to_px(panel, to);
                    let color = match ray {
                        Some(Sign::Plus) => "#1f77b4",
                        Some(Sign::Minus) => "#2ca02c",
                        _ => "#9467bd",
                    };
                    let _ = writeln!(
                        s,
                        r#"<line x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}" stroke="{color}" stroke-width="3" stroke-linecap="round"/>"#
                    );
                }
                Item::Dot { at, hollow, .. } => {
                    let (cx, cy) = to_px(panel, at);
                    let fill = if hollow { "white" } else { "black" };
                    let _ = writeln!(
                        s,
                        r#"<circle cx="{cx:.2}" cy="{cy:.2}" r="4" fill="{fill}" stroke="black" stroke-width="1.5"/>"#
                    );
                }
                Item::Marker { at, .. } => {
                    let (cx, cy) = to_px(panel, at);
                    let _ = writeln!(
                        s,
                        r##"<rect x="{:.2}" y="{:.2}" width="7" height="7" fill="#ff7f0e"/>"##,
                        cx - 3.5,
                        cy - 3.5
                    );
                }
                Item::Arrow { from, to, .. } => {
                    let (x1, y1) = to_px(panel, from);
                    let (x2, y2) = to_px(panel, to);
                    let _ = writeln!(
                        s,
                        r##"<line x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}" stroke="#c0392b" stroke-width="1.5" stroke-dasharray="4 3" marker-end="url(#head)"/>"##
                    );
                }
            }
        }
        s.push_str("</svg>\n");
        s
    }
}
