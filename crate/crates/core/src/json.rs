//! JSON wire formats.
//!
//! * `SElem`: `{"sign": "+"|"-"|"o", "exp": number|"-inf"}`
//! * `SVector`: `{"coords": [SElem, ...]}`
//! * `RaySet`: `{"plus": [[lo, hi], ...], "minus": [...], "balanced": [...]}`
//!   with `"inf"` for an unbounded upper end
//! * `BoxSet`: `{"factors": [RaySet, ...]}`
//! * `BrokenLine`: `{"chart": [[u, v], ...], "t": [...], "vertices": [[...]], "length": r}`
//! * `SegmentSet`: `{"pieces": [{"kind": "point"|"arc", "closed_lo": b, "closed_hi": b, ...}]}`
//! * `ProjectionResult`: `{"points": [...], "distance": r, "singleton": b}`

use serde::de::DeserializeOwned;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::algebra::{ExtReal, SElem, Sign};
use crate::error::{Error, Result};
use crate::metrics::SVector;
use crate::segments::{Arc, Piece, PsiChart, SegmentSet};
use crate::sets::{BoxSet, Interval, RaySet};

/// Serializes any wire type to compact JSON.
pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("wire types always serialize")
}

/// Parses any wire type.
pub fn from_json<T: DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::InvalidValue(format!("bad JSON: {e}")))
}

impl Serialize for Sign {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.tag())
    }
}

impl<'de> Deserialize<'de> for Sign {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let tag = String::deserialize(d)?;
        Sign::from_tag(&tag)
            .ok_or_else(|| serde::de::Error::custom(format!("unknown sign `{tag}`, want +, - or o")))
    }
}

/// A real written as an integer when it is one, `"-inf"` / `"inf"` for
/// infinities.
#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum Num {
    Int(i64),
    Float(f64),
    Tag(String),
}

const MAX_EXACT_INT: f64 = 9_007_199_254_740_992.0;

impl Num {
    fn from_f64(x: f64) -> Num {
        if x == f64::NEG_INFINITY {
            Num::Tag("-inf".into())
        } else if x == f64::INFINITY {
            Num::Tag("inf".into())
        } else if x.fract() == 0.0 && x.abs() < MAX_EXACT_INT {
            Num::Int(x as i64)
        } else {
            Num::Float(x)
        }
    }

    fn to_f64(&self) -> std::result::Result<f64, String> {
        match self {
            Num::Int(i) => Ok(*i as f64),
            Num::Float(x) => Ok(*x),
            Num::Tag(t) if t == "-inf" => Ok(f64::NEG_INFINITY),
            Num::Tag(t) if t == "inf" => Ok(f64::INFINITY),
            Num::Tag(t) => Err(format!("expected a number, `inf` or `-inf`, got `{t}`")),
        }
    }
}

#[derive(Serialize, Deserialize)]
pub(crate) struct SElemWire {
    sign: Sign,
    exp: Num,
}

impl From<SElem> for SElemWire {
    fn from(a: SElem) -> Self {
        SElemWire { sign: a.sign(), exp: Num::from_f64(a.abs().to_f64()) }
    }
}

impl TryFrom<SElemWire> for SElem {
    type Error = String;

    fn try_from(w: SElemWire) -> std::result::Result<Self, String> {
        let x = w.exp.to_f64()?;
        let exp = ExtReal::new(x).map_err(|e| e.to_string())?;
        Ok(SElem::new(w.sign, exp))
    }
}

#[derive(Serialize, Deserialize)]
pub(crate) struct SVectorWire {
    coords: Vec<SElem>,
}

impl From<SVector> for SVectorWire {
    fn from(v: SVector) -> Self {
        SVectorWire { coords: v.into_coords() }
    }
}

impl TryFrom<SVectorWire> for SVector {
    type Error = String;

    fn try_from(w: SVectorWire) -> std::result::Result<Self, String> {
        SVector::new(w.coords).map_err(|e| e.to_string())
    }
}

#[derive(Serialize, Deserialize)]
pub(crate) struct IntervalWire(Num, Num);

impl From<Interval> for IntervalWire {
    fn from(iv: Interval) -> Self {
        IntervalWire(Num::from_f64(iv.lo), Num::from_f64(iv.hi))
    }
}

impl TryFrom<IntervalWire> for Interval {
    type Error = String;

    fn try_from(w: IntervalWire) -> std::result::Result<Self, String> {
        Interval::new(w.0.to_f64()?, w.1.to_f64()?).map_err(|e| e.to_string())
    }
}

#[derive(Serialize, Deserialize)]
pub(crate) struct RaySetWire {
    #[serde(default)]
    plus: Vec<Interval>,
    #[serde(default)]
    minus: Vec<Interval>,
    #[serde(default)]
    balanced: Vec<Interval>,
}

impl From<RaySet> for RaySetWire {
    fn from(c: RaySet) -> Self {
        RaySetWire {
            plus: c.ray(Sign::Plus).to_vec(),
            minus: c.ray(Sign::Minus).to_vec(),
            balanced: c.ray(Sign::Balanced).to_vec(),
        }
    }
}

impl From<RaySetWire> for RaySet {
    fn from(w: RaySetWire) -> Self {
        RaySet::new(w.plus, w.minus, w.balanced)
    }
}

#[derive(Serialize, Deserialize)]
pub(crate) struct BoxSetWire {
    factors: Vec<RaySet>,
}

impl From<BoxSet> for BoxSetWire {
    fn from(b: BoxSet) -> Self {
        BoxSetWire { factors: b.factors }
    }
}

impl TryFrom<BoxSetWire> for BoxSet {
    type Error = String;

    fn try_from(w: BoxSetWire) -> std::result::Result<Self, String> {
        BoxSet::new(w.factors).map_err(|e| e.to_string())
    }
}

impl From<PsiChart> for Vec<(Sign, Sign)> {
    fn from(c: PsiChart) -> Self {
        c.pairs
    }
}

impl TryFrom<Vec<(Sign, Sign)>> for PsiChart {
    type Error = String;

    fn try_from(pairs: Vec<(Sign, Sign)>) -> std::result::Result<Self, String> {
        PsiChart::new(pairs).map_err(|e| e.to_string())
    }
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum PieceKind {
    Point,
    Arc,
}

#[derive(Serialize, Deserialize)]
pub(crate) struct PieceWire {
    kind: PieceKind,
    closed_lo: bool,
    closed_hi: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    point: Option<SVector>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    rays: Option<Vec<Sign>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    from: Option<SVector>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    to: Option<SVector>,
}

impl From<Piece> for PieceWire {
    fn from(p: Piece) -> Self {
        match p {
            Piece::Point(q) => PieceWire {
                kind: PieceKind::Point,
                closed_lo: true,
                closed_hi: true,
                point: Some(q),
                rays: None,
                from: None,
                to: None,
            },
            Piece::Arc(a) => PieceWire {
                kind: PieceKind::Arc,
                closed_lo: a.closed_lo,
                closed_hi: a.closed_hi,
                point: None,
                rays: Some(a.rays),
                from: Some(a.from),
                to: Some(a.to),
            },
        }
    }
}

impl TryFrom<PieceWire> for Piece {
    type Error = String;

    fn try_from(w: PieceWire) -> std::result::Result<Self, String> {
        match w.kind {
            PieceKind::Point => w.point.map(Piece::Point).ok_or_else(|| "point piece without `point`".into()),
            PieceKind::Arc => {
                let (Some(rays), Some(from), Some(to)) = (w.rays, w.from, w.to) else {
                    return Err("arc piece needs `rays`, `from` and `to`".into());
                };
                if rays.len() != from.len() || from.len() != to.len() {
                    return Err("arc fields have different dimensions".into());
                }
                Ok(Piece::Arc(Arc { rays, from, to, closed_lo: w.closed_lo, closed_hi: w.closed_hi }))
            }
        }
    }
}

#[derive(Serialize, Deserialize)]
pub(crate) struct SegmentSetWire {
    pieces: Vec<Piece>,
}

impl From<SegmentSet> for SegmentSetWire {
    fn from(s: SegmentSet) -> Self {
        SegmentSetWire { pieces: s.pieces }
    }
}

impl From<SegmentSetWire> for SegmentSet {
    fn from(w: SegmentSetWire) -> Self {
        SegmentSet { pieces: w.pieces }
    }
}
