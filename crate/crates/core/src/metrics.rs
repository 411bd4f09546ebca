//! The tripod picture of `𝕊` and the metrics built on it.
//!
//! The canonical embedding `Φ` sends the three rays of `𝕊` onto three
//! half-lines of `ℂ` at 120° from each other: `Φ(⊕r) = θeʳ`, `Φ(⊖r) = θ²eʳ`,
//! `Φ(r•) = eʳ` with `θ = (−1 + √3 i)/2`, and `Φ(ε•) = 0`. Distances are
//! computed in the magnitude coordinate `m = e^|a|`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::algebra::{ExtReal, SElem, Sign};
use crate::error::{Error, Result};

const SQRT3_2: f64 = 0.866_025_403_784_438_6;

/// A point of the complex plane.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ComplexPoint {
    pub re: f64,
    pub im: f64,
}

impl ComplexPoint {
    pub fn new(re: f64, im: f64) -> Self {
        ComplexPoint { re, im }
    }

    pub fn dist(self, other: ComplexPoint) -> f64 {
        (self.re - other.re).hypot(self.im - other.im)
    }
}

/// Unit direction of a ray in `ℂ`.
pub fn ray_direction(sign: Sign) -> ComplexPoint {
    match sign {
        Sign::Plus => ComplexPoint::new(-0.5, SQRT3_2),
        Sign::Minus => ComplexPoint::new(-0.5, -SQRT3_2),
        Sign::Balanced => ComplexPoint::new(1.0, 0.0),
    }
}

/// `e^x` with `e^ε = 0`. Overflow saturates at `f64::MAX` and is reported on
/// the `log` warning channel.
pub fn exp_ext(x: ExtReal) -> f64 {
    match x.value() {
        None => 0.0,
        Some(v) => {
            let m = v.exp();
            if m.is_finite() {
                m
            } else {
                log::warn!("e^{v} overflows; saturating magnitude to f64::MAX");
                f64::MAX
            }
        }
    }
}

/// Inverse of [`exp_ext`] on `[0, ∞)`: `ln m`, with `0 ↦ ε`.
pub fn ln_ext(m: f64) -> ExtReal {
    if m <= 0.0 {
        ExtReal::EPS
    } else {
        ExtReal::real(m.ln())
    }
}

/// The magnitude coordinate `m = e^|a|` of an element.
pub fn magnitude(a: SElem) -> f64 {
    exp_ext(a.abs())
}

/// The element on `ray` with magnitude coordinate `m` (`m = 0` is `ε•`).
pub fn from_magnitude(ray: Sign, m: f64) -> SElem {
    SElem::new(ray, ln_ext(m))
}

/// The canonical embedding `Φ: 𝕊 → ℂ`.
pub fn phi(a: SElem) -> ComplexPoint {
    let m = magnitude(a);
    let d = ray_direction(a.sign());
    ComplexPoint::new(d.re * m, d.im * m)
}

/// Same-ray and cross-ray distance in the magnitude coordinate.
fn d1_mag(same_ray: bool, m: f64, n: f64) -> f64 {
    if same_ray {
        (m - n).abs()
    } else {
        // law of cosines at 120°
        (m * m + n * n + m * n).sqrt()
    }
}

fn d2_mag(same_ray: bool, m: f64, n: f64) -> f64 {
    if same_ray {
        (m - n).abs()
    } else {
        m + n
    }
}

/// The Euclidean distance `d₁(a, b) = |Φ(a) − Φ(b)|`.
pub fn d1(a: SElem, b: SElem) -> f64 {
    d1_mag(a.sign() == b.sign(), magnitude(a), magnitude(b))
}

/// The inner (path-length) distance `d₂`: `|e^|a| − e^|b||` on one ray,
/// `e^|a| + e^|b|` across rays.
pub fn d2(a: SElem, b: SElem) -> f64 {
    d2_mag(a.sign() == b.sign(), magnitude(a), magnitude(b))
}

/// Base distance on `𝕊` underlying a product metric.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Base {
    D1,
    D2,
}

impl Base {
    pub fn dist(self, a: SElem, b: SElem) -> f64 {
        match self {
            Base::D1 => d1(a, b),
            Base::D2 => d2(a, b),
        }
    }

    /// The same distance on points given as `(ray, magnitude)`.
    pub fn dist_mag(self, ray_a: Sign, m: f64, ray_b: Sign, n: f64) -> f64 {
        // The origin lies on every ray.
        let same = ray_a == ray_b || m == 0.0 || n == 0.0;
        match self {
            Base::D1 => d1_mag(same, m, n),
            Base::D2 => d2_mag(same, m, n),
        }
    }
}

impl FromStr for Base {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "d1" => Ok(Base::D1),
            "d2" => Ok(Base::D2),
            other => Err(Error::InvalidValue(format!("unknown base metric `{other}`"))),
        }
    }
}

impl fmt::Display for Base {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Base::D1 => "d1",
            Base::D2 => "d2",
        })
    }
}

/// How coordinate distances are combined on `𝕊ⁿ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Combine {
    Max,
    Euclid,
    Sum,
}

impl Combine {
    pub fn index(self) -> usize {
        match self {
            Combine::Max => 0,
            Combine::Euclid => 1,
            Combine::Sum => 2,
        }
    }

    pub fn apply<I: IntoIterator<Item = f64>>(self, dists: I) -> f64 {
        let it = dists.into_iter();
        match self {
            Combine::Max => it.fold(0.0, f64::max),
            Combine::Euclid => it.map(|d| d * d).sum::<f64>().sqrt(),
            Combine::Sum => it.sum(),
        }
    }
}

/// One of the six product metrics `ρ_{k,j}` on `𝕊ⁿ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MetricId {
    pub combine: Combine,
    pub base: Base,
}

impl MetricId {
    /// `D₁ = ρ₁,₁`, the Euclidean metric.
    pub const D1: MetricId = MetricId { combine: Combine::Euclid, base: Base::D1 };
    /// `D₂ = ρ₁,₂`, the inner metric.
    pub const D2: MetricId = MetricId { combine: Combine::Euclid, base: Base::D2 };

    pub fn new(combine: Combine, base: Base) -> Self {
        MetricId { combine, base }
    }

    pub fn all() -> [MetricId; 6] {
        let mut out = [MetricId::D1; 6];
        let mut i = 0;
        for combine in [Combine::Max, Combine::Euclid, Combine::Sum] {
            for base in [Base::D1, Base::D2] {
                out[i] = MetricId { combine, base };
                i += 1;
            }
        }
        out
    }
}

impl FromStr for MetricId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidValue(format!("unknown metric `{s}`"));
        match s {
            "D1" => return Ok(MetricId::D1),
            "D2" => return Ok(MetricId::D2),
            _ => {}
        }
        let digits = s.strip_prefix("rho").ok_or_else(bad)?.as_bytes();
        if digits.len() != 2 {
            return Err(bad());
        }
        let combine = match digits[0] {
            b'0' => Combine::Max,
            b'1' => Combine::Euclid,
            b'2' => Combine::Sum,
            _ => return Err(bad()),
        };
        let base = match digits[1] {
            b'1' => Base::D1,
            b'2' => Base::D2,
            _ => return Err(bad()),
        };
        Ok(MetricId { combine, base })
    }
}

impl fmt::Display for MetricId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let j = match self.base {
            Base::D1 => 1,
            Base::D2 => 2,
        };
        write!(f, "rho{}{}", self.combine.index(), j)
    }
}

/// A point of `𝕊ⁿ`, `n ≥ 1`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "crate::json::SVectorWire", try_from = "crate::json::SVectorWire")]
pub struct SVector(Vec<SElem>);

impl SVector {
    pub fn new(coords: Vec<SElem>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::InvalidValue("vectors need at least one coordinate".into()));
        }
        Ok(SVector(coords))
    }

    pub fn zero(n: usize) -> Self {
        SVector(vec![SElem::ZERO; n.max(1)])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coords(&self) -> &[SElem] {
        &self.0
    }

    pub fn get(&self, i: usize) -> SElem {
        self.0[i]
    }

    pub fn into_coords(self) -> Vec<SElem> {
        self.0
    }

    fn zip_with(&self, other: &SVector, f: impl Fn(SElem, SElem) -> SElem) -> Result<SVector> {
        check_dims(self, other)?;
        Ok(SVector(self.0.iter().zip(&other.0).map(|(&a, &b)| f(a, b)).collect()))
    }

    /// Coordinatewise `⊕`.
    pub fn oplus(&self, other: &SVector) -> Result<SVector> {
        self.zip_with(other, SElem::oplus)
    }

    /// Coordinatewise `⊗`.
    pub fn otimes(&self, other: &SVector) -> Result<SVector> {
        self.zip_with(other, SElem::otimes)
    }

    /// The semimodule action `(λ ⊗ a)(i) = λ ⊗ a(i)`.
    pub fn scale(&self, lambda: ExtReal) -> SVector {
        SVector(self.0.iter().map(|a| a.scale(lambda)).collect())
    }
}

impl From<SElem> for SVector {
    fn from(a: SElem) -> Self {
        SVector(vec![a])
    }
}

impl fmt::Display for SVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl fmt::Debug for SVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str(")")
    }
}

pub(crate) fn check_dims(x: &SVector, y: &SVector) -> Result<()> {
    if x.len() != y.len() {
        return Err(Error::DimensionMismatch { left: x.len(), right: y.len() });
    }
    Ok(())
}

/// `[ⁿΦ]`, the coordinatewise embedding of `𝕊ⁿ` into `ℂⁿ`.
pub fn phi_n(x: &SVector) -> Vec<ComplexPoint> {
    x.coords().iter().map(|&a| phi(a)).collect()
}

/// `ρ_{k,j}(x, y)`.
pub fn rho(id: MetricId, x: &SVector, y: &SVector) -> Result<f64> {
    check_dims(x, y)?;
    Ok(id.combine.apply(x.coords().iter().zip(y.coords()).map(|(&a, &b)| id.base.dist(a, b))))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example_a() -> SVector {
        SVector::new(vec![SElem::plus(0.0), SElem::minus(3f64.ln()), SElem::balanced(2f64.ln())])
            .unwrap()
    }

    fn example_b() -> SVector {
        SVector::new(vec![SElem::minus(0.0), SElem::balanced(0.0), SElem::plus(0.0)]).unwrap()
    }

    #[test]
    fn phi_examples() {
        assert_eq!(phi(SElem::ZERO), ComplexPoint::new(0.0, 0.0));
        assert_eq!(phi(SElem::balanced(0.0)), ComplexPoint::new(1.0, 0.0));
        let p = phi(SElem::plus(0.0));
        assert!((p.re + 0.5).abs() < 1e-15 && (p.im - 3f64.sqrt() / 2.0).abs() < 1e-15);
    }

    #[test]
    fn phi_n_examples() {
        assert_eq!(phi_n(&SVector::zero(2)), vec![ComplexPoint::default(); 2]);
        let a = SElem::minus(1.25);
        assert_eq!(phi_n(&SVector::from(a)), vec![phi(a)]);
        let img = phi_n(&example_a());
        // θ·1, θ²·3, 2
        assert!((img[0].re + 0.5).abs() < 1e-12 && (img[0].im - SQRT3_2).abs() < 1e-12);
        assert!((img[1].re + 1.5).abs() < 1e-12 && (img[1].im + 3.0 * SQRT3_2).abs() < 1e-12);
        assert!((img[2].re - 2.0).abs() < 1e-12 && img[2].im.abs() < 1e-12);
    }

    #[test]
    fn d1_examples() {
        let (r, s) = (0.3, 1.7);
        assert!((d1(SElem::plus(r), SElem::plus(s)) - (s.exp() - r.exp())).abs() < 1e-12);
        assert!((d1(SElem::plus(0.0), SElem::minus(0.0)) - 3f64.sqrt()).abs() < 1e-15);
        assert!((d1(SElem::ZERO, SElem::balanced(r)) - r.exp()).abs() < 1e-15);
    }

    #[test]
    fn d2_examples() {
        assert!((d2(SElem::plus(0.0), SElem::minus(3f64.ln())) - 4.0).abs() < 1e-12);
        let a = SElem::minus(-0.4);
        assert_eq!(d2(a, a), 0.0);
        assert!((d2(SElem::ZERO, SElem::plus(1.5)) - 1.5f64.exp()).abs() < 1e-15);
    }

    #[test]
    fn rho_examples() {
        let (a, b) = (example_a(), example_b());
        assert!((rho(MetricId::D2, &a, &b).unwrap() - 29f64.sqrt()).abs() < 1e-12);
        let sum = MetricId::new(Combine::Sum, Base::D2);
        assert!((rho(sum, &a, &b).unwrap() - 9.0).abs() < 1e-12);
        for id in MetricId::all() {
            assert_eq!(rho(id, &a, &a).unwrap(), 0.0);
        }
        assert!(matches!(
            rho(MetricId::D1, &a, &SVector::zero(2)),
            Err(Error::DimensionMismatch { left: 3, right: 2 })
        ));
    }

    #[test]
    fn metric_codes_round_trip() {
        for id in MetricId::all() {
            assert_eq!(id.to_string().parse::<MetricId>().unwrap(), id);
        }
        assert_eq!("D1".parse::<MetricId>().unwrap(), "rho11".parse().unwrap());
        assert_eq!("D2".parse::<MetricId>().unwrap(), "rho12".parse().unwrap());
        assert!("rho31".parse::<MetricId>().is_err());
        assert!("rho1".parse::<MetricId>().is_err());
    }

    #[test]
    fn huge_magnitudes_saturate() {
        assert_eq!(magnitude(SElem::plus(1000.0)), f64::MAX);
    }
}
