//! Arithmetic in the max-plus semiring `ℝ_max`, the algebra of pairs and the
//! symmetrized algebra `𝕊`.
//!
//! `ℝ_max = (ℝ ∪ {ε}, max, +)` with `ε = −∞` as the zero and `0` as the unit.
//! Elements of `𝕊` are stored in sign/magnitude form `a = sgn(a)|a|` where the
//! sign is one of `⊕`, `⊖`, `•` and the magnitude is an [`ExtReal`]. The zero
//! element `ε•` has exactly one representation.

mod expr;
mod pair;

pub use expr::{eval_expr, Mode};
pub use pair::Pair;

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg};

use crate::error::{Error, Result};

/// An element of `ℝ_ε = ℝ ∪ {ε}`.
///
/// `ε` is a tagged bottom value, never an IEEE infinity, so `ε ⊗ ε` stays `ε`.
#[derive(Clone, Copy)]
pub struct ExtReal(Repr);

#[derive(Clone, Copy)]
enum Repr {
    Eps,
    Real(f64),
}

impl ExtReal {
    pub const EPS: ExtReal = ExtReal(Repr::Eps);
    pub const ZERO: ExtReal = ExtReal(Repr::Real(0.0));

    /// A finite value. Panics on NaN or infinities; use [`ExtReal::new`] for
    /// untrusted input.
    pub fn real(x: f64) -> Self {
        Self::new(x).unwrap_or_else(|e| panic!("{e}"))
    }

    /// Converts a float, mapping `−∞` to `ε`. NaN and `+∞` are rejected.
    pub fn new(x: f64) -> Result<Self> {
        if x == f64::NEG_INFINITY {
            Ok(Self::EPS)
        } else if x.is_finite() {
            // +0.0 canonicalises -0.0 so that structural equality and hashing agree.
            Ok(ExtReal(Repr::Real(x + 0.0)))
        } else {
            Err(Error::InvalidValue(format!("{x} is not an element of ℝ_ε")))
        }
    }

    // Sums of finite reals can overflow; clamp to the finite range.
    fn saturating(x: f64) -> Self {
        if x.is_finite() {
            ExtReal(Repr::Real(x + 0.0))
        } else {
            log::warn!("max-plus arithmetic overflowed; saturating {x}");
            ExtReal(Repr::Real(x.clamp(f64::MIN, f64::MAX)))
        }
    }

    pub fn is_eps(self) -> bool {
        matches!(self.0, Repr::Eps)
    }

    /// The finite value, or `None` for `ε`.
    pub fn value(self) -> Option<f64> {
        match self.0 {
            Repr::Eps => None,
            Repr::Real(x) => Some(x),
        }
    }

    /// The value as a float with `ε ↦ −∞`.
    pub fn to_f64(self) -> f64 {
        self.value().unwrap_or(f64::NEG_INFINITY)
    }

    /// `a ⊕ b = max(a, b)`.
    pub fn oplus(self, other: Self) -> Self {
        if self >= other {
            self
        } else {
            other
        }
    }

    /// `a ⊗ b = a + b`, with `ε` absorbing.
    pub fn otimes(self, other: Self) -> Self {
        match (self.0, other.0) {
            (Repr::Real(a), Repr::Real(b)) => ExtReal::saturating(a + b),
            _ => Self::EPS,
        }
    }

    /// Max-plus power `a^k = k·a`. `a^0 = 0` for every `a`; `ε^k` with `k < 0`
    /// has no value.
    pub fn power(self, k: i64) -> Result<Self> {
        match self.0 {
            _ if k == 0 => Ok(Self::ZERO),
            Repr::Eps if k < 0 => Err(Error::ZeroToNegativePower { power: k }),
            Repr::Eps => Ok(Self::EPS),
            Repr::Real(a) => Ok(ExtReal::saturating(k as f64 * a)),
        }
    }
}

impl PartialEq for ExtReal {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for ExtReal {}

impl PartialOrd for ExtReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtReal {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.0, other.0) {
            (Repr::Eps, Repr::Eps) => Ordering::Equal,
            (Repr::Eps, _) => Ordering::Less,
            (_, Repr::Eps) => Ordering::Greater,
            (Repr::Real(a), Repr::Real(b)) => a.total_cmp(&b),
        }
    }
}

impl Hash for ExtReal {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match self.0 {
            Repr::Eps => state.write_u8(0),
            Repr::Real(x) => {
                state.write_u8(1);
                state.write_u64(x.to_bits());
            }
        }
    }
}

impl fmt::Debug for ExtReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for ExtReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            Repr::Eps => f.write_str("ε"),
            Repr::Real(x) => write!(f, "{x}"),
        }
    }
}

impl From<i32> for ExtReal {
    fn from(x: i32) -> Self {
        ExtReal::real(x as f64)
    }
}

impl Add for ExtReal {
    type Output = ExtReal;
    fn add(self, rhs: Self) -> Self {
        self.oplus(rhs)
    }
}

impl Mul for ExtReal {
    type Output = ExtReal;
    fn mul(self, rhs: Self) -> Self {
        self.otimes(rhs)
    }
}

/// The sign tag of an element of `𝕊`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
    Balanced,
}

impl Sign {
    pub const ALL: [Sign; 3] = [Sign::Plus, Sign::Minus, Sign::Balanced];

    /// Sign table of `⊗`: `⊕⊕ = ⊖⊖ = ⊕`, `⊕⊖ = ⊖`, anything with `•` is `•`.
    pub fn times(self, other: Sign) -> Sign {
        use Sign::*;
        match (self, other) {
            (Balanced, _) | (_, Balanced) => Balanced,
            (Plus, Plus) | (Minus, Minus) => Plus,
            _ => Minus,
        }
    }

    pub fn negate(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
            Sign::Balanced => Sign::Balanced,
        }
    }

    /// ASCII tag used by the JSON formats.
    pub fn tag(self) -> &'static str {
        match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
            Sign::Balanced => "o",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Sign> {
        match tag {
            "+" => Some(Sign::Plus),
            "-" => Some(Sign::Minus),
            "o" => Some(Sign::Balanced),
            _ => None,
        }
    }

    /// Position in the fixed ray order `⊕, ⊖, •`.
    pub fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "⊕",
            Sign::Minus => "⊖",
            Sign::Balanced => "•",
        })
    }
}

/// An element of the symmetrized max-plus algebra `𝕊`.
///
/// Always normalized: a magnitude of `ε` forces the balanced sign, so `ε•`
/// is the only zero and derived equality is equality in `𝕊`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(into = "crate::json::SElemWire", try_from = "crate::json::SElemWire")]
pub struct SElem {
    sign: Sign,
    exp: ExtReal,
}

impl SElem {
    pub const ZERO: SElem = SElem { sign: Sign::Balanced, exp: ExtReal::EPS };
    pub const ONE: SElem = SElem { sign: Sign::Plus, exp: ExtReal::ZERO };

    pub fn new(sign: Sign, exp: ExtReal) -> Self {
        if exp.is_eps() {
            Self::ZERO
        } else {
            SElem { sign, exp }
        }
    }

    /// `⊕r`.
    pub fn plus(r: f64) -> Self {
        Self::new(Sign::Plus, ExtReal::real(r))
    }

    /// `⊖r`.
    pub fn minus(r: f64) -> Self {
        Self::new(Sign::Minus, ExtReal::real(r))
    }

    /// `r•`.
    pub fn balanced(r: f64) -> Self {
        Self::new(Sign::Balanced, ExtReal::real(r))
    }

    pub fn sign(self) -> Sign {
        self.sign
    }

    /// The absolute value `|a| = a⊕ ⊕ a⊖`.
    pub fn abs(self) -> ExtReal {
        self.exp
    }

    pub fn is_zero(self) -> bool {
        self.exp.is_eps()
    }

    /// `a ⊕ b`: the larger magnitude wins; equal magnitudes with different
    /// signs balance. Magnitudes are compared exactly.
    pub fn oplus(self, other: SElem) -> SElem {
        match self.exp.cmp(&other.exp) {
            Ordering::Greater => self,
            Ordering::Less => other,
            Ordering::Equal if self.sign == other.sign => self,
            Ordering::Equal => SElem::new(Sign::Balanced, self.exp),
        }
    }

    /// `a ⊗ b = sgn(a)sgn(b)(|a| ⊗ |b|)`.
    pub fn otimes(self, other: SElem) -> SElem {
        SElem::new(self.sign.times(other.sign), self.exp.otimes(other.exp))
    }

    /// `⊖a`.
    pub fn negate(self) -> SElem {
        SElem::new(self.sign.negate(), self.exp)
    }

    /// `a•`.
    pub fn balance(self) -> SElem {
        SElem::new(Sign::Balanced, self.exp)
    }

    /// The positive and negative parts `(a⊕, a⊖)`, so that `a = a⊕ ⊖ a⊖`.
    pub fn parts(self) -> (ExtReal, ExtReal) {
        match self.sign {
            Sign::Plus => (self.exp, ExtReal::EPS),
            Sign::Minus => (ExtReal::EPS, self.exp),
            Sign::Balanced => (self.exp, self.exp),
        }
    }

    /// Rebuilds an element from its parts: `⊕p ⊖ ⊕n`.
    pub fn from_parts(positive: ExtReal, negative: ExtReal) -> SElem {
        SElem::new(Sign::Plus, positive).oplus(SElem::new(Sign::Minus, negative))
    }

    /// Outer product with a scalar, `λ ⊗ a = sgn(a)(λ + |a|)`.
    pub fn scale(self, lambda: ExtReal) -> SElem {
        SElem::new(self.sign, lambda.otimes(self.exp))
    }

    /// `a^k`, the `k`-fold `⊗`-product. Negative powers exist only for
    /// signed (non-balanced) nonzero elements.
    pub fn power(self, k: i64) -> Result<SElem> {
        if k == 0 {
            return Ok(SElem::ONE);
        }
        if self.is_zero() && k < 0 {
            return Err(Error::ZeroToNegativePower { power: k });
        }
        let sign = match self.sign {
            Sign::Balanced if k < 0 => return Err(Error::BalancedNegativePower { power: k }),
            Sign::Minus if k % 2 == 0 => Sign::Plus,
            s => s,
        };
        Ok(SElem::new(sign, self.exp.power(k)?))
    }

    /// The pair `(a⊕, a⊖)` representing this class.
    pub fn to_pair(self) -> Pair {
        let (p, n) = self.parts();
        Pair::new(p, n)
    }
}

impl PartialOrd for SElem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic on `(sign, |a|)`; used only for stable ordering of results.
impl Ord for SElem {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.sign, self.exp).cmp(&(other.sign, other.exp))
    }
}

impl fmt::Debug for SElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for SElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.sign {
            Sign::Balanced => write!(f, "{}•", self.exp),
            s => write!(f, "{}{}", s, self.exp),
        }
    }
}

impl Add for SElem {
    type Output = SElem;
    fn add(self, rhs: Self) -> SElem {
        self.oplus(rhs)
    }
}

impl Mul for SElem {
    type Output = SElem;
    fn mul(self, rhs: Self) -> SElem {
        self.otimes(rhs)
    }
}

impl Neg for SElem {
    type Output = SElem;
    fn neg(self) -> SElem {
        self.negate()
    }
}
