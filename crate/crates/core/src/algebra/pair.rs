use std::fmt;

use super::{ExtReal, SElem, Sign};

/// An element `(a, b)` of the max-plus algebra of pairs `𝒫_ε = ℝ_ε × ℝ_ε`.
///
/// `(a, b)` stands for the formal difference `a ⊖ b`; `𝕊` is its quotient by
/// [`Pair::equiv`].
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Pair {
    pub first: ExtReal,
    pub second: ExtReal,
}

impl Pair {
    pub const ZERO: Pair = Pair { first: ExtReal::EPS, second: ExtReal::EPS };
    pub const ONE: Pair = Pair { first: ExtReal::ZERO, second: ExtReal::EPS };

    pub fn new(first: ExtReal, second: ExtReal) -> Self {
        Pair { first, second }
    }

    /// `(a,b) ⊕ (c,d) = (a ⊕ c, b ⊕ d)`.
    pub fn oplus(self, other: Pair) -> Pair {
        Pair::new(self.first.oplus(other.first), self.second.oplus(other.second))
    }

    /// `(a,b) ⊗ (c,d) = (a⊗c ⊕ b⊗d, a⊗d ⊕ b⊗c)`.
    pub fn otimes(self, other: Pair) -> Pair {
        let (a, b, c, d) = (self.first, self.second, other.first, other.second);
        Pair::new(a.otimes(c).oplus(b.otimes(d)), a.otimes(d).oplus(b.otimes(c)))
    }

    /// `⊖(a, b) = (b, a)`.
    pub fn negate(self) -> Pair {
        Pair::new(self.second, self.first)
    }

    /// The max-plus norm `|u|⊕ = a ⊕ b`.
    pub fn norm(self) -> ExtReal {
        self.first.oplus(self.second)
    }

    /// `u• = u ⊕ (⊖u) = (|u|⊕, |u|⊕)`.
    pub fn balance(self) -> Pair {
        let n = self.norm();
        Pair::new(n, n)
    }

    /// The balance relation `(a,b) ∇ (c,d) ⇔ a ⊕ d = b ⊕ c`. Reflexive and
    /// symmetric but not transitive.
    pub fn balances(self, other: Pair) -> bool {
        self.first.oplus(other.second) == self.second.oplus(other.first)
    }

    /// The equivalence whose classes form `𝕊`: balance when both pairs are
    /// unbalanced, identity otherwise.
    pub fn equiv(self, other: Pair) -> bool {
        if self.first != self.second && other.first != other.second {
            self.balances(other)
        } else {
            self == other
        }
    }

    /// The class of this pair in `𝕊`: `⊕a` if `a > b`, `⊖b` if `a < b`,
    /// `a•` if `a = b`.
    pub fn classify(self) -> SElem {
        let (a, b) = (self.first, self.second);
        match a.cmp(&b) {
            std::cmp::Ordering::Greater => SElem::new(Sign::Plus, a),
            std::cmp::Ordering::Less => SElem::new(Sign::Minus, b),
            std::cmp::Ordering::Equal => SElem::new(Sign::Balanced, a),
        }
    }
}

impl fmt::Debug for Pair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.first, self.second)
    }
}
