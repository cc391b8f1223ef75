//! Cardinals up to ℵ₀, sound interval bounds on them, Kleene three-valued
//! logic, and the composition rules for defect, collapse and infinite
//! contraction index expressed as interval transformers.
//!
//! Composition is read left to right throughout the crate: `fg` means
//! "apply `f`, then `g`".

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, BitAnd, BitOr, Not};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A cardinal in `{0, 1, 2, …} ∪ {ℵ₀}`.
///
/// The derived ordering places every finite value below `Aleph0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Card {
    Fin(u64),
    Aleph0,
}

impl Card {
    pub const ZERO: Card = Card::Fin(0);

    pub fn is_finite(self) -> bool {
        matches!(self, Card::Fin(_))
    }

    pub fn is_zero(self) -> bool {
        self == Card::ZERO
    }

    pub fn finite(self) -> Option<u64> {
        match self {
            Card::Fin(n) => Some(n),
            Card::Aleph0 => None,
        }
    }

    /// `self < mu`.
    pub fn lt(self, mu: Threshold) -> bool {
        match mu {
            Threshold::Aleph0 => self.is_finite(),
            Threshold::Aleph0Plus => true,
        }
    }

    /// `self ≥ mu`.
    pub fn ge(self, mu: Threshold) -> bool {
        !self.lt(mu)
    }
}

impl From<u64> for Card {
    fn from(n: u64) -> Self {
        Card::Fin(n)
    }
}

/// Cardinal addition. Panics if a finite sum overflows `u64`.
pub fn card_add(a: Card, b: Card) -> Card {
    match (a, b) {
        (Card::Fin(x), Card::Fin(y)) => Card::Fin(x.checked_add(y).expect("finite cardinal overflow")),
        _ => Card::Aleph0,
    }
}

impl Add for Card {
    type Output = Card;

    fn add(self, rhs: Card) -> Card {
        card_add(self, rhs)
    }
}

impl fmt::Display for Card {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Card::Fin(n) => write!(f, "{n}"),
            Card::Aleph0 => f.write_str("ℵ₀"),
        }
    }
}

impl Serialize for Card {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Card::Fin(n) => serializer.serialize_u64(*n),
            Card::Aleph0 => serializer.serialize_str("aleph0"),
        }
    }
}

impl<'de> Deserialize<'de> for Card {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(u64),
            Sym(String),
        }
        match Raw::deserialize(deserializer)? {
            Raw::Num(n) => Ok(Card::Fin(n)),
            Raw::Sym(s) if s == "aleph0" => Ok(Card::Aleph0),
            Raw::Sym(s) => Err(serde::de::Error::custom(format!("unknown cardinal {s:?}"))),
        }
    }
}

/// An infinite threshold cardinal `μ ≤ |Ω|⁺` at `|Ω| = ℵ₀`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Threshold {
    Aleph0,
    /// `ℵ₀⁺`, strictly above every [`Card`].
    Aleph0Plus,
}

impl Threshold {
    pub const ALL: [Threshold; 2] = [Threshold::Aleph0, Threshold::Aleph0Plus];

    pub fn cmp_card(self, c: Card) -> Ordering {
        match (self, c) {
            (Threshold::Aleph0Plus, _) => Ordering::Greater,
            (Threshold::Aleph0, Card::Aleph0) => Ordering::Equal,
            (Threshold::Aleph0, Card::Fin(_)) => Ordering::Greater,
        }
    }
}

impl fmt::Display for Threshold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Threshold::Aleph0 => f.write_str("ℵ₀"),
            Threshold::Aleph0Plus => f.write_str("ℵ₀⁺"),
        }
    }
}

impl std::str::FromStr for Threshold {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "aleph0" => Ok(Threshold::Aleph0),
            "aleph0plus" => Ok(Threshold::Aleph0Plus),
            other => Err(format!("unknown threshold {other:?}, expected aleph0 or aleph0plus")),
        }
    }
}

/// Closed interval `[lo, hi]` of cardinals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CardInterval {
    lo: Card,
    hi: Card,
}

impl CardInterval {
    pub const ZERO: CardInterval = CardInterval { lo: Card::ZERO, hi: Card::ZERO };
    pub const ALEPH0: CardInterval = CardInterval { lo: Card::Aleph0, hi: Card::Aleph0 };
    pub const UNBOUNDED: CardInterval = CardInterval { lo: Card::ZERO, hi: Card::Aleph0 };

    /// Panics if `lo > hi`.
    pub fn new(lo: Card, hi: Card) -> Self {
        assert!(lo <= hi, "malformed cardinal interval [{lo}, {hi}]");
        CardInterval { lo, hi }
    }

    pub fn exact(c: Card) -> Self {
        CardInterval { lo: c, hi: c }
    }

    pub fn lo(&self) -> Card {
        self.lo
    }

    pub fn hi(&self) -> Card {
        self.hi
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn value(&self) -> Option<Card> {
        self.is_exact().then_some(self.lo)
    }

    pub fn contains(&self, c: Card) -> bool {
        self.lo <= c && c <= self.hi
    }

    /// `self ⊆ other`.
    pub fn within(&self, other: &CardInterval) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    pub fn intersect(&self, other: &CardInterval) -> Option<CardInterval> {
        let lo = self.lo.max(other.lo);
        let hi = self.hi.min(other.hi);
        (lo <= hi).then_some(CardInterval { lo, hi })
    }

    pub fn is_zero(&self) -> Tri {
        self.compare(|c| c.is_zero())
    }

    pub fn is_positive(&self) -> Tri {
        !self.is_zero()
    }

    pub fn lt(&self, mu: Threshold) -> Tri {
        self.compare(|c| c.lt(mu))
    }

    pub fn ge(&self, mu: Threshold) -> Tri {
        !self.lt(mu)
    }

    /// Evaluates a monotone predicate at both endpoints.
    fn compare(&self, pred: impl Fn(Card) -> bool) -> Tri {
        match (pred(self.lo), pred(self.hi)) {
            (true, true) => Tri::Yes,
            (false, false) => Tri::No,
            _ => Tri::Unknown,
        }
    }
}

impl fmt::Display for CardInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_exact() {
            write!(f, "{}", self.lo)
        } else {
            write!(f, "[{}, {}]", self.lo, self.hi)
        }
    }
}

impl From<Card> for CardInterval {
    fn from(c: Card) -> Self {
        CardInterval::exact(c)
    }
}

/// Kleene three-valued truth. `Yes` and `No` are proofs; `Unknown` only
/// arises from a non-degenerate interval or an undecided query.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Tri {
    Yes,
    No,
    Unknown,
}

impl Tri {
    pub fn is_yes(self) -> bool {
        self == Tri::Yes
    }

    pub fn is_no(self) -> bool {
        self == Tri::No
    }

    pub fn is_decided(self) -> bool {
        self != Tri::Unknown
    }

    pub fn any<I: IntoIterator<Item = Tri>>(items: I) -> Tri {
        items.into_iter().fold(Tri::No, |acc, t| acc | t)
    }

    pub fn all<I: IntoIterator<Item = Tri>>(items: I) -> Tri {
        items.into_iter().fold(Tri::Yes, |acc, t| acc & t)
    }

    /// `true` when `self` is at least as informative as `other` and agrees
    /// with it wherever `other` is decided.
    pub fn refines(self, other: Tri) -> bool {
        other == Tri::Unknown || self == other
    }
}

impl From<bool> for Tri {
    fn from(b: bool) -> Self {
        if b {
            Tri::Yes
        } else {
            Tri::No
        }
    }
}

impl Not for Tri {
    type Output = Tri;

    fn not(self) -> Tri {
        match self {
            Tri::Yes => Tri::No,
            Tri::No => Tri::Yes,
            Tri::Unknown => Tri::Unknown,
        }
    }
}

impl BitAnd for Tri {
    type Output = Tri;

    fn bitand(self, rhs: Tri) -> Tri {
        match (self, rhs) {
            (Tri::No, _) | (_, Tri::No) => Tri::No,
            (Tri::Yes, Tri::Yes) => Tri::Yes,
            _ => Tri::Unknown,
        }
    }
}

impl BitOr for Tri {
    type Output = Tri;

    fn bitor(self, rhs: Tri) -> Tri {
        match (self, rhs) {
            (Tri::Yes, _) | (_, Tri::Yes) => Tri::Yes,
            (Tri::No, Tri::No) => Tri::No,
            _ => Tri::Unknown,
        }
    }
}

impl fmt::Display for Tri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Tri::Yes => "yes",
            Tri::No => "no",
            Tri::Unknown => "unknown",
        })
    }
}

fn interval_add(a: CardInterval, b: CardInterval) -> CardInterval {
    CardInterval::new(a.lo + b.lo, a.hi + b.hi)
}

fn intersect_all(rule: &str, candidates: &[CardInterval]) -> CardInterval {
    candidates
        .iter()
        .skip(1)
        .try_fold(candidates[0], |acc, iv| acc.intersect(iv))
        .unwrap_or_else(|| panic!("{rule}: composition rules disagree on {candidates:?}"))
}

/// Bounds on `d(fg)` from `d(f)`, `c(g)`, `d(g)` and injectivity of `g`.
///
/// * `d(g) ≤ d(fg) ≤ d(f) + d(g)`
/// * `d(fg) = d(f) + d(g)` when `g` is injective
/// * `c(g) < ℵ₀ ≤ d(f)` forces `d(fg) ≥ ℵ₀`
pub fn compose_defect(d_f: CardInterval, c_g: CardInterval, d_g: CardInterval, g_injective: Tri) -> CardInterval {
    let sum = interval_add(d_f, d_g);
    let mut rules = vec![CardInterval::new(d_g.lo, sum.hi)];
    if g_injective.is_yes() {
        rules.push(sum);
    }
    if c_g.hi.is_finite() && d_f.lo == Card::Aleph0 {
        rules.push(CardInterval::ALEPH0);
    }
    intersect_all("compose_defect", &rules)
}

/// Bounds on `c(fg)` from `c(f)`, `d(f)`, `c(g)` and surjectivity of `f`.
///
/// * `c(f) ≤ c(fg) ≤ c(f) + c(g)`
/// * `c(fg) = c(f) + c(g)` when `f` is surjective
/// * `d(f) < ℵ₀ ≤ c(g)` forces `c(fg) ≥ ℵ₀`
pub fn compose_collapse(c_f: CardInterval, d_f: CardInterval, c_g: CardInterval, f_surjective: Tri) -> CardInterval {
    let sum = interval_add(c_f, c_g);
    let mut rules = vec![CardInterval::new(c_f.lo, sum.hi)];
    if f_surjective.is_yes() {
        rules.push(sum);
    }
    if d_f.hi.is_finite() && c_g.lo == Card::Aleph0 {
        rules.push(CardInterval::ALEPH0);
    }
    intersect_all("compose_collapse", &rules)
}

/// `k(fg, ℵ₀) ≤ k(f, ℵ₀) + k(g, ℵ₀)`; there is no lower-bound rule.
pub fn compose_kinf(k_f: CardInterval, k_g: CardInterval) -> CardInterval {
    CardInterval::new(Card::ZERO, k_f.hi + k_g.hi)
}
