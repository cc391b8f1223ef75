//! Eventually periodic subsets of ℕ.
//!
//! A set is stored as its finite part below `start` together with a residue
//! pattern modulo `period` that decides membership from `start` onwards.
//! Every constructor returns the canonical form (least period, then least
//! start), so structural equality is set equality.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::card::Card;

/// Upper bound on periods and prefix lengths handled before giving up.
pub const SIZE_LIMIT: u64 = 1 << 22;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EpSet {
    start: u64,
    period: u64,
    /// Sorted members below `start`.
    below: Vec<u64>,
    /// Sorted residues `r < period` such that `x ≥ start, x ≡ r` is a member.
    residues: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("eventually periodic description exceeds the size limit ({0} > {SIZE_LIMIT})")]
pub struct TooLarge(pub u64);

pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: u64, b: u64) -> Result<u64, TooLarge> {
    let l = (a / gcd(a, b)).checked_mul(b).ok_or(TooLarge(u64::MAX))?;
    if l > SIZE_LIMIT {
        Err(TooLarge(l))
    } else {
        Ok(l)
    }
}

impl EpSet {
    /// Builds the canonical set agreeing with `member` on `[0, start)` and
    /// with `residue(r)` on `x ≥ start, x ≡ r (mod period)`.
    pub fn from_parts(
        start: u64,
        period: u64,
        member: impl Fn(u64) -> bool,
        residue: impl Fn(u64) -> bool,
    ) -> Result<EpSet, TooLarge> {
        assert!(period >= 1, "period must be positive");
        if period > SIZE_LIMIT || start > SIZE_LIMIT {
            return Err(TooLarge(period.max(start)));
        }
        let pattern: Vec<bool> = (0..period).map(residue).collect();
        let below: Vec<u64> = (0..start).filter(|&x| member(x)).collect();
        Ok(Self::canonical(start, pattern, below))
    }

    fn canonical(mut start: u64, pattern: Vec<bool>, mut below: Vec<u64>) -> EpSet {
        let period = pattern.len() as u64;
        let min_period = (1..=period)
            .filter(|d| period.is_multiple_of(*d))
            .find(|&d| (0..period).all(|i| pattern[i as usize] == pattern[(i % d) as usize]))
            .unwrap_or(period);
        let pattern: Vec<bool> = pattern[..min_period as usize].to_vec();
        let at = |x: u64| pattern[(x % min_period) as usize];
        // Pull `start` down while the finite part already follows the pattern.
        while start > 0 {
            let x = start - 1;
            let is_member = below.last() == Some(&x);
            if is_member != at(x) {
                break;
            }
            if is_member {
                below.pop();
            }
            start = x;
        }
        let residues = (0..min_period).filter(|&r| pattern[r as usize]).collect();
        EpSet { start, period: min_period, below, residues }
    }

    pub fn empty() -> EpSet {
        EpSet { start: 0, period: 1, below: Vec::new(), residues: Vec::new() }
    }

    pub fn naturals() -> EpSet {
        EpSet { start: 0, period: 1, below: Vec::new(), residues: vec![0] }
    }

    pub fn finite<I: IntoIterator<Item = u64>>(items: I) -> EpSet {
        let set: BTreeSet<u64> = items.into_iter().collect();
        let start = set.last().map_or(0, |&m| m + 1);
        Self::canonical(start, vec![false], set.into_iter().collect())
    }

    /// `{x : x ≡ r (mod modulus)}`.
    pub fn residue_class(r: u64, modulus: u64) -> EpSet {
        assert!(modulus >= 1 && r < modulus, "bad residue class {r} mod {modulus}");
        let pattern = (0..modulus).map(|i| i == r).collect();
        Self::canonical(0, pattern, Vec::new())
    }

    /// `{a + t·step : t ≥ 0}`; with `step = 0` this is `{a}`.
    pub fn progression(a: u64, step: u64) -> EpSet {
        if step == 0 {
            return Self::finite([a]);
        }
        let pattern = (0..step).map(|i| i == a % step).collect();
        Self::canonical(a, pattern, Vec::new())
    }

    pub fn start(&self) -> u64 {
        self.start
    }

    pub fn period(&self) -> u64 {
        self.period
    }

    pub fn below(&self) -> &[u64] {
        &self.below
    }

    pub fn residues(&self) -> &[u64] {
        &self.residues
    }

    pub fn contains(&self, x: u64) -> bool {
        if x < self.start {
            self.below.binary_search(&x).is_ok()
        } else {
            self.residues.binary_search(&(x % self.period)).is_ok()
        }
    }

    pub fn is_finite(&self) -> bool {
        self.residues.is_empty()
    }

    pub fn is_cofinite(&self) -> bool {
        self.residues.len() as u64 == self.period
    }

    pub fn is_empty(&self) -> bool {
        self.is_finite() && self.below.is_empty()
    }

    pub fn cardinality(&self) -> Card {
        if self.is_finite() {
            Card::Fin(self.below.len() as u64)
        } else {
            Card::Aleph0
        }
    }

    /// `|ℕ ∖ self|`.
    pub fn complement_cardinality(&self) -> Card {
        if self.is_cofinite() {
            Card::Fin(self.start - self.below.len() as u64)
        } else {
            Card::Aleph0
        }
    }

    pub fn complement(&self) -> EpSet {
        let pattern = (0..self.period).map(|r| self.residues.binary_search(&r).is_err()).collect();
        let below = (0..self.start).filter(|&x| !self.contains(x)).collect();
        Self::canonical(self.start, pattern, below)
    }

    fn combine(&self, other: &EpSet, op: impl Fn(bool, bool) -> bool) -> Result<EpSet, TooLarge> {
        let period = lcm(self.period, other.period)?;
        let start = self.start.max(other.start);
        // Least representative of residue `r` at or above `start`.
        let rep = |r: u64| start + (r + period - start % period) % period;
        EpSet::from_parts(
            start,
            period,
            |x| op(self.contains(x), other.contains(x)),
            |r| op(self.contains(rep(r)), other.contains(rep(r))),
        )
    }

    pub fn intersect(&self, other: &EpSet) -> Result<EpSet, TooLarge> {
        self.combine(other, |a, b| a && b)
    }

    pub fn union(&self, other: &EpSet) -> Result<EpSet, TooLarge> {
        self.combine(other, |a, b| a || b)
    }

    pub fn is_subset(&self, other: &EpSet) -> Result<bool, TooLarge> {
        Ok(self.intersect(&other.complement())?.is_empty())
    }

    /// Whether `self ∩ {x ≡ j (mod n)}` is infinite.
    pub fn meets_class_infinitely(&self, j: u64, n: u64) -> Result<bool, TooLarge> {
        let l = lcm(self.period, n)?;
        Ok((0..l).any(|r| r % n == j && self.residues.binary_search(&(r % self.period)).is_ok()))
    }

    /// Members in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        let tail = (!self.is_finite()).then(|| (self.start..).filter(move |&x| self.contains(x)));
        self.below.iter().copied().chain(tail.into_iter().flatten())
    }

    pub fn min(&self) -> Option<u64> {
        self.iter().next()
    }

    /// Largest member `≤ x`.
    pub fn max_at_most(&self, x: u64) -> Option<u64> {
        if x >= self.start && !self.is_finite() {
            let steps = (0..self.period).find(|&k| k <= x - self.start && self.contains(x - k));
            if let Some(k) = steps {
                return Some(x - k);
            }
        }
        let bound = x.min(self.start.saturating_sub(1));
        match self.below.binary_search(&bound) {
            Ok(i) => Some(self.below[i]),
            Err(0) => None,
            Err(i) => Some(self.below[i - 1]),
        }
    }
}

impl fmt::Display for EpSet {
    /// Renders as e.g. `{0, 3} ∪ {x ≥ 5 : x mod 4 ∈ {1, 2}}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>().join(", ");
        let finite = format!("{{{}}}", list(&self.below));
        if self.is_finite() {
            return f.write_str(&finite);
        }
        let tail = format!("{{x ≥ {} : x mod {} ∈ {{{}}}}}", self.start, self.period, list(&self.residues));
        if self.below.is_empty() {
            f.write_str(&tail)
        } else {
            write!(f, "{finite} ∪ {tail}")
        }
    }
}
