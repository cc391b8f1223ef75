//! Finitely described total self-maps of ℕ.
//!
//! The class is generated under composition by affine-periodic maps (a
//! finite prefix followed by the tail law `f(x + p) = f(x) + s`) and the
//! first projection of the inverse Cantor pairing. Compositions of two
//! affine-periodic maps are again affine-periodic; anything involving the
//! projection is kept symbolic and certified by the composition rules in
//! [`crate::card`].

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::card::{compose_collapse, compose_defect, compose_kinf, Card, CardInterval, Tri};
use crate::epset::{gcd, lcm, EpSet, TooLarge, SIZE_LIMIT};

/// Default search cap for preimages of maps without an exact fiber analysis.
pub const DEFAULT_CAP: u64 = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MapError {
    #[error("period must be at least 1")]
    ZeroPeriod,
    #[error("table has {found} entries, expected threshold + period = {expected}")]
    TableLength { expected: usize, found: usize },
    #[error("{0:?} is not a permutation of 0..{len}", len = .0.len())]
    NotPermutation(Vec<u64>),
    #[error("divisor must be at least 1")]
    ZeroDivisor,
}

/// `f(x) = table[x]` for `x < threshold + period` and
/// `f(x + period) = f(x) + shift` for all `x ≥ threshold`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct AffinePeriodic {
    threshold: u64,
    period: u64,
    shift: u64,
    table: Vec<u64>,
}

impl AffinePeriodic {
    pub fn new(threshold: u64, period: u64, shift: u64, table: Vec<u64>) -> Result<Self, MapError> {
        if period == 0 {
            return Err(MapError::ZeroPeriod);
        }
        let expected = (threshold + period) as usize;
        if table.len() != expected {
            return Err(MapError::TableLength { expected, found: table.len() });
        }
        Ok(AffinePeriodic { threshold, period, shift, table })
    }

    pub fn identity() -> Self {
        AffinePeriodic { threshold: 0, period: 1, shift: 1, table: vec![0] }
    }

    /// `x ↦ x + k`.
    pub fn shift_by(k: u64) -> Self {
        AffinePeriodic { threshold: 0, period: 1, shift: 1, table: vec![k] }
    }

    /// `x ↦ k·x`.
    pub fn times(k: u64) -> Self {
        AffinePeriodic { threshold: 0, period: 1, shift: k, table: vec![0] }
    }

    /// `x ↦ ⌊x / k⌋`.
    pub fn divfloor(k: u64) -> Result<Self, MapError> {
        if k == 0 {
            return Err(MapError::ZeroDivisor);
        }
        Ok(AffinePeriodic { threshold: 0, period: k, shift: 1, table: vec![0; k as usize] })
    }

    pub fn constant(c: u64) -> Self {
        AffinePeriodic { threshold: 0, period: 1, shift: 0, table: vec![c] }
    }

    /// The permutation moving `x < images.len()` to `images[x]` and fixing
    /// everything else.
    pub fn perm(images: &[u64]) -> Result<Self, MapError> {
        let len = images.len() as u64;
        let distinct: BTreeSet<u64> = images.iter().copied().collect();
        if distinct.len() != images.len() || images.iter().any(|&v| v >= len) {
            return Err(MapError::NotPermutation(images.to_vec()));
        }
        let mut table = images.to_vec();
        table.push(len);
        Ok(AffinePeriodic { threshold: len, period: 1, shift: 1, table }.canonical())
    }

    pub fn threshold(&self) -> u64 {
        self.threshold
    }

    pub fn period(&self) -> u64 {
        self.period
    }

    pub fn shift(&self) -> u64 {
        self.shift
    }

    pub fn table(&self) -> &[u64] {
        &self.table
    }

    pub fn eval(&self, x: u64) -> u64 {
        if let Some(&v) = self.table.get(x as usize) {
            return v;
        }
        let k = x - self.threshold;
        let (q, r) = (k / self.period, k % self.period);
        q.checked_mul(self.shift)
            .and_then(|t| t.checked_add(self.table[(self.threshold + r) as usize]))
            .expect("map value overflows u64")
    }

    /// Tail values `f(threshold + r)` for `r < period`.
    fn tail_bases(&self) -> &[u64] {
        &self.table[self.threshold as usize..]
    }

    /// Least period, then least threshold, for the same function.
    pub fn canonical(&self) -> Self {
        let (n, p, s) = (self.threshold, self.period, self.shift);
        let (period, shift) = (1..=p)
            .filter(|d| p % d == 0 && (s * d) % p == 0)
            .map(|d| (d, s * d / p))
            .find(|&(d, sd)| (n..n + p).all(|x| self.eval(x + d) == self.eval(x) + sd))
            .unwrap_or((p, s));
        let mut threshold = n;
        while threshold > 0 && self.eval(threshold - 1 + period) == self.eval(threshold - 1) + shift {
            threshold -= 1;
        }
        let table = (0..threshold + period).map(|x| self.eval(x)).collect();
        AffinePeriodic { threshold, period, shift, table }
    }

    /// The map `x ↦ g(f(x))` (apply `self`, then `then`), in canonical form.
    pub fn then(&self, then: &AffinePeriodic) -> AffinePeriodic {
        let (n1, p1, s1) = (self.threshold, self.period, self.shift);
        let (threshold, period, shift) = if s1 == 0 {
            (n1, p1, 0)
        } else {
            // Align the inner tail so that each step of the super-period moves
            // the argument of `then` by a whole number of its periods.
            let k = then.period / gcd(s1, then.period);
            let steps = s1 * k / then.period;
            let base = *self.tail_bases().iter().min().expect("nonempty tail");
            let lift = then.threshold.saturating_sub(base).div_ceil(s1);
            (n1 + p1 * lift, p1 * k, steps * then.shift)
        };
        let table = (0..threshold + period).map(|x| then.eval(self.eval(x))).collect();
        AffinePeriodic { threshold, period, shift, table }.canonical()
    }

    /// Image of an eventually periodic set.
    pub fn image_of(&self, set: &EpSet) -> Result<EpSet, TooLarge> {
        let cut = self.threshold.max(set.start());
        let mut finite: BTreeSet<u64> = set.iter().take_while(|&x| x < cut).map(|x| self.eval(x)).collect();
        if set.is_finite() {
            return Ok(EpSet::finite(finite));
        }
        let span = lcm(set.period(), self.period)?;
        let starts: Vec<u64> = (cut..cut + span).filter(|&b| set.contains(b)).map(|b| self.eval(b)).collect();
        if self.shift == 0 {
            finite.extend(starts);
            return Ok(EpSet::finite(finite));
        }
        let step = self.shift.checked_mul(span / self.period).filter(|&s| s <= SIZE_LIMIT).ok_or(TooLarge(span))?;
        let start = starts.iter().copied().chain(finite.last().map(|&m| m + 1)).max().unwrap_or(0);
        EpSet::from_parts(
            start,
            step,
            |y| finite.contains(&y) || starts.iter().any(|&a| y >= a && (y - a) % step == 0),
            |r| starts.iter().any(|&a| a % step == r),
        )
    }

    pub fn fiber(&self, y: u64) -> FiberReport {
        let (n, p, s) = (self.threshold, self.period, self.shift);
        if s == 0 {
            if self.tail_bases().contains(&y) {
                let set = EpSet::from_parts(
                    n,
                    p,
                    |x| self.table[x as usize] == y,
                    |res| self.table[(n + (res + p - n % p) % p) as usize] == y,
                )
                .expect("fiber of a table-sized map");
                return FiberReport::Infinite(InfiniteSet::Periodic(set));
            }
            let elements = (0..n).filter(|&x| self.table[x as usize] == y).collect();
            return FiberReport::Finite(elements);
        }
        let mut elements: Vec<u64> = (0..n).filter(|&x| self.table[x as usize] == y).collect();
        for (r, &a) in self.tail_bases().iter().enumerate() {
            if y >= a && (y - a).is_multiple_of(s) {
                elements.push(n + r as u64 + p * ((y - a) / s));
            }
        }
        elements.sort_unstable();
        FiberReport::Finite(elements)
    }

    fn certificate(&self) -> Certificate {
        let s = self.shift;
        let classes: BTreeSet<u64> = self.tail_bases().iter().map(|a| a.checked_rem(s).unwrap_or(*a)).collect();
        let d = if s == 0 || (classes.len() as u64) < s {
            Card::Aleph0
        } else {
            // Every class is hit, so the period is at least the shift and the image is small.
            self.image_of(&EpSet::naturals()).expect("image of a table-sized map").complement_cardinality()
        };
        let (c, kinf) = if self.shift == 0 {
            let tail: BTreeSet<u64> = self.tail_bases().iter().copied().collect();
            (Card::Aleph0, Card::Fin(tail.len() as u64))
        } else {
            let c = if classes.len() < self.tail_bases().len() {
                // Two tail progressions share a residue and eventually collide forever.
                Card::Aleph0
            } else {
                // Tail progressions are eventually disjoint, so every collision
                // involves a prefix point.
                let prefix: BTreeSet<u64> = self.table[..self.threshold as usize].iter().copied().collect();
                Card::Fin(prefix.iter().map(|&y| self.fiber(y).finite_len().unwrap() - 1).sum())
            };
            (c, Card::ZERO)
        };
        Certificate::from_exact(d, c, kinf, Tri::from(s == 0))
    }

    /// Semigroup inverse with least-preimage transversal; a point off the
    /// image goes where the greatest image point below it goes (0 if none).
    pub fn inverse(&self) -> Result<AffinePeriodic, TooLarge> {
        let image = self.image_of(&EpSet::naturals())?;
        let least = |y: u64| self.fiber(y).min().expect("image point has a preimage");
        let value = |y: u64| image.max_at_most(y).map_or(0, least);
        let (threshold, period, shift) = if self.shift == 0 {
            let top = image.iter().last().expect("nonempty image");
            (top + 1, 1, 0)
        } else {
            let top = self.table.iter().max().expect("nonempty table");
            (top + 1 + self.shift, self.shift, self.period)
        };
        if threshold + period > SIZE_LIMIT {
            return Err(TooLarge(threshold + period));
        }
        let table = (0..threshold + period).map(value).collect();
        Ok(AffinePeriodic { threshold, period, shift, table }.canonical())
    }
}

/// A finite expression denoting a total map ℕ → ℕ.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum MapExpr {
    Affine(AffinePeriodic),
    /// `z ↦ x` where `z = pair(x, y)`.
    CantorProj,
    /// Apply `first`, then `second`.
    Compose(Box<MapExpr>, Box<MapExpr>),
}

impl From<AffinePeriodic> for MapExpr {
    fn from(ap: AffinePeriodic) -> Self {
        MapExpr::Affine(ap)
    }
}

/// `pair(x, y) = (x + y)(x + y + 1)/2 + y`.
pub fn pair(x: u64, y: u64) -> u64 {
    let w = x + y;
    w * (w + 1) / 2 + y
}

pub fn unpair(z: u64) -> (u64, u64) {
    let mut w = ((8.0 * z as f64 + 1.0).sqrt() as u64).saturating_sub(1) / 2;
    while w * (w + 1) / 2 > z {
        w -= 1;
    }
    while (w + 1) * (w + 2) / 2 <= z {
        w += 1;
    }
    let y = z - w * (w + 1) / 2;
    (w - y, y)
}

fn proj_image_of(set: &EpSet) -> Result<EpSet, TooLarge> {
    if set.is_finite() {
        return Ok(EpSet::finite(set.below().iter().map(|&z| unpair(z).0)));
    }
    let (start, m) = (set.start(), set.period());
    let in_tail = |z: u64| set.residues().binary_search(&(z % m)).is_ok();
    // pair(x, y) mod m depends only on x and y mod 2m, and pair(x, y) ≥ x.
    let period = 2 * m;
    EpSet::from_parts(
        start,
        period,
        |x| {
            let mut y = 0;
            while pair(x, y) < start {
                if set.contains(pair(x, y)) {
                    return true;
                }
                y += 1;
            }
            (y..y + period).any(|y| in_tail(pair(x, y)))
        },
        |r| (0..period).any(|y| in_tail(pair(r, y))),
    )
}

impl MapExpr {
    pub fn compose(first: MapExpr, second: MapExpr) -> MapExpr {
        MapExpr::Compose(Box::new(first), Box::new(second))
    }

    /// Left-to-right composite of a nonempty chain.
    pub fn chain<I: IntoIterator<Item = MapExpr>>(maps: I) -> MapExpr {
        maps.into_iter().reduce(MapExpr::compose).expect("empty chain")
    }

    pub fn eval(&self, x: u64) -> u64 {
        match self {
            MapExpr::Affine(ap) => ap.eval(x),
            MapExpr::CantorProj => unpair(x).0,
            MapExpr::Compose(a, b) => b.eval(a.eval(x)),
        }
    }

    /// Affine-periodic normal form, or `None` when a projection occurs.
    pub fn normalize(&self) -> Option<AffinePeriodic> {
        match self {
            MapExpr::Affine(ap) => Some(ap.canonical()),
            MapExpr::CantorProj => None,
            MapExpr::Compose(a, b) => Some(a.normalize()?.then(&b.normalize()?)),
        }
    }

    pub fn contains_projection(&self) -> bool {
        match self {
            MapExpr::Affine(_) => false,
            MapExpr::CantorProj => true,
            MapExpr::Compose(a, b) => a.contains_projection() || b.contains_projection(),
        }
    }

    /// Image of an eventually periodic set, exact for every expression.
    pub fn image_of(&self, set: &EpSet) -> Result<EpSet, TooLarge> {
        match self {
            MapExpr::Affine(ap) => ap.image_of(set),
            MapExpr::CantorProj => proj_image_of(set),
            MapExpr::Compose(a, b) => b.image_of(&a.image_of(set)?),
        }
    }

    pub fn image(&self) -> Result<EpSet, TooLarge> {
        match self.normalize() {
            Some(ap) => ap.image_of(&EpSet::naturals()),
            None => self.image_of(&EpSet::naturals()),
        }
    }

    /// Whether `y` lies in the image.
    pub fn hits(&self, y: u64) -> Tri {
        match self.image() {
            Ok(image) => Tri::from(image.contains(y)),
            Err(_) => match self.fiber(y, DEFAULT_CAP) {
                FiberReport::Unknown(found) if found.is_empty() => Tri::Unknown,
                report => Tri::from(!report.is_empty()),
            },
        }
    }

    pub fn certify(&self) -> Certificate {
        if let Some(ap) = self.normalize() {
            return ap.certificate();
        }
        match self {
            MapExpr::Affine(ap) => ap.certificate(),
            MapExpr::CantorProj => Certificate::from_exact(Card::ZERO, Card::Aleph0, Card::Aleph0, Tri::No),
            MapExpr::Compose(a, b) => {
                let (f, g) = (a.certify(), b.certify());
                let mut d = compose_defect(f.d, g.c, g.d, g.inj);
                let c = compose_collapse(f.c, f.d, g.c, f.surj);
                let mut kinf = compose_kinf(f.kinf, g.kinf);
                let mut fin_image = match f.fin_image | g.fin_image {
                    // An infinite image stays infinite under a map without infinite fibers.
                    Tri::No if g.kinf.is_zero().is_yes() => Tri::No,
                    Tri::No => Tri::Unknown,
                    decided => decided,
                };
                if let Ok(image) = self.image() {
                    let exact = CardInterval::exact(image.complement_cardinality());
                    d = d.intersect(&exact).expect("image analysis contradicts composition rules");
                    fin_image = Tri::from(image.is_finite());
                    if let Card::Fin(size) = image.cardinality() {
                        let bound = CardInterval::new(Card::Fin(1), Card::Fin(size));
                        kinf = kinf.intersect(&bound).expect("finite image without an infinite fiber");
                    }
                }
                Certificate::from_intervals(d, c, kinf, fin_image)
            }
        }
    }

    /// `y f⁻¹`, exact for normalizable maps and the projection.
    pub fn fiber(&self, y: u64, cap: u64) -> FiberReport {
        assert!(cap >= 1, "fiber cap must be positive");
        if let Some(ap) = self.normalize() {
            return ap.fiber(y);
        }
        if *self == MapExpr::CantorProj {
            return FiberReport::Infinite(InfiniteSet::Column(y));
        }
        if let Ok(image) = self.image() {
            if !image.contains(y) {
                return FiberReport::Finite(Vec::new());
            }
        }
        FiberReport::Unknown((0..cap).filter(|&x| self.eval(x) == y).collect())
    }

    /// A semigroup inverse `e′` with `e e′ e = e` and `e′ e e′ = e′`.
    pub fn invert(&self) -> Result<MapExpr, InvertError> {
        match self.normalize() {
            Some(ap) => Ok(MapExpr::Affine(ap.inverse()?)),
            None => Err(InvertError::NotInvertibleInClass(self.clone())),
        }
    }

    pub fn window_stats(&self, window: u64) -> WindowReport {
        assert!(window >= 1, "window must be positive");
        let mut fibers: BTreeMap<u64, u64> = BTreeMap::new();
        for x in 0..window {
            *fibers.entry(self.eval(x)).or_default() += 1;
        }
        let hit: Vec<u64> = fibers.keys().copied().take_while(|&y| y < window).collect();
        let missed = (0..window).filter(|y| !fibers.contains_key(y)).collect();
        let collisions = window - fibers.len() as u64;
        let mut histogram = BTreeMap::new();
        for &size in fibers.values() {
            *histogram.entry(size).or_default() += 1;
        }
        WindowReport { window, hit, missed, collisions, fibers, histogram }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum InvertError {
    #[error("no inverse of {0} is representable in the expression class")]
    NotInvertibleInClass(MapExpr),
    #[error(transparent)]
    TooLarge(#[from] TooLarge),
}

/// Cardinal parameters of a map: defect `d`, collapse `c`, infinite
/// contraction index `k(·, ℵ₀)`, and membership in the finite-image ideal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub inj: Tri,
    pub surj: Tri,
    pub d: CardInterval,
    pub c: CardInterval,
    pub kinf: CardInterval,
    #[serde(rename = "finImage")]
    pub fin_image: Tri,
}

impl Certificate {
    fn from_exact(d: Card, c: Card, kinf: Card, fin_image: Tri) -> Self {
        Self::from_intervals(d.into(), c.into(), kinf.into(), fin_image)
    }

    /// Derives the injectivity and surjectivity flags and enforces the
    /// finite-image consequences `d = c = ℵ₀`.
    fn from_intervals(mut d: CardInterval, mut c: CardInterval, kinf: CardInterval, fin_image: Tri) -> Self {
        if fin_image.is_yes() {
            d = d.intersect(&CardInterval::ALEPH0).expect("finite image with finite defect");
            c = c.intersect(&CardInterval::ALEPH0).expect("finite image with finite collapse");
        }
        Certificate { inj: c.is_zero(), surj: d.is_zero(), d, c, kinf, fin_image }
    }

    pub fn is_exact(&self) -> bool {
        self.d.is_exact() && self.c.is_exact() && self.kinf.is_exact() && self.fin_image.is_decided()
    }

    /// `self` is at least as tight as `other` and compatible with it.
    pub fn refines(&self, other: &Certificate) -> bool {
        self.d.within(&other.d)
            && self.c.within(&other.c)
            && self.kinf.within(&other.kinf)
            && self.inj.refines(other.inj)
            && self.surj.refines(other.surj)
            && self.fin_image.refines(other.fin_image)
    }
}

/// An infinite set of naturals that can be enumerated.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum InfiniteSet {
    Periodic(EpSet),
    /// `{pair(x, y) : y ∈ ℕ}`.
    Column(u64),
}

impl InfiniteSet {
    pub fn iter(&self) -> Box<dyn Iterator<Item = u64> + '_> {
        match self {
            InfiniteSet::Periodic(set) => Box::new(set.iter()),
            InfiniteSet::Column(x) => Box::new((0..).map(move |y| pair(*x, y))),
        }
    }

    pub fn contains(&self, z: u64) -> bool {
        match self {
            InfiniteSet::Periodic(set) => set.contains(z),
            InfiniteSet::Column(x) => unpair(z).0 == *x,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum FiberReport {
    /// Exhaustive and sorted.
    Finite(Vec<u64>),
    Infinite(InfiniteSet),
    /// Preimages found below the search cap; not a proof of anything.
    Unknown(Vec<u64>),
}

impl FiberReport {
    pub fn is_empty(&self) -> bool {
        match self {
            FiberReport::Finite(v) | FiberReport::Unknown(v) => v.is_empty(),
            FiberReport::Infinite(_) => false,
        }
    }

    pub fn finite_len(&self) -> Option<u64> {
        match self {
            FiberReport::Finite(v) => Some(v.len() as u64),
            _ => None,
        }
    }

    /// Least preimage, when known.
    pub fn min(&self) -> Option<u64> {
        match self {
            FiberReport::Finite(v) => v.first().copied(),
            FiberReport::Infinite(set) => set.iter().next(),
            FiberReport::Unknown(_) => None,
        }
    }

    /// Whether the fiber is contained in `within`.
    pub fn subset_of(&self, within: &BTreeSet<u64>) -> Tri {
        match self {
            FiberReport::Finite(v) => Tri::from(v.iter().all(|x| within.contains(x))),
            FiberReport::Infinite(_) => Tri::No,
            FiberReport::Unknown(v) if v.iter().any(|x| !within.contains(x)) => Tri::No,
            FiberReport::Unknown(_) => Tri::Unknown,
        }
    }
}

/// Empirical behaviour of a map on the window `[0, window)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WindowReport {
    pub window: u64,
    /// Image of the window intersected with the window.
    pub hit: Vec<u64>,
    /// Points of the window not hit from the window.
    pub missed: Vec<u64>,
    /// `window − |image of the window|`.
    pub collisions: u64,
    /// Window-fiber size of every value hit from the window.
    pub fibers: BTreeMap<u64, u64>,
    /// Fiber size ↦ number of values with that window-fiber size.
    pub histogram: BTreeMap<u64, u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum ChainVerdict {
    Pass,
    /// The image of the window under `u₀′⋯u_{index−1}′` contains `point`,
    /// which is not in the image of `u_index`.
    HypothesisViolated {
        index: usize,
        point: u64,
    },
    /// Image membership of `point` in `u_index` could not be decided.
    Undetermined {
        index: usize,
        point: u64,
    },
    /// The composites failed an inverse law at `point`.
    ConclusionViolated {
        point: u64,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ChainError {
    #[error("pair {0} is not a pair of mutual inverses on the window")]
    InverseLawViolated(usize),
    #[error("empty chain")]
    Empty,
}

fn inverse_laws_hold(u: &MapExpr, v: &MapExpr, window: u64) -> Option<u64> {
    (0..window).find(|&x| {
        let ux = u.eval(x);
        let vx = v.eval(x);
        u.eval(v.eval(ux)) != ux || v.eval(u.eval(vx)) != vx
    })
}

/// Checks on `[0, window)` that `u₀′u₁′⋯u_n′` and `u_n⋯u₁u₀` are mutual
/// inverses whenever `Ω u₀′⋯u_{i−1}′ ⊆ Ω u_i` for every `i ≥ 1`.
pub fn chain_inverse_check(pairs: &[(MapExpr, MapExpr)], window: u64) -> Result<ChainVerdict, ChainError> {
    if pairs.is_empty() {
        return Err(ChainError::Empty);
    }
    for (i, (u, u_prime)) in pairs.iter().enumerate() {
        if inverse_laws_hold(u, u_prime, window).is_some() {
            return Err(ChainError::InverseLawViolated(i));
        }
    }
    let mut reached: BTreeSet<u64> = (0..window).collect();
    for i in 1..pairs.len() {
        reached = reached.iter().map(|&x| pairs[i - 1].1.eval(x)).collect();
        for &y in &reached {
            match pairs[i].0.hits(y) {
                Tri::Yes => {}
                Tri::No => return Ok(ChainVerdict::HypothesisViolated { index: i, point: y }),
                Tri::Unknown => return Ok(ChainVerdict::Undetermined { index: i, point: y }),
            }
        }
    }
    let forward = MapExpr::chain(pairs.iter().map(|(_, v)| v.clone()));
    let backward = MapExpr::chain(pairs.iter().rev().map(|(u, _)| u.clone()));
    match inverse_laws_hold(&forward, &backward, window) {
        None => Ok(ChainVerdict::Pass),
        Some(point) => Ok(ChainVerdict::ConclusionViolated { point }),
    }
}
