//! Brute-force engine for the full transformation monoid `T_n` on
//! `{0, …, n−1}`: closures, maximal subgroups of `S_n`, and the maximal
//! subsemigroups of `T_n` with a completeness certificate.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::relcalc::permutations;

/// Largest `n` for closures and generation checks.
pub const MAX_CLOSURE_N: usize = 7;
/// Largest `n` for subgroup enumeration in `S_n`.
pub const MAX_SUBGROUP_N: usize = 5;
/// Largest `n` for the maximal-subsemigroup pipeline.
pub const MAX_PIPELINE_N: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FinError {
    #[error("n = {n} outside the supported range {min}..={max}")]
    SizeOutOfRange { n: usize, min: usize, max: usize },
    #[error("{0:?} is not a map on {{0, …, {n}}}", n = .0.len().saturating_sub(1))]
    NotAMap(Vec<usize>),
    #[error("maps on {0} and {1} points mixed")]
    Mismatch(usize, usize),
    #[error("a transversal of the candidate complements closes to a proper subsemigroup: {0:?}")]
    CompletenessFailure(Vec<FinMap>),
}

fn check_range(n: usize, min: usize, max: usize) -> Result<(), FinError> {
    if (min..=max).contains(&n) {
        Ok(())
    } else {
        Err(FinError::SizeOutOfRange { n, min, max })
    }
}

/// A total map on `{0, …, n−1}`, composed left to right.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct FinMap {
    images: Vec<usize>,
}

impl FinMap {
    pub fn new(images: Vec<usize>) -> Result<FinMap, FinError> {
        let n = images.len();
        if n == 0 || images.iter().any(|&v| v >= n) {
            return Err(FinError::NotAMap(images));
        }
        Ok(FinMap { images })
    }

    pub fn identity(n: usize) -> FinMap {
        FinMap { images: (0..n).collect() }
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    /// Apply `self`, then `other`.
    pub fn then(&self, other: &FinMap) -> FinMap {
        FinMap { images: self.images.iter().map(|&x| other.images[x]).collect() }
    }

    pub fn rank(&self) -> usize {
        let mut seen = vec![false; self.n()];
        self.images.iter().for_each(|&v| seen[v] = true);
        seen.iter().filter(|&&s| s).count()
    }

    pub fn is_permutation(&self) -> bool {
        self.rank() == self.n()
    }

    /// Position in the base-`n` enumeration of `T_n`, most significant digit first.
    pub fn index(&self) -> usize {
        let n = self.n();
        self.images.iter().fold(0, |acc, &v| acc * n + v)
    }

    pub fn from_index(n: usize, mut index: usize) -> FinMap {
        let mut images = vec![0; n];
        for slot in images.iter_mut().rev() {
            *slot = index % n;
            index /= n;
        }
        FinMap { images }
    }
}

impl fmt::Display for FinMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let images: Vec<String> = self.images.iter().map(usize::to_string).collect();
        write!(f, "[{}]", images.join(","))
    }
}

impl std::str::FromStr for FinMap {
    type Err = FinError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let inner = s.trim().strip_prefix('[').and_then(|r| r.strip_suffix(']'));
        let images = inner
            .map(|body| body.split(',').map(|t| t.trim().parse::<usize>()).collect::<Result<Vec<_>, _>>())
            .and_then(Result::ok)
            .ok_or_else(|| FinError::NotAMap(Vec::new()))?;
        FinMap::new(images)
    }
}

/// Subsets of `T_n` as bit sets over map indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(size: usize) -> Bits {
        Bits(vec![0; size.div_ceil(64)])
    }

    fn insert(&mut self, i: usize) -> bool {
        let (w, b) = (i / 64, i % 64);
        let fresh = self.0[w] >> b & 1 == 0;
        self.0[w] |= 1 << b;
        fresh
    }

    fn contains(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(w, &word)| (0..64).filter(move |b| word >> b & 1 == 1).map(move |b| w * 64 + b))
    }
}

/// `T_n` with maps stored as digit vectors for fast composition.
struct Monoid {
    n: usize,
    size: usize,
}

impl Monoid {
    fn new(n: usize) -> Monoid {
        Monoid { n, size: n.pow(n as u32) }
    }

    fn compose(&self, a: usize, b: &[usize]) -> usize {
        // Digits of `a` from the least significant end are images of n−1, …, 0.
        let mut a = a;
        let mut out = 0;
        let mut weight = 1;
        for _ in 0..self.n {
            out += b[a % self.n] * weight;
            a /= self.n;
            weight *= self.n;
        }
        out
    }

    /// Least subset containing `seed` closed under right multiplication by
    /// `gens`; with `seed ⊆ ⟨gens⟩` this is the semigroup `⟨gens⟩`.
    fn close(&self, seed: &Bits, gens: &[usize]) -> Bits {
        let digits: Vec<Vec<usize>> = gens.iter().map(|&g| FinMap::from_index(self.n, g).images).collect();
        let mut set = seed.clone();
        let mut stack: Vec<usize> = seed.iter().collect();
        while let Some(x) = stack.pop() {
            for g in &digits {
                let y = self.compose(x, g);
                if set.insert(y) {
                    stack.push(y);
                }
            }
        }
        set
    }

    fn generated(&self, gens: &[usize]) -> Bits {
        let mut seed = Bits::new(self.size);
        gens.iter().for_each(|&g| {
            seed.insert(g);
        });
        self.close(&seed, gens)
    }
}

fn indices(n: usize, maps: &[FinMap]) -> Result<Vec<usize>, FinError> {
    maps.iter().map(|m| if m.n() == n { Ok(m.index()) } else { Err(FinError::Mismatch(n, m.n())) }).collect()
}

fn maps_of(n: usize, bits: &Bits) -> Vec<FinMap> {
    bits.iter().map(|i| FinMap::from_index(n, i)).collect()
}

/// The subsemigroup generated by `gens`, sorted.
pub fn closure(n: usize, gens: &[FinMap]) -> Result<Vec<FinMap>, FinError> {
    check_range(n, 1, MAX_CLOSURE_N)?;
    let monoid = Monoid::new(n);
    Ok(maps_of(n, &monoid.generated(&indices(n, gens)?)))
}

/// An `n`-cycle and a transposition.
pub fn symmetric_generators(n: usize) -> Vec<FinMap> {
    let cycle = FinMap { images: (0..n).map(|i| (i + 1) % n).collect() };
    let mut swap: Vec<usize> = (0..n).collect();
    if n >= 2 {
        swap.swap(0, 1);
    }
    vec![cycle, FinMap { images: swap }]
}

/// Whether `S_n ∪ extra` generates `T_n`.
pub fn generates_tn(n: usize, extra: &[FinMap]) -> Result<bool, FinError> {
    check_range(n, 1, MAX_CLOSURE_N)?;
    let mut gens = symmetric_generators(n);
    gens.extend(extra.iter().cloned());
    let monoid = Monoid::new(n);
    Ok(monoid.generated(&indices(n, &gens)?).count() == monoid.size)
}

/// All maximal subgroups of `S_n`, largest first.
pub fn maximal_subgroups_symn(n: usize) -> Result<Vec<Vec<FinMap>>, FinError> {
    check_range(n, 2, MAX_SUBGROUP_N)?;
    let perms: Vec<FinMap> = permutations(n).into_iter().map(|images| FinMap { images }).collect();
    let position: HashMap<FinMap, usize> = perms.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    let table: Vec<Vec<usize>> = perms.iter().map(|a| perms.iter().map(|b| position[&a.then(b)]).collect()).collect();
    let order = perms.len();
    let close = |mut group: u128, extra: usize| {
        let mut gens: Vec<usize> = (0..order).filter(|&i| group >> i & 1 == 1).collect();
        gens.push(extra);
        group |= 1 << extra;
        let mut stack = gens.clone();
        while let Some(x) = stack.pop() {
            for &g in &gens {
                let y = table[x][g];
                if group >> y & 1 == 0 {
                    group |= 1 << y;
                    stack.push(y);
                }
            }
        }
        group
    };
    // Every subgroup arises from the trivial group by adjoining elements one at a time.
    let whole: u128 = (1u128 << order) - 1;
    let mut subgroups = vec![1u128 << position[&FinMap::identity(n)]];
    let mut frontier = subgroups.clone();
    while let Some(h) = frontier.pop() {
        for g in (0..order).filter(|&g| h >> g & 1 == 0) {
            let k = close(h, g);
            if !subgroups.contains(&k) {
                subgroups.push(k);
                frontier.push(k);
            }
        }
    }
    let proper: Vec<u128> = subgroups.into_iter().filter(|&h| h != whole).collect();
    let mut maximal: Vec<u128> =
        proper.iter().copied().filter(|&h| !proper.iter().any(|&k| k != h && k & h == h)).collect();
    maximal.sort_by_key(|&h| (std::cmp::Reverse(h.count_ones()), h));
    Ok(maximal
        .into_iter()
        .map(|h| (0..order).filter(|&i| h >> i & 1 == 1).map(|i| perms[i].clone()).collect())
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubsemigroupReport {
    pub description: String,
    pub size: usize,
    pub elements: Vec<FinMap>,
    #[serde(rename = "isClosed")]
    pub is_closed: bool,
    #[serde(rename = "isMaximal")]
    pub is_maximal: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CompletenessReport {
    pub complete: bool,
    /// Number of tuples choosing one element outside each candidate.
    pub tuples: u128,
    /// Distinct closures reached by those tuples.
    #[serde(rename = "distinctClosures")]
    pub distinct_closures: usize,
    /// A tuple whose closure is proper, when one exists.
    pub counterexample: Option<Vec<FinMap>>,
}

/// Checks that every tuple picking one element outside each candidate
/// generates `T_n`: then a proper subsemigroup lies inside some candidate.
///
/// Tuples are folded one coordinate at a time, merging partial tuples with
/// equal closures, so the work is bounded by the number of distinct closures.
pub fn completeness_check(n: usize, candidates: &[Vec<FinMap>]) -> Result<CompletenessReport, FinError> {
    check_range(n, 1, MAX_PIPELINE_N)?;
    let monoid = Monoid::new(n);
    // Closure, the tuple count reaching it, and one tuple reaching it.
    let mut states: HashMap<Bits, (u128, Vec<usize>)> = HashMap::new();
    states.insert(Bits::new(monoid.size), (1, Vec::new()));
    for candidate in candidates {
        let inside: Vec<usize> = indices(n, candidate)?;
        let outside: Vec<usize> = (0..monoid.size).filter(|i| !inside.contains(i)).collect();
        let mut next: HashMap<Bits, (u128, Vec<usize>)> = HashMap::new();
        for (closed, (count, tuple)) in &states {
            for &x in &outside {
                let mut gens = tuple.clone();
                gens.push(x);
                let mut seed = closed.clone();
                seed.insert(x);
                let reached = monoid.close(&seed, &gens);
                next.entry(reached).and_modify(|(c, _)| *c += count).or_insert((*count, gens));
            }
        }
        states = next;
    }
    let counterexample = states
        .iter()
        .filter(|(closed, _)| closed.count() < monoid.size)
        .map(|(_, (_, tuple))| tuple.iter().map(|&i| FinMap::from_index(n, i)).collect::<Vec<_>>())
        .min();
    Ok(CompletenessReport {
        complete: counterexample.is_none(),
        tuples: states.values().map(|(c, _)| c).sum(),
        distinct_closures: states.len(),
        counterexample,
    })
}

fn is_closed(monoid: &Monoid, set: &Bits) -> bool {
    let members: Vec<usize> = set.iter().collect();
    members
        .iter()
        .all(|&a| members.iter().all(|&b| set.contains(monoid.compose(a, &FinMap::from_index(monoid.n, b).images))))
}

fn is_maximal(monoid: &Monoid, set: &Bits) -> bool {
    let members: Vec<usize> = set.iter().collect();
    set.count() < monoid.size
        && (0..monoid.size).filter(|&s| !set.contains(s)).all(|s| {
            let mut gens = members.clone();
            gens.push(s);
            let mut seed = set.clone();
            seed.insert(s);
            monoid.close(&seed, &gens).count() == monoid.size
        })
}

/// The maximal subsemigroups of `T_n`: `M ∪ (T_n ∖ S_n)` for each maximal
/// subgroup `M` of `S_n`, and `S_n` together with all maps of rank at most
/// `n − 2`. Each is verified closed and maximal, and the list is certified
/// complete.
pub fn maximal_subsemigroups_tn(n: usize) -> Result<Vec<SubsemigroupReport>, FinError> {
    check_range(n, 2, MAX_PIPELINE_N)?;
    let monoid = Monoid::new(n);
    let all: Vec<FinMap> = (0..monoid.size).map(|i| FinMap::from_index(n, i)).collect();
    let mut candidates: Vec<(String, Vec<FinMap>)> = Vec::new();
    for group in maximal_subgroups_symn(n)? {
        let description = format!("maximal subgroup of order {} with all non-permutations", group.len());
        let mut elements: Vec<FinMap> = all.iter().filter(|m| !m.is_permutation()).cloned().collect();
        elements.extend(group);
        elements.sort();
        candidates.push((description, elements));
    }
    let rank_ideal: Vec<FinMap> = all.iter().filter(|m| m.rank() != n - 1).cloned().collect();
    candidates.push((format!("S_{n} with all maps of rank at most {}", n - 2), rank_ideal));

    let mut reports = Vec::new();
    for (description, elements) in candidates {
        let mut set = Bits::new(monoid.size);
        for m in &elements {
            set.insert(m.index());
        }
        reports.push(SubsemigroupReport {
            description,
            size: elements.len(),
            is_closed: is_closed(&monoid, &set),
            is_maximal: is_maximal(&monoid, &set),
            elements,
        });
    }
    let verified: Vec<Vec<FinMap>> =
        reports.iter().filter(|r| r.is_closed && r.is_maximal).map(|r| r.elements.clone()).collect();
    let completeness = completeness_check(n, &verified)?;
    if let Some(tuple) = completeness.counterexample {
        return Err(FinError::CompletenessFailure(tuple));
    }
    reports.retain(|r| r.is_closed && r.is_maximal);
    Ok(reports)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn map(images: &[usize]) -> FinMap {
        FinMap::new(images.to_vec()).unwrap()
    }

    #[test]
    fn index_round_trip() {
        for i in 0..256 {
            assert_eq!(FinMap::from_index(4, i).index(), i);
        }
        assert_eq!(map(&[1, 0, 0]).to_string(), "[1,0,0]");
        assert_eq!("[1, 0,0]".parse::<FinMap>().unwrap(), map(&[1, 0, 0]));
        assert!("[3,0,0]".parse::<FinMap>().is_err());
    }

    #[test]
    fn composition_is_left_to_right() {
        let a = map(&[1, 2, 0]);
        let b = map(&[0, 0, 2]);
        assert_eq!(a.then(&b), map(&[0, 2, 0]));
        let monoid = Monoid::new(3);
        assert_eq!(monoid.compose(a.index(), b.images()), a.then(&b).index());
    }

    #[test]
    fn closure_examples() {
        assert_eq!(closure(3, &[FinMap::identity(3)]).unwrap(), vec![FinMap::identity(3)]);
        assert_eq!(closure(3, &[map(&[1, 2, 0]), map(&[1, 0, 2])]).unwrap().len(), 6);
        let mut gens = symmetric_generators(3);
        gens.push(map(&[0, 0, 2]));
        assert_eq!(closure(3, &gens).unwrap().len(), 27);
        assert!(closure(8, &[]).is_err());
        assert_eq!(closure(3, &[map(&[0, 1])]), Err(FinError::Mismatch(3, 2)));
    }

    #[test]
    fn generation_examples() {
        assert!(generates_tn(3, &[map(&[0, 0, 2])]).unwrap());
        assert!(!generates_tn(3, &[]).unwrap());
        assert!(!generates_tn(3, &[map(&[1, 1, 1])]).unwrap());
    }

    #[test]
    fn maximal_subgroup_counts() {
        let counts: Vec<usize> = (2..=4).map(|n| maximal_subgroups_symn(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 4, 8]);
        let orders: Vec<usize> = maximal_subgroups_symn(4).unwrap().iter().map(Vec::len).collect();
        assert_eq!(orders, vec![12, 8, 8, 8, 6, 6, 6, 6]);
    }

    #[test]
    fn completeness_examples() {
        let n2 = maximal_subsemigroups_tn(2).unwrap();
        let sets: Vec<Vec<FinMap>> = n2.iter().map(|r| r.elements.clone()).collect();
        let report = completeness_check(2, &sets).unwrap();
        assert!(report.complete);
        assert_eq!(report.tuples, 2);

        let n3 = maximal_subsemigroups_tn(3).unwrap();
        let sets: Vec<Vec<FinMap>> = n3.iter().map(|r| r.elements.clone()).collect();
        let report = completeness_check(3, &sets).unwrap();
        assert!(report.complete);
        assert_eq!(report.tuples, 3456);

        let partial = &sets[..sets.len() - 1];
        assert!(!completeness_check(3, partial).unwrap().complete);
    }
}
