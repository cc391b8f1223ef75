//! Binary relations on `{0, …, n−1}` and the construction of the full
//! relation from two non-permutations and the symmetric group.

use std::collections::hash_map::Entry;
use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::{Serialize, Serializer};

/// Largest supported carrier size.
pub const MAX_N: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RelError {
    #[error("relations on {0} and {1} points cannot be composed")]
    DimensionMismatch(usize, usize),
    #[error("carrier size {0} outside 1..={MAX_N}")]
    BadSize(usize),
    #[error("malformed relation: {0}")]
    Parse(String),
    #[error("hypotheses fail: {0}")]
    HypothesisViolated(String),
}

/// A relation on `{0, …, n−1}`; row `i` occupies bits `8i..8i+8`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Relation {
    n: usize,
    bits: u64,
}

impl Relation {
    pub fn empty(n: usize) -> Result<Relation, RelError> {
        if n == 0 || n > MAX_N {
            return Err(RelError::BadSize(n));
        }
        Ok(Relation { n, bits: 0 })
    }

    pub fn from_pairs<I: IntoIterator<Item = (usize, usize)>>(n: usize, pairs: I) -> Result<Relation, RelError> {
        let mut r = Relation::empty(n)?;
        for (i, j) in pairs {
            if i >= n || j >= n {
                return Err(RelError::Parse(format!("pair ({i},{j}) outside {{0,…,{}}}", n - 1)));
            }
            r.bits |= 1 << (8 * i + j);
        }
        Ok(r)
    }

    /// The relation with matrix bits `code`, read row by row (bit `i·n + j`).
    pub fn from_code(n: usize, code: u64) -> Result<Relation, RelError> {
        let pairs = (0..n * n).filter(|k| code >> k & 1 == 1).map(|k| (k / n, k % n));
        Relation::from_pairs(n, pairs)
    }

    pub fn identity(n: usize) -> Result<Relation, RelError> {
        Relation::from_pairs(n, (0..n).map(|i| (i, i)))
    }

    pub fn full(n: usize) -> Result<Relation, RelError> {
        Relation::from_pairs(n, (0..n).flat_map(|i| (0..n).map(move |j| (i, j))))
    }

    /// The graph `{(i, images[i])}` of a map or permutation.
    pub fn graph(images: &[usize]) -> Result<Relation, RelError> {
        Relation::from_pairs(images.len(), images.iter().copied().enumerate())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Bit mask of `i ρ`.
    pub fn row(&self, i: usize) -> u8 {
        (self.bits >> (8 * i)) as u8
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.row(i) >> j & 1 == 1
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |i| (0..self.n).filter(move |&j| self.contains(i, j)).map(move |j| (i, j)))
    }

    pub fn compose(&self, other: &Relation) -> Result<Relation, RelError> {
        if self.n != other.n {
            return Err(RelError::DimensionMismatch(self.n, other.n));
        }
        Ok(self.then(other))
    }

    fn then(&self, other: &Relation) -> Relation {
        let mut bits = 0;
        for i in 0..self.n {
            let row = self.row(i);
            let out = (0..self.n).filter(|j| row >> j & 1 == 1).fold(0u8, |acc, j| acc | other.row(j));
            bits |= (out as u64) << (8 * i);
        }
        Relation { n: self.n, bits }
    }

    /// Image of a set (bit mask) under the relation.
    pub fn image(&self, set: u8) -> u8 {
        (0..self.n).filter(|i| set >> i & 1 == 1).fold(0, |acc, i| acc | self.row(i))
    }

    pub fn is_total(&self) -> bool {
        (0..self.n).all(|i| self.row(i) != 0)
    }

    pub fn inverse(&self) -> Relation {
        Relation::from_pairs(self.n, self.pairs().map(|(i, j)| (j, i))).expect("same carrier")
    }

    pub fn is_permutation(&self) -> bool {
        (0..self.n).all(|i| self.row(i).count_ones() == 1) && self.image(self.full_mask()) == self.full_mask()
    }

    pub fn is_full(&self) -> bool {
        (0..self.n).all(|i| self.row(i) == self.full_mask())
    }

    fn full_mask(&self) -> u8 {
        ((1u16 << self.n) - 1) as u8
    }

    /// Parses `{(0,0),(0,1)}` on the carrier `{0, …, n−1}`.
    pub fn parse(text: &str, n: usize) -> Result<Relation, RelError> {
        let bad = || RelError::Parse(text.to_owned());
        let body: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let inner = body.strip_prefix('{').and_then(|b| b.strip_suffix('}')).ok_or_else(bad)?;
        if inner.is_empty() {
            return Relation::empty(n);
        }
        let inner = inner.strip_prefix('(').and_then(|b| b.strip_suffix(')')).ok_or_else(bad)?;
        let pairs = inner
            .split("),(")
            .map(|p| {
                let (i, j) = p.split_once(',').ok_or_else(bad)?;
                Ok((i.parse().map_err(|_| bad())?, j.parse().map_err(|_| bad())?))
            })
            .collect::<Result<Vec<_>, RelError>>()?;
        Relation::from_pairs(n, pairs)
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs: Vec<String> = self.pairs().map(|(i, j)| format!("({i},{j})")).collect();
        write!(f, "{{{}}}", pairs.join(","))
    }
}

impl fmt::Debug for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Relation(n={}, {self})", self.n)
    }
}

impl Serialize for Relation {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// A letter of a word over `Sym(n) ∪ {ρ, σ}`; the derived order puts
/// permutations first (lexicographically), then `ρ`, then `σ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    Perm(Vec<usize>),
    Rho,
    Sigma,
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::Perm(images) => {
                let images: Vec<String> = images.iter().map(usize::to_string).collect();
                write!(f, "perm[{}]", images.join(","))
            }
            Letter::Rho => f.write_str("rho"),
            Letter::Sigma => f.write_str("sigma"),
        }
    }
}

impl Serialize for Letter {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct Word(pub Vec<Letter>);

impl Word {
    /// Left-to-right product with `ρ` and `σ` substituted.
    pub fn eval(&self, rho: &Relation, sigma: &Relation) -> Relation {
        let letter = |l: &Letter| match l {
            Letter::Perm(images) => Relation::graph(images).expect("permutation on the carrier"),
            Letter::Rho => *rho,
            Letter::Sigma => *sigma,
        };
        let mut letters = self.0.iter();
        let first = letter(letters.next().expect("nonempty word"));
        letters.fold(first, |acc, l| acc.then(&letter(l)))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letters: Vec<String> = self.0.iter().map(Letter::to_string).collect();
        f.write_str(&letters.join(" "))
    }
}

/// All permutations of `{0, …, n−1}` as image lists, in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..n).collect();
    loop {
        out.push(current.clone());
        // Next permutation in lexicographic order.
        let Some(i) = (1..n).rev().find(|&i| current[i - 1] < current[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| current[j] > current[i - 1]).expect("successor exists");
        current.swap(i - 1, j);
        current[i..].reverse();
    }
}

fn check_hypotheses(rho: &Relation, sigma: &Relation) -> Result<(), RelError> {
    if rho.n != sigma.n {
        return Err(RelError::DimensionMismatch(rho.n, sigma.n));
    }
    let failures: Vec<&str> = [
        (!rho.is_total(), "rho is not total"),
        (!sigma.inverse().is_total(), "sigma^-1 is not total"),
        (rho.is_permutation(), "rho is a permutation"),
        (sigma.is_permutation(), "sigma is a permutation"),
    ]
    .into_iter()
    .filter_map(|(failed, why)| failed.then_some(why))
    .collect();
    if failures.is_empty() {
        Ok(())
    } else {
        Err(RelError::HypothesisViolated(failures.join(", ")))
    }
}

/// Shortest word evaluating to `n × n`; ties go to the lexicographically
/// least word.
pub fn bfin_witness(rho: &Relation, sigma: &Relation) -> Result<Word, RelError> {
    check_hypotheses(rho, sigma)?;
    let letters: Vec<(Letter, Relation)> = permutations(rho.n)
        .into_iter()
        .map(|p| {
            let r = Relation::graph(&p).expect("permutation on the carrier");
            (Letter::Perm(p), r)
        })
        .chain([(Letter::Rho, *rho), (Letter::Sigma, *sigma)])
        .collect();
    // Breadth-first search keeps, for each relation, the first word reaching
    // it; prefixes of least words are least, so pruning is safe.
    let mut reached: HashMap<Relation, (Option<Relation>, usize)> = HashMap::new();
    let mut queue = VecDeque::new();
    let spell = |reached: &HashMap<Relation, (Option<Relation>, usize)>, mut at: Relation| {
        let mut word = Vec::new();
        loop {
            let (prev, k) = reached[&at];
            word.push(letters[k].0.clone());
            match prev {
                Some(p) => at = p,
                None => break,
            }
        }
        word.reverse();
        Word(word)
    };
    for (k, (_, r)) in letters.iter().enumerate() {
        if !reached.contains_key(r) {
            reached.insert(*r, (None, k));
            queue.push_back(*r);
        }
    }
    while let Some(current) = queue.pop_front() {
        if current.is_full() {
            return Ok(spell(&reached, current));
        }
        for (k, (_, r)) in letters.iter().enumerate() {
            let next = current.then(r);
            if let Entry::Vacant(e) = reached.entry(next) {
                e.insert((Some(current), k));
                queue.push_back(next);
            }
        }
    }
    unreachable!("the generated semigroup always contains the full relation")
}

/// Least-cardinality `A` with `Aσ` full, least as a bit mask among those.
fn least_covering_set(sigma: &Relation) -> u8 {
    let full = sigma.full_mask();
    (1..=full).filter(|&a| sigma.image(a) == full).min_by_key(|&a| (a.count_ones(), a)).expect("sigma^-1 is total")
}

fn members(set: u8, n: usize) -> Vec<usize> {
    (0..n).filter(|i| set >> i & 1 == 1).collect()
}

/// Permutation sending `from[k]` to `to[k]` and the remaining points to the
/// remaining points in increasing order.
fn perm_sending(from: &[usize], to: &[usize], n: usize) -> Vec<usize> {
    let mut images = vec![usize::MAX; n];
    for (&x, &y) in from.iter().zip(to) {
        images[x] = y;
    }
    let mut free = (0..n).filter(|y| !to.contains(y));
    for slot in images.iter_mut().filter(|v| **v == usize::MAX) {
        *slot = free.next().expect("as many free targets as free points");
    }
    images
}

/// A word whose relation has row 0 equal to `{0, …, n−1}`.
fn fill_row_zero(rho: &Relation, sigma: &Relation) -> Vec<Letter> {
    let n = rho.n;
    let full = rho.full_mask();
    let mut word = vec![Letter::Rho];
    let mut reached = rho.row(0);
    let a = least_covering_set(sigma);
    let a_members = members(a, n);
    let branching = *a_members
        .iter()
        .find(|&&i| sigma.row(i).count_ones() >= 2)
        .expect("a non-permutation covering set has a branching point");
    let a_ordered: Vec<usize> =
        std::iter::once(branching).chain(a_members.iter().copied().filter(|&i| i != branching)).collect();
    while reached != full {
        let r = members(reached, n);
        let perm = if r.len() >= a_ordered.len() {
            perm_sending(&r[..a_ordered.len()], &a_ordered, n)
        } else {
            perm_sending(&r, &a_ordered[..r.len()], n)
        };
        reached = sigma.image(Relation::graph(&perm).expect("permutation").image(reached));
        word.push(Letter::Perm(perm));
        word.push(Letter::Sigma);
    }
    word
}

fn invert_perm(images: &[usize]) -> Vec<usize> {
    let mut inverse = vec![0; images.len()];
    for (i, &j) in images.iter().enumerate() {
        inverse[j] = i;
    }
    inverse
}

/// The constructive procedure: grow row 0 of `ρ a₀ σ a₁ σ ⋯` to the full set,
/// do the same for `(σ⁻¹, ρ⁻¹)`, and prepend the inverse of the second word.
pub fn bfin_greedy(rho: &Relation, sigma: &Relation) -> Result<Word, RelError> {
    check_hypotheses(rho, sigma)?;
    let forward = fill_row_zero(rho, sigma);
    let dual = fill_row_zero(&sigma.inverse(), &rho.inverse());
    let mut word: Vec<Letter> = dual
        .into_iter()
        .rev()
        .map(|l| match l {
            Letter::Perm(p) => Letter::Perm(invert_perm(&p)),
            Letter::Rho => Letter::Sigma,
            Letter::Sigma => Letter::Rho,
        })
        .collect();
    word.extend(forward);
    Ok(Word(word))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(n: usize, text: &str) -> Relation {
        Relation::parse(text, n).unwrap()
    }

    #[test]
    fn composition_examples() {
        let rho = rel(2, "{(0,0),(0,1),(1,0)}");
        assert_eq!(Relation::identity(2).unwrap().compose(&rho).unwrap(), rho);
        assert_eq!(rel(2, "{(0,1)}").compose(&rel(2, "{(1,0)}")).unwrap(), rel(2, "{(0,0)}"));
        assert_eq!(rho.compose(&rho).unwrap(), Relation::full(2).unwrap());
        assert_eq!(rho.compose(&Relation::identity(3).unwrap()), Err(RelError::DimensionMismatch(2, 3)));
    }

    #[test]
    fn totality_and_inverse() {
        assert!(rel(2, "{(0,0),(1,0)}").is_total());
        assert!(!rel(2, "{(0,0)}").is_total());
        assert_eq!(rel(2, "{(0,1)}").inverse(), rel(2, "{(1,0)}"));
        assert_eq!(Relation::full(2).unwrap().inverse(), Relation::full(2).unwrap());
    }

    #[test]
    fn permutation_detection() {
        assert!(rel(2, "{(0,1),(1,0)}").is_permutation());
        assert!(!rel(2, "{(0,0),(1,0)}").is_permutation());
        assert!(!rel(2, "{(0,0),(0,1)}").is_permutation());
        assert_eq!(permutations(3).len(), 6);
        assert_eq!(permutations(3)[1], vec![0, 2, 1]);
    }

    #[test]
    fn parse_and_print() {
        let r = rel(3, " { (1,0), (0,0),(0,1) } ");
        assert_eq!(r.to_string(), "{(0,0),(0,1),(1,0)}");
        assert_eq!(rel(2, "{}"), Relation::empty(2).unwrap());
        assert!(Relation::parse("{(0,2)}", 2).is_err());
        assert!(Relation::parse("(0,1)", 2).is_err());
        assert!(Relation::parse("{(0,x)}", 2).is_err());
    }

    #[test]
    fn witness_examples() {
        let rho = rel(2, "{(0,0),(0,1),(1,0)}");
        let word = bfin_witness(&rho, &rho).unwrap();
        assert_eq!(word, Word(vec![Letter::Rho, Letter::Rho]));
        assert_eq!(word.to_string(), "rho rho");

        let swap = rel(2, "{(0,1),(1,0)}");
        assert!(matches!(bfin_witness(&swap, &rho), Err(RelError::HypothesisViolated(_))));
        assert!(matches!(bfin_greedy(&swap, &rho), Err(RelError::HypothesisViolated(_))));

        let rho = rel(3, "{(0,0),(0,1),(1,0),(2,0)}");
        let sigma = rho.inverse();
        let word = bfin_witness(&rho, &sigma).unwrap();
        assert!(word.len() <= 6);
        assert!(word.eval(&rho, &sigma).is_full());
    }

    #[test]
    fn greedy_examples() {
        let rho = rel(2, "{(0,0),(0,1),(1,0)}");
        assert!(bfin_greedy(&rho, &rho).unwrap().eval(&rho, &rho).is_full());
        let rho = rel(3, "{(0,0),(0,1),(1,0),(2,0)}");
        let sigma = rho.inverse();
        assert!(bfin_greedy(&rho, &sigma).unwrap().eval(&rho, &sigma).is_full());
    }

    #[test]
    fn witness_is_shortest() {
        // Brute force over all words of length < |witness| for a 3-point instance.
        let rho = rel(3, "{(0,0),(0,1),(1,2),(2,2)}");
        let sigma = rel(3, "{(0,0),(1,0),(2,1),(2,2)}");
        let word = bfin_witness(&rho, &sigma).unwrap();
        let mut alphabet: Vec<Letter> = permutations(3).into_iter().map(Letter::Perm).collect();
        alphabet.extend([Letter::Rho, Letter::Sigma]);
        let mut words: Vec<Vec<Letter>> = vec![vec![]];
        for _ in 1..word.len() {
            words = words
                .iter()
                .flat_map(|w| alphabet.iter().map(move |l| [w.clone(), vec![l.clone()]].concat()))
                .collect();
            assert!(words.iter().all(|w| !Word(w.clone()).eval(&rho, &sigma).is_full()));
        }
    }
}
