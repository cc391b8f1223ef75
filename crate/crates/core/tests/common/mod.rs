//! Shared generators and a brute-force oracle used by the integration tests.
#![allow(dead_code)]

use std::collections::HashMap;

use maxsub_core::{AffinePeriodic, Card, MapExpr};
use rand::seq::SliceRandom;
use rand::Rng;

/// Parameters of an affine-periodic map computed by counting on windows.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Exact {
    pub d: Card,
    pub c: Card,
    pub kinf: Card,
    pub fin_image: bool,
}

/// Counts on two consecutive windows far enough out that the per-period
/// counts have become constant: a count that still grows is ℵ₀, otherwise
/// it has stabilised at its finite value.
///
/// On `[N + kp, N + (k+1)p)` the map takes the values `t_r + ks`. Once
/// `ks` exceeds every table entry, a point there can only collide with
/// points a bounded number of periods back, and no value `≤ max t` is hit.
pub fn oracle(f: &AffinePeriodic) -> Exact {
    let (n, p, s) = (f.threshold(), f.period(), f.shift());
    let top = f.table().iter().copied().max().unwrap_or(0);

    let missed_below = |y_end: u64| {
        let x_end = y_end.checked_div(s).map_or(n + p, |k| n + p * (k + 2));
        let mut hit = vec![false; y_end as usize];
        for x in 0..x_end {
            let y = f.eval(x);
            if y < y_end {
                hit[y as usize] = true;
            }
        }
        hit.iter().filter(|h| !**h).count() as u64
    };
    let y1 = top + 1;
    let d = if missed_below(y1 + s.max(1)) > missed_below(y1) { Card::Aleph0 } else { Card::Fin(missed_below(y1)) };

    let x1 = n + p * (top + 2);
    let x2 = x1 + p;
    let mut fibers: HashMap<u64, u64> = HashMap::new();
    for x in 0..x1 {
        *fibers.entry(f.eval(x)).or_default() += 1;
    }
    let collisions1 = x1 - fibers.len() as u64;
    let before = fibers.clone();
    for x in x1..x2 {
        *fibers.entry(f.eval(x)).or_default() += 1;
    }
    let collisions2 = x2 - fibers.len() as u64;
    let c = if collisions2 > collisions1 { Card::Aleph0 } else { Card::Fin(collisions1) };
    let kinf = fibers.iter().filter(|(y, k)| **y <= top && before.get(y).copied().unwrap_or(0) < **k).count();
    let fin_image = (x1..x2).all(|x| f.eval(x) <= top);
    Exact { d, c, kinf: Card::Fin(kinf as u64), fin_image }
}

/// A random map with `N + p ≤ 8`, `p ≤ 6`, `s ≤ 12`. Half of the draws are
/// shaped to be injective or surjective on the periodic part so that the
/// composition rules with equality are exercised often.
pub fn random_affine<R: Rng>(rng: &mut R) -> AffinePeriodic {
    let p = rng.gen_range(1..=6u64);
    let n = rng.gen_range(0..=8 - p);
    let s = rng.gen_range(0..=12u64);
    let mut table: Vec<u64> = (0..n + p).map(|_| rng.gen_range(0..=12)).collect();
    match rng.gen_range(0..4) {
        // Surjective on the tail: floor(r·s/p) covers 0..s when s ≤ p.
        0 if s >= 1 && s <= p => {
            for r in 0..p {
                table[(n + r) as usize] = r * s / p;
            }
            for x in 0..n {
                table[x as usize] = x.min(s);
            }
        }
        // Injective on the tail: distinct residues mod s.
        1 if s >= p => {
            let mut residues: Vec<u64> = (0..s).collect();
            residues.shuffle(rng);
            let base = rng.gen_range(0..=1) * s + n;
            for r in 0..p {
                table[(n + r) as usize] = base + residues[r as usize];
            }
            for x in 0..n {
                table[x as usize] = x;
            }
        }
        _ => {}
    }
    AffinePeriodic::new(n, p, s, table).expect("table of length N + p")
}

/// Sugar maps and small permutations.
pub fn catalog() -> Vec<MapExpr> {
    [
        "id",
        "shift(1)",
        "shift(3)",
        "times(0)",
        "times(1)",
        "times(2)",
        "times(3)",
        "divfloor(1)",
        "divfloor(2)",
        "divfloor(3)",
        "divfloor(5)",
        "perm([1,0])",
        "perm([2,0,1])",
        "perm([0,3,1,2])",
        "affine(0,4,8,[0,2,5,7])",
        "affine(0,1,2,[2])",
        "affine(3,1,0,[4,4,1,0])",
        "affine(2,2,3,[9,0,1,2])",
    ]
    .iter()
    .map(|t| maxsub_core::parse_expr(t).expect("catalog expression"))
    .collect()
}

/// A random expression: mostly affine, sometimes the projection or a
/// composite of depth two.
pub fn random_expr<R: Rng>(rng: &mut R) -> MapExpr {
    match rng.gen_range(0..10) {
        0 => MapExpr::CantorProj,
        1 | 2 => MapExpr::compose(random_leaf(rng), random_leaf(rng)),
        3 => catalog().choose(rng).expect("nonempty catalog").clone(),
        _ => random_affine(rng).into(),
    }
}

fn random_leaf<R: Rng>(rng: &mut R) -> MapExpr {
    if rng.gen_bool(0.2) {
        MapExpr::CantorProj
    } else {
        random_affine(rng).into()
    }
}
