mod common;

use std::collections::BTreeSet;

use common::{catalog, oracle, random_affine, random_expr};
use maxsub_core::{
    classify, closure, compose_collapse, compose_defect, compose_kinf, decide_pair, parse_expr, rho, AffinePeriodic,
    Card, CardInterval, Context, Decision, Family, FilterOracle, FinMap, MapExpr, Relation, Side, Threshold, Tri,
};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn affine() -> impl Strategy<Value = AffinePeriodic> {
    (1..=6u64)
        .prop_flat_map(|p| (0..=8 - p, Just(p), 0..=12u64))
        .prop_flat_map(|(n, p, s)| (Just(n), Just(p), Just(s), prop::collection::vec(0..=12u64, (n + p) as usize)))
        .prop_map(|(n, p, s, table)| AffinePeriodic::new(n, p, s, table).unwrap())
}

/// Mostly affine maps, sometimes the projection or composites.
fn expr() -> impl Strategy<Value = MapExpr> {
    any::<u64>().prop_map(|seed| random_expr(&mut StdRng::seed_from_u64(seed)))
}

fn card() -> impl Strategy<Value = Card> {
    prop_oneof![4 => (0..6u64).prop_map(Card::Fin), 1 => Just(Card::Aleph0)]
}

fn interval() -> impl Strategy<Value = CardInterval> {
    (card(), card()).prop_map(|(a, b)| CardInterval::new(a.min(b), a.max(b)))
}

/// An interval containing `inner`, stretched by the given amounts.
fn widen(inner: CardInterval, (down, up, unbounded): (u64, u64, bool)) -> CardInterval {
    let lo = match inner.lo() {
        Card::Fin(x) => Card::Fin(x.saturating_sub(down)),
        Card::Aleph0 if down > 0 => Card::Fin(5),
        Card::Aleph0 => Card::Aleph0,
    };
    let hi = match inner.hi() {
        Card::Fin(_) if unbounded => Card::Aleph0,
        Card::Fin(x) => Card::Fin(x + up),
        Card::Aleph0 => Card::Aleph0,
    };
    CardInterval::new(lo, hi)
}

fn stretch() -> impl Strategy<Value = (u64, u64, bool)> {
    (0..3u64, 0..3u64, any::<bool>())
}

fn tri() -> impl Strategy<Value = Tri> {
    prop_oneof![Just(Tri::Yes), Just(Tri::No), Just(Tri::Unknown)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn certificates_match_window_extrapolation(f in affine()) {
        let exact = oracle(&f);
        let cert = MapExpr::from(f.clone()).certify();
        prop_assert!(cert.is_exact(), "{f}: {cert:?}");
        prop_assert_eq!(cert.d.value(), Some(exact.d));
        prop_assert_eq!(cert.c.value(), Some(exact.c));
        prop_assert_eq!(cert.kinf.value(), Some(exact.kinf));
        prop_assert_eq!(cert.fin_image, Tri::from(exact.fin_image));
        prop_assert_eq!(cert.inj, Tri::from(exact.c.is_zero()));
        prop_assert_eq!(cert.surj, Tri::from(exact.d.is_zero()));
    }

    #[test]
    fn normal_forms_certify_like_the_oracle(f in affine(), g in affine()) {
        let normal = MapExpr::compose(f.clone().into(), g.clone().into()).normalize().unwrap();
        let exact = oracle(&normal);
        let cert = MapExpr::from(normal).certify();
        prop_assert_eq!(cert.d.value(), Some(exact.d));
        prop_assert_eq!(cert.c.value(), Some(exact.c));
        prop_assert_eq!(cert.kinf.value(), Some(exact.kinf));
    }

    #[test]
    fn canonical_form_is_pointwise_equal(f in affine()) {
        let canon = f.canonical();
        prop_assert!(canon.period() <= f.period());
        prop_assert!((0..200).all(|x| canon.eval(x) == f.eval(x)));
        prop_assert_eq!(canon.canonical(), canon);
    }

    #[test]
    fn window_collisions_bounded_by_collapse(e in expr(), window in 1..2000u64) {
        let cert = e.certify();
        let stats = e.window_stats(window);
        if let Card::Fin(c) = cert.c.hi() {
            prop_assert!(stats.collisions <= c, "{e}: {} collisions, c ≤ {c}", stats.collisions);
        }
    }

    // Maps of slope at most 1/2 reach only part of [0, M/2) from [0, M), so
    // window defect says nothing about them.
    #[test]
    fn window_defect_bounded_for_steep_maps(f in affine(), extra in 0..1000u64) {
        prop_assume!(2 * f.shift() > f.period());
        let window = 1000 + extra;
        let e = MapExpr::from(f.clone());
        let stats = e.window_stats(window);
        let missed = stats.missed.iter().filter(|&&y| y < window / 2).count() as u64;
        if let Card::Fin(d) = e.certify().d.hi() {
            prop_assert!(missed <= d, "{f}: missed {missed} below {}, d ≤ {d}", window / 2);
        }
    }

    #[test]
    fn composite_certificates_are_sound(f in expr(), g in expr()) {
        let composite = MapExpr::compose(f.clone(), g.clone());
        let cert = composite.certify();
        if let Some(normal) = composite.normalize() {
            let exact = oracle(&normal);
            prop_assert!(cert.d.contains(exact.d) && cert.c.contains(exact.c) && cert.kinf.contains(exact.kinf));
        }
        prop_assert!(MapExpr::compose(f, g).certify().refines(&cert));
    }

    #[test]
    fn printing_round_trips(e in expr()) {
        let reparsed = parse_expr(&e.to_string()).unwrap();
        prop_assert!((0..1000).all(|x| reparsed.eval(x) == e.eval(x)));
        prop_assert_eq!(reparsed, e);
    }

    #[test]
    fn rules_are_monotone(
        (a, b, c) in (interval(), interval(), interval()),
        (wa, wb, wc) in (stretch(), stretch(), stretch()),
        flag in tri(),
        forget in any::<bool>(),
    ) {
        let (wide_a, wide_b, wide_c) = (widen(a, wa), widen(b, wb), widen(c, wc));
        let wide_flag = if forget { Tri::Unknown } else { flag };
        if realisable(b, flag) {
            let narrow = compose_defect(a, b, c, flag);
            let broad = compose_defect(wide_a, wide_b, wide_c, wide_flag);
            prop_assert!(narrow.within(&broad), "{narrow} ⊄ {broad}");
        }
        if realisable(b, flag) {
            let narrow = compose_collapse(a, b, c, flag);
            let broad = compose_collapse(wide_a, wide_b, wide_c, wide_flag);
            prop_assert!(narrow.within(&broad), "{narrow} ⊄ {broad}");
        }
        prop_assert!(compose_kinf(a, c).within(&compose_kinf(wide_a, wide_c)));
    }
}

/// Whether some map has a parameter in `iv` and the flag `iv = 0`: the
/// rules assume their inputs are consistent.
fn realisable(iv: CardInterval, zero: Tri) -> bool {
    match zero {
        Tri::Yes => iv.contains(Card::ZERO),
        Tri::No => iv.hi() != Card::ZERO,
        Tri::Unknown => true,
    }
}

#[test]
fn symmetric_families_agree_with_definitions() {
    let mut rng = StdRng::seed_from_u64(11);
    let aleph = Card::Aleph0;
    for _ in 0..3000 {
        let f = random_affine(&mut rng);
        let x = oracle(&f);
        let expected = [
            (Family::S1, x.c.is_zero() || !x.d.is_zero()),
            (Family::S2, !x.c.is_zero() || x.d.is_zero()),
            (Family::S3, x.c < aleph || x.d == aleph),
            (Family::S4, x.c == aleph || x.d < aleph),
            (Family::S5, x.kinf < aleph),
        ];
        let e = MapExpr::from(f.clone());
        for (family, member) in expected {
            let v = classify(&family, &e).unwrap();
            assert_eq!(v.answer, Tri::from(member), "{family} on {f}: {}", v.reason);
        }
    }
}

#[test]
fn principal_filter_families_match_pointwise_families() {
    let mut rng = StdRng::seed_from_u64(12);
    for gamma in [BTreeSet::from([0]), BTreeSet::from([1, 3])] {
        let filter = FilterOracle::principal(gamma.iter().copied()).unwrap();
        for _ in 0..300 {
            let e = random_expr(&mut rng);
            for side in [Side::One, Side::Two] {
                for mu in Threshold::ALL {
                    let f = Family::F { side, gamma: gamma.clone(), mu };
                    let u = Family::U { side, filter: filter.clone(), mu };
                    match (classify(&f, &e), classify(&u, &e)) {
                        (Ok(a), Ok(b)) => assert_eq!(a.answer, b.answer, "{f} vs {u} on {e}"),
                        (a, b) => assert_eq!(a.is_err(), b.is_err(), "{f} vs {u} on {e}"),
                    }
                }
            }
        }
    }
}

#[test]
fn class_relation_of_a_composite_is_inside_the_product() {
    let mut rng = StdRng::seed_from_u64(13);
    for _ in 0..500 {
        let (f, g) = (random_expr(&mut rng), random_expr(&mut rng));
        for n in 2..=4 {
            let (rf, rg) = (rho(&f, n).unwrap(), rho(&g, n).unwrap());
            let rfg = rho(&MapExpr::compose(f.clone(), g.clone()), n).unwrap();
            let product = rf.compose(&rg).unwrap();
            assert!(rfg.pairs().all(|(i, j)| product.contains(i, j)), "ρ({f} {g}) = {rfg} ⊄ {product}");
        }
    }
}

#[test]
fn partition_families_are_closed_on_relations() {
    for n in 2..=3 {
        let all: Vec<Relation> = (0..1u64 << (n * n)).map(|c| Relation::from_code(n, c).unwrap()).collect();
        let a1 = |r: &Relation| r.is_permutation() || !r.is_total();
        let a2 = |r: &Relation| r.is_permutation() || !r.inverse().is_total();
        for r in all.iter().filter(|r| a1(r)) {
            for s in all.iter().filter(|s| a1(s)) {
                assert!(a1(&r.compose(s).unwrap()), "{r} {s}");
            }
        }
        for r in all.iter().filter(|r| a2(r)) {
            for s in all.iter().filter(|s| a2(s)) {
                assert!(a2(&r.compose(s).unwrap()), "{r} {s}");
            }
        }
    }
}

#[test]
fn decisions_do_not_depend_on_argument_order() {
    let mut rng = StdRng::seed_from_u64(14);
    let contexts = [Context::Sym, Context::PointwiseStab(BTreeSet::from([0])), Context::Partition(3)];
    for _ in 0..300 {
        let (f, g) = (random_expr(&mut rng), random_expr(&mut rng));
        for context in &contexts {
            let forward = decide_pair(context, &f, &g).unwrap();
            let backward = decide_pair(context, &g, &f).unwrap();
            match (&forward, &backward) {
                (Decision::Unknown { .. }, Decision::Unknown { .. }) => {}
                _ => assert_eq!(forward, backward, "{context:?} {f} {g}"),
            }
        }
    }
}

#[test]
fn decisions_on_catalog_pairs_are_consistent_with_classification() {
    let maps = catalog();
    for f in &maps {
        for g in &maps {
            match decide_pair(&Context::Sym, f, g).unwrap() {
                Decision::Generates => {
                    for family in Family::SYMMETRIC {
                        let both = classify(&family, f).unwrap().answer & classify(&family, g).unwrap().answer;
                        assert_eq!(both, Tri::No, "{family} holds {f} and {g}");
                    }
                }
                Decision::DoesNotGenerate { witness } => {
                    assert!(classify(&witness, f).unwrap().answer.is_yes());
                    assert!(classify(&witness, g).unwrap().answer.is_yes());
                }
                Decision::Unknown { .. } => {}
            }
        }
    }
}

#[test]
fn closure_is_idempotent() {
    let mut rng = StdRng::seed_from_u64(15);
    for n in 2..=5usize {
        let size = n.pow(n as u32);
        for _ in 0..100 {
            let count = rng.gen_range(1..=3);
            let gens: Vec<FinMap> = (0..count).map(|_| FinMap::from_index(n, rng.gen_range(0..size))).collect();
            let once = closure(n, &gens).unwrap();
            assert_eq!(closure(n, &once).unwrap(), once);
            for a in &once {
                for b in &once {
                    assert!(once.contains(&a.then(b)));
                }
            }
        }
    }
}

/// Periodic permutations of period `period` that fix every residue class mod `n`.
fn class_preserving_perms(n: u64, period: u64) -> Vec<MapExpr> {
    let classes: Vec<Vec<u64>> = (0..n).map(|r| (r..period).step_by(n as usize).collect()).collect();
    let mut tables = vec![vec![0; period as usize]];
    for class in &classes {
        let mut next = Vec::new();
        for table in &tables {
            for order in permutations_of(class) {
                let mut t: Vec<u64> = table.clone();
                for (&from, &to) in class.iter().zip(&order) {
                    t[from as usize] = to;
                }
                next.push(t);
            }
        }
        tables = next;
    }
    tables.into_iter().map(|t| AffinePeriodic::new(0, period, period, t).unwrap().into()).collect()
}

fn permutations_of(items: &[u64]) -> Vec<Vec<u64>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for (i, &first) in items.iter().enumerate() {
        let mut rest = items.to_vec();
        rest.remove(i);
        for mut tail in permutations_of(&rest) {
            tail.insert(0, first);
            out.push(tail);
        }
    }
    out
}

#[test]
fn product_of_class_relations_is_realised_by_an_interleaving_permutation() {
    let mut rng = StdRng::seed_from_u64(16);
    for _ in 0..20 {
        let n = rng.gen_range(2..=3u64);
        let (f, g): (MapExpr, MapExpr) = (random_affine(&mut rng).into(), random_affine(&mut rng).into());
        let (rf, rg) = (rho(&f, n as usize).unwrap(), rho(&g, n as usize).unwrap());
        let target = rf.compose(&rg).unwrap();
        let found = [n, 2 * n, 3 * n]
            .into_iter()
            .flat_map(|p| class_preserving_perms(n, p))
            .any(|a| rho(&MapExpr::chain([f.clone(), a, g.clone()]), n as usize).unwrap() == target);
        assert!(found, "no permutation realises ρ_f ρ_g = {target} for f={f}, g={g}");
    }
}
