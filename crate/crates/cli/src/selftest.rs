//! Built-in check suites: documented examples, and randomized laws with a
//! fixed seed.

use clap::ValueEnum;
use maxsub_core::{
    chain_inverse_check, classify, decide_sym_pair, parse_expr, AffinePeriodic, ChainVerdict, Decision, Family,
    MapExpr, Tri,
};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

#[derive(Clone, Copy, ValueEnum)]
pub enum Suite {
    Examples,
    Laws,
    All,
}

pub fn run(suite: Suite) -> Vec<(String, bool)> {
    let mut out = Vec::new();
    if matches!(suite, Suite::Examples | Suite::All) {
        out.extend(examples());
    }
    if matches!(suite, Suite::Laws | Suite::All) {
        out.extend(laws());
    }
    out
}

fn e(text: &str) -> MapExpr {
    parse_expr(text).expect("built-in expression")
}

fn examples() -> Vec<(String, bool)> {
    let check = |name: &str, ok: bool| (name.to_owned(), ok);
    let double = e("times(2)").certify();
    let s5 = classify(&Family::S5, &e("cantor_proj")).expect("valid family");
    let halve_double = vec![(e("divfloor(2)"), e("times(2)")), (e("divfloor(2)"), e("times(2)"))];
    let double_halve = vec![(e("times(2)"), e("divfloor(2)")), (e("times(2)"), e("divfloor(2)"))];
    vec![
        check("certify times(2)", double.inj == Tri::Yes && double.surj == Tri::No && double.is_exact()),
        check("classify S5 cantor_proj", s5.answer == Tri::No && s5.reason == "k(f,ℵ₀)=ℵ₀"),
        check(
            "genpair times(2) cantor_proj",
            decide_sym_pair(&e("times(2)"), &e("cantor_proj")) == Decision::Generates,
        ),
        check(
            "genpair times(2) divfloor(2)",
            decide_sym_pair(&e("times(2)"), &e("divfloor(2)")) == Decision::DoesNotGenerate { witness: Family::S5 },
        ),
        check("chain halve/double", chain_inverse_check(&halve_double, 1000) == Ok(ChainVerdict::Pass)),
        check(
            "chain double/halve",
            matches!(chain_inverse_check(&double_halve, 1000), Ok(ChainVerdict::HypothesisViolated { index: 1, .. })),
        ),
    ]
}

fn random_affine(rng: &mut StdRng) -> AffinePeriodic {
    let n = rng.gen_range(0..=3);
    let p = rng.gen_range(1..=4);
    let s = rng.gen_range(0..=4);
    let table = (0..n + p).map(|_| rng.gen_range(0..=10)).collect();
    AffinePeriodic::new(n, p, s, table).expect("table has length N + p")
}

fn laws() -> Vec<(String, bool)> {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let mut sound = true;
    let mut normal = true;
    let mut round_trip = true;
    for _ in 0..2000 {
        let f = random_affine(&mut rng);
        let g = random_affine(&mut rng);
        let composite = MapExpr::compose(f.clone().into(), g.clone().into());
        let exact = f.then(&g);
        let window = 10 * (exact.threshold() + exact.period()) + 1000;
        normal &= (0..window).all(|x| exact.eval(x) == g.eval(f.eval(x)));
        sound &= MapExpr::from(exact).certify().refines(&composite.certify());
        round_trip &= parse_expr(&composite.to_string()).as_ref() == Ok(&composite);
    }
    vec![
        ("composition rules are sound".to_owned(), sound),
        ("normal forms agree pointwise".to_owned(), normal),
        ("printing round-trips".to_owned(), round_trip),
    ]
}
