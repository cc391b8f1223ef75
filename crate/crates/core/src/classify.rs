//! Membership deciders for the maximal subsemigroups of ℕ^ℕ containing the
//! symmetric group, the pointwise stabiliser of a finite set, the stabiliser
//! of a filter, or the stabiliser of a finite partition.
//!
//! Every verdict cites the parameter values that decide it; an `Unknown`
//! verdict cites the certificate interval that leaves a clause open.

use std::collections::BTreeSet;
use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use serde_json::json;

use crate::card::{Card, CardInterval, Threshold, Tri};
use crate::epset::{EpSet, TooLarge};
use crate::mapexpr::{Certificate, MapExpr};
use crate::relcalc::{RelError, Relation, MAX_N};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ClassifyError {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("undecidable: {0}")]
    Undecidable(String),
}

impl From<TooLarge> for ClassifyError {
    fn from(e: TooLarge) -> Self {
        ClassifyError::Undecidable(e.to_string())
    }
}

/// Which of the two semigroups of a pair (`F₁`/`F₂`, `U₁`/`U₂`, `A₁`/`A₂`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Side {
    One,
    Two,
}

impl Side {
    fn subscript(self) -> &'static str {
        match self {
            Side::One => "₁",
            Side::Two => "₂",
        }
    }

    fn digit(self) -> &'static str {
        match self {
            Side::One => "1",
            Side::Two => "2",
        }
    }
}

/// A filter on ℕ with decidable membership for eventually periodic sets.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FilterOracle {
    /// All sets containing the (finite, nonempty) generator.
    Principal(BTreeSet<u64>),
    /// The cofinite sets.
    Frechet,
}

impl FilterOracle {
    pub fn principal<I: IntoIterator<Item = u64>>(generator: I) -> Result<Self, ClassifyError> {
        let generator: BTreeSet<u64> = generator.into_iter().collect();
        if generator.is_empty() {
            return Err(ClassifyError::InvalidParameters("empty filter generator".into()));
        }
        Ok(FilterOracle::Principal(generator))
    }

    /// Least cardinality of a member.
    pub fn kappa(&self) -> Card {
        match self {
            FilterOracle::Principal(g) => Card::Fin(g.len() as u64),
            FilterOracle::Frechet => Card::Aleph0,
        }
    }

    pub fn contains(&self, set: &EpSet) -> bool {
        match self {
            FilterOracle::Principal(g) => g.iter().all(|&x| set.contains(x)),
            FilterOracle::Frechet => set.is_cofinite(),
        }
    }
}

impl fmt::Display for FilterOracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FilterOracle::Principal(g) => write!(f, "⟨{}⟩", fmt_set(g)),
            FilterOracle::Frechet => f.write_str("Fréchet"),
        }
    }
}

impl Serialize for FilterOracle {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            FilterOracle::Principal(g) => json!({ "principal": g }).serialize(serializer),
            FilterOracle::Frechet => serializer.serialize_str("frechet"),
        }
    }
}

fn fmt_set(set: &BTreeSet<u64>) -> String {
    let items: Vec<String> = set.iter().map(u64::to_string).collect();
    format!("{{{}}}", items.join(","))
}

/// A maximal subsemigroup (or, for the Fréchet filter, a subsemigroup of the
/// same shape) of ℕ^ℕ.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    S1,
    S2,
    /// `S₃(ℵ₀)`.
    S3,
    /// `S₄(ℵ₀)`.
    S4,
    S5,
    F {
        side: Side,
        gamma: BTreeSet<u64>,
        mu: Threshold,
    },
    U {
        side: Side,
        filter: FilterOracle,
        mu: Threshold,
    },
    A {
        side: Side,
        n: usize,
    },
}

impl Family {
    pub const SYMMETRIC: [Family; 5] = [Family::S1, Family::S2, Family::S3, Family::S4, Family::S5];

    /// Short ASCII name, e.g. `S3` or `F2`.
    pub fn name(&self) -> String {
        match self {
            Family::S1 => "S1".into(),
            Family::S2 => "S2".into(),
            Family::S3 => "S3".into(),
            Family::S4 => "S4".into(),
            Family::S5 => "S5".into(),
            Family::F { side, .. } => format!("F{}", side.digit()),
            Family::U { side, .. } => format!("U{}", side.digit()),
            Family::A { side, .. } => format!("A{}", side.digit()),
        }
    }

    pub fn params(&self) -> serde_json::Value {
        match self {
            Family::S1 | Family::S2 | Family::S5 => json!({}),
            Family::S3 | Family::S4 => json!({ "mu": Threshold::Aleph0 }),
            Family::F { side: Side::One, gamma, mu } => json!({ "gamma": gamma, "mu": mu }),
            Family::F { side: Side::Two, gamma, mu } => json!({ "gamma": gamma, "nu": mu }),
            Family::U { filter, mu, .. } => json!({ "filter": filter, "mu": mu }),
            Family::A { n, .. } => json!({ "n": n }),
        }
    }

    /// Rejects parameter combinations that do not describe a semigroup of the
    /// classification.
    pub fn validate(&self) -> Result<(), ClassifyError> {
        let invalid = |m: String| Err(ClassifyError::InvalidParameters(m));
        match self {
            Family::F { gamma, .. } if gamma.is_empty() => invalid("Γ must be nonempty".into()),
            Family::F { side: Side::Two, gamma, mu: Threshold::Aleph0 } if gamma.len() == 1 => {
                invalid("F₂(Γ, ν) with |Γ| = 1 requires ν = ℵ₀⁺".into())
            }
            Family::U { filter: FilterOracle::Principal(g), side: Side::Two, mu: Threshold::Aleph0 }
                if g.len() == 1 =>
            {
                invalid("U₂(F, μ) for a principal ultrafilter requires μ = ℵ₀⁺".into())
            }
            Family::A { n, .. } if !(2..=MAX_N).contains(n) => {
                invalid(format!("partition size {n} outside 2..={MAX_N}"))
            }
            _ => Ok(()),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::S1 => f.write_str("S₁"),
            Family::S2 => f.write_str("S₂"),
            Family::S3 => f.write_str("S₃(ℵ₀)"),
            Family::S4 => f.write_str("S₄(ℵ₀)"),
            Family::S5 => f.write_str("S₅"),
            Family::F { side, gamma, mu } => write!(f, "F{}({},{mu})", side.subscript(), fmt_set(gamma)),
            Family::U { side, filter, mu } => write!(f, "U{}({filter},{mu})", side.subscript()),
            Family::A { side, n } => write!(f, "A{}({n})", side.subscript()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub family: Family,
    pub answer: Tri,
    pub reason: String,
}

impl Serialize for Verdict {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("Verdict", 4)?;
        s.serialize_field("family", &self.family.name())?;
        s.serialize_field("params", &self.family.params())?;
        s.serialize_field("answer", &self.answer)?;
        s.serialize_field("reason", &self.reason)?;
        s.end()
    }
}

/// A condition with its truth value and the facts that decide it.
#[derive(Debug, Clone)]
struct Clause {
    value: Tri,
    why: String,
}

impl Clause {
    fn new(value: Tri, why: impl Into<String>) -> Clause {
        Clause { value, why: why.into() }
    }

    /// A condition on one certified parameter, explained by its value.
    fn param(name: &str, iv: CardInterval, value: Tri) -> Clause {
        let why = match iv.value() {
            Some(v) => format!("{name}={v}"),
            None => format!("{name}∈{iv}"),
        };
        Clause::new(value, why)
    }

    fn all(parts: Vec<Clause>) -> Clause {
        let value = Tri::all(parts.iter().map(|c| c.value));
        let pick = |want: Tri| join(parts.iter().filter(|c| c.value == want));
        let why = match value {
            Tri::Yes => pick(Tri::Yes),
            Tri::No => parts.iter().find(|c| c.value == Tri::No).map(|c| c.why.clone()).unwrap_or_default(),
            Tri::Unknown => pick(Tri::Unknown),
        };
        Clause { value, why }
    }

    fn any(parts: Vec<Clause>) -> Clause {
        let value = Tri::any(parts.iter().map(|c| c.value));
        let pick = |want: Tri| join(parts.iter().filter(|c| c.value == want));
        let why = match value {
            Tri::Yes => parts.iter().find(|c| c.value == Tri::Yes).map(|c| c.why.clone()).unwrap_or_default(),
            Tri::No => pick(Tri::No),
            Tri::Unknown => pick(Tri::Unknown),
        };
        Clause { value, why }
    }
}

fn join<'a>(clauses: impl Iterator<Item = &'a Clause>) -> String {
    let mut seen = Vec::new();
    for c in clauses {
        if !c.why.is_empty() && !seen.contains(&c.why) {
            seen.push(c.why.clone());
        }
    }
    seen.join(" and ")
}

fn verdict(family: Family, clause: Clause) -> Verdict {
    let reason = match clause.value {
        Tri::Unknown => format!("undecided: {}", clause.why),
        _ => clause.why,
    };
    Verdict { family, answer: clause.value, reason }
}

fn frak_f_clause(cert: &Certificate) -> Clause {
    let why = match cert.fin_image {
        Tri::Yes => "f∈𝔉",
        Tri::No => "f∉𝔉",
        Tri::Unknown => "finiteness of the image undetermined",
    };
    Clause::new(cert.fin_image, why)
}

/// Membership in the ideal of maps with finite image.
pub fn in_frak_f(cert: &Certificate) -> Tri {
    cert.fin_image
}

/// Membership in `S₁`, …, `S₅` (with `μ = ℵ₀`).
pub fn in_s(family: &Family, cert: &Certificate) -> Verdict {
    let mu = Threshold::Aleph0;
    let (c, d) = (cert.c, cert.d);
    let clause = match family {
        Family::S1 => Clause::any(vec![Clause::param("c", c, c.is_zero()), Clause::param("d", d, d.is_positive())]),
        Family::S2 => Clause::any(vec![Clause::param("c", c, c.is_positive()), Clause::param("d", d, d.is_zero())]),
        Family::S3 => Clause::any(vec![Clause::param("c", c, c.lt(mu)), Clause::param("d", d, d.ge(mu))]),
        Family::S4 => Clause::any(vec![Clause::param("c", c, c.ge(mu)), Clause::param("d", d, d.lt(mu))]),
        Family::S5 => Clause::param("k(f,ℵ₀)", cert.kinf, cert.kinf.lt(mu)),
        other => panic!("{other} is not a symmetric-group family"),
    };
    verdict(family.clone(), clause)
}

/// `Γ ⊄ Ωf`.
fn not_covered(e: &MapExpr, gamma: &BTreeSet<u64>) -> Result<Clause, ClassifyError> {
    let image = e.image()?;
    Ok(match gamma.iter().find(|&&x| !image.contains(x)) {
        None => Clause::new(Tri::No, "Γ⊆Ωf"),
        Some(x) => Clause::new(Tri::Yes, format!("{x}∉Ωf")),
    })
}

/// `Γf⁻¹ ⊆ Γ`, i.e. nothing outside `Γ` maps into `Γ`.
fn preimage_inside(e: &MapExpr, gamma: &BTreeSet<u64>) -> Result<Clause, ClassifyError> {
    let outside = EpSet::finite(gamma.iter().copied()).complement();
    let image = e.image_of(&outside)?;
    Ok(match gamma.iter().find(|&&x| image.contains(x)) {
        None => Clause::new(Tri::Yes, "Γf⁻¹⊆Γ"),
        Some(x) => Clause::new(Tri::No, format!("{x}f⁻¹⊄Γ")),
    })
}

fn image_of_gamma(e: &MapExpr, gamma: &BTreeSet<u64>) -> BTreeSet<u64> {
    gamma.iter().map(|&x| e.eval(x)).collect()
}

/// Membership in `F₁(Γ, μ)` or `F₂(Γ, ν)`.
pub fn in_f(side: Side, gamma: &BTreeSet<u64>, mu: Threshold, e: &MapExpr) -> Result<Verdict, ClassifyError> {
    let family = Family::F { side, gamma: gamma.clone(), mu };
    family.validate()?;
    let cert = e.certify();
    let (c, d) = (cert.c, cert.d);
    let clause = match side {
        Side::One => Clause::any(vec![
            Clause::param("d", d, d.ge(mu)),
            not_covered(e, gamma)?,
            Clause::all(vec![preimage_inside(e, gamma)?, Clause::param("c", c, c.lt(mu))]),
            frak_f_clause(&cert),
        ]),
        Side::Two => {
            let image = image_of_gamma(e, gamma);
            let shown = fmt_set(&image);
            let shrinks = if image.len() < gamma.len() {
                Clause::new(Tri::Yes, format!("|Γf|=|{shown}|<|Γ|"))
            } else {
                Clause::new(Tri::No, format!("Γf={shown}"))
            };
            let fixed = Clause::new(Tri::from(&image == gamma), format!("Γf={shown}"));
            Clause::any(vec![
                Clause::param("c", c, c.ge(mu)),
                shrinks,
                Clause::all(vec![fixed, Clause::param("d", d, d.lt(mu))]),
                frak_f_clause(&cert),
            ])
        }
    };
    Ok(verdict(family, clause))
}

/// Membership in `U₁(F, μ)` or `U₂(F, μ)`.
///
/// For a principal filter this is `F₁`/`F₂` on the generator. For the
/// Fréchet filter the quantified clauses reduce to cardinal conditions:
/// some coinfinite set maps onto a cofinite set iff `d < ℵ₀` and
/// `c = ℵ₀`, and every cofinite set maps onto a cofinite set iff
/// `d < ℵ₀`. These hold for arbitrary subsets, not only periodic ones.
pub fn in_u(side: Side, filter: &FilterOracle, mu: Threshold, e: &MapExpr) -> Result<Verdict, ClassifyError> {
    let family = Family::U { side, filter: filter.clone(), mu };
    family.validate()?;
    if let FilterOracle::Principal(gamma) = filter {
        let inner = in_f(side, gamma, mu, e)?;
        return Ok(Verdict { family, ..inner });
    }
    let cert = e.certify();
    let (c, d) = (cert.c, cert.d);
    let aleph0 = Threshold::Aleph0;
    let clause = match side {
        Side::One => {
            let image_outside = Clause::param("d", d, d.ge(aleph0));
            let image_outside = Clause { why: format!("{} (Ωf∉F)", image_outside.why), ..image_outside };
            let no_jump = Clause::any(vec![Clause::param("d", d, d.ge(aleph0)), Clause::param("c", c, c.lt(aleph0))]);
            Clause::any(vec![
                Clause::param("d", d, d.ge(mu)),
                image_outside,
                Clause::all(vec![Clause::param("c", c, c.lt(mu)), no_jump]),
                frak_f_clause(&cert),
            ])
        }
        Side::Two => {
            let no_transversal = Clause::param("c", c, c.ge(aleph0));
            let no_transversal =
                Clause { why: format!("{} (no transversal in F)", no_transversal.why), ..no_transversal };
            Clause::any(vec![
                Clause::param("c", c, c.ge(mu)),
                no_transversal,
                Clause::all(vec![Clause::param("d", d, d.lt(mu)), Clause::param("d", d, d.lt(aleph0))]),
                frak_f_clause(&cert),
            ])
        }
    };
    Ok(verdict(family, clause))
}

/// `ρ_f = {(i, j) : Σᵢf ∩ Σⱼ is infinite}` for the residue classes mod `n`.
pub fn rho(e: &MapExpr, n: usize) -> Result<Relation, ClassifyError> {
    if !(2..=MAX_N).contains(&n) {
        return Err(ClassifyError::InvalidParameters(format!("partition size {n} outside 2..={MAX_N}")));
    }
    let mut pairs = Vec::new();
    for i in 0..n {
        let image = e.image_of(&EpSet::residue_class(i as u64, n as u64))?;
        for j in 0..n {
            if image.meets_class_infinitely(j as u64, n as u64)? {
                pairs.push((i, j));
            }
        }
    }
    Relation::from_pairs(n, pairs).map_err(|e: RelError| ClassifyError::InvalidParameters(e.to_string()))
}

/// Membership in `A₁(P)` or `A₂(P)` for the partition into residues mod `n`.
pub fn in_a(side: Side, n: usize, e: &MapExpr) -> Result<Verdict, ClassifyError> {
    let family = Family::A { side, n };
    family.validate()?;
    let r = rho(e, n)?;
    let clause = if r.is_permutation() {
        Clause::new(Tri::Yes, format!("ρ_f={r} ∈ Sym({n})"))
    } else {
        let (tested, label) = match side {
            Side::One => (r, "ρ_f"),
            Side::Two => (r.inverse(), "ρ_f⁻¹"),
        };
        let why = if tested.is_total() {
            format!("ρ_f={r} ∉ Sym({n}) and {label} is total")
        } else {
            format!("ρ_f={r} and {label} is not total")
        };
        Clause::new(Tri::from(!tested.is_total()), why)
    };
    Ok(verdict(family, clause))
}

/// Membership of `e` in any family.
pub fn classify(family: &Family, e: &MapExpr) -> Result<Verdict, ClassifyError> {
    family.validate()?;
    match family {
        Family::F { side, gamma, mu } => in_f(*side, gamma, *mu, e),
        Family::U { side, filter, mu } => in_u(*side, filter, *mu, e),
        Family::A { side, n } => in_a(*side, *n, e),
        sym => Ok(in_s(sym, &e.certify())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_expr;

    fn e(text: &str) -> MapExpr {
        parse_expr(text).unwrap()
    }

    fn set(items: &[u64]) -> BTreeSet<u64> {
        items.iter().copied().collect()
    }

    const PLUS: Threshold = Threshold::Aleph0Plus;

    #[test]
    fn symmetric_group_examples() {
        let v = in_s(&Family::S1, &e("divfloor(2)").certify());
        assert_eq!((v.answer, v.reason.as_str()), (Tri::No, "c=ℵ₀ and d=0"));
        let v = in_s(&Family::S1, &e("times(2)").certify());
        assert_eq!((v.answer, v.reason.as_str()), (Tri::Yes, "c=0"));
        let v = in_s(&Family::S5, &e("cantor_proj").certify());
        assert_eq!((v.answer, v.reason.as_str()), (Tri::No, "k(f,ℵ₀)=ℵ₀"));
        let v = in_s(&Family::S3, &e("divfloor(2)").certify());
        assert_eq!(v.answer, Tri::No);
    }

    #[test]
    fn unknown_cites_interval() {
        let v = in_s(&Family::S5, &e("compose(cantor_proj, times(2))").certify());
        assert_eq!(v.answer, Tri::Unknown);
        assert_eq!(v.reason, "undecided: k(f,ℵ₀)∈[0, ℵ₀]");
    }

    #[test]
    fn stabiliser_examples() {
        let v = in_f(Side::One, &set(&[0]), PLUS, &e("times(2)")).unwrap();
        assert_eq!(v.answer, Tri::Yes);
        let v = in_f(Side::Two, &set(&[0]), PLUS, &e("shift(1)")).unwrap();
        assert_eq!(v.answer, Tri::No);
        let v = in_f(Side::One, &set(&[0]), PLUS, &e("perm([1,0])")).unwrap();
        assert_eq!(v.answer, Tri::No);
        assert!(matches!(
            in_f(Side::Two, &set(&[0]), Threshold::Aleph0, &e("id")),
            Err(ClassifyError::InvalidParameters(_))
        ));
        assert!(in_f(Side::Two, &set(&[0, 1]), Threshold::Aleph0, &e("id")).is_ok());
    }

    #[test]
    fn finite_image_maps_are_in_every_stabiliser_family() {
        for side in [Side::One, Side::Two] {
            let v = in_f(side, &set(&[0, 1]), PLUS, &e("affine(0,1,0,[5])")).unwrap();
            assert_eq!(v.answer, Tri::Yes, "{v:?}");
        }
    }

    #[test]
    fn filter_examples() {
        let principal = FilterOracle::principal([0]).unwrap();
        let v = in_u(Side::One, &principal, PLUS, &e("times(2)")).unwrap();
        assert_eq!(v.answer, Tri::Yes);
        assert_eq!(v.family.name(), "U1");
        let v = in_u(Side::One, &FilterOracle::Frechet, PLUS, &e("times(2)")).unwrap();
        assert_eq!(v.answer, Tri::Yes);
        assert_eq!(v.reason, "d=ℵ₀ (Ωf∉F)");
        let v = in_u(Side::One, &FilterOracle::Frechet, PLUS, &e("id")).unwrap();
        assert_eq!(v.answer, Tri::Yes);
        let v = in_u(Side::One, &FilterOracle::Frechet, PLUS, &e("divfloor(2)")).unwrap();
        assert_eq!(v.answer, Tri::No);
        let v = in_u(Side::Two, &FilterOracle::Frechet, PLUS, &e("times(2)")).unwrap();
        assert_eq!(v.answer, Tri::No);
        assert_eq!(FilterOracle::Frechet.kappa(), Card::Aleph0);
        assert!(FilterOracle::Frechet.contains(&EpSet::finite([1, 2]).complement()));
        assert!(!principal.contains(&EpSet::residue_class(1, 2)));
    }

    #[test]
    fn rho_examples() {
        assert_eq!(rho(&e("shift(1)"), 2).unwrap().to_string(), "{(0,1),(1,0)}");
        assert_eq!(rho(&e("divfloor(2)"), 2).unwrap(), Relation::full(2).unwrap());
        assert_eq!(rho(&e("id"), 3).unwrap(), Relation::identity(3).unwrap());
        assert_eq!(rho(&e("times(2)"), 2).unwrap().to_string(), "{(0,0),(1,0)}");
        assert_eq!(rho(&e("cantor_proj"), 2).unwrap(), Relation::full(2).unwrap());
    }

    #[test]
    fn partition_examples() {
        assert_eq!(in_a(Side::One, 2, &e("shift(1)")).unwrap().answer, Tri::Yes);
        assert_eq!(in_a(Side::One, 2, &e("divfloor(2)")).unwrap().answer, Tri::No);
        assert_eq!(in_a(Side::Two, 2, &e("divfloor(2)")).unwrap().answer, Tri::No);
        assert_eq!(in_a(Side::Two, 2, &e("times(2)")).unwrap().answer, Tri::Yes);
        assert!(in_a(Side::One, 1, &e("id")).is_err());
    }

    #[test]
    fn frak_f_examples() {
        assert_eq!(in_frak_f(&e("id").certify()), Tri::No);
        assert_eq!(in_frak_f(&e("affine(0,1,0,[5])").certify()), Tri::Yes);
        assert_eq!(in_frak_f(&e("divfloor(2)").certify()), Tri::No);
    }

    #[test]
    fn verdict_json() {
        let v = classify(&Family::S5, &e("cantor_proj")).unwrap();
        let json = serde_json::to_value(&v).unwrap();
        assert_eq!(json, json!({"family": "S5", "params": {}, "answer": "no", "reason": "k(f,ℵ₀)=ℵ₀"}));
        let v = classify(&Family::F { side: Side::Two, gamma: set(&[0, 1]), mu: PLUS }, &e("id")).unwrap();
        let json = serde_json::to_value(&v).unwrap();
        assert_eq!(json["params"], json!({"gamma": [0, 1], "nu": "aleph0plus"}));
    }

    #[test]
    fn family_display() {
        assert_eq!(Family::S3.to_string(), "S₃(ℵ₀)");
        assert_eq!(Family::F { side: Side::Two, gamma: set(&[0]), mu: PLUS }.to_string(), "F₂({0},ℵ₀⁺)");
        let u = Family::U { side: Side::Two, filter: FilterOracle::principal([0]).unwrap(), mu: PLUS };
        assert_eq!(u.to_string(), "U₂(⟨{0}⟩,ℵ₀⁺)");
    }
}
