//! Exact computations around the maximal subsemigroups of the full
//! transformation monoid on the natural numbers.
//!
//! * [`card`]: cardinals up to ℵ₀, intervals of them, Kleene logic, and the
//!   interval rules bounding the parameters of a composite map.
//! * [`mapexpr`]: a composition-closed class of self-maps of ℕ with exact
//!   certificates for defect, collapse and infinite contraction.
//! * [`classify`]: membership in each maximal-subsemigroup family.
//! * [`genpairs`]: whether two maps and a stabiliser generate everything.
//! * [`relcalc`]: binary relations and full-relation witnesses.
//! * [`fintrans`]: brute force over the finite monoids `T_n`.

pub mod card;
pub mod classify;
pub mod epset;
pub mod fintrans;
pub mod genpairs;
pub mod mapexpr;
pub mod relcalc;
pub mod syntax;

pub use card::{card_add, compose_collapse, compose_defect, compose_kinf, Card, CardInterval, Threshold, Tri};
pub use classify::{
    classify, in_a, in_f, in_frak_f, in_s, in_u, rho, ClassifyError, Family, FilterOracle, Side, Verdict,
};
pub use epset::{EpSet, TooLarge};
pub use fintrans::{
    closure, completeness_check, generates_tn, maximal_subgroups_symn, maximal_subsemigroups_tn, CompletenessReport,
    FinError, FinMap, SubsemigroupReport,
};
pub use genpairs::{
    decide_filter_pair, decide_pair, decide_partition_pair, decide_pointwise_stab_pair, decide_sym_pair, Context,
    Decision, GenError,
};
pub use mapexpr::{
    chain_inverse_check, AffinePeriodic, Certificate, ChainError, ChainVerdict, FiberReport, InfiniteSet, InvertError,
    MapError, MapExpr, WindowReport,
};
pub use relcalc::{bfin_greedy, bfin_witness, Letter, RelError, Relation, Word};
pub use syntax::{parse_expr, ExprError};
