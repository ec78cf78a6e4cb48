//! Normalization of conditional expressions, the measures that certify its
//! termination, and a desk-scale verification harness.
//!
//! An expression is an atom or a three-way `If(test, then, else)`. It is in
//! normal form when no test position holds another `If`. Three algorithms
//! compute the normal form:
//!
//! * [`normalize::norm`] rewrites each tested `If` in place and recurses on
//!   the result; its termination is certified by a multiplicative measure
//!   ([`measures::norm_measure`]) that strictly shrinks at every call.
//! * [`normalize::norm1`] recurses structurally through
//!   [`normalize::normif`], so it terminates by construction.
//! * [`normalize::norm2`] replaces the rewrite step with nested recursive
//!   calls; its termination is certified by a lexicographic measure
//!   ([`measures::norm2_lex_measure`]) over a relation whose outer-call
//!   clause constrains results of inner calls ([`relation::prec_norm2`]).
//!
//! Every claim the crate makes about these algorithms (measure decrease,
//! three-way agreement, normality of results, idempotence, the fold lemma,
//! semantic preservation, relation soundness, and tautology-checker oracle
//! agreement) is checked over exhaustively enumerated expression universes
//! by [`suites::run_suites`]. The `ifnorm` binary exposes all of it on the
//! command line.

pub mod expr;
pub mod measures;
pub mod normalize;
pub mod relation;
pub mod semantics;
pub mod suites;
pub mod universe;

pub use expr::{parse, Expr, ParseError, Symbol, SymbolError};
pub use measures::{
    if_depth, inverse_image, lex_combine, norm2_lex_measure, norm_measure, tested_if_count,
    LexMeasure, Measure, Relation,
};
pub use normalize::{
    is_normal, norm, norm1, norm2, norm_fuel, normif, trace_to_json, CallEdge, NormOutcome,
    NormStatus, RuleTag, DEFAULT_NORM2_FUEL,
};
pub use relation::{
    longest_chain, prec_norm, prec_norm2, preds_norm, verify_measure_witness, ChainReport,
    RelationKind, WitnessPair, WitnessReport,
};
pub use semantics::{
    eval, falsifying_assignment, is_tautology, semantically_equal, tautology_counterexample,
    Assignment, SemanticsError, BRUTE_FORCE_ATOM_LIMIT,
};
pub use suites::{
    run_suites, ConfigError, Suite, SuiteConfig, SuiteOutcome, MAX_IF_NODES_CAP,
};
pub use universe::{parse_alphabet, random_expr, ExprUniverse, UniverseError};
