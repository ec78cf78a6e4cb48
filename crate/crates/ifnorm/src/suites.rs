//! Verification suites: each one checks a claimed property of the
//! normalizers over a supplied expression collection, reporting counts and
//! counterexamples instead of stopping at the first failure.
//!
//! The properties are desk-scale, exhaustive where the claim calls for it
//! (the fold-lemma triple product, the measure checks on every recorded call
//! edge), and deterministic: counterexample lists are sorted by text and
//! truncated only for display, with the suppressed count noted.

use num_bigint::BigUint;
use rayon::prelude::*;
use thiserror::Error;

use crate::expr::{Expr, Symbol};
use crate::measures::{norm2_lex_measure, norm_measure, tested_if_count};
use crate::normalize::{
    is_normal, norm, norm1, norm2, norm_fuel, CallEdge, RuleTag, DEFAULT_NORM2_FUEL,
};
use crate::relation::{prec_norm, prec_norm2, preds_norm};
use crate::semantics::{eval, falsifying_assignment, semantically_equal, tautology_counterexample};
use crate::universe::{parse_alphabet, ExprUniverse, UniverseError};

/// Largest allowed `max_if_nodes` for a suite run; universe size grows
/// steeply past this.
pub const MAX_IF_NODES_CAP: usize = 4;

/// Counterexamples kept per suite outcome; the rest become a note.
const COUNTEREXAMPLE_DISPLAY_LIMIT: usize = 100;

// fold-lemma inputs stay tiny, so a flat budget far above any real call
// count still fails fast if normalization stops terminating
const FOLD_LEMMA_FUEL: u64 = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    MeasureDecrease,
    Equivalence,
    Isn,
    Idempotence,
    FoldLemma,
    Semantics,
    RelationEdges,
    LexWitness,
    TautOracle,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::MeasureDecrease,
        Suite::Equivalence,
        Suite::Isn,
        Suite::Idempotence,
        Suite::FoldLemma,
        Suite::Semantics,
        Suite::RelationEdges,
        Suite::LexWitness,
        Suite::TautOracle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::MeasureDecrease => "measure-decrease",
            Suite::Equivalence => "equivalence",
            Suite::Isn => "isn",
            Suite::Idempotence => "idempotence",
            Suite::FoldLemma => "fold-lemma",
            Suite::Semantics => "semantics",
            Suite::RelationEdges => "relation-edges",
            Suite::LexWitness => "lex-witness",
            Suite::TautOracle => "taut-oracle",
        }
    }

    pub fn from_name(name: &str) -> Option<Suite> {
        Suite::ALL.into_iter().find(|s| s.name() == name)
    }
}

impl std::fmt::Display for Suite {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("no suites selected")]
    NoSuites,
    #[error("max-ifs {requested} exceeds the cap of {cap}")]
    MaxIfNodesTooLarge { requested: usize, cap: usize },
    #[error("parallelism must be at least 1")]
    ZeroParallelism,
    #[error(transparent)]
    Universe(#[from] UniverseError),
}

/// What to verify and over which enumerated universe.
#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub max_if_nodes: usize,
    pub alphabet: Vec<Symbol>,
    pub suites: Vec<Suite>,
    /// Replaces every per-run fuel default when set.
    pub fuel_override: Option<u64>,
    pub parallelism: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            max_if_nodes: 3,
            alphabet: parse_alphabet("a,b").expect("static alphabet"),
            suites: Suite::ALL.to_vec(),
            fuel_override: None,
            parallelism: std::thread::available_parallelism()
                .map(|n| n.get())
                .unwrap_or(1),
        }
    }
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.suites.is_empty() {
            return Err(ConfigError::NoSuites);
        }
        if self.max_if_nodes > MAX_IF_NODES_CAP {
            return Err(ConfigError::MaxIfNodesTooLarge {
                requested: self.max_if_nodes,
                cap: MAX_IF_NODES_CAP,
            });
        }
        if self.parallelism == 0 {
            return Err(ConfigError::ZeroParallelism);
        }
        ExprUniverse::new(self.max_if_nodes, self.alphabet.clone())?;
        Ok(())
    }

    pub fn universe(&self) -> Result<ExprUniverse, ConfigError> {
        Ok(ExprUniverse::new(self.max_if_nodes, self.alphabet.clone())?)
    }
}

/// One suite's result.
#[derive(Debug, Clone)]
pub struct SuiteOutcome {
    pub suite: Suite,
    pub exprs_checked: u64,
    pub edges_checked: u64,
    /// Sorted; truncated past [`COUNTEREXAMPLE_DISPLAY_LIMIT`] with a note.
    pub counterexamples: Vec<String>,
    pub notes: Vec<String>,
}

impl SuiteOutcome {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

/// Run the configured suites over `exprs` (typically the enumerated universe,
/// optionally extended with random samples). Suites run in the configured
/// order; expression work is sharded across `parallelism` threads with
/// deterministic recombination.
pub fn run_suites(cfg: &SuiteConfig, exprs: &[Expr]) -> Result<Vec<SuiteOutcome>, ConfigError> {
    cfg.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.parallelism)
        .build()
        .expect("thread pool construction");
    Ok(pool.install(|| {
        cfg.suites
            .iter()
            .map(|suite| match suite {
                Suite::MeasureDecrease => suite_measure_decrease(cfg, exprs),
                Suite::Equivalence => suite_equivalence(cfg, exprs),
                Suite::Isn => suite_isn(cfg, exprs),
                Suite::Idempotence => suite_idempotence(cfg, exprs),
                Suite::FoldLemma => suite_fold_lemma(cfg),
                Suite::Semantics => suite_semantics(cfg, exprs),
                Suite::RelationEdges => suite_relation_edges(cfg, exprs),
                Suite::LexWitness => suite_lex_witness(cfg, exprs),
                Suite::TautOracle => suite_taut_oracle(exprs),
            })
            .collect()
    }))
}

fn finish(
    suite: Suite,
    exprs_checked: u64,
    edges_checked: u64,
    mut counterexamples: Vec<String>,
    mut notes: Vec<String>,
) -> SuiteOutcome {
    counterexamples.sort();
    counterexamples.dedup();
    if counterexamples.len() > COUNTEREXAMPLE_DISPLAY_LIMIT {
        let suppressed = counterexamples.len() - COUNTEREXAMPLE_DISPLAY_LIMIT;
        counterexamples.truncate(COUNTEREXAMPLE_DISPLAY_LIMIT);
        notes.push(format!("{suppressed} further counterexamples suppressed"));
    }
    SuiteOutcome {
        suite,
        exprs_checked,
        edges_checked,
        counterexamples,
        notes,
    }
}

// Every call edge strictly shrinks the measure; If-If edges shrink it by
// exactly m(u)·m(y) + m(u)·m(z); runs complete within fuel m(e) and use at
// most m(e) calls.
fn suite_measure_decrease(cfg: &SuiteConfig, exprs: &[Expr]) -> SuiteOutcome {
    let per: Vec<(Vec<String>, u64)> = exprs
        .par_iter()
        .map(|e| {
            let mut cexs = Vec::new();
            let fuel = cfg.fuel_override.unwrap_or_else(|| norm_fuel(e));
            let out = norm(e, fuel, true);
            if !out.completed() {
                cexs.push(format!("norm ran out of fuel on {e}"));
            }
            let m_e = norm_measure(e);
            if BigUint::from(out.call_count) > m_e {
                cexs.push(format!(
                    "call count {} exceeds measure {m_e} on {e}",
                    out.call_count,
                ));
            }
            let trace = out.trace.as_deref().unwrap_or(&[]);
            for edge in trace {
                let m_caller = norm_measure(&edge.caller);
                let m_callee = norm_measure(&edge.callee);
                if m_callee >= m_caller {
                    cexs.push(format!(
                        "measure does not decrease: {} -> {}",
                        edge.caller, edge.callee,
                    ));
                }
                if edge.rule == RuleTag::IfIf
                    && !if_if_decrease_is_exact(edge, &m_caller, &m_callee)
                {
                    cexs.push(format!("inexact If-If decrease on {}", edge.caller));
                }
            }
            (cexs, trace.len() as u64)
        })
        .collect();
    let (cexs, edges) = combine(per);
    finish(Suite::MeasureDecrease, exprs.len() as u64, edges, cexs, vec![])
}

fn if_if_decrease_is_exact(edge: &CallEdge, m_caller: &BigUint, m_callee: &BigUint) -> bool {
    let Expr::If(test, y, z) = &edge.caller else {
        return false;
    };
    let Expr::If(u, _, _) = test.as_ref() else {
        return false;
    };
    let m_u = norm_measure(u);
    *m_caller == m_callee + &m_u * norm_measure(y) + &m_u * norm_measure(z)
}

// norm, norm1, norm2 produce identical results.
fn suite_equivalence(cfg: &SuiteConfig, exprs: &[Expr]) -> SuiteOutcome {
    let per: Vec<(Vec<String>, u64, u64)> = exprs
        .par_iter()
        .map(|e| {
            let mut cexs = Vec::new();
            let out_n = norm(e, cfg.fuel_override.unwrap_or_else(|| norm_fuel(e)), false);
            let out_2 = norm2(e, cfg.fuel_override.unwrap_or(DEFAULT_NORM2_FUEL), false);
            let r1 = norm1(e);
            match (out_n.result(), out_2.result()) {
                (Some(rn), Some(r2)) => {
                    if rn != &r1 || r2 != &r1 {
                        cexs.push(format!(
                            "algorithms disagree on {e}: norm={rn}, norm1={r1}, norm2={r2}",
                        ));
                    }
                }
                _ => cexs.push(format!("fuel exhausted on {e}")),
            }
            (cexs, out_n.call_count, out_2.call_count)
        })
        .collect();
    let mut cexs = Vec::new();
    let mut max_norm = 0u64;
    let mut max_norm2 = 0u64;
    for (c, calls_n, calls_2) in per {
        cexs.extend(c);
        max_norm = max_norm.max(calls_n);
        max_norm2 = max_norm2.max(calls_2);
    }
    let notes = vec![
        format!("max norm callCount={max_norm}"),
        format!("max norm2 callCount={max_norm2}"),
    ];
    finish(Suite::Equivalence, exprs.len() as u64, 0, cexs, notes)
}

// Every result of every algorithm is normal; the normal-form predicate and
// the tested-If count agree; normal inputs stay normal through norm2.
fn suite_isn(cfg: &SuiteConfig, exprs: &[Expr]) -> SuiteOutcome {
    let per: Vec<(Vec<String>, u64)> = exprs
        .par_iter()
        .map(|e| {
            let mut cexs = Vec::new();
            if is_normal(e) != (tested_if_count(e) == 0) {
                cexs.push(format!("normality predicates disagree on {e}"));
            }
            let was_normal = is_normal(e);
            let out_n = norm(e, cfg.fuel_override.unwrap_or_else(|| norm_fuel(e)), false);
            let out_2 = norm2(e, cfg.fuel_override.unwrap_or(DEFAULT_NORM2_FUEL), false);
            let r1 = norm1(e);
            let mut results: Vec<(&str, &Expr)> = vec![("norm1", &r1)];
            match out_n.result() {
                Some(r) => results.push(("norm", r)),
                None => cexs.push(format!("norm fuel exhausted on {e}")),
            }
            match out_2.result() {
                Some(r) => results.push(("norm2", r)),
                None => cexs.push(format!("norm2 fuel exhausted on {e}")),
            }
            for (name, r) in results {
                if !is_normal(r) {
                    cexs.push(format!("{name} produced a non-normal result on {e}: {r}"));
                }
                if is_normal(r) != (tested_if_count(r) == 0) {
                    cexs.push(format!("normality predicates disagree on {r}"));
                }
            }
            (cexs, u64::from(was_normal))
        })
        .collect();
    let mut cexs = Vec::new();
    let mut normal_members = 0u64;
    for (c, n) in per {
        cexs.extend(c);
        normal_members += n;
    }
    let notes = vec![format!(
        "{normal_members} already-normal members rechecked after norm2"
    )];
    finish(Suite::Isn, exprs.len() as u64, 0, cexs, notes)
}

// Normalizing a normal form changes nothing.
fn suite_idempotence(cfg: &SuiteConfig, exprs: &[Expr]) -> SuiteOutcome {
    let per: Vec<(Vec<String>, u64)> = exprs
        .par_iter()
        .map(|e| {
            let mut cexs = Vec::new();
            let first = norm(e, cfg.fuel_override.unwrap_or_else(|| norm_fuel(e)), false);
            match first.into_result() {
                None => cexs.push(format!("fuel exhausted on {e}")),
                Some(r1) => {
                    let second =
                        norm(&r1, cfg.fuel_override.unwrap_or_else(|| norm_fuel(&r1)), false);
                    match second.into_result() {
                        None => cexs.push(format!("fuel exhausted renormalizing {r1}")),
                        Some(r2) => {
                            if r1 != r2 {
                                cexs.push(format!(
                                    "not idempotent on {e}: {r1} then {r2}",
                                ));
                            }
                        }
                    }
                }
            }
            (cexs, 0)
        })
        .collect();
    let (cexs, _) = combine(per);
    finish(Suite::Idempotence, exprs.len() as u64, 0, cexs, vec![])
}

// norm(If(x, norm(y), norm(z))) = norm(If(x, y, z)) over the full triple
// product of the small sub-universe.
fn suite_fold_lemma(cfg: &SuiteConfig) -> SuiteOutcome {
    let sub_max = cfg.max_if_nodes.min(2);
    let sub = ExprUniverse::new(sub_max, cfg.alphabet.clone())
        .expect("config validated")
        .members();
    let fuel = cfg.fuel_override.unwrap_or(FOLD_LEMMA_FUEL);
    let mut normals: Vec<Expr> = Vec::with_capacity(sub.len());
    for member in &sub {
        match norm(member, fuel, false).into_result() {
            Some(r) => normals.push(r),
            None => {
                return finish(
                    Suite::FoldLemma,
                    sub.len() as u64,
                    0,
                    vec![format!("fuel exhausted prenormalizing {member}")],
                    vec![],
                );
            }
        }
    }
    // prenormalized branches equal to the originals make the two sides one
    // and the same expression; those triples hold by reflexivity
    let fixed: Vec<bool> = sub.iter().zip(&normals).map(|(e, n)| e == n).collect();
    let per: Vec<(Vec<String>, u64)> = sub
        .par_iter()
        .map(|x| {
            let mut cexs = Vec::new();
            let mut checked = 0u64;
            for ((y, ny), y_fixed) in sub.iter().zip(&normals).zip(&fixed) {
                for ((z, nz), z_fixed) in sub.iter().zip(&normals).zip(&fixed) {
                    checked += 1;
                    if *y_fixed && *z_fixed {
                        continue;
                    }
                    let folded = Expr::ite(x.clone(), ny.clone(), nz.clone());
                    let plain = Expr::ite(x.clone(), y.clone(), z.clone());
                    let rf = norm(&folded, fuel, false).into_result();
                    let rp = norm(&plain, fuel, false).into_result();
                    match (rf, rp) {
                        (Some(a), Some(b)) if a == b => {}
                        _ => cexs.push(format!(
                            "fold lemma fails at x={x}, y={y}, z={z}",
                        )),
                    }
                }
            }
            (cexs, checked)
        })
        .collect();
    let (cexs, triples) = combine(per);
    let notes = vec![format!(
        "full triple product over the {}-member sub-universe (max {sub_max} If nodes)",
        sub.len(),
    )];
    finish(Suite::FoldLemma, sub.len() as u64, triples, cexs, notes)
}

// All three algorithms preserve boolean meaning under every assignment.
fn suite_semantics(cfg: &SuiteConfig, exprs: &[Expr]) -> SuiteOutcome {
    let per: Vec<(Vec<String>, u64)> = exprs
        .par_iter()
        .map(|e| {
            let mut cexs = Vec::new();
            let out_n = norm(e, cfg.fuel_override.unwrap_or_else(|| norm_fuel(e)), false);
            let out_2 = norm2(e, cfg.fuel_override.unwrap_or(DEFAULT_NORM2_FUEL), false);
            let r1 = norm1(e);
            let mut results: Vec<(&str, &Expr)> = vec![("norm1", &r1)];
            match out_n.result() {
                Some(r) => results.push(("norm", r)),
                None => cexs.push(format!("norm fuel exhausted on {e}")),
            }
            match out_2.result() {
                Some(r) => results.push(("norm2", r)),
                None => cexs.push(format!("norm2 fuel exhausted on {e}")),
            }
            for (name, r) in results {
                match semantically_equal(e, r) {
                    Ok(true) => {}
                    Ok(false) => cexs.push(format!(
                        "{name} changed the meaning of {e}: {r}",
                    )),
                    Err(err) => cexs.push(format!("semantic check failed on {e}: {err}")),
                }
            }
            (cexs, 0)
        })
        .collect();
    let (cexs, _) = combine(per);
    finish(Suite::Semantics, exprs.len() as u64, 0, cexs, vec![])
}

// Every recorded call edge is an instance of the matching recursion relation
// and of the rule stamped on it.
fn suite_relation_edges(cfg: &SuiteConfig, exprs: &[Expr]) -> SuiteOutcome {
    let per: Vec<(Vec<String>, u64)> = exprs
        .par_iter()
        .map(|e| {
            let mut cexs = Vec::new();
            let mut edges = 0u64;
            let out_n = norm(e, cfg.fuel_override.unwrap_or_else(|| norm_fuel(e)), true);
            for edge in out_n.trace.as_deref().unwrap_or(&[]) {
                edges += 1;
                if !matches!(
                    edge.rule,
                    RuleTag::IfAtLeft | RuleTag::IfAtRight | RuleTag::IfIf
                ) {
                    cexs.push(format!("foreign rule {} in a norm trace", edge.rule.name()));
                }
                if !prec_norm(&edge.callee, &edge.caller) {
                    cexs.push(format!(
                        "norm edge outside the relation: {} -> {}",
                        edge.caller, edge.callee,
                    ));
                }
                if !edge_shape_ok(edge) {
                    cexs.push(format!(
                        "edge disagrees with its rule {}: {} -> {}",
                        edge.rule.name(),
                        edge.caller,
                        edge.callee,
                    ));
                }
            }
            let out_2 = norm2(e, cfg.fuel_override.unwrap_or(DEFAULT_NORM2_FUEL), true);
            for edge in out_2.trace.as_deref().unwrap_or(&[]) {
                edges += 1;
                if !matches!(
                    edge.rule,
                    RuleTag::IfAtLeft
                        | RuleTag::IfAtRight
                        | RuleTag::IfIfInnerV
                        | RuleTag::IfIfInnerW
                        | RuleTag::IfIfOuter
                ) {
                    cexs.push(format!(
                        "foreign rule {} in a norm2 trace",
                        edge.rule.name(),
                    ));
                }
                if !prec_norm2(&edge.callee, &edge.caller) {
                    cexs.push(format!(
                        "norm2 edge outside the relation: {} -> {}",
                        edge.caller, edge.callee,
                    ));
                }
                if !edge_shape_ok(edge) {
                    cexs.push(format!(
                        "edge disagrees with its rule {}: {} -> {}",
                        edge.rule.name(),
                        edge.caller,
                        edge.callee,
                    ));
                }
            }
            (cexs, edges)
        })
        .collect();
    let (cexs, edges) = combine(per);
    finish(Suite::RelationEdges, exprs.len() as u64, edges, cexs, vec![])
}

// The callee an edge records must be the one its rule constructs from the
// caller; the outer norm2 call is constrained to normal branches under the
// caller's inner test.
fn edge_shape_ok(edge: &CallEdge) -> bool {
    let Expr::If(test, y, z) = &edge.caller else {
        return false;
    };
    // arm == If(t, y, z), compared component-wise so nothing is built
    let branch_pair = |arm: &Expr, t: &Expr| -> bool {
        let Expr::If(at, ay, az) = arm else {
            return false;
        };
        at.as_ref() == t && ay == y && az == z
    };
    match edge.rule {
        RuleTag::At => false,
        RuleTag::IfAtLeft => test.is_atom() && edge.callee == **y,
        RuleTag::IfAtRight => test.is_atom() && edge.callee == **z,
        RuleTag::IfIf | RuleTag::IfIfInnerV | RuleTag::IfIfInnerW | RuleTag::IfIfOuter => {
            let Expr::If(u, v, w) = test.as_ref() else {
                return false;
            };
            match edge.rule {
                RuleTag::IfIf => {
                    let Expr::If(cu, cv, cw) = &edge.callee else {
                        return false;
                    };
                    cu == u && branch_pair(cv, v) && branch_pair(cw, w)
                }
                RuleTag::IfIfInnerV => branch_pair(&edge.callee, v),
                RuleTag::IfIfInnerW => branch_pair(&edge.callee, w),
                RuleTag::IfIfOuter => {
                    let Expr::If(xt, xa, xb) = &edge.callee else {
                        return false;
                    };
                    xt == u && is_normal(xa) && is_normal(xb)
                }
                _ => unreachable!(),
            }
        }
    }
}

// The measures certify both relations: the call-count measure shrinks across
// every predecessor edge of the first, the lexicographic pair across every
// syntactic predecessor and recorded norm2 call edge of the second, plus
// sampled instances of its outer-call clause. Work is streamed per member so
// no global pair list is ever materialized.
fn suite_lex_witness(cfg: &SuiteConfig, exprs: &[Expr]) -> SuiteOutcome {
    let fuel2 = cfg.fuel_override.unwrap_or(DEFAULT_NORM2_FUEL);
    // outer-call clause, sampled: candidate branches come from the small
    // normal pool instead of only the traces
    let pool_max = cfg.max_if_nodes.min(1);
    let pool: Vec<Expr> = ExprUniverse::new(pool_max, cfg.alphabet.clone())
        .expect("config validated")
        .members()
        .into_iter()
        .filter(is_normal)
        .collect();
    let per: Vec<(Vec<String>, [u64; 3])> = exprs
        .par_iter()
        .map(|e| {
            let mut cexs = Vec::new();
            let mut m_edges = 0u64;
            let mut lex_edges = 0u64;
            let mut sampled = 0u64;

            let m_e = norm_measure(e);
            for x in preds_norm(e) {
                m_edges += 1;
                if norm_measure(&x) >= m_e {
                    cexs.push(format!(
                        "measure fails to decrease under PREC_NORM: x={x}, y={e}",
                    ));
                }
            }

            let lex_e = norm2_lex_measure(e);
            let lex_check = |x: &Expr, y: &Expr, cexs: &mut Vec<String>| {
                if norm2_lex_measure(x) >= norm2_lex_measure(y) {
                    cexs.push(format!(
                        "lex measure fails to decrease under PREC_NORM2: x={x}, y={y}",
                    ));
                }
            };
            if let Expr::If(test, y, z) = e {
                if let Expr::If(_, v, w) = test.as_ref() {
                    let inner_v = Expr::If(v.clone(), y.clone(), z.clone());
                    lex_edges += 1;
                    lex_check(&inner_v, e, &mut cexs);
                    let inner_w = Expr::If(w.clone(), y.clone(), z.clone());
                    if inner_w != inner_v {
                        lex_edges += 1;
                        lex_check(&inner_w, e, &mut cexs);
                    }
                }
            }
            let out = norm2(e, fuel2, true);
            for edge in out.trace.as_deref().unwrap_or(&[]) {
                lex_edges += 1;
                lex_check(&edge.callee, &edge.caller, &mut cexs);
            }

            if let Expr::If(test, _, _) = e {
                if let Expr::If(u, _, _) = test.as_ref() {
                    for v_prime in &pool {
                        for w_prime in &pool {
                            sampled += 1;
                            let x = Expr::ite(
                                u.as_ref().clone(),
                                v_prime.clone(),
                                w_prime.clone(),
                            );
                            if !prec_norm2(&x, e) {
                                cexs.push(format!(
                                    "outer-call instance not in the relation: x={x}, y={e}",
                                ));
                            } else if norm2_lex_measure(&x) >= lex_e {
                                cexs.push(format!(
                                    "lex measure fails on outer-call instance: x={x}, y={e}",
                                ));
                            }
                        }
                    }
                }
            }
            (cexs, [m_edges, lex_edges, sampled])
        })
        .collect();
    let mut cexs = Vec::new();
    let mut totals = [0u64; 3];
    for (c, counts) in per {
        cexs.extend(c);
        for (total, n) in totals.iter_mut().zip(counts) {
            *total += n;
        }
    }
    let [m_edges, lex_edges, sampled] = totals;
    let notes = vec![
        format!("{m_edges} edges under PREC_NORM"),
        format!("{lex_edges} edges under PREC_NORM2"),
        format!("{sampled} sampled outer-call instances"),
    ];
    finish(
        Suite::LexWitness,
        exprs.len() as u64,
        m_edges + lex_edges + sampled,
        cexs,
        notes,
    )
}

// The assumption-walk tautology checker agrees with the truth-table oracle,
// and its counterexamples really falsify.
fn suite_taut_oracle(exprs: &[Expr]) -> SuiteOutcome {
    let per: Vec<(Vec<String>, u64)> = exprs
        .par_iter()
        .map(|e| {
            let mut cexs = Vec::new();
            let walked = tautology_counterexample(e);
            match falsifying_assignment(e) {
                Err(err) => cexs.push(format!("oracle unavailable on {e}: {err}")),
                Ok(oracle) => {
                    if walked.is_none() != oracle.is_none() {
                        cexs.push(format!("walk and oracle disagree on {e}"));
                    }
                }
            }
            if let Some(rho) = &walked {
                if eval(e, rho) != Ok(false) {
                    cexs.push(format!(
                        "counterexample {rho} does not falsify {e}",
                    ));
                }
            }
            (cexs, 0)
        })
        .collect();
    let (cexs, _) = combine(per);
    finish(Suite::TautOracle, exprs.len() as u64, 0, cexs, vec![])
}

fn combine(per: Vec<(Vec<String>, u64)>) -> (Vec<String>, u64) {
    let mut cexs = Vec::new();
    let mut count = 0u64;
    for (c, n) in per {
        cexs.extend(c);
        count += n;
    }
    (cexs, count)
}
