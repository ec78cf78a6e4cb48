//! Recursion relations behind the two fueled normalizers.
//!
//! `prec_norm` relates each recursive-call argument of `norm` to the argument
//! of the enclosing call; `prec_norm2` does the same for `norm2`, whose
//! outer If-If call is only constrained up to normal inner results. Both are
//! decidable by destructuring alone. Well-foundedness is evidenced at desk
//! scale: a measure that strictly decreases across every edge
//! ([`verify_measure_witness`]) and bounded longest-chain searches
//! ([`longest_chain`]).

use serde::Serialize;

use crate::expr::Expr;
use crate::measures::{norm2_lex_measure, norm_measure};
use crate::normalize::{is_normal, norm2};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RelationKind {
    PrecNorm,
    PrecNorm2,
}

impl RelationKind {
    pub fn name(self) -> &'static str {
        match self {
            RelationKind::PrecNorm => "PREC_NORM",
            RelationKind::PrecNorm2 => "PREC_NORM2",
        }
    }
}

impl std::fmt::Display for RelationKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// The arguments of the recursive calls `norm` makes on `e`, as a set:
/// none for an atom, the two branches for an atom-tested `If` (one if the
/// branches coincide), and the single rewritten expression for a tested `If`.
pub fn preds_norm(e: &Expr) -> Vec<Expr> {
    match e {
        Expr::Atom(_) => Vec::new(),
        Expr::If(test, y, z) => match test.as_ref() {
            Expr::Atom(_) => {
                let mut preds = vec![y.as_ref().clone()];
                if z != y {
                    preds.push(z.as_ref().clone());
                }
                preds
            }
            Expr::If(u, v, w) => vec![Expr::ite(
                u.as_ref().clone(),
                Expr::If(v.clone(), y.clone(), z.clone()),
                Expr::If(w.clone(), y.clone(), z.clone()),
            )],
        },
    }
}

/// `norm`'s recursion relation, decided clause by clause without building
/// candidate expressions (an independent route from [`preds_norm`]):
///
/// * nothing is below an atom;
/// * below `If(Atom(a), y, z)` are exactly `y` and `z`;
/// * below `If(If(u, v, w), y, z)` is exactly `If(u, If(v, y, z), If(w, y, z))`.
pub fn prec_norm(x: &Expr, y: &Expr) -> bool {
    match y {
        Expr::Atom(_) => false,
        Expr::If(test, then_b, else_b) => match test.as_ref() {
            Expr::Atom(_) => x == then_b.as_ref() || x == else_b.as_ref(),
            Expr::If(u, v, w) => {
                let Expr::If(xt, xa, xb) = x else {
                    return false;
                };
                let Expr::If(at, ay, az) = xa.as_ref() else {
                    return false;
                };
                let Expr::If(bt, by, bz) = xb.as_ref() else {
                    return false;
                };
                xt == u
                    && at == v
                    && bt == w
                    && ay == then_b
                    && by == then_b
                    && az == else_b
                    && bz == else_b
            }
        },
    }
}

/// `norm2`'s recursion relation:
///
/// * nothing is below an atom;
/// * below `If(Atom(a), y, z)` are exactly `y` and `z`;
/// * below `If(If(u, v, w), y, z)` are `If(v, y, z)`, `If(w, y, z)`, and every
///   `If(u, v', w')` whose branches `v'`, `w'` are in normal form (the shapes
///   the outer call can receive once the inner calls have finished).
///
/// The last clause is decided by destructuring `x`; no search over `v'`, `w'`
/// is needed because the clause fixes `x`'s shape completely.
pub fn prec_norm2(x: &Expr, y: &Expr) -> bool {
    match y {
        Expr::Atom(_) => false,
        Expr::If(test, then_b, else_b) => match test.as_ref() {
            Expr::Atom(_) => x == then_b.as_ref() || x == else_b.as_ref(),
            Expr::If(u, v, w) => {
                let Expr::If(xt, xa, xb) = x else {
                    return false;
                };
                let from_inner =
                    (xt == v || xt == w) && xa == then_b && xb == else_b;
                let from_outer = xt == u && is_normal(xa) && is_normal(xb);
                from_inner || from_outer
            }
        },
    }
}

/// Result of a bounded descending-chain search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainReport {
    pub start: Expr,
    /// Length in edges of the longest chain found; 0 when nothing is below
    /// `start`.
    pub longest: u64,
    /// The search ran out of its visit budget. The reported chain is then a
    /// lower bound, not a maximum.
    pub budget_hit: bool,
    /// Strictly descending, `witness_chain[0] == start`.
    pub witness_chain: Vec<Expr>,
}

/// Depth-first search for the longest strictly-descending chain from `start`,
/// visiting at most `budget` nodes. For [`RelationKind::PrecNorm2`] the
/// existential predecessors `If(u, v', w')` are drawn from `pool`, filtered to
/// normal forms; the syntactic predecessors need no pool.
pub fn longest_chain(
    kind: RelationKind,
    start: &Expr,
    budget: u64,
    pool: &[Expr],
) -> ChainReport {
    let normal_pool: Vec<&Expr> = pool.iter().filter(|e| is_normal(e)).collect();
    let mut visits: u64 = 0;
    let mut budget_hit = false;
    let witness_chain = descend(
        kind,
        start,
        &normal_pool,
        budget,
        &mut visits,
        &mut budget_hit,
    );
    ChainReport {
        start: start.clone(),
        longest: (witness_chain.len() - 1) as u64,
        budget_hit,
        witness_chain,
    }
}

fn descend(
    kind: RelationKind,
    cur: &Expr,
    pool: &[&Expr],
    budget: u64,
    visits: &mut u64,
    budget_hit: &mut bool,
) -> Vec<Expr> {
    *visits += 1;
    if *visits > budget {
        *budget_hit = true;
        return vec![cur.clone()];
    }
    let preds = match kind {
        RelationKind::PrecNorm => preds_norm(cur),
        RelationKind::PrecNorm2 => preds_norm2_from_pool(cur, pool),
    };
    let mut best: Vec<Expr> = Vec::new();
    for pred in &preds {
        if *budget_hit {
            break;
        }
        let sub = descend(kind, pred, pool, budget, visits, budget_hit);
        if sub.len() > best.len() {
            best = sub;
        }
    }
    let mut chain = Vec::with_capacity(best.len() + 1);
    chain.push(cur.clone());
    chain.extend(best);
    chain
}

// Finite predecessor set for the chain search under prec_norm2: the two
// syntactic clauses exactly, plus existential candidates built from the pool.
fn preds_norm2_from_pool(e: &Expr, pool: &[&Expr]) -> Vec<Expr> {
    let mut preds: Vec<Expr> = Vec::new();
    let push = |candidate: Expr, preds: &mut Vec<Expr>| {
        if !preds.contains(&candidate) {
            preds.push(candidate);
        }
    };
    if let Expr::If(test, y, z) = e {
        match test.as_ref() {
            Expr::Atom(_) => {
                push(y.as_ref().clone(), &mut preds);
                push(z.as_ref().clone(), &mut preds);
            }
            Expr::If(u, v, w) => {
                push(
                    Expr::If(v.clone(), y.clone(), z.clone()),
                    &mut preds,
                );
                push(
                    Expr::If(w.clone(), y.clone(), z.clone()),
                    &mut preds,
                );
                for v_prime in pool {
                    for w_prime in pool {
                        push(
                            Expr::ite(
                                u.as_ref().clone(),
                                (*v_prime).clone(),
                                (*w_prime).clone(),
                            ),
                            &mut preds,
                        );
                    }
                }
            }
        }
    }
    preds
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessPair {
    pub x: Expr,
    pub y: Expr,
}

/// Outcome of checking that the relation's standing measure strictly
/// decreases across every collected edge.
#[derive(Debug, Clone)]
pub struct WitnessReport {
    pub kind: RelationKind,
    pub edges_checked: u64,
    /// Edges where the measure failed to decrease, sorted by canonical print.
    pub counterexamples: Vec<WitnessPair>,
}

impl WitnessReport {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct PairJson {
            x: String,
            y: String,
        }
        #[derive(Serialize)]
        #[serde(rename_all = "camelCase")]
        struct ReportJson {
            kind: &'static str,
            edges_checked: u64,
            counterexamples: Vec<PairJson>,
        }
        let mirror = ReportJson {
            kind: self.kind.name(),
            edges_checked: self.edges_checked,
            counterexamples: self
                .counterexamples
                .iter()
                .map(|pair| PairJson {
                    x: pair.x.to_string(),
                    y: pair.y.to_string(),
                })
                .collect(),
        };
        serde_json::to_string(&mirror).expect("report serialization is infallible")
    }
}

/// Collect relation edges over `exprs` and check the standing measure on each:
/// the call-count measure for [`RelationKind::PrecNorm`] (edges are the
/// predecessor sets of every expression), the lexicographic pair for
/// [`RelationKind::PrecNorm2`] (edges come from `norm2` traces, run with
/// `fuel`, plus the syntactic predecessor clauses). Duplicate edges are
/// counted once.
pub fn verify_measure_witness(kind: RelationKind, exprs: &[Expr], fuel: u64) -> WitnessReport {
    let mut pairs: Vec<WitnessPair> = Vec::new();
    match kind {
        RelationKind::PrecNorm => {
            for e in exprs {
                for x in preds_norm(e) {
                    pairs.push(WitnessPair { x, y: e.clone() });
                }
            }
        }
        RelationKind::PrecNorm2 => {
            for e in exprs {
                if let Expr::If(test, y, z) = e {
                    match test.as_ref() {
                        Expr::Atom(_) => {
                            pairs.push(WitnessPair {
                                x: y.as_ref().clone(),
                                y: e.clone(),
                            });
                            pairs.push(WitnessPair {
                                x: z.as_ref().clone(),
                                y: e.clone(),
                            });
                        }
                        Expr::If(_, v, w) => {
                            pairs.push(WitnessPair {
                                x: Expr::If(v.clone(), y.clone(), z.clone()),
                                y: e.clone(),
                            });
                            pairs.push(WitnessPair {
                                x: Expr::If(w.clone(), y.clone(), z.clone()),
                                y: e.clone(),
                            });
                        }
                    }
                }
                let out = norm2(e, fuel, true);
                for edge in out.trace.as_deref().unwrap_or(&[]) {
                    pairs.push(WitnessPair {
                        x: edge.callee.clone(),
                        y: edge.caller.clone(),
                    });
                }
            }
        }
    }
    pairs.sort_by_cached_key(|pair| (pair.x.to_string(), pair.y.to_string()));
    pairs.dedup();
    let edges_checked = pairs.len() as u64;
    let counterexamples: Vec<WitnessPair> = pairs
        .into_iter()
        .filter(|pair| match kind {
            RelationKind::PrecNorm => norm_measure(&pair.x) >= norm_measure(&pair.y),
            RelationKind::PrecNorm2 => {
                norm2_lex_measure(&pair.x) >= norm2_lex_measure(&pair.y)
            }
        })
        .collect();
    WitnessReport {
        kind,
        edges_checked,
        counterexamples,
    }
}
