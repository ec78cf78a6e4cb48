//! Boolean meaning of expressions and a tautology checker.
//!
//! An atom is a propositional letter; `If(x, y, z)` means `y` when `x` is
//! true and `z` otherwise. There are no boolean constants in the datatype,
//! so the tautology checker works with assumption contexts instead of
//! constant folding: it normalizes first, then walks the normal form
//! remembering which atoms the path has forced true or false.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::expr::{Expr, Symbol};
use crate::normalize::norm1;

/// Atom count above which brute-force assignment enumeration is refused.
pub const BRUTE_FORCE_ATOM_LIMIT: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemanticsError {
    #[error("atom `{0}` has no binding in the assignment")]
    UnboundAtom(Symbol),
    #[error("{count} atoms exceed the brute-force limit of {limit}")]
    TooManyAtoms { count: usize, limit: usize },
}

/// A total map from atoms to booleans, printed as `a=1,b=0` in symbol order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Assignment(BTreeMap<Symbol, bool>);

impl Assignment {
    pub fn new() -> Self {
        Assignment::default()
    }

    pub fn set(&mut self, sym: Symbol, value: bool) {
        self.0.insert(sym, value);
    }

    pub fn get(&self, sym: &Symbol) -> Option<bool> {
        self.0.get(sym).copied()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl std::fmt::Display for Assignment {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for (i, (sym, value)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}={}", sym, if *value { 1 } else { 0 })?;
        }
        Ok(())
    }
}

/// Evaluate under a total assignment; an unbound atom is an error.
pub fn eval(e: &Expr, rho: &Assignment) -> Result<bool, SemanticsError> {
    let mut cur = e;
    loop {
        match cur {
            Expr::Atom(sym) => {
                return rho
                    .get(sym)
                    .ok_or_else(|| SemanticsError::UnboundAtom(sym.clone()));
            }
            Expr::If(test, y, z) => {
                cur = if eval(test, rho)? { y } else { z };
            }
        }
    }
}

/// Brute-force equivalence: equal under every assignment over the combined
/// atoms of both expressions. Guarded by [`BRUTE_FORCE_ATOM_LIMIT`].
pub fn semantically_equal(e1: &Expr, e2: &Expr) -> Result<bool, SemanticsError> {
    let mut atoms = e1.atoms();
    for sym in e2.atoms() {
        if !atoms.contains(&sym) {
            atoms.push(sym);
        }
    }
    guard_atom_count(atoms.len())?;
    for bits in 0..(1u64 << atoms.len()) {
        let rho = assignment_from_bits(&atoms, bits);
        if eval(e1, &rho)? != eval(e2, &rho)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Truth-table oracle: the first assignment (in bit-counting order over the
/// atoms in first-occurrence order) under which `e` is false, if any.
pub fn falsifying_assignment(e: &Expr) -> Result<Option<Assignment>, SemanticsError> {
    let atoms = e.atoms();
    guard_atom_count(atoms.len())?;
    for bits in 0..(1u64 << atoms.len()) {
        let rho = assignment_from_bits(&atoms, bits);
        if !eval(e, &rho)? {
            return Ok(Some(rho));
        }
    }
    Ok(None)
}

/// True under every assignment of its atoms.
pub fn is_tautology(e: &Expr) -> bool {
    tautology_counterexample(e).is_none()
}

/// Normalize with `norm1`, then walk the normal form carrying the atoms each
/// path assumes true or false. Returns a falsifying assignment (path
/// assumptions, remaining atoms false), or `None` for a tautology.
pub fn tautology_counterexample(e: &Expr) -> Option<Assignment> {
    let normal = norm1(e);
    let mut ctx = BTreeMap::new();
    let falsifying = walk(&normal, &mut ctx)?;
    let mut rho = Assignment(falsifying);
    for sym in e.atoms() {
        if rho.get(&sym).is_none() {
            rho.set(sym, false);
        }
    }
    Some(rho)
}

fn guard_atom_count(count: usize) -> Result<(), SemanticsError> {
    if count > BRUTE_FORCE_ATOM_LIMIT {
        return Err(SemanticsError::TooManyAtoms {
            count,
            limit: BRUTE_FORCE_ATOM_LIMIT,
        });
    }
    Ok(())
}

fn assignment_from_bits(atoms: &[Symbol], bits: u64) -> Assignment {
    let mut rho = Assignment::new();
    for (j, sym) in atoms.iter().enumerate() {
        rho.set(sym.clone(), (bits >> j) & 1 == 1);
    }
    rho
}

// Search for a falsifying context. Every test is an atom here: the input is
// a normal form.
fn walk(
    e: &Expr,
    ctx: &mut BTreeMap<Symbol, bool>,
) -> Option<BTreeMap<Symbol, bool>> {
    match e {
        Expr::Atom(sym) => match ctx.get(sym) {
            Some(true) => None,
            Some(false) => Some(ctx.clone()),
            None => {
                let mut falsifying = ctx.clone();
                falsifying.insert(sym.clone(), false);
                Some(falsifying)
            }
        },
        Expr::If(test, y, z) => {
            let Expr::Atom(sym) = test.as_ref() else {
                unreachable!("tautology walk reached a tested If; input was not normal")
            };
            match ctx.get(sym).copied() {
                Some(true) => walk(y, ctx),
                Some(false) => walk(z, ctx),
                None => {
                    ctx.insert(sym.clone(), true);
                    if let Some(falsifying) = walk(y, ctx) {
                        ctx.remove(sym);
                        return Some(falsifying);
                    }
                    ctx.insert(sym.clone(), false);
                    let result = walk(z, ctx);
                    ctx.remove(sym);
                    result
                }
            }
        }
    }
}
