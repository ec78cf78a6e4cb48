//! Exhaustive and random expression generators.
//!
//! Every verification suite quantifies over a [`ExprUniverse`]: the set of all
//! expressions with at most `max_if_nodes` `If` nodes whose atoms are drawn
//! from a fixed alphabet. Enumeration order is deterministic so golden files
//! and reports stay stable: ascending `If`-node count, then lexicographic on
//! the canonical print.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::expr::{Expr, Symbol};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum UniverseError {
    #[error("alphabet must be nonempty")]
    EmptyAlphabet,
    #[error("duplicate symbol {0} in alphabet")]
    DuplicateSymbol(Symbol),
}

/// All expressions with at most `max_if_nodes` `If` nodes over `alphabet`.
#[derive(Debug, Clone)]
pub struct ExprUniverse {
    max_if_nodes: usize,
    alphabet: Vec<Symbol>,
}

impl ExprUniverse {
    pub fn new(max_if_nodes: usize, alphabet: Vec<Symbol>) -> Result<Self, UniverseError> {
        if alphabet.is_empty() {
            return Err(UniverseError::EmptyAlphabet);
        }
        for (i, s) in alphabet.iter().enumerate() {
            if alphabet[..i].contains(s) {
                return Err(UniverseError::DuplicateSymbol(s.clone()));
            }
        }
        Ok(ExprUniverse {
            max_if_nodes,
            alphabet,
        })
    }

    pub fn max_if_nodes(&self) -> usize {
        self.max_if_nodes
    }

    pub fn alphabet(&self) -> &[Symbol] {
        &self.alphabet
    }

    /// Every member exactly once: ascending `If` count, ties broken by
    /// canonical print.
    pub fn enumerate(&self) -> impl Iterator<Item = Expr> {
        self.layers().into_iter().flatten()
    }

    /// Members of the universe collected into a vector, in enumeration order.
    pub fn members(&self) -> Vec<Expr> {
        self.enumerate().collect()
    }

    // layers[k] = all expressions with exactly k If nodes, sorted by print
    fn layers(&self) -> Vec<Vec<Expr>> {
        let mut layers: Vec<Vec<Expr>> = Vec::with_capacity(self.max_if_nodes + 1);
        let mut atoms: Vec<Expr> = self.alphabet.iter().cloned().map(Expr::Atom).collect();
        atoms.sort_by_cached_key(|e| e.to_string());
        layers.push(atoms);
        for k in 1..=self.max_if_nodes {
            let mut layer = Vec::new();
            for k_test in 0..k {
                for k_then in 0..k - k_test {
                    let k_else = k - 1 - k_test - k_then;
                    for test in &layers[k_test] {
                        for then_branch in &layers[k_then] {
                            for else_branch in &layers[k_else] {
                                layer.push(Expr::ite(
                                    test.clone(),
                                    then_branch.clone(),
                                    else_branch.clone(),
                                ));
                            }
                        }
                    }
                }
            }
            layer.sort_by_cached_key(|e| e.to_string());
            layers.push(layer);
        }
        layers
    }
}

/// Deterministic random expression with depth at most `max_depth`.
///
/// The same seed always yields the same expression.
pub fn random_expr(seed: u64, max_depth: u32, alphabet: &[Symbol]) -> Expr {
    assert!(!alphabet.is_empty(), "alphabet must be nonempty");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    gen_expr(&mut rng, max_depth, alphabet)
}

fn gen_expr(rng: &mut ChaCha8Rng, depth_left: u32, alphabet: &[Symbol]) -> Expr {
    if depth_left == 0 || rng.random_bool(0.5) {
        let i = rng.random_range(0..alphabet.len());
        Expr::Atom(alphabet[i].clone())
    } else {
        let test = gen_expr(rng, depth_left - 1, alphabet);
        let then_branch = gen_expr(rng, depth_left - 1, alphabet);
        let else_branch = gen_expr(rng, depth_left - 1, alphabet);
        Expr::ite(test, then_branch, else_branch)
    }
}

/// Parse a comma-separated alphabet such as `a,b,c`.
pub fn parse_alphabet(text: &str) -> Result<Vec<Symbol>, crate::expr::SymbolError> {
    text.split(',').map(|t| Symbol::new(t.trim())).collect()
}
