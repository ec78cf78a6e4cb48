//! The conditional-expression datatype and its concrete syntax.
//!
//! An expression is either an atom (a propositional letter) or a three-way
//! `If` node. The concrete syntax is `expr ::= SYMBOL | "(" "if" expr expr expr ")"`,
//! whitespace-insensitive between tokens, with `SYMBOL` matching
//! `[A-Za-z_][A-Za-z0-9_]*` and the word `if` reserved.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Invalid atom name.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymbolError {
    #[error("empty symbol")]
    Empty,
    #[error("`if` is reserved and cannot be used as an atom")]
    Reserved,
    #[error("invalid character {ch:?} in symbol {name:?}")]
    BadChar { name: String, ch: char },
}

/// An atom name. Nonempty, `[A-Za-z_][A-Za-z0-9_]*`, never the word `if`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol(String);

impl Symbol {
    pub fn new(name: impl Into<String>) -> Result<Self, SymbolError> {
        let name = name.into();
        let mut chars = name.chars();
        match chars.next() {
            None => return Err(SymbolError::Empty),
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
            Some(c) => return Err(SymbolError::BadChar { name, ch: c }),
        }
        if let Some(ch) = chars.find(|c| !c.is_ascii_alphanumeric() && *c != '_') {
            return Err(SymbolError::BadChar { name, ch });
        }
        if name == "if" {
            return Err(SymbolError::Reserved);
        }
        Ok(Symbol(name))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A conditional expression: an atom, or `If(test, then, else)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Expr {
    Atom(Symbol),
    If(Box<Expr>, Box<Expr>, Box<Expr>),
}

impl Expr {
    pub fn atom(sym: Symbol) -> Expr {
        Expr::Atom(sym)
    }

    /// Build an `If` node.
    pub fn ite(test: Expr, then_branch: Expr, else_branch: Expr) -> Expr {
        Expr::If(Box::new(test), Box::new(then_branch), Box::new(else_branch))
    }

    pub fn is_atom(&self) -> bool {
        matches!(self, Expr::Atom(_))
    }

    /// Total node count: atoms and `If` nodes each count 1.
    pub fn size(&self) -> u64 {
        match self {
            Expr::Atom(_) => 1,
            Expr::If(x, y, z) => 1 + x.size() + y.size() + z.size(),
        }
    }

    /// Number of `If` nodes.
    pub fn if_count(&self) -> u64 {
        match self {
            Expr::Atom(_) => 0,
            Expr::If(x, y, z) => 1 + x.if_count() + y.if_count() + z.if_count(),
        }
    }

    /// Nesting depth: 0 for an atom, 1 + max over children for an `If` node.
    pub fn depth(&self) -> u64 {
        match self {
            Expr::Atom(_) => 0,
            Expr::If(x, y, z) => 1 + x.depth().max(y.depth()).max(z.depth()),
        }
    }

    /// Distinct atoms in first-occurrence order.
    pub fn atoms(&self) -> Vec<Symbol> {
        let mut out = Vec::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut Vec<Symbol>) {
        match self {
            Expr::Atom(s) => {
                if !out.contains(s) {
                    out.push(s.clone());
                }
            }
            Expr::If(x, y, z) => {
                x.collect_atoms(out);
                y.collect_atoms(out);
                z.collect_atoms(out);
            }
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Atom(s) => write!(f, "{s}"),
            Expr::If(x, y, z) => write!(f, "(if {x} {y} {z})"),
        }
    }
}

/// Syntax error, with the byte offset where it was detected.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("unexpected end of input at byte {pos}")]
    UnexpectedEof { pos: usize },
    #[error("unexpected character {ch:?} at byte {pos}")]
    UnexpectedChar { ch: char, pos: usize },
    #[error("expected `if` after `(` at byte {pos}")]
    ExpectedIf { pos: usize },
    #[error("reserved word `if` used as an atom at byte {pos}")]
    ReservedAtom { pos: usize },
    #[error("trailing input after expression at byte {pos}")]
    TrailingInput { pos: usize },
}

/// Parse the canonical concrete syntax. Inverse of [`Expr`]'s `Display`.
pub fn parse(text: &str) -> Result<Expr, ParseError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    p.skip_ws();
    let expr = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(ParseError::TrailingInput { pos: p.pos });
    }
    Ok(expr)
}

impl FromStr for Expr {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        match self.peek() {
            None => Err(ParseError::UnexpectedEof { pos: self.pos }),
            Some(b'(') => {
                self.pos += 1;
                self.skip_ws();
                let start = self.pos;
                if self.word()? != "if" {
                    return Err(ParseError::ExpectedIf { pos: start });
                }
                self.skip_ws();
                let test = self.expr()?;
                self.skip_ws();
                let then_branch = self.expr()?;
                self.skip_ws();
                let else_branch = self.expr()?;
                self.skip_ws();
                match self.peek() {
                    Some(b')') => {
                        self.pos += 1;
                        Ok(Expr::ite(test, then_branch, else_branch))
                    }
                    Some(ch) => Err(ParseError::UnexpectedChar {
                        ch: ch as char,
                        pos: self.pos,
                    }),
                    None => Err(ParseError::UnexpectedEof { pos: self.pos }),
                }
            }
            Some(_) => {
                let start = self.pos;
                let word = self.word()?;
                match Symbol::new(word) {
                    Ok(sym) => Ok(Expr::Atom(sym)),
                    Err(SymbolError::Reserved) => Err(ParseError::ReservedAtom { pos: start }),
                    // `word` only accepts symbol characters, so the first one is the offender
                    Err(_) => Err(ParseError::UnexpectedChar {
                        ch: self.src[start] as char,
                        pos: start,
                    }),
                }
            }
        }
    }

    fn word(&mut self) -> Result<&str, ParseError> {
        let start = self.pos;
        while self.pos < self.src.len() {
            let b = self.src[self.pos];
            if b.is_ascii_alphanumeric() || b == b'_' {
                self.pos += 1;
            } else {
                break;
            }
        }
        if self.pos == start {
            return match self.peek() {
                Some(ch) => Err(ParseError::UnexpectedChar {
                    ch: ch as char,
                    pos: self.pos,
                }),
                None => Err(ParseError::UnexpectedEof { pos: self.pos }),
            };
        }
        // the scanned range is ASCII
        Ok(std::str::from_utf8(&self.src[start..self.pos]).unwrap())
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }
}
