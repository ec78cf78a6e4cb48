//! Termination measures and well-founded-relation combinators.
//!
//! `norm_measure` is the multiplicative measure that strictly decreases across
//! every recursive call of `norm`; `norm2_lex_measure` is the lexicographic
//! pair (tested-`If` count, size) that does the same job for `norm2`. Both are
//! checked empirically by the verification suites rather than assumed.

use std::fmt;

use num_bigint::BigUint;

use crate::expr::Expr;

/// Measure values are unbounded nonnegative integers: the multiplicative
/// measure overflows 64-bit arithmetic at modest depths and the decrease
/// checks need exact results.
pub type Measure = BigUint;

/// Multiplicative termination measure for `norm`.
///
/// `m(Atom) = 1`, `m(If(x, y, z)) = m(x) + m(x)·m(y) + m(x)·m(z)`.
/// Always positive.
pub fn norm_measure(e: &Expr) -> Measure {
    match e {
        Expr::Atom(_) => BigUint::from(1u8),
        Expr::If(x, y, z) => {
            let mx = norm_measure(x);
            let my = norm_measure(y);
            let mz = norm_measure(z);
            &mx + &mx * my + &mx * mz
        }
    }
}

/// Number of tested `If`s: subexpressions whose test position is itself an
/// `If` node. Zero exactly on normal forms.
pub fn tested_if_count(e: &Expr) -> u64 {
    match e {
        Expr::Atom(_) => 0,
        Expr::If(x, y, z) => {
            let here = if x.is_atom() { 0 } else { 1 };
            here + tested_if_count(x) + tested_if_count(y) + tested_if_count(z)
        }
    }
}

/// Nesting depth along the test spine: `Atom` is 0, an `If` node is one more
/// than its test. Reconstructed counterpart of the classic tested-`If`
/// nesting counter; reported for comparison, not used by any gate.
pub fn if_depth(e: &Expr) -> u64 {
    let mut depth = 0;
    let mut cur = e;
    while let Expr::If(test, _, _) = cur {
        depth += 1;
        cur = test;
    }
    depth
}

/// Lexicographically ordered pair of tested-`If` count and size.
///
/// The derived `Ord` compares `tested_ifs` first, then `size`, which is
/// exactly the lexicographic combination.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LexMeasure {
    pub tested_ifs: u64,
    pub size: u64,
}

impl fmt::Display for LexMeasure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.tested_ifs, self.size)
    }
}

/// The uniqueness measure for `norm2`: (tested-`If` count, size).
pub fn norm2_lex_measure(e: &Expr) -> LexMeasure {
    LexMeasure {
        tested_ifs: tested_if_count(e),
        size: e.size(),
    }
}

type RelationFn<T> = dyn Fn(&T, &T) -> bool + Send + Sync;

/// A decidable binary relation over `T`.
pub struct Relation<T: ?Sized> {
    pred: Box<RelationFn<T>>,
}

impl<T: ?Sized> Relation<T> {
    pub fn from_fn(pred: impl Fn(&T, &T) -> bool + Send + Sync + 'static) -> Self {
        Relation {
            pred: Box::new(pred),
        }
    }

    /// Whether `lhs` is below `rhs`.
    pub fn holds(&self, lhs: &T, rhs: &T) -> bool {
        (self.pred)(lhs, rhs)
    }
}

/// The inverse image of `<` under a measure: `a' ≺ a  iff  f(a') < f(a)`.
/// Well-founded because `<` on the naturals is.
pub fn inverse_image<T, M, F>(f: F) -> Relation<T>
where
    T: ?Sized,
    M: Ord,
    F: Fn(&T) -> M + Send + Sync + 'static,
{
    Relation::from_fn(move |lhs, rhs| f(lhs) < f(rhs))
}

/// Lexicographic combination of two relations over pairs:
/// `(a', b') ≺ (a, b)  iff  a' ≺ a, or a' = a and b' ≺ b`.
pub fn lex_combine<A, B>(first: Relation<A>, second: Relation<B>) -> Relation<(A, B)>
where
    A: PartialEq + 'static,
    B: 'static,
{
    Relation::from_fn(move |lhs: &(A, B), rhs: &(A, B)| {
        first.holds(&lhs.0, &rhs.0) || (lhs.0 == rhs.0 && second.holds(&lhs.1, &rhs.1))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;

    fn e(text: &str) -> Expr {
        parse(text).unwrap()
    }

    #[test]
    fn measure_base_and_flat_if() {
        assert_eq!(norm_measure(&e("a")), BigUint::from(1u8));
        // 1 + 1·1 + 1·1
        assert_eq!(norm_measure(&e("(if a b c)")), BigUint::from(3u8));
    }

    #[test]
    fn measure_drops_across_the_tested_if_rewrite() {
        let before = e("(if (if a b c) y z)");
        let after = e("(if a (if b y z) (if c y z))");
        assert_eq!(norm_measure(&before), BigUint::from(9u8));
        assert_eq!(norm_measure(&after), BigUint::from(7u8));
        // difference is exactly m(u)·m(y) + m(u)·m(z) = 1 + 1
        assert_eq!(
            norm_measure(&before) - norm_measure(&after),
            BigUint::from(2u8),
        );
    }

    #[test]
    fn tested_if_counts() {
        assert_eq!(tested_if_count(&e("a")), 0);
        assert_eq!(tested_if_count(&e("(if a b c)")), 0);
        assert_eq!(tested_if_count(&e("(if (if u v w) y z)")), 1);
        assert_eq!(tested_if_count(&e("(if (if (if a b c) v w) y z)")), 2);
        assert_eq!(tested_if_count(&e("(if a (if (if u v w) y z) b)")), 1);
    }

    #[test]
    fn if_depth_walks_the_test_spine() {
        assert_eq!(if_depth(&e("a")), 0);
        assert_eq!(if_depth(&e("(if a b c)")), 1);
        assert_eq!(if_depth(&e("(if (if u v w) y z)")), 2);
        // only the test position deepens the spine
        assert_eq!(if_depth(&e("(if a (if u v w) (if p q r))")), 1);
    }

    #[test]
    fn lex_measure_components() {
        assert_eq!(
            norm2_lex_measure(&e("a")),
            LexMeasure { tested_ifs: 0, size: 1 },
        );
        assert_eq!(
            norm2_lex_measure(&e("(if (if u v w) y z)")),
            LexMeasure { tested_ifs: 1, size: 7 },
        );
        assert_eq!(
            norm2_lex_measure(&e("(if u p q)")),
            LexMeasure { tested_ifs: 0, size: 4 },
        );
    }

    #[test]
    fn lex_measure_orders_lexicographically() {
        let low = LexMeasure { tested_ifs: 0, size: 100 };
        let high = LexMeasure { tested_ifs: 1, size: 1 };
        assert!(low < high);
        assert!(LexMeasure { tested_ifs: 1, size: 3 } < LexMeasure { tested_ifs: 1, size: 9 });
        assert!(LexMeasure { tested_ifs: 1, size: 3 } >= LexMeasure { tested_ifs: 1, size: 3 });
    }

    #[test]
    fn inverse_image_of_measures() {
        let below_m = inverse_image(norm_measure);
        assert!(below_m.holds(&e("a"), &e("(if a b c)")));
        assert!(!below_m.holds(&e("(if a b c)"), &e("(if a b c)")));

        let below_size = inverse_image(Expr::size);
        assert!(!below_size.holds(&e("(if a b c)"), &e("a")));
    }

    #[test]
    fn lex_combine_matches_the_quoted_definition() {
        let lt = || inverse_image(|n: &u64| *n);
        let rel = lex_combine(lt(), lt());
        assert!(rel.holds(&(0, 5), &(1, 0)));
        assert!(rel.holds(&(1, 0), &(1, 5)));
        assert!(!rel.holds(&(1, 5), &(1, 5)));
        assert!(!rel.holds(&(2, 0), &(1, 9)));
    }
}
