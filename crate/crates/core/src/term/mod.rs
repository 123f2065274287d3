//! The unified term language shared by Lineal, Lambda-S and the sup-calculus.

mod canon;
mod linear;
mod pretty;
mod subst;
mod syntax;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::lambda_s::TypeExpr;
use crate::scalar::Scalar;

pub use canon::{alpha_ac_eq, canonicalize, term_cmp};
pub use linear::LinearForm;
pub use pretty::pretty;
pub(crate) use pretty::{church_selector_bits, ket_pair_bits};
pub use subst::{fresh_name, substitute};
pub(crate) use subst::subst_raw;
pub use syntax::{parse, parse_program, parse_type, ParseError, Program};

/// Which calculus a term belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Dialect {
    Lineal,
    LambdaS,
    Odot,
}

impl Dialect {
    pub const ALL: [Dialect; 3] = [Dialect::Lineal, Dialect::LambdaS, Dialect::Odot];

    /// Guesses the dialect from a corpus file extension.
    pub fn from_extension(ext: &str) -> Option<Dialect> {
        match ext {
            "lineal" => Some(Dialect::Lineal),
            "lams" => Some(Dialect::LambdaS),
            "sup" => Some(Dialect::Odot),
            _ => None,
        }
    }
}

impl fmt::Display for Dialect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Dialect::Lineal => "lineal",
            Dialect::LambdaS => "lambda-s",
            Dialect::Odot => "odot",
        })
    }
}

impl FromStr for Dialect {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "lineal" => Ok(Dialect::Lineal),
            "lambda-s" | "lams" => Ok(Dialect::LambdaS),
            "odot" | "sup" => Ok(Dialect::Odot),
            other => Err(format!("unknown dialect `{other}`")),
        }
    }
}

/// Terms of all three calculi.
///
/// `Sum` is n-ary, flattened and sorted once passed through
/// [`canonicalize`]. `Sup` is the ordered, binary ⊙-introduction of the
/// sup-calculus; it is neither associative nor commutative.
#[derive(Clone, Debug, PartialEq)]
pub enum Term {
    Var(String),
    Abs(String, Option<TypeExpr>, Box<Term>),
    App(Box<Term>, Box<Term>),
    Scale(Scalar, Box<Term>),
    Sum(Vec<Term>),
    Zero,
    Ket0,
    Ket1,
    IfThenElse(Box<Term>, Box<Term>, Box<Term>),
    Pair(Box<Term>, Box<Term>),
    /// Computational-basis measurement of an n-qubit register.
    Meas(usize),
    Star,
    Sup(Box<Term>, Box<Term>),
    DeltaPar(Box<Term>, String, Box<Term>, String, Box<Term>),
    DeltaMeas(Box<Term>, String, Box<Term>, String, Box<Term>),
    Parallel(Vec<Term>),
}

/// A path from the root to a subterm, as child indices.
pub type Position = Vec<usize>;

impl Term {
    pub fn var(x: impl Into<String>) -> Term {
        Term::Var(x.into())
    }

    pub fn abs(x: impl Into<String>, body: Term) -> Term {
        Term::Abs(x.into(), None, Box::new(body))
    }

    pub fn abs_typed(x: impl Into<String>, ty: TypeExpr, body: Term) -> Term {
        Term::Abs(x.into(), Some(ty), Box::new(body))
    }

    pub fn app(f: Term, a: Term) -> Term {
        Term::App(Box::new(f), Box::new(a))
    }

    /// Left-associated application `f a1 a2 …`.
    pub fn apps(f: Term, args: impl IntoIterator<Item = Term>) -> Term {
        args.into_iter().fold(f, Term::app)
    }

    pub fn scale(s: impl Into<Scalar>, t: Term) -> Term {
        Term::Scale(s.into(), Box::new(t))
    }

    /// An n-ary sum; collapses to the single summand or to `Zero`.
    pub fn sum(ts: impl IntoIterator<Item = Term>) -> Term {
        let mut v: Vec<Term> = Vec::new();
        for t in ts {
            match t {
                Term::Sum(inner) => v.extend(inner),
                other => v.push(other),
            }
        }
        match v.len() {
            0 => Term::Zero,
            1 => v.pop().unwrap(),
            _ => Term::Sum(v),
        }
    }

    pub fn ite(c: Term, t: Term, e: Term) -> Term {
        Term::IfThenElse(Box::new(c), Box::new(t), Box::new(e))
    }

    pub fn pair(a: Term, b: Term) -> Term {
        Term::Pair(Box::new(a), Box::new(b))
    }

    pub fn sup(a: Term, b: Term) -> Term {
        Term::Sup(Box::new(a), Box::new(b))
    }

    pub fn dpar(
        t: Term,
        x: impl Into<String>,
        r: Term,
        y: impl Into<String>,
        s: Term,
    ) -> Term {
        Term::DeltaPar(Box::new(t), x.into(), Box::new(r), y.into(), Box::new(s))
    }

    pub fn dmeas(
        t: Term,
        x: impl Into<String>,
        r: Term,
        y: impl Into<String>,
        s: Term,
    ) -> Term {
        Term::DeltaMeas(Box::new(t), x.into(), Box::new(r), y.into(), Box::new(s))
    }

    /// Name of the constructor, used in diagnostics.
    pub fn construct_name(&self) -> &'static str {
        match self {
            Term::Var(_) => "variable",
            Term::Abs(..) => "abstraction",
            Term::App(..) => "application",
            Term::Scale(..) => "scalar multiplication",
            Term::Sum(_) => "sum",
            Term::Zero => "null vector",
            Term::Ket0 | Term::Ket1 => "ket constant",
            Term::IfThenElse(..) => "if-then-else",
            Term::Pair(..) => "pair",
            Term::Meas(_) => "measurement pi",
            Term::Star => "star",
            Term::Sup(..) => "sup introduction",
            Term::DeltaPar(..) => "dpar eliminator",
            Term::DeltaMeas(..) => "dmeas eliminator",
            Term::Parallel(_) => "parallel",
        }
    }

    /// Whether this constructor may appear in `dialect`.
    pub fn legal_in(&self, dialect: Dialect) -> bool {
        use Dialect::*;
        match self {
            Term::Var(_) | Term::Abs(..) | Term::App(..) | Term::Scale(..) | Term::Zero => true,
            Term::Sum(_) => dialect != Odot,
            Term::Ket0 | Term::Ket1 | Term::IfThenElse(..) | Term::Pair(..) | Term::Meas(_) => {
                dialect == LambdaS
            }
            Term::Star
            | Term::Sup(..)
            | Term::DeltaPar(..)
            | Term::DeltaMeas(..)
            | Term::Parallel(_) => dialect == Odot,
        }
    }

    /// Returns the first constructor that is illegal in `dialect`.
    pub fn dialect_violation(&self, dialect: Dialect) -> Option<&Term> {
        if !self.legal_in(dialect) {
            return Some(self);
        }
        self.children().into_iter().find_map(|c| c.dialect_violation(dialect))
    }

    pub fn children(&self) -> Vec<&Term> {
        match self {
            Term::Var(_)
            | Term::Zero
            | Term::Ket0
            | Term::Ket1
            | Term::Meas(_)
            | Term::Star => vec![],
            Term::Abs(_, _, b) | Term::Scale(_, b) => vec![b],
            Term::App(a, b) | Term::Pair(a, b) | Term::Sup(a, b) => vec![a, b],
            Term::Sum(ts) | Term::Parallel(ts) => ts.iter().collect(),
            Term::IfThenElse(a, b, c)
            | Term::DeltaPar(a, _, b, _, c)
            | Term::DeltaMeas(a, _, b, _, c) => vec![a, b, c],
        }
    }

    fn child_mut(&mut self, i: usize) -> Option<&mut Term> {
        match (self, i) {
            (Term::Abs(_, _, b), 0) | (Term::Scale(_, b), 0) => Some(b),
            (Term::App(a, _), 0) | (Term::Pair(a, _), 0) | (Term::Sup(a, _), 0) => Some(a),
            (Term::App(_, b), 1) | (Term::Pair(_, b), 1) | (Term::Sup(_, b), 1) => Some(b),
            (Term::Sum(ts), i) | (Term::Parallel(ts), i) => ts.get_mut(i),
            (Term::IfThenElse(a, _, _), 0)
            | (Term::DeltaPar(a, _, _, _, _), 0)
            | (Term::DeltaMeas(a, _, _, _, _), 0) => Some(a),
            (Term::IfThenElse(_, b, _), 1)
            | (Term::DeltaPar(_, _, b, _, _), 1)
            | (Term::DeltaMeas(_, _, b, _, _), 1) => Some(b),
            (Term::IfThenElse(_, _, c), 2)
            | (Term::DeltaPar(_, _, _, _, c), 2)
            | (Term::DeltaMeas(_, _, _, _, c), 2) => Some(c),
            _ => None,
        }
    }

    pub fn subterm(&self, pos: &[usize]) -> Option<&Term> {
        match pos.split_first() {
            None => Some(self),
            Some((&i, rest)) => self.children().get(i)?.subterm(rest),
        }
    }

    /// Copy of `self` with the subterm at `pos` replaced.
    pub fn replace_at(&self, pos: &[usize], new: Term) -> Option<Term> {
        let mut out = self.clone();
        let mut cur = &mut out;
        for &i in pos {
            cur = cur.child_mut(i)?;
        }
        *cur = new;
        Some(out)
    }

    /// Number of constructor nodes.
    pub fn size(&self) -> usize {
        1 + self.children().iter().map(|c| c.size()).sum::<usize>()
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        subst::collect_free(self, &mut Vec::new(), &mut out);
        out
    }

    pub fn is_closed(&self) -> bool {
        self.free_vars().is_empty()
    }

    pub fn occurs_free(&self, x: &str) -> bool {
        subst::occurs_free(self, x)
    }

    /// Classical values: variables, abstractions, kets, and pairs of those.
    pub fn is_basis_term(&self) -> bool {
        match self {
            Term::Var(_) | Term::Abs(..) | Term::Ket0 | Term::Ket1 => true,
            Term::Pair(a, b) => a.is_basis_term() && b.is_basis_term(),
            _ => false,
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&pretty(self, Dialect::LambdaS))
    }
}

pub fn free_vars(t: &Term) -> BTreeSet<String> {
    t.free_vars()
}

pub fn is_closed(t: &Term) -> bool {
    t.is_closed()
}

pub fn is_basis_term(t: &Term) -> bool {
    t.is_basis_term()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn delta_b(b: Term) -> Term {
        Term::abs(
            "x",
            Term::sum([Term::app(Term::var("x"), Term::var("x")), b]),
        )
    }

    #[test]
    fn free_variables() {
        let id = Term::abs("x", Term::var("x"));
        assert!(id.free_vars().is_empty());
        assert!(id.is_closed());
        let open = Term::abs("x", Term::app(Term::var("x"), Term::var("y")));
        assert_eq!(open.free_vars().into_iter().collect::<Vec<_>>(), vec!["y"]);
        assert!(!open.is_closed());
        let d = delta_b(id.clone());
        let yb = Term::app(d.clone(), d);
        assert!(yb.is_closed());
    }

    #[test]
    fn basis_terms() {
        assert!(Term::abs("x", Term::var("x")).is_basis_term());
        let sup = Term::sum([
            Term::scale(0.6, Term::Ket0),
            Term::scale(0.8, Term::Ket1),
        ]);
        assert!(!sup.is_basis_term());
        assert!(Term::pair(Term::Ket0, Term::Ket1).is_basis_term());
        assert!(!Term::pair(Term::Ket0, sup).is_basis_term());
    }

    #[test]
    fn positions_address_children() {
        let t = Term::app(Term::var("f"), Term::sum([Term::var("a"), Term::var("b")]));
        assert_eq!(t.subterm(&[1, 1]), Some(&Term::var("b")));
        let r = t.replace_at(&[1, 0], Term::Ket0).unwrap();
        assert_eq!(r.subterm(&[1, 0]), Some(&Term::Ket0));
        assert!(t.subterm(&[2]).is_none());
    }

    #[test]
    fn dialect_tags() {
        let t = Term::app(Term::Meas(1), Term::Ket0);
        assert!(t.dialect_violation(Dialect::LambdaS).is_none());
        assert_eq!(
            t.dialect_violation(Dialect::Lineal).map(Term::construct_name),
            Some("measurement pi")
        );
        assert!(Term::Star.dialect_violation(Dialect::Lineal).is_some());
    }
}
