//! Matching and contracting single redexes.

use std::cell::Cell;

use super::{EngineConfig, Redex, RuleGroup, RuleId, Site};
use crate::odot;
use crate::scalar::Scalar;
use crate::term::{alpha_ac_eq, subst_raw, Dialect, Term};

use RuleGroup::*;

const fn r(group: RuleGroup, index: u8) -> RuleId {
    RuleId::new(group, index)
}

/// Shared state of one enumeration: the config and the node budget that
/// bounds nested normality checks.
pub(super) struct Matcher<'a> {
    pub cfg: &'a EngineConfig,
    budget: Cell<usize>,
}

impl<'a> Matcher<'a> {
    pub fn new(cfg: &'a EngineConfig) -> Self {
        Matcher { cfg, budget: Cell::new(cfg.fuel.max(1)) }
    }

    /// Collects redexes in pre-order. Stops at the first one when
    /// `first_only` is set; returns whether anything was found.
    pub fn collect(
        &self,
        t: &Term,
        path: &mut Vec<usize>,
        out: &mut Vec<Redex>,
        first_only: bool,
    ) -> bool {
        let mut here = Vec::new();
        self.node(t, &mut here);
        let found = !here.is_empty();
        for (rule, site) in here {
            out.push(Redex { rule, pos: path.clone(), site });
            if first_only {
                return true;
            }
        }
        let mut any = found;
        let kids = t.children();
        for i in reducible_children(t) {
            path.push(i);
            any |= self.collect(kids[i], path, out, first_only);
            path.pop();
            if any && first_only {
                return true;
            }
        }
        any
    }

    /// Weak normality, bounded by the node budget. Running out of budget
    /// counts as "not normal".
    fn normal(&self, t: &Term) -> bool {
        let left = self.budget.get();
        if left == 0 {
            return false;
        }
        self.budget.set(left - 1);
        let mut here = Vec::new();
        self.node(t, &mut here);
        if !here.is_empty() {
            return false;
        }
        let kids = t.children();
        reducible_children(t).into_iter().all(|i| self.normal(kids[i]))
    }

    fn factor_allowed(&self, shared: &Term) -> bool {
        !self.cfg.restriction_enabled || (shared.is_closed() && self.normal(shared))
    }

    fn node(&self, t: &Term, out: &mut Vec<(RuleId, Site)>) {
        let dialect = self.cfg.dialect;
        match t {
            Term::App(f, a) => {
                if let Term::Abs(_, ann, _) = &**f {
                    let s_binder = dialect == Dialect::LambdaS
                        && ann.as_ref().is_some_and(|ty| ty.is_superposed());
                    if s_binder {
                        out.push((r(Beta, 2), Site::Node));
                    } else if dialect == Dialect::Odot || a.is_basis_term() {
                        out.push((r(Beta, 1), Site::Node));
                    }
                }
                match &**f {
                    Term::Sum(_) => out.push((r(Application, 1), Site::Node)),
                    Term::Scale(..) => out.push((r(Application, 2), Site::Node)),
                    Term::Zero => out.push((r(Application, 3), Site::Node)),
                    _ => {}
                }
                if argument_linear(f, dialect) {
                    match &**a {
                        Term::Sum(_) => out.push((r(Application, 4), Site::Node)),
                        Term::Scale(..) => out.push((r(Application, 5), Site::Node)),
                        Term::Zero => out.push((r(Application, 6), Site::Node)),
                        _ => {}
                    }
                }
            }
            Term::Scale(s, b) => {
                if dialect != Dialect::Odot {
                    if s.is_zero() {
                        out.push((r(Elementary, 2), Site::Node));
                    }
                    if s.is_one() {
                        out.push((r(Elementary, 3), Site::Node));
                    }
                }
                match &**b {
                    Term::Zero => out.push((r(Elementary, 4), Site::Node)),
                    Term::Scale(..) => out.push((r(Elementary, 5), Site::Node)),
                    Term::Sum(_) => out.push((r(Elementary, 6), Site::Node)),
                    Term::Sup(..) => out.push((r(Odot, 3), Site::Node)),
                    _ => {}
                }
            }
            Term::Sum(ts) => {
                for (i, c) in ts.iter().enumerate() {
                    if matches!(c, Term::Zero) {
                        out.push((r(Elementary, 1), Site::Child(i)));
                    }
                }
                for i in 0..ts.len() {
                    for j in i + 1..ts.len() {
                        if let Some((rule, shared)) = factorization(&ts[i], &ts[j]) {
                            if self.factor_allowed(shared) {
                                out.push((rule, Site::Summands(i, j)));
                            }
                        }
                    }
                }
            }
            Term::IfThenElse(c, ..) if dialect == Dialect::LambdaS => {
                let idx = match &**c {
                    Term::Ket1 => 1,
                    Term::Ket0 => 2,
                    Term::Sum(_) => 3,
                    Term::Scale(..) => 4,
                    Term::Zero => 5,
                    _ => return,
                };
                out.push((r(Conditional, idx), Site::Node));
            }
            Term::Pair(a, b) if dialect == Dialect::LambdaS => {
                for (side, c) in [(0, a), (3, b)] {
                    let idx = match &**c {
                        Term::Sum(_) => 1,
                        Term::Scale(..) => 2,
                        Term::Zero => 3,
                        _ => continue,
                    };
                    out.push((r(Pair, side + idx), Site::Node));
                }
            }
            Term::DeltaPar(s, ..) if odot::introduced(s).is_some() => {
                out.push((r(Odot, 1), Site::Node));
            }
            Term::Parallel(ts) if odot::merge_parallel(ts) != *t => {
                out.push((r(Odot, 4), Site::Node));
            }
            _ => {}
        }
    }
}

/// In Lambda-S only abstractions over basis types distribute over their
/// argument; measurements and `S`-binders take it whole.
fn argument_linear(f: &Term, dialect: Dialect) -> bool {
    match dialect {
        Dialect::LambdaS => {
            matches!(f, Term::Abs(_, ann, _) if !ann.as_ref().is_some_and(|ty| ty.is_superposed()))
        }
        _ => true,
    }
}

/// Child indices that weak reduction may enter.
pub(crate) fn reducible_children(t: &Term) -> Vec<usize> {
    match t {
        Term::App(..) | Term::Pair(..) | Term::Sup(..) => vec![0, 1],
        Term::Scale(..) | Term::IfThenElse(..) | Term::DeltaPar(..) | Term::DeltaMeas(..) => {
            vec![0]
        }
        Term::Sum(ts) | Term::Parallel(ts) => (0..ts.len()).collect(),
        _ => vec![],
    }
}

fn split_scale(t: &Term) -> (Option<Scalar>, &Term) {
    match t {
        Term::Scale(s, b) => (Some(*s), b),
        other => (None, other),
    }
}

fn factorization<'t>(a: &'t Term, b: &'t Term) -> Option<(RuleId, &'t Term)> {
    let (sa, ta) = split_scale(a);
    let (sb, tb) = split_scale(b);
    if !alpha_ac_eq(ta, tb) {
        return None;
    }
    let idx = match (sa, sb) {
        (Some(_), Some(_)) => 1,
        (Some(_), None) | (None, Some(_)) => 2,
        (None, None) => 3,
    };
    Some((r(Factorization, idx), ta))
}

fn boxed(t: &Term) -> Box<Term> {
    Box::new(t.clone())
}

/// Rewrites `node` by `rule`. The caller has matched the rule at this node.
pub(super) fn rewrite_node(node: &Term, rule: RuleId, site: Site) -> Option<Term> {
    let out = match (rule.group, rule.index, node) {
        (Beta, _, Term::App(f, a)) => match &**f {
            Term::Abs(x, _, body) => subst_raw(body, x, a, &a.free_vars()),
            _ => return None,
        },
        (Application, 1, Term::App(f, a)) => match &**f {
            Term::Sum(ts) => Term::Sum(ts.iter().map(|t| Term::App(boxed(t), a.clone())).collect()),
            _ => return None,
        },
        (Application, 2, Term::App(f, a)) => match &**f {
            Term::Scale(s, g) => Term::Scale(*s, Box::new(Term::App(g.clone(), a.clone()))),
            _ => return None,
        },
        (Application, 4, Term::App(f, a)) => match &**a {
            Term::Sum(ts) => Term::Sum(ts.iter().map(|t| Term::App(f.clone(), boxed(t))).collect()),
            _ => return None,
        },
        (Application, 5, Term::App(f, a)) => match &**a {
            Term::Scale(s, b) => Term::Scale(*s, Box::new(Term::App(f.clone(), b.clone()))),
            _ => return None,
        },
        (Application, 3 | 6, Term::App(..)) => Term::Zero,
        (Elementary, 1, Term::Sum(ts)) => {
            let Site::Child(i) = site else { return None };
            Term::sum(ts.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, t)| t.clone()))
        }
        (Elementary, 2 | 4, Term::Scale(..)) => Term::Zero,
        (Elementary, 3, Term::Scale(_, b)) => (**b).clone(),
        (Elementary, 5, Term::Scale(s, b)) => match &**b {
            Term::Scale(s2, inner) => Term::Scale(*s * *s2, inner.clone()),
            _ => return None,
        },
        (Elementary, 6, Term::Scale(s, b)) => match &**b {
            Term::Sum(ts) => Term::Sum(ts.iter().map(|t| Term::Scale(*s, boxed(t))).collect()),
            _ => return None,
        },
        (Factorization, _, Term::Sum(ts)) => {
            let Site::Summands(i, j) = site else { return None };
            let (sa, t) = split_scale(&ts[i]);
            let (sb, _) = split_scale(&ts[j]);
            let coef = sa.unwrap_or(Scalar::ONE) + sb.unwrap_or(Scalar::ONE);
            let merged = Term::Scale(coef, boxed(t));
            let rest = ts.iter().enumerate().filter(|(k, _)| *k != i && *k != j);
            Term::sum(std::iter::once(merged).chain(rest.map(|(_, t)| t.clone())))
        }
        (Conditional, idx, Term::IfThenElse(c, a, b)) => match (idx, &**c) {
            (1, _) => (**a).clone(),
            (2, _) => (**b).clone(),
            (3, Term::Sum(ts)) => Term::Sum(
                ts.iter()
                    .map(|t| Term::IfThenElse(boxed(t), a.clone(), b.clone()))
                    .collect(),
            ),
            (4, Term::Scale(s, inner)) => Term::Scale(
                *s,
                Box::new(Term::IfThenElse(inner.clone(), a.clone(), b.clone())),
            ),
            (5, _) => Term::Zero,
            _ => return None,
        },
        (Pair, idx, Term::Pair(a, b)) => {
            let left = idx <= 3;
            let (moving, other) = if left { (a, b) } else { (b, a) };
            let mk = |m: &Term| {
                if left {
                    Term::Pair(Box::new(m.clone()), other.clone())
                } else {
                    Term::Pair(other.clone(), Box::new(m.clone()))
                }
            };
            match &**moving {
                Term::Sum(ts) => Term::Sum(ts.iter().map(mk).collect()),
                Term::Scale(s, inner) => Term::Scale(*s, Box::new(mk(inner))),
                Term::Zero => Term::Zero,
                _ => return None,
            }
        }
        (Odot, 1, Term::DeltaPar(..)) => odot::reduce_parallel(node).ok()?,
        (Odot, 3, Term::Scale(s, b)) => match &**b {
            Term::Sup(l, rr) => Term::sup(Term::Scale(*s, l.clone()), Term::Scale(*s, rr.clone())),
            _ => return None,
        },
        (Odot, 4, Term::Parallel(ts)) => odot::merge_parallel(ts),
        _ => return None,
    };
    Some(out)
}
