use std::collections::BTreeSet;

use super::{canonicalize, Term};

pub(super) fn collect_free<'a>(t: &'a Term, bound: &mut Vec<&'a str>, out: &mut BTreeSet<String>) {
    match t {
        Term::Var(x) => {
            if !bound.contains(&x.as_str()) {
                out.insert(x.clone());
            }
        }
        Term::Abs(x, _, b) => {
            bound.push(x);
            collect_free(b, bound, out);
            bound.pop();
        }
        Term::DeltaPar(s, x, r, y, q) | Term::DeltaMeas(s, x, r, y, q) => {
            collect_free(s, bound, out);
            bound.push(x);
            collect_free(r, bound, out);
            bound.pop();
            bound.push(y);
            collect_free(q, bound, out);
            bound.pop();
        }
        other => {
            for c in other.children() {
                collect_free(c, bound, out);
            }
        }
    }
}

pub(super) fn occurs_free(t: &Term, x: &str) -> bool {
    match t {
        Term::Var(y) => y == x,
        Term::Abs(y, _, b) => y != x && occurs_free(b, x),
        Term::DeltaPar(s, y, r, z, q) | Term::DeltaMeas(s, y, r, z, q) => {
            occurs_free(s, x) || (y != x && occurs_free(r, x)) || (z != x && occurs_free(q, x))
        }
        other => other.children().into_iter().any(|c| occurs_free(c, x)),
    }
}

/// `base` decorated with primes until it avoids every name in `avoid`.
pub fn fresh_name(base: &str, avoid: &BTreeSet<String>) -> String {
    let mut name = base.to_string();
    while avoid.contains(&name) {
        name.push('\'');
    }
    name
}

/// Capture-avoiding substitution `(r/x)t`, followed by canonicalization.
pub fn substitute(t: &Term, x: &str, r: &Term) -> Term {
    canonicalize(&subst_raw(t, x, r, &r.free_vars()))
}

/// Substitution without re-canonicalizing; `fv_r` must be `r.free_vars()`.
pub(crate) fn subst_raw(t: &Term, x: &str, r: &Term, fv_r: &BTreeSet<String>) -> Term {
    match t {
        Term::Var(y) if y == x => r.clone(),
        Term::Var(_) | Term::Zero | Term::Ket0 | Term::Ket1 | Term::Meas(_) | Term::Star => {
            t.clone()
        }
        Term::Abs(y, ann, b) => {
            let (y, b) = under_binder(y, b, x, r, fv_r);
            Term::Abs(y, ann.clone(), Box::new(b))
        }
        Term::DeltaPar(s, y, p, z, q) | Term::DeltaMeas(s, y, p, z, q) => {
            let s = Box::new(subst_raw(s, x, r, fv_r));
            let (y, p) = under_binder(y, p, x, r, fv_r);
            let (z, q) = under_binder(z, q, x, r, fv_r);
            if matches!(t, Term::DeltaPar(..)) {
                Term::DeltaPar(s, y, Box::new(p), z, Box::new(q))
            } else {
                Term::DeltaMeas(s, y, Box::new(p), z, Box::new(q))
            }
        }
        Term::App(a, b) => Term::app(subst_raw(a, x, r, fv_r), subst_raw(b, x, r, fv_r)),
        Term::Pair(a, b) => Term::pair(subst_raw(a, x, r, fv_r), subst_raw(b, x, r, fv_r)),
        Term::Sup(a, b) => Term::sup(subst_raw(a, x, r, fv_r), subst_raw(b, x, r, fv_r)),
        Term::Scale(s, b) => Term::Scale(*s, Box::new(subst_raw(b, x, r, fv_r))),
        Term::Sum(ts) => Term::Sum(ts.iter().map(|c| subst_raw(c, x, r, fv_r)).collect()),
        Term::Parallel(ts) => {
            Term::Parallel(ts.iter().map(|c| subst_raw(c, x, r, fv_r)).collect())
        }
        Term::IfThenElse(c, a, b) => Term::ite(
            subst_raw(c, x, r, fv_r),
            subst_raw(a, x, r, fv_r),
            subst_raw(b, x, r, fv_r),
        ),
    }
}

fn under_binder(
    y: &str,
    body: &Term,
    x: &str,
    r: &Term,
    fv_r: &BTreeSet<String>,
) -> (String, Term) {
    if y == x || !occurs_free(body, x) {
        return (y.to_string(), body.clone());
    }
    if fv_r.contains(y) {
        let mut avoid = fv_r.clone();
        avoid.extend(body.free_vars());
        avoid.insert(x.to_string());
        let fresh = fresh_name(y, &avoid);
        let renamed = subst_raw(body, y, &Term::Var(fresh.clone()), &BTreeSet::from([fresh.clone()]));
        (fresh, subst_raw(&renamed, x, r, fv_r))
    } else {
        (y.to_string(), subst_raw(body, x, r, fv_r))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::alpha_ac_eq;

    #[test]
    fn replaces_free_occurrence() {
        assert_eq!(substitute(&Term::var("x"), "x", &Term::Ket0), Term::Ket0);
        let t = Term::abs("x", Term::var("x"));
        assert_eq!(substitute(&t, "x", &Term::Ket0), t);
    }

    #[test]
    fn avoids_capture() {
        let t = Term::abs("y", Term::var("x"));
        let out = substitute(&t, "x", &Term::var("y"));
        match &out {
            Term::Abs(b, _, body) => {
                assert_ne!(b, "y");
                assert_eq!(**body, Term::var("y"));
            }
            other => panic!("expected abstraction, got {other:?}"),
        }
        assert!(!alpha_ac_eq(&out, &Term::abs("y", Term::var("y"))));
    }

    #[test]
    fn substitution_into_merged_sum() {
        // x + x canonicalizes to a sum, not 2.x; merging is a rewrite rule.
        let doubled = Term::scale(2.0, Term::var("x"));
        let naive = canonicalize(&Term::scale(2.0, Term::Ket0));
        assert!(alpha_ac_eq(&substitute(&doubled, "x", &Term::Ket0), &naive));
    }

    #[test]
    fn eliminator_binders_scope_over_their_branch_only() {
        let t = Term::dpar(Term::var("x"), "x", Term::var("x"), "y", Term::var("x"));
        let out = substitute(&t, "x", &Term::Star);
        assert_eq!(
            out,
            Term::dpar(Term::Star, "x", Term::var("x"), "y", Term::Star)
        );
    }
}
