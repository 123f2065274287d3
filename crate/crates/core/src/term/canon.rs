//! Total syntactic order, AC canonical forms and alpha-AC equality.
//!
//! Bound variables are compared by binder level (counted from the outermost
//! enclosing binder), so alpha-equivalent terms compare equal.

use std::cmp::Ordering;

use super::Term;

fn rank(t: &Term) -> u8 {
    match t {
        Term::Var(_) => 0,
        Term::Abs(..) => 1,
        Term::App(..) => 2,
        Term::Scale(..) => 3,
        Term::Sum(_) => 4,
        Term::Zero => 5,
        Term::Ket0 => 6,
        Term::Ket1 => 7,
        Term::IfThenElse(..) => 8,
        Term::Pair(..) => 9,
        Term::Meas(_) => 10,
        Term::Star => 11,
        Term::Sup(..) => 12,
        Term::DeltaPar(..) => 13,
        Term::DeltaMeas(..) => 14,
        Term::Parallel(_) => 15,
    }
}

#[derive(Default)]
struct Env<'a> {
    left: Vec<&'a str>,
    right: Vec<&'a str>,
}

fn level(stack: &[&str], x: &str) -> Option<usize> {
    stack.iter().rposition(|y| *y == x)
}

/// Summands strip their scalars for ordering, so `a.|0> + b.|1>` keeps
/// ket order regardless of amplitudes.
fn base(t: &Term) -> &Term {
    match t {
        Term::Scale(_, b) => base(b),
        other => other,
    }
}

fn cmp_in<'a>(a: &'a Term, b: &'a Term, env: &mut Env<'a>) -> Ordering {
    let r = rank(a).cmp(&rank(b));
    if r != Ordering::Equal {
        return r;
    }
    match (a, b) {
        (Term::Var(x), Term::Var(y)) => match (level(&env.left, x), level(&env.right, y)) {
            (Some(i), Some(j)) => i.cmp(&j),
            (Some(_), None) => Ordering::Less,
            (None, Some(_)) => Ordering::Greater,
            (None, None) => x.cmp(y),
        },
        (Term::Abs(x, tx, bx), Term::Abs(y, ty, by)) => {
            let c = format!("{tx:?}").cmp(&format!("{ty:?}"));
            if c != Ordering::Equal {
                return c;
            }
            bind(env, x, y, |env| cmp_in(bx, by, env))
        }
        (Term::Scale(s, x), Term::Scale(r, y)) => {
            cmp_in(x, y, env).then_with(|| s.total_cmp(r))
        }
        (Term::Sum(xs), Term::Sum(ys)) | (Term::Parallel(xs), Term::Parallel(ys)) => {
            for (x, y) in xs.iter().zip(ys) {
                let c = cmp_in(x, y, env);
                if c != Ordering::Equal {
                    return c;
                }
            }
            xs.len().cmp(&ys.len())
        }
        (Term::Meas(n), Term::Meas(m)) => n.cmp(m),
        (Term::DeltaPar(s, x1, r1, y1, q1), Term::DeltaPar(t, x2, r2, y2, q2))
        | (Term::DeltaMeas(s, x1, r1, y1, q1), Term::DeltaMeas(t, x2, r2, y2, q2)) => {
            cmp_in(s, t, env)
                .then_with(|| bind(env, x1, x2, |env| cmp_in(r1, r2, env)))
                .then_with(|| bind(env, y1, y2, |env| cmp_in(q1, q2, env)))
        }
        _ => {
            for (x, y) in a.children().into_iter().zip(b.children()) {
                let c = cmp_in(x, y, env);
                if c != Ordering::Equal {
                    return c;
                }
            }
            Ordering::Equal
        }
    }
}

fn bind<'a, R>(env: &mut Env<'a>, x: &'a str, y: &'a str, f: impl FnOnce(&mut Env<'a>) -> R) -> R {
    env.left.push(x);
    env.right.push(y);
    let out = f(env);
    env.left.pop();
    env.right.pop();
    out
}

/// The total syntactic order used to sort sums.
pub fn term_cmp(a: &Term, b: &Term) -> Ordering {
    cmp_in(a, b, &mut Env::default())
}

fn summand_cmp(a: &Term, b: &Term) -> Ordering {
    term_cmp(base(a), base(b)).then_with(|| term_cmp(a, b))
}

/// Flattens and sorts every sum (and parallel composition). Applies no
/// rewrite rule: `t + zero` stays as it is and equal summands are not merged.
pub fn canonicalize(t: &Term) -> Term {
    match t {
        Term::Sum(ts) | Term::Parallel(ts) => {
            let is_sum = matches!(t, Term::Sum(_));
            let mut flat = Vec::with_capacity(ts.len());
            for c in ts {
                match (canonicalize(c), is_sum) {
                    (Term::Sum(inner), true) | (Term::Parallel(inner), false) => flat.extend(inner),
                    (other, _) => flat.push(other),
                }
            }
            flat.sort_by(summand_cmp);
            match flat.len() {
                0 => Term::Zero,
                1 => flat.pop().unwrap(),
                _ if is_sum => Term::Sum(flat),
                _ => Term::Parallel(flat),
            }
        }
        Term::Var(_) | Term::Zero | Term::Ket0 | Term::Ket1 | Term::Meas(_) | Term::Star => {
            t.clone()
        }
        Term::Abs(x, ty, b) => Term::Abs(x.clone(), ty.clone(), Box::new(canonicalize(b))),
        Term::App(a, b) => Term::app(canonicalize(a), canonicalize(b)),
        Term::Pair(a, b) => Term::pair(canonicalize(a), canonicalize(b)),
        Term::Sup(a, b) => Term::sup(canonicalize(a), canonicalize(b)),
        Term::Scale(s, b) => Term::Scale(*s, Box::new(canonicalize(b))),
        Term::IfThenElse(c, a, b) => Term::ite(canonicalize(c), canonicalize(a), canonicalize(b)),
        Term::DeltaPar(s, x, r, y, q) => Term::dpar(
            canonicalize(s),
            x.clone(),
            canonicalize(r),
            y.clone(),
            canonicalize(q),
        ),
        Term::DeltaMeas(s, x, r, y, q) => Term::dmeas(
            canonicalize(s),
            x.clone(),
            canonicalize(r),
            y.clone(),
            canonicalize(q),
        ),
    }
}

fn eq_in<'a>(a: &'a Term, b: &'a Term, env: &mut Env<'a>) -> bool {
    match (a, b) {
        (Term::Var(x), Term::Var(y)) => match (level(&env.left, x), level(&env.right, y)) {
            (Some(i), Some(j)) => i == j,
            (None, None) => x == y,
            _ => false,
        },
        (Term::Abs(x, tx, bx), Term::Abs(y, ty, by)) => {
            tx == ty && bind(env, x, y, |env| eq_in(bx, by, env))
        }
        (Term::Scale(s, x), Term::Scale(r, y)) => s.approx_eq(*r) && eq_in(x, y, env),
        (Term::Sum(xs), Term::Sum(ys)) | (Term::Parallel(xs), Term::Parallel(ys)) => {
            let xs = flatten(xs, matches!(a, Term::Sum(_)));
            let ys = flatten(ys, matches!(b, Term::Sum(_)));
            if xs.len() != ys.len() {
                return false;
            }
            let mut used = vec![false; ys.len()];
            'outer: for x in &xs {
                for (j, y) in ys.iter().enumerate() {
                    if !used[j] && eq_in(x, y, env) {
                        used[j] = true;
                        continue 'outer;
                    }
                }
                return false;
            }
            true
        }
        (Term::Meas(n), Term::Meas(m)) => n == m,
        (Term::DeltaPar(s, x1, r1, y1, q1), Term::DeltaPar(t, x2, r2, y2, q2))
        | (Term::DeltaMeas(s, x1, r1, y1, q1), Term::DeltaMeas(t, x2, r2, y2, q2)) => {
            eq_in(s, t, env)
                && bind(env, x1, x2, |env| eq_in(r1, r2, env))
                && bind(env, y1, y2, |env| eq_in(q1, q2, env))
        }
        _ if rank(a) == rank(b) => {
            let (ca, cb) = (a.children(), b.children());
            ca.len() == cb.len() && ca.into_iter().zip(cb).all(|(x, y)| eq_in(x, y, env))
        }
        _ => false,
    }
}

fn flatten(ts: &[Term], sum: bool) -> Vec<&Term> {
    let mut out = Vec::new();
    for t in ts {
        match t {
            Term::Sum(inner) if sum => out.extend(flatten(inner, sum)),
            Term::Parallel(inner) if !sum => out.extend(flatten(inner, sum)),
            other => out.push(other),
        }
    }
    out
}

/// Equality up to bound-variable renaming, associativity and commutativity
/// of `+` (and `||`), and scalar tolerance.
pub fn alpha_ac_eq(a: &Term, b: &Term) -> bool {
    eq_in(a, b, &mut Env::default())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: &str) -> Term {
        Term::var(x)
    }

    #[test]
    fn flattens_and_sorts() {
        let t = Term::Sum(vec![v("b"), Term::Sum(vec![v("a"), v("c")])]);
        assert_eq!(canonicalize(&t), Term::Sum(vec![v("a"), v("b"), v("c")]));
    }

    #[test]
    fn zero_is_not_eliminated() {
        let t = Term::Sum(vec![Term::Zero, v("t")]);
        assert_eq!(canonicalize(&t), Term::Sum(vec![v("t"), Term::Zero]));
    }

    #[test]
    fn alpha_equivalence() {
        assert!(alpha_ac_eq(&Term::abs("x", v("x")), &Term::abs("y", v("y"))));
        assert!(!alpha_ac_eq(
            &Term::abs("x", Term::abs("y", v("x"))),
            &Term::abs("x", Term::abs("y", v("y")))
        ));
        assert!(!alpha_ac_eq(&Term::abs("x", v("z")), &Term::abs("y", v("y"))));
    }

    #[test]
    fn commutativity_and_tolerance() {
        let ab = Term::sum([v("a"), v("b")]);
        let ba = Term::sum([v("b"), v("a")]);
        assert!(alpha_ac_eq(&ab, &ba));
        assert!(alpha_ac_eq(
            &Term::scale(1.000_000_000_1, v("t")),
            &Term::scale(1.0, v("t"))
        ));
    }

    #[test]
    fn sup_is_ordered() {
        let a = Term::sup(Term::scale(0.6, Term::Star), Term::scale(0.8, Term::Star));
        let b = Term::sup(Term::scale(0.8, Term::Star), Term::scale(0.6, Term::Star));
        assert!(!alpha_ac_eq(&a, &b));
        assert_eq!(canonicalize(&a), a);
    }

    #[test]
    fn summands_keep_ket_order() {
        let t = Term::sum([Term::scale(0.9, Term::Ket1), Term::scale(-0.1, Term::Ket0)]);
        match canonicalize(&t) {
            Term::Sum(cs) => assert_eq!(*base(&cs[0]), Term::Ket0),
            other => panic!("{other:?}"),
        }
    }
}
