use std::fmt;

use thiserror::Error;

use super::types::{join, normalize_type, subtype, TypeExpr};
use crate::term::{pretty, Dialect, Term};

#[derive(Clone, Debug, PartialEq, Error)]
pub enum TypeError {
    #[error("unbound variable `{0}`")]
    Unbound(String),
    #[error("binder `{0}` needs a type annotation")]
    Unannotated(String),
    #[error("`{var}` has a superposition type and is used {uses} times")]
    Linearity { var: String, uses: usize },
    #[error("in `{term}`: expected {expected}, found {found}")]
    Mismatch { term: String, expected: String, found: String },
    #[error("{0} has no type in this calculus")]
    Unsupported(String),
}

fn mismatch(t: &Term, expected: impl fmt::Display, found: impl fmt::Display) -> TypeError {
    TypeError::Mismatch {
        term: pretty(t, Dialect::LambdaS),
        expected: expected.to_string(),
        found: found.to_string(),
    }
}

/// Variable types, innermost binding last.
#[derive(Clone, Debug, Default)]
pub struct TypingContext {
    vars: Vec<(String, TypeExpr)>,
}

impl TypingContext {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, x: impl Into<String>, ty: TypeExpr) -> Self {
        self.bind(x, ty);
        self
    }

    pub fn bind(&mut self, x: impl Into<String>, ty: TypeExpr) {
        self.vars.push((x.into(), normalize_type(&ty)));
    }

    pub fn lookup(&self, x: &str) -> Option<&TypeExpr> {
        self.vars.iter().rev().find(|(y, _)| y == x).map(|(_, t)| t)
    }

    fn extended(&self, x: &str, ty: TypeExpr) -> Self {
        self.clone().with(x, ty)
    }

    /// How often each superposition-typed variable of the context occurs in
    /// `body`, for the ones that occur at all.
    pub fn ledger(&self, body: &Term) -> Vec<(String, usize)> {
        let mut seen = Vec::new();
        for (x, ty) in self.vars.iter().rev() {
            if ty.is_superposed() && !seen.iter().any(|(y, _): &(String, usize)| y == x) {
                seen.push((x.clone(), occurrences(body, x)));
            }
        }
        seen.retain(|(_, n)| *n > 0);
        seen
    }
}

/// Free occurrences of `x` in `t`. Alternative branches count once, by
/// their maximum.
pub fn occurrences(t: &Term, x: &str) -> usize {
    match t {
        Term::Var(y) => usize::from(y == x),
        Term::Abs(y, _, b) => {
            if y == x {
                0
            } else {
                occurrences(b, x)
            }
        }
        Term::IfThenElse(c, a, b) => occurrences(c, x) + occurrences(a, x).max(occurrences(b, x)),
        Term::DeltaPar(s, y, p, z, q) | Term::DeltaMeas(s, y, p, z, q) => {
            let p = if y == x { 0 } else { occurrences(p, x) };
            let q = if z == x { 0 } else { occurrences(q, x) };
            occurrences(s, x) + p.max(q)
        }
        other => other.children().into_iter().map(|c| occurrences(c, x)).sum(),
    }
}

/// Inferred type, or the null vector, which fits any superposition type.
#[derive(Clone, Debug)]
enum Ty {
    T(TypeExpr),
    Null,
}

fn resolve(t: Ty) -> TypeExpr {
    match t {
        Ty::T(a) => a,
        Ty::Null => TypeExpr::s(TypeExpr::B),
    }
}

fn join_all(t: &Term, tys: impl IntoIterator<Item = Ty>) -> Result<Option<TypeExpr>, TypeError> {
    let mut acc: Option<TypeExpr> = None;
    for ty in tys {
        if let Ty::T(a) = ty {
            acc = Some(match acc {
                None => a,
                Some(b) => join(&b, &a).ok_or_else(|| mismatch(t, &b, &a))?,
            });
        }
    }
    Ok(acc)
}

fn infer(ctx: &TypingContext, t: &Term) -> Result<Ty, TypeError> {
    use TypeExpr as T;
    Ok(match t {
        Term::Var(x) => Ty::T(ctx.lookup(x).cloned().ok_or_else(|| TypeError::Unbound(x.clone()))?),
        Term::Abs(x, None, _) => return Err(TypeError::Unannotated(x.clone())),
        Term::Abs(x, Some(a), body) => {
            let a = normalize_type(a);
            if !a.is_qubit_type() {
                return Err(mismatch(t, "a qubit type for the binder", &a));
            }
            if a.is_superposed() {
                let uses = occurrences(body, x);
                if uses > 1 {
                    return Err(TypeError::Linearity { var: x.clone(), uses });
                }
            }
            let body_ty = resolve(infer(&ctx.extended(x, a.clone()), body)?);
            Ty::T(T::arrow(a, body_ty))
        }
        Term::Meas(n) => Ty::T(T::arrow(T::s(T::bits(*n)), T::bits(*n))),
        Term::App(f, a) => {
            if let Term::Meas(n) = **f {
                return match infer(ctx, a)? {
                    Ty::Null => Ok(Ty::T(T::bits(n))),
                    Ty::T(ta) if subtype(&ta, &T::s(T::bits(n))) => Ok(Ty::T(T::bits(n))),
                    Ty::T(ta) => Err(mismatch(t, T::s(T::bits(n)), ta)),
                };
            }
            let tf = resolve(infer(ctx, f)?);
            let T::Arrow(dom, cod) = tf.strip_s() else {
                return Err(mismatch(t, "a function", &tf));
            };
            let res = match infer(ctx, a)? {
                Ty::Null => T::s((**cod).clone()),
                Ty::T(ta) if subtype(&ta, dom) => (**cod).clone(),
                Ty::T(ta) if subtype(ta.strip_s(), dom) => T::s((**cod).clone()),
                Ty::T(ta) => return Err(mismatch(t, dom, ta)),
            };
            Ty::T(if tf.is_superposed() { T::s(res) } else { res })
        }
        Term::Scale(_, b) => match infer(ctx, b)? {
            Ty::Null => Ty::Null,
            Ty::T(a) => Ty::T(T::s(a)),
        },
        Term::Sum(ts) => {
            let tys = ts.iter().map(|c| infer(ctx, c)).collect::<Result<Vec<_>, _>>()?;
            match join_all(t, tys)? {
                None => Ty::Null,
                Some(a) => Ty::T(T::s(a)),
            }
        }
        Term::Zero => Ty::Null,
        Term::Ket0 | Term::Ket1 => Ty::T(T::B),
        Term::IfThenElse(c, a, b) => {
            let superposed = match infer(ctx, c)? {
                Ty::Null => true,
                Ty::T(T::B) => false,
                Ty::T(tc) if tc == T::s(T::B) => true,
                Ty::T(tc) => return Err(mismatch(c, T::B, tc)),
            };
            let branches = [infer(ctx, a)?, infer(ctx, b)?];
            match join_all(t, branches)? {
                None => Ty::Null,
                Some(j) if superposed => Ty::T(T::s(j)),
                Some(j) => Ty::T(j),
            }
        }
        Term::Pair(a, b) => match (infer(ctx, a)?, infer(ctx, b)?) {
            (Ty::T(x), Ty::T(y)) => Ty::T(T::prod(x, y)),
            _ => Ty::Null,
        },
        other => return Err(TypeError::Unsupported(other.construct_name().to_string())),
    })
}

/// Infers the least type of `t`. `zero` on its own gets `S B`.
pub fn typecheck(ctx: &TypingContext, t: &Term) -> Result<TypeExpr, TypeError> {
    if let Some((var, uses)) = ctx.ledger(t).into_iter().find(|(_, n)| *n > 1) {
        return Err(TypeError::Linearity { var, uses });
    }
    infer(ctx, t).map(resolve)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::parse;

    fn ty(src: &str) -> Result<TypeExpr, TypeError> {
        typecheck(&TypingContext::new(), &parse(src, Dialect::LambdaS).unwrap())
    }

    #[test]
    fn hadamard_type() {
        let h = "\\x:B. if x then (1/sqrt2).|0> + (-1/sqrt2).|1> else (1/sqrt2).|0> + (1/sqrt2).|1>";
        assert_eq!(ty(h).unwrap().to_string(), "B -> S B");
    }

    #[test]
    fn measurement_type() {
        assert_eq!(ty("\\x:S B. pi x").unwrap().to_string(), "S B -> B");
        assert_eq!(ty("pi_2 (|01> + |10>)").unwrap().to_string(), "B * B");
        assert!(ty("pi_2 |0>").is_err());
    }

    #[test]
    fn linearity() {
        assert!(matches!(ty("\\x:S B. (x, x)"), Err(TypeError::Linearity { uses: 2, .. })));
        assert!(ty("\\x:B. (x, x)").is_ok());
        assert!(ty("\\x:S B. \\c:B. if c then x else x").is_ok());
    }

    #[test]
    fn errors() {
        assert!(matches!(ty("\\x.x"), Err(TypeError::Unannotated(_))));
        assert!(matches!(ty("y"), Err(TypeError::Unbound(_))));
        assert!(matches!(ty("|0> |1>"), Err(TypeError::Mismatch { .. })));
        assert!(matches!(ty("(\\x:B.x) (\\y:B.y)"), Err(TypeError::Mismatch { .. })));
    }

    #[test]
    fn application_distributes_in_type() {
        assert_eq!(ty("(\\x:B.x) ((1/sqrt2).|0> + (1/sqrt2).|1>)").unwrap(), TypeExpr::s(TypeExpr::B));
        assert_eq!(ty("(\\x:S B.x) |0>").unwrap(), TypeExpr::s(TypeExpr::B));
        assert_eq!(ty("zero").unwrap(), TypeExpr::s(TypeExpr::B));
    }
}
