//! Qubit and function types with the `S` (superposition) modality.

use std::fmt;

/// Types of Lambda-S, plus `Top` and `A (.) B` for the sup-calculus.
///
/// Values built through [`TypeExpr::s`] or [`normalize_type`] never carry
/// `S` directly under `S`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TypeExpr {
    B,
    Prod(Box<TypeExpr>, Box<TypeExpr>),
    S(Box<TypeExpr>),
    Arrow(Box<TypeExpr>, Box<TypeExpr>),
    Top,
    Odot(Box<TypeExpr>, Box<TypeExpr>),
}

impl TypeExpr {
    /// `S a`, collapsing `S S a` to `S a`.
    pub fn s(a: TypeExpr) -> TypeExpr {
        match a {
            TypeExpr::S(_) => a,
            other => TypeExpr::S(Box::new(other)),
        }
    }

    pub fn prod(a: TypeExpr, b: TypeExpr) -> TypeExpr {
        TypeExpr::Prod(Box::new(a), Box::new(b))
    }

    pub fn arrow(a: TypeExpr, b: TypeExpr) -> TypeExpr {
        TypeExpr::Arrow(Box::new(a), Box::new(b))
    }

    pub fn odot(a: TypeExpr, b: TypeExpr) -> TypeExpr {
        TypeExpr::Odot(Box::new(a), Box::new(b))
    }

    /// `B × … × B` (n factors, right-nested).
    pub fn bits(n: usize) -> TypeExpr {
        assert!(n >= 1, "a register has at least one qubit");
        let mut t = TypeExpr::B;
        for _ in 1..n {
            t = TypeExpr::prod(TypeExpr::B, t);
        }
        t
    }

    pub fn is_superposed(&self) -> bool {
        matches!(self, TypeExpr::S(_))
    }

    /// Drops one outer `S`, if any.
    pub fn strip_s(&self) -> &TypeExpr {
        match self {
            TypeExpr::S(a) => a,
            a => a,
        }
    }

    /// Qubit types Ψ ::= B | Ψ × Ψ | S Ψ.
    pub fn is_qubit_type(&self) -> bool {
        match self {
            TypeExpr::B => true,
            TypeExpr::Prod(a, b) => a.is_qubit_type() && b.is_qubit_type(),
            TypeExpr::S(a) => a.is_qubit_type(),
            _ => false,
        }
    }

    /// Number of qubits carried by a qubit type, ignoring `S` markers.
    pub fn qubit_arity(&self) -> Option<usize> {
        match self {
            TypeExpr::B => Some(1),
            TypeExpr::S(a) => a.qubit_arity(),
            TypeExpr::Prod(a, b) => Some(a.qubit_arity()? + b.qubit_arity()?),
            _ => None,
        }
    }
}

/// Collapses every `S S A` to `S A`.
pub fn normalize_type(a: &TypeExpr) -> TypeExpr {
    match a {
        TypeExpr::B => TypeExpr::B,
        TypeExpr::Top => TypeExpr::Top,
        TypeExpr::S(inner) => TypeExpr::s(normalize_type(inner)),
        TypeExpr::Prod(x, y) => TypeExpr::prod(normalize_type(x), normalize_type(y)),
        TypeExpr::Arrow(x, y) => TypeExpr::arrow(normalize_type(x), normalize_type(y)),
        TypeExpr::Odot(x, y) => TypeExpr::odot(normalize_type(x), normalize_type(y)),
    }
}

/// The subtyping relation generated by `A ≤ S A`, propagated through
/// products and arrow codomains. Both sides must be S-normal.
pub fn subtype(a: &TypeExpr, b: &TypeExpr) -> bool {
    use TypeExpr::*;
    match (a, b) {
        _ if a == b => true,
        // S a' ≤ S b'  iff  a' ≤ S b'
        (S(a1), S(_)) => subtype(a1, b),
        (S(_), _) => false,
        (_, S(b1)) => subtype(a, b1),
        (Prod(a1, a2), Prod(b1, b2)) | (Odot(a1, a2), Odot(b1, b2)) => {
            subtype(a1, b1) && subtype(a2, b2)
        }
        (Arrow(d1, c1), Arrow(d2, c2)) => d1 == d2 && subtype(c1, c2),
        _ => false,
    }
}

/// Least upper bound under [`subtype`], if one exists.
pub fn join(a: &TypeExpr, b: &TypeExpr) -> Option<TypeExpr> {
    use TypeExpr::*;
    if subtype(a, b) {
        return Some(b.clone());
    }
    if subtype(b, a) {
        return Some(a.clone());
    }
    match (a.strip_s(), b.strip_s()) {
        (Prod(a1, a2), Prod(b1, b2)) => {
            let p = TypeExpr::prod(join(a1, b1)?, join(a2, b2)?);
            if a.is_superposed() || b.is_superposed() {
                Some(TypeExpr::s(p))
            } else {
                Some(p)
            }
        }
        (Arrow(d1, c1), Arrow(d2, c2)) if d1 == d2 => {
            let f = TypeExpr::arrow((**d1).clone(), join(c1, c2)?);
            if a.is_superposed() || b.is_superposed() {
                Some(TypeExpr::s(f))
            } else {
                Some(f)
            }
        }
        (x, y) if x == y => Some(TypeExpr::s(x.clone())),
        _ => None,
    }
}

impl fmt::Display for TypeExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn go(t: &TypeExpr, prec: u8, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            let (my, open) = match t {
                TypeExpr::Arrow(..) => (0, prec > 0),
                TypeExpr::Prod(..) | TypeExpr::Odot(..) => (1, prec > 1),
                TypeExpr::S(_) => (2, prec > 2),
                _ => (3, false),
            };
            if open {
                f.write_str("(")?;
            }
            match t {
                TypeExpr::B => f.write_str("B")?,
                TypeExpr::Top => f.write_str("Top")?,
                TypeExpr::S(a) => {
                    f.write_str("S ")?;
                    go(a, 3, f)?;
                }
                TypeExpr::Prod(a, b) => {
                    go(a, my + 1, f)?;
                    f.write_str(" * ")?;
                    go(b, my, f)?;
                }
                TypeExpr::Odot(a, b) => {
                    go(a, my + 1, f)?;
                    f.write_str(" (.) ")?;
                    go(b, my, f)?;
                }
                TypeExpr::Arrow(a, b) => {
                    go(a, my + 1, f)?;
                    f.write_str(" -> ")?;
                    go(b, my, f)?;
                }
            }
            if open {
                f.write_str(")")?;
            }
            Ok(())
        }
        go(self, 0, f)
    }
}
