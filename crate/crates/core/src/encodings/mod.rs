//! Church-style encodings: basis states, thunks, gates, pairs, and the
//! bundled example programs.

mod corpus;

use thiserror::Error;

use crate::lambda_s::TypeExpr;
use crate::oracle::{Circuit, OracleError, UnitaryMatrix};
use crate::scalar::{Scalar, EPSILON};
use crate::term::{canonicalize, fresh_name, Term};

pub use corpus::{example_programs, ExampleProgram};

#[derive(Clone, Debug, PartialEq, Error)]
pub enum EncodeError {
    #[error("gate acts on {0} qubits, at most {1} are supported here")]
    TooWide(usize, usize),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

/// Largest gate dimension [`encode_gate`] accepts.
pub const MAX_GATE_DIM: usize = 16;

/// `|b>` as a Church selector: `\x.\y.x` / `\x.\y.y` for one bit, and
/// `\x1. … \xk. xi` over k = 2^n binders for n bits, `i` the index of `b`.
pub fn church_ket(bits: &str) -> Term {
    assert!(!bits.is_empty() && bits.bytes().all(|b| b == b'0' || b == b'1'), "bit string");
    let idx = usize::from_str_radix(bits, 2).expect("bit string");
    let names: Vec<String> = if bits.len() == 1 {
        vec!["x".into(), "y".into()]
    } else {
        (1..=1usize << bits.len()).map(|i| format!("x{i}")).collect()
    };
    names
        .iter()
        .rev()
        .fold(Term::var(names[idx].clone()), |body, x| Term::abs(x.clone(), body))
}

/// `|b>` with the Lambda-S constants: `|0>`, `|1>`, or right-nested pairs.
pub fn constant_ket(bits: &str) -> Term {
    let mut ks = bits.bytes().rev().map(|b| match b {
        b'0' => Term::Ket0,
        b'1' => Term::Ket1,
        _ => panic!("bit string"),
    });
    let last = ks.next().expect("non-empty bit string");
    ks.fold(last, |acc, k| Term::pair(k, acc))
}

/// `[t] = \z.t` with `z` not free in `t`.
pub fn thunk(t: Term) -> Term {
    let z = fresh_name("z", &t.free_vars());
    Term::abs(z, t)
}

/// `{t} = t (\x.x)`.
pub fn release(t: Term) -> Term {
    Term::app(t, Term::abs("x", Term::var("x")))
}

fn column(u: &UnitaryMatrix, col: usize, ket: impl Fn(&str) -> Term) -> Term {
    let n = u.qubits();
    let parts = (0..u.dim()).filter_map(|row| {
        let a = Scalar::from(u.get(row, col));
        (a.abs() > EPSILON).then(|| Term::scale(a, ket(&format!("{row:0n$b}"))))
    });
    Term::sum(parts)
}

/// `\x.{x [U|0>] [U|1>] …}`: the selector `|i>` picks the thunked image
/// of `|i>`, so `encode_gate(U) |i>` reduces to column `i` of `U`.
pub fn encode_gate(u: &UnitaryMatrix) -> Result<Term, EncodeError> {
    if u.dim() > MAX_GATE_DIM {
        return Err(EncodeError::TooWide(u.qubits(), MAX_GATE_DIM.trailing_zeros() as usize));
    }
    let thunks = (0..u.dim()).map(|c| thunk(column(u, c, church_ket)));
    Ok(canonicalize(&Term::abs("x", release(Term::apps(Term::var("x"), thunks)))))
}

/// [`encode_gate`] restricted to one qubit.
pub fn encode_gate_1q(u: &UnitaryMatrix) -> Result<Term, EncodeError> {
    if u.dim() != 2 {
        return Err(EncodeError::TooWide(u.qubits(), 1));
    }
    encode_gate(u)
}

/// A one-qubit gate in Lambda-S: `\x:B. if x then U|1> else U|0>`.
pub fn lambda_s_gate(u: &UnitaryMatrix) -> Result<Term, EncodeError> {
    if u.dim() != 2 {
        return Err(EncodeError::TooWide(u.qubits(), 1));
    }
    Ok(canonicalize(&Term::abs_typed(
        "x",
        TypeExpr::B,
        Term::ite(Term::var("x"), column(u, 1, constant_ket), column(u, 0, constant_ket)),
    )))
}

/// A one-qubit gate in the sup-calculus:
/// `\q. dpar(q, [x] u00.x + u10.x, [y] u01.y + u11.y)`.
pub fn odot_gate(u: &UnitaryMatrix) -> Result<Term, EncodeError> {
    if u.dim() != 2 {
        return Err(EncodeError::TooWide(u.qubits(), 1));
    }
    let branch = |c: usize, v: &str| {
        Term::sup(
            Term::scale(Scalar::from(u.get(0, c)), Term::var(v)),
            Term::scale(Scalar::from(u.get(1, c)), Term::var(v)),
        )
    };
    let qubit = TypeExpr::odot(TypeExpr::Top, TypeExpr::Top);
    Ok(canonicalize(&Term::abs_typed(
        "q",
        qubit,
        Term::dpar(Term::var("q"), "x", branch(0, "x"), "y", branch(1, "y")),
    )))
}

/// `\x.\y.\f. f x y`.
pub fn pair_constructor() -> Term {
    Term::abs(
        "x",
        Term::abs("y", Term::abs("f", Term::apps(Term::var("f"), [Term::var("x"), Term::var("y")]))),
    )
}

/// The Church pair of `t` and `r`; bilinear under the application rules.
pub fn encode_pair(t: Term, r: Term) -> Term {
    canonicalize(&Term::apps(pair_constructor(), [t, r]))
}

/// First component: the pair applied to `\x.\y.x`.
pub fn fst(p: Term) -> Term {
    Term::app(p, church_ket("0"))
}

/// Second component: the pair applied to `\x.\y.y`.
pub fn snd(p: Term) -> Term {
    Term::app(p, church_ket("1"))
}

/// The circuit applied to `|0…0>` as one term: Church-encoded gates on
/// the full register in Lineal, single-qubit gates in Lambda-S and the
/// sup-calculus.
pub fn encode_circuit(c: &Circuit, encoding: crate::oracle::Encoding) -> Result<Term, EncodeError> {
    use crate::oracle::Encoding;
    let zeros = "0".repeat(c.n);
    let (init, wide) = match encoding {
        Encoding::Church => (church_ket(&zeros), true),
        Encoding::Constants => (constant_ket(&zeros), false),
        Encoding::Odot => (crate::odot::odot_ket(&zeros), false),
    };
    if !wide && c.n != 1 {
        return Err(EncodeError::TooWide(c.n, 1));
    }
    let mut t = init;
    for layer in c.layers()? {
        let g = match encoding {
            Encoding::Church => encode_gate(&layer)?,
            Encoding::Constants => lambda_s_gate(&layer)?,
            Encoding::Odot => odot_gate(&layer)?,
        };
        t = Term::app(g, t);
    }
    Ok(canonicalize(&t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::gate;
    use crate::term::{alpha_ac_eq, parse, Dialect};

    #[test]
    fn church_kets() {
        assert_eq!(church_ket("0"), Term::abs("x", Term::abs("y", Term::var("x"))));
        assert_eq!(church_ket("1"), Term::abs("x", Term::abs("y", Term::var("y"))));
        let t = church_ket("10");
        let want = parse("\\a.\\b.\\c.\\d.c", Dialect::Lineal).unwrap();
        assert!(alpha_ac_eq(&t, &want));
    }

    #[test]
    fn constant_kets() {
        assert_eq!(constant_ket("1"), Term::Ket1);
        assert_eq!(constant_ket("011"), Term::pair(Term::Ket0, Term::pair(Term::Ket1, Term::Ket1)));
    }

    #[test]
    fn hadamard_is_the_textbook_term() {
        let h = encode_gate_1q(&gate("H").unwrap()).unwrap();
        let want = parse(
            "\\x.{x [(1/sqrt2).|0> + (1/sqrt2).|1>] [(1/sqrt2).|0> + (-1/sqrt2).|1>]}",
            Dialect::Lineal,
        )
        .unwrap();
        assert!(alpha_ac_eq(&h, &want), "{h}");
    }

    #[test]
    fn identity_keeps_unit_scalars() {
        let i = encode_gate_1q(&gate("I").unwrap()).unwrap();
        let want = parse("\\x.{x [1.|0>] [1.|1>]}", Dialect::Lineal).unwrap();
        assert!(alpha_ac_eq(&i, &want));
    }

    #[test]
    fn thunk_never_captures() {
        let t = thunk(Term::var("z"));
        assert!(t.free_vars().contains("z"));
    }

    #[test]
    fn width_limits() {
        let cnot = gate("CNOT").unwrap();
        assert!(encode_gate_1q(&cnot).is_err());
        assert!(lambda_s_gate(&cnot).is_err());
        assert!(encode_gate(&cnot).is_ok());
        let wide = UnitaryMatrix::identity(5);
        assert!(matches!(encode_gate(&wide), Err(EncodeError::TooWide(5, 4))));
    }
}
