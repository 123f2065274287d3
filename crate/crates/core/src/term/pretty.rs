//! Printer for the concrete syntax. Output re-parses in the same dialect.

use super::{Dialect, Term};

const TOP: u8 = 0;
const PAR: u8 = 1;
const SUM: u8 = 2;
const SCALED: u8 = 3;
const APP: u8 = 4;
const ATOM: u8 = 5;

/// Prints `t` in the concrete syntax of `dialect`. In Lineal, Church
/// selectors are printed with ket notation (`|0>`, `|10>`, …).
pub fn pretty(t: &Term, dialect: Dialect) -> String {
    let mut out = String::new();
    go(t, TOP, dialect, &mut out);
    out
}

/// Bits of a Church selector `\x1. … \xk. xi` with k = 2 or k = 2^n, n ≥ 2.
pub(crate) fn church_selector_bits(t: &Term) -> Option<String> {
    let mut binders = Vec::new();
    let mut cur = t;
    while let Term::Abs(x, None, body) = cur {
        binders.push(x.as_str());
        cur = body;
    }
    let Term::Var(v) = cur else { return None };
    let k = binders.len();
    if k < 2 || !k.is_power_of_two() {
        return None;
    }
    let idx = binders.iter().rposition(|b| b == v)?;
    let n = k.trailing_zeros() as usize;
    Some(format!("{idx:0n$b}"))
}

/// Bits of a right-nested pair of ket constants.
pub(crate) fn ket_pair_bits(t: &Term) -> Option<String> {
    match t {
        Term::Ket0 => Some("0".into()),
        Term::Ket1 => Some("1".into()),
        Term::Pair(a, b) => {
            let head = match **a {
                Term::Ket0 => "0",
                Term::Ket1 => "1",
                _ => return None,
            };
            Some(format!("{head}{}", ket_pair_bits(b)?))
        }
        _ => None,
    }
}

fn level(t: &Term, dialect: Dialect) -> u8 {
    match t {
        Term::Abs(..) if dialect == Dialect::Lineal && church_selector_bits(t).is_some() => ATOM,
        Term::Abs(..) | Term::IfThenElse(..) => TOP,
        Term::Parallel(_) => PAR,
        Term::Sum(_) | Term::Sup(..) => SUM,
        Term::Scale(..) => SCALED,
        Term::App(..) => APP,
        _ => ATOM,
    }
}

fn go(t: &Term, need: u8, d: Dialect, out: &mut String) {
    let paren = level(t, d) < need;
    if paren {
        out.push('(');
    }
    match t {
        Term::Var(x) => out.push_str(x),
        Term::Abs(x, ty, body) => {
            if let (Dialect::Lineal, Some(bits)) = (d, church_selector_bits(t)) {
                out.push('|');
                out.push_str(&bits);
                out.push('>');
            } else {
                out.push('\\');
                out.push_str(x);
                if let Some(ty) = ty {
                    out.push(':');
                    out.push_str(&ty.to_string());
                }
                out.push('.');
                go(body, TOP, d, out);
            }
        }
        Term::App(f, a) => {
            go(f, APP, d, out);
            out.push(' ');
            go(a, ATOM, d, out);
        }
        Term::Scale(s, b) => {
            if s.is_plain_natural() {
                out.push_str(&s.to_string());
            } else {
                out.push('(');
                out.push_str(&s.to_string());
                out.push(')');
            }
            out.push('.');
            // `1.1.x` would lex as the number 1.1
            let need = if matches!(**b, Term::Scale(..)) { APP } else { SCALED };
            go(b, need, d, out);
        }
        Term::Sum(ts) => sep(ts, " + ", SCALED, d, out),
        Term::Parallel(ts) => sep(ts, " || ", SUM, d, out),
        Term::Sup(a, b) => {
            go(a, SUM, d, out);
            out.push_str(" + ");
            go(b, SCALED, d, out);
        }
        Term::Zero => out.push_str("zero"),
        Term::Ket0 => out.push_str("|0>"),
        Term::Ket1 => out.push_str("|1>"),
        Term::Pair(a, b) => {
            if let Some(bits) = ket_pair_bits(t) {
                out.push('|');
                out.push_str(&bits);
                out.push('>');
            } else {
                out.push('(');
                go(a, TOP, d, out);
                out.push_str(", ");
                go(b, TOP, d, out);
                out.push(')');
            }
        }
        Term::IfThenElse(c, a, b) => {
            out.push_str("if ");
            go(c, TOP, d, out);
            out.push_str(" then ");
            go(a, TOP, d, out);
            out.push_str(" else ");
            go(b, TOP, d, out);
        }
        Term::Meas(n) => {
            out.push_str("pi_");
            out.push_str(&n.to_string());
        }
        Term::Star => out.push('*'),
        Term::DeltaPar(s, x, r, y, q) | Term::DeltaMeas(s, x, r, y, q) => {
            out.push_str(if matches!(t, Term::DeltaPar(..)) { "dpar(" } else { "dmeas(" });
            go(s, TOP, d, out);
            out.push_str(", [");
            out.push_str(x);
            out.push(']');
            go(r, TOP, d, out);
            out.push_str(", [");
            out.push_str(y);
            out.push(']');
            go(q, TOP, d, out);
            out.push(')');
        }
    }
    if paren {
        out.push(')');
    }
}

fn sep(ts: &[Term], s: &str, need: u8, d: Dialect, out: &mut String) {
    for (i, t) in ts.iter().enumerate() {
        if i > 0 {
            out.push_str(s);
        }
        go(t, need, d, out);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn church_kets_in_lineal() {
        let k0 = Term::abs("x", Term::abs("y", Term::var("x")));
        assert_eq!(pretty(&k0, Dialect::Lineal), "|0>");
        assert_eq!(pretty(&k0, Dialect::LambdaS), "\\x.\\y.x");
        let sel = Term::abs(
            "a",
            Term::abs("b", Term::abs("c", Term::abs("d", Term::var("c")))),
        );
        assert_eq!(pretty(&sel, Dialect::Lineal), "|10>");
    }

    #[test]
    fn precedence() {
        let t = Term::app(
            Term::abs("x", Term::var("x")),
            Term::sum([Term::var("a"), Term::scale(-1.0, Term::var("b"))]),
        );
        assert_eq!(pretty(&t, Dialect::Lineal), "(\\x.x) (a + (-1).b)");
        let s = Term::scale(2.0, Term::app(Term::var("f"), Term::var("y")));
        assert_eq!(pretty(&s, Dialect::Lineal), "2.f y");
    }

    #[test]
    fn ket_pairs() {
        let t = Term::pair(Term::Ket0, Term::pair(Term::Ket1, Term::Ket1));
        assert_eq!(pretty(&t, Dialect::LambdaS), "|011>");
        let u = Term::pair(Term::var("x"), Term::Ket1);
        assert_eq!(pretty(&u, Dialect::LambdaS), "(x, |1>)");
    }
}
