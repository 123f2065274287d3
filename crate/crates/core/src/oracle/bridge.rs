//! Reading terms as amplitude vectors and back.

use num_complex::Complex64;

use super::{check_qubits, OracleError, StateVector};
use crate::encodings::{church_ket, constant_ket};
use crate::odot::{star_amplitudes, star_tree};
use crate::scalar::{Scalar, EPSILON};
use crate::term::{church_selector_bits, ket_pair_bits, pretty, Dialect, LinearForm, Term};

/// How basis states are written as terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Encoding {
    /// `|0>`, `|1>` constants and pairs of them.
    Constants,
    /// Church selectors `\x1…\xk.xi`.
    Church,
    /// Star trees of the sup-calculus.
    Odot,
}

impl Encoding {
    pub fn for_dialect(d: Dialect) -> Self {
        match d {
            Dialect::Lineal => Encoding::Church,
            Dialect::LambdaS => Encoding::Constants,
            Dialect::Odot => Encoding::Odot,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReadMode {
    /// The amplitudes must have norm 1.
    Strict,
    /// Any non-zero vector, rescaled to norm 1.
    Relaxed,
}

/// Bits of a basis value in any encoding, including Church pairs
/// `\f. f a b`.
fn basis_bits(t: &Term) -> Option<String> {
    if let Some(b) = ket_pair_bits(t).or_else(|| church_selector_bits(t)) {
        return Some(b);
    }
    if let Term::Abs(f, None, body) = t {
        if let Term::App(g, b) = &**body {
            if let Term::App(h, a) = &**g {
                if matches!(&**h, Term::Var(v) if v == f) && !a.occurs_free(f) && !b.occurs_free(f) {
                    return Some(format!("{}{}", basis_bits(a)?, basis_bits(b)?));
                }
            }
        }
    }
    None
}

/// The amplitudes of a normal form, without any norm condition. The null
/// vector needs `n_hint` to know its width.
pub fn term_to_amplitudes(
    t: &Term,
    n_hint: Option<usize>,
) -> Result<(usize, Vec<Complex64>), OracleError> {
    let unreadable = |x: &Term| OracleError::Unreadable(pretty(x, Dialect::Lineal));
    if let Some((n, leaves)) = star_amplitudes(t) {
        return Ok((n, leaves.into_iter().map(Scalar::to_complex).collect()));
    }
    let lf = LinearForm::from_term(t);
    let mut read = Vec::new();
    for (c, k) in lf.entries() {
        read.push((basis_bits(k).ok_or_else(|| unreadable(k))?, *c));
    }
    let n = match (read.first(), n_hint) {
        (Some((b, _)), _) => b.len(),
        (None, Some(n)) => n,
        (None, None) => return Err(unreadable(t)),
    };
    check_qubits(n)?;
    if read.iter().any(|(b, _)| b.len() != n) || n_hint.is_some_and(|h| h != n) {
        return Err(unreadable(t));
    }
    let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n];
    for (b, c) in read {
        amps[usize::from_str_radix(&b, 2).expect("bit string")] += c.to_complex();
    }
    Ok((n, amps))
}

pub fn term_to_vector(t: &Term, mode: ReadMode) -> Result<StateVector, OracleError> {
    let (n, amps) = term_to_amplitudes(t, None)?;
    match mode {
        ReadMode::Strict => StateVector::new(n, amps),
        ReadMode::Relaxed => StateVector::normalized(n, amps),
    }
}

/// `Σ_b α_b.|b>` in the chosen encoding, dropping vanishing amplitudes
/// (kept as explicit zero leaves in star trees).
pub fn vector_to_term(v: &StateVector, encoding: Encoding) -> Term {
    let n = v.n();
    if encoding == Encoding::Odot {
        let leaves: Vec<Scalar> = v.amps().iter().map(|&a| Scalar::from(a)).collect();
        return star_tree(&leaves);
    }
    let parts = v.amps().iter().enumerate().filter(|(_, a)| a.norm() > EPSILON).map(|(i, a)| {
        let bits = format!("{i:0n$b}");
        let ket = match encoding {
            Encoding::Church => church_ket(&bits),
            _ => constant_ket(&bits),
        };
        Term::scale(Scalar::from(*a), ket)
    });
    crate::term::canonicalize(&Term::sum(parts))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::parse;

    #[test]
    fn reads_all_encodings() {
        let plus = StateVector::from_real(1, &[0.6, 0.8]).unwrap();
        for (src, d) in [
            ("0.6.|0> + 0.8.|1>", Dialect::LambdaS),
            ("0.6.|0> + 0.8.|1>", Dialect::Lineal),
            ("0.6.* + 0.8.*", Dialect::Odot),
        ] {
            let t = parse(src, d).unwrap();
            assert!(term_to_vector(&t, ReadMode::Strict).unwrap().approx_eq(&plus), "{src}");
        }
    }

    #[test]
    fn strict_rejects_norm() {
        let t = parse("2.|0>", Dialect::LambdaS).unwrap();
        assert!(matches!(term_to_vector(&t, ReadMode::Strict), Err(OracleError::NotNormalized(_))));
        assert!(term_to_vector(&t, ReadMode::Relaxed).is_ok());
    }

    #[test]
    fn church_pairs() {
        let t = parse("\\f. f |1> |0>", Dialect::Lineal).unwrap();
        let v = term_to_vector(&t, ReadMode::Strict).unwrap();
        assert!(v.approx_eq(&StateVector::from_bits("10").unwrap()));
    }

    #[test]
    fn null_vector_needs_width() {
        assert!(term_to_amplitudes(&Term::Zero, None).is_err());
        assert_eq!(term_to_amplitudes(&Term::Zero, Some(1)).unwrap().1.len(), 2);
    }

    #[test]
    fn round_trip() {
        let v = StateVector::from_real(2, &[0.5, -0.5, 0.5, 0.5]).unwrap();
        for e in [Encoding::Constants, Encoding::Church, Encoding::Odot] {
            let back = term_to_vector(&vector_to_term(&v, e), ReadMode::Strict).unwrap();
            assert!(back.approx_eq(&v), "{e:?}");
        }
    }
}
