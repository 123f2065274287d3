use super::{alpha_ac_eq, canonicalize, term_cmp, Term};
use crate::scalar::Scalar;

/// A term read as a formal linear combination `Σ αᵢ.tᵢ` of non-sum,
/// non-scaled, non-zero terms, with coefficients of alpha-AC-equal terms
/// merged and vanishing coefficients dropped. No entries means `zero`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct LinearForm {
    entries: Vec<(Scalar, Term)>,
}

impl LinearForm {
    pub fn new() -> Self {
        Self::default()
    }

    /// Decomposes sums, scalings and `zero`. Sub-terms under other
    /// constructors are taken as opaque base terms.
    pub fn from_term(t: &Term) -> Self {
        let mut lf = LinearForm::new();
        lf.accumulate(Scalar::ONE, t);
        lf.finish()
    }

    /// Collects `(coefficient, term)` pairs from an arbitrary list.
    pub fn from_entries(entries: impl IntoIterator<Item = (Scalar, Term)>) -> Self {
        let mut lf = LinearForm::new();
        for (c, t) in entries {
            lf.accumulate(c, &t);
        }
        lf.finish()
    }

    fn accumulate(&mut self, coef: Scalar, t: &Term) {
        match t {
            Term::Zero => {}
            Term::Scale(a, b) => self.accumulate(coef * *a, b),
            Term::Sum(ts) => {
                for c in ts {
                    self.accumulate(coef, c);
                }
            }
            other => self.push(coef, other),
        }
    }

    fn push(&mut self, coef: Scalar, t: &Term) {
        if let Some(e) = self.entries.iter_mut().find(|(_, u)| alpha_ac_eq(u, t)) {
            e.0 = e.0 + coef;
        } else {
            self.entries.push((coef, canonicalize(t)));
        }
    }

    fn finish(mut self) -> Self {
        self.entries.retain(|(c, _)| !c.is_zero());
        self.entries.sort_by(|a, b| term_cmp(&a.1, &b.1));
        self
    }

    pub fn entries(&self) -> &[(Scalar, Term)] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `Σ |αᵢ|²`
    pub fn norm_sqr(&self) -> f64 {
        self.entries.iter().map(|(c, _)| c.norm_sqr()).sum()
    }

    /// Coefficient of `t`, zero if absent.
    pub fn coefficient(&self, t: &Term) -> Scalar {
        self.entries
            .iter()
            .find(|(_, u)| alpha_ac_eq(u, t))
            .map_or(Scalar::ZERO, |(c, _)| *c)
    }

    pub fn scaled(&self, by: Scalar) -> Self {
        LinearForm::from_entries(self.entries.iter().map(|(c, t)| (*c * by, t.clone())))
    }

    /// Rebuilds a canonical term; unit coefficients are left implicit.
    pub fn to_term(&self) -> Term {
        let parts = self.entries.iter().map(|(c, t)| {
            if c.is_one() {
                t.clone()
            } else {
                Term::scale(*c, t.clone())
            }
        });
        canonicalize(&Term::sum(parts))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn merges_and_drops() {
        let t = Term::sum([
            Term::scale(0.5, Term::Ket0),
            Term::scale(-0.5, Term::Ket0),
            Term::scale(2.0, Term::scale(0.5, Term::Ket1)),
            Term::Zero,
        ]);
        let lf = LinearForm::from_term(&t);
        assert_eq!(lf.len(), 1);
        assert_eq!(lf.entries()[0], (Scalar::ONE, Term::Ket1));
        assert_eq!(lf.to_term(), Term::Ket1);
    }

    #[test]
    fn empty_is_zero() {
        assert!(LinearForm::from_term(&Term::Zero).is_zero());
        assert_eq!(LinearForm::new().to_term(), Term::Zero);
    }

    #[test]
    fn merges_alpha_equal_terms() {
        let t = Term::sum([Term::abs("x", Term::var("x")), Term::abs("y", Term::var("y"))]);
        let lf = LinearForm::from_term(&t);
        assert_eq!(lf.len(), 1);
        assert_eq!(lf.entries()[0].0, Scalar::real(2.0));
    }
}
