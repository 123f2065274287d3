use num_complex::Complex64;

use super::{Matrix, OracleError, StateVector};
use crate::encodings::constant_ket;
use crate::lambda_s::OutcomeDistribution;
use crate::scalar::EPSILON;

/// Operators `M_i` with `Σ M_i† M_i = I`.
#[derive(Clone, Debug, PartialEq)]
pub struct MeasurementFamily {
    dim: usize,
    ops: Vec<Matrix>,
}

impl MeasurementFamily {
    pub fn new(ops: Vec<Matrix>) -> Result<Self, OracleError> {
        let dim = ops.first().map(Matrix::dim).ok_or(OracleError::NotComplete)?;
        if let Some(bad) = ops.iter().find(|m| m.dim() != dim) {
            return Err(OracleError::DimensionMismatch { expected: dim, found: bad.dim() });
        }
        let sum = ops.iter().fold(Matrix::zeros(dim), |acc, m| acc.add(&m.dagger().mul(m)));
        if !sum.approx_eq(&Matrix::identity(dim)) {
            return Err(OracleError::NotComplete);
        }
        Ok(MeasurementFamily { dim, ops })
    }

    /// Rank-1 projectors `|v_i><v_i|` onto the given vectors.
    pub fn projective(basis: &[Vec<Complex64>]) -> Result<Self, OracleError> {
        MeasurementFamily::new(basis.iter().map(|v| Matrix::outer(v)).collect())
    }

    /// `P_b = |b><b|` for every n-bit string `b`.
    pub fn computational(n: usize) -> Self {
        let dim = 1 << n;
        let basis: Vec<Vec<Complex64>> = (0..dim)
            .map(|i| {
                let mut v = vec![Complex64::new(0.0, 0.0); dim];
                v[i] = Complex64::new(1.0, 0.0);
                v
            })
            .collect();
        MeasurementFamily::projective(&basis).expect("computational basis is complete")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn operators(&self) -> &[Matrix] {
        &self.ops
    }

    /// The basis `{v_i}` with `M_i = |v_i><v_i|`, if the family has that form.
    pub fn rank1_basis(&self) -> Option<Vec<Vec<Complex64>>> {
        if self.ops.len() != self.dim {
            return None;
        }
        let mut basis = Vec::with_capacity(self.dim);
        for m in &self.ops {
            let k = (0..self.dim).max_by(|&a, &b| {
                let na: f64 = m.column(a).iter().map(|x| x.norm_sqr()).sum();
                let nb: f64 = m.column(b).iter().map(|x| x.norm_sqr()).sum();
                na.total_cmp(&nb)
            })?;
            let col = m.column(k);
            let norm = col.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
            if norm <= EPSILON {
                return None;
            }
            let v: Vec<Complex64> = col.iter().map(|x| x / norm).collect();
            if !Matrix::outer(&v).approx_eq(m) {
                return None;
            }
            basis.push(v);
        }
        for i in 0..self.dim {
            for j in 0..self.dim {
                let ip: Complex64 = basis[i].iter().zip(&basis[j]).map(|(a, b)| a.conj() * b).sum();
                let want = if i == j { 1.0 } else { 0.0 };
                if (ip - want).norm() > EPSILON {
                    return None;
                }
            }
        }
        Some(basis)
    }
}

/// One measurement result. `post` is present when the probability
/// exceeds the tolerance.
#[derive(Clone, Debug, PartialEq)]
pub struct MeasuredBranch {
    pub index: usize,
    pub probability: f64,
    pub post: Option<StateVector>,
}

fn check_dim(m: &MeasurementFamily, psi: &StateVector) -> Result<(), OracleError> {
    if m.dim != psi.dim() {
        return Err(OracleError::DimensionMismatch { expected: m.dim, found: psi.dim() });
    }
    Ok(())
}

/// `p_i = <ψ|M_i†M_i|ψ>`, post-state `M_i|ψ>/√p_i`.
pub fn measure_general(
    m: &MeasurementFamily,
    psi: &StateVector,
) -> Result<Vec<MeasuredBranch>, OracleError> {
    check_dim(m, psi)?;
    m.ops
        .iter()
        .enumerate()
        .map(|(index, op)| {
            let v = op.mul_vec(psi.amps());
            let probability: f64 = v.iter().map(|x| x.norm_sqr()).sum();
            let post = if probability > EPSILON {
                Some(StateVector::normalized(psi.n(), v)?)
            } else {
                None
            };
            Ok(MeasuredBranch { index, probability, post })
        })
        .collect()
}

/// Outcome `|b>` with probability `|α_b|²`.
pub fn measure_computational(psi: &StateVector) -> OutcomeDistribution {
    let n = psi.n();
    OutcomeDistribution {
        outcomes: psi
            .amps()
            .iter()
            .enumerate()
            .filter(|(_, a)| a.norm_sqr() > EPSILON * EPSILON)
            .map(|(i, a)| (constant_ket(&format!("{i:0n$b}")), a.norm_sqr()))
            .collect(),
        seed: None,
    }
}

/// Runs a rank-1 projective measurement as a change of basis `U`
/// (`v_i ↦ |i>`), a computational-basis measurement of `U|ψ>`, and `U†`
/// applied to each post-state.
pub fn simulate_measurement_via_basis(
    m: &MeasurementFamily,
    psi: &StateVector,
) -> Result<Vec<MeasuredBranch>, OracleError> {
    check_dim(m, psi)?;
    let basis = m.rank1_basis().ok_or(OracleError::NotRank1Projective)?;
    let u = Matrix::from_rows(basis.iter().map(|v| v.iter().map(|x| x.conj()).collect()).collect())?;
    let u_dag = u.dagger();
    let rotated = u.mul_vec(psi.amps());
    (0..m.dim)
        .map(|i| {
            let probability = rotated[i].norm_sqr();
            let post = if probability > EPSILON {
                let collapsed = StateVector::basis(psi.n(), i)?;
                Some(StateVector::normalized(psi.n(), u_dag.mul_vec(collapsed.amps()))?)
            } else {
                None
            };
            Ok(MeasuredBranch { index: i, probability, post })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::Term;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn example() -> StateVector {
        StateVector::from_real(1, &[3f64.sqrt() / 2.0, 0.5]).unwrap()
    }

    #[test]
    fn general_measurement_example() {
        let out = measure_general(&MeasurementFamily::computational(1), &example()).unwrap();
        assert!((out[0].probability - 0.75).abs() < 1e-12);
        assert!((out[1].probability - 0.25).abs() < 1e-12);
        assert!(out[0].post.as_ref().unwrap().approx_eq(&StateVector::from_bits("0").unwrap()));
        assert!(out[1].post.as_ref().unwrap().approx_eq(&StateVector::from_bits("1").unwrap()));
    }

    #[test]
    fn computational_distribution() {
        let d = measure_computational(&example());
        assert!((d.probability(&Term::Ket0) - 0.75).abs() < 1e-12);
        let d = measure_computational(&StateVector::from_bits("11").unwrap());
        assert_eq!(d.outcomes.len(), 1);
        assert!((d.probability(&Term::pair(Term::Ket1, Term::Ket1)) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn plus_minus_basis() {
        let h = FRAC_1_SQRT_2;
        let plus = vec![Complex64::new(h, 0.0), Complex64::new(h, 0.0)];
        let minus = vec![Complex64::new(h, 0.0), Complex64::new(-h, 0.0)];
        let fam = MeasurementFamily::projective(&[plus, minus]).unwrap();
        let zero = StateVector::from_bits("0").unwrap();
        let a = measure_general(&fam, &zero).unwrap();
        let b = simulate_measurement_via_basis(&fam, &zero).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert!((x.probability - 0.5).abs() < 1e-12);
            assert!((x.probability - y.probability).abs() < 1e-12);
            assert!(x.post.as_ref().unwrap().approx_eq_up_to_phase(y.post.as_ref().unwrap()));
        }
    }

    #[test]
    fn non_projective_rejected() {
        let half = Matrix::from_real(&[&[FRAC_1_SQRT_2, 0.0], &[0.0, FRAC_1_SQRT_2]]).unwrap();
        let fam = MeasurementFamily::new(vec![half.clone(), half]).unwrap();
        assert_eq!(
            simulate_measurement_via_basis(&fam, &example()),
            Err(OracleError::NotRank1Projective)
        );
        let bad = Matrix::identity(2).add(&Matrix::identity(2));
        assert_eq!(MeasurementFamily::new(vec![bad]), Err(OracleError::NotComplete));
    }
}
