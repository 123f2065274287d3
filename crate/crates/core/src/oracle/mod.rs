//! Dense state-vector reference for the postulates of quantum mechanics:
//! states, unitary evolution, measurement, and composition by tensor
//! product. Registers are capped at [`MAX_QUBITS`]; qubit 0 is the most
//! significant bit of a basis index.

mod bridge;
mod circuit;
mod matrix;
mod measure;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scalar::EPSILON;

pub use bridge::{term_to_amplitudes, term_to_vector, vector_to_term, Encoding, ReadMode};
pub use circuit::{Circuit, GateOp};
pub use matrix::{gate, Matrix, UnitaryMatrix, GATE_NAMES};
pub use measure::{
    measure_computational, measure_general, simulate_measurement_via_basis, MeasuredBranch,
    MeasurementFamily,
};

pub const MAX_QUBITS: usize = 12;

#[derive(Clone, Debug, PartialEq, Error)]
pub enum OracleError {
    #[error("state has squared norm {0}, expected 1")]
    NotNormalized(f64),
    #[error("expected {expected} amplitudes, found {found}")]
    WrongLength { expected: usize, found: usize },
    #[error("{0} qubits exceed the limit of {MAX_QUBITS}")]
    TooManyQubits(usize),
    #[error("dimension mismatch: {expected} vs {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is not unitary")]
    NotUnitary,
    #[error("measurement operators do not sum to the identity")]
    NotComplete,
    #[error("measurement family is not rank-1 projective onto a basis")]
    NotRank1Projective,
    #[error("unknown gate `{0}`")]
    UnknownGate(String),
    #[error("bad circuit: {0}")]
    BadCircuit(String),
    #[error("cannot read a state from `{0}`")]
    Unreadable(String),
    #[error("invalid JSON: {0}")]
    Json(String),
}

/// A norm-1 vector of 2^n amplitudes.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    n: usize,
    amps: Vec<Complex64>,
}

#[derive(Serialize, Deserialize)]
struct StateJson {
    n: usize,
    amps: Vec<[f64; 2]>,
}

pub(crate) fn check_qubits(n: usize) -> Result<(), OracleError> {
    if n > MAX_QUBITS {
        Err(OracleError::TooManyQubits(n))
    } else {
        Ok(())
    }
}

impl StateVector {
    pub fn new(n: usize, amps: Vec<Complex64>) -> Result<Self, OracleError> {
        check_qubits(n)?;
        if amps.len() != 1 << n {
            return Err(OracleError::WrongLength { expected: 1 << n, found: amps.len() });
        }
        let norm: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        if (norm - 1.0).abs() > EPSILON {
            return Err(OracleError::NotNormalized(norm));
        }
        Ok(StateVector { n, amps })
    }

    /// Rescales `amps` to norm 1.
    pub fn normalized(n: usize, amps: Vec<Complex64>) -> Result<Self, OracleError> {
        let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm <= EPSILON {
            return Err(OracleError::NotNormalized(0.0));
        }
        StateVector::new(n, amps.into_iter().map(|a| a / norm).collect())
    }

    pub fn basis(n: usize, index: usize) -> Result<Self, OracleError> {
        check_qubits(n)?;
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n];
        let slot = amps
            .get_mut(index)
            .ok_or(OracleError::WrongLength { expected: 1 << n, found: index + 1 })?;
        *slot = Complex64::new(1.0, 0.0);
        Ok(StateVector { n, amps })
    }

    /// `|bits>`, first bit most significant.
    pub fn from_bits(bits: &str) -> Result<Self, OracleError> {
        let idx = usize::from_str_radix(bits, 2).map_err(|_| OracleError::Unreadable(bits.into()))?;
        StateVector::basis(bits.len(), idx)
    }

    pub fn from_real(n: usize, amps: &[f64]) -> Result<Self, OracleError> {
        StateVector::new(n, amps.iter().map(|&a| Complex64::new(a, 0.0)).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amps(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Largest componentwise modulus of the difference.
    pub fn max_deviation(&self, other: &[Complex64]) -> f64 {
        if other.len() != self.amps.len() {
            return f64::INFINITY;
        }
        self.amps.iter().zip(other).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &StateVector) -> bool {
        self.max_deviation(&other.amps) <= EPSILON
    }

    /// Deviation after aligning global phases on this state's
    /// largest-modulus amplitude.
    pub fn phase_deviation(&self, other: &StateVector) -> f64 {
        if other.dim() != self.dim() {
            return f64::INFINITY;
        }
        let k = (0..self.dim())
            .max_by(|&i, &j| self.amps[i].norm().total_cmp(&self.amps[j].norm()))
            .expect("non-empty state");
        let (a, b) = (self.amps[k], other.amps[k]);
        if b.norm() <= EPSILON {
            return f64::INFINITY;
        }
        let phase = (a / b) / (a / b).norm();
        let aligned: Vec<Complex64> = other.amps.iter().map(|x| x * phase).collect();
        self.max_deviation(&aligned)
    }

    pub fn approx_eq_up_to_phase(&self, other: &StateVector) -> bool {
        self.phase_deviation(other) <= EPSILON
    }

    pub fn to_json(&self) -> String {
        let doc = StateJson { n: self.n, amps: self.amps.iter().map(|a| [a.re, a.im]).collect() };
        serde_json::to_string(&doc).expect("state serializes")
    }

    /// Reads `{"n": 1, "amps": [[re, im], …]}`.
    pub fn from_json(s: &str) -> Result<Self, OracleError> {
        let doc: StateJson = serde_json::from_str(s).map_err(|e| OracleError::Json(e.to_string()))?;
        StateVector::new(doc.n, doc.amps.iter().map(|[re, im]| Complex64::new(*re, *im)).collect())
    }
}

/// `U|ψ>`.
pub fn apply_unitary(u: &UnitaryMatrix, psi: &StateVector) -> Result<StateVector, OracleError> {
    if u.dim() != psi.dim() {
        return Err(OracleError::DimensionMismatch { expected: u.dim(), found: psi.dim() });
    }
    let amps = u.matrix().mul_vec(psi.amps());
    StateVector::normalized(psi.n, amps)
}

/// `|ψ> ⊗ |φ>`.
pub fn tensor(psi: &StateVector, phi: &StateVector) -> Result<StateVector, OracleError> {
    let n = psi.n + phi.n;
    check_qubits(n)?;
    let amps = psi.amps.iter().flat_map(|a| phi.amps.iter().map(move |b| a * b)).collect();
    StateVector::new(n, amps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    #[test]
    fn hadamard_on_zero() {
        let plus = apply_unitary(&gate("H").unwrap(), &StateVector::from_bits("0").unwrap()).unwrap();
        assert!(plus.approx_eq(&StateVector::from_real(1, &[FRAC_1_SQRT_2, FRAC_1_SQRT_2]).unwrap()));
        let back = apply_unitary(&gate("H").unwrap(), &StateVector::from_bits("1").unwrap()).unwrap();
        let back = apply_unitary(&gate("H").unwrap(), &back).unwrap();
        assert!(back.approx_eq(&StateVector::from_bits("1").unwrap()));
    }

    #[test]
    fn tensor_example() {
        let a = StateVector::from_real(1, &[FRAC_1_SQRT_2, FRAC_1_SQRT_2]).unwrap();
        let b = StateVector::from_real(1, &[1.0 / 5f64.sqrt(), 2.0 / 5f64.sqrt()]).unwrap();
        let ab = tensor(&a, &b).unwrap();
        let s10 = 10f64.sqrt();
        let want = StateVector::from_real(2, &[1.0 / s10, 2.0 / s10, 1.0 / s10, 2.0 / s10]).unwrap();
        assert!(ab.approx_eq(&want));
    }

    #[test]
    fn constructors_reject() {
        assert!(matches!(StateVector::from_real(1, &[1.0, 1.0]), Err(OracleError::NotNormalized(_))));
        assert!(matches!(StateVector::basis(13, 0), Err(OracleError::TooManyQubits(13))));
        assert!(StateVector::from_real(1, &[1.0]).is_err());
    }

    #[test]
    fn json_round_trip() {
        let s = StateVector::from_real(1, &[0.6, 0.8]).unwrap();
        assert_eq!(s.to_json(), r#"{"n":1,"amps":[[0.6,0.0],[0.8,0.0]]}"#);
        assert!(StateVector::from_json(&s.to_json()).unwrap().approx_eq(&s));
    }

    #[test]
    fn phase_alignment() {
        let s = StateVector::from_real(1, &[0.6, 0.8]).unwrap();
        let i = Complex64::new(0.0, 1.0);
        let t = StateVector::new(1, s.amps().iter().map(|a| a * i).collect()).unwrap();
        assert!(!s.approx_eq(&t));
        assert!(s.approx_eq_up_to_phase(&t));
    }
}
