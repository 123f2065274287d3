use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{check_qubits, OracleError};
use crate::scalar::EPSILON;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// A dense square complex matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl Matrix {
    pub fn zeros(dim: usize) -> Self {
        Matrix { dim, data: vec![ZERO; dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Matrix::zeros(dim);
        for i in 0..dim {
            m.set(i, i, ONE);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Complex64>>) -> Result<Self, OracleError> {
        let dim = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != dim) {
            return Err(OracleError::DimensionMismatch { expected: dim, found: bad.len() });
        }
        Ok(Matrix { dim, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_real(rows: &[&[f64]]) -> Result<Self, OracleError> {
        Matrix::from_rows(
            rows.iter().map(|r| r.iter().map(|&x| Complex64::new(x, 0.0)).collect()).collect(),
        )
    }

    /// `|v><v|`.
    pub fn outer(v: &[Complex64]) -> Self {
        let dim = v.len();
        let mut m = Matrix::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                m.set(i, j, v[i] * v[j].conj());
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.data[i * self.dim + j] = v;
    }

    pub fn column(&self, j: usize) -> Vec<Complex64> {
        (0..self.dim).map(|i| self.get(i, j)).collect()
    }

    pub fn dagger(&self) -> Matrix {
        let mut m = Matrix::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                m.set(j, i, self.get(i, j).conj());
            }
        }
        m
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.dim, other.dim, "matrix dimensions agree");
        let mut m = Matrix::zeros(self.dim);
        for i in 0..self.dim {
            for k in 0..self.dim {
                let a = self.get(i, k);
                if a == ZERO {
                    continue;
                }
                for j in 0..self.dim {
                    m.data[i * self.dim + j] += a * other.get(k, j);
                }
            }
        }
        m
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        Matrix {
            dim: self.dim,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn mul_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.get(i, j) * v[j]).sum())
            .collect()
    }

    pub fn kron(&self, other: &Matrix) -> Matrix {
        let dim = self.dim * other.dim;
        let mut m = Matrix::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                let a = self.get(i / other.dim, j / other.dim);
                let b = other.get(i % other.dim, j % other.dim);
                m.set(i, j, a * b);
            }
        }
        m
    }

    pub fn max_deviation(&self, other: &Matrix) -> f64 {
        if self.dim != other.dim {
            return f64::INFINITY;
        }
        self.data.iter().zip(&other.data).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &Matrix) -> bool {
        self.max_deviation(other) <= EPSILON
    }
}

/// A matrix with `U†U = I`.
#[derive(Clone, Debug, PartialEq)]
pub struct UnitaryMatrix {
    m: Matrix,
}

#[derive(Serialize, Deserialize)]
struct UnitaryJson {
    n: usize,
    entries: Vec<Vec<[f64; 2]>>,
}

impl UnitaryMatrix {
    pub fn new(m: Matrix) -> Result<Self, OracleError> {
        if !m.dim.is_power_of_two() {
            return Err(OracleError::DimensionMismatch {
                expected: m.dim.next_power_of_two(),
                found: m.dim,
            });
        }
        check_qubits(m.dim.trailing_zeros() as usize)?;
        if !m.dagger().mul(&m).approx_eq(&Matrix::identity(m.dim)) {
            return Err(OracleError::NotUnitary);
        }
        Ok(UnitaryMatrix { m })
    }

    pub fn from_rows(rows: Vec<Vec<Complex64>>) -> Result<Self, OracleError> {
        UnitaryMatrix::new(Matrix::from_rows(rows)?)
    }

    pub fn identity(n: usize) -> Self {
        UnitaryMatrix { m: Matrix::identity(1 << n) }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.m
    }

    pub fn dim(&self) -> usize {
        self.m.dim
    }

    pub fn qubits(&self) -> usize {
        self.m.dim.trailing_zeros() as usize
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.m.get(i, j)
    }

    pub fn dagger(&self) -> Self {
        UnitaryMatrix { m: self.m.dagger() }
    }

    /// `self · other`, i.e. `other` first.
    pub fn compose(&self, other: &UnitaryMatrix) -> Self {
        UnitaryMatrix { m: self.m.mul(&other.m) }
    }

    pub fn kron(&self, other: &UnitaryMatrix) -> Self {
        UnitaryMatrix { m: self.m.kron(&other.m) }
    }

    /// Lifts a k-qubit gate to an n-qubit register, acting on `targets`
    /// (in the gate's own qubit order).
    pub fn embed(&self, targets: &[usize], n: usize) -> Result<Self, OracleError> {
        let k = self.qubits();
        if targets.len() != k {
            return Err(OracleError::BadCircuit(format!(
                "gate on {k} qubits given {} targets",
                targets.len()
            )));
        }
        if let Some(&q) = targets.iter().find(|&&q| q >= n) {
            return Err(OracleError::BadCircuit(format!("qubit {q} outside a {n}-qubit register")));
        }
        for (i, a) in targets.iter().enumerate() {
            if targets[i + 1..].contains(a) {
                return Err(OracleError::BadCircuit(format!("qubit {a} used twice")));
            }
        }
        check_qubits(n)?;
        let dim = 1 << n;
        let bit = |idx: usize, q: usize| (idx >> (n - 1 - q)) & 1;
        let sub = |idx: usize| targets.iter().fold(0, |acc, &q| (acc << 1) | bit(idx, q));
        let mask: usize = targets.iter().map(|&q| 1 << (n - 1 - q)).sum();
        let mut m = Matrix::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                if i & !mask == j & !mask {
                    m.set(i, j, self.m.get(sub(i), sub(j)));
                }
            }
        }
        Ok(UnitaryMatrix { m })
    }

    pub fn to_json(&self) -> String {
        let entries = (0..self.dim())
            .map(|i| (0..self.dim()).map(|j| [self.get(i, j).re, self.get(i, j).im]).collect())
            .collect();
        serde_json::to_string(&UnitaryJson { n: self.qubits(), entries }).expect("matrix serializes")
    }

    /// Reads `{"n": 1, "entries": [[[re, im], …], …]}`.
    pub fn from_json(s: &str) -> Result<Self, OracleError> {
        let doc: UnitaryJson = serde_json::from_str(s).map_err(|e| OracleError::Json(e.to_string()))?;
        if doc.entries.len() != 1 << doc.n {
            return Err(OracleError::WrongLength { expected: 1 << doc.n, found: doc.entries.len() });
        }
        UnitaryMatrix::from_rows(
            doc.entries
                .into_iter()
                .map(|r| r.into_iter().map(|[re, im]| Complex64::new(re, im)).collect())
                .collect(),
        )
    }
}

pub const GATE_NAMES: [&str; 5] = ["I", "H", "X", "Z", "CNOT"];

/// The named gate library.
pub fn gate(name: &str) -> Result<UnitaryMatrix, OracleError> {
    let h = FRAC_1_SQRT_2;
    let m = match name {
        "I" => Matrix::identity(2),
        "H" => Matrix::from_real(&[&[h, h], &[h, -h]])?,
        "X" => Matrix::from_real(&[&[0.0, 1.0], &[1.0, 0.0]])?,
        "Z" => Matrix::from_real(&[&[1.0, 0.0], &[0.0, -1.0]])?,
        "CNOT" => Matrix::from_real(&[
            &[1.0, 0.0, 0.0, 0.0],
            &[0.0, 1.0, 0.0, 0.0],
            &[0.0, 0.0, 0.0, 1.0],
            &[0.0, 0.0, 1.0, 0.0],
        ])?,
        other => return Err(OracleError::UnknownGate(other.to_string())),
    };
    UnitaryMatrix::new(m)
}
