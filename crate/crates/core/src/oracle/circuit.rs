use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;

use super::{apply_unitary, gate, OracleError, StateVector, UnitaryMatrix};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GateOp {
    pub gate: String,
    pub qubits: Vec<usize>,
}

/// A sequence of library gates on an n-qubit register, written
/// `H(0); CNOT(0,1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Circuit {
    pub n: usize,
    pub ops: Vec<GateOp>,
}

impl Circuit {
    pub fn new(n: usize) -> Self {
        Circuit { n, ops: Vec::new() }
    }

    pub fn push(mut self, gate: &str, qubits: &[usize]) -> Self {
        self.ops.push(GateOp { gate: gate.to_string(), qubits: qubits.to_vec() });
        self
    }

    /// Parses `G(q, …); …`. Without `n`, the register is as wide as the
    /// largest qubit index used.
    pub fn parse(src: &str, n: Option<usize>) -> Result<Self, OracleError> {
        let bad = |m: String| OracleError::BadCircuit(m);
        let mut ops = Vec::new();
        for item in src.split([';', '\n']).map(str::trim).filter(|s| !s.is_empty()) {
            let (name, rest) = item
                .split_once('(')
                .ok_or_else(|| bad(format!("expected `GATE(q, …)`, found `{item}`")))?;
            let args = rest
                .strip_suffix(')')
                .ok_or_else(|| bad(format!("missing `)` in `{item}`")))?;
            let qubits = args
                .split(',')
                .map(|q| q.trim().parse::<usize>().map_err(|_| bad(format!("bad qubit `{q}`"))))
                .collect::<Result<Vec<_>, _>>()?;
            ops.push(GateOp { gate: name.trim().to_string(), qubits });
        }
        let used = ops.iter().flat_map(|o| o.qubits.iter().copied()).max().map_or(1, |q| q + 1);
        let n = n.unwrap_or(used);
        if used > n {
            return Err(bad(format!("qubit {} outside a {n}-qubit register", used - 1)));
        }
        let c = Circuit { n, ops };
        c.unitary()?;
        Ok(c)
    }

    /// The product of all gates, first gate rightmost.
    pub fn unitary(&self) -> Result<UnitaryMatrix, OracleError> {
        self.ops.iter().try_fold(UnitaryMatrix::identity(self.n), |acc, op| {
            Ok(gate(&op.gate)?.embed(&op.qubits, self.n)?.compose(&acc))
        })
    }

    /// Each gate lifted to the full register, in application order.
    pub fn layers(&self) -> Result<Vec<UnitaryMatrix>, OracleError> {
        self.ops.iter().map(|op| gate(&op.gate)?.embed(&op.qubits, self.n)).collect()
    }

    pub fn apply(&self, psi: &StateVector) -> Result<StateVector, OracleError> {
        apply_unitary(&self.unitary()?, psi)
    }

    /// The circuit applied to `|0…0>`.
    pub fn run_from_zero(&self) -> Result<StateVector, OracleError> {
        self.apply(&StateVector::basis(self.n, 0)?)
    }

    /// A random circuit of `depth` gates over H, X, Z, and CNOT when
    /// `n ≥ 2`.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, n: usize, depth: usize) -> Self {
        let mut names = vec!["H", "X", "Z"];
        if n >= 2 {
            names.push("CNOT");
        }
        let mut c = Circuit::new(n);
        for _ in 0..depth {
            let g = *names.choose(rng).expect("non-empty gate set");
            let qubits = if g == "CNOT" {
                let mut qs: Vec<usize> = (0..n).collect();
                qs.shuffle(rng);
                qs[..2].to_vec()
            } else {
                vec![rng.gen_range(0..n)]
            };
            c.ops.push(GateOp { gate: g.to_string(), qubits });
        }
        c
    }
}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .ops
            .iter()
            .map(|o| {
                let qs: Vec<String> = o.qubits.iter().map(usize::to_string).collect();
                format!("{}({})", o.gate, qs.join(","))
            })
            .collect();
        f.write_str(&parts.join("; "))
    }
}
