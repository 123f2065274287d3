use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use super::types::{normalize_type, TypeExpr};
use crate::encodings::constant_ket;
use crate::rewrite::{self, EngineConfig, Outcome, RuleId};
use crate::term::{canonicalize, ket_pair_bits, pretty, Dialect, LinearForm, Position, Term};
use crate::scalar::EPSILON;

#[derive(Clone, Debug, PartialEq, Error)]
pub enum MeasureError {
    #[error("not a measurement `pi_n t`")]
    NotAMeasurement,
    #[error("cannot read `{0}` as a combination of basis kets")]
    Unreadable(String),
    #[error("measurement of the null vector")]
    Degenerate,
}

#[derive(Clone, Debug, PartialEq, Error)]
pub enum RunError {
    #[error("no normal form within {fuel} steps")]
    FuelExhausted { fuel: usize },
    #[error(transparent)]
    Measurement(#[from] MeasureError),
}

/// Basis outcomes with their probabilities.
#[derive(Clone, Debug, PartialEq)]
pub struct OutcomeDistribution {
    pub outcomes: Vec<(Term, f64)>,
    pub seed: Option<u64>,
}

#[derive(Serialize)]
struct OutcomeJson {
    term: String,
    p: f64,
}

#[derive(Serialize)]
struct DistributionJson {
    outcomes: Vec<OutcomeJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
}

impl OutcomeDistribution {
    pub fn probability(&self, outcome: &Term) -> f64 {
        self.outcomes.iter().filter(|(t, _)| t == outcome).map(|(_, p)| p).sum()
    }

    pub fn total(&self) -> f64 {
        self.outcomes.iter().map(|(_, p)| p).sum()
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> &Term {
        let u: f64 = rng.gen();
        let mut acc = 0.0;
        for (t, p) in &self.outcomes {
            acc += p;
            if u < acc {
                return t;
            }
        }
        &self.outcomes.last().expect("non-empty distribution").0
    }

    /// `{"outcomes": [{"term": "|0>", "p": 0.75}, …], "seed": 7}`.
    pub fn to_json(&self, dialect: Dialect) -> String {
        let doc = DistributionJson {
            outcomes: self
                .outcomes
                .iter()
                .map(|(t, p)| OutcomeJson { term: pretty(t, dialect), p: *p })
                .collect(),
            seed: self.seed,
        };
        serde_json::to_string(&doc).expect("distribution serializes")
    }
}

/// A typed reduction step. Measurements are not steps; see [`run`].
pub fn typed_step(t: &Term) -> Option<(RuleId, Term)> {
    rewrite::step(t, &EngineConfig::for_dialect(Dialect::LambdaS))
}

/// Outcome probabilities of `pi_n v` for `v` a combination of n-qubit kets,
/// renormalized by the total squared norm.
pub fn measure_distribution(t: &Term) -> Result<OutcomeDistribution, MeasureError> {
    let Term::App(f, v) = t else { return Err(MeasureError::NotAMeasurement) };
    let Term::Meas(n) = **f else { return Err(MeasureError::NotAMeasurement) };
    let lf = LinearForm::from_term(v);
    let mut outcomes = Vec::new();
    for (c, k) in lf.entries() {
        let bits = ket_pair_bits(k)
            .filter(|b| b.len() == n)
            .ok_or_else(|| MeasureError::Unreadable(pretty(k, Dialect::LambdaS)))?;
        outcomes.push((bits, c.norm_sqr()));
    }
    let total: f64 = outcomes.iter().map(|(_, p)| p).sum();
    if total <= EPSILON {
        return Err(MeasureError::Degenerate);
    }
    outcomes.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(OutcomeDistribution {
        outcomes: outcomes.into_iter().map(|(b, p)| (constant_ket(&b), p / total)).collect(),
        seed: None,
    })
}

/// First measurement `pi_n v` at a position weak reduction can reach.
fn find_measurement(t: &Term, path: &mut Position) -> bool {
    if let Term::App(f, _) = t {
        if matches!(**f, Term::Meas(_)) {
            return true;
        }
    }
    let kids = t.children();
    for i in rewrite::reducible_children(t) {
        path.push(i);
        if find_measurement(kids[i], path) {
            return true;
        }
        path.pop();
    }
    false
}

/// Normalizes `t`, sampling each measurement with a generator seeded by
/// `seed`.
pub fn run(t: &Term, seed: u64) -> Result<Term, RunError> {
    run_with(t, seed, &EngineConfig::for_dialect(Dialect::LambdaS))
}

pub fn run_with(t: &Term, seed: u64, cfg: &EngineConfig) -> Result<Term, RunError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cur = canonicalize(t);
    let mut left = cfg.fuel;
    loop {
        let trace = rewrite::normalize(&cur, &cfg.clone().with_fuel(left));
        if trace.outcome == Outcome::FuelExhausted {
            return Err(RunError::FuelExhausted { fuel: cfg.fuel });
        }
        left -= trace.fuel_used;
        cur = trace.result().clone();
        let mut pos = Vec::new();
        if !find_measurement(&cur, &mut pos) {
            return Ok(cur);
        }
        let node = cur.subterm(&pos).expect("found position exists");
        let picked = measure_distribution(node)?.sample(&mut rng).clone();
        cur = canonicalize(&cur.replace_at(&pos, picked).expect("found position exists"));
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Realizability {
    Realizes,
    DoesNot,
    /// No normal form within the fuel bound.
    Unknown,
}

/// Whether `t` reduces to a value of the qubit type `a`: a basis ket for
/// `B^n`, a norm-1 combination of basis kets for `S(B^n)`.
pub fn realizes(t: &Term, a: &TypeExpr) -> Realizability {
    realizes_with(t, a, &EngineConfig::for_dialect(Dialect::LambdaS))
}

pub fn realizes_with(t: &Term, a: &TypeExpr, cfg: &EngineConfig) -> Realizability {
    let a = normalize_type(a);
    let Some(n) = a.qubit_arity() else { return Realizability::DoesNot };
    let trace = rewrite::normalize(t, cfg);
    if trace.outcome == Outcome::FuelExhausted {
        return Realizability::Unknown;
    }
    let v = trace.result();
    let arity_ok = |k: &Term| ket_pair_bits(k).is_some_and(|b| b.len() == n);
    let ok = match v {
        Term::App(f, _) if matches!(**f, Term::Meas(m) if m == n) => {
            measure_distribution(v).is_ok()
        }
        _ if !a.is_superposed() => arity_ok(v),
        _ => {
            let lf = LinearForm::from_term(v);
            !lf.is_empty()
                && lf.entries().iter().all(|(_, k)| arity_ok(k))
                && (lf.norm_sqr() - 1.0).abs() <= EPSILON
        }
    };
    if ok {
        Realizability::Realizes
    } else {
        Realizability::DoesNot
    }
}
