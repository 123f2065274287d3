//! Small-step rewriting for the algebraic calculi.
//!
//! Reduction is weak: nothing fires under a lambda, inside the branches of
//! a conditional, or inside the branches of a sup eliminator.

mod engine;
mod rules;

use std::fmt;

use serde::Serialize;

use crate::term::{pretty, Dialect, Position, Term};

pub(crate) use rules::reducible_children;

pub use engine::{
    contract, diverges_witness, is_normal, normalize, redexes, step, ybomb_difference, Outcome,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RuleGroup {
    Beta,
    Elementary,
    Factorization,
    Application,
    Conditional,
    Pair,
    Odot,
}

impl RuleGroup {
    pub fn name(self) -> &'static str {
        match self {
            RuleGroup::Beta => "beta",
            RuleGroup::Elementary => "elementary",
            RuleGroup::Factorization => "factorization",
            RuleGroup::Application => "application",
            RuleGroup::Conditional => "conditional",
            RuleGroup::Pair => "pair",
            RuleGroup::Odot => "odot",
        }
    }
}

/// One rewrite rule, printed `group/index`.
///
/// | group | rules |
/// |---|---|
/// | beta | 1 `(λx.t)b → (b/x)t` for basis `b`; 2 `(λx:SΨ.t)r → (r/x)t` |
/// | elementary | 1 `t+0→t`, 2 `0.t→0`, 3 `1.t→t`, 4 `α.0→0`, 5 `α.(β.t)→(αβ).t`, 6 `α.(t+r)→α.t+α.r` |
/// | factorization | 1 `α.t+β.t→(α+β).t`, 2 `α.t+t→(α+1).t`, 3 `t+t→2.t` |
/// | application | 1 `(t+r)s`, 2 `(α.t)r`, 3 `0 t`, 4 `s(t+r)`, 5 `r(α.t)`, 6 `t 0` |
/// | conditional | 1 `if |1>`, 2 `if |0>`, 3 over `+`, 4 over `α.`, 5 over `0` |
/// | pair | 1-3 left component `+`, `α.`, `0`; 4-6 right component |
/// | odot | 1 `dpar` on an introduced sup, 2 `dmeas` (sampled), 3 `α.(t+r)` over a sup, 4 parallel merge |
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RuleId {
    pub group: RuleGroup,
    pub index: u8,
}

impl RuleId {
    pub const fn new(group: RuleGroup, index: u8) -> Self {
        RuleId { group, index }
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.group.name(), self.index)
    }
}

impl Serialize for RuleId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// How the next redex is picked.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// The first redex in pre-order.
    LeftmostOutermost,
    /// Like leftmost-outermost, but beta only fires when nothing else can.
    AlgebraicFirst,
    /// Uniform choice among all redexes, from a seeded generator.
    RandomSeeded(u64),
}

#[derive(Clone, Debug, PartialEq)]
pub struct EngineConfig {
    pub dialect: Dialect,
    pub restriction_enabled: bool,
    pub strategy: Strategy,
    pub fuel: usize,
}

pub const DEFAULT_FUEL: usize = 10_000;

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            dialect: Dialect::Lineal,
            restriction_enabled: true,
            strategy: Strategy::LeftmostOutermost,
            fuel: DEFAULT_FUEL,
        }
    }
}

impl EngineConfig {
    pub fn for_dialect(dialect: Dialect) -> Self {
        EngineConfig { dialect, ..Default::default() }
    }

    pub fn with_strategy(mut self, strategy: Strategy) -> Self {
        self.strategy = strategy;
        self
    }

    pub fn with_fuel(mut self, fuel: usize) -> Self {
        self.fuel = fuel;
        self
    }

    pub fn with_restriction(mut self, on: bool) -> Self {
        self.restriction_enabled = on;
        self
    }
}

/// Where inside the node at `Redex::pos` the rule matched.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Site {
    Node,
    /// A summand of a sum (the `zero` removed by `t+0→t`).
    Child(usize),
    /// Two summands of a sum merged by factorization.
    Summands(usize, usize),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Redex {
    pub rule: RuleId,
    pub pos: Position,
    pub site: Site,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TraceStep {
    pub rule: RuleId,
    pub pos: Position,
    pub term: Term,
}

#[derive(Clone, Debug)]
pub struct ReductionTrace {
    pub dialect: Dialect,
    pub initial: Term,
    pub steps: Vec<TraceStep>,
    pub fuel_used: usize,
    pub outcome: Outcome,
}

#[derive(Serialize)]
struct StepLine<'a> {
    rule: RuleId,
    pos: &'a [usize],
    term: String,
}

impl ReductionTrace {
    /// The last term reached.
    pub fn result(&self) -> &Term {
        self.steps.last().map_or(&self.initial, |s| &s.term)
    }

    pub fn is_normal(&self) -> bool {
        self.outcome == Outcome::Normal
    }

    /// Every term of the derivation, starting with the initial one.
    pub fn terms(&self) -> impl Iterator<Item = &Term> {
        std::iter::once(&self.initial).chain(self.steps.iter().map(|s| &s.term))
    }

    pub fn rules(&self) -> impl Iterator<Item = RuleId> + '_ {
        self.steps.iter().map(|s| s.rule)
    }

    /// One JSON object per step: `{"rule": "application/3", "pos": [0,1], "term": "..."}`.
    pub fn to_json_lines(&self) -> String {
        let mut out = String::new();
        for s in &self.steps {
            let line = StepLine { rule: s.rule, pos: &s.pos, term: pretty(&s.term, self.dialect) };
            out.push_str(&serde_json::to_string(&line).expect("trace lines serialize"));
            out.push('\n');
        }
        out
    }
}
