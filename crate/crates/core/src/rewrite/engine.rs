use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::rules::{rewrite_node, Matcher};
use super::{EngineConfig, Redex, ReductionTrace, RuleGroup, RuleId, Strategy, TraceStep};
use crate::term::{canonicalize, Term};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Normal,
    FuelExhausted,
}

/// All redexes of `t`, in pre-order.
pub fn redexes(t: &Term, cfg: &EngineConfig) -> Vec<Redex> {
    let mut out = Vec::new();
    Matcher::new(cfg).collect(t, &mut Vec::new(), &mut out, false);
    out
}

fn first_redex(t: &Term, cfg: &EngineConfig) -> Option<Redex> {
    let mut out = Vec::new();
    Matcher::new(cfg).collect(t, &mut Vec::new(), &mut out, true);
    out.pop()
}

/// Whether `t` has no redex under `cfg`.
pub fn is_normal(t: &Term, cfg: &EngineConfig) -> bool {
    first_redex(t, cfg).is_none()
}

/// Fires `redex` in `t` and re-canonicalizes. `None` if the redex does not
/// match `t`.
pub fn contract(t: &Term, redex: &Redex) -> Option<Term> {
    let node = t.subterm(&redex.pos)?;
    let new = rewrite_node(node, redex.rule, redex.site)?;
    Some(canonicalize(&t.replace_at(&redex.pos, new)?))
}

fn pick(t: &Term, cfg: &EngineConfig, rng: &mut Option<ChaCha8Rng>) -> Option<Redex> {
    match cfg.strategy {
        Strategy::LeftmostOutermost => first_redex(t, cfg),
        Strategy::AlgebraicFirst => {
            let all = redexes(t, cfg);
            let pos = all.iter().position(|r| r.rule.group != RuleGroup::Beta).unwrap_or(0);
            all.into_iter().nth(pos)
        }
        Strategy::RandomSeeded(seed) => {
            let mut all = redexes(t, cfg);
            if all.is_empty() {
                return None;
            }
            let rng = rng.get_or_insert_with(|| ChaCha8Rng::seed_from_u64(seed));
            let i = rng.gen_range(0..all.len());
            Some(all.swap_remove(i))
        }
    }
}

/// One reduction step, or `None` when `t` is normal.
pub fn step(t: &Term, cfg: &EngineConfig) -> Option<(RuleId, Term)> {
    let t = canonicalize(t);
    let redex = pick(&t, cfg, &mut None)?;
    let next = contract(&t, &redex).expect("matched redex contracts");
    Some((redex.rule, next))
}

/// Reduces until no redex is left or `cfg.fuel` steps have been taken.
pub fn normalize(t: &Term, cfg: &EngineConfig) -> ReductionTrace {
    let initial = canonicalize(t);
    let mut cur = initial.clone();
    let mut steps = Vec::new();
    let mut rng = None;
    let outcome = loop {
        let Some(redex) = pick(&cur, cfg, &mut rng) else {
            break Outcome::Normal;
        };
        if steps.len() >= cfg.fuel {
            break Outcome::FuelExhausted;
        }
        cur = contract(&cur, &redex).expect("matched redex contracts");
        steps.push(TraceStep { rule: redex.rule, pos: redex.pos, term: cur.clone() });
    };
    ReductionTrace { dialect: cfg.dialect, initial, fuel_used: steps.len(), steps, outcome }
}

/// `Y_b = Δ_b Δ_b` with `Δ_b = λx.(x x + b)`; reduces to `Y_b + b`.
pub fn diverges_witness(b: &Term) -> Term {
    let x = crate::term::fresh_name("x", &b.free_vars());
    let delta = Term::abs(
        x.clone(),
        Term::sum([Term::app(Term::var(x.clone()), Term::var(x)), b.clone()]),
    );
    canonicalize(&Term::app(delta.clone(), delta))
}

/// `Y_b + (-1).Y_b`, the term whose value depends on the strategy when
/// factorization is unrestricted.
pub fn ybomb_difference(b: &Term) -> Term {
    let y = diverges_witness(b);
    canonicalize(&Term::sum([y.clone(), Term::scale(-1.0, y)]))
}
