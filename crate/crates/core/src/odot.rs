//! The sup-calculus: `⊤` as the scalars, `A ⊙ B` as an ordered pairing
//! sum, the parallel eliminator `dpar` for gates and the probabilistic
//! eliminator `dmeas` for measurement.
//!
//! A qubit `α.|0> + β.|1>` is the sup `α.* + β.*` of type `Top (.) Top`;
//! n qubits nest: the first qubit picks the left or right half.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::lambda_s::{normalize_type, RunError, TypeError, TypeExpr, TypingContext};
use crate::rewrite::{self, EngineConfig, Outcome};
use crate::scalar::{Scalar, EPSILON};
use crate::term::{canonicalize, pretty, substitute, Dialect, LinearForm, Position, Term};

#[derive(Clone, Debug, PartialEq, Error)]
pub enum OdotError {
    #[error("expected `dpar(…)`, found `{0}`")]
    NotParallel(String),
    #[error("expected `dmeas(…)`, found `{0}`")]
    NotMeasure(String),
    #[error("scrutinee `{0}` is not of the form `a.t + b.r`")]
    NotIntroduced(String),
    #[error("both branch weights vanish")]
    ZeroNorm,
}

/// `α.* + β.*`.
pub fn qubit(alpha: impl Into<Scalar>, beta: impl Into<Scalar>) -> Term {
    Term::sup(Term::scale(alpha, Term::Star), Term::scale(beta, Term::Star))
}

/// The basis state `|bits>` as a star tree with 0/1 leaves.
pub fn odot_ket(bits: &str) -> Term {
    let mut amps = vec![Scalar::ZERO; 1 << bits.len()];
    let idx = usize::from_str_radix(bits, 2).expect("bit string");
    amps[idx] = Scalar::ONE;
    star_tree(&amps)
}

/// The complete star tree with the given leaves (length a power of two).
pub fn star_tree(amps: &[Scalar]) -> Term {
    assert!(amps.len().is_power_of_two(), "leaf count is a power of two");
    if amps.len() == 1 {
        return Term::scale(amps[0], Term::Star);
    }
    let (l, r) = amps.split_at(amps.len() / 2);
    Term::sup(star_tree(l), star_tree(r))
}

#[derive(Clone, Debug, PartialEq)]
enum Tree {
    Leaf(Scalar),
    Node(Box<Tree>, Box<Tree>),
}

fn tree(t: &Term, coef: Scalar) -> Option<Tree> {
    match t {
        Term::Star => Some(Tree::Leaf(coef)),
        Term::Scale(s, b) => tree(b, coef * *s),
        Term::Sup(l, r) => Some(Tree::Node(Box::new(tree(l, coef)?), Box::new(tree(r, coef)?))),
        _ => None,
    }
}

fn add_trees(a: &Tree, b: &Tree) -> Option<Tree> {
    match (a, b) {
        (Tree::Leaf(x), Tree::Leaf(y)) => Some(Tree::Leaf(*x + *y)),
        (Tree::Node(a1, a2), Tree::Node(b1, b2)) => {
            Some(Tree::Node(Box::new(add_trees(a1, b1)?), Box::new(add_trees(a2, b2)?)))
        }
        _ => None,
    }
}

fn tree_term(t: &Tree) -> Term {
    match t {
        Tree::Leaf(c) => Term::scale(*c, Term::Star),
        Tree::Node(l, r) => Term::sup(tree_term(l), tree_term(r)),
    }
}

fn leaves(t: &Tree, out: &mut Vec<Scalar>) {
    match t {
        Tree::Leaf(c) => out.push(*c),
        Tree::Node(l, r) => {
            leaves(l, out);
            leaves(r, out);
        }
    }
}

fn depth(t: &Tree) -> Option<usize> {
    match t {
        Tree::Leaf(_) => Some(0),
        Tree::Node(l, r) => {
            let d = depth(l)?;
            (depth(r)? == d).then_some(d + 1)
        }
    }
}

/// Leaves of a complete star tree, left to right, with the number of
/// qubits it carries.
pub fn star_amplitudes(t: &Term) -> Option<(usize, Vec<Scalar>)> {
    let tr = tree(t, Scalar::ONE)?;
    let n = depth(&tr)?;
    let mut out = Vec::new();
    leaves(&tr, &mut out);
    Some((n, out))
}

/// Merges the components of a parallel composition as a vectorial sum.
/// Star trees of one shape add leaf by leaf; otherwise coefficients of
/// alpha-AC-equal components add.
pub fn merge_parallel(parts: &[Term]) -> Term {
    let mut flat = Vec::new();
    for p in parts {
        match p {
            Term::Parallel(inner) => flat.extend(inner.iter().cloned()),
            other => flat.push(other.clone()),
        }
    }
    let trees: Option<Vec<Tree>> = flat.iter().map(|p| tree(p, Scalar::ONE)).collect();
    if let Some(trees) = trees.filter(|ts| !ts.is_empty()) {
        if let Some(sum) = trees[1..].iter().try_fold(trees[0].clone(), |acc, t| add_trees(&acc, t)) {
            return canonicalize(&tree_term(&sum));
        }
    }
    let lf = LinearForm::from_entries(flat.iter().map(|p| (Scalar::ONE, p.clone())));
    let comps: Vec<Term> = lf
        .entries()
        .iter()
        .map(|(c, t)| if c.is_one() { t.clone() } else { Term::scale(*c, t.clone()) })
        .collect();
    canonicalize(&match comps.len() {
        0 => Term::Zero,
        1 => comps.into_iter().next().expect("one component"),
        _ => Term::Parallel(comps),
    })
}

type Weighted<'a> = (Scalar, &'a Term);

/// Splits an introduced sup `α.t + β.r` into its weighted halves.
pub(crate) fn introduced(t: &Term) -> Option<(Weighted<'_>, Weighted<'_>)> {
    let Term::Sup(l, r) = t else { return None };
    Some((split_scale(l), split_scale(r)))
}

fn split_scale(x: &Term) -> Weighted<'_> {
    match x {
        Term::Scale(s, b) => (*s, &**b),
        other => (Scalar::ONE, other),
    }
}

/// `dpar(α.t + β.r, [x]s1, [y]s2)` to the raw `α.(t/x)s1 || β.(r/y)s2`.
pub fn parallel_contractum(t: &Term) -> Result<Term, OdotError> {
    let Term::DeltaPar(s, x, s1, y, s2) = t else {
        return Err(OdotError::NotParallel(pretty(t, Dialect::Odot)));
    };
    let ((a, l), (b, r)) =
        introduced(s).ok_or_else(|| OdotError::NotIntroduced(pretty(s, Dialect::Odot)))?;
    Ok(Term::Parallel(vec![
        Term::scale(a, substitute(s1, x, l)),
        Term::scale(b, substitute(s2, y, r)),
    ]))
}

/// The parallel contractum, merged as a vectorial sum.
pub fn reduce_parallel(t: &Term) -> Result<Term, OdotError> {
    match parallel_contractum(t)? {
        Term::Parallel(parts) => Ok(merge_parallel(&parts)),
        _ => unreachable!("contractum is a parallel composition"),
    }
}

/// Probabilities of the two branches of `dmeas(α.t + β.r, …)`:
/// `|α|²/(|α|²+|β|²)` and `|β|²/(|α|²+|β|²)`.
pub fn measure_weights(t: &Term) -> Result<(f64, f64), OdotError> {
    let Term::DeltaMeas(s, ..) = t else {
        return Err(OdotError::NotMeasure(pretty(t, Dialect::Odot)));
    };
    let ((a, _), (b, _)) =
        introduced(s).ok_or_else(|| OdotError::NotIntroduced(pretty(s, Dialect::Odot)))?;
    let total = a.norm_sqr() + b.norm_sqr();
    if total <= EPSILON {
        return Err(OdotError::ZeroNorm);
    }
    Ok((a.norm_sqr() / total, b.norm_sqr() / total))
}

/// Fires `dmeas` once, choosing the branch with a generator seeded by `seed`.
pub fn reduce_measure(t: &Term, seed: u64) -> Result<Term, OdotError> {
    reduce_measure_with(t, &mut ChaCha8Rng::seed_from_u64(seed))
}

pub fn reduce_measure_with<R: Rng + ?Sized>(t: &Term, rng: &mut R) -> Result<Term, OdotError> {
    let (p1, _) = measure_weights(t)?;
    let Term::DeltaMeas(s, x, s1, y, s2) = t else { unreachable!("checked above") };
    let ((_, l), (_, r)) = introduced(s).expect("checked above");
    Ok(if rng.gen::<f64>() < p1 { substitute(s1, x, l) } else { substitute(s2, y, r) })
}

fn find_measure(t: &Term, path: &mut Position) -> bool {
    if let Term::DeltaMeas(s, ..) = t {
        if introduced(s).is_some() {
            return true;
        }
    }
    let kids = t.children();
    for i in rewrite::reducible_children(t) {
        path.push(i);
        if find_measure(kids[i], path) {
            return true;
        }
        path.pop();
    }
    false
}

/// Normalizes `t`, resolving each `dmeas` at random.
pub fn run(t: &Term, seed: u64) -> Result<Term, RunError> {
    run_with(t, seed, &EngineConfig::for_dialect(Dialect::Odot))
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
        if !find_measure(&cur, &mut pos) {
            return Ok(cur);
        }
        let node = cur.subterm(&pos).expect("found position exists");
        let next = reduce_measure_with(node, &mut rng)
            .map_err(|_| RunError::Measurement(crate::lambda_s::MeasureError::Degenerate))?;
        cur = canonicalize(&cur.replace_at(&pos, next).expect("found position exists"));
    }
}

fn mismatch(t: &Term, expected: impl ToString, found: impl ToString) -> TypeError {
    TypeError::Mismatch {
        term: pretty(t, Dialect::Odot),
        expected: expected.to_string(),
        found: found.to_string(),
    }
}

/// Types of the sup-calculus: `* : Top`, scaling keeps the type, `t + r`
/// is `A (.) B`, and both eliminators take an `A (.) B` scrutinee with
/// branches of one common type.
pub fn odot_typecheck(ctx: &TypingContext, t: &Term) -> Result<TypeExpr, TypeError> {
    use TypeExpr as T;
    Ok(match t {
        Term::Star => T::Top,
        Term::Var(x) => ctx.lookup(x).cloned().ok_or_else(|| TypeError::Unbound(x.clone()))?,
        Term::Scale(_, b) => odot_typecheck(ctx, b)?,
        Term::Sup(l, r) => T::odot(odot_typecheck(ctx, l)?, odot_typecheck(ctx, r)?),
        Term::Abs(x, None, _) => return Err(TypeError::Unannotated(x.clone())),
        Term::Abs(x, Some(a), body) => {
            let a = normalize_type(a);
            let b = odot_typecheck(&ctx.clone().with(x.clone(), a.clone()), body)?;
            T::arrow(a, b)
        }
        Term::App(f, a) => {
            let tf = odot_typecheck(ctx, f)?;
            let ta = odot_typecheck(ctx, a)?;
            match tf {
                T::Arrow(d, c) if *d == ta => *c,
                T::Arrow(d, _) => return Err(mismatch(t, d, ta)),
                other => return Err(mismatch(t, "a function", other)),
            }
        }
        Term::DeltaPar(s, x, p, y, q) | Term::DeltaMeas(s, x, p, y, q) => {
            let ts = odot_typecheck(ctx, s)?;
            let T::Odot(a, b) = ts else {
                return Err(mismatch(s, "A (.) B", ts));
            };
            let tp = odot_typecheck(&ctx.clone().with(x.clone(), *a), p)?;
            let tq = odot_typecheck(&ctx.clone().with(y.clone(), *b), q)?;
            if tp != tq {
                return Err(mismatch(t, tp, tq));
            }
            tp
        }
        Term::Parallel(ts) => {
            let mut tys = ts.iter().map(|c| odot_typecheck(ctx, c));
            let first = tys.next().expect("parallel has components")?;
            for ty in tys {
                let ty = ty?;
                if ty != first {
                    return Err(mismatch(t, &first, ty));
                }
            }
            first
        }
        other => return Err(TypeError::Unsupported(other.construct_name().to_string())),
    })
}
