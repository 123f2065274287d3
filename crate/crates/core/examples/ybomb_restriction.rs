//! `Y_b + (-1).Y_b` with and without the closed-normal guard on
//! factorization.

use lineal_lab::encodings::church_ket;
use lineal_lab::rewrite::{contract, normalize, redexes, ybomb_difference, EngineConfig, RuleGroup};
use lineal_lab::term::pretty;
use lineal_lab::{Dialect, Term};

fn show(label: &str, t: &Term) {
    println!("{label}: {}", pretty(t, Dialect::Lineal));
}

fn main() {
    let b = church_ket("1");
    let t = ybomb_difference(&b);
    show("start", &t);

    let off = EngineConfig::default().with_restriction(false).with_fuel(50);
    let lo = normalize(&t, &off);
    show("unrestricted, leftmost-outermost", lo.result());

    let beta = redexes(&t, &off)
        .into_iter()
        .find(|r| r.rule.group == RuleGroup::Beta)
        .unwrap();
    let unfolded = contract(&t, &beta).unwrap();
    show("after unfolding one copy", &unfolded);
    show("unrestricted, then leftmost-outermost", normalize(&unfolded, &off).result());

    let on = EngineConfig::default().with_fuel(50);
    let guarded = normalize(&t, &on);
    println!(
        "restricted: {:?} after {} steps, factorization used {} times",
        guarded.outcome,
        guarded.fuel_used,
        guarded.rules().filter(|r| r.group == RuleGroup::Factorization).count()
    );
}
