//! Without thunks, the selector distributes over both columns of H and
//! the result cancels to the null vector.

use lineal_lab::rewrite::{normalize, EngineConfig, Strategy};
use lineal_lab::term::{parse, pretty};
use lineal_lab::Dialect;

fn main() {
    let src = "(\\x.x ((1/sqrt2).|0> + (1/sqrt2).|1>) ((1/sqrt2).|0> + (-1/sqrt2).|1>)) |0>";
    let t = parse(src, Dialect::Lineal).unwrap();
    let cfg = EngineConfig::default().with_strategy(Strategy::AlgebraicFirst);
    let trace = normalize(&t, &cfg);
    println!("{}", pretty(&trace.initial, Dialect::Lineal));
    for s in &trace.steps {
        println!("  --{:<16}--> {}", s.rule, pretty(&s.term, Dialect::Lineal));
    }

    let thunked = parse(
        "(\\x.{x [(1/sqrt2).|0> + (1/sqrt2).|1>] [(1/sqrt2).|0> + (-1/sqrt2).|1>]}) |0>",
        Dialect::Lineal,
    )
    .unwrap();
    let nf = normalize(&thunked, &EngineConfig::default());
    println!("with thunks: {}", pretty(nf.result(), Dialect::Lineal));
}
