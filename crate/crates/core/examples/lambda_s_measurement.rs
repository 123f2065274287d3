//! Lambda-S: the two beta rules, typing, and sampling `pi`.

use lineal_lab::cli::sample_counts;
use lineal_lab::lambda_s::{measure_distribution, typecheck, TypingContext};
use lineal_lab::rewrite::{normalize, EngineConfig};
use lineal_lab::term::{parse_program, pretty};
use lineal_lab::Dialect;

fn main() {
    let cfg = EngineConfig::for_dialect(Dialect::LambdaS);
    for src in [
        "(\\x:B. (x, x)) ((sqrt3/2).|0> + (1/2).|1>)",
        "(\\x:S B. pi x) ((sqrt3/2).|0> + (1/2).|1>)",
    ] {
        let p = parse_program(src, Dialect::LambdaS).unwrap();
        let ty = typecheck(&TypingContext::new(), &p.term).unwrap();
        println!("{src} : {ty}");
        for s in normalize(&p.term, &cfg).steps {
            println!("  --{:<14}--> {}", s.rule, pretty(&s.term, Dialect::LambdaS));
        }
    }

    let p = parse_program("pi ((sqrt3/2).|0> + (1/2).|1>)", Dialect::LambdaS).unwrap();
    let exact = measure_distribution(&p.term).unwrap();
    println!("exact: {}", exact.to_json(Dialect::LambdaS));
    let counts = sample_counts(&p, &cfg, 42, 10_000).unwrap();
    println!("10000 shots: {counts:?}");
}
