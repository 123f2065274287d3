//! Deutsch's algorithm in Lambda-S for all four one-bit functions.

use lineal_lab::cli::sample_counts;
use lineal_lab::rewrite::EngineConfig;
use lineal_lab::term::parse_program;
use lineal_lab::Dialect;

const H: &str = "\\x:B. if x then (1/sqrt2).|0> + (-1/sqrt2).|1> else (1/sqrt2).|0> + (1/sqrt2).|1>";

fn main() {
    // phase oracles (-1)^f(x) |x>
    let oracles = [
        ("f = 0", "|1>", "|0>"),
        ("f = 1", "(-1).|1>", "(-1).|0>"),
        ("f = x", "(-1).|1>", "|0>"),
        ("f = not x", "|1>", "(-1).|0>"),
    ];
    let cfg = EngineConfig::for_dialect(Dialect::LambdaS);
    for (name, on1, on0) in oracles {
        let src = format!("let H = {H} in let U = \\x:B. if x then {on1} else {on0} in pi (H (U (H |0>)))");
        let p = parse_program(&src, Dialect::LambdaS).unwrap();
        let counts = sample_counts(&p, &cfg, 1, 1000).unwrap();
        println!("{name:<10} {counts:?}");
    }
}
