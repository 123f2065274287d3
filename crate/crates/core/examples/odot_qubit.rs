//! The sup-calculus: qubits as `a.* + b.*`, gates through `dpar`,
//! measurement through `dmeas`.

use lineal_lab::encodings::odot_gate;
use lineal_lab::odot::{measure_weights, parallel_contractum, qubit, run};
use lineal_lab::oracle::gate;
use lineal_lab::rewrite::{normalize, EngineConfig};
use lineal_lab::term::{parse, pretty};
use lineal_lab::{Dialect, Term};

fn main() {
    let d = Dialect::Odot;
    let h = odot_gate(&gate("H").unwrap()).unwrap();
    println!("H = {}", pretty(&h, d));
    let zero = qubit(1.0, 0.0);
    let trace = normalize(&Term::app(h, zero), &EngineConfig::for_dialect(d));
    for s in &trace.steps {
        println!("  --{:<8}--> {}", s.rule, pretty(&s.term, d));
    }

    let par = parse("dpar((1/2).* + (1/2).*, [x] x, [y] y)", d).unwrap();
    println!("raw contractum: {}", pretty(&parallel_contractum(&par).unwrap(), d));

    let meas = parse("dmeas((sqrt3/2).* + (1/2).*, [x] |0>, [y] |1>)", d).unwrap();
    println!("weights: {:?}", measure_weights(&meas).unwrap());
    let runs: Vec<String> = (0..8).map(|s| pretty(&run(&meas, s).unwrap(), d)).collect();
    println!("eight runs: {}", runs.join(" | "));
}
