//! A Church-encoded circuit reduced under several random strategies, all
//! reaching the same normal form, checked against the dense oracle.

use lineal_lab::encodings::encode_circuit;
use lineal_lab::oracle::{term_to_amplitudes, Circuit, Encoding};
use lineal_lab::rewrite::{normalize, EngineConfig, Strategy};
use lineal_lab::term::{alpha_ac_eq, pretty};
use lineal_lab::Dialect;

fn main() {
    let c = Circuit::parse("H(0); CNOT(0,1); Z(1); H(1)", None).unwrap();
    let t = encode_circuit(&c, Encoding::Church).unwrap();
    let reference = normalize(&t, &EngineConfig::default());
    println!("{c}\nnormal form: {}", pretty(reference.result(), Dialect::Lineal));
    for seed in 0..6 {
        let cfg = EngineConfig::default().with_strategy(Strategy::RandomSeeded(seed));
        let trace = normalize(&t, &cfg);
        println!(
            "seed {seed}: {:>3} steps, same normal form: {}",
            trace.steps.len(),
            alpha_ac_eq(trace.result(), reference.result())
        );
    }
    let (_, amps) = term_to_amplitudes(reference.result(), Some(2)).unwrap();
    let want = c.run_from_zero().unwrap();
    println!("max deviation from the oracle: {:.1e}", want.max_deviation(&amps));
}
