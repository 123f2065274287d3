//! The Hadamard gate as a Lineal term, applied to both basis states.

use lineal_lab::encodings::{church_ket, encode_gate_1q};
use lineal_lab::oracle::{gate, term_to_amplitudes};
use lineal_lab::rewrite::{normalize, EngineConfig};
use lineal_lab::term::pretty;
use lineal_lab::{Dialect, Term};

fn main() {
    let h = encode_gate_1q(&gate("H").unwrap()).unwrap();
    println!("H = {}", pretty(&h, Dialect::Lineal));
    for bit in ["0", "1"] {
        let trace = normalize(&Term::app(h.clone(), church_ket(bit)), &EngineConfig::default());
        let (_, amps) = term_to_amplitudes(trace.result(), Some(1)).unwrap();
        println!(
            "H |{bit}> -> {}   ({} steps, amplitudes {:.4} {:.4})",
            pretty(trace.result(), Dialect::Lineal),
            trace.steps.len(),
            amps[0].re,
            amps[1].re
        );
    }
}
