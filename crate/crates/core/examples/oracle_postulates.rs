//! The dense state-vector oracle: evolution, composition, measurement,
//! and a projective measurement done as a change of basis.

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;
use lineal_lab::oracle::{
    measure_computational, measure_general, simulate_measurement_via_basis, tensor, Circuit,
    MeasurementFamily, StateVector,
};
use lineal_lab::Dialect;

fn main() {
    let bell = Circuit::parse("H(0); CNOT(0,1)", None).unwrap();
    let psi = bell.run_from_zero().unwrap();
    println!("{bell} |00> = {}", psi.to_json());
    println!("outcomes: {}", measure_computational(&psi).to_json(Dialect::LambdaS));

    let a = StateVector::from_real(1, &[0.6, 0.8]).unwrap();
    let b = StateVector::from_bits("1").unwrap();
    println!("(0.6, 0.8) (x) |1> = {}", tensor(&a, &b).unwrap().to_json());

    let h = FRAC_1_SQRT_2;
    let c = |x: f64| Complex64::new(x, 0.0);
    let family = MeasurementFamily::projective(&[vec![c(h), c(h)], vec![c(h), c(-h)]]).unwrap();
    let direct = measure_general(&family, &a).unwrap();
    let via = simulate_measurement_via_basis(&family, &a).unwrap();
    for (x, y) in direct.iter().zip(&via) {
        let same = match (&x.post, &y.post) {
            (Some(p), Some(q)) => p.approx_eq_up_to_phase(q),
            (p, q) => p.is_none() && q.is_none(),
        };
        println!("outcome {}: p = {:.4} vs {:.4}, same post-state: {same}", x.index, x.probability, y.probability);
    }
}
