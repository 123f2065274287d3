//! Norm-1 realizers of `S B`, and the sum that collapses to norm 2.

use lineal_lab::lambda_s::{realizes, TypeExpr};
use lineal_lab::term::{canonicalize, parse, pretty, LinearForm};
use lineal_lab::Dialect;

fn main() {
    let sb = TypeExpr::s(TypeExpr::B);
    for src in [
        "(1/sqrt2).|0> + (1/sqrt2).|1>",
        "(1/2).|0> + (1/2).|1>",
        "(1/sqrt2).|0> + (1/sqrt2).|0>",
        "(3/5).|0> + (4i/5).|1>",
    ] {
        let t = parse(src, Dialect::LambdaS).unwrap();
        let lf = LinearForm::from_term(&canonicalize(&t));
        println!(
            "{src:<32} ~ {:<24} norm^2 {:.3}  {:?}",
            pretty(&lf.to_term(), Dialect::LambdaS),
            lf.norm_sqr(),
            realizes(&t, &sb)
        );
    }
}
