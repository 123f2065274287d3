use lineal_lab::lambda_s::{
    measure_distribution, realizes, run, typecheck, MeasureError, Realizability, RunError,
    TypeExpr, TypingContext,
};
use lineal_lab::odot::{
    measure_weights, odot_typecheck, parallel_contractum, qubit, reduce_measure, reduce_parallel,
    OdotError,
};
use lineal_lab::term::{alpha_ac_eq, parse, parse_type};
use lineal_lab::{Dialect, Term};

fn lams(src: &str) -> Term {
    parse(src, Dialect::LambdaS).unwrap()
}

fn sup(src: &str) -> Term {
    parse(src, Dialect::Odot).unwrap()
}

#[test]
fn pi_distribution_is_the_squared_amplitudes() {
    let d = measure_distribution(&lams("pi ((sqrt3/2).|0> + (1/2).|1>)")).unwrap();
    assert!((d.probability(&Term::Ket0) - 0.75).abs() < 1e-12);
    assert!((d.probability(&Term::Ket1) - 0.25).abs() < 1e-12);
    assert!((d.total() - 1.0).abs() < 1e-12);
}

#[test]
fn pi_renormalizes_and_reads_registers() {
    let d = measure_distribution(&lams("pi_2 (|01> + |11> + 2.|10>)")).unwrap();
    assert!((d.probability(&lams("|10>")) - 4.0 / 6.0).abs() < 1e-12);
    assert!((d.probability(&lams("|01>")) - 1.0 / 6.0).abs() < 1e-12);
    assert_eq!(d.probability(&lams("|00>")), 0.0);
}

#[test]
fn pi_errors() {
    assert_eq!(measure_distribution(&lams("|0>")), Err(MeasureError::NotAMeasurement));
    assert_eq!(measure_distribution(&lams("pi zero")), Err(MeasureError::Degenerate));
    assert!(matches!(measure_distribution(&lams("pi_2 |0>")), Err(MeasureError::Unreadable(_))));
}

#[test]
fn distribution_json() {
    let d = measure_distribution(&lams("pi ((1/2).|0> + (sqrt3/2).|1>)")).unwrap();
    let v: serde_json::Value = serde_json::from_str(&d.to_json(Dialect::LambdaS)).unwrap();
    assert_eq!(v["outcomes"][0]["term"], "|0>");
    assert!((v["outcomes"][1]["p"].as_f64().unwrap() - 0.75).abs() < 1e-12);
}

#[test]
fn runs_are_seeded() {
    let t = lams("(\\x:S B. pi x) ((1/sqrt2).|0> + (1/sqrt2).|1>)");
    let outcomes: Vec<Term> = (0..64).map(|s| run(&t, s).unwrap()).collect();
    assert_eq!(outcomes, (0..64).map(|s| run(&t, s).unwrap()).collect::<Vec<_>>());
    assert!(outcomes.contains(&Term::Ket0) && outcomes.contains(&Term::Ket1));
    assert!(matches!(run(&lams("pi zero"), 0), Err(RunError::Measurement(MeasureError::Degenerate))));
}

#[test]
fn measurement_inside_a_pair_is_resolved() {
    let t = lams("(pi ((1/sqrt2).|0> + (1/sqrt2).|1>), |1>)");
    let got = run(&t, 1).unwrap();
    assert!(got == lams("|01>") || got == lams("|11>"), "{got:?}");
}

#[test]
fn realizability() {
    let sb = TypeExpr::s(TypeExpr::B);
    assert_eq!(realizes(&lams("|0>"), &TypeExpr::B), Realizability::Realizes);
    assert_eq!(realizes(&lams("|0>"), &sb), Realizability::Realizes);
    assert_eq!(realizes(&lams("|01>"), &TypeExpr::B), Realizability::DoesNot);
    assert_eq!(realizes(&lams("|01>"), &TypeExpr::bits(2)), Realizability::Realizes);
    assert_eq!(realizes(&lams("(1/sqrt2).|0> + (1/sqrt2).|1>"), &TypeExpr::B), Realizability::DoesNot);
    assert_eq!(realizes(&lams("(3/5).|00> + (4i/5).|11>"), &TypeExpr::s(TypeExpr::bits(2))), Realizability::Realizes);
    assert_eq!(realizes(&lams("zero"), &sb), Realizability::DoesNot);
    assert_eq!(realizes(&lams("pi ((1/2).|0> + (1/2).|1>)"), &TypeExpr::B), Realizability::Realizes);
    let h = lams("\\x:B. if x then (1/sqrt2).|0> + (-1/sqrt2).|1> else (1/sqrt2).|0> + (1/sqrt2).|1>");
    assert_eq!(realizes(&Term::app(h, Term::Ket1), &sb), Realizability::Realizes);
}

#[test]
fn lambda_s_types() {
    let ctx = TypingContext::new();
    let ty = |s: &str| typecheck(&ctx, &lams(s)).map(|t| t.to_string());
    assert_eq!(ty("(1/sqrt2).|0> + (1/sqrt2).|1>").unwrap(), "S B");
    assert_eq!(ty("(|0>, |1>)").unwrap(), "B * B");
    assert_eq!(ty("(\\x:B. (x, x)) ((1/sqrt2).|0> + (1/sqrt2).|1>)").unwrap(), "S (B * B)");
    assert_eq!(ty("\\x:S B. pi x").unwrap(), "S B -> B");
    assert!(ty("\\x. x").is_err());
    assert!(ty("y").is_err());
    assert!(ty("(\\x:B. x) (\\y:B. y)").is_err());
    let ctx = TypingContext::new().with("q", parse_type("S B").unwrap());
    assert_eq!(typecheck(&ctx, &lams("pi q")).unwrap(), TypeExpr::B);
}

#[test]
fn parallel_eliminator() {
    let t = sup("dpar((1/2).* + (3/4).*, [x] x, [y] y)");
    let raw = parallel_contractum(&t).unwrap();
    assert!(alpha_ac_eq(&raw, &sup("(1/2).* || (3/4).*")));
    let merged = reduce_parallel(&t).unwrap();
    assert!(alpha_ac_eq(&merged, &sup("(5/4).*")), "{merged:?}");
    assert!(matches!(parallel_contractum(&sup("*")), Err(OdotError::NotParallel(_))));
    let open = sup("\\q:Top (.) Top. dpar(q, [x] x, [y] y)");
    let Term::Abs(_, _, body) = open else { unreachable!() };
    assert!(matches!(parallel_contractum(&body), Err(OdotError::NotIntroduced(_))));
}

#[test]
fn vanishing_branches_drop_out() {
    let t = sup("dpar(1.(\\a:Top.a) + 0.(\\b:Top.b), [x] x, [y] y)");
    assert!(alpha_ac_eq(&reduce_parallel(&t).unwrap(), &sup("\\a:Top.a")));
    let m = sup("dmeas(1.(\\a:Top.a) + 0.(\\b:Top.b), [x] x, [y] y)");
    assert!((0..50).all(|s| alpha_ac_eq(&reduce_measure(&m, s).unwrap(), &sup("\\a:Top.a"))));
    let even = sup("dmeas((1/sqrt2).* + (1/sqrt2).*, [x] x, [y] y)");
    let (p, q) = measure_weights(&even).unwrap();
    assert!((p - 0.5).abs() < 1e-12 && (q - 0.5).abs() < 1e-12);
}

#[test]
fn probabilistic_eliminator() {
    let t = sup("dmeas((sqrt3/2).* + (1/2).*, [x] 1.* + 0.*, [y] 0.* + 1.*)");
    let (p, q) = measure_weights(&t).unwrap();
    assert!((p - 0.75).abs() < 1e-12 && (q - 0.25).abs() < 1e-12);
    let hits = (0..2000).filter(|s| reduce_measure(&t, *s).unwrap() == sup("1.* + 0.*")).count();
    assert!((hits as f64 / 2000.0 - 0.75).abs() < 0.04, "{hits}");
    let dead = sup("dmeas(0.* + 0.*, [x] x, [y] y)");
    assert_eq!(measure_weights(&dead), Err(OdotError::ZeroNorm));
}

#[test]
fn sup_types() {
    let ctx = TypingContext::new();
    let ty = |t: &Term| odot_typecheck(&ctx, t).map(|t| t.to_string());
    assert_eq!(ty(&qubit(0.6, 0.8)).unwrap(), "Top (.) Top");
    assert_eq!(ty(&sup("(1.* + 0.*) + (0.* + 0.*)")).unwrap(), "(Top (.) Top) (.) Top (.) Top");
    assert!(ty(&sup("dmeas(*, [x] x, [y] y)")).is_err());
    assert!(ty(&sup("dpar(1.* + 0.*, [x] x, [y] 1.* + 0.*)")).is_err());
    let gate = sup("\\q:Top (.) Top. dpar(q, [x] 0.x + 1.x, [y] 1.y + 0.y)");
    assert_eq!(ty(&gate).unwrap(), "Top (.) Top -> Top (.) Top");
}
