use std::f64::consts::{FRAC_1_SQRT_2, PI};

use num_complex::Complex64;
use proptest::prelude::*;

use lineal_lab::encodings::{church_ket, encode_gate_1q, encode_pair, lambda_s_gate};
use lineal_lab::lambda_s::{normalize_type, occurrences, subtype, typecheck, TypeExpr, TypingContext};
use lineal_lab::odot::{merge_parallel, star_amplitudes, star_tree};
use lineal_lab::oracle::{
    gate, measure_computational, measure_general, simulate_measurement_via_basis, tensor,
    term_to_amplitudes, term_to_vector, vector_to_term, Circuit, Encoding, MeasurementFamily,
    ReadMode, StateVector,
};
use lineal_lab::rewrite::{normalize, EngineConfig, Strategy as Reduction};
use lineal_lab::term::{alpha_ac_eq, canonicalize, parse, pretty, substitute};
use lineal_lab::{Dialect, Scalar, Term};

fn scalar() -> impl Strategy<Value = Scalar> {
    prop_oneof![
        Just(Scalar::ONE),
        Just(Scalar::real(-1.0)),
        Just(Scalar::real(FRAC_1_SQRT_2)),
        Just(Scalar::I),
        (-3.0f64..3.0, -3.0f64..3.0).prop_map(|(re, im)| Scalar::new(re, im)),
    ]
}

fn lineal_term() -> impl Strategy<Value = Term> {
    let leaf = prop_oneof![
        prop::sample::select(vec!["x", "y", "z"]).prop_map(Term::var),
        Just(church_ket("0")),
        Just(church_ket("1")),
        Just(Term::Zero),
    ];
    leaf.prop_recursive(4, 24, 3, |inner| {
        prop_oneof![
            (prop::sample::select(vec!["x", "y", "w"]), inner.clone()).prop_map(|(x, b)| Term::abs(x, b)),
            (inner.clone(), inner.clone()).prop_map(|(f, a)| Term::app(f, a)),
            (scalar(), inner.clone()).prop_map(|(s, t)| Term::scale(s, t)),
            prop::collection::vec(inner, 2..4).prop_map(Term::sum),
        ]
    })
}

fn qubit_type() -> impl Strategy<Value = TypeExpr> {
    let leaf = Just(TypeExpr::B);
    leaf.prop_recursive(3, 8, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(TypeExpr::s),
            (inner.clone(), inner).prop_map(|(a, b)| TypeExpr::prod(a, b)),
        ]
    })
}

fn any_type() -> impl Strategy<Value = TypeExpr> {
    qubit_type().prop_recursive(2, 8, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(TypeExpr::s),
            (qubit_type(), inner).prop_map(|(a, b)| TypeExpr::arrow(a, b)),
        ]
    })
}

fn state(n: usize) -> impl Strategy<Value = StateVector> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1 << n)
        .prop_filter("non-zero", |v| v.iter().map(|(a, b)| a * a + b * b).sum::<f64>() > 1e-3)
        .prop_map(move |v| {
            StateVector::normalized(n, v.into_iter().map(|(a, b)| Complex64::new(a, b)).collect()).unwrap()
        })
}

fn circuit(max_n: usize) -> impl Strategy<Value = Circuit> {
    (1..=max_n, 0..6usize, any::<u64>()).prop_map(|(n, depth, seed)| {
        use rand::SeedableRng;
        Circuit::random(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed), n, depth)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn canonicalize_is_idempotent(t in lineal_term()) {
        let once = canonicalize(&t);
        prop_assert_eq!(canonicalize(&once), once);
    }

    #[test]
    fn substitution_commutes_with_canonicalization(t in lineal_term(), r in lineal_term()) {
        let a = canonicalize(&substitute(&t, "x", &r));
        let b = canonicalize(&substitute(&canonicalize(&t), "x", &canonicalize(&r)));
        prop_assert!(alpha_ac_eq(&a, &b));
    }

    #[test]
    fn pretty_printing_round_trips(t in lineal_term()) {
        let t = canonicalize(&t);
        let text = pretty(&t, Dialect::Lineal);
        let back = parse(&text, Dialect::Lineal).unwrap_or_else(|e| panic!("{text}: {e}"));
        prop_assert!(alpha_ac_eq(&canonicalize(&back), &t), "{}", text);
    }

    #[test]
    fn subtyping_is_a_preorder_and_s_is_idempotent(a in any_type(), b in any_type(), c in any_type()) {
        prop_assert!(subtype(&a, &a));
        prop_assert!(subtype(&a, &TypeExpr::s(a.clone())));
        prop_assert_eq!(normalize_type(&TypeExpr::s(TypeExpr::s(a.clone()))), normalize_type(&TypeExpr::s(a.clone())));
        if subtype(&a, &b) && subtype(&b, &c) {
            prop_assert!(subtype(&a, &c));
        }
        if subtype(&a, &b) && subtype(&b, &a) {
            prop_assert_eq!(normalize_type(&a), normalize_type(&b));
        }
    }

    #[test]
    fn outcome_probabilities_ignore_global_phase(psi in state(2), theta in 0.0..2.0 * PI) {
        let phase = Complex64::from_polar(1.0, theta);
        let rotated = StateVector::new(2, psi.amps().iter().map(|a| a * phase).collect()).unwrap();
        let (p, q) = (measure_computational(&psi), measure_computational(&rotated));
        prop_assert!((p.total() - 1.0).abs() < 1e-9);
        for (t, w) in &p.outcomes {
            prop_assert!((q.probability(t) - w).abs() < 1e-9);
        }
    }

    #[test]
    fn circuits_preserve_the_norm(c in circuit(3), psi in state(3)) {
        let psi = if c.n == 3 { psi } else { StateVector::basis(c.n, 0).unwrap() };
        let out = c.apply(&psi).unwrap();
        prop_assert!((out.norm_sqr() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn tensor_products_are_normalized(a in state(1), b in state(2)) {
        let t = tensor(&a, &b).unwrap();
        prop_assert_eq!(t.n(), 3);
        prop_assert!((t.norm_sqr() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn vectors_round_trip_through_terms(psi in state(2)) {
        for enc in [Encoding::Church, Encoding::Constants, Encoding::Odot] {
            let back = term_to_vector(&vector_to_term(&psi, enc), ReadMode::Strict).unwrap();
            prop_assert!(back.approx_eq(&psi), "{:?}", enc);
        }
    }

    #[test]
    fn encoded_states_print_and_parse_back(psi in state(2)) {
        for (enc, d) in [
            (Encoding::Church, Dialect::Lineal),
            (Encoding::Constants, Dialect::LambdaS),
            (Encoding::Odot, Dialect::Odot),
        ] {
            let text = pretty(&vector_to_term(&psi, enc), d);
            let back = parse(&text, d).unwrap_or_else(|e| panic!("{text}: {e}"));
            let v = term_to_vector(&canonicalize(&back), ReadMode::Strict).unwrap();
            prop_assert!(v.approx_eq(&psi), "{}", text);
        }
    }

    #[test]
    fn change_of_basis_measurement_agrees(
        theta in 0.0..PI, p0 in 0.0..2.0 * PI, p1 in 0.0..2.0 * PI, psi in state(1),
    ) {
        let a = Complex64::from_polar((theta / 2.0).cos(), p0);
        let b = Complex64::from_polar((theta / 2.0).sin(), p1);
        let family = MeasurementFamily::projective(&[vec![a, b], vec![-b.conj(), a.conj()]]).unwrap();
        let direct = measure_general(&family, &psi).unwrap();
        let via = simulate_measurement_via_basis(&family, &psi).unwrap();
        for (d, v) in direct.iter().zip(&via) {
            prop_assert!((d.probability - v.probability).abs() < 1e-9);
            if let (Some(x), Some(y)) = (&d.post, &v.post) {
                prop_assert!(x.approx_eq_up_to_phase(y));
            }
        }
    }

    #[test]
    fn encoded_gates_act_linearly(g in prop::sample::select(vec!["H", "X", "Z", "I"]), psi in state(1)) {
        let u = gate(g).unwrap();
        let want = lineal_lab::oracle::apply_unitary(&u, &psi).unwrap();
        let input = vector_to_term(&psi, Encoding::Church);
        let nf = normalize(&Term::app(encode_gate_1q(&u).unwrap(), input), &EngineConfig::default());
        let (_, got) = term_to_amplitudes(nf.result(), Some(1)).unwrap();
        prop_assert!(want.max_deviation(&got) < 1e-9);

        let input = vector_to_term(&psi, Encoding::Constants);
        let cfg = EngineConfig::for_dialect(Dialect::LambdaS);
        let nf = normalize(&Term::app(lambda_s_gate(&u).unwrap(), input), &cfg);
        let (_, got) = term_to_amplitudes(nf.result(), Some(1)).unwrap();
        prop_assert!(want.max_deviation(&got) < 1e-9);
    }

    #[test]
    fn church_pairs_are_bilinear(a in state(1), b in state(1)) {
        let pair = encode_pair(vector_to_term(&a, Encoding::Church), vector_to_term(&b, Encoding::Church));
        let nf = normalize(&pair, &EngineConfig::default());
        let (_, got) = term_to_amplitudes(nf.result(), Some(2)).unwrap();
        prop_assert!(tensor(&a, &b).unwrap().max_deviation(&got) < 1e-9);
    }

    #[test]
    fn typed_reduction_preserves_types(c in circuit(1), measured in any::<bool>(), seed in any::<u64>()) {
        let mut t = lineal_lab::encodings::encode_circuit(&c, Encoding::Constants).unwrap();
        if measured {
            t = Term::app(Term::Meas(1), t);
        }
        let ctx = TypingContext::new();
        let ty = typecheck(&ctx, &t).unwrap();
        let cfg = EngineConfig::for_dialect(Dialect::LambdaS).with_strategy(Reduction::RandomSeeded(seed));
        let trace = normalize(&t, &cfg);
        prop_assert!(trace.is_normal());
        for u in trace.terms() {
            let uty = typecheck(&ctx, u).unwrap_or_else(|e| panic!("{}: {e}", pretty(u, Dialect::LambdaS)));
            prop_assert!(subtype(&uty, &ty), "{} : {} not below {}", pretty(u, Dialect::LambdaS), uty, ty);
        }
    }

    #[test]
    fn superposed_binders_are_used_at_most_once(uses in 0usize..4, wrap_pair in any::<bool>()) {
        let body = match uses {
            0 => Term::Ket0,
            1 => Term::var("x"),
            k if wrap_pair => (1..k).fold(Term::var("x"), |acc, _| Term::pair(acc, Term::var("x"))),
            k => Term::sum((0..k).map(|_| Term::var("x"))),
        };
        let t = Term::abs_typed("x", TypeExpr::s(TypeExpr::B), body.clone());
        prop_assert_eq!(occurrences(&body, "x"), uses);
        prop_assert_eq!(typecheck(&TypingContext::new(), &t).is_ok(), uses <= 1);
    }

    #[test]
    fn normal_forms_do_not_depend_on_the_strategy(c in circuit(2), s1 in any::<u64>(), s2 in any::<u64>()) {
        let t = lineal_lab::encodings::encode_circuit(&c, Encoding::Church).unwrap();
        let a = normalize(&t, &EngineConfig::default().with_strategy(Reduction::RandomSeeded(s1)));
        let b = normalize(&t, &EngineConfig::default().with_strategy(Reduction::RandomSeeded(s2)));
        prop_assert!(a.is_normal() && b.is_normal());
        prop_assert!(alpha_ac_eq(a.result(), b.result()));
    }

    #[test]
    fn star_trees_merge_leafwise(a in state(2), b in state(2)) {
        let to_scalars = |v: &StateVector| v.amps().iter().map(|c| Scalar::from(*c)).collect::<Vec<_>>();
        let merged = merge_parallel(&[star_tree(&to_scalars(&a)), star_tree(&to_scalars(&b))]);
        let (n, leaves) = star_amplitudes(&merged).unwrap();
        prop_assert_eq!(n, 2);
        for (i, l) in leaves.iter().enumerate() {
            prop_assert!((l.to_complex() - (a.amps()[i] + b.amps()[i])).norm() < 1e-9);
        }
    }
}
