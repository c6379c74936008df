use minimorph::fibergeo::{project_to_fiber, FiberProblem, LevelSet};
use minimorph::fields::{conformality, tension, MetricSignature, ScalarField};
use minimorph::morphisms::lookup;
use minimorph::polyexact::{
    dualize, poly_conformality, poly_tension, ratfn_conf_num, ratfn_tension_num, GaussRat,
    MultiPoly, RationalFn,
};
use minimorph::Error;
use num_complex::Complex64;
use proptest::prelude::*;

fn term(n: usize) -> impl Strategy<Value = (Vec<u32>, GaussRat)> {
    (proptest::collection::vec(0u32..=2, n), -4i64..=4, -4i64..=4)
        .prop_map(|(e, re, im)| (e, GaussRat::from_ints(re, im)))
}

fn poly(n: usize) -> impl Strategy<Value = MultiPoly> {
    proptest::collection::vec(term(n), 1..5).prop_map(move |ts| MultiPoly::from_terms(n, ts))
}

fn poly_pair() -> impl Strategy<Value = (MultiPoly, MultiPoly)> {
    (2usize..=4).prop_flat_map(|n| (poly(n), poly(n)))
}

fn sigs(n: usize) -> [MetricSignature; 2] {
    [
        MetricSignature::euclidean(n),
        MetricSignature::lorentzian(n),
    ]
}

fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
    (a - b).norm() <= tol * (1.0 + a.norm().max(b.norm()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn dualize_has_order_four(p in (2usize..=5).prop_flat_map(poly)) {
        let d4 = dualize(&dualize(&dualize(&dualize(&p))));
        prop_assert_eq!(d4, p);
    }

    #[test]
    fn operators_commute_with_dualization((p, q) in poly_pair()) {
        let n = p.n_vars();
        let [euc, lor] = sigs(n);
        prop_assert_eq!(
            poly_tension(&dualize(&p), &lor).unwrap(),
            dualize(&poly_tension(&p, &euc).unwrap())
        );
        prop_assert_eq!(
            poly_conformality(&dualize(&p), &dualize(&q), &lor).unwrap(),
            dualize(&poly_conformality(&p, &q, &euc).unwrap())
        );
    }

    #[test]
    fn conformality_is_symmetric_and_leibniz_holds((p, q) in poly_pair()) {
        for sig in sigs(p.n_vars()) {
            let kpq = poly_conformality(&p, &q, &sig).unwrap();
            prop_assert_eq!(&kpq, &poly_conformality(&q, &p, &sig).unwrap());
            // tau(pq) = p tau(q) + q tau(p) + 2 kappa(p, q)
            let lhs = poly_tension(&(&p * &q), &sig).unwrap();
            let rhs = &(&(&p * &poly_tension(&q, &sig).unwrap())
                + &(&q * &poly_tension(&p, &sig).unwrap()))
                + &kpq.scale(&GaussRat::real(2));
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn quotient_rule_numerators_match_jets(
        (p, q) in poly_pair(),
        x in proptest::collection::vec(-1.0f64..1.0, 4),
        lorentzian in any::<bool>(),
    ) {
        let n = p.n_vars();
        let x = &x[..n];
        let qx = q.eval_f64(x);
        prop_assume!(qx.norm() > 0.1);
        let sig = MetricSignature::new(n, lorentzian).unwrap();
        let r = RationalFn::new(p.clone(), q.clone()).unwrap();
        let f = ScalarField::rational("r", &r);
        let t = tension(&f, x, &sig).unwrap();
        let k = conformality(&f, &f, x, &sig).unwrap();
        let tn = ratfn_tension_num(&r, &sig).unwrap().eval_f64(x) / qx.powi(3);
        let kn = ratfn_conf_num(&r, &sig).unwrap().eval_f64(x) / qx.powi(4);
        prop_assert!(close(t, tn, 1e-9), "{t} vs {tn}");
        prop_assert!(close(k, kn, 1e-9), "{k} vs {kn}");
    }

    #[test]
    fn gauss_rational_display_round_trips(
        a in -50i64..50, b in 1i64..20, c in -50i64..50, d in 1i64..20,
    ) {
        let g = GaussRat::from_fracs(a, b, c, d);
        prop_assert_eq!(g.to_string().parse::<GaussRat>().unwrap(), g);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn projection_lands_on_the_fiber_or_reports_why(
        x in proptest::collection::vec(-1.0f64..1.0, 5),
        alpha_im in 0.5f64..10.0,
    ) {
        let r = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        prop_assume!(r > 0.1);
        let x: Vec<f64> = x.iter().map(|v| v / r).collect();
        let p = FiberProblem::new(lookup("s4-quadric").unwrap(), Complex64::new(0.0, alpha_im)).unwrap();
        prop_assume!(p.admissible(&x));
        match project_to_fiber(&p, &x) {
            Ok(s) => {
                let res = p.residual(&s.point).unwrap();
                prop_assert!(res.iter().all(|v| v.abs() <= 1e-11), "{res:?}");
                let sig = p.signature();
                for (a, b) in [(0, 0), (1, 1), (0, 1)] {
                    let want = if a == b { 1.0 } else { 0.0 };
                    prop_assert!((sig.inner(&s.tangent[a], &s.tangent[b]) - want).abs() < 1e-10);
                    prop_assert!((sig.inner(&s.normal[a], &s.normal[b]) - want).abs() < 1e-10);
                }
            }
            Err(e) => prop_assert!(
                matches!(e, Error::NoConvergence { .. } | Error::ConvergedToCritical(_) | Error::DomainViolation { .. }),
                "{e}"
            ),
        }
    }
}
