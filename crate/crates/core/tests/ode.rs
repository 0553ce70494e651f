use garnier::complex::{c, r, C64, ONE, ZERO};
use garnier::garnier::{expand_solution, to_garnier_coords, Params, SolutionId};
use garnier::ode::*;
use garnier::Error;
use proptest::prelude::*;

fn params() -> Params {
    Params::from_fuchs(c(0.21, 0.13), c(0.37, -0.08), c(0.12, 0.27), c(0.13, 0.21), c(0.7, -0.4))
}

fn lid(stage: LimitStage, k: u8) -> LimitEquationId {
    LimitEquationId::new(stage, SolutionId::new(k).unwrap())
}

fn sample_points() -> Vec<C64> {
    (0..20)
        .map(|i| {
            let t = i as f64 * 0.31 + 0.2;
            c(0.4 * t.cos() + 0.35, 0.45 * t.sin() + 0.6)
        })
        .collect()
}

fn closer(got: [C64; 2], want: [C64; 2]) -> f64 {
    let direct = (got[0] - want[0]).norm().max((got[1] - want[1]).norm());
    let swapped = (got[0] - want[1]).norm().max((got[1] - want[0]).norm());
    direct.min(swapped)
}

#[test]
fn printed_general_solutions_satisfy_their_equations() {
    let p = params();
    let ids = [lid(LimitStage::First, 1), lid(LimitStage::First, 5), lid(LimitStage::Second, 5), lid(LimitStage::Third, 1)];
    for id in ids {
        let ode = limit_equation(id, &p).unwrap();
        for s in closed_form_solutions(id, &p).unwrap() {
            for x in sample_points() {
                let (f, df, d2f) = s.eval(x);
                let (res, mag) = ode.residual(x, f, df, d2f).unwrap();
                assert!(res.norm() < 1e-9 * mag.max(1.0), "{id} at {x}: {res}");
            }
        }
    }
}

#[test]
fn wronskian_obeys_abel() {
    let p = params();
    let id = lid(LimitStage::First, 1);
    let ode = limit_equation(id, &p).unwrap();
    let sols = closed_form_solutions(id, &p).unwrap();
    let w = |x: C64| {
        let (a, da, _) = sols[0].eval(x);
        let (b, db, _) = sols[1].eval(x);
        a * db - b * da
    };
    let h = 1e-6;
    for x in sample_points().into_iter().take(5) {
        let dw = (w(x + h) - w(x - h)) / (2.0 * h);
        let (pp, _) = ode.eval_pq(x).unwrap();
        assert!((dw / w(x) + pp).norm() < 1e-6, "{x}");
    }
}

#[test]
fn first_limit_scheme_and_sum_rule() {
    let p = params();
    let ode = limit_equation(lid(LimitStage::First, 1), &p).unwrap();
    let b0 = ode.constants["b0"];
    let table = [
        (Point::Finite(ZERO), [-p.nu, p.alpha0 + p.alpha2 + p.nu - 1.0]),
        (Point::Finite(ONE), [ZERO, p.alpha1]),
        (Point::Finite(b0), [ZERO, r(2.0)]),
        (Point::Infinity, [p.nu, p.nu + p.alpha_inf]),
    ];
    let mut total = ZERO;
    for (pt, want) in table {
        let got = local_exponents(&ode, pt).unwrap();
        assert!(closer(got, want) < 1e-10, "{pt:?}: {got:?} vs {want:?}");
        total += got[0] + got[1];
    }
    assert!((total - 2.0).norm() < 1e-12);
}

#[test]
fn apparent_points_have_exponents_zero_and_two() {
    let p = params();
    for (id, key) in [
        (lid(LimitStage::First, 1), "b0"),
        (lid(LimitStage::First, 5), "b0"),
        (lid(LimitStage::Second, 5), "xi_lambda2"),
    ] {
        let ode = limit_equation(id, &p).unwrap();
        let got = local_exponents(&ode, Point::Finite(ode.constants[key])).unwrap();
        assert!(closer(got, [ZERO, r(2.0)]) < 1e-10, "{id}: {got:?}");
    }
}

#[test]
fn gauss_limit_exponents() {
    let p = params();
    let ode = limit_equation(lid(LimitStage::Second, 1), &p).unwrap();
    let ConnectionParams::Gauss(g) = connection_params(SolutionId::new(1).unwrap(), &p) else { panic!() };
    assert!(closer(local_exponents(&ode, Point::Finite(ZERO)).unwrap(), [ZERO, ONE - g.gamma]) < 1e-12);
    assert!(closer(local_exponents(&ode, Point::Finite(ONE)).unwrap(), [ZERO, g.gamma - g.alpha - g.beta]) < 1e-12);
    assert!(closer(local_exponents(&ode, Point::Infinity).unwrap(), [g.alpha, g.beta]) < 1e-12);
    // 1 − γ is α0 for this solution
    assert!((ONE - g.gamma - p.alpha0).norm() < 1e-15);
}

#[test]
fn irregular_infinity_is_refused() {
    let ode = limit_equation(lid(LimitStage::Third, 1), &params()).unwrap();
    assert!(matches!(local_exponents(&ode, Point::Infinity), Err(Error::InvalidArgument(_))));
    let k = limit_equation(lid(LimitStage::Third, 6), &params()).unwrap();
    assert!(matches!(local_exponents(&k, Point::Infinity), Err(Error::InvalidArgument(_))));
}

#[test]
fn unsupported_limits_are_reported() {
    let p = params();
    assert!(matches!(limit_equation(lid(LimitStage::Third, 2), &p), Err(Error::UnsupportedLimit(_))));
    assert!(matches!(closed_form_solutions(lid(LimitStage::Second, 1), &p), Err(Error::UnsupportedLimit(_))));
    for id in LimitEquationId::implemented() {
        assert!(limit_equation(id, &p).is_ok(), "{id}");
    }
}

#[test]
fn evaluation_at_a_pole_fails() {
    let ode = limit_equation(lid(LimitStage::Second, 1), &params()).unwrap();
    assert!(matches!(ode.eval_pq(ONE), Err(Error::EvalAtSingularity(_))));
}

#[test]
fn colliding_poles_are_rejected() {
    let pf = RationalFn { poles: vec![PoleTerm::new(ZERO, 1, ONE), PoleTerm::new(c(1e-12, 0.0), 1, ONE)], constant: ZERO };
    let res = RationalODE::new("collide", "x", pf, RationalFn::default());
    assert!(matches!(res, Err(Error::CollidingSingularities(_))));
}

#[test]
fn full_equation_riemann_scheme_at_small_times() {
    let p = params();
    let e = expand_solution(&p, SolutionId::new(1).unwrap(), 8).unwrap();
    let (t1, t2) = (r(1e-3), r(1e-3));
    let g = to_garnier_coords(&e, t1, t2).unwrap();
    let ode = lg2_coefficients(&g, &p).unwrap();
    assert!((ode.p.coefficient(ZERO, 1) - (ONE - p.alpha0)).norm() < 1e-12);
    assert!((ode.p.coefficient(ONE, 2) - p.eta * t1).norm() < 1e-15);
    let table = [
        (Point::Finite(ZERO), [ZERO, p.alpha0]),
        (Point::Finite(t2), [ZERO, p.alpha2]),
        (Point::Finite(g.lambda1), [ZERO, r(2.0)]),
        (Point::Finite(g.lambda2), [ZERO, r(2.0)]),
        (Point::Infinity, [p.nu, p.nu + p.alpha_inf]),
    ];
    for (pt, want) in table {
        let got = local_exponents(&ode, pt).unwrap();
        assert!(closer(got, want) < 1e-5, "{pt:?}: {got:?} vs {want:?}");
    }
    assert!(matches!(local_exponents(&ode, Point::Finite(ONE)), Err(Error::InvalidArgument(_))));
}

#[test]
fn json_lists_poles() {
    let ode = limit_equation(lid(LimitStage::First, 1), &params()).unwrap();
    let v = ode.to_json();
    assert_eq!(v["label"], "First(1)");
    assert!(v["P"]["poles"].as_array().is_some_and(|a| a.len() == 3));
}

fn cx(range: f64) -> impl Strategy<Value = C64> {
    (-range..range, -range..range).prop_map(|(a, b)| c(a, b))
}

proptest! {
    #[test]
    fn partial_fractions_reconstruct(k in cx(2.0), a in cx(1.0), b in cx(1.0), x in cx(3.0), double in any::<bool>()) {
        prop_assume!((a - b).norm() > 0.1 && (x - a).norm() > 0.1 && (x - b).norm() > 0.1);
        let ka = if double { 2 } else { 1 };
        let terms = partial_fractions(k, &[(a, ka), (b, 1)]).unwrap();
        let f = RationalFn { poles: terms, constant: ZERO };
        let want = k / ((x - a).powi(ka as i32) * (x - b));
        prop_assert!((f.eval(x) - want).norm() < 1e-10 * want.norm().max(1.0));
    }

    #[test]
    fn gauss_limits_sum_to_one(a0 in cx(0.4), a1 in cx(0.4), a2 in cx(0.4), nu in cx(0.4)) {
        let p = Params::from_fuchs(a0 + 0.3, a1 + 0.3, a2 + 0.3, nu + 0.2, c(0.5, 0.5));
        let ode = limit_equation(lid(LimitStage::Second, 2), &p).unwrap();
        let sum: C64 = [Point::Finite(ZERO), Point::Finite(ONE), Point::Infinity]
            .into_iter()
            .map(|pt| local_exponents(&ode, pt).map(|e| e[0] + e[1]).unwrap())
            .sum();
        prop_assert!((sum - 1.0).norm() < 1e-12);
    }
}
