use garnier::complex::{c, exp_2pii, C64, ONE, ZERO};
use garnier::garnier::{Params, SolutionId};
use garnier::matrix::Matrix2;
use garnier::monodromy::*;
use garnier::ode::*;
use garnier::pipeline::{limit_setup, numeric_loops};
use garnier::Error;
use proptest::prelude::*;

fn params() -> Params {
    Params::from_fuchs(c(0.21, 0.13), c(0.37, -0.08), c(0.12, 0.27), c(0.13, 0.21), c(0.7, -0.4))
}

fn sol(k: u8) -> SolutionId {
    SolutionId::new(k).unwrap()
}

#[test]
fn logarithmic_point_gives_unipotent_monodromy() {
    let pf = RationalFn { poles: vec![PoleTerm::new(ZERO, 1, ONE)], constant: ZERO };
    let ode = RationalODE::new("log", "x", pf, RationalFn::default()).unwrap();
    let m = numeric_monodromy(&ode, &LoopPath::around(ZERO, 0.5)).unwrap();
    assert!((m.trace() - 2.0).norm() < 1e-9, "{m:?}");
    assert!((m.det() - 1.0).norm() < 1e-9);
    assert!(m.dist_identity() > 1.0);
}

#[test]
fn gauss_limit_loops_match_closed_forms() {
    let p = params();
    let id = LimitEquationId::new(LimitStage::Second, sol(1));
    let (ode, closed, pts) = limit_setup(id, &p).unwrap();
    let num = numeric_loops(&ode, &pts, Some(c(0.5, 0.6))).unwrap();
    let labeled: Vec<(&str, Matrix2)> = closed.iter().map(|c| c.0).zip(num.iter().copied()).collect();
    let rep = compare_monodromy(&labeled, &closed);
    assert!(rep.max_deviation < 1e-6, "{rep:?}");
    assert!((num[2] * num[1] * num[0]).dist_identity() < 1e-7);
    assert!((closed[2].1 * closed[1].1 * closed[0].1).dist_identity() < 1e-10);
}

#[test]
fn every_limit_equation_matches_its_closed_monodromy() {
    let p = params();
    for id in LimitEquationId::implemented() {
        let (ode, closed, pts) = limit_setup(id, &p).unwrap();
        let num = numeric_loops(&ode, &pts, None).unwrap();
        for ((name, want), got) in closed.iter().zip(&num) {
            let rep = compare_monodromy(&[(name, *got)], &[(name, *want)]);
            assert!(rep.max_deviation < 1e-6, "{id} {name}: {rep:?}");
        }
    }
}

#[test]
fn apparent_points_have_trivial_monodromy() {
    let p = params();
    for (stage, k, label) in [(LimitStage::First, 1, "Mb0"), (LimitStage::First, 5, "Mb0"), (LimitStage::Second, 5, "Mxi")] {
        let (ode, closed, pts) = limit_setup(LimitEquationId::new(stage, sol(k)), &p).unwrap();
        let i = closed.iter().position(|c| c.0 == label).unwrap();
        let m = numeric_loops(&ode, &pts[i..=i], None).unwrap()[0];
        assert!(m.dist_identity() < 1e-6, "{stage:?}({k}): {m:?}");
    }
}

#[test]
fn comparison_is_basis_independent() {
    let a = Matrix2::new(c(0.3, 0.1), c(1.2, 0.0), c(-0.4, 0.2), c(0.9, -0.3));
    let b = Matrix2::new(c(1.1, 0.0), c(0.2, 0.5), c(0.0, 0.7), c(0.4, 0.1));
    let g = Matrix2::new(c(1.0, 0.2), c(0.3, 0.0), c(-0.5, 0.1), c(0.8, 0.4));
    let gi = g.inverse().unwrap();
    let set = [("A", a), ("B", b)];
    assert_eq!(compare_monodromy(&set, &set).max_deviation, 0.0);
    let conj = [("A", g * a * gi), ("B", g * b * gi)];
    assert!(compare_monodromy(&set, &conj).max_deviation < 1e-13);
    let bent = [("A", a), ("B", b.scale(c(1.0, 1e-3)))];
    assert!(compare_monodromy(&set, &bent).max_deviation > 1e-4);
}

#[test]
fn closed_tuples_satisfy_group_identities() {
    let p = params();
    for id in SolutionId::all() {
        let t = closed_form_monodromy(&p, id).unwrap();
        let rep = group_identities(&t, &p);
        assert!(rep.max_deviation() < 1e-10, "{id}: {rep:?}");
        if id.index() <= 4 {
            assert_eq!(rep.stokes_deviation, Some(0.0), "{id}");
        }
    }
}

#[test]
fn non_commuting_pair_in_solution_1() {
    let t = closed_form_monodromy(&params(), sol(1)).unwrap();
    assert!(t.m0.commutator(&t.mt2).norm() > 1e-3);
}

#[test]
fn solution_3_has_diagonal_mt2() {
    let p = params();
    let t = closed_form_monodromy(&p, sol(3)).unwrap();
    assert_eq!(t.mt2.get(0, 1), ZERO);
    assert_eq!(t.mt2.get(1, 0), ZERO);
    let d = [t.mt2.get(0, 0), t.mt2.get(1, 1)];
    assert!(d.iter().any(|v| (*v - ONE).norm() < 1e-14));
    assert!(d.iter().any(|v| (*v - exp_2pii(p.alpha2)).norm() < 1e-14));
}

#[test]
fn printed_tuples_4_and_8_break_the_cyclic_relation() {
    let p = params();
    for k in [4, 8] {
        let t = closed_form_monodromy_variant(&p, sol(k), TupleVariant::AsPrinted).unwrap();
        assert!(t.cyclic_residual() > 1e-2, "({k}) {}", t.cyclic_residual());
    }
}

#[test]
fn loops_too_close_to_a_singularity_are_refused() {
    let ode = limit_equation(LimitEquationId::new(LimitStage::Second, sol(1)), &params()).unwrap();
    let path = LoopPath::around_from(c(0.5, 0.0), ZERO, 0.95);
    assert!(matches!(numeric_monodromy(&ode, &path), Err(Error::PathTooClose { .. })));
}

#[test]
fn infinity_loop_reverses_orientation() {
    let p = params();
    let (ode, closed, pts) = limit_setup(LimitEquationId::new(LimitStage::Second, sol(2)), &p).unwrap();
    let base = Some(c(0.5, 0.6));
    let num = numeric_loops(&ode, &pts, base).unwrap();
    assert!((num[2] * num[1] * num[0]).dist_identity() < 1e-7);
    assert!(rel(num[2].trace(), closed[2].1.trace()) < 1e-7);
}

fn rel(a: C64, b: C64) -> f64 {
    (a - b).norm() / b.norm().max(1.0)
}

fn cx(range: f64) -> impl Strategy<Value = C64> {
    (-range..range, -range..range).prop_map(|(a, b)| c(a, b))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn numeric_determinant_follows_residue(a in cx(0.4), b in cx(0.4), g in cx(0.4)) {
        let gp = garnier::specfun::GaussParams::new(a + 0.3, b + 0.6, g + 0.45);
        prop_assume!(gp.check_generic(0.05).is_ok());
        let pf = RationalFn {
            poles: vec![PoleTerm::new(ZERO, 1, gp.gamma), PoleTerm::new(ONE, 1, gp.alpha + gp.beta + 1.0 - gp.gamma)],
            constant: ZERO,
        };
        let q = RationalFn { poles: partial_fractions(gp.alpha * gp.beta, &[(ZERO, 1), (ONE, 1)]).unwrap(), constant: ZERO };
        let ode = RationalODE::new("gauss", "x", pf, q).unwrap();
        let m = numeric_monodromy(&ode, &LoopPath::around(ZERO, 0.4)).unwrap();
        prop_assert!((m.det() - exp_2pii(-gp.gamma)).norm() < 1e-8);
        let ev = m.eigenvalues();
        let want = [ONE, exp_2pii(-gp.gamma)];
        let dev = ((ev[0] - want[0]).norm().max((ev[1] - want[1]).norm()))
            .min((ev[0] - want[1]).norm().max((ev[1] - want[0]).norm()));
        prop_assert!(dev < 1e-7);
    }
}
