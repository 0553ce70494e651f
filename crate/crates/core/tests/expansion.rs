use garnier::complex::{c, r, rel_diff, C64, ONE, ZERO};
use garnier::garnier::coords::time_derivatives;
use garnier::garnier::*;
use garnier::pipeline::sample_params;
use garnier::Error;
use proptest::prelude::*;

fn params() -> Params {
    Params::from_fuchs(c(0.21, 0.13), c(0.37, -0.08), c(0.12, 0.27), c(0.13, 0.21), c(0.7, -0.4))
}

fn sol(k: u8) -> SolutionId {
    SolutionId::new(k).unwrap()
}

/// Direct transcription of both Hamiltonians for a single point.
fn hamiltonians_by_hand(p: &Params, x: &PhasePoint) -> (C64, C64) {
    let (q1, q2, p1, p2, t1, s2) = (x.q1, x.q2, x.p1, x.p2, x.t1, x.s2);
    let (a0, a1, a2, eta) = (p.alpha0, p.alpha1, p.alpha2, p.eta);
    let s1 = ONE / t1;
    let kap = p.nu * (p.nu + p.alpha_inf);
    let mixed = (a0 + a1 - 1.0) * q1 * q2 + a2 * q1 * (q2 - s2) - eta * (s2 - 1.0) * q2;
    let n1 = q1 * q1 * (q1 - s1) * p1 * p1 + 2.0 * q1 * q1 * q2 * p1 * p2 + q1 * q2 * (q2 - s2) * p2 * p2
        - ((a0 + a2 - 1.0) * q1 * q1 + a1 * q1 * (q1 - s1) + eta * (q1 - s1) + eta * s1 * q2) * p1
        - mixed * p2
        + kap * q1;
    let w = s2 * (s2 - 1.0) / s1;
    let n2 = q1 * q1 * q2 * p1 * p1
        + 2.0 * q1 * q2 * (q2 - s2) * p1 * p2
        + (q2 * (q2 - 1.0) * (q2 - s2) + w * q1 * q2) * p2 * p2
        - mixed * p1
        - ((a0 - 1.0) * q2 * (q2 - 1.0) + a1 * q2 * (q2 - s2) + a2 * (q2 - 1.0) * (q2 - s2) + w * (a2 * q1 + eta * q2)) * p2
        + kap * q2;
    (n1 / (s1 * s1), n2 / (s2 * (s2 - 1.0)))
}

fn point() -> PhasePoint {
    PhasePoint::new([c(0.7, -0.2), c(1.3, 0.4), c(-0.4, 0.9), c(0.25, 0.6)], c(0.3, 0.1), c(0.45, -0.2))
}

#[test]
fn hamiltonians_match_direct_transcription() {
    let p = params();
    let x = point();
    let (h1, h2) = hamiltonians_eval(&p, &x).unwrap();
    let (o1, o2) = hamiltonians_by_hand(&p, &x);
    assert!(rel_diff(h1, o1) < 1e-13, "{h1} vs {o1}");
    assert!(rel_diff(h2, o2) < 1e-13, "{h2} vs {o2}");
}

#[test]
fn hamiltonians_vanish_at_origin_of_phase_space() {
    let x = PhasePoint::new([ZERO; 4], c(0.1, 0.0), c(0.3, 0.1));
    let (h1, h2) = hamiltonians_eval(&params(), &x).unwrap();
    assert_eq!((h1, h2), (ZERO, ZERO));
}

#[test]
fn hamiltonians_reject_singular_times() {
    let p = params();
    for (t1, s2) in [(ZERO, r(0.3)), (r(0.1), ZERO), (r(0.1), ONE)] {
        let x = PhasePoint::new([ONE; 4], t1, s2);
        assert!(matches!(hamiltonians_eval(&p, &x), Err(Error::SingularTime(_))), "{t1} {s2}");
    }
}

#[test]
fn gradients_match_finite_differences() {
    let p = params();
    let x = point();
    let (g1, g2) = hamiltonian_gradients(&p, &x).unwrap();
    let (f1, f2) = hamiltonian_gradients_fd(&p, &x, 1e-6).unwrap();
    for i in 0..4 {
        assert!(rel_diff(g1[i], f1[i]) < 1e-7, "H1 component {i}: {} vs {}", g1[i], f1[i]);
        assert!(rel_diff(g2[i], f2[i]) < 1e-7, "H2 component {i}: {} vs {}", g2[i], f2[i]);
    }
}

#[test]
fn non_generic_tuples_are_rejected() {
    let bad_alpha1 = Params::from_fuchs(c(0.31, 0.12), r(1.0), c(0.22, 0.35), c(0.18, 0.07), ONE);
    let bad_sum = Params::from_fuchs(c(1.3, 0.2), c(0.27, -0.18), c(0.7, -0.2), c(0.18, 0.07), ONE);
    for p in [bad_alpha1, bad_sum] {
        assert!(matches!(expand_solution(&p, sol(1), 4), Err(Error::NonGenericParams(_))));
    }
}

fn assert_exact(e: &SolutionExpansion, want: &[(Coord, usize, usize, f64)]) {
    for &(cd, j, k, v) in want {
        let got = e.coord(cd).base.get(j, k);
        assert!(rel_diff(got, r(v)) < 1e-12 || (v == 0.0 && got.norm() < 1e-12), "{cd:?} ({j},{k}): {got} vs {v}");
    }
}

/// α0 = 1/3, α1 = 2/7, α2 = 1/5, ν = 3/11, η = 3/2; coefficients from an
/// exact rational solve of the recursion through total degree 2.
fn rational_params() -> Params {
    Params::from_fuchs(r(1.0 / 3.0), r(2.0 / 7.0), r(0.2), r(3.0 / 11.0), r(1.5))
}

#[test]
fn exact_rational_coefficients_solution_1() {
    let e = expand_with(&rational_params(), sol(1), &ExpansionOptions::order(2)).unwrap();
    use Coord::*;
    assert_exact(
        &e,
        &[
            (Q1, 0, 0, -3465.0 / 842.0),
            (Q1, 0, 1, 2720025.0 / 1423822.0),
            (Q1, 1, 0, 0.0),
            (Q1, 0, 2, 23542039214100.0 / 18699270035033.0),
            (Q1, 1, 1, 0.0),
            (Q2, 0, 0, 91.0 / 421.0),
            (Q2, 0, 1, 259050.0 / 711911.0),
            (Q2, 0, 2, 31389385618800.0 / 130894890245231.0),
            (Q2, 1, 1, 2720025.0 / 1423822.0),
            (P1, 0, 0, 0.0),
            (P1, 1, 1, -3789.0 / 6853.0),
            (P2, 0, 0, -1263.0 / 1001.0),
            (P2, 0, 1, -66826593.0 / 154034881.0),
            (P2, 0, 2, -15483518462796561.0 / 19377860209434727.0),
            (P2, 1, 1, 1250370.0 / 2000453.0),
        ],
    );
}

#[test]
fn exact_rational_coefficients_solution_5() {
    let e = expand_with(&rational_params(), sol(5), &ExpansionOptions::order(2)).unwrap();
    use Coord::*;
    assert_exact(
        &e,
        &[
            (Q1, 0, 0, -195.0 / 421.0),
            (Q1, 1, 0, -65219.0 / 101040.0),
            (Q1, 1, 1, 65219.0 / 269440.0),
            (Q1, 2, 0, 69044310159671.0 / 37115346528000.0),
            (Q2, 0, 1, 231.0 / 421.0),
            (Q2, 1, 1, 65219.0 / 269440.0),
            (P1, 0, 0, 421.0 / 715.0),
            (P1, 1, 0, 35862043.0 / 24336000.0),
            (P1, 1, 1, -3857623.0 / 4056000.0),
            (P1, 2, 0, 1216955942472193.0 / 317846071296000.0),
            (P2, 1, 0, -8841.0 / 8320.0),
            (P2, 2, 0, -25485045971.0 / 24400896000.0),
        ],
    );
}

#[test]
fn displayed_coefficients_over_sampled_tuples() {
    for seed in 100..110 {
        let p = sample_params(seed).unwrap();
        for id in SolutionId::all() {
            let e = expand_solution(&p, id, 6).unwrap();
            for d in displayed_coefficients(id, &p) {
                let got = e.coord(d.coord).base.get(d.j, d.k);
                let ok = rel_diff(got, d.value) < 1e-12 || (d.value.norm() < 1e-14 && got.norm() < 1e-13);
                assert!(ok, "seed {seed} {id} {:?}({},{}): {got} vs {}", d.coord, d.j, d.k, d.value);
            }
            let res = residual_norm(&e);
            assert!(res < 1e-9, "seed {seed} {id}: residual {res:e}");
        }
    }
}

#[test]
fn strategies_agree() {
    let p = params();
    for id in SolutionId::all() {
        let a = expand_with(&p, id, &ExpansionOptions::order(6)).unwrap();
        let opts = ExpansionOptions { strategy: SolveStrategy::SquareBlock, ..ExpansionOptions::order(6) };
        let b = expand_with(&p, id, &opts).unwrap();
        for (x, y) in a.bases().iter().zip(b.bases().iter()) {
            assert!(x.approx_eq(y, 1e-12 * x.max_abs().max(1.0)), "{id}");
        }
    }
}

#[test]
fn perturbed_seed_is_refused() {
    let p = params();
    let mut seed = sol(3).seed(&p);
    seed[1] += 1e-3;
    let opts = ExpansionOptions { seed: Some(seed), ..ExpansionOptions::order(4) };
    assert!(matches!(expand_with(&p, sol(3), &opts), Err(Error::InvalidArgument(_))));
}

#[test]
fn truncated_series_fail_at_the_cut() {
    let p = params();
    for id in SolutionId::all() {
        let e = expand_solution(&p, id, 6).unwrap();
        let cut = e.zero_above(0);
        let rep = residual(&cut);
        assert!(rep.relative > 1e-6, "{id}: {rep:?}");
        assert!(rep.first_failure.is_some_and(|m| m <= 1), "{id}: {rep:?}");
    }
}

#[test]
fn single_coefficient_perturbation_is_detected() {
    let p = params();
    for id in SolutionId::all() {
        let mut e = expand_solution(&p, id, 6).unwrap();
        let b = &mut e.coord_mut(Coord::Q2).base;
        let v = b.get(1, 2);
        b.set(1, 2, v + 1e-3);
        let res = residual_norm(&e);
        assert!(res >= 1e-4, "{id}: {res:e}");
    }
}

#[test]
fn order_zero_is_invalid() {
    assert!(matches!(expand_solution(&params(), sol(1), 0), Err(Error::InvalidArgument(_))));
}

#[test]
fn garnier_coordinates_satisfy_product_relations() {
    let p = params();
    let (t1, t2) = (c(2e-3, 1e-3), c(3e-3, -1e-3));
    for id in SolutionId::all() {
        let e = expand_solution(&p, id, 6).unwrap();
        let v = e.eval(t1, t2 / (t2 - 1.0)).unwrap();
        let g = to_garnier_coords(&e, t1, t2).unwrap();
        let (l1, l2) = (g.lambda1, g.lambda2);
        let r1 = (l1 - 1.0) * (l2 - 1.0) + t1 * (t2 - 1.0) * v[0];
        let r2 = (l1 - t2) * (l2 - t2) - (t2 - 1.0) * (t2 - 1.0) * v[1];
        let scale = 1.0 + (t1 * v[0]).norm() + v[1].norm();
        assert!(r1.norm() < 1e-10 * scale && r2.norm() < 1e-10 * scale, "{id}: {r1} {r2}");
    }
}

#[test]
fn garnier_coordinates_respect_trust_region() {
    let e = expand_solution(&params(), sol(1), 4).unwrap();
    assert!(matches!(to_garnier_coords(&e, r(0.5), r(1e-3)), Err(Error::OutOfRegion(_))));
    assert!(matches!(to_garnier_coords(&e, ZERO, r(1e-3)), Err(Error::SingularTime(_))));
}

#[test]
fn time_derivatives_match_finite_differences() {
    let e = expand_solution(&params(), sol(2), 6).unwrap();
    let (t1, t2) = (c(2e-3, 1e-3), c(3e-3, -1e-3));
    let d = time_derivatives(&e, t1, t2).unwrap();
    let at = |t1: C64, t2: C64| e.eval(t1, t2 / (t2 - 1.0)).unwrap();
    let h = 1e-7;
    for i in 0..4 {
        let dt1 = (at(t1 + h, t2)[i] - at(t1 - h, t2)[i]) / (2.0 * h);
        let dt2 = (at(t1, t2 + h)[i] - at(t1, t2 - h)[i]) / (2.0 * h);
        assert!(rel_diff(d[i].0, dt1) < 1e-5, "d/dt1 [{i}]: {} vs {dt1}", d[i].0);
        assert!(rel_diff(d[i].1, dt2) < 1e-5, "d/dt2 [{i}]: {} vs {dt2}", d[i].1);
    }
}

#[test]
fn convergence_requires_order_five() {
    let e = expand_solution(&params(), sol(1), 4).unwrap();
    assert!(matches!(convergence_diagnostic(&e), Err(Error::InvalidArgument(_))));
    let e = expand_solution(&params(), sol(1), 8).unwrap();
    let d = convergence_diagnostic(&e).unwrap();
    assert!(d.rho_estimate.is_finite() && d.rho_estimate > 0.0);
}

#[test]
fn json_layout() {
    let e = expand_solution(&params(), sol(4), 3).unwrap();
    let v = e.to_json(residual_norm(&e));
    for key in ["solution", "order", "params", "q1", "q2", "p1", "p2", "residual"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["solution"], 4);
    assert_eq!(v["order"], 3);
    assert!(v["params"]["alphaInf"]["re"].is_number());
    assert!(v["q1"]["coeffs"].is_array());
}

fn small_cx() -> impl Strategy<Value = C64> {
    (-0.45f64..0.45, -0.45f64..0.45).prop_map(|(a, b)| c(0.3 + a, 0.1 + b))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn expansions_solve_the_system(a0 in small_cx(), a1 in small_cx(), a2 in small_cx(), nu in small_cx(), k in 1u8..=8) {
        let p = Params::from_fuchs(a0, a1, a2, nu, c(0.6, 0.3));
        prop_assume!(p.check_generic().ok);
        let e = expand_solution(&p, sol(k), 5).unwrap();
        prop_assert!(residual_norm(&e) < 1e-9);
        prop_assert!(p.fuchs_residual() < 1e-14);
    }

    #[test]
    fn expansion_is_deterministic(seed in 0u64..1000) {
        let p = sample_params(seed).unwrap();
        let a = expand_solution(&p, sol(6), 4).unwrap();
        let b = expand_solution(&p, sol(6), 4).unwrap();
        prop_assert_eq!(a.bases(), b.bases());
    }
}
