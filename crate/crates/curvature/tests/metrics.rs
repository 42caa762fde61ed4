use curvature::examples::*;
use curvature::*;
use exprcore::{eval_at, parse, Expr, ZeroTest};

fn zt() -> ZeroTest {
    ZeroTest::default()
}

fn strict() -> ZeroTest {
    ZeroTest::new(30, 1e-8)
}

#[test]
fn flat_has_no_curvature() {
    let m = flat();
    let p = curvature(&m);
    assert!(p.riemann.iter().flatten().flatten().flatten().all(Expr::is_zero));
}

#[test]
fn sparling_tod_is_ricci_flat_and_heavenly() {
    let m = sparling_tod();
    let p = curvature(&m);
    assert!(is_ricci_flat(&m, &p, &zt()).unwrap());
    let h = heavenly_metric(&theta("1/(x*w + y*z)"), theta_context()).unwrap();
    for i in 0..4 {
        for j in 0..4 {
            assert!(zt().is_zero(&(h.g(i, j) - m.g(i, j)), m.context()).unwrap());
        }
    }
}

#[test]
fn boris_is_einstein_with_negative_scalar() {
    let m = boris_metric();
    let p = curvature(&m);
    assert!(zt().is_zero(&(&p.scalar + Expr::int(24)), m.context()).unwrap());
    let lam = einstein_constant(&m, &p, &zt()).unwrap().unwrap();
    assert!((lam + 6.0).abs() < 1e-9, "{lam}");
}

#[test]
fn boris_scalar_is_exactly_constant() {
    let m = boris_metric();
    let p = curvature(&m);
    let names: Vec<&str> = m.context().names().collect();
    let r = exprcore::RatFunc::from_expr(&p.scalar, &names).unwrap();
    assert_eq!(r.constant_value(), Some(exprcore::BigRational::from_integer((-24).into())));
}

#[test]
fn identities_hold_on_fixtures() {
    for m in [submax_metric(), sparling_tod(), boris_metric(), ode_sym_4_metric(), perturbed_flat(), gh_example()] {
        let p = curvature(&m);
        assert!(strict().all_zero(&p.identity_residuals(), m.context()).unwrap());
        assert!(strict().all_zero(&p.weyl_traces(&m), m.context()).unwrap());
    }
}

#[test]
fn anti_self_duality() {
    for (name, m) in [
        ("submax", submax_metric()),
        ("boris", boris_metric()),
        ("sparling_tod", sparling_tod()),
        ("ode_sym_4", ode_sym_4_metric()),
        ("gh", gh_example()),
        ("flat", flat()),
    ] {
        let p = curvature(&m);
        let sd = sd_weyl(&m, &p, &zt()).unwrap();
        assert!(sd.asd, "{name}");
    }
    let m = perturbed_flat();
    let sd = sd_weyl(&m, &curvature(&m), &zt()).unwrap();
    assert!(!sd.asd);
}

#[test]
fn heavenly_fixtures_share_one_orientation() {
    for m in [submax_metric(), sparling_tod(), boris_metric()] {
        let sd = sd_weyl(&m, &curvature(&m), &zt()).unwrap();
        assert_eq!(sd.orientation, Some(Orientation::Plus));
    }
}

#[test]
fn conformal_rescaling_keeps_self_duality() {
    for c in ["3", "7/2"] {
        let m = perturbed_flat();
        let s = m.scaled(&parse(c, m.context()).unwrap()).unwrap();
        let a = sd_weyl(&m, &curvature(&m), &zt()).unwrap();
        let b = sd_weyl(&s, &curvature(&s), &zt()).unwrap();
        assert_eq!(a, b);
    }
    let m = sparling_tod();
    let s = m.scaled(&theta("(x*w + y*z)^2")).unwrap();
    let sd = sd_weyl(&s, &curvature(&s), &zt()).unwrap();
    assert_eq!(sd, sd_weyl(&m, &curvature(&m), &zt()).unwrap());
}

#[test]
fn heavenly_builder() {
    let m = submax_metric();
    assert_eq!(*m.g(0, 0), Expr::int(-3) * Expr::var("y").powi(2));
    assert_eq!(*m.g(0, 2), Expr::rat(1, 2));
    assert!(m.g(1, 1).is_zero());
}

#[test]
fn weyl_spinor_components() {
    let psi = weyl_spinor(&theta("y^4/4"));
    assert_eq!(psi[0], Expr::int(6));
    assert!(psi[1..].iter().all(Expr::is_zero));
    assert!(weyl_spinor(&theta("x^2 + 3*x*y - w*z")).iter().all(Expr::is_zero));
    let psi = weyl_spinor(&theta("1/(x*w + y*z)"));
    let v = eval_at(&psi[0], &[("w", 1.0), ("z", 1.0), ("x", 1.0), ("y", 1.0)]).unwrap();
    assert!((v - 0.75).abs() < 1e-12);
}

#[test]
fn gibbons_hawking() {
    let c = gh_context();
    let d = gh_potential("y*t^2");
    assert!(gh_wave_residual(&d).is_zero());
    assert!(monopole_residual(&d).iter().all(Expr::is_zero));
    assert_eq!(gh_wave_residual(&gh_potential("w*t")), Expr::one());
    assert!(gh_wave_residual(&gh_potential("t^3")).is_zero());
    let d = gh_potential("w*t^3 - 3*y^2*t^2");
    let r = monopole_residual(&d);
    assert!(zt().all_zero(&r, &c).unwrap() == zt().is_zero(&gh_wave_residual(&d), &c).unwrap());
    let bad = gh_potential("w*t^3 + y^2*t^2");
    assert!(!zt().is_zero(&monopole_residual(&bad)[0], &c).unwrap());
    assert!(monopole_residual(&bad)[1..].iter().all(|e| zt().is_zero(e, &c).unwrap()));
}

#[test]
fn gh_example_is_ricci_flat() {
    let m = gh_example();
    assert!(is_ricci_flat(&m, &curvature(&m), &zt()).unwrap());
}

#[test]
fn lax_pairs() {
    assert!(lax_residuals(&Expr::zero()).iter().all(Expr::is_zero));
    assert!(lax_frobenius(&theta("y^4/4"), &zt()).unwrap());
    assert!(lax_frobenius(&theta("1/(x*w + y*z)"), &zt()).unwrap());
    assert!(!lax_frobenius(&theta("x^2*y^2"), &zt()).unwrap());
}

#[test]
fn heavenly_potentials_give_ricci_flat_metrics() {
    for t in ["y^4/4", "1/(x*w + y*z)", "y^5 + w*z", "w*y^4"] {
        let th = theta(t);
        let m = heavenly_metric(&th, theta_context()).unwrap();
        assert!(is_ricci_flat(&m, &curvature(&m), &zt()).unwrap(), "{t}");
        assert!(lax_frobenius(&th, &zt()).unwrap(), "{t}");
    }
}

#[test]
fn degenerate_and_malformed_metrics() {
    let ctx = theta_context();
    let m = Metric::parse(ctx.clone(), &[("w", "x", "1/2")]).unwrap();
    assert!(matches!(m.check_nondegenerate(&zt()), Err(CurvatureError::Degenerate)));
    let g = vec![vec![Expr::one(), Expr::zero()], vec![Expr::one(), Expr::one()]];
    let r = Metric::new(exprcore::Context::new(&["a", "b"]), g);
    assert!(matches!(r, Err(CurvatureError::Asymmetric(0, 1))));
    assert!(gh_metric(&gh_potential("y*t + w"), gh_context()).is_err());
}
