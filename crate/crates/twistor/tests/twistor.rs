use curvature::examples as metrics;
use curvature::Metric;
use exprcore::{differentiate, parse, Context, Expr, Tape, ZeroTest};
use pathsys::examples as systems;
use pathsys::{system_from_theta, theta_context, SecondOrderSystem};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use twistor::examples as families;
use twistor::{extract_system, null_cone, proportional, twistor_series, CurveFamily, NewtonOptions, QuadraticForm4, SeedRule, TwistorError};

fn theta(src: &str) -> Expr {
    parse(src, &theta_context()).unwrap()
}

fn d(e: &Expr, v: &str) -> Expr {
    differentiate(e, v)
}

fn form_of(m: &Metric) -> QuadraticForm4 {
    let names: Vec<&str> = (0..4).map(|i| m.name(i)).collect();
    let q = std::array::from_fn(|i| std::array::from_fn(|j| m.g(i, j).clone()));
    QuadraticForm4::new([names[0], names[1], names[2], names[3]], q)
}

/// Jet (X, Y, Z, Y', Z') of the curve with the given parameters.
fn jet(fam: &CurveFamily, x: f64, params: [f64; 4]) -> [f64; 5] {
    let exprs = [fam.y.clone(), fam.z.clone(), d(&fam.y, "X"), d(&fam.z, "X")];
    let tape = Tape::compile(&exprs, fam.context()).unwrap();
    let v = tape.eval(&[x, params[0], params[1], params[2], params[3]]).unwrap();
    [x, v[0], v[1], v[2], v[3]]
}

fn rhs_at(sys: &SecondOrderSystem, pt: [f64; 5]) -> [f64; 2] {
    let tape = Tape::compile(&[sys.f.clone(), sys.g.clone()], sys.context()).unwrap();
    let v = tape.eval(&pt).unwrap();
    [v[0], v[1]]
}

/// Compares extraction with the system at jets of random curves in the given parameter box.
fn check_extraction(fam: &CurveFamily, sys: &SecondOrderSystem, xbox: (f64, f64), pbox: [(f64, f64); 4], seeded: bool, n: usize, tol: f64) {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let opts = NewtonOptions::default();
    for _ in 0..n {
        let x = rng.gen_range(xbox.0..xbox.1);
        let params: [f64; 4] = std::array::from_fn(|i| rng.gen_range(pbox[i].0..pbox[i].1));
        let pt = jet(fam, x, params);
        let mut f = fam.clone();
        if seeded {
            f.seed = SeedRule::Fixed(params.map(|p| p * 1.02 + 0.01));
        }
        let got = extract_system(&f, pt, &opts).unwrap();
        let want = rhs_at(sys, pt);
        for k in 0..2 {
            assert!((got[k] - want[k]).abs() <= tol * (1.0 + want[k].abs()), "{k}: {got:?} vs {want:?} at {pt:?}");
        }
    }
}

#[test]
fn flat_series_truncates_at_first_order() {
    let s = twistor_series(&Expr::zero(), 5).unwrap();
    assert_eq!(s.exact_degree, Some(1));
    assert_eq!(s.a[0].to_string(), "w");
    assert_eq!(s.a[1].to_string(), "y");
    assert!(s.a[2..].iter().chain(&s.b[2..]).all(Expr::is_zero));
}

#[test]
fn quartic_series_truncates_at_second_order() {
    let s = twistor_series(&theta("y^4/4"), 6).unwrap();
    assert_eq!(s.exact_degree, Some(2));
    let zt = ZeroTest::default();
    let ctx = theta_context();
    let y = theta("y");
    assert!(zt.is_zero(&(&s.b[2] + y.powi(3)), &ctx).unwrap());
    assert!(zt.is_zero(&(&s.b[1] + theta("x")), &ctx).unwrap());
    assert!(s.a[2].is_zero());
}

#[test]
fn low_orders_match_potential_derivatives() {
    let zt = ZeroTest::default();
    let ctx = theta_context();
    for src in ["y^5", "w*y^3 + z^2", "x*y^2 + w*z", "y^6 + w^3*z", "z*y^4 + w^2*x"] {
        let th = theta(src);
        let s = match twistor_series(&th, 4) {
            Ok(s) => s,
            Err(TwistorError::InconsistentRecursion(_)) => continue,
            Err(e) => panic!("{src}: {e}"),
        };
        let want = [-d(&th, "x"), -d(&th, "y"), d(&th, "z"), -d(&th, "w")];
        let got = [&s.a[2], &s.b[2], &s.a[3], &s.b[3]];
        for (g, w) in got.iter().zip(&want) {
            assert!(zt.is_zero(&(*g - w), &ctx).unwrap(), "{src}");
        }
    }
}

#[test]
fn rational_potential_is_rejected() {
    let r = twistor_series(&theta("1/(x*w + y*z)"), 3);
    assert!(matches!(r, Err(TwistorError::NonPolynomialTheta(_))));
}

#[test]
fn non_heavenly_potential_breaks_the_recursion() {
    let r = twistor_series(&theta("x^2*y^2"), 4);
    assert!(matches!(r, Err(TwistorError::InconsistentRecursion(_)) | Err(TwistorError::GaugeMismatch(_))), "{r:?}");
}

#[test]
fn straight_lines_give_the_trivial_system() {
    let fam = families::straight_lines();
    let r = extract_system(&fam, [0.3, 0.7, -0.2, 0.4, 1.1], &NewtonOptions::default()).unwrap();
    assert!(r[0].abs() < 1e-10 && r[1].abs() < 1e-10);
}

#[test]
fn extraction_matches_systems_from_potentials() {
    let unit = [(-1.0, 1.0); 4];
    for src in ["0", "y^4/4"] {
        let th = theta(src);
        let fam = twistor_series(&th, 6).unwrap().to_family();
        check_extraction(&fam, &system_from_theta(&th), (-1.0, 1.0), unit, false, 20, 1e-6);
    }
}

#[test]
fn extraction_reproduces_submax() {
    check_extraction(&families::submax(), &systems::submax(), (-1.0, 1.0), [(-1.0, 1.0); 4], false, 10, 1e-8);
}

#[test]
fn extraction_reproduces_fourdexam() {
    let pbox = [(-1.0, 1.0), (1.0, 2.0), (-0.2, 0.2), (-1.0, 1.0)];
    check_extraction(&families::gh_quadratic(), &systems::fourdexam(), (0.5, 1.5), pbox, false, 10, 1e-6);
}

#[test]
fn extraction_reproduces_boris() {
    let pbox = [(-1.0, 1.0), (1.5, 2.5), (0.2, 0.6), (0.5, 1.0)];
    check_extraction(&families::boris(), &systems::boris(), (-0.5, 0.5), pbox, true, 10, 1e-8);
}

#[test]
fn extraction_reproduces_ode_sym_4() {
    let pbox = [(-1.0, 1.0), (-1.0, 1.0), (-1.5, -1.0), (1.1, 2.0)];
    check_extraction(&families::ode_sym_4(), &systems::ode_sym_4(), (0.0, 1.0), pbox, true, 10, 1e-8);
}

#[test]
fn flat_null_cone() {
    let q = null_cone(&families::straight_lines(), 4).unwrap();
    let ctx = metrics::theta_context();
    assert!(proportional(&q, &form_of(&metrics::flat()), &ctx, &ZeroTest::default()).unwrap());
}

#[test]
fn submax_null_cone_is_the_heavenly_metric() {
    let q = null_cone(&families::submax(), 4).unwrap();
    let ctx = metrics::theta_context();
    assert!(proportional(&q, &form_of(&metrics::submax_metric()), &ctx, &ZeroTest::default()).unwrap());
    assert!(!proportional(&q, &form_of(&metrics::flat()), &ctx, &ZeroTest::default()).unwrap());
}

#[test]
fn boris_null_cone() {
    let q = null_cone(&families::boris(), 4).unwrap();
    let m = metrics::boris_metric();
    assert!(proportional(&q, &form_of(&m), m.context(), &ZeroTest::default()).unwrap(), "{:?}", q.q);
}

#[test]
fn ode_sym_4_null_cone() {
    let q = null_cone(&families::ode_sym_4(), 4).unwrap();
    let m = metrics::ode_sym_4_metric();
    assert!(proportional(&q, &form_of(&m), m.context(), &ZeroTest::default()).unwrap(), "{:?}", q.q);
}

#[test]
fn gibbons_hawking_null_cone() {
    let q = null_cone(&families::gh_quadratic(), 4).unwrap();
    let m = metrics::gh_example().with_box("y", 0.5, 1.5).with_box("t", 0.5, 1.5);
    assert!(proportional(&q, &form_of(&m), m.context(), &ZeroTest::default()).unwrap(), "{:?}", q.q);
}

#[test]
fn null_cone_is_nondegenerate() {
    let zt = ZeroTest::default();
    let ctx = metrics::theta_context();
    for fam in [families::straight_lines(), families::submax()] {
        let q = null_cone(&fam, 4).unwrap();
        assert!(!zt.is_zero(&q.determinant(), &ctx).unwrap());
    }
}

#[test]
fn degree_bound_is_enforced() {
    let fam = CurveFamily::parse(["w", "z", "x", "y"], "w + X*y + X^5*x", "z - X*x", SeedRule::Heavenly).unwrap();
    assert!(matches!(null_cone(&fam, 4), Err(TwistorError::DegreeOverflow { degree: 5, max: 4 })));
}

#[test]
fn proportionality_is_an_equivalence() {
    let zt = ZeroTest::default();
    let ctx = metrics::theta_context();
    let flat = form_of(&metrics::flat());
    let five = QuadraticForm4::new(["w", "z", "x", "y"], std::array::from_fn(|i| std::array::from_fn(|j| Expr::int(5) * &flat.q[i][j])));
    let mut bumped = flat.clone();
    bumped.q[0][0] = &bumped.q[0][0] + Expr::one();
    assert!(proportional(&flat, &five, &ctx, &zt).unwrap());
    assert!(!proportional(&flat, &bumped, &ctx, &zt).unwrap());
    let set = [flat.clone(), five, bumped, form_of(&metrics::submax_metric()), null_cone(&families::submax(), 4).unwrap()];
    let rel: Vec<Vec<bool>> = set.iter().map(|a| set.iter().map(|b| proportional(a, b, &ctx, &zt).unwrap()).collect()).collect();
    for i in 0..set.len() {
        assert!(rel[i][i]);
        for j in 0..set.len() {
            assert_eq!(rel[i][j], rel[j][i]);
            for k in 0..set.len() {
                assert!(!(rel[i][j] && rel[j][k]) || rel[i][k]);
            }
        }
    }
}

#[test]
fn unknown_variable_in_family_is_rejected() {
    let ctx = Context::new(&["X", "w", "z", "x", "y", "q"]);
    let y = parse("w + q*X", &ctx).unwrap();
    assert!(CurveFamily::new(["w", "z", "x", "y"], y, Expr::var("z"), SeedRule::Heavenly).is_err());
}

