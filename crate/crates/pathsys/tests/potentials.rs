use exprcore::{parse, Expr, ZeroTest};
use pathsys::examples::*;
use pathsys::*;

fn zt() -> ZeroTest {
    ZeroTest::default()
}

fn theta(s: &str) -> Expr {
    parse(s, &theta_context()).unwrap()
}

#[test]
fn lambda_examples() {
    let lam = lambda_potential(&submax(), &zt()).unwrap().unwrap();
    assert_eq!(lam, Expr::rat(1, 4) * Expr::var("p0").powi(4));

    let s = ode_tod();
    let lam = lambda_potential(&s, &zt()).unwrap().unwrap();
    let want = parse("1/(p0*Z - Y*p1)", s.context()).unwrap();
    assert!(zt().is_zero(&(lam - want), s.context()).unwrap());

    let s = SecondOrderSystem::parse("p0*p1", "0").unwrap();
    assert!(lambda_potential(&s, &zt()).unwrap().is_none());
}

#[test]
fn theta_examples() {
    let s = system_from_theta(&theta("y^4/4"));
    assert!(s.f.is_zero());
    assert_eq!(s.g, Expr::int(-2) * Expr::var("p0").powi(3));

    let s = system_from_theta(&theta("1/(x*w + y*z)"));
    let t = ode_tod();
    for (a, b) in [(&s.f, &t.f), (&s.g, &t.g)] {
        assert!(zt().is_zero(&(a - b), t.context()).unwrap());
    }

    let s = system_from_theta(&Expr::zero());
    assert!(s.f.is_zero() && s.g.is_zero());
}

#[test]
fn heavenly_examples() {
    let c = theta_context();
    assert!(is_heavenly(&theta("y^4/4"), &c, &zt()).unwrap());
    assert!(is_heavenly(&theta("1/(x*w + y*z)"), &c, &zt()).unwrap());
    let r = heavenly_residual(&theta("x^2*y^2"));
    assert!(zt().is_zero(&(r + theta("12*x^2*y^2")), &c).unwrap());
}

#[test]
fn heavenly_thetas_give_torsion_free_divergence_free_systems() {
    let strict = ZeroTest::new(50, 1e-8);
    let c = theta_context();
    for t in ["y^4/4", "y^5", "w*y^4 + z^2*y^3"] {
        let th = theta(t);
        if !is_heavenly(&th, &c, &zt()).unwrap() {
            continue;
        }
        let s = system_from_theta(&th).with_box("p1", -1.5, -0.5);
        assert!(is_torsion_free(&s, &strict).unwrap(), "{t}");
        assert!(zt().is_zero(&s.divergence(), s.context()).unwrap(), "{t}");
    }
}

#[test]
fn antiderivatives() {
    let c = canonical_context();
    for src in ["p1^3 + Y*p1", "Y/(p0*Z - Y*p1)^2", "1/(2*p1 + 1)", "exp(3*p1)*Z", "(p1 + Y)^2*p1"] {
        let e = parse(src, &c).unwrap();
        let a = antiderivative(&e, "p1").unwrap();
        let back = exprcore::differentiate(&a, "p1");
        assert!(zt().is_zero(&(back - e), &c).unwrap(), "{src}");
    }
    assert!(antiderivative(&parse("sqrt(p1^2 + 1)", &c).unwrap(), "p1").is_none());
}

#[test]
fn quadric_at_origin_is_minus_heavenly() {
    let c = theta_context();
    for t in ["y^4/4", "1/(x*w + y*z)", "w*y^4 + z^2*y^3"] {
        let th = theta(t);
        let q = correspondence_quadric(&system_from_theta(&th));
        let d = |a: &str, b: &str| exprcore::differentiate(&exprcore::differentiate(&th, a), b);
        let h = Expr::rat(1, 2);
        let mut want = vec![vec![Expr::zero(); 4]; 4];
        want[0][2] = h.clone();
        want[2][0] = h.clone();
        want[1][3] = h.clone();
        want[3][1] = h;
        want[1][1] = -d("x", "x");
        want[0][0] = -d("y", "y");
        want[0][1] = d("x", "y");
        want[1][0] = d("x", "y");
        for i in 0..4 {
            for j in 0..4 {
                assert!(zt().is_zero(&(&q[i][j] + &want[i][j]), &c).unwrap(), "{t} {i}{j}");
            }
        }
    }
}
