use exprcore::{eval_at, parse, Expr, ZeroTest};
use pathsys::examples::*;
use pathsys::*;

fn zt() -> ZeroTest {
    ZeroTest::default()
}

fn same(a: &Expr, b: &str, sys: &SecondOrderSystem) -> bool {
    let b = parse(b, sys.context()).unwrap();
    zt().is_zero(&(a - &b), sys.context()).unwrap()
}

#[test]
fn total_derivative_basics() {
    let s = submax();
    assert_eq!(total_derivative(&Expr::var("Y"), &s), Expr::var("p0"));
    assert_eq!(total_derivative(&Expr::var("p0"), &s), s.f);
    let e = parse("X*p1", s.context()).unwrap();
    assert!(same(&total_derivative(&e, &s), "p1 - 2*X*p0^3", &s));
}

#[test]
fn foreign_variables_rejected() {
    let r = SecondOrderSystem::new(Expr::var("q"), Expr::zero());
    assert!(matches!(r, Err(PathError::ForeignVariable(v)) if v == "q"));
}

#[test]
fn wilczynski_examples() {
    let t = wilczynski(&SecondOrderSystem::trivial());
    assert!(t.components().iter().all(|c| c.is_zero()));
    let t = wilczynski(&submax());
    assert!(t.t.iter().flatten().all(|c| c.is_zero()));
    let s = SecondOrderSystem::parse("Y", "0").unwrap();
    let t = wilczynski(&s);
    assert_eq!(t.trace_free[0][0], Expr::rat(-1, 2));
    assert_eq!(t.trace_free[1][1], Expr::rat(1, 2));
    assert!(t.trace_free[0][1].is_zero() && t.trace_free[1][0].is_zero());
    assert!((&t.trace_free[0][0] + &t.trace_free[1][1]).is_zero());
}

#[test]
fn torsion_free_fixtures() {
    for (name, s) in [
        ("submax", submax()),
        ("boris", boris()),
        ("ode_sym_4", ode_sym_4()),
        ("fourdexam", fourdexam()),
        ("two_d_sym", two_d_sym()),
    ] {
        assert!(is_torsion_free(&s, &zt()).unwrap(), "{name}");
    }
    assert!(!is_torsion_free(&SecondOrderSystem::parse("Y", "0").unwrap(), &zt()).unwrap());
    assert!(!is_torsion_free(&two_d_sym_as_printed(), &zt()).unwrap());
}

#[test]
fn static_potential_of_sparling_tod_has_torsion() {
    let s = ode_tod();
    assert!(!is_torsion_free(&s, &zt()).unwrap());
    let d = "(p0*Z - Y*p1)";
    let want = [
        format!("-4*(Y*p1 + Z*p0)/{d}^3"),
        format!("8*Y*p0/{d}^3"),
        format!("-8*Z*p1/{d}^3"),
    ];
    for (c, w) in wilczynski(&s).components().iter().zip(&want) {
        assert!(same(c, w, &s), "{w}");
    }
}

#[test]
fn fels_examples() {
    let f = fels(&SecondOrderSystem::trivial());
    assert!(f.components().iter().all(|c| c.is_zero()));
    let f = fels(&submax());
    assert_eq!(f.sym[1][0][0][0], Expr::int(-12));
    let f = fels(&boris());
    let pt = [("X", 0.3), ("Y", 0.7), ("Z", 0.6), ("p0", 0.8), ("p1", 1.2)];
    assert!(f.components().iter().any(|c| eval_at(c, &pt).map_or(false, |v| v.abs() > 1e-6)));
}

#[test]
fn fels_symmetrization_is_symmetric() {
    let f = fels(&boris());
    for a in 0..2 {
        assert_eq!(f.sym[a][0][0][1], f.sym[a][0][1][0]);
        assert_eq!(f.sym[a][0][0][1], f.sym[a][1][0][0]);
        assert_eq!(f.sym[a][1][1][0], f.sym[a][0][1][1]);
    }
}

#[test]
fn correspondence_examples() {
    let m = correspondence_metric(&SecondOrderSystem::trivial());
    assert!(m.omega2.is_zero() && m.phi.iter().flatten().all(|c| c.is_zero()));
    assert_eq!(m.g[1][4], Expr::rat(1, 2));
    assert_eq!(m.g[2][3], Expr::rat(-1, 2));
    assert!(m.g[0].iter().all(|c| c.is_zero()));

    let s = submax();
    let m = correspondence_metric(&s);
    assert!(same(&m.phi[0][0], "3*p0^2", &s));
    assert!(m.omega2.is_zero());

    let s = ode_tod();
    let m = correspondence_metric(&s);
    assert!(zt().is_zero(&m.omega2, s.context()).unwrap());
    for a in 0..2 {
        for b in 0..2 {
            assert!(zt().is_zero(&(&m.phi[a][b] - &m.phi[b][a]), s.context()).unwrap());
        }
    }
}

#[test]
fn evolution_matches_torsion() {
    let all = [
        submax(),
        boris(),
        ode_sym_4(),
        ode_tod(),
        fourdexam(),
        two_d_sym(),
        two_d_sym_as_printed(),
        SecondOrderSystem::trivial(),
        SecondOrderSystem::parse("Y", "0").unwrap(),
        SecondOrderSystem::parse("0", "Y*p1^2 + Z").unwrap(),
    ];
    for s in &all {
        let a = conformal_evolution_holds(s, &zt()).unwrap();
        let b = is_torsion_free(s, &zt()).unwrap();
        assert_eq!(a, b, "{} / {}", s.f, s.g);
    }
    assert!(!conformal_evolution_holds(&SecondOrderSystem::parse("Y", "0").unwrap(), &zt()).unwrap());
}
