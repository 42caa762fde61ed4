use exprcore::{parse, Expr, ZeroTest};
use pathsys::{examples as sys, SecondOrderSystem};
use symmetry::examples::*;
use symmetry::*;

fn zt() -> ZeroTest {
    ZeroTest::default()
}

fn f(x: &str, y: &str, z: &str) -> VectorField3 {
    VectorField3::parse(x, y, z).unwrap()
}

fn all_symmetries(fields: &[VectorField3], s: &SecondOrderSystem) -> Vec<bool> {
    fields.iter().map(|c| symmetry_check(c, s, &zt()).unwrap()).collect()
}

#[test]
fn prolongation_examples() {
    let p = prolong(&f("0", "1", "0"));
    assert!(p.eta1.iter().chain(&p.eta2).all(Expr::is_zero));

    let p = prolong(&f("0", "X", "0"));
    assert_eq!(p.eta1[0], Expr::one());
    assert!(p.eta2[0].is_zero());

    let p = prolong(&f("X", "2*Y", "Z"));
    assert_eq!(p.eta1[0], Expr::var("p0"));
    assert!(p.eta1[1].is_zero());
    assert!(p.eta2[0].is_zero());
    assert_eq!(p.eta2[1], -Expr::var("q1"));
}

#[test]
fn l9_on_submax() {
    let s = sys::submax();
    let gens = l9();
    assert_eq!(gens.len(), 9);
    assert!(all_symmetries(&gens, &s).iter().all(|&b| b), "{:?}", all_symmetries(&gens, &s));
    assert!(!symmetry_check(&f("Y", "0", "0"), &s, &zt()).unwrap());
}

#[test]
fn native_orientation_matches_swapped_system() {
    let s = SecondOrderSystem::parse("p1^3", "0").unwrap();
    assert!(all_symmetries(&l9_native(), &s).iter().all(|&b| b));
}

#[test]
fn l7_on_power_systems() {
    for k in 4..7 {
        let s = SecondOrderSystem::parse("0", &format!("p0^{k}")).unwrap();
        assert!(all_symmetries(&l7(k), &s).iter().all(|&b| b), "k={k}");
        let st = is_closed_and_solvable(&l7(k));
        assert_eq!(st, Structure { dim: 7, closed: true, solvable: true });
    }
}

#[test]
fn l6_on_beta_systems() {
    for beta in ["p0^3/(1 - p0)", "p0^5 + 3*p0^4", "exp(p0)"] {
        let s = SecondOrderSystem::parse("0", beta).unwrap().with_box("p0", -0.5, 0.5);
        assert!(all_symmetries(&l6(), &s).iter().all(|&b| b), "{beta}");
    }
}

#[test]
fn l5_on_gibbons_hawking_example() {
    let s = sys::fourdexam();
    assert!(all_symmetries(&l5(), &s).iter().all(|&b| b), "{:?}", all_symmetries(&l5(), &s));
}

#[test]
fn l4_on_ode_sym_4() {
    let s = sys::ode_sym_4();
    assert!(all_symmetries(&l4(), &s).iter().all(|&b| b), "{:?}", all_symmetries(&l4(), &s));
}

#[test]
fn brackets() {
    assert_eq!(lie_bracket(&f("1", "0", "0"), &f("0", "X", "0")), f("0", "1", "0"));
    assert!(lie_bracket(&f("0", "1", "0"), &f("0", "Z", "0")).is_zero());
    let n = l9_native();
    assert!(lie_bracket(&n[5], &n[7]).is_zero());
}

#[test]
fn jacobi_identity() {
    let pool: Vec<VectorField3> = l9().into_iter().chain(l5()).chain(l4()).collect();
    let ctx = symmetry::base_context();
    for i in (0..pool.len()).step_by(2) {
        let (a, b, c) = (&pool[i], &pool[(i + 3) % pool.len()], &pool[(i + 7) % pool.len()]);
        let j = lie_bracket(a, &lie_bracket(b, c))
            .add(&lie_bracket(b, &lie_bracket(c, a)))
            .add(&lie_bracket(c, &lie_bracket(a, b)));
        assert!(zt().all_zero(&j.c, &ctx).unwrap());
    }
}

#[test]
fn prolongation_commutes_with_brackets() {
    let gens = l6();
    let ctx = jet_context();
    for i in 0..gens.len() {
        for j in i + 1..gens.len() {
            let (pa, pb) = (prolong(&gens[i]), prolong(&gens[j]));
            let lhs = prolong(&lie_bracket(&gens[i], &gens[j])).components();
            let (ca, cb) = (pa.components(), pb.components());
            for k in 0..7 {
                let rhs = pa.apply(&cb[k]) - pb.apply(&ca[k]);
                assert!(zt().is_zero(&(&lhs[k] - rhs), &ctx).unwrap(), "{i} {j} {k}");
            }
        }
    }
}

#[test]
fn span_dimensions() {
    assert_eq!(span_dimension(&[f("1", "0", "0"), f("0", "1", "0"), f("0", "0", "1")]), 3);
    assert_eq!(span_dimension(&l9()), 9);
    assert_eq!(span_dimension(&[f("1", "0", "0"), f("2", "0", "0")]), 1);
    assert_eq!(span_dimension(&[f("exp(X)", "0", "0"), f("2*exp(X)", "0", "0"), f("sin(Y)", "0", "0")]), 2);
    assert_eq!(span_dimension(&l7(5)), 7);
    assert_eq!(span_dimension(&l6()), 6);
    assert_eq!(span_dimension(&l5()), 5);
    assert_eq!(span_dimension(&l4()), 4);
}

#[test]
fn algebra_structure() {
    assert_eq!(is_closed_and_solvable(&l6()), Structure { dim: 6, closed: true, solvable: true });
    assert_eq!(is_closed_and_solvable(&l9()), Structure { dim: 9, closed: true, solvable: false });
    assert_eq!(is_closed_and_solvable(&[f("1", "0", "0")]), Structure { dim: 1, closed: true, solvable: true });
    assert_eq!(is_closed_and_solvable(&l5()), Structure { dim: 5, closed: true, solvable: true });
    for alg in [l4(), l4a(), l4b()] {
        assert!(is_closed_and_solvable(&alg).closed);
    }
    let open = [f("1", "0", "0"), f("0", "X", "0")];
    assert!(!is_closed_and_solvable(&open).closed);
}

#[test]
fn parsed_fields_reject_jet_variables() {
    let ctx = exprcore::Context::new(&["X", "p0"]);
    let e = parse("p0", &ctx).unwrap();
    assert!(VectorField3::new([e, Expr::zero(), Expr::zero()]).is_err());
}
