use curvature::{curvature, Metric};
use exprcore::{parse, Context, Expr, Tape, ZeroTest};
use finsler::examples::{euclidean, polar, rotating_wind, round_sphere, skewed_spray, submax_finsler, submax_lagrangian};
use finsler::{
    euler_lagrange, fiber_context, geodesic_spray, isotropy_check, metric_tensor, randers_from_zermelo, spray_curvature, unparametrized_geodesics,
    unparametrized_system, FinslerError, FinslerFunction, FlagCurvature, SprayFormula, Traversal, ZermeloData, FIBER,
};
use pathsys::examples as systems;
use pathsys::{canonical_context, is_torsion_free, SecondOrderSystem};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn zt() -> ZeroTest {
    ZeroTest::default()
}

fn fx(src: &str) -> Expr {
    parse(src, &fiber_context()).unwrap()
}

fn same(a: &Expr, b: &Expr, ctx: &Context) -> bool {
    zt().is_zero(&(a - b), ctx).unwrap()
}

fn randers() -> FinslerFunction {
    randers_from_zermelo(&rotating_wind(), &zt()).unwrap().finsler()
}

fn eval(exprs: &[Expr], ctx: &Context, x: &[f64]) -> Vec<f64> {
    Tape::compile(exprs, ctx).unwrap().eval(x).unwrap()
}

#[test]
fn euclidean_fiber_metric_is_identity() {
    let f = euclidean();
    let g = metric_tensor(&f);
    for i in 0..3 {
        for j in 0..3 {
            let want = Expr::int((i == j) as i64);
            assert!(same(&g[i][j], &want, f.context()));
        }
    }
    assert!(f.is_homogeneous(&zt()).unwrap());
}

#[test]
fn polar_fiber_metric_is_diagonal() {
    let f = polar();
    let g = metric_tensor(&f);
    let diag = [fx("1"), fx("1"), fx("Y^2")];
    for i in 0..3 {
        for j in 0..3 {
            let want = if i == j { diag[i].clone() } else { Expr::zero() };
            assert!(same(&g[i][j], &want, f.context()));
        }
    }
}

#[test]
fn randers_fiber_metric_matches_finite_differences() {
    let f = randers();
    assert!(f.is_homogeneous(&zt()).unwrap());
    let g = metric_tensor(&f);
    let flat: Vec<Expr> = g.iter().flatten().cloned().collect();
    let x = [0.0, 0.5, 0.0, 1.0, 1.0, 1.0];
    let sym = eval(&flat, f.context(), &x);
    let sq = Tape::compile(std::slice::from_ref(&f.square), f.context()).unwrap();
    let e = |p: &[f64; 6]| sq.eval(p).unwrap()[0];
    let h = 1e-4;
    for i in 0..3 {
        for j in 0..3 {
            let shift = |di: f64, dj: f64| {
                let mut p = x;
                p[3 + i] += di;
                p[3 + j] += dj;
                e(&p)
            };
            let fd = (shift(h, h) - shift(h, -h) - shift(-h, h) + shift(-h, -h)) / (8.0 * h * h);
            assert!((fd - sym[3 * i + j]).abs() < 1e-6, "{i}{j}: {fd} vs {}", sym[3 * i + j]);
        }
    }
}

#[test]
fn euclidean_spray_vanishes() {
    for formula in [SprayFormula::Energy, SprayFormula::Christoffel] {
        let s = geodesic_spray(&euclidean(), formula).unwrap();
        assert!(s.gamma.iter().all(|g| same(g, &Expr::zero(), s.context())));
    }
}

#[test]
fn polar_spray_has_the_christoffel_symbols() {
    for formula in [SprayFormula::Energy, SprayFormula::Christoffel] {
        let s = geodesic_spray(&polar(), formula).unwrap();
        let ctx = s.context();
        assert!(same(&s.gamma[0], &Expr::zero(), ctx));
        assert!(same(&s.second(1, 2, 2), &fx("-Y"), ctx));
        assert!(same(&s.second(2, 1, 2), &fx("1/Y"), ctx));
        assert!(s.is_homogeneous(&zt()).unwrap());
    }
}

#[test]
fn randers_spray_is_homogeneous() {
    let s = geodesic_spray(&randers(), SprayFormula::Energy).unwrap();
    assert!(s.is_homogeneous(&zt()).unwrap());
}

#[test]
fn flat_spray_curvature_vanishes() {
    let s = geodesic_spray(&polar(), SprayFormula::Energy).unwrap();
    let c = spray_curvature(&s);
    let all: Vec<Expr> = c.r.iter().flatten().flatten().flatten().cloned().collect();
    assert!(zt().all_zero(&all, c.context()).unwrap());
    assert!(isotropy_check(&c, &zt(), 1e-9).unwrap().isotropic);
}

#[test]
fn riemannian_spray_curvature_matches_levi_civita() {
    let f = round_sphere();
    let s = geodesic_spray(&f, SprayFormula::Energy).unwrap();
    let c = spray_curvature(&s);
    assert!(zt().all_zero(&c.antisymmetry_residuals(), c.context()).unwrap());
    let base = Context::new(&["X", "Y", "Z"]).with_box("X", 0.5, 1.2).with_box("Y", 0.5, 1.2);
    let m = Metric::parse(base, &[("X", "X", "1"), ("Y", "Y", "sin(X)^2"), ("Z", "Z", "sin(X)^2*sin(Y)^2")]).unwrap();
    let pack = curvature(&m);
    // The metric curvature module carries the opposite overall sign.
    let v: Vec<Expr> = FIBER.iter().map(|n| Expr::var(n)).collect();
    for i in 0..3 {
        for j in 0..3 {
            let lc = Expr::add((0..3).flat_map(|k| (0..3).map(move |l| (k, l))).map(|(k, l)| &pack.riemann[i][k][j][l] * &v[k] * &v[l]));
            assert!(same(&c.jacobi[i][j], &-lc, f.context()), "{i}{j}");
        }
    }
}

#[test]
fn round_sphere_has_unit_flag_curvature() {
    let f = round_sphere();
    let c = spray_curvature(&geodesic_spray(&f, SprayFormula::Energy).unwrap());
    let k = FlagCurvature::new(&f, &c).unwrap();
    let got = k.eval([0.8, 0.9, 0.3], [0.3, -0.7, 1.1], [1.0, 0.2, 0.4]).unwrap();
    assert!((got - 1.0).abs() < 1e-9, "{got}");
    assert!(isotropy_check(&c, &zt(), 1e-9).unwrap().isotropic);
}

#[test]
fn skewed_spray_is_not_isotropic() {
    let c = spray_curvature(&skewed_spray());
    let r = isotropy_check(&c, &zt(), 1e-9).unwrap();
    assert!(!r.isotropic);
    assert!(r.max_residual > 1e-3, "{}", r.max_residual);
}

#[test]
fn randers_flag_curvature_is_constant() {
    let f = randers();
    let c = spray_curvature(&geodesic_spray(&f, SprayFormula::Energy).unwrap());
    assert!(isotropy_check(&c, &zt(), 1e-8).unwrap().isotropic);
    let k = FlagCurvature::new(&f, &c).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut unit = || -> [f64; 3] { std::array::from_fn(|_| rng.gen_range(-1.0..1.0)) };
    let mut values = Vec::new();
    for _ in 0..10 {
        let x = [unit()[0], 0.2 + 0.6 * unit()[0].abs(), unit()[0]];
        let v = unit();
        for _ in 0..10 {
            values.push(k.eval(x, v, unit()).unwrap());
        }
    }
    let (lo, hi) = values.iter().fold((f64::MAX, f64::MIN), |(a, b), &k| (a.min(k), b.max(k)));
    assert!(hi - lo <= 1e-6, "spread {}", hi - lo);
}

#[test]
fn submax_finsler_function_is_flat() {
    let f = submax_finsler();
    let c = spray_curvature(&geodesic_spray(&f, SprayFormula::Energy).unwrap());
    let k = FlagCurvature::new(&f, &c).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..10 {
        let x = [rng.gen_range(0.0..0.3), rng.gen_range(0.0..0.3), rng.gen_range(-1.0..1.0)];
        let v = [rng.gen_range(0.5..1.5), rng.gen_range(0.5..1.0), rng.gen_range(0.5..1.0)];
        let w = [rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)];
        let got = k.eval(x, v, w).unwrap();
        assert!(got.abs() <= 1e-7, "{got}");
    }
}

#[test]
fn flag_curvature_ignores_the_pole_component() {
    let f = round_sphere();
    let c = spray_curvature(&geodesic_spray(&f, SprayFormula::Energy).unwrap());
    let k = FlagCurvature::new(&f, &c).unwrap();
    let (x, v, w) = ([0.7, 0.6, 0.1], [0.5, 0.2, -0.4], [0.1, 1.0, 0.3]);
    let a = k.eval(x, v, w).unwrap();
    let b = k.eval(x, v, std::array::from_fn(|i| w[i] + 2.5 * v[i])).unwrap();
    assert!((a - b).abs() < 1e-9);
    assert!(matches!(k.eval(x, v, v.map(|t| 3.0 * t)), Err(FinslerError::DegenerateFlag)));
}

#[test]
fn calm_navigation_returns_the_metric() {
    let zd = ZermeloData::parse(["1", "0", "0", "1", "0", "Y^2"], ["0", "0", "0"]).unwrap();
    let r = randers_from_zermelo(&zd, &zt()).unwrap();
    for i in 0..3 {
        assert!(r.b[i].is_zero() || same(&r.b[i], &Expr::zero(), zd.context()));
        for j in 0..3 {
            assert!(same(&r.a[i][j], &zd.h[i][j], zd.context()));
        }
    }
}

#[test]
fn rotating_wind_randers_values() {
    let zd = rotating_wind();
    let r = randers_from_zermelo(&zd, &zt()).unwrap();
    let x = [0.0, 0.5, 0.0];
    let lam = eval(&[zd.lambda()], zd.context(), &x)[0];
    assert!((lam - 0.75).abs() < 1e-14);
    let b = eval(&r.b, zd.context(), &x);
    assert!(b[0].abs() < 1e-14 && b[1].abs() < 1e-14 && (b[2] + 1.0 / 3.0).abs() < 1e-14);
    assert!(r.is_positive(&zt()).unwrap());
}

#[test]
fn wind_reaching_the_unit_circle_is_rejected() {
    let zd = rotating_wind().with_box("Y", 0.5, 1.0);
    assert!(matches!(randers_from_zermelo(&zd, &zt()), Err(FinslerError::ZermeloDomain { .. })));
}

#[test]
fn euclidean_paths_are_straight() {
    let s = geodesic_spray(&euclidean(), SprayFormula::Energy).unwrap();
    let r = unparametrized_geodesics(&s, [0.1, 0.2, 0.3], [1.0, 0.4, -0.3]).unwrap();
    assert_eq!(r, [0.0, 0.0]);
    assert!(matches!(unparametrized_geodesics(&s, [0.0; 3], [0.0, 1.0, 1.0]), Err(FinslerError::Chart)));
}

#[test]
fn polar_paths_match_christoffel_geodesics() {
    let s = geodesic_spray(&polar(), SprayFormula::Energy).unwrap();
    let sys = unparametrized_system(&s, Traversal::Forward).unwrap();
    let want = SecondOrderSystem::parse("Y*p1^2", "-2*p0*p1/Y").unwrap();
    let ctx = canonical_context().with_box("Y", 0.5, 1.5);
    assert!(same(&sys.f, &want.f, &ctx) && same(&sys.g, &want.g, &ctx));
}

#[test]
fn randers_paths_match_the_rotating_plane_system() {
    let s = geodesic_spray(&randers(), SprayFormula::Energy).unwrap();
    let sys = systems::two_d_sym();
    let tape = Tape::compile(&[sys.f.clone(), sys.g.clone()], sys.context()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..10 {
        let pt = exprcore::ZeroTest::draw(&mut rng, sys.context());
        let want = tape.eval(&pt).unwrap();
        let got = unparametrized_geodesics(&s, [pt[0], pt[1], pt[2]], [-1.0, -pt[3], -pt[4]]).unwrap();
        for k in 0..2 {
            assert!((got[k] - want[k]).abs() <= 1e-6 * (1.0 + want[k].abs()), "{k}: {got:?} vs {want:?}");
        }
    }
}

#[test]
fn randers_paths_are_torsion_free() {
    let s = geodesic_spray(&randers(), SprayFormula::Energy).unwrap();
    let boxed = |sys: SecondOrderSystem| sys.with_box("Y", 0.2, 0.8).with_box("p0", -0.5, 0.5).with_box("p1", -0.5, 0.5);
    for t in [Traversal::Forward, Traversal::Reversed] {
        let sys = boxed(unparametrized_system(&s, t).unwrap());
        assert!(is_torsion_free(&sys, &ZeroTest::new(10, 1e-6)).unwrap(), "{t:?}");
    }
}

#[test]
fn submax_lagrangian_gives_submax() {
    let sys = euler_lagrange(&submax_lagrangian(), &zt()).unwrap();
    assert!(sys.f.is_zero());
    assert_eq!(sys.g, systems::submax().g);
    assert!(is_torsion_free(&sys, &zt()).unwrap());
}

#[test]
fn simple_lagrangians() {
    let ctx = canonical_context();
    let p = |s: &str| parse(s, &ctx).unwrap();
    let free = euler_lagrange(&p("p0^2 + p1^2"), &zt()).unwrap();
    assert!(free.f.is_zero() && free.g.is_zero());
    let forced = euler_lagrange(&p("2*p0*p1 + Y^2"), &zt()).unwrap();
    assert!(forced.f.is_zero());
    assert_eq!(forced.g, p("Y"));
    assert!(matches!(euler_lagrange(&p("p0 + Y*p1"), &zt()), Err(FinslerError::DegenerateLagrangian)));
}
