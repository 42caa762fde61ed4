use num::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use pathsys::*;

fn q(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

#[test]
fn proposition_examples() {
    assert_eq!(beta_symmetry_dimension(&BetaFamily::new([(3, q(-2))])), 9);
    for k in 4..12 {
        assert_eq!(beta_symmetry_dimension(&BetaFamily::new([(k, q(1))])), 7, "k={k}");
    }
    let geometric = BetaFamily::new((3..=40).map(|k| (k, q(1)))).with_tail(q(1));
    assert_eq!(beta_symmetry_dimension(&geometric), 9);
    assert_eq!(beta_symmetry_dimension(&BetaFamily::new([(0, q(1)), (2, q(5))])), 15);
    assert_eq!(beta_symmetry_dimension(&BetaFamily::default()), 15);
}

#[test]
fn plain_truncation_loses_the_tail() {
    let cut = BetaFamily::new((3..=40).map(|k| (k, q(1))));
    assert_eq!(beta_symmetry_dimension(&cut), 6);
}

#[test]
fn dimension_eight_never_occurs() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..1000 {
        let n = rng.gen_range(1..=4);
        let coeffs: Vec<(u32, BigRational)> = (0..n)
            .map(|_| {
                let k = rng.gen_range(0..9u32);
                let num = rng.gen_range(-3i64..=3);
                let den = rng.gen_range(1..=4);
                (k, BigRational::new(num.into(), den.into()))
            })
            .collect();
        let fam = BetaFamily::new(coeffs);
        let d = beta_symmetry_dimension(&fam);
        assert_ne!(d, 8, "{fam:?}");
        if !fam.is_quadratic() {
            assert!(d <= 9, "{fam:?}");
        }
    }
}
