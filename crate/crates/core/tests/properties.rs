use mumford_core::corpus::{random_point, random_split_monic};
use mumford_core::dynamics::lax::{lax_field_at, lax_field_i, sigma_of_matrix, TangentValue};
use mumford_core::mumford::{rho_of_matrix, SpectralPoly};
use mumford_core::strata::{classify, decompose_fiber_point};
use mumford_core::{frac, Poly, Rational};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn shape() -> impl Strategy<Value = (usize, usize, u64)> {
    (1usize..=3).prop_flat_map(|g| (Just(g), 0..=g, any::<u64>()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn multiplier_scales_the_moment_map((g, rho, seed) in shape(), deg in 0usize..=2) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_point(&mut rng, g, rho);
        let q = random_split_monic(&mut rng, deg);
        let b = a.mu(&q).unwrap();
        prop_assert_eq!(b.g(), g + deg);
        prop_assert_eq!(b.moment_map(), &(&q * &q) * &a.moment_map());
        prop_assert_eq!(rho_of_matrix(&b).unwrap().0, rho + deg);
    }

    #[test]
    fn points_classify_by_their_gcd((g, rho, seed) in shape()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_point(&mut rng, g, rho);
        let h = SpectralPoly::factored(a.moment_map()).unwrap();
        let label = classify(&a, &h).unwrap();
        prop_assert_eq!(label.i, g - rho);
        prop_assert_eq!(sigma_of_matrix(&a), g - rho);
        let (q, ap, hp) = decompose_fiber_point(&a, &h).unwrap();
        prop_assert_eq!(&q, &label.q);
        prop_assert_eq!(ap.mu(&q).unwrap(), a);
        prop_assert_eq!(ap.moment_map(), hp.h().clone());
    }

    #[test]
    fn field_at_y_expands_in_the_basis((g, rho, seed) in shape(), n in -20i64..=20, d in 1i64..=5) {
        let a = random_point(&mut ChaCha8Rng::seed_from_u64(seed), g, rho);
        let y = frac(n, d);
        let mut sum = TangentValue::zero();
        let mut power = frac(1, 1);
        for i in 0..g {
            sum = &sum + &lax_field_i(&a, i).scale(&power);
            power *= &y;
        }
        prop_assert_eq!(lax_field_at(&a, &y), sum);
        prop_assert!(lax_field_i(&a, g).is_zero());
    }
}

#[test]
fn split_monic_has_requested_degree() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for d in 0..5 {
        let q: Poly<Rational> = random_split_monic(&mut rng, d);
        assert_eq!(q.degree(), Some(d));
        assert!(q.is_monic());
    }
}
