mod common;

use std::sync::OnceLock;

use common::*;
use modwb::arith::primes_up_to;
use modwb::forms::{delta_qexp, eisenstein_qexp, ClassicalForm};
use modwb::series::QExpansion;
use modwb::siegel::{build_chi, HalfIntegralMatrix, SiegelExpansion};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

fn chi10() -> &'static SiegelExpansion {
    static F: OnceLock<SiegelExpansion> = OnceLock::new();
    F.get_or_init(|| build_chi(10, 64).unwrap())
}

fn series(coeffs: Vec<i64>) -> QExpansion {
    QExpansion::from_i64(coeffs.len() - 1, &coeffs).unwrap()
}

fn small_series() -> impl Strategy<Value = QExpansion> {
    prop::collection::vec(-20i64..=20, 12).prop_map(series)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn symplectic_cocycle(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let g1 = random_symplectic(&mut rng, 3);
        let g2 = random_symplectic(&mut rng, 3);
        let omega = random_point(&mut rng);
        prop_assert_eq!(cocycle(&g1, &g2, &omega, 1e-10), Ok(()));
    }

    #[test]
    fn congruence_membership_chain(seed in any::<u64>(), n in 2i64..=12) {
        let mut rng = StdRng::seed_from_u64(seed);
        let principal = random_principal(&mut rng, n, 4);
        let any = random_symplectic(&mut rng, 4);
        prop_assert_eq!(membership_chain(&principal, &any, n as u64), Ok(()));
    }

    #[test]
    fn hasse_bound(a in prop::array::uniform5(-30i64..=30)) {
        prop_assert_eq!(hasse(a, 150), Ok(()));
    }

    #[test]
    fn satake_round_trip_g1(k in 1i64..=12, idx in 0usize..15, frac in -0.999f64..0.999) {
        let k = 2 * k;
        let p = primes_up_to(50)[idx];
        let ap = (frac * 2.0 * (p as f64).powf((k - 1) as f64 / 2.0)) as i64;
        prop_assert_eq!(satake_round_trip(ap, p, k, 1e-8), Ok(()));
    }

    #[test]
    fn satake_round_trip_sk(k in 5i64..=8, idx in 0usize..6, frac in -0.999f64..0.999) {
        let k = 2 * k;
        let p = primes_up_to(13)[idx];
        let ap = (frac * 2.0 * (p as f64).powf((2 * k - 3) as f64 / 2.0)) as i64;
        prop_assert_eq!(satake_round_trip_g2(ap, p, k, 1e-8), Ok(()));
    }

    #[test]
    fn epsilon_is_a_class_invariant(seed in any::<u64>(), a in 1i64..=8, c_extra in 0i64..=8, b_frac in 0.0f64..1.0) {
        let c = a + c_extra;
        let b = (b_frac * (a + 1) as f64) as i64;
        let t = HalfIntegralMatrix::new(a, b.min(a), c);
        prop_assume!(t.is_positive_definite());
        let mut rng = StdRng::seed_from_u64(seed);
        let u = random_unimodular(&mut rng, 6);
        prop_assert_eq!(epsilon_invariance(t, &u), Ok(()));
    }

    #[test]
    fn ring_axioms(a in small_series(), b in small_series(), c in small_series()) {
        prop_assert_eq!(series_ring_axioms(&a, &b, &c), Ok(()));
    }

    #[test]
    fn inverse_of_unit_series(mut coeffs in prop::collection::vec(-9i64..=9, 12), c0 in prop::sample::select(vec![-3i64, -1, 1, 2, 5])) {
        coeffs[0] = c0;
        prop_assert_eq!(series_inverse(&series(coeffs)), Ok(()));
    }

    #[test]
    fn hecke_operators_commute(x in -50i64..=50, y in -50i64..=50) {
        let e12 = eisenstein_qexp(12, 120).unwrap();
        let delta = delta_qexp(120);
        let combo = &e12.scale(&rational(x)).expansion + &delta.scale(&rational(y)).expansion;
        let f = ClassicalForm::new(combo, 12, 1, false).unwrap();
        prop_assert_eq!(hecke_commute(&f, 2, 3), Ok(()));
        prop_assert_eq!(hecke_commute(&f, 2, 5), Ok(()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn maass_dirichlet_truncation_monotone(s in 12.0f64..20.0) {
        prop_assert_eq!(dirichlet_monotone(chi10(), s, &[4, 8, 16, 32, 64]), Ok(()));
    }
}
