use lvcert::algebra::rational::{frac, int, Rational};
use lvcert::frobcount::*;
use num_bigint::BigInt;
use proptest::prelude::*;

fn input(q: u64, n: u64, b: u64) -> CountBoundInput {
    CountBoundInput::new(q, n, b.into()).unwrap()
}

// largest N with 3 q^{(n/2+1)N} < b, even n only
fn n_terms_even(q: u64, n: u64, b: u64) -> u64 {
    let base = BigInt::from(q).pow((n / 2 + 1) as u32);
    let mut n_terms = 0;
    let mut power = base.clone();
    while power * 3u32 < BigInt::from(b) {
        n_terms += 1;
        power = BigInt::from(q).pow(((n / 2 + 1) * (n_terms + 1)) as u32);
    }
    n_terms
}

#[test]
fn bound_matches_direct_comparison() {
    for q in [2u64, 3, 4, 5, 8, 9] {
        for n in [2u64, 4, 6] {
            for b in (1..5000).step_by(7) {
                assert_eq!(centralizer_bound(&input(q, n, b)).n_terms, n_terms_even(q, n, b), "q={q} n={n} b={b}");
            }
        }
    }
    // odd n against floating point away from the boundary
    for b in (10..100_000u64).step_by(97) {
        let r = centralizer_bound(&input(3, 3, b));
        let exact = (b as f64 / 3.0).ln() / (2.5 * 3f64.ln());
        if (exact - exact.round()).abs() > 1e-6 {
            assert_eq!(r.n_terms, exact.floor() as u64, "b={b}");
        }
    }
}

#[test]
fn relative_bound_monotone_over_b() {
    let (q, n) = (2, 2);
    let mut last_n = 0;
    for b in 10..=1_000_000u64 {
        let r = centralizer_bound(&input(q, n, b));
        assert!(r.n_terms >= last_n, "b={b}");
        last_n = r.n_terms;
        if !r.vacuous {
            assert_eq!(r.bound, frac(3, 1) * Rational::from_integer(BigInt::from(b) * b) / int(r.n_terms as i64));
        }
    }
    assert_eq!(last_n, 9);
}

#[test]
fn doubling_b_never_decreases_n() {
    for q in [2u64, 3, 7] {
        for n in 2..6u64 {
            let mut b = 1u64;
            while b < 1 << 40 {
                let lo = centralizer_bound(&input(q, n, b)).n_terms;
                let hi = centralizer_bound(&input(q, n, 2 * b)).n_terms;
                assert!(hi >= lo);
                b = 2 * b + 1;
            }
        }
    }
}

#[test]
fn fejer_norm_matches_fourier_sum() {
    for n in 1..=300u64 {
        let direct: BigInt = (-(2 * n as i64)..=2 * n as i64)
            .map(|r| BigInt::from(2 * n as i64 + 1 - r.abs()).pow(2u32))
            .sum();
        assert_eq!(fejer_norm(n).unwrap(), direct);
    }
}

#[test]
fn fejer_factor_for_n_up_to_ten_thousand() {
    for n in 1..=10_000 {
        assert!(fejer_factor_holds(n).unwrap(), "N={n}");
    }
}

#[test]
fn distinct_angles_have_minimal_centralizer() {
    // 64 roots of unity: every power sum below 64 vanishes
    let s = Spectrum::new((0..64).map(|k| (frac(k, 64), 1)).collect()).unwrap();
    let r = verify_spectrum_bound(&s, 2, 2, 8).unwrap();
    assert!(r.preconditions_hold && r.holds);
    assert_eq!(r.dim_z, 64.into());
    assert_eq!(r.bound.bound, int(6144));
}

#[test]
fn paired_angles_with_cancellation() {
    // angles k/32 come in pairs +-theta, each with multiplicity 2
    let s = Spectrum::new((0..32).map(|k| (frac(k, 32), 2)).collect()).unwrap();
    assert!(s.angles.iter().all(|a| s.angles.iter().any(|o| (&o.theta + &a.theta) % int(1) == int(0))));
    let r = verify_spectrum_bound(&s, 2, 2, 8).unwrap();
    assert_eq!(r.b, 64.into());
    assert!(r.preconditions_hold);
    assert_eq!(r.dim_z, 128.into());
    assert!(r.holds);
    assert_eq!(r.bound.n_terms, 2);
}

#[test]
fn failing_constraint_is_reported() {
    let s = Spectrum::new(vec![(int(0), 60), (frac(1, 2), 4)]).unwrap();
    let r = verify_spectrum_bound(&s, 2, 2, 4).unwrap();
    assert_eq!(r.failed_at_j, Some(1));
    assert!(!r.preconditions_hold && !r.holds);
    assert!(verify_spectrum_bound(&s, 2, 2, 0).is_err());
}

proptest! {
    #[test]
    fn centralizer_dim_sandwich(ms in prop::collection::vec(1u64..20, 1..12)) {
        let k = ms.len() as i64;
        let s = Spectrum::new(ms.iter().enumerate().map(|(i, m)| (frac(i as i64, k), *m)).collect()).unwrap();
        let b = s.betti();
        let dz = s.centralizer_dim();
        prop_assert!(b <= dz && dz <= &b * &b);
    }

    #[test]
    fn n_is_largest_admissible(q in 2u64..10, n in 2u64..8, b in 1u64..1_000_000) {
        prop_assume!(CountBoundInput::new(q, n, b.into()).is_ok());
        let r = centralizer_bound(&input(q, n, b));
        if !r.vacuous {
            let lhs = BigInt::from(9) * BigInt::from(q).pow(((n + 2) * r.n_terms) as u32);
            let next = BigInt::from(9) * BigInt::from(q).pow(((n + 2) * (r.n_terms + 1)) as u32);
            prop_assert!(lhs < BigInt::from(b) * b && next >= BigInt::from(b) * b);
        }
    }
}
