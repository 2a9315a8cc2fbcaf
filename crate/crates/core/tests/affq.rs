use lvcert::affq::*;
use lvcert::algebra::rational::{int, Rational};
use lvcert::rng;
use num_bigint::BigInt;
use proptest::prelude::*;

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 { a } else { gcd(b, a % b) }
}

fn naive_prime(n: u64) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

#[test]
fn commutator_fibers_are_uniform() {
    for (q, s) in [(3, 1), (3, 2), (5, 1), (5, 2), (7, 1)] {
        let c = com_fiber_census(q, s).unwrap();
        assert!(c.image_is_generating_tuples, "q={q} s={s}");
        assert!(c.fibers_uniform, "q={q} s={s}");
        assert_eq!(c.expected_fiber, q.pow(2 * s as u32 - 1) * (q - 1));
        c.verify().unwrap();
    }
    assert_eq!(com_fiber_census(5, 1).unwrap().expected_fiber, 20);
    assert_eq!(com_fiber_census(3, 2).unwrap().expected_fiber, 54);
}

#[test]
fn generating_tuples_count_at_least_half() {
    for n in 1..=30u64 {
        let brute = (0..n.pow(4))
            .filter(|code| {
                let digits = [code % n, code / n % n, code / n / n % n, code / n / n / n];
                digits.iter().fold(n, |g, &x| gcd(g, x)) == 1
            })
            .count() as u64;
        assert_eq!(generating_tuple_count(n, 4), BigInt::from(brute), "N={n}");
        assert!(2 * brute >= n.pow(4), "N={n}");
    }
}

#[test]
fn kp_prime_revalidates_independently() {
    let p = find_kp_prime(2, 1, 5, &[]).unwrap();
    assert_eq!(p.q, 71);
    let q = p.q;
    assert!(naive_prime(q));
    assert_ne!((q - 1) % 4, 0);
    assert_ne!((q - 1) % 3, 0);
    // c 2^{g+1} (g - 1/2)(q-1) + c 2^{g+1} < (q-1)^g, doubled to stay integral
    let lhs = 5 * 8 * (3 * (q - 1) + 2);
    assert!(lhs < 2 * (q - 1).pow(2));
    for smaller in 3..q {
        let ok = naive_prime(smaller)
            && (smaller - 1) % 4 != 0
            && (smaller - 1) % 3 != 0
            && 5 * 8 * (3 * (smaller - 1) + 2) < 2 * (smaller - 1).pow(2);
        assert!(!ok, "{smaller} would qualify");
    }
    for forb in [vec![31], vec![7], vec![5, 11]] {
        let p = find_kp_prime(2, 1, 5, &forb).unwrap();
        assert!(p.is_valid());
        assert!(forb.iter().all(|f| (p.q - 1) % f != 0));
    }
}

#[test]
fn place_residue_is_primitive_mod_odd_factors() {
    let r = find_place_residue(71, 5, 1).unwrap();
    assert_eq!(gcd(r.a, 70), 1);
    for prime in [5u64, 7] {
        let order = (1..prime).find(|&k| (0..k).fold(1, |acc, _| acc * r.a % prime) == 1).unwrap();
        assert_eq!(order, prime - 1);
    }
    for q in [3u64, 11, 23, 47, 107, 431] {
        let r = find_place_residue(q, 5, 1).unwrap();
        for c in &r.checks {
            assert_eq!(c.order, c.r - 1, "q={q}");
        }
    }
}

fn brute_kernel(t: &[Vec<u64>], n: u64, i: u64) -> u64 {
    let dim = t.len();
    let apply = |x: &[u64]| -> Vec<u64> {
        t.iter().map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum::<u64>() % n).collect()
    };
    (0..n.pow(dim as u32))
        .filter(|code| {
            let x: Vec<u64> = (0..dim).map(|k| code / n.pow(k as u32) % n).collect();
            let mut y = x.clone();
            for _ in 0..i {
                y = apply(&y);
            }
            y == x
        })
        .count() as u64
}

#[test]
fn orbit_census_on_random_similitudes() {
    for seed in 0..20u64 {
        let mut r = rng::split(11, seed);
        let lambda = 1 + seed % 6;
        let t = random_similitude(2, 7, lambda, 6, &mut r);
        assert_eq!(similitude_multiplier(2, 7, &t), Some(lambda));
        let c = frobenius_orbit_census(2, 7, &t, DEFAULT_ORBIT_CONSTANT).unwrap();
        for k in &c.kernel_sizes {
            assert_eq!(k.size, BigInt::from(brute_kernel(&t, 7, k.i)));
        }
        assert!(BigInt::from(c.small_orbit_mass) <= BigInt::from(5 * 4 * 49));
    }
}

#[test]
fn orbit_census_with_even_modulus() {
    // N = 10 = 2 * 5, multiplier 3 has order 4 mod 5
    let mut r = rng::seeded(3);
    let t = random_similitude(1, 10, 3, 4, &mut r);
    let c = frobenius_orbit_census(1, 10, &t, 5).unwrap();
    assert!(c.kernel_sizes[..3].iter().all(|k| k.bound_applies));
    assert!(!c.kernel_sizes[3].bound_applies);
}

proptest! {
    #[test]
    fn size_v_is_monotone(sizes in prop::collection::vec(1u64..20, 1..12), t1 in 1u64..25, t2 in 1u64..25) {
        let p = OrbitProfile::new(sizes).unwrap();
        let (lo, hi) = (t1.min(t2), t1.max(t2));
        let a: Rational = size_v(&p, lo).unwrap();
        let b = size_v(&p, hi).unwrap();
        prop_assert!(a <= b);
        prop_assert_eq!(size_v(&p, 1).unwrap(), int(0));
    }
}
