use lvcert::algebra::{Field, FiniteField, Gf, Matrix};
use lvcert::rng;
use lvcert::semilinear::*;
use rand::Rng;

fn all_matrices(f: &FiniteField, d: usize) -> impl Iterator<Item = Matrix<Gf>> + '_ {
    let q = f.order();
    (0..q.pow((d * d) as u32)).map(move |mut code| {
        let data = (0..d * d)
            .map(|_| {
                let x = Gf(code % q);
                code /= q;
                x
            })
            .collect();
        Matrix::from_vec(d, d, data).unwrap()
    })
}

#[test]
fn dimension_matches_brute_force_count() {
    for (p, e, d) in [(2, 2, 2), (3, 2, 2), (2, 3, 1), (5, 2, 1), (2, 1, 3)] {
        let f = FiniteField::new(p, e).unwrap();
        for seed in 0..3 {
            let module = SemilinearModule::random(f.clone(), d, &mut rng::split(5, seed));
            let m = module.matrix();
            let count = all_matrices(&f, d)
                .filter(|x| x.mul(&f, m).unwrap() == m.mul(&f, &frobenius_matrix(&f, x)).unwrap())
                .count() as u64;
            assert_eq!(count, p.pow(centralizer_dim_f(&module) as u32), "p={p} e={e} d={d}");
        }
    }
}

#[test]
fn five_hundred_seeded_trials() {
    let primes = [2u64, 3, 5];
    let mut violations = 0;
    for i in 0..500u64 {
        let mut pick = rng::split(2024, i);
        let p = primes[pick.gen_range(0..3)];
        let e = pick.gen_range(1..=4u32);
        let d = pick.gen_range(1..=4usize);
        match centralizer_trial(p, e, d, 42, i) {
            Ok(r) => assert!(r.dim_f <= d * d),
            Err(_) => violations += 1,
        }
    }
    assert_eq!(violations, 0);
}

#[test]
fn conjugation_invariance_and_closure() {
    for (p, e, d) in [(3, 2, 3), (2, 4, 2), (5, 3, 2)] {
        let f = FiniteField::new(p, e).unwrap();
        for seed in 0..5 {
            let mut r = rng::split(77, seed);
            let module = SemilinearModule::random(f.clone(), d, &mut r);
            let g = SemilinearModule::random(f.clone(), d, &mut r).matrix().clone();
            let conj = module.conjugate(&g).unwrap();
            let a = verify_centralizer_lemma(&module).unwrap();
            let b = verify_centralizer_lemma(&conj).unwrap();
            assert_eq!((a.dim_f, a.dim_e), (b.dim_f, b.dim_e));

            let basis = centralizer_basis_f(&module);
            let m = module.matrix();
            let commutes = |x: &Matrix<Gf>| x.mul(&f, m).unwrap() == m.mul(&f, &frobenius_matrix(&f, x)).unwrap();
            assert!(commutes(&Matrix::identity(&f, d).scale(&f, &f.from_int(p as i64 - 1))));
            for x in &basis {
                for y in &basis {
                    assert!(commutes(&x.mul(&f, y).unwrap()));
                }
            }
            // phi commutes with every element of its centralizer as maps
            let v: Vec<Gf> = (0..d).map(|_| f.random(&mut r)).collect();
            for x in &basis {
                assert_eq!(module.apply(&x.mul_vec(&f, &v)), x.mul_vec(&f, &module.apply(&v)));
            }
        }
    }
}
