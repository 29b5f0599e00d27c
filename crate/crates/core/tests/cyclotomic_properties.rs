use gentrig::cyclotomic::{
    addition_rule, cubic_form, det_constant, factorial_identity_check, CyclotomicSystem,
};
use gentrig::C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn in_disc(rng: &mut ChaCha8Rng, radius: f64) -> C64 {
    C64::from_polar(
        radius * rng.gen::<f64>().sqrt(),
        rng.gen_range(0.0..std::f64::consts::TAU),
    )
}

#[test]
fn addition_theorem_on_unit_bidisc() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for m in 2..=6 {
        let sys = CyclotomicSystem::new(m).unwrap();
        for _ in 0..20 {
            let (x1, x2) = (in_disc(&mut rng, 1.0), in_disc(&mut rng, 1.0));
            for l in 0..m {
                let rule = addition_rule(m, l).unwrap();
                let lhs = sys.eval_s(l, x1 + x2).unwrap();
                assert!((lhs - sys.apply_addition(&rule, x1, x2).unwrap()).norm() <= 1e-9);
            }
        }
    }
}

#[test]
fn shift_determinant_is_constant() {
    let mut rng = ChaCha8Rng::seed_from_u64(32);
    for m in 2..=7 {
        let sys = CyclotomicSystem::new(m).unwrap();
        let d0 = sys.det_m(C64::new(0.0, 0.0)).unwrap();
        assert!((d0 - det_constant(m)).norm() < 1e-14);
        for _ in 0..20 {
            let x = in_disc(&mut rng, 2.0);
            assert!((sys.det_m(x).unwrap() - d0).norm() <= 1e-8, "m={m} x={x}");
        }
    }
}

#[test]
fn cubic_form_on_real_line() {
    let mut rng = ChaCha8Rng::seed_from_u64(33);
    let sys = CyclotomicSystem::new(3).unwrap();
    for _ in 0..100 {
        let x = C64::new(rng.gen_range(-3.0..=3.0), 0.0);
        let v = cubic_form(&sys.eval_s_all(x).unwrap());
        assert!((v + 1.0).norm() <= 1e-9);
    }
}

#[test]
fn series_direct_and_rescaled_paths_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(34);
    for m in 1..=6 {
        let sys = CyclotomicSystem::new(m).unwrap();
        let general = sys.general_system().unwrap();
        for _ in 0..10 {
            let x = in_disc(&mut rng, 2.0);
            for l in 0..m {
                let direct = sys.eval_s(l, x).unwrap();
                let series = sys.taylor_eval(l, x, 170 / m).unwrap();
                let (_, rescaled) = sys.rescale_with(&general, l, x).unwrap();
                assert!((direct - series).norm() <= 1e-10);
                assert!((rescaled - sys.rescale_factor(l) * direct).norm() <= 1e-10);
            }
        }
    }
}

#[test]
fn factorial_identity_up_to_sixty() {
    for n in (3..=60).step_by(3) {
        let r = factorial_identity_check(n).unwrap();
        assert!(r.holds, "n={n}");
        assert_eq!(
            r.sum_b_all_orders,
            &r.sum_b * num_rational::BigRational::from_integer(6.into())
        );
    }
}
