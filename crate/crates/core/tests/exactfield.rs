use coxcoh::exactfield::{elim, minimal_polynomial, rank_with_mode, ExactMatrix, FieldSpec, RankMode, Rat};
use proptest::prelude::*;

#[test]
fn minimal_polynomials_of_small_moduli() {
    assert_eq!(minimal_polynomial(3).to_i64(), Some(vec![-1, 1]));
    assert_eq!(minimal_polynomial(4).to_i64(), Some(vec![-2, 0, 1]));
    assert_eq!(minimal_polynomial(5).to_i64(), Some(vec![-1, -1, 1]));
    for m in [4u64, 5, 7, 8, 12] {
        let root = 2.0 * (std::f64::consts::PI / m as f64).cos();
        assert!(minimal_polynomial(m).eval_f64(root).abs() < 1e-12, "M={m}");
    }
}

#[test]
fn minimal_polynomial_degree_is_half_totient() {
    let phi = |n: u64| (1..=n).filter(|k| num_integer::gcd(*k, n) == 1).count();
    for m in 4..=16u64 {
        assert_eq!(minimal_polynomial(m).degree(), Some(phi(2 * m) / 2), "M={m}");
    }
}

#[test]
fn embedded_cosines() {
    let f = FieldSpec::real_cyclotomic(10);
    assert_eq!(f.embed_cos(10).unwrap(), f.generator());
    assert!(f.embed_cos(2).unwrap().is_zero());
    assert_eq!(f.embed_cos(3).unwrap(), f.one());
    let y5 = f.embed_cos(5).unwrap();
    assert!((f.to_f64(&y5) - 2.0 * (std::f64::consts::PI / 5.0).cos()).abs() < 1e-12);
    assert!(f.embed_cos(4).is_err());
    let q3 = FieldSpec::real_cyclotomic(3);
    assert_eq!(q3.embed_cos(3).unwrap(), q3.one());
}

#[test]
fn identity_and_zero() {
    let q = FieldSpec::rationals();
    let i = ExactMatrix::identity(&q, 3);
    assert_eq!(elim::rank(&i), 3);
    assert_eq!(elim::kernel(&i).cols(), 0);
    let z = ExactMatrix::zeros(&q, 4, 5);
    assert_eq!(elim::rank(&z), 0);
    assert_eq!(elim::kernel(&z).cols(), 5);
}

#[test]
fn extension_field_inverse() {
    let f = FieldSpec::real_cyclotomic(5);
    let a = f.add(&f.from_i64(3), &f.generator());
    assert_eq!(f.mul(&a, &f.inv(&a)), f.one());
    // y² = y + 1 for y = 2cos(π/5).
    let y = f.generator();
    assert_eq!(f.mul(&y, &y), f.add(&y, &f.one()));
}

#[test]
fn modular_mode_refuses_extension_fields() {
    let f = FieldSpec::real_cyclotomic(5);
    let m = ExactMatrix::identity(&f, 2);
    assert!(rank_with_mode(&m, RankMode::Modular, 0).is_err());
    assert_eq!(rank_with_mode(&m, RankMode::Auto, 0).unwrap().rank, 2);
}

fn rational_matrix(max: usize) -> impl Strategy<Value = ExactMatrix> {
    (1..=max, 1..=max).prop_flat_map(|(r, c)| {
        prop::collection::vec((-4i64..=4, 1i64..=3), r * c).prop_map(move |v| {
            let rows: Vec<Vec<Rat>> =
                v.chunks(c).map(|row| row.iter().map(|&(n, d)| Rat::new(n, d)).collect()).collect();
            ExactMatrix::from_rows(&FieldSpec::rationals(), &rows)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_nullity_and_kernel(a in rational_matrix(8)) {
        let r = elim::rank(&a);
        let k = elim::kernel(&a);
        prop_assert_eq!(r + k.cols(), a.cols());
        prop_assert!(a.mul(&k).unwrap().is_zero());
        prop_assert_eq!(elim::rank(&a.transpose()), r);
        let img = elim::image(&a);
        prop_assert_eq!(img.cols(), r);
        prop_assert!(elim::same_column_space(&img, &a).unwrap());
    }

    #[test]
    fn modular_rank_matches_exact(a in rational_matrix(12), seed in 0u64..1000) {
        let m = rank_with_mode(&a, RankMode::Modular, seed).unwrap();
        prop_assert!(m.agreed);
        prop_assert_eq!(m.rank, elim::rank(&a));
    }

    #[test]
    fn solve_recovers_a_right_hand_side(a in rational_matrix(7)) {
        let x = ExactMatrix::from_fn(a.field(), a.cols(), 1, |i, _| a.field().from_i64(i as i64 - 2));
        let b = a.mul(&x).unwrap();
        let y = elim::solve(&a, &b).unwrap().expect("consistent system");
        prop_assert_eq!(a.mul(&y).unwrap(), b);
    }
}
