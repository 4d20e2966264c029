mod common;

use homleib::linalg::{format_rational, parse_rational, rat, Matrix, Rational, Subspace};
use homleib::{AlphaTypeCochain, HomLeibnizAlgebra};
use num_traits::Zero;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

use common::{integral_rows, rank_mod_p, PRIMES};

fn runner(seed: u8, cases: u32) -> TestRunner {
    let rng = TestRng::from_seed(RngAlgorithm::ChaCha, &[seed; 32]);
    TestRunner::new_with_rng(Config::with_cases(cases), rng)
}

fn small_int() -> impl Strategy<Value = i64> {
    prop_oneof![3 => Just(0i64), 4 => -4i64..=4]
}

fn rational() -> impl Strategy<Value = Rational> {
    (small_int(), 1i64..=3).prop_map(|(n, d)| rat(n, d))
}

fn matrix(max: usize) -> impl Strategy<Value = Matrix> {
    (1..=max, 1..=max).prop_flat_map(|(r, c)| {
        proptest::collection::vec(rational(), r * c)
            .prop_map(move |v| Matrix::from_entries(r, c, v).unwrap())
    })
}

fn integer_matrix(max: usize) -> impl Strategy<Value = Matrix> {
    (1..=max, 1..=max).prop_flat_map(|(r, c)| {
        proptest::collection::vec(small_int(), r * c).prop_map(move |v| {
            Matrix::from_entries(r, c, v.into_iter().map(|x| rat(x, 1)).collect()).unwrap()
        })
    })
}

fn mat_vec(m: &Matrix, x: &[Rational]) -> Vec<Rational> {
    (0..m.rows())
        .map(|i| m.row(i).iter().zip(x).map(|(a, b)| a * b).sum())
        .collect()
}

#[test]
fn rank_plus_nullity_is_column_count() {
    runner(1, 200)
        .run(&matrix(6), |m| {
            let null = m.nullspace();
            prop_assert_eq!(m.rank() + null.dim(), m.cols());
            for v in null.basis() {
                prop_assert!(mat_vec(&m, v).iter().all(Zero::is_zero));
            }
            prop_assert_eq!(m.transpose().rank(), m.rank());
            Ok(())
        })
        .unwrap();
}

#[test]
fn solve_reproduces_the_right_hand_side() {
    let strategy = matrix(5).prop_flat_map(|m| {
        let c = m.cols();
        (Just(m), proptest::collection::vec(rational(), c))
    });
    runner(2, 200)
        .run(&strategy, |(m, x0)| {
            let b = mat_vec(&m, &x0);
            let x = m.solve(&b).unwrap().expect("b is in the column space");
            prop_assert_eq!(mat_vec(&m, &x), b);
            Ok(())
        })
        .unwrap();
}

#[test]
fn solve_reports_inconsistency_exactly_when_rank_grows() {
    let strategy = matrix(5).prop_flat_map(|m| {
        let r = m.rows();
        (Just(m), proptest::collection::vec(rational(), r))
    });
    runner(3, 200)
        .run(&strategy, |(m, b)| {
            let cols: Vec<Vec<Rational>> = (0..m.cols())
                .map(|j| m.column(j))
                .chain([b.clone()])
                .collect();
            let augmented = Matrix::from_columns(m.rows(), &cols).unwrap();
            let consistent = augmented.rank() == m.rank();
            prop_assert_eq!(m.solve(&b).unwrap().is_some(), consistent);
            prop_assert!(m.solve(&b[..b.len() - 1]).is_err());
            Ok(())
        })
        .unwrap();
}

#[test]
fn exact_rank_agrees_with_two_primes() {
    runner(4, 200)
        .run(&integer_matrix(7), |m| {
            let rows = integral_rows(&m);
            for p in PRIMES {
                prop_assert_eq!(rank_mod_p(&rows, p), m.rank());
            }
            Ok(())
        })
        .unwrap();
}

#[test]
fn span_membership() {
    let strategy = matrix(4).prop_flat_map(|m| {
        let c = m.cols();
        (Just(m), proptest::collection::vec(rational(), c))
    });
    runner(5, 200)
        .run(&strategy, |(m, coeffs)| {
            let cols: Vec<Vec<Rational>> = (0..m.cols()).map(|j| m.column(j)).collect();
            let s = Subspace::span(m.rows(), &cols).unwrap();
            prop_assert_eq!(s.dim(), m.rank());
            prop_assert!(s.contains(&mat_vec(&m, &coeffs)).unwrap());
            prop_assert!(s.contains(&vec![Rational::zero(); m.rows()]).unwrap());
            Ok(())
        })
        .unwrap();
}

#[test]
fn rational_strings_round_trip() {
    runner(6, 500)
        .run(&(any::<i32>(), 1i32..=i32::MAX), |(n, d)| {
            let q = rat(n as i64, d as i64);
            let s = format_rational(&q);
            prop_assert_eq!(parse_rational(&s), Some(q.clone()));
            prop_assert!(!s.contains('.'));
            Ok(())
        })
        .unwrap();
}

fn algebra(d: usize) -> impl Strategy<Value = HomLeibnizAlgebra> {
    (
        proptest::collection::vec(rational(), d * d * d),
        proptest::collection::vec(rational(), d * d),
    )
        .prop_map(move |(c, a)| {
            HomLeibnizAlgebra::new(d, c, Matrix::from_entries(d, d, a).unwrap()).unwrap()
        })
}

#[test]
fn bracket_is_bilinear() {
    let strategy = (1usize..=3).prop_flat_map(|d| {
        let v = || proptest::collection::vec(rational(), d);
        (algebra(d), v(), v(), v(), rational())
    });
    runner(7, 200)
        .run(&strategy, |(l, x, y, z, s)| {
            let sum: Vec<Rational> = x.iter().zip(&y).map(|(a, b)| a + &s * b).collect();
            let lhs = l.bracket_eval(&sum, &z).unwrap();
            let bx = l.bracket_eval(&x, &z).unwrap();
            let by = l.bracket_eval(&y, &z).unwrap();
            let rhs: Vec<Rational> = bx.iter().zip(&by).map(|(a, b)| a + &s * b).collect();
            prop_assert_eq!(lhs, rhs);
            let rhs2 = l.bracket_eval(&z, &x).unwrap();
            let lhs2 = l
                .bracket_eval(&z, &x.iter().map(|a| &s * a).collect::<Vec<_>>())
                .unwrap();
            prop_assert_eq!(lhs2, rhs2.iter().map(|a| &s * a).collect::<Vec<_>>());
            Ok(())
        })
        .unwrap();
}

#[test]
fn alpha_powers_compose() {
    let strategy = (1usize..=3).prop_flat_map(|d| {
        (
            algebra(d),
            proptest::collection::vec(rational(), d),
            0usize..4,
            0usize..4,
        )
    });
    runner(8, 200)
        .run(&strategy, |(l, x, j, k)| {
            let once = l.alpha_power_eval(j + k, &x).unwrap();
            let twice = l
                .alpha_power_eval(j, &l.alpha_power_eval(k, &x).unwrap())
                .unwrap();
            prop_assert_eq!(once, twice);
            prop_assert_eq!(l.alpha_power_eval(0, &x).unwrap(), x);
            Ok(())
        })
        .unwrap();
}

#[test]
fn cochains_flatten_and_rebuild() {
    let strategy = (1usize..=3, 1usize..=3).prop_flat_map(|(d, n)| {
        let len = AlphaTypeCochain::ambient_dim(d, n);
        (Just(d), Just(n), proptest::collection::vec(rational(), len))
    });
    runner(9, 200)
        .run(&strategy, |(d, n, flat)| {
            let c = AlphaTypeCochain::from_flat(d, n, &flat).unwrap();
            prop_assert_eq!(c.flatten(), flat.clone());
            prop_assert_eq!(c.gamma_part().arity(), n);
            prop_assert_eq!(c.alpha_part().map(|p| p.arity()), (n >= 2).then_some(n - 1));
            prop_assert!(AlphaTypeCochain::from_flat(d, n, &flat[1..]).is_err());
            Ok(())
        })
        .unwrap();
}
