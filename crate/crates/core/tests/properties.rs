use beilinson_hh::hochschild::{classify_case, compute, extract_blocks, hat_d, HHReport};
use beilinson_hh::quiver::AlgebraElement;
use beilinson_hh::{Algebra, DownUpParams, Field, Matrix, Path, QuadScalar};
use proptest::prelude::*;

fn field() -> impl Strategy<Value = Field> {
    prop_oneof![Just(Field::Rational), Just(Field::Quadratic(2)), Just(Field::Quadratic(5))]
}

fn small_rational() -> impl Strategy<Value = (i64, i64)> {
    (-12i64..=12, 1i64..=9)
}

fn scalar_in(field: Field) -> impl Strategy<Value = QuadScalar> {
    (small_rational(), small_rational()).prop_map(move |((a, b), (c, e))| {
        let x = QuadScalar::from_ratio(a, b, field);
        match QuadScalar::sqrt_d(field) {
            Some(root) => &x + &(&QuadScalar::from_ratio(c, e, field) * &root),
            None => x,
        }
    })
}

fn triple() -> impl Strategy<Value = (QuadScalar, QuadScalar, QuadScalar)> {
    field().prop_flat_map(|f| (scalar_in(f), scalar_in(f), scalar_in(f)))
}

fn int_matrix(rows: usize, cols: usize) -> impl Strategy<Value = Matrix> {
    proptest::collection::vec(-3i64..=3, rows * cols).prop_map(move |v| {
        let rows_vec: Vec<Vec<QuadScalar>> =
            v.chunks(cols).map(|r| r.iter().map(|&x| QuadScalar::from_int(x, Field::Rational)).collect()).collect();
        Matrix::from_rows(rows_vec, Field::Rational).unwrap()
    })
}

fn params(n_max: usize) -> impl Strategy<Value = DownUpParams> {
    (1..=n_max, small_rational(), small_rational())
        .prop_filter("beta must be nonzero", |(_, _, (b, _))| *b != 0)
        .prop_map(|(n, a, b)| DownUpParams::rational(n, a, b).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms((x, y, z) in triple()) {
        prop_assert_eq!(&x + &y, &y + &x);
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert!((&x - &x).is_zero());
    }

    #[test]
    fn inverse_is_two_sided((x, _, _) in triple()) {
        prop_assume!(!x.is_zero());
        let inv = x.inv().unwrap();
        prop_assert!((&x * &inv).is_one());
        prop_assert_eq!(inv.inv().unwrap(), x);
    }

    #[test]
    fn scalar_text_and_json_round_trip((x, _, _) in triple()) {
        prop_assert_eq!(QuadScalar::parse(&x.to_string(), x.field()).unwrap(), x.clone());
        let json = serde_json::to_string(&x).unwrap();
        prop_assert_eq!(serde_json::from_str::<QuadScalar>(&json).unwrap(), x);
    }

    #[test]
    fn rank_is_transpose_invariant(m in int_matrix(5, 7)) {
        prop_assert_eq!(m.rank(), m.transpose().rank());
        prop_assert_eq!(m.rank() + m.kernel_dim(), m.cols());
    }

    #[test]
    fn rank_of_product_is_bounded(a in int_matrix(4, 5), b in int_matrix(5, 3)) {
        let r = a.multiply(&b).unwrap().rank();
        prop_assert!(r <= a.rank().min(b.rank()));
    }

    #[test]
    fn pow_is_additive(m in int_matrix(3, 3), i in 0u32..4, j in 0u32..4) {
        prop_assert_eq!(m.pow(i + j).unwrap(), m.pow(i).unwrap().multiply(&m.pow(j).unwrap()).unwrap());
    }

    #[test]
    fn inverse_when_full_rank(m in int_matrix(4, 4)) {
        if m.rank() == 4 {
            let inv = m.inverse().unwrap();
            prop_assert_eq!(m.multiply(&inv).unwrap(), Matrix::identity(4, Field::Rational));
        } else {
            prop_assert!(m.inverse().is_err());
        }
    }

    #[test]
    fn matrix_json_round_trip(m in int_matrix(3, 4)) {
        let json = serde_json::to_string(&m).unwrap();
        prop_assert_eq!(serde_json::from_str::<Matrix>(&json).unwrap(), m);
    }
}

/// A random normal path and a random element of one block.
fn block_elements(alg: &Algebra, seed: &[usize]) -> (Path, AlgebraElement) {
    let size = 2 * alg.n() + 2;
    let i = 1 + seed[0] % size;
    let j = i + seed[1] % (size - i + 1);
    let basis = alg.block_basis(i, j);
    let path = basis[seed[2] % basis.len()].clone();
    let mut elem = AlgebraElement::zero(alg.field());
    for (k, p) in basis.iter().enumerate() {
        elem.add_term(p.clone(), QuadScalar::from_int((seed[3] + k) as i64 % 5 - 2, alg.field()));
    }
    (path, elem)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn multiplication_is_associative(p in params(3), seed in proptest::collection::vec(0usize..1000, 12)) {
        let alg = Algebra::new(p);
        let (_, a) = block_elements(&alg, &seed[0..4]);
        let (_, b) = block_elements(&alg, &seed[4..8]);
        let (_, c) = block_elements(&alg, &seed[8..12]);
        let left = alg.multiply(&alg.multiply(&a, &b), &c);
        let right = alg.multiply(&a, &alg.multiply(&b, &c));
        prop_assert_eq!(left, right);
    }

    #[test]
    fn normal_paths_are_fixed(p in params(4), seed in proptest::collection::vec(0usize..1000, 4)) {
        let alg = Algebra::new(p);
        let (path, _) = block_elements(&alg, &seed);
        prop_assert!(alg.is_normal(&path));
        prop_assert_eq!(alg.path_normal_form(&path), alg.element(&path));
    }

    #[test]
    fn hh_closed_form_holds(p in params(4)) {
        let report = compute(&p).unwrap();
        prop_assert!(report.agree, "{:?}", report);
        prop_assert_eq!(report.brute.0, 1);
        prop_assert_eq!(report.case, classify_case(&p).unwrap());
        let json = serde_json::to_string(&report).unwrap();
        prop_assert_eq!(serde_json::from_str::<HHReport>(&json).unwrap(), report);
    }

    #[test]
    fn block_ranks_add_up(p in params(4)) {
        prop_assume!(p.n() >= 2);
        let n = p.n();
        let blocks = extract_blocks(&p).unwrap();
        let (r1, r2) = (blocks.l1.rank(), blocks.l2.rank());
        prop_assert_eq!(hat_d(&p, 2).rank(), r1 + r2);
        let report = compute(&p).unwrap();
        prop_assert_eq!(report.brute.1, 2 * n + 4 - r1 - r2);
        prop_assert_eq!(report.brute.2, blocks.m2.rows() - r1 - r2);
    }

    #[test]
    fn dual_differentials_compose_to_zero(p in params(4)) {
        prop_assert!(hat_d(&p, 2).multiply(&hat_d(&p, 1)).unwrap().is_zero());
    }
}
