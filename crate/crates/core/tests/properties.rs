use nilorbit_core::lie::{LieType, RootSystem, Weight};
use nilorbit_core::poly::{divides_linear, nullspace, MultiPoly, RationalMatrix};
use nilorbit_core::Q;
use proptest::prelude::*;

const TYPES: [&str; 8] = ["A3", "B3", "C3", "D4", "G2", "F4", "B4", "E6"];

fn q(n: i64) -> Q {
    Q::from_integer(n.into())
}

fn linear(coeffs: &[i64]) -> MultiPoly {
    let n = coeffs.len();
    coeffs
        .iter()
        .enumerate()
        .fold(MultiPoly::zero(n), |acc, (i, &c)| acc.add(&MultiPoly::var(n, i).scale(&q(c))).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn simple_reflections_are_isometric_involutions(
        t in 0..TYPES.len(),
        coords in prop::collection::vec(-6i64..=6, 6),
        i in 0usize..6,
    ) {
        let r = RootSystem::new(TYPES[t].parse().unwrap()).unwrap();
        let x = Weight::from_ints(&coords[..r.rank()]);
        let i = i % r.rank();
        let y = r.simple_reflection(i, &x).unwrap();
        prop_assert_eq!(r.simple_reflection(i, &y).unwrap(), x.clone());
        prop_assert_eq!(r.norm_sq(&y), r.norm_sq(&x));
    }

    #[test]
    fn divisibility_by_linear_forms(
        l in prop::collection::vec(-3i64..=3, 3).prop_filter("nonzero", |v| v.iter().any(|&c| c != 0)),
        g in prop::collection::vec(-3i64..=3, 3),
        h in prop::collection::vec(-3i64..=3, 3),
        c in (1i64..=5),
    ) {
        let (l, g, h) = (linear(&l), linear(&g), linear(&h));
        let f = l.mul(&g).unwrap().mul(&h).unwrap();
        prop_assert!(divides_linear(&l, &f).unwrap());
        // on the hyperplane the shifted product is the nonzero constant c
        let shifted = f.add(&MultiPoly::constant(3, q(c))).unwrap();
        prop_assert!(!divides_linear(&l, &shifted).unwrap());
    }

    #[test]
    fn nullspace_vectors_are_annihilated(
        rows in prop::collection::vec(prop::collection::vec(-2i64..=2, 5), 1..5),
    ) {
        let m = RationalMatrix::from_int_rows(&rows);
        let kernel = nullspace(&m);
        for v in &kernel {
            prop_assert!(m.mul_vec(v).iter().all(|x| *x == q(0)));
        }
        prop_assert_eq!(m.rank() + kernel.len(), m.cols());
    }

    #[test]
    fn root_counts_ignore_simple_root_order(
        t in 0..TYPES.len(),
        perm in Just((0..6).collect::<Vec<usize>>()).prop_shuffle(),
    ) {
        let lt: LieType = TYPES[t].parse().unwrap();
        let n = lt.rank();
        let order: Vec<usize> = perm.into_iter().filter(|&k| k < n).collect();
        let c = lt.cartan_matrix();
        let permuted: Vec<Vec<i64>> = order.iter().map(|&i| order.iter().map(|&j| c[i][j]).collect()).collect();
        let a = RootSystem::new(lt).unwrap();
        let b = RootSystem::from_cartan(lt, permuted).unwrap();
        prop_assert_eq!(a.num_roots(), b.num_roots());
        prop_assert_eq!(a.long_roots().len(), b.long_roots().len());
        prop_assert_eq!(a.xi().len(), b.xi().len());
    }
}
