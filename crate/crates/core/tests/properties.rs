use std::collections::HashSet;
use std::sync::Arc;

use proptest::prelude::*;

use motzkin::algebra::{pairing, AlgElem};
use motzkin::bimodules::{fuse, FusionLabel};
use motzkin::scalars::{parse_rational, Field, Param, Scalar, Q};
use motzkin::tangles::{enumerate_tangles, Tangle};

fn cyclotomic_scalar(field: &Arc<Field>) -> impl Strategy<Value = Scalar> {
    let deg = field.base_degree();
    let field = field.clone();
    prop::collection::vec((-6i64..=6, 1i64..=4), deg).prop_map(move |cs| {
        let coords = cs.into_iter().map(|(n, d)| Q::new(n.into(), d.into())).collect();
        Scalar::from_coords(Some(field.clone()), coords)
    })
}

fn param() -> impl Strategy<Value = Param> {
    prop_oneof![
        (3i64..=9, 1i64..=2).prop_map(|(n, d)| Param::rational(n, d).unwrap()),
        (4u32..=7).prop_map(|nu| Param::root_of_unity(nu).unwrap()),
    ]
}

fn element(param: Param, n: usize) -> impl Strategy<Value = AlgElem> {
    let basis = enumerate_tangles(n, n).unwrap();
    let len = basis.len();
    prop::collection::vec((0..len, -3i64..=3), 1..=4).prop_map(move |terms| {
        terms.into_iter().fold(AlgElem::zero(&param, (n, n)), |acc, (i, c)| {
            acc.try_add(&AlgElem::from_term(&param, basis[i].clone(), Scalar::from_int(c))).unwrap()
        })
    })
}

fn triple() -> impl Strategy<Value = (AlgElem, AlgElem, AlgElem)> {
    (param(), 1usize..=3).prop_flat_map(|(p, n)| (element(p.clone(), n), element(p.clone(), n), element(p, n)))
}

fn tangle() -> impl Strategy<Value = Tangle> {
    (0usize..=4, 0usize..=4)
        .prop_filter("nonempty boundary", |(m, n)| m + n > 0)
        .prop_flat_map(|(m, n)| {
            let all = enumerate_tangles(m, n).unwrap();
            let len = all.len();
            (0..len).prop_map(move |i| all[i].clone())
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn cyclotomic_field_axioms(
        (a, b, c) in (5u32..=9).prop_flat_map(|nu| {
            let f = Field::real_cyclotomic(nu);
            (cyclotomic_scalar(&f), cyclotomic_scalar(&f), cyclotomic_scalar(&f))
        })
    ) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn sign_agrees_with_float_value(a in cyclotomic_scalar(&Field::real_cyclotomic(7))) {
        let f = a.to_f64();
        if f.abs() > 1e-9 {
            prop_assert_eq!(a.is_positive(), f > 0.0);
        }
    }

    #[test]
    fn multiplication_is_associative((x, y, z) in triple()) {
        let lhs = x.multiply(&y).unwrap().multiply(&z).unwrap();
        let rhs = x.multiply(&y.multiply(&z).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn star_reverses_products((x, y, _) in triple()) {
        let lhs = x.multiply(&y).unwrap().star();
        let rhs = y.star().multiply(&x.star()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(x.star().star(), x);
    }

    #[test]
    fn trace_is_tracial_and_preserved_by_expectation((x, y, _) in triple()) {
        prop_assert_eq!(x.multiply(&y).unwrap().trace().unwrap(), y.multiply(&x).unwrap().trace().unwrap());
        prop_assert_eq!(x.cond_expect().unwrap().trace().unwrap(), x.trace().unwrap());
        prop_assert_eq!(pairing(&x, &y).unwrap(), x.multiply(&y.star()).unwrap().trace().unwrap());
    }

    #[test]
    fn embedding_preserves_products((x, y, _) in triple()) {
        let lhs = x.multiply(&y).unwrap().embed(1);
        let rhs = x.embed(1).multiply(&y.embed(1)).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(x.embed(1).trace().unwrap(), x.trace().unwrap());
    }

    #[test]
    fn tangle_text_and_json_round_trip(t in tangle()) {
        prop_assert_eq!(t.to_string().parse::<Tangle>().unwrap(), t.clone());
        prop_assert_eq!(Tangle::from_json(&t.to_json()).unwrap(), t.clone());
        prop_assert_eq!(t.adjoint().adjoint(), t.clone());
        prop_assert_eq!(t.adjoint().shape(), (t.bottom(), t.top()));
    }

    #[test]
    fn enumeration_is_distinct_and_deterministic(m in 0usize..=4, n in 0usize..=4) {
        let ts = enumerate_tangles(m, n).unwrap();
        let distinct: HashSet<_> = ts.iter().collect();
        prop_assert_eq!(distinct.len(), ts.len());
        prop_assert_eq!(&enumerate_tangles(m, n).unwrap(), &ts);
        prop_assert!(ts.iter().all(|t| t.shape() == (m, n)));
    }

    #[test]
    fn rational_parsing_round_trips(n in -1000i64..1000, d in 1i64..1000) {
        let q = Q::new(n.into(), d.into());
        prop_assert_eq!(parse_rational(&q.to_string()).unwrap(), q);
    }

    #[test]
    fn fusion_is_commutative_and_associative(
        nu in prop::option::of(4u32..=8),
        k1 in 0usize..=3, k2 in 0usize..=3, k3 in 0usize..=3,
        s1 in 0usize..=3, s2 in 0usize..=3, s3 in 0usize..=3,
    ) {
        let param = match nu {
            Some(nu) => Param::root_of_unity(nu).unwrap(),
            None => Param::rational(4, 1).unwrap(),
        };
        let cap = param.cap();
        let lab = |k: usize, s: usize| {
            let top = cap.map_or(k, |c| c.min(k));
            FusionLabel::new(k, s.min(top), &param).unwrap()
        };
        let (a, b, c) = (lab(k1, s1), lab(k2, s2), lab(k3, s3));
        prop_assert_eq!(fuse(a, b, cap).labels, fuse(b, a, cap).labels);
        let mut left: Vec<_> = fuse(a, b, cap).labels.into_iter().flat_map(|x| fuse(x, c, cap).labels).collect();
        let mut right: Vec<_> = fuse(b, c, cap).labels.into_iter().flat_map(|x| fuse(a, x, cap).labels).collect();
        left.sort();
        right.sort();
        prop_assert_eq!(left, right);
    }
}
