use h5::exactalg::{parse_rational_function, CRational, Context, MatRF, MultiPoly, RationalFunction};
use h5::gauge::{asd_residuals, gauge_transform, random_polynomial_connection};
use h5::heisenberg::{apply_field, d0, d0_form, d1, d1_form, group_inverse, group_mul, pullback_left, FieldId, GroupPoint};
use h5::realslice::{hv_split, sd_asd_split, star_contract, RealForm};
use h5::so6model::{h_matrix, h_matrix_coordinates};
use h5::twistor::{exact_roundtrip, Chart, TwistorPoint};
use proptest::prelude::*;

fn abc() -> Context {
    Context::new(&["a", "b", "c"])
}

fn crational() -> impl Strategy<Value = CRational> {
    (-6i64..=6, -3i64..=3, 1i64..=4).prop_map(|(re, im, d)| {
        let c = CRational::complex(re, im);
        &c * &CRational::ratio(1, d)
    })
}

fn real_rational() -> impl Strategy<Value = CRational> {
    (-9i64..=9, 1i64..=5).prop_map(|(n, d)| CRational::ratio(n, d))
}

fn poly(nvars: usize, max_terms: usize, max_deg: u16) -> impl Strategy<Value = Vec<(Vec<u16>, CRational)>> {
    prop::collection::vec((prop::collection::vec(0..=max_deg, nvars), crational()), 0..=max_terms)
}

fn build(ctx: &Context, terms: Vec<(Vec<u16>, CRational)>) -> MultiPoly {
    MultiPoly::from_terms(ctx, terms.into_iter().map(|(m, c)| (c, m)))
}

fn nonzero(ctx: &Context, terms: Vec<(Vec<u16>, CRational)>) -> MultiPoly {
    let p = build(ctx, terms);
    if p.is_zero() {
        MultiPoly::int(ctx, 1)
    } else {
        p
    }
}

fn quotient(ctx: &Context, n: Vec<(Vec<u16>, CRational)>, d: Vec<(Vec<u16>, CRational)>) -> RationalFunction {
    RationalFunction::from_parts(build(ctx, n), nonzero(ctx, d)).unwrap()
}

fn point() -> impl Strategy<Value = GroupPoint<CRational>> {
    prop::array::uniform5(crational()).prop_map(GroupPoint::from_array)
}

fn heis_poly() -> impl Strategy<Value = RationalFunction> {
    poly(5, 4, 2).prop_map(|t| RationalFunction::from_poly(build(&Context::heisenberg(), t)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn ring_axioms(x in poly(3, 4, 2), y in poly(3, 4, 2), z in poly(3, 4, 2)) {
        let ctx = abc();
        let (x, y, z) = (build(&ctx, x), build(&ctx, y), build(&ctx, z));
        prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert!((&x - &x).is_zero());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn equality_ignores_representation(n in poly(3, 3, 2), d in poly(3, 2, 1), k in poly(3, 2, 1)) {
        let ctx = abc();
        let (n, d, k) = (build(&ctx, n), nonzero(&ctx, d), nonzero(&ctx, k));
        let f = RationalFunction::from_parts(n.clone(), d.clone()).unwrap();
        let g = RationalFunction::from_parts(&n * &k, &d * &k).unwrap();
        prop_assert_eq!(&f, &f);
        prop_assert_eq!(&f, &g);
        prop_assert_eq!(&g, &f);
    }

    #[test]
    fn inverse_is_two_sided(n in poly(3, 3, 2), d in poly(3, 3, 2)) {
        let ctx = abc();
        let f = RationalFunction::from_parts(nonzero(&ctx, n), nonzero(&ctx, d)).unwrap();
        let fi = f.inv().unwrap();
        prop_assert_eq!(&f * &fi, RationalFunction::one(&ctx));
        prop_assert_eq!(&fi * &f, RationalFunction::one(&ctx));
    }

    #[test]
    fn partials_commute(n in poly(3, 3, 2), d in poly(3, 2, 1), i in 0usize..3, j in 0usize..3) {
        let f = quotient(&abc(), n, d);
        prop_assert_eq!(f.derivative(i).derivative(j), f.derivative(j).derivative(i));
    }

    #[test]
    fn display_parse_roundtrip(n in poly(3, 3, 3), d in poly(3, 2, 2)) {
        let ctx = abc();
        let f = quotient(&ctx, n, d);
        prop_assert_eq!(parse_rational_function(&f.to_string(), &ctx).unwrap(), f);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn group_law_associative(a in point(), b in point(), c in point()) {
        prop_assert_eq!(group_mul(&group_mul(&a, &b), &c), group_mul(&a, &group_mul(&b, &c)));
        prop_assert!(group_mul(&a, &group_inverse(&a)).is_origin());
    }

    #[test]
    fn h_matrix_is_injective_homomorphism(a in point(), b in point()) {
        prop_assert_eq!(h_matrix_coordinates(&h_matrix(&a)), a.clone());
        let prod = h_matrix(&a).mul(&h_matrix(&b)).unwrap();
        prop_assert_eq!(h_matrix_coordinates(&prod), group_mul(&a, &b));
    }

    #[test]
    fn twistor_transition_roundtrip(w in prop::array::uniform3(crational()), z in crational()) {
        prop_assume!(z != CRational::from_int(0));
        let p = TwistorPoint::new(Chart::W, [w[0].clone(), w[1].clone(), w[2].clone(), z]);
        prop_assert!(exact_roundtrip(&p).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn fields_are_left_invariant(g in point(), f in heis_poly()) {
        for id in FieldId::ALL {
            prop_assert_eq!(apply_field(id, &pullback_left(&f, &g).unwrap()).unwrap(), pullback_left(&apply_field(id, &f).unwrap(), &g).unwrap());
        }
    }

    #[test]
    fn horizontal_d_squares_to_zero(f in heis_poly()) {
        prop_assert!(d0_form(&d0(&f).unwrap()).unwrap().is_zero());
        prop_assert!(d1_form(&d1(&f).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn star_contraction_splits_horizontal_forms(c in prop::collection::vec(real_rational(), 6)) {
        let ctx = Context::real();
        let mut w = RealForm::zero(&ctx);
        for (m, k) in [0b0011u8, 0b0101, 0b1001, 0b0110, 0b1010, 0b1100].iter().zip(&c) {
            w = w.add(&RealForm::monomial(*m, RationalFunction::constant(&ctx, k.clone())));
        }
        prop_assert_eq!(star_contract(&star_contract(&w)), w.clone());
        let (sd, asd) = sd_asd_split(&w).unwrap();
        prop_assert_eq!(sd.add(&asd), w.clone());
        prop_assert_eq!(star_contract(&sd), sd.clone());
        let split = hv_split(&w.wedge(&RealForm::basis(0)));
        prop_assert_eq!(split.horizontal.add(&split.vertical), w.wedge(&RealForm::basis(0)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn residuals_are_gauge_covariant(seed in any::<u64>(), u in real_rational(), w in real_rational(), v in 0usize..5) {
        let ctx = Context::heisenberg();
        let phi = random_polynomial_connection(&ctx, 2, seed).unwrap();
        let one = RationalFunction::one(&ctx);
        let zero = RationalFunction::zero(&ctx);
        let lin = &RationalFunction::constant(&ctx, u) * &RationalFunction::var(&ctx, ctx.name(v)).unwrap();
        let g = MatRF::from_rows(vec![vec![one.clone(), lin], vec![zero.clone(), one.clone()]]).unwrap()
            .mul(&MatRF::from_rows(vec![vec![one.clone(), zero], vec![RationalFunction::constant(&ctx, w), one]]).unwrap())
            .unwrap();
        let lhs = asd_residuals(&gauge_transform(&phi, &g).unwrap()).unwrap();
        let rhs = asd_residuals(&phi).unwrap().conjugate(&g).unwrap();
        prop_assert!(lhs.equals(&rhs));
    }
}
