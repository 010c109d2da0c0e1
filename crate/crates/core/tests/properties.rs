use proptest::prelude::*;

use freecurve::derivation::Derivation;
use freecurve::eigenscheme::eigenscheme_of;
use freecurve::gradedlin::{monomial_basis, Finiteness};
use freecurve::pencil::Pencil;
use freecurve::poly::{det3, dot, wedge};
use freecurve::singular::{singular_locus, tjurina_total};
use freecurve::{FieldId, Poly, Scalar};

const P: u64 = 65537;

fn gf() -> FieldId {
    FieldId::fp(P).unwrap()
}

fn scalar(field: FieldId) -> BoxedStrategy<Scalar> {
    match field {
        FieldId::Q => (-1000i64..1000, 1i64..50)
            .prop_map(|(a, b)| Scalar::from_i64(FieldId::Q, a).try_div(&Scalar::from_i64(FieldId::Q, b)).unwrap())
            .boxed(),
        FieldId::QI => (-50i64..50, -50i64..50)
            .prop_map(|(a, b)| {
                let i = Scalar::imaginary_unit();
                Scalar::from_i64(FieldId::QI, a) + Scalar::from_i64(FieldId::QI, b) * i
            })
            .boxed(),
        f => (0..f.characteristic() as i64).prop_map(move |a| Scalar::from_i64(f, a)).boxed(),
    }
}

fn any_field() -> impl Strategy<Value = FieldId> {
    prop_oneof![
        Just(FieldId::Q),
        Just(FieldId::QI),
        Just(gf()),
        Just(FieldId::fp(7).unwrap()),
    ]
}

fn form(field: FieldId, d: u32) -> impl Strategy<Value = Poly> {
    let n = monomial_basis(d).len();
    proptest::collection::vec(-9i64..10, n).prop_map(move |cs| {
        Poly::from_terms(
            field,
            monomial_basis(d).into_iter().zip(cs).map(|(m, c)| (m, Scalar::from_i64(field, c))),
        )
    })
}

/// Dense form over GF(p) with uniformly random coefficients.
fn generic_form(d: u32) -> impl Strategy<Value = Poly> {
    let n = monomial_basis(d).len();
    proptest::collection::vec(0..P as i64, n).prop_map(move |cs| {
        Poly::from_terms(
            gf(),
            monomial_basis(d).into_iter().zip(cs).map(|(m, c)| (m, Scalar::from_i64(gf(), c))),
        )
    })
}

fn triple(field: FieldId, d: u32) -> impl Strategy<Value = [Poly; 3]> {
    (form(field, d), form(field, d), form(field, d)).prop_map(|(a, b, c)| [a, b, c])
}

fn field_and_scalars() -> impl Strategy<Value = (Scalar, Scalar, Scalar)> {
    any_field().prop_flat_map(|f| (scalar(f), scalar(f), scalar(f)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn field_axioms((a, b, c) in field_and_scalars()) {
        let f = a.field();
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &f.zero(), a.clone());
        prop_assert_eq!(&a * &f.one(), a.clone());
        prop_assert!((&a - &a).is_zero());
        if a.is_zero() {
            prop_assert!(a.inv().is_err());
        } else {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn leibniz_rule(
        (coeffs, f, g) in (any_field(), 0u32..3, 1u32..4, 1u32..4)
            .prop_flat_map(|(field, n, df, dg)| (triple(field, n), form(field, df), form(field, dg)))
    ) {
        prop_assume!(coeffs.iter().any(|c| !c.is_zero()));
        let d = Derivation::new(coeffs).unwrap();
        let lhs = d.apply(&(&f * &g)).unwrap();
        let rhs = &(&d.apply(&f).unwrap() * &g) + &(&f * &d.apply(&g).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn euler_identity((f, d) in (any_field(), 1u32..7).prop_flat_map(|(field, d)| (form(field, d), Just(d)))) {
        let field = f.field();
        let e = Derivation::euler(field);
        prop_assert_eq!(e.apply(&f).unwrap(), f.scale(&field.int(d as i64)));
    }

    #[test]
    fn det3_is_alternating(c1 in triple(FieldId::Q, 1), c2 in triple(FieldId::Q, 2), c3 in triple(FieldId::Q, 1)) {
        let d = det3(&c1, &c2, &c3);
        prop_assert_eq!(det3(&c2, &c1, &c3), -&d);
        prop_assert_eq!(det3(&c1, &c3, &c2), -&d);
        prop_assert_eq!(det3(&c3, &c2, &c1), -&d);
        prop_assert_eq!(det3(&c2, &c3, &c1), d.clone());
        prop_assert!(det3(&c1, &c1, &c3).is_zero());
        prop_assert!(det3(&c1, &c2, &c2).is_zero());
    }

    #[test]
    fn minors_are_consistent(coeffs in (1u32..4).prop_flat_map(|n| triple(FieldId::Q, n))) {
        prop_assume!(coeffs.iter().any(|c| !c.is_zero()));
        let d = Derivation::new(coeffs.clone()).unwrap();
        let g = eigenscheme_of(&d).unwrap();
        let xyz = Poly::coords(FieldId::Q);
        let m = g.minors();
        prop_assert_eq!(m, &wedge(&xyz, &coeffs));
        prop_assert!(dot(&xyz, m).is_zero());
        prop_assert!(dot(&coeffs, m).is_zero());
        // each minor is a determinant against a coordinate vector
        for (k, e) in [[1, 0, 0], [0, 1, 0], [0, 0, 1]].iter().enumerate() {
            let col = e.map(|v| Poly::int(FieldId::Q, v));
            prop_assert_eq!(&det3(&xyz, &coeffs, &col), &m[k]);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn generic_eigenscheme_length(
        coeffs in (1u32..4).prop_flat_map(|n| (generic_form(n), generic_form(n), generic_form(n)))
    ) {
        let d = Derivation::new([coeffs.0, coeffs.1, coeffs.2]).unwrap();
        let g = eigenscheme_of(&d).unwrap();
        if let Finiteness::Finite(l) = g.finiteness() {
            prop_assert_eq!(l, g.expected_length());
        }
    }

    #[test]
    fn pencil_decomposition(
        (f, g) in (2u32..4, 2u32..4).prop_flat_map(|(n, m)| (generic_form(n), generic_form(m)))
    ) {
        let Ok(pen) = Pencil::new(f, g) else { return Ok(()) };
        let Ok(a) = pen.analyze() else { return Ok(()) };
        if let (Some(b), Some(z), Some(t)) = (a.base.length(), a.z.length(), a.gamma.length()) {
            prop_assert_eq!(b + z, t);
            prop_assert_eq!(z, pen.expected_z_length());
            prop_assert_eq!(a.decomposition, Some(true));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    /// Line arrangements have only rational singular points, so the global
    /// Tjurina number must equal the sum of the local ones.
    #[test]
    fn tjurina_two_paths(lines in proptest::collection::vec((-3i64..4, -3i64..4, -3i64..4), 3..7)) {
        let q = FieldId::Q;
        let mut polys: Vec<Poly> = Vec::new();
        for (a, b, c) in lines {
            let l = Poly::from_terms(q, monomial_basis(1).into_iter().zip([a, b, c]).map(|(m, v)| (m, q.int(v))));
            prop_assume!(!l.is_zero());
            // distinct lines only
            prop_assume!(polys.iter().all(|h| wedge(&h.gradient(), &l.gradient()).iter().any(|w| !w.is_zero())));
            polys.push(l);
        }
        let f = Poly::product(q, &polys);
        let locus = singular_locus(&f).unwrap();
        prop_assert!(locus.all_rational());
        prop_assert_eq!(tjurina_total(&f, None).unwrap(), locus.tjurina_sum() as u64);
    }
}
