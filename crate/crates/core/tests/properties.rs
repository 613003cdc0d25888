use num_complex::Complex64;
use proptest::prelude::*;
use qck_core::freealg::{canonicalize_relations, Matrix, UnitRule};
use qck_core::json;
use qck_core::scalar::rat;
use qck_core::{
    BaseScalar, CkScalar, DualValue, Family, JSignature, JValue, NcPoly, Relation, RingMatrix, Symbol,
};

const R: usize = 2;

fn base() -> impl Strategy<Value = BaseScalar> {
    (-3i64..=3, -3i64..=3, -2i64..=2, -2i64..=2, 1i64..=3)
        .prop_map(|(a, b, c, d, q)| BaseScalar::new(rat(a, q), rat(b, 1), rat(c, q), rat(d, 2)))
}

/// Monomial `E^e v^k j1^a j2^b` with nonnegative `j`-powers.
fn monomial() -> impl Strategy<Value = CkScalar> {
    (-4i32..=4, 0u32..=2, 0i32..=2, 0i32..=2).prop_map(|(e, k, a, b)| {
        let mut m = CkScalar::e_pow(R, e);
        for _ in 0..k {
            m = &m * &CkScalar::v(R);
        }
        &(&m * &CkScalar::j_pow(R, 1, a)) * &CkScalar::j_pow(R, 2, b)
    })
}

fn scalar() -> impl Strategy<Value = CkScalar> {
    prop::collection::vec((base(), monomial()), 0..5).prop_map(|ts| {
        ts.into_iter().fold(CkScalar::zero(R), |acc, (c, m)| &acc + &m.scale(&c))
    })
}

fn signature() -> impl Strategy<Value = JSignature> {
    let v = prop_oneof![Just(JValue::One), Just(JValue::Nilpotent), Just(JValue::Imaginary)];
    prop::collection::vec(v, R).prop_map(JSignature::new)
}

fn letter() -> impl Strategy<Value = Symbol> {
    (prop_oneof![Just(Family::T), Just(Family::TTilde)], 1usize..=3, 1usize..=3)
        .prop_map(|(f, r, c)| Symbol::new(f, r, c))
}

fn poly() -> impl Strategy<Value = NcPoly> {
    prop::collection::vec((scalar(), prop::collection::vec(letter(), 0..3)), 0..4).prop_map(|ts| {
        ts.into_iter().fold(NcPoly::zero(R), |acc, (c, w)| acc.add(&NcPoly::monomial(c, w.into_iter().collect())))
    })
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = RingMatrix> {
    prop::collection::vec(scalar(), rows * cols)
        .prop_map(move |xs| RingMatrix::from_fn(rows, cols, R, |i, k| xs[i * cols + k].clone()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn canonical_form_ignores_order(xs in prop::collection::vec(scalar(), 1..5)) {
        let fwd = xs.iter().fold(CkScalar::zero(R), |a, x| &a + x);
        let rev = xs.iter().rev().fold(CkScalar::zero(R), |a, x| &a + x);
        prop_assert_eq!(&fwd, &rev);
        prop_assert!((&fwd - &fwd).is_zero());
        prop_assert_eq!(fwd.to_string(), rev.to_string());
    }

    #[test]
    fn scalar_ring_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
    }

    #[test]
    fn specialization_is_a_homomorphism(a in scalar(), b in scalar(), s in signature()) {
        let sa = a.specialize(&s).unwrap();
        let sb = b.specialize(&s).unwrap();
        prop_assert_eq!((&a + &b).specialize(&s).unwrap(), &sa + &sb);
        prop_assert_eq!((&a * &b).specialize(&s).unwrap(), (&sa * &sb).specialize(&s).unwrap());
        prop_assert_eq!(sa.specialize(&s).unwrap(), sa);
    }

    #[test]
    fn numeric_evaluation_is_multiplicative(
        a in scalar(), b in scalar(), s in signature(),
        re in -1.0f64..1.0, im in -1.0f64..1.0,
    ) {
        let v0 = Complex64::new(re, im);
        let ea = a.eval_numeric(&s, v0).unwrap();
        let eb = b.eval_numeric(&s, v0).unwrap();
        let eab = (&a * &b).eval_numeric(&s, v0).unwrap();
        prop_assert!(eab.approx_eq(&ea.mul(&eb), 1e-9), "{} vs {}", eab, ea.mul(&eb));
        let sum = (&a + &b).eval_numeric(&s, v0).unwrap();
        prop_assert!(sum.approx_eq(&ea.add(&eb), 1e-9));
    }

    #[test]
    fn unit_inverse(c in base(), m in monomial()) {
        prop_assume!(!c.is_zero());
        let unit = CkScalar::constant(R, c).mul_monomial(&m.leading().unwrap().0.clone());
        match unit.inverse() {
            Ok(inv) => prop_assert!((&unit * &inv).is_one()),
            Err(_) => prop_assert!(m.leading().unwrap().0.v > 0),
        }
    }

    #[test]
    fn poly_ring_axioms(p in poly(), q in poly(), r in poly()) {
        prop_assert_eq!(p.mul(&q).mul(&r), p.mul(&q.mul(&r)));
        prop_assert_eq!(p.mul(&q.add(&r)), p.mul(&q).add(&p.mul(&r)));
        prop_assert!(p.sub(&p).is_zero());
    }

    #[test]
    fn kron_laws(a in matrix(2, 2), b in matrix(2, 2), c in matrix(2, 2), d in matrix(2, 2)) {
        prop_assert_eq!(a.kron(&b).transpose(), a.transpose().kron(&b.transpose()));
        prop_assert_eq!(a.kron(&b).mul(&c.kron(&d)), a.mul(&c).kron(&b.mul(&d)));
    }

    #[test]
    fn tri_inverse_involution(
        below in prop::collection::vec(scalar(), 6),
        diag in prop::collection::vec((base(), -3i32..=3), 4),
    ) {
        prop_assume!(diag.iter().all(|(c, _)| !c.is_zero()));
        let mut k = 0;
        let m: Matrix<CkScalar> = RingMatrix::from_fn(4, 4, R, |i, j| {
            if i == j {
                CkScalar::e_pow(R, diag[i].1).scale(&diag[i].0)
            } else if i > j {
                k += 1;
                below[k - 1].clone()
            } else {
                CkScalar::zero(R)
            }
        });
        let inv = m.tri_inverse().unwrap();
        prop_assert!(m.mul(&inv).is_identity());
        prop_assert_eq!(inv.tri_inverse().unwrap(), m);
    }

    #[test]
    fn canonicalize_is_idempotent(ps in prop::collection::vec(poly(), 0..5), s in signature()) {
        let rels = ps.iter().enumerate().map(|(k, p)| Relation { label: format!("r{k}"), poly: p.clone() });
        for rule in [UnitRule::Formal, UnitRule::Specialized(s.clone())] {
            let once = canonicalize_relations(rels.clone(), &rule);
            let twice = canonicalize_relations(once.relations.clone(), &rule);
            prop_assert_eq!(&once, &twice);
            prop_assert!(once.relations.iter().all(|r| !r.poly.is_zero()));
        }
    }

    #[test]
    fn json_round_trip(a in scalar(), p in poly()) {
        prop_assert_eq!(json::scalar_from_json(&json::scalar_to_json(&a), R).unwrap(), a);
        prop_assert_eq!(json::poly_from_json(&json::poly_to_json(&p), R).unwrap(), p);
    }
}

#[test]
fn dual_value_components() {
    let s = JSignature::parse("iota,iota").unwrap();
    // Jv = ι₁ι₂ v
    let x = (&CkScalar::big_j_pow(R, 1) * &CkScalar::v(R)).eval_numeric(&s, Complex64::new(2.0, 0.0)).unwrap();
    let mut want = DualValue::zero(R);
    want.set_component(0b11, Complex64::new(2.0, 0.0));
    assert!(x.approx_eq(&want, 1e-12));
}
