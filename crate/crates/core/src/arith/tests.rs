use proptest::prelude::*;

use super::*;

fn qz_var() -> Qqz {
    Qqz::var()
}

fn lift(c: Qq) -> Qqz {
    Qqz::constant(c)
}

#[test]
fn trivial_identities() {
    let z = qz_var();
    let q = lift(Qq::q());
    assert!(z.sub(&q).add(&q.sub(&z)).is_zero());
    let a = z.sub(&q);
    assert!(a.inv().unwrap().mul(&a).is_one());
}

#[test]
fn quotient_by_long_division() {
    let z = qz_var();
    let q = lift(Qq::q());
    let f = z.mul(&z).sub(&q.mul(&q)).div(&z.sub(&q)).unwrap();
    // the oracle: divide coefficient lists by hand
    let num = Poly::from_coeffs(vec![Qq::q().mul(&Qq::q()).neg(), Qq::zero(), Qq::one()]);
    let (quot, rem) = num.divrem(&Poly::linear_root(&Qq::q()));
    assert!(rem.is_zero());
    assert_eq!(f, Qqz::from_poly(quot));
    assert_eq!(f, z.add(&q));
}

#[test]
fn division_by_zero_is_an_error() {
    assert!(Qqz::one().div(&Qqz::zero()).is_none());
    assert!(RatFunc::<Rat>::new(Poly::one(), Poly::zero()).is_err());
}

#[test]
fn pole_orders() {
    let z = qz_var();
    let p2 = Qq::neg_q_pow(2);
    let p3 = Qq::neg_q_pow(3);
    let f = z.sub(&lift(p2.clone())).inv().unwrap();
    assert_eq!(f.pole_order(&p2), Ok(1));
    let g = z.sub(&lift(p3.clone())).pow(2);
    assert_eq!(g.pole_order(&p3), Ok(-2));
    assert_eq!(g.pole_order(&p2), Ok(0));
    assert!(Qqz::zero().pole_order(&p2).is_err());
}

#[test]
fn trunc_eval_single_variable() {
    let x = qz_var();
    let a = QMono::neg_q(2);
    let t = trunc_eval(&x, std::slice::from_ref(&a), &[2]).unwrap();
    let mut expect = TruncPoly::zero(&[2]);
    expect.add_term(vec![0], &a.to_qq());
    expect.add_term(vec![1], &a.to_qq());
    assert_eq!(t, expect);

    let c = QMono::new(Rat::new(3, 5), -1);
    let t = trunc_eval(&x.inv().unwrap(), std::slice::from_ref(&c), &[2]).unwrap();
    let ci = c.to_qq().inv().unwrap();
    let mut expect = TruncPoly::zero(&[2]);
    expect.add_term(vec![0], &ci);
    expect.add_term(vec![1], &ci.neg());
    assert_eq!(t, expect);
}

#[test]
fn trunc_eval_two_variables() {
    // X_1 is the inner variable, X_2 the outer one
    let x1 = Qqzw::constant(Qqz::var());
    let x2 = Qqzw::var();
    let diff = x2.sub(&x1);
    let f = diff.inv().unwrap();
    let anchors = [QMono::one(), QMono::neg_q(2)];
    let t = trunc_eval(&f, &anchors, &[2, 2]).unwrap();
    let expected_c0 = Qq::neg_q_pow(2).sub(&Qq::one()).inv().unwrap();
    assert_eq!(t.constant_term(), expected_c0);
    let d = trunc_eval(&diff, &anchors, &[2, 2]).unwrap();
    assert_eq!(t.mul(&d), TruncPoly::constant(&[2, 2], Qq::one()));
}

#[test]
fn trunc_eval_reports_pole() {
    let x1 = Qqzw::constant(Qqz::var());
    let x2 = Qqzw::var();
    let f = x2.sub(&x1).inv().unwrap();
    let err = trunc_eval(&f, &[QMono::one(), QMono::one()], &[2, 2]).unwrap_err();
    assert!(matches!(err, crate::error::Error::Pole { .. }));
}

#[test]
fn trunc_eval_ignores_removable_inner_denominators() {
    // 1 / (X_2 (X_1 - a) + 1) is regular at X_1 = a even though the
    // normalized tower form has 1/(X_1 - a) in its coefficients
    let a = QMono::neg_q(1);
    let x1 = Qqzw::constant(Qqz::var());
    let x2 = Qqzw::var();
    let aa = Qqzw::from_qq(&a.to_qq());
    let f = x2.mul(&x1.sub(&aa)).add(&Qqzw::one()).inv().unwrap();
    let t = trunc_eval(&f, &[a, QMono::neg_q(4)], &[3, 2]).unwrap();
    assert_eq!(t.constant_term(), Qq::one());
}

#[test]
fn compose_matches_tower_evaluation() {
    let z = qz_var();
    let f = z.add(&Qqz::one()).div(&z.sub(&lift(Qq::neg_q_pow(3)))).unwrap();
    let a = QMono::neg_q(1);
    let orders = [4];
    let arg = TruncPoly::anchored(&orders, 0, &a.to_qq());
    assert_eq!(compose(&f, &arg).unwrap(), trunc_eval(&f, &[a], &orders).unwrap());
}

#[test]
fn display_of_nested_levels() {
    let z = qz_var();
    let q = lift(Qq::q());
    let f = z.sub(&q.mul(&q)).inv().unwrap();
    assert_eq!(f.to_string(), "1/(z - q^2)");
    let g = z.mul(&q.inv().unwrap()).add(&Qqz::one());
    assert_eq!(g.to_string(), "(1/q)*z + 1");
}

#[test]
fn inverse_variable_substitution() {
    let z = qz_var();
    let q = lift(Qq::q());
    let f = Qqz::one().sub(&q.mul(&z)).div(&z.sub(&q)).unwrap();
    let g = f.subs_inverse_var();
    let zi = z.inv().unwrap();
    let expect = Qqz::one().sub(&q.mul(&zi)).div(&zi.sub(&q)).unwrap();
    assert_eq!(g, expect);
    assert_eq!(g.subs_inverse_var(), f);
}

fn small_qq() -> impl Strategy<Value = Qq> {
    (prop::collection::vec(-3i64..4, 1..4), prop::collection::vec(-2i64..3, 0..3)).prop_map(|(n, d)| {
        let num = Poly::from_coeffs(n.into_iter().map(Rat::from).collect());
        let mut dc: Vec<Rat> = d.into_iter().map(Rat::from).collect();
        dc.push(Rat::from(1));
        Qq::new(num, Poly::from_coeffs(dc)).unwrap()
    })
}

fn small_qqz() -> impl Strategy<Value = Qqz> {
    (prop::collection::vec(small_qq(), 1..3), prop::collection::vec(small_qq(), 0..2)).prop_map(|(n, mut d)| {
        d.push(Qq::one());
        Qqz::new(Poly::from_coeffs(n), Poly::from_coeffs(d)).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ring_axioms(a in small_qqz(), b in small_qqz(), c in small_qqz()) {
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        if !b.is_zero() {
            prop_assert_eq!(a.div(&b).unwrap().mul(&b), a.clone());
        }
    }

    #[test]
    fn trunc_eval_is_multiplicative(a in small_qqz(), b in small_qqz(), m in -3i64..4) {
        let anchor = QMono::neg_q(m);
        let orders = [3];
        let ea = trunc_eval(&a, std::slice::from_ref(&anchor), &orders);
        let eb = trunc_eval(&b, std::slice::from_ref(&anchor), &orders);
        if let (Ok(ea), Ok(eb)) = (ea, eb) {
            let eab = trunc_eval(&a.mul(&b), std::slice::from_ref(&anchor), &orders).unwrap();
            prop_assert_eq!(eab, ea.mul(&eb));
            let esum = trunc_eval(&a.add(&b), std::slice::from_ref(&anchor), &orders).unwrap();
            prop_assert_eq!(esum, ea.add(&eb));
        }
    }

    #[test]
    fn pole_order_is_additive(a in small_qqz(), b in small_qqz(), m in -3i64..4, k in 0i64..3) {
        let p = Qq::neg_q_pow(m);
        // plant a pole or zero at p so the test is not vacuous
        let a = a.times_linear_power(&p, k - 1);
        if !a.is_zero() && !b.is_zero() {
            let lhs = a.mul(&b).pole_order(&p).unwrap();
            prop_assert_eq!(lhs, a.pole_order(&p).unwrap() + b.pole_order(&p).unwrap());
        }
    }
}
