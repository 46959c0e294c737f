mod common;

use std::collections::BTreeMap;

use braided_osc::coeffield::{
    arith, evaluate, parse_coeff, print_coeff, ArithOp, CoeffError, IndetTable, RatFunc,
};
use braided_osc::hopfstruct::Catalog;
use common::*;
use num_rational::BigRational;
use proptest::prelude::*;

fn qq1() -> IndetTable {
    IndetTable::new(&["q", "Q1"]).unwrap()
}

#[test]
fn catalog_entries_round_trip() {
    let cat = Catalog::builtin().unwrap();
    let mut seen = 0;
    for sol in cat.solutions() {
        let t = &sol.indeterminates;
        for (name, c) in sol.constants() {
            let text = print_coeff(c, t);
            assert_eq!(&parse_coeff(&text, t).unwrap(), c, "{} {name} = {text}", sol.label());
            seen += 1;
        }
    }
    assert!(seen > 0);
}

#[test]
fn division_by_zero_is_reported() {
    let t = qq1();
    let q = parse_coeff("q", &t).unwrap();
    assert_eq!(arith(&q, &RatFunc::zero(), ArithOp::Div), Err(CoeffError::DivisionByZero));
    assert!(matches!(parse_coeff("1/(q-q)", &t), Err(CoeffError::Syntax { .. })));
}

#[test]
fn evaluation_at_a_pole() {
    let t = qq1();
    let x = parse_coeff("1/(q^2-Q1)", &t).unwrap();
    let at = BTreeMap::from([("q".to_string(), rat("2")), ("Q1".to_string(), rat("4"))]);
    assert_eq!(evaluate(&x, &t, &at), Err(CoeffError::Pole));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn field_axioms(x in ratfunc(2), y in ratfunc(2), z in ratfunc(2)) {
        prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&x * &y, &y * &x);
        if !x.is_zero() {
            prop_assert!((&x / &x).is_one());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2_000))]

    #[test]
    fn canonical_equality_matches_cross_multiplication(
        a in poly(2, 3), b in poly(2, 2), c in poly(2, 3), d in poly(2, 2),
    ) {
        prop_assume!(!b.is_zero() && !d.is_zero());
        let x = &RatFunc::from_poly(a.clone()) / &RatFunc::from_poly(b.clone());
        let y = &RatFunc::from_poly(c.clone()) / &RatFunc::from_poly(d.clone());
        prop_assert_eq!(x == y, a.mul(&d) == c.mul(&b));
    }

    #[test]
    fn print_parse_round_trip(x in ratfunc(2)) {
        let t = qq1();
        prop_assert_eq!(parse_coeff(&print_coeff(&x, &t), &t).unwrap(), x);
    }

    #[test]
    fn evaluation_is_a_ring_homomorphism(
        x in ratfunc(2), y in ratfunc(2), q in small_rational(), q1 in small_rational(),
    ) {
        let t = qq1();
        let at = BTreeMap::from([("q".to_string(), q), ("Q1".to_string(), q1)]);
        let (Ok(ex), Ok(ey)) = (evaluate(&x, &t, &at), evaluate(&y, &t, &at)) else {
            return Ok(());
        };
        prop_assert_eq!(evaluate(&(&x * &y), &t, &at).unwrap(), &ex * &ey);
        prop_assert_eq!(evaluate(&(&x + &y), &t, &at).unwrap(), ex + ey);
    }
}

#[test]
fn evaluation_ignores_unused_symbols() {
    let t = qq1();
    let x = parse_coeff("q^2+1", &t).unwrap();
    let at = BTreeMap::from([("q".to_string(), BigRational::from_integer(3.into()))]);
    assert_eq!(evaluate(&x, &t, &at).unwrap(), rat("10"));
}
