#![allow(dead_code)]

use std::collections::BTreeMap;

use braided_osc::braidtensor::TensorElement;
use braided_osc::coeffield::{parse_coeff, parse_rational, IndetTable, RatFunc};
use braided_osc::hopfstruct::{Catalog, HopfSolution};
use braided_osc::oscalg::{AlgElement, NormalMonomial};
use num_rational::BigRational;
use proptest::prelude::*;

pub fn rat(text: &str) -> BigRational {
    parse_rational(text).unwrap()
}

pub fn coeff(text: &str, table: &IndetTable) -> RatFunc {
    parse_coeff(text, table).unwrap()
}

pub fn catalog() -> Catalog {
    Catalog::builtin().unwrap()
}

/// Every catalogued solution instantiated at its default generic point.
pub fn numeric_solutions() -> Vec<HopfSolution> {
    catalog()
        .solutions()
        .map(|s| s.instantiate(&s.default_assignment).unwrap())
        .collect()
}

/// A catalogued solution at its default point but with `q` replaced.
pub fn with_q(sol: &HopfSolution, q: &BigRational) -> HopfSolution {
    let mut values: BTreeMap<String, BigRational> = sol.default_assignment.clone();
    values.insert("q".to_string(), q.clone());
    sol.instantiate(&values).unwrap()
}

pub fn small_rational() -> impl Strategy<Value = BigRational> {
    (-9i64..=9, 1i64..=5).prop_map(|(n, d)| BigRational::new(n.into(), d.into()))
}

pub fn nonzero_rational() -> impl Strategy<Value = BigRational> {
    small_rational().prop_filter("nonzero", |r| *r != BigRational::from_integer(0.into()))
}

pub fn monomial(max: u32) -> impl Strategy<Value = NormalMonomial> {
    (0..=max, 0..=max as i32, 0..=max).prop_map(|(i, j, k)| NormalMonomial::new(i, j, k))
}

pub fn element(max_exp: u32, max_terms: usize) -> impl Strategy<Value = AlgElement> {
    prop::collection::vec((monomial(max_exp), nonzero_rational()), 1..=max_terms).prop_map(|ts| {
        AlgElement::from_terms(ts.into_iter().map(|(m, c)| (m, RatFunc::from_rational(&c))))
    })
}

pub fn tensor(arity: usize, max_exp: u32, max_terms: usize) -> impl Strategy<Value = TensorElement> {
    prop::collection::vec(
        (prop::collection::vec(monomial(max_exp), arity), nonzero_rational()),
        1..=max_terms,
    )
    .prop_map(move |ts| {
        let mut t = TensorElement::zero(arity);
        for (slots, c) in ts {
            t.add_term(slots, RatFunc::from_rational(&c));
        }
        t
    })
}

/// A polynomial in the first `vars` indeterminates with small integer coefficients.
pub fn poly(vars: usize, max_terms: usize) -> impl Strategy<Value = braided_osc::coeffield::Poly> {
    use braided_osc::coeffield::{Monomial, Poly};
    prop::collection::vec((prop::collection::vec(0u32..=2, vars), -6i64..=6), 1..=max_terms)
        .prop_map(|ts| Poly::from_terms(ts.into_iter().map(|(e, c)| (Monomial::from_exps(e), c.into()))))
}

pub fn ratfunc(vars: usize) -> impl Strategy<Value = RatFunc> {
    (poly(vars, 3), poly(vars, 2)).prop_filter_map("zero denominator", |(n, d)| {
        (!d.is_zero()).then(|| &RatFunc::from_poly(n) / &RatFunc::from_poly(d))
    })
}
