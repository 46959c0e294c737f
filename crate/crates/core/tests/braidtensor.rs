mod common;

use braided_osc::braidtensor::{
    copy_generators, exchange_relations, flip, BraidTable, Braider, PeelOrder, TensorElement,
};
use braided_osc::coeffield::RatFunc;
use braided_osc::hopfstruct::HopfStructure;
use braided_osc::oscalg::{AlgElement, Gen, OscAlgebra, OscillatorParams};
use common::*;
use proptest::prelude::*;

const WORDS2: [[Gen; 2]; 9] = [
    [Gen::Dagger, Gen::Dagger],
    [Gen::Dagger, Gen::K],
    [Gen::Dagger, Gen::A],
    [Gen::K, Gen::Dagger],
    [Gen::K, Gen::K],
    [Gen::K, Gen::A],
    [Gen::A, Gen::Dagger],
    [Gen::A, Gen::K],
    [Gen::A, Gen::A],
];

fn table1_sol1() -> HopfStructure {
    HopfStructure::new(catalog().solution("1", "1").unwrap().clone())
}

#[test]
fn braid_examples() {
    let h = table1_sol1();
    let t = &h.solution().indeterminates;
    let br = h.braider();
    assert_eq!(
        br.braid(&TensorElement::of_gens(&[Gen::One, Gen::A])).unwrap(),
        TensorElement::of_gens(&[Gen::A, Gen::One])
    );
    assert_eq!(
        br.braid(&TensorElement::of_gens(&[Gen::A, Gen::A])).unwrap(),
        TensorElement::of_gens(&[Gen::A, Gen::A]).scale(&coeff("q^2/Q1", t))
    );
    let mut expected = TensorElement::of_gens(&[Gen::K, Gen::K]);
    expected.add_scaled(&TensorElement::of_gens(&[Gen::A, Gen::Dagger]), &coeff("(q^2-Q1)/Q1", t));
    expected.add_scaled(&TensorElement::of_gens(&[Gen::Dagger, Gen::A]), &coeff("Q1", t));
    let got = br.braid(&TensorElement::of_gens(&[Gen::A, Gen::Dagger])).unwrap();
    assert_eq!(got, expected);
    // (1⊗a)(a*⊗1) must agree with the braid operation itself
    let a2 = TensorElement::embed(&AlgElement::generator(Gen::A), 1, 2);
    let ad1 = TensorElement::embed(&AlgElement::generator(Gen::Dagger), 0, 2);
    assert_eq!(br.tensor_mul(&a2, &ad1).unwrap(), expected);
}

#[test]
fn copy_products() {
    let h = table1_sol1();
    let t = &h.solution().indeterminates;
    let br = h.braider();
    let a1 = TensorElement::embed(&AlgElement::generator(Gen::A), 0, 2);
    let a2 = TensorElement::embed(&AlgElement::generator(Gen::A), 1, 2);
    let aa = TensorElement::of_gens(&[Gen::A, Gen::A]);
    assert_eq!(br.tensor_mul(&a2, &a1).unwrap(), aa.scale(&coeff("q^2/Q1", t)));
    assert_eq!(br.tensor_mul(&a1, &a2).unwrap(), aa);
}

#[test]
fn exchange_relation_strings() {
    let h = table1_sol1();
    let rels = exchange_relations(h.braider(), &h.solution().indeterminates).unwrap();
    assert_eq!(rels.len(), 12);
    assert!(rels.contains(&"a2a1 = (q^2)/(s^2)·a1*a2".to_string()), "{rels:?}");
    assert!(rels.contains(&"a2*a1* = (q^2)/(s^2)·a1**a2*".to_string()), "{rels:?}");
    assert!(rels.contains(&"1_2a1* = a1*".to_string()));
    assert!(rels.contains(&"1_2q1^N = q1^N".to_string()));
    let ad = rels.iter().find(|r| r.starts_with("a2a1* = ")).unwrap();
    for part in ["q1^N*q2^N", "(q^2-s^2)/(s^2)·a1*a2*", "s^2·a1**a2"] {
        assert!(ad.contains(part), "{ad}");
    }
}

#[test]
fn braiding_inverse_powers_is_an_error() {
    let h = table1_sol1();
    assert!(h.braider().braid_words(&[Gen::KInv], &[Gen::A]).is_err());
}

#[test]
fn yang_baxter_on_catalog() {
    for sol in numeric_solutions() {
        let h = HopfStructure::new(sol);
        let br = h.braider();
        for x in Gen::BASIC {
            for y in Gen::BASIC {
                for z in Gen::BASIC {
                    let t = TensorElement::of_gens(&[x, y, z]);
                    let l = br.braid_at(&br.braid_at(&br.braid_at(&t, 0).unwrap(), 1).unwrap(), 0).unwrap();
                    let r = br.braid_at(&br.braid_at(&br.braid_at(&t, 1).unwrap(), 0).unwrap(), 1).unwrap();
                    assert_eq!(l, r, "{} ({x:?},{y:?},{z:?})", h.solution().label());
                }
            }
        }
    }
}

#[test]
fn peel_order_does_not_matter() {
    for sol in numeric_solutions() {
        let alg = OscAlgebra::new(sol.oscillator.clone());
        let left = Braider::with_order(alg.clone(), sol.braid.clone(), PeelOrder::LeftFirst);
        let right = Braider::with_order(alg, sol.braid.clone(), PeelOrder::RightFirst);
        for u in WORDS2 {
            for v in WORDS2 {
                assert_eq!(
                    left.braid_words(&u, &v).unwrap(),
                    right.braid_words(&u, &v).unwrap(),
                    "{} {u:?} {v:?}",
                    sol.label()
                );
            }
        }
    }
}

#[test]
fn braiding_respects_relations() {
    for sol in numeric_solutions() {
        let h = HopfStructure::new(sol);
        let br = h.braider();
        let alg = h.algebra();
        for rel in [[Gen::A, Gen::K], [Gen::K, Gen::Dagger], [Gen::A, Gen::Dagger]] {
            let normal = alg.word_product(&rel).unwrap();
            for g in Gen::BASIC {
                let lhs = br.braid_words(&rel, &[g]).unwrap();
                let rhs = br.braid(&TensorElement::outer(&[normal.clone(), AlgElement::generator(g)])).unwrap();
                assert_eq!(*lhs, rhs, "{}", h.solution().label());
                let lhs = br.braid_words(&[g], &rel).unwrap();
                let rhs = br.braid(&TensorElement::outer(&[AlgElement::generator(g), normal.clone()])).unwrap();
                assert_eq!(*lhs, rhs, "{}", h.solution().label());
            }
        }
    }
}

#[test]
fn exchanged_generators_associate() {
    for sol in numeric_solutions() {
        let h = HopfStructure::new(sol);
        let br = h.braider();
        let gens = copy_generators();
        for (_, _, x) in &gens {
            for (_, _, y) in &gens {
                for (_, _, z) in &gens {
                    let l = br.tensor_mul(&br.tensor_mul(x, y).unwrap(), z).unwrap();
                    let r = br.tensor_mul(x, &br.tensor_mul(y, z).unwrap()).unwrap();
                    assert_eq!(l, r, "{}", h.solution().label());
                }
            }
        }
    }
}

fn flip_limit() -> Braider {
    let one = RatFunc::one();
    let alg = OscAlgebra::new(
        OscillatorParams::new(
            RatFunc::from_int(3),
            RatFunc::from_int(5),
            one.clone(),
            RatFunc::from_int(2),
            RatFunc::zero(),
        )
        .unwrap(),
    );
    Braider::new(alg, BraidTable::flip())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn flip_is_an_involution(x in tensor(2, 2, 4)) {
        prop_assert_eq!(flip(&flip(&x).unwrap()).unwrap(), x);
    }

    #[test]
    fn flip_limit_is_componentwise(x in tensor(2, 2, 2), y in tensor(2, 2, 2)) {
        let br = flip_limit();
        let alg = br.algebra();
        let mut expected = TensorElement::zero(2);
        for (xs, cx) in x.terms() {
            for (ys, cy) in y.terms() {
                let l = alg.mul_monomials(&xs[0], &ys[0]);
                let r = alg.mul_monomials(&xs[1], &ys[1]);
                expected.add_scaled(&TensorElement::outer(&[l, r]), &(cx * cy));
            }
        }
        prop_assert_eq!(br.tensor_mul(&x, &y).unwrap(), expected);
    }

    #[test]
    fn flip_limit_braids_to_flip(x in tensor(2, 2, 3)) {
        prop_assert_eq!(flip_limit().braid(&x).unwrap(), flip(&x).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn tensor_product_is_associative(
        q in nonzero_rational(),
        x in tensor(2, 1, 3), y in tensor(2, 1, 3), z in tensor(2, 1, 3),
        u in tensor(3, 1, 2), v in tensor(3, 1, 2), w in tensor(3, 1, 2),
    ) {
        for sol in catalog().solutions() {
            let h = HopfStructure::new(with_q(sol, &q));
            let br = h.braider();
            let l = br.tensor_mul(&br.tensor_mul(&x, &y).unwrap(), &z).unwrap();
            let r = br.tensor_mul(&x, &br.tensor_mul(&y, &z).unwrap()).unwrap();
            prop_assert_eq!(l, r, "{}", sol.label());
            let l = br.tensor_mul(&br.tensor_mul(&u, &v).unwrap(), &w).unwrap();
            let r = br.tensor_mul(&u, &br.tensor_mul(&v, &w).unwrap()).unwrap();
            prop_assert_eq!(l, r, "{}", sol.label());
        }
    }
}
