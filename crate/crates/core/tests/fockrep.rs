mod common;

use braided_osc::fockrep::{
    build_matrices, occupation, occupation_closed, occupation_recursive, occupation_table, occupations_csv,
    relation_residual, residuals_csv, Degenerate, Family, FockConfig, FockMatrices, FockParams, Gauge,
};
use common::*;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn type1_2_3() -> FockParams {
    FockParams::type1(rat("2"), rat("3")).unwrap()
}

#[test]
fn occupation_examples() {
    let p = type1_2_3();
    let values: Vec<_> = (0..4).map(|n| occupation(n, &p, Degenerate::Error).unwrap()).collect();
    assert_eq!(values, ["0", "1", "7", "37"].map(rat));
    assert_eq!(occupation(2, &FockParams::bm1(rat("2")).unwrap(), Degenerate::Error).unwrap(), rat("17/4"));
    let p2 = FockParams::type2(rat("2"), rat("3")).unwrap();
    assert_eq!(occupation(3, &p2, Degenerate::Error).unwrap(), rat("19"));
}

#[test]
fn bm_closed_forms_are_symmetric() {
    // (q^{2n} − q^{−2n})/(q² − q^{−2}) and (qⁿ − q⁻ⁿ)/(q − q⁻¹)
    let q = rat("3/2");
    for n in 0..12 {
        let n_i = n as i32;
        let bm1 = (q.pow(2 * n_i) - q.pow(-2 * n_i)) / (q.pow(2) - q.pow(-2));
        let bm2 = (q.pow(n_i) - q.pow(-n_i)) / (q.clone() - q.recip());
        assert_eq!(occupation(n, &FockParams::bm1(q.clone()).unwrap(), Degenerate::Error).unwrap(), bm1);
        assert_eq!(occupation(n, &FockParams::bm2(q.clone()).unwrap(), Degenerate::Error).unwrap(), bm2);
    }
}

#[test]
fn exact_gauge_matrices() {
    let cfg = FockConfig::new(type1_2_3(), 3, Gauge::Exact).unwrap();
    let FockMatrices::Exact(m) = build_matrices(&cfg).unwrap() else { panic!() };
    let diag: Vec<_> = (0..4).map(|i| m.k[(i, i)].clone()).collect();
    assert_eq!(diag, ["1", "2", "4", "8"].map(rat));
    assert!(m.a.column(0).iter().all(Zero::is_zero));
    // aa* − 3a*a on |0⟩,|1⟩,|2⟩ is diag(1, 4, 16)
    let lhs = &m.a * &m.adag - &m.adag * &m.a * rat("3");
    for i in 0..3 {
        for j in 0..3 {
            let expected = if i == j { rat("4").pow(i as i32) } else { BigRational::zero() };
            assert_eq!(lhs[(i, j)], expected);
        }
    }
}

#[test]
fn relations_hold_away_from_the_boundary() {
    for family in Family::ALL {
        let p = match family {
            Family::Type1 => type1_2_3(),
            Family::Type2 => FockParams::type2(rat("2"), rat("3")).unwrap(),
            Family::Bm1 => FockParams::bm1(rat("2")).unwrap(),
            Family::Bm2 => FockParams::bm2(rat("2")).unwrap(),
        };
        let exact = relation_residual(&FockConfig::new(p.clone(), 6, Gauge::Exact).unwrap()).unwrap();
        assert!(exact.iter().all(|r| r.interior_exact.as_deref() == Some("0")), "{family}");
        assert!(exact[2].boundary > 0.0, "truncation artifact must be visible");
        let herm = relation_residual(&FockConfig::new(p, 16, Gauge::Hermitian).unwrap()).unwrap();
        for r in &herm {
            assert!(r.interior < 1e-12, "{family} {}: {}", r.relation, r.interior);
        }
        assert!(herm[2].boundary > 1e-6);
    }
}

#[test]
fn hermitian_gauge_is_adjoint() {
    let cfg = FockConfig::new(type1_2_3(), 8, Gauge::Hermitian).unwrap();
    let FockMatrices::Hermitian(m) = build_matrices(&cfg).unwrap() else { panic!() };
    assert_eq!(m.adag, m.a.transpose());
    // q^N a* = q a* q^N does not depend on the gauge
    let d = &m.k * &m.adag - &m.adag * &m.k * 2.0;
    assert!(d.abs().max() == 0.0);
}

#[test]
fn hermitian_gauge_rejects_nonpositive_occupations() {
    let p = FockParams::type1(rat("2"), rat("-5")).unwrap();
    assert!(build_matrices(&FockConfig::new(p, 4, Gauge::Hermitian).unwrap()).is_err());
}

#[test]
fn csv_emission() {
    let rows = occupation_table(&type1_2_3(), 3, Degenerate::Error).unwrap();
    let csv = occupations_csv(&rows).unwrap();
    assert_eq!(csv, "n,closed,recursive,agree\n0,0,0,true\n1,1,1,true\n2,7,7,true\n3,37,37,true\n");
    let res = relation_residual(&FockConfig::new(type1_2_3(), 3, Gauge::Exact).unwrap()).unwrap();
    assert!(residuals_csv(&res).unwrap().starts_with("relation,interior,interior_exact,boundary\n"));
}

fn params_for(family: Family, q: BigRational, q1: BigRational) -> Option<FockParams> {
    match family {
        Family::Type1 | Family::Type2 => FockParams::new(family, q, q1).ok(),
        Family::Bm1 => FockParams::bm1(q).ok(),
        Family::Bm2 => FockParams::bm2(q).ok(),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn closed_form_matches_recursion(q in nonzero_rational(), q1 in nonzero_rational()) {
        for family in Family::ALL {
            let Some(p) = params_for(family, q.clone(), q1.clone()) else { continue };
            for n in 0..=32 {
                match occupation_closed(n, &p, Degenerate::Error) {
                    Ok(c) => prop_assert_eq!(c, occupation_recursive(n, &p)),
                    Err(_) => prop_assert_eq!(
                        occupation_closed(n, &p, Degenerate::Limit).unwrap(),
                        occupation_recursive(n, &p)
                    ),
                }
            }
        }
    }

    #[test]
    fn generalized_fibonacci_recurrence(q in nonzero_rational(), q1 in nonzero_rational()) {
        for (family, step) in [(Family::Type1, 2), (Family::Type2, 1)] {
            let p = FockParams::new(family, q.clone(), q1.clone()).unwrap();
            let r = q.pow(step);
            let occ: Vec<_> = (0..=33).map(|n| occupation_recursive(n, &p)).collect();
            for n in 1..=32 {
                prop_assert_eq!(&occ[n + 1], &((&r + &q1) * &occ[n] - &r * &q1 * &occ[n - 1]));
            }
        }
    }

    #[test]
    fn equal_deformations_collapse_to_bm(q in nonzero_rational()) {
        // type 1 at p = q has Q1 = p⁻² = q⁻²
        let t1 = FockParams::type1(q.clone(), q.recip().pow(2)).unwrap();
        let bm = FockParams::bm1(q.clone()).unwrap();
        for n in 0..=16 {
            prop_assert_eq!(
                occupation_closed(n, &t1, Degenerate::Limit).unwrap(),
                occupation_closed(n, &bm, Degenerate::Limit).unwrap()
            );
        }
        prop_assert!(occupation_recursive(1, &t1).is_one());
    }
}
