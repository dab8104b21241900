use std::collections::BTreeMap;

use num_bigint::BigInt;
use proptest::prelude::*;

use toricgw::coefrings::{lambda_expand, rat, LaurentPoly, QCoefficient, Rational};
use toricgw::document::Document;
use toricgw::partitions::{conjugate, enumerate_pairs_plus, enumerate_partitions, Partition};
use toricgw::toric::{
    derive_tau, gv_extract, preset, presets, to_classes, z_localization, z_product, ClassSeries, ToricError,
    PRESET_NAMES,
};
use toricgw::wzw::{connected_amplitude, vertex_coefficient, w_hopf, w_hopf_with_head};

fn p(parts: &[u32]) -> Partition {
    Partition::new(parts.to_vec()).unwrap()
}

fn small_partitions(max: u32) -> Vec<Partition> {
    (0..=max).flat_map(enumerate_partitions).collect()
}

#[test]
fn hopf_link_for_two_boxes() {
    // (q − 1 + q⁻¹) / (q^{1/2} − q^{−1/2})² with q = w².
    let num = QCoefficient::from_laurent(LaurentPoly::from_dense_i64(-2, &[1, 0, -1, 0, 1]), 1);
    let want = num.mul(&QCoefficient::inv_bracket(1, 1).pow(2));
    assert_eq!(w_hopf(&p(&[1]), &p(&[1])), want);
    assert_eq!(w_hopf(&p(&[1]), &Partition::empty()), QCoefficient::inv_bracket(1, 1));
}

#[test]
fn hopf_link_is_symmetric() {
    let parts = small_partitions(3);
    for mu in &parts {
        for nu in &parts {
            assert_eq!(w_hopf(mu, nu), w_hopf(nu, mu), "𝒲({mu},{nu})");
        }
    }
}

#[test]
fn hopf_link_under_conjugation() {
    let parts = small_partitions(3);
    for mu in &parts {
        for nu in &parts {
            let sign = if (mu.size() + nu.size()) % 2 == 0 { 1 } else { -1 };
            let want = w_hopf(mu, nu).mirror().scale(&rat(sign, 1));
            assert_eq!(w_hopf(&conjugate(mu), &conjugate(nu)), want, "𝒲({mu},{nu})");
        }
    }
}

#[test]
fn hopf_link_ignores_head_length() {
    for mu in small_partitions(3) {
        for nu in small_partitions(2) {
            for extra in 1..=2 {
                assert_eq!(w_hopf_with_head(&mu, &nu, mu.len() + extra).unwrap(), w_hopf(&mu, &nu));
            }
        }
    }
    assert!(w_hopf_with_head(&p(&[2, 1]), &p(&[1]), 1).is_err());
}

#[test]
fn vertex_exchange_symmetry() {
    let tau = rat(5, 3);
    for pair in enumerate_pairs_plus(3) {
        let a = vertex_coefficient(&pair.plus, &pair.minus, &tau).unwrap();
        let b = vertex_coefficient(&pair.minus, &pair.plus, &(rat(1, 1) / &tau)).unwrap();
        assert_eq!(a, b, "({}, {})", pair.plus, pair.minus);
    }
}

#[test]
fn connected_amplitudes_are_the_logarithm() {
    let tau = rat(2, 1);
    let c = |a: &[u32], b: &[u32]| vertex_coefficient(&p(a), &p(b), &tau).unwrap();
    let g = |a: &[u32], b: &[u32]| connected_amplitude(&p(a), &p(b), &tau, 2).unwrap();
    assert_eq!(g(&[1], &[]), c(&[1], &[]));
    assert_eq!(g(&[2], &[]), c(&[2], &[]));
    assert_eq!(g(&[1, 1], &[]), c(&[1, 1], &[]).sub(&c(&[1], &[]).pow(2).scale(&rat(1, 2))));
    assert_eq!(g(&[1], &[1]), c(&[1], &[1]).sub(&c(&[1], &[]).mul(&c(&[], &[1]))));
    assert!(connected_amplitude(&p(&[2]), &p(&[1]), &tau, 2).is_err());
}

#[test]
fn connected_amplitudes_have_genus_expansions() {
    // A connected surface with n boundaries starts at ξ^{2g−2+n}, g ≥ 0.
    for tau in [rat(2, 1), rat(-3, 2)] {
        for pair in enumerate_pairs_plus(4) {
            let g = connected_amplitude(&pair.plus, &pair.minus, &tau, 4).unwrap();
            let n = (pair.plus.len() + pair.minus.len()) as i32;
            let floor = lambda_expand(&g, n).unwrap().floor();
            assert!(floor.is_none_or(|f| f >= n - 2), "({}, {}) τ={tau}: floor {floor:?}", pair.plus, pair.minus);
        }
    }
    let single = connected_amplitude(&p(&[1]), &Partition::empty(), &rat(7, 3), 1).unwrap();
    assert_eq!(lambda_expand(&single, 1).unwrap().floor(), Some(-1));
}

#[test]
fn torus_weights() {
    let p2 = preset("p2").unwrap();
    assert_eq!(derive_tau(&p2, &rat(5, 3)).unwrap().tau, vec![rat(5, 3), rat(-3, 2), rat(2, 5)]);
    for surf in presets() {
        for c in [rat(2, 1), rat(5, 3), rat(7, 2), rat(-3, 1), rat(1, 1)] {
            match derive_tau(&surf, &c) {
                Ok(w) => {
                    let k = w.tau.len();
                    for i in 0..k {
                        let s: Rational = &w.tau[i] + rat(1, 1) / &w.tau[(i + 1) % k];
                        assert_eq!(s, rat(surf.s[i], 1), "{} c={c} vertex {i}", surf.name);
                    }
                }
                Err(ToricError::Degenerate { .. }) => {}
                Err(e) => panic!("{}: {e}", surf.name),
            }
        }
    }
}

#[test]
fn product_formula_low_degree() {
    let f0 = preset("p1xp1").unwrap();
    let z = to_classes(&f0, &z_product(&f0, 2), true);
    let two = QCoefficient::inv_bracket(1, 1).pow(2).scale(&rat(2, 1));
    assert_eq!(z.coeff(&[1, 0]), two);
    assert_eq!(z.coeff(&[0, 1]), two);
    for name in PRESET_NAMES {
        let surf = preset(name).unwrap();
        let series = z_product(&surf, 2);
        assert!(series.terms().all(|(_, c)| c.denominator_is_cyclotomic()));
        let all = to_classes(&surf, &series, false);
        let complete = to_classes(&surf, &series, true);
        assert!(complete.terms.keys().all(|k| all.terms.contains_key(k)));
        assert!(complete.coeff(&vec![0; surf.variables.len()]).is_one());
    }
}

#[test]
fn localization_matches_product_off_the_standard_torus() {
    let surf = preset("b2").unwrap();
    let tau = derive_tau(&surf, &rat(7, 2)).unwrap();
    let loc = z_localization(&surf, &tau, 1).unwrap();
    assert_eq!(to_classes(&surf, &loc, true), to_classes(&surf, &z_product(&surf, 1), true));
}

#[test]
fn local_plane_invariants() {
    let gv = gv_extract(&preset("p2").unwrap(), 4).unwrap();
    let want: [(i64, u32, i64); 7] = [(1, 0, 3), (2, 0, -6), (3, 0, 27), (4, 0, -192), (3, 1, -10), (4, 1, 231), (4, 2, -102)];
    for (d, g, n) in want {
        assert_eq!(gv.get(&[d], g), BigInt::from(n), "n^{g}_{d}");
    }
    assert!(!gv.entries.contains_key(&vec![0]));
    assert_eq!(gv.get(&[1], 1), BigInt::from(0));
}

#[test]
fn local_quadric_invariants() {
    let gv = gv_extract(&preset("p1xp1").unwrap(), 3).unwrap();
    for (class, n) in [([1, 0], -2), ([0, 1], -2), ([1, 1], -4), ([1, 2], -6), ([2, 1], -6)] {
        assert_eq!(gv.get(&class, 0), BigInt::from(n), "n^0_{class:?}");
    }
    assert_eq!(gv.get(&[2, 0], 0), BigInt::from(0));
}

fn class_series() -> impl Strategy<Value = ClassSeries> {
    prop::collection::vec(((0i64..=3, -2i64..=2), (-4i64..=4, 1i64..=3), -3i64..=3, 1u32..=2, 0u32..=2), 1..6).prop_map(
        |items| {
            let mut terms = BTreeMap::new();
            for ((a, b), (n, d), e, m, h) in items {
                let mut c = QCoefficient::w_power(e, m).scale(&rat(n, d));
                for i in 1..=h {
                    c = c.mul(&QCoefficient::inv_bracket(i as i64, 1));
                }
                if !c.is_zero() {
                    terms.insert(vec![a, b], c);
                }
            }
            ClassSeries { variables: vec!["x".into(), "y".into()], truncation: 3, terms }
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn document_round_trip(series in class_series(), xi in prop::option::of(0i32..=2)) {
        let doc = Document::from_series(&series, xi).unwrap();
        prop_assert_eq!(Document::from_json(&doc.to_json()).unwrap(), doc.clone());
        prop_assert_eq!(doc.to_series().unwrap(), series.clone());
        prop_assert_eq!(doc.header.root_order, 2 * series.root_order());
        let csv = doc.to_csv().unwrap();
        prop_assert_eq!(csv.lines().count(), series.terms.len() + 1);
    }
}
