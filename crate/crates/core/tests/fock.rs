use num_traits::Zero;
use proptest::prelude::*;

use toricgw::coefrings::{rat, Rational};
use toricgw::fock::{apply_beta, basis_state, order_abnormally, order_normally, pairing, vev, BosonIndex, BosonWord, FockVector};
use toricgw::partitions::Partition;

fn state() -> impl Strategy<Value = FockVector<Rational>> {
    prop::collection::vec((0u32..2, prop::collection::vec(1u32..=3, 0..3), -4i64..=4), 1..4).prop_map(|items| {
        let mut v = FockVector::new();
        for (color, parts, c) in items {
            for (key, one) in basis_state::<Rational>(color, &Partition::from_unsorted(parts)) {
                let slot = v.entry(key).or_insert_with(Rational::zero);
                *slot += one * rat(c, 1);
            }
        }
        v.retain(|_, c| !c.is_zero());
        v
    })
}

fn mode() -> impl Strategy<Value = i32> {
    prop_oneof![-4i32..=-1, 1i32..=4]
}

fn sub(a: &FockVector<Rational>, b: &FockVector<Rational>) -> FockVector<Rational> {
    let mut out = a.clone();
    for (k, c) in b {
        let slot = out.entry(k.clone()).or_insert_with(Rational::zero);
        *slot -= c;
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn scaled(v: &FockVector<Rational>, s: i64) -> FockVector<Rational> {
    let mut out: FockVector<Rational> = v.iter().map(|(k, c)| (k.clone(), c * rat(s, 1))).collect();
    out.retain(|_, c| !c.is_zero());
    out
}

/// Sum over perfect matchings of an abnormally ordered word: every
/// annihilator `β_m` (left) pairs with a creator `β_{−m}` of its color.
fn matchings(factors: &[(u32, i32)]) -> i64 {
    let Some(pos) = factors.iter().position(|(_, m)| *m > 0) else {
        return if factors.is_empty() { 1 } else { 0 };
    };
    let (c, m) = factors[pos];
    let mut total = 0;
    for j in 0..factors.len() {
        if factors[j] == (c, -m) {
            let rest: Vec<(u32, i32)> =
                factors.iter().enumerate().filter(|(i, _)| *i != pos && *i != j).map(|(_, f)| *f).collect();
            total += m as i64 * matchings(&rest);
        }
    }
    total
}

proptest! {
    #[test]
    fn commutation_relation(v in state(), c1 in 0u32..2, m in mode(), c2 in 0u32..2, n in mode()) {
        let a = BosonIndex::new(c1, m).unwrap();
        let b = BosonIndex::new(c2, n).unwrap();
        let ab = apply_beta(a, &apply_beta(b, &v));
        let ba = apply_beta(b, &apply_beta(a, &v));
        let expected = if c1 == c2 && m + n == 0 { scaled(&v, m as i64) } else { FockVector::new() };
        prop_assert_eq!(sub(&ab, &ba), expected);
    }

    #[test]
    fn creation_is_adjoint_to_annihilation(u in state(), v in state(), c in 0u32..2, n in 1i32..=4) {
        let lhs = pairing(&apply_beta(BosonIndex::new(c, n).unwrap(), &u), &v);
        let rhs = pairing(&u, &apply_beta(BosonIndex::new(c, -n).unwrap(), &v));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn abnormal_vev_is_a_matching_sum(modes in prop::collection::vec((0u32..2, mode()), 0..8)) {
        let w = order_abnormally(&BosonWord::<Rational>::from_modes(&modes).unwrap());
        prop_assert_eq!(vev(&w), rat(matchings(&w.modes()), 1));
    }

    #[test]
    fn normal_ordering_kills_vev(modes in prop::collection::vec((0u32..2, mode()), 1..8)) {
        let w = order_normally(&BosonWord::<Rational>::from_modes(&modes).unwrap());
        prop_assert!(vev(&w).is_zero());
    }

    #[test]
    fn weights_multiply_the_vev(m in 1i32..=4, a in -5i64..=5, b in 1i64..=5) {
        let w = BosonWord::new(vec![
            (BosonIndex::new(0, m).unwrap(), rat(a, b)),
            (BosonIndex::new(0, -m).unwrap(), rat(b, 1)),
        ]);
        prop_assert_eq!(vev(&w), rat(a * m as i64, 1));
    }
}
