use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;

use toricgw::characters::character;
use toricgw::coefrings::Rational;
use toricgw::partitions::{
    conjugate, enumerate_pairs_plus, enumerate_partitions, kappa, z_factor, Partition, PartitionPairPlus,
};

// Partition numbers p(0), …, p(15).
const PARTITION_NUMBERS: [usize; 16] = [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77, 101, 135, 176];

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |a, i| a * BigInt::from(i))
}

fn partition() -> impl Strategy<Value = Partition> {
    prop::collection::vec(1u32..=6, 0..6).prop_map(Partition::from_unsorted)
}

#[test]
fn partition_counts() {
    for (n, &p) in PARTITION_NUMBERS.iter().enumerate() {
        let parts = enumerate_partitions(n as u32);
        assert_eq!(parts.len(), p, "p({n})");
        assert!(parts.windows(2).all(|w| w[0] > w[1]), "reverse lexicographic order");
    }
}

#[test]
fn class_sizes_sum_to_group_order() {
    for n in 0..=10 {
        let total: Rational = enumerate_partitions(n)
            .iter()
            .map(|mu| Rational::new(BigInt::one(), z_factor(mu)))
            .sum();
        assert!(total.is_one(), "Σ 1/z_μ over |μ| = {n}");
    }
}

#[test]
fn pair_counts() {
    // Σ_{a+b=s} p(a) p(b) for s = 1..=4.
    let by_size = [2usize, 5, 10, 20];
    let mut total = 0;
    for (s, c) in by_size.iter().enumerate() {
        total += c;
        let pairs = enumerate_pairs_plus(s as u32 + 1);
        assert_eq!(pairs.len(), total);
        assert!(pairs.iter().all(|p| !(p.plus.is_empty() && p.minus.is_empty())));
    }
    assert!(PartitionPairPlus::new(Partition::empty(), Partition::empty()).is_none());
}

#[test]
fn character_table_of_s3() {
    let p = |v: &[u32]| Partition::new(v.to_vec()).unwrap();
    let classes = [p(&[1, 1, 1]), p(&[2, 1]), p(&[3])];
    let rows = [(p(&[3]), [1, 1, 1]), (p(&[2, 1]), [2, 0, -1]), (p(&[1, 1, 1]), [1, -1, 1])];
    for (nu, row) in rows {
        for (mu, want) in classes.iter().zip(row) {
            assert_eq!(character(&nu, mu).unwrap(), want, "χ_{nu}({mu})");
        }
    }
    assert!(character(&p(&[2]), &p(&[1])).is_err());
}

#[test]
fn column_orthogonality() {
    for n in 1..=7 {
        let parts = enumerate_partitions(n);
        for mu in &parts {
            for rho in &parts {
                let s: i64 = parts.iter().map(|nu| character(nu, mu).unwrap() * character(nu, rho).unwrap()).sum();
                let want = if mu == rho { z_factor(mu) } else { BigInt::zero() };
                assert_eq!(BigInt::from(s), want);
            }
        }
    }
}

proptest! {
    #[test]
    fn kappa_is_even_and_odd_under_conjugation(nu in partition()) {
        prop_assert_eq!(kappa(&nu) % 2, 0);
        prop_assert_eq!(kappa(&conjugate(&nu)), -kappa(&nu));
        prop_assert_eq!(conjugate(&conjugate(&nu)), nu.clone());
        prop_assert_eq!(conjugate(&nu).size(), nu.size());
    }

    #[test]
    fn kappa_is_twice_the_content_sum(nu in partition()) {
        let contents: i64 = nu.cells().map(|(r, c)| c as i64 - r as i64).sum();
        prop_assert_eq!(kappa(&nu), 2 * contents);
    }

    #[test]
    fn text_round_trip(nu in partition()) {
        prop_assert_eq!(nu.to_string().parse::<Partition>().unwrap(), nu.clone());
    }

    #[test]
    fn dimension_matches_hook_formula(nu in prop::collection::vec(1u32..=5, 1..5).prop_map(Partition::from_unsorted)) {
        let n = nu.size();
        let ones = Partition::new(vec![1; n as usize]).unwrap();
        let conj = conjugate(&nu);
        let hooks = nu.cells().fold(BigInt::one(), |a, (r, c)| a * BigInt::from(nu.hook(r, c, &conj)));
        prop_assert_eq!(BigInt::from(character(&nu, &ones).unwrap()) * hooks, factorial(n));
    }

    #[test]
    fn conjugation_twists_by_sign(nu in prop::collection::vec(1u32..=4, 1..4).prop_map(Partition::from_unsorted), seed in 0usize..50) {
        let classes = enumerate_partitions(nu.size());
        let mu = &classes[seed % classes.len()];
        prop_assert_eq!(character(&conjugate(&nu), mu).unwrap(), mu.sign() * character(&nu, mu).unwrap());
    }
}
