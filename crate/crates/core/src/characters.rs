//! Irreducible characters of symmetric groups via Murnaghan–Nakayama.

use std::collections::HashMap;
use std::sync::{LazyLock, RwLock};

use num_traits::{One, Zero};
use thiserror::Error;

use crate::coefrings::Rational;
use crate::partitions::{enumerate_partitions, z_factor, Partition};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CharacterError {
    #[error("size mismatch: |{nu}| != |{mu}|")]
    SizeMismatch { nu: Partition, mu: Partition },
}

/// `(ν, μ, χ_ν(μ))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterValue {
    pub nu: Partition,
    pub mu: Partition,
    pub value: i64,
}

static MEMO: LazyLock<RwLock<HashMap<(Partition, Partition), i64>>> =
    LazyLock::new(|| RwLock::new(HashMap::new()));

/// `χ_ν(μ)`: the irreducible character `ν` on the class of cycle type `μ`.
pub fn character(nu: &Partition, mu: &Partition) -> Result<i64, CharacterError> {
    if nu.size() != mu.size() {
        return Err(CharacterError::SizeMismatch { nu: nu.clone(), mu: mu.clone() });
    }
    Ok(mn(nu, mu.parts()))
}

pub fn character_value(nu: &Partition, mu: &Partition) -> Result<CharacterValue, CharacterError> {
    Ok(CharacterValue { nu: nu.clone(), mu: mu.clone(), value: character(nu, mu)? })
}

fn mn(nu: &Partition, mu: &[u32]) -> i64 {
    if mu.is_empty() {
        return 1;
    }
    let key = (nu.clone(), Partition::from_unsorted(mu.to_vec()));
    if let Some(v) = MEMO.read().unwrap().get(&key) {
        return *v;
    }
    let r = mu[0];
    let rest = &mu[1..];
    let l = nu.len();
    // Beta numbers: β_i = ν_i + (l − i), strictly decreasing.
    let beta: Vec<u32> = nu.parts().iter().enumerate().map(|(i, &p)| p + (l - 1 - i) as u32).collect();
    let mut total = 0i64;
    for (i, &b) in beta.iter().enumerate() {
        if b < r {
            continue;
        }
        let target = b - r;
        if beta.contains(&target) {
            continue;
        }
        let between = beta.iter().filter(|&&x| x > target && x < b).count();
        let mut moved = beta.clone();
        moved[i] = target;
        moved.sort_unstable_by(|a, b| b.cmp(a));
        let len = moved.len();
        let parts: Vec<u32> = moved.iter().enumerate().map(|(j, &x)| x - (len - 1 - j) as u32).collect();
        let smaller = Partition::from_unsorted(parts);
        let sign = if between % 2 == 0 { 1 } else { -1 };
        total += sign * mn(&smaller, rest);
    }
    MEMO.write().unwrap().insert(key, total);
    total
}

/// `Σ_μ χ_ν(μ) χ_ρ(μ) / z_μ − δ_{ν,ρ}`, which vanishes by orthogonality.
pub fn orthogonality_defect(nu: &Partition, rho: &Partition) -> Result<Rational, CharacterError> {
    if nu.size() != rho.size() {
        return Err(CharacterError::SizeMismatch { nu: nu.clone(), mu: rho.clone() });
    }
    let mut acc = Rational::zero();
    for mu in enumerate_partitions(nu.size()) {
        let prod = character(nu, &mu)? * character(rho, &mu)?;
        acc += Rational::new(prod.into(), z_factor(&mu));
    }
    if nu == rho {
        acc -= Rational::one();
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn known_values() {
        for mu in enumerate_partitions(5) {
            assert_eq!(character(&p(&[5]), &mu).unwrap(), 1);
        }
        assert_eq!(character(&p(&[1, 1]), &p(&[2])).unwrap(), -1);
        assert_eq!(character(&p(&[2, 1]), &p(&[1, 1, 1])).unwrap(), 2);
        assert_eq!(character(&p(&[2, 1]), &p(&[3])).unwrap(), -1);
        assert_eq!(character(&p(&[3, 1]), &p(&[2, 2])).unwrap(), -1);
    }

    #[test]
    fn size_mismatch() {
        assert!(character(&p(&[2]), &p(&[1])).is_err());
        assert!(orthogonality_defect(&p(&[2]), &p(&[1])).is_err());
    }

    #[test]
    fn orthogonality_examples() {
        assert!(orthogonality_defect(&p(&[1]), &p(&[1])).unwrap().is_zero());
        assert!(orthogonality_defect(&p(&[2]), &p(&[1, 1])).unwrap().is_zero());
        assert!(orthogonality_defect(&p(&[3, 1]), &p(&[3, 1])).unwrap().is_zero());
    }
}
