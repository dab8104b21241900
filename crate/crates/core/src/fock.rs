//! Multi-color bosonic Fock space.
//!
//! A state of color `i` is a polynomial in power sums `p^{(i)}_n`; the vacuum
//! is `1`. `β_{-n}` multiplies by `p_n`, `β_n` acts as `n ∂/∂p_n` (`n > 0`).

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::coefrings::{NovikovSeries, QCoefficient, Rational, Scalar};
use crate::partitions::{enumerate_partitions, z_factor, Partition};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FockError {
    #[error("mode 0 is not allowed in a boson word")]
    ZeroMode,
}

/// `β_n` acting on color `color`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BosonIndex {
    pub color: u32,
    pub mode: i32,
}

impl BosonIndex {
    pub fn new(color: u32, mode: i32) -> Result<Self, FockError> {
        if mode == 0 {
            Err(FockError::ZeroMode)
        } else {
            Ok(BosonIndex { color, mode })
        }
    }
}

/// Per-color partition; colors carrying the empty partition are omitted.
pub type FockKey = BTreeMap<u32, Partition>;

pub type FockVector<S> = BTreeMap<FockKey, S>;

pub fn vacuum<S: Scalar>() -> FockVector<S> {
    BTreeMap::from([(FockKey::new(), S::one())])
}

/// `p^{(color)}_μ` as a basis state.
pub fn basis_state<S: Scalar>(color: u32, mu: &Partition) -> FockVector<S> {
    let mut key = FockKey::new();
    if !mu.is_empty() {
        key.insert(color, mu.clone());
    }
    BTreeMap::from([(key, S::one())])
}

/// Ordered product of operators with scalar weights.
#[derive(Clone, Debug, PartialEq)]
pub struct BosonWord<S> {
    pub factors: Vec<(BosonIndex, S)>,
}

impl<S: Scalar> BosonWord<S> {
    pub fn new(factors: Vec<(BosonIndex, S)>) -> Self {
        BosonWord { factors }
    }

    /// Unit-weight word from `(color, mode)` pairs.
    pub fn from_modes(modes: &[(u32, i32)]) -> Result<Self, FockError> {
        let factors = modes
            .iter()
            .map(|&(c, m)| BosonIndex::new(c, m).map(|i| (i, S::one())))
            .collect::<Result<_, _>>()?;
        Ok(BosonWord { factors })
    }

    pub fn modes(&self) -> Vec<(u32, i32)> {
        self.factors.iter().map(|(i, _)| (i.color, i.mode)).collect()
    }
}

fn apply_to_key<S: Scalar>(idx: BosonIndex, key: &FockKey, coef: &S, out: &mut FockVector<S>) {
    let current = key.get(&idx.color).cloned().unwrap_or_default();
    let mut new_key = key.clone();
    let (new_part, factor) = if idx.mode < 0 {
        let n = (-idx.mode) as u32;
        let mut parts = current.parts().to_vec();
        parts.push(n);
        (Partition::from_unsorted(parts), None)
    } else {
        let n = idx.mode as u32;
        let mult = current.parts().iter().filter(|&&p| p == n).count() as i64;
        if mult == 0 {
            return;
        }
        let mut parts = current.parts().to_vec();
        let pos = parts.iter().position(|&p| p == n).unwrap();
        parts.remove(pos);
        (Partition::from_unsorted(parts), Some(n as i64 * mult))
    };
    if new_part.is_empty() {
        new_key.remove(&idx.color);
    } else {
        new_key.insert(idx.color, new_part);
    }
    let value = match factor {
        None => coef.clone(),
        Some(f) => coef.clone() * S::from(Rational::from_integer(f.into())),
    };
    match out.get_mut(&new_key) {
        Some(slot) => {
            let v = slot.clone() + value;
            if v.is_zero() {
                out.remove(&new_key);
            } else {
                *slot = v;
            }
        }
        None => {
            out.insert(new_key, value);
        }
    }
}

/// Applies `β_n` of one color to a state.
pub fn apply_beta<S: Scalar>(idx: BosonIndex, v: &FockVector<S>) -> FockVector<S> {
    let mut out = FockVector::new();
    for (key, coef) in v {
        apply_to_key(idx, key, coef, &mut out);
    }
    out
}

/// Stable sort by mode, descending: annihilators first.
pub fn order_abnormally<S: Clone>(wd: &BosonWord<S>) -> BosonWord<S> {
    let mut factors = wd.factors.clone();
    factors.sort_by_key(|f| std::cmp::Reverse(f.0.mode));
    BosonWord { factors }
}

/// Stable sort by mode, ascending: annihilators last.
pub fn order_normally<S: Clone>(wd: &BosonWord<S>) -> BosonWord<S> {
    let mut factors = wd.factors.clone();
    factors.sort_by_key(|a| a.0.mode);
    BosonWord { factors }
}

/// `⟨0| w |0⟩`, evaluated by applying the word to the vacuum right to left.
pub fn vev<S: Scalar>(wd: &BosonWord<S>) -> S {
    // remaining[j][c]: total positive mode of color c among factors[..j].
    let n = wd.factors.len();
    let mut remaining: Vec<BTreeMap<u32, u32>> = vec![BTreeMap::new(); n + 1];
    for j in 0..n {
        let mut next = remaining[j].clone();
        let (idx, _) = &wd.factors[j];
        if idx.mode > 0 {
            *next.entry(idx.color).or_insert(0) += idx.mode as u32;
        }
        remaining[j + 1] = next;
    }
    let mut state: FockVector<S> = vacuum();
    for j in (0..n).rev() {
        let (idx, _) = &wd.factors[j];
        state = apply_beta(*idx, &state);
        let budget = &remaining[j];
        state.retain(|key, _| {
            key.iter().all(|(c, p)| p.size() <= budget.get(c).copied().unwrap_or(0))
        });
        if state.is_empty() {
            return S::zero();
        }
    }
    let value = state.get(&FockKey::new()).cloned().unwrap_or_else(S::zero);
    wd.factors.iter().fold(value, |acc, (_, w)| acc * w.clone())
}

/// The Hermitian pairing with `⟨p_μ, p_ν⟩ = z_μ δ_{μν}` per color.
pub fn pairing<S: Scalar>(u: &FockVector<S>, v: &FockVector<S>) -> S {
    let mut acc = S::zero();
    for (key, a) in u {
        if let Some(b) = v.get(key) {
            let z = key.values().fold(num_bigint::BigInt::one(), |z, p| z * z_factor(p));
            acc = acc + a.clone() * b.clone() * S::from(Rational::from_integer(z));
        }
    }
    acc
}

/// `⟨exp(Σ a_n tⁿ β_n / n) exp(Σ a_{-n} tⁿ β_{-n} / n)⟩` through `t^D`,
/// by expanding both exponentials and evaluating each word.
pub fn vev_exponential_pair(a: &BTreeMap<i32, Rational>, d: u32) -> NovikovSeries {
    let vars = vec!["t".to_string()];
    let mut out = NovikovSeries::new(vars, d);
    let expand = |sign: i32, mu: &Partition| -> Rational {
        // ∏_n (a_{±n}/n)^{m_n} / m_n!
        let mut c = Rational::one();
        for (n, m) in mu.multiplicities() {
            let an = a.get(&(sign * n as i32)).cloned().unwrap_or_else(Rational::zero);
            for j in 1..=m {
                c = c * &an / Rational::from_integer((n as i64 * j as i64).into());
            }
        }
        c
    };
    for total in 0..=d {
        let mut coeff = Rational::zero();
        for size_plus in 0..=total {
            for plus in enumerate_partitions(size_plus) {
                let cp = expand(1, &plus);
                if cp.is_zero() {
                    continue;
                }
                for minus in enumerate_partitions(total - size_plus) {
                    let cm = expand(-1, &minus);
                    if cm.is_zero() {
                        continue;
                    }
                    let mut modes: Vec<(u32, i32)> = plus.parts().iter().map(|&p| (0, p as i32)).collect();
                    modes.extend(minus.parts().iter().map(|&p| (0, -(p as i32))));
                    let word = BosonWord::<Rational>::from_modes(&modes).unwrap();
                    coeff += vev(&word) * &cp * &cm;
                }
            }
        }
        out.add_term(vec![total], 0, QCoefficient::from_rational(coeff));
    }
    out
}

/// `⟨β_μ β_{-ν}⟩` on a single color.
pub fn wick_pair(mu: &Partition, nu: &Partition) -> Rational {
    let mut modes: Vec<(u32, i32)> = mu.parts().iter().map(|&p| (0, p as i32)).collect();
    modes.extend(nu.parts().iter().map(|&p| (0, -(p as i32))));
    vev(&BosonWord::<Rational>::from_modes(&modes).unwrap())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coefrings::rat;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn creation_and_annihilation() {
        let v0: FockVector<Rational> = vacuum();
        let v = apply_beta(BosonIndex::new(0, -2).unwrap(), &v0);
        assert_eq!(v, basis_state(0, &p(&[2])));
        let back = apply_beta(BosonIndex::new(0, 2).unwrap(), &v);
        assert_eq!(back, BTreeMap::from([(FockKey::new(), rat(2, 1))]));
        assert!(apply_beta(BosonIndex::new(0, 3).unwrap(), &v0).is_empty());
    }

    #[test]
    fn zero_mode_rejected() {
        assert_eq!(BosonIndex::new(0, 0), Err(FockError::ZeroMode));
    }

    #[test]
    fn orderings() {
        let w = BosonWord::<Rational>::from_modes(&[(0, -2), (0, 2)]).unwrap();
        assert_eq!(order_abnormally(&w).modes(), vec![(0, 2), (0, -2)]);
        let w = BosonWord::<Rational>::from_modes(&[(0, 1), (0, -1), (0, 3)]).unwrap();
        assert_eq!(order_abnormally(&w).modes(), vec![(0, 3), (0, 1), (0, -1)]);
        let sorted = BosonWord::<Rational>::from_modes(&[(0, 3), (1, 1), (0, -2)]).unwrap();
        assert_eq!(order_abnormally(&sorted), sorted);
    }

    #[test]
    fn wick_examples() {
        assert_eq!(wick_pair(&p(&[2]), &p(&[2])), rat(2, 1));
        assert_eq!(wick_pair(&p(&[1, 1]), &p(&[2])), rat(0, 1));
        let w = BosonWord::<Rational>::from_modes(&[(0, -3), (0, 3)]).unwrap();
        assert_eq!(vev(&order_abnormally(&w)), rat(3, 1));
        assert_eq!(vev(&w), rat(0, 1));
    }

    #[test]
    fn colors_do_not_contract() {
        let w = BosonWord::<Rational>::from_modes(&[(0, 1), (1, -1)]).unwrap();
        assert_eq!(vev(&w), rat(0, 1));
    }

    #[test]
    fn exponential_pair_examples() {
        let zero = vev_exponential_pair(&BTreeMap::new(), 4);
        assert_eq!(zero.len(), 1);
        let all_one: BTreeMap<i32, Rational> =
            (1..=4).flat_map(|n| [(n, rat(1, 1)), (-n, rat(1, 1))]).collect();
        let s = vev_exponential_pair(&all_one, 4);
        assert_eq!(s.coeff(&[2], 0), QCoefficient::one());
        assert_eq!(s.coeff(&[4], 0), QCoefficient::one());
        assert_eq!(s.coeff(&[1], 0), QCoefficient::zero());
        assert_eq!(s.len(), 3);
        let two = BTreeMap::from([(1, rat(2, 1)), (-1, rat(2, 1))]);
        let s = vev_exponential_pair(&two, 4);
        assert_eq!(s.coeff(&[2], 0), QCoefficient::from_int(4));
        assert_eq!(s.coeff(&[4], 0), QCoefficient::from_int(8));
    }
}
