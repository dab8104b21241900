//! Integer partitions and their numerical invariants.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PartitionError {
    #[error("parts must be positive and weakly decreasing: {0:?}")]
    NotAPartition(Vec<u32>),
    #[error("cannot parse partition `{0}`")]
    Parse(String),
}

/// Weakly decreasing sequence of positive integers.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self, PartitionError> {
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(PartitionError::NotAPartition(parts));
        }
        Ok(Partition(parts))
    }

    /// Sorts and drops zeros.
    pub fn from_unsorted(mut parts: Vec<u32>) -> Self {
        parts.retain(|p| *p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `ν_i` with 1-based index, 0 beyond the length.
    pub fn part(&self, i: usize) -> u32 {
        if i == 0 {
            return 0;
        }
        self.0.get(i - 1).copied().unwrap_or(0)
    }

    /// Multiplicities `m_k` as `(k, m_k)` in decreasing `k`.
    pub fn multiplicities(&self) -> Vec<(u32, u32)> {
        let mut out: Vec<(u32, u32)> = Vec::new();
        for &p in &self.0 {
            match out.last_mut() {
                Some((k, m)) if *k == p => *m += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    /// Union of parts.
    pub fn union(&self, other: &Partition) -> Partition {
        let mut parts = self.0.clone();
        parts.extend_from_slice(&other.0);
        Partition::from_unsorted(parts)
    }

    /// Sign of a permutation of cycle type `self`.
    pub fn sign(&self) -> i64 {
        if (self.size() as usize - self.len()).is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// Young diagram cells `(row, col)`, 0-based.
    pub fn cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.0.iter().enumerate().flat_map(|(i, &p)| (0..p as usize).map(move |j| (i, j)))
    }

    /// Hook length of a cell.
    pub fn hook(&self, row: usize, col: usize, conj: &Partition) -> u32 {
        self.0[row] - col as u32 + conj.0[col] - row as u32 - 1
    }

    /// Whether `other ⊆ self` as Young diagrams.
    pub fn contains(&self, other: &Partition) -> bool {
        other.len() <= self.len() && other.0.iter().zip(&self.0).all(|(a, b)| a <= b)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

impl FromStr for Partition {
    type Err = PartitionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || PartitionError::Parse(s.to_string());
        let inner = s.trim().strip_prefix('[').and_then(|x| x.strip_suffix(']')).ok_or_else(bad)?;
        if inner.trim().is_empty() {
            return Ok(Partition::empty());
        }
        let parts = inner
            .split(',')
            .map(|x| x.trim().parse::<u32>().map_err(|_| bad()))
            .collect::<Result<Vec<_>, _>>()?;
        Partition::new(parts)
    }
}

impl Serialize for Partition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// All partitions of `n`, in reverse lexicographic order.
pub fn enumerate_partitions(n: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(rem: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rem == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for p in (1..=rem.min(max)).rev() {
            cur.push(p);
            rec(rem - p, p, cur, out);
            cur.pop();
        }
    }
    rec(n, n, &mut cur, &mut out);
    out
}

/// `z_μ = ∏_k k^{m_k} m_k!`.
pub fn z_factor(mu: &Partition) -> BigInt {
    let mut z = BigInt::one();
    for (k, m) in mu.multiplicities() {
        for j in 1..=m {
            z *= BigInt::from(k) * BigInt::from(j);
        }
    }
    z
}

/// `κ_ν = Σ_j ν_j (ν_j − 2j + 1)`.
pub fn kappa(nu: &Partition) -> i64 {
    nu.0.iter()
        .enumerate()
        .map(|(j, &p)| {
            let p = p as i64;
            p * (p - 2 * (j as i64 + 1) + 1)
        })
        .sum()
}

pub fn conjugate(nu: &Partition) -> Partition {
    let first = nu.0.first().copied().unwrap_or(0);
    Partition((1..=first).map(|c| nu.0.iter().filter(|&&p| p >= c).count() as u32).collect())
}

/// Pair of partitions, not both empty.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PartitionPairPlus {
    pub plus: Partition,
    pub minus: Partition,
}

impl PartitionPairPlus {
    pub fn new(plus: Partition, minus: Partition) -> Option<Self> {
        (!plus.is_empty() || !minus.is_empty()).then_some(PartitionPairPlus { plus, minus })
    }

    pub fn size(&self) -> u32 {
        self.plus.size() + self.minus.size()
    }
}

/// All pairs with `|μ⁺| + |μ⁻| ≤ max_size`, excluding `(∅, ∅)`.
pub fn enumerate_pairs_plus(max_size: u32) -> Vec<PartitionPairPlus> {
    let mut out = Vec::new();
    for total in 1..=max_size {
        for a in (0..=total).rev() {
            for plus in enumerate_partitions(a) {
                for minus in enumerate_partitions(total - a) {
                    out.push(PartitionPairPlus { plus: plus.clone(), minus });
                }
            }
        }
    }
    out
}

/// Partitions of every size `0..=n`.
pub fn partitions_up_to(n: u32) -> Vec<Partition> {
    (0..=n).flat_map(enumerate_partitions).collect()
}
