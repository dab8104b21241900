//! Generalized vertex operators `Y_i` and the two evaluations of
//! `Z = ⟨; ∏_i exp(Y_i) ;⟩`: through the Fock space and as a graph sum.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::coefrings::{CoefError, NovikovSeries, QCoefficient, Rational};
use crate::fock::{order_abnormally, vev, BosonIndex, BosonWord};
use crate::graphs::{degree_vectors, enumerate_graphs, GraphError};
use crate::partitions::{enumerate_pairs_plus, z_factor, Partition, PartitionPairPlus};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FeynmanError {
    #[error("t_{class} ends with half-integer exponent {doubled}/2")]
    HalfIntegerExponent { class: usize, doubled: u32 },
    #[error("weight table has k = {table}, edge rule has {rule} entries")]
    Mismatch { table: u32, rule: usize },
    #[error(transparent)]
    Coef(#[from] CoefError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Vertex weights `w_{i,(μ⁺,μ⁻)}`.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightTable {
    pub k: u32,
    pub weights: BTreeMap<(u32, PartitionPairPlus), QCoefficient>,
    /// Whether to carry `λ^{l(μ⁺)+l(μ⁻)−2}` per vertex.
    pub track_genus: bool,
}

impl WeightTable {
    pub fn new(k: u32, track_genus: bool) -> Self {
        WeightTable { k, weights: BTreeMap::new(), track_genus }
    }

    pub fn set(&mut self, color: u32, atom: PartitionPairPlus, w: QCoefficient) {
        if w.is_zero() {
            self.weights.remove(&(color, atom));
        } else {
            self.weights.insert((color, atom), w);
        }
    }

    pub fn get(&self, color: u32, atom: &PartitionPairPlus) -> Option<&QCoefficient> {
        self.weights.get(&(color, atom.clone()))
    }

    /// Seeded pseudo-random rational weights on every atom with
    /// `|μ⁺| + |μ⁻| ≤ max_size`; roughly one in five is zero.
    pub fn random(k: u32, max_size: u32, seed: u64, track_genus: bool) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut t = WeightTable::new(k, track_genus);
        for c in 0..k {
            for atom in enumerate_pairs_plus(max_size) {
                if rng.gen_range(0..5) == 0 {
                    continue;
                }
                let num: i64 = rng.gen_range(-6..=6);
                let den: i64 = rng.gen_range(1..=5);
                t.set(c, atom, QCoefficient::from_rational(Rational::new(num.into(), den.into())));
            }
        }
        t
    }

    fn lambda_exp(&self, atom: &PartitionPairPlus) -> i32 {
        if self.track_genus {
            atom.plus.len() as i32 + atom.minus.len() as i32 - 2
        } else {
            0
        }
    }
}

/// Per-class edge multipliers `c_i`: an edge of class `i` and degree `d`
/// contributes `(c_i t_i)^d`.
#[derive(Clone, Debug, PartialEq)]
pub struct EdgeRule {
    pub multipliers: Vec<QCoefficient>,
}

impl EdgeRule {
    pub fn plain(k: u32) -> Self {
        EdgeRule { multipliers: vec![QCoefficient::one(); k as usize] }
    }

    /// `c_i = (−1)^{s_i}`.
    pub fn signed(s: &[i64]) -> Self {
        let multipliers = s
            .iter()
            .map(|x| QCoefficient::from_int(if x.rem_euclid(2) == 0 { 1 } else { -1 }))
            .collect();
        EdgeRule { multipliers }
    }

    fn factor(&self, degree: &[u32]) -> QCoefficient {
        self.multipliers
            .iter()
            .zip(degree)
            .fold(QCoefficient::one(), |acc, (c, d)| acc.mul(&c.pow(*d)))
    }
}

pub fn edge_variables(k: u32) -> Vec<String> {
    (0..k).map(|i| format!("t{i}")).collect()
}

/// Bosonic content of a monomial: per color the annihilation modes and the
/// creation modes, plus the `λ` exponent.
type BosonKey = (Vec<(Partition, Partition)>, i32);

fn doubled_degree(key: &BosonKey) -> Vec<u32> {
    key.0.iter().map(|(p, n)| p.size() + n.size()).collect()
}

fn merge(a: &BosonKey, b: &BosonKey) -> BosonKey {
    let colors = a.0.iter().zip(&b.0).map(|((pa, na), (pb, nb))| (pa.union(pb), na.union(nb))).collect();
    (colors, a.1 + b.1)
}

type BosonPoly = BTreeMap<BosonKey, QCoefficient>;

fn poly_mul(a: &BosonPoly, b: &BosonPoly, max_doubled: u32) -> BosonPoly {
    let mut acc: BTreeMap<BosonKey, Vec<QCoefficient>> = BTreeMap::new();
    for (ka, ca) in a {
        let da: u32 = doubled_degree(ka).iter().sum();
        for (kb, cb) in b {
            let db: u32 = doubled_degree(kb).iter().sum();
            if da + db > max_doubled {
                continue;
            }
            acc.entry(merge(ka, kb)).or_default().push(ca.mul(cb));
        }
    }
    acc.into_iter()
        .map(|(k, parts)| (k, QCoefficient::sum(&parts)))
        .filter(|(_, c)| !c.is_zero())
        .collect()
}

fn unit_key(k: usize) -> BosonKey {
    (vec![(Partition::empty(), Partition::empty()); k], 0)
}

/// `exp(Y_i)` truncated at doubled total degree `max_doubled`.
fn exp_y(wt: &WeightTable, i: u32, max_doubled: u32) -> BosonPoly {
    let k = wt.k as usize;
    let mut y = BosonPoly::new();
    for ((c, atom), w) in &wt.weights {
        if *c != i || atom.size() > max_doubled {
            continue;
        }
        let mut key = unit_key(k);
        key.0[i as usize].0 = atom.plus.clone();
        key.0[(i as usize + k - 1) % k].1 = atom.minus.clone();
        key.1 = wt.lambda_exp(atom);
        let zz = z_factor(&atom.plus) * z_factor(&atom.minus);
        let coeff = w.scale(&Rational::new(BigInt::one(), zz));
        y.insert(key, coeff);
    }
    let mut out = BosonPoly::from([(unit_key(k), QCoefficient::one())]);
    let mut power = out.clone();
    for n in 1..=max_doubled as i64 {
        let inv = Rational::new(BigInt::one(), BigInt::from(n));
        power = poly_mul(&power, &y, max_doubled).into_iter().map(|(k, c)| (k, c.scale(&inv))).collect();
        if power.is_empty() {
            break;
        }
        for (key, c) in &power {
            let v = out.get(key).map(|x| x.add(c)).unwrap_or_else(|| c.clone());
            out.insert(key.clone(), v);
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// `Z` through the Fock space: expand each `exp(Y_i)`, multiply in cyclic
/// order, abnormally order every bosonic word and take its vev.
pub fn partition_function_vev(wt: &WeightTable, er: &EdgeRule, d: u32) -> Result<NovikovSeries, FeynmanError> {
    if er.multipliers.len() != wt.k as usize {
        return Err(FeynmanError::Mismatch { table: wt.k, rule: er.multipliers.len() });
    }
    let k = wt.k as usize;
    let max_doubled = 2 * d;
    let mut product = BosonPoly::from([(unit_key(k), QCoefficient::one())]);
    for i in 0..wt.k {
        product = poly_mul(&product, &exp_y(wt, i, max_doubled), max_doubled);
    }
    let terms: Vec<(BosonKey, QCoefficient)> = product.into_iter().collect();
    let evaluated: Vec<Result<Option<(Vec<u32>, i32, QCoefficient)>, FeynmanError>> = terms
        .par_iter()
        .map(|(key, c)| {
            let mut factors = Vec::new();
            for (color, (pos, neg)) in key.0.iter().enumerate() {
                for &m in pos.parts() {
                    factors.push((BosonIndex { color: color as u32, mode: m as i32 }, Rational::one()));
                }
                for &m in neg.parts() {
                    factors.push((BosonIndex { color: color as u32, mode: -(m as i32) }, Rational::one()));
                }
            }
            let value = vev(&order_abnormally(&BosonWord::new(factors)));
            let doubled = doubled_degree(key);
            let mut degree = Vec::with_capacity(k);
            for (class, dd) in doubled.iter().enumerate() {
                if dd % 2 != 0 {
                    if value.is_zero() {
                        return Ok(None);
                    }
                    return Err(FeynmanError::HalfIntegerExponent { class, doubled: *dd });
                }
                degree.push(dd / 2);
            }
            if value.is_zero() {
                return Ok(None);
            }
            let coeff = c.scale(&value).mul(&er.factor(&degree));
            Ok(Some((degree, key.1, coeff)))
        })
        .collect();
    let mut grouped: BTreeMap<(Vec<u32>, i32), Vec<QCoefficient>> = BTreeMap::new();
    for item in evaluated {
        if let Some((deg, l, c)) = item? {
            grouped.entry((deg, l)).or_default().push(c);
        }
    }
    let mut out = NovikovSeries::new(edge_variables(wt.k), d);
    for ((deg, l), parts) in grouped {
        out.add_term(deg, l, QCoefficient::sum(&parts));
    }
    Ok(out)
}

/// `Z` (or, with `connected_only`, `F`) as
/// `Σ_Γ λ^{2g−2} ∏_v w_v ∏_e (c_i t_i)^{d_e} / (|Aut Γ| ∏_e d_e)`.
pub fn partition_function_graphsum(
    wt: &WeightTable,
    er: &EdgeRule,
    d: u32,
    connected_only: bool,
) -> Result<NovikovSeries, FeynmanError> {
    if er.multipliers.len() != wt.k as usize {
        return Err(FeynmanError::Mismatch { table: wt.k, rule: er.multipliers.len() });
    }
    let mut out = NovikovSeries::new(edge_variables(wt.k), d);
    if !connected_only {
        out.add_term(vec![0; wt.k as usize], 0, QCoefficient::one());
    }
    let mut work = Vec::new();
    for deg in degree_vectors(wt.k, d) {
        let classes = enumerate_graphs(wt.k, &deg, connected_only)?;
        work.push((deg, classes));
    }
    for (deg, classes) in work {
        let edge = er.factor(&deg);
        let contributions: Vec<Option<(i32, QCoefficient)>> = classes
            .par_iter()
            .map(|cls| {
                let g = &cls.graph;
                let mut prod = QCoefficient::one();
                for v in 0..g.num_vertices() {
                    let w = wt.get(g.colors()[v], &g.atom(v))?;
                    prod = prod.mul(w);
                }
                let denom = BigInt::from(cls.aut) * g.edge_degree_product();
                let lambda = if wt.track_genus { (2 * g.genus() - 2) as i32 } else { 0 };
                Some((lambda, prod.scale(&Rational::new(BigInt::one(), denom))))
            })
            .collect();
        let mut grouped: BTreeMap<i32, Vec<QCoefficient>> = BTreeMap::new();
        for (l, c) in contributions.into_iter().flatten() {
            grouped.entry(l).or_default().push(c);
        }
        for (l, parts) in grouped {
            out.add_term(deg.clone(), l, QCoefficient::sum(&parts).mul(&edge));
        }
    }
    Ok(out)
}

/// `F = log Z`.
pub fn free_energy(z: &NovikovSeries) -> Result<NovikovSeries, FeynmanError> {
    Ok(z.log()?)
}
