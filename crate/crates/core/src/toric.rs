//! Local toric Fano surfaces: presets, weight ratios at a specialized torus,
//! the product formula, the localization graph sum, and Gopakumar–Vafa
//! resummation of the free energy.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coefrings::{CoefError, NovikovSeries, QCoefficient, Rational};
use crate::feynman::{edge_variables, partition_function_graphsum, EdgeRule, FeynmanError, WeightTable};
use crate::graphs::degree_vectors;
use crate::partitions::{enumerate_pairs_plus, enumerate_partitions, kappa, z_factor, Partition};
use crate::wzw::{connected_amplitudes, w_hopf, WzwError};

pub const PRESET_NAMES: [&str; 5] = ["p2", "p1xp1", "b1", "b2", "b3"];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ToricError {
    #[error("unknown preset `{0}`")]
    UnknownPreset(String),
    #[error("invalid surface: {0}")]
    Invalid(String),
    #[error("torus parameter c = {c} is degenerate at vertex {vertex}: {detail}")]
    Degenerate { vertex: usize, c: String, detail: String },
    #[error("s_{vertex} = τ_{vertex} + 1/τ_{next} fails", next = .vertex + 1)]
    ConstraintViolated { vertex: usize },
    #[error("expected {expected} weight ratios, got {got}")]
    TauLength { expected: usize, got: usize },
    #[error("non-integral Gopakumar–Vafa data in class {class:?}: {detail}")]
    NonIntegral { class: Vec<i64>, detail: String },
    #[error(transparent)]
    Feynman(#[from] FeynmanError),
    #[error(transparent)]
    Wzw(#[from] WzwError),
    #[error(transparent)]
    Coef(#[from] CoefError),
}

/// A cycle of `k` torus-invariant curves with framings `s_i` and classes
/// `class_map[i]` in the basis `variables`. Curve `i` joins fixed points
/// `i` and `i + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ToricSurface {
    #[serde(default)]
    pub name: String,
    pub k: u32,
    pub s: Vec<i64>,
    pub variables: Vec<String>,
    pub class_map: Vec<Vec<i64>>,
}

type Ray = (i64, i64);

impl ToricSurface {
    pub fn new(
        name: &str,
        k: u32,
        s: Vec<i64>,
        variables: Vec<String>,
        class_map: Vec<Vec<i64>>,
    ) -> Result<Self, ToricError> {
        let surf = ToricSurface { name: name.to_string(), k, s, variables, class_map };
        surf.validate()?;
        Ok(surf)
    }

    pub fn validate(&self) -> Result<(), ToricError> {
        let bad = |m: String| Err(ToricError::Invalid(m));
        let k = self.k as usize;
        if k < 3 {
            return bad(format!("k ≥ 3 required, got k = {k}"));
        }
        if self.s.len() != k {
            return bad(format!("s must have k = {k} entries, got {}", self.s.len()));
        }
        if let Some(i) = self.s.iter().position(|&x| x <= -2) {
            return bad(format!("s_i > −2 violated: s_{i} = {}", self.s[i]));
        }
        if self.variables.is_empty() {
            return bad("at least one Novikov variable is required".into());
        }
        for (i, v) in self.variables.iter().enumerate() {
            if self.variables[..i].contains(v) {
                return bad(format!("duplicate variable name `{v}`"));
            }
        }
        if self.class_map.len() != k {
            return bad(format!("class_map must have k = {k} rows, got {}", self.class_map.len()));
        }
        for (i, row) in self.class_map.iter().enumerate() {
            if row.len() != self.variables.len() {
                return bad(format!(
                    "class_map row {i} has {} entries but there are {} variables",
                    row.len(),
                    self.variables.len()
                ));
            }
            if row.iter().all(|&x| x == 0) {
                return bad(format!("class_map row {i} is the zero class"));
            }
        }
        let total: i64 = self.s.iter().sum();
        if total != 12 - 3 * k as i64 {
            return bad(format!("Σ s_i = 12 − 3k violated: Σ s_i = {total}, 12 − 3k = {}", 12 - 3 * k as i64));
        }
        let rays = self.rays();
        if rays[k] != rays[0] || rays[k + 1] != rays[1] {
            return bad("the fan ρ_{i+1} = −s_i ρ_i − ρ_{i−1} does not close up".into());
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self, ToricError> {
        let surf: ToricSurface =
            serde_json::from_str(text).map_err(|e| ToricError::Invalid(format!("malformed surface file: {e}")))?;
        surf.validate()?;
        Ok(surf)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("surface serializes")
    }

    /// Rays `ρ_{−1}, ρ_0, …, ρ_k` with `ρ_{−1} = (1,0)`, `ρ_0 = (0,1)` and
    /// `ρ_{i−1} + ρ_{i+1} = −s_i ρ_i`; entry `j` holds `ρ_{j−1}`.
    fn rays(&self) -> Vec<Ray> {
        let mut rays: Vec<Ray> = vec![(1, 0), (0, 1)];
        for i in 0..self.k as usize {
            let (a, b) = (rays[i], rays[i + 1]);
            rays.push((-self.s[i] * b.0 - a.0, -self.s[i] * b.1 - a.1));
        }
        rays
    }

    /// Homology class of an edge-degree vector.
    pub fn class_of(&self, d: &[u32]) -> Vec<i64> {
        let mut c = vec![0i64; self.variables.len()];
        for (row, &di) in self.class_map.iter().zip(d) {
            for (x, y) in c.iter_mut().zip(row) {
                *x += y * di as i64;
            }
        }
        c
    }

    /// `−K · class`, evaluated on an edge-degree vector: `Σ d_i (2 + s_i)`.
    pub fn anticanonical_degree(&self, d: &[u32]) -> i64 {
        d.iter().zip(&self.s).map(|(&di, &si)| di as i64 * (2 + si)).sum()
    }
}

pub fn preset(name: &str) -> Result<ToricSurface, ToricError> {
    let vars = |v: &[&str]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
    let surf = match name {
        "p2" => ToricSurface::new(name, 3, vec![1, 1, 1], vars(&["t"]), vec![vec![1]; 3]),
        "p1xp1" => ToricSurface::new(
            name,
            4,
            vec![0, 0, 0, 0],
            vars(&["tF1", "tF2"]),
            vec![vec![1, 0], vec![0, 1], vec![1, 0], vec![0, 1]],
        ),
        "b1" => ToricSurface::new(
            name,
            4,
            vec![0, -1, 0, 1],
            vars(&["t1", "t2"]),
            vec![vec![1, 0], vec![0, 1], vec![1, 0], vec![1, 1]],
        ),
        "b2" => ToricSurface::new(
            name,
            5,
            vec![0, -1, -1, -1, 0],
            vars(&["tH", "tE1", "tE2"]),
            vec![vec![1, -1, 0], vec![0, 1, 0], vec![1, -1, -1], vec![0, 0, 1], vec![1, 0, -1]],
        ),
        "b3" => ToricSurface::new(
            name,
            6,
            vec![-1; 6],
            vars(&["tH", "tE1", "tE2", "tE3"]),
            vec![
                vec![1, -1, 0, -1],
                vec![0, 1, 0, 0],
                vec![1, -1, -1, 0],
                vec![0, 0, 1, 0],
                vec![1, 0, -1, -1],
                vec![0, 0, 0, 1],
            ],
        ),
        _ => return Err(ToricError::UnknownPreset(name.to_string())),
    }?;
    Ok(surf)
}

pub fn presets() -> Vec<ToricSurface> {
    PRESET_NAMES.iter().map(|n| preset(n).expect("preset data is valid")).collect()
}

/// `τ_i = u_i⁻ / u_i⁺` at each fixed point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightRatios {
    pub tau: Vec<Rational>,
}

/// Tangent weights at the fixed points for the torus direction `(1, c)`.
///
/// At fixed point `i`, the cone spanned by `ρ_{i−1}, ρ_i`, the weight along
/// curve `i` is the dual of `ρ_{i−1}` and the weight along curve `i − 1` is
/// the dual of `ρ_i`.
pub fn derive_tau(surf: &ToricSurface, c: &Rational) -> Result<WeightRatios, ToricError> {
    surf.validate()?;
    let rays = surf.rays();
    let k = surf.k as usize;
    let one = Rational::one();
    let eval = |m: Ray| Rational::from_integer(m.0.into()) * &one + Rational::from_integer(m.1.into()) * c;
    let mut tau = Vec::with_capacity(k);
    for i in 0..k {
        let (a, b) = (rays[i], rays[i + 1]);
        let u_plus = eval((b.1, -b.0));
        let u_minus = eval((-a.1, a.0));
        for (u, label) in [(&u_plus, "u⁺"), (&u_minus, "u⁻")] {
            if u.is_zero() {
                return Err(ToricError::Degenerate {
                    vertex: i,
                    c: c.to_string(),
                    detail: format!("{label}_{i} vanishes"),
                });
            }
        }
        tau.push(u_minus / u_plus);
    }
    for i in 0..k {
        let lhs = Rational::from_integer(surf.s[i].into());
        if lhs != &tau[i] + Rational::one() / &tau[(i + 1) % k] {
            return Err(ToricError::ConstraintViolated { vertex: i });
        }
    }
    Ok(WeightRatios { tau })
}

fn with_minimal_root_orders(series: NovikovSeries) -> NovikovSeries {
    let mut out = NovikovSeries::new(series.variables().to_vec(), series.truncation());
    for ((exps, l), c) in series.into_terms() {
        out.add_term(exps, l, c.minimal_root_order());
    }
    out
}

fn sign_power(s: i64, d: u32) -> QCoefficient {
    QCoefficient::from_int(if s.rem_euclid(2) == 1 && d % 2 == 1 { -1 } else { 1 })
}

/// `Z = ∏_i Σ_{ν_i} q^{κ_{ν_i} s_i/2} 𝒲_{ν_i,ν_{i−1}} ((−1)^{s_i} t_i)^{|ν_i|}`
/// in the edge variables, through total edge degree `max_degree`.
pub fn z_product(surf: &ToricSurface, max_degree: u32) -> NovikovSeries {
    let k = surf.k as usize;
    let mut out = NovikovSeries::new(edge_variables(surf.k), max_degree);
    out.add_term(vec![0; k], 0, QCoefficient::one());
    let terms: Vec<(Vec<u32>, QCoefficient)> = degree_vectors(surf.k, max_degree)
        .into_par_iter()
        .map(|d| {
            let choices: Vec<Vec<Partition>> = d.iter().map(|&di| enumerate_partitions(di)).collect();
            let mut parts = Vec::new();
            let mut idx = vec![0usize; k];
            loop {
                let nu: Vec<&Partition> = (0..k).map(|i| &choices[i][idx[i]]).collect();
                let mut term = QCoefficient::one();
                for i in 0..k {
                    let prev = nu[(i + k - 1) % k];
                    term = term
                        .mul(&QCoefficient::w_power(kappa(nu[i]) * surf.s[i], 1))
                        .mul(&w_hopf(nu[i], prev))
                        .mul(&sign_power(surf.s[i], d[i]));
                    if term.is_zero() {
                        break;
                    }
                }
                parts.push(term);
                // odometer over the partition choices
                let mut j = 0;
                while j < k {
                    idx[j] += 1;
                    if idx[j] < choices[j].len() {
                        break;
                    }
                    idx[j] = 0;
                    j += 1;
                }
                if j == k {
                    break;
                }
            }
            (d, QCoefficient::sum(&parts))
        })
        .collect();
    for (d, c) in terms {
        out.add_term(d, 0, c);
    }
    out
}

/// Vertex weights `z_{μ⁺} z_{μ⁻} G_{μ⁺,μ⁻}(τ_i)` for all atoms up to `max_degree`.
pub fn localization_weights(
    surf: &ToricSurface,
    tau: &WeightRatios,
    max_degree: u32,
) -> Result<WeightTable, ToricError> {
    if tau.tau.len() != surf.k as usize {
        return Err(ToricError::TauLength { expected: surf.k as usize, got: tau.tau.len() });
    }
    let mut wt = WeightTable::new(surf.k, false);
    let pairs = enumerate_pairs_plus(max_degree);
    for (i, t) in tau.tau.iter().enumerate() {
        let table = connected_amplitudes(t, max_degree)?;
        for pair in &pairs {
            if let Some(g) = table.get(&(pair.plus.clone(), pair.minus.clone())) {
                let zz = Rational::from_integer(z_factor(&pair.plus) * z_factor(&pair.minus));
                wt.set(i as u32, pair.clone(), g.scale(&zz));
            }
        }
    }
    Ok(wt)
}

/// `Z` as the localization graph sum with `w_v = z_{μ⁺} z_{μ⁻} G_{μ⁺,μ⁻}(τ_{i(v)})`
/// and `w_e = ((−1)^{s_e} t_{i(e)})^{d_e}`, in the edge variables.
pub fn z_localization(surf: &ToricSurface, tau: &WeightRatios, max_degree: u32) -> Result<NovikovSeries, ToricError> {
    let wt = localization_weights(surf, tau, max_degree)?;
    let z = partition_function_graphsum(&wt, &EdgeRule::signed(&surf.s), max_degree, false)?;
    Ok(with_minimal_root_orders(z))
}

/// Series in the surface's Novikov basis, keyed by class vectors.
#[derive(Clone, Debug, PartialEq)]
pub struct ClassSeries {
    pub variables: Vec<String>,
    /// Bound on total edge degree used to produce the series.
    pub truncation: u32,
    pub terms: BTreeMap<Vec<i64>, QCoefficient>,
}

impl ClassSeries {
    pub fn coeff(&self, class: &[i64]) -> QCoefficient {
        self.terms.get(class).cloned().unwrap_or_else(QCoefficient::zero)
    }

    /// Smallest root order `M` (with `w^{2M} = q`) carrying every coefficient.
    pub fn root_order(&self) -> u32 {
        self.terms.values().fold(1u32, |m, c| m.lcm(&c.minimal_root_order().root_order()))
    }
}

/// Whether every edge-degree vector of class `class` has total at most `max_degree`.
fn class_is_complete(surf: &ToricSurface, class: &[i64], anticanonical: i64, max_degree: u32) -> bool {
    fn rec(surf: &ToricSurface, i: usize, left: i64, d: &mut Vec<u32>, class: &[i64], max_degree: u32) -> bool {
        if i == d.len() {
            return left != 0 || d.iter().sum::<u32>() <= max_degree || surf.class_of(d) != class;
        }
        let w = 2 + surf.s[i];
        let mut n = 0;
        while n as i64 * w <= left {
            d[i] = n;
            if !rec(surf, i + 1, left - n as i64 * w, d, class, max_degree) {
                return false;
            }
            n += 1;
        }
        d[i] = 0;
        true
    }
    let mut d = vec![0u32; surf.k as usize];
    rec(surf, 0, anticanonical, &mut d, class, max_degree)
}

/// Maps an edge-variable series to classes. With `complete_only`, drops
/// classes that also receive contributions from edge degrees beyond the
/// truncation.
pub fn to_classes(surf: &ToricSurface, series: &NovikovSeries, complete_only: bool) -> ClassSeries {
    let mut grouped: BTreeMap<Vec<i64>, (i64, Vec<QCoefficient>)> = BTreeMap::new();
    for ((exps, _), c) in series.terms() {
        let entry = grouped
            .entry(surf.class_of(exps))
            .or_insert_with(|| (surf.anticanonical_degree(exps), Vec::new()));
        entry.1.push(c.clone());
    }
    let terms = grouped
        .into_par_iter()
        .filter(|(class, (a, _))| !complete_only || class_is_complete(surf, class, *a, series.truncation()))
        .map(|(class, (_, cs))| (class, QCoefficient::sum(&cs).minimal_root_order()))
        .filter(|(_, c)| !c.is_zero())
        .collect();
    ClassSeries { variables: surf.variables.clone(), truncation: series.truncation(), terms }
}

/// Gopakumar–Vafa invariants `n^g_β`, nonzero entries only.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GvTable {
    pub variables: Vec<String>,
    pub entries: BTreeMap<Vec<i64>, BTreeMap<u32, BigInt>>,
}

impl GvTable {
    pub fn get(&self, class: &[i64], genus: u32) -> BigInt {
        self.entries.get(class).and_then(|m| m.get(&genus)).cloned().unwrap_or_else(BigInt::zero)
    }
}

/// `(−1)^{g−1} (w^m − w^{−m})^{2g−2} / m`.
fn gv_kernel(m: i64, g: u32) -> QCoefficient {
    let sign = if g % 2 == 1 { 1 } else { -1 };
    QCoefficient::bracket(m, 1)
        .pow(2 * g)
        .mul(&QCoefficient::inv_bracket(m, 1).pow(2))
        .scale(&Rational::new(sign.into(), m.into()))
}

/// Writes `p = Σ_g a_g x^g` with `x = (w − w⁻¹)²`.
fn in_powers_of_x(p: &crate::coefrings::LaurentPoly) -> Option<Vec<Rational>> {
    let x = QCoefficient::bracket(1, 1).pow(2);
    let x_poly = x.as_laurent().expect("polynomial").clone();
    let mut rem = p.clone();
    let mut out = Vec::new();
    while !rem.is_zero() {
        let top = rem.max_exp().unwrap();
        if top < 0 || top % 2 != 0 || rem.min_exp().unwrap() != -top {
            return None;
        }
        let g = (top / 2) as usize;
        if out.len() <= g {
            out.resize(g + 1, Rational::zero());
        }
        let a = rem.coeff(top);
        out[g] = a.clone();
        rem = rem.sub(&x_poly.pow(g as u32).scale(&a));
    }
    Some(out)
}

/// Solves `F = Σ_{β,g,m} n^g_β (−1)^{g−1} (w^m − w^{−m})^{2g−2} t^{mβ} / m`
/// for all classes fully determined by the edge-degree bound.
pub fn gv_extract(surf: &ToricSurface, max_degree: u32) -> Result<GvTable, ToricError> {
    let z = z_product(surf, max_degree);
    let f = z.log()?;
    let free = to_classes(surf, &f, true);
    let mut classes: Vec<(i64, Vec<i64>)> = free
        .terms
        .keys()
        .map(|c| {
            // −K·β from any edge vector of class β
            let a = f
                .terms()
                .find(|((e, _), _)| &surf.class_of(e) == c)
                .map(|((e, _), _)| surf.anticanonical_degree(e))
                .unwrap();
            (a, c.clone())
        })
        .collect();
    classes.sort();
    let mut table = GvTable { variables: surf.variables.clone(), entries: BTreeMap::new() };
    for (_, class) in classes {
        let mut r = free.coeff(&class);
        for m in 2..=class.iter().map(|x| x.abs()).max().unwrap_or(0) {
            if class.iter().any(|x| x % m != 0) {
                continue;
            }
            let base: Vec<i64> = class.iter().map(|x| x / m).collect();
            if let Some(ns) = table.entries.get(&base) {
                for (g, n) in ns {
                    r = r.sub(&gv_kernel(m, *g).scale(&Rational::from_integer(n.clone())));
                }
            }
        }
        let err = |detail: &str| ToricError::NonIntegral { class: class.clone(), detail: detail.to_string() };
        let r = r.mul(&QCoefficient::bracket(1, 1).pow(2)).minimal_root_order();
        if r.root_order() != 1 {
            return Err(err("fractional powers of w remain"));
        }
        let poly = r.as_laurent().ok_or_else(|| err("remainder is not a Laurent polynomial"))?;
        let coeffs = in_powers_of_x(poly).ok_or_else(|| err("remainder is not a polynomial in (w − w⁻¹)²"))?;
        let mut ns = BTreeMap::new();
        for (g, a) in coeffs.into_iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            if !a.is_integer() {
                return Err(err(&format!("genus {g} coefficient {a}")));
            }
            let n = if g % 2 == 1 { a.to_integer() } else { -a.to_integer() };
            ns.insert(g as u32, n);
        }
        if !ns.is_empty() {
            table.entries.insert(class, ns);
        }
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coefrings::rat;

    #[test]
    fn preset_data() {
        let p2 = preset("p2").unwrap();
        assert_eq!(p2.s, vec![1, 1, 1]);
        assert_eq!(p2.class_map, vec![vec![1]; 3]);
        let b1 = preset("b1").unwrap();
        assert_eq!(b1.s, vec![0, -1, 0, 1]);
        assert_eq!(b1.class_map[2], b1.class_map[0]);
        assert_eq!(b1.class_map[3], vec![1, 1]);
        assert_eq!(preset("b3").unwrap().s, vec![-1; 6]);
        assert!(matches!(preset("p3"), Err(ToricError::UnknownPreset(_))));
        assert_eq!(presets().len(), 5);
    }

    #[test]
    fn tau_examples() {
        let p2 = preset("p2").unwrap();
        assert_eq!(derive_tau(&p2, &rat(2, 1)).unwrap().tau, vec![rat(2, 1), rat(-1, 1), rat(1, 2)]);
        assert!(matches!(derive_tau(&p2, &rat(1, 1)), Err(ToricError::Degenerate { vertex: 1, .. })));
        let p1 = preset("p1xp1").unwrap();
        for c in [rat(2, 1), rat(5, 3), rat(-7, 2)] {
            let t = derive_tau(&p1, &c).unwrap().tau;
            for i in 0..4 {
                assert!((&t[i] + Rational::one() / &t[(i + 1) % 4]).is_zero());
            }
        }
        for surf in presets() {
            derive_tau(&surf, &rat(5, 3)).unwrap();
        }
    }

    #[test]
    fn surface_file_validation() {
        let ok = r#"{"k": 3, "s": [1, 1, 1], "variables": ["t"], "class_map": [[1], [1], [1]]}"#;
        assert_eq!(ToricSurface::from_json(ok).unwrap().k, 3);
        let neg = r#"{"k": 3, "s": [4, -2, 1], "variables": ["t"], "class_map": [[1], [1], [1]]}"#;
        let e = ToricSurface::from_json(neg).unwrap_err().to_string();
        assert!(e.contains("s_i > −2"), "{e}");
        let open = r#"{"k": 4, "s": [1, 0, 0, -1], "variables": ["t"], "class_map": [[1], [1], [1], [1]]}"#;
        assert!(ToricSurface::from_json(open).unwrap_err().to_string().contains("close"));
    }

    #[test]
    fn product_examples() {
        let p2 = preset("p2").unwrap();
        let z = to_classes(&p2, &z_product(&p2, 1), true);
        assert!(z.coeff(&[0]).is_one());
        assert_eq!(z.coeff(&[1]), QCoefficient::inv_bracket(1, 1).pow(2).scale(&rat(-3, 1)));
        let p1 = preset("p1xp1").unwrap();
        let z = to_classes(&p1, &z_product(&p1, 1), true);
        assert_eq!(z.coeff(&[1, 0]), QCoefficient::inv_bracket(1, 1).pow(2).scale(&rat(2, 1)));
    }

    #[test]
    fn completeness() {
        let b1 = preset("b1").unwrap();
        let z = to_classes(&b1, &z_product(&b1, 1), true);
        assert!(z.terms.contains_key(&vec![1, 0]));
        assert!(!z.terms.contains_key(&vec![1, 1]));
    }

    #[test]
    fn localization_low_degree() {
        let p2 = preset("p2").unwrap();
        let tau = derive_tau(&p2, &rat(2, 1)).unwrap();
        assert_eq!(z_localization(&p2, &tau, 0).unwrap().len(), 1);
        assert_eq!(z_localization(&p2, &tau, 2).unwrap(), z_product(&p2, 2));
    }

    #[test]
    fn localization_needs_the_framing_constraint() {
        let p2 = preset("p2").unwrap();
        let bogus = WeightRatios { tau: vec![rat(2, 1), rat(2, 1), rat(2, 1)] };
        assert_ne!(z_localization(&p2, &bogus, 2).unwrap(), z_product(&p2, 2));
        let tau = derive_tau(&p2, &rat(2, 1)).unwrap();
        let swapped = WeightRatios { tau: tau.tau.iter().map(|t| Rational::one() / t).collect() };
        assert_ne!(z_localization(&p2, &swapped, 2).unwrap(), z_product(&p2, 2));
    }

    #[test]
    fn gv_low_degree() {
        let gv = gv_extract(&preset("p2").unwrap(), 2).unwrap();
        assert_eq!(gv.get(&[1], 0), BigInt::from(3));
        assert_eq!(gv.get(&[2], 0), BigInt::from(-6));
        assert!(!gv.entries.contains_key(&vec![0]));
        let gv = gv_extract(&preset("p1xp1").unwrap(), 1).unwrap();
        assert_eq!(gv.get(&[1, 0], 0), BigInt::from(-2));
        assert_eq!(gv.get(&[0, 1], 0), BigInt::from(-2));
    }
}
