//! Hopf-link weights `𝒲_{μν}`, character-sum vertex coefficients and their
//! connected parts `G_{μ⁺,μ⁻}(τ)`.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, LazyLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::characters::character;
use crate::coefrings::{LaurentPoly, QCoefficient, Rational};
use crate::partitions::{conjugate, enumerate_partitions, kappa, z_factor, Partition};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WzwError {
    #[error("τ must be nonzero")]
    ZeroTau,
    #[error("|μ⁺| + |μ⁻| = {size} exceeds the bound {bound}")]
    BoundExceeded { size: u32, bound: u32 },
    #[error("head length {head} is shorter than l(μ) = {len}")]
    ShortHead { head: usize, len: usize },
}

/// `(μ, ν, 𝒲_{μν})`.
#[derive(Clone, Debug, PartialEq)]
pub struct HopfWeight {
    pub mu: Partition,
    pub nu: Partition,
    pub value: QCoefficient,
}

/// `(μ⁺, μ⁻, τ, G_{μ⁺,μ⁻}(τ))`.
#[derive(Clone, Debug, PartialEq)]
pub struct VertexAmplitude {
    pub mu_plus: Partition,
    pub mu_minus: Partition,
    pub tau: Rational,
    pub value: QCoefficient,
}

/// `s_λ(q^ρ) = q^{κ_λ/4} / ∏_□ (q^{h/2} − q^{−h/2})` with `q^ρ = (q^{−1/2}, q^{−3/2}, …)`.
pub fn schur_principal(lambda: &Partition) -> QCoefficient {
    let conj = conjugate(lambda);
    let mut value = QCoefficient::w_power(kappa(lambda) / 2, 1);
    for (r, c) in lambda.cells() {
        value = value.mul(&QCoefficient::inv_bracket(lambda.hook(r, c, &conj) as i64, 1));
    }
    value
}

/// Skew Schur polynomial `s_{ν/η}(x_1, …, x_n)` at monomials `x_j = w^{e_j}`.
pub fn skew_schur_monomials(nu: &Partition, eta: &Partition, exps: &[i64]) -> LaurentPoly {
    let mut memo: HashMap<(Partition, usize), LaurentPoly> = HashMap::new();
    skew_rec(nu, eta, exps, exps.len(), &mut memo)
}

fn skew_rec(
    nu: &Partition,
    eta: &Partition,
    exps: &[i64],
    n: usize,
    memo: &mut HashMap<(Partition, usize), LaurentPoly>,
) -> LaurentPoly {
    if !nu.contains(eta) {
        return LaurentPoly::zero();
    }
    if nu == eta {
        return LaurentPoly::one();
    }
    if n == 0 {
        return LaurentPoly::zero();
    }
    if let Some(v) = memo.get(&(nu.clone(), n)) {
        return v.clone();
    }
    // Remove a horizontal strip ν/κ carrying the variable x_n.
    let mut acc = LaurentPoly::zero();
    let mut kappa_parts = vec![0u32; nu.len()];
    fn strips(
        nu: &Partition,
        eta: &Partition,
        i: usize,
        cur: &mut Vec<u32>,
        out: &mut Vec<Partition>,
    ) {
        if i == nu.len() {
            out.push(Partition::from_unsorted(cur.clone()));
            return;
        }
        let lo = nu.part(i + 2).max(eta.part(i + 1));
        let hi = nu.part(i + 1);
        for v in lo..=hi {
            cur[i] = v;
            strips(nu, eta, i + 1, cur, out);
        }
    }
    let mut kappas = Vec::new();
    strips(nu, eta, 0, &mut kappa_parts, &mut kappas);
    for k in kappas {
        let strip = (nu.size() - k.size()) as i64;
        let inner = skew_rec(&k, eta, exps, n - 1, memo);
        if inner.is_zero() {
            continue;
        }
        acc = acc.add(&inner.shift(strip * exps[n - 1]));
    }
    memo.insert((nu.clone(), n), acc.clone());
    acc
}

static HOPF: LazyLock<RwLock<HashMap<(Partition, Partition), QCoefficient>>> =
    LazyLock::new(|| RwLock::new(HashMap::new()));

/// `𝒲_{μν} = s_μ(q^ρ) · s_ν(q^{μ+ρ})` using a head of length `head` for the
/// shifted specialization and the closed form for the remaining tail.
pub fn w_hopf_with_head(mu: &Partition, nu: &Partition, head: usize) -> Result<QCoefficient, WzwError> {
    if head < mu.len() {
        return Err(WzwError::ShortHead { head, len: mu.len() });
    }
    // x_i = q^{μ_i − i + 1/2} = w^{2μ_i − 2i + 1} for i ≤ head; the tail is q^{−head}·q^ρ.
    let exps: Vec<i64> = (1..=head).map(|i| 2 * mu.part(i) as i64 - 2 * i as i64 + 1).collect();
    let mut parts = Vec::new();
    for size in 0..=nu.size() {
        for eta in enumerate_partitions(size) {
            if !nu.contains(&eta) {
                continue;
            }
            let head_part = skew_schur_monomials(nu, &eta, &exps);
            if head_part.is_zero() {
                continue;
            }
            let tail = schur_principal(&eta).shift(-2 * head as i64 * eta.size() as i64);
            parts.push(tail.mul(&QCoefficient::from_laurent(head_part, 1)));
        }
    }
    Ok(schur_principal(mu).mul(&QCoefficient::sum(&parts)))
}

/// `𝒲_{μν}` at the minimal head length `l(μ)`, memoized.
pub fn w_hopf(mu: &Partition, nu: &Partition) -> QCoefficient {
    let key = (mu.clone(), nu.clone());
    if let Some(v) = HOPF.read().unwrap().get(&key) {
        return v.clone();
    }
    let v = w_hopf_with_head(mu, nu, mu.len()).expect("head length l(μ) is admissible");
    HOPF.write().unwrap().insert(key, v.clone());
    v
}

pub fn hopf_weight(mu: &Partition, nu: &Partition) -> HopfWeight {
    HopfWeight { mu: mu.clone(), nu: nu.clone(), value: w_hopf(mu, nu) }
}

/// Coefficient of `p⁺_{μ⁺} p⁻_{μ⁻}` in
/// `Σ χ_{ν⁺}(μ⁺)χ_{ν⁻}(μ⁻)/(z_{μ⁺} z_{μ⁻}) · q^{(κ_{ν⁺}τ + κ_{ν⁻}/τ)/2} 𝒲_{ν⁺ν⁻}`.
pub fn vertex_coefficient(mu_plus: &Partition, mu_minus: &Partition, tau: &Rational) -> Result<QCoefficient, WzwError> {
    if tau.is_zero() {
        return Err(WzwError::ZeroTau);
    }
    let zz = z_factor(mu_plus) * z_factor(mu_minus);
    let inv_tau = Rational::one() / tau;
    let mut parts = Vec::new();
    for nu_p in enumerate_partitions(mu_plus.size()) {
        let cp = character(&nu_p, mu_plus).expect("sizes agree");
        if cp == 0 {
            continue;
        }
        for nu_m in enumerate_partitions(mu_minus.size()) {
            let cm = character(&nu_m, mu_minus).expect("sizes agree");
            if cm == 0 {
                continue;
            }
            let expo = (Rational::from_integer(kappa(&nu_p).into()) * tau
                + Rational::from_integer(kappa(&nu_m).into()) * &inv_tau)
                / Rational::from_integer(2.into());
            let coeff = Rational::new(BigInt::from(cp * cm), zz.clone());
            parts.push(QCoefficient::q_power(&expo).mul(&w_hopf(&nu_p, &nu_m)).scale(&coeff));
        }
    }
    Ok(QCoefficient::sum(&parts))
}

type PairKey = (Partition, Partition);
type AmplitudeTable = Arc<BTreeMap<PairKey, QCoefficient>>;

static AMPLITUDES: LazyLock<RwLock<HashMap<(Rational, u32), AmplitudeTable>>> =
    LazyLock::new(|| RwLock::new(HashMap::new()));

fn pair_mul(
    a: &BTreeMap<PairKey, QCoefficient>,
    b: &BTreeMap<PairKey, QCoefficient>,
    bound: u32,
) -> BTreeMap<PairKey, QCoefficient> {
    let mut acc: BTreeMap<PairKey, Vec<QCoefficient>> = BTreeMap::new();
    for ((pa, ma), ca) in a {
        for ((pb, mb), cb) in b {
            if pa.size() + ma.size() + pb.size() + mb.size() > bound {
                continue;
            }
            acc.entry((pa.union(pb), ma.union(mb))).or_default().push(ca.mul(cb));
        }
    }
    acc.into_iter()
        .map(|(k, v)| (k, QCoefficient::sum(&v)))
        .filter(|(_, c)| !c.is_zero())
        .collect()
}

/// All `G_{μ⁺,μ⁻}(τ)` with `|μ⁺| + |μ⁻| ≤ bound`, as the truncated log of the
/// vertex-coefficient series in `p⁺, p⁻`.
pub fn connected_amplitudes(tau: &Rational, bound: u32) -> Result<AmplitudeTable, WzwError> {
    if tau.is_zero() {
        return Err(WzwError::ZeroTau);
    }
    let key = (tau.clone(), bound);
    if let Some(t) = AMPLITUDES.read().unwrap().get(&key) {
        return Ok(t.clone());
    }
    // Reuse a table with a larger bound if one exists.
    let larger = AMPLITUDES
        .read()
        .unwrap()
        .iter()
        .filter(|((t, b), _)| t == tau && *b >= bound)
        .map(|(_, v)| v.clone())
        .next();
    let table = match larger {
        Some(t) => Arc::new(
            t.iter()
                .filter(|((p, m), _)| p.size() + m.size() <= bound)
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect(),
        ),
        None => Arc::new(compute_amplitudes(tau, bound)?),
    };
    AMPLITUDES.write().unwrap().insert(key, table.clone());
    Ok(table)
}

fn compute_amplitudes(tau: &Rational, bound: u32) -> Result<BTreeMap<PairKey, QCoefficient>, WzwError> {
    // U = Σ_{(μ⁺,μ⁻) ≠ (∅,∅)} C(μ⁺, μ⁻, τ) p⁺_{μ⁺} p⁻_{μ⁻}
    let mut u: BTreeMap<PairKey, QCoefficient> = BTreeMap::new();
    for pair in crate::partitions::enumerate_pairs_plus(bound) {
        let c = vertex_coefficient(&pair.plus, &pair.minus, tau)?;
        if !c.is_zero() {
            u.insert((pair.plus, pair.minus), c);
        }
    }
    let mut out: BTreeMap<PairKey, Vec<QCoefficient>> = BTreeMap::new();
    let mut power = u.clone();
    for n in 1..=bound.max(1) as i64 {
        if n > 1 {
            power = pair_mul(&power, &u, bound);
        }
        if power.is_empty() {
            break;
        }
        let c = Rational::new(if n % 2 == 1 { 1.into() } else { (-1).into() }, n.into());
        for (k, v) in &power {
            out.entry(k.clone()).or_default().push(v.scale(&c));
        }
    }
    Ok(out
        .into_iter()
        .map(|(k, v)| (k, QCoefficient::sum(&v)))
        .filter(|(_, c)| !c.is_zero())
        .collect())
}

/// `G_{μ⁺,μ⁻}(τ)`; zero for `(∅, ∅)`.
pub fn connected_amplitude(
    mu_plus: &Partition,
    mu_minus: &Partition,
    tau: &Rational,
    bound: u32,
) -> Result<QCoefficient, WzwError> {
    let size = mu_plus.size() + mu_minus.size();
    if size > bound {
        return Err(WzwError::BoundExceeded { size, bound });
    }
    let table = connected_amplitudes(tau, bound)?;
    Ok(table.get(&(mu_plus.clone(), mu_minus.clone())).cloned().unwrap_or_else(QCoefficient::zero))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coefrings::rat;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn e() -> Partition {
        Partition::empty()
    }

    #[test]
    fn hopf_examples() {
        assert!(w_hopf(&e(), &e()).is_one());
        assert_eq!(w_hopf(&p(&[1]), &e()), QCoefficient::inv_bracket(1, 1));
        let expected = QCoefficient::w_power(-1, 1)
            .mul(&QCoefficient::inv_bracket(1, 1))
            .mul(&QCoefficient::inv_bracket(2, 1));
        assert_eq!(w_hopf(&e(), &p(&[1, 1])), expected);
    }

    #[test]
    fn principal_specialization_matches_elementary_and_complete() {
        // e_n(q^ρ) = q^{−n²/2}/∏(1−q^{−i}),  h_n(q^ρ) = q^{−n/2}/∏(1−q^{−i})
        for n in 1..=4i64 {
            let mut den = QCoefficient::one();
            for i in 1..=n {
                den = den.mul(&QCoefficient::one().sub(&QCoefficient::w_power(-2 * i, 1)));
            }
            let e_n = QCoefficient::w_power(-n * n, 1).div(&den).unwrap();
            let h_n = QCoefficient::w_power(-n, 1).div(&den).unwrap();
            assert_eq!(schur_principal(&p(&vec![1; n as usize])), e_n);
            assert_eq!(schur_principal(&p(&[n as u32])), h_n);
        }
    }

    #[test]
    fn symmetric_and_head_independent() {
        let shapes = [e(), p(&[1]), p(&[2]), p(&[1, 1]), p(&[2, 1])];
        for a in &shapes {
            for b in &shapes {
                assert_eq!(w_hopf(a, b), w_hopf(b, a), "{a} {b}");
                let h = a.len();
                assert_eq!(w_hopf_with_head(a, b, h).unwrap(), w_hopf_with_head(a, b, h + 2).unwrap());
            }
        }
    }

    #[test]
    fn vertex_examples() {
        assert!(vertex_coefficient(&e(), &e(), &rat(3, 2)).unwrap().is_one());
        assert_eq!(vertex_coefficient(&p(&[1]), &e(), &rat(-7, 3)).unwrap(), QCoefficient::inv_bracket(1, 1));
        let lhs = vertex_coefficient(&p(&[1, 1]), &e(), &rat(1, 1)).unwrap();
        let q = QCoefficient::w_power(2, 1);
        let qi = QCoefficient::w_power(-2, 1);
        let rhs = q
            .mul(&w_hopf(&p(&[2]), &e()))
            .add(&qi.mul(&w_hopf(&p(&[1, 1]), &e())))
            .scale(&rat(1, 2));
        assert_eq!(lhs, rhs);
        assert_eq!(vertex_coefficient(&p(&[1]), &e(), &rat(0, 1)), Err(WzwError::ZeroTau));
    }

    #[test]
    fn amplitude_examples() {
        let tau = rat(2, 1);
        assert_eq!(connected_amplitude(&p(&[1]), &e(), &tau, 2).unwrap(), QCoefficient::inv_bracket(1, 1));
        assert!(connected_amplitude(&e(), &e(), &tau, 2).unwrap().is_zero());
        let g11 = connected_amplitude(&p(&[1, 1]), &e(), &tau, 2).unwrap();
        let g1 = connected_amplitude(&p(&[1]), &e(), &tau, 2).unwrap();
        let c11 = vertex_coefficient(&p(&[1, 1]), &e(), &tau).unwrap();
        assert_eq!(c11, g11.add(&g1.mul(&g1).scale(&rat(1, 2))));
        assert!(matches!(
            connected_amplitude(&p(&[2, 1]), &e(), &tau, 2),
            Err(WzwError::BoundExceeded { .. })
        ));
    }
}
