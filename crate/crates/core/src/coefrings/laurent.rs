//! Sparse Laurent polynomials in `w` with rational coefficients.
//!
//! Coefficients are stored as integers over one shared positive denominator,
//! so the hot multiplication loop runs on machine integers whenever the
//! coefficients fit and falls back to `BigInt` only on overflow.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::Rational;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LaurentPoly {
    /// Sorted by exponent, no zero coefficients.
    terms: Vec<(i64, BigInt)>,
    /// Positive, coprime to the content of `terms`.
    denom: BigInt,
}

impl Default for LaurentPoly {
    fn default() -> Self {
        Self::zero()
    }
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { terms: Vec::new(), denom: BigInt::one() }
    }

    pub fn one() -> Self {
        Self::monomial(0, Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(0, c)
    }

    pub fn monomial(exp: i64, c: Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let (n, d) = (c.numer().clone(), c.denom().clone());
        Self::from_parts(vec![(exp, n)], d)
    }

    /// Builds a polynomial from arbitrary (possibly repeated, unsorted) terms.
    pub fn from_terms<I: IntoIterator<Item = (i64, Rational)>>(terms: I) -> Self {
        let terms: Vec<(i64, Rational)> = terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        if terms.is_empty() {
            return Self::zero();
        }
        let denom = terms.iter().fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
        let ints = terms
            .into_iter()
            .map(|(e, c)| (e, c.numer() * (&denom / c.denom())))
            .collect();
        Self::from_parts(ints, denom)
    }

    /// Integer-coefficient polynomial `Σ coeffs[i] w^(low + i)`.
    pub fn from_dense_i64(low: i64, coeffs: &[i64]) -> Self {
        let terms = coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != 0)
            .map(|(i, c)| (low + i as i64, BigInt::from(*c)))
            .collect();
        LaurentPoly { terms, denom: BigInt::one() }
    }

    fn from_parts(mut terms: Vec<(i64, BigInt)>, denom: BigInt) -> Self {
        terms.sort_by_key(|(e, _)| *e);
        let mut merged: Vec<(i64, BigInt)> = Vec::with_capacity(terms.len());
        for (e, c) in terms {
            match merged.last_mut() {
                Some((le, lc)) if *le == e => *lc += c,
                _ => merged.push((e, c)),
            }
        }
        merged.retain(|(_, c)| !c.is_zero());
        let mut p = LaurentPoly { terms: merged, denom };
        p.normalize();
        p
    }

    fn normalize(&mut self) {
        if self.terms.is_empty() {
            self.denom = BigInt::one();
            return;
        }
        if self.denom.is_negative() {
            self.denom = -&self.denom;
            for (_, c) in self.terms.iter_mut() {
                *c = -&*c;
            }
        }
        let mut g = self.denom.clone();
        for (_, c) in &self.terms {
            if g.is_one() {
                return;
            }
            g = g.gcd(c);
        }
        if !g.is_one() {
            self.denom /= &g;
            for (_, c) in self.terms.iter_mut() {
                *c /= &g;
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == 0 && self.terms[0].1 == self.denom
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.first().map(|(e, _)| *e)
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.last().map(|(e, _)| *e)
    }

    pub fn coeff(&self, exp: i64) -> Rational {
        match self.terms.binary_search_by_key(&exp, |(e, _)| *e) {
            Ok(i) => Rational::new(self.terms[i].1.clone(), self.denom.clone()),
            Err(_) => Rational::zero(),
        }
    }

    pub fn leading_coeff(&self) -> Rational {
        self.terms
            .last()
            .map(|(_, c)| Rational::new(c.clone(), self.denom.clone()))
            .unwrap_or_else(Rational::zero)
    }

    /// Terms as `(exponent, coefficient)` in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, Rational)> + '_ {
        self.terms.iter().map(move |(e, c)| (*e, Rational::new(c.clone(), self.denom.clone())))
    }

    pub(crate) fn int_terms(&self) -> &[(i64, BigInt)] {
        &self.terms
    }

    pub(crate) fn denom(&self) -> &BigInt {
        &self.denom
    }

    /// Returns the constant if this polynomial is `c·w^0`.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.as_slice() {
            [] => Some(Rational::zero()),
            [(0, c)] => Some(Rational::new(c.clone(), self.denom.clone())),
            _ => None,
        }
    }

    pub fn neg(&self) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
            denom: self.denom.clone(),
        }
    }

    /// Multiplies by `w^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
            denom: self.denom.clone(),
        }
    }

    /// Substitutes `w -> w^r` for `r >= 1`.
    pub fn stretch(&self, r: i64) -> Self {
        debug_assert!(r >= 1);
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (e * r, c.clone())).collect(),
            denom: self.denom.clone(),
        }
    }

    /// Inverse of `stretch`: `w^e -> w^{e/r}`, if every exponent is divisible by `r`.
    pub fn compress(&self, r: i64) -> Option<Self> {
        if self.terms.iter().any(|(e, _)| e % r != 0) {
            return None;
        }
        Some(LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (e / r, c.clone())).collect(),
            denom: self.denom.clone(),
        })
    }

    /// Substitutes `w -> w^{-1}`.
    pub fn mirror(&self) -> Self {
        let mut terms: Vec<_> = self.terms.iter().map(|(e, c)| (-e, c.clone())).collect();
        terms.reverse();
        LaurentPoly { terms, denom: self.denom.clone() }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() || self.is_zero() {
            return Self::zero();
        }
        let terms = self.terms.iter().map(|(e, x)| (*e, x * c.numer())).collect();
        let mut p = LaurentPoly { terms, denom: &self.denom * c.denom() };
        p.normalize();
        p
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let l = self.denom.lcm(&other.denom);
        let fa = &l / &self.denom;
        let fb = &l / &other.denom;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() || j < b.len() {
            let ord = match (a.get(i), b.get(j)) {
                (Some(x), Some(y)) => x.0.cmp(&y.0),
                (Some(_), None) => Ordering::Less,
                _ => Ordering::Greater,
            };
            match ord {
                Ordering::Less => {
                    out.push((a[i].0, &a[i].1 * &fa));
                    i += 1;
                }
                Ordering::Greater => {
                    out.push((b[j].0, &b[j].1 * &fb));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = &a[i].1 * &fa + &b[j].1 * &fb;
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        let mut p = LaurentPoly { terms: out, denom: l };
        p.normalize();
        p
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let terms = match (small_terms(&self.terms), small_terms(&other.terms)) {
            (Some(a), Some(b)) => mul_small(&a, &b).unwrap_or_else(|| mul_big(&self.terms, &other.terms)),
            _ => mul_big(&self.terms, &other.terms),
        };
        let mut p = LaurentPoly { terms, denom: &self.denom * &other.denom };
        p.normalize();
        p
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Exact quotient by a monic integer polynomial `divisor` (ascending
    /// coefficients, nonzero constant term). `None` if the division leaves a
    /// remainder.
    pub(crate) fn div_exact_monic(&self, divisor: &[i64]) -> Option<Self> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        let low = self.min_exp().unwrap();
        let high = self.max_exp().unwrap();
        let deg = divisor.len() as i64 - 1;
        if high - low < deg {
            return None;
        }
        let len = (high - low + 1) as usize;
        let quotient = match small_terms(&self.terms) {
            Some(small) => {
                let mut dense = vec![0i128; len];
                for (e, c) in small {
                    dense[(e - low) as usize] = c as i128;
                }
                div_dense_small(&mut dense, divisor)
                    .map(|q| q.map(|q| q.into_iter().map(BigInt::from).collect::<Vec<_>>()))
            }
            None => None,
        };
        let quotient = match quotient {
            Some(q) => q,
            None => {
                let mut dense = vec![BigInt::zero(); len];
                for (e, c) in &self.terms {
                    dense[(e - low) as usize] = c.clone();
                }
                div_dense_big(&mut dense, divisor)
            }
        }?;
        let terms = quotient
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (low + i as i64, c))
            .collect();
        let mut p = LaurentPoly { terms, denom: self.denom.clone() };
        p.normalize();
        Some(p)
    }

    /// Value of the integer numerator at `zeta` modulo the prime `p`
    /// (the shared denominator is ignored, so only zero tests are meaningful).
    pub(crate) fn eval_numerator_mod(&self, zeta: u64, order: u64, p: u64) -> u64 {
        let pb = BigInt::from(p);
        let mut acc: u128 = 0;
        for (e, c) in &self.terms {
            let cm = match c.to_i64() {
                Some(v) => v.rem_euclid(p as i64) as u128,
                None => c.mod_floor(&pb).to_u64().unwrap() as u128,
            };
            let z = pow_mod(zeta, e.rem_euclid(order as i64) as u64, p) as u128;
            acc = (acc + cm * z) % p as u128;
        }
        acc as u64
    }

    /// Power sums `Σ c_e · (e·s)^j / j!` for `j = 0..=n`, i.e. the Taylor
    /// coefficients of `Σ c_e exp(e·s·x)` at `x = 0`.
    pub fn exp_moments(&self, s: &Rational, n: usize) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); n + 1];
        for (e, c) in self.terms() {
            let a = Rational::from_integer(BigInt::from(e)) * s;
            let mut pow = c;
            for (j, slot) in out.iter_mut().enumerate() {
                if j > 0 {
                    pow = pow * &a / Rational::from_integer(BigInt::from(j as i64));
                }
                *slot += &pow;
            }
        }
        out
    }
}

pub(crate) fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r: u64 = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = ((r as u128 * b as u128) % p as u128) as u64;
        }
        b = ((b as u128 * b as u128) % p as u128) as u64;
        e >>= 1;
    }
    r
}

fn small_terms(terms: &[(i64, BigInt)]) -> Option<Vec<(i64, i64)>> {
    terms.iter().map(|(e, c)| c.to_i64().map(|v| (*e, v))).collect()
}

fn mul_small(a: &[(i64, i64)], b: &[(i64, i64)]) -> Option<Vec<(i64, BigInt)>> {
    let lo = a[0].0 + b[0].0;
    let hi = a[a.len() - 1].0 + b[b.len() - 1].0;
    let span = (hi - lo + 1) as usize;
    let work = a.len() * b.len();
    if span <= 4 * work + 64 {
        let mut dense = vec![0i128; span];
        for (ea, ca) in a {
            for (eb, cb) in b {
                let slot = &mut dense[(ea + eb - lo) as usize];
                *slot = slot.checked_add(*ca as i128 * *cb as i128)?;
            }
        }
        Some(
            dense
                .into_iter()
                .enumerate()
                .filter(|(_, c)| *c != 0)
                .map(|(i, c)| (lo + i as i64, BigInt::from(c)))
                .collect(),
        )
    } else {
        let mut prods: Vec<(i64, i128)> = Vec::with_capacity(work);
        for (ea, ca) in a {
            for (eb, cb) in b {
                prods.push((ea + eb, *ca as i128 * *cb as i128));
            }
        }
        prods.sort_unstable_by_key(|(e, _)| *e);
        let mut out: Vec<(i64, BigInt)> = Vec::new();
        let mut cur: Option<(i64, i128)> = None;
        for (e, c) in prods {
            cur = match cur {
                Some((ce, cc)) if ce == e => Some((ce, cc.checked_add(c)?)),
                Some((ce, cc)) => {
                    if cc != 0 {
                        out.push((ce, BigInt::from(cc)));
                    }
                    Some((e, c))
                }
                None => Some((e, c)),
            };
        }
        if let Some((ce, cc)) = cur {
            if cc != 0 {
                out.push((ce, BigInt::from(cc)));
            }
        }
        Some(out)
    }
}

fn mul_big(a: &[(i64, BigInt)], b: &[(i64, BigInt)]) -> Vec<(i64, BigInt)> {
    let lo = a[0].0 + b[0].0;
    let hi = a[a.len() - 1].0 + b[b.len() - 1].0;
    let span = (hi - lo + 1) as usize;
    if span <= 4 * a.len() * b.len() + 64 {
        let mut dense = vec![BigInt::zero(); span];
        for (ea, ca) in a {
            for (eb, cb) in b {
                dense[(ea + eb - lo) as usize] += ca * cb;
            }
        }
        dense
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (lo + i as i64, c))
            .collect()
    } else {
        let mut map = std::collections::BTreeMap::new();
        for (ea, ca) in a {
            for (eb, cb) in b {
                *map.entry(ea + eb).or_insert_with(BigInt::zero) += ca * cb;
            }
        }
        map.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    }
}

/// Outer `None` on overflow, inner `None` on a nonzero remainder.
fn div_dense_small(dense: &mut [i128], divisor: &[i64]) -> Option<Option<Vec<i128>>> {
    let deg = divisor.len() - 1;
    let qlen = dense.len() - deg;
    let mut q = vec![0i128; qlen];
    for i in (0..qlen).rev() {
        let c = dense[i + deg];
        if c == 0 {
            continue;
        }
        q[i] = c;
        for (j, d) in divisor.iter().enumerate() {
            if *d != 0 {
                let slot = &mut dense[i + j];
                *slot = slot.checked_sub(c.checked_mul(*d as i128)?)?;
            }
        }
    }
    if dense[..deg].iter().all(|c| *c == 0) {
        Some(Some(q))
    } else {
        Some(None)
    }
}

fn div_dense_big(dense: &mut [BigInt], divisor: &[i64]) -> Option<Vec<BigInt>> {
    let deg = divisor.len() - 1;
    let qlen = dense.len() - deg;
    let mut q = vec![BigInt::zero(); qlen];
    for i in (0..qlen).rev() {
        let c = dense[i + deg].clone();
        if c.is_zero() {
            continue;
        }
        for (j, d) in divisor.iter().enumerate() {
            if *d != 0 {
                dense[i + j] -= &c * d;
            }
        }
        q[i] = c;
    }
    if dense[..deg].iter().all(|c| c.is_zero()) {
        Some(q)
    } else {
        None
    }
}

impl fmt::Display for LaurentPoly {
    /// Canonical form: ascending `c*w^e` terms joined by ` + `, `0` when empty.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}*w^{}", c, e)?;
        }
        Ok(())
    }
}

impl std::str::FromStr for LaurentPoly {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "0" {
            return Ok(Self::zero());
        }
        let mut terms = Vec::new();
        for tok in s.split(" + ") {
            let (c, e) = tok
                .trim()
                .split_once("*w^")
                .ok_or_else(|| format!("malformed term `{tok}`"))?;
            let c: Rational = c.parse().map_err(|_| format!("bad coefficient `{c}`"))?;
            let e: i64 = e.parse().map_err(|_| format!("bad exponent `{e}`"))?;
            terms.push((e, c));
        }
        Ok(Self::from_terms(terms))
    }
}
