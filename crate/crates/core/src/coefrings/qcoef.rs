use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::cyclotomic::{
    bracket_factors, cyclotomic, cyclotomic_poly, maybe_divisible, stretch_factors,
};
use super::laurent::LaurentPoly;
use super::{CoefError, Rational};

/// Exact rational function of `w`, where `w^{2M} = q` and `M = root_order`.
///
/// The denominator is kept as `∏ Φ_d(w)^{e_d} · rest(w)`: nearly every
/// denominator met in practice is a product of quantum integers
/// `w^n − w^{−n}`, which factor into cyclotomic polynomials, and `rest`
/// (monic, free of cyclotomic factors) absorbs anything else.
#[derive(Clone, Debug)]
pub struct QCoefficient {
    root_order: u32,
    num: LaurentPoly,
    cyclo: BTreeMap<u32, u32>,
    rest: LaurentPoly,
}

impl QCoefficient {
    pub fn zero() -> Self {
        Self::from_rational(Rational::zero())
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    pub fn from_rational(c: Rational) -> Self {
        QCoefficient {
            root_order: 1,
            num: LaurentPoly::constant(c),
            cyclo: BTreeMap::new(),
            rest: LaurentPoly::one(),
        }
    }

    pub fn from_laurent(num: LaurentPoly, root_order: u32) -> Self {
        assert!(root_order >= 1);
        QCoefficient { root_order, num, cyclo: BTreeMap::new(), rest: LaurentPoly::one() }
    }

    /// `w^e` with `w^{2M} = q`.
    pub fn w_power(e: i64, root_order: u32) -> Self {
        Self::from_laurent(LaurentPoly::monomial(e, Rational::one()), root_order)
    }

    /// `q^x` for rational `x`, at the smallest root order that represents it.
    pub fn q_power(x: &Rational) -> Self {
        let b = x.denom().clone();
        let m: u32 = if b.is_even() { (&b / 2u32).try_into().unwrap() } else { b.try_into().unwrap() };
        let m = m.max(1);
        let e = x * Rational::from_integer(BigInt::from(2 * m as i64));
        Self::w_power(e.to_integer().try_into().expect("q exponent too large"), m)
    }

    /// Minimal root order `M` such that `q^x` is a power of `w`.
    pub fn root_order_for(x: &Rational) -> u32 {
        Self::q_power(x).root_order
    }

    /// Quantum bracket `w^n − w^{−n}`.
    pub fn bracket(n: i64, root_order: u32) -> Self {
        Self::from_laurent(
            LaurentPoly::from_terms([(n, Rational::one()), (-n, -Rational::one())]),
            root_order,
        )
    }

    /// `1 / (w^n − w^{−n})`, built directly in factored form.
    pub fn inv_bracket(n: i64, root_order: u32) -> Self {
        assert!(n != 0, "bracket [0] vanishes");
        let a = n.unsigned_abs() as u32;
        let sign = if n > 0 { Rational::one() } else { -Rational::one() };
        QCoefficient {
            root_order,
            num: LaurentPoly::monomial(a as i64, sign),
            cyclo: bracket_factors(a),
            rest: LaurentPoly::one(),
        }
    }

    pub fn root_order(&self) -> u32 {
        self.root_order
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    /// Expanded denominator: a monic polynomial in `w` with nonzero constant term.
    pub fn denominator(&self) -> LaurentPoly {
        self.cyclo
            .iter()
            .fold(self.rest.clone(), |acc, (d, e)| acc.mul(&cyclotomic_poly(*d).pow(*e)))
    }

    /// Cyclotomic part of the denominator as `d -> exponent`.
    pub fn cyclotomic_denominator(&self) -> &BTreeMap<u32, u32> {
        &self.cyclo
    }

    /// Whether every pole lies at a root of unity.
    pub fn denominator_is_cyclotomic(&self) -> bool {
        self.rest.is_one()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.cyclo.is_empty() && self.rest.is_one() && self.num.is_one()
    }

    /// The value as a rational number, if it is constant in `w`.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.cyclo.is_empty() && self.rest.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    /// Whether the denominator is 1 (value is a Laurent polynomial in `w`).
    pub fn as_laurent(&self) -> Option<&LaurentPoly> {
        (self.cyclo.is_empty() && self.rest.is_one()).then_some(&self.num)
    }

    /// Re-expresses the value at root order `target` (a multiple of the current one).
    pub fn rescale(&self, target: u32) -> Self {
        assert!(target.is_multiple_of(self.root_order), "target root order must be a multiple");
        let r = target / self.root_order;
        if r == 1 {
            return self.clone();
        }
        let mut cyclo = BTreeMap::new();
        for (d, e) in &self.cyclo {
            for (d2, e2) in stretch_factors(*d, r) {
                *cyclo.entry(d2).or_insert(0) += e * e2;
            }
        }
        // Stretching preserves coprimality, and `rest(w^r)` has a root of unity
        // only if `rest` does.
        let rest = self.rest.stretch(r as i64);
        QCoefficient { root_order: target, num: self.num.stretch(r as i64), cyclo, rest }
    }

    /// The same value at the smallest root order dividing the current one.
    pub fn minimal_root_order(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        if self.root_order == 1 {
            return self.clone();
        }
        let den = self.denominator();
        let mut divs = super::cyclotomic::divisors(self.root_order);
        divs.reverse();
        for r in divs {
            if r == 1 {
                break;
            }
            let (Some(n), Some(d)) = (self.num.compress(r as i64), den.compress(r as i64)) else {
                continue;
            };
            let m = self.root_order / r;
            let num = QCoefficient::from_laurent(n, m);
            return num.div(&QCoefficient::from_laurent(d, m)).expect("denominator is nonzero");
        }
        self.clone()
    }

    fn common(a: &Self, b: &Self) -> (Self, Self) {
        if a.root_order == b.root_order {
            return (a.clone(), b.clone());
        }
        let m = a.root_order.lcm(&b.root_order);
        (a.rescale(m), b.rescale(m))
    }

    pub fn neg(&self) -> Self {
        QCoefficient { num: self.num.neg(), ..self.clone() }
    }

    pub fn add(&self, other: &Self) -> Self {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return other.clone();
        }
        let (a, b) = Self::common(self, other);
        if a.cyclo == b.cyclo && a.rest == b.rest {
            let num = a.num.add(&b.num);
            return Self::reduced(a.root_order, num, a.cyclo, a.rest);
        }
        let mut cyclo = a.cyclo.clone();
        for (d, e) in &b.cyclo {
            let slot = cyclo.entry(*d).or_insert(0);
            *slot = (*slot).max(*e);
        }
        let (rest, ca_rest, cb_rest) = if a.rest == b.rest {
            (a.rest.clone(), LaurentPoly::one(), LaurentPoly::one())
        } else {
            let g = poly_gcd(&a.rest, &b.rest);
            let ca = exact_div(&b.rest, &g);
            let cb = exact_div(&a.rest, &g);
            (a.rest.mul(&ca), ca, cb)
        };
        let cof = |own: &BTreeMap<u32, u32>, extra: LaurentPoly| {
            cyclo.iter().fold(extra, |acc, (d, e)| {
                let have = own.get(d).copied().unwrap_or(0);
                if *e > have {
                    acc.mul(&cyclotomic_poly(*d).pow(e - have))
                } else {
                    acc
                }
            })
        };
        let num = a.num.mul(&cof(&a.cyclo, ca_rest)).add(&b.num.mul(&cof(&b.cyclo, cb_rest)));
        Self::reduced(a.root_order, num, cyclo, rest)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if let Some(c) = other.as_rational() {
            return self.scale(&c);
        }
        if let Some(c) = self.as_rational() {
            return other.scale(&c);
        }
        let (a, b) = Self::common(self, other);
        let num = a.num.mul(&b.num);
        let mut cyclo = a.cyclo;
        for (d, e) in b.cyclo {
            *cyclo.entry(d).or_insert(0) += e;
        }
        let rest = if b.rest.is_one() { a.rest } else { a.rest.mul(&b.rest) };
        Self::reduced(a.root_order, num, cyclo, rest)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        QCoefficient { num: self.num.scale(c), ..self.clone() }
    }

    /// Multiplies by `w^k` at the current root order.
    pub fn shift(&self, k: i64) -> Self {
        QCoefficient { num: self.num.shift(k), ..self.clone() }
    }

    pub fn inv(&self) -> Result<Self, CoefError> {
        if self.is_zero() {
            return Err(CoefError::DivisionByZero);
        }
        let low = self.num.min_exp().unwrap();
        let lead = self.num.leading_coeff();
        let monic = self.num.shift(-low).scale(&(Rational::one() / &lead));
        let (cyclo, rest) = factor_cyclotomic(&monic);
        let den_expanded = self.denominator();
        let num = den_expanded.shift(-low).scale(&(Rational::one() / lead));
        Ok(QCoefficient { root_order: self.root_order, num, cyclo, rest })
    }

    pub fn div(&self, other: &Self) -> Result<Self, CoefError> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// `w -> w^{-1}` (equivalently `q -> q^{-1}`).
    pub fn mirror(&self) -> Self {
        // Φ_d(w^{-1}) = w^{-φ(d)} Φ_d(w) for d ≥ 2 and −w^{-1}Φ_1(w) for d = 1.
        let mut shift = 0i64;
        let mut sign = Rational::one();
        for (d, e) in &self.cyclo {
            let deg = cyclotomic(*d).len() as i64 - 1;
            shift += deg * *e as i64;
            if *d == 1 && e % 2 == 1 {
                sign = -sign;
            }
        }
        let (rest, rest_shift, rest_scale) = if self.rest.is_one() {
            (self.rest.clone(), 0, Rational::one())
        } else {
            let m = self.rest.mirror();
            let deg = self.rest.max_exp().unwrap();
            let shifted = m.shift(deg);
            let c = shifted.leading_coeff();
            (shifted.scale(&(Rational::one() / &c)), deg, c)
        };
        let num = self.num.mirror().shift(shift + rest_shift).scale(&(sign / rest_scale));
        QCoefficient { root_order: self.root_order, num, cyclo: self.cyclo.clone(), rest }
    }

    fn reduced(root_order: u32, num: LaurentPoly, cyclo: BTreeMap<u32, u32>, rest: LaurentPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let mut num = num;
        let mut out_cyclo = BTreeMap::new();
        for (d, mut e) in cyclo {
            if e == 0 {
                continue;
            }
            let phi = cyclotomic(d);
            while e > 0 && maybe_divisible(&num, d) {
                match num.div_exact_monic(&phi) {
                    Some(q) => {
                        num = q;
                        e -= 1;
                    }
                    None => break,
                }
            }
            if e > 0 {
                out_cyclo.insert(d, e);
            }
        }
        let rest = if rest.is_one() {
            rest
        } else {
            let low = num.min_exp().unwrap();
            let g = poly_gcd(&num.shift(-low), &rest);
            if g.is_one() {
                rest
            } else {
                num = exact_div(&num.shift(-low), &g).shift(low);
                exact_div(&rest, &g)
            }
        };
        QCoefficient { root_order, num, cyclo: out_cyclo, rest }
    }

    /// Sums many terms with a single common denominator.
    pub fn sum<'a, I: IntoIterator<Item = &'a QCoefficient>>(items: I) -> Self {
        let items: Vec<&QCoefficient> = items.into_iter().filter(|x| !x.is_zero()).collect();
        if items.is_empty() {
            return Self::zero();
        }
        if items.iter().any(|x| !x.rest.is_one()) {
            return items.iter().fold(Self::zero(), |acc, x| acc.add(x));
        }
        let m = items.iter().fold(1u32, |acc, x| acc.lcm(&x.root_order));
        let scaled: Vec<QCoefficient> = items.iter().map(|x| x.rescale(m)).collect();
        let mut cyclo: BTreeMap<u32, u32> = BTreeMap::new();
        for x in &scaled {
            for (d, e) in &x.cyclo {
                let slot = cyclo.entry(*d).or_insert(0);
                *slot = (*slot).max(*e);
            }
        }
        let mut groups: BTreeMap<Vec<(u32, u32)>, LaurentPoly> = BTreeMap::new();
        for x in &scaled {
            let key: Vec<(u32, u32)> = x.cyclo.iter().map(|(d, e)| (*d, *e)).collect();
            let slot = groups.entry(key).or_default();
            *slot = slot.add(&x.num);
        }
        let mut num = LaurentPoly::zero();
        for (key, part) in groups {
            let own: BTreeMap<u32, u32> = key.into_iter().collect();
            let cof = cyclo.iter().fold(LaurentPoly::one(), |acc, (d, e)| {
                let have = own.get(d).copied().unwrap_or(0);
                if *e > have {
                    acc.mul(&cyclotomic_poly(*d).pow(e - have))
                } else {
                    acc
                }
            });
            num = num.add(&part.mul(&cof));
        }
        Self::reduced(m, num, cyclo, LaurentPoly::one())
    }
}

/// Splits a monic polynomial (nonzero constant term) into its cyclotomic part
/// and a cyclotomic-free remainder.
fn factor_cyclotomic(p: &LaurentPoly) -> (BTreeMap<u32, u32>, LaurentPoly) {
    let mut rem = p.clone();
    let mut out = BTreeMap::new();
    let deg = rem.max_exp().unwrap_or(0);
    if deg == 0 {
        return (out, rem);
    }
    // φ(d) ≥ d/6 for every d in range, so larger d cannot fit.
    let bound = 6 * deg as u32 + 6;
    for d in 1..=bound {
        let cur = rem.max_exp().unwrap();
        if cur == 0 {
            break;
        }
        let phi = cyclotomic(d);
        if phi.len() as i64 - 1 > cur {
            continue;
        }
        while maybe_divisible(&rem, d) {
            match rem.div_exact_monic(&phi) {
                Some(q) => {
                    rem = q;
                    *out.entry(d).or_insert(0) += 1;
                }
                None => break,
            }
        }
    }
    (out, rem)
}

/// Long division of ordinary polynomials over the rationals.
fn poly_divrem(a: &LaurentPoly, b: &LaurentPoly) -> (LaurentPoly, LaurentPoly) {
    let db = b.max_exp().unwrap();
    let lb = b.leading_coeff();
    let mut q = LaurentPoly::zero();
    let mut r = a.clone();
    while let Some(dr) = r.max_exp() {
        if dr < db {
            break;
        }
        let t = LaurentPoly::monomial(dr - db, r.leading_coeff() / &lb);
        q = q.add(&t);
        r = r.sub(&t.mul(b));
    }
    (q, r)
}

fn exact_div(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    let (q, r) = poly_divrem(a, b);
    debug_assert!(r.is_zero());
    q
}

/// Monic gcd of two ordinary polynomials.
fn poly_gcd(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_zero() {
        let (_, r) = poly_divrem(&x, &y);
        x = y;
        y = primitive(&r);
    }
    let lc = x.leading_coeff();
    x.scale(&(Rational::one() / lc))
}

fn primitive(p: &LaurentPoly) -> LaurentPoly {
    if p.is_zero() {
        return p.clone();
    }
    let g = p.int_terms().iter().fold(BigInt::zero(), |acc, (_, c)| acc.gcd(c));
    p.scale(&Rational::new(p.denom().clone(), g))
}

impl PartialEq for QCoefficient {
    fn eq(&self, other: &Self) -> bool {
        if self.root_order == other.root_order {
            return self.num == other.num && self.cyclo == other.cyclo && self.rest == other.rest;
        }
        let (a, b) = Self::common(self, other);
        a.num == b.num && a.cyclo == b.cyclo && a.rest == b.rest
    }
}

impl Eq for QCoefficient {}

impl Default for QCoefficient {
    fn default() -> Self {
        Self::zero()
    }
}

impl fmt::Display for QCoefficient {
    /// `(num)/(den)` at the coefficient's own root order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})/({})", self.num, self.denominator())
    }
}

impl QCoefficient {
    /// Canonical text at an explicit root order (a multiple of the own one).
    pub fn to_text(&self, root_order: u32) -> String {
        self.rescale(root_order).to_string()
    }

    /// Parses the canonical `(num)/(den)` form at the given root order.
    pub fn parse_text(s: &str, root_order: u32) -> Result<Self, CoefError> {
        let s = s.trim();
        let bad = || CoefError::Parse(s.to_string());
        let inner = s.strip_prefix('(').ok_or_else(bad)?;
        let (num, den) = inner.split_once(")/(").ok_or_else(bad)?;
        let den = den.strip_suffix(')').ok_or_else(bad)?;
        let num: LaurentPoly = num.parse().map_err(|_| bad())?;
        let den: LaurentPoly = den.parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(CoefError::DivisionByZero);
        }
        let n = QCoefficient::from_laurent(num, root_order);
        let d = QCoefficient::from_laurent(den, root_order);
        n.div(&d)
    }
}

impl std::ops::Add for &QCoefficient {
    type Output = QCoefficient;
    fn add(self, rhs: Self) -> QCoefficient {
        QCoefficient::add(self, rhs)
    }
}

impl std::ops::Sub for &QCoefficient {
    type Output = QCoefficient;
    fn sub(self, rhs: Self) -> QCoefficient {
        QCoefficient::sub(self, rhs)
    }
}

impl std::ops::Mul for &QCoefficient {
    type Output = QCoefficient;
    fn mul(self, rhs: Self) -> QCoefficient {
        QCoefficient::mul(self, rhs)
    }
}

impl std::ops::Neg for &QCoefficient {
    type Output = QCoefficient;
    fn neg(self) -> QCoefficient {
        QCoefficient::neg(self)
    }
}

impl From<Rational> for QCoefficient {
    fn from(c: Rational) -> Self {
        Self::from_rational(c)
    }
}

impl From<i64> for QCoefficient {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}
