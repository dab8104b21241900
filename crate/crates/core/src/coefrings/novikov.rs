use std::collections::BTreeMap;
use std::fmt;

use super::{CoefError, QCoefficient, Rational};

/// Key of a series term: exponents of the Novikov variables and of `λ`.
pub type SeriesKey = (Vec<u32>, i32);

/// Polynomial in Novikov variables truncated at total degree `D`, with an
/// independent integer exponent of the genus tracker `λ`.
#[derive(Clone, Debug, PartialEq)]
pub struct NovikovSeries {
    variables: Vec<String>,
    truncation: u32,
    terms: BTreeMap<SeriesKey, QCoefficient>,
}

impl NovikovSeries {
    pub fn new(variables: Vec<String>, truncation: u32) -> Self {
        NovikovSeries { variables, truncation, terms: BTreeMap::new() }
    }

    pub fn constant(variables: Vec<String>, truncation: u32, c: QCoefficient) -> Self {
        let mut s = Self::new(variables, truncation);
        let n = s.variables.len();
        s.add_term(vec![0; n], 0, c);
        s
    }

    pub fn one(variables: Vec<String>, truncation: u32) -> Self {
        Self::constant(variables, truncation, QCoefficient::one())
    }

    /// `c · ∏ x_i^{exps_i} · λ^lambda` (zero if beyond the truncation).
    pub fn monomial(variables: Vec<String>, truncation: u32, exps: Vec<u32>, lambda: i32, c: QCoefficient) -> Self {
        let mut s = Self::new(variables, truncation);
        s.add_term(exps, lambda, c);
        s
    }

    /// The variable `x_i` itself.
    pub fn variable(variables: Vec<String>, truncation: u32, i: usize) -> Self {
        let mut exps = vec![0; variables.len()];
        exps[i] = 1;
        Self::monomial(variables, truncation, exps, 0, QCoefficient::one())
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn truncation(&self) -> u32 {
        self.truncation
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&SeriesKey, &QCoefficient)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<SeriesKey, QCoefficient> {
        self.terms
    }

    pub fn coeff(&self, exps: &[u32], lambda: i32) -> QCoefficient {
        self.terms.get(&(exps.to_vec(), lambda)).cloned().unwrap_or_else(QCoefficient::zero)
    }

    /// Sum of all `λ`-exponents at the given Novikov exponent.
    pub fn coeff_any_lambda(&self, exps: &[u32]) -> Vec<(i32, QCoefficient)> {
        self.terms
            .range((exps.to_vec(), i32::MIN)..=(exps.to_vec(), i32::MAX))
            .map(|((_, l), c)| (*l, c.clone()))
            .collect()
    }

    /// Adds `c` to the coefficient of the given monomial, dropping it beyond
    /// the truncation.
    pub fn add_term(&mut self, exps: Vec<u32>, lambda: i32, c: QCoefficient) {
        assert_eq!(exps.len(), self.variables.len(), "exponent vector length");
        if c.is_zero() || exps.iter().sum::<u32>() > self.truncation {
            return;
        }
        let key = (exps, lambda);
        match self.terms.get_mut(&key) {
            Some(slot) => {
                let v = slot.add(&c);
                if v.is_zero() {
                    self.terms.remove(&key);
                } else {
                    *slot = v;
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    fn compatible(&self, other: &Self) -> Result<(), CoefError> {
        if self.variables == other.variables && self.truncation == other.truncation {
            Ok(())
        } else {
            Err(CoefError::Incompatible)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, CoefError> {
        self.compatible(other)?;
        let mut out = self.clone();
        for ((e, l), c) in &other.terms {
            out.add_term(e.clone(), *l, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, CoefError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let terms = self.terms.iter().map(|(k, c)| (k.clone(), c.neg())).collect();
        NovikovSeries { terms, ..self.clone_empty() }
    }

    pub fn scale(&self, c: &QCoefficient) -> Self {
        let mut out = self.clone_empty();
        for ((e, l), x) in &self.terms {
            out.add_term(e.clone(), *l, x.mul(c));
        }
        out
    }

    pub fn scale_rational(&self, c: &Rational) -> Self {
        let mut out = self.clone_empty();
        for ((e, l), x) in &self.terms {
            out.add_term(e.clone(), *l, x.scale(c));
        }
        out
    }

    fn clone_empty(&self) -> Self {
        Self::new(self.variables.clone(), self.truncation)
    }

    pub fn mul(&self, other: &Self) -> Result<Self, CoefError> {
        self.compatible(other)?;
        let mut acc: BTreeMap<SeriesKey, Vec<QCoefficient>> = BTreeMap::new();
        for ((ea, la), ca) in &self.terms {
            let da: u32 = ea.iter().sum();
            for ((eb, lb), cb) in &other.terms {
                let db: u32 = eb.iter().sum();
                if da + db > self.truncation {
                    continue;
                }
                let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                acc.entry((e, la + lb)).or_default().push(ca.mul(cb));
            }
        }
        let mut out = self.clone_empty();
        for ((e, l), parts) in acc {
            out.add_term(e, l, QCoefficient::sum(&parts));
        }
        Ok(out)
    }

    fn constant_part(&self) -> Vec<(i32, QCoefficient)> {
        let zero = vec![0; self.variables.len()];
        self.coeff_any_lambda(&zero)
    }

    /// Truncated `exp`; requires no terms of Novikov degree 0.
    pub fn exp(&self) -> Result<Self, CoefError> {
        if !self.constant_part().is_empty() {
            return Err(CoefError::ExpConstantTerm);
        }
        let mut out = Self::one(self.variables.clone(), self.truncation);
        let mut power = out.clone();
        for n in 1..=self.truncation {
            power = power.mul(self)?.scale_rational(&Rational::new(1.into(), (n as i64).into()));
            if power.is_zero() {
                break;
            }
            out = out.add(&power)?;
        }
        Ok(out)
    }

    /// Truncated `log`; requires the Novikov-degree-0 part to be exactly 1.
    pub fn log(&self) -> Result<Self, CoefError> {
        let c = self.constant_part();
        if c.len() != 1 || c[0].0 != 0 || !c[0].1.is_one() {
            return Err(CoefError::LogConstantTerm);
        }
        let u = self.sub(&Self::one(self.variables.clone(), self.truncation))?;
        let mut out = self.clone_empty();
        let mut power = Self::one(self.variables.clone(), self.truncation);
        for n in 1..=self.truncation as i64 {
            power = power.mul(&u)?;
            if power.is_zero() {
                break;
            }
            let sign = if n % 2 == 1 { 1 } else { -1 };
            out = out.add(&power.scale_rational(&Rational::new(sign.into(), n.into())))?;
        }
        Ok(out)
    }

    /// Keeps only terms whose Novikov exponents satisfy `keep`.
    pub fn filter<F: Fn(&[u32], i32) -> bool>(&self, keep: F) -> Self {
        let terms = self.terms.iter().filter(|((e, l), _)| keep(e, *l)).map(|(k, c)| (k.clone(), c.clone())).collect();
        NovikovSeries { terms, ..self.clone_empty() }
    }

    /// Least common multiple of the root orders of all coefficients.
    pub fn root_order(&self) -> u32 {
        use num_integer::Integer;
        self.terms.values().fold(1, |acc, c| acc.lcm(&c.root_order()))
    }
}

impl fmt::Display for NovikovSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, ((e, l), c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}", c)?;
            for (v, k) in self.variables.iter().zip(e) {
                if *k > 0 {
                    write!(f, "*{}^{}", v, k)?;
                }
            }
            if *l != 0 {
                write!(f, "*lambda^{}", l)?;
            }
        }
        Ok(())
    }
}
