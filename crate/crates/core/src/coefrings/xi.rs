use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::{CoefError, QCoefficient, Rational};

/// Truncated Laurent series in `ξ = log q`, exact through `ξ^order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XiSeries {
    order: i32,
    coeffs: BTreeMap<i32, Rational>,
}

impl XiSeries {
    pub fn new(order: i32, coeffs: BTreeMap<i32, Rational>) -> Self {
        let coeffs = coeffs.into_iter().filter(|(e, c)| *e <= order && !c.is_zero()).collect();
        XiSeries { order, coeffs }
    }

    pub fn order(&self) -> i32 {
        self.order
    }

    pub fn coeff(&self, e: i32) -> Rational {
        self.coeffs.get(&e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeffs(&self) -> &BTreeMap<i32, Rational> {
        &self.coeffs
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn floor(&self) -> Option<i32> {
        self.coeffs.keys().next().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl fmt::Display for XiSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (e, c) in &self.coeffs {
            write!(f, "{}*xi^{} + ", c, e)?;
        }
        write!(f, "O(xi^{})", self.order + 1)
    }
}

/// Expands `c` around `q = 1` through `ξ^order`, substituting `w = e^{ξ/(2M)}`.
pub fn lambda_expand(c: &QCoefficient, order: i32) -> Result<XiSeries, CoefError> {
    if c.is_zero() {
        return Ok(XiSeries::new(order, BTreeMap::new()));
    }
    let s = Rational::new(1.into(), (2 * c.root_order() as i64).into());
    let den = c.denominator();
    let den_deg = den.max_exp().unwrap_or(0).max(0) as usize;
    // A nonzero polynomial vanishes at w = 1 to order at most its degree.
    let den_probe = den.exp_moments(&s, den_deg + 1);
    let vd = den_probe
        .iter()
        .position(|x| !x.is_zero())
        .ok_or(CoefError::EssentialDegeneracy)?;
    let top = order as i64 + vd as i64;
    if top < 0 {
        return Ok(XiSeries::new(order, BTreeMap::new()));
    }
    let top = top as usize;
    let a = c.numerator().exp_moments(&s, top);
    let b = den.exp_moments(&s, top + vd);
    let b = &b[vd..];
    // a / b as power series, then shift by -vd.
    let mut quot: Vec<Rational> = Vec::with_capacity(top + 1);
    let b0_inv = Rational::one() / &b[0];
    for n in 0..=top {
        let mut acc = a[n].clone();
        for k in 1..=n.min(b.len() - 1) {
            acc -= &b[k] * &quot[n - k];
        }
        quot.push(acc * &b0_inv);
    }
    let coeffs = quot
        .into_iter()
        .enumerate()
        .map(|(j, x)| (j as i32 - vd as i32, x))
        .collect();
    Ok(XiSeries::new(order, coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coefrings::rat;

    #[test]
    fn constant_one() {
        let x = lambda_expand(&QCoefficient::one(), 3).unwrap();
        assert_eq!(x.coeffs().len(), 1);
        assert_eq!(x.coeff(0), rat(1, 1));
    }

    #[test]
    fn inverse_bracket_squared() {
        let c = QCoefficient::inv_bracket(1, 1).pow(2);
        let x = lambda_expand(&c, 2).unwrap();
        assert_eq!(x.floor(), Some(-2));
        assert_eq!(x.coeff(-2), rat(1, 1));
        assert_eq!(x.coeff(-1), rat(0, 1));
        assert_eq!(x.coeff(0), rat(-1, 12));
        assert_eq!(x.coeff(2), rat(1, 240));
    }

    #[test]
    fn q_is_exponential() {
        let x = lambda_expand(&QCoefficient::w_power(2, 1), 2).unwrap();
        assert_eq!(x.coeff(0), rat(1, 1));
        assert_eq!(x.coeff(1), rat(1, 1));
        assert_eq!(x.coeff(2), rat(1, 2));
        assert_eq!(x.coeff(3), rat(0, 1));
    }

    #[test]
    fn independent_of_root_order() {
        let c = QCoefficient::inv_bracket(2, 1).mul(&QCoefficient::w_power(1, 1));
        assert_eq!(lambda_expand(&c, 4).unwrap(), lambda_expand(&c.rescale(6), 4).unwrap());
    }
}
