//! Cyclotomic polynomials and modular roots of unity used to keep
//! `QCoefficient` denominators in factored form.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, LazyLock, RwLock};

use super::laurent::{pow_mod, LaurentPoly};

static CYCLO: LazyLock<RwLock<HashMap<u32, Arc<Vec<i64>>>>> =
    LazyLock::new(|| RwLock::new(HashMap::new()));

static ROOTS: LazyLock<RwLock<HashMap<u32, (u64, u64)>>> =
    LazyLock::new(|| RwLock::new(HashMap::new()));

pub fn divisors(n: u32) -> Vec<u32> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

pub fn prime_factors(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn euler_phi(n: u32) -> u32 {
    prime_factors(n).into_iter().fold(n, |acc, p| acc / p * (p - 1))
}

/// Ascending integer coefficients of the `n`-th cyclotomic polynomial.
pub fn cyclotomic(n: u32) -> Arc<Vec<i64>> {
    assert!(n >= 1);
    if let Some(c) = CYCLO.read().unwrap().get(&n) {
        return c.clone();
    }
    // x^n - 1 divided by every Φ_d with d | n, d < n.
    let mut poly = vec![0i64; n as usize + 1];
    poly[0] = -1;
    poly[n as usize] = 1;
    for d in divisors(n) {
        if d == n {
            continue;
        }
        let phi_d = cyclotomic(d);
        poly = div_monic_i64(&poly, &phi_d);
    }
    let arc = Arc::new(poly);
    CYCLO.write().unwrap().insert(n, arc.clone());
    arc
}

fn div_monic_i64(num: &[i64], den: &[i64]) -> Vec<i64> {
    let deg = den.len() - 1;
    let mut rem = num.to_vec();
    let qlen = num.len() - deg;
    let mut q = vec![0i64; qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + deg];
        q[i] = c;
        if c != 0 {
            for (j, d) in den.iter().enumerate() {
                rem[i + j] -= c * d;
            }
        }
    }
    debug_assert!(rem[..deg].iter().all(|c| *c == 0));
    q
}

pub fn cyclotomic_poly(n: u32) -> LaurentPoly {
    LaurentPoly::from_dense_i64(0, &cyclotomic(n))
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = ((x as u128 * x as u128) % n as u128) as u64;
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// A prime `p ≡ 1 (mod d)` with `p > 2^40` and an element of exact order `d`.
pub fn root_of_unity(d: u32) -> (u64, u64) {
    if let Some(r) = ROOTS.read().unwrap().get(&d) {
        return *r;
    }
    let d64 = d as u64;
    let start = (1u64 << 40) / d64 + 1;
    let mut k = start;
    let p = loop {
        let cand = k * d64 + 1;
        if is_prime(cand) {
            break cand;
        }
        k += 1;
    };
    let factors = prime_factors(d);
    let mut g = 2u64;
    let zeta = loop {
        let z = pow_mod(g, (p - 1) / d64, p);
        if factors.iter().all(|q| pow_mod(z, d64 / *q as u64, p) != 1) && (d == 1 || z != 1) {
            break z;
        }
        g += 1;
    };
    ROOTS.write().unwrap().insert(d, (p, zeta));
    (p, zeta)
}

/// Whether `Φ_d` might divide `poly` (exact when it returns `false`).
pub fn maybe_divisible(poly: &LaurentPoly, d: u32) -> bool {
    let (p, zeta) = root_of_unity(d);
    poly.eval_numerator_mod(zeta, d as u64, p) == 0
}

/// Factorization of `Φ_n(x^r)` into cyclotomic polynomials in `x`.
pub fn stretch_factors(n: u32, r: u32) -> BTreeMap<u32, u32> {
    let mut current: BTreeMap<u32, u32> = BTreeMap::from([(n, 1)]);
    let mut rem = r;
    for p in prime_factors(r) {
        while rem.is_multiple_of(p) {
            rem /= p;
            let mut next = BTreeMap::new();
            for (m, e) in current {
                *next.entry(m * p).or_insert(0) += e;
                if m % p != 0 {
                    *next.entry(m).or_insert(0) += e;
                }
            }
            current = next;
        }
    }
    current
}

/// Cyclotomic factors of `x^{2n} - 1`, i.e. of `x^n (x^n - x^{-n})`.
pub fn bracket_factors(n: u32) -> BTreeMap<u32, u32> {
    divisors(2 * n).into_iter().map(|d| (d, 1)).collect()
}
