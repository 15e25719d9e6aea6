//! Exact arithmetic in `Z/p^k`.
//!
//! All moduli are capped at `2^62`, so every product fits a `u128`
//! intermediate and no arbitrary-precision integers are needed.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported modulus `p^k`.
pub const MAX_MODULUS: u64 = 1 << 62;

/// Largest supported matrix size.
pub const MAX_N: usize = 8;

/// The triple `(p, n, k)` naming the ring `Mat_n(Z/p^k)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawParams", into = "RawParams")]
pub struct RingParams {
    p: u64,
    n: usize,
    k: u32,
    modulus: u64,
}

#[derive(Serialize, Deserialize)]
struct RawParams {
    p: u64,
    n: usize,
    k: u32,
}

impl TryFrom<RawParams> for RingParams {
    type Error = Error;

    fn try_from(raw: RawParams) -> Result<Self> {
        RingParams::new(raw.p, raw.n, raw.k)
    }
}

impl From<RingParams> for RawParams {
    fn from(params: RingParams) -> Self {
        RawParams {
            p: params.p,
            n: params.n,
            k: params.k,
        }
    }
}

impl RingParams {
    pub fn new(p: u64, n: usize, k: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidParams(format!("p = {p} is not prime")));
        }
        if n == 0 || n > MAX_N {
            return Err(Error::InvalidParams(format!("n = {n} outside 1..={MAX_N}")));
        }
        if k == 0 {
            return Err(Error::InvalidParams("k must be at least 1".into()));
        }
        let modulus = checked_pow(p, k)
            .filter(|&m| m <= MAX_MODULUS)
            .ok_or_else(|| Error::InvalidParams(format!("{p}^{k} exceeds 2^62")))?;
        Ok(RingParams { p, n, k, modulus })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// `p^k`.
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Same prime and size, different exponent.
    pub fn with_k(&self, k: u32) -> Result<Self> {
        RingParams::new(self.p, self.n, k)
    }

    /// Same prime and exponent, different size.
    pub fn with_n(&self, n: usize) -> Result<Self> {
        RingParams::new(self.p, n, self.k)
    }

    pub fn residue(&self, value: i128) -> ResidueInt {
        ResidueInt::new(value, self.modulus)
    }
}

impl fmt::Display for RingParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mat_{}(Z/{}^{})", self.n, self.p, self.k)
    }
}

/// An integer reduced modulo `p^k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ResidueInt {
    value: u64,
    modulus: u64,
}

impl ResidueInt {
    /// Reduces any integer into `[0, modulus)`.
    pub fn new(value: i128, modulus: u64) -> Self {
        assert!(modulus >= 1, "modulus must be positive");
        let value = value.rem_euclid(modulus as i128) as u64;
        ResidueInt { value, modulus }
    }

    pub fn zero(modulus: u64) -> Self {
        ResidueInt::new(0, modulus)
    }

    pub fn one(modulus: u64) -> Self {
        ResidueInt::new(1, modulus)
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch {
                left: self.modulus,
                right: other.modulus,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(ResidueInt {
            value: add_mod(self.value, other.value, self.modulus),
            modulus: self.modulus,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(ResidueInt {
            value: sub_mod(self.value, other.value, self.modulus),
            modulus: self.modulus,
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(ResidueInt {
            value: mul_mod(self.value, other.value, self.modulus),
            modulus: self.modulus,
        })
    }

    pub fn neg(&self) -> Self {
        ResidueInt {
            value: sub_mod(0, self.value, self.modulus),
            modulus: self.modulus,
        }
    }

    pub fn pow(&self, exp: u64) -> Self {
        ResidueInt {
            value: pow_mod(self.value, exp, self.modulus),
            modulus: self.modulus,
        }
    }

    /// A residue mod `p^k` is a unit iff `p` does not divide it; since the
    /// modulus is a prime power this is `gcd(value, modulus) = 1`.
    pub fn is_unit(&self) -> bool {
        gcd(self.value, self.modulus) == 1
    }

    pub fn inverse(&self) -> Result<Self> {
        inv_mod(self.value, self.modulus)
            .map(|value| ResidueInt {
                value,
                modulus: self.modulus,
            })
            .ok_or(Error::NonUnit {
                value: self.value,
                modulus: self.modulus,
            })
    }

    /// Reduces into a smaller modulus, which must divide the current one.
    pub fn reduce(&self, modulus: u64) -> Self {
        debug_assert_eq!(self.modulus % modulus, 0);
        ResidueInt {
            value: self.value % modulus,
            modulus,
        }
    }
}

impl fmt::Display for ResidueInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.modulus)
    }
}

pub(crate) fn add_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 + b as u128) % m as u128) as u64
}

pub(crate) fn sub_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 + m as u128 - (b % m) as u128) % m as u128) as u64
}

pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Inverse via the extended Euclidean algorithm, `None` for non-units.
pub(crate) fn inv_mod(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let (mut old_r, mut r) = (a as i128 % m as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    (old_r == 1).then(|| old_s.rem_euclid(m as i128) as u64)
}

pub(crate) fn checked_pow(base: u64, exp: u32) -> Option<u64> {
    let mut acc: u64 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
    }
    Some(acc)
}

/// Deterministic Miller-Rabin; the witness set below is exact for all `u64`.
pub fn is_prime(n: u64) -> bool {
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &w in &WITNESSES {
        if n.is_multiple_of(w) {
            return n == w;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'outer: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// Distinct prime factors by trial division.
pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Finds the root of `c2 x^2 + c1 x + c0` modulo `p^k` that reduces to `r0`
/// modulo `p`. Runs `k - 1` Newton steps at full precision.
pub fn hensel_root(c0: i64, c1: i64, c2: i64, r0: u64, params: &RingParams) -> Result<ResidueInt> {
    let p = params.p();
    let m = params.modulus();
    let r0 = r0 % p;
    if eval_quadratic(c0, c1, c2, r0, p) != 0 {
        return Err(Error::NotARoot { r0, p });
    }
    if eval_linear(c1, 2 * c2 as i128, r0, p) == 0 {
        return Err(Error::SingularRoot { r0, p });
    }
    let mut x = r0;
    for _ in 1..params.k() {
        let fx = eval_quadratic(c0, c1, c2, x, m);
        let dfx = eval_linear(c1, 2 * c2 as i128, x, m);
        let inv = inv_mod(dfx, m).ok_or(Error::SingularRoot { r0, p })?;
        x = sub_mod(x, mul_mod(fx, inv, m), m);
    }
    Ok(ResidueInt::new(x as i128, m))
}

fn eval_quadratic(c0: i64, c1: i64, c2: i64, x: u64, m: u64) -> u64 {
    let c = |v: i64| (v as i128).rem_euclid(m as i128) as u64;
    let xx = mul_mod(x, x, m);
    add_mod(
        add_mod(mul_mod(c(c2), xx, m), mul_mod(c(c1), x, m), m),
        c(c0),
        m,
    )
}

fn eval_linear(c0: i64, c1: i128, x: u64, m: u64) -> u64 {
    let c0 = (c0 as i128).rem_euclid(m as i128) as u64;
    let c1 = c1.rem_euclid(m as i128) as u64;
    add_mod(mul_mod(c1, x, m), c0, m)
}

/// Smallest primitive root modulo the prime `p`.
pub fn primitive_root(p: u64) -> u64 {
    if p == 2 {
        return 1;
    }
    let factors = prime_factors(p - 1);
    (2..p)
        .find(|&g| factors.iter().all(|&q| pow_mod(g, (p - 1) / q, p) != 1))
        .expect("every prime has a primitive root")
}

/// A unit of `Z/p^k` of multiplicative order exactly `p - 1`: a primitive
/// root `g` mod `p` raised to `p^(k-1)`.
pub fn order_p_minus_1_element(params: &RingParams) -> ResidueInt {
    let m = params.modulus();
    if params.p() == 2 {
        return ResidueInt::one(m);
    }
    let g = primitive_root(params.p());
    let e = m / params.p();
    ResidueInt::new(pow_mod(g, e, m) as i128, m)
}

/// Multiplicative order of a unit, by repeated multiplication.
pub fn multiplicative_order(x: &ResidueInt) -> Option<u64> {
    if !x.is_unit() {
        return None;
    }
    let m = x.modulus();
    let mut acc = x.value() % m;
    let mut ord = 1;
    while acc != 1 % m {
        acc = mul_mod(acc, x.value(), m);
        ord += 1;
    }
    Some(ord)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(v: i128, m: u64) -> ResidueInt {
        ResidueInt::new(v, m)
    }

    #[test]
    fn ring_ops() {
        assert_eq!(r(3, 8).mul(&r(5, 8)).unwrap().value(), 7);
        assert_eq!(r(5, 32).mul(&r(5, 32)).unwrap().value(), 25);
        for v in 0..27 {
            assert_eq!(r(v, 27).add(&r(0, 27)).unwrap(), r(v, 27));
        }
        assert_eq!(r(3, 8).neg().value(), 5);
        assert!(matches!(
            r(1, 8).add(&r(1, 9)),
            Err(Error::ModulusMismatch { left: 8, right: 9 })
        ));
    }

    #[test]
    fn units() {
        assert!(r(3, 8).is_unit());
        assert!(!r(4, 8).is_unit());
        assert!(!r(0, 9).is_unit());
        assert_eq!(r(3, 8).inverse().unwrap().value(), 3);
        assert_eq!(r(1, 81).inverse().unwrap().value(), 1);
        assert_eq!(r(5, 27).inverse().unwrap().value(), 11);
        assert!(matches!(r(6, 27).inverse(), Err(Error::NonUnit { .. })));
    }

    #[test]
    fn inverse_exhaustive_small_moduli() {
        for (p, k) in [(2u64, 5u32), (3, 5), (5, 3), (7, 2)] {
            let m = p.pow(k);
            for v in 0..m {
                let x = r(v as i128, m);
                match x.inverse() {
                    Ok(y) => {
                        assert!(x.is_unit());
                        assert_eq!(x.mul(&y).unwrap().value(), 1);
                    }
                    Err(_) => assert!(!x.is_unit()),
                }
            }
        }
    }

    #[test]
    fn params_validation() {
        assert!(RingParams::new(4, 2, 2).is_err());
        assert!(RingParams::new(2, 0, 2).is_err());
        assert!(RingParams::new(2, 9, 2).is_err());
        assert!(RingParams::new(2, 2, 0).is_err());
        assert!(RingParams::new(2, 1, 62).is_ok());
        assert!(RingParams::new(2, 1, 63).is_err());
        assert!(RingParams::new(3, 1, 40).is_err());
        let params = RingParams::new(3, 2, 4).unwrap();
        assert_eq!(params.modulus(), 81);
        let json = serde_json::to_string(&params).unwrap();
        assert_eq!(json, r#"{"p":3,"n":2,"k":4}"#);
        assert_eq!(serde_json::from_str::<RingParams>(&json).unwrap(), params);
        assert!(serde_json::from_str::<RingParams>(r#"{"p":6,"n":2,"k":4}"#).is_err());
    }

    #[test]
    fn primality() {
        let small: Vec<u64> = (0..60).filter(|&n| is_prime(n)).collect();
        assert_eq!(
            small,
            vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]
        );
        assert!(is_prime(2_305_843_009_213_693_951)); // 2^61 - 1
        assert!(!is_prime(3_215_031_751)); // strong pseudoprime to bases 2, 3, 5, 7
    }

    #[test]
    fn hensel_examples() {
        let at = |k| RingParams::new(2, 1, k).unwrap();
        assert_eq!(hensel_root(2, 1, 1, 1, &at(2)).unwrap().value(), 1);
        assert_eq!(hensel_root(2, 1, 1, 1, &at(3)).unwrap().value(), 5);
        assert_eq!(hensel_root(2, 1, 1, 1, &at(6)).unwrap().value(), 37);
        assert_eq!(hensel_root(2, 1, 1, 1, &at(1)).unwrap().value(), 1);
    }

    #[test]
    fn hensel_errors() {
        let params = RingParams::new(3, 1, 3).unwrap();
        // x^2 + 1 has no root mod 3.
        assert!(matches!(
            hensel_root(1, 0, 1, 1, &params),
            Err(Error::NotARoot { .. })
        ));
        // x^2 at 0: double root.
        assert!(matches!(
            hensel_root(0, 0, 1, 0, &params),
            Err(Error::SingularRoot { .. })
        ));
    }

    #[test]
    fn hensel_large_modulus() {
        let params = RingParams::new(2, 1, 62).unwrap();
        let a = hensel_root(2, 1, 1, 1, &params).unwrap();
        assert_eq!(eval_quadratic(2, 1, 1, a.value(), params.modulus()), 0);
        assert_eq!(a.value() % 2, 1);
    }

    #[test]
    fn order_p_minus_1() {
        let at = |p, k| RingParams::new(p, 1, k).unwrap();
        assert_eq!(order_p_minus_1_element(&at(2, 5)).value(), 1);
        assert_eq!(order_p_minus_1_element(&at(3, 2)).value(), 8);
        assert_eq!(order_p_minus_1_element(&at(5, 2)).value(), 7);
        for p in [3u64, 5, 7, 11, 13, 101] {
            for k in 1..4 {
                let a = order_p_minus_1_element(&at(p, k));
                assert_eq!(multiplicative_order(&a), Some(p - 1), "p={p} k={k}");
            }
        }
    }
}
