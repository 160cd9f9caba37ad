//! Exact scalar helpers: rationals, binomials, primes and valuations.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rat = BigRational;

pub fn int(n: i64) -> BigInt {
    BigInt::from(n)
}

pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat_from(n: BigInt) -> Rat {
    Rat::from_integer(n)
}

/// Parses `"7"`, `"-3/4"` or `" 2 / 6 "`.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || Error::Parse(format!("bad rational {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::DivisionByZero);
            }
            Ok(Rat::new(n, d))
        }
        None => Ok(Rat::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

pub fn fmt_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn is_integer(r: &Rat) -> bool {
    r.denom().is_one()
}

pub fn lcm_denominators<'a>(rs: impl IntoIterator<Item = &'a Rat>) -> BigInt {
    rs.into_iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// binom(r, k) for rational r, as falling factorial over k!.
pub fn binomial_rat(r: &Rat, k: u64) -> Rat {
    let mut acc = Rat::one();
    for i in 0..k {
        acc = acc * (r - rat_int(i as i64)) / rat_int(i as i64 + 1);
    }
    acc
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    // Deterministic Miller-Rabin for 64-bit inputs.
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut b: u64, mut e: u64| {
        let mut r = 1u64;
        b %= n;
        while e > 0 {
            if e & 1 == 1 {
                r = mulmod(r, b);
            }
            b = mulmod(b, b);
            e >>= 1;
        }
        r
    };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub fn ensure_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p.to_string()))
    }
}

pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i <= n {
        if sieve[i] {
            let mut j = i * i;
            while j <= n {
                sieve[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    sieve
        .iter()
        .enumerate()
        .filter(|(_, &b)| b)
        .map(|(i, _)| i as u64)
        .collect()
}

/// Distinct prime factors of a nonzero integer, ascending.
pub fn prime_factors(n: &BigInt) -> Result<Vec<u64>> {
    if n.is_zero() {
        return Err(Error::Precondition("cannot factor zero".into()));
    }
    let mut m = n.abs();
    let mut out = Vec::new();
    let mut q = 2u64;
    while BigInt::from(q) * BigInt::from(q) <= m {
        if q > 10_000_000 {
            break;
        }
        if (&m % q).is_zero() {
            out.push(q);
            while (&m % q).is_zero() {
                m /= q;
            }
        }
        q += if q == 2 { 1 } else { 2 };
    }
    if !m.is_one() {
        match m.to_u64() {
            Some(r) if is_prime(r) => out.push(r),
            _ => {
                return Err(Error::Precondition(format!(
                    "cofactor {m} is too large to factor by trial division"
                )))
            }
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// Factors a positive integer small enough for u64.
pub fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut q = 2u64;
    while q * q <= n {
        if n.is_multiple_of(q) {
            let mut e = 0;
            while n.is_multiple_of(q) {
                n /= q;
                e += 1;
            }
            out.push((q, e));
        }
        q += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// v_p(n); `None` for n = 0.
pub fn valuation(p: u64, n: &BigInt) -> Option<u32> {
    if n.is_zero() {
        return None;
    }
    let mut m = n.clone();
    let mut v = 0;
    loop {
        let (q, r) = m.div_rem(&BigInt::from(p));
        if !r.is_zero() {
            return Some(v);
        }
        m = q;
        v += 1;
    }
}

pub fn valuation_rat(p: u64, r: &Rat) -> Option<i64> {
    let a = valuation(p, r.numer())?;
    let b = valuation(p, r.denom()).unwrap_or(0);
    Some(a as i64 - b as i64)
}

pub fn pow_u64(p: u64, e: u32) -> BigInt {
    num_traits::pow(BigInt::from(p), e as usize)
}

/// Least nonnegative residue.
pub fn modp(a: &BigInt, m: &BigInt) -> BigInt {
    let r = a.mod_floor(m);
    debug_assert!(r.sign() != Sign::Minus);
    r
}

/// Legendre symbol (a / p) for an odd prime p: 0, 1 or -1.
pub fn legendre(a: &BigInt, p: u64) -> i32 {
    let pb = BigInt::from(p);
    let a = modp(a, &pb);
    if a.is_zero() {
        return 0;
    }
    let r = a.modpow(&BigInt::from((p - 1) / 2), &pb);
    if r.is_one() {
        1
    } else {
        -1
    }
}

/// Inverse of a unit modulo m.
pub fn inv_mod(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(m);
    if !e.gcd.is_one() && e.gcd != -BigInt::one() {
        return None;
    }
    let x = if e.gcd.is_negative() { -e.x } else { e.x };
    Some(modp(&x, m))
}

/// Largest square dividing n removed; sign kept.
pub fn squarefree_part(n: &BigInt) -> Result<BigInt> {
    if n.is_zero() {
        return Err(Error::Precondition("squarefree part of zero".into()));
    }
    let mut out = if n.is_negative() { -BigInt::one() } else { BigInt::one() };
    for p in prime_factors(n)? {
        if valuation(p, n).unwrap() % 2 == 1 {
            out *= p;
        }
    }
    Ok(out)
}

pub fn is_squarefree(n: &BigInt) -> Result<bool> {
    if n.is_zero() {
        return Ok(false);
    }
    Ok(prime_factors(n)?
        .into_iter()
        .all(|p| valuation(p, n) == Some(1)))
}
