//! Oracles that share no code with the library paths they check.

#![allow(dead_code)]

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

fn eval(c: &[BigInt], x: &BigInt) -> BigInt {
    c.iter().rev().fold(BigInt::zero(), |acc, a| acc * x + a)
}

/// q(x + 1) − q(x) on ascending integer coefficients, by Pascal's rule.
fn forward_difference(q: &[BigInt]) -> Vec<BigInt> {
    let n = q.len();
    let mut out = vec![BigInt::zero(); n.saturating_sub(1)];
    let mut row = vec![BigInt::one()];
    for (j, c) in q.iter().enumerate() {
        // (x+1)^j − x^j = Σ_{i<j} C(j,i) x^i
        for i in 0..j {
            out[i] += c * &row[i];
        }
        let mut next = vec![BigInt::one(); j + 2];
        for i in 1..=j {
            next[i] = &row[i - 1] + &row[i];
        }
        row = next;
    }
    out
}

/// Δⁿ(x^k·p)(0) by repeated symbolic differencing.
pub fn delta_pnk(p: &[i64], n: usize, k: usize) -> BigInt {
    let mut q: Vec<BigInt> = vec![BigInt::zero(); k];
    q.extend(p.iter().map(|&c| big(c)));
    for _ in 0..n {
        q = forward_difference(&q);
    }
    q.first().cloned().unwrap_or_default()
}

pub fn p_at(p: &[i64], x: i64) -> BigInt {
    eval(&p.iter().map(|&c| big(c)).collect::<Vec<_>>(), &big(x))
}

/// Quadratic residuosity of d modulo an odd prime p by listing squares.
pub fn is_square_mod(d: i64, p: u64) -> bool {
    let p = p as i64;
    let r = d.rem_euclid(p);
    (0..p).any(|x| (x * x) % p == r)
}

/// Number of roots of a monic integer polynomial in Z_p, found by listing
/// every residue class mod p^depth on which g vanishes and keeping those where
/// Hensel's condition v(g(a)) > 2·v(g'(a)) holds; one root per cluster.
pub fn zp_root_count_by_enumeration(p: u64, g: &[i64], depth: u32) -> usize {
    let g: Vec<BigInt> = g.iter().map(|&c| big(c)).collect();
    let dg: Vec<BigInt> = g.iter().enumerate().skip(1).map(|(i, c)| c * big(i as i64)).collect();
    let pb = big(p as i64);
    let v = |x: &BigInt| -> Option<u32> {
        if x.is_zero() {
            return None;
        }
        let mut m = x.clone();
        let mut e = 0;
        while (&m % &pb).is_zero() {
            m /= &pb;
            e += 1;
        }
        Some(e)
    };
    // residues a mod p^j with g(a) ≡ 0 mod p^j
    let mut level: Vec<BigInt> = (0..p).map(|a| big(a as i64)).filter(|a| (eval(&g, a) % &pb).is_zero()).collect();
    let mut modulus = pb.clone();
    for _ in 1..depth {
        let next_mod = &modulus * &pb;
        let mut next = Vec::new();
        for a in &level {
            for i in 0..p {
                let b = a + &modulus * big(i as i64);
                if (eval(&g, &b) % &next_mod).is_zero() {
                    next.push(b);
                }
            }
        }
        level = next;
        modulus = next_mod;
    }
    // (class, exponent): the root is fixed modulo p^exponent
    let mut classes: Vec<(BigInt, u32)> = Vec::new();
    for a in level {
        let vg = v(&eval(&g, &a));
        let Some(vd) = v(&eval(&dg, &a)) else { continue };
        let hensel = match vg {
            None => true,
            Some(x) => x > 2 * vd,
        };
        if hensel && vd < depth {
            classes.push((a, depth - vd));
        }
    }
    let mut seen: BTreeSet<BigInt> = BTreeSet::new();
    let min_e = classes.iter().map(|c| c.1).min().unwrap_or(depth);
    let m = num_traits::pow(pb.clone(), min_e as usize);
    for (a, _) in &classes {
        seen.insert(a.mod_floor(&m));
    }
    seen.len()
}

/// Random monic squarefree integer polynomial of degree 1..=4 with
/// coefficients in [−bound, bound].
pub fn random_monic(r: &mut ChaCha8Rng, bound: i64) -> Vec<i64> {
    loop {
        let d = r.gen_range(1..=4);
        let mut c: Vec<i64> = (0..d).map(|_| r.gen_range(-bound..=bound)).collect();
        c.push(1);
        if squarefree_by_gcd(&c) {
            return c;
        }
    }
}

/// gcd(g, g') is constant, by Euclid over Q on integer vectors.
pub fn squarefree_by_gcd(g: &[i64]) -> bool {
    use num_rational::BigRational as Q;
    let f: Vec<Q> = g.iter().map(|&c| Q::from_integer(big(c))).collect();
    let df: Vec<Q> = f.iter().enumerate().skip(1).map(|(i, c)| c * Q::from_integer(big(i as i64))).collect();
    let trim = |mut v: Vec<Q>| {
        while v.last().is_some_and(|c| c.is_zero()) {
            v.pop();
        }
        v
    };
    let (mut a, mut b) = (trim(f), trim(df));
    while !b.is_empty() {
        // a mod b
        let mut r = a.clone();
        while r.len() >= b.len() && !r.is_empty() {
            let q = r.last().unwrap() / b.last().unwrap();
            let s = r.len() - b.len();
            for (i, c) in b.iter().enumerate() {
                r[s + i] = &r[s + i] - &q * c;
            }
            r = trim(r);
        }
        a = b;
        b = r;
    }
    a.len() == 1
}

/// Binomial coefficient of an integer top argument, possibly negative.
pub fn binom_int(x: &BigInt, k: u64) -> BigInt {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= x - big(i as i64);
        den *= big(i as i64 + 1);
    }
    num / den
}

pub fn catalan(n: u64) -> BigInt {
    // C_n = binom(2n, n)/(n + 1)
    binom_int(&big(2 * n as i64), n) / big(n as i64 + 1)
}

pub fn abs_le(x: &BigInt, b: i64) -> bool {
    x.abs() <= big(b)
}
