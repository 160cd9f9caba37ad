//! Irreducibility over Q for integer polynomials.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{primes_up_to, prime_factors, rat_from, Rat};
use crate::error::{Error, Result};
use crate::poly::{IntPoly, RatPoly};

/// Dense polynomial over F_p, ascending, trimmed.
type Fp = Vec<u64>;

fn fp_trim(mut v: Fp) -> Fp {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn fp_mul(a: &Fp, b: &Fp, p: u64) -> Fp {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y % p) % p;
        }
    }
    fp_trim(out)
}

fn fp_inv(a: u64, p: u64) -> u64 {
    let mut r = 1u64;
    let (mut b, mut e) = (a % p, p - 2);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn fp_rem(a: &Fp, m: &Fp, p: u64) -> Fp {
    let mut r = a.clone();
    let dm = m.len() - 1;
    let inv = fp_inv(m[dm], p);
    while r.len() > dm {
        let c = r[r.len() - 1] * inv % p;
        let shift = r.len() - 1 - dm;
        for (j, &mj) in m.iter().enumerate() {
            r[shift + j] = (r[shift + j] + p - c * mj % p) % p;
        }
        r = fp_trim(r);
    }
    r
}

fn fp_divexact(a: &Fp, m: &Fp, p: u64) -> Fp {
    let mut r = a.clone();
    let dm = m.len() - 1;
    let inv = fp_inv(m[dm], p);
    let mut q = vec![0u64; a.len().saturating_sub(dm)];
    while r.len() > dm {
        let c = r[r.len() - 1] * inv % p;
        let shift = r.len() - 1 - dm;
        q[shift] = c;
        for (j, &mj) in m.iter().enumerate() {
            r[shift + j] = (r[shift + j] + p - c * mj % p) % p;
        }
        r.pop();
        while r.len() > dm && r.last() == Some(&0) {
            r.pop();
        }
    }
    fp_trim(q)
}

fn fp_gcd(a: &Fp, b: &Fp, p: u64) -> Fp {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_empty() {
        let r = fp_rem(&a, &b, p);
        a = b;
        b = r;
    }
    if let Some(&l) = a.last() {
        let inv = fp_inv(l, p);
        a.iter_mut().for_each(|c| *c = *c * inv % p);
    }
    a
}

fn fp_powmod(base: &Fp, mut e: u64, m: &Fp, p: u64) -> Fp {
    let mut r: Fp = vec![1];
    let mut b = fp_rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            r = fp_rem(&fp_mul(&r, &b, p), m, p);
        }
        b = fp_rem(&fp_mul(&b, &b, p), m, p);
        e >>= 1;
    }
    r
}

fn fp_sub(a: &Fp, b: &Fp, p: u64) -> Fp {
    let n = a.len().max(b.len());
    fp_trim(
        (0..n)
            .map(|i| (a.get(i).copied().unwrap_or(0) + p - b.get(i).copied().unwrap_or(0)) % p)
            .collect(),
    )
}

fn reduce(f: &IntPoly, p: u64) -> Fp {
    let pb = BigInt::from(p);
    fp_trim(f.coeffs().iter().map(|c| c.mod_floor(&pb).to_u64().unwrap()).collect())
}

/// Degrees of the irreducible factors of f mod p, or `None` when f is not
/// squarefree of full degree mod p.
fn factor_degrees_mod(f: &IntPoly, p: u64) -> Option<Vec<usize>> {
    let n = f.deg()?;
    let fp = reduce(f, p);
    if fp.len() != n + 1 {
        return None;
    }
    let dfp = reduce(&f.derivative(), p);
    if dfp.is_empty() || fp_gcd(&fp, &dfp, p).len() != 1 {
        return None;
    }
    let mut out = Vec::new();
    let mut rest = fp;
    let x: Fp = vec![0, 1];
    let mut h = x.clone();
    let mut d = 0;
    while rest.len() > 1 {
        d += 1;
        if 2 * d > rest.len() - 1 {
            out.push(rest.len() - 1);
            break;
        }
        h = fp_powmod(&h, p, &rest, p);
        let g = fp_gcd(&fp_sub(&h, &x, p), &rest, p);
        let gd = g.len() - 1;
        if gd > 0 {
            out.extend(std::iter::repeat_n(d, gd / d));
            rest = fp_divexact(&rest, &g, p);
            h = fp_rem(&h, &rest, p);
        }
    }
    Some(out)
}

fn subset_sums(degs: &[usize]) -> BTreeSet<usize> {
    let mut s = BTreeSet::from([0usize]);
    for &d in degs {
        let add: Vec<usize> = s.iter().map(|&x| x + d).collect();
        s.extend(add);
    }
    s
}

fn divisors(n: &BigInt) -> Result<Vec<BigInt>> {
    let n = n.abs();
    let mut divs = vec![BigInt::one()];
    for p in prime_factors(&n)? {
        let mut m = n.clone();
        let mut e = 0;
        while (&m % p).is_zero() {
            m /= p;
            e += 1;
        }
        let mut next = Vec::new();
        for d in &divs {
            let mut pw = BigInt::one();
            for _ in 0..=e {
                next.push(d * &pw);
                pw *= p;
            }
        }
        divs = next;
    }
    Ok(divs)
}

/// A rational root of f, if any.
pub fn rational_root(f: &IntPoly) -> Result<Option<Rat>> {
    let Some(n) = f.deg() else {
        return Ok(None);
    };
    if n == 0 {
        return Ok(None);
    }
    let lowest = f.coeffs().iter().position(|c| !c.is_zero()).unwrap();
    if lowest > 0 {
        return Ok(Some(Rat::zero()));
    }
    let fr = f.to_rat();
    for a in divisors(&f.coeff(0))? {
        for b in divisors(&f.leading())? {
            if !a.gcd(&b).is_one() {
                continue;
            }
            for s in [a.clone(), -a.clone()] {
                let r = Rat::new(s, b.clone());
                if fr.eval(&r).is_zero() {
                    return Ok(Some(r));
                }
            }
        }
    }
    Ok(None)
}

const KRONECKER_MAX_DEGREE: usize = 8;
const KRONECKER_MAX_CANDIDATES: u64 = 2_000_000;

/// Searches for a factor of degree d by interpolating through divisor
/// choices of f(0), ..., f(d). Returns `None` when the budget is exceeded.
fn kronecker_has_factor(f: &IntPoly, d: usize) -> Option<bool> {
    let fr = f.to_rat();
    let pts: Vec<i64> = {
        // points where f is nonzero
        let mut v = Vec::new();
        let mut x = 0i64;
        while v.len() <= d {
            if !f.eval(&BigInt::from(x)).is_zero() {
                v.push(x);
            }
            x = if x >= 0 { -x - 1 } else { -x };
        }
        v
    };
    let mut choices: Vec<Vec<BigInt>> = Vec::new();
    let mut total: u64 = 1;
    for &x in &pts {
        let ds = divisors(&f.eval(&BigInt::from(x))).ok()?;
        let mut both: Vec<BigInt> = ds.to_vec();
        both.extend(ds.iter().map(|v| -v));
        total = total.saturating_mul(both.len() as u64);
        choices.push(both);
    }
    // the first value may be taken positive by symmetry
    choices[0].retain(|v| v.is_positive());
    if total / 2 > KRONECKER_MAX_CANDIDATES {
        return None;
    }
    let xs: Vec<Rat> = pts.iter().map(|&x| rat_from(BigInt::from(x))).collect();
    let mut idx = vec![0usize; choices.len()];
    loop {
        let ys: Vec<Rat> = idx.iter().zip(&choices).map(|(&i, c)| rat_from(c[i].clone())).collect();
        let g = interpolate(&xs, &ys);
        if g.deg() == Some(d) && g.is_integral() && fr.rem(&g).map(|r| r.is_zero()).unwrap_or(false) {
            return Some(true);
        }
        let mut j = 0;
        loop {
            if j == idx.len() {
                return Some(false);
            }
            idx[j] += 1;
            if idx[j] < choices[j].len() {
                break;
            }
            idx[j] = 0;
            j += 1;
        }
    }
}

/// Lagrange interpolation through (xs[i], ys[i]).
pub fn interpolate(xs: &[Rat], ys: &[Rat]) -> RatPoly {
    let mut acc = RatPoly::zero();
    for (i, (xi, yi)) in xs.iter().zip(ys).enumerate() {
        if yi.is_zero() {
            continue;
        }
        let mut basis = RatPoly::constant(yi.clone());
        for (j, xj) in xs.iter().enumerate() {
            if j != i {
                let f = RatPoly::linear_root(xj.clone()).scale(&(Rat::one() / (xi - xj)));
                basis = &basis * &f;
            }
        }
        acc = &acc + &basis;
    }
    acc
}

/// Ok(()) when f is irreducible over Q.
pub fn check_irreducible(f: &IntPoly) -> Result<()> {
    let n = f
        .deg()
        .filter(|&n| n >= 1)
        .ok_or_else(|| Error::Precondition("constant polynomial".into()))?;
    let name = f.to_string();
    if !f.content().abs().is_one() {
        return Err(Error::Precondition(format!("{name} is not primitive")));
    }
    if n == 1 {
        return Ok(());
    }
    if let Some(r) = rational_root(f)? {
        return Err(Error::Reducible(format!("{name} has the rational root {r}")));
    }
    if n <= 3 {
        return Ok(());
    }
    let mut possible: BTreeSet<usize> = (0..=n).collect();
    let mut used = 0;
    for p in primes_up_to(400) {
        if let Some(degs) = factor_degrees_mod(f, p) {
            possible = possible.intersection(&subset_sums(&degs)).copied().collect();
            used += 1;
            if possible.len() == 2 || used >= 30 {
                break;
            }
        }
    }
    if possible.len() == 2 {
        return Ok(());
    }
    if n <= KRONECKER_MAX_DEGREE {
        let mut undecided = false;
        for &d in possible.iter().filter(|&&d| d >= 2 && 2 * d <= n) {
            match kronecker_has_factor(f, d) {
                Some(true) => return Err(Error::Reducible(format!("{name} has a factor of degree {d}"))),
                Some(false) => {}
                None => undecided = true,
            }
        }
        if !undecided {
            return Ok(());
        }
    }
    Err(Error::IrreducibilityUndetermined(name))
}
