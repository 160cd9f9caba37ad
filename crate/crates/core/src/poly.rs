//! Dense exact polynomials in the monomial and binomial-coefficient bases.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{fmt_rat, lcm_denominators, parse_rat, rat_from, rat_int, Rat};
use crate::error::{Error, Result};

/// Degree of a polynomial; the zero polynomial has degree minus infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Degree {
    NegInfinity,
    Finite(usize),
}

/// Polynomial over Q in the monomial basis, coefficients ascending.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct RatPoly {
    coeffs: Vec<Rat>,
}

fn trim(v: &mut Vec<Rat>) {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        trim(&mut coeffs);
        RatPoly { coeffs }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&a| rat_int(a)).collect())
    }

    pub fn from_bigints(c: &[BigInt]) -> Self {
        Self::new(c.iter().cloned().map(rat_from).collect())
    }

    pub fn zero() -> Self {
        RatPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn x() -> Self {
        Self::monomial(1, Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Self::new(vec![c])
    }

    pub fn monomial(k: usize, c: Rat) -> Self {
        let mut v = vec![Rat::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    /// x - c
    pub fn linear_root(c: Rat) -> Self {
        Self::new(vec![-c, Rat::one()])
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rat> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Degree {
        match self.coeffs.len() {
            0 => Degree::NegInfinity,
            n => Degree::Finite(n - 1),
        }
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn deg(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Rat {
        self.coeffs.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        self.coeffs
            .iter()
            .rev()
            .fold(Rat::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_int(&self, x: i64) -> Rat {
        self.eval(&rat_int(x))
    }

    /// p(x + c)
    pub fn shift(&self, c: &Rat) -> Self {
        let step = RatPoly::new(vec![c.clone(), Rat::one()]);
        self.coeffs
            .iter()
            .rev()
            .fold(RatPoly::zero(), |acc, a| &(&acc * &step) + &RatPoly::constant(a.clone()))
    }

    pub fn shift_int(&self, c: i64) -> Self {
        self.shift(&rat_int(c))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * rat_int(i as i64))
                .collect(),
        )
    }

    pub fn scale(&self, c: &Rat) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(RatPoly::one(), |acc, _| &acc * self)
    }

    pub fn mul_x_pow(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut v = vec![Rat::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        Self::new(v)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let l = self.leading();
        self.scale(&(Rat::one() / l))
    }

    pub fn div_rem(&self, d: &RatPoly) -> Result<(RatPoly, RatPoly)> {
        let dd = d.deg().ok_or(Error::DivisionByZero)?;
        let lead = d.leading();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((RatPoly::zero(), self.clone()));
        }
        let mut q = vec![Rat::zero(); r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = &r[i + dd] / &lead;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    r[i + j] -= &c * dc;
                }
            }
            q[i] = c;
        }
        r.truncate(dd);
        Ok((RatPoly::new(q), RatPoly::new(r)))
    }

    pub fn rem(&self, d: &RatPoly) -> Result<RatPoly> {
        Ok(self.div_rem(d)?.1)
    }

    /// Exact quotient; errors when `d` does not divide `self`.
    pub fn div_exact(&self, d: &RatPoly) -> Result<RatPoly> {
        let (q, r) = self.div_rem(d)?;
        if !r.is_zero() {
            return Err(Error::Internal("inexact polynomial division".into()));
        }
        Ok(q)
    }

    /// Monic gcd; gcd(0, 0) = 0.
    pub fn gcd(&self, other: &RatPoly) -> RatPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns (g, s, t) with s*self + t*other = g, g monic.
    pub fn ext_gcd(&self, other: &RatPoly) -> (RatPoly, RatPoly, RatPoly) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (RatPoly::one(), RatPoly::zero());
        let (mut t0, mut t1) = (RatPoly::zero(), RatPoly::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1).expect("nonzero divisor");
            r0 = std::mem::replace(&mut r1, r);
            let s = &s0 - &(&q * &s1);
            s0 = std::mem::replace(&mut s1, s);
            let t = &t0 - &(&q * &t1);
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = Rat::one() / r0.leading();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.denom().is_one())
    }

    /// The unique primitive integer polynomial with positive leading
    /// coefficient that is a rational multiple of `self`.
    pub fn primitive_part(&self) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let l = lcm_denominators(&self.coeffs);
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * rat_from(l.clone())).to_integer())
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let sign = if ints.last().unwrap().is_negative() { -BigInt::one() } else { BigInt::one() };
        IntPoly::new(ints.into_iter().map(|c| c / &g * &sign).collect())
    }

    /// Parses either a comma-separated ascending coefficient list
    /// (`"-2,-1,1"`) or a human form in one variable (`"x^2-x-2"`).
    pub fn parse(s: &str) -> Result<Self> {
        let t = s.trim();
        let t = t.strip_prefix('[').and_then(|t| t.strip_suffix(']')).unwrap_or(t);
        if t.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        if !t.chars().any(|c| c.is_ascii_alphabetic()) {
            let coeffs = t.split(',').map(parse_rat).collect::<Result<Vec<_>>>()?;
            return Ok(Self::new(coeffs));
        }
        parse_human(t)
    }

    pub fn to_string_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            if mono.is_empty() {
                out.push_str(&fmt_rat(&a));
            } else if a.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{}*{}", fmt_rat(&a), mono));
            }
        }
        out
    }
}

fn parse_human(s: &str) -> Result<RatPoly> {
    let bad = |m: &str| Error::Parse(format!("{m} in {s:?}"));
    let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
    let mut var: Option<char> = None;
    let mut i = 0;
    let mut acc = RatPoly::zero();
    while i < chars.len() {
        let mut sign = Rat::one();
        while i < chars.len() && (chars[i] == '+' || chars[i] == '-') {
            if chars[i] == '-' {
                sign = -sign;
            }
            i += 1;
        }
        // coefficient: digits, optional /digits, optionally parenthesised
        let mut coef: Option<Rat> = None;
        if i < chars.len() && chars[i] == '(' {
            let close = chars[i..]
                .iter()
                .position(|&c| c == ')')
                .ok_or_else(|| bad("unclosed parenthesis"))?;
            let inner: String = chars[i + 1..i + close].iter().collect();
            coef = Some(parse_rat(&inner)?);
            i += close + 1;
        } else {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '/') {
                i += 1;
            }
            if i > start {
                let lit: String = chars[start..i].iter().collect();
                coef = Some(parse_rat(&lit)?);
            }
        }
        if i < chars.len() && chars[i] == '*' {
            i += 1;
        }
        let mut exp = 0usize;
        if i < chars.len() && chars[i].is_ascii_alphabetic() {
            let v = chars[i];
            match var {
                Some(w) if w != v => return Err(bad("more than one variable")),
                _ => var = Some(v),
            }
            i += 1;
            exp = 1;
            if i < chars.len() && chars[i] == '^' {
                i += 1;
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                if start == i {
                    return Err(bad("missing exponent"));
                }
                let e: String = chars[start..i].iter().collect();
                exp = e.parse().map_err(|_| bad("bad exponent"))?;
            }
        } else if coef.is_none() {
            return Err(bad("expected a term"));
        }
        // trailing "/d" after a monomial, as in x^2/2
        if exp > 0 && i < chars.len() && chars[i] == '/' {
            i += 1;
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let d: String = chars[start..i].iter().collect();
            let d: BigInt = d.parse().map_err(|_| bad("bad divisor"))?;
            if d.is_zero() {
                return Err(Error::DivisionByZero);
            }
            coef = Some(coef.unwrap_or_else(Rat::one) / rat_from(d));
        }
        let c = sign * coef.unwrap_or_else(Rat::one);
        acc = &acc + &RatPoly::monomial(exp, c);
        if i < chars.len() && chars[i] != '+' && chars[i] != '-' {
            return Err(bad(&format!("unexpected character {:?}", chars[i])));
        }
    }
    Ok(acc)
}

impl FromStr for RatPoly {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        RatPoly::parse(s)
    }
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_in("x"))
    }
}

impl Add for &RatPoly {
    type Output = RatPoly;
    fn add(self, o: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        RatPoly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
}

impl Sub for &RatPoly {
    type Output = RatPoly;
    fn sub(self, o: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        RatPoly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }
}

impl Mul for &RatPoly {
    type Output = RatPoly;
    fn mul(self, o: &RatPoly) -> RatPoly {
        if self.is_zero() || o.is_zero() {
            return RatPoly::zero();
        }
        let mut v = vec![Rat::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        RatPoly::new(v)
    }
}

impl Neg for &RatPoly {
    type Output = RatPoly;
    fn neg(self) -> RatPoly {
        RatPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

/// Polynomial over Q in the basis binom(x, 0), binom(x, 1), ...
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BinomPoly {
    coeffs: Vec<Rat>,
}

impl BinomPoly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        trim(&mut coeffs);
        BinomPoly { coeffs }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&a| rat_int(a)).collect())
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

/// binom(x, k) expanded in the monomial basis.
pub fn binomial_poly(k: usize) -> RatPoly {
    let mut b = RatPoly::one();
    for i in 0..k {
        let f = RatPoly::new(vec![rat_int(-(i as i64)), Rat::one()]);
        b = (&b * &f).scale(&(Rat::one() / rat_int(i as i64 + 1)));
    }
    b
}

/// Coefficient k of the result is (Δ^k p)(0).
pub fn to_binomial_basis(p: &RatPoly) -> BinomPoly {
    let Some(d) = p.deg() else {
        return BinomPoly::default();
    };
    let mut row: Vec<Rat> = (0..=d).map(|n| p.eval_int(n as i64)).collect();
    let mut out = Vec::with_capacity(d + 1);
    for _ in 0..=d {
        out.push(row[0].clone());
        row = row.windows(2).map(|w| &w[1] - &w[0]).collect();
    }
    BinomPoly::new(out)
}

pub fn from_binomial_basis(b: &BinomPoly) -> RatPoly {
    let mut acc = RatPoly::zero();
    let mut basis = RatPoly::one();
    for (k, c) in b.coeffs.iter().enumerate() {
        if !c.is_zero() {
            acc = &acc + &basis.scale(c);
        }
        let f = RatPoly::new(vec![rat_int(-(k as i64)), Rat::one()]);
        basis = (&basis * &f).scale(&(Rat::one() / rat_int(k as i64 + 1)));
    }
    acc
}

/// Integer polynomial, ascending coefficients, no trailing zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&a| BigInt::from(a)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn deg(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(One::is_one)
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> IntPoly {
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn to_rat(&self) -> RatPoly {
        RatPoly::from_bigints(&self.coeffs)
    }

    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.to_rat().fmt(f)
    }
}

/// Resultant via the Sylvester determinant.
pub fn resultant(f: &RatPoly, g: &RatPoly) -> Rat {
    let (Some(m), Some(n)) = (f.deg(), g.deg()) else {
        return Rat::zero();
    };
    if m == 0 && n == 0 {
        return Rat::one();
    }
    let size = m + n;
    let mut mat = vec![vec![Rat::zero(); size]; size];
    for r in 0..n {
        for (i, c) in f.coeffs().iter().rev().enumerate() {
            mat[r][r + i] = c.clone();
        }
    }
    for r in 0..m {
        for (i, c) in g.coeffs().iter().rev().enumerate() {
            mat[n + r][r + i] = c.clone();
        }
    }
    crate::linalg::det(mat)
}

/// disc(f) = (-1)^{n(n-1)/2} Res(f, f') / lc(f).
pub fn discriminant(f: &RatPoly) -> Rat {
    let Some(n) = f.deg() else {
        return Rat::zero();
    };
    if n == 0 {
        return Rat::one();
    }
    let r = resultant(f, &f.derivative()) / f.leading();
    if (n * (n - 1) / 2) % 2 == 1 {
        -r
    } else {
        r
    }
}
