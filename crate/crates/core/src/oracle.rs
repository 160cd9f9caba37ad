//! Independent checks: bounded certificate search, random members and the
//! explicit quadratic certificate recipes.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{inv_mod, is_squarefree, lcm_denominators, primes_up_to, valuation_rat, Rat};
use crate::certificate::{binomials_of, evaluate_terms_at, normalize, Certificate};
use crate::error::{Error, Result};
use crate::field::{FieldElem, NumberField};
use crate::linalg::IntLattice;
use crate::membership::{quadratic_profile, QuadProfile};
use crate::negone::certify_negative_one;
use crate::poly::RatPoly;

/// Result of a bounded search. `Inconclusive` says nothing about membership.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(Certificate),
    Inconclusive,
}

impl SearchOutcome {
    pub fn found(self) -> Option<Certificate> {
        match self {
            SearchOutcome::Found(c) => Some(c),
            SearchOutcome::Inconclusive => None,
        }
    }

    pub fn is_found(&self) -> bool {
        matches!(self, SearchOutcome::Found(_))
    }
}

struct Search {
    a_max: BigInt,
    basis: Vec<Vec<BigInt>>,
    // lattice[j] and bounds[j] describe Σ_{k<j} a_k·basis[k]
    lattice: Vec<IntLattice>,
    lo: Vec<Vec<BigInt>>,
    hi: Vec<Vec<BigInt>>,
    chosen: Vec<u64>,
    nodes: u64,
    node_limit: Option<u64>,
}

impl Search {
    fn reachable(&self, j: usize, r: &[BigInt]) -> bool {
        r.iter().zip(&self.lo[j]).zip(&self.hi[j]).all(|((x, lo), hi)| lo <= x && x <= hi) && self.lattice[j].contains(r)
    }

    /// Range of a for which r − a·b stays inside the box of level j.
    fn a_range(&self, j: usize, r: &[BigInt], b: &[BigInt]) -> Option<(BigInt, BigInt)> {
        let mut lo_a = BigInt::zero();
        let mut hi_a = self.a_max.clone();
        for c in 0..r.len() {
            // lo ≤ r − a·b ≤ hi
            let (l, h) = (&r[c] - &self.hi[j][c], &r[c] - &self.lo[j][c]);
            match b[c].sign() {
                Sign::NoSign => {
                    if l.is_positive() || h.is_negative() {
                        return None;
                    }
                }
                Sign::Plus => {
                    lo_a = lo_a.max(l.div_ceil(&b[c]));
                    hi_a = hi_a.min(h.div_floor(&b[c]));
                }
                Sign::Minus => {
                    lo_a = lo_a.max(h.div_ceil(&b[c]));
                    hi_a = hi_a.min(l.div_floor(&b[c]));
                }
            }
        }
        (lo_a <= hi_a).then_some((lo_a, hi_a))
    }

    // Explores a_{j-1}, ..., a_0 with values ascending.
    fn dfs(&mut self, j: usize, r: &[BigInt]) -> Option<bool> {
        self.nodes += 1;
        if self.node_limit.is_some_and(|l| self.nodes > l) {
            return None;
        }
        if j == 0 {
            return Some(r.iter().all(Zero::is_zero));
        }
        let k = j - 1;
        let b = self.basis[k].clone();
        let Some((lo_a, hi_a)) = self.a_range(k, r, &b) else {
            return Some(false);
        };
        let mut a = lo_a;
        while a <= hi_a {
            let next: Vec<BigInt> = r.iter().zip(&b).map(|(x, y)| x - &a * y).collect();
            if self.reachable(k, &next) {
                match self.dfs(k, &next) {
                    Some(true) => {
                        self.chosen[k] = a.to_u64().unwrap();
                        return Some(true);
                    }
                    None => return None,
                    Some(false) => {}
                }
            }
            if b.iter().all(Zero::is_zero) {
                break;
            }
            a += 1;
        }
        Some(false)
    }
}

/// Least certificate Σ_{k<=K} a_k·binom(α, k) = β with 0 <= a_k <= A, in
/// lexicographic order of (a_K, ..., a_0).
pub fn brute_force_certificate(field: &NumberField, alpha: &FieldElem, beta: &FieldElem, max_index: u64, coeff_bound: u64) -> SearchOutcome {
    brute_force_limited(field, alpha, beta, max_index, coeff_bound, None)
}

/// As `brute_force_certificate`, giving up after `node_limit` search nodes.
pub fn brute_force_limited(
    field: &NumberField,
    alpha: &FieldElem,
    beta: &FieldElem,
    max_index: u64,
    coeff_bound: u64,
    node_limit: Option<u64>,
) -> SearchOutcome {
    let bs = binomials_of(field, alpha, max_index);
    let den = lcm_denominators(bs.iter().flat_map(|b| b.coords()).chain(beta.coords()));
    let scale = |e: &FieldElem| -> Vec<BigInt> { e.coords().iter().map(|c| (c * Rat::from_integer(den.clone())).to_integer()).collect() };
    let basis: Vec<Vec<BigInt>> = bs.iter().map(scale).collect();
    let target = scale(beta);
    let dim = field.degree();
    let a_max = BigInt::from(coeff_bound);
    let mut lattice = Vec::new();
    let mut lo = vec![vec![BigInt::zero(); dim]];
    let mut hi = vec![vec![BigInt::zero(); dim]];
    for j in 0..=basis.len() {
        lattice.push(IntLattice::new(dim, &basis[..j]));
        if j > 0 {
            let b = &basis[j - 1];
            lo.push(lo[j - 1].iter().zip(b).map(|(l, x)| l + (&a_max * x).min(BigInt::zero())).collect());
            hi.push(hi[j - 1].iter().zip(b).map(|(h, x)| h + (&a_max * x).max(BigInt::zero())).collect());
        }
    }
    let n = basis.len();
    let mut s = Search { a_max, basis, lattice, lo, hi, chosen: vec![0; n], nodes: 0, node_limit };
    if !s.reachable(n, &target) || s.dfs(n, &target) != Some(true) {
        return SearchOutcome::Inconclusive;
    }
    let terms = normalize(s.chosen.iter().enumerate().map(|(k, &a)| (k as u64, BigUint::from(a))));
    let target = evaluate_terms_at(field, alpha, &terms);
    debug_assert_eq!(&target, beta);
    SearchOutcome::Found(Certificate { target, terms })
}

/// Escalating bounded search for a certificate of a member. Also tries
/// β + n for small n, paying back n with the −1 certificate.
pub fn search_certificate(field: &NumberField, alpha: &FieldElem, beta: &FieldElem) -> Option<Certificate> {
    const LEVELS: [(u64, u64); 4] = [(4, 8), (6, 16), (8, 32), (8, 64)];
    const NODES: u64 = 200_000;
    for (k, a) in LEVELS {
        if let SearchOutcome::Found(c) = brute_force_limited(field, alpha, beta, k, a, Some(NODES)) {
            return Some(c);
        }
    }
    if *alpha != field.alpha() {
        return None;
    }
    let neg_one = certify_negative_one(field).ok()?;
    for n in 1..=4u64 {
        let shifted = field.add(beta, &field.from_int(n as i64));
        for (k, a) in LEVELS {
            if let SearchOutcome::Found(c) = brute_force_limited(field, alpha, &shifted, k, a, Some(NODES)) {
                return c.sub_int(field, n, &neg_one).ok();
            }
        }
    }
    None
}

/// A random member: coefficients in 0..=4 on indices 0..=size, each present
/// with probability 1/2. Deterministic per seed.
pub fn random_member(field: &NumberField, alpha: &FieldElem, seed: u64, size: u64) -> (FieldElem, Certificate) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut terms = Vec::new();
    for k in 0..=size {
        if rng.gen_bool(0.5) {
            terms.push((k, BigUint::from(rng.gen_range(1u32..=4))));
        }
    }
    let terms = normalize(terms);
    let target = evaluate_terms_at(field, alpha, &terms);
    (target.clone(), Certificate { target, terms })
}

/// Certificates for −1 and for 1/p at every non-split p <= prime_bound.
#[derive(Clone, Debug)]
pub struct QuadraticCertificates {
    pub field: NumberField,
    pub neg_one: Certificate,
    pub inverse_primes: BTreeMap<u64, Certificate>,
}

pub fn quadratic_certificates(d: &BigInt, prime_bound: u64) -> Result<QuadraticCertificates> {
    let field = sqrt_field(d)?;
    let neg_one = quadratic_neg_one(&field, d)?;
    let mut inverse_primes = BTreeMap::new();
    for p in primes_up_to(prime_bound) {
        if quadratic_profile(d, p)? == QuadProfile::InertOrRamified {
            inverse_primes.insert(p, quadratic_inverse_prime_with(&field, d, p, &neg_one)?);
        }
    }
    Ok(QuadraticCertificates { field, neg_one, inverse_primes })
}

/// Certificate for 1/p in R₊(√d); split primes have none.
pub fn quadratic_inverse_prime_certificate(d: &BigInt, p: u64) -> Result<Certificate> {
    let field = sqrt_field(d)?;
    let neg_one = quadratic_neg_one(&field, d)?;
    quadratic_inverse_prime_with(&field, d, p, &neg_one)
}

fn sqrt_field(d: &BigInt) -> Result<NumberField> {
    if d.is_zero() || d.is_one() || !is_squarefree(d)? {
        return Err(Error::Precondition(format!("{d} is not a squarefree integer other than 0 and 1")));
    }
    let m = RatPoly::new(vec![Rat::from_integer(-d), Rat::zero(), Rat::one()]);
    NumberField::new_trusted(&m)
}

/// Sign of c + e·√d.
fn sign_sqrt(c: &BigInt, e: &BigInt, d: &BigInt) -> Ordering {
    let (sc, se) = (c.sign(), e.sign());
    if se == Sign::NoSign {
        return c.cmp(&BigInt::zero());
    }
    if sc == Sign::NoSign || sc == se {
        return if se == Sign::Plus { Ordering::Greater } else { Ordering::Less };
    }
    // opposite signs: compare c² with e²d
    let lhs = c * c;
    let rhs = e * e * d;
    match (lhs.cmp(&rhs), sc) {
        (Ordering::Equal, _) => Ordering::Equal,
        (Ordering::Greater, Sign::Plus) | (Ordering::Less, Sign::Minus) => Ordering::Greater,
        _ => Ordering::Less,
    }
}

fn int_coords(x: &FieldElem) -> (BigInt, BigInt) {
    let c = x.coords();
    debug_assert!(c.iter().all(|r| r.is_integer()));
    (c[0].to_integer(), c[1].to_integer())
}

fn biguint(n: &BigInt) -> BigUint {
    n.to_biguint().expect("nonnegative")
}

/// Certificates built from the identity binom(x,k)·binom(x,l) and addition.
struct Recipe<'a> {
    field: &'a NumberField,
    neg_one: Option<&'a Certificate>,
}

impl Recipe<'_> {
    fn sqrt(&self) -> Certificate {
        Certificate::binomial(self.field, 1)
    }

    /// x + a + b·√d, for integers of either sign.
    fn shift(&self, x: &Certificate, a: &BigInt, b: &BigInt) -> Result<Certificate> {
        let f = self.field;
        let mut out = x.clone();
        let need_neg = || self.neg_one.ok_or_else(|| Error::Internal("negative shift before −1 is known".into()));
        if a.is_positive() {
            out = out.add(f, &Certificate::checked(f, vec![(0, biguint(a))]));
        } else if a.is_negative() {
            out = out.add(f, &need_neg()?.scale(f, &biguint(&-a)));
        }
        if b.is_positive() {
            out = out.add(f, &self.sqrt().scale(f, &biguint(b)));
        } else if b.is_negative() {
            out = out.add(f, &self.sqrt().mul(f, need_neg()?).scale(f, &biguint(&-b)));
        }
        Ok(out)
    }

    /// 1/p from a certificate for a rational a/p^j with p ∤ a.
    fn isolate(&self, x: &Certificate, p: u64) -> Result<Certificate> {
        let f = self.field;
        let q = x.target.as_rational().ok_or_else(|| Error::Internal("expected a rational".into()))?;
        let j = -valuation_rat(p, &q).unwrap_or(0);
        if j <= 0 || !q.denom().is_multiple_of(&num_traits::pow(BigInt::from(p), j as usize)) {
            return Err(Error::Internal(format!("{q} has no pure p-power denominator")));
        }
        let s = x.scale(f, &biguint(&num_traits::pow(BigInt::from(p), (j - 1) as usize)));
        let a = s.target.as_rational().unwrap().numer().clone();
        let u = inv_mod(&a, &BigInt::from(p)).ok_or_else(|| Error::Internal("numerator not a unit".into()))?;
        let us = s.scale(f, &biguint(&u));
        // u·a/p = 1/p + t
        let t: BigInt = (&u * &a - 1) / BigInt::from(p);
        self.shift(&us, &-t, &BigInt::zero())
    }
}

fn quadratic_neg_one(field: &NumberField, d: &BigInt) -> Result<Certificate> {
    let r = Recipe { field, neg_one: None };
    let f = field;
    let one = BigInt::one();
    // Reach a certificate for a negative integer −m, then add m − 1.
    let mut x = if d.is_negative() {
        r.sqrt().mul(f, &r.sqrt())
    } else {
        let n = d.sqrt().to_u64().unwrap();
        let b = f.binom(&f.alpha(), n + 2);
        let den = lcm_denominators(b.coords());
        Certificate::checked(f, vec![(n + 2, biguint(&den))])
    };
    loop {
        let (c, e) = int_coords(&x.target);
        if e.is_zero() {
            debug_assert!(c.is_negative());
            let m = -c;
            return r.shift(&x, &(m - &one), &BigInt::zero());
        }
        debug_assert_eq!(sign_sqrt(&c, &e, d), Ordering::Less);
        // c > e√d forces e < 0; c < e√d forces c < 0
        let c_dominant = sign_sqrt(&c, &(-&e), d) == Ordering::Greater;
        let y = if c_dominant {
            r.shift(&x, &BigInt::zero(), &(-2 * &e))?
        } else {
            r.shift(&x, &(-2 * &c), &BigInt::zero())?
        };
        let (yc, ye) = int_coords(&y.target);
        x = if sign_sqrt(&yc, &ye, d) == Ordering::Greater {
            x.mul(f, &y)
        } else {
            // y < 0; flipping its remaining negative part gives z > 0 and y·z < 0
            let z = if c_dominant {
                r.shift(&y, &(-2 * &yc), &BigInt::zero())?
            } else {
                r.shift(&y, &BigInt::zero(), &(-2 * &ye))?
            };
            y.mul(f, &z)
        };
    }
}

fn quadratic_inverse_prime_with(field: &NumberField, d: &BigInt, p: u64, neg_one: &Certificate) -> Result<Certificate> {
    if quadratic_profile(d, p)? == QuadProfile::Split {
        return Err(Error::Precondition(format!("{p} splits in Q(√{d}); 1/{p} is not a member")));
    }
    let r = Recipe { field, neg_one: Some(neg_one) };
    let f = field;
    let pb = BigInt::from(p);
    let zero = BigInt::zero();
    let cert = if p == 2 && d.is_odd() {
        let x = Certificate::binomial(f, 2);
        let base = if d.mod_floor(&BigInt::from(4)) == BigInt::from(3) {
            x.clone()
        } else {
            // binom((d − √d)/2, 2) = (d² − d − 2(d − 1)√d)/8
            let w = x.binom(f, 2)?;
            let (_, e) = (w.target.coords()[0].clone(), w.target.coords()[1].clone());
            r.shift(&w, &zero, &(-e).to_integer())?
        };
        if base.target.as_rational().is_some() {
            // (d² − d)/8 = odd/2
            r.isolate(&base, 2)?
        } else {
            // (d − √d)/2 · (d + √d)/2 = (d² − d)/4
            let y = r.shift(&base, &zero, &BigInt::one())?;
            r.isolate(&base.mul(f, &y), 2)?
        }
    } else {
        // (p − 1)!·binom(√d, p) = (a + b√d)/p
        let fact: BigUint = (1..p).map(BigUint::from).product();
        let x = Certificate::checked(f, vec![(p, fact)]);
        let (a, b) = {
            let c = x.target.coords();
            ((&c[0] * Rat::from_integer(pb.clone())).to_integer(), (&c[1] * Rat::from_integer(pb.clone())).to_integer())
        };
        let a_mod = a.mod_floor(&pb);
        if a_mod.is_zero() {
            // b√d/p, squared: b²d/p²; times p when p ∤ d
            let y = r.shift(&x, &-(&a / &pb), &zero)?;
            let sq = y.mul(f, &y);
            let sq = if (d % &pb).is_zero() { sq } else { sq.scale(f, &biguint(&pb)) };
            r.isolate(&sq, p)?
        } else if b.is_zero() {
            r.isolate(&x, p)?
        } else {
            // normalize to (1 + b√d)/p
            let u = inv_mod(&a_mod, &pb).unwrap();
            let xu = x.scale(f, &biguint(&u));
            let ua: BigInt = &u * &a;
            let t: BigInt = (&ua - 1) / &pb;
            let x1 = r.shift(&xu, &-t, &zero)?;
            let b1 = int_num(&x1.target.coords()[1], &pb);
            // p·((1 + b√d)/p)² = (1 + b²d + 2b√d)/p
            let sq = x1.mul(f, &x1).scale(f, &biguint(&pb));
            let c0 = int_num(&sq.target.coords()[0], &pb);
            if c0.mod_floor(&pb).is_zero() {
                let y = r.shift(&sq, &-(&c0 / &pb), &zero)?;
                r.isolate(&y.mul(f, &y), p)?
            } else {
                let w = inv_mod(&c0, &pb).unwrap();
                let sw = sq.scale(f, &biguint(&w));
                let cw = int_num(&sw.target.coords()[0], &pb);
                let t: BigInt = (&cw - 1) / &pb;
                let x2 = r.shift(&sw, &-t, &zero)?;
                let b2 = int_num(&x2.target.coords()[1], &pb);
                debug_assert!(!(&b1 - &b2).mod_floor(&pb).is_zero());
                // (1 + b1√d)/p − (1 + b2√d)/p = (b1 − b2)√d/p; square, times p
                let diff = x1.add(f, &x2.mul(f, neg_one));
                r.isolate(&diff.mul(f, &diff).scale(f, &biguint(&pb)), p)?
            }
        }
    };
    debug_assert_eq!(cert.target, f.from_rat(Rat::new(BigInt::one(), pb)));
    Ok(cert)
}

/// p·x for a coordinate x ∈ (1/p)Z.
fn int_num(x: &Rat, p: &BigInt) -> BigInt {
    (x * Rat::from_integer(p.clone())).to_integer()
}
