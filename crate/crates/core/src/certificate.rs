//! Membership certificates: explicit nonnegative integer combinations of
//! binomial coefficients binom(α, k), and the algebra that combines them.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Zero};

use crate::arith::{rat_from, rat_int, Rat};
use crate::error::{Error, Result};
use crate::field::{FieldElem, NumberField};
use crate::rplus::{binom_of_poly, binom_product, RPlusPoly};

/// Σ a_k·binom(α, k) = target with every a_k >= 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub target: FieldElem,
    /// Sorted by index, no zero coefficients.
    pub terms: Vec<(u64, BigUint)>,
}

pub(crate) fn normalize(terms: impl IntoIterator<Item = (u64, BigUint)>) -> Vec<(u64, BigUint)> {
    let mut m: BTreeMap<u64, BigUint> = BTreeMap::new();
    for (k, a) in terms {
        *m.entry(k).or_default() += a;
    }
    m.into_iter().filter(|(_, a)| !a.is_zero()).collect()
}

/// binom(α, 0), ..., binom(α, k_max) by the recurrence
/// binom(α, k+1) = binom(α, k)·(α − k)/(k + 1).
pub fn alpha_binomials(field: &NumberField, k_max: u64) -> Vec<FieldElem> {
    binomials_of(field, &field.alpha(), k_max)
}

/// binom(a, 0), ..., binom(a, k_max) for any element a.
pub fn binomials_of(field: &NumberField, a: &FieldElem, k_max: u64) -> Vec<FieldElem> {
    let mut out = Vec::with_capacity(k_max as usize + 1);
    let mut cur = field.one();
    for k in 0..=k_max {
        out.push(cur.clone());
        if k < k_max {
            let f = field.sub(a, &field.from_int(k as i64));
            cur = field.scale(&field.mul(&cur, &f), &(Rat::one() / rat_int(k as i64 + 1)));
        }
    }
    out
}

/// Σ a_k·binom(α, k), computed exactly.
pub fn evaluate_terms(field: &NumberField, terms: &[(u64, BigUint)]) -> FieldElem {
    evaluate_terms_at(field, &field.alpha(), terms)
}

/// Σ a_k·binom(a, k) for any element a.
pub fn evaluate_terms_at(field: &NumberField, a: &FieldElem, terms: &[(u64, BigUint)]) -> FieldElem {
    let Some(k_max) = terms.iter().map(|t| t.0).max() else {
        return field.zero();
    };
    let bs = binomials_of(field, a, k_max);
    terms.iter().fold(field.zero(), |acc, (k, a)| {
        let c = rat_from(BigInt::from_biguint(Sign::Plus, a.clone()));
        field.add(&acc, &field.scale(&bs[*k as usize], &c))
    })
}

/// Recomputes the combination and compares it with the target.
pub fn verify_certificate(field: &NumberField, cert: &Certificate) -> bool {
    verify_certificate_at(field, &field.alpha(), cert)
}

/// Verification against binomials of an arbitrary element.
pub fn verify_certificate_at(field: &NumberField, a: &FieldElem, cert: &Certificate) -> bool {
    cert.target.coords().len() == field.degree()
        && cert.terms.windows(2).all(|w| w[0].0 < w[1].0)
        && cert.terms.iter().all(|t| !t.1.is_zero())
        && evaluate_terms_at(field, a, &cert.terms) == cert.target
}

impl Certificate {
    /// Builds a certificate and checks it.
    pub fn checked(field: &NumberField, terms: Vec<(u64, BigUint)>) -> Certificate {
        let terms = normalize(terms);
        let target = evaluate_terms(field, &terms);
        Certificate { target, terms }
    }

    pub fn constant(field: &NumberField, n: u64) -> Certificate {
        Certificate::checked(field, vec![(0, BigUint::from(n))])
    }

    pub fn zero(field: &NumberField) -> Certificate {
        Certificate { target: field.zero(), terms: Vec::new() }
    }

    pub fn size(&self) -> usize {
        self.terms.len()
    }

    pub fn max_index(&self) -> u64 {
        self.terms.last().map_or(0, |t| t.0)
    }

    pub fn add(&self, field: &NumberField, o: &Certificate) -> Certificate {
        Certificate {
            target: field.add(&self.target, &o.target),
            terms: normalize(self.terms.iter().chain(&o.terms).cloned()),
        }
    }

    pub fn scale(&self, field: &NumberField, c: &BigUint) -> Certificate {
        Certificate {
            target: field.scale(&self.target, &rat_from(BigInt::from_biguint(Sign::Plus, c.clone()))),
            terms: normalize(self.terms.iter().map(|(k, a)| (*k, a * c))),
        }
    }

    /// Product through the identity for binom(x,k)·binom(x,l).
    pub fn mul(&self, field: &NumberField, o: &Certificate) -> Certificate {
        let mut out = Vec::new();
        for (k, a) in &self.terms {
            for (l, b) in &o.terms {
                let ab = a * b;
                for (j, c) in binom_product(*k as usize, *l as usize).coeffs().iter().enumerate() {
                    if !c.is_zero() {
                        out.push((j as u64, &ab * c.numer().to_biguint().unwrap()));
                    }
                }
            }
        }
        Certificate { target: field.mul(&self.target, &o.target), terms: normalize(out) }
    }

    /// −target, given a certificate for −1.
    pub fn neg(&self, field: &NumberField, neg_one: &Certificate) -> Result<Certificate> {
        if neg_one.target != field.from_int(-1) {
            return Err(Error::Precondition("expected a certificate for -1".into()));
        }
        Ok(self.mul(field, neg_one))
    }

    /// target − n for a nonnegative integer n, given a certificate for −1.
    pub fn sub_int(&self, field: &NumberField, n: u64, neg_one: &Certificate) -> Result<Certificate> {
        if n == 0 {
            return Ok(self.clone());
        }
        if neg_one.target != field.from_int(-1) {
            return Err(Error::Precondition("expected a certificate for -1".into()));
        }
        let m = neg_one.scale(field, &BigUint::from(n));
        Ok(self.add(field, &m))
    }

    /// binom(target, j): the terms define f ∈ R₊(x) with f(α) = target.
    pub fn binom(&self, field: &NumberField, j: usize) -> Result<Certificate> {
        let k_max = self.max_index() as usize;
        let mut coeffs = vec![BigUint::zero(); k_max + 1];
        for (k, a) in &self.terms {
            coeffs[*k as usize] = a.clone();
        }
        let g = binom_of_poly(&RPlusPoly::new(coeffs), j)?;
        let terms: Vec<(u64, BigUint)> =
            g.coeffs().iter().enumerate().map(|(i, c)| (i as u64, c.clone())).collect();
        Ok(Certificate { target: field.binom(&self.target, j as u64), terms: normalize(terms) })
    }

    /// Certificate for a nonnegative integer combination of α-binomials.
    pub fn from_terms(field: &NumberField, terms: &[(u64, u64)]) -> Certificate {
        Certificate::checked(field, terms.iter().map(|&(k, a)| (k, BigUint::from(a))).collect())
    }

    /// Certificate for binom(α, k) itself.
    pub fn binomial(field: &NumberField, k: u64) -> Certificate {
        Certificate::checked(field, vec![(k, BigUint::one())])
    }
}
