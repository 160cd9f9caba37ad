//! Deciding β ∈ R₊(α) through valuations at the places over each prime,
//! closed-form rules for rational, quadratic and cyclotomic α, and the
//! generators α_p.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{ensure_prime, legendre, pow_u64, prime_factors, primes_up_to, rat_from, squarefree_part, valuation, valuation_rat, Rat};
use crate::certificate::Certificate;
use crate::error::{Error, Result};
use crate::field::{FieldElem, NumberField};
use crate::padic::{
    place_valuation, place_valuation_from, places, residual_max_valuation, root_distance, truncate, zp_roots, Place,
    Val, DEFAULT_M0,
};
use crate::poly::RatPoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    IntegerCase,
    Rational,
    Quadratic,
    Cyclotomic,
    ValuationGeneral,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::IntegerCase => "integer-case",
            Method::Rational => "rational",
            Method::Quadratic => "quadratic",
            Method::Cyclotomic => "cyclotomic",
            Method::ValuationGeneral => "valuation-general",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A place with v(α) >= 0 where β has negative valuation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValuationWitness {
    pub p: u64,
    pub place: Place,
    pub alpha_val: Val,
    pub beta_val: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MembershipVerdict {
    pub member: bool,
    pub method: Method,
    /// Present for every non-member of a ring R₊(α); absent when α is a
    /// nonnegative integer and no valuation can separate.
    pub witness: Option<ValuationWitness>,
    pub certificate: Option<Certificate>,
    /// (prime, number of places with v(α) >= 0 examined).
    pub places_checked: Vec<(u64, usize)>,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct DecideOptions {
    /// Attach a certificate to positive verdicts when bounded search finds one.
    pub certify: bool,
    /// Skip the closed-form rules and use places only.
    pub force_general: bool,
}

/// Splitting of p in Q(√d), as seen by linear factors of x² − d over Q_p.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuadProfile {
    Split,
    InertOrRamified,
}

pub fn quadratic_profile(d: &BigInt, p: u64) -> Result<QuadProfile> {
    ensure_prime(p)?;
    if d.is_zero() || d.is_one() || !crate::arith::is_squarefree(d)? {
        return Err(Error::Precondition(format!("{d} is not a squarefree integer other than 0 and 1")));
    }
    let split = if p == 2 { d.mod_floor(&BigInt::from(8)) == BigInt::one() } else { legendre(d, p) == 1 };
    Ok(if split { QuadProfile::Split } else { QuadProfile::InertOrRamified })
}

/// Whether 1/p ∈ R₊(ζ_n).
pub fn cyclotomic_inverse_prime(n: u64, p: u64) -> Result<bool> {
    if n <= 2 {
        return Err(Error::Precondition(format!("cyclotomic index {n} must exceed 2")));
    }
    ensure_prime(p)?;
    Ok(p % n != 1)
}

fn alpha_valuation(place: &Place, field: &NumberField, alpha: &FieldElem) -> Result<Val> {
    if *alpha == field.alpha() {
        Ok(place.alpha_val)
    } else {
        place_valuation(place, alpha)
    }
}

/// Places over p where v(α) >= 0.
pub fn relevant_places(field: &NumberField, alpha: &FieldElem, p: u64) -> Result<Vec<(Place, Val)>> {
    let mut out = Vec::new();
    for pl in places(field, p)? {
        let v = alpha_valuation(&pl, field, alpha)?;
        if v.is_nonnegative() {
            out.push((pl, v));
        }
    }
    Ok(out)
}

/// A witness at p, if one exists.
pub fn witness_at(field: &NumberField, alpha: &FieldElem, beta: &FieldElem, p: u64) -> Result<(Option<ValuationWitness>, usize)> {
    let rel = relevant_places(field, alpha, p)?;
    let count = rel.len();
    for (place, av) in rel {
        if let Val::Finite(bv) = place_valuation(&place, beta)? {
            if bv < 0 {
                return Ok((Some(ValuationWitness { p, place, alpha_val: av, beta_val: bv }), count));
            }
        }
    }
    Ok((None, count))
}

/// Re-derives the witness's place from scratch and re-evaluates both
/// valuations at doubled starting precision.
pub fn verify_witness(field: &NumberField, alpha: &FieldElem, beta: &FieldElem, w: &ValuationWitness) -> Result<bool> {
    let m0 = 2 * DEFAULT_M0;
    let target = w.place.root.residue();
    let prec = w.place.root.precision.min(64);
    let modulus = pow_u64(w.p, prec);
    for pl in places(field, w.p)? {
        if pl.root.residue().mod_floor(&modulus) != target.mod_floor(&modulus) {
            continue;
        }
        let av = place_valuation_from(&pl, alpha, m0)?;
        let bv = place_valuation_from(&pl, beta, m0)?;
        return Ok(av.is_nonnegative() && bv == Val::Finite(w.beta_val) && w.beta_val < 0);
    }
    Ok(false)
}

fn candidate_primes(beta: &FieldElem) -> Result<Vec<u64>> {
    let d = beta.denominator();
    if d.is_one() {
        return Ok(Vec::new());
    }
    prime_factors(&d)
}

pub fn decide_membership(field: &NumberField, alpha: &FieldElem, beta: &FieldElem) -> Result<MembershipVerdict> {
    decide_membership_with(field, alpha, beta, DecideOptions::default())
}

pub fn decide_membership_with(
    field: &NumberField,
    alpha: &FieldElem,
    beta: &FieldElem,
    opts: DecideOptions,
) -> Result<MembershipVerdict> {
    if !field.generates(alpha) {
        return Err(Error::Precondition(format!("{alpha} does not generate the field")));
    }
    let mut verdict = if field.degree() == 1 && !opts.force_general {
        rational_dispatch(field, alpha, beta)?
    } else {
        let is_defining = *alpha == field.alpha();
        let cyclo = if is_defining && !opts.force_general { field.cyclotomic_index() } else { None };
        if let Some(m) = cyclo {
            cyclotomic_decision(field, alpha, beta, m)?
        } else if field.degree() == 2 && is_defining && !opts.force_general {
            quadratic_decision(field, alpha, beta)?
        } else {
            general_decision(field, alpha, beta)?
        }
    };
    if opts.certify && verdict.member {
        verdict.certificate = crate::oracle::search_certificate(field, alpha, beta);
    }
    Ok(verdict)
}

fn non_member_at(field: &NumberField, alpha: &FieldElem, beta: &FieldElem, p: u64, method: Method, mut checked: Vec<(u64, usize)>) -> Result<MembershipVerdict> {
    let (w, count) = witness_at(field, alpha, beta, p)?;
    checked.push((p, count));
    let w = w.ok_or_else(|| Error::Internal(format!("closed-form rule found no witness at {p}")))?;
    Ok(MembershipVerdict { member: false, method, witness: Some(w), certificate: None, places_checked: checked })
}

fn member(method: Method, checked: Vec<(u64, usize)>) -> MembershipVerdict {
    MembershipVerdict { member: true, method, witness: None, certificate: None, places_checked: checked }
}

fn rational_dispatch(field: &NumberField, alpha: &FieldElem, beta: &FieldElem) -> Result<MembershipVerdict> {
    let a = alpha.as_rational().expect("degree one");
    let b = beta.as_rational().expect("degree one");
    if a.is_integer() {
        if !a.is_negative() {
            let ok = b.is_integer() && !b.is_negative();
            return Ok(MembershipVerdict {
                member: ok,
                method: Method::IntegerCase,
                witness: None,
                certificate: None,
                places_checked: Vec::new(),
            });
        }
        return match b.denom().is_one() {
            true => Ok(member(Method::IntegerCase, Vec::new())),
            false => {
                let p = prime_factors(b.denom())?[0];
                non_member_at(field, alpha, beta, p, Method::IntegerCase, Vec::new())
            }
        };
    }
    // α = r/q: β ∈ Z[1/q]
    let q = a.denom().clone();
    for p in prime_factors(b.denom()).unwrap_or_default() {
        if !(&q % p).is_zero() {
            return non_member_at(field, alpha, beta, p, Method::Rational, Vec::new());
        }
    }
    Ok(member(Method::Rational, Vec::new()))
}

fn cyclotomic_decision(field: &NumberField, alpha: &FieldElem, beta: &FieldElem, m: u64) -> Result<MembershipVerdict> {
    for p in candidate_primes(beta)? {
        if !cyclotomic_inverse_prime(m, p)? {
            return non_member_at(field, alpha, beta, p, Method::Cyclotomic, Vec::new());
        }
    }
    Ok(member(Method::Cyclotomic, Vec::new()))
}

fn quadratic_decision(field: &NumberField, alpha: &FieldElem, beta: &FieldElem) -> Result<MembershipVerdict> {
    let d = squarefree_part(field.disc())?;
    let tr = field.trace(beta);
    let nm = field.norm(beta);
    let mut checked = Vec::new();
    for p in candidate_primes(beta)? {
        if quadratic_profile(&d, p)? == QuadProfile::InertOrRamified {
            continue;
        }
        if valuation(p, field.delta()).unwrap_or(0) == 0 {
            let integral = valuation_rat(p, &tr).is_none_or(|v| v >= 0) && valuation_rat(p, &nm).is_none_or(|v| v >= 0);
            if !integral {
                return non_member_at(field, alpha, beta, p, Method::Quadratic, checked);
            }
            checked.push((p, 2));
        } else {
            let (w, count) = witness_at(field, alpha, beta, p)?;
            checked.push((p, count));
            if let Some(w) = w {
                return Ok(MembershipVerdict {
                    member: false,
                    method: Method::Quadratic,
                    witness: Some(w),
                    certificate: None,
                    places_checked: checked,
                });
            }
        }
    }
    Ok(member(Method::Quadratic, checked))
}

fn general_decision(field: &NumberField, alpha: &FieldElem, beta: &FieldElem) -> Result<MembershipVerdict> {
    let mut checked = Vec::new();
    for p in candidate_primes(beta)? {
        let (w, count) = witness_at(field, alpha, beta, p)?;
        checked.push((p, count));
        if let Some(w) = w {
            return Ok(MembershipVerdict {
                member: false,
                method: Method::ValuationGeneral,
                witness: Some(w),
                certificate: None,
                places_checked: checked,
            });
        }
    }
    Ok(member(Method::ValuationGeneral, checked))
}

/// Whether 1/p ∈ R₊(α): no place over p has v(α) >= 0.
pub fn inverse_prime_in(field: &NumberField, alpha: &FieldElem, p: u64) -> Result<bool> {
    ensure_prime(p)?;
    Ok(relevant_places(field, alpha, p)?.is_empty())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlphaPConstruction {
    /// p does not divide the discriminant; one representative per root mod p.
    FastPath { roots: Vec<BigInt> },
    General {
        /// z_i modulo p^precision.
        roots: Vec<BigInt>,
        k: u32,
        k_i: Vec<u32>,
        big_k: u32,
        m_i: Vec<u32>,
        n: u32,
        r_i: Vec<BigInt>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorAlphaP {
    pub p: u64,
    pub element: FieldElem,
    pub construction: AlphaPConstruction,
    /// Whether a root of m_θ fails to lie in Z_p.
    pub has_nonlinear: bool,
    /// The element already lies in Z[θ].
    pub trivial: bool,
}

fn product_over_p(field: &NumberField, rs: &[BigInt], p: u64, e: u32) -> FieldElem {
    let a = field.alpha();
    let prod = rs.iter().fold(field.one(), |acc, r| field.mul(&acc, &field.sub(&a, &field.from_rat(rat_from(r.clone())))));
    field.scale(&prod, &(Rat::one() / rat_from(pow_u64(p, e))))
}

/// α_p for an algebraic integer α.
pub fn alpha_p(field: &NumberField, p: u64) -> Result<GeneratorAlphaP> {
    ensure_prime(p)?;
    if !field.delta().is_one() {
        return Err(Error::Precondition("α_p needs an algebraic integer; use the integral part".into()));
    }
    let m = field.theta_poly();
    let n = field.degree();
    if !(field.disc() % p).is_zero() {
        let pb = BigInt::from(p);
        let mut rs = Vec::new();
        for r in 0..p {
            let r = BigInt::from(r);
            let v = m.eval(&r);
            if (&v % &pb).is_zero() {
                // keep v(z − r) = 1 exactly
                let p2 = &pb * &pb;
                rs.push(if (&v % &p2).is_zero() { r + &pb } else { r });
            }
        }
        let element = product_over_p(field, &rs, p, 1);
        let has_nonlinear = rs.len() < n;
        let trivial = field.in_order(&element);
        return Ok(GeneratorAlphaP { p, element, construction: AlphaPConstruction::FastPath { roots: rs }, has_nonlinear, trivial });
    }
    let roots = zp_roots(p, m)?;
    let q = roots.len() as u32;
    let nres = residual_max_valuation(p, m, &roots)?;
    let big_n = nres.unwrap_or(0);
    let dist: Vec<Vec<u32>> = roots
        .iter()
        .enumerate()
        .map(|(i, a)| roots.iter().enumerate().map(|(j, b)| if i == j { 0 } else { root_distance(a, b) }).collect())
        .collect();
    let k = 1 + dist.iter().flatten().copied().max().unwrap_or(0);
    let k_i: Vec<u32> = dist.iter().map(|row| row.iter().sum()).collect();
    let big_k = k_i.iter().copied().max().unwrap_or(0);
    let m_i: Vec<u32> = k_i.iter().map(|&ki| big_k - ki + k).collect();
    let mut r_i = Vec::new();
    for (root, &mi) in roots.iter().zip(&m_i) {
        let e = mi + q * big_n;
        let mut r = truncate(root, e);
        let deeper = truncate(root, e + 1);
        if (&deeper - &r).mod_floor(&pow_u64(p, e + 1)).is_zero() {
            r += pow_u64(p, e);
        }
        r_i.push(r);
    }
    let element = product_over_p(field, &r_i, p, big_k + k + q * big_n);
    let trivial = field.in_order(&element);
    Ok(GeneratorAlphaP {
        p,
        element,
        construction: AlphaPConstruction::General {
            roots: roots.iter().map(|r| r.residue()).collect(),
            k,
            k_i,
            big_k,
            m_i,
            n: big_n,
            r_i,
        },
        has_nonlinear: nres.is_some(),
        trivial,
    })
}

/// One entry of a generator presentation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Generator {
    AlphaP(GeneratorAlphaP),
    /// α itself, needed when it is not integral.
    Alpha(FieldElem),
}

/// α_p of the integral part for all p <= bound, plus α when δ > 1.
pub fn generator_presentation(field: &NumberField, alpha: &FieldElem, prime_bound: u64) -> Result<Vec<Generator>> {
    if prime_bound < 2 {
        return Err(Error::Precondition("prime bound must be at least 2".into()));
    }
    if *alpha != field.alpha() {
        return Err(Error::Precondition("generators are presented for the defining element".into()));
    }
    let integral = NumberField::new_trusted(&field.theta_poly().to_rat())?;
    let mut out = Vec::new();
    for p in primes_up_to(prime_bound) {
        let g = alpha_p(&integral, p)?;
        // same θ power basis in both fields
        let element = field.elem(g.element.coords().to_vec())?;
        out.push(Generator::AlphaP(GeneratorAlphaP { element, ..g }));
    }
    if !field.delta().is_one() {
        out.push(Generator::Alpha(field.alpha()));
    }
    Ok(out)
}

/// Closed-form classification used by `describe`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Classification {
    Integer { nonnegative: bool },
    Rational { denominator: BigInt },
    Quadratic { d: BigInt },
    Cyclotomic { m: u64 },
    General,
}

pub fn classify(field: &NumberField) -> Result<Classification> {
    if field.degree() == 1 {
        let a = field.alpha().as_rational().unwrap();
        return Ok(if a.is_integer() {
            Classification::Integer { nonnegative: !a.is_negative() }
        } else {
            Classification::Rational { denominator: a.denom().clone() }
        });
    }
    if let Some(m) = field.cyclotomic_index() {
        return Ok(Classification::Cyclotomic { m });
    }
    if field.degree() == 2 {
        return Ok(Classification::Quadratic { d: squarefree_part(field.disc())? });
    }
    Ok(Classification::General)
}

/// β as an element given by a polynomial in α.
pub fn elem_from_alpha_poly(field: &NumberField, r: &RatPoly) -> FieldElem {
    field.eval_in_alpha(r)
}
