//! Multipliers s with nonnegative binomial coefficients of p·s, and the
//! certificates for −1 they produce.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{lcm_denominators, rat_from, rat_int, Rat};
use crate::certificate::{verify_certificate, Certificate};
use crate::error::{Error, Result};
use crate::field::NumberField;
use crate::irreducible::rational_root;
use crate::linalg::{nonneg_feasible, solve};
use crate::poly::{to_binomial_basis, RatPoly};
use crate::rplus::PnkTable;

/// Runtime limits for [`find_positive_multiplier_with`].
#[derive(Clone, Debug)]
pub struct SearchBudget {
    /// Largest deg(s) tried by the linear-feasibility pre-pass.
    pub lp_max_degree: usize,
    /// Exponents K tried past each 𝒦 in the deepening construction.
    pub k_steps: usize,
    /// Largest 𝒦 before giving up.
    pub max_cal_k: usize,
    pub use_lp: bool,
    pub use_construction: bool,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { lp_max_degree: 320, k_steps: 400, max_cal_k: 2000, use_lp: true, use_construction: true }
    }
}

/// State of the deepening construction when it succeeds.
#[derive(Clone, Debug)]
pub struct CertSearchState {
    /// Sign-normalized p, scaled to integer binomial coefficients.
    pub p: RatPoly,
    pub t: usize,
    pub n: usize,
    pub cal_k: usize,
    pub q: RatPoly,
    pub k: usize,
    /// Positive integer clearing the denominators of q.
    pub m: BigInt,
}

fn check_no_nonneg_integer_root(p: &RatPoly) -> Result<()> {
    if p.is_zero() {
        return Err(Error::Precondition("zero polynomial".into()));
    }
    if let Some(r) = rational_root(&p.primitive_part())? {
        if r.is_integer() && !r.is_negative() {
            return Err(Error::Precondition(format!("p vanishes at the nonnegative integer {r}")));
        }
    }
    Ok(())
}

/// Whether all Δⁿ(p·s)(0) >= 0 and p(0)s(0) > 0, checked for every n.
pub fn is_positive_multiplier(p: &RatPoly, s: &RatPoly) -> bool {
    let b = to_binomial_basis(&(p * s));
    !b.coeffs().iter().any(Signed::is_negative) && (p.eval_int(0) * s.eval_int(0)).is_positive()
}

/// Some s with Δⁿ(p·s)(0) >= 0 for all n and p(0)s(0) > 0.
pub fn find_positive_multiplier(p: &RatPoly) -> Result<RatPoly> {
    find_positive_multiplier_with(p, &SearchBudget::default())
}

pub fn find_positive_multiplier_with(p: &RatPoly, budget: &SearchBudget) -> Result<RatPoly> {
    check_no_nonneg_integer_root(p)?;
    if budget.use_lp {
        if let Some(r) = lp_annihilated_combination(p, budget.lp_max_degree) {
            let r = crate::poly::from_binomial_basis(&crate::poly::BinomPoly::new(
                r.into_iter().map(rat_from).collect(),
            ));
            let s = r.div_exact(p)?;
            if !is_positive_multiplier(p, &s) {
                return Err(Error::Internal("pre-pass multiplier failed verification".into()));
            }
            return Ok(s);
        }
    }
    if budget.use_construction {
        let (_, s) = deepening_construction(p, budget)?;
        return Ok(s);
    }
    Err(Error::BudgetExhausted("no multiplier within the configured degrees".into()))
}

/// binom(x, n) mod p as coefficient vectors of length deg p, n = 0..=len.
fn binomials_mod(p: &RatPoly, len: usize, out: &mut Vec<Vec<Rat>>) {
    let t = p.deg().unwrap();
    let mut cur = if let Some(last) = out.last() {
        RatPoly::new(last.clone())
    } else {
        RatPoly::one().rem(p).unwrap()
    };
    if out.is_empty() {
        let mut v = cur.coeffs().to_vec();
        v.resize(t, Rat::zero());
        out.push(v);
    }
    while out.len() <= len {
        let n = out.len() - 1;
        let f = RatPoly::new(vec![rat_int(-(n as i64)), Rat::one()]);
        cur = (&cur * &f).scale(&(Rat::one() / rat_int(n as i64 + 1))).rem(p).unwrap();
        let mut v = cur.coeffs().to_vec();
        v.resize(t, Rat::zero());
        out.push(v);
    }
}

/// Nonnegative integers y_0 >= 1, y_1, ... with Σ y_n binom(x, n) divisible
/// by p, by exact linear feasibility over growing degree.
fn lp_annihilated_combination(p: &RatPoly, max_degree: usize) -> Option<Vec<BigInt>> {
    let t = p.deg()?;
    if t == 0 {
        return None;
    }
    let mut table = Vec::new();
    let mut d = 0usize;
    while d <= max_degree {
        let len = d + t;
        binomials_mod(p, len, &mut table);
        // rows: t coordinates of the remainder, then y_0 = 1
        let mut a: Vec<Vec<Rat>> = (0..t).map(|i| (0..=len).map(|n| table[n][i].clone()).collect()).collect();
        let mut e0 = vec![Rat::zero(); len + 1];
        e0[0] = Rat::one();
        a.push(e0);
        let mut b = vec![Rat::zero(); t];
        b.push(Rat::one());
        if let Some(y) = nonneg_feasible(&a, &b) {
            let l = lcm_denominators(&y);
            return Some(y.iter().map(|v| (v * rat_from(l.clone())).to_integer()).collect());
        }
        d = if d < 40 { d + 1 } else { d * 2 };
    }
    None
}

/// p scaled by a positive rational so its binomial coefficients are coprime
/// integers with positive leading term.
fn normalize_binomial(p: &RatPoly) -> RatPoly {
    let b = to_binomial_basis(p);
    let l = lcm_denominators(b.coeffs());
    let ints: Vec<BigInt> = b.coeffs().iter().map(|c| (c * rat_from(l.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    let mut scale = rat_from(l) / rat_from(g);
    if b.coeffs().last().unwrap().is_negative() {
        scale = -scale;
    }
    p.scale(&scale)
}

/// The construction with 𝒦 deepened from N + 3 and K searched upward.
pub fn deepening_construction(p: &RatPoly, budget: &SearchBudget) -> Result<(CertSearchState, RatPoly)> {
    check_no_nonneg_integer_root(p)?;
    let p = normalize_binomial(p);
    let t = p.deg().unwrap();
    let a = to_binomial_basis(&p);
    let max_a = a.coeffs().iter().map(|c| c.abs().to_integer()).max().unwrap();
    let n_bound: usize = (BigInt::from(t * t) * max_a + 2 * t)
        .try_into()
        .map_err(|_| Error::BudgetExhausted("threshold N is too large".into()))?;
    let size = n_bound + 3;
    let mut table = PnkTable::new(p.clone());
    let base: Vec<Vec<Rat>> = (0..size).map(|n| (0..size).map(|k| table.get(n, k)).collect()).collect();
    let mut cal_k = n_bound + 3;
    let np1 = BigInt::from(n_bound + 1);
    while cal_k <= budget.max_cal_k {
        let target: Vec<Rat> = (0..size)
            .map(|n| if n == 0 { Rat::one() } else { table.get(n, cal_k).abs() })
            .collect();
        let qv = solve(base.clone(), target).ok_or_else(|| Error::Internal("singular p_nk system".into()))?;
        let q = RatPoly::new(qv);
        let r = to_binomial_basis(&(&p * &q));
        let mut scale = BigInt::one();
        for k in cal_k + 1..=cal_k + budget.k_steps {
            scale *= &np1;
            let sc = rat_from(scale.clone());
            let col = table.column(k, k + t);
            let ok = col.iter().enumerate().all(|(n, pk)| {
                let v = &sc * r.coeff(n) + pk;
                if n == 0 {
                    v.is_positive()
                } else {
                    !v.is_negative()
                }
            });
            if ok {
                let s = &q.scale(&sc) + &RatPoly::monomial(k, Rat::one());
                let m = lcm_denominators(s.coeffs());
                let s = s.scale(&rat_from(m.clone()));
                debug_assert!(is_positive_multiplier(&p, &s));
                let state = CertSearchState { p: p.clone(), t, n: n_bound, cal_k, q, k, m };
                return Ok((state, s));
            }
        }
        cal_k *= 2;
    }
    Err(Error::BudgetExhausted(format!("no exponent found with 𝒦 <= {}", budget.max_cal_k)))
}

/// −1 = (a_0 − 1)·binom(α,0) + Σ_{i>=1} a_i·binom(α,i) from r = m_α·s.
pub fn certify_negative_one(field: &NumberField) -> Result<Certificate> {
    certify_negative_one_with(field, &SearchBudget::default())
}

pub fn certify_negative_one_with(field: &NumberField, budget: &SearchBudget) -> Result<Certificate> {
    let m = field.min_poly().to_rat();
    if field.degree() == 1 {
        let a = field.alpha().as_rational().unwrap();
        if a.is_integer() && !a.is_negative() {
            return Err(Error::Precondition(format!("α = {a} is a nonnegative integer")));
        }
    }
    let s = find_positive_multiplier_with(&m, budget)?;
    let r = to_binomial_basis(&(&m * &s));
    let l = lcm_denominators(r.coeffs());
    let mut terms = Vec::new();
    for (i, c) in r.coeffs().iter().enumerate() {
        let mut v = (c * rat_from(l.clone())).to_integer();
        if i == 0 {
            v -= 1;
        }
        let v: BigUint = v.to_biguint().ok_or_else(|| Error::Internal("negative coefficient".into()))?;
        terms.push((i as u64, v));
    }
    let cert = Certificate { target: field.from_int(-1), terms: terms.into_iter().filter(|t| !t.1.is_zero()).collect() };
    if !verify_certificate(field, &cert) {
        return Err(Error::Internal("certificate for -1 failed verification".into()));
    }
    Ok(cert)
}
