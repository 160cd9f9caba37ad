//! Truncated p-adic arithmetic, Hensel-certified roots in Z_p, and
//! valuations of field elements under the embeddings those roots define.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::arith::{ensure_prime, inv_mod, pow_u64, valuation, valuation_rat};
use crate::error::{Error, Result};
use crate::field::{FieldElem, NumberField};
use crate::poly::{discriminant, resultant, IntPoly};

/// A valuation: an integer, or infinity for zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Val {
    Finite(i64),
    Infinity,
}

impl Val {
    pub fn finite(self) -> Option<i64> {
        match self {
            Val::Finite(v) => Some(v),
            Val::Infinity => None,
        }
    }

    pub fn is_negative(self) -> bool {
        matches!(self, Val::Finite(v) if v < 0)
    }

    pub fn is_nonnegative(self) -> bool {
        !self.is_negative()
    }

    pub fn sub_int(self, k: i64) -> Val {
        match self {
            Val::Finite(a) => Val::Finite(a - k),
            Val::Infinity => Val::Infinity,
        }
    }
}

impl std::ops::Add for Val {
    type Output = Val;

    fn add(self, o: Val) -> Val {
        match (self, o) {
            (Val::Finite(a), Val::Finite(b)) => Val::Finite(a + b),
            _ => Val::Infinity,
        }
    }
}

impl PartialOrd for Val {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Val {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Val::Finite(a), Val::Finite(b)) => a.cmp(b),
            (Val::Finite(_), Val::Infinity) => Ordering::Less,
            (Val::Infinity, Val::Finite(_)) => Ordering::Greater,
            (Val::Infinity, Val::Infinity) => Ordering::Equal,
        }
    }
}

impl fmt::Display for Val {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Val::Finite(v) => write!(f, "{v}"),
            Val::Infinity => f.write_str("inf"),
        }
    }
}

fn val_int(p: u64, n: &BigInt) -> Val {
    valuation(p, n).map_or(Val::Infinity, |v| Val::Finite(v as i64))
}

/// An element of Z_p known modulo p^precision.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PadicApprox {
    p: u64,
    value: BigInt,
    precision: u32,
}

impl PadicApprox {
    pub fn new(p: u64, value: &BigInt, precision: u32) -> Self {
        let m = pow_u64(p, precision);
        PadicApprox { p, value: value.mod_floor(&m), precision }
    }

    pub fn value(&self) -> &BigInt {
        &self.value
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    /// The valuation when it is below the precision, `None` when the value
    /// is only known to be divisible by p^precision.
    pub fn valuation(&self) -> Option<u32> {
        valuation(self.p, &self.value)
    }

    pub fn add(&self, o: &PadicApprox) -> PadicApprox {
        PadicApprox::new(self.p, &(&self.value + &o.value), self.precision.min(o.precision))
    }

    pub fn add_int(&self, c: &BigInt) -> PadicApprox {
        PadicApprox::new(self.p, &(&self.value + c), self.precision)
    }

    /// Error terms p^M·u and p^N·w contribute p^{M+v(b)} and p^{N+v(a)}.
    pub fn mul(&self, o: &PadicApprox) -> PadicApprox {
        let va = self.valuation().unwrap_or(self.precision);
        let vb = o.valuation().unwrap_or(o.precision);
        let prec = (self.precision + vb).min(o.precision + va);
        PadicApprox::new(self.p, &(&self.value * &o.value), prec)
    }
}

/// Depth cap for the residue trees over p of a polynomial of discriminant
/// `disc` and degree `deg`; RPLUS_PRECISION_CAP overrides it.
pub fn depth_cap(p: u64, disc: &BigInt, deg: usize) -> u32 {
    if let Some(c) = std::env::var("RPLUS_PRECISION_CAP").ok().and_then(|s| s.trim().parse().ok()) {
        return c;
    }
    valuation(p, disc).unwrap_or(0) + 2 * deg as u32 + 16
}

/// A root z of `poly` in Z_p with v(z - approx) >= precision.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PadicRoot {
    pub p: u64,
    pub poly: IntPoly,
    pub approx: BigInt,
    pub precision: u32,
    /// (v(g(a)), v(g'(a))), with the first exceeding twice the second.
    pub hensel_margin: (Val, u32),
}

impl PadicRoot {
    /// The root is a rational integer, known exactly.
    pub fn is_exact(&self) -> bool {
        self.hensel_margin.0 == Val::Infinity
    }

    /// Residue of the root modulo p^precision; the root itself when exact.
    pub fn residue(&self) -> BigInt {
        if self.is_exact() {
            return self.approx.clone();
        }
        self.approx.mod_floor(&pow_u64(self.p, self.precision))
    }

    fn certify(p: u64, poly: &IntPoly, a: BigInt) -> Option<PadicRoot> {
        let vg = val_int(p, &poly.eval(&a));
        let vd = valuation(p, &poly.derivative().eval(&a))?;
        let precision = match vg {
            Val::Infinity => u32::MAX,
            Val::Finite(g) if g > 2 * vd as i64 => (g - vd as i64) as u32,
            _ => return None,
        };
        Some(PadicRoot { p, poly: poly.clone(), approx: a, precision, hensel_margin: (vg, vd) })
    }
}

fn check_monic_squarefree(g: &IntPoly) -> Result<()> {
    if g.deg().unwrap_or(0) == 0 || !g.is_monic() {
        return Err(Error::Precondition(format!("{g} must be monic and nonconstant")));
    }
    if discriminant(&g.to_rat()).is_zero() {
        return Err(Error::Precondition(format!("{g} is not squarefree")));
    }
    Ok(())
}

/// All roots of g in Z_p, each Hensel-certified, ordered by residue.
pub fn zp_roots(p: u64, g: &IntPoly) -> Result<Vec<PadicRoot>> {
    ensure_prime(p)?;
    check_monic_squarefree(g)?;
    let disc = discriminant(&g.to_rat()).to_integer();
    let cap = depth_cap(p, &disc, g.deg().unwrap());
    let dg = g.derivative();
    let mut out = Vec::new();
    // (a, j): the class of a modulo p^j
    let mut stack: Vec<(BigInt, u32)> = (0..p).rev().map(|a| (BigInt::from(a), 1)).collect();
    while let Some((a, j)) = stack.pop() {
        if j > cap {
            return Err(Error::DepthCapExceeded { p, cap });
        }
        // vg None: a is an exact root
        let vg = valuation(p, &g.eval(&a));
        if vg.is_some_and(|v| v < j) {
            continue;
        }
        // a root in this class is unique once v(g'(a)) < j
        if let Some(vd) = valuation(p, &dg.eval(&a)) {
            if vd < j && vg.is_none_or(|v| v >= j + vd) {
                out.push(PadicRoot::certify(p, g, a).expect("margin holds"));
                continue;
            }
        }
        let step = pow_u64(p, j);
        for i in (0..p).rev() {
            stack.push((&a + &step * i, j + 1));
        }
    }
    Ok(out)
}

/// Newton iteration until the root is known modulo p^target.
pub fn refine_root(r: &PadicRoot, target: u32) -> PadicRoot {
    if r.precision >= target {
        return r.clone();
    }
    let p = r.p;
    let vd = r.hensel_margin.1;
    let work = pow_u64(p, target + vd + 1);
    let pv = pow_u64(p, vd);
    let dg = r.poly.derivative();
    let mut a = r.approx.clone();
    loop {
        let cur = PadicRoot::certify(p, &r.poly, a.clone()).expect("Newton keeps the margin");
        if cur.precision >= target {
            return cur;
        }
        let w = r.poly.eval(&a) / &pv;
        let u = dg.eval(&a) / &pv;
        let inv = inv_mod(&u, &work).expect("unit");
        a = (&a - w * inv).mod_floor(&work);
    }
}

/// An embedding Q(α) → Q_p given by a root of m_θ in Z_p.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Place {
    pub p: u64,
    pub root: PadicRoot,
    /// v_p(α) under this embedding.
    pub alpha_val: Val,
}

/// Default starting precision for adaptive valuation.
pub const DEFAULT_M0: u32 = 8;

/// v_p(r(z)) for an integer polynomial r and the root z, doubling the
/// working precision from m0 until it is determined.
fn valuation_at_root(root: &PadicRoot, r: &IntPoly, m0: u32) -> Result<Val> {
    if r.deg().is_none() {
        return Ok(Val::Infinity);
    }
    let p = root.p;
    if root.is_exact() {
        return Ok(val_int(p, &r.eval(&root.approx)));
    }
    let res = resultant(&root.poly.to_rat(), &r.to_rat()).to_integer();
    let bound = match valuation(p, &res) {
        Some(b) => b,
        // r shares a factor with the minimal polynomial; only r = 0 mod m_θ does
        None => return Err(Error::Internal("polynomial is not coprime to the modulus".into())),
    };
    let mut m = m0.max(1);
    loop {
        let z = refine_root(root, m);
        let za = PadicApprox::new(p, &z.approx, m);
        let mut acc = PadicApprox::new(p, &BigInt::zero(), m);
        for c in r.coeffs().iter().rev() {
            acc = acc.mul(&za).add_int(c);
        }
        // acc.precision() is m: the running value stays integral
        if let Some(v) = acc.valuation().filter(|&v| v < acc.precision()) {
            return Ok(Val::Finite(v as i64));
        }
        if m > bound {
            return Err(Error::Internal(format!("valuation exceeded its resultant bound {bound}")));
        }
        m *= 2;
    }
}

/// Places of the field over p, ordered by root residue.
pub fn places(field: &NumberField, p: u64) -> Result<Vec<Place>> {
    let vdelta = valuation(p, field.delta()).unwrap() as i64;
    zp_roots(p, field.theta_poly())?
        .into_iter()
        .map(|root| {
            let vz = valuation_at_root(&root, &IntPoly::from_i64(&[0, 1]), DEFAULT_M0)?;
            Ok(Place { p, alpha_val: vz.sub_int(vdelta), root })
        })
        .collect()
}

/// v_p of the image of `a` under the place.
pub fn place_valuation(place: &Place, a: &FieldElem) -> Result<Val> {
    place_valuation_from(place, a, DEFAULT_M0)
}

/// [`place_valuation`] with an explicit starting precision.
pub fn place_valuation_from(place: &Place, a: &FieldElem, m0: u32) -> Result<Val> {
    if a.is_zero() {
        return Ok(Val::Infinity);
    }
    let d = a.denominator();
    let r = IntPoly::new(a.coords().iter().map(|c| (c * crate::arith::rat_from(d.clone())).to_integer()).collect());
    let v = valuation_at_root(&place.root, &r, m0)?;
    let vd = valuation_rat(place.p, &crate::arith::rat_from(d)).unwrap();
    Ok(v.sub_int(vd))
}

/// Result of a residue-tree search that may run out of coefficient precision.
enum TreeOutcome {
    Max(u32),
    NeedPrecision,
}

/// max over x in Z_p of v(g(x)), where g's coefficients are known modulo
/// p^known (None: exactly).
fn max_valuation_tree(p: u64, g: &[BigInt], known: Option<u32>, cap: u32) -> Result<TreeOutcome> {
    let eval = |a: &BigInt| g.iter().rev().fold(BigInt::zero(), |acc, c| acc * a + c);
    let modulus = known.map(|w| pow_u64(p, w));
    let mut best = 0u32;
    let mut stack: Vec<(BigInt, u32)> = (0..p).rev().map(|a| (BigInt::from(a), 1)).collect();
    while let Some((a, j)) = stack.pop() {
        let mut ga = eval(&a);
        if let Some(m) = &modulus {
            ga = ga.mod_floor(m);
        }
        let vg = valuation(p, &ga);
        match (vg, known) {
            (Some(v), Some(w)) if v < j && v < w => best = best.max(v),
            (Some(v), None) if v < j => best = best.max(v),
            (None, None) => {
                return Err(Error::Precondition(format!("polynomial has the root {a} in Z_{p}")))
            }
            (_, Some(w)) if j >= w => return Ok(TreeOutcome::NeedPrecision),
            _ => {
                if j >= cap {
                    return Err(Error::DepthCapExceeded { p, cap });
                }
                let step = pow_u64(p, j);
                for i in (0..p).rev() {
                    stack.push((&a + &step * i, j + 1));
                }
            }
        }
    }
    Ok(TreeOutcome::Max(best))
}

/// max over z in Z_p of v_p(g(z)) for a monic g without roots in Z_p.
pub fn max_poly_valuation(p: u64, g: &IntPoly) -> Result<u32> {
    ensure_prime(p)?;
    if g.deg().unwrap_or(0) == 0 || !g.is_monic() {
        return Err(Error::Precondition(format!("{g} must be monic and nonconstant")));
    }
    let disc = discriminant(&g.to_rat()).to_integer();
    let cap = depth_cap(p, &disc, g.deg().unwrap());
    match max_valuation_tree(p, g.coeffs(), None, cap)? {
        TreeOutcome::Max(v) => Ok(v),
        TreeOutcome::NeedPrecision => unreachable!("exact coefficients"),
    }
}

/// The monic factor of `g` left after removing its Z_p roots, with
/// coefficients modulo p^w.
pub fn residual_factor(g: &IntPoly, roots: &[PadicRoot], w: u32) -> Vec<BigInt> {
    let p = roots.first().map_or(2, |r| r.p);
    let m = pow_u64(p, w);
    let mut cur: Vec<BigInt> = g.coeffs().to_vec();
    for r in roots {
        let z = refine_root(r, w).approx.mod_floor(&m);
        // synthetic division by (x - z)
        let n = cur.len() - 1;
        let mut q = vec![BigInt::zero(); n];
        let mut carry = BigInt::zero();
        for i in (0..n).rev() {
            carry = (&cur[i + 1] + &carry * &z).mod_floor(&m);
            q[i] = carry.clone();
        }
        cur = q;
    }
    cur
}

/// max over Z_p of v(h) for the residual factor h of g at p, or `None` when
/// every root of g lies in Z_p.
pub fn residual_max_valuation(p: u64, g: &IntPoly, roots: &[PadicRoot]) -> Result<Option<u32>> {
    let n = g.deg().unwrap_or(0);
    if roots.len() == n {
        return Ok(None);
    }
    let disc = discriminant(&g.to_rat()).to_integer();
    let cap = depth_cap(p, &disc, n);
    let mut w = valuation(p, &disc).unwrap_or(0) + 8;
    loop {
        let h = if roots.is_empty() { g.coeffs().to_vec() } else { residual_factor(g, roots, w) };
        let known = if roots.is_empty() { None } else { Some(w) };
        match max_valuation_tree(p, &h, known, cap)? {
            TreeOutcome::Max(v) => return Ok(Some(v)),
            TreeOutcome::NeedPrecision => {
                if w > 4 * cap {
                    return Err(Error::DepthCapExceeded { p, cap });
                }
                w *= 2;
            }
        }
    }
}

/// v_p(z_i - z_j) for two distinct roots.
pub fn root_distance(a: &PadicRoot, b: &PadicRoot) -> u32 {
    let mut m = 8u32;
    loop {
        let x = refine_root(a, m).approx;
        let y = refine_root(b, m).approx;
        let d = (x - y).mod_floor(&pow_u64(a.p, m));
        if let Some(v) = valuation(a.p, &d) {
            return v;
        }
        m *= 2;
    }
}

/// Smallest nonnegative representative of z modulo p^m.
pub fn truncate(r: &PadicRoot, m: u32) -> BigInt {
    refine_root(r, m).approx.mod_floor(&pow_u64(r.p, m))
}
