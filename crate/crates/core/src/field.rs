//! Arithmetic in Q(α), with elements stored in the power basis of the
//! integral part θ = δα.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::{factorial, lcm_denominators, parse_rat, prime_factors, rat_from, rat_int, valuation, Rat};
use crate::error::{Error, Result};
use crate::irreducible::{check_irreducible, interpolate};
use crate::linalg::det;
use crate::poly::{discriminant, IntPoly, RatPoly};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumberField {
    min_poly: IntPoly,
    delta: BigInt,
    theta_poly: IntPoly,
    theta_rat: RatPoly,
    disc: BigInt,
}

/// Coordinates in the basis 1, θ, ..., θ^{n-1}.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldElem {
    coords: Vec<Rat>,
}

impl FieldElem {
    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    /// The rational value when the element lies in Q.
    pub fn as_rational(&self) -> Option<Rat> {
        if self.coords[1..].iter().all(Zero::is_zero) {
            Some(self.coords[0].clone())
        } else {
            None
        }
    }

    /// lcm of the coordinate denominators.
    pub fn denominator(&self) -> BigInt {
        lcm_denominators(&self.coords)
    }

    pub fn to_poly(&self) -> RatPoly {
        RatPoly::new(self.coords.clone())
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_poly().to_string_in("θ"))
    }
}

/// Φ_m as an integer polynomial.
pub fn cyclotomic_poly(m: u64) -> IntPoly {
    let mut f = RatPoly::monomial(m as usize, Rat::one());
    f = &f - &RatPoly::one();
    for d in 1..m {
        if m.is_multiple_of(d) {
            let phi = cyclotomic_poly(d).to_rat();
            f = f.div_exact(&phi).expect("Φ_d divides x^m - 1");
        }
    }
    f.primitive_part()
}

/// Smallest δ > 0 with δα integral, for α a root of the primitive f.
fn integral_denominator(f: &IntPoly) -> Result<BigInt> {
    let n = f.deg().unwrap_or(0);
    let lc = f.leading();
    let mut delta = BigInt::one();
    for p in prime_factors(&lc)? {
        let vn = valuation(p, &lc).unwrap() as i64;
        let mut e = 0i64;
        for i in 0..n {
            let Some(vi) = valuation(p, &f.coeff(i)) else {
                continue;
            };
            let need = (vn - vi as i64).max(0);
            let span = (n - i) as i64;
            e = e.max((need + span - 1) / span);
        }
        delta *= num_traits::pow(BigInt::from(p), e as usize);
    }
    Ok(delta)
}

impl NumberField {
    /// Field generated by a root of `m`, checking irreducibility.
    pub fn new(m: &RatPoly) -> Result<Self> {
        let f = m.primitive_part();
        check_irreducible(&f)?;
        Self::build(f)
    }

    /// Skips the irreducibility check.
    pub fn new_trusted(m: &RatPoly) -> Result<Self> {
        let f = m.primitive_part();
        if f.deg().unwrap_or(0) == 0 {
            return Err(Error::Precondition("constant polynomial".into()));
        }
        Self::build(f)
    }

    pub fn parse(s: &str) -> Result<Self> {
        Self::new(&RatPoly::parse(s)?)
    }

    /// Q(ζ_m) for m >= 1.
    pub fn cyclotomic(m: u64) -> Result<Self> {
        if m == 0 {
            return Err(Error::Precondition("cyclotomic index must be positive".into()));
        }
        Self::build(cyclotomic_poly(m))
    }

    /// Q(α) for a rational α.
    pub fn rational(a: &Rat) -> Self {
        let f = RatPoly::linear_root(a.clone()).primitive_part();
        Self::build(f).expect("linear polynomials define fields")
    }

    fn build(f: IntPoly) -> Result<Self> {
        let n = f.deg().unwrap();
        let delta = integral_denominator(&f)?;
        let lc = f.leading();
        let theta: Vec<BigInt> = (0..=n)
            .map(|i| f.coeff(i) * num_traits::pow(delta.clone(), n - i) / &lc)
            .collect();
        let theta_poly = IntPoly::new(theta);
        debug_assert!(theta_poly.is_monic());
        let theta_rat = theta_poly.to_rat();
        let disc = discriminant(&theta_rat).to_integer();
        Ok(NumberField { min_poly: f, delta, theta_poly, theta_rat, disc })
    }

    pub fn degree(&self) -> usize {
        self.min_poly.deg().unwrap()
    }

    /// Primitive integer minimal polynomial of α, positive leading coefficient.
    pub fn min_poly(&self) -> &IntPoly {
        &self.min_poly
    }

    pub fn delta(&self) -> &BigInt {
        &self.delta
    }

    /// Monic integer minimal polynomial of θ.
    pub fn theta_poly(&self) -> &IntPoly {
        &self.theta_poly
    }

    pub fn disc(&self) -> &BigInt {
        &self.disc
    }

    /// m such that the defining polynomial is Φ_m, for m > 2.
    pub fn cyclotomic_index(&self) -> Option<u64> {
        let n = self.degree() as u64;
        if !self.min_poly.is_monic() || n < 2 {
            return None;
        }
        // φ(m) >= sqrt(m/2), so m <= 2n²
        (3..=2 * n * n).find(|&m| crate::arith::factor_u64(m).iter().fold(m, |acc, &(p, _)| acc / p * (p - 1)) == n && cyclotomic_poly(m) == self.min_poly)
    }

    pub fn elem(&self, coords: Vec<Rat>) -> Result<FieldElem> {
        if coords.len() > self.degree() {
            return Err(Error::Parse(format!(
                "expected at most {} coordinates, got {}",
                self.degree(),
                coords.len()
            )));
        }
        Ok(self.pad(coords))
    }

    fn pad(&self, mut coords: Vec<Rat>) -> FieldElem {
        coords.resize(self.degree(), Rat::zero());
        FieldElem { coords }
    }

    pub fn from_rat(&self, r: Rat) -> FieldElem {
        self.pad(vec![r])
    }

    pub fn from_int(&self, n: i64) -> FieldElem {
        self.from_rat(rat_int(n))
    }

    pub fn zero(&self) -> FieldElem {
        self.from_int(0)
    }

    pub fn one(&self) -> FieldElem {
        self.from_int(1)
    }

    pub fn theta(&self) -> FieldElem {
        self.reduce(&RatPoly::x())
    }

    /// α = θ/δ.
    pub fn alpha(&self) -> FieldElem {
        self.scale(&self.theta(), &(Rat::one() / rat_from(self.delta.clone())))
    }

    /// r(θ) for an arbitrary polynomial r.
    pub fn reduce(&self, r: &RatPoly) -> FieldElem {
        let rem = r.rem(&self.theta_rat).expect("monic modulus");
        self.pad(rem.into_coeffs())
    }

    /// r(α) for an arbitrary polynomial r.
    pub fn eval_in_alpha(&self, r: &RatPoly) -> FieldElem {
        let a = self.alpha();
        r.coeffs()
            .iter()
            .rev()
            .fold(self.zero(), |acc, c| self.add(&self.mul(&acc, &a), &self.from_rat(c.clone())))
    }

    pub fn add(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        FieldElem { coords: a.coords.iter().zip(&b.coords).map(|(x, y)| x + y).collect() }
    }

    pub fn sub(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        FieldElem { coords: a.coords.iter().zip(&b.coords).map(|(x, y)| x - y).collect() }
    }

    pub fn neg(&self, a: &FieldElem) -> FieldElem {
        FieldElem { coords: a.coords.iter().map(|x| -x).collect() }
    }

    pub fn scale(&self, a: &FieldElem, c: &Rat) -> FieldElem {
        FieldElem { coords: a.coords.iter().map(|x| x * c).collect() }
    }

    pub fn mul(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        self.reduce(&(&a.to_poly() * &b.to_poly()))
    }

    pub fn pow(&self, a: &FieldElem, e: u32) -> FieldElem {
        (0..e).fold(self.one(), |acc, _| self.mul(&acc, a))
    }

    pub fn inv(&self, a: &FieldElem) -> Result<FieldElem> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (g, s, _) = a.to_poly().ext_gcd(&self.theta_rat);
        if g != RatPoly::one() {
            return Err(Error::Internal("element shares a factor with the modulus".into()));
        }
        Ok(self.reduce(&s))
    }

    pub fn div(&self, a: &FieldElem, b: &FieldElem) -> Result<FieldElem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// binom(a, k) = a(a-1)...(a-k+1)/k!.
    pub fn binom(&self, a: &FieldElem, k: u64) -> FieldElem {
        let mut acc = self.one();
        for i in 0..k {
            acc = self.mul(&acc, &self.sub(a, &self.from_int(i as i64)));
        }
        self.scale(&acc, &(Rat::one() / rat_from(factorial(k))))
    }

    /// Column j holds the coordinates of a·θ^j.
    pub fn mul_matrix(&self, a: &FieldElem) -> Vec<Vec<Rat>> {
        let n = self.degree();
        let mut cols = Vec::with_capacity(n);
        let mut cur = a.clone();
        let th = self.theta();
        for _ in 0..n {
            cols.push(cur.coords.clone());
            cur = self.mul(&cur, &th);
        }
        (0..n).map(|i| (0..n).map(|j| cols[j][i].clone()).collect()).collect()
    }

    pub fn norm(&self, a: &FieldElem) -> Rat {
        det(self.mul_matrix(a))
    }

    pub fn trace(&self, a: &FieldElem) -> Rat {
        let m = self.mul_matrix(a);
        (0..self.degree()).map(|i| m[i][i].clone()).sum()
    }

    /// det(tI - M_a), interpolated from n + 1 exact determinants.
    pub fn charpoly(&self, a: &FieldElem) -> RatPoly {
        let n = self.degree();
        let m = self.mul_matrix(a);
        let xs: Vec<Rat> = (0..=n as i64).map(rat_int).collect();
        let ys: Vec<Rat> = xs
            .iter()
            .map(|t| {
                let shifted = (0..n)
                    .map(|i| (0..n).map(|j| if i == j { t - &m[i][j] } else { -m[i][j].clone() }).collect())
                    .collect();
                det(shifted)
            })
            .collect();
        interpolate(&xs, &ys)
    }

    /// Monic minimal polynomial of a over Q.
    pub fn min_poly_of_elem(&self, a: &FieldElem) -> RatPoly {
        let cp = self.charpoly(a);
        let g = cp.gcd(&cp.derivative());
        cp.div_exact(&g).expect("gcd divides").monic()
    }

    pub fn is_integral(&self, a: &FieldElem) -> bool {
        self.min_poly_of_elem(a).is_integral()
    }

    /// N(a)/a for a nonzero algebraic integer a.
    pub fn norm_quotient(&self, a: &FieldElem) -> Result<FieldElem> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if !self.is_integral(a) {
            return Err(Error::Precondition(format!("{a} is not an algebraic integer")));
        }
        let inv = self.inv(a)?;
        Ok(self.scale(&inv, &self.norm(a)))
    }

    /// Parses a rational (`"1/2"`), θ-coordinates (`"1,0,-1/3"`), or a
    /// polynomial expression in α written with the letter `a`.
    pub fn parse_elem(&self, s: &str) -> Result<FieldElem> {
        let t = s.trim();
        let t = t.strip_prefix('[').and_then(|u| u.strip_suffix(']')).unwrap_or(t).trim();
        if t.contains(',') {
            let c = t.split(',').map(parse_rat).collect::<Result<Vec<_>>>()?;
            return self.elem(c);
        }
        if t.chars().any(|c| c.is_ascii_alphabetic()) {
            if t.chars().any(|c| c.is_ascii_alphabetic() && c != 'a') {
                return Err(Error::Parse(format!("elements are written in the variable a, got {t:?}")));
            }
            return Ok(self.eval_in_alpha(&RatPoly::parse(t)?));
        }
        Ok(self.from_rat(parse_rat(t)?))
    }

    /// Whether every coordinate is an integer.
    pub fn in_order(&self, a: &FieldElem) -> bool {
        a.coords.iter().all(|c| c.denom().is_one())
    }

    /// Whether `a` generates the field over Q.
    pub fn generates(&self, a: &FieldElem) -> bool {
        self.min_poly_of_elem(a).deg() == Some(self.degree())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    fn sqrt2() -> NumberField {
        NumberField::parse("x^2-2").unwrap()
    }

    #[test]
    fn construction() {
        let k = sqrt2();
        assert_eq!(k.delta(), &int(1));
        assert_eq!(k.disc(), &int(8));
        let h = NumberField::parse("2x-1").unwrap();
        assert_eq!(h.delta(), &int(2));
        assert_eq!(h.theta_poly(), &IntPoly::from_i64(&[-1, 1]));
        assert_eq!(h.alpha().coords(), &[rat(1, 2)]);
        let r = NumberField::parse("2x^2-1").unwrap();
        assert_eq!(r.delta(), &int(2));
        assert_eq!(r.theta_poly(), &IntPoly::from_i64(&[-2, 0, 1]));
        assert!(matches!(NumberField::parse("4x^2-1"), Err(Error::Reducible(_))));
        assert!(NumberField::parse("3").is_err());
    }

    #[test]
    fn denominators_are_minimal() {
        for s in ["4x^2-2", "8x^3-3", "12x^2+5x-7", "9x^2+3x+1", "x^3/4 - x/2 - 1"] {
            let Ok(k) = NumberField::parse(s) else { continue };
            let d = k.delta().clone();
            assert!(k.is_integral(&k.theta()), "{s}");
            for p in prime_factors(&d).unwrap() {
                let smaller = k.scale(&k.alpha(), &rat_from(&d / p));
                assert!(!k.is_integral(&smaller), "{s} at {p}");
            }
        }
    }

    #[test]
    fn element_arithmetic() {
        let k = sqrt2();
        let t = k.theta();
        assert_eq!(k.mul(&t, &t), k.from_int(2));
        let a = k.elem(vec![rat_int(1), rat_int(1)]).unwrap();
        let b = k.elem(vec![rat_int(1), rat_int(-1)]).unwrap();
        assert_eq!(k.add(&a, &b), k.from_int(2));
        assert_eq!(k.inv(&t).unwrap().coords(), &[rat_int(0), rat(1, 2)]);
        assert!(k.inv(&k.zero()).is_err());
    }

    #[test]
    fn norms() {
        let k = sqrt2();
        assert_eq!(k.norm(&k.theta()), rat_int(-2));
        assert_eq!(k.norm(&k.one()), rat_int(1));
        let a = k.elem(vec![rat_int(3), rat_int(1)]).unwrap();
        assert_eq!(k.norm(&a), rat_int(7));
        assert_eq!(k.trace(&a), rat_int(6));
    }

    #[test]
    fn norm_quotients() {
        let k = sqrt2();
        assert_eq!(k.norm_quotient(&k.theta()).unwrap(), k.neg(&k.theta()));
        assert_eq!(k.norm_quotient(&k.from_int(2)).unwrap(), k.from_int(2));
        let a = k.elem(vec![rat_int(1), rat_int(1)]).unwrap();
        assert_eq!(k.norm_quotient(&a).unwrap(), k.elem(vec![rat_int(1), rat_int(-1)]).unwrap());
        assert!(k.norm_quotient(&k.zero()).is_err());
        assert!(k.norm_quotient(&k.from_rat(rat(1, 2))).is_err());
    }

    #[test]
    fn element_min_polys() {
        let k = sqrt2();
        assert_eq!(k.min_poly_of_elem(&k.from_rat(rat(3, 4))), RatPoly::linear_root(rat(3, 4)));
        assert_eq!(k.min_poly_of_elem(&k.theta()), RatPoly::from_ints(&[-2, 0, 1]));
        let a = k.elem(vec![rat_int(1), rat_int(1)]).unwrap();
        assert_eq!(k.min_poly_of_elem(&a), RatPoly::from_ints(&[-1, -2, 1]));
    }

    #[test]
    fn binomials_of_half() {
        let h = NumberField::parse("2x-1").unwrap();
        assert_eq!(h.binom(&h.alpha(), 2), h.from_rat(rat(-1, 8)));
        let k = sqrt2();
        assert_eq!(k.scale(&k.binom(&k.theta(), 2), &rat_int(2)), k.elem(vec![rat_int(2), rat_int(-1)]).unwrap());
    }

    #[test]
    fn cyclotomics() {
        assert_eq!(cyclotomic_poly(4), IntPoly::from_i64(&[1, 0, 1]));
        assert_eq!(cyclotomic_poly(12), IntPoly::from_i64(&[1, 0, -1, 0, 1]));
        assert_eq!(cyclotomic_poly(5), IntPoly::from_i64(&[1, 1, 1, 1, 1]));
        assert_eq!(NumberField::cyclotomic(8).unwrap().cyclotomic_index(), Some(8));
        assert_eq!(NumberField::parse("x^2+x+1").unwrap().cyclotomic_index(), Some(3));
        assert_eq!(sqrt2().cyclotomic_index(), None);
    }

    #[test]
    fn element_parsing() {
        let k = sqrt2();
        assert_eq!(k.parse_elem("1/2").unwrap(), k.from_rat(rat(1, 2)));
        assert_eq!(k.parse_elem("2,-1").unwrap(), k.elem(vec![rat_int(2), rat_int(-1)]).unwrap());
        assert_eq!(k.parse_elem("a^2 + a").unwrap(), k.elem(vec![rat_int(2), rat_int(1)]).unwrap());
        assert!(k.parse_elem("1,2,3").is_err());
        assert!(k.parse_elem("y").is_err());
        let h = NumberField::parse("2x^2-1").unwrap();
        assert_eq!(h.parse_elem("a").unwrap().coords(), &[rat_int(0), rat(1, 2)]);
    }
}
