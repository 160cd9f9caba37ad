//! Polynomials with nonnegative integer binomial-basis coefficients, and the
//! table p_{nk} = Δⁿ(x^k p)(0).

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Signed, Zero};

use crate::arith::{binomial, factorial, rat_from, rat_int, Rat};
use crate::error::{Error, Result};
use crate::linalg::det;
use crate::poly::{from_binomial_basis, to_binomial_basis, BinomPoly, RatPoly};

/// Element of R₊(x): coefficient k multiplies binom(x, k).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct RPlusPoly {
    coeffs: Vec<BigUint>,
}

impl RPlusPoly {
    pub fn new(mut coeffs: Vec<BigUint>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RPlusPoly { coeffs }
    }

    pub fn from_u64(c: &[u64]) -> Self {
        Self::new(c.iter().map(|&a| BigUint::from(a)).collect())
    }

    /// `None` unless every coefficient is a nonnegative integer.
    pub fn from_binom(b: &BinomPoly) -> Option<Self> {
        b.coeffs()
            .iter()
            .map(|c| {
                if c.denom().is_one() && !c.is_negative() {
                    c.numer().to_biguint()
                } else {
                    None
                }
            })
            .collect::<Option<Vec<_>>>()
            .map(Self::new)
    }

    pub fn from_poly(p: &RatPoly) -> Option<Self> {
        Self::from_binom(&to_binomial_basis(p))
    }

    pub fn coeffs(&self) -> &[BigUint] {
        &self.coeffs
    }

    pub fn to_binom(&self) -> BinomPoly {
        BinomPoly::new(
            self.coeffs
                .iter()
                .map(|c| rat_from(BigInt::from_biguint(Sign::Plus, c.clone())))
                .collect(),
        )
    }

    pub fn to_poly(&self) -> RatPoly {
        from_binomial_basis(&self.to_binom())
    }

    pub fn add(&self, o: &RPlusPoly) -> RPlusPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let get = |v: &[BigUint], i: usize| v.get(i).cloned().unwrap_or_default();
        RPlusPoly::new((0..n).map(|i| get(&self.coeffs, i) + get(&o.coeffs, i)).collect())
    }

    /// Product computed purely through [`binom_product`].
    pub fn mul(&self, o: &RPlusPoly) -> RPlusPoly {
        if self.coeffs.is_empty() || o.coeffs.is_empty() {
            return RPlusPoly::default();
        }
        let mut out = vec![BigUint::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (k, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (l, b) in o.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a * b;
                for (j, c) in binom_product_u(k, l).into_iter().enumerate() {
                    if !c.is_zero() {
                        out[j] += &ab * c;
                    }
                }
            }
        }
        RPlusPoly::new(out)
    }
}

pub fn is_in_rplus_x(p: &RatPoly) -> bool {
    RPlusPoly::from_poly(p).is_some()
}

fn binom_product_u(k: usize, l: usize) -> Vec<BigUint> {
    let mut out = vec![BigUint::zero(); k + l + 1];
    for i in 0..=l.min(k) {
        out[k + l - i] = binomial(k as u64, i as u64) * binomial((k + l - i) as u64, k as u64);
    }
    out
}

/// binom(x,k)·binom(x,l) = Σ_i C(k,i)·C(k+l−i,k)·binom(x,k+l−i).
pub fn binom_product(k: usize, l: usize) -> BinomPoly {
    BinomPoly::new(
        binom_product_u(k, l)
            .into_iter()
            .map(|c| rat_from(BigInt::from_biguint(Sign::Plus, c)))
            .collect(),
    )
}

/// Binomial-basis expansion of binom(f(x), k); its coefficients are
/// nonnegative integers, which is checked.
pub fn binom_of_poly(f: &RPlusPoly, k: usize) -> Result<RPlusPoly> {
    let fp = f.to_poly();
    let mut acc = RatPoly::one();
    for i in 0..k {
        acc = &acc * &(&fp - &RatPoly::constant(rat_int(i as i64)));
    }
    let acc = acc.scale(&(Rat::one() / rat_from(factorial(k as u64))));
    let b = to_binomial_basis(&acc);
    RPlusPoly::from_binom(&b).ok_or_else(|| {
        Error::Internal(format!("binom(f, {k}) has a negative or fractional coefficient"))
    })
}

/// Memoised table of p_{nk}; grows in both directions on demand.
#[derive(Clone, Debug)]
pub struct PnkTable {
    base: RatPoly,
    values: Vec<Rat>,
    // cols[k][n]
    cols: Vec<Vec<Rat>>,
}

impl PnkTable {
    pub fn new(base: RatPoly) -> Self {
        PnkTable { base, values: Vec::new(), cols: Vec::new() }
    }

    pub fn base(&self) -> &RatPoly {
        &self.base
    }

    /// c_n = p(n).
    pub fn value(&mut self, n: usize) -> &Rat {
        while self.values.len() <= n {
            let v = self.base.eval_int(self.values.len() as i64);
            self.values.push(v);
        }
        &self.values[n]
    }

    /// Σ_i (−1)^i C(n,i) (n−i)^k c_{n−i}, with 0^0 = 1.
    fn closed_form(&mut self, n: usize, k: usize) -> Rat {
        self.value(n);
        let mut acc = Rat::zero();
        for i in 0..=n {
            let m = n - i;
            if m == 0 && k > 0 {
                continue;
            }
            let c = &self.values[m];
            if c.is_zero() {
                continue;
            }
            let pw = num_traits::pow(BigInt::from(m), k);
            let b = BigInt::from_biguint(Sign::Plus, binomial(n as u64, i as u64));
            let term = c * rat_from(pw * b);
            if i % 2 == 1 {
                acc -= term;
            } else {
                acc += term;
            }
        }
        acc
    }

    /// Ensures entries for all n <= n_max, k <= k_max exist.
    pub fn ensure(&mut self, n_max: usize, k_max: usize) {
        for k in 0..=k_max {
            if self.cols.len() <= k {
                self.cols.push(Vec::new());
            }
            while self.cols[k].len() <= n_max {
                let n = self.cols[k].len();
                let v = self.closed_form(n, k);
                self.cols[k].push(v);
            }
        }
    }

    pub fn get(&mut self, n: usize, k: usize) -> Rat {
        self.ensure(n, k);
        self.cols[k][n].clone()
    }

    /// Column k: (p_{0k}, ..., p_{n_max k}).
    pub fn column(&mut self, k: usize, n_max: usize) -> Vec<Rat> {
        self.ensure(n_max, k);
        self.cols[k][..=n_max].to_vec()
    }

    /// Number of computed rows in column k.
    pub fn rows_in(&self, k: usize) -> usize {
        self.cols.get(k).map_or(0, Vec::len)
    }
}

pub fn pnk_table(p: &RatPoly, n: usize, k: usize) -> PnkTable {
    let mut t = PnkTable::new(p.clone());
    t.ensure(n, k);
    t
}

/// Determinant of the (N+1)×(N+1) matrix with entry (n, k) = p_{nk}.
pub fn pnk_det(p: &RatPoly, n: usize) -> Rat {
    let mut t = pnk_table(p, n, n);
    let m: Vec<Vec<Rat>> = (0..=n).map(|r| (0..=n).map(|k| t.get(r, k)).collect()).collect();
    det(m)
}

/// Π_{n=0}^{N} p(n)·n!.
pub fn pnk_det_closed(p: &RatPoly, n: usize) -> Rat {
    (0..=n).fold(Rat::one(), |acc, i| {
        acc * p.eval_int(i as i64) * rat_from(factorial(i as u64))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::binomial_poly;

    #[test]
    fn membership_in_rplus_x() {
        assert!(is_in_rplus_x(&RatPoly::from_ints(&[0, 0, 1])));
        assert!(!is_in_rplus_x(&RatPoly::from_ints(&[-2, -2, 1])));
        assert!(is_in_rplus_x(&binomial_poly(4).scale(&rat_int(24))));
        assert!(!is_in_rplus_x(&binomial_poly(2).scale(&crate::arith::rat(1, 2))));
    }

    #[test]
    fn binom_product_examples() {
        assert_eq!(binom_product(1, 1), BinomPoly::from_ints(&[0, 1, 2]));
        assert_eq!(binom_product(3, 0), BinomPoly::from_ints(&[0, 0, 0, 1]));
        assert_eq!(binom_product(2, 2), BinomPoly::from_ints(&[0, 0, 1, 6, 6]));
        let direct = &binomial_poly(2) * &binomial_poly(2);
        assert_eq!(to_binomial_basis(&direct), binom_product(2, 2));
    }

    #[test]
    fn binom_of_poly_examples() {
        assert_eq!(binom_of_poly(&RPlusPoly::from_u64(&[0, 1]), 3).unwrap(), RPlusPoly::from_u64(&[0, 0, 0, 1]));
        assert_eq!(binom_of_poly(&RPlusPoly::from_u64(&[2]), 2).unwrap(), RPlusPoly::from_u64(&[1]));
        assert_eq!(binom_of_poly(&RPlusPoly::from_u64(&[1, 1]), 2).unwrap(), RPlusPoly::from_u64(&[0, 1, 1]));
        assert_eq!(binom_of_poly(&RPlusPoly::from_u64(&[5, 2]), 0).unwrap(), RPlusPoly::from_u64(&[1]));
    }

    #[test]
    fn table_examples() {
        let mut one = pnk_table(&RatPoly::one(), 3, 3);
        assert_eq!(one.get(1, 2), rat_int(1));
        assert_eq!(one.get(2, 2), rat_int(2));
        let mut t = pnk_table(&RatPoly::from_ints(&[-2, -2, 1]), 2, 0);
        assert_eq!(t.get(0, 0), rat_int(-2));
        assert_eq!(t.get(1, 0), rat_int(-1));
        assert_eq!(t.get(2, 0), rat_int(2));
    }

    #[test]
    fn frozen_table() {
        let mut t = PnkTable::new(RatPoly::from_ints(&[-2, -2, 1]));
        let rows: [[i64; 5]; 5] = [
            [-2, -1, 2, 0, 0],
            [0, -3, 2, 6, 0],
            [0, -3, -2, 24, 24],
            [0, -3, -10, 66, 192],
            [0, -3, -26, 168, 1032],
        ];
        for (k, row) in rows.iter().enumerate() {
            for (n, &v) in row.iter().enumerate() {
                assert_eq!(t.get(n, k), rat_int(v), "n={n} k={k}");
            }
        }
        assert_eq!(pnk_det(t.base(), 4), rat_int(-20736));
        assert_eq!(pnk_det_closed(t.base(), 4), rat_int(-20736));
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(pnk_det(&RatPoly::one(), 2), rat_int(2));
        assert_eq!(pnk_det(&RatPoly::from_ints(&[-1, 1]), 3), rat_int(0));
        assert_eq!(pnk_det(&RatPoly::from_ints(&[1, 1]), 1), rat_int(2));
    }

    #[test]
    fn table_extends_in_k_without_recomputation() {
        let mut t = PnkTable::new(RatPoly::from_ints(&[3, 1]));
        t.ensure(4, 2);
        let before = t.column(2, 4);
        t.ensure(4, 9);
        assert_eq!(t.column(2, 4), before);
        assert_eq!(t.rows_in(9), 5);
    }
}
