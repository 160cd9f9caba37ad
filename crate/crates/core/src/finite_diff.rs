//! The forward-difference operator and its iterates.

use num_traits::{One, Zero};

use crate::arith::{binomial, ensure_prime, rat_from, Rat};
use crate::error::Result;
use crate::poly::RatPoly;

/// p(x + 1) - p(x)
pub fn delta(p: &RatPoly) -> RatPoly {
    &p.shift(&Rat::one()) - p
}

/// n-fold application of [`delta`].
pub fn delta_n(p: &RatPoly, n: usize) -> RatPoly {
    let mut q = p.clone();
    for _ in 0..n {
        if q.is_zero() {
            break;
        }
        q = delta(&q);
    }
    q
}

/// Sum over i of (-1)^i C(n, i) p(x + n - i).
pub fn delta_n_closed(p: &RatPoly, n: usize) -> RatPoly {
    let mut acc = RatPoly::zero();
    for i in 0..=n {
        let c = rat_from(binomial(n as u64, i as u64).into());
        let c = if i % 2 == 1 { -c } else { c };
        acc = &acc + &p.shift_int((n - i) as i64).scale(&c);
    }
    acc
}

/// Sum over i of C(n, i) Δ^{n-i}p(x + i) Δ^i q(x).
pub fn leibniz_delta_n(p: &RatPoly, q: &RatPoly, n: usize) -> RatPoly {
    let mut acc = RatPoly::zero();
    let mut dq = q.clone();
    for i in 0..=n {
        let dp = delta_n(p, n - i).shift_int(i as i64);
        let c = rat_from(binomial(n as u64, i as u64).into());
        acc = &acc + &(&dp * &dq).scale(&c);
        dq = delta(&dq);
    }
    acc
}

/// (Δ^n p)(0).
pub fn delta_n_at_zero(p: &RatPoly, n: usize) -> Rat {
    let mut acc = Rat::zero();
    for i in 0..=n {
        let c = rat_from(binomial(n as u64, i as u64).into());
        let v = p.eval_int((n - i) as i64) * c;
        if i % 2 == 1 {
            acc -= v;
        } else {
            acc += v;
        }
    }
    acc
}

/// Exponent of the prime p in k!, by Legendre's formula.
pub fn vp_factorial(p: u64, k: u64) -> Result<u64> {
    ensure_prime(p)?;
    let mut total = 0;
    let mut q = k;
    while q > 0 {
        q /= p;
        total += q;
    }
    Ok(total)
}
