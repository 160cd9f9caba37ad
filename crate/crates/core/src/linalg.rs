//! Exact dense linear algebra over Q and Z.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::Rat;

/// Determinant by Gaussian elimination.
pub fn det(mut m: Vec<Vec<Rat>>) -> Rat {
    let n = m.len();
    let mut d = Rat::one();
    for c in 0..n {
        let Some(piv) = (c..n).find(|&r| !m[r][c].is_zero()) else {
            return Rat::zero();
        };
        if piv != c {
            m.swap(piv, c);
            d = -d;
        }
        let pv = m[c][c].clone();
        d *= &pv;
        for r in c + 1..n {
            if m[r][c].is_zero() {
                continue;
            }
            let f = &m[r][c] / &pv;
            let (top, bottom) = m.split_at_mut(r);
            for (x, y) in bottom[0][c..].iter_mut().zip(&top[c][c..]) {
                *x -= &f * y;
            }
        }
    }
    d
}

/// Unique solution of a square system, or `None` when singular.
pub fn solve(mut a: Vec<Vec<Rat>>, mut b: Vec<Rat>) -> Option<Vec<Rat>> {
    let n = a.len();
    for c in 0..n {
        let piv = (c..n).find(|&r| !a[r][c].is_zero())?;
        a.swap(piv, c);
        b.swap(piv, c);
        let inv = Rat::one() / &a[c][c];
        a[c][c..].iter_mut().for_each(|x| *x *= &inv);
        b[c] *= &inv;
        for r in 0..n {
            if r == c || a[r][c].is_zero() {
                continue;
            }
            let f = a[r][c].clone();
            let pivot = a[c].clone();
            for (x, y) in a[r][c..].iter_mut().zip(&pivot[c..]) {
                *x -= &f * y;
            }
            let t = &f * &b[c];
            b[r] -= t;
        }
    }
    Some(b)
}

/// A point y >= 0 with A y = b, found by the phase-one simplex method with
/// Bland's rule, or `None` when the system is infeasible.
pub fn nonneg_feasible(a: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    let width = n + m + 1;
    // rows: constraints with artificials, last column is the rhs
    let mut t: Vec<Vec<Rat>> = Vec::with_capacity(m + 1);
    for (i, row) in a.iter().enumerate() {
        let flip = b[i].is_negative();
        let mut r = vec![Rat::zero(); width];
        for (j, v) in row.iter().enumerate() {
            r[j] = if flip { -v } else { v.clone() };
        }
        r[n + i] = Rat::one();
        r[width - 1] = if flip { -&b[i] } else { b[i].clone() };
        t.push(r);
    }
    let mut basis: Vec<usize> = (n..n + m).collect();
    // objective row holds reduced costs of minimising the artificial sum
    let mut obj = vec![Rat::zero(); width];
    for r in &t {
        for j in 0..width {
            if j < n || j == width - 1 {
                obj[j] -= &r[j];
            }
        }
    }
    while let Some(enter) = (0..n + m).find(|&j| obj[j].is_negative()) {
        let mut leave: Option<(usize, Rat)> = None;
        for (i, r) in t.iter().enumerate() {
            if !r[enter].is_positive() {
                continue;
            }
            let ratio = &r[width - 1] / &r[enter];
            let better = match &leave {
                None => true,
                Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
            };
            if better {
                leave = Some((i, ratio));
            }
        }
        // phase one is bounded below by zero
        let (li, _) = leave?;
        let inv = Rat::one() / &t[li][enter];
        for v in t[li].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = t[li].clone();
        for (i, r) in t.iter_mut().enumerate() {
            if i == li || r[enter].is_zero() {
                continue;
            }
            let f = r[enter].clone();
            for (v, p) in r.iter_mut().zip(&pivot_row) {
                *v -= &f * p;
            }
        }
        let f = obj[enter].clone();
        for (v, p) in obj.iter_mut().zip(&pivot_row) {
            *v -= &f * p;
        }
        basis[li] = enter;
    }
    if !obj[width - 1].is_zero() {
        return None;
    }
    let mut y = vec![Rat::zero(); n];
    for (i, &j) in basis.iter().enumerate() {
        if j < n {
            y[j] = t[i][width - 1].clone();
        }
    }
    Some(y)
}

/// The Z-span of finitely many integer vectors, kept in row echelon form.
#[derive(Clone, Debug)]
pub struct IntLattice {
    dim: usize,
    rows: Vec<(usize, Vec<BigInt>)>,
}

impl IntLattice {
    pub fn new(dim: usize, gens: &[Vec<BigInt>]) -> Self {
        let mut pool: Vec<Vec<BigInt>> = gens.iter().filter(|g| g.iter().any(|x| !x.is_zero())).cloned().collect();
        let mut rows = Vec::new();
        for c in 0..dim {
            let mut active: Vec<Vec<BigInt>> = Vec::new();
            let mut rest = Vec::new();
            for g in pool {
                if g[c].is_zero() {
                    rest.push(g);
                } else {
                    active.push(g);
                }
            }
            // Euclid on column c until a single row carries it
            while active.len() > 1 {
                active.sort_by(|x, y| x[c].abs().cmp(&y[c].abs()));
                let head = active[0].clone();
                let mut next = vec![head.clone()];
                for g in active.into_iter().skip(1) {
                    let q = g[c].div_floor(&head[c]);
                    let r: Vec<BigInt> = g.iter().zip(&head).map(|(a, b)| a - &q * b).collect();
                    if r[c].is_zero() {
                        if r.iter().any(|x| !x.is_zero()) {
                            rest.push(r);
                        }
                    } else {
                        next.push(r);
                    }
                }
                active = next;
            }
            if let Some(mut piv) = active.pop() {
                if piv[c].is_negative() {
                    piv.iter_mut().for_each(|x| *x = -x.clone());
                }
                rows.push((c, piv));
            }
            pool = rest;
        }
        IntLattice { dim, rows }
    }

    pub fn contains(&self, w: &[BigInt]) -> bool {
        debug_assert_eq!(w.len(), self.dim);
        let mut r = w.to_vec();
        for (c, row) in &self.rows {
            if r[*c].is_zero() {
                continue;
            }
            let (q, rem) = r[*c].div_rem(&row[*c]);
            if !rem.is_zero() {
                return false;
            }
            for (a, b) in r.iter_mut().zip(row) {
                *a -= &q * b;
            }
        }
        r.iter().all(Zero::is_zero)
    }
}
