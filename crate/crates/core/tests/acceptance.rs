//! End-to-end acceptance checks with their runtime limits. Prints one line
//! per check and exits nonzero if any fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational as Q;
use num_traits::{One, Zero};
use rand::Rng;

use common::*;
use rplus::arith::{binomial_rat, primes_up_to, valuation_rat};
use rplus::certificate::verify_certificate;
use rplus::field::NumberField;
use rplus::membership::{alpha_p, cyclotomic_inverse_prime, decide_membership, inverse_prime_in, verify_witness};
use rplus::negone::certify_negative_one;
use rplus::oracle::{brute_force_certificate, random_member};
use rplus::padic::{place_valuation, places, zp_roots, Val};
use rplus::poly::{discriminant, IntPoly, RatPoly};
use rplus::rplus::{binom_of_poly, pnk_det, PnkTable, RPlusPoly};

type Check = fn() -> Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn field(s: &str) -> NumberField {
    NumberField::parse(s).unwrap()
}

fn rational_law() -> Result<(), String> {
    let mut r = rng(1);
    for (a, q) in [((1, 2), 2i64), ((2, 3), 3), ((-3, 5), 5), ((7, 4), 4)] {
        let k = NumberField::rational(&Q::new(big(a.0), big(a.1)));
        for _ in 0..200 {
            let num = r.gen_range(-500i64..=500);
            let den = [1i64, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 15, 16, 25, 27, 49][r.gen_range(0..16)];
            let beta = Q::new(big(num), big(den));
            // β ∈ Z[1/q]: the reduced denominator divides a power of q
            let mut d = beta.denom().clone();
            loop {
                let g = d.gcd(&big(q));
                if g.is_one() {
                    break;
                }
                d /= g;
            }
            let expect = d.is_one();
            let got = decide_membership(&k, &k.alpha(), &k.from_rat(beta.clone())).map_err(|e| e.to_string())?.member;
            ensure(got == expect, || format!("α = {}/{}, β = {beta}: got {got}", a.0, a.1))?;
        }
    }
    Ok(())
}

fn quadratic_characterization() -> Result<(), String> {
    for d in [-5i64, -1, 2, 3, 5, 6, 17] {
        let k = field(&format!("x^2-({d})"));
        for p in primes_up_to(199) {
            let expect = if p == 2 { d.rem_euclid(8) != 1 } else { d % p as i64 == 0 || !is_square_mod(d, p) };
            let got = inverse_prime_in(&k, &k.alpha(), p).map_err(|e| e.to_string())?;
            ensure(got == expect, || format!("d = {d}, p = {p}: got {got}"))?;
        }
    }
    Ok(())
}

fn cyclotomic_rule() -> Result<(), String> {
    for n in [3u64, 4, 5, 8, 12] {
        let k = NumberField::cyclotomic(n).map_err(|e| e.to_string())?;
        for p in primes_up_to(99) {
            let expect = p % n != 1;
            let closed = cyclotomic_inverse_prime(n, p).map_err(|e| e.to_string())?;
            let general = inverse_prime_in(&k, &k.alpha(), p).map_err(|e| e.to_string())?;
            ensure(closed == expect && general == expect, || format!("n = {n}, p = {p}: closed {closed}, places {general}"))?;
        }
    }
    Ok(())
}

fn negative_one_certificates() -> Result<(), String> {
    for m in ["2x-1", "x^2-2", "x^2-x-1", "x^2+1", "x^3-x-1"] {
        let t = Instant::now();
        let k = field(m);
        let c = certify_negative_one(&k).map_err(|e| format!("{m}: {e}"))?;
        ensure(c.target == k.from_int(-1) && verify_certificate(&k, &c), || format!("{m}: certificate does not verify"))?;
        ensure(t.elapsed() < Duration::from_secs(60), || format!("{m}: took {:?}", t.elapsed()))?;
    }
    Ok(())
}

fn binomial_nonnegativity() -> Result<(), String> {
    let mut r = rng(5);
    for _ in 0..100 {
        let deg = r.gen_range(0..=4);
        let f: Vec<u64> = (0..=deg).map(|_| r.gen_range(0..=3)).collect();
        let k = r.gen_range(0..=5usize);
        let g = binom_of_poly(&RPlusPoly::from_u64(&f), k).map_err(|e| format!("f = {f:?}, k = {k}: {e}"))?;
        // the expansion must equal binom(f(x), k) at enough integer points
        for x in 0..=(4 * 5 + 2) {
            let fx: BigInt = f.iter().enumerate().map(|(i, &c)| binom_int(&big(x), i as u64) * big(c as i64)).sum();
            let lhs = binom_int(&fx, k as u64);
            let rhs: BigInt = g
                .coeffs()
                .iter()
                .enumerate()
                .map(|(j, c)| binom_int(&big(x), j as u64) * BigInt::from(c.clone()))
                .sum();
            ensure(lhs == rhs, || format!("f = {f:?}, k = {k}, x = {x}: {lhs} vs {rhs}"))?;
        }
        let _: &[BigUint] = g.coeffs();
    }
    Ok(())
}

fn table_identities() -> Result<(), String> {
    let mut r = rng(6);
    for _ in 0..40 {
        let deg = r.gen_range(0..=4);
        let mut p: Vec<i64> = (0..=deg).map(|_| r.gen_range(-10..=10)).collect();
        if p.iter().all(|&c| c == 0) {
            p[0] = 1;
        }
        let rp = RatPoly::from_ints(&p);
        let n_max = r.gen_range(0..=8usize);
        let k_max = r.gen_range(0..=10usize);
        let mut t = PnkTable::new(rp.clone());
        for n in 0..=n_max {
            for k in 0..=k_max {
                let v = t.get(n, k);
                let o = Q::from_integer(delta_pnk(&p, n, k));
                ensure(v == o, || format!("p = {p:?}: entry ({n},{k}) {v} vs oracle {o}"))?;
                if n >= 1 && k >= 1 {
                    let rec = Q::from_integer(big(n as i64)) * (t.get(n, k - 1) + t.get(n - 1, k - 1));
                    ensure(v == rec, || format!("p = {p:?}: recurrence fails at ({n},{k})"))?;
                }
            }
        }
        let vals: Vec<BigInt> = (0..=n_max as i64).map(|n| p_at(&p, n)).collect();
        if vals.iter().all(|v| !v.is_zero()) {
            let prod: BigInt = vals.iter().enumerate().map(|(n, v)| v * binom_int(&big(n as i64), n as u64) * (1..=n as i64).product::<i64>()).product();
            let det = pnk_det(&rp, n_max);
            ensure(det == Q::from_integer(prod.clone()), || format!("p = {p:?}, N = {n_max}: det {det} vs {prod}"))?;
        }
    }
    Ok(())
}

fn padic_engine() -> Result<(), String> {
    let mut r = rng(7);
    for i in 0..200 {
        let g = random_monic(&mut r, 50);
        let p = [2u64, 3, 5, 7][i % 4];
        let got = zp_roots(p, &IntPoly::from_i64(&g)).map_err(|e| format!("{g:?} at {p}: {e}"))?.len();
        let expect = zp_root_count_by_enumeration(p, &g, 12);
        ensure(got == expect, || format!("{g:?} at p = {p}: {got} roots vs oracle {expect}"))?;
    }
    for d in [-7i64, -5, -3, -2, -1, 2, 3, 5, 6, 7, 10, 11, 13, 15, 17, 33, 41] {
        for p in primes_up_to(31) {
            if p != 2 && d % p as i64 == 0 {
                continue;
            }
            let count = zp_roots(p, &IntPoly::from_i64(&[-d, 0, 1])).map_err(|e| e.to_string())?.len();
            let split = if p == 2 { d.rem_euclid(8) == 1 } else { is_square_mod(d, p) };
            ensure(count == if split { 2 } else { 0 }, || format!("x^2 - {d} at {p}: {count} roots"))?;
        }
    }
    Ok(())
}

fn oracle_cross_validation() -> Result<(), String> {
    let k = field("x^2-2");
    let a = k.alpha();
    for seed in 0..30 {
        let (b, c) = random_member(&k, &a, seed, 6);
        ensure(verify_certificate(&k, &c), || format!("seed {seed}: certificate"))?;
        let v = decide_membership(&k, &a, &b).map_err(|e| e.to_string())?;
        ensure(v.member, || format!("seed {seed}: random member {b} rejected"))?;
    }
    let mut r = rng(8);
    for seed in 0..30 {
        let (m, _) = random_member(&k, &a, 1000 + seed, 6);
        let (u0, u1) = loop {
            let u = (r.gen_range(-20i64..=20), r.gen_range(-20i64..=20));
            if u.0 % 7 != 0 || u.1 % 7 != 0 {
                break u;
            }
        };
        let u = k.elem(vec![Q::new(big(u0), big(7)), Q::new(big(u1), big(7))]).unwrap();
        let b = k.add(&m, &u);
        let v = decide_membership(&k, &a, &b).map_err(|e| e.to_string())?;
        ensure(!v.member, || format!("{b} accepted"))?;
        let w = v.witness.as_ref().ok_or_else(|| format!("{b}: no witness"))?;
        ensure(verify_witness(&k, &a, &b, w).map_err(|e| e.to_string())?, || format!("{b}: witness does not re-verify"))?;
        ensure(!brute_force_certificate(&k, &a, &b, 8, 64).is_found(), || format!("{b}: bounded search found a certificate"))?;
    }
    Ok(())
}

fn generators() -> Result<(), String> {
    for m in ["x^2-2", "x^2-17", "x^3-2"] {
        let k = field(m);
        for p in primes_up_to(13) {
            let g = alpha_p(&k, p).map_err(|e| format!("{m}, {p}: {e}"))?;
            let v = decide_membership(&k, &k.alpha(), &g.element).map_err(|e| e.to_string())?;
            ensure(v.member, || format!("{m}: α_{p} = {} rejected", g.element))?;
            for pl in places(&k, p).map_err(|e| e.to_string())? {
                let pv = place_valuation(&pl, &g.element).map_err(|e| e.to_string())?;
                ensure(pv == Val::Finite(0), || format!("{m}: α_{p} has valuation {pv} at a place"))?;
            }
            if g.has_nonlinear {
                let nv = valuation_rat(p, &k.norm(&g.element)).unwrap();
                ensure(nv < 0, || format!("{m}: v_{p}(N(α_{p})) = {nv}"))?;
            }
        }
    }
    let k = field("x^3-2");
    ensure(alpha_p(&k, 5).unwrap().has_nonlinear, || "x^3-2 at 5 should leave a nonlinear factor".into())
}

/// The literal identity binom(1/2, k) = C_{k−1}(−1)^{k−1}/2^k is checked as
/// stated; it already disagrees with binom(1/2, 2) = −1/8 at k = 2.
fn explicit_values() -> Result<(), String> {
    let half = Q::new(big(1), big(2));
    ensure(binomial_rat(&half, 2) == Q::new(big(-1), big(8)), || "binom(1/2,2) ≠ −1/8".into())?;
    for n in 1..=10u32 {
        let mut c = vec![0i64; n as usize + 1];
        c[0] = -1;
        c[n as usize] = 1;
        let disc = discriminant(&RatPoly::from_ints(&c));
        let sign = if (n * (n + 1) / 2 + 1) % 2 == 0 { 1 } else { -1 };
        let expect = Q::from_integer(num_traits::pow(big(n as i64), n as usize) * big(sign));
        ensure(disc == expect, || format!("disc(x^{n} - 1) = {disc}, expected {expect}"))?;
    }
    let mut bad = Vec::new();
    for k in 1..=8u64 {
        let lhs = binomial_rat(&half, k);
        let sign = if (k - 1) % 2 == 0 { 1 } else { -1 };
        let rhs = Q::new(catalan(k - 1) * big(sign), num_traits::pow(big(2), k as usize));
        if lhs != rhs {
            bad.push(format!("k = {k}: {lhs} vs {rhs}"));
        }
    }
    ensure(bad.is_empty(), || format!("Catalan identity with 2^k fails ({})", bad.join("; ")))
}

/// Criteria that contradict arithmetic fact. They still run and print FAIL.
const KNOWN_UNATTAINABLE: [(&str, &str); 1] = [(
    "explicit values",
    "binom(1/2, k) = C_{k-1}(-1)^{k-1}/2^k is false for k >= 2; the denominator is 2^{2k-1}",
)];

fn main() {
    let checks: [(&str, u64, Check); 10] = [
        ("rational law", 5, rational_law),
        ("quadratic characterization", 30, quadratic_characterization),
        ("cyclotomic rule", 60, cyclotomic_rule),
        ("-1 certificates", 300, negative_one_certificates),
        ("binom of R+(x) polynomials", 10, binomial_nonnegativity),
        ("p_nk table identities", 10, table_identities),
        ("p-adic engine", 60, padic_engine),
        ("oracle cross-validation", 120, oracle_cross_validation),
        ("generators", 120, generators),
        ("explicit values", 5, explicit_values),
    ];
    let mut failed = Vec::new();
    for (i, (name, limit, check)) in checks.iter().enumerate() {
        let t = Instant::now();
        let res = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let dt = t.elapsed();
        let res = res.and_then(|_| ensure(dt < Duration::from_secs(*limit), || format!("over the {limit} s limit")));
        match res {
            Ok(()) => println!("PASS  {:>2} {name:<28} {:>8.3} s (limit {limit} s)", i + 1, dt.as_secs_f64()),
            Err(e) => {
                failed.push(*name);
                println!("FAIL  {:>2} {name:<28} {:>8.3} s (limit {limit} s): {e}", i + 1, dt.as_secs_f64());
            }
        }
    }
    println!("{} of {} acceptance checks passed", checks.len() - failed.len(), checks.len());
    for (name, why) in KNOWN_UNATTAINABLE {
        if failed.contains(&name) {
            println!("known unattainable: {name}: {why}");
        }
    }
    // only failures that cannot be met as stated are tolerated
    if failed.iter().any(|f| !KNOWN_UNATTAINABLE.iter().any(|(n, _)| n == f)) {
        std::process::exit(1);
    }
}
