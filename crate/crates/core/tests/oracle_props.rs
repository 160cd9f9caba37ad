mod common;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational as Q;
use proptest::prelude::*;
use rand::Rng;

use common::rng;
use rplus::certificate::{binomials_of, evaluate_terms, verify_certificate};
use rplus::field::{FieldElem, NumberField};
use rplus::membership::{decide_membership, verify_witness};
use rplus::oracle::{brute_force_certificate, random_member, search_certificate, SearchOutcome};

fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// First tuple (a_K, ..., a_0) in lexicographic order hitting β.
fn naive_least(k: &NumberField, beta: &FieldElem, max_index: u64, bound: u64) -> Option<Vec<u64>> {
    let bs = binomials_of(k, &k.alpha(), max_index);
    let n = max_index as usize + 1;
    let total = (bound + 1).pow(n as u32);
    for code in 0..total {
        // most significant digit is a_K
        let mut digits = vec![0u64; n];
        let mut c = code;
        for d in digits.iter_mut() {
            *d = c % (bound + 1);
            c /= bound + 1;
        }
        let v = digits.iter().enumerate().fold(k.zero(), |acc, (i, &a)| k.add(&acc, &k.scale(&bs[i], &q(a as i64, 1))));
        if &v == beta {
            return Some(digits);
        }
    }
    None
}

#[test]
fn brute_force_matches_naive_enumeration() {
    let mut r = rng(70);
    for m in ["x^2-2", "2x-1", "x^2+1", "3x-1"] {
        let k = NumberField::parse(m).unwrap();
        let bs = binomials_of(&k, &k.alpha(), 3);
        for _ in 0..25 {
            // half reachable by construction, half perturbed
            let mut beta = (0..4).fold(k.zero(), |acc, i| k.add(&acc, &k.scale(&bs[i], &q(r.gen_range(0..=3), 1))));
            if r.gen_bool(0.5) {
                beta = k.add(&beta, &k.from_rat(q(r.gen_range(-2..=2), r.gen_range(1..=3))));
            }
            let expect = naive_least(&k, &beta, 3, 3);
            match brute_force_certificate(&k, &k.alpha(), &beta, 3, 3) {
                SearchOutcome::Found(c) => {
                    let mut digits = vec![0u64; 4];
                    for (i, a) in &c.terms {
                        digits[*i as usize] = a.try_into().unwrap();
                    }
                    assert_eq!(Some(digits), expect, "{m}: {beta}");
                }
                SearchOutcome::Inconclusive => assert_eq!(expect, None, "{m}: {beta}"),
            }
        }
    }
}

#[test]
fn random_members_are_decided_members() {
    let mut count = 0;
    for m in ["x^2-2", "x^2+1", "x^3-2", "2x^2-3", "x^2-x-1", "3x-2"] {
        let k = NumberField::parse(m).unwrap();
        for seed in 0..84 {
            let (b, c) = random_member(&k, &k.alpha(), seed, 6);
            assert!(verify_certificate(&k, &c));
            assert_eq!(evaluate_terms(&k, &c.terms), b);
            assert!(decide_membership(&k, &k.alpha(), &b).unwrap().member, "{m}: {b}");
            count += 1;
        }
    }
    assert!(count >= 500);
}

#[test]
fn non_members_have_no_small_certificate() {
    let cases = [("x^2-2", vec![q(1, 7), q(0, 1)]), ("x^2+1", vec![q(1, 5), q(0, 1)]), ("2x-1", vec![q(1, 3)]), ("x^2-2", vec![q(1, 2), q(1, 7)])];
    for (m, coords) in cases {
        let k = NumberField::parse(m).unwrap();
        let b = k.elem(coords).unwrap();
        let v = decide_membership(&k, &k.alpha(), &b).unwrap();
        assert!(!v.member, "{m}: {b}");
        if let Some(w) = &v.witness {
            assert!(verify_witness(&k, &k.alpha(), &b, w).unwrap());
        }
        for (kk, a) in [(2, 4), (4, 8), (6, 16)] {
            assert!(!brute_force_certificate(&k, &k.alpha(), &b, kk, a).is_found(), "{m}: {b} at ({kk},{a})");
        }
    }
}

#[test]
fn searched_certificates_verify() {
    let k = NumberField::parse("x^2-2").unwrap();
    for b in [k.from_rat(q(1, 2)), k.from_int(-3), k.elem(vec![q(0, 1), q(-1, 1)]).unwrap()] {
        let c = search_certificate(&k, &k.alpha(), &b).expect("member");
        assert!(verify_certificate(&k, &c));
        assert_eq!(c.target, b);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn found_certificates_are_valid(a in 0i64..=6, b in -4i64..=4, den in 1i64..=4) {
        let k = NumberField::parse("x^2-3").unwrap();
        let beta = k.elem(vec![q(a, den), q(b, den)]).unwrap();
        if let SearchOutcome::Found(c) = brute_force_certificate(&k, &k.alpha(), &beta, 4, 8) {
            prop_assert!(verify_certificate(&k, &c));
            prop_assert!(c.terms.iter().all(|(i, x)| *i <= 4 && *x <= BigUint::from(8u32)));
            prop_assert!(decide_membership(&k, &k.alpha(), &beta).unwrap().member);
        }
    }
}
