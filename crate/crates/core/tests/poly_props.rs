use num_bigint::BigInt;
use num_rational::BigRational as Q;
use proptest::prelude::*;

use rplus::finite_diff::{delta_n, delta_n_closed, leibniz_delta_n, vp_factorial};
use rplus::poly::{from_binomial_basis, to_binomial_basis, RatPoly};

fn rat_poly(max_deg: usize) -> impl Strategy<Value = RatPoly> {
    prop::collection::vec((-20i64..=20, 1i64..=6), 0..=max_deg + 1)
        .prop_map(|c| RatPoly::new(c.into_iter().map(|(n, d)| Q::new(BigInt::from(n), BigInt::from(d))).collect()))
}

fn int_poly(max_deg: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-30i64..=30, 0..=max_deg + 1)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn binomial_basis_round_trip(p in rat_poly(8)) {
        prop_assert_eq!(from_binomial_basis(&to_binomial_basis(&p)), p);
    }

    #[test]
    fn integer_polys_have_integer_binomial_coefficients(c in int_poly(8)) {
        let b = to_binomial_basis(&RatPoly::from_ints(&c));
        prop_assert!(b.coeffs().iter().all(|x| x.is_integer()));
    }

    #[test]
    fn difference_forms_agree(p in rat_poly(8), n in 0usize..=8) {
        prop_assert_eq!(delta_n(&p, n), delta_n_closed(&p, n));
    }

    #[test]
    fn leibniz(p in rat_poly(5), q in rat_poly(5), n in 0usize..=5) {
        prop_assert_eq!(leibniz_delta_n(&p, &q, n), delta_n(&(&p * &q), n));
    }

    #[test]
    fn parse_display_round_trip(p in rat_poly(6)) {
        prop_assert_eq!(RatPoly::parse(&p.to_string()).unwrap(), p);
    }
}

#[test]
fn factorial_valuation_by_multiplication() {
    for p in [2u64, 3, 5, 7, 11, 13] {
        let mut fact = BigInt::from(1);
        for k in 0..=500u64 {
            if k > 0 {
                fact *= k;
            }
            let mut m = fact.clone();
            let mut e = 0;
            while (&m % p) == BigInt::from(0) {
                m /= p;
                e += 1;
            }
            assert_eq!(vp_factorial(p, k).unwrap(), e, "p = {p}, k = {k}");
        }
    }
    assert!(vp_factorial(4, 10).is_err());
}
