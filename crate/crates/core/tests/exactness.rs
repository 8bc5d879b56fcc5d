//! Property suite for the exact substrate: rational field laws hold exactly
//! and interval intersection is idempotent and commutative.

use proptest::prelude::*;

use heterochaos::exact::{HalfOpenInterval, Rational};

fn rational() -> impl Strategy<Value = Rational> {
    (-1000i64..1000, 1i64..1000).prop_map(|(n, d)| Rational::new(n, d))
}

fn unit_interval() -> impl Strategy<Value = HalfOpenInterval> {
    (1i64..200).prop_flat_map(|d| {
        (0..=d, 0..=d).prop_filter_map("needs two distinct endpoints", move |(a, b)| {
            let (lo, hi) = (a.min(b), a.max(b));
            if lo == hi {
                return None;
            }
            HalfOpenInterval::new(Rational::new(lo, d), Rational::new(hi, d)).ok()
        })
    })
}

proptest! {
    #[test]
    fn addition_is_associative(a in rational(), b in rational(), c in rational()) {
        prop_assert_eq!((&a + &b) + &c, &a + &(&b + &c));
    }

    #[test]
    fn multiplication_distributes(a in rational(), b in rational(), c in rational()) {
        prop_assert_eq!(&a * &(&b + &c), &a * &b + &a * &c);
    }

    #[test]
    fn subtraction_inverts_addition(a in rational(), b in rational()) {
        prop_assert_eq!(&(&a + &b) - &b, a);
    }

    #[test]
    fn division_inverts_multiplication(a in rational(), b in rational()) {
        prop_assume!(!b.is_zero());
        prop_assert_eq!((&a * &b).checked_div(&b).unwrap(), a);
    }

    #[test]
    fn intersection_is_idempotent(iv in unit_interval()) {
        let meet = iv.intersect(&iv);
        prop_assert_eq!(meet, Some(iv));
    }

    #[test]
    fn intersection_is_commutative(a in unit_interval(), b in unit_interval()) {
        prop_assert_eq!(a.intersect(&b), b.intersect(&a));
    }

    #[test]
    fn intersection_is_contained_in_both(a in unit_interval(), b in unit_interval()) {
        if let Some(meet) = a.intersect(&b) {
            prop_assert!(a.contains_interval(&meet));
            prop_assert!(b.contains_interval(&meet));
        }
    }
}
