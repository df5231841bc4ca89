//! Property-based checks of the algebraic foundations: Laurent-polynomial
//! ring axioms, group-model laws, and standard-basis product structure.

use proptest::prelude::*;

use hecke::laurent::{Degree, Laurent};
use hecke::product::{self, Basis};
use hecke::weyl::{Element, Gen};

fn laurent_strategy() -> impl Strategy<Value = Laurent> {
    prop::collection::vec((-6i32..=6, -9i64..=9), 0..6)
        .prop_map(|pairs| {
            let mut p = Laurent::zero();
            for (e, c) in pairs {
                p += &Laurent::monomial(e, c);
            }
            p
        })
}

fn word_strategy(max_len: usize) -> impl Strategy<Value = Vec<u8>> {
    prop::collection::vec(0u8..4, 0..=max_len)
}

fn element_of(word: &[u8], tau: bool) -> Element {
    let linear = Element::from_word(word.iter().map(|&g| Gen::new(g).unwrap()));
    if tau {
        Element::tau().mul(&linear)
    } else {
        linear
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn laurent_ring_axioms(a in laurent_strategy(), b in laurent_strategy(), c in laurent_strategy()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &Laurent::zero(), a.clone());
        prop_assert_eq!(&a * &Laurent::one(), a.clone());
        prop_assert_eq!(&a - &a, Laurent::zero());
    }

    #[test]
    fn laurent_bar_is_a_ring_involution(a in laurent_strategy(), b in laurent_strategy()) {
        prop_assert_eq!(a.bar().bar(), a.clone());
        prop_assert_eq!((&a + &b).bar(), &a.bar() + &b.bar());
        prop_assert_eq!((&a * &b).bar(), &a.bar() * &b.bar());
    }

    #[test]
    fn laurent_degree_is_multiplicative(a in laurent_strategy(), b in laurent_strategy()) {
        let prod = &a * &b;
        match (a.degree(), b.degree()) {
            (Degree::Finite(da), Degree::Finite(db)) => {
                // Leading coefficients are nonzero integers, so they cannot
                // cancel in the product.
                prop_assert_eq!(prod.degree(), Degree::Finite(da + db));
            }
            _ => prop_assert!(prod.is_zero()),
        }
    }

    #[test]
    fn element_word_roundtrip(word in word_strategy(10), tau in any::<bool>()) {
        let w = element_of(&word, tau);
        let formatted = w.to_string();
        let reparsed = Element::parse(&formatted).unwrap();
        prop_assert_eq!(reparsed, w);
        prop_assert!(w.length() as usize <= word.len());
        prop_assert_eq!(w.canonical_word().len() as u32, w.length());
    }

    #[test]
    fn group_laws(wa in word_strategy(8), ta in any::<bool>(),
                  wb in word_strategy(8), tb in any::<bool>()) {
        let a = element_of(&wa, ta);
        let b = element_of(&wb, tb);
        let ab = a.mul(&b);
        prop_assert_eq!(ab.inverse(), b.inverse().mul(&a.inverse()));
        prop_assert_eq!(a.inverse().inverse(), a);
        prop_assert_eq!(a.mul(&a.inverse()), Element::identity());
        prop_assert_eq!(a.inverse().length(), a.length());
        // Inversion swaps the two descent sides.
        prop_assert_eq!(a.left_descents(), a.inverse().right_descents());
    }

    #[test]
    fn bruhat_order_properties(word in word_strategy(7)) {
        let w = element_of(&word, false);
        prop_assert!(w.bruhat_leq(&w));
        let interval = w.lower_interval();
        // The interval is exactly the set of elements below w, and every
        // member's interval embeds into it.
        for y in &interval {
            prop_assert!(y.bruhat_leq(&w));
            prop_assert!(y.length() <= w.length());
        }
        prop_assert!(interval.contains(&Element::identity()));
        prop_assert!(interval.contains(&w));
    }

    #[test]
    fn standard_basis_products(wa in word_strategy(6), wb in word_strategy(6), tau in any::<bool>()) {
        let a = element_of(&wa, tau);
        let b = element_of(&wb, false);
        let prod = product::t_mul(&a, &b);
        prop_assert_eq!(prod.basis, Basis::Ttilde);
        // Unit laws.
        prop_assert_eq!(
            product::t_mul(&a, &Element::identity()).sorted_terms(),
            vec![(a, Laurent::one())]
        );
        // Support sits under the length sum, with the top term T̃_{ab}
        // appearing exactly when lengths add.
        for (z, coeff) in prod.sorted_terms() {
            prop_assert!(z.length() <= a.length() + b.length());
            prop_assert!(!coeff.is_zero());
        }
        if a.length() + b.length() == a.mul(&b).length() {
            prop_assert_eq!(prod.sorted_terms(), vec![(a.mul(&b), Laurent::one())]);
        }
        // Coefficients specialize at v = 1 to the group-algebra product: the
        // total mass is 1 since T_s^2 = (q-1)T_s + q collapses at q = 1.
        let mass: i64 = prod.sorted_terms().iter().map(|(_, c)| c.eval_at_one()).sum();
        prop_assert_eq!(mass, 1);
    }
}
