use std::sync::Arc;

use proptest::prelude::*;

use nwlab_core::algebra::{bracket, GeneratorTag, LieElement, LoopGenerator};
use nwlab_core::json::{lie_from_json, lie_to_json, state_from_json, state_to_json, uea_from_json, uea_to_json};
use nwlab_core::linalg::{apply, kernel, rank};
use nwlab_core::modules::{InducedModule, RestrictedModule, TrivialModule, VermaModule};
use nwlab_core::pbw::{straighten, straighten_with, Schedule};
use nwlab_core::rational::{rat, ratio, Rational};

fn generator() -> impl Strategy<Value = LoopGenerator> {
    (0..4usize, -3i64..=3).prop_map(|(t, n)| GeneratorTag::ALL[t].at(n))
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (-5i64..=5, 1i64..=4).prop_map(|(n, d)| ratio(n, d))
}

fn lie_element() -> impl Strategy<Value = LieElement> {
    (prop::collection::vec((generator(), small_rational()), 0..5), small_rational()).prop_map(|(terms, k)| {
        let mut x = LieElement::central(k);
        for (g, c) in terms {
            x.add_scaled(&LieElement::generator(g), &c);
        }
        x
    })
}

fn level() -> impl Strategy<Value = Rational> {
    prop_oneof![Just(rat(1)), Just(ratio(5, 3)), Just(rat(-2))]
}

proptest! {
    #[test]
    fn bracket_is_antisymmetric_and_bilinear(x in lie_element(), y in lie_element(), z in lie_element(), s in small_rational()) {
        prop_assert_eq!(bracket(&x, &y), bracket(&y, &x).scaled(&rat(-1)));
        let lhs = bracket(&x.plus(&z.scaled(&s)), &y);
        let rhs = bracket(&x, &y).plus(&bracket(&z, &y).scaled(&s));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn straightening_is_confluent(word in prop::collection::vec(generator(), 0..6), level in level()) {
        let left = straighten_with(&word, &level, Schedule::Leftmost);
        let right = straighten_with(&word, &level, Schedule::Rightmost);
        prop_assert_eq!(&left, &right);
        let again = straighten_with(&word, &level, Schedule::Rightmost);
        prop_assert_eq!(left, again);
    }

    #[test]
    fn kernel_is_invariant_under_row_scaling(
        rows in prop::collection::vec(prop::collection::vec(-3i64..=3, 5), 1..5),
        scales in prop::collection::vec(prop_oneof![-3i64..=-1, 1i64..=3], 5),
    ) {
        let m: Vec<Vec<Rational>> = rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect();
        let scaled: Vec<Vec<Rational>> = m.iter().zip(&scales).map(|(r, &s)| r.iter().map(|x| x * rat(s)).collect()).collect();
        let k = kernel(&m, 5);
        prop_assert_eq!(k.len() + rank(&m, 5), 5);
        for v in &k {
            prop_assert!(apply(&m, v).iter().all(|x| *x == rat(0)));
        }
        prop_assert_eq!(k, kernel(&scaled, 5));
    }

    #[test]
    fn action_preserves_grading(g in generator(), pick in 0usize..1000, verma_base in any::<bool>()) {
        let module = if verma_base {
            InducedModule::new(rat(1), Arc::new(VermaModule { c: ratio(1, 2), d: rat(0), b_cap: 24 }), 6).unwrap()
        } else {
            InducedModule::new(rat(1), Arc::new(TrivialModule { d: rat(0) }), 6).unwrap()
        };
        let basis = module.basis_up_to(3);
        let b = &basis[pick % basis.len()];
        let out = module.act_basis(g, b).unwrap();
        let h = module.degree(b) as i64;
        let w = module.d_weight(b);
        for (key, _) in out.iter() {
            prop_assert_eq!(module.degree(key) as i64, h - g.mode);
            prop_assert_eq!(module.d_weight(key), &w + rat(g.tag.d_charge()));
        }
    }

    #[test]
    fn json_round_trips(x in lie_element(), word in prop::collection::vec(generator(), 0..5), level in level()) {
        prop_assert_eq!(lie_from_json(&lie_to_json(&x)).unwrap(), x);
        let u = straighten(&word, &level);
        prop_assert_eq!(uea_from_json(&uea_to_json(&u)).unwrap(), u);
        let module = InducedModule::new(rat(1), Arc::new(VermaModule { c: rat(1), d: rat(0), b_cap: 24 }), 8).unwrap();
        let negative: Vec<_> = word.iter().map(|g| g.tag.at(-1 - g.mode.abs() % 2)).collect();
        let s = module.apply_word(&negative, &module.highest_state()).unwrap();
        prop_assert_eq!(state_from_json(&state_to_json(&s, module.base()), module.base()).unwrap(), s);
    }
}
