use std::sync::Arc;

use nwlab_core::algebra::GeneratorTag::{self, *};
use nwlab_core::lincomb::LinComb;
use nwlab_core::linalg::span_rank;
use nwlab_core::modules::{InducedModule, RestrictedModule, TrivialModule, VermaModule};
use nwlab_core::rational::{rat, ratio, Rational};
use nwlab_core::voa::*;

fn vacuum(level: Rational, depth: usize) -> InducedModule {
    InducedModule::new(level, Arc::new(TrivialModule { d: rat(0) }), depth).unwrap()
}

fn verma(level: Rational, c: Rational, d: Rational, depth: usize) -> InducedModule {
    InducedModule::new(level, Arc::new(VermaModule { c, d, b_cap: 24 }), depth).unwrap()
}

#[test]
fn dg_on_vacuum_and_verma() {
    for module in [vacuum(rat(1), 7), verma(rat(1), rat(-1), rat(0), 7)] {
        let e = VertexEngine::new(&module);
        for m in -2..=2 {
            for n in -2..=2 {
                for h in GeneratorTag::ALL {
                    let bad = check_dg(&e, m, n, h, 3).unwrap();
                    assert!(bad.is_none(), "m={m} n={n} h={h}: {bad:?}");
                }
            }
        }
    }
}

#[test]
fn virasoro_relations_with_central_charge_four() {
    let module = vacuum(rat(1), 7);
    let e = VertexEngine::new(&module);
    for m in -2..=2 {
        for n in -2..=2 {
            let r = verify_virasoro(&e, m, n, 3).unwrap();
            assert!(r.verified, "m={m} n={n}: {:?}", r.counterexample);
            assert_eq!(r.central_coeff, Some(expected_central(m, n)));
            if m + n == 0 && m.abs() == 2 {
                assert_eq!(r.central_charge, Some(rat(4)));
            }
        }
    }
}

#[test]
fn l_minus_one_is_translation_and_l_zero_is_grading() {
    let module = vacuum(ratio(5, 3), 5);
    let e = VertexEngine::new(&module);
    let omega = omega(module.level()).unwrap();
    for b in module.basis_up_to(3) {
        let w = LinComb::basis(b.clone());
        assert_eq!(e.virasoro(&omega, -1, &w).unwrap(), d_operator(&e, &w).unwrap());
        assert_eq!(e.virasoro(&omega, 0, &w).unwrap(), w.scaled(&rat(b.word.height())));
    }
}

#[test]
fn vacuum_property_and_weight_additivity() {
    let module = vacuum(rat(2), 6);
    let e = VertexEngine::new(&module);
    let vac = module.highest_state();
    let target = module.apply_word(&[B.at(-1)], &vac).unwrap();
    for b in module.basis_up_to(3) {
        let v = LinComb::basis(b.clone());
        assert_eq!(e.mode(&v, -1, &vac).unwrap(), v);
        for n in -2..=2 {
            let out = e.mode(&v, n, &target).unwrap();
            let expected = 1 + b.word.height() - n - 1;
            assert!(out.keys().all(|k| k.word.height() == expected), "{b} n={n}");
        }
    }
}

#[test]
fn mode_commutator_matches_bracket() {
    let module = vacuum(rat(3), 5);
    let e = VertexEngine::new(&module);
    let w = module.apply_word(&[A.at(-1), C.at(-1)], &module.highest_state()).unwrap();
    for g in GeneratorTag::ALL {
        for h in GeneratorTag::ALL {
            for m in -1..=2 {
                for n in -1..=2 {
                    let gm = |s: &LinComb<_>| e.mode(&generator_state(g), m, s).unwrap();
                    let hn = |s: &LinComb<_>| e.mode(&generator_state(h), n, s).unwrap();
                    let lhs = &gm(&hn(&w)) - &hn(&gm(&w));
                    let br = nwlab_core::algebra::bracket_generators(g.at(m), h.at(n));
                    assert_eq!(lhs, module.act_lie(&br, &w).unwrap());
                }
            }
        }
    }
}

#[test]
fn conformal_weight_on_verma_base() {
    for (level, c, d) in [(rat(1), rat(-1), rat(0)), (rat(2), rat(3), ratio(1, 2))] {
        let module = verma(level.clone(), c.clone(), d.clone(), 3);
        let e = VertexEngine::new(&module);
        let omega = omega(&level).unwrap();
        let r = conformal_weight(&level, &c, &d).unwrap();
        let v = module.highest_state();
        assert_eq!(e.virasoro(&omega, 0, &v).unwrap(), v.scaled(&r));
    }
}

#[test]
fn low_height_states_are_generated_by_modes() {
    // starting from the vacuum, repeatedly apply generator-field modes
    let module = vacuum(rat(1), 3);
    let e = VertexEngine::new(&module);
    let mut reached = vec![module.highest_state()];
    let mut frontier = reached.clone();
    for _ in 0..3 {
        let mut next = Vec::new();
        for s in &frontier {
            for h in GeneratorTag::ALL {
                for n in -3..=-1 {
                    if let Ok(t) = e.mode(&generator_state(h), n, s) {
                        if !t.is_zero() {
                            next.push(t);
                        }
                    }
                }
            }
        }
        reached.extend(next.iter().cloned());
        frontier = next;
    }
    let total: usize = (0..=3).map(|h| module.graded_dim(h)).sum();
    assert_eq!(span_rank(&reached), total);
}
