//! Properties of the boolean constructions, the normalization pipeline and
//! the closure constructions, against set-level oracles.

mod common;

use std::collections::BTreeMap;

use common::*;
use monoidal_automata::automaton::IsolationOutcome;
use monoidal_automata::boolean::BooleanMonoidalAutomaton;
use monoidal_automata::closures::{
    combine_with_regular, complement_isolated, kronecker_product, mirror, DeterministicAcceptor,
    RegularMode,
};
use monoidal_automata::turakainen::{
    acceptor_form, distribution_form, nonneg_form, stochastic_cut0_form, zero_sum_form,
};
use monoidal_automata::{
    ratio, ColVec, GeneralizedAutomaton, Generator, Matrix, MonoidSpec, Rational, RowVec, Word,
};
use proptest::prelude::*;

fn free_xy() -> MonoidSpec {
    MonoidSpec::free(&["x", "y"]).unwrap()
}

fn splits(u: &Word) -> impl Iterator<Item = (Word, Word)> + '_ {
    (0..=u.len()).map(|i| {
        (
            Word::new(u.symbols()[..i].to_vec()),
            Word::new(u.symbols()[i..].to_vec()),
        )
    })
}

/// `u ∈ L*` by dynamic programming over prefixes.
fn in_star(u: &Word, member: impl Fn(&Word) -> bool) -> bool {
    let n = u.len();
    let mut reach = vec![false; n + 1];
    reach[0] = true;
    for i in 0..n {
        if !reach[i] {
            continue;
        }
        for j in i + 1..=n {
            if member(&Word::new(u.symbols()[i..j].to_vec())) {
                reach[j] = true;
            }
        }
    }
    reach[n]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn boolean_acceptance_matches_embedding(seed in any::<u64>()) {
        let b = random_boolean(&mut rng(seed), free_xy());
        let (g, cut) = b.to_generalized().unwrap();
        for u in b.monoid().enumerate_all(5).unwrap() {
            prop_assert_eq!(b.accepts_boolean(&u).unwrap(), g.accepts(&cut, &u).unwrap(), "{}", u);
        }
    }

    #[test]
    fn regular_operations_match_sets(s1 in any::<u64>(), s2 in any::<u64>()) {
        let a = random_boolean(&mut rng(s1), free_xy());
        let b = random_boolean(&mut rng(s2), free_xy());
        let in_a = |u: &Word| a.accepts_boolean(u).unwrap();
        let in_b = |u: &Word| b.accepts_boolean(u).unwrap();
        let union = a.union(&b).unwrap();
        let concat = a.concat(&b).unwrap();
        let star = a.star();
        for u in free_xy().enumerate_all(5).unwrap() {
            prop_assert_eq!(union.accepts_boolean(&u).unwrap(), in_a(&u) || in_b(&u));
            let expected = splits(&u).any(|(v, w)| in_a(&v) && in_b(&w));
            prop_assert_eq!(concat.accepts_boolean(&u).unwrap(), expected, "{}", u);
            prop_assert_eq!(star.accepts_boolean(&u).unwrap(), in_star(&u, in_a), "{}", u);
        }
    }

    #[test]
    fn inverse_relation_is_an_involution(s1 in any::<u64>(), s2 in any::<u64>()) {
        let a = random_boolean(&mut rng(s1), MonoidSpec::free(&["x"]).unwrap());
        let b = random_boolean(&mut rng(s2), MonoidSpec::free(&["y"]).unwrap());
        let p = BooleanMonoidalAutomaton::cartesian_product(&a, &b);
        let twice = p.inverse_relation().unwrap().inverse_relation().unwrap();
        prop_assert_eq!(twice.transitions(), p.transitions());
        prop_assert_eq!(twice.monoid(), p.monoid());
    }

    #[test]
    fn cartesian_product_is_the_product_language(s1 in any::<u64>(), s2 in any::<u64>()) {
        let a = random_boolean(&mut rng(s1), MonoidSpec::free(&["x"]).unwrap());
        let b = random_boolean(&mut rng(s2), MonoidSpec::free(&["y"]).unwrap());
        let p = BooleanMonoidalAutomaton::cartesian_product(&a, &b);
        for w in p.monoid().enumerate_pairs(3, 3).unwrap() {
            let (u, v) = w.split_tapes().unwrap();
            let expected = a.accepts_boolean(&u).unwrap() && b.accepts_boolean(&v).unwrap();
            prop_assert_eq!(p.accepts_boolean(&w).unwrap(), expected, "{}", w);
        }
    }

    #[test]
    fn pipeline_state_counts_and_stochasticity(seed in any::<u64>()) {
        let (a, cut) = random_generalized(&mut rng(seed));
        let n = a.states();
        let s1 = zero_sum_form(&a, &cut).unwrap();
        let s2 = nonneg_form(&s1).unwrap();
        let s3 = stochastic_cut0_form(&s2).unwrap();
        let s4 = distribution_form(&s3).unwrap();
        let s5 = acceptor_form(&s4).unwrap();
        let k = 2 * n + 10;
        let counts: Vec<usize> = [&s1, &s2, &s3, &s4, &s5].iter().map(|s| s.automaton().states()).collect();
        prop_assert_eq!(counts, vec![n + 2, n + 3, n + 5, k, k * k]);
        for s in [&s3, &s4, &s5] {
            for q in s.automaton().matrices().values() {
                prop_assert!(q.is_row_stochastic().unwrap());
            }
        }
        for q in s1.automaton().matrices().values() {
            prop_assert!(q.row_sums().0.iter().all(|v| *v == ratio(0, 1)));
            prop_assert!(q.col_sums().0.iter().all(|v| *v == ratio(0, 1)));
        }
        for q in s2.automaton().matrices().values() {
            prop_assert!(q.is_nonnegative());
        }
    }

    #[test]
    fn pipeline_stages_keep_commutation(
        entries in proptest::collection::vec(-3i64..=3, 4),
        c1 in -2i64..=2,
        c0 in -2i64..=2,
        pf in proptest::collection::vec(-2i64..=2, 4),
        cut in -2i64..=2,
    ) {
        let q = Matrix::from_rows(vec![
            vec![ratio(entries[0], 1), ratio(entries[1], 1)],
            vec![ratio(entries[2], 1), ratio(entries[3], 1)],
        ]).unwrap();
        let y = q.mul(&q).unwrap().add(&q.scale(&ratio(c1, 1))).unwrap()
            .add(&Matrix::identity(2).scale(&ratio(c0, 1))).unwrap();
        let a = GeneralizedAutomaton::new(
            MonoidSpec::commutative(&["x", "y"]).unwrap(),
            BTreeMap::from([(Generator::atom("x"), q), (Generator::atom("y"), y)]),
            RowVec(vec![ratio(pf[0], 1), ratio(pf[1], 1)]),
            ColVec(vec![ratio(pf[2], 1), ratio(pf[3], 1)]),
        ).unwrap();
        let s1 = zero_sum_form(&a, &ratio(cut, 2)).unwrap();
        let s2 = nonneg_form(&s1).unwrap();
        let s3 = stochastic_cut0_form(&s2).unwrap();
        let s4 = distribution_form(&s3).unwrap();
        for s in [&s1, &s2, &s3, &s4] {
            prop_assert!(s.automaton().check_extension_postulate().holds(), "{}", s.tag());
        }
    }

    #[test]
    fn combine_matches_set_operations(s1 in any::<u64>(), s2 in any::<u64>()) {
        let (a, cut) = random_stochastic(&mut rng(s1));
        let s = a.clone().into_stochastic().unwrap();
        let nfa = random_boolean(&mut rng(s2), a.monoid().clone());
        let dfa = DeterministicAcceptor::determinize(&nfa).unwrap();
        for mode in [RegularMode::Union, RegularMode::Intersection, RegularMode::Difference] {
            let (c, c_cut) = combine_with_regular(&s, &cut, &dfa, mode).unwrap();
            for u in a.monoid().enumerate_all(5).unwrap() {
                let l = naive_value(&a, &u) > cut;
                let r = nfa.accepts_boolean(&u).unwrap();
                let expected = match mode {
                    RegularMode::Union => l || r,
                    RegularMode::Intersection => l && r,
                    RegularMode::Difference => l && !r,
                };
                prop_assert_eq!(c.accepts(&c_cut, &u).unwrap(), expected, "{} {}", mode, u);
            }
        }
    }

    #[test]
    fn complement_negates_within_the_verified_bound(seed in any::<u64>()) {
        let (a, cut) = random_stochastic(&mut rng(seed));
        let s = a.into_stochastic().unwrap();
        // Cases where some short word sits at the cut point are skipped.
        let delta = ratio(1, 1_000_000_000);
        if let IsolationOutcome::Verified(gap) = s.check_isolation(&cut, &delta, 4).unwrap() {
            let (c, c_cut) = complement_isolated(&s, &cut, &gap).unwrap();
            for u in s.monoid().enumerate_all(4).unwrap() {
                prop_assert_eq!(c.accepts(&c_cut, &u).unwrap(), !s.accepts(&cut, &u).unwrap());
            }
        }
    }

    #[test]
    fn mirror_transposes_values(seed in any::<u64>()) {
        let (a, cut) = random_generalized(&mut rng(seed));
        let (b, _) = mirror(&a, &cut).unwrap();
        for u in a.monoid().enumerate_all(4).unwrap() {
            prop_assert_eq!(b.acceptance_value(&u.reversed()).unwrap(), naive_value(&a, &u));
        }
    }

    #[test]
    fn kronecker_is_bilinear(s1 in any::<u64>(), s2 in any::<u64>()) {
        let (a, ca) = random_stochastic(&mut rng(s1));
        let (b, cb) = random_stochastic(&mut rng(s2));
        let (p, _) = kronecker_product(&a, &ca, &b, &cb).unwrap();
        for w in p.monoid().enumerate_pairs(2, 2).unwrap() {
            let (u, v) = w.split_tapes().unwrap();
            let expected = a.matrix_of_word(&u).unwrap().kronecker(&b.matrix_of_word(&v).unwrap());
            prop_assert_eq!(p.matrix_of_word(&w).unwrap(), expected, "{}", w);
            let value: Rational = naive_value(&a, &u) * naive_value(&b, &v);
            prop_assert_eq!(p.acceptance_value(&w).unwrap(), value);
        }
    }
}

#[test]
fn commuting_pipeline_input_survives_full_normalization() {
    let a = monoidal_automata::gallery::commutative_counter().unwrap();
    let run = monoidal_automata::turakainen::full_pipeline(&a, &ratio(0, 1)).unwrap();
    assert!(run.result.check_extension_postulate().holds());
    for u in a.monoid().enumerate_all(4).unwrap() {
        assert_eq!(
            a.accepts(&ratio(0, 1), &u).unwrap(),
            run.result.accepts(&run.cut, &u).unwrap(),
            "{u}"
        );
    }
}
