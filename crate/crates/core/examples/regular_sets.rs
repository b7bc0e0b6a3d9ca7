//! Union, intersection and difference of a stochastic language with a
//! regular language, all realized by one block-diagonal stochastic automaton.

use monoidal_automata::boolean::BooleanMonoidalAutomaton;
use monoidal_automata::closures::{combine_with_regular, DeterministicAcceptor, RegularMode};
use monoidal_automata::gallery::{digits, m_adic};
use monoidal_automata::{ratio, MonoidSpec};

fn main() -> monoidal_automata::Result<()> {
    let binary = m_adic(2)?;
    let cut = ratio(1, 2);

    // Nondeterministic "contains 00", determinized by subset construction.
    let nfa = BooleanMonoidalAutomaton::new(
        MonoidSpec::free(&["0", "1"])?,
        3,
        [0],
        [2],
        [
            (0, digits(&[0]), 0),
            (0, digits(&[1]), 0),
            (0, digits(&[0]), 1),
            (1, digits(&[0]), 2),
            (2, digits(&[0]), 2),
            (2, digits(&[1]), 2),
        ],
    )?;
    let regular = DeterministicAcceptor::determinize(&nfa)?;
    println!("determinized to {} states", regular.as_boolean().states());

    for mode in [RegularMode::Union, RegularMode::Intersection, RegularMode::Difference] {
        let (c, c_cut) = combine_with_regular(&binary, &cut, &regular, mode)?;
        let words: Vec<String> = c
            .enumerate_language(&c_cut, 4)?
            .iter()
            .map(ToString::to_string)
            .collect();
        println!("{mode:<9} cut {c_cut:<4} {}", words.join(" "));
    }
    Ok(())
}
