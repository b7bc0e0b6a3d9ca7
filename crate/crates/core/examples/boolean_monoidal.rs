//! Nondeterministic automata over arbitrary monoids: the same transition
//! graph read over the free and the free commutative monoid, a two-tape
//! example, and the regular operations.

use monoidal_automata::boolean::BooleanMonoidalAutomaton;
use monoidal_automata::gallery::{fig1, fig2_left};
use monoidal_automata::{MonoidSpec, Word};

fn show(name: &str, words: &[Word]) {
    let listed: Vec<String> = words.iter().map(ToString::to_string).collect();
    println!("{name}: {}", listed.join(" "));
}

fn main() -> monoidal_automata::Result<()> {
    let free = fig1(MonoidSpec::free(&["x", "y"])?)?;
    let commutative = fig1(MonoidSpec::commutative(&["x", "y"])?)?;
    show("odd y, free, |u| ≤ 3", &free.language(3)?);
    show("odd y, commutative, |u| ≤ 3", &commutative.language(3)?);

    let (matrices, cut) = commutative.to_generalized()?;
    println!("0/1 embedding has {} states, cut {cut}", matrices.states());

    let two_tape = fig2_left()?;
    show("(x^i y^j, z^i), total length ≤ 4", &two_tape.language(4)?);
    show("projection to the first tape, |u| ≤ 3", &two_tape.project_first()?.language(3)?);
    show("inverse relation, total length ≤ 3", &two_tape.inverse_relation()?.language(3)?);

    let star = free.star();
    show("(odd y)*, |u| ≤ 2", &star.language(2)?);
    let product = BooleanMonoidalAutomaton::cartesian_product(&free, &free);
    println!("L × L has {} states", product.states());
    Ok(())
}
