//! Generator matrices must respect the defining relations of the monoid.
//! Over `⟨x,y | xy = yx⟩` a commuting pair is accepted and a non-commuting
//! pair is rejected with both products.

use std::collections::BTreeMap;

use monoidal_automata::automaton::PostulateReport;
use monoidal_automata::gallery::{commutative_counter, noncommuting_pair};
use monoidal_automata::{
    ColVec, GeneralizedAutomaton, Generator, Matrix, MonoidSpec, Rational, RowVec, Word,
};

fn main() -> monoidal_automata::Result<()> {
    let counter = commutative_counter()?;
    println!("commuting family: {:?}", counter.check_extension_postulate());

    let pair = noncommuting_pair()?;
    if let PostulateReport::Violated { left, right, left_product, right_product } =
        pair.check_extension_postulate()
    {
        println!("{left} = {right} in the monoid, but");
        println!("  Q({left}) = {left_product}");
        println!("  Q({right}) = {right_product}");
    }

    // `new` refuses the same data outright.
    let rejected = GeneralizedAutomaton::new(
        MonoidSpec::commutative(&["x", "y"])?,
        pair.matrices().clone(),
        pair.initial().clone(),
        pair.final_vector().clone(),
    );
    println!("new: {}", rejected.unwrap_err());

    // Any relations work, not only commutation: here x² = e.
    let involution = MonoidSpec::presented(
        &["x"],
        vec![(Word::from_atoms(&["x", "x"]), Word::empty())],
    )?;
    let swap = GeneralizedAutomaton::new(
        involution,
        BTreeMap::from([(Generator::atom("x"), Matrix::<Rational>::from_integers(&[&[0, 1], &[1, 0]]))]),
        RowVec::unit(2, 0),
        ColVec::unit(2, 1),
    )?;
    println!("swap matrix over ⟨x | xx = e⟩: {:?}", swap.check_extension_postulate());
    Ok(())
}
