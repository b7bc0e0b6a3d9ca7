//! Homomorphic images: replacing `x, y` by `x², y²` squares the matrices,
//! `Q′(φ(u)) = Q(u)²`.

use std::collections::BTreeMap;

use monoidal_automata::automaton::{check_commuting_property, MatrixRule};
use monoidal_automata::gallery::commutative_counter;
use monoidal_automata::{Generator, MonoidMap, Word};

fn main() -> monoidal_automata::Result<()> {
    let a = commutative_counter()?;
    let spec = a.monoid().clone();
    let phi = MonoidMap::new(
        spec.clone(),
        spec,
        BTreeMap::from([
            (Generator::atom("x"), Word::from_atoms(&["x", "x"])),
            (Generator::atom("y"), Word::from_atoms(&["y", "y"])),
        ]),
        false,
    )?;
    let report = check_commuting_property(&a, &a, &phi, &MatrixRule::Power(2), 5)?;
    println!("Q(φ(u)) = Q(u)² on words up to length 5: {report:?}");
    println!("Q(xx) = {}", a.matrix_of_word(&Word::from_atoms(&["x", "x"]))?);

    let sample = a.matrix_monoid_sample(3);
    println!("H(A) has {} elements of length ≤ 3", sample.len());
    Ok(())
}
