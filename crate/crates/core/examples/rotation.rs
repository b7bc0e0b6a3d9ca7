//! Irrational data on the float backend: `x^n` has value `sin 2πnφ`.

use monoidal_automata::gallery::rotation;
use monoidal_automata::Word;

fn main() -> monoidal_automata::Result<()> {
    for phi in [1.0 / 12.0, 1.0 / 6.0, 0.25] {
        let a = rotation(phi)?;
        let accepted: Vec<usize> = (1..=24)
            .filter(|&n| a.accepts(&0.0, &Word::from_atoms(&vec!["x"; n])).unwrap_or(false))
            .collect();
        println!("φ = {phi:.4}: x^n accepted for n in {accepted:?}");
    }
    let a = rotation(0.1)?;
    let q = a.matrix_of_word(&Word::from_atoms(&vec!["x"; 5]))?;
    println!("R^5 at φ = 0.1 (half a turn): {q}");
    Ok(())
}
