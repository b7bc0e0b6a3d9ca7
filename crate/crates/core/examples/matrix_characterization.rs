//! A language is a generalized language iff some matrix family has
//! `u ∈ L ⇔ Q(u)₁ₙ > 0` on non-empty words.

use monoidal_automata::gallery::{commutative_counter, m_adic};
use monoidal_automata::ratio;
use monoidal_automata::turakainen::{from_matrix_family, to_matrix_family};

fn main() -> monoidal_automata::Result<()> {
    // Q(x) = [[1,1],[0,1]], Q(y) = [[1,−1],[0,1]]: the corner entry of
    // Q(x^i y^j) is i − j.
    let counter = commutative_counter()?;
    let (a, cut) = from_matrix_family(counter.matrices().clone(), counter.monoid())?;
    let accepted: Vec<String> = a
        .enumerate_language(&cut, 4)?
        .iter()
        .map(ToString::to_string)
        .collect();
    println!("x^i y^j with i > j, up to length 4: {}", accepted.join(" "));

    // The converse direction borders a stochastic automaton.
    let binary = m_adic(2)?;
    let family = to_matrix_family(&binary, &ratio(1, 2))?;
    let (b, b_cut) = from_matrix_family(family, binary.monoid())?;
    for u in binary.monoid().enumerate_all(3)?.iter().filter(|u| !u.is_empty()) {
        println!(
            "{u:>3}: value {:<4} corner {:<5} member {}",
            binary.acceptance_value(u)?.to_string(),
            b.acceptance_value(u)?.to_string(),
            b.accepts(&b_cut, u)?
        );
    }
    Ok(())
}
