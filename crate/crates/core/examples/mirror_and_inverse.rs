//! Mirror images transpose everything; inverse relations swap the tapes of
//! a two-tape automaton.

use monoidal_automata::closures::{inverse_relation_generalized, mirror};
use monoidal_automata::gallery::{digits, m_adic, two_tape_counter};
use monoidal_automata::ratio;

fn main() -> monoidal_automata::Result<()> {
    let binary = m_adic(2)?;
    let (mirrored, _) = mirror(&binary, &ratio(1, 2))?;
    for ds in [&[1, 1, 0][..], &[0, 0, 1], &[1, 0, 0, 0]] {
        let u = digits(ds);
        println!(
            "value({u}) = {}, mirror value({}) = {}",
            binary.acceptance_value(&u)?,
            u.reversed(),
            mirrored.acceptance_value(&u.reversed())?
        );
    }

    let counter = two_tape_counter()?;
    let zero = ratio(0, 1);
    let (swapped, cut) = inverse_relation_generalized(&counter, &zero)?;
    println!("inverse relation over {}", swapped.monoid());
    for w in swapped.monoid().enumerate_pairs(1, 2)? {
        println!("{w}: {}", swapped.accepts(&cut, &w)?);
    }
    Ok(())
}
