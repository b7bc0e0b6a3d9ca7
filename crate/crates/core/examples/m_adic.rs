//! The m-adic acceptor: `x₁…x_k` has value `0.x_k…x₁` in base `m`.
//!
//! ```text
//! cargo run --example m_adic
//! ```

use monoidal_automata::gallery::{digits, m_adic};
use monoidal_automata::ratio;

fn main() -> monoidal_automata::Result<()> {
    let binary = m_adic(2)?;
    for ds in [&[1][..], &[0, 1], &[1, 0, 1], &[1, 1, 0, 1]] {
        let u = digits(ds);
        println!("{u:>5} -> {}", binary.acceptance_value(&u)?);
    }

    let cut = ratio(1, 2);
    let accepted = binary.enumerate_language(&cut, 4)?;
    let listed: Vec<String> = accepted.iter().map(ToString::to_string).collect();
    println!("L(A, 1/2) up to length 4: {}", listed.join(" "));

    let ternary = m_adic(3)?;
    println!("base 3: 21 -> {}", ternary.acceptance_value(&digits(&[2, 1]))?);
    Ok(())
}
