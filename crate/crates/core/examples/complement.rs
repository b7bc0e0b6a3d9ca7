//! Complementing a stochastic language needs an isolated cut point. The
//! isolation check is bounded: it certifies words up to a length.

use monoidal_automata::automaton::IsolationOutcome;
use monoidal_automata::closures::complement_isolated;
use monoidal_automata::gallery::m_adic;
use monoidal_automata::ratio;

fn main() -> monoidal_automata::Result<()> {
    let binary = m_adic(2)?;
    let cut = ratio(1, 3);

    // Dyadic values of length ≤ 6 stay at least 1/192 away from 1/3.
    let gap = match binary.check_isolation(&cut, &ratio(1, 192), 6)? {
        IsolationOutcome::Verified(gap) => gap,
        IsolationOutcome::Counterexample { word, value } => {
            panic!("{word} has value {value}")
        }
    };
    let (complement, c_cut) = complement_isolated(&binary, &cut, &gap)?;
    println!("complement cut point: {c_cut}");
    for u in binary.monoid().enumerate_all(3)? {
        println!(
            "{u:>3}: in L {:<5} in complement {}",
            binary.accepts(&cut, &u)?,
            complement.accepts(&c_cut, &u)?
        );
    }

    // A cut point hit exactly by some value is reported, not complemented.
    if let IsolationOutcome::Counterexample { word, value } =
        binary.check_isolation(&ratio(1, 2), &ratio(1, 8), 4)?
    {
        println!("1/2 is not isolated: {word} has value {value}");
    }
    Ok(())
}
