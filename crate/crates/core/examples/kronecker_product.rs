//! Cartesian products through Kronecker products: the value on `(u, v)` is
//! the product of the two factor values.

use monoidal_automata::closures::kronecker_product;
use monoidal_automata::gallery::{digits, halving, m_adic, product_madic_halving};
use monoidal_automata::{ratio, Word};

fn main() -> monoidal_automata::Result<()> {
    let (p, cut) = product_madic_halving(2)?;
    println!("{} states over {}, cut {cut}", p.states(), p.monoid());
    for (ds, i) in [(&[1][..], 1), (&[0, 1][..], 2), (&[1, 1][..], 3)] {
        let y = Word::from_atoms(&vec!["y"; i]);
        let w = Word::pair(&digits(ds), &y);
        println!("{w}: {}", p.acceptance_value(&w)?);
    }

    // With positive cut points the product language can exceed L₁ × L₂:
    // (1, yyy) has value 1/2 · 7/8 > 1/4 although 1/2 is not above 1/2.
    let w = Word::pair(&digits(&[1]), &Word::from_atoms(&["y", "y", "y"]));
    println!("{w} accepted at 1/4: {}", p.accepts(&cut, &w)?);

    // Cut points 0 give exactly L₁ × L₂.
    let zero = ratio(0, 1);
    let (exact, c) = kronecker_product(m_adic(2)?.as_generalized(), &zero, halving()?.as_generalized(), &zero)?;
    let w = Word::pair(&digits(&[0, 0]), &Word::from_atoms(&["y"]));
    println!("{w} accepted at 0: {}", exact.accepts(&c, &w)?);
    Ok(())
}
