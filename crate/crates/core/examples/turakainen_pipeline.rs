//! Normalizes a generalized automaton with negative entries into a
//! stochastic automaton with the same cut-point language, stage by stage.

use std::collections::BTreeMap;

use monoidal_automata::turakainen::full_pipeline;
use monoidal_automata::{ratio, ColVec, GeneralizedAutomaton, Generator, Matrix, MonoidSpec, RowVec};

fn main() -> monoidal_automata::Result<()> {
    let a = GeneralizedAutomaton::new(
        MonoidSpec::free(&["a", "b"])?,
        BTreeMap::from([
            (
                Generator::atom("a"),
                Matrix::from_rows(vec![vec![ratio(1, 2), ratio(-1, 1)], vec![ratio(0, 1), ratio(2, 1)]])?,
            ),
            (
                Generator::atom("b"),
                Matrix::from_rows(vec![vec![ratio(-1, 1), ratio(0, 1)], vec![ratio(3, 4), ratio(1, 1)]])?,
            ),
        ]),
        RowVec(vec![ratio(1, 1), ratio(-1, 2)]),
        ColVec(vec![ratio(1, 1), ratio(1, 1)]),
    )?;
    let cut = ratio(1, 4);

    let run = full_pipeline(&a, &cut)?;
    for stage in &run.stages {
        let constants: Vec<String> = stage
            .provenance()
            .iter()
            .filter(|(k, _)| !k.starts_with("alpha_"))
            .map(|(k, v)| format!("{k}={v}"))
            .collect();
        println!(
            "{:<16} {:>4} states  cut {:<8} {}",
            stage.tag().to_string(),
            stage.automaton().states(),
            stage.cut().to_string(),
            constants.join(" ")
        );
    }
    println!("result: {} states, cut {}", run.result.states(), run.cut);

    let mut agree = 0;
    let words = a.monoid().enumerate_all(4)?;
    for u in &words {
        if a.accepts(&cut, u)? == run.result.accepts(&run.cut, u)? {
            agree += 1;
        }
    }
    println!("memberships agree on {agree}/{} words of length ≤ 4", words.len());
    Ok(())
}
