//! The JSON document format shared with the command-line tool.

use monoidal_automata::document::{AutomatonDocument, Loaded};
use monoidal_automata::gallery::{fig1, m_adic};
use monoidal_automata::turakainen::full_pipeline;
use monoidal_automata::{ratio, MonoidSpec};

fn main() -> monoidal_automata::Result<()> {
    let binary = m_adic(2)?;
    let doc = AutomatonDocument::from_automaton(binary.as_generalized(), Some(&ratio(1, 2)));
    let text = doc.to_json();
    println!("{text}");

    match AutomatonDocument::from_json(&text)?.load()? {
        Loaded::Exact { automaton, cut } => {
            println!("reloaded: {} states, cut {cut:?}", automaton.states())
        }
        other => println!("unexpected: {other:?}"),
    }

    let boolean = AutomatonDocument::from_boolean(&fig1(MonoidSpec::free(&["x", "y"])?)?);
    println!("{}", boolean.to_json());

    let run = full_pipeline(binary.as_generalized(), &ratio(1, 2))?;
    let staged = AutomatonDocument::from_stage(&run.final_stage());
    println!("pipeline output: stage {:?}, {} states, constants {:?}", staged.stage, staged.states, staged.provenance.as_ref().map(|p| p.len()));
    Ok(())
}
