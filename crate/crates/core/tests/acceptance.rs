//! The ten acceptance criteria. Runs without the libtest harness so that
//! every criterion prints exactly one PASS/FAIL line.

mod common;

use std::panic;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::*;
use monoidal_automata::automaton::{IsolationOutcome, PostulateReport};
use monoidal_automata::boolean::BooleanMonoidalAutomaton;
use monoidal_automata::closures::{
    combine_with_regular, complement_isolated, inverse_relation_generalized, kronecker_product,
    mirror, DeterministicAcceptor, RegularMode,
};
use monoidal_automata::gallery;
use monoidal_automata::turakainen::{
    acceptor_form, adjoin_empty_word, distribution_form, from_matrix_family, full_pipeline,
    nonneg_form, stochastic_cut0_form, to_matrix_family, zero_sum_form, PipelineStage,
};
use monoidal_automata::{ratio, GeneralizedAutomaton, Matrix, MonoidSpec, Rational, Word};
use num_traits::{One, Pow, Signed};

type Check = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)*) => {
        if !$cond {
            return Err(format!($($msg)*));
        }
    };
}

fn ok<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn postulate_gate() -> Check {
    let good = ok(gallery::commutative_counter())?;
    ensure!(good.check_extension_postulate().holds(), "commuting family rejected");
    let bad = ok(gallery::noncommuting_pair())?;
    match bad.check_extension_postulate() {
        PostulateReport::Violated {
            left,
            right,
            left_product,
            right_product,
        } => {
            let xy = Matrix::<Rational>::from_integers(&[&[2, 1], &[1, 1]]);
            let yx = Matrix::<Rational>::from_integers(&[&[1, 1], &[1, 2]]);
            ensure!(
                left == atoms("xy") && right == atoms("yx"),
                "violated relation {left} = {right}"
            );
            ensure!(
                left_product == xy && right_product == yx,
                "products {left_product} and {right_product}"
            );
        }
        PostulateReport::Holds => return Err("non-commuting family accepted".into()),
    }
    Ok(())
}

fn m_adic_semantics() -> Check {
    for m in [2, 3] {
        let a = ok(gallery::m_adic(m))?;
        let words = ok(a.monoid().enumerate_all(10))?;
        let mut eval = a.evaluator();
        for u in &words {
            let value = ok(eval.value(u))?;
            let expected = m_adic_fraction(m, &digits_of(u));
            ensure!(value == expected, "m = {m}, {u}: {value} ≠ {expected}");
        }
    }
    Ok(())
}

fn values(a: &GeneralizedAutomaton<Rational>, words: &[Word]) -> Result<Vec<Rational>, String> {
    let mut eval = a.evaluator();
    words.iter().map(|u| ok(eval.value(u))).collect()
}

/// Checks `after(u) = map(before(u), |u|)` and equal membership on every
/// non-empty word.
fn stage_identity(
    name: &str,
    before: (&GeneralizedAutomaton<Rational>, &Rational),
    after: &PipelineStage,
    words: &[Word],
    map: impl Fn(&Rational, usize) -> Rational,
) -> Check {
    let old = values(before.0, words)?;
    let new = values(after.automaton(), words)?;
    for ((u, v), w) in words.iter().zip(&old).zip(&new) {
        if u.is_empty() {
            continue;
        }
        let expected = map(v, u.len());
        ensure!(*w == expected, "{name}: value({u}) = {w}, expected {expected}");
        ensure!(
            (v > before.1) == (w > after.cut()),
            "{name}: membership of {u} changed"
        );
    }
    Ok(())
}

fn constant(stage: &PipelineStage, key: &str) -> Result<Rational, String> {
    stage
        .constant(key)
        .cloned()
        .ok_or_else(|| format!("{} lacks constant {key}", stage.tag()))
}

fn pipeline_stage_identities() -> Check {
    let mut rng = rng(3);
    for case in 0..50 {
        let (a, cut) = random_generalized(&mut rng);
        let words = ok(a.monoid().enumerate_all(4))?;
        let tag = |e: String| format!("case {case}: {e}");

        let s1 = ok(zero_sum_form(&a, &cut))?;
        stage_identity("zero_sum", (&a, &cut), &s1, &words, |v, _| v.clone()).map_err(tag)?;
        let s2 = ok(nonneg_form(&s1))?;
        stage_identity("nonneg", (s1.automaton(), s1.cut()), &s2, &words, |v, _| v.clone())
            .map_err(tag)?;
        let s3 = ok(stochastic_cut0_form(&s2))?;
        let beta = constant(&s3, "beta")?;
        stage_identity("stochastic_cut0", (s2.automaton(), s2.cut()), &s3, &words, |v, k| {
            (v - s2.cut()) / Pow::pow(&beta, k)
        })
        .map_err(tag)?;
        let s4 = ok(distribution_form(&s3))?;
        let (r, t) = (constant(&s4, "R")?, constant(&s4, "t")?);
        stage_identity("distribution", (s3.automaton(), s3.cut()), &s4, &words, |v, _| {
            v / &r + &t
        })
        .map_err(tag)?;
        let s5 = ok(acceptor_form(&s4))?;
        let alpha = constant(&s5, "alpha")?;
        stage_identity("acceptor", (s4.automaton(), s4.cut()), &s5, &words, |v, _| v / &alpha)
            .map_err(tag)?;

        let stochastic = ok(s5.automaton().clone().into_stochastic())?;
        for want in [false, true] {
            let (b, c) = ok(adjoin_empty_word(&stochastic, s5.cut(), want))?;
            ensure!(b.accepts(&c, &Word::empty()) == Ok(want), "case {case}: ε adjunction");
            let adjoined = PipelineStage::from_parts(
                s5.tag(),
                b.into_generalized(),
                c.clone(),
                Default::default(),
            );
            if c == *s5.cut() {
                stage_identity("adjoin", (s5.automaton(), s5.cut()), &adjoined, &words, |v, _| {
                    v.clone()
                })
                .map_err(tag)?;
            } else {
                for u in words.iter().filter(|u| !u.is_empty()) {
                    ensure!(
                        !ok(adjoined.automaton().accepts(&c, u))?,
                        "case {case}: single-state replacement accepts {u}"
                    );
                }
            }
        }
    }
    Ok(())
}

fn turakainen_end_to_end() -> Check {
    let mut rng = rng(3);
    for case in 0..50 {
        let (a, cut) = random_generalized(&mut rng);
        let run = ok(full_pipeline(&a, &cut))?;
        ensure!(
            run.result.as_generalized().validate_stochastic().is_ok(),
            "case {case}: result not stochastic"
        );
        ensure!(
            !run.cut.is_negative() && run.cut <= Rational::one(),
            "case {case}: cut {}",
            run.cut
        );
        let n = a.states();
        let bound = (2 * n + 10) * (2 * n + 10) + 1;
        ensure!(
            run.result.states() <= bound,
            "case {case}: {} states > {bound}",
            run.result.states()
        );
        let words = ok(a.monoid().enumerate_all(4))?;
        let before = values(&a, &words)?;
        let after = values(run.result.as_generalized(), &words)?;
        for ((u, v), w) in words.iter().zip(&before).zip(&after) {
            ensure!(
                (v > &cut) == (w > &run.cut),
                "case {case}: membership of {u} differs"
            );
        }
    }
    Ok(())
}

fn matrix_round_trip() -> Check {
    let mut rng = rng(5);
    for case in 0..20 {
        let (a, cut) = random_stochastic(&mut rng);
        let s = ok(a.clone().into_stochastic())?;
        let family = ok(to_matrix_family(&s, &cut))?;
        let (b, c) = ok(from_matrix_family(family, a.monoid()))?;
        for u in ok(a.monoid().enumerate_all(4))?.iter().filter(|u| !u.is_empty()) {
            let expected = naive_value(&a, u) > cut;
            ensure!(
                ok(b.accepts(&c, u))? == expected,
                "case {case}: membership of {u} differs"
            );
        }
    }
    Ok(())
}

fn commutative_counter() -> Check {
    let counter = ok(gallery::commutative_counter())?;
    let (a, cut) = ok(from_matrix_family(counter.matrices().clone(), counter.monoid()))?;
    let mut accepted = 0;
    for u in ok(a.monoid().enumerate_all(8))?.iter().filter(|u| !u.is_empty()) {
        let (i, j) = (count(u, "x"), count(u, "y"));
        let expected = i > j;
        ensure!(ok(a.accepts(&cut, u))? == expected, "x^{i}y^{j}");
        accepted += usize::from(expected);
    }
    // Pairs i > j ≥ 0 with i + j ≤ 8.
    ensure!(accepted == 20, "{accepted} accepted normal forms");
    Ok(())
}

fn dfa(accepting: impl Fn(usize) -> bool, step: impl Fn(usize, u32) -> usize, n: usize) -> DeterministicAcceptor {
    let mut transitions = Vec::new();
    for s in 0..n {
        for d in 0..2 {
            transitions.push((s, gallery::digits(&[d]), step(s, d)));
        }
    }
    let finals: Vec<usize> = (0..n).filter(|s| accepting(*s)).collect();
    let b = BooleanMonoidalAutomaton::new(
        MonoidSpec::free(&["0", "1"]).unwrap(),
        n,
        [0],
        finals,
        transitions,
    )
    .unwrap();
    DeterministicAcceptor::new(b).unwrap()
}

fn closure_oracles() -> Check {
    let madic = ok(gallery::m_adic(2))?;
    let words = ok(madic.monoid().enumerate_all(4))?;
    // Even number of 1s; last digit 0.
    let regular: [(DeterministicAcceptor, fn(&[u32]) -> bool); 2] = [
        (
            dfa(|s| s == 0, |s, d| (s + d as usize) % 2, 2),
            |ds| ds.iter().filter(|d| **d == 1).count() % 2 == 0,
        ),
        (dfa(|s| s == 1, |_, d| 1 - d as usize, 2), |ds| ds.last() == Some(&0)),
    ];
    for cut in [ratio(0, 1), ratio(1, 3), ratio(1, 2), ratio(3, 4), ratio(1, 1)] {
        for (acceptor, predicate) in &regular {
            for mode in [RegularMode::Union, RegularMode::Intersection, RegularMode::Difference] {
                let (c, c_cut) = ok(combine_with_regular(&madic, &cut, acceptor, mode))?;
                for u in &words {
                    let ds = digits_of(u);
                    let l = m_adic_fraction(2, &ds) > cut;
                    let r = predicate(&ds);
                    let expected = match mode {
                        RegularMode::Union => l || r,
                        RegularMode::Intersection => l && r,
                        RegularMode::Difference => l && !r,
                    };
                    ensure!(
                        ok(c.accepts(&c_cut, u))? == expected,
                        "{mode} at cut {cut}: {u}"
                    );
                }
            }
        }
    }

    let mut rng = rng(7);
    let mut mirrored: Vec<(GeneralizedAutomaton<Rational>, Rational)> = (0..10)
        .map(|_| random_generalized(&mut rng))
        .collect();
    mirrored.push((ok(gallery::m_adic(3))?.into_generalized(), ratio(1, 2)));
    mirrored.push((ok(gallery::commutative_counter())?, ratio(0, 1)));
    for (a, cut) in &mirrored {
        let (b, b_cut) = ok(mirror(a, cut))?;
        for u in ok(a.monoid().enumerate_all(4))? {
            ensure!(
                ok(b.accepts(&b_cut, &u.reversed()))? == (naive_value(a, &u) > *cut),
                "mirror: {u}"
            );
        }
    }

    let counter = ok(gallery::two_tape_counter())?;
    let (inv, inv_cut) = ok(inverse_relation_generalized(&counter, &ratio(0, 1)))?;
    for w in ok(inv.monoid().enumerate_pairs(3, 3))? {
        let (z, xy) = ok(w.split_tapes())?;
        let expected = count(&xy, "x") + count(&xy, "y") > z.len();
        ensure!(ok(inv.accepts(&inv_cut, &w))? == expected, "inverse: {w}");
    }

    let halving = ok(gallery::halving())?;
    let (k0, k0_cut) = ok(kronecker_product(
        madic.as_generalized(),
        &ratio(0, 1),
        halving.as_generalized(),
        &ratio(0, 1),
    ))?;
    for w in ok(k0.monoid().enumerate_pairs(3, 3))? {
        let (u, v) = ok(w.split_tapes())?;
        let expected = digits_of(&u).contains(&1) && !v.is_empty();
        ensure!(ok(k0.accepts(&k0_cut, &w))? == expected, "product: {w}");
    }

    for m in [2, 3] {
        let (p, p_cut) = ok(gallery::product_madic_halving(m))?;
        ensure!(p_cut == ratio(1, 4), "product cut {p_cut}");
        let mut eval = p.evaluator();
        for w in ok(p.monoid().enumerate_pairs(5, 5))? {
            let (u, v) = ok(w.split_tapes())?;
            let halves = Rational::one() - Pow::pow(&ratio(1, 2), v.len());
            let expected = m_adic_fraction(m, &digits_of(&u)) * halves;
            let value = ok(eval.value(&w))?;
            ensure!(value == expected, "product value of {w}: {value} ≠ {expected}");
        }
    }
    Ok(())
}

fn complement_under_isolation() -> Check {
    let a = ok(gallery::m_adic(2))?;
    let cut = ratio(1, 3);
    let gap = match ok(a.check_isolation(&cut, &ratio(1, 192), 6))? {
        IsolationOutcome::Verified(gap) => gap,
        IsolationOutcome::Counterexample { word, value } => {
            return Err(format!("not isolated: {word} has value {value}"))
        }
    };
    let (c, c_cut) = ok(complement_isolated(&a, &cut, &gap))?;
    for u in ok(a.monoid().enumerate_all(6))? {
        ensure!(
            ok(c.accepts(&c_cut, &u))? != ok(a.accepts(&cut, &u))?,
            "complement of {u}"
        );
    }
    Ok(())
}

fn boolean_agreement(rejected: &mut usize) -> Check {
    let mut rng = rng(9);
    let free = MonoidSpec::free(&["x", "y"]).unwrap();
    let commutative = MonoidSpec::commutative(&["x", "y"]).unwrap();
    let mut corpus = Vec::new();
    for _ in 0..10 {
        corpus.push(random_boolean(&mut rng, free.clone()));
    }
    for _ in 0..10 {
        corpus.push(random_commuting_boolean(&mut rng));
    }
    // Arbitrary automata over the commutative monoid, kept only when their
    // 0/1 matrices satisfy xy = yx.
    while corpus.len() < 30 {
        let b = random_boolean(&mut rng, commutative.clone());
        if b.to_generalized().is_ok() {
            corpus.push(b);
        } else {
            *rejected += 1;
        }
    }
    for (case, b) in corpus.iter().enumerate() {
        let (g, cut) = ok(b.to_generalized())?;
        for u in ok(b.monoid().enumerate_all(5))? {
            ensure!(
                ok(b.accepts_boolean(&u))? == ok(g.accepts(&cut, &u))?,
                "case {case}: {u}"
            );
        }
    }
    Ok(())
}

fn rotation_fixture() -> Check {
    const TAU: f64 = 1e-9;
    for phi in [1.0 / 12.0, 0.25, 1.0 / 6.0] {
        let a = ok(gallery::rotation(phi))?;
        for n in 0..=24 {
            let u = Word::from_atoms(&vec!["x"; n]);
            let q = ok(a.matrix_of_word(&u))?;
            let angle = 2.0 * std::f64::consts::PI * n as f64 * phi;
            let (s, c) = angle.sin_cos();
            let expected = [[c, s], [-s, c]];
            for (i, row) in expected.iter().enumerate() {
                for (j, e) in row.iter().enumerate() {
                    ensure!(
                        (q.get(i, j) - e).abs() <= TAU,
                        "φ = {phi}, n = {n}: entry ({i},{j}) = {}",
                        q.get(i, j)
                    );
                }
            }
            if s.abs() > TAU {
                ensure!(ok(a.accepts(&0.0, &u))? == (s > 0.0), "φ = {phi}: x^{n}");
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let mut rejected = 0;
    let criteria: Vec<(&str, Duration, Box<dyn FnOnce() -> Check>)> = vec![
        ("postulate gate", Duration::from_secs(1), Box::new(postulate_gate)),
        ("m-adic semantics", Duration::from_secs(5), Box::new(m_adic_semantics)),
        ("pipeline stage identities", Duration::from_secs(60), Box::new(pipeline_stage_identities)),
        ("generalized Turakainen end-to-end", Duration::from_secs(120), Box::new(turakainen_end_to_end)),
        ("matrix characterization round trip", Duration::from_secs(60), Box::new(matrix_round_trip)),
        ("commutative counter", Duration::from_secs(60), Box::new(commutative_counter)),
        ("closure oracles", Duration::from_secs(60), Box::new(closure_oracles)),
        ("complement under isolation", Duration::from_secs(60), Box::new(complement_under_isolation)),
        ("boolean/matrix agreement", Duration::from_secs(60), Box::new(|| boolean_agreement(&mut rejected))),
        ("rotation fixture", Duration::from_secs(60), Box::new(rotation_fixture)),
    ];
    let mut failures = 0;
    for (i, (name, limit, check)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(panic::AssertUnwindSafe(check))
            .unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|()| {
            if elapsed <= limit {
                Ok(())
            } else {
                Err(format!("exceeded {limit:?}"))
            }
        });
        match outcome {
            Ok(()) => println!("criterion {:>2} PASS {name} ({elapsed:.2?})", i + 1),
            Err(e) => {
                failures += 1;
                println!("criterion {:>2} FAIL {name} ({elapsed:.2?}): {e}", i + 1);
            }
        }
    }
    println!("boolean corpus: {rejected} commutative samples rejected by the extension postulate");
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
