//! Closure constructions on generalized and stochastic automata.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use crate::automaton::{GeneralizedAutomaton, IsolationGap, StochasticAutomaton};
use crate::boolean::{BooleanMonoidalAutomaton, Transition};
use crate::error::{Error, Result};
use crate::monoid::{Generator, MonoidError, MonoidSpec, Word};
use crate::numerics::{ColVec, Matrix, RowVec, Scalar};

/// A boolean automaton with one initial state, no identity steps and exactly
/// one transition per state and generator. Its 0/1 embedding has a single 1
/// in every matrix row and a unit initial vector, so its acceptance value is
/// always 0 or 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeterministicAcceptor(BooleanMonoidalAutomaton);

impl DeterministicAcceptor {
    pub fn new(automaton: BooleanMonoidalAutomaton) -> Result<Self> {
        if automaton.initial().len() != 1 {
            return Err(Error::NotDeterministic(format!(
                "{} initial states",
                automaton.initial().len()
            )));
        }
        if automaton.has_identity_labels() {
            return Err(Error::NotDeterministic("identity-labelled transition".into()));
        }
        let mut count: BTreeMap<(usize, &Generator), usize> = BTreeMap::new();
        for t in automaton.transitions() {
            if let Some(g) = &t.label {
                *count.entry((t.from, g)).or_default() += 1;
            }
        }
        for s in 0..automaton.states() {
            for g in &automaton.monoid().generators() {
                match count.get(&(s, g)).copied().unwrap_or(0) {
                    1 => {}
                    c => {
                        return Err(Error::NotDeterministic(format!(
                            "state {s} has {c} transitions on {g}"
                        )))
                    }
                }
            }
        }
        Ok(DeterministicAcceptor(automaton))
    }

    /// Subset construction. Only defined over free monoids, where runs are
    /// determined by the generator sequence.
    pub fn determinize(b: &BooleanMonoidalAutomaton) -> Result<Self> {
        if !b.monoid().defining_relations().is_empty() {
            return Err(Error::NotDeterministic(
                "subset construction needs a free monoid".into(),
            ));
        }
        let closure = b.identity_closure();
        let close = |set: &BTreeSet<usize>| -> BTreeSet<usize> {
            set.iter()
                .flat_map(|&s| {
                    closure[s]
                        .iter()
                        .enumerate()
                        .filter(|(_, &r)| r)
                        .map(|(j, _)| j)
                })
                .collect()
        };
        let gens = b.monoid().generators();
        let start = close(b.initial());
        let mut index: BTreeMap<BTreeSet<usize>, usize> = BTreeMap::from([(start.clone(), 0)]);
        let mut order = vec![start];
        let mut transitions = Vec::new();
        let mut k = 0;
        while k < order.len() {
            let current = order[k].clone();
            for g in &gens {
                let step: BTreeSet<usize> = b
                    .transitions()
                    .iter()
                    .filter(|t| current.contains(&t.from) && t.label.as_ref() == Some(g))
                    .map(|t| t.to)
                    .collect();
                let next = close(&step);
                let id = *index.entry(next.clone()).or_insert_with(|| {
                    order.push(next);
                    order.len() - 1
                });
                transitions.push((k, Word::single(g.clone()), id));
            }
            k += 1;
        }
        let finals: Vec<usize> = order
            .iter()
            .enumerate()
            .filter(|(_, set)| set.iter().any(|s| b.final_states().contains(s)))
            .map(|(i, _)| i)
            .collect();
        let automaton =
            BooleanMonoidalAutomaton::new(b.monoid().clone(), order.len(), [0], finals, transitions)?;
        DeterministicAcceptor::new(automaton)
    }

    pub fn as_boolean(&self) -> &BooleanMonoidalAutomaton {
        &self.0
    }

    pub fn monoid(&self) -> &MonoidSpec {
        self.0.monoid()
    }

    /// Same transitions with the final states flipped.
    pub fn complement(&self) -> Self {
        let a = &self.0;
        let finals: Vec<usize> = (0..a.states())
            .filter(|s| !a.final_states().contains(s))
            .collect();
        let transitions = a
            .transitions()
            .iter()
            .map(|t| (t.from, t.label.iter().cloned().collect::<Word>(), t.to));
        let flipped = BooleanMonoidalAutomaton::new(
            a.monoid().clone(),
            a.states(),
            a.initial().iter().copied(),
            finals,
            transitions,
        )
        .expect("same states and labels");
        DeterministicAcceptor(flipped)
    }

    /// The 0/1 embedding on any backend; fails if the monoid's relations are
    /// violated by the transition matrices.
    pub fn to_generalized<T: Scalar>(&self) -> Result<GeneralizedAutomaton<T>> {
        let a = &self.0;
        let n = a.states();
        let mut matrices: BTreeMap<Generator, Matrix<T>> = a
            .monoid()
            .generators()
            .into_iter()
            .map(|g| (g, Matrix::zeros(n, n)))
            .collect();
        for Transition { from, label, to } in a.transitions() {
            let g = label.as_ref().expect("no identity steps");
            matrices
                .get_mut(g)
                .expect("labels are generators")
                .set(*from, *to, T::one());
        }
        let start = *a.initial().iter().next().expect("one initial state");
        let mut f = ColVec(vec![T::zero(); n]);
        for &s in a.final_states() {
            f.0[s] = T::one();
        }
        GeneralizedAutomaton::new(a.monoid().clone(), matrices, RowVec::unit(n, start), f)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RegularMode {
    Union,
    Intersection,
    Difference,
}

impl fmt::Display for RegularMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RegularMode::Union => "union",
            RegularMode::Intersection => "intersect",
            RegularMode::Difference => "diff",
        })
    }
}

impl FromStr for RegularMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "union" => Ok(RegularMode::Union),
            "intersect" | "intersection" => Ok(RegularMode::Intersection),
            "diff" | "difference" => Ok(RegularMode::Difference),
            _ => Err(Error::InvalidParameter(format!("unknown mode `{s}`"))),
        }
    }
}

fn check_unit_interval<T: Scalar>(cut: &T) -> Result<()> {
    if cut.is_negative() || cut.exceeds(&T::one()) {
        Err(Error::CutOutOfRange(cut.to_literal()))
    } else {
        Ok(())
    }
}

/// Combines a stochastic language with a regular one. The block automaton
/// `Q″ = diag(Q, Q′)`, `π″ = ½(π, π′)`, `f″ = (f; f′)` has value
/// `½(v + b)` with `b ∈ {0, 1}` the regular verdict, so cut `½λ` yields the
/// union and `½(λ+1)` the intersection. Difference intersects with the
/// complemented acceptor. For a union with `λ = 1` the stochastic language is
/// empty and the regular acceptor is returned with cut 0.
pub fn combine_with_regular<T: Scalar>(
    a: &StochasticAutomaton<T>,
    cut: &T,
    regular: &DeterministicAcceptor,
    mode: RegularMode,
) -> Result<(StochasticAutomaton<T>, T)> {
    if a.monoid() != regular.monoid() {
        return Err(Error::MonoidMismatch);
    }
    check_unit_interval(cut)?;
    let complemented;
    let operand = if mode == RegularMode::Difference {
        complemented = regular.complement();
        &complemented
    } else {
        regular
    };
    if mode == RegularMode::Union && cut.approx_eq(&T::one()) {
        return Ok((operand.to_generalized()?.into_stochastic()?, T::zero()));
    }
    let r = operand.to_generalized::<T>()?;
    let half = T::from_ratio(1, 2);
    let matrices = a
        .matrices()
        .iter()
        .map(|(g, q)| {
            let q2 = r.matrix(g).expect("same generators");
            (g.clone(), Matrix::block_diag(&[q, q2]))
        })
        .collect();
    let pi = RowVec(
        a.initial()
            .0
            .iter()
            .chain(&r.initial().0)
            .map(|p| p.mul_ref(&half))
            .collect(),
    );
    let f = ColVec(
        a.final_vector()
            .0
            .iter()
            .chain(&r.final_vector().0)
            .cloned()
            .collect(),
    );
    let combined = GeneralizedAutomaton::new(a.monoid().clone(), matrices, pi, f)?;
    let new_cut = match mode {
        RegularMode::Union => cut.mul_ref(&half),
        RegularMode::Intersection | RegularMode::Difference => {
            let mut c = cut.clone();
            c += &T::one();
            c.mul_ref(&half)
        }
    };
    Ok((combined.into_stochastic()?, new_cut))
}

/// Complement of an isolated stochastic language: `f̄ = 1 − f` and
/// `λ̄ = 1 − λ`. Row-stochasticity gives `πQ(u)f̄ = 1 − πQ(u)f`, so
/// `u` is accepted iff `πQ(u)f < λ`; isolation rules out `πQ(u)f = λ`.
/// The witness only certifies words up to its verified length.
pub fn complement_isolated<T: Scalar>(
    a: &StochasticAutomaton<T>,
    cut: &T,
    gap: &IsolationGap<T>,
) -> Result<(StochasticAutomaton<T>, T)> {
    if !gap.cut.approx_eq(cut) {
        return Err(Error::IsolationMismatch {
            witness: gap.cut.to_literal(),
            requested: cut.to_literal(),
        });
    }
    if !gap.delta.exceeds(&T::zero()) {
        return Err(Error::NonPositiveGap(gap.delta.to_literal()));
    }
    check_unit_interval(cut)?;
    let flip = |v: &T| {
        let mut c = T::one();
        c += &(-v.clone());
        c
    };
    let f = ColVec(a.final_vector().0.iter().map(flip).collect());
    let b = GeneralizedAutomaton::new(
        a.monoid().clone(),
        a.matrices().clone(),
        a.initial().clone(),
        f,
    )?;
    Ok((b.into_stochastic()?, flip(cut)))
}

/// `A′ = (Q(x)ᵀ, fᵀ, πᵀ)` over the opposite monoid, so that
/// `value′(reverse(u)) = value(u)`.
pub fn mirror<T: Scalar>(
    a: &GeneralizedAutomaton<T>,
    cut: &T,
) -> Result<(GeneralizedAutomaton<T>, T)> {
    let matrices = a
        .matrices()
        .iter()
        .map(|(g, q)| (g.clone(), q.transpose()))
        .collect();
    let b = GeneralizedAutomaton::new(
        a.monoid().opposite(),
        matrices,
        a.final_vector().transpose(),
        a.initial().transpose(),
    )?;
    Ok((b, cut.clone()))
}

/// `Q′((v,u)) = Q((u,v))` over the swapped product monoid.
pub fn inverse_relation_generalized<T: Scalar>(
    a: &GeneralizedAutomaton<T>,
    cut: &T,
) -> Result<(GeneralizedAutomaton<T>, T)> {
    let monoid = a.monoid().swapped()?;
    let mut matrices = BTreeMap::new();
    for (g, q) in a.matrices() {
        let swapped = g.swap_tapes().ok_or(MonoidError::NotProduct)?;
        matrices.insert(swapped, q.clone());
    }
    let b = GeneralizedAutomaton::new(
        monoid,
        matrices,
        a.initial().clone(),
        a.final_vector().clone(),
    )?;
    Ok((b, cut.clone()))
}

fn require_nonnegative<T: Scalar>(a: &GeneralizedAutomaton<T>, cut: &T, name: &str) -> Result<()> {
    let negative = |what: String, v: &T| Error::Negative {
        what,
        value: v.to_literal(),
    };
    for (g, q) in a.matrices() {
        if let Some(v) = q.entries().iter().find(|v| !v.is_nonnegative()) {
            return Err(negative(format!("Q({g}) of {name}"), v));
        }
    }
    if let Some(v) = a.initial().0.iter().find(|v| !v.is_nonnegative()) {
        return Err(negative(format!("initial vector of {name}"), v));
    }
    if let Some(v) = a.final_vector().0.iter().find(|v| !v.is_nonnegative()) {
        return Err(negative(format!("final vector of {name}"), v));
    }
    if !cut.is_nonnegative() {
        return Err(negative(format!("cut point of {name}"), cut));
    }
    Ok(())
}

/// Automaton over `M₁ × M₂` with `Q(x,e) = Q₁(x) ⊗ I`, `Q(e,y) = I ⊗ Q₂(y)`,
/// `π = π₁ ⊗ π₂`, `f = f₁ ⊗ f₂` and cut point `λ₁λ₂`, so that
/// `πQ(u,v)f = (π₁Q₁(u)f₁)(π₂Q₂(v)f₂)`.
///
/// All data must be non-negative. The product language always contains
/// `L₁ × L₂`; it equals `L₁ × L₂` when both cut points are 0, but for
/// positive cut points it may be larger, since `v₁v₂ > λ₁λ₂` does not force
/// `v₁ > λ₁` and `v₂ > λ₂`.
pub fn kronecker_product<T: Scalar>(
    a1: &GeneralizedAutomaton<T>,
    cut1: &T,
    a2: &GeneralizedAutomaton<T>,
    cut2: &T,
) -> Result<(GeneralizedAutomaton<T>, T)> {
    require_nonnegative(a1, cut1, "the left factor")?;
    require_nonnegative(a2, cut2, "the right factor")?;
    let i1 = Matrix::identity(a1.states());
    let i2 = Matrix::identity(a2.states());
    let mut matrices = BTreeMap::new();
    for (g, q) in a1.matrices() {
        matrices.insert(Generator::left(g.clone()), q.kronecker(&i2));
    }
    for (g, q) in a2.matrices() {
        matrices.insert(Generator::right(g.clone()), i1.kronecker(q));
    }
    let b = GeneralizedAutomaton::new(
        MonoidSpec::product(a1.monoid().clone(), a2.monoid().clone()),
        matrices,
        a1.initial().kronecker(a2.initial()),
        a1.final_vector().kronecker(a2.final_vector()),
    )?;
    Ok((b, cut1.mul_ref(cut2)))
}
