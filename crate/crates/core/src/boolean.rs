//! Classical (boolean) monoidal automata.
//!
//! Transitions carry a single generator or the identity. Longer labels given
//! to [`BooleanMonoidalAutomaton::new`] are split through fresh intermediate
//! states, which leaves the language unchanged.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};

use crate::automaton::GeneralizedAutomaton;
use crate::error::{Error, Result};
use crate::monoid::{Generator, MonoidMap, MonoidSpec, Word};
use crate::numerics::{ColVec, Matrix, Rational, RowVec};

/// A transition label: one generator, or `None` for the identity.
pub type Label = Option<Generator>;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Transition {
    pub from: usize,
    pub label: Label,
    pub to: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BooleanMonoidalAutomaton {
    monoid: MonoidSpec,
    states: usize,
    initial: BTreeSet<usize>,
    final_states: BTreeSet<usize>,
    transitions: BTreeSet<Transition>,
}

impl BooleanMonoidalAutomaton {
    /// Builds an automaton from word-labelled transitions. A label of length
    /// `k > 1` becomes a chain through `k − 1` fresh states, numbered after
    /// the declared ones.
    pub fn new(
        monoid: MonoidSpec,
        states: usize,
        initial: impl IntoIterator<Item = usize>,
        final_states: impl IntoIterator<Item = usize>,
        transitions: impl IntoIterator<Item = (usize, Word, usize)>,
    ) -> Result<Self> {
        let mut a = BooleanMonoidalAutomaton {
            monoid,
            states,
            initial: initial.into_iter().collect(),
            final_states: final_states.into_iter().collect(),
            transitions: BTreeSet::new(),
        };
        for &s in a.initial.iter().chain(&a.final_states) {
            a.check_state(s)?;
        }
        for (from, label, to) in transitions {
            a.check_state(from)?;
            a.check_state(to)?;
            a.monoid.check_word(&label)?;
            a.add_path(from, &label, to);
        }
        Ok(a)
    }

    fn check_state(&self, state: usize) -> Result<()> {
        if state < self.states {
            Ok(())
        } else {
            Err(Error::StateOutOfRange {
                state,
                states: self.states,
            })
        }
    }

    fn add_path(&mut self, from: usize, label: &Word, to: usize) {
        let symbols = label.symbols();
        if symbols.is_empty() {
            self.transitions.insert(Transition {
                from,
                label: None,
                to,
            });
            return;
        }
        let mut current = from;
        for (k, g) in symbols.iter().enumerate() {
            let next = if k + 1 == symbols.len() {
                to
            } else {
                self.states += 1;
                self.states - 1
            };
            self.transitions.insert(Transition {
                from: current,
                label: Some(g.clone()),
                to: next,
            });
            current = next;
        }
    }

    pub fn monoid(&self) -> &MonoidSpec {
        &self.monoid
    }

    pub fn states(&self) -> usize {
        self.states
    }

    pub fn initial(&self) -> &BTreeSet<usize> {
        &self.initial
    }

    pub fn final_states(&self) -> &BTreeSet<usize> {
        &self.final_states
    }

    pub fn transitions(&self) -> &BTreeSet<Transition> {
        &self.transitions
    }

    pub fn has_identity_labels(&self) -> bool {
        self.transitions.iter().any(|t| t.label.is_none())
    }

    /// Membership in `L(A) = {u | (i,u,f) ∈ Δ* for some i ∈ I, f ∈ F}`,
    /// searched directly over pairs (state, left divisor of `u`). Needs
    /// normal forms for the monoid.
    pub fn accepts_boolean(&self, u: &Word) -> Result<bool> {
        let target = self.monoid.normal_form(u)?;
        let mut seen: HashSet<(usize, Word)> = HashSet::new();
        let mut queue: VecDeque<(usize, Word)> = VecDeque::new();
        for &i in &self.initial {
            if seen.insert((i, Word::empty())) {
                queue.push_back((i, Word::empty()));
            }
        }
        let mut outgoing: BTreeMap<usize, Vec<&Transition>> = BTreeMap::new();
        for t in &self.transitions {
            outgoing.entry(t.from).or_default().push(t);
        }
        while let Some((s, prefix)) = queue.pop_front() {
            if self.final_states.contains(&s) && prefix == target {
                return Ok(true);
            }
            for t in outgoing.get(&s).into_iter().flatten() {
                let next = match &t.label {
                    None => prefix.clone(),
                    Some(g) => {
                        let p = self.monoid.normal_form(&prefix.pushed(g.clone()))?;
                        if !self.monoid.is_left_divisor(&p, &target)? {
                            continue;
                        }
                        p
                    }
                };
                if seen.insert((t.to, next.clone())) {
                    queue.push_back((t.to, next));
                }
            }
        }
        Ok(false)
    }

    /// Accepted monoid elements with representatives of length at most
    /// `max_len`, in enumeration order.
    pub fn language(&self, max_len: usize) -> Result<Vec<Word>> {
        let mut out = Vec::new();
        for w in self.monoid.enumerate_all(max_len)? {
            if self.accepts_boolean(&w)? {
                out.push(w);
            }
        }
        Ok(out)
    }

    /// Reflexive-transitive closure of the identity-labelled transitions.
    pub(crate) fn identity_closure(&self) -> Vec<Vec<bool>> {
        let n = self.states;
        let mut reach = vec![vec![false; n]; n];
        for (s, row) in reach.iter_mut().enumerate() {
            row[s] = true;
        }
        for t in self.transitions.iter().filter(|t| t.label.is_none()) {
            reach[t.from][t.to] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if reach[i][k] {
                    for j in 0..n {
                        if reach[k][j] {
                            reach[i][j] = true;
                        }
                    }
                }
            }
        }
        reach
    }

    /// 0/1 embedding with cut point 0: `Q(x)_{ij} = 1` iff `s_j` is reachable
    /// from `s_i` by one `x` step followed by identity steps, and `π` marks
    /// the states reachable from `I` by identity steps. Fails when the 0/1
    /// matrices violate a defining relation of the monoid.
    pub fn to_generalized(&self) -> Result<(GeneralizedAutomaton<Rational>, Rational)> {
        let n = self.states;
        let closure = self.identity_closure();
        let one = || Rational::from_integer(1.into());
        let mut matrices: BTreeMap<Generator, Matrix<Rational>> = self
            .monoid
            .generators()
            .into_iter()
            .map(|g| (g, Matrix::zeros(n, n)))
            .collect();
        for t in &self.transitions {
            if let Some(g) = &t.label {
                let m = matrices.get_mut(g).expect("labels are generators");
                for (j, &reach) in closure[t.to].iter().enumerate() {
                    if reach {
                        m.set(t.from, j, one());
                    }
                }
            }
        }
        let mut pi = RowVec(vec![Rational::default(); n]);
        for &i in &self.initial {
            for (j, &reach) in closure[i].iter().enumerate() {
                if reach {
                    pi.0[j] = one();
                }
            }
        }
        let mut f = ColVec(vec![Rational::default(); n]);
        for &s in &self.final_states {
            f.0[s] = one();
        }
        let a = GeneralizedAutomaton::new(self.monoid.clone(), matrices, pi, f)?;
        Ok((a, Rational::default()))
    }

    /// `Δ′ = {(s, φ(x), s′)}`; the language becomes `φ(L(A))`.
    pub fn homomorphic_image(&self, phi: &MonoidMap) -> Result<Self> {
        if phi.is_anti() {
            return Err(Error::InvalidParameter(
                "homomorphic images need a homomorphism, not an anti-homomorphism".into(),
            ));
        }
        if phi.source() != &self.monoid {
            return Err(Error::MonoidMismatch);
        }
        let mut labelled = Vec::new();
        for t in &self.transitions {
            let image = match &t.label {
                None => Word::empty(),
                Some(g) => phi.apply(&Word::single(g.clone()))?,
            };
            labelled.push((t.from, image, t.to));
        }
        BooleanMonoidalAutomaton::new(
            phi.target().clone(),
            self.states,
            self.initial.iter().copied(),
            self.final_states.iter().copied(),
            labelled,
        )
    }

    fn same_monoid(&self, other: &Self) -> Result<()> {
        if self.monoid == other.monoid {
            Ok(())
        } else {
            Err(Error::MonoidMismatch)
        }
    }

    fn shifted(&self, offset: usize) -> impl Iterator<Item = Transition> + '_ {
        self.transitions.iter().map(move |t| Transition {
            from: t.from + offset,
            label: t.label.clone(),
            to: t.to + offset,
        })
    }

    pub fn union(&self, other: &Self) -> Result<Self> {
        self.same_monoid(other)?;
        let k = self.states;
        Ok(BooleanMonoidalAutomaton {
            monoid: self.monoid.clone(),
            states: k + other.states,
            initial: self
                .initial
                .iter()
                .copied()
                .chain(other.initial.iter().map(|s| s + k))
                .collect(),
            final_states: self
                .final_states
                .iter()
                .copied()
                .chain(other.final_states.iter().map(|s| s + k))
                .collect(),
            transitions: self.shifted(0).chain(other.shifted(k)).collect(),
        })
    }

    /// Monoidal product `L(A) ∘ L(B)`: identity steps from every final state
    /// of `A` to every initial state of `B`.
    pub fn concat(&self, other: &Self) -> Result<Self> {
        self.same_monoid(other)?;
        let k = self.states;
        let mut transitions: BTreeSet<Transition> =
            self.shifted(0).chain(other.shifted(k)).collect();
        for &f in &self.final_states {
            for &i in &other.initial {
                transitions.insert(Transition {
                    from: f,
                    label: None,
                    to: i + k,
                });
            }
        }
        Ok(BooleanMonoidalAutomaton {
            monoid: self.monoid.clone(),
            states: k + other.states,
            initial: self.initial.clone(),
            final_states: other.final_states.iter().map(|s| s + k).collect(),
            transitions,
        })
    }

    /// Monoidal Kleene star through a fresh hub state that is both initial
    /// and final.
    pub fn star(&self) -> Self {
        let hub = self.states;
        let mut transitions: BTreeSet<Transition> = self.shifted(0).collect();
        for &i in &self.initial {
            transitions.insert(Transition {
                from: hub,
                label: None,
                to: i,
            });
        }
        for &f in &self.final_states {
            transitions.insert(Transition {
                from: f,
                label: None,
                to: hub,
            });
        }
        BooleanMonoidalAutomaton {
            monoid: self.monoid.clone(),
            states: hub + 1,
            initial: BTreeSet::from([hub]),
            final_states: BTreeSet::from([hub]),
            transitions,
        }
    }

    /// `Δ′ = {(s, (y,x), s′) | (s, (x,y), s′) ∈ Δ}` over the swapped product.
    pub fn inverse_relation(&self) -> Result<Self> {
        let monoid = self.monoid.swapped()?;
        let mut transitions = BTreeSet::new();
        for t in &self.transitions {
            let label = match &t.label {
                None => None,
                Some(g) => Some(
                    g.swap_tapes()
                        .ok_or(crate::monoid::MonoidError::NotProduct)?,
                ),
            };
            transitions.insert(Transition {
                from: t.from,
                label,
                to: t.to,
            });
        }
        Ok(BooleanMonoidalAutomaton {
            monoid,
            transitions,
            ..self.clone()
        })
    }

    /// `Δ′ = {(s, x₁, s′) | (s, (x₁,x₂), s′) ∈ Δ}`; right-tape steps become
    /// identity steps.
    pub fn project_first(&self) -> Result<Self> {
        let (left, _) = self.monoid.factors()?;
        let mut transitions = BTreeSet::new();
        for t in &self.transitions {
            let label = match &t.label {
                Some(Generator::Left(g)) => Some((**g).clone()),
                Some(Generator::Right(_)) | None => None,
                Some(g @ Generator::Atom(_)) => {
                    return Err(crate::monoid::MonoidError::UnknownGenerator(g.clone()).into())
                }
            };
            transitions.insert(Transition {
                from: t.from,
                label,
                to: t.to,
            });
        }
        Ok(BooleanMonoidalAutomaton {
            monoid: left.clone(),
            transitions,
            ..self.clone()
        })
    }

    /// Automaton over `M₁ × M₂` accepting `L(A₁) × L(A₂)`. State `(s₁,s₂)`
    /// is numbered `s₁·|S₂| + s₂`. Besides the synchronous steps
    /// `((s₁,s₂), (x₁,x₂), (s₁′,s₂′))` each factor may also move alone, so
    /// that component words of different lengths combine.
    pub fn cartesian_product(a1: &Self, a2: &Self) -> Self {
        let n2 = a2.states;
        let id = |s1: usize, s2: usize| s1 * n2 + s2;
        let monoid = MonoidSpec::product(a1.monoid.clone(), a2.monoid.clone());
        let raw = |label: &Label| -> Word {
            label.iter().cloned().collect()
        };
        let none = Word::empty();
        let mut labelled = Vec::new();
        for t1 in &a1.transitions {
            for t2 in &a2.transitions {
                let label = Word::pair(&raw(&t1.label), &raw(&t2.label));
                labelled.push((id(t1.from, t2.from), label, id(t1.to, t2.to)));
            }
            for s2 in 0..n2 {
                labelled.push((id(t1.from, s2), Word::pair(&raw(&t1.label), &none), id(t1.to, s2)));
            }
        }
        for t2 in &a2.transitions {
            for s1 in 0..a1.states {
                labelled.push((id(s1, t2.from), Word::pair(&none, &raw(&t2.label)), id(s1, t2.to)));
            }
        }
        let pairs = |x: &BTreeSet<usize>, y: &BTreeSet<usize>| -> Vec<usize> {
            x.iter()
                .flat_map(|&s1| y.iter().map(move |&s2| id(s1, s2)))
                .collect()
        };
        BooleanMonoidalAutomaton::new(
            monoid,
            a1.states * n2,
            pairs(&a1.initial, &a2.initial),
            pairs(&a1.final_states, &a2.final_states),
            labelled,
        )
        .expect("product states and labels are in range")
    }
}
