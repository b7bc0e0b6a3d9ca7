//! Monoidal generalized automata and their stochastic refinement.
//!
//! An automaton assigns a square matrix to every generator of its monoid.
//! Words are evaluated as `π · Q(x₁) ⋯ Q(x_k) · f` and accepted when that
//! value strictly exceeds the cut point. The assignment only defines a monoid
//! homomorphism when the generator matrices satisfy every defining relation
//! (the extension postulate), which [`GeneralizedAutomaton::new`] verifies.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::monoid::{Generator, MonoidMap, MonoidSpec, Word};
use crate::numerics::{ColVec, Matrix, RowVec, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub struct GeneralizedAutomaton<T> {
    monoid: MonoidSpec,
    matrices: BTreeMap<Generator, Matrix<T>>,
    initial: RowVec<T>,
    final_vector: ColVec<T>,
}

/// Outcome of [`GeneralizedAutomaton::check_extension_postulate`].
#[derive(Clone, Debug, PartialEq)]
pub enum PostulateReport<T> {
    Holds,
    Violated {
        left: Word,
        right: Word,
        left_product: Matrix<T>,
        right_product: Matrix<T>,
    },
}

/// Rendered form of a failed relation, carried by [`Error::Postulate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PostulateViolation {
    pub left: Word,
    pub right: Word,
    pub left_product: String,
    pub right_product: String,
}

impl fmt::Display for PostulateViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} = {} but Q({}) = {} and Q({}) = {}",
            self.left, self.right, self.left, self.left_product, self.right, self.right_product
        )
    }
}

impl<T: Scalar> PostulateReport<T> {
    pub fn holds(&self) -> bool {
        matches!(self, PostulateReport::Holds)
    }

    pub fn into_result(self) -> Result<()> {
        match self {
            PostulateReport::Holds => Ok(()),
            PostulateReport::Violated {
                left,
                right,
                left_product,
                right_product,
            } => Err(Error::Postulate(Box::new(PostulateViolation {
                left,
                right,
                left_product: left_product.to_string(),
                right_product: right_product.to_string(),
            }))),
        }
    }
}

/// One reason an automaton fails to be stochastic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StochasticViolation {
    NegativeEntry {
        generator: Generator,
        row: usize,
        col: usize,
        value: String,
    },
    RowSum {
        generator: Generator,
        row: usize,
        sum: String,
    },
    NegativeInitial { index: usize, value: String },
    InitialSum { sum: String },
    NonBinaryFinal { index: usize, value: String },
}

impl fmt::Display for StochasticViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StochasticViolation::NegativeEntry {
                generator,
                row,
                col,
                value,
            } => write!(f, "Q({generator})[{row},{col}] = {value} is negative"),
            StochasticViolation::RowSum {
                generator,
                row,
                sum,
            } => write!(f, "row {row} of Q({generator}) sums to {sum}"),
            StochasticViolation::NegativeInitial { index, value } => {
                write!(f, "initial entry {index} = {value} is negative")
            }
            StochasticViolation::InitialSum { sum } => {
                write!(f, "initial vector sums to {sum}")
            }
            StochasticViolation::NonBinaryFinal { index, value } => {
                write!(f, "final entry {index} = {value} is not 0 or 1")
            }
        }
    }
}

/// A generalized automaton whose matrices are row-stochastic, whose initial
/// vector is a distribution and whose final vector is binary.
#[derive(Clone, Debug, PartialEq)]
pub struct StochasticAutomaton<T>(GeneralizedAutomaton<T>);

impl<T> StochasticAutomaton<T> {
    pub fn as_generalized(&self) -> &GeneralizedAutomaton<T> {
        &self.0
    }

    pub fn into_generalized(self) -> GeneralizedAutomaton<T> {
        self.0
    }
}

impl<T> std::ops::Deref for StochasticAutomaton<T> {
    type Target = GeneralizedAutomaton<T>;

    fn deref(&self) -> &Self::Target {
        &self.0
    }
}

/// Witness that `|cut − value(u)| ≥ delta` for every word up to a length.
/// Isolation over all words is undecidable in general; this only certifies
/// the enumerated range.
#[derive(Clone, Debug, PartialEq)]
pub struct IsolationGap<T> {
    pub cut: T,
    pub delta: T,
    pub verified_to_length: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub enum IsolationOutcome<T> {
    Verified(IsolationGap<T>),
    Counterexample { word: Word, value: T },
}

impl<T: Scalar> GeneralizedAutomaton<T> {
    /// Builds an automaton and verifies the extension postulate.
    pub fn new(
        monoid: MonoidSpec,
        matrices: BTreeMap<Generator, Matrix<T>>,
        initial: RowVec<T>,
        final_vector: ColVec<T>,
    ) -> Result<Self> {
        let automaton = Self::new_unchecked(monoid, matrices, initial, final_vector)?;
        automaton.check_extension_postulate().into_result()?;
        Ok(automaton)
    }

    /// Builds an automaton checking shapes only. Use
    /// [`Self::check_extension_postulate`] before trusting word values.
    pub fn new_unchecked(
        monoid: MonoidSpec,
        matrices: BTreeMap<Generator, Matrix<T>>,
        initial: RowVec<T>,
        final_vector: ColVec<T>,
    ) -> Result<Self> {
        let n = initial.len();
        if n == 0 {
            return Err(Error::Shape {
                what: "state set".into(),
                expected: 1,
                found: 0,
            });
        }
        if final_vector.len() != n {
            return Err(Error::Shape {
                what: "final vector".into(),
                expected: n,
                found: final_vector.len(),
            });
        }
        for g in monoid.generators() {
            if !matrices.contains_key(&g) {
                return Err(Error::MissingMatrix(g));
            }
        }
        for (g, m) in &matrices {
            if !monoid.contains(g) {
                return Err(Error::ForeignMatrix(g.clone()));
            }
            for (what, found) in [("rows", m.rows()), ("columns", m.cols())] {
                if found != n {
                    return Err(Error::Shape {
                        what: format!("{what} of Q({g})"),
                        expected: n,
                        found,
                    });
                }
            }
        }
        Ok(GeneralizedAutomaton {
            monoid,
            matrices,
            initial,
            final_vector,
        })
    }

    pub fn states(&self) -> usize {
        self.initial.len()
    }

    pub fn monoid(&self) -> &MonoidSpec {
        &self.monoid
    }

    pub fn matrices(&self) -> &BTreeMap<Generator, Matrix<T>> {
        &self.matrices
    }

    pub fn matrix(&self, g: &Generator) -> Option<&Matrix<T>> {
        self.matrices.get(g)
    }

    pub fn initial(&self) -> &RowVec<T> {
        &self.initial
    }

    pub fn final_vector(&self) -> &ColVec<T> {
        &self.final_vector
    }

    /// Generators in the monoid's declaration order.
    pub fn generators(&self) -> Vec<Generator> {
        self.monoid.generators()
    }

    /// Checks every defining relation `l = r` of the monoid against
    /// `Q(l) = Q(r)`. For products this includes the commutation of left and
    /// right generator matrices, which is equivalent to
    /// `Q(u,v) = Q(u,e)·Q(e,v)` for all component words.
    pub fn check_extension_postulate(&self) -> PostulateReport<T> {
        for (left, right) in self.monoid.defining_relations() {
            // relation words were validated when the monoid was built
            let (Ok(lp), Ok(rp)) = (self.matrix_of_word(&left), self.matrix_of_word(&right))
            else {
                unreachable!("relation words use declared generators");
            };
            if !lp.approx_eq(&rp) {
                return PostulateReport::Violated {
                    left,
                    right,
                    left_product: lp,
                    right_product: rp,
                };
            }
        }
        PostulateReport::Holds
    }

    /// `Q(u) = Q(x₁)⋯Q(x_k)`, with `Q(ε)` the identity.
    pub fn matrix_of_word(&self, u: &Word) -> Result<Matrix<T>> {
        let mut acc = Matrix::identity(self.states());
        for g in u.symbols() {
            let m = self
                .matrices
                .get(g)
                .ok_or_else(|| Error::MissingMatrix(g.clone()))?;
            acc = acc.mul(m)?;
        }
        Ok(acc)
    }

    pub fn acceptance_value(&self, u: &Word) -> Result<T> {
        self.evaluator().value(u)
    }

    /// Strict acceptance: `π Q(u) f > cut`.
    pub fn accepts(&self, cut: &T, u: &Word) -> Result<bool> {
        Ok(self.acceptance_value(u)?.exceeds(cut))
    }

    /// Evaluator that shares prefix products between words.
    pub fn evaluator(&self) -> Evaluator<'_, T> {
        Evaluator::new(self)
    }

    /// Values of all enumerated words up to `max_len`, in enumeration order.
    pub fn values_up_to(&self, max_len: usize) -> Result<Vec<(Word, T)>> {
        let words = self.monoid.enumerate_all(max_len)?;
        let mut eval = self.evaluator();
        words
            .into_iter()
            .map(|w| {
                let v = eval.value(&w)?;
                Ok((w, v))
            })
            .collect()
    }

    /// Accepted representatives of length at most `max_len`, length-lex order.
    pub fn enumerate_language(&self, cut: &T, max_len: usize) -> Result<Vec<Word>> {
        Ok(self
            .values_up_to(max_len)?
            .into_iter()
            .filter(|(_, v)| v.exceeds(cut))
            .map(|(w, _)| w)
            .collect())
    }

    pub fn stochastic_violations(&self) -> Vec<StochasticViolation> {
        let mut out = Vec::new();
        for (g, m) in &self.matrices {
            for i in 0..m.rows() {
                for (j, v) in m.row(i).iter().enumerate() {
                    if !v.is_nonnegative() {
                        out.push(StochasticViolation::NegativeEntry {
                            generator: g.clone(),
                            row: i,
                            col: j,
                            value: v.to_literal(),
                        });
                    }
                }
            }
            for (i, s) in m.row_sums().0.iter().enumerate() {
                if !s.approx_eq(&T::one()) {
                    out.push(StochasticViolation::RowSum {
                        generator: g.clone(),
                        row: i,
                        sum: s.to_literal(),
                    });
                }
            }
        }
        for (i, v) in self.initial.0.iter().enumerate() {
            if !v.is_nonnegative() {
                out.push(StochasticViolation::NegativeInitial {
                    index: i,
                    value: v.to_literal(),
                });
            }
        }
        let total = self.initial.sum();
        if !total.approx_eq(&T::one()) {
            out.push(StochasticViolation::InitialSum {
                sum: total.to_literal(),
            });
        }
        for (i, v) in self.final_vector.0.iter().enumerate() {
            if !(v.approx_eq(&T::zero()) || v.approx_eq(&T::one())) {
                out.push(StochasticViolation::NonBinaryFinal {
                    index: i,
                    value: v.to_literal(),
                });
            }
        }
        out
    }

    /// Refines to a [`StochasticAutomaton`] or lists every violation.
    pub fn validate_stochastic(
        &self,
    ) -> std::result::Result<StochasticAutomaton<T>, Vec<StochasticViolation>> {
        let violations = self.stochastic_violations();
        if violations.is_empty() {
            Ok(StochasticAutomaton(self.clone()))
        } else {
            Err(violations)
        }
    }

    /// Like [`Self::validate_stochastic`], consuming `self` and failing with
    /// [`Error::NotStochastic`].
    pub fn into_stochastic(self) -> Result<StochasticAutomaton<T>> {
        let violations = self.stochastic_violations();
        if violations.is_empty() {
            Ok(StochasticAutomaton(self))
        } else {
            Err(Error::NotStochastic(violations))
        }
    }

    /// Bounded isolation check: every word of length at most `max_len` keeps
    /// a distance of at least `delta` from the cut point.
    pub fn check_isolation(
        &self,
        cut: &T,
        delta: &T,
        max_len: usize,
    ) -> Result<IsolationOutcome<T>> {
        if !delta.exceeds(&T::zero()) {
            return Err(Error::NonPositiveGap(delta.to_literal()));
        }
        for (word, value) in self.values_up_to(max_len)? {
            let mut gap = cut.clone();
            gap += &(-value.clone());
            let gap = gap.abs();
            if !(gap.exceeds(delta) || gap.approx_eq(delta)) {
                return Ok(IsolationOutcome::Counterexample { word, value });
            }
        }
        Ok(IsolationOutcome::Verified(IsolationGap {
            cut: cut.clone(),
            delta: delta.clone(),
            verified_to_length: max_len,
        }))
    }

    /// `{Q(u) : |u| ≤ max_len}` without duplicates, discovered breadth-first.
    pub fn matrix_monoid_sample(&self, max_len: usize) -> Vec<Matrix<T>> {
        let gens: Vec<&Matrix<T>> = self.matrices.values().collect();
        let mut all = vec![Matrix::identity(self.states())];
        let mut frontier = all.clone();
        for _ in 0..max_len {
            let mut next = Vec::new();
            for m in &frontier {
                for g in &gens {
                    let p = m.mul(g).expect("square matrices of equal size");
                    if !all.iter().any(|q| q.approx_eq(&p)) {
                        all.push(p.clone());
                        next.push(p);
                    }
                }
            }
            frontier = next;
        }
        all
    }
}

/// Caches `π·Q(prefix)` so that evaluating many words costs one
/// vector-matrix product per distinct prefix.
pub struct Evaluator<'a, T: Scalar> {
    automaton: &'a GeneralizedAutomaton<T>,
    rows: HashMap<Vec<Generator>, RowVec<T>>,
    kernels: HashMap<Generator, T::Kernel>,
}

impl<'a, T: Scalar> Evaluator<'a, T> {
    fn new(automaton: &'a GeneralizedAutomaton<T>) -> Self {
        let mut rows = HashMap::new();
        rows.insert(Vec::new(), automaton.initial.clone());
        Evaluator {
            automaton,
            rows,
            kernels: HashMap::new(),
        }
    }

    fn ensure(&mut self, symbols: &[Generator]) -> Result<()> {
        if self.rows.contains_key(symbols) {
            return Ok(());
        }
        let (last, parent) = symbols.split_last().expect("empty prefix is cached");
        self.ensure(parent)?;
        if !self.kernels.contains_key(last) {
            let m = self
                .automaton
                .matrices
                .get(last)
                .ok_or_else(|| Error::MissingMatrix(last.clone()))?;
            self.kernels.insert(last.clone(), T::kernel(m));
        }
        let next = T::apply_kernel(&self.rows[parent], &self.kernels[last]);
        self.rows.insert(symbols.to_vec(), next);
        Ok(())
    }

    /// `π · Q(u)`.
    pub fn row(&mut self, u: &Word) -> Result<&RowVec<T>> {
        self.automaton.monoid.check_word(u)?;
        self.ensure(u.symbols())?;
        Ok(&self.rows[u.symbols()])
    }

    pub fn value(&mut self, u: &Word) -> Result<T> {
        let f = &self.automaton.final_vector;
        Ok(self.row(u)?.dot(f)?)
    }
}

/// Transformation `ψ` of the matrix monoid used by
/// [`check_commuting_property`].
#[derive(Clone, Debug, PartialEq)]
pub enum MatrixRule<T> {
    Identity,
    Transpose,
    Power(u32),
    /// `ψ(Q(u))` is the product of the listed images along `u`, reversed when
    /// `anti` is set.
    GeneratorTable {
        images: BTreeMap<Generator, Matrix<T>>,
        anti: bool,
    },
}

impl<T: Scalar> MatrixRule<T> {
    pub fn apply(&self, matrix: &Matrix<T>, word: &Word, dim: usize) -> Result<Matrix<T>> {
        match self {
            MatrixRule::Identity => Ok(matrix.clone()),
            MatrixRule::Transpose => Ok(matrix.transpose()),
            MatrixRule::Power(p) => Ok(matrix.pow(*p)?),
            MatrixRule::GeneratorTable { images, anti } => {
                let mut acc = Matrix::identity(dim);
                let symbols: Vec<&Generator> = if *anti {
                    word.symbols().iter().rev().collect()
                } else {
                    word.symbols().iter().collect()
                };
                for g in symbols {
                    let m = images.get(g).ok_or_else(|| Error::MissingMatrix(g.clone()))?;
                    acc = acc.mul(m)?;
                }
                Ok(acc)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum CommutingReport<T> {
    Holds { words_checked: usize },
    Mismatch {
        word: Word,
        image_matrix: Matrix<T>,
        transformed: Matrix<T>,
    },
}

impl<T> CommutingReport<T> {
    pub fn holds(&self) -> bool {
        matches!(self, CommutingReport::Holds { .. })
    }
}

/// Verifies `Q′(φ(u)) = ψ(Q(u))` for every word `u` of `source` up to
/// `max_len`. Anti-homomorphisms are handled by `φ` itself reversing words.
pub fn check_commuting_property<T: Scalar>(
    source: &GeneralizedAutomaton<T>,
    image: &GeneralizedAutomaton<T>,
    phi: &MonoidMap,
    psi: &MatrixRule<T>,
    max_len: usize,
) -> Result<CommutingReport<T>> {
    if phi.source() != source.monoid() || phi.target() != image.monoid() {
        return Err(Error::MonoidMismatch);
    }
    let words = source.monoid().enumerate_all(max_len)?;
    for u in &words {
        let image_matrix = image.matrix_of_word(&phi.apply(u)?)?;
        let transformed = psi.apply(&source.matrix_of_word(u)?, u, image.states())?;
        if !image_matrix.approx_eq(&transformed) {
            return Ok(CommutingReport::Mismatch {
                word: u.clone(),
                image_matrix,
                transformed,
            });
        }
    }
    Ok(CommutingReport::Holds {
        words_checked: words.len(),
    })
}
