//! Normalization of generalized automata into stochastic ones.
//!
//! The pipeline runs six language-preserving stages:
//!
//! | stage | states | cut point | value relation for `|u| = k ≥ 1` |
//! |---|---|---|---|
//! | `zero_sum` | `n+2` | `λ` | `v₁ = v` |
//! | `nonneg` | `n+3` | `λ` | `v₂ = v₁` |
//! | `stochastic_cut0` | `n+5` | `0` | `v₃ = β⁻ᵏ (v₂ − λ)` |
//! | `distribution` | `2n+10` | `t` | `v₄ = v₃ / R + t` |
//! | `acceptor` | `(2n+10)²` | `t / α` | `v₅ = v₄ / α` |
//! | `empty_adjoined` | `+0` or `+1` | `λ″` | `v₆ = v₅` |
//!
//! Every free constant takes the least value that satisfies its inequality,
//! so outputs are deterministic. Only the exact backend is supported.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};

use crate::automaton::{GeneralizedAutomaton, StochasticAutomaton};
use crate::error::{Error, Result};
use crate::monoid::{Generator, MonoidSpec, Word};
use crate::numerics::{next_integer_above, ColVec, Matrix, Rational, RowVec, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum StageTag {
    Rescaled,
    ZeroSum,
    NonNeg,
    StochasticCut0,
    Distribution,
    Acceptor,
    EmptyAdjoined,
}

impl StageTag {
    pub const ALL: [StageTag; 7] = [
        StageTag::Rescaled,
        StageTag::ZeroSum,
        StageTag::NonNeg,
        StageTag::StochasticCut0,
        StageTag::Distribution,
        StageTag::Acceptor,
        StageTag::EmptyAdjoined,
    ];

    pub fn name(self) -> &'static str {
        match self {
            StageTag::Rescaled => "rescaled",
            StageTag::ZeroSum => "zero_sum",
            StageTag::NonNeg => "nonneg",
            StageTag::StochasticCut0 => "stochastic_cut0",
            StageTag::Distribution => "distribution",
            StageTag::Acceptor => "acceptor",
            StageTag::EmptyAdjoined => "empty_adjoined",
        }
    }

    /// The stage whose output this stage consumes; `None` for stages that
    /// accept any automaton.
    pub fn predecessor(self) -> Option<StageTag> {
        match self {
            StageTag::Rescaled | StageTag::ZeroSum | StageTag::EmptyAdjoined => None,
            StageTag::NonNeg => Some(StageTag::ZeroSum),
            StageTag::StochasticCut0 => Some(StageTag::NonNeg),
            StageTag::Distribution => Some(StageTag::StochasticCut0),
            StageTag::Acceptor => Some(StageTag::Distribution),
        }
    }
}

impl fmt::Display for StageTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for StageTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        StageTag::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown stage `{s}`")))
    }
}

/// One pipeline output together with its cut point and the constants used
/// to build it.
#[derive(Clone, Debug, PartialEq)]
pub struct PipelineStage {
    tag: StageTag,
    automaton: GeneralizedAutomaton<Rational>,
    cut: Rational,
    provenance: BTreeMap<String, Rational>,
}

impl PipelineStage {
    /// Reassembles a stage, e.g. from a stored document. The structural
    /// invariants of `tag` are the caller's responsibility.
    pub fn from_parts(
        tag: StageTag,
        automaton: GeneralizedAutomaton<Rational>,
        cut: Rational,
        provenance: BTreeMap<String, Rational>,
    ) -> Self {
        PipelineStage {
            tag,
            automaton,
            cut,
            provenance,
        }
    }

    pub fn tag(&self) -> StageTag {
        self.tag
    }

    pub fn automaton(&self) -> &GeneralizedAutomaton<Rational> {
        &self.automaton
    }

    pub fn cut(&self) -> &Rational {
        &self.cut
    }

    pub fn provenance(&self) -> &BTreeMap<String, Rational> {
        &self.provenance
    }

    pub fn constant(&self, name: &str) -> Option<&Rational> {
        self.provenance.get(name)
    }

    pub fn into_parts(self) -> (GeneralizedAutomaton<Rational>, Rational) {
        (self.automaton, self.cut)
    }

    fn expect(&self, tag: StageTag) -> Result<()> {
        if self.tag == tag {
            Ok(())
        } else {
            Err(Error::StageMisuse {
                expected: tag.name().into(),
                found: self.tag.name().into(),
            })
        }
    }
}

fn int(n: usize) -> Rational {
    Rational::from_integer(n.into())
}

fn rebuild(
    a: &GeneralizedAutomaton<Rational>,
    mut matrix: impl FnMut(&Matrix<Rational>) -> Matrix<Rational>,
    initial: RowVec<Rational>,
    final_vector: ColVec<Rational>,
) -> Result<GeneralizedAutomaton<Rational>> {
    let matrices = a
        .matrices()
        .iter()
        .map(|(g, m)| (g.clone(), matrix(m)))
        .collect();
    GeneralizedAutomaton::new_unchecked(a.monoid().clone(), matrices, initial, final_vector)
}

/// `π′ = (λ′/λ)·π`, so that `L(A, λ) = L(A′, λ′)`.
pub fn rescale_cutpoint(
    a: &GeneralizedAutomaton<Rational>,
    cut: &Rational,
    new_cut: &Rational,
) -> Result<PipelineStage> {
    for c in [cut, new_cut] {
        if !c.is_positive() {
            return Err(Error::NonPositiveCut(c.to_literal()));
        }
    }
    let factor = new_cut / cut;
    let automaton = rebuild(
        a,
        Matrix::clone,
        a.initial().scale(&factor),
        a.final_vector().clone(),
    )?;
    Ok(PipelineStage {
        tag: StageTag::Rescaled,
        automaton,
        cut: new_cut.clone(),
        provenance: BTreeMap::from([("alpha".into(), Rational::one() - factor)]),
    })
}

/// Borders every `Q(x)` so that all row and column sums vanish:
///
/// ```text
///          ⎛ 0      0       0 ⎞
/// Q₁(x) =  ⎜ −σᵢ    Q(x)    0 ⎟
///          ⎝ σ″    −σ′ⱼ     0 ⎠
/// ```
///
/// with row sums `σᵢ`, column sums `σ′ⱼ` and total `σ″` of `Q(x)`.
pub fn zero_sum_form(a: &GeneralizedAutomaton<Rational>, cut: &Rational) -> Result<PipelineStage> {
    let n = a.states();
    let border = |q: &Matrix<Rational>| {
        let mut m = Matrix::zeros(n + 2, n + 2);
        m.paste(1, 1, q);
        for (i, s) in q.row_sums().0.iter().enumerate() {
            m.set(i + 1, 0, -s.clone());
        }
        for (j, s) in q.col_sums().0.iter().enumerate() {
            m.set(n + 1, j + 1, -s.clone());
        }
        m.set(n + 1, 0, q.total_sum());
        m
    };
    let pad = |v: &[Rational]| {
        let mut out = vec![Rational::zero()];
        out.extend_from_slice(v);
        out.push(Rational::zero());
        out
    };
    let automaton = rebuild(
        a,
        border,
        RowVec(pad(&a.initial().0)),
        ColVec(pad(&a.final_vector().0)),
    )?;
    Ok(PipelineStage {
        tag: StageTag::ZeroSum,
        automaton,
        cut: cut.clone(),
        provenance: BTreeMap::new(),
    })
}

/// `Q₂(x) = diag(Q₁(x) + B_r, m·r)` with `B_r` the `m×m` matrix of `r`s,
/// `π₂ = (π₁, α/m)`, `f₂ = (f₁; −1)` and `α = (Σπ₁)(Σf₁)`. The zero row and
/// column sums make `B_r` cancel in products:
/// `(Q₁(x)+B_r)(Q₁(y)+B_r) = Q₁(xy) + B_{m r²}`.
pub fn nonneg_form(stage: &PipelineStage) -> Result<PipelineStage> {
    stage.expect(StageTag::ZeroSum)?;
    let a = &stage.automaton;
    let m = a.states();
    let min = a
        .matrices()
        .values()
        .filter_map(Matrix::min_entry)
        .min()
        .cloned()
        .unwrap_or_else(Rational::zero);
    let r = if min.is_negative() { -min } else { Rational::zero() };
    let b = Matrix::constant(r.clone(), m);
    let corner = Matrix::constant(int(m) * &r, 1);
    let alpha = a.initial().sum() * a.final_vector().sum();
    let mut pi = a.initial().0.clone();
    pi.push(&alpha / int(m));
    let mut f = a.final_vector().0.clone();
    f.push(-Rational::one());
    let automaton = rebuild(
        a,
        |q| Matrix::block_diag(&[&q.add(&b).expect("same shape"), &corner]),
        RowVec(pi),
        ColVec(f),
    )?;
    Ok(PipelineStage {
        tag: StageTag::NonNeg,
        automaton,
        cut: stage.cut.clone(),
        provenance: BTreeMap::from([
            ("r".into(), r),
            ("m".into(), int(m)),
            ("alpha".into(), alpha),
        ]),
    })
}

/// Scales by `1/β` and adds two states that absorb the missing row mass and
/// carry the cut point into the initial vector:
///
/// ```text
///          ⎛ Q₂(x)/β   0     βᵢ(x)  ⎞
/// Q₃(x) =  ⎜ 0         1/β   1−1/β  ⎟
///          ⎝ 0         0     1      ⎠
/// ```
///
/// with `βᵢ(x) = 1 − (row sum i of Q₂(x))/β`, `π₃ = (π₂, λ, 0)` and
/// `f₃ = (f₂; −1; 0)`. The new cut point is 0.
pub fn stochastic_cut0_form(stage: &PipelineStage) -> Result<PipelineStage> {
    stage.expect(StageTag::NonNeg)?;
    let a = &stage.automaton;
    let p = a.states();
    let max_row = a
        .matrices()
        .values()
        .flat_map(|q| q.row_sums().0)
        .max()
        .unwrap_or_else(Rational::zero);
    let beta = max_row + Rational::one();
    let inv = beta.recip();
    let build = |q: &Matrix<Rational>| {
        let mut m = Matrix::zeros(p + 2, p + 2);
        m.paste(0, 0, &q.scale(&inv));
        for (i, s) in q.row_sums().0.iter().enumerate() {
            m.set(i, p + 1, Rational::one() - s * &inv);
        }
        m.set(p, p, inv.clone());
        m.set(p, p + 1, Rational::one() - &inv);
        m.set(p + 1, p + 1, Rational::one());
        m
    };
    let mut pi = a.initial().0.clone();
    pi.extend([stage.cut.clone(), Rational::zero()]);
    let mut f = a.final_vector().0.clone();
    f.extend([-Rational::one(), Rational::zero()]);
    let automaton = rebuild(a, build, RowVec(pi), ColVec(f))?;
    Ok(PipelineStage {
        tag: StageTag::StochasticCut0,
        automaton,
        cut: Rational::zero(),
        provenance: BTreeMap::from([
            ("beta".into(), beta),
            ("lambda".into(), stage.cut.clone()),
        ]),
    })
}

/// Duplicates the state set: `Q₄(x) = diag(Q₃(x), Q₃(x))`,
/// `π₄ = (π₃ + r·1, r·1)/R` with `R = Σπ₃ + 2qr`, and
/// `f₄ = (f₃ + t·1; −f₃ + t·1)`. Here `r` is the least integer making
/// `π₃ + r·1` positive and `t` the least integer exceeding every `|f₃ᵢ|`.
/// Row-stochasticity of `Q₃` gives `v₄ = v₃/R + t`; the new cut point is `t`.
pub fn distribution_form(stage: &PipelineStage) -> Result<PipelineStage> {
    stage.expect(StageTag::StochasticCut0)?;
    let a = &stage.automaton;
    let q = a.states();
    let min_pi = a.initial().0.iter().min().cloned().unwrap_or_else(Rational::zero);
    let r = next_integer_above(&(-min_pi).max(Rational::zero()));
    let max_f = a
        .final_vector()
        .0
        .iter()
        .map(Signed::abs)
        .max()
        .unwrap_or_else(Rational::zero);
    let t = next_integer_above(&max_f);
    let big_r = a.initial().sum() + int(2 * q) * &r;
    let pi: Vec<Rational> = a
        .initial()
        .0
        .iter()
        .map(|p| (p + &r) / &big_r)
        .chain(std::iter::repeat(&r / &big_r).take(q))
        .collect();
    let f: Vec<Rational> = a
        .final_vector()
        .0
        .iter()
        .map(|v| v + &t)
        .chain(a.final_vector().0.iter().map(|v| &t - v))
        .collect();
    let automaton = rebuild(a, |m| Matrix::block_diag(&[m, m]), RowVec(pi), ColVec(f))?;
    Ok(PipelineStage {
        tag: StageTag::Distribution,
        automaton,
        cut: t.clone(),
        provenance: BTreeMap::from([("r".into(), r), ("R".into(), big_r), ("t".into(), t)]),
    })
}

/// Turns the positive final vector into a binary one over `k²` states with
/// `k = |S₄|`: every block row of `P(x)` is `(α₁Q₄(x), …, α_kQ₄(x))` with
/// `αᵢ = f₄ᵢ/α`, `α = Σf₄ᵢ`, `π₅ = (π₄, …, π₄)/k` and final states
/// `s_{ik+i}`. Then `v₅ = v₄/α` and the new cut point is `t/α`.
pub fn acceptor_form(stage: &PipelineStage) -> Result<PipelineStage> {
    stage.expect(StageTag::Distribution)?;
    let a = &stage.automaton;
    let k = a.states();
    let f4 = &a.final_vector().0;
    if let Some(v) = f4.iter().find(|v| !v.is_positive()) {
        return Err(Error::Negative {
            what: "final vector of the distribution stage".into(),
            value: v.to_literal(),
        });
    }
    let alpha: Rational = f4.iter().sum();
    let weights: Vec<Rational> = f4.iter().map(|v| v / &alpha).collect();
    let build = |q: &Matrix<Rational>| {
        let blocks: Vec<Matrix<Rational>> = weights.iter().map(|w| q.scale(w)).collect();
        let mut m = Matrix::zeros(k * k, k * k);
        for i in 0..k {
            for (j, block) in blocks.iter().enumerate() {
                m.paste(i * k, j * k, block);
            }
        }
        m
    };
    let share = int(k).recip();
    let pi: Vec<Rational> = (0..k)
        .flat_map(|_| a.initial().0.iter().map(|p| p * &share))
        .collect();
    let mut f = vec![Rational::zero(); k * k];
    for i in 0..k {
        f[i * k + i] = Rational::one();
    }
    let automaton = rebuild(a, build, RowVec(pi), ColVec(f))?;
    let mut provenance = BTreeMap::from([("alpha".into(), alpha.clone()), ("k".into(), int(k))]);
    for (i, w) in weights.into_iter().enumerate() {
        provenance.insert(format!("alpha_{}", i + 1), w);
    }
    Ok(PipelineStage {
        tag: StageTag::Acceptor,
        automaton,
        cut: &stage.cut / alpha,
        provenance,
    })
}

/// Fixes membership of the empty word without touching non-empty words.
///
/// - `ε` should be in the language but `λ = 1`: the two-state automaton with
///   `P′(x) = [[0,1],[0,1]]`, `π′ = (1,0)`, `f′ = (1,0)ᵀ` and cut point 0
///   (the input language is empty).
/// - `ε` should be in the language and `λ < 1`: a new initial state whose
///   row is `(πP(x), 0)`, with `f′ = (f; 1)`.
/// - `ε` should be rejected but `πf > λ`: the same border with `f′ = (f; 0)`.
/// - otherwise the automaton is returned unchanged.
pub fn adjoin_empty_word(
    a: &StochasticAutomaton<Rational>,
    cut: &Rational,
    want_empty: bool,
) -> Result<(StochasticAutomaton<Rational>, Rational)> {
    if cut.is_negative() || cut > &Rational::one() {
        return Err(Error::CutOutOfRange(cut.to_literal()));
    }
    let accepts_empty = a.accepts(cut, &Word::empty())?;
    if accepts_empty == want_empty {
        return Ok((a.clone(), cut.clone()));
    }
    if want_empty && cut.is_one() {
        let matrices = a
            .generators()
            .into_iter()
            .map(|g| (g, Matrix::from_integers(&[&[0, 1], &[0, 1]])))
            .collect();
        let single = GeneralizedAutomaton::new(
            a.monoid().clone(),
            matrices,
            RowVec::unit(2, 0),
            ColVec::unit(2, 0),
        )?;
        return Ok((single.into_stochastic()?, Rational::zero()));
    }
    let n = a.states();
    let pi = a.initial();
    let border = |p: &Matrix<Rational>| {
        let mut m = Matrix::zeros(n + 1, n + 1);
        m.paste(0, 0, p);
        let row = pi.mul_matrix(p).expect("π matches P");
        for (j, v) in row.0.into_iter().enumerate() {
            m.set(n, j, v);
        }
        m
    };
    let mut f = a.final_vector().0.clone();
    f.push(if want_empty {
        Rational::one()
    } else {
        Rational::zero()
    });
    let bordered = rebuild(a, border, RowVec::unit(n + 1, n), ColVec(f))?;
    Ok((bordered.into_stochastic()?, cut.clone()))
}

/// Result of [`full_pipeline`]: the intermediate stages and the final
/// stochastic automaton with its cut point.
#[derive(Clone, Debug, PartialEq)]
pub struct PipelineRun {
    pub stages: Vec<PipelineStage>,
    pub result: StochasticAutomaton<Rational>,
    pub cut: Rational,
}

impl PipelineRun {
    pub fn stage(&self, tag: StageTag) -> Option<&PipelineStage> {
        self.stages.iter().find(|s| s.tag == tag)
    }

    /// The final automaton as a stage tagged `empty_adjoined`, carrying the
    /// constants of every earlier stage prefixed by the stage name.
    pub fn final_stage(&self) -> PipelineStage {
        let mut provenance = BTreeMap::new();
        for s in &self.stages {
            for (k, v) in &s.provenance {
                provenance.insert(format!("{}.{}", s.tag, k), v.clone());
            }
        }
        PipelineStage {
            tag: StageTag::EmptyAdjoined,
            automaton: self.result.as_generalized().clone(),
            cut: self.cut.clone(),
            provenance,
        }
    }
}

/// Converts `L(A, λ)` into the language of a stochastic automaton with at
/// most `(2n+10)² + 1` states and a cut point in `[0, 1]`.
pub fn full_pipeline(a: &GeneralizedAutomaton<Rational>, cut: &Rational) -> Result<PipelineRun> {
    a.check_extension_postulate().into_result()?;
    let want_empty = a.accepts(cut, &Word::empty())?;
    let s1 = zero_sum_form(a, cut)?;
    let s2 = nonneg_form(&s1)?;
    let s3 = stochastic_cut0_form(&s2)?;
    let s4 = distribution_form(&s3)?;
    let s5 = acceptor_form(&s4)?;
    let stochastic = s5.automaton.clone().into_stochastic()?;
    let (result, final_cut) = adjoin_empty_word(&stochastic, &s5.cut, want_empty)?;
    result.check_extension_postulate().into_result()?;
    Ok(PipelineRun {
        stages: vec![s1, s2, s3, s4, s5],
        result,
        cut: final_cut,
    })
}

/// Runs a single named stage. `zero_sum` and `rescaled` accept any
/// automaton; the others need their predecessor's output.
pub fn run_stage(stage: &PipelineStage, tag: StageTag, new_cut: Option<&Rational>) -> Result<PipelineStage> {
    match tag {
        StageTag::Rescaled => {
            let target = new_cut.ok_or_else(|| {
                Error::InvalidParameter("rescaling needs a target cut point".into())
            })?;
            rescale_cutpoint(&stage.automaton, &stage.cut, target)
        }
        StageTag::ZeroSum => zero_sum_form(&stage.automaton, &stage.cut),
        StageTag::NonNeg => nonneg_form(stage),
        StageTag::StochasticCut0 => stochastic_cut0_form(stage),
        StageTag::Distribution => distribution_form(stage),
        StageTag::Acceptor => acceptor_form(stage),
        StageTag::EmptyAdjoined => Err(Error::InvalidParameter(
            "the empty-word stage runs as part of the full pipeline".into(),
        )),
    }
}

/// Automaton with `π = e₁`, `f = e_n` and cut point 0, so that a non-empty
/// word is accepted iff `Q(u)₁ₙ > 0`.
pub fn from_matrix_family(
    matrices: BTreeMap<Generator, Matrix<Rational>>,
    monoid: &MonoidSpec,
) -> Result<(GeneralizedAutomaton<Rational>, Rational)> {
    let n = matrices
        .values()
        .next()
        .map(Matrix::rows)
        .ok_or_else(|| Error::InvalidParameter("empty matrix family".into()))?;
    let a = GeneralizedAutomaton::new(
        monoid.clone(),
        matrices,
        RowVec::unit(n, 0),
        ColVec::unit(n, n - 1),
    )?;
    Ok((a, Rational::zero()))
}

/// `(n+2)`-dimensional family whose corner entry is `πQ(u)f − λ`:
///
/// ```text
///          ⎛ 0   πQ(x)   πQ(x)g ⎞
/// Q′(x) =  ⎜ 0   Q(x)    Q(x)g  ⎟      g = f − λ·1
///          ⎝ 0   0       0      ⎠
/// ```
///
/// Row-stochasticity turns `πQ(u)g` into `πQ(u)f − λ`, so a non-empty word is
/// in `L(A, λ)` iff `Q′(u)₁,ₙ₊₂ > 0`.
pub fn to_matrix_family(
    a: &StochasticAutomaton<Rational>,
    cut: &Rational,
) -> Result<BTreeMap<Generator, Matrix<Rational>>> {
    let n = a.states();
    let g = ColVec(a.final_vector().0.iter().map(|v| v - cut).collect());
    let mut out = BTreeMap::new();
    for (x, q) in a.matrices() {
        let mut m = Matrix::zeros(n + 2, n + 2);
        let top = a.initial().mul_matrix(q)?;
        let qg = q.mul_col(&g)?;
        m.set(0, n + 1, top.dot(&g)?);
        for (j, v) in top.0.into_iter().enumerate() {
            m.set(0, j + 1, v);
        }
        m.paste(1, 1, q);
        for (i, v) in qg.0.into_iter().enumerate() {
            m.set(i + 1, n + 1, v);
        }
        out.insert(x.clone(), m);
    }
    Ok(out)
}
