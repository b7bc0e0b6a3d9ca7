//! Ready-made automata: m-adic acceptors, rotations, counters and the
//! boolean examples with their two-tape variants.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use crate::automaton::{GeneralizedAutomaton, StochasticAutomaton};
use crate::boolean::BooleanMonoidalAutomaton;
use crate::closures::kronecker_product;
use crate::error::{Error, Result};
use crate::monoid::{Generator, MonoidSpec, Word};
use crate::numerics::{ratio, ColVec, Matrix, Rational, RowVec};

/// Entry identifiers accepted by [`entry`].
pub const IDS: [&str; 10] = [
    "m_adic",
    "rotation",
    "commutative_counter",
    "two_tape_counter",
    "fig1",
    "fig1_commutative",
    "fig2_left",
    "fig2_right",
    "halving",
    "product_madic_halving",
];

#[derive(Clone, Debug, PartialEq)]
pub enum GalleryAutomaton {
    Exact {
        automaton: GeneralizedAutomaton<Rational>,
        cut: Rational,
    },
    Float {
        automaton: GeneralizedAutomaton<f64>,
        cut: f64,
    },
    Boolean(BooleanMonoidalAutomaton),
}

#[derive(Clone, Debug, PartialEq)]
pub struct GalleryEntry {
    pub id: String,
    pub automaton: GalleryAutomaton,
    pub stochastic: bool,
    pub notes: &'static str,
}

/// Optional parameters of [`entry`]; `m` for m-adic entries, `phi` for
/// rotations.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct GalleryParams {
    pub m: Option<u32>,
    pub phi: Option<f64>,
}

fn unit(n: usize, i: usize) -> RowVec<Rational> {
    RowVec::unit(n, i)
}

fn col(n: usize, i: usize) -> ColVec<Rational> {
    ColVec::unit(n, i)
}

fn digit_names(m: u32) -> Vec<String> {
    (0..m).map(|d| d.to_string()).collect()
}

/// The m-adic acceptor over digits `0..m`:
/// `P(x) = [[1 − x/m, x/m], [1 − (x+1)/m, (x+1)/m]]`, `π = (1,0)`,
/// `f = (0,1)ᵀ`. The value of `x₁…x_k` is the base-m fraction `0.x_k…x₁`.
pub fn m_adic(m: u32) -> Result<StochasticAutomaton<Rational>> {
    if m < 2 {
        return Err(Error::InvalidParameter(format!("m-adic acceptor needs m ≥ 2, got {m}")));
    }
    let mi = i64::from(m);
    let names = digit_names(m);
    let matrices = (0..mi)
        .map(|x| {
            let p = Matrix::from_rows(vec![
                vec![ratio(mi - x, mi), ratio(x, mi)],
                vec![ratio(mi - x - 1, mi), ratio(x + 1, mi)],
            ])
            .expect("2x2");
            (Generator::atom(x.to_string()), p)
        })
        .collect();
    GeneralizedAutomaton::new(MonoidSpec::free(&names)?, matrices, unit(2, 0), col(2, 1))?
        .into_stochastic()
}

/// Word of digits, e.g. `digits(&[2, 1])` is the word `21`.
pub fn digits(ds: &[u32]) -> Word {
    Word::from_atoms(&ds.iter().map(u32::to_string).collect::<Vec<_>>())
}

/// `R_φ = [[cos 2πφ, sin 2πφ], [−sin 2πφ, cos 2πφ]]` over `{x}*` with
/// `π = (1,0)`, `f = (0,1)ᵀ`, so `x^n` has value `sin 2πnφ`. The angle `φ`
/// is a fraction of a full turn.
pub fn rotation(phi: f64) -> Result<GeneralizedAutomaton<f64>> {
    if !phi.is_finite() {
        return Err(Error::InvalidParameter(format!("rotation angle {phi}")));
    }
    let (s, c) = (2.0 * PI * phi).sin_cos();
    let r = Matrix::from_rows(vec![vec![c, s], vec![-s, c]]).expect("2x2");
    GeneralizedAutomaton::new(
        MonoidSpec::free(&["x"])?,
        BTreeMap::from([(Generator::atom("x"), r)]),
        RowVec(vec![1.0, 0.0]),
        ColVec(vec![0.0, 1.0]),
    )
}

/// `Q(x) = [[1,1],[0,1]]`, `Q(y) = [[1,−1],[0,1]]` over `⟨x,y | xy = yx⟩`,
/// `π = (1,0)`, `f = (0,1)ᵀ`: `x^i y^j` has value `i − j`.
pub fn commutative_counter() -> Result<GeneralizedAutomaton<Rational>> {
    GeneralizedAutomaton::new(
        MonoidSpec::commutative(&["x", "y"])?,
        BTreeMap::from([
            (Generator::atom("x"), Matrix::from_integers(&[&[1, 1], &[0, 1]])),
            (Generator::atom("y"), Matrix::from_integers(&[&[1, -1], &[0, 1]])),
        ]),
        unit(2, 0),
        col(2, 1),
    )
}

/// The same matrices with `Q(y) = [[1,0],[1,1]]`, which does not commute
/// with `Q(x)`. Built without the relation check, for demonstrating it.
pub fn noncommuting_pair() -> Result<GeneralizedAutomaton<Rational>> {
    GeneralizedAutomaton::new_unchecked(
        MonoidSpec::commutative(&["x", "y"])?,
        BTreeMap::from([
            (Generator::atom("x"), Matrix::from_integers(&[&[1, 1], &[0, 1]])),
            (Generator::atom("y"), Matrix::from_integers(&[&[1, 0], &[1, 1]])),
        ]),
        unit(2, 0),
        col(2, 1),
    )
}

/// Two tapes `⟨x,y | xy = yx⟩ × {z}*` with `Q((x,e)) = Q((y,e)) =
/// [[1,1],[0,1]]` and `Q((e,z)) = [[1,−1],[0,1]]`: `(x^i y^j, z^k)` has
/// value `i + j − k`.
pub fn two_tape_counter() -> Result<GeneralizedAutomaton<Rational>> {
    let up = Matrix::from_integers(&[&[1, 1], &[0, 1]]);
    let down = Matrix::from_integers(&[&[1, -1], &[0, 1]]);
    GeneralizedAutomaton::new(
        MonoidSpec::product(MonoidSpec::commutative(&["x", "y"])?, MonoidSpec::free(&["z"])?),
        BTreeMap::from([
            (Generator::left(Generator::atom("x")), up.clone()),
            (Generator::left(Generator::atom("y")), up),
            (Generator::right(Generator::atom("z")), down),
        ]),
        unit(2, 0),
        col(2, 1),
    )
}

fn atom_word(name: &str) -> Word {
    Word::single(Generator::atom(name))
}

/// States `i = 0`, `f = 1`; `x` loops on both, `y` swaps them. Accepts the
/// words with an odd number of `y`.
pub fn fig1(monoid: MonoidSpec) -> Result<BooleanMonoidalAutomaton> {
    BooleanMonoidalAutomaton::new(
        monoid,
        2,
        [0],
        [1],
        [
            (0, atom_word("x"), 0),
            (0, atom_word("y"), 1),
            (1, atom_word("x"), 1),
            (1, atom_word("y"), 0),
        ],
    )
}

fn fig2(first: &str, second: &str) -> Result<BooleanMonoidalAutomaton> {
    let monoid =
        MonoidSpec::product(MonoidSpec::commutative(&["x", "y"])?, MonoidSpec::free(&["z"])?);
    let sync = Word::pair(&atom_word(first), &atom_word("z"));
    let pad = Word::pair(&atom_word(second), &Word::empty());
    BooleanMonoidalAutomaton::new(
        monoid,
        2,
        [0],
        [1],
        [(0, sync.clone(), 0), (0, pad, 0), (0, sync, 1)],
    )
}

/// Accepts `{(x^i y^j, z^i) | i ≥ 1, j ≥ 0}`.
pub fn fig2_left() -> Result<BooleanMonoidalAutomaton> {
    fig2("x", "y")
}

/// Accepts `{(x^j y^i, z^i) | i ≥ 1, j ≥ 0}`.
pub fn fig2_right() -> Result<BooleanMonoidalAutomaton> {
    fig2("y", "x")
}

/// `P(y) = [[1/2, 1/2], [0, 1]]` over `{y}*`, `π = (1,0)`, `f = (0,1)ᵀ`:
/// `y^i` has value `1 − 2^{−i}`.
pub fn halving() -> Result<StochasticAutomaton<Rational>> {
    let p = Matrix::from_rows(vec![
        vec![ratio(1, 2), ratio(1, 2)],
        vec![ratio(0, 1), ratio(1, 1)],
    ])?;
    GeneralizedAutomaton::new(
        MonoidSpec::free(&["y"])?,
        BTreeMap::from([(Generator::atom("y"), p)]),
        unit(2, 0),
        col(2, 1),
    )?
    .into_stochastic()
}

/// Kronecker product of [`m_adic`] and [`halving`]: `(u, y^i)` has value
/// `0.x_k…x₁ · (1 − 2^{−i})`. The cut point is `1/4`, the product of the
/// factors' cut points `1/2`.
pub fn product_madic_halving(m: u32) -> Result<(GeneralizedAutomaton<Rational>, Rational)> {
    let half = ratio(1, 2);
    kronecker_product(
        m_adic(m)?.as_generalized(),
        &half,
        halving()?.as_generalized(),
        &half,
    )
}

/// Looks up an entry by id.
pub fn entry(id: &str, params: &GalleryParams) -> Result<GalleryEntry> {
    let m = params.m.unwrap_or(2);
    let exact = |automaton, cut| GalleryAutomaton::Exact { automaton, cut };
    let (automaton, stochastic, notes) = match id {
        "m_adic" => (
            exact(m_adic(m)?.into_generalized(), ratio(1, 2)),
            true,
            "m-adic acceptor; value of x1..xk is 0.xk..x1 in base m",
        ),
        "rotation" => (
            GalleryAutomaton::Float {
                automaton: rotation(params.phi.unwrap_or(0.25))?,
                cut: 0.0,
            },
            false,
            "rotation by 2*pi*phi; x^n accepted iff sin(2*pi*n*phi) > 0",
        ),
        "commutative_counter" => (
            exact(commutative_counter()?, ratio(0, 1)),
            false,
            "x^i y^j has value i - j",
        ),
        "two_tape_counter" => (
            exact(two_tape_counter()?, ratio(0, 1)),
            false,
            "(x^i y^j, z^k) has value i + j - k",
        ),
        "fig1" => (
            GalleryAutomaton::Boolean(fig1(MonoidSpec::free(&["x", "y"])?)?),
            false,
            "odd number of y over the free monoid",
        ),
        "fig1_commutative" => (
            GalleryAutomaton::Boolean(fig1(MonoidSpec::commutative(&["x", "y"])?)?),
            false,
            "x^i y^j with j odd",
        ),
        "fig2_left" => (
            GalleryAutomaton::Boolean(fig2_left()?),
            false,
            "(x^i y^j, z^i) with i >= 1",
        ),
        "fig2_right" => (
            GalleryAutomaton::Boolean(fig2_right()?),
            false,
            "(x^j y^i, z^i) with i >= 1",
        ),
        "halving" => (
            exact(halving()?.into_generalized(), ratio(1, 2)),
            true,
            "y^i has value 1 - 2^-i",
        ),
        "product_madic_halving" => {
            let (a, cut) = product_madic_halving(m)?;
            (
                exact(a, cut),
                true,
                "(u, y^i) has value 0.xk..x1 * (1 - 2^-i)",
            )
        }
        _ => {
            return Err(Error::InvalidParameter(format!(
                "unknown gallery entry `{id}`; known: {}",
                IDS.join(", ")
            )))
        }
    };
    Ok(GalleryEntry {
        id: id.to_string(),
        automaton,
        stochastic,
        notes,
    })
}
