#![allow(dead_code)]

use std::collections::BTreeMap;

use monoidal_automata::boolean::BooleanMonoidalAutomaton;
use monoidal_automata::{
    ratio, ColVec, GeneralizedAutomaton, Generator, Matrix, MonoidSpec, Rational, RowVec, Word,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `k/q` with `q ∈ 1..=4`, uniformly over the numerators in `[lo·q, hi·q]`.
pub fn rational_in(rng: &mut impl Rng, lo: i64, hi: i64) -> Rational {
    let q = rng.gen_range(1..=4);
    let k = rng.gen_range(lo * q..=hi * q);
    ratio(k, q)
}

pub fn atoms(s: &str) -> Word {
    Word::from_atoms(&s.chars().map(|c| c.to_string()).collect::<Vec<_>>())
}

pub fn generator_names(count: usize) -> Vec<&'static str> {
    ["a", "b"][..count].to_vec()
}

/// Random generalized automaton over a free monoid: `n ∈ {1,2,3}`, one or two
/// generators, all data in `[−2, 2]`, and a cut point in `[−1, 1]`.
pub fn random_generalized(rng: &mut impl Rng) -> (GeneralizedAutomaton<Rational>, Rational) {
    let n = rng.gen_range(1..=3);
    let gens = generator_names(rng.gen_range(1..=2));
    let mut matrices = BTreeMap::new();
    for g in &gens {
        let rows = (0..n)
            .map(|_| (0..n).map(|_| rational_in(rng, -2, 2)).collect())
            .collect();
        matrices.insert(Generator::atom(*g), Matrix::from_rows(rows).unwrap());
    }
    let pi = RowVec((0..n).map(|_| rational_in(rng, -2, 2)).collect());
    let f = ColVec((0..n).map(|_| rational_in(rng, -2, 2)).collect());
    let a = GeneralizedAutomaton::new(MonoidSpec::free(&gens).unwrap(), matrices, pi, f).unwrap();
    (a, rational_in(rng, -1, 1))
}

/// Random row-stochastic automaton with a binary final vector and a cut
/// point in `[0, 1)`.
pub fn random_stochastic(rng: &mut impl Rng) -> (GeneralizedAutomaton<Rational>, Rational) {
    let n = rng.gen_range(1..=3);
    let gens = generator_names(rng.gen_range(1..=2));
    let distribution = |rng: &mut ChaCha8Rng| {
        let weights: Vec<i64> = (0..n).map(|_| rng.gen_range(0..=4)).collect();
        let total: i64 = weights.iter().sum();
        if total == 0 {
            let mut v = vec![ratio(0, 1); n];
            v[rng.gen_range(0..n)] = ratio(1, 1);
            v
        } else {
            weights.iter().map(|w| ratio(*w, total)).collect()
        }
    };
    let mut inner = ChaCha8Rng::seed_from_u64(rng.gen());
    let mut matrices = BTreeMap::new();
    for g in &gens {
        let rows = (0..n).map(|_| distribution(&mut inner)).collect();
        matrices.insert(Generator::atom(*g), Matrix::from_rows(rows).unwrap());
    }
    let pi = RowVec(distribution(&mut inner));
    let f = ColVec((0..n).map(|_| ratio(rng.gen_range(0..=1), 1)).collect());
    let a = GeneralizedAutomaton::new(MonoidSpec::free(&gens).unwrap(), matrices, pi, f).unwrap();
    let q = rng.gen_range(1..=6);
    (a, ratio(rng.gen_range(0..q), q))
}

fn random_subset(rng: &mut impl Rng, n: usize) -> Vec<usize> {
    (0..n).filter(|_| rng.gen_bool(0.4)).collect()
}

/// Random boolean automaton with single-generator and identity labels.
pub fn random_boolean(rng: &mut impl Rng, monoid: MonoidSpec) -> BooleanMonoidalAutomaton {
    let n = rng.gen_range(1..=4);
    let gens = monoid.generators();
    let mut transitions = Vec::new();
    for s in 0..n {
        for t in 0..n {
            for g in &gens {
                if rng.gen_bool(0.3) {
                    transitions.push((s, Word::single(g.clone()), t));
                }
            }
            if s != t && rng.gen_bool(0.1) {
                transitions.push((s, Word::empty(), t));
            }
        }
    }
    let mut initial = random_subset(rng, n);
    if initial.is_empty() {
        initial.push(0);
    }
    let finals = random_subset(rng, n);
    BooleanMonoidalAutomaton::new(monoid, n, initial, finals, transitions).unwrap()
}

/// Boolean automaton over `⟨x,y | xy = yx⟩` on states `(p, q)` where `x`
/// moves only `p` and `y` moves only `q`, so the 0/1 matrices commute.
pub fn random_commuting_boolean(rng: &mut impl Rng) -> BooleanMonoidalAutomaton {
    let shapes = [(1, 1), (1, 2), (2, 1), (2, 2), (1, 3), (3, 1), (1, 4), (4, 1)];
    let (np, nq) = shapes[rng.gen_range(0..shapes.len())];
    let n = np * nq;
    let x: Vec<(usize, usize)> = (0..np)
        .flat_map(|p| (0..np).map(move |p2| (p, p2)))
        .filter(|_| rng.gen_bool(0.45))
        .collect();
    let y: Vec<(usize, usize)> = (0..nq)
        .flat_map(|q| (0..nq).map(move |q2| (q, q2)))
        .filter(|_| rng.gen_bool(0.45))
        .collect();
    let id = |p: usize, q: usize| p * nq + q;
    let mut transitions = Vec::new();
    for &(p, p2) in &x {
        for q in 0..nq {
            transitions.push((id(p, q), atoms("x"), id(p2, q)));
        }
    }
    for &(q, q2) in &y {
        for p in 0..np {
            transitions.push((id(p, q), atoms("y"), id(p, q2)));
        }
    }
    let mut initial = random_subset(rng, n);
    if initial.is_empty() {
        initial.push(0);
    }
    let finals = random_subset(rng, n);
    BooleanMonoidalAutomaton::new(
        MonoidSpec::commutative(&["x", "y"]).unwrap(),
        n,
        initial,
        finals,
        transitions,
    )
    .unwrap()
}

/// `0.x_k…x₁` in base `m` for the word `x₁…x_k`, by digit arithmetic.
pub fn m_adic_fraction(m: u32, digits: &[u32]) -> Rational {
    let base = Rational::from_integer(m.into());
    let mut value = Rational::from_integer(0.into());
    for d in digits {
        value = (value + Rational::from_integer((*d).into())) / &base;
    }
    value
}

pub fn digits_of(u: &Word) -> Vec<u32> {
    u.symbols()
        .iter()
        .map(|g| g.to_string().parse().unwrap())
        .collect()
}

/// Counts occurrences of a generator.
pub fn count(u: &Word, name: &str) -> usize {
    u.symbols().iter().filter(|g| g.to_string() == name).count()
}

/// Naive acceptance value `π · Q(x₁) ⋯ Q(x_k) · f` by explicit index sums.
pub fn naive_value(a: &GeneralizedAutomaton<Rational>, u: &Word) -> Rational {
    let n = a.states();
    let mut row = a.initial().0.clone();
    for g in u.symbols() {
        let q = a.matrix(g).unwrap();
        row = (0..n)
            .map(|j| {
                (0..n).fold(Rational::from_integer(0.into()), |acc, i| {
                    acc + &row[i] * q.get(i, j)
                })
            })
            .collect();
    }
    row.iter()
        .zip(&a.final_vector().0)
        .fold(Rational::from_integer(0.into()), |acc, (r, f)| acc + r * f)
}
