//! Finitely generated monoids, words over their generators, normal forms and
//! (anti-)homomorphisms.
//!
//! Words are stored as generator sequences. Normal forms are only computed
//! where the word problem is trivial: free monoids, free commutative monoids
//! (presentations whose relations are exactly the commutators of distinct
//! generators) and products of those. Everything else is declined with
//! [`MonoidError::UnsupportedNormalForm`].

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MonoidError {
    #[error("invalid generator name `{0}`")]
    InvalidName(String),
    #[error("generator `{0}` declared twice")]
    DuplicateGenerator(String),
    #[error("generator `{0}` does not belong to the monoid")]
    UnknownGenerator(Generator),
    #[error("normal forms are not available for this presentation")]
    UnsupportedNormalForm,
    #[error("expected a product monoid")]
    NotProduct,
    #[error("cannot parse `{0}` as a generator")]
    ParseGenerator(String),
    #[error("cannot parse `{0}` as a word")]
    ParseWord(String),
    #[error("map has no image for generator `{0}`")]
    MissingImage(Generator),
}

/// A generator symbol. Product monoids tag the generators of their factors:
/// `(x,e)` is [`Generator::Left`] and `(e,z)` is [`Generator::Right`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    Atom(String),
    Left(Box<Generator>),
    Right(Box<Generator>),
}

impl Generator {
    pub fn atom(name: impl Into<String>) -> Self {
        Generator::Atom(name.into())
    }

    pub fn left(inner: Generator) -> Self {
        Generator::Left(Box::new(inner))
    }

    pub fn right(inner: Generator) -> Self {
        Generator::Right(Box::new(inner))
    }

    /// Exchanges the tape tags (used by inverse relations).
    pub fn swap_tapes(&self) -> Option<Generator> {
        match self {
            Generator::Left(g) => Some(Generator::Right(g.clone())),
            Generator::Right(g) => Some(Generator::Left(g.clone())),
            Generator::Atom(_) => None,
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Atom(name) => f.write_str(name),
            Generator::Left(g) => write!(f, "({g},e)"),
            Generator::Right(g) => write!(f, "(e,{g})"),
        }
    }
}

impl FromStr for Generator {
    type Err = MonoidError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let err = || MonoidError::ParseGenerator(s.to_string());
        if let Some(inner) = s.strip_prefix('(').and_then(|t| t.strip_suffix(')')) {
            let comma = top_level_comma(inner).ok_or_else(err)?;
            let (left, right) = (inner[..comma].trim(), inner[comma + 1..].trim());
            match (left == "e", right == "e") {
                (false, true) => Ok(Generator::left(left.parse()?)),
                (true, false) => Ok(Generator::right(right.parse()?)),
                _ => Err(err()),
            }
        } else {
            validate_name(s).map_err(|_| err())?;
            Ok(Generator::atom(s))
        }
    }
}

fn top_level_comma(text: &str) -> Option<usize> {
    let mut depth = 0usize;
    for (i, c) in text.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth = depth.checked_sub(1)?,
            ',' if depth == 0 => return Some(i),
            _ => {}
        }
    }
    None
}

fn validate_name(name: &str) -> Result<(), MonoidError> {
    let bad = name.is_empty()
        || name == "e"
        || name == "ε"
        || name
            .chars()
            .any(|c| c.is_whitespace() || matches!(c, '(' | ')' | ','));
    if bad {
        Err(MonoidError::InvalidName(name.to_string()))
    } else {
        Ok(())
    }
}

/// A word: a finite generator sequence. The empty word is the identity.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Generator>);

impl Word {
    pub fn new(symbols: Vec<Generator>) -> Self {
        Word(symbols)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    /// Word over atom generators, one per name.
    pub fn from_atoms<S: AsRef<str>>(names: &[S]) -> Self {
        Word(names.iter().map(|n| Generator::atom(n.as_ref())).collect())
    }

    pub fn single(g: Generator) -> Self {
        Word(vec![g])
    }

    pub fn symbols(&self) -> &[Generator] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut symbols = self.0.clone();
        symbols.extend(other.0.iter().cloned());
        Word(symbols)
    }

    pub fn pushed(&self, g: Generator) -> Word {
        let mut symbols = self.0.clone();
        symbols.push(g);
        Word(symbols)
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().cloned().collect())
    }

    /// Tags every symbol as a left-tape generator.
    pub fn on_left(&self) -> Word {
        Word(self.0.iter().cloned().map(Generator::left).collect())
    }

    /// Tags every symbol as a right-tape generator.
    pub fn on_right(&self) -> Word {
        Word(self.0.iter().cloned().map(Generator::right).collect())
    }

    /// Word of a product monoid built from its two components.
    pub fn pair(left: &Word, right: &Word) -> Word {
        left.on_left().concat(&right.on_right())
    }

    pub fn swap_tapes(&self) -> Result<Word, MonoidError> {
        self.0
            .iter()
            .map(|g| g.swap_tapes().ok_or(MonoidError::NotProduct))
            .collect::<Result<Vec<_>, _>>()
            .map(Word)
    }

    /// Splits a product-monoid word into its component words.
    pub fn split_tapes(&self) -> Result<(Word, Word), MonoidError> {
        let mut left = Vec::new();
        let mut right = Vec::new();
        for g in &self.0 {
            match g {
                Generator::Left(inner) => left.push((**inner).clone()),
                Generator::Right(inner) => right.push((**inner).clone()),
                Generator::Atom(_) => return Err(MonoidError::NotProduct),
            }
        }
        Ok((Word(left), Word(right)))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("ε");
        }
        let compact = self.0.iter().all(|g| match g {
            Generator::Atom(name) => name.chars().count() == 1,
            _ => true,
        });
        let sep = if compact { "" } else { " " };
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join(sep))
    }
}

impl FromIterator<Generator> for Word {
    fn from_iter<I: IntoIterator<Item = Generator>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Shape {
    Free,
    Commutative,
}

/// A finitely generated monoid description.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum MonoidSpec {
    Free {
        generators: Vec<String>,
    },
    Presented {
        generators: Vec<String>,
        relations: Vec<(Word, Word)>,
    },
    Product(Box<MonoidSpec>, Box<MonoidSpec>),
}

fn checked_names<S: AsRef<str>>(names: &[S]) -> Result<Vec<String>, MonoidError> {
    let mut seen = BTreeSet::new();
    for name in names {
        let name = name.as_ref();
        validate_name(name)?;
        if !seen.insert(name) {
            return Err(MonoidError::DuplicateGenerator(name.to_string()));
        }
    }
    Ok(names.iter().map(|n| n.as_ref().to_string()).collect())
}

impl MonoidSpec {
    pub fn free<S: AsRef<str>>(generators: &[S]) -> Result<Self, MonoidError> {
        Ok(MonoidSpec::Free {
            generators: checked_names(generators)?,
        })
    }

    pub fn presented<S: AsRef<str>>(
        generators: &[S],
        relations: Vec<(Word, Word)>,
    ) -> Result<Self, MonoidError> {
        let spec = MonoidSpec::Presented {
            generators: checked_names(generators)?,
            relations,
        };
        if let MonoidSpec::Presented { relations, .. } = &spec {
            for (l, r) in relations {
                spec.check_word(l)?;
                spec.check_word(r)?;
            }
        }
        Ok(spec)
    }

    /// The free commutative monoid `⟨g₁,…,g_k | gᵢgⱼ = gⱼgᵢ⟩`.
    pub fn commutative<S: AsRef<str>>(generators: &[S]) -> Result<Self, MonoidError> {
        let names = checked_names(generators)?;
        let mut relations = Vec::new();
        for (i, a) in names.iter().enumerate() {
            for b in &names[i + 1..] {
                relations.push((
                    Word::from_atoms(&[a.as_str(), b.as_str()]),
                    Word::from_atoms(&[b.as_str(), a.as_str()]),
                ));
            }
        }
        MonoidSpec::presented(&names, relations)
    }

    pub fn product(left: MonoidSpec, right: MonoidSpec) -> Self {
        MonoidSpec::Product(Box::new(left), Box::new(right))
    }

    /// Generators in declaration order; for products, left factor first.
    pub fn generators(&self) -> Vec<Generator> {
        match self {
            MonoidSpec::Free { generators } | MonoidSpec::Presented { generators, .. } => {
                generators.iter().map(Generator::atom).collect()
            }
            MonoidSpec::Product(l, r) => l
                .generators()
                .into_iter()
                .map(Generator::left)
                .chain(r.generators().into_iter().map(Generator::right))
                .collect(),
        }
    }

    /// The tagged generator set `{(x,e)} ∪ {(e,y)}` of a product.
    pub fn product_generators(&self) -> Result<Vec<Generator>, MonoidError> {
        match self {
            MonoidSpec::Product(..) => Ok(self.generators()),
            _ => Err(MonoidError::NotProduct),
        }
    }

    pub fn factors(&self) -> Result<(&MonoidSpec, &MonoidSpec), MonoidError> {
        match self {
            MonoidSpec::Product(l, r) => Ok((l, r)),
            _ => Err(MonoidError::NotProduct),
        }
    }

    pub fn swapped(&self) -> Result<MonoidSpec, MonoidError> {
        let (l, r) = self.factors()?;
        Ok(MonoidSpec::product(r.clone(), l.clone()))
    }

    /// The opposite monoid, with every relation read right to left. Returns
    /// an identical spec when the relation set is closed under reversal.
    pub fn opposite(&self) -> MonoidSpec {
        match self {
            MonoidSpec::Free { .. } => self.clone(),
            MonoidSpec::Presented {
                generators,
                relations,
            } => {
                let reversed: Vec<(Word, Word)> = relations
                    .iter()
                    .map(|(l, r)| (l.reversed(), r.reversed()))
                    .collect();
                let closed = reversed.iter().all(|(l, r)| {
                    relations
                        .iter()
                        .any(|(a, b)| (a == l && b == r) || (a == r && b == l))
                });
                if closed {
                    self.clone()
                } else {
                    MonoidSpec::Presented {
                        generators: generators.clone(),
                        relations: reversed,
                    }
                }
            }
            MonoidSpec::Product(l, r) => MonoidSpec::product(l.opposite(), r.opposite()),
        }
    }

    pub fn contains(&self, g: &Generator) -> bool {
        match (self, g) {
            (MonoidSpec::Free { generators }, Generator::Atom(name))
            | (MonoidSpec::Presented { generators, .. }, Generator::Atom(name)) => {
                generators.iter().any(|n| n == name)
            }
            (MonoidSpec::Product(l, _), Generator::Left(inner)) => l.contains(inner),
            (MonoidSpec::Product(_, r), Generator::Right(inner)) => r.contains(inner),
            _ => false,
        }
    }

    pub fn check_word(&self, u: &Word) -> Result<(), MonoidError> {
        match u.symbols().iter().find(|g| !self.contains(g)) {
            Some(g) => Err(MonoidError::UnknownGenerator(g.clone())),
            None => Ok(()),
        }
    }

    /// Position of `g` in declaration order.
    pub fn generator_index(&self, g: &Generator) -> Option<usize> {
        self.generators().iter().position(|h| h == g)
    }

    /// Defining relations of the presentation. Products contribute the lifted
    /// relations of both factors plus `(x,e)(e,y) = (e,y)(x,e)`.
    pub fn defining_relations(&self) -> Vec<(Word, Word)> {
        match self {
            MonoidSpec::Free { .. } => Vec::new(),
            MonoidSpec::Presented { relations, .. } => relations.clone(),
            MonoidSpec::Product(l, r) => {
                let mut out: Vec<(Word, Word)> = l
                    .defining_relations()
                    .into_iter()
                    .map(|(a, b)| (a.on_left(), b.on_left()))
                    .collect();
                out.extend(
                    r.defining_relations()
                        .into_iter()
                        .map(|(a, b)| (a.on_right(), b.on_right())),
                );
                for a in l.generators() {
                    for b in r.generators() {
                        let (a, b) = (Generator::left(a.clone()), Generator::right(b));
                        out.push((
                            Word::new(vec![a.clone(), b.clone()]),
                            Word::new(vec![b, a]),
                        ));
                    }
                }
                out
            }
        }
    }

    fn shape(&self) -> Option<Shape> {
        match self {
            MonoidSpec::Free { .. } => Some(Shape::Free),
            MonoidSpec::Presented {
                generators,
                relations,
            } => {
                if relations.is_empty() {
                    return Some(Shape::Free);
                }
                let mut pairs = BTreeSet::new();
                for (l, r) in relations {
                    match (l.symbols(), r.symbols()) {
                        ([a, b], [c, d]) if a == d && b == c && a != b => {
                            let pair = if a < b { (a, b) } else { (b, a) };
                            pairs.insert(pair);
                        }
                        _ => return None,
                    }
                }
                let g = generators.len();
                (pairs.len() == g * (g - 1) / 2).then_some(Shape::Commutative)
            }
            MonoidSpec::Product(..) => None,
        }
    }

    pub fn supports_normal_form(&self) -> bool {
        match self {
            MonoidSpec::Product(l, r) => l.supports_normal_form() && r.supports_normal_form(),
            _ => self.shape().is_some(),
        }
    }

    /// Canonical representative of the monoid element denoted by `u`.
    pub fn normal_form(&self, u: &Word) -> Result<Word, MonoidError> {
        self.check_word(u)?;
        self.normal_form_unchecked(u)
    }

    fn normal_form_unchecked(&self, u: &Word) -> Result<Word, MonoidError> {
        match self {
            MonoidSpec::Product(l, r) => {
                let (a, b) = u.split_tapes()?;
                Ok(Word::pair(
                    &l.normal_form_unchecked(&a)?,
                    &r.normal_form_unchecked(&b)?,
                ))
            }
            _ => match self.shape() {
                Some(Shape::Free) => Ok(u.clone()),
                Some(Shape::Commutative) => {
                    let order = self.generators();
                    let mut symbols = u.symbols().to_vec();
                    symbols.sort_by_key(|g| order.iter().position(|h| h == g));
                    Ok(Word::new(symbols))
                }
                None => Err(MonoidError::UnsupportedNormalForm),
            },
        }
    }

    pub fn words_equal(&self, u: &Word, v: &Word) -> Result<bool, MonoidError> {
        Ok(self.normal_form(u)? == self.normal_form(v)?)
    }

    /// Whether `p` is a left divisor of `u`, i.e. `p·q = u` for some `q`.
    pub fn is_left_divisor(&self, p: &Word, u: &Word) -> Result<bool, MonoidError> {
        self.check_word(p)?;
        self.check_word(u)?;
        self.left_divides(p, u)
    }

    fn left_divides(&self, p: &Word, u: &Word) -> Result<bool, MonoidError> {
        match self {
            MonoidSpec::Product(l, r) => {
                let (p1, p2) = p.split_tapes()?;
                let (u1, u2) = u.split_tapes()?;
                Ok(l.left_divides(&p1, &u1)? && r.left_divides(&p2, &u2)?)
            }
            _ => match self.shape() {
                Some(Shape::Free) => Ok(u.symbols().starts_with(p.symbols())),
                Some(Shape::Commutative) => {
                    let mut counts: BTreeMap<&Generator, i64> = BTreeMap::new();
                    for g in u.symbols() {
                        *counts.entry(g).or_default() += 1;
                    }
                    for g in p.symbols() {
                        let c = counts.entry(g).or_default();
                        *c -= 1;
                        if *c < 0 {
                            return Ok(false);
                        }
                    }
                    Ok(true)
                }
                None => Err(MonoidError::UnsupportedNormalForm),
            },
        }
    }

    /// All generator sequences over `gens` of length at most `max_len`, in
    /// length-lexicographic order (generators ranked by declaration order).
    /// When normal forms are available only the first representative of each
    /// monoid element is kept.
    pub fn enumerate_words(
        &self,
        gens: &[Generator],
        max_len: usize,
    ) -> Result<Vec<Word>, MonoidError> {
        if let Some(g) = gens.iter().find(|g| !self.contains(g)) {
            return Err(MonoidError::UnknownGenerator(g.clone()));
        }
        let declared = self.generators();
        let mut alphabet: Vec<Generator> = gens.to_vec();
        alphabet.sort_by_key(|g| declared.iter().position(|h| h == g));
        alphabet.dedup();

        let dedup = self.supports_normal_form();
        let mut seen: HashSet<Word> = HashSet::new();
        let mut out = Vec::new();
        let mut frontier = vec![Word::empty()];
        for len in 0..=max_len {
            if len > 0 {
                frontier = frontier
                    .iter()
                    .flat_map(|w| alphabet.iter().map(move |g| w.pushed(g.clone())))
                    .collect();
            }
            for w in &frontier {
                if !dedup || seen.insert(self.normal_form_unchecked(w)?) {
                    out.push(w.clone());
                }
            }
        }
        Ok(out)
    }

    /// [`MonoidSpec::enumerate_words`] over every generator.
    pub fn enumerate_all(&self, max_len: usize) -> Result<Vec<Word>, MonoidError> {
        self.enumerate_words(&self.generators(), max_len)
    }

    /// Pairs `(u, v)` of component words with `|u| ≤ max_left`,
    /// `|v| ≤ max_right`, as product-monoid words.
    pub fn enumerate_pairs(
        &self,
        max_left: usize,
        max_right: usize,
    ) -> Result<Vec<Word>, MonoidError> {
        let (l, r) = self.factors()?;
        let lefts = l.enumerate_all(max_left)?;
        let rights = r.enumerate_all(max_right)?;
        Ok(lefts
            .iter()
            .flat_map(|u| rights.iter().map(move |v| Word::pair(u, v)))
            .collect())
    }

    /// Parses a word. Whitespace separates symbols when present; otherwise
    /// the text is tokenized greedily against the generator names. `ε`, `e`
    /// and the empty string denote the identity.
    pub fn parse_word(&self, text: &str) -> Result<Word, MonoidError> {
        let text = text.trim();
        if text.is_empty() || text == "ε" || text == "e" {
            return Ok(Word::empty());
        }
        let gens = self.generators();
        let names: Vec<(String, &Generator)> = gens.iter().map(|g| (g.to_string(), g)).collect();
        let mut symbols = Vec::new();
        for chunk in text.split_whitespace() {
            let mut rest = chunk;
            while !rest.is_empty() {
                let best = names
                    .iter()
                    .filter(|(n, _)| rest.starts_with(n.as_str()))
                    .max_by_key(|(n, _)| n.len())
                    .ok_or_else(|| MonoidError::ParseWord(text.to_string()))?;
                symbols.push(best.1.clone());
                rest = &rest[best.0.len()..];
            }
        }
        Ok(Word::new(symbols))
    }
}

impl fmt::Display for MonoidSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonoidSpec::Free { generators } => write!(f, "{{{}}}*", generators.join(",")),
            MonoidSpec::Presented {
                generators,
                relations,
            } => {
                let rels: Vec<String> = relations.iter().map(|(l, r)| format!("{l}={r}")).collect();
                write!(f, "⟨{} | {}⟩", generators.join(","), rels.join(", "))
            }
            MonoidSpec::Product(l, r) => write!(f, "{l} × {r}"),
        }
    }
}

/// A monoid (anti-)homomorphism given by generator images.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonoidMap {
    source: MonoidSpec,
    target: MonoidSpec,
    images: BTreeMap<Generator, Word>,
    anti: bool,
}

impl MonoidMap {
    pub fn new(
        source: MonoidSpec,
        target: MonoidSpec,
        images: BTreeMap<Generator, Word>,
        anti: bool,
    ) -> Result<Self, MonoidError> {
        for g in images.keys() {
            if !source.contains(g) {
                return Err(MonoidError::UnknownGenerator(g.clone()));
            }
        }
        for g in source.generators() {
            match images.get(&g) {
                Some(w) => target.check_word(w)?,
                None => return Err(MonoidError::MissingImage(g)),
            }
        }
        Ok(MonoidMap {
            source,
            target,
            images,
            anti,
        })
    }

    pub fn identity(spec: &MonoidSpec) -> Self {
        let images = spec
            .generators()
            .into_iter()
            .map(|g| (g.clone(), Word::single(g)))
            .collect();
        MonoidMap {
            source: spec.clone(),
            target: spec.clone(),
            images,
            anti: false,
        }
    }

    /// The anti-homomorphism `x₁…x_k ↦ x_k…x₁`.
    /// Word reversal, an anti-homomorphism from `spec` onto its opposite.
    pub fn mirror(spec: &MonoidSpec) -> Self {
        MonoidMap {
            anti: true,
            target: spec.opposite(),
            ..MonoidMap::identity(spec)
        }
    }

    pub fn source(&self) -> &MonoidSpec {
        &self.source
    }

    pub fn target(&self) -> &MonoidSpec {
        &self.target
    }

    pub fn is_anti(&self) -> bool {
        self.anti
    }

    pub fn image(&self, g: &Generator) -> Option<&Word> {
        self.images.get(g)
    }

    pub fn apply(&self, u: &Word) -> Result<Word, MonoidError> {
        self.source.check_word(u)?;
        let mut out = Vec::new();
        let mut push = |g: &Generator| -> Result<(), MonoidError> {
            let image = self
                .images
                .get(g)
                .ok_or_else(|| MonoidError::MissingImage(g.clone()))?;
            out.extend(image.symbols().iter().cloned());
            Ok(())
        };
        if self.anti {
            u.symbols().iter().rev().try_for_each(&mut push)?;
        } else {
            u.symbols().iter().try_for_each(&mut push)?;
        }
        Ok(Word::new(out))
    }
}
