//! The JSON automaton document shared by the CLI and examples.
//!
//! Scalars are strings (`"3/4"` on the rational backend, `"0.5"` on the
//! float backend), so exact values survive a round trip. Field layout is
//! documented in `docs/format.md`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::automaton::GeneralizedAutomaton;
use crate::boolean::BooleanMonoidalAutomaton;
use crate::error::{Error, Result};
use crate::monoid::{Generator, MonoidSpec, Word};
use crate::numerics::{Backend, ColVec, Matrix, NumericsError, Rational, RowVec, Scalar};
use crate::turakainen::{PipelineStage, StageTag};

pub const FORMAT_VERSION: &str = "1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Generalized,
    Stochastic,
    Boolean,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum MonoidDoc {
    Free {
        generators: Vec<String>,
    },
    Presented {
        generators: Vec<String>,
        relations: Vec<[Vec<String>; 2]>,
    },
    Product {
        left: Box<MonoidDoc>,
        right: Box<MonoidDoc>,
    },
}

impl MonoidDoc {
    pub fn from_spec(spec: &MonoidSpec) -> Self {
        let word = |w: &Word| w.symbols().iter().map(ToString::to_string).collect();
        match spec {
            MonoidSpec::Free { generators } => MonoidDoc::Free {
                generators: generators.clone(),
            },
            MonoidSpec::Presented {
                generators,
                relations,
            } => MonoidDoc::Presented {
                generators: generators.clone(),
                relations: relations.iter().map(|(l, r)| [word(l), word(r)]).collect(),
            },
            MonoidSpec::Product(l, r) => MonoidDoc::Product {
                left: Box::new(MonoidDoc::from_spec(l)),
                right: Box::new(MonoidDoc::from_spec(r)),
            },
        }
    }

    pub fn to_spec(&self) -> Result<MonoidSpec> {
        Ok(match self {
            MonoidDoc::Free { generators } => MonoidSpec::free(generators)?,
            MonoidDoc::Presented {
                generators,
                relations,
            } => MonoidSpec::presented(
                generators,
                relations
                    .iter()
                    .map(|[l, r]| (Word::from_atoms(l), Word::from_atoms(r)))
                    .collect(),
            )?,
            MonoidDoc::Product { left, right } => {
                MonoidSpec::product(left.to_spec()?, right.to_spec()?)
            }
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixDoc {
    pub generator: String,
    pub entries: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransitionDoc {
    pub from: usize,
    /// A generator, or `"ε"` for the identity.
    pub label: String,
    pub to: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BooleanDoc {
    pub initial: Vec<usize>,
    #[serde(rename = "final")]
    pub final_states: Vec<usize>,
    pub transitions: Vec<TransitionDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AutomatonDocument {
    pub format_version: String,
    pub kind: Kind,
    pub backend: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stage: Option<String>,
    pub monoid: MonoidDoc,
    pub states: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub matrices: Vec<MatrixDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub pi: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub f: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cut: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub boolean: Option<BooleanDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<BTreeMap<String, String>>,
}

/// A parsed document, dispatched on kind and backend.
#[derive(Clone, Debug, PartialEq)]
pub enum Loaded {
    Exact {
        automaton: GeneralizedAutomaton<Rational>,
        cut: Option<Rational>,
    },
    Float {
        automaton: GeneralizedAutomaton<f64>,
        cut: Option<f64>,
    },
    Boolean(BooleanMonoidalAutomaton),
}

fn literals<T: Scalar>(values: &[T]) -> Vec<String> {
    values.iter().map(Scalar::to_literal).collect()
}

fn parse_all<T: Scalar>(values: &[String], field: &str) -> Result<Vec<T>> {
    values
        .iter()
        .map(|s| T::parse_literal(s).map_err(|e| Error::Document(format!("{field}: {e}"))))
        .collect()
}

impl AutomatonDocument {
    pub fn from_generalized<T: Scalar>(
        a: &GeneralizedAutomaton<T>,
        cut: Option<&T>,
        kind: Kind,
    ) -> Self {
        let matrices = a
            .generators()
            .iter()
            .map(|g| MatrixDoc {
                generator: g.to_string(),
                entries: a.matrix(g).expect("complete").to_rows().iter().map(|r| literals(r)).collect(),
            })
            .collect();
        AutomatonDocument {
            format_version: FORMAT_VERSION.into(),
            kind,
            backend: T::BACKEND.to_string(),
            stage: None,
            monoid: MonoidDoc::from_spec(a.monoid()),
            states: a.states(),
            matrices,
            pi: literals(&a.initial().0),
            f: literals(&a.final_vector().0),
            cut: cut.map(Scalar::to_literal),
            boolean: None,
            provenance: None,
        }
    }

    /// Marks the document `stochastic` when the automaton validates as such.
    pub fn from_automaton<T: Scalar>(a: &GeneralizedAutomaton<T>, cut: Option<&T>) -> Self {
        let kind = if a.stochastic_violations().is_empty() {
            Kind::Stochastic
        } else {
            Kind::Generalized
        };
        Self::from_generalized(a, cut, kind)
    }

    pub fn from_stage(stage: &PipelineStage) -> Self {
        let mut doc = Self::from_automaton(stage.automaton(), Some(stage.cut()));
        doc.stage = Some(stage.tag().to_string());
        if !stage.provenance().is_empty() {
            doc.provenance = Some(
                stage
                    .provenance()
                    .iter()
                    .map(|(k, v)| (k.clone(), v.to_literal()))
                    .collect(),
            );
        }
        doc
    }

    pub fn from_boolean(b: &BooleanMonoidalAutomaton) -> Self {
        AutomatonDocument {
            format_version: FORMAT_VERSION.into(),
            kind: Kind::Boolean,
            backend: Backend::Rational.to_string(),
            stage: None,
            monoid: MonoidDoc::from_spec(b.monoid()),
            states: b.states(),
            matrices: Vec::new(),
            pi: Vec::new(),
            f: Vec::new(),
            cut: None,
            boolean: Some(BooleanDoc {
                initial: b.initial().iter().copied().collect(),
                final_states: b.final_states().iter().copied().collect(),
                transitions: b
                    .transitions()
                    .iter()
                    .map(|t| TransitionDoc {
                        from: t.from,
                        label: t
                            .label
                            .as_ref()
                            .map_or_else(|| "ε".to_string(), ToString::to_string),
                        to: t.to,
                    })
                    .collect(),
            }),
            provenance: None,
        }
    }

    pub fn backend(&self) -> Result<Backend> {
        self.backend
            .parse()
            .map_err(|e: NumericsError| Error::Document(e.to_string()))
    }

    /// Reads the automaton on backend `T`. Checks shapes only; the defining
    /// relations are left to [`GeneralizedAutomaton::check_extension_postulate`].
    pub fn to_generalized<T: Scalar>(&self) -> Result<(GeneralizedAutomaton<T>, Option<T>)> {
        if self.kind == Kind::Boolean {
            return Err(Error::Document("boolean document has no matrices".into()));
        }
        let found = self.backend()?;
        if found != T::BACKEND {
            return Err(NumericsError::BackendMismatch {
                expected: T::BACKEND,
                found,
            }
            .into());
        }
        let monoid = self.monoid.to_spec()?;
        let mut matrices = BTreeMap::new();
        for m in &self.matrices {
            let g: Generator = m.generator.parse()?;
            let rows = m
                .entries
                .iter()
                .map(|r| parse_all(r, &format!("matrix {}", m.generator)))
                .collect::<Result<Vec<Vec<T>>>>()?;
            if rows.len() != self.states {
                return Err(Error::Shape {
                    what: format!("rows of Q({g})"),
                    expected: self.states,
                    found: rows.len(),
                });
            }
            if matrices.insert(g.clone(), Matrix::from_rows(rows)?).is_some() {
                return Err(Error::Document(format!("matrix for `{g}` given twice")));
            }
        }
        let pi = RowVec(parse_all(&self.pi, "pi")?);
        let f = ColVec(parse_all(&self.f, "f")?);
        if pi.len() != self.states {
            return Err(Error::Shape {
                what: "pi".into(),
                expected: self.states,
                found: pi.len(),
            });
        }
        let cut = match &self.cut {
            Some(c) => Some(parse_all::<T>(std::slice::from_ref(c), "cut")?.remove(0)),
            None => None,
        };
        let a = GeneralizedAutomaton::new_unchecked(monoid, matrices, pi, f)?;
        Ok((a, cut))
    }

    pub fn to_boolean(&self) -> Result<BooleanMonoidalAutomaton> {
        let b = self
            .boolean
            .as_ref()
            .ok_or_else(|| Error::Document("missing `boolean` payload".into()))?;
        let monoid = self.monoid.to_spec()?;
        let mut transitions = Vec::new();
        for t in &b.transitions {
            let label = if t.label == "ε" || t.label.is_empty() {
                Word::empty()
            } else {
                Word::single(t.label.parse()?)
            };
            transitions.push((t.from, label, t.to));
        }
        BooleanMonoidalAutomaton::new(
            monoid,
            self.states,
            b.initial.iter().copied(),
            b.final_states.iter().copied(),
            transitions,
        )
    }

    pub fn load(&self) -> Result<Loaded> {
        if self.format_version != FORMAT_VERSION {
            return Err(Error::Document(format!(
                "unsupported format_version `{}`",
                self.format_version
            )));
        }
        match (self.kind, self.backend()?) {
            (Kind::Boolean, _) => Ok(Loaded::Boolean(self.to_boolean()?)),
            (_, Backend::Rational) => {
                let (automaton, cut) = self.to_generalized()?;
                Ok(Loaded::Exact { automaton, cut })
            }
            (_, Backend::Float) => {
                let (automaton, cut) = self.to_generalized()?;
                Ok(Loaded::Float { automaton, cut })
            }
        }
    }

    /// Reassembles a pipeline stage; documents without a stage tag are
    /// treated as pipeline input.
    pub fn to_stage(&self) -> Result<Option<PipelineStage>> {
        let Some(tag) = &self.stage else {
            return Ok(None);
        };
        let tag: StageTag = tag.parse()?;
        let (automaton, cut) = self.to_generalized::<Rational>()?;
        let cut = cut.ok_or_else(|| Error::Document("stage document needs a cut".into()))?;
        let provenance = match &self.provenance {
            Some(p) => p
                .iter()
                .map(|(k, v)| {
                    Rational::parse_literal(v)
                        .map(|v| (k.clone(), v))
                        .map_err(|e| Error::Document(format!("provenance {k}: {e}")))
                })
                .collect::<Result<_>>()?,
            None => BTreeMap::new(),
        };
        Ok(Some(PipelineStage::from_parts(tag, automaton, cut, provenance)))
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("plain data");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Document(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gallery;
    use crate::numerics::ratio;

    #[test]
    fn exact_round_trip() {
        let a = gallery::two_tape_counter().unwrap();
        let doc = AutomatonDocument::from_automaton(&a, Some(&ratio(0, 1)));
        assert_eq!(doc.kind, Kind::Generalized);
        let text = doc.to_json();
        let back = AutomatonDocument::from_json(&text).unwrap();
        assert_eq!(back, doc);
        assert_eq!(back.to_json(), text);
        let (b, cut) = back.to_generalized::<Rational>().unwrap();
        assert_eq!(b, a);
        assert_eq!(cut, Some(ratio(0, 1)));
    }

    #[test]
    fn stochastic_entries_are_exact_strings() {
        let a = gallery::m_adic(3).unwrap();
        let doc = AutomatonDocument::from_automaton(a.as_generalized(), Some(&ratio(1, 2)));
        assert_eq!(doc.kind, Kind::Stochastic);
        assert_eq!(doc.matrices[1].entries[0], vec!["2/3", "1/3"]);
        assert_eq!(doc.cut.as_deref(), Some("1/2"));
    }

    #[test]
    fn boolean_round_trip() {
        let b = gallery::fig2_left().unwrap();
        let doc = AutomatonDocument::from_boolean(&b);
        let back = AutomatonDocument::from_json(&doc.to_json()).unwrap();
        assert_eq!(back.to_boolean().unwrap(), b);
    }

    #[test]
    fn float_round_trip_and_backend_mismatch() {
        let a = gallery::rotation(1.0 / 12.0).unwrap();
        let doc = AutomatonDocument::from_automaton(&a, Some(&0.0));
        let back = AutomatonDocument::from_json(&doc.to_json()).unwrap();
        let (b, _) = back.to_generalized::<f64>().unwrap();
        assert_eq!(b, a);
        assert!(matches!(
            back.to_generalized::<Rational>(),
            Err(Error::Numerics(NumericsError::BackendMismatch { .. }))
        ));
    }

    #[test]
    fn stage_round_trip() {
        let a = gallery::commutative_counter().unwrap();
        let s = crate::turakainen::zero_sum_form(&a, &ratio(0, 1)).unwrap();
        let s = crate::turakainen::nonneg_form(&s).unwrap();
        let doc = AutomatonDocument::from_stage(&s);
        let back = AutomatonDocument::from_json(&doc.to_json()).unwrap();
        assert_eq!(back.to_stage().unwrap(), Some(s));
    }

    #[test]
    fn malformed_documents() {
        assert!(AutomatonDocument::from_json("{\"format_version\": \"1\"").is_err());
        let a = gallery::commutative_counter().unwrap();
        let mut doc = AutomatonDocument::from_automaton(&a, None);
        doc.pi.pop();
        assert!(doc.to_generalized::<Rational>().is_err());
        let mut doc = AutomatonDocument::from_automaton(&a, None);
        doc.matrices[0].entries[0][0] = "0.5".into();
        assert!(doc.to_generalized::<Rational>().is_err());
        let mut doc = AutomatonDocument::from_automaton(&a, None);
        doc.format_version = "2".into();
        assert!(doc.load().is_err());
    }
}
