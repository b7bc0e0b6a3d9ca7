//! Command-line driver. Exit codes: 0 success, 1 validation failure,
//! 2 usage or parse error.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::ToPrimitive;

use crate::automaton::{GeneralizedAutomaton, IsolationOutcome, PostulateReport};
use crate::closures::{
    combine_with_regular, complement_isolated, inverse_relation_generalized, kronecker_product,
    mirror, DeterministicAcceptor, RegularMode,
};
use crate::document::{AutomatonDocument, Kind, Loaded};
use crate::error::Error;
use crate::gallery::{self, GalleryAutomaton, GalleryParams};
use crate::monoid::Word;
use crate::numerics::{Backend, NumericsError, Rational, Scalar};
use crate::turakainen::{full_pipeline, rescale_cutpoint, run_stage, zero_sum_form, StageTag};

#[derive(Parser, Debug)]
#[command(
    name = "monoidal-automata",
    version,
    about = "Stochastic and generalized automata over finitely generated monoids"
)]
struct Cli {
    /// Required backend; documents on another backend are rejected.
    #[arg(long, global = true)]
    backend: Option<Backend>,
    /// Write the resulting document here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the extension postulate and, for stochastic documents, stochasticity.
    Validate { doc: PathBuf },
    /// Print the acceptance value of a word and whether it exceeds the cut point.
    Accept {
        doc: PathBuf,
        /// Word over the generators; `ε` or `""` for the empty word.
        word: String,
        #[arg(long)]
        cut: Option<String>,
    },
    /// Print the acceptance value `πQ(u)f` of a word.
    Value { doc: PathBuf, word: String },
    /// List accepted words up to a length.
    Enumerate {
        doc: PathBuf,
        #[arg(long)]
        cut: Option<String>,
        #[arg(long, default_value_t = 4)]
        max_len: usize,
    },
    /// Run one normalization stage or the full pipeline (`full`).
    Transform {
        /// rescaled, zero_sum, nonneg, stochastic_cut0, distribution, acceptor or full.
        stage: String,
        doc: PathBuf,
        /// Cut point of untagged input, or the target cut for `rescaled`.
        #[arg(long)]
        cut: Option<String>,
    },
    /// Combine automata.
    Compose {
        #[arg(value_enum)]
        op: ComposeOp,
        /// One document, or two for union, intersect, diff and kron.
        #[arg(num_args = 1..=2, required = true)]
        docs: Vec<PathBuf>,
        /// Cut point of the first operand.
        #[arg(long)]
        cut: Option<String>,
        /// Cut point of the second operand (kron).
        #[arg(long)]
        cut2: Option<String>,
        /// Isolation gap to verify before complementing.
        #[arg(long)]
        delta: Option<String>,
        /// Word length up to which the isolation gap is verified.
        #[arg(long, default_value_t = 8)]
        max_len: usize,
    },
    /// Emit a ready-made automaton.
    Gallery {
        id: String,
        #[arg(long)]
        m: Option<u32>,
        /// Rotation angle as a fraction of a full turn.
        #[arg(long)]
        phi: Option<f64>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ComposeOp {
    Union,
    Intersect,
    Diff,
    Complement,
    Mirror,
    Inverse,
    Kron,
}

enum Failure {
    Usage(String),
    Invalid(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let usage = matches!(
            e,
            Error::Document(_)
                | Error::InvalidParameter(_)
                | Error::Monoid(_)
                | Error::Numerics(
                    NumericsError::InvalidLiteral { .. }
                        | NumericsError::UnknownBackend(_)
                        | NumericsError::BackendMismatch { .. }
                )
                | Error::StageMisuse { .. }
                | Error::ExactBackendRequired(_)
                | Error::FloatBackendRequired(_)
        );
        if usage {
            Failure::Usage(e.to_string())
        } else {
            Failure::Invalid(e.to_string())
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = std::result::Result<i32, Failure>;

/// Runs the CLI on `args` (including the program name) and returns the exit
/// code.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    match dispatch(&cli, out, err) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(Failure::Invalid(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
    }
}

fn read_doc(path: &Path, backend: Option<Backend>) -> std::result::Result<AutomatonDocument, Failure> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        s
    } else {
        fs::read_to_string(path)
            .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?
    };
    let doc = AutomatonDocument::from_json(&text)
        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    if let Some(expected) = backend {
        let found = doc.backend()?;
        if found != expected && doc.kind != Kind::Boolean {
            return Err(Error::from(NumericsError::BackendMismatch { expected, found }).into());
        }
    }
    Ok(doc)
}

fn emit(cli: &Cli, doc: &AutomatonDocument, out: &mut dyn Write) -> Outcome {
    let text = doc.to_json();
    match &cli.output {
        Some(path) => fs::write(path, text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(0)
}

fn parse_scalar<T: Scalar>(text: &str) -> std::result::Result<T, Failure> {
    T::parse_literal(text).map_err(|e| Error::from(e).into())
}

fn resolve_cut<T: Scalar>(
    flag: &Option<String>,
    doc_cut: Option<T>,
) -> std::result::Result<T, Failure> {
    match flag {
        Some(text) => parse_scalar(text),
        None => doc_cut.ok_or_else(|| {
            Failure::Usage("no cut point: pass --cut or set `cut` in the document".into())
        }),
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    match &cli.command {
        Command::Validate { doc } => validate(&read_doc(doc, cli.backend)?, out),
        Command::Accept { doc, word, cut } => {
            match read_doc(doc, cli.backend)?.load()? {
                Loaded::Exact { automaton, cut: c } => accept(&automaton, word, resolve_cut(cut, c)?, out),
                Loaded::Float { automaton, cut: c } => accept(&automaton, word, resolve_cut(cut, c)?, out),
                Loaded::Boolean(b) => {
                    let u = b.monoid().parse_word(word).map_err(Error::from)?;
                    writeln!(out, "accepted: {}", b.accepts_boolean(&u)?)?;
                    Ok(0)
                }
            }
        }
        Command::Value { doc, word } => match read_doc(doc, cli.backend)?.load()? {
            Loaded::Exact { automaton, .. } => value(&automaton, word, out),
            Loaded::Float { automaton, .. } => value(&automaton, word, out),
            Loaded::Boolean(b) => value(&b.to_generalized()?.0, word, out),
        },
        Command::Enumerate { doc, cut, max_len } => match read_doc(doc, cli.backend)?.load()? {
            Loaded::Exact { automaton, cut: c } => {
                print_words(&automaton.enumerate_language(&resolve_cut(cut, c)?, *max_len)?, out)
            }
            Loaded::Float { automaton, cut: c } => {
                print_words(&automaton.enumerate_language(&resolve_cut(cut, c)?, *max_len)?, out)
            }
            Loaded::Boolean(b) => print_words(&b.language(*max_len)?, out),
        },
        Command::Transform { stage, doc, cut } => {
            let doc = read_doc(doc, cli.backend)?;
            transform(cli, stage, &doc, cut, out, err)
        }
        Command::Compose {
            op,
            docs,
            cut,
            cut2,
            delta,
            max_len,
        } => {
            let docs = docs
                .iter()
                .map(|p| read_doc(p, cli.backend))
                .collect::<std::result::Result<Vec<_>, _>>()?;
            compose(cli, *op, &docs, cut, cut2, delta, *max_len, out)
        }
        Command::Gallery { id, m, phi } => {
            let entry = gallery::entry(id, &GalleryParams { m: *m, phi: *phi })?;
            let backend = cli.backend.unwrap_or(match entry.automaton {
                GalleryAutomaton::Float { .. } => Backend::Float,
                _ => Backend::Rational,
            });
            let kind = if entry.stochastic {
                Kind::Stochastic
            } else {
                Kind::Generalized
            };
            let doc = match (entry.automaton, backend) {
                (GalleryAutomaton::Boolean(b), _) => AutomatonDocument::from_boolean(&b),
                (GalleryAutomaton::Exact { automaton, cut }, Backend::Rational) => {
                    AutomatonDocument::from_generalized(&automaton, Some(&cut), kind)
                }
                (GalleryAutomaton::Exact { automaton, cut }, Backend::Float) => {
                    let cut = cut.to_f64().expect("finite");
                    AutomatonDocument::from_generalized(&to_float(&automaton)?, Some(&cut), kind)
                }
                (GalleryAutomaton::Float { automaton, cut }, Backend::Float) => {
                    AutomatonDocument::from_generalized(&automaton, Some(&cut), kind)
                }
                (GalleryAutomaton::Float { .. }, Backend::Rational) => {
                    return Err(Error::FloatBackendRequired("the rotation entry").into())
                }
            };
            emit(cli, &doc, out)
        }
    }
}

fn to_float(a: &GeneralizedAutomaton<Rational>) -> Result<GeneralizedAutomaton<f64>, Error> {
    let conv = |v: &Rational| v.to_f64().expect("rationals convert to f64");
    let matrices = a
        .matrices()
        .iter()
        .map(|(g, m)| {
            let rows = m.to_rows().iter().map(|r| r.iter().map(conv).collect()).collect();
            Ok((g.clone(), crate::numerics::Matrix::from_rows(rows)?))
        })
        .collect::<Result<BTreeMap<_, _>, Error>>()?;
    GeneralizedAutomaton::new_unchecked(
        a.monoid().clone(),
        matrices,
        crate::numerics::RowVec(a.initial().0.iter().map(conv).collect()),
        crate::numerics::ColVec(a.final_vector().0.iter().map(conv).collect()),
    )
}

fn validate(doc: &AutomatonDocument, out: &mut dyn Write) -> Outcome {
    writeln!(out, "kind: {}", serde_json::to_value(doc.kind).expect("enum").as_str().unwrap_or("?"))?;
    writeln!(out, "states: {}", doc.states)?;
    match doc.load()? {
        Loaded::Exact { automaton, .. } => validate_matrices(&automaton, doc.kind, out),
        Loaded::Float { automaton, .. } => validate_matrices(&automaton, doc.kind, out),
        Loaded::Boolean(b) => {
            writeln!(out, "transitions: {}", b.transitions().len())?;
            match b.to_generalized() {
                Ok(_) => writeln!(out, "0/1 embedding: satisfies the defining relations")?,
                Err(e) => writeln!(out, "0/1 embedding: {e}")?,
            }
            Ok(0)
        }
    }
}

fn validate_matrices<T: Scalar>(a: &GeneralizedAutomaton<T>, kind: Kind, out: &mut dyn Write) -> Outcome {
    let mut code = 0;
    match a.check_extension_postulate() {
        PostulateReport::Holds => writeln!(out, "extension postulate: ok")?,
        report => {
            let e = report.into_result().expect_err("violated");
            writeln!(out, "{e}")?;
            code = 1;
        }
    }
    if kind == Kind::Stochastic {
        let violations = a.stochastic_violations();
        if violations.is_empty() {
            writeln!(out, "stochastic: ok")?;
        } else {
            for v in violations {
                writeln!(out, "stochastic: {v}")?;
            }
            code = 1;
        }
    }
    Ok(code)
}

fn accept<T: Scalar>(a: &GeneralizedAutomaton<T>, word: &str, cut: T, out: &mut dyn Write) -> Outcome {
    let u = a.monoid().parse_word(word).map_err(Error::from)?;
    let v = a.acceptance_value(&u)?;
    writeln!(out, "value: {}", v.to_literal())?;
    writeln!(out, "accepted: {}", v.exceeds(&cut))?;
    Ok(0)
}

fn value<T: Scalar>(a: &GeneralizedAutomaton<T>, word: &str, out: &mut dyn Write) -> Outcome {
    let u = a.monoid().parse_word(word).map_err(Error::from)?;
    writeln!(out, "{}", a.acceptance_value(&u)?.to_literal())?;
    Ok(0)
}

fn print_words(words: &[Word], out: &mut dyn Write) -> Outcome {
    for w in words {
        writeln!(out, "{w}")?;
    }
    Ok(0)
}

fn transform(
    cli: &Cli,
    stage: &str,
    doc: &AutomatonDocument,
    cut: &Option<String>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Outcome {
    if doc.backend()? != Backend::Rational {
        return Err(Error::ExactBackendRequired("the normalization pipeline").into());
    }
    if stage == "full" {
        let (a, c) = doc.to_generalized::<Rational>()?;
        let c = resolve_cut(cut, c)?;
        let run = full_pipeline(&a, &c)?;
        writeln!(err, "states: {}", run.result.states())?;
        writeln!(err, "cut: {}", run.cut.to_literal())?;
        return emit(cli, &AutomatonDocument::from_stage(&run.final_stage()), out);
    }
    let tag: StageTag = stage.parse()?;
    let result = match doc.to_stage()? {
        Some(input) => {
            let target = cut.as_deref().map(parse_scalar::<Rational>).transpose()?;
            run_stage(&input, tag, target.as_ref())?
        }
        None => {
            let (a, c) = doc.to_generalized::<Rational>()?;
            match tag {
                StageTag::ZeroSum => zero_sum_form(&a, &resolve_cut(cut, c)?)?,
                StageTag::Rescaled => {
                    let from = c.ok_or_else(|| {
                        Failure::Usage("rescaling needs a cut point in the document".into())
                    })?;
                    rescale_cutpoint(&a, &from, &resolve_cut(cut, None)?)?
                }
                other => {
                    return Err(Error::StageMisuse {
                        expected: other
                            .predecessor()
                            .map_or("full pipeline", StageTag::name)
                            .into(),
                        found: "untagged input".into(),
                    }
                    .into())
                }
            }
        }
    };
    emit(cli, &AutomatonDocument::from_stage(&result), out)
}

fn operand_count(op: ComposeOp, docs: &[AutomatonDocument]) -> std::result::Result<(), Failure> {
    let want = match op {
        ComposeOp::Union | ComposeOp::Intersect | ComposeOp::Diff | ComposeOp::Kron => 2,
        _ => 1,
    };
    if docs.len() == want {
        Ok(())
    } else {
        Err(Failure::Usage(format!("{op:?} takes {want} document(s)").to_lowercase()))
    }
}

#[allow(clippy::too_many_arguments)]
fn compose(
    cli: &Cli,
    op: ComposeOp,
    docs: &[AutomatonDocument],
    cut: &Option<String>,
    cut2: &Option<String>,
    delta: &Option<String>,
    max_len: usize,
    out: &mut dyn Write,
) -> Outcome {
    operand_count(op, docs)?;
    match docs[0].backend()? {
        Backend::Rational => compose_on::<Rational>(cli, op, docs, cut, cut2, delta, max_len, out),
        Backend::Float => compose_on::<f64>(cli, op, docs, cut, cut2, delta, max_len, out),
    }
}

#[allow(clippy::too_many_arguments)]
fn compose_on<T: Scalar>(
    cli: &Cli,
    op: ComposeOp,
    docs: &[AutomatonDocument],
    cut: &Option<String>,
    cut2: &Option<String>,
    delta: &Option<String>,
    max_len: usize,
    out: &mut dyn Write,
) -> Outcome {
    let (a, c) = docs[0].to_generalized::<T>()?;
    let c = resolve_cut(cut, c)?;
    let doc = match op {
        ComposeOp::Union | ComposeOp::Intersect | ComposeOp::Diff => {
            let mode = match op {
                ComposeOp::Union => RegularMode::Union,
                ComposeOp::Intersect => RegularMode::Intersection,
                _ => RegularMode::Difference,
            };
            let b = docs[1].to_boolean()?;
            let regular = DeterministicAcceptor::new(b.clone())
                .or_else(|_| DeterministicAcceptor::determinize(&b))?;
            let s = a.into_stochastic()?;
            let (r, rc) = combine_with_regular(&s, &c, &regular, mode)?;
            AutomatonDocument::from_generalized(r.as_generalized(), Some(&rc), Kind::Stochastic)
        }
        ComposeOp::Complement => {
            let delta = delta
                .as_deref()
                .ok_or_else(|| Failure::Usage("complement needs --delta".into()))?;
            let delta = parse_scalar::<T>(delta)?;
            let s = a.into_stochastic()?;
            let gap = match s.check_isolation(&c, &delta, max_len)? {
                IsolationOutcome::Verified(gap) => gap,
                IsolationOutcome::Counterexample { word, value } => {
                    return Err(Failure::Invalid(format!(
                        "cut point not isolated: value of {word} is {}",
                        value.to_literal()
                    )))
                }
            };
            let (r, rc) = complement_isolated(&s, &c, &gap)?;
            AutomatonDocument::from_generalized(r.as_generalized(), Some(&rc), Kind::Stochastic)
        }
        ComposeOp::Mirror => {
            let (r, rc) = mirror(&a, &c)?;
            AutomatonDocument::from_automaton(&r, Some(&rc))
        }
        ComposeOp::Inverse => {
            let (r, rc) = inverse_relation_generalized(&a, &c)?;
            AutomatonDocument::from_automaton(&r, Some(&rc))
        }
        ComposeOp::Kron => {
            let (b, bc) = docs[1].to_generalized::<T>()?;
            let bc = resolve_cut(cut2, bc)?;
            let (r, rc) = kronecker_product(&a, &c, &b, &bc)?;
            AutomatonDocument::from_automaton(&r, Some(&rc))
        }
    };
    emit(cli, &doc, out)
}
