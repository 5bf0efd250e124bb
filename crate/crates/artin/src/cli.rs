//! Command dispatch. Exit status 0 means success or a positive verdict, 1 a
//! negative verdict, 2 a usage or input error.

use std::collections::BTreeSet;
use std::fmt::Display;
use std::io::{Read, Write};

use artin_core::bass_serre::{classify_action, TreeActionResult};
use artin_core::classifier::{is_parabolic_retract_compatible, CompatibilityReport, TripleStatus, TripleVerdict};
use artin_core::coxeter::{CoxeterMatrix, GeneratorId, Label};
use artin_core::dihedral::{DihedralPresentation, NormalForm};
use artin_core::free_product::{CyclicOrder, FreeProductSignature, FreeProductWord};
use artin_core::generators::{gen_parabolic_retractable, gen_parabolic_retractable_with_cross, gen_retract_compatible};
use artin_core::hom::{
    classify_image, enumerate_cases, verify_hom, Classification, HomCandidate, HomError, HomParams, SearchBounds,
};
use artin_core::retraction::{apply, synth_retraction, Image, RetractionError, TraceRule};
use artin_core::word::Word;
use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use crate::graph::{label_json, parse_coxeter, serialize_coxeter};

#[derive(Parser, Debug)]
#[command(name = "artin", version, about = "Retractions and dihedral word problems for Artin groups")]
struct Cli {
    /// Indent JSON output.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide parabolic-retract-compatibility of a matrix file ("-" reads stdin).
    Classify { file: String },
    /// Synthesize the retraction onto the parabolic subgroup on --keep.
    Synth {
        file: String,
        #[arg(long, value_delimiter = ',')]
        keep: Vec<String>,
        #[arg(long)]
        trace: bool,
    },
    /// Apply the synthesized retraction to a word.
    Apply {
        file: String,
        #[arg(long, value_delimiter = ',')]
        keep: Vec<String>,
        word: String,
    },
    /// Word problem in a dihedral Artin group.
    Word {
        #[command(subcommand)]
        command: WordCommand,
    },
    /// Action of a free product of two cyclic groups on its Bass-Serre tree.
    Tree {
        #[command(subcommand)]
        command: TreeCommand,
    },
    /// Homomorphisms between dihedral Artin groups fixing the first generator.
    Hom {
        #[command(subcommand)]
        command: HomCommand,
    },
    /// Seeded random matrices.
    Gen {
        #[command(subcommand)]
        command: GenCommand,
    },
}

#[derive(clap::Args, Debug)]
struct DihedralArgs {
    /// Label m, an integer >= 2 or "inf".
    #[arg(long, value_parser = parse_label)]
    m: Label,
    /// The two generators, in increasing order.
    #[arg(long, value_delimiter = ',', default_value = "a,b")]
    gens: Vec<String>,
}

#[derive(Subcommand, Debug)]
enum WordCommand {
    /// Normal form of a word.
    Nf {
        #[command(flatten)]
        group: DihedralArgs,
        word: String,
    },
    /// Whether two words are equal (exit 0) or not (exit 1).
    Eq {
        #[command(flatten)]
        group: DihedralArgs,
        left: String,
        right: String,
    },
}

#[derive(Subcommand, Debug)]
enum TreeCommand {
    /// Elliptic or hyperbolic, with translation length. Words use `x` for the
    /// first factor and `y` for the second.
    Classify {
        #[arg(long, value_delimiter = ',', num_args = 1, value_parser = parse_order)]
        orders: Vec<CyclicOrder>,
        word: String,
    },
}

#[derive(clap::Args, Debug)]
struct LabelPair {
    #[arg(long, value_parser = parse_label)]
    ma: Label,
    #[arg(long, value_parser = parse_label)]
    mb: Label,
}

#[derive(Subcommand, Debug)]
enum HomCommand {
    /// Families listed for (m_A, m_B).
    List {
        #[command(flatten)]
        labels: LabelPair,
    },
    /// Whether a1 -> b1, a2 -> IMAGE is a homomorphism.
    Verify {
        #[command(flatten)]
        labels: LabelPair,
        #[arg(long)]
        image: String,
    },
    /// First family matching a1 -> b1, a2 -> IMAGE.
    Classify {
        #[command(flatten)]
        labels: LabelPair,
        #[arg(long)]
        image: String,
        /// Largest conjugator syllable length searched.
        #[arg(long)]
        bound: Option<usize>,
    },
}

#[derive(Subcommand, Debug)]
enum GenCommand {
    /// A retract-compatible matrix of rank N.
    Retract {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// A parabolic-retract-compatible matrix with the given odd-component sizes.
    Parabolic {
        #[arg(long, value_delimiter = ',', num_args = 1)]
        blocks: Vec<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Use this label between every pair of blocks.
        #[arg(long, value_parser = parse_label)]
        cross: Option<Label>,
    },
}

fn parse_label(s: &str) -> Result<Label, String> {
    if s == "inf" {
        return Ok(Label::INFINITY);
    }
    let v: u64 = s.parse().map_err(|_| format!("expected an integer >= 2 or \"inf\", got {s:?}"))?;
    Label::finite(v).map_err(|e| e.to_string())
}

fn parse_order(s: &str) -> Result<CyclicOrder, String> {
    if s == "inf" {
        return Ok(CyclicOrder::Infinite);
    }
    match s.parse::<u32>() {
        Ok(n) if n >= 2 => Ok(CyclicOrder::Finite(n)),
        _ => Err(format!("expected an order >= 2 or \"inf\", got {s:?}")),
    }
}

/// What a command produced: an exit status and a stdout document.
enum Outcome {
    Json(i32, Value),
    Text(i32, String),
}

/// One-line diagnostic; always exit 2.
struct Failure(String);

impl<E: Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

fn context<T, E: Display>(what: &str, r: Result<T, E>) -> Result<T, Failure> {
    r.map_err(|e| Failure(format!("{what}: {e}")))
}

/// Runs one invocation. `args` excludes the program name.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let argv = std::iter::once(std::ffi::OsString::from("artin")).chain(args.into_iter().map(Into::into));
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = write!(stdout, "{e}");
            return 0;
        }
        Err(e) => {
            let first = e.to_string().lines().next().unwrap_or("error: bad usage").to_owned();
            let _ = writeln!(stderr, "{first}");
            return 2;
        }
    };
    match dispatch(cli.command, stdin) {
        Ok(Outcome::Json(code, v)) => {
            let text = if cli.pretty { serde_json::to_string_pretty(&v) } else { serde_json::to_string(&v) };
            let _ = writeln!(stdout, "{}", text.expect("JSON values serialize"));
            code
        }
        Ok(Outcome::Text(code, s)) => {
            let _ = writeln!(stdout, "{s}");
            code
        }
        Err(Failure(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            2
        }
    }
}

fn dispatch(command: Command, stdin: &mut dyn Read) -> Result<Outcome, Failure> {
    match command {
        Command::Classify { file } => classify(&load(&file, stdin)?),
        Command::Synth { file, keep, trace } => synth(&load(&file, stdin)?, &keep, trace),
        Command::Apply { file, keep, word } => apply_cmd(&load(&file, stdin)?, &keep, &word),
        Command::Word { command } => word_cmd(command),
        Command::Tree { command: TreeCommand::Classify { orders, word } } => tree_classify(&orders, &word),
        Command::Hom { command } => hom_cmd(command),
        Command::Gen { command } => gen_cmd(command),
    }
}

fn load(file: &str, stdin: &mut dyn Read) -> Result<CoxeterMatrix, Failure> {
    let text = if file == "-" {
        let mut s = String::new();
        context("stdin", stdin.read_to_string(&mut s))?;
        s
    } else {
        context(file, std::fs::read_to_string(file))?
    };
    context(file, parse_coxeter(&text))
}

fn names(gs: &[GeneratorId]) -> Value {
    gs.iter().map(|g| g.as_str()).collect()
}

fn certificate(v: &TripleVerdict) -> Value {
    let rule = match v.status {
        TripleStatus::Fail(r) => r.name(),
        TripleStatus::Pass => "Pass",
    };
    json!({
        "rule": rule,
        "triple": names(&v.triple),
        "labels": v.labels.iter().map(|&l| label_json(l)).collect::<Value>(),
    })
}

fn classify(m: &CoxeterMatrix) -> Result<Outcome, Failure> {
    Ok(match is_parabolic_retract_compatible(m) {
        CompatibilityReport::Compatible { partition, cross_labels } => Outcome::Json(
            0,
            json!({
                "compatible": true,
                "partition": partition.blocks().iter().map(|b| names(b)).collect::<Value>(),
                "cross_labels": cross_labels
                    .iter()
                    .map(|(&(i, j), &l)| json!({"blocks": [i, j], "m": label_json(l)}))
                    .collect::<Value>(),
            }),
        ),
        CompatibilityReport::Incompatible { first_violation } => Outcome::Json(1, certificate(&first_violation)),
    })
}

fn keep_set(m: &CoxeterMatrix, keep: &[String]) -> Result<BTreeSet<GeneratorId>, Failure> {
    let mut out = BTreeSet::new();
    for (i, name) in keep.iter().enumerate() {
        let g = context(&format!("--keep item {}", i + 1), GeneratorId::new(name))?;
        if !m.contains(&g) {
            return Err(Failure(format!("--keep item {}: unknown generator {name:?}", i + 1)));
        }
        out.insert(g);
    }
    Ok(out)
}

/// `Ok(Err(outcome))` carries a negative verdict.
fn retraction(
    m: &CoxeterMatrix,
    keep: &[String],
) -> Result<Result<(artin_core::retraction::GeneratorMap, artin_core::retraction::RetractionTrace), Outcome>, Failure> {
    let keep = keep_set(m, keep)?;
    match synth_retraction(m, &keep) {
        Ok(r) => Ok(Ok(r)),
        Err(RetractionError::NotParabolicRetractCompatible(v)) => Ok(Err(Outcome::Json(1, certificate(&v)))),
        Err(e) => Err(e.into()),
    }
}

fn synth(m: &CoxeterMatrix, keep: &[String], with_trace: bool) -> Result<Outcome, Failure> {
    let (r, trace) = match retraction(m, keep)? {
        Ok(r) => r,
        Err(negative) => return Ok(negative),
    };
    let map: serde_json::Map<String, Value> = r
        .assignment()
        .iter()
        .map(|(g, img)| {
            let v = match img {
                Image::Generator(h) => Value::from(h.as_str()),
                Image::Identity => Value::Null,
            };
            (g.as_str().to_owned(), v)
        })
        .collect();
    let mut out = json!({ "map": map });
    if with_trace {
        let steps: Value = trace
            .steps
            .iter()
            .map(|s| {
                let (rule, target) = match &s.rule {
                    TraceRule::PsiMap { target } => ("PsiMap", Value::from(target.as_str())),
                    TraceRule::PhiSingletonToIdentity => ("PhiSingletonToIdentity", Value::Null),
                    TraceRule::PhiViaPsi { target } => ("PhiViaPsi", Value::from(target.as_str())),
                };
                json!({"removed": s.removed.as_str(), "rule": rule, "target": target})
            })
            .collect();
        out["trace"] = steps;
    }
    Ok(Outcome::Json(0, out))
}

fn apply_cmd(m: &CoxeterMatrix, keep: &[String], word: &str) -> Result<Outcome, Failure> {
    let w = context("word", Word::parse(word))?;
    let (r, _) = match retraction(m, keep)? {
        Ok(r) => r,
        Err(negative) => return Ok(negative),
    };
    Ok(Outcome::Text(0, context("word", apply(&r, &w))?.to_string()))
}

fn presentation(group: &DihedralArgs) -> Result<DihedralPresentation, Failure> {
    let [a, b] = group.gens.as_slice() else {
        return Err(Failure(format!("--gens: expected two generators, got {}", group.gens.len())));
    };
    let (a, b) = (context("--gens item 1", GeneratorId::new(a))?, context("--gens item 2", GeneratorId::new(b))?);
    context("--gens", DihedralPresentation::new(group.m, a, b))
}

fn word_cmd(command: WordCommand) -> Result<Outcome, Failure> {
    match command {
        WordCommand::Nf { group, word } => {
            let p = presentation(&group)?;
            let w = context("word", Word::parse(&word))?;
            let nf = context("word", p.normal_form(&w))?;
            let mut out = json!({ "normal_form": p.normal_form_word(&nf).to_string() });
            if let NormalForm::Garside(g) = &nf {
                out["delta_power"] = g.delta_power.into();
                out["simple_factors"] = g.factors.len().into();
            }
            Ok(Outcome::Json(0, out))
        }
        WordCommand::Eq { group, left, right } => {
            let p = presentation(&group)?;
            let u = context("first word", Word::parse(&left))?;
            let v = context("second word", Word::parse(&right))?;
            context("first word", p.normal_form(&u))?;
            context("second word", p.normal_form(&v))?;
            let equal = context("words", p.words_equal(&u, &v))?;
            Ok(Outcome::Json(if equal { 0 } else { 1 }, json!({ "equal": equal })))
        }
    }
}

fn tree_classify(orders: &[CyclicOrder], word: &str) -> Result<Outcome, Failure> {
    let [h, k] = orders else {
        return Err(Failure(format!("--orders: expected two orders, got {}", orders.len())));
    };
    let sig = context("--orders", FreeProductSignature::new(*h, *k))?;
    let w = context("word", FreeProductWord::parse(word, sig))?;
    let out = match classify_action(&w) {
        TreeActionResult::Elliptic { fixed_vertex } => json!({
            "kind": "elliptic",
            "translation_length": 0,
            "fixed_vertex": fixed_vertex.to_string(),
        }),
        TreeActionResult::Hyperbolic { translation_length, axis_sample } => json!({
            "kind": "hyperbolic",
            "translation_length": translation_length,
            "axis_sample": axis_sample.iter().map(|v| v.to_string()).collect::<Value>(),
        }),
    };
    Ok(Outcome::Json(0, out))
}

fn params_json(p: &HomParams) -> Value {
    match p {
        HomParams::Fixed => json!({}),
        HomParams::Any(w) => json!({ "image": w.to_string() }),
        HomParams::T(t) => json!({ "t": t }),
        HomParams::T1T2(t1, t2) => json!({ "t1": t1, "t2": t2 }),
        HomParams::Conjugate { t, beta } => json!({ "t": t, "beta": beta.to_string() }),
    }
}

fn hom_cmd(command: HomCommand) -> Result<Outcome, Failure> {
    match command {
        HomCommand::List { labels } => {
            let families: Value = enumerate_cases(labels.ma, labels.mb)
                .iter()
                .map(|f| {
                    json!({
                        "case": f.case.as_str(),
                        "image_a2": f.case.formula(),
                        "parameters": f.case.slots(),
                        "constraints": f.constraints.iter().map(|c| c.text()).collect::<Vec<_>>(),
                    })
                })
                .collect();
            Ok(Outcome::Json(
                0,
                json!({"ma": label_json(labels.ma), "mb": label_json(labels.mb), "families": families}),
            ))
        }
        HomCommand::Verify { labels, image } => {
            let c = HomCandidate::new(labels.ma, labels.mb, context("--image", Word::parse(&image))?);
            let ok = context("--image", verify_hom(&c))?;
            Ok(Outcome::Json(if ok { 0 } else { 1 }, json!({ "homomorphism": ok })))
        }
        HomCommand::Classify { labels, image, bound } => {
            let c = HomCandidate::new(labels.ma, labels.mb, context("--image", Word::parse(&image))?);
            let mut bounds = SearchBounds::default();
            if let Some(b) = bound {
                bounds.max_conjugator_syllables = b;
            }
            Ok(match classify_image(&c, bounds) {
                Ok(Classification::Matched { case, params }) => {
                    Outcome::Json(0, json!({"case": case.as_str(), "params": params_json(&params)}))
                }
                Ok(Classification::Unknown) => Outcome::Json(1, json!({"case": null, "homomorphism": true})),
                Err(HomError::NotAHomomorphism) => Outcome::Json(1, json!({"case": null, "homomorphism": false})),
                Err(e) => return Err(Failure(format!("--image: {e}"))),
            })
        }
    }
}

fn gen_cmd(command: GenCommand) -> Result<Outcome, Failure> {
    let m = match command {
        GenCommand::Retract { n, seed } => context("--n", gen_retract_compatible(n, seed))?,
        GenCommand::Parabolic { blocks, seed, cross: None } => {
            context("--blocks", gen_parabolic_retractable(&blocks, seed))?
        }
        GenCommand::Parabolic { blocks, seed, cross: Some(c) } => {
            context("--cross", gen_parabolic_retractable_with_cross(&blocks, seed, c))?
        }
    };
    Ok(Outcome::Json(0, serialize_coxeter(&m)))
}
