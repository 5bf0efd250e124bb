//! The JSON graph format:
//!
//! ```json
//! {"generators": ["a", "b", "c"], "labels": [{"pair": ["a", "b"], "m": 3}]}
//! ```
//!
//! `m` is an integer `>= 2` or the string `"inf"`; absent pairs are `∞`.

use std::collections::BTreeSet;

use artin_core::coxeter::{CoxeterError, CoxeterMatrix, GeneratorId, Label};
use serde::{Deserialize, Serialize};

#[derive(thiserror::Error, Debug)]
pub enum GraphError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("generators[{index}]: {source}")]
    Generator { index: usize, source: CoxeterError },
    #[error("labels[{index}]: {source}")]
    Label { index: usize, source: CoxeterError },
    #[error("labels[{index}]: m must be an integer >= 2 or \"inf\", got {found}")]
    BadLabel { index: usize, found: String },
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Document {
    generators: Vec<String>,
    #[serde(default)]
    labels: Vec<Entry>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Entry {
    pair: [String; 2],
    m: serde_json::Value,
}

fn label_value(index: usize, m: &serde_json::Value) -> Result<Label, GraphError> {
    let bad = || GraphError::BadLabel { index, found: m.to_string() };
    match m {
        serde_json::Value::String(s) if s == "inf" => Ok(Label::INFINITY),
        serde_json::Value::Number(n) => {
            let v = n.as_u64().ok_or_else(bad)?;
            Label::finite(v).map_err(|source| GraphError::Label { index, source })
        }
        _ => Err(bad()),
    }
}

pub fn parse_coxeter(text: &str) -> Result<CoxeterMatrix, GraphError> {
    let doc: Document = serde_json::from_str(text).map_err(|e| GraphError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string().split(" at line ").next().unwrap_or_default().to_owned(),
    })?;
    let mut generators = Vec::with_capacity(doc.generators.len());
    let mut seen = BTreeSet::new();
    for (index, name) in doc.generators.iter().enumerate() {
        let g = GeneratorId::new(name).map_err(|source| GraphError::Generator { index, source })?;
        if !seen.insert(g.clone()) {
            return Err(GraphError::Generator { index, source: CoxeterError::DuplicateGenerator(name.clone()) });
        }
        generators.push(g);
    }
    let mut pairs = BTreeSet::new();
    let mut labels = Vec::with_capacity(doc.labels.len());
    for (index, entry) in doc.labels.iter().enumerate() {
        let err = |source| GraphError::Label { index, source };
        let [a, b] = &entry.pair;
        let ga = GeneratorId::new(a).map_err(err)?;
        let gb = GeneratorId::new(b).map_err(err)?;
        for g in [&ga, &gb] {
            if !seen.contains(g) {
                return Err(err(CoxeterError::UnknownGenerator(g.as_str().to_owned())));
            }
        }
        if ga == gb {
            return Err(err(CoxeterError::SelfPair(a.clone())));
        }
        let key = if ga < gb { (ga.clone(), gb.clone()) } else { (gb.clone(), ga.clone()) };
        if !pairs.insert(key.clone()) {
            return Err(err(CoxeterError::DuplicatePair(key.0.as_str().to_owned(), key.1.as_str().to_owned())));
        }
        labels.push((ga, gb, label_value(index, &entry.m)?));
    }
    CoxeterMatrix::new(generators, labels).map_err(|source| GraphError::Label { index: 0, source })
}

/// Finite labels only, pairs in lexicographic order.
pub fn serialize_coxeter(m: &CoxeterMatrix) -> serde_json::Value {
    let mut labels: Vec<(&GeneratorId, &GeneratorId, u32)> =
        m.finite_labels().map(|(p, l)| (p.lo(), p.hi(), l.value().expect("finite"))).collect();
    labels.sort();
    let doc = Document {
        generators: m.generators().iter().map(|g| g.as_str().to_owned()).collect(),
        labels: labels
            .into_iter()
            .map(|(a, b, v)| Entry { pair: [a.as_str().to_owned(), b.as_str().to_owned()], m: v.into() })
            .collect(),
    };
    serde_json::to_value(doc).expect("plain data serializes")
}

pub fn label_json(l: Label) -> serde_json::Value {
    match l.value() {
        Some(v) => v.into(),
        None => "inf".into(),
    }
}
