//! Coxeter matrices over a finite named generating set.
//!
//! A [`CoxeterMatrix`] stores one [`Label`] per unordered pair of distinct
//! generators. Pairs that were never given a finite label are `∞`, which is
//! the Coxeter-graph convention (no edge drawn). The diagonal is implicitly
//! `1` and never stored.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

/// Errors raised while building or restricting a Coxeter matrix.
#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum CoxeterError {
    #[error("invalid generator name {0:?}: expected letters, digits or '_' and no leading digit")]
    InvalidGeneratorName(String),
    #[error("duplicate generator {0:?}")]
    DuplicateGenerator(String),
    #[error("label {0} is not a valid off-diagonal Coxeter label (must be >= 2 or inf)")]
    InvalidLabel(u64),
    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),
    #[error("pair ({0}, {0}) is on the diagonal; diagonal labels are fixed to 1")]
    SelfPair(String),
    #[error("duplicate entry for pair ({0}, {1})")]
    DuplicatePair(String, String),
}

/// Name of a standard generator.
///
/// Names are nonempty tokens of ASCII letters, digits and underscores that do
/// not start with a digit. The derived ordering is lexicographic on the name
/// and is the tie-break order used everywhere in the crate.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GeneratorId(String);

impl GeneratorId {
    pub fn new(name: &str) -> Result<Self, CoxeterError> {
        let mut chars = name.chars();
        let valid = match chars.next() {
            Some(c) if c.is_ascii_alphabetic() || c == '_' => chars.all(|c| c.is_ascii_alphanumeric() || c == '_'),
            _ => false,
        };
        if valid {
            Ok(GeneratorId(name.to_string()))
        } else {
            Err(CoxeterError::InvalidGeneratorName(name.to_string()))
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for GeneratorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl TryFrom<&str> for GeneratorId {
    type Error = CoxeterError;

    fn try_from(name: &str) -> Result<Self, Self::Error> {
        GeneratorId::new(name)
    }
}

/// An off-diagonal Coxeter label: an integer `m >= 2` or `∞`.
///
/// Ordered with `∞` above every finite value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Label(Option<u32>);

impl Label {
    pub const INFINITY: Label = Label(None);

    pub fn finite(m: u64) -> Result<Label, CoxeterError> {
        match u32::try_from(m) {
            Ok(v) if v >= 2 => Ok(Label(Some(v))),
            _ => Err(CoxeterError::InvalidLabel(m)),
        }
    }

    /// The finite value, or `None` for `∞`.
    pub fn value(self) -> Option<u32> {
        self.0
    }

    pub fn is_infinite(self) -> bool {
        self.0.is_none()
    }

    /// Finite and odd.
    pub fn is_odd(self) -> bool {
        matches!(self.0, Some(m) if m % 2 == 1)
    }

    /// Finite and even.
    pub fn is_even(self) -> bool {
        matches!(self.0, Some(m) if m % 2 == 0)
    }
}

impl PartialOrd for Label {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Label {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.0, other.0) {
            (Some(a), Some(b)) => a.cmp(&b),
            (Some(_), None) => Ordering::Less,
            (None, Some(_)) => Ordering::Greater,
            (None, None) => Ordering::Equal,
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            Some(m) => write!(f, "{m}"),
            None => f.write_str("inf"),
        }
    }
}

/// Unordered pair of distinct generators, stored with `lo < hi`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pair {
    lo: GeneratorId,
    hi: GeneratorId,
}

impl Pair {
    /// Returns `None` when `a == b`.
    pub fn new(a: GeneratorId, b: GeneratorId) -> Option<Pair> {
        match a.cmp(&b) {
            Ordering::Less => Some(Pair { lo: a, hi: b }),
            Ordering::Greater => Some(Pair { lo: b, hi: a }),
            Ordering::Equal => None,
        }
    }

    pub fn lo(&self) -> &GeneratorId {
        &self.lo
    }

    pub fn hi(&self) -> &GeneratorId {
        &self.hi
    }
}

/// Symmetric Coxeter matrix keyed on unordered generator pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoxeterMatrix {
    generators: Vec<GeneratorId>,
    finite: BTreeMap<Pair, Label>,
}

impl CoxeterMatrix {
    /// Builds a matrix from a generator list and explicit labels.
    ///
    /// Pairs without an entry are `∞`. An explicit `∞` entry is accepted and
    /// counts towards duplicate detection.
    pub fn new<I>(mut generators: Vec<GeneratorId>, labels: I) -> Result<Self, CoxeterError>
    where
        I: IntoIterator<Item = (GeneratorId, GeneratorId, Label)>,
    {
        generators.sort();
        let mut seen = BTreeSet::new();
        for g in &generators {
            if !seen.insert(g.clone()) {
                return Err(CoxeterError::DuplicateGenerator(g.to_string()));
            }
        }
        let mut finite = BTreeMap::new();
        let mut given = BTreeSet::new();
        for (a, b, label) in labels {
            for g in [&a, &b] {
                if !seen.contains(g) {
                    return Err(CoxeterError::UnknownGenerator(g.to_string()));
                }
            }
            let pair = Pair::new(a.clone(), b).ok_or_else(|| CoxeterError::SelfPair(a.to_string()))?;
            if !given.insert(pair.clone()) {
                return Err(CoxeterError::DuplicatePair(pair.lo.to_string(), pair.hi.to_string()));
            }
            if !label.is_infinite() {
                finite.insert(pair, label);
            }
        }
        Ok(CoxeterMatrix { generators, finite })
    }

    /// Convenience constructor from string names and integer labels, where
    /// `0` stands for `∞`.
    pub fn from_names(names: &[&str], labels: &[(&str, &str, u64)]) -> Result<Self, CoxeterError> {
        let gens = names.iter().map(|n| GeneratorId::new(n)).collect::<Result<Vec<_>, _>>()?;
        let mut entries = Vec::with_capacity(labels.len());
        for &(a, b, m) in labels {
            let label = if m == 0 { Label::INFINITY } else { Label::finite(m)? };
            entries.push((GeneratorId::new(a)?, GeneratorId::new(b)?, label));
        }
        CoxeterMatrix::new(gens, entries)
    }

    /// Generators in lexicographic order.
    pub fn generators(&self) -> &[GeneratorId] {
        &self.generators
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn contains(&self, g: &GeneratorId) -> bool {
        self.generators.contains(g)
    }

    /// Label of the pair `{a, b}`. `a` and `b` must be distinct generators of
    /// the matrix; anything without a stored finite label reads as `∞`.
    pub fn label(&self, a: &GeneratorId, b: &GeneratorId) -> Label {
        debug_assert!(a != b, "label requested on the diagonal");
        Pair::new(a.clone(), b.clone()).and_then(|p| self.finite.get(&p).copied()).unwrap_or(Label::INFINITY)
    }

    /// Finite labels in lexicographic pair order.
    pub fn finite_labels(&self) -> impl Iterator<Item = (&Pair, Label)> {
        self.finite.iter().map(|(p, l)| (p, *l))
    }

    /// Restriction to the rows and columns indexed by `subset`, keeping the
    /// generator order of `self`.
    pub fn submatrix<'a, I>(&self, subset: I) -> Result<CoxeterMatrix, CoxeterError>
    where
        I: IntoIterator<Item = &'a GeneratorId>,
    {
        let mut keep = BTreeSet::new();
        for g in subset {
            if !self.contains(g) {
                return Err(CoxeterError::UnknownGenerator(g.to_string()));
            }
            keep.insert(g.clone());
        }
        let generators = self.generators.iter().filter(|g| keep.contains(*g)).cloned().collect();
        let finite = self
            .finite
            .iter()
            .filter(|(p, _)| keep.contains(&p.lo) && keep.contains(&p.hi))
            .map(|(p, l)| (p.clone(), *l))
            .collect();
        Ok(CoxeterMatrix { generators, finite })
    }

    /// Connected components of the graph whose edges are the odd labels.
    pub fn odd_components(&self) -> OddComponentPartition {
        let n = self.generators.len();
        let index: BTreeMap<&GeneratorId, usize> = self.generators.iter().enumerate().map(|(i, g)| (g, i)).collect();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for (pair, label) in &self.finite {
            if label.is_odd() {
                let (a, b) = (find(&mut parent, index[&pair.lo]), find(&mut parent, index[&pair.hi]));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        let mut groups: BTreeMap<usize, Vec<GeneratorId>> = BTreeMap::new();
        for (i, g) in self.generators.iter().enumerate() {
            let root = find(&mut parent, i);
            groups.entry(root).or_default().push(g.clone());
        }
        let mut blocks: Vec<Vec<GeneratorId>> = groups
            .into_values()
            .map(|mut b| {
                b.sort();
                b
            })
            .collect();
        blocks.sort_by(|x, y| x[0].cmp(&y[0]));
        OddComponentPartition::from_blocks(blocks)
    }
}

/// Partition of the generators into odd-connected blocks.
///
/// Blocks are sorted internally and listed by their least member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OddComponentPartition {
    blocks: Vec<Vec<GeneratorId>>,
    block_index: BTreeMap<GeneratorId, usize>,
}

impl OddComponentPartition {
    fn from_blocks(blocks: Vec<Vec<GeneratorId>>) -> Self {
        let block_index = blocks.iter().enumerate().flat_map(|(i, b)| b.iter().map(move |g| (g.clone(), i))).collect();
        OddComponentPartition { blocks, block_index }
    }

    pub fn blocks(&self) -> &[Vec<GeneratorId>] {
        &self.blocks
    }

    pub fn block_of(&self, g: &GeneratorId) -> Option<usize> {
        self.block_index.get(g).copied()
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }
}
