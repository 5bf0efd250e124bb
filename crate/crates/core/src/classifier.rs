//! Deciding retract-compatibility and parabolic-retract-compatibility of a
//! Coxeter matrix, with certificates naming a failing triple.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use crate::coxeter::{CoxeterMatrix, GeneratorId, Label, OddComponentPartition};

/// Which triple condition a failing triple violates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Rule {
    /// Two odd labels force the third to be odd.
    OddOddRequiresOdd,
    /// With one odd label, an even label forces the other to be even.
    OddEvenRequiresEven,
    /// Three odd labels: two must agree and the third must divide them.
    DivisibilityAmongOdds,
    /// With one odd label, two even labels must be equal.
    EvenEvenOddRequiresEqual,
}

impl Rule {
    pub fn name(self) -> &'static str {
        match self {
            Rule::OddOddRequiresOdd => "OddOddRequiresOdd",
            Rule::OddEvenRequiresEven => "OddEvenRequiresEven",
            Rule::DivisibilityAmongOdds => "DivisibilityAmongOdds",
            Rule::EvenEvenOddRequiresEqual => "EvenEvenOddRequiresEqual",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TripleStatus {
    Pass,
    Fail(Rule),
}

impl TripleStatus {
    pub fn passes(self) -> bool {
        self == TripleStatus::Pass
    }
}

/// A triple `a < b < c` with labels `(m_ab, m_ac, m_bc)` and its status.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TripleVerdict {
    pub triple: [GeneratorId; 3],
    pub labels: [Label; 3],
    pub status: TripleStatus,
}

/// Whether three labels on a triangle can occur inside a
/// parabolic-retract-compatible matrix.
///
/// * three odd: two are equal and the third divides them;
/// * two odd: fails, the third would have to be odd;
/// * one odd: the other two are equal (both even or both `∞`);
/// * none odd: passes.
pub fn check_triple(m1: Label, m2: Label, m3: Label) -> TripleStatus {
    let labels = [m1, m2, m3];
    let odd: Vec<u32> = labels.iter().filter(|l| l.is_odd()).filter_map(|l| l.value()).collect();
    match odd.len() {
        3 => {
            let divides = |d: u32, n: u32| n.is_multiple_of(d);
            let ok = (0..3).any(|i| {
                let (x, y, z) = (odd[i], odd[(i + 1) % 3], odd[(i + 2) % 3]);
                x == y && divides(z, x)
            });
            if ok {
                TripleStatus::Pass
            } else {
                TripleStatus::Fail(Rule::DivisibilityAmongOdds)
            }
        }
        2 => TripleStatus::Fail(Rule::OddOddRequiresOdd),
        1 => {
            let rest: Vec<Label> = labels.iter().copied().filter(|l| !l.is_odd()).collect();
            match (rest[0].is_infinite(), rest[1].is_infinite()) {
                (true, true) => TripleStatus::Pass,
                (false, false) if rest[0] == rest[1] => TripleStatus::Pass,
                (false, false) => TripleStatus::Fail(Rule::EvenEvenOddRequiresEqual),
                _ => TripleStatus::Fail(Rule::OddEvenRequiresEven),
            }
        }
        _ => TripleStatus::Pass,
    }
}

/// Runs [`check_triple`] on `a < b < c`.
pub fn triple_verdict(m: &CoxeterMatrix, a: &GeneratorId, b: &GeneratorId, c: &GeneratorId) -> TripleVerdict {
    let labels = [m.label(a, b), m.label(a, c), m.label(b, c)];
    TripleVerdict {
        triple: [a.clone(), b.clone(), c.clone()],
        labels,
        status: check_triple(labels[0], labels[1], labels[2]),
    }
}

/// All triples `a < b < c` in lexicographic order.
fn triples(m: &CoxeterMatrix) -> impl Iterator<Item = (&GeneratorId, &GeneratorId, &GeneratorId)> {
    let g = m.generators();
    (0..g.len())
        .flat_map(move |i| (i + 1..g.len()).flat_map(move |j| (j + 1..g.len()).map(move |k| (&g[i], &g[j], &g[k]))))
}

/// The lexicographically least triple failing [`check_triple`].
pub fn first_failing_triple(m: &CoxeterMatrix) -> Option<TripleVerdict> {
    triples(m).map(|(a, b, c)| triple_verdict(m, a, b, c)).find(|v| !v.status.passes())
}

/// Why a matrix is not retract-compatible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RetractViolation {
    /// A label that is even or `∞`.
    NotOdd { pair: (GeneratorId, GeneratorId), label: Label },
    /// An all-odd triangle without the divisibility pattern.
    Triple(TripleVerdict),
}

/// All labels odd, and every triangle has two equal labels with the third
/// dividing them. Rank at most 1 always qualifies.
pub fn is_retract_compatible(m: &CoxeterMatrix) -> Result<(), RetractViolation> {
    let g = m.generators();
    for i in 0..g.len() {
        for j in i + 1..g.len() {
            let label = m.label(&g[i], &g[j]);
            if !label.is_odd() {
                return Err(RetractViolation::NotOdd { pair: (g[i].clone(), g[j].clone()), label });
            }
        }
    }
    match first_failing_triple(m) {
        Some(v) => Err(RetractViolation::Triple(v)),
        None => Ok(()),
    }
}

/// Outcome of [`is_parabolic_retract_compatible`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CompatibilityReport {
    /// `cross_labels[(i, j)]` (`i < j`) is the common label between blocks
    /// `i` and `j` of the partition.
    Compatible {
        partition: OddComponentPartition,
        cross_labels: BTreeMap<(usize, usize), Label>,
    },
    Incompatible {
        first_violation: TripleVerdict,
    },
}

impl CompatibilityReport {
    pub fn is_compatible(&self) -> bool {
        matches!(self, CompatibilityReport::Compatible { .. })
    }
}

/// Checks the partition into odd components: each block must be
/// retract-compatible and every pair of blocks must be joined by a single
/// even or `∞` label.
pub fn is_parabolic_retract_compatible(m: &CoxeterMatrix) -> CompatibilityReport {
    let partition = m.odd_components();
    match block_structure(m, &partition) {
        Some(cross_labels) => CompatibilityReport::Compatible { partition, cross_labels },
        None => {
            let first_violation =
                first_failing_triple(m).expect("a matrix failing the block conditions has a failing triple");
            CompatibilityReport::Incompatible { first_violation }
        }
    }
}

fn block_structure(m: &CoxeterMatrix, partition: &OddComponentPartition) -> Option<BTreeMap<(usize, usize), Label>> {
    let blocks = partition.blocks();
    for block in blocks {
        let sub = m.submatrix(block.iter()).expect("blocks are subsets of the generators");
        is_retract_compatible(&sub).ok()?;
    }
    let mut cross = BTreeMap::new();
    for i in 0..blocks.len() {
        for j in i + 1..blocks.len() {
            let mut labels = blocks[i].iter().flat_map(|a| blocks[j].iter().map(move |b| m.label(a, b)));
            let first = labels.next().expect("blocks are nonempty");
            if first.is_odd() || labels.any(|l| l != first) {
                return None;
            }
            cross.insert((i, j), first);
        }
    }
    Some(cross)
}

/// Every triangle passes [`check_triple`]. Decided triangle by triangle,
/// without building a partition.
pub fn triples_criterion(m: &CoxeterMatrix) -> bool {
    first_failing_triple(m).is_none()
}
