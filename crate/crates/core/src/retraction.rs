//! Ordinary retractions `A_S → A_X`: synthesis, application, conjugation and
//! relation-by-relation verification.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;
use core::fmt;

use crate::classifier::{
    is_parabolic_retract_compatible, is_retract_compatible, CompatibilityReport, RetractViolation, TripleVerdict,
};
use crate::coxeter::{CoxeterMatrix, GeneratorId, Label};
use crate::dihedral::DihedralPresentation;
use crate::word::{pi_word, Word};

/// Image of a generator under an ordinary map.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Image {
    Generator(GeneratorId),
    Identity,
}

impl Image {
    fn as_word(&self) -> Word {
        match self {
            Image::Generator(g) => Word::generator(g),
            Image::Identity => Word::empty(),
        }
    }
}

impl fmt::Display for Image {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Image::Generator(g) => write!(f, "{g}"),
            Image::Identity => f.write_str("1"),
        }
    }
}

/// A map sending each generator of `source` to a generator or to `1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorMap {
    source: CoxeterMatrix,
    target: BTreeSet<GeneratorId>,
    assignment: BTreeMap<GeneratorId, Image>,
}

impl GeneratorMap {
    /// The identity of `A_S`, viewed as a retraction onto `A_S`.
    pub fn identity(source: &CoxeterMatrix) -> Self {
        let assignment = source.generators().iter().map(|g| (g.clone(), Image::Generator(g.clone()))).collect();
        GeneratorMap { source: source.clone(), target: source.generators().iter().cloned().collect(), assignment }
    }

    /// A map given explicitly; generators missing from `assignment` are
    /// fixed. Nothing is checked here, see [`verify_retraction`].
    pub fn from_assignment(
        source: &CoxeterMatrix,
        target: BTreeSet<GeneratorId>,
        assignment: BTreeMap<GeneratorId, Image>,
    ) -> Result<Self, RetractionError> {
        for g in assignment.keys().chain(target.iter()) {
            if !source.contains(g) {
                return Err(RetractionError::UnknownGenerator(g.clone()));
            }
        }
        let mut full = GeneratorMap::identity(source).assignment;
        full.extend(assignment);
        Ok(GeneratorMap { source: source.clone(), target, assignment: full })
    }

    pub fn source(&self) -> &CoxeterMatrix {
        &self.source
    }

    pub fn target(&self) -> &BTreeSet<GeneratorId> {
        &self.target
    }

    pub fn assignment(&self) -> &BTreeMap<GeneratorId, Image> {
        &self.assignment
    }

    pub fn image(&self, g: &GeneratorId) -> Option<&Image> {
        self.assignment.get(g)
    }
}

/// How one generator was removed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TraceRule {
    /// Sent to the neighbour `target` of minimal label (retract-compatible
    /// matrices).
    PsiMap { target: GeneratorId },
    /// Alone in its odd component: sent to `1`.
    PhiSingletonToIdentity,
    /// Inside a larger odd component: sent to `target` by the minimal-label
    /// rule applied to the component.
    PhiViaPsi { target: GeneratorId },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceStep {
    pub removed: GeneratorId,
    pub rule: TraceRule,
}

/// Steps of [`synth_retraction`] in the order they were applied.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RetractionTrace {
    pub steps: Vec<TraceStep>,
}

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum RetractionError {
    #[error("matrix is not retract-compatible: {0:?}")]
    NotRetractCompatible(RetractViolation),
    #[error("matrix is not parabolic-retract-compatible, first failing triple {0:?}")]
    NotParabolicRetractCompatible(TripleVerdict),
    #[error("generator {0} is not in the matrix")]
    UnknownGenerator(GeneratorId),
    #[error("removing a generator needs rank at least 2")]
    RankTooSmall,
    #[error("internal: m({y},{z}) = {m_yz} does not divide m({x},{z}) = {m_xz}")]
    Divisibility { x: GeneratorId, y: GeneratorId, z: GeneratorId, m_yz: Label, m_xz: Label },
}

fn divides(d: Label, n: Label) -> bool {
    match (d.value(), n.value()) {
        (Some(d), Some(n)) => n % d == 0,
        (_, None) => true,
        (None, Some(_)) => false,
    }
}

fn ensure_member(m: &CoxeterMatrix, x: &GeneratorId) -> Result<(), RetractionError> {
    if m.contains(x) {
        Ok(())
    } else {
        Err(RetractionError::UnknownGenerator(x.clone()))
    }
}

/// Retraction `A_S → A_{S∖{x}}` of a retract-compatible matrix sending `x` to
/// the neighbour `y` with the least label `m_{x,y}` (least name on ties).
pub fn synth_psi(m: &CoxeterMatrix, x: &GeneratorId) -> Result<GeneratorMap, RetractionError> {
    is_retract_compatible(m).map_err(RetractionError::NotRetractCompatible)?;
    ensure_member(m, x)?;
    let y = psi_target(m, x)?;
    Ok(removal_map(m, x, Image::Generator(y)))
}

fn psi_target(m: &CoxeterMatrix, x: &GeneratorId) -> Result<GeneratorId, RetractionError> {
    let y = m
        .generators()
        .iter()
        .filter(|g| *g != x)
        .min_by(|a, b| m.label(x, a).cmp(&m.label(x, b)).then_with(|| a.cmp(b)))
        .ok_or(RetractionError::RankTooSmall)?;
    for z in m.generators().iter().filter(|z| *z != x && *z != y) {
        let (m_yz, m_xz) = (m.label(y, z), m.label(x, z));
        if !divides(m_yz, m_xz) {
            return Err(RetractionError::Divisibility { x: x.clone(), y: y.clone(), z: z.clone(), m_yz, m_xz });
        }
    }
    Ok(y.clone())
}

fn removal_map(m: &CoxeterMatrix, x: &GeneratorId, image: Image) -> GeneratorMap {
    let mut map = GeneratorMap::identity(m);
    map.target.remove(x);
    map.assignment.insert(x.clone(), image);
    map
}

fn require_parabolic(m: &CoxeterMatrix) -> Result<crate::coxeter::OddComponentPartition, RetractionError> {
    match is_parabolic_retract_compatible(m) {
        CompatibilityReport::Compatible { partition, .. } => Ok(partition),
        CompatibilityReport::Incompatible { first_violation } => {
            Err(RetractionError::NotParabolicRetractCompatible(first_violation))
        }
    }
}

/// Retraction `A_S → A_{S∖{x}}` of a parabolic-retract-compatible matrix,
/// with the rule that produced it.
fn phi_step(m: &CoxeterMatrix, x: &GeneratorId) -> Result<(GeneratorMap, TraceRule), RetractionError> {
    let partition = require_parabolic(m)?;
    ensure_member(m, x)?;
    let block = &partition.blocks()[partition.block_of(x).expect("every generator has a block")];
    if block.len() == 1 {
        return Ok((removal_map(m, x, Image::Identity), TraceRule::PhiSingletonToIdentity));
    }
    let sub = m.submatrix(block.iter()).expect("blocks are subsets of the generators");
    let y = psi_target(&sub, x)?;
    Ok((removal_map(m, x, Image::Generator(y.clone())), TraceRule::PhiViaPsi { target: y }))
}

/// Retraction `A_S → A_{S∖{x}}` of a parabolic-retract-compatible matrix: `x`
/// goes to `1` when its odd component is `{x}`, and otherwise to the
/// minimal-label neighbour inside its component.
pub fn synth_phi(m: &CoxeterMatrix, x: &GeneratorId) -> Result<GeneratorMap, RetractionError> {
    phi_step(m, x).map(|(map, _)| map)
}

/// Ordinary retraction `A_S → A_X`, removing the generators of `S∖X` one by
/// one in name order.
pub fn synth_retraction(
    m: &CoxeterMatrix,
    keep: &BTreeSet<GeneratorId>,
) -> Result<(GeneratorMap, RetractionTrace), RetractionError> {
    require_parabolic(m)?;
    for g in keep {
        ensure_member(m, g)?;
    }
    let mut composed = GeneratorMap::identity(m);
    let mut trace = RetractionTrace::default();
    let mut current = m.clone();
    let removed: Vec<GeneratorId> = m.generators().iter().filter(|g| !keep.contains(*g)).cloned().collect();
    for x in removed {
        let (step, rule) = phi_step(&current, &x)?;
        let image = step.assignment[&x].clone();
        for v in composed.assignment.values_mut() {
            if *v == Image::Generator(x.clone()) {
                *v = image.clone();
            }
        }
        composed.target.remove(&x);
        trace.steps.push(TraceStep { removed: x.clone(), rule });
        let rest: Vec<GeneratorId> = current.generators().iter().filter(|g| **g != x).cloned().collect();
        current = current.submatrix(rest.iter()).expect("subset of the current generators");
    }
    Ok((composed, trace))
}

/// Substitutes images into `w` and freely reduces.
pub fn apply(r: &GeneratorMap, w: &Word) -> Result<Word, RetractionError> {
    let mut foreign = None;
    let out = w.substitute(|g| match r.assignment.get(g) {
        Some(img) => Some(img.as_word()),
        None => {
            foreign = Some(g.clone());
            None
        }
    });
    match (out, foreign) {
        (Some(w), None) => Ok(w.free_reduce()),
        (_, Some(g)) => Err(RetractionError::UnknownGenerator(g)),
        (None, None) => unreachable!("substitution only fails on a missing image"),
    }
}

/// The retraction `g ↦ α·r(α⁻¹·g·α)·α⁻¹` onto `α·A_X·α⁻¹`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugatedRetraction {
    pub inner: GeneratorMap,
    pub alpha: Word,
}

impl ConjugatedRetraction {
    pub fn apply(&self, g: &Word) -> Result<Word, RetractionError> {
        let inside = g.conjugate(&self.alpha.invert());
        Ok(apply(&self.inner, &inside)?.conjugate(&self.alpha).free_reduce())
    }
}

pub fn conjugate_retraction(r: &GeneratorMap, alpha: &Word) -> ConjugatedRetraction {
    ConjugatedRetraction { inner: r.clone(), alpha: alpha.free_reduce() }
}

/// Why a map fails to be an ordinary retraction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FailureReason {
    /// One side of an odd relation collapses to `1`.
    OddLabelToIdentity,
    /// `Π(u,v,m) ≠ Π(v,u,m)` in the dihedral parabolic on the two images.
    RelationFails { u: GeneratorId, v: GeneratorId, m: Label },
    /// A generator of the target is not fixed.
    MovesTarget,
    /// An image outside the target.
    NotOrdinary,
    /// No image assigned.
    Missing,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verification {
    Verified,
    /// `pair.1` is `None` for failures concerning a single generator.
    FailedRelation {
        pair: (GeneratorId, Option<GeneratorId>),
        reason: FailureReason,
    },
}

impl Verification {
    pub fn is_verified(&self) -> bool {
        *self == Verification::Verified
    }
}

/// Checks that `r` is an ordinary retraction of `A_M` onto its target: it
/// fixes the target, sends every generator into the target or to `1`, and
/// carries every defining relation of `M` to a relation that holds.
pub fn verify_retraction(m: &CoxeterMatrix, r: &GeneratorMap) -> Verification {
    let single = |g: &GeneratorId, reason| Verification::FailedRelation { pair: (g.clone(), None), reason };
    for g in m.generators() {
        match r.assignment.get(g) {
            None => return single(g, FailureReason::Missing),
            Some(Image::Generator(h)) if !r.target.contains(h) => return single(g, FailureReason::NotOrdinary),
            Some(img) if r.target.contains(g) && *img != Image::Generator(g.clone()) => {
                return single(g, FailureReason::MovesTarget)
            }
            _ => {}
        }
    }
    let gens = m.generators();
    for i in 0..gens.len() {
        for j in i + 1..gens.len() {
            let (s, t) = (&gens[i], &gens[j]);
            let label = m.label(s, t);
            let Some(mst) = label.value() else { continue };
            let fail = |reason| Verification::FailedRelation { pair: (s.clone(), Some(t.clone())), reason };
            match (&r.assignment[s], &r.assignment[t]) {
                (u, v) if u == v => {}
                (Image::Identity, _) | (_, Image::Identity) => {
                    if mst % 2 == 1 {
                        return fail(FailureReason::OddLabelToIdentity);
                    }
                }
                (Image::Generator(u), Image::Generator(v)) => {
                    let (lo, hi) = if u < v { (u, v) } else { (v, u) };
                    let muv = m.label(lo, hi);
                    let p =
                        DihedralPresentation::new(muv, lo.clone(), hi.clone()).expect("distinct ordered generators");
                    let lhs = pi_word(u, v, mst as usize);
                    let rhs = pi_word(v, u, mst as usize);
                    if !p.words_equal(&lhs, &rhs).expect("words over the two generators") {
                        return fail(FailureReason::RelationFails { u: u.clone(), v: v.clone(), m: muv });
                    }
                }
            }
        }
    }
    Verification::Verified
}

impl fmt::Display for FailureReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FailureReason::OddLabelToIdentity => f.write_str("odd label to identity"),
            FailureReason::RelationFails { u, v, m } => {
                write!(f, "relation fails between {u} and {v} in A({m})")
            }
            FailureReason::MovesTarget => f.write_str("target generator not fixed"),
            FailureReason::NotOrdinary => f.write_str("image outside the target"),
            FailureReason::Missing => f.write_str("no image assigned"),
        }
    }
}
