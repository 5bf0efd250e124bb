//! Homomorphisms `A(m_A) → B = A(m_B)` with `a₁ ↦ b₁`: the parameterized
//! families for each class of `(m_A, m_B)`, their instantiation, a relation
//! check, and bounded matching of a given image against the families.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::coxeter::{GeneratorId, Label};
use crate::dihedral::{Centralizer, DihedralError, DihedralPresentation};
use crate::word::{abelianize, AbelianImage, Grading, Word};

/// Family labels, in the order the families are tried.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CaseId {
    C1,
    C2,
    C3a,
    C3b,
    C4,
    C5a,
    C5b,
    C5c,
    C6a,
    C6b,
    C7,
}

impl CaseId {
    pub const ALL: [CaseId; 11] = [
        CaseId::C1,
        CaseId::C2,
        CaseId::C3a,
        CaseId::C3b,
        CaseId::C4,
        CaseId::C5a,
        CaseId::C5b,
        CaseId::C5c,
        CaseId::C6a,
        CaseId::C6b,
        CaseId::C7,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CaseId::C1 => "1",
            CaseId::C2 => "2",
            CaseId::C3a => "3a",
            CaseId::C3b => "3b",
            CaseId::C4 => "4",
            CaseId::C5a => "5a",
            CaseId::C5b => "5b",
            CaseId::C5c => "5c",
            CaseId::C6a => "6a",
            CaseId::C6b => "6b",
            CaseId::C7 => "7",
        }
    }

    /// Parameter slots the family takes.
    pub fn slots(self) -> &'static [&'static str] {
        match self {
            CaseId::C1 | CaseId::C7 => &["image"],
            CaseId::C2 | CaseId::C3a => &[],
            CaseId::C3b | CaseId::C4 => &["t"],
            CaseId::C5a | CaseId::C6a => &["t1", "t2"],
            CaseId::C5b | CaseId::C5c | CaseId::C6b => &["t", "beta"],
        }
    }

    /// Image of `a₂` in terms of the slots.
    pub fn formula(self) -> &'static str {
        match self {
            CaseId::C1 | CaseId::C7 => "image",
            CaseId::C2 | CaseId::C3a => "b1",
            CaseId::C3b => "b1^t b2 b1^-t",
            CaseId::C4 => "b1^t",
            CaseId::C5a | CaseId::C6a => "delta^t1 b1^t2",
            CaseId::C5b => "b1^-1 beta Delta^t beta^-1",
            CaseId::C5c | CaseId::C6b => "b1^-1 beta u^t beta^-1",
        }
    }
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CaseId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        CaseId::ALL.into_iter().find(|c| c.as_str() == s).ok_or_else(|| format!("unknown family {s:?}"))
    }
}

/// Arithmetic side condition of a family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Constraint {
    MbDividesMa,
    MaDivisibleBy4,
    TOdd,
    /// `p = gcd(t, m_B)`, `q = m_B/p`, `q | m_A/2`.
    OddUPowerOrder,
    /// `p = gcd(t, m_B/2)`, `q = m_B/(2p)`, `q | m_A/2`.
    EvenUPowerOrder,
}

impl Constraint {
    pub fn text(self) -> &'static str {
        match self {
            Constraint::MbDividesMa => "m_B divides m_A",
            Constraint::MaDivisibleBy4 => "m_A divisible by 4",
            Constraint::TOdd => "t odd",
            Constraint::OddUPowerOrder => "q divides m_A/2 where p = gcd(t, m_B), q = m_B/p",
            Constraint::EvenUPowerOrder => "q divides m_A/2 where p = gcd(t, m_B/2), q = m_B/(2p)",
        }
    }
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.text())
    }
}

/// One family listed for a pair of labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomFamily {
    pub case: CaseId,
    pub ma: Label,
    pub mb: Label,
    pub constraints: Vec<Constraint>,
}

/// Parameters, shaped per family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HomParams {
    /// Families 2 and 3a.
    Fixed,
    /// Families 1 and 7: the image itself.
    Any(Word),
    /// Families 3b and 4.
    T(i64),
    /// Families 5a and 6a.
    T1T2(i64, i64),
    /// Families 5b, 5c and 6b.
    Conjugate { t: i64, beta: Word },
}

/// `a₁ ↦ image_a1 = b₁`, `a₂ ↦ image_a2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomCandidate {
    pub ma: Label,
    pub mb: Label,
    pub image_a1: Word,
    pub image_a2: Word,
}

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum HomError {
    #[error("family {case} is not listed for m_A = {ma}, m_B = {mb}")]
    NotListed { case: CaseId, ma: Label, mb: Label },
    #[error("family {case} takes parameters ({slots})", slots = case.slots().join(", "))]
    WrongParameters { case: CaseId },
    #[error("constraint violated: {constraint} ({detail})")]
    ConstraintViolated { constraint: Constraint, detail: String },
    #[error("the map is not a homomorphism")]
    NotAHomomorphism,
    #[error(transparent)]
    Dihedral(#[from] DihedralError),
}

fn b1() -> GeneratorId {
    GeneratorId::new("b1").expect("valid name")
}

fn b2() -> GeneratorId {
    GeneratorId::new("b2").expect("valid name")
}

/// The target group `B` on `b1 < b2`.
pub fn target_presentation(mb: Label) -> DihedralPresentation {
    DihedralPresentation::new(mb, b1(), b2()).expect("b1 < b2")
}

impl HomCandidate {
    pub fn new(ma: Label, mb: Label, image_a2: Word) -> Self {
        HomCandidate { ma, mb, image_a1: Word::generator(&b1()), image_a2 }
    }
}

fn divides(d: u32, n: u32) -> bool {
    n.is_multiple_of(d)
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// The families for `(m_A, m_B)`, in case order. Families whose constraints
/// do not involve parameters are listed only when those constraints hold.
pub fn enumerate_cases(ma: Label, mb: Label) -> Vec<HomFamily> {
    let family = |case, constraints: Vec<Constraint>| HomFamily { case, ma, mb, constraints };
    let Some(a) = ma.value() else {
        return vec![family(CaseId::C1, vec![])];
    };
    if a % 2 == 1 {
        return match mb.value() {
            Some(b) if b % 2 == 1 => {
                let mut out = vec![family(CaseId::C3a, vec![])];
                if divides(b, a) {
                    out.push(family(CaseId::C3b, vec![Constraint::MbDividesMa]));
                }
                out
            }
            _ => vec![family(CaseId::C2, vec![])],
        };
    }
    match mb.value() {
        None => vec![family(CaseId::C4, vec![])],
        Some(2) => vec![family(CaseId::C7, vec![])],
        Some(b) if b % 2 == 1 => {
            let mut out = vec![family(CaseId::C5a, vec![])];
            if divides(4, a) {
                out.push(family(CaseId::C5b, vec![Constraint::MaDivisibleBy4, Constraint::TOdd]));
            }
            out.push(family(CaseId::C5c, vec![Constraint::OddUPowerOrder]));
            out
        }
        Some(_) => vec![family(CaseId::C6a, vec![]), family(CaseId::C6b, vec![Constraint::EvenUPowerOrder])],
    }
}

fn check_constraint(f: &HomFamily, c: Constraint, t: i64) -> Result<(), HomError> {
    let a = f.ma.value().map(u64::from);
    let b = f.mb.value().map(u64::from);
    let (holds, detail) = match (c, a, b) {
        (Constraint::MbDividesMa, Some(a), Some(b)) => (a % b == 0, format!("m_A = {a}, m_B = {b}")),
        (Constraint::MaDivisibleBy4, Some(a), _) => (a % 4 == 0, format!("m_A = {a}")),
        (Constraint::TOdd, _, _) => (t % 2 != 0, format!("t = {t}")),
        (Constraint::OddUPowerOrder, Some(a), Some(b)) => {
            let p = gcd(t.unsigned_abs(), b);
            let q = b / p;
            ((a / 2) % q == 0, format!("p = {p}, q = {q}, m_A/2 = {}", a / 2))
        }
        (Constraint::EvenUPowerOrder, Some(a), Some(b)) => {
            let p = gcd(t.unsigned_abs(), b / 2);
            let q = b / (2 * p);
            ((a / 2) % q == 0, format!("p = {p}, q = {q}, m_A/2 = {}", a / 2))
        }
        _ => (false, String::from("labels out of range")),
    };
    if holds {
        Ok(())
    } else {
        Err(HomError::ConstraintViolated { constraint: c, detail })
    }
}

fn parameter_t(params: &HomParams) -> i64 {
    match params {
        HomParams::T(t) | HomParams::Conjugate { t, .. } => *t,
        _ => 0,
    }
}

/// Builds the candidate after checking every constraint of `f`.
pub fn instantiate(f: &HomFamily, params: &HomParams) -> Result<HomCandidate, HomError> {
    if !enumerate_cases(f.ma, f.mb).iter().any(|g| g.case == f.case) {
        return Err(HomError::NotListed { case: f.case, ma: f.ma, mb: f.mb });
    }
    let t = parameter_t(params);
    for &c in &f.constraints {
        check_constraint(f, c, t)?;
    }
    instantiate_unchecked(f, params)
}

/// Builds the candidate without evaluating constraints. Exists so that
/// excluded parameter values can be checked against the relation.
pub fn instantiate_unchecked(f: &HomFamily, params: &HomParams) -> Result<HomCandidate, HomError> {
    let b = target_presentation(f.mb);
    let (g1, g2) = (b1(), b2());
    let a1 = Word::generator(&g1);
    let image = match (f.case, params) {
        (CaseId::C1 | CaseId::C7, HomParams::Any(w)) => {
            b.normal_form(w)?;
            w.free_reduce()
        }
        (CaseId::C2 | CaseId::C3a, HomParams::Fixed) => a1,
        (CaseId::C3b, HomParams::T(t)) => Word::generator(&g2).conjugate(&Word::power(&g1, *t)),
        (CaseId::C4, HomParams::T(t)) => Word::power(&g1, *t),
        (CaseId::C5a | CaseId::C6a, HomParams::T1T2(t1, t2)) => b.delta_gen1(*t1, *t2)?,
        (CaseId::C5b, HomParams::Conjugate { t, beta }) => {
            b.normal_form(beta)?;
            a1.invert().concat(&b.delta()?.pow(*t).conjugate(beta))
        }
        (CaseId::C5c | CaseId::C6b, HomParams::Conjugate { t, beta }) => {
            b.normal_form(beta)?;
            a1.invert().concat(&b.u_elem().pow(*t).conjugate(beta))
        }
        _ => return Err(HomError::WrongParameters { case: f.case }),
    };
    Ok(HomCandidate::new(f.ma, f.mb, image))
}

/// Whether `a₁ ↦ b₁`, `a₂ ↦ image_a2` respects `Π(a₁,a₂,m_A) = Π(a₂,a₁,m_A)`.
pub fn verify_hom(c: &HomCandidate) -> Result<bool, HomError> {
    let b = target_presentation(c.mb);
    b.normal_form(&c.image_a2)?;
    let Some(ma) = c.ma.value() else {
        return Ok(true);
    };
    let lhs = Word::alternating(&c.image_a1, &c.image_a2, ma as usize);
    let rhs = Word::alternating(&c.image_a2, &c.image_a1, ma as usize);
    Ok(b.words_equal(&lhs, &rhs)?)
}

/// Limits of the conjugator and exponent searches in [`classify_image`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBounds {
    pub max_conjugator_syllables: usize,
    pub max_exponent: i64,
}

impl Default for SearchBounds {
    fn default() -> Self {
        SearchBounds { max_conjugator_syllables: 2, max_exponent: 3 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Classification {
    Matched { case: CaseId, params: HomParams },
    Unknown,
}

/// Reduced words over `b1, b2` with at most `max_syllables` syllables and
/// exponents in `[-max_exponent, max_exponent]`, shortest first.
pub fn conjugator_words(max_syllables: usize, max_exponent: i64) -> Vec<Word> {
    let exponents: Vec<i64> = (1..=max_exponent).flat_map(|e| [e, -e]).collect();
    let gens = [b1(), b2()];
    let mut layer: Vec<Vec<(usize, i64)>> = vec![Vec::new()];
    let mut out = vec![Word::empty()];
    for _ in 0..max_syllables {
        let mut next = Vec::new();
        for prefix in &layer {
            for g in 0..2 {
                if prefix.last().is_some_and(|&(h, _)| h == g) {
                    continue;
                }
                for &e in &exponents {
                    let mut w = prefix.clone();
                    w.push((g, e));
                    next.push(w);
                }
            }
        }
        out.extend(next.iter().map(|w| Word::from_syllables(w.iter().map(|&(g, e)| (gens[g].clone(), e)))));
        layer = next;
    }
    out
}

fn total_sum(w: &Word) -> i64 {
    match abelianize(w, Grading::TotalSum) {
        AbelianImage::Total(t) => t,
        AbelianImage::PerGenerator(_) => unreachable!(),
    }
}

/// Exponents `0, 1, -1, 2, -2, …` up to `bound`.
fn small_first(bound: i64) -> impl Iterator<Item = i64> {
    core::iter::once(0).chain((1..=bound).flat_map(|t| [t, -t]))
}

/// Tries to write `c.image_a2` in the form of one family; `None` when the
/// bounded search finds nothing.
pub fn match_family(c: &HomCandidate, case: CaseId, bounds: SearchBounds) -> Result<Option<HomParams>, HomError> {
    if !enumerate_cases(c.ma, c.mb).iter().any(|f| f.case == case) {
        return Err(HomError::NotListed { case, ma: c.ma, mb: c.mb });
    }
    let b = target_presentation(c.mb);
    let image = &c.image_a2;
    let (g1, g2) = (b1(), b2());
    let a1 = Word::generator(&g1);
    Ok(match case {
        CaseId::C1 | CaseId::C7 => Some(HomParams::Any(image.free_reduce())),
        CaseId::C2 | CaseId::C3a => b.words_equal(image, &a1)?.then_some(HomParams::Fixed),
        CaseId::C3b => {
            let bound = bounds.max_exponent.max(image.letter_len() as i64);
            let mut found = None;
            for t in small_first(bound) {
                if b.words_equal(image, &Word::generator(&g2).conjugate(&Word::power(&g1, t)))? {
                    found = Some(HomParams::T(t));
                    break;
                }
            }
            found
        }
        CaseId::C4 => {
            let r = image.free_reduce();
            match r.syllables() {
                [] => Some(HomParams::T(0)),
                [s] if s.generator == g1 => Some(HomParams::T(s.exponent)),
                _ => None,
            }
        }
        CaseId::C5a | CaseId::C6a => match b.centralizer_membership(image, 0, 1)? {
            Centralizer::Member { delta_exp, gen1_exp } => Some(HomParams::T1T2(delta_exp, gen1_exp)),
            Centralizer::NonMember { .. } => None,
        },
        CaseId::C5b | CaseId::C5c | CaseId::C6b => {
            let x = a1.concat(image);
            let z = total_sum(&x);
            let mb = i64::from(c.mb.value().expect("finite m_B in families 5 and 6"));
            let (t, core) = if case == CaseId::C5b {
                if z % mb != 0 {
                    return Ok(None);
                }
                (z / mb, b.delta()?.pow(z / mb))
            } else {
                if z % 2 != 0 {
                    return Ok(None);
                }
                (z / 2, b.u_elem().pow(z / 2))
            };
            let family = HomFamily { case, ma: c.ma, mb: c.mb, constraints: family_constraints(c, case) };
            if family.constraints.iter().any(|&k| check_constraint(&family, k, t).is_err()) {
                return Ok(None);
            }
            let mut found = None;
            for beta in conjugator_words(bounds.max_conjugator_syllables, bounds.max_exponent) {
                if b.words_equal(&x, &core.conjugate(&beta))? {
                    found = Some(HomParams::Conjugate { t, beta });
                    break;
                }
            }
            found
        }
    })
}

fn family_constraints(c: &HomCandidate, case: CaseId) -> Vec<Constraint> {
    enumerate_cases(c.ma, c.mb).into_iter().find(|f| f.case == case).map(|f| f.constraints).unwrap_or_default()
}

/// First family, in case order, that the image matches within `bounds`.
///
/// `Unknown` only means the bounded search failed.
pub fn classify_image(c: &HomCandidate, bounds: SearchBounds) -> Result<Classification, HomError> {
    if !verify_hom(c)? {
        return Err(HomError::NotAHomomorphism);
    }
    for f in enumerate_cases(c.ma, c.mb) {
        if let Some(params) = match_family(c, f.case, bounds)? {
            return Ok(Classification::Matched { case: f.case, params });
        }
    }
    Ok(Classification::Unknown)
}
