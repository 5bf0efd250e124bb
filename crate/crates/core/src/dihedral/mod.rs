//! Word problem and distinguished elements of dihedral Artin groups
//! `A(m) = ⟨a₁, a₂ | Π(a₁,a₂,m) = Π(a₂,a₁,m)⟩`, `m ∈ {2, 3, …, ∞}`.
//!
//! Equality is decided by a canonical form chosen by `m`:
//!
//! * `m = ∞`: the free group, free reduction;
//! * `m = 2`: `ℤ × ℤ`, the pair of exponent sums;
//! * `3 <= m < ∞`: the left-greedy Garside normal form.
//!
//! The finite dihedral Coxeter quotient ([`DihedralPresentation::coxeter_quotient_eval`])
//! is kept as an independent separation check: distinct images there imply
//! distinct elements of `A(m)`.

mod garside;

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use garside::GarsideBuilder;
pub use garside::{GarsideNormalForm, Letter, SimpleFactor};

use crate::coxeter::{GeneratorId, Label};
use crate::free_product::{CyclicOrder, Factor, FreeProductSignature, FreeProductWord};
use crate::word::{abelianize, pi_word, Grading, Word};

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum DihedralError {
    #[error("dihedral generators must satisfy gen1 < gen2, got {0} and {1}")]
    BadGenerators(String, String),
    #[error("operation is undefined for m = inf")]
    InfiniteLabel,
    #[error("generator {0} does not belong to the dihedral presentation")]
    ForeignGenerator(String),
    #[error("{what} is only defined for finite m >= 3, got m = {m}")]
    NeedsFiniteAtLeastThree { what: &'static str, m: Label },
    #[error("the power of gen1 in a centralizer target must be nonzero")]
    ZeroExponent,
    #[error("engine self-check failed: {0}")]
    Inconsistent(String),
}

/// `A(m)` on two named generators with `gen1 < gen2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DihedralPresentation {
    m: Label,
    gen1: GeneratorId,
    gen2: GeneratorId,
}

/// Canonical form of an element; which variant depends on `m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum NormalForm {
    Free(Word),
    Abelian { first: i64, second: i64 },
    Garside(GarsideNormalForm),
}

/// Element of the dihedral group of order `2m`, as `ρ^rotation σ^reflection`
/// with `σρσ = ρ⁻¹`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DihedralElement {
    pub rotation: u32,
    pub reflection: bool,
}

/// Image of an element in `A(m)/Z(A(m))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CenterQuotientImage {
    pub target: FreeProductSignature,
    pub word: FreeProductWord,
}

/// `A(m)` on two other generators `x`, `y`.
///
/// `x` and `y` are words over `gen1, gen2`; `gen1`, `gen2` and both sides of
/// the single defining relation are words over generators named `x` and `y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlternativePresentation {
    pub x: Word,
    pub y: Word,
    pub gen1: Word,
    pub gen2: Word,
    pub relation: (Word, Word),
}

impl AlternativePresentation {
    /// Rewrites a word over `x`, `y` in terms of `gen1`, `gen2`.
    pub fn expand(&self, w: &Word) -> Option<Word> {
        w.substitute(|g| match g.as_str() {
            "x" => Some(self.x.clone()),
            "y" => Some(self.y.clone()),
            _ => None,
        })
    }

    /// Rewrites a word over `gen1`, `gen2` in terms of `x`, `y`.
    pub fn contract(&self, p: &DihedralPresentation, w: &Word) -> Option<Word> {
        w.substitute(|g| {
            if g == p.gen1() {
                Some(self.gen1.clone())
            } else if g == p.gen2() {
                Some(self.gen2.clone())
            } else {
                None
            }
        })
    }
}

/// Outcome of a centralizer membership query.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Centralizer {
    /// `w = δ^delta_exp · gen1^gen1_exp`, confirmed by the engine.
    Member { delta_exp: i64, gen1_exp: i64 },
    /// `w` does not commute with `gen1`; `commutator = w·gen1·w⁻¹·gen1⁻¹`.
    NonMember { commutator: Word },
}

impl DihedralPresentation {
    pub fn new(m: Label, gen1: GeneratorId, gen2: GeneratorId) -> Result<Self, DihedralError> {
        if gen1 >= gen2 {
            return Err(DihedralError::BadGenerators(gen1.to_string(), gen2.to_string()));
        }
        Ok(DihedralPresentation { m, gen1, gen2 })
    }

    /// `A(m)` on generators named `a` and `b`.
    pub fn standard(m: Label) -> Self {
        DihedralPresentation {
            m,
            gen1: GeneratorId::new("a").expect("valid name"),
            gen2: GeneratorId::new("b").expect("valid name"),
        }
    }

    pub fn label(&self) -> Label {
        self.m
    }

    pub fn gen1(&self) -> &GeneratorId {
        &self.gen1
    }

    pub fn gen2(&self) -> &GeneratorId {
        &self.gen2
    }

    fn finite_m(&self) -> Result<u32, DihedralError> {
        self.m.value().ok_or(DihedralError::InfiniteLabel)
    }

    fn letter(&self, g: &GeneratorId) -> Result<Letter, DihedralError> {
        if g == &self.gen1 {
            Ok(Letter::First)
        } else if g == &self.gen2 {
            Ok(Letter::Second)
        } else {
            Err(DihedralError::ForeignGenerator(g.to_string()))
        }
    }

    fn generator_of(&self, l: Letter) -> &GeneratorId {
        match l {
            Letter::First => &self.gen1,
            Letter::Second => &self.gen2,
        }
    }

    fn check_support(&self, w: &Word) -> Result<(), DihedralError> {
        w.support().try_for_each(|g| self.letter(g).map(|_| ()))
    }

    /// The Garside element `Δ = Π(gen1, gen2, m)`.
    pub fn delta(&self) -> Result<Word, DihedralError> {
        let m = self.finite_m()?;
        Ok(pi_word(&self.gen1, &self.gen2, m as usize))
    }

    /// Power of `Δ` that generates the center: 2 for odd `m`, 1 for even.
    fn center_delta_exponent(&self) -> Result<i64, DihedralError> {
        Ok(if self.finite_m()? % 2 == 1 { 2 } else { 1 })
    }

    /// Generator `δ` of the center: `Δ²` for odd `m`, `Δ` for even `m`.
    pub fn center_gen(&self) -> Result<Word, DihedralError> {
        Ok(self.delta()?.pow(self.center_delta_exponent()?))
    }

    /// `u = gen1 · gen2`.
    pub fn u_elem(&self) -> Word {
        Word::from_syllables([(self.gen1.clone(), 1), (self.gen2.clone(), 1)])
    }

    pub fn normal_form(&self, w: &Word) -> Result<NormalForm, DihedralError> {
        self.check_support(w)?;
        match self.m.value() {
            None => Ok(NormalForm::Free(w.free_reduce())),
            Some(2) => {
                let (mut first, mut second) = (0, 0);
                for s in w.syllables() {
                    match self.letter(&s.generator)? {
                        Letter::First => first += s.exponent,
                        Letter::Second => second += s.exponent,
                    }
                }
                Ok(NormalForm::Abelian { first, second })
            }
            Some(m) => {
                let mut builder = GarsideBuilder::new(m);
                for (g, sign) in w.letters() {
                    builder.push_letter(self.letter(g)?, sign > 0);
                }
                Ok(NormalForm::Garside(builder.finish()))
            }
        }
    }

    /// Expands a normal form back into a word.
    pub fn normal_form_word(&self, nf: &NormalForm) -> Word {
        match nf {
            NormalForm::Free(w) => w.clone(),
            NormalForm::Abelian { first, second } => {
                Word::from_syllables([(self.gen1.clone(), *first), (self.gen2.clone(), *second)])
            }
            NormalForm::Garside(g) => {
                let m = self.m.value().expect("Garside forms only exist for finite m") as usize;
                let mut out = pi_word(&self.gen1, &self.gen2, m).pow(g.delta_power);
                for f in &g.factors {
                    let start = self.generator_of(f.start);
                    let other = self.generator_of(f.start.other());
                    out = out.concat(&pi_word(start, other, f.len as usize));
                }
                out
            }
        }
    }

    pub fn words_equal(&self, u: &Word, v: &Word) -> Result<bool, DihedralError> {
        Ok(self.normal_form(u)? == self.normal_form(v)?)
    }

    fn is_identity(&self, w: &Word) -> Result<bool, DihedralError> {
        self.words_equal(w, &Word::empty())
    }

    fn commutes(&self, u: &Word, v: &Word) -> Result<bool, DihedralError> {
        self.words_equal(&u.concat(v), &v.concat(u))
    }

    /// `Some(s)` when `w = δ^s`, read off the normal form.
    pub fn center_exponent(&self, w: &Word) -> Result<Option<i64>, DihedralError> {
        let step = self.center_delta_exponent()?;
        Ok(match self.normal_form(w)? {
            NormalForm::Garside(g) if g.factors.is_empty() && g.delta_power % step == 0 => Some(g.delta_power / step),
            NormalForm::Abelian { first, second } if first == second => Some(first),
            _ => None,
        })
    }

    /// Whether `w` lies in the center.
    ///
    /// For finite `m >= 3` two independent tests run and must agree:
    /// commutation with both generators, and membership in `⟨δ⟩` read off
    /// the normal form. For `m = ∞` the center is trivial.
    pub fn is_central(&self, w: &Word) -> Result<bool, DihedralError> {
        self.check_support(w)?;
        let Some(m) = self.m.value() else {
            return Ok(w.free_reduce().is_empty());
        };
        let commutes =
            self.commutes(w, &Word::generator(&self.gen1))? && self.commutes(w, &Word::generator(&self.gen2))?;
        if m >= 3 {
            let in_delta = self.center_exponent(w)?.is_some();
            if in_delta != commutes {
                return Err(DihedralError::Inconsistent(alloc::format!(
                    "commutation says {commutes} but <delta> membership says {in_delta} for {w}"
                )));
            }
        }
        Ok(commutes)
    }

    /// `δ^s · gen1^t` as a word.
    pub fn delta_gen1(&self, s: i64, t: i64) -> Result<Word, DihedralError> {
        Ok(self.center_gen()?.pow(s).concat(&Word::power(&self.gen1, t)))
    }

    /// Decides whether `w` centralizes `δ^k1 · gen1^k2` (`k2 != 0`).
    ///
    /// That centralizer is `⟨δ, gen1⟩`, so membership is decided by commuting
    /// with `gen1`; a member is decomposed as `δ^s · gen1^t` from its
    /// abelianization and infimum and the decomposition is re-checked.
    pub fn centralizer_membership(&self, w: &Word, k1: i64, k2: i64) -> Result<Centralizer, DihedralError> {
        let m = self.finite_m()?;
        if k2 == 0 {
            return Err(DihedralError::ZeroExponent);
        }
        self.check_support(w)?;
        let a = Word::generator(&self.gen1);
        let target = self.delta_gen1(k1, k2)?;
        let with_gen1 = self.commutes(w, &a)?;
        let with_target = self.commutes(w, &target)?;
        if with_gen1 != with_target {
            return Err(DihedralError::Inconsistent(alloc::format!(
                "{w} commutes with gen1: {with_gen1}, with the target: {with_target}"
            )));
        }
        if !with_gen1 {
            let commutator = w.concat(&a).concat(&w.invert()).concat(&a.invert());
            return Ok(Centralizer::NonMember { commutator });
        }
        for (s, t) in self.decomposition_candidates(w, m)? {
            if self.words_equal(w, &self.delta_gen1(s, t)?)? {
                return Ok(Centralizer::Member { delta_exp: s, gen1_exp: t });
            }
        }
        Err(DihedralError::Inconsistent(alloc::format!("{w} commutes with gen1 but is not in <delta, gen1>")))
    }

    /// Candidate `(s, t)` with `w = δ^s a^t`.
    ///
    /// With `D` the exponent sum of `δ` and `e` its `Δ`-exponent, the exponent
    /// sum is `T = D·s + t` and the infimum of `δ^s a^t` is `e·s` when `t >= 0`
    /// and `e·s + t` when `t < 0`, which leaves one candidate per sign of `t`.
    fn decomposition_candidates(&self, w: &Word, m: u32) -> Result<Vec<(i64, i64)>, DihedralError> {
        let total = match abelianize(w, Grading::TotalSum) {
            crate::word::AbelianImage::Total(t) => t,
            _ => unreachable!(),
        };
        let nf = self.normal_form(w)?;
        let mut out = Vec::new();
        match nf {
            NormalForm::Abelian { first, second } => out.push((second, first - second)),
            NormalForm::Garside(g) => {
                let e = self.center_delta_exponent()?;
                let d = e * i64::from(m);
                let inf = g.delta_power;
                if inf % e == 0 {
                    let s = inf / e;
                    let t = total - d * s;
                    if t >= 0 {
                        out.push((s, t));
                    }
                }
                if (total - inf) % (d - e) == 0 {
                    let s = (total - inf) / (d - e);
                    let t = inf - e * s;
                    if t < 0 {
                        out.push((s, t));
                    }
                }
            }
            NormalForm::Free(_) => unreachable!("finite m checked by caller"),
        }
        Ok(out)
    }

    /// Image in `A(m)/Z(A(m))`, a free product of two cyclic groups.
    ///
    /// * odd `m = 2n+1`: `C[2] ∗ C[m]` generated by `Δ̄` and `ū`, with
    ///   `a₁ = ū^{-n} Δ̄` and `a₂ = Δ̄⁻¹ ū^{n+1}`;
    /// * even `m > 2`: `C[∞] ∗ C[m/2]` generated by `ā₁` and `ū`, with
    ///   `a₂ = ā₁⁻¹ ū`.
    pub fn to_center_quotient(&self, w: &Word) -> Result<CenterQuotientImage, DihedralError> {
        let m = match self.m.value() {
            Some(m) if m >= 3 => m,
            _ => return Err(DihedralError::NeedsFiniteAtLeastThree { what: "the center quotient", m: self.m }),
        };
        self.check_support(w)?;
        let (target, a1, a2) = if m % 2 == 1 {
            let n = i64::from(m / 2);
            let sig = FreeProductSignature::new(CyclicOrder::Finite(2), CyclicOrder::Finite(m)).expect("orders >= 2");
            let a1 = crate::free_product::fp_normalize(&[(Factor::K, -n), (Factor::H, 1)], sig);
            let a2 = crate::free_product::fp_normalize(&[(Factor::H, -1), (Factor::K, n + 1)], sig);
            (sig, a1, a2)
        } else {
            let sig =
                FreeProductSignature::new(CyclicOrder::Infinite, CyclicOrder::Finite(m / 2)).expect("orders >= 2");
            let a1 = FreeProductWord::generator(sig, Factor::H, 1);
            let a2 = crate::free_product::fp_normalize(&[(Factor::H, -1), (Factor::K, 1)], sig);
            (sig, a1, a2)
        };
        let mut word = FreeProductWord::identity(target);
        for s in w.syllables() {
            let image = match self.letter(&s.generator)? {
                Letter::First => &a1,
                Letter::Second => &a2,
            };
            word = word.mul(&image.pow(s.exponent));
        }
        Ok(CenterQuotientImage { target, word })
    }

    /// Image in the dihedral group of order `2m`: `gen1 ↦ σ`, `gen2 ↦ ρ⁻¹σ`,
    /// so that `gen1·gen2 ↦ ρ`.
    pub fn coxeter_quotient_eval(&self, w: &Word) -> Result<DihedralElement, DihedralError> {
        let m = self.finite_m()?;
        self.check_support(w)?;
        let mut acc = DihedralElement { rotation: 0, reflection: false };
        for s in w.syllables() {
            if s.exponent % 2 == 0 {
                continue;
            }
            let r = match self.letter(&s.generator)? {
                Letter::First => DihedralElement { rotation: 0, reflection: true },
                Letter::Second => DihedralElement { rotation: m - 1, reflection: true },
            };
            acc = acc.compose(r, m);
        }
        Ok(acc)
    }

    /// The two-generator presentation on `x = Δ, y = u` (`x² = y^m`) for odd
    /// `m`, or on `x = gen1, y = u` (`x·y^{m/2} = y^{m/2}·x`) for even `m`.
    pub fn alternative_presentation(&self) -> Result<AlternativePresentation, DihedralError> {
        let m = match self.m.value() {
            Some(m) if m >= 3 => m,
            _ => {
                return Err(DihedralError::NeedsFiniteAtLeastThree { what: "the alternative presentation", m: self.m })
            }
        };
        let xg = GeneratorId::new("x").expect("valid name");
        let yg = GeneratorId::new("y").expect("valid name");
        let (x, y) = (Word::generator(&xg), Word::generator(&yg));
        let u = self.u_elem();
        if m % 2 == 1 {
            let n = i64::from(m / 2);
            Ok(AlternativePresentation {
                x: self.delta()?,
                y: u,
                gen1: Word::power(&yg, -n).concat(&x),
                gen2: x.invert().concat(&Word::power(&yg, n + 1)),
                relation: (x.pow(2), y.pow(i64::from(m))),
            })
        } else {
            let half = i64::from(m / 2);
            Ok(AlternativePresentation {
                x: Word::generator(&self.gen1),
                y: u,
                gen1: x.clone(),
                gen2: x.invert().concat(&y),
                relation: (x.concat(&y.pow(half)), y.pow(half).concat(&x)),
            })
        }
    }

    /// Whether `w` is trivial in `A(m)`.
    pub fn is_trivial(&self, w: &Word) -> Result<bool, DihedralError> {
        self.is_identity(w)
    }
}

impl DihedralElement {
    fn compose(self, rhs: DihedralElement, m: u32) -> DihedralElement {
        let r2 = if self.reflection { (m - rhs.rotation) % m } else { rhs.rotation };
        DihedralElement { rotation: (self.rotation + r2) % m, reflection: self.reflection ^ rhs.reflection }
    }
}
