//! Words over named generators, stored as syllables `g^k`.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Add;
use core::str::FromStr;

use crate::coxeter::GeneratorId;

/// One maximal block `generator^exponent` of a word. The exponent is never 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Syllable {
    pub generator: GeneratorId,
    pub exponent: i64,
}

/// A word in the free group on the generators.
///
/// Syllables always carry nonzero exponents. Adjacent syllables may share a
/// generator until the word is passed through [`Word::free_reduce`]; every
/// group operation on words returns a freely reduced result.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word {
    syllables: Vec<Syllable>,
}

/// Error from the word text grammar, with the byte offset of the bad token.
#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
#[error("bad word token at position {position}: {message}")]
pub struct WordParseError {
    pub position: usize,
    pub message: String,
}

impl Word {
    pub fn empty() -> Word {
        Word::default()
    }

    pub fn generator(g: &GeneratorId) -> Word {
        Word::power(g, 1)
    }

    pub fn power(g: &GeneratorId, k: i64) -> Word {
        Word::from_syllables([(g.clone(), k)])
    }

    /// Builds a word without reducing it; zero exponents are dropped.
    pub fn from_syllables<I>(syllables: I) -> Word
    where
        I: IntoIterator<Item = (GeneratorId, i64)>,
    {
        Word {
            syllables: syllables
                .into_iter()
                .filter(|(_, k)| *k != 0)
                .map(|(generator, exponent)| Syllable { generator, exponent })
                .collect(),
        }
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    pub fn is_empty(&self) -> bool {
        self.syllables.is_empty()
    }

    pub fn syllable_len(&self) -> usize {
        self.syllables.len()
    }

    /// Number of letters, i.e. the sum of absolute exponents.
    pub fn letter_len(&self) -> u64 {
        self.syllables.iter().map(|s| s.exponent.unsigned_abs()).sum()
    }

    /// The word as a sequence of signed letters `(g, ±1)`.
    pub fn letters(&self) -> impl Iterator<Item = (&GeneratorId, i64)> {
        self.syllables.iter().flat_map(|s| {
            let sign = s.exponent.signum();
            core::iter::repeat_n((&s.generator, sign), s.exponent.unsigned_abs() as usize)
        })
    }

    /// Canonical freely reduced form: merges equal neighbours and drops
    /// cancelled syllables. Idempotent and never lengthens the word.
    pub fn free_reduce(&self) -> Word {
        let mut out: Vec<Syllable> = Vec::with_capacity(self.syllables.len());
        for s in &self.syllables {
            push_reduced(&mut out, &s.generator, s.exponent);
        }
        Word { syllables: out }
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut out = self.free_reduce().syllables;
        for s in &other.syllables {
            push_reduced(&mut out, &s.generator, s.exponent);
        }
        Word { syllables: out }
    }

    pub fn invert(&self) -> Word {
        Word {
            syllables: self
                .syllables
                .iter()
                .rev()
                .map(|s| Syllable { generator: s.generator.clone(), exponent: -s.exponent })
                .collect(),
        }
        .free_reduce()
    }

    /// `by · self · by⁻¹`.
    pub fn conjugate(&self, by: &Word) -> Word {
        by.concat(self).concat(&by.invert())
    }

    /// `self^k` for any integer `k`.
    pub fn pow(&self, k: i64) -> Word {
        let base = if k < 0 { self.invert() } else { self.free_reduce() };
        let mut out = Vec::with_capacity(base.syllables.len() * k.unsigned_abs() as usize);
        for _ in 0..k.unsigned_abs() {
            for s in &base.syllables {
                push_reduced(&mut out, &s.generator, s.exponent);
            }
        }
        Word { syllables: out }
    }

    /// Product of `m` factors alternating `u, v, u, …`, freely reduced.
    pub fn alternating(u: &Word, v: &Word, m: usize) -> Word {
        let mut out = Vec::new();
        for i in 0..m {
            for s in &(if i % 2 == 0 { u } else { v }).syllables {
                push_reduced(&mut out, &s.generator, s.exponent);
            }
        }
        Word { syllables: out }
    }

    /// Generators occurring in the word.
    pub fn support(&self) -> impl Iterator<Item = &GeneratorId> {
        self.syllables.iter().map(|s| &s.generator)
    }

    /// Replaces every generator by a word; `image` returns `None` for a
    /// generator it cannot map, which aborts the substitution.
    pub fn substitute<F>(&self, mut image: F) -> Option<Word>
    where
        F: FnMut(&GeneratorId) -> Option<Word>,
    {
        let mut out = Word::empty();
        for s in &self.syllables {
            out = out.concat(&image(&s.generator)?.pow(s.exponent));
        }
        Some(out)
    }

    /// Parses the text grammar: whitespace-separated tokens `g` or `g^k` with
    /// `k` a nonzero integer. The token `1` denotes the identity.
    pub fn parse(text: &str) -> Result<Word, WordParseError> {
        let mut syllables = Vec::new();
        for token in text.split_whitespace() {
            // split_whitespace hands out subslices of `text`, so their offsets
            // can be recovered from the pointer distance.
            let position = token.as_ptr() as usize - text.as_ptr() as usize;
            if token == "1" {
                continue;
            }
            let (name, exp) = match token.split_once('^') {
                Some((name, exp)) => {
                    let k: i64 = exp.parse().map_err(|_| WordParseError {
                        position: position + name.len() + 1,
                        message: alloc::format!("exponent {exp:?} is not an integer"),
                    })?;
                    if k == 0 {
                        return Err(WordParseError {
                            position: position + name.len() + 1,
                            message: "exponent must be nonzero".into(),
                        });
                    }
                    (name, k)
                }
                None => (token, 1),
            };
            let generator = GeneratorId::new(name).map_err(|_| WordParseError {
                position,
                message: alloc::format!("{name:?} is not a generator name"),
            })?;
            syllables.push(Syllable { generator, exponent: exp });
        }
        Ok(Word { syllables })
    }
}

fn push_reduced(out: &mut Vec<Syllable>, g: &GeneratorId, k: i64) {
    if k == 0 {
        return;
    }
    match out.last_mut() {
        Some(last) if &last.generator == g => {
            last.exponent += k;
            if last.exponent == 0 {
                out.pop();
            }
        }
        _ => out.push(Syllable { generator: g.clone(), exponent: k }),
    }
}

impl FromStr for Word {
    type Err = WordParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Word::parse(s)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.syllables.is_empty() {
            return f.write_str("1");
        }
        for (i, s) in self.syllables.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            if s.exponent == 1 {
                write!(f, "{}", s.generator)?;
            } else {
                write!(f, "{}^{}", s.generator, s.exponent)?;
            }
        }
        Ok(())
    }
}

/// The alternating word `s t s ⋯` of length `m`. With `s == t` this is `s^m`.
pub fn pi_word(s: &GeneratorId, t: &GeneratorId, m: usize) -> Word {
    Word::from_syllables((0..m).map(|i| (if i % 2 == 0 { s } else { t }.clone(), 1))).free_reduce()
}

/// Which abelian quotient to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Grading {
    /// Every generator maps to `1 ∈ ℤ`. A homomorphism for every Artin group.
    TotalSum,
    /// Each generator maps to its own coordinate of `ℤ^S`. Only a
    /// homomorphism when every finite label involved is even.
    PerGenerator,
}

/// Image of a word in an abelian quotient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AbelianImage {
    Total(i64),
    /// Finitely supported; zero coordinates are omitted.
    PerGenerator(BTreeMap<GeneratorId, i64>),
}

impl AbelianImage {
    pub fn is_zero(&self) -> bool {
        match self {
            AbelianImage::Total(n) => *n == 0,
            AbelianImage::PerGenerator(m) => m.is_empty(),
        }
    }

    pub fn coordinate(&self, g: &GeneratorId) -> i64 {
        match self {
            AbelianImage::Total(n) => *n,
            AbelianImage::PerGenerator(m) => m.get(g).copied().unwrap_or(0),
        }
    }
}

impl Add for AbelianImage {
    type Output = AbelianImage;

    /// Panics when the two gradings differ.
    fn add(self, rhs: AbelianImage) -> AbelianImage {
        match (self, rhs) {
            (AbelianImage::Total(a), AbelianImage::Total(b)) => AbelianImage::Total(a + b),
            (AbelianImage::PerGenerator(mut a), AbelianImage::PerGenerator(b)) => {
                for (g, k) in b {
                    let e = a.entry(g).or_insert(0);
                    *e += k;
                }
                a.retain(|_, k| *k != 0);
                AbelianImage::PerGenerator(a)
            }
            _ => panic!("cannot add abelian images of different gradings"),
        }
    }
}

pub fn abelianize(w: &Word, grading: Grading) -> AbelianImage {
    match grading {
        Grading::TotalSum => AbelianImage::Total(w.syllables.iter().map(|s| s.exponent).sum()),
        Grading::PerGenerator => {
            let mut coords = BTreeMap::new();
            for s in &w.syllables {
                *coords.entry(s.generator.clone()).or_insert(0) += s.exponent;
            }
            coords.retain(|_, k| *k != 0);
            AbelianImage::PerGenerator(coords)
        }
    }
}
