//! Free products `H ∗ K` of two cyclic groups, in alternating normal form.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// Order of a cyclic factor: finite `n >= 2` or infinite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CyclicOrder {
    Finite(u32),
    Infinite,
}

impl CyclicOrder {
    /// Reduces an exponent into `{0, …, n-1}` for finite orders.
    fn reduce(self, k: i64) -> i64 {
        match self {
            CyclicOrder::Finite(n) => k.rem_euclid(i64::from(n)),
            CyclicOrder::Infinite => k,
        }
    }
}

impl fmt::Display for CyclicOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CyclicOrder::Finite(n) => write!(f, "{n}"),
            CyclicOrder::Infinite => f.write_str("inf"),
        }
    }
}

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum FreeProductError {
    #[error("cyclic factor order must be >= 2, got {0}")]
    BadOrder(u32),
    #[error("bad free-product token at position {position}: {message}")]
    Parse { position: usize, message: String },
}

/// The two factor orders of `H ∗ K`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FreeProductSignature {
    h: CyclicOrder,
    k: CyclicOrder,
}

impl FreeProductSignature {
    pub fn new(h: CyclicOrder, k: CyclicOrder) -> Result<Self, FreeProductError> {
        for o in [h, k] {
            if let CyclicOrder::Finite(n) = o {
                if n < 2 {
                    return Err(FreeProductError::BadOrder(n));
                }
            }
        }
        Ok(FreeProductSignature { h, k })
    }

    pub fn order(&self, factor: Factor) -> CyclicOrder {
        match factor {
            Factor::H => self.h,
            Factor::K => self.k,
        }
    }
}

/// Which free factor a syllable lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Factor {
    H,
    K,
}

impl Factor {
    pub fn other(self) -> Factor {
        match self {
            Factor::H => Factor::K,
            Factor::K => Factor::H,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FpSyllable {
    pub factor: Factor,
    pub exponent: i64,
}

/// Element of `H ∗ K` in normal form: syllables alternate factors, exponents
/// are nonzero and, for finite factors, lie in `{1, …, n-1}`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FreeProductWord {
    signature: FreeProductSignature,
    syllables: Vec<FpSyllable>,
}

/// Normalizes a raw syllable list.
pub fn fp_normalize(raw: &[(Factor, i64)], signature: FreeProductSignature) -> FreeProductWord {
    let mut w = FreeProductWord::identity(signature);
    for &(factor, exponent) in raw {
        w.push(factor, exponent);
    }
    w
}

impl FreeProductWord {
    pub fn identity(signature: FreeProductSignature) -> Self {
        FreeProductWord { signature, syllables: Vec::new() }
    }

    pub fn generator(signature: FreeProductSignature, factor: Factor, exponent: i64) -> Self {
        fp_normalize(&[(factor, exponent)], signature)
    }

    pub fn signature(&self) -> FreeProductSignature {
        self.signature
    }

    pub fn syllables(&self) -> &[FpSyllable] {
        &self.syllables
    }

    pub fn syllable_len(&self) -> usize {
        self.syllables.len()
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    fn push(&mut self, factor: Factor, exponent: i64) {
        let order = self.signature.order(factor);
        let exponent = order.reduce(exponent);
        if exponent == 0 {
            return;
        }
        match self.syllables.last_mut() {
            Some(last) if last.factor == factor => {
                last.exponent = order.reduce(last.exponent + exponent);
                if last.exponent == 0 {
                    self.syllables.pop();
                }
            }
            _ => self.syllables.push(FpSyllable { factor, exponent }),
        }
    }

    pub fn mul(&self, other: &FreeProductWord) -> FreeProductWord {
        debug_assert_eq!(self.signature, other.signature);
        let mut out = self.clone();
        for s in &other.syllables {
            out.push(s.factor, s.exponent);
        }
        out
    }

    pub fn inverse(&self) -> FreeProductWord {
        let mut out = FreeProductWord::identity(self.signature);
        for s in self.syllables.iter().rev() {
            out.push(s.factor, -s.exponent);
        }
        out
    }

    pub fn pow(&self, k: i64) -> FreeProductWord {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = FreeProductWord::identity(self.signature);
        for _ in 0..k.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }

    /// `by · self · by⁻¹`.
    pub fn conjugate(&self, by: &FreeProductWord) -> FreeProductWord {
        by.mul(self).mul(&by.inverse())
    }

    /// The word without its last syllable, when that syllable lies in
    /// `factor`. Gives the shortest representative of the coset `self·factor`.
    pub(crate) fn strip_trailing(&self, factor: Factor) -> FreeProductWord {
        let mut out = self.clone();
        if out.syllables.last().is_some_and(|s| s.factor == factor) {
            out.syllables.pop();
        }
        out
    }

    /// Parses whitespace-separated tokens `x^k` (factor `H`) and `y^k`
    /// (factor `K`); a bare `x` or `y` means exponent 1, and `1` is the
    /// identity.
    pub fn parse(text: &str, signature: FreeProductSignature) -> Result<Self, FreeProductError> {
        let mut raw = Vec::new();
        for token in text.split_whitespace() {
            let position = token.as_ptr() as usize - text.as_ptr() as usize;
            if token == "1" {
                continue;
            }
            let (name, exp) = token.split_once('^').unwrap_or((token, "1"));
            let factor = match name {
                "x" => Factor::H,
                "y" => Factor::K,
                _ => {
                    return Err(FreeProductError::Parse {
                        position,
                        message: alloc::format!("expected factor x or y, found {name:?}"),
                    })
                }
            };
            let k: i64 = exp.parse().map_err(|_| FreeProductError::Parse {
                position,
                message: alloc::format!("exponent {exp:?} is not an integer"),
            })?;
            raw.push((factor, k));
        }
        Ok(fp_normalize(&raw, signature))
    }
}

impl fmt::Display for FreeProductWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.syllables.is_empty() {
            return f.write_str("1");
        }
        for (i, s) in self.syllables.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            let name = match s.factor {
                Factor::H => "x",
                Factor::K => "y",
            };
            if s.exponent == 1 {
                f.write_str(name)?;
            } else {
                write!(f, "{name}^{}", s.exponent)?;
            }
        }
        Ok(())
    }
}

/// Splits `w` as `conjugator · core · conjugator⁻¹` with `core` cyclically
/// reduced: at most one syllable, or first and last syllables in different
/// factors.
pub fn cyclic_reduce(w: &FreeProductWord) -> (FreeProductWord, FreeProductWord) {
    let mut core = w.clone();
    let mut conjugator = FreeProductWord::identity(w.signature);
    while core.syllables.len() >= 2 && core.syllables[0].factor == core.syllables[core.syllables.len() - 1].factor {
        let first = core.syllables[0];
        conjugator.push(first.factor, first.exponent);
        let mut rest = FreeProductWord { signature: core.signature, syllables: core.syllables[1..].to_vec() };
        rest.push(first.factor, first.exponent);
        core = rest;
    }
    (core, conjugator)
}
