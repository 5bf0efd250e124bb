//! Left-greedy Garside normal form in the dihedral Artin group `A(m)`,
//! `3 <= m < ∞`.
//!
//! The simple elements are the alternating words of length `0..=m`: the
//! identity, the `2m - 2` proper prefixes of `Δ`, and `Δ` itself. A pair of
//! proper simples `(s, t)` is left-weighted exactly when `t` starts with the
//! last letter of `s`. Negative letters are absorbed as `x⁻¹ = Δ⁻¹ · (Δx⁻¹)`
//! and `Δ⁻¹` is pushed left through the conjugation `τ(w) = ΔwΔ⁻¹`, which
//! swaps the two letters when `m` is odd and is trivial when `m` is even.

use alloc::vec::Vec;

/// One of the two standard generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    First,
    Second,
}

impl Letter {
    pub fn other(self) -> Letter {
        match self {
            Letter::First => Letter::Second,
            Letter::Second => Letter::First,
        }
    }
}

/// A proper simple factor: the alternating word of length `len` starting
/// with `start`, `1 <= len <= m - 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SimpleFactor {
    pub start: Letter,
    pub len: u32,
}

impl SimpleFactor {
    pub fn last(self) -> Letter {
        if self.len % 2 == 1 {
            self.start
        } else {
            self.start.other()
        }
    }
}

/// `Δ^delta_power · factors[0] ⋯ factors[r-1]`, left-weighted, with no
/// identity or `Δ` factors. Equal elements have identical forms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GarsideNormalForm {
    pub delta_power: i64,
    pub factors: Vec<SimpleFactor>,
}

/// Working factor: length 0 is the identity, length `m` is `Δ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Fac {
    start: Letter,
    len: u32,
}

const ID: Fac = Fac { start: Letter::First, len: 0 };

/// Incremental normal-form builder: multiply on the right by letters.
pub(crate) struct GarsideBuilder {
    m: u32,
    delta_power: i64,
    /// Stored factors; the actual factors are `τ^twist` of these.
    factors: Vec<Fac>,
    twist: bool,
}

impl GarsideBuilder {
    pub(crate) fn new(m: u32) -> Self {
        debug_assert!(m >= 3);
        GarsideBuilder { m, delta_power: 0, factors: Vec::new(), twist: false }
    }

    fn delta(&self) -> Fac {
        Fac { start: Letter::First, len: self.m }
    }

    fn tau(&self, f: Fac) -> Fac {
        if self.m % 2 == 1 && f.len < self.m {
            Fac { start: f.start.other(), len: f.len }
        } else {
            f
        }
    }

    fn last(f: Fac) -> Letter {
        SimpleFactor { start: f.start, len: f.len }.last()
    }

    /// Left-weighted form of the product `s·t` of two simples.
    fn left_weight(&self, s: Fac, t: Fac) -> (Fac, Fac) {
        let m = self.m;
        if s.len == 0 {
            return (t, ID);
        }
        if t.len == 0 || s.len == m {
            return (s, t);
        }
        if t.len == m {
            return (self.delta(), self.tau(s));
        }
        if t.start == Self::last(s) {
            return (s, t);
        }
        // s·t is a single alternating word of length s.len + t.len.
        let total = s.len + t.len;
        if total < m {
            (Fac { start: s.start, len: total }, ID)
        } else if total == m {
            (self.delta(), ID)
        } else {
            let start = if m.is_multiple_of(2) { s.start } else { s.start.other() };
            (self.delta(), Fac { start, len: total - m })
        }
    }

    /// Right-multiplies by an actual simple `x` (not identity).
    fn push_simple(&mut self, x: Fac) {
        let stored = if self.twist { self.tau(x) } else { x };
        self.factors.push(stored);
        let mut i = self.factors.len() - 1;
        while i > 0 {
            let (a, b) = (self.factors[i - 1], self.factors[i]);
            let (na, nb) = self.left_weight(a, b);
            if (na, nb) == (a, b) {
                break;
            }
            self.factors[i - 1] = na;
            self.factors[i] = nb;
            i -= 1;
        }
        while self.factors.last().is_some_and(|f| f.len == 0) {
            self.factors.pop();
        }
        let leading = self.factors.iter().take_while(|f| f.len == self.m).count();
        if leading > 0 {
            // τ fixes Δ, so stored and actual leading factors agree.
            self.factors.drain(..leading);
            self.delta_power += leading as i64;
        }
    }

    pub(crate) fn push_letter(&mut self, letter: Letter, positive: bool) {
        if positive {
            self.push_simple(Fac { start: letter, len: 1 });
        } else {
            // Δ^k F x⁻¹ = Δ^(k-1) τ(F) (Δx⁻¹), and Δx⁻¹ is the length m-1
            // alternating word that ends just before x.
            self.delta_power -= 1;
            if self.m % 2 == 1 {
                self.twist = !self.twist;
            }
            let start = if self.m % 2 == 1 { letter } else { letter.other() };
            self.push_simple(Fac { start, len: self.m - 1 });
        }
    }

    pub(crate) fn finish(self) -> GarsideNormalForm {
        let factors = self
            .factors
            .iter()
            .map(|&f| {
                let f = if self.twist { self.tau(f) } else { f };
                SimpleFactor { start: f.start, len: f.len }
            })
            .collect();
        GarsideNormalForm { delta_power: self.delta_power, factors }
    }
}
