//! Action of `H ∗ K` on its Bass–Serre tree.
//!
//! Vertices are the cosets `gH` and `gK`; the edge `e(g)` joins `v(gH)` and
//! `v(gK)`. A vertex is stored as its shortest coset representative, which is
//! the normal form of `g` with any trailing syllable from the coset's factor
//! removed, so coset equality is structural equality.

use alloc::collections::{BTreeSet, VecDeque};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::free_product::{cyclic_reduce, CyclicOrder, Factor, FreeProductSignature, FreeProductWord};

/// The vertex `v(rep · kind)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Vertex {
    kind: Factor,
    rep: FreeProductWord,
}

impl Vertex {
    /// The vertex `v(g · kind)`.
    pub fn new(kind: Factor, g: &FreeProductWord) -> Vertex {
        Vertex { kind, rep: g.strip_trailing(kind) }
    }

    /// `v(H)` or `v(K)`.
    pub fn base(kind: Factor, signature: FreeProductSignature) -> Vertex {
        Vertex { kind, rep: FreeProductWord::identity(signature) }
    }

    pub fn kind(&self) -> Factor {
        self.kind
    }

    pub fn representative(&self) -> &FreeProductWord {
        &self.rep
    }

    /// `g · v`.
    pub fn translate(&self, g: &FreeProductWord) -> Vertex {
        Vertex::new(self.kind, &g.mul(&self.rep))
    }

    /// Path from `self` up to `v(H)` as `(kind, prefix length)` pairs: every
    /// ancestor is `v(r·kind)` for a prefix `r` of the representative.
    ///
    /// `v(gH)` with `g` ending in a K-syllable sits on `e(g)`, whose other end
    /// is `v(gK) = v(g'K)`; symmetrically for `v(gK)`. The chain ends at
    /// `v(K) → v(H)`.
    fn ancestry(&self) -> Vec<(Factor, usize)> {
        let mut chain = vec![(self.kind, self.rep.syllable_len())];
        loop {
            let (kind, len) = *chain.last().expect("nonempty");
            let parent = match (kind, len) {
                (Factor::H, 0) => break,
                (Factor::K, 0) => (Factor::H, 0),
                (kind, len) => (kind.other(), len - 1),
            };
            chain.push(parent);
        }
        chain
    }

    /// All vertices adjacent to `self`, with elements of an infinite factor
    /// restricted to exponents in `window` (and the identity).
    fn neighbours(&self, window: &[i64]) -> Vec<Vertex> {
        let sig = self.rep.signature();
        let other = self.kind.other();
        let mut elems = vec![0i64];
        match sig.order(self.kind) {
            CyclicOrder::Finite(n) => elems.extend(1..i64::from(n)),
            CyclicOrder::Infinite => elems.extend(window.iter().copied()),
        }
        elems
            .into_iter()
            .map(|e| Vertex::new(other, &self.rep.mul(&FreeProductWord::generator(sig, self.kind, e))))
            .collect()
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = match self.kind {
            Factor::H => "H",
            Factor::K => "K",
        };
        if self.rep.is_identity() {
            write!(f, "v({k})")
        } else {
            write!(f, "v({} {k})", self.rep)
        }
    }
}

/// Edge distance between two vertices, measured through their common
/// ancestor on the way to `v(H)`.
pub fn tree_distance(a: &Vertex, b: &Vertex) -> u64 {
    let mut pa = a.ancestry();
    let mut pb = b.ancestry();
    let (ra, rb) = (a.rep.syllables(), b.rep.syllables());
    let mut common = 0;
    while let (Some(&x), Some(&y)) = (pa.last(), pb.last()) {
        if x != y || ra[..x.1] != rb[..y.1] {
            break;
        }
        pa.pop();
        pb.pop();
        common += 1;
    }
    debug_assert!(common >= 1, "every vertex descends from v(H)");
    (pa.len() + pb.len()) as u64
}

/// How an element acts on the tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TreeActionResult {
    Elliptic { fixed_vertex: Vertex },
    Hyperbolic { translation_length: u64, axis_sample: Vec<Vertex> },
}

impl TreeActionResult {
    pub fn translation_length(&self) -> u64 {
        match self {
            TreeActionResult::Elliptic { .. } => 0,
            TreeActionResult::Hyperbolic { translation_length, .. } => *translation_length,
        }
    }

    pub fn is_elliptic(&self) -> bool {
        matches!(self, TreeActionResult::Elliptic { .. })
    }
}

/// Elliptic when the cyclic core has at most one syllable; otherwise
/// hyperbolic with translation length equal to the core's syllable length.
///
/// The axis sample holds `c·v(H)`, `c·v(K)`, `w·c·v(H)`, `w·c·v(K)` where `c`
/// is the cyclic-reduction conjugator.
pub fn classify_action(w: &FreeProductWord) -> TreeActionResult {
    let sig = w.signature();
    let (core, conj) = cyclic_reduce(w);
    match core.syllables() {
        [] => TreeActionResult::Elliptic { fixed_vertex: Vertex::base(Factor::H, sig).translate(&conj) },
        [s] => TreeActionResult::Elliptic { fixed_vertex: Vertex::base(s.factor, sig).translate(&conj) },
        syl => {
            let h = Vertex::base(Factor::H, sig).translate(&conj);
            let k = Vertex::base(Factor::K, sig).translate(&conj);
            let axis_sample = vec![h.clone(), k.clone(), h.translate(w), k.translate(w)];
            TreeActionResult::Hyperbolic { translation_length: syl.len() as u64, axis_sample }
        }
    }
}

/// Brute-force translation length: the minimum of `d(x, w·x)` over every
/// vertex `x` within `radius` of `v(H)`.
///
/// Exponents of an infinite factor are drawn from those occurring in `w`
/// (so the coset ball is finite). The result is exact once
/// `radius >= w.syllable_len() + 2`.
pub fn tree_distance_oracle(w: &FreeProductWord, radius: u64) -> u64 {
    let sig = w.signature();
    let window: Vec<i64> =
        w.syllables().iter().map(|s| s.exponent).chain([1]).collect::<BTreeSet<_>>().into_iter().collect();
    let root = Vertex::base(Factor::H, sig);
    // In a tree the only already-visited neighbour is the one we came from.
    let mut queue = VecDeque::new();
    queue.push_back((root, None::<Vertex>, 0u64));
    let mut best = u64::MAX;
    while let Some((x, from, depth)) = queue.pop_front() {
        best = best.min(tree_distance(&x, &x.translate(w)));
        if best == 0 {
            return 0;
        }
        if depth == radius {
            continue;
        }
        for y in x.neighbours(&window) {
            if from.as_ref() != Some(&y) {
                queue.push_back((y, Some(x.clone()), depth + 1));
            }
        }
    }
    best
}
