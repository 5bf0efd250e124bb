#![allow(dead_code)]

use artin_core::coxeter::{CoxeterMatrix, GeneratorId, Label};
use artin_core::dihedral::DihedralPresentation;
use artin_core::free_product::{fp_normalize, CyclicOrder, Factor, FreeProductSignature, FreeProductWord};
use artin_core::word::{pi_word, Word};
use rand::Rng;

pub const LABELS: [u64; 7] = [2, 3, 4, 5, 6, 9, 0];

pub fn label(m: u64) -> Label {
    if m == 0 {
        Label::INFINITY
    } else {
        Label::finite(m).unwrap()
    }
}

pub fn gid(s: &str) -> GeneratorId {
    GeneratorId::new(s).unwrap()
}

pub fn dihedral(m: u64) -> DihedralPresentation {
    DihedralPresentation::standard(label(m))
}

/// Random word of at most `max_len` letters over the given generators.
pub fn random_word<R: Rng>(rng: &mut R, gens: &[GeneratorId], max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    Word::from_syllables((0..len).map(|_| {
        let g = gens[rng.gen_range(0..gens.len())].clone();
        (g, if rng.gen_bool(0.5) { 1 } else { -1 })
    }))
    .free_reduce()
}

/// A word equal to `w` in `A(m)`: a copy of `w` with relators
/// `Π(a,b,m)·Π(b,a,m)⁻¹` (or their inverses) and free cancellations inserted
/// at random cut points.
pub fn disguise<R: Rng>(rng: &mut R, m: u64, w: &Word, insertions: usize) -> Word {
    let (a, b) = (gid("a"), gid("b"));
    let mut letters: Vec<(GeneratorId, i64)> = w.letters().map(|(g, s)| (g.clone(), s)).collect();
    for _ in 0..insertions {
        let relator = if m != 0 && rng.gen_bool(0.7) {
            let r = pi_word(&a, &b, m as usize).concat(&pi_word(&b, &a, m as usize).invert());
            if rng.gen_bool(0.5) {
                r
            } else {
                r.invert()
            }
        } else {
            let g = if rng.gen_bool(0.5) { &a } else { &b };
            let s = if rng.gen_bool(0.5) { 1 } else { -1 };
            Word::from_syllables([(g.clone(), s), (g.clone(), -s)])
        };
        let at = rng.gen_range(0..=letters.len());
        let insert: Vec<(GeneratorId, i64)> = relator.letters().map(|(g, s)| (g.clone(), s)).collect();
        letters.splice(at..at, insert);
    }
    Word::from_syllables(letters)
}

pub fn sig(h: u32, k: u32) -> FreeProductSignature {
    let o = |n| if n == 0 { CyclicOrder::Infinite } else { CyclicOrder::Finite(n) };
    FreeProductSignature::new(o(h), o(k)).unwrap()
}

/// Nonzero exponents of a factor: all residues for finite factors, `window`
/// for infinite ones.
pub fn factor_exponents(sig: FreeProductSignature, f: Factor, window: &[i64]) -> Vec<i64> {
    match sig.order(f) {
        CyclicOrder::Finite(n) => (1..i64::from(n)).collect(),
        CyclicOrder::Infinite => window.to_vec(),
    }
}

/// All normal-form words with exactly `len` syllables.
pub fn all_fp_words(sig: FreeProductSignature, len: usize, window: &[i64]) -> Vec<FreeProductWord> {
    let mut out = Vec::new();
    for start in [Factor::H, Factor::K] {
        let mut partial: Vec<Vec<(Factor, i64)>> = vec![Vec::new()];
        for i in 0..len {
            let f = if i % 2 == 0 { start } else { start.other() };
            let exps = factor_exponents(sig, f, window);
            partial = partial
                .into_iter()
                .flat_map(|p| {
                    exps.iter().map(move |&e| {
                        let mut q = p.clone();
                        q.push((f, e));
                        q
                    })
                })
                .collect();
        }
        out.extend(partial.iter().map(|p| fp_normalize(p, sig)));
        if len == 0 {
            break;
        }
    }
    out
}

pub fn random_fp_word<R: Rng>(
    rng: &mut R,
    sig: FreeProductSignature,
    max_len: usize,
    window: &[i64],
) -> FreeProductWord {
    let len = rng.gen_range(0..=max_len);
    let mut f = if rng.gen_bool(0.5) { Factor::H } else { Factor::K };
    let mut raw = Vec::new();
    for _ in 0..len {
        let exps = factor_exponents(sig, f, window);
        raw.push((f, exps[rng.gen_range(0..exps.len())]));
        f = f.other();
    }
    fp_normalize(&raw, sig)
}

/// Random matrix on `s1..sn` with labels drawn from [`LABELS`].
pub fn random_matrix<R: Rng>(rng: &mut R, n: usize) -> CoxeterMatrix {
    let names: Vec<String> = (1..=n).map(|i| format!("s{i}")).collect();
    let mut labels = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let m = LABELS[rng.gen_range(0..LABELS.len())];
            labels.push((gid(&names[i]), gid(&names[j]), label(m)));
        }
    }
    CoxeterMatrix::new(names.iter().map(|n| gid(n)).collect(), labels).unwrap()
}

/// All rank-3 matrices on `a, b, c` with labels from [`LABELS`].
pub fn all_rank_three() -> Vec<CoxeterMatrix> {
    let mut out = Vec::new();
    for &x in &LABELS {
        for &y in &LABELS {
            for &z in &LABELS {
                out.push(
                    CoxeterMatrix::from_names(&["a", "b", "c"], &[("a", "b", x), ("a", "c", y), ("b", "c", z)])
                        .unwrap(),
                );
            }
        }
    }
    out
}
