//! Seeded random instances built by the recursive odd-chain construction.
//!
//! A retract-compatible matrix on `s1, …, sn` picks an odd `m₁`, sets
//! `m_{1,j} = m₁` for `j > 1`, then for each `i` picks an odd `m_i ≥ 3`
//! dividing `m_{i-1}` and sets `m_{i,j} = m_i` for `j > i`. A
//! parabolic-retractable matrix joins such blocks pairwise by one even label
//! or by no edge at all.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coxeter::{CoxeterMatrix, GeneratorId, Label};

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum GenerateError {
    #[error("rank must be at least 1")]
    EmptyRank,
    #[error("block sizes must be at least 1")]
    EmptyBlock,
    #[error("cross label must be even or inf, got {0}")]
    OddCross(Label),
}

const ODD_PRIMES: [u32; 3] = [3, 5, 7];
const EVEN_CROSS: [u32; 4] = [2, 4, 6, 8];

/// Odd divisors `>= 3` of an odd `n`.
fn odd_divisors(n: u32) -> Vec<u32> {
    (3..=n).step_by(2).filter(|d| n.is_multiple_of(*d)).collect()
}

/// Labels of the chain construction on `names`, as `(i, j, m)` with `i < j`.
fn odd_chain(names: &[GeneratorId], rng: &mut ChaCha8Rng) -> Vec<(GeneratorId, GeneratorId, Label)> {
    let factors = rng.gen_range(1..=3);
    let mut current: u32 = (0..factors).map(|_| *ODD_PRIMES.choose(rng).expect("nonempty")).product();
    let mut out = Vec::new();
    for i in 0..names.len() {
        if i > 0 {
            current = *odd_divisors(current).choose(rng).expect("an odd number >= 3 divides itself");
        }
        for j in i + 1..names.len() {
            let label = Label::finite(u64::from(current)).expect("odd chain labels are >= 3");
            out.push((names[i].clone(), names[j].clone(), label));
        }
    }
    out
}

fn digits(mut n: usize) -> usize {
    let mut w = 1;
    while n >= 10 {
        n /= 10;
        w += 1;
    }
    w
}

fn padded(prefix: &str, i: usize, n: usize) -> GeneratorId {
    let width = digits(n);
    GeneratorId::new(&format!("{prefix}{i:0width$}")).expect("generated names are valid")
}

/// A retract-compatible matrix of rank `n` on `s1, …, sn` (zero-padded so
/// that name order matches index order).
pub fn gen_retract_compatible(n: usize, seed: u64) -> Result<CoxeterMatrix, GenerateError> {
    if n == 0 {
        return Err(GenerateError::EmptyRank);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let names: Vec<GeneratorId> = (1..=n).map(|i| padded("s", i, n)).collect();
    let labels = odd_chain(&names, &mut rng);
    Ok(CoxeterMatrix::new(names, labels).expect("generated matrix is well formed"))
}

/// A parabolic-retract-compatible matrix whose odd components have the given
/// sizes. Block `i` uses generators `t{i}_{j}`; each pair of blocks is joined
/// by a random even label or left unjoined (`∞`).
pub fn gen_parabolic_retractable(block_sizes: &[usize], seed: u64) -> Result<CoxeterMatrix, GenerateError> {
    build_parabolic(block_sizes, seed, None)
}

/// As [`gen_parabolic_retractable`], with every cross label equal to `cross`.
pub fn gen_parabolic_retractable_with_cross(
    block_sizes: &[usize],
    seed: u64,
    cross: Label,
) -> Result<CoxeterMatrix, GenerateError> {
    if cross.is_odd() {
        return Err(GenerateError::OddCross(cross));
    }
    build_parabolic(block_sizes, seed, Some(cross))
}

fn build_parabolic(block_sizes: &[usize], seed: u64, cross: Option<Label>) -> Result<CoxeterMatrix, GenerateError> {
    if block_sizes.is_empty() {
        return Err(GenerateError::EmptyRank);
    }
    if block_sizes.contains(&0) {
        return Err(GenerateError::EmptyBlock);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let blocks: Vec<Vec<GeneratorId>> = block_sizes
        .iter()
        .enumerate()
        .map(|(i, &size)| {
            let prefix: String = format!("t{:0w$}_", i + 1, w = digits(block_sizes.len()));
            (1..=size).map(|j| padded(&prefix, j, size)).collect()
        })
        .collect();
    let mut labels = Vec::new();
    for block in &blocks {
        labels.extend(odd_chain(block, &mut rng));
    }
    for i in 0..blocks.len() {
        for j in i + 1..blocks.len() {
            let label = cross.unwrap_or_else(|| {
                if rng.gen_bool(0.25) {
                    Label::INFINITY
                } else {
                    let m = *EVEN_CROSS.choose(&mut rng).expect("nonempty");
                    Label::finite(u64::from(m)).expect("even cross labels are >= 2")
                }
            });
            for a in &blocks[i] {
                for b in &blocks[j] {
                    labels.push((a.clone(), b.clone(), label));
                }
            }
        }
    }
    let names = blocks.into_iter().flatten().collect();
    Ok(CoxeterMatrix::new(names, labels).expect("generated matrix is well formed"))
}
