//! Parabolic retractions of Artin groups.
//!
//! Coxeter matrices and their odd-component partitions, free-group words,
//! a solution to the word problem in dihedral Artin groups, free products of
//! cyclic groups acting on their Bass–Serre trees, a decision procedure for
//! retraction compatibility, synthesis of explicit retractions, and the
//! classification of homomorphisms between dihedral Artin groups.

#![no_std]

extern crate alloc;

pub mod bass_serre;
pub mod classifier;
pub mod coxeter;
pub mod dihedral;
pub mod free_product;
pub mod generators;
pub mod hom;
pub mod retraction;
pub mod word;

pub use coxeter::{CoxeterError, CoxeterMatrix, GeneratorId, Label, OddComponentPartition, Pair};
pub use word::{Word, WordParseError};
