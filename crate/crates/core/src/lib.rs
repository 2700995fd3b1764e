//! Exact computations with finitely generated abelian groups and their
//! Z/2-graded versions: Smith normal form, Hom/Ext/Tor/tensor with induced
//! maps, torsion and primary decompositions, exact sequences and the snake
//! lemma, and Kasparov groups through the universal coefficient theorem.

pub mod arith;
pub mod cli;
pub mod decomp;
pub mod error;
pub mod functors;
pub mod graded;
pub mod group;
pub mod kk;
pub mod map;
pub mod matrix;
pub mod parse;
pub mod sequences;
pub mod snf;

pub use error::{Error, Result};
pub use graded::{GradedGroup, GradedMap, GradedSubgroup, Parity};
pub use group::{Element, FgaGroup};
pub use map::GroupMap;
pub use matrix::IntMatrix;
