//! Right-trivialized jets of Lie-group-valued maps.
//!
//! A k-jet of a smooth map `g : ℝⁿ → G` into a matrix Lie group can be
//! trivialized by right translation into a tuple
//! `(g(0), ξ⁽¹⁾, …, ξ⁽ᵏ⁾)`, where each `ξ⁽ʲ⁾` is an order-`j` covariant
//! tensor with values in the Lie algebra. This crate implements
//!
//! * the ordered-set-partition combinatorics indexing the formulas
//!   ([`partitions`]): partly ordered partitions with 1 first, the
//!   anti-lexicographic family counted by Bell numbers, their extension
//!   recurrences, closed-form counts and signs;
//! * the trivialization itself, both as an explicit signed partition sum
//!   for the flat connection and as an iterated covariant derivative for
//!   an arbitrary linear connection ([`germ`], [`connection`]);
//! * the induced groupoid structure on trivialized jets — fibered
//!   product, inverse, identity, the second-order image test and the
//!   one-dimensional `G × k𝔤` reduction ([`jets`]);
//! * an independent oracle: truncated noncommutative Taylor germs whose
//!   arithmetic is exact through the truncation order, so every jet
//!   formula is checked against plain products and inverses of germs
//!   ([`germ`], [`verify`]).
//!
//! The `examples/` directory walks through each capability; the
//! `jetgroupoid` binary exposes enumeration, verification runs and jet
//! arithmetic on JSON files.
//!
//! ```
//! use jet_groupoid::lie::GroupTag;
//! use jet_groupoid::verify::random_group_germ;
//! use rand::SeedableRng;
//!
//! let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
//! let p = random_group_germ(2, 3, GroupTag::SpecialOrthogonal3, &mut rng);
//! let q = random_group_germ(2, 3, GroupTag::SpecialOrthogonal3, &mut rng);
//!
//! // trivializing the product equals the product of the trivializations
//! let lhs = p.multiply(&q)?.trivialize_flat(3)?;
//! let rhs = p.trivialize_flat(3)?.multiply(&q.trivialize_flat(3)?)?;
//! assert!(lhs.max_abs_diff(&rhs)? < 1e-10);
//! # Ok::<(), jet_groupoid::error::Error>(())
//! ```

pub mod connection;
pub mod error;
pub mod germ;
pub mod jets;
pub mod json;
pub mod lie;
pub mod partitions;
pub mod tensor;
pub mod tol;
pub mod verify;

pub use connection::{covariant_derivative, ChristoffelGerm, TensorFieldGerm};
pub use error::{Error, Result};
pub use germ::{sample_exp_germ, MatrixGerm, ScalarGerm};
pub use jets::TrivializedJet;
pub use lie::{AlgebraElement, GroupElement, GroupTag};
pub use partitions::{Block, Partition};
pub use tensor::GValuedTensor;
pub use verify::{run_verify, VerifyConfig, VerifyReport};
