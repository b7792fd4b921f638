//! Ordered set partitions of `{1, …, j}` and the families indexing the
//! jet formulas.
//!
//! A partition here is an *ordered* tuple of disjoint blocks covering
//! `{1, …, j}`. Three families matter:
//!
//! * partly ordered partitions (each block presented ascending), written
//!   `P⁺(j)`;
//! * `P₁⁺(j)`, the partly ordered partitions whose first block contains 1 —
//!   these index the signed local trivialization sum;
//! * anti-lexicographically ordered partitions `Pᵃ(j)` (block maxima
//!   strictly increasing) — these index the groupoid product and inverse.
//!
//! Both `P₁⁺` and `Pᵃ` are enumerated by one-element extension recurrences
//! rather than by filtering, so the output order is deterministic and the
//! disjoint-union structure is available to callers (`parent`, `sign`).
//!
//! Blocks keep the element order they were constructed with: the
//! partly-ordered predicate is a statement about presentation, and the
//! paper-level examples distinguish `({1,2},{3})` from `({2,1},{3})`.
//! Every enumerator in this module emits ascending blocks.

use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// One block of a partition: a nonempty set of distinct 1-based positions,
/// stored in presentation order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Block {
    elems: Vec<usize>,
}

impl Block {
    /// Builds a block from 1-based positions. Fails on empty input,
    /// duplicates, or a zero element.
    pub fn new(elems: Vec<usize>) -> Result<Self> {
        if elems.is_empty() {
            return Err(Error::InvalidPartition("empty block".into()));
        }
        if elems.contains(&0) {
            return Err(Error::InvalidPartition(
                "block elements are 1-based positive integers".into(),
            ));
        }
        let mut seen = elems.clone();
        seen.sort_unstable();
        if seen.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidPartition(format!(
                "repeated element in block {elems:?}"
            )));
        }
        Ok(Self { elems })
    }

    pub fn elements(&self) -> &[usize] {
        &self.elems
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty() // never true for a constructed block
    }

    /// Largest element of the block.
    pub fn max_element(&self) -> usize {
        *self.elems.iter().max().expect("block is nonempty")
    }

    /// True iff the presentation order is strictly ascending.
    pub fn is_ascending(&self) -> bool {
        self.elems.windows(2).all(|w| w[0] < w[1])
    }

    /// The same block with elements sorted ascending.
    pub fn sorted(&self) -> Block {
        let mut elems = self.elems.clone();
        elems.sort_unstable();
        Block { elems }
    }

    fn contains(&self, x: usize) -> bool {
        self.elems.contains(&x)
    }
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.elems.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

/// Which extension produced a child partition from its parent.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtendKind {
    /// `j+1` was appended to an existing block.
    Plus,
    /// `{j+1}` was inserted as a new singleton block.
    Minus,
}

/// An ordered partition of `{1, …, j}` into disjoint nonempty blocks.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    blocks: Vec<Block>,
    ground: usize,
}

impl Partition {
    /// Builds a partition, checking that the blocks are pairwise disjoint
    /// and cover `{1, …, j}` where `j` is the total element count.
    pub fn new(blocks: Vec<Block>) -> Result<Self> {
        if blocks.is_empty() {
            return Err(Error::InvalidPartition("no blocks".into()));
        }
        let ground: usize = blocks.iter().map(Block::len).sum();
        let mut seen = vec![false; ground + 1];
        for b in &blocks {
            for &e in b.elements() {
                if e > ground {
                    return Err(Error::InvalidPartition(format!(
                        "element {e} exceeds ground-set size {ground}"
                    )));
                }
                if seen[e] {
                    return Err(Error::InvalidPartition(format!(
                        "element {e} appears in two blocks"
                    )));
                }
                seen[e] = true;
            }
        }
        // disjoint + count = ground forces the union to be {1..=ground}
        Ok(Self { blocks, ground })
    }

    /// Convenience constructor from plain vectors of 1-based elements.
    pub fn from_vecs(blocks: Vec<Vec<usize>>) -> Result<Self> {
        Self::new(blocks.into_iter().map(Block::new).collect::<Result<_>>()?)
    }

    /// The unique partition of `{1}`.
    pub fn singleton() -> Self {
        Self {
            blocks: vec![Block { elems: vec![1] }],
            ground: 1,
        }
    }

    /// Ground-set size `j`.
    pub fn ground_size(&self) -> usize {
        self.ground
    }

    /// Number of blocks `l`.
    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    /// Block sizes `(j₁, …, j_l)` in presentation order.
    pub fn block_sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(Block::len).collect()
    }

    /// True iff every block is presented in strictly ascending order.
    pub fn is_partly_ordered(&self) -> bool {
        self.blocks.iter().all(Block::is_ascending)
    }

    /// True iff block maxima strictly increase left to right.
    pub fn is_antilex(&self) -> bool {
        self.blocks.windows(2).all(|w| w[0].max_element() < w[1].max_element())
    }

    /// True iff the partition is partly ordered and 1 lies in the first block.
    pub fn is_p1plus(&self) -> bool {
        self.is_partly_ordered() && self.blocks[0].contains(1)
    }

    /// Appends `j+1` to block `s` (1-based). The child of a `P₁⁺(j)`
    /// partition stays in `P₁⁺(j+1)`.
    pub fn extend_plus(&self, s: usize) -> Result<Partition> {
        self.check_extend_index(s, 1)?;
        let mut blocks = self.blocks.clone();
        blocks[s - 1].elems.push(self.ground + 1);
        Ok(Partition {
            blocks,
            ground: self.ground + 1,
        })
    }

    /// Inserts the singleton `{j+1}` immediately after block `s` (1-based).
    pub fn extend_minus(&self, s: usize) -> Result<Partition> {
        self.check_extend_index(s, 1)?;
        let mut blocks = self.blocks.clone();
        blocks.insert(
            s,
            Block {
                elems: vec![self.ground + 1],
            },
        );
        Ok(Partition {
            blocks,
            ground: self.ground + 1,
        })
    }

    /// Shifts every element up by one and inserts 1 into block `s`;
    /// `s = 0` prepends the singleton `{1}` instead. This is the extension
    /// step that generates `Pᵃ(j+1)` from `Pᵃ(j)`.
    pub fn insert_shift(&self, s: usize) -> Result<Partition> {
        self.check_extend_index(s, 0)?;
        let mut blocks: Vec<Block> = self
            .blocks
            .iter()
            .map(|b| Block {
                elems: b.elems.iter().map(|e| e + 1).collect(),
            })
            .collect();
        if s == 0 {
            blocks.insert(0, Block { elems: vec![1] });
        } else {
            blocks[s - 1].elems.insert(0, 1);
        }
        Ok(Partition {
            blocks,
            ground: self.ground + 1,
        })
    }

    fn check_extend_index(&self, s: usize, min: usize) -> Result<()> {
        if s < min || s > self.blocks.len() {
            return Err(Error::BlockIndexOutOfRange {
                index: s,
                min,
                max: self.blocks.len(),
            });
        }
        Ok(())
    }

    /// Recovers the unique `(parent, s, kind)` with
    /// `parent.extend_{kind}(s) == self`, for a partition in `P₁⁺(j+1)`.
    pub fn parent(&self) -> Result<(Partition, usize, ExtendKind)> {
        if !self.is_p1plus() {
            return Err(Error::Domain(format!(
                "{self} is not partly ordered with 1 in the first block"
            )));
        }
        if self.ground <= 1 {
            return Err(Error::Domain("the partition of {1} has no parent".into()));
        }
        let top = self.ground;
        let bi = self
            .blocks
            .iter()
            .position(|b| b.contains(top))
            .expect("ground element is present");
        let mut blocks = self.blocks.clone();
        if blocks[bi].len() > 1 {
            // top is the last element of an ascending block
            blocks[bi].elems.pop();
            let parent = Partition {
                blocks,
                ground: top - 1,
            };
            Ok((parent, bi + 1, ExtendKind::Plus))
        } else {
            // a singleton {j+1}; it cannot be the first block since 1 is there
            blocks.remove(bi);
            let parent = Partition {
                blocks,
                ground: top - 1,
            };
            Ok((parent, bi, ExtendKind::Minus))
        }
    }

    /// Sign ε(λ) of a `P₁⁺` partition, computed through the extension
    /// recurrence: ε({1}) = 1, a plus step keeps the sign, a minus step
    /// flips it.
    pub fn sign(&self) -> Result<i32> {
        if !self.is_p1plus() {
            return Err(Error::Domain(format!(
                "sign is defined on P₁⁺ partitions only, got {self}"
            )));
        }
        if self.ground == 1 {
            return Ok(1);
        }
        let (parent, _, kind) = self.parent()?;
        let ps = parent.sign()?;
        Ok(match kind {
            ExtendKind::Plus => ps,
            ExtendKind::Minus => -ps,
        })
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{b}")?;
        }
        write!(f, ")")
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let raw: Vec<&[usize]> = self.blocks.iter().map(|b| b.elements()).collect();
        raw.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<Vec<usize>>::deserialize(deserializer)?;
        Partition::from_vecs(raw).map_err(D::Error::custom)
    }
}

/// All of `P₁⁺(j)`, built by the extension recurrence starting from
/// `{({1})}`: parents in order, then `s` ascending with the plus child
/// before the minus child.
pub fn enumerate_p1plus(j: usize) -> Result<Vec<Partition>> {
    if j == 0 {
        return Err(Error::Domain("partitions need a ground set size j ≥ 1".into()));
    }
    let mut family = vec![Partition::singleton()];
    for _ in 1..j {
        let mut next = Vec::with_capacity(family.len() * 3);
        for p in &family {
            for s in 1..=p.block_count() {
                next.push(p.extend_plus(s).expect("s in range"));
                next.push(p.extend_minus(s).expect("s in range"));
            }
        }
        family = next;
    }
    Ok(family)
}

/// All of `Pᵃ(j)`, built by the shift-insert recurrence: parents in
/// order, then `s = 0, …, l`.
pub fn enumerate_antilex(j: usize) -> Result<Vec<Partition>> {
    if j == 0 {
        return Err(Error::Domain("partitions need a ground set size j ≥ 1".into()));
    }
    let mut family = vec![Partition::singleton()];
    for _ in 1..j {
        let mut next = Vec::with_capacity(family.len() * 3);
        for p in &family {
            for s in 0..=p.block_count() {
                next.push(p.insert_shift(s).expect("s in range"));
            }
        }
        family = next;
    }
    Ok(family)
}

/// Exact binomial coefficient.
fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::ZERO;
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// Number of `P₁⁺(j)` partitions with the given block sizes:
/// `c(j₁,…,j_l) = C(j−1, j₁−1) · Π_{i≥2} C(jᵢ+…+j_l, jᵢ)`.
pub fn count_c(sizes: &[usize]) -> Result<BigUint> {
    check_sizes(sizes)?;
    let j: usize = sizes.iter().sum();
    let mut acc = binomial(j - 1, sizes[0] - 1);
    let mut remaining = j - sizes[0];
    for &ji in &sizes[1..] {
        acc *= binomial(remaining, ji);
        remaining -= ji;
    }
    Ok(acc)
}

/// Number of `Pᵃ(j)` partitions with the given block sizes:
/// `N(j₁,…,j_l) = Π_{i≥2} C(j₁+…+jᵢ−1, jᵢ−1)`.
pub fn count_n(sizes: &[usize]) -> Result<BigUint> {
    check_sizes(sizes)?;
    let mut acc = BigUint::one();
    let mut prefix = sizes[0];
    for &ji in &sizes[1..] {
        prefix += ji;
        acc *= binomial(prefix - 1, ji - 1);
    }
    Ok(acc)
}

fn check_sizes(sizes: &[usize]) -> Result<()> {
    if sizes.is_empty() {
        return Err(Error::Domain("empty size sequence".into()));
    }
    if sizes.contains(&0) {
        return Err(Error::Domain("block sizes must be ≥ 1".into()));
    }
    Ok(())
}

/// All ordered sequences of positive integers summing to `j`, in
/// lexicographic order of the leading parts.
pub fn compositions(j: usize) -> Vec<Vec<usize>> {
    fn rec(remaining: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if remaining == 0 {
            out.push(prefix.clone());
            return;
        }
        for first in 1..=remaining {
            prefix.push(first);
            rec(remaining - first, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(j, &mut Vec::new(), &mut out);
    out
}
