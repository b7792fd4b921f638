//! Shared brute-force oracles and random-data helpers for the
//! integration suites. Everything here is deliberately independent of
//! the recurrence-based enumerators in the library: ordered set
//! partitions are grown by raw element insertion, and Bell numbers come
//! from the triangle recurrence.
//!
//! Each integration target compiles this module separately, so not every
//! helper is used by every target.
#![allow(dead_code)]

use jet_groupoid::lie::{random_algebra, GroupTag};
use jet_groupoid::partitions::Partition;
use jet_groupoid::tensor::{multi_indices, GValuedTensor};
use jet_groupoid::jets::TrivializedJet;
use rand_chacha::ChaCha8Rng;

/// All ordered set partitions of `{1, …, j}` as block-assignment vectors:
/// entry `i` is the 0-based block of element `i+1`. Blocks are sets, so a
/// vector determines the partition with every block presented ascending.
///
/// Built by inserting elements one at a time: each element either joins
/// an existing block or opens a new singleton block at any position.
pub fn brute_force_ordered_partitions(j: usize) -> Vec<Vec<u8>> {
    assert!(j >= 1);
    let mut family: Vec<Vec<u8>> = vec![vec![0]];
    for _ in 1..j {
        let mut next = Vec::with_capacity(family.len() * 4);
        for v in &family {
            let blocks = (*v.iter().max().unwrap() + 1) as usize;
            for b in 0..blocks {
                let mut child = v.clone();
                child.push(b as u8);
                next.push(child);
            }
            for pos in 0..=blocks {
                let mut child: Vec<u8> = v
                    .iter()
                    .map(|&x| if x as usize >= pos { x + 1 } else { x })
                    .collect();
                child.push(pos as u8);
                next.push(child);
            }
        }
        family = next;
    }
    family
}

/// True iff element 1 lies in the first block.
pub fn assignment_has_one_first(v: &[u8]) -> bool {
    v[0] == 0
}

/// True iff block maxima strictly increase: the largest element of block
/// `b` is the last index assigned to `b`, so compare last occurrences.
pub fn assignment_is_antilex(v: &[u8]) -> bool {
    let blocks = (*v.iter().max().unwrap() + 1) as usize;
    let mut last = vec![0usize; blocks];
    for (i, &b) in v.iter().enumerate() {
        last[b as usize] = i;
    }
    last.windows(2).all(|w| w[0] < w[1])
}

/// Encodes a library partition (ascending blocks) as an assignment vector.
pub fn assignment_of(p: &Partition) -> Vec<u8> {
    let mut v = vec![0u8; p.ground_size()];
    for (bi, block) in p.blocks().iter().enumerate() {
        for &e in block.elements() {
            v[e - 1] = bi as u8;
        }
    }
    v
}

/// Bell numbers `B(1), …, B(jmax)` from the Bell triangle: each row
/// starts with the previous row's last entry and accumulates pairwise
/// sums; `B(j)` is the last entry of row `j − 1`.
pub fn bell_numbers(jmax: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(jmax);
    let mut row = vec![1u64];
    out.push(1);
    for _ in 1..jmax {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(*row.last().unwrap());
        for &x in &row {
            let prev = *next.last().unwrap();
            next.push(prev + x);
        }
        out.push(*next.last().unwrap());
        row = next;
    }
    out
}

/// An arbitrary jet with random algebra entries — generally *not* in the
/// image of any trivialization for k ≥ 2, n ≥ 2.
pub fn random_free_jet(
    base_dim: usize,
    order: usize,
    tag: GroupTag,
    rng: &mut ChaCha8Rng,
) -> TrivializedJet {
    let g = random_algebra(tag, rng).exp();
    let xi = (1..=order)
        .map(|j| {
            let entries = multi_indices(base_dim, j)
                .map(|_| random_algebra(tag, rng).matrix().clone())
                .collect();
            GValuedTensor::new(j, base_dim, tag, entries).expect("entries lie in the algebra")
        })
        .collect();
    TrivializedJet::from_parts(g, xi).expect("shapes are consistent")
}

pub const GROUPS: [GroupTag; 3] = [
    GroupTag::GeneralLinear(3),
    GroupTag::SpecialLinear2,
    GroupTag::SpecialOrthogonal3,
];
