//! Dense algebra-valued covariant tensors on ℝⁿ.
//!
//! A `GValuedTensor` of order `j` stores one `N×N` matrix per multi-index
//! `(μ₁, …, μⱼ) ∈ {0, …, n−1}ʲ`, laid out row-major with `μ₁` slowest.
//! Order 0 is a single matrix. Entries are required to lie in the tagged
//! subalgebra within tolerance.
//!
//! `block_component` implements the index-selection notation used by the
//! partition sums: a block `κ = {κ₁ < … < κᵣ}` of positions picks the
//! sub-multi-index `(μ_{κ₁}, …, μ_{κᵣ})` out of a longer index tuple.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::lie::{algebra_residual, GroupTag};
use crate::partitions::Block;
use crate::tol;

/// Order-`j` covariant tensor with Lie-algebra values.
#[derive(Debug, Clone, PartialEq)]
pub struct GValuedTensor {
    order: usize,
    base_dim: usize,
    tag: GroupTag,
    entries: Vec<DMatrix<f64>>,
}

/// Iterates over all multi-indices of the given order in layout order.
pub fn multi_indices(base_dim: usize, order: usize) -> impl Iterator<Item = Vec<usize>> {
    let count = base_dim.pow(order as u32);
    (0..count).map(move |mut lin| {
        let mut idx = vec![0usize; order];
        for slot in (0..order).rev() {
            idx[slot] = lin % base_dim;
            lin /= base_dim;
        }
        idx
    })
}

fn linear_index(base_dim: usize, idx: &[usize]) -> usize {
    idx.iter().fold(0, |acc, &mu| acc * base_dim + mu)
}

impl GValuedTensor {
    /// Builds a tensor from entries in layout order, checking the count
    /// and the subalgebra residual of every entry.
    pub fn new(
        order: usize,
        base_dim: usize,
        tag: GroupTag,
        entries: Vec<DMatrix<f64>>,
    ) -> Result<Self> {
        Self::with_tolerance(order, base_dim, tag, entries, tol::MEMBERSHIP)
    }

    pub fn with_tolerance(
        order: usize,
        base_dim: usize,
        tag: GroupTag,
        entries: Vec<DMatrix<f64>>,
        tol: f64,
    ) -> Result<Self> {
        if base_dim == 0 {
            return Err(Error::ShapeMismatch("base dimension must be ≥ 1".into()));
        }
        let expected = base_dim.pow(order as u32);
        if entries.len() != expected {
            return Err(Error::ShapeMismatch(format!(
                "order-{order} tensor over ℝ^{base_dim} needs {expected} entries, got {}",
                entries.len()
            )));
        }
        let nsize = tag.matrix_size();
        for (i, m) in entries.iter().enumerate() {
            if m.nrows() != nsize || m.ncols() != nsize {
                return Err(Error::DimensionMismatch(format!(
                    "entry {i} is {}×{}, expected {nsize}×{nsize}",
                    m.nrows(),
                    m.ncols()
                )));
            }
            let r = algebra_residual(m, tag);
            if r > tol {
                return Err(Error::Membership(format!(
                    "tensor entry {i} has algebra residual {r:e} > {tol:e} for {tag}"
                )));
            }
        }
        Ok(Self {
            order,
            base_dim,
            tag,
            entries,
        })
    }

    /// All-zero tensor of the given shape.
    pub fn zeros(order: usize, base_dim: usize, tag: GroupTag) -> Self {
        let nsize = tag.matrix_size();
        let entries = vec![DMatrix::zeros(nsize, nsize); base_dim.pow(order as u32)];
        Self {
            order,
            base_dim,
            tag,
            entries,
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn base_dim(&self) -> usize {
        self.base_dim
    }

    pub fn tag(&self) -> GroupTag {
        self.tag
    }

    pub fn entries(&self) -> &[DMatrix<f64>] {
        &self.entries
    }

    /// Entry at a full multi-index (0-based components, length = order).
    pub fn entry(&self, idx: &[usize]) -> Result<&DMatrix<f64>> {
        self.check_index(idx, self.order)?;
        Ok(&self.entries[linear_index(self.base_dim, idx)])
    }

    pub fn entry_mut(&mut self, idx: &[usize]) -> Result<&mut DMatrix<f64>> {
        self.check_index(idx, self.order)?;
        let lin = linear_index(self.base_dim, idx);
        Ok(&mut self.entries[lin])
    }

    fn check_index(&self, idx: &[usize], want_len: usize) -> Result<()> {
        if idx.len() != want_len {
            return Err(Error::ShapeMismatch(format!(
                "multi-index length {} does not match order {want_len}",
                idx.len()
            )));
        }
        if let Some(&mu) = idx.iter().find(|&&mu| mu >= self.base_dim) {
            return Err(Error::ShapeMismatch(format!(
                "index component {mu} out of range for base dimension {}",
                self.base_dim
            )));
        }
        Ok(())
    }

    /// Entry selected by a partition block: for a block `κ` of positions
    /// (1-based, used in ascending order) inside a multi-index of length
    /// `j ≥ order`, returns `self[(μ_{κ₁}, …, μ_{κᵣ})]`.
    pub fn block_component(&self, block: &Block, multi_index: &[usize]) -> Result<&DMatrix<f64>> {
        if block.len() != self.order {
            return Err(Error::ShapeMismatch(format!(
                "block of size {} selects from an order-{} tensor",
                block.len(),
                self.order
            )));
        }
        let sorted = block.sorted();
        let mut sub = Vec::with_capacity(self.order);
        for &pos in sorted.elements() {
            if pos == 0 || pos > multi_index.len() {
                return Err(Error::ShapeMismatch(format!(
                    "block position {pos} outside multi-index of length {}",
                    multi_index.len()
                )));
            }
            sub.push(multi_index[pos - 1]);
        }
        self.entry(&sub)
    }

    /// Componentwise sum.
    pub fn add(&self, other: &GValuedTensor) -> Result<GValuedTensor> {
        self.check_same_shape(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a + b)
            .collect();
        Ok(GValuedTensor {
            order: self.order,
            base_dim: self.base_dim,
            tag: self.tag,
            entries,
        })
    }

    /// Componentwise scalar multiple.
    pub fn scale(&self, factor: f64) -> GValuedTensor {
        GValuedTensor {
            order: self.order,
            base_dim: self.base_dim,
            tag: self.tag,
            entries: self.entries.iter().map(|m| m * factor).collect(),
        }
    }

    /// Zero tensor of the same shape.
    pub fn zero_like(&self) -> GValuedTensor {
        GValuedTensor::zeros(self.order, self.base_dim, self.tag)
    }

    fn check_same_shape(&self, other: &GValuedTensor) -> Result<()> {
        if self.order != other.order
            || self.base_dim != other.base_dim
            || self.tag != other.tag
        {
            return Err(Error::ShapeMismatch(format!(
                "tensor shapes differ: order {} vs {}, base {} vs {}, tag {} vs {}",
                self.order, other.order, self.base_dim, other.base_dim, self.tag, other.tag
            )));
        }
        Ok(())
    }

    /// Symmetric part of an order-2 tensor: `½(t_{μν} + t_{νμ})`.
    pub fn sym2(&self) -> Result<GValuedTensor> {
        self.symmetrize2(1.0)
    }

    /// Skew part of an order-2 tensor: `½(t_{μν} − t_{νμ})`.
    pub fn skew2(&self) -> Result<GValuedTensor> {
        self.symmetrize2(-1.0)
    }

    fn symmetrize2(&self, sign: f64) -> Result<GValuedTensor> {
        if self.order != 2 {
            return Err(Error::ShapeMismatch(format!(
                "sym2/skew2 need an order-2 tensor, got order {}",
                self.order
            )));
        }
        let mut out = self.zero_like();
        for mu in 0..self.base_dim {
            for nu in 0..self.base_dim {
                let a = self.entry(&[mu, nu])?;
                let b = self.entry(&[nu, mu])?;
                *out.entry_mut(&[mu, nu])? = (a + b * sign) * 0.5;
            }
        }
        Ok(out)
    }

    /// Largest entrywise absolute difference between two tensors.
    pub fn max_abs_diff(&self, other: &GValuedTensor) -> Result<f64> {
        self.check_same_shape(other)?;
        let mut worst: f64 = 0.0;
        for (a, b) in self.entries.iter().zip(&other.entries) {
            worst = (a - b).iter().fold(worst, |w, x| w.max(x.abs()));
        }
        Ok(worst)
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> f64 {
        self.entries
            .iter()
            .flat_map(|m| m.iter())
            .fold(0.0, |w, x| w.max(x.abs()))
    }

    /// Worst subalgebra residual over all entries.
    pub fn algebra_residual(&self) -> f64 {
        self.entries
            .iter()
            .map(|m| algebra_residual(m, self.tag))
            .fold(0.0, f64::max)
    }
}
