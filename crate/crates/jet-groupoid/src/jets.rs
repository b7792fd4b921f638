//! Right-trivialized jets and their groupoid structure.
//!
//! A `TrivializedJet` is a tuple `(g, ξ⁽¹⁾, …, ξ⁽ᵏ⁾)` of a group element
//! and algebra-valued covariant tensors of orders 1 through `k`, all over
//! the same base point. The fibered product and the inverse are sums over
//! anti-lexicographically ordered partitions: for a partition
//! `λ = (λ₁, …, λ_l)` of the index positions,
//!
//! ```text
//! ζ⁽ʲ⁾ = ξ⁽ʲ⁾ + Σ_λ ad(ξ_{λ_{l−1}}) ⋯ ad(ξ_{λ₁}) (Ad_g η_{λ_l})
//! ω⁽ʲ⁾ = Σ_λ (−1)^l Ad_{g⁻¹} ( ad(ξ_{λ₁}) ⋯ ad(ξ_{λ_{l−1}}) (ξ_{λ_l}) )
//! ```
//!
//! where each block selects tensor components through
//! [`GValuedTensor::block_component`]: blocks `λ₁, …, λ_{l−1}` feed the
//! ad-chain in that order and the last block feeds the innermost
//! argument. Ground-set positions enter *reflected*: position `a` of a
//! partition of `{1, …, j}` selects tensor slot `j+1−a`. The reflection
//! comes from the recursions running in opposite directions — the
//! anti-lexicographic extension inserts the new element at the bottom as
//! 1, while each covariant derivative appends its index in the last
//! tensor slot — and is certified against plain germ arithmetic in the
//! test suites. Terms are summed in enumeration order, so results are
//! deterministic.

use nalgebra::DMatrix;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::lie::{AlgebraElement, GroupElement, GroupTag};
use crate::partitions::{compositions, count_n, enumerate_antilex, Block, Partition};
use crate::tensor::{multi_indices, GValuedTensor};

/// Maps a block of `{1, …, j}` to the tensor slots it selects:
/// position `a` becomes `j+1−a`, keeping ascending presentation.
fn reflect_block(block: &Block, ground: usize) -> Block {
    let elems = block
        .elements()
        .iter()
        .rev()
        .map(|&a| ground + 1 - a)
        .collect();
    Block::new(elems).expect("reflection preserves block validity")
}

/// Block-selected tensor component with reflected positions.
fn reflected_component<'a>(
    tensor: &'a GValuedTensor,
    block: &Block,
    ground: usize,
    idx: &[usize],
) -> Result<&'a DMatrix<f64>> {
    tensor.block_component(&reflect_block(block, ground), idx)
}

/// A right-trivialized k-jet `(g, ξ⁽¹⁾, …, ξ⁽ᵏ⁾)`.
#[derive(Debug, Clone)]
pub struct TrivializedJet {
    base_dim: usize,
    order: usize,
    g: GroupElement,
    xi: Vec<GValuedTensor>,
}

impl TrivializedJet {
    /// Assembles a jet, checking that the tensors have orders `1..=k`,
    /// a common base dimension and the group element's tag.
    pub fn from_parts(g: GroupElement, xi: Vec<GValuedTensor>) -> Result<Self> {
        if xi.is_empty() {
            return Err(Error::Domain("jet order k must be ≥ 1".into()));
        }
        let base_dim = xi[0].base_dim();
        for (j, t) in xi.iter().enumerate() {
            if t.order() != j + 1 {
                return Err(Error::ShapeMismatch(format!(
                    "tensor in slot {} has order {}, expected {}",
                    j,
                    t.order(),
                    j + 1
                )));
            }
            if t.base_dim() != base_dim {
                return Err(Error::ShapeMismatch(
                    "jet tensors must share one base dimension".into(),
                ));
            }
            if t.tag() != g.tag() {
                return Err(Error::ShapeMismatch(format!(
                    "tensor tagged {} in a jet over {}",
                    t.tag(),
                    g.tag()
                )));
            }
        }
        Ok(Self {
            base_dim,
            order: xi.len(),
            g,
            xi,
        })
    }

    /// The identity jet `(e, 0, …, 0)`.
    pub fn identity(base_dim: usize, order: usize, tag: GroupTag) -> Result<Self> {
        if order == 0 {
            return Err(Error::Domain("jet order k must be ≥ 1".into()));
        }
        if base_dim == 0 {
            return Err(Error::Domain("base dimension must be ≥ 1".into()));
        }
        let xi = (1..=order)
            .map(|j| GValuedTensor::zeros(j, base_dim, tag))
            .collect();
        Ok(Self {
            base_dim,
            order,
            g: GroupElement::identity(tag),
            xi,
        })
    }

    pub fn base_dim(&self) -> usize {
        self.base_dim
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn tag(&self) -> GroupTag {
        self.g.tag()
    }

    pub fn group(&self) -> &GroupElement {
        &self.g
    }

    pub fn tensors(&self) -> &[GValuedTensor] {
        &self.xi
    }

    /// The order-`j` component `ξ⁽ʲ⁾` (1-based `j`).
    pub fn tensor(&self, j: usize) -> Result<&GValuedTensor> {
        if j == 0 || j > self.order {
            return Err(Error::Domain(format!(
                "tensor order {j} outside 1..={}",
                self.order
            )));
        }
        Ok(&self.xi[j - 1])
    }

    /// The same jet truncated to a smaller order.
    pub fn truncate_order(&self, order: usize) -> Result<TrivializedJet> {
        if order == 0 || order > self.order {
            return Err(Error::Domain(format!(
                "cannot truncate an order-{} jet to order {order}",
                self.order
            )));
        }
        Ok(TrivializedJet {
            base_dim: self.base_dim,
            order,
            g: self.g.clone(),
            xi: self.xi[..order].to_vec(),
        })
    }

    fn check_same_kind(&self, other: &TrivializedJet) -> Result<()> {
        if self.base_dim != other.base_dim
            || self.order != other.order
            || self.tag() != other.tag()
        {
            return Err(Error::ShapeMismatch(format!(
                "jets do not match: n {} vs {}, k {} vs {}, group {} vs {}",
                self.base_dim,
                other.base_dim,
                self.order,
                other.order,
                self.tag(),
                other.tag()
            )));
        }
        Ok(())
    }

    /// Fibered product of two jets over the same base point.
    pub fn multiply(&self, other: &TrivializedJet) -> Result<TrivializedJet> {
        self.check_same_kind(other)?;
        let g = self.g.multiply(&other.g)?;
        let g_mat = self.g.matrix().clone();
        let g_inv = self
            .g
            .inverse()
            .map_err(|_| Error::Singular("left factor is not invertible".into()))?
            .matrix()
            .clone();

        let mut tensors = Vec::with_capacity(self.order);
        for j in 1..=self.order {
            let family = enumerate_antilex(j)?;
            let mut out = self.xi[j - 1].clone();
            for idx in multi_indices(self.base_dim, j) {
                let mut total = DMatrix::zeros(g_mat.nrows(), g_mat.ncols());
                for p in &family {
                    total += self.product_term(other, p, &idx, &g_mat, &g_inv)?;
                }
                *out.entry_mut(&idx)? += total;
            }
            tensors.push(out);
        }
        TrivializedJet::from_parts(g, tensors)
    }

    /// One partition's contribution to `ζ⁽ʲ⁾` at a fixed multi-index:
    /// `ad(ξ_{λ_{l−1}}) ⋯ ad(ξ_{λ₁}) (Ad_g η_{λ_l})`.
    fn product_term(
        &self,
        other: &TrivializedJet,
        p: &Partition,
        idx: &[usize],
        g_mat: &DMatrix<f64>,
        g_inv: &DMatrix<f64>,
    ) -> Result<DMatrix<f64>> {
        let j = p.ground_size();
        let blocks = p.blocks();
        let last = blocks.last().expect("partitions are nonempty");
        let eta = reflected_component(&other.xi[last.len() - 1], last, j, idx)?;
        let mut v = g_mat * eta * g_inv;
        for block in &blocks[..blocks.len() - 1] {
            let x = reflected_component(&self.xi[block.len() - 1], block, j, idx)?;
            v = x * &v - &v * x;
        }
        Ok(v)
    }

    /// Groupoid inverse `(g⁻¹, ω⁽¹⁾, …, ω⁽ᵏ⁾)`.
    pub fn inverse(&self) -> Result<TrivializedJet> {
        let g_new = self.g.inverse()?;
        let g_mat = self.g.matrix().clone();
        let g_inv = g_new.matrix().clone();

        let mut tensors = Vec::with_capacity(self.order);
        for j in 1..=self.order {
            let family = enumerate_antilex(j)?;
            let mut out = self.xi[j - 1].zero_like();
            for idx in multi_indices(self.base_dim, j) {
                let mut total = DMatrix::zeros(g_mat.nrows(), g_mat.ncols());
                for p in &family {
                    let blocks = p.blocks();
                    let last = blocks.last().expect("partitions are nonempty");
                    let mut v =
                        reflected_component(&self.xi[last.len() - 1], last, j, &idx)?.clone();
                    for block in blocks[..blocks.len() - 1].iter().rev() {
                        let x = reflected_component(&self.xi[block.len() - 1], block, j, &idx)?;
                        v = x * &v - &v * x;
                    }
                    let sign = if p.block_count() % 2 == 0 { 1.0 } else { -1.0 };
                    total += &g_inv * v * &g_mat * sign;
                }
                *out.entry_mut(&idx)? = total;
            }
            tensors.push(out);
        }
        TrivializedJet::from_parts(g_new, tensors)
    }

    /// One-dimensional fast path: the partition sum collapses to a sum
    /// over compositions weighted by the anti-lexicographic counts
    /// `N(j₁, …, j_l)`. Only valid for `n = 1`, where all components of a
    /// fixed order coincide.
    pub fn multiply_via_counts(&self, other: &TrivializedJet) -> Result<TrivializedJet> {
        if self.base_dim != 1 {
            return Err(Error::Unsupported(
                "the count-weighted product applies to base dimension 1 only".into(),
            ));
        }
        self.check_same_kind(other)?;
        let g = self.g.multiply(&other.g)?;
        let g_mat = self.g.matrix().clone();
        let g_inv = self.g.inverse()?.matrix().clone();
        let xi = |j: usize| &self.xi[j - 1].entries()[0];
        let eta = |j: usize| &other.xi[j - 1].entries()[0];

        let mut tensors = Vec::with_capacity(self.order);
        for j in 1..=self.order {
            let mut total = xi(j).clone();
            for sizes in compositions(j) {
                let weight = count_n(&sizes)?
                    .to_f64()
                    .expect("counts at desk scale fit in f64");
                let l = sizes.len();
                let mut v = &g_mat * eta(sizes[l - 1]) * &g_inv;
                for &size in &sizes[..l - 1] {
                    let x = xi(size);
                    v = x * &v - &v * x;
                }
                total += v * weight;
            }
            let mut out = self.xi[j - 1].zero_like();
            *out.entry_mut(&vec![0; j])? = total;
            tensors.push(out);
        }
        TrivializedJet::from_parts(g, tensors)
    }

    /// Residual of the second-order image condition
    /// `skew(ξ⁽²⁾)_{μν} = −½ [ξ⁽¹⁾_μ, ξ⁽¹⁾_ν]` (largest absolute entry).
    pub fn image_residual_k2(&self) -> Result<f64> {
        if self.order != 2 {
            return Err(Error::Domain(format!(
                "image check is defined for k = 2, jet has order {}",
                self.order
            )));
        }
        let skew = self.xi[1].skew2()?;
        let xi1 = &self.xi[0];
        let mut worst: f64 = 0.0;
        for mu in 0..self.base_dim {
            for nu in 0..self.base_dim {
                let a = xi1.entry(&[mu])?;
                let b = xi1.entry(&[nu])?;
                let bracket = a * b - b * a;
                let resid = skew.entry(&[mu, nu])? + bracket * 0.5;
                worst = resid.iter().fold(worst, |w, x| w.max(x.abs()));
            }
        }
        Ok(worst)
    }

    /// True iff the second-order image condition holds within `tol`.
    /// Every jet trivialized from a germ passes; arbitrary tuples need not.
    pub fn check_image_k2(&self, tol: f64) -> Result<bool> {
        Ok(self.image_residual_k2()? <= tol)
    }

    /// Flattens a one-dimensional jet to `(g, ξ⁽¹⁾, …, ξ⁽ᵏ⁾)` with plain
    /// algebra elements, the `G × k𝔤` form of curve jets.
    pub fn to_curve_form(&self) -> Result<(GroupElement, Vec<AlgebraElement>)> {
        if self.base_dim != 1 {
            return Err(Error::Unsupported(format!(
                "curve form needs base dimension 1, jet has n = {}",
                self.base_dim
            )));
        }
        let xs = self
            .xi
            .iter()
            .map(|t| AlgebraElement::with_tolerance(t.entries()[0].clone(), self.tag(), f64::INFINITY))
            .collect::<Result<_>>()?;
        Ok((self.g.clone(), xs))
    }

    /// Rebuilds a one-dimensional jet from its `G × k𝔤` form.
    pub fn from_curve_form(g: GroupElement, xs: Vec<AlgebraElement>) -> Result<TrivializedJet> {
        if xs.is_empty() {
            return Err(Error::Domain("jet order k must be ≥ 1".into()));
        }
        let tensors = xs
            .iter()
            .enumerate()
            .map(|(i, x)| {
                if x.tag() != g.tag() {
                    return Err(Error::ShapeMismatch(format!(
                        "algebra element tagged {} in a jet over {}",
                        x.tag(),
                        g.tag()
                    )));
                }
                GValuedTensor::with_tolerance(i + 1, 1, g.tag(), vec![x.matrix().clone()], f64::INFINITY)
            })
            .collect::<Result<_>>()?;
        TrivializedJet::from_parts(g, tensors)
    }

    /// Largest entrywise deviation between two jets, over the group
    /// matrices and all tensor components.
    pub fn max_abs_diff(&self, other: &TrivializedJet) -> Result<f64> {
        self.check_same_kind(other)?;
        let mut worst = (self.g.matrix() - other.g.matrix())
            .iter()
            .fold(0.0f64, |w, x| w.max(x.abs()));
        for (a, b) in self.xi.iter().zip(&other.xi) {
            worst = worst.max(a.max_abs_diff(b)?);
        }
        Ok(worst)
    }

    /// Worst subalgebra residual over all tensor components.
    pub fn algebra_residual(&self) -> f64 {
        self.xi
            .iter()
            .map(GValuedTensor::algebra_residual)
            .fold(0.0, f64::max)
    }
}

/// Second-order product in closed form:
/// `(gh, ξ⁽¹⁾ + Ad_g η⁽¹⁾, ξ⁽²⁾ + Ad_g η⁽²⁾ + [ξ⁽¹⁾, Ad_g η⁽¹⁾])`,
/// where the bracket of the two one-forms lands in components as
/// `[ξ⁽¹⁾_ν, (Ad_g η⁽¹⁾)_μ]` — the first slot is the lower-order index
/// and the second the differentiation index. Kept alongside the
/// partition sum as an independently coded route.
pub fn multiply_k2_closed_form(
    a: &TrivializedJet,
    b: &TrivializedJet,
) -> Result<TrivializedJet> {
    check_k2(a)?;
    check_k2(b)?;
    let n = a.base_dim();
    let g_mat = a.group().matrix();
    let g_inv = a.group().inverse()?.matrix().clone();
    let conj = |m: &DMatrix<f64>| g_mat * m * &g_inv;

    let g = a.group().multiply(b.group())?;
    let mut xi1 = a.tensor(1)?.clone();
    for mu in 0..n {
        *xi1.entry_mut(&[mu])? += conj(b.tensor(1)?.entry(&[mu])?);
    }
    let mut xi2 = a.tensor(2)?.clone();
    for mu in 0..n {
        for nu in 0..n {
            let ad_eta1 = conj(b.tensor(1)?.entry(&[mu])?);
            let x = a.tensor(1)?.entry(&[nu])?;
            let entry = xi2.entry_mut(&[mu, nu])?;
            *entry += conj(b.tensor(2)?.entry(&[mu, nu])?);
            *entry += x * &ad_eta1 - &ad_eta1 * x;
        }
    }
    TrivializedJet::from_parts(g, vec![xi1, xi2])
}

/// Second-order inverse in closed form:
/// `(g⁻¹, −Ad_{g⁻¹} ξ⁽¹⁾, −Ad_{g⁻¹} ξ⁽²⁾ + Ad_{g⁻¹} [ξ⁽¹⁾, ξ⁽¹⁾])`,
/// with the squared one-form entering components as `[ξ⁽¹⁾_ν, ξ⁽¹⁾_μ]`.
pub fn inverse_k2_closed_form(a: &TrivializedJet) -> Result<TrivializedJet> {
    check_k2(a)?;
    let n = a.base_dim();
    let g_new = a.group().inverse()?;
    let g_mat = a.group().matrix();
    let g_inv = g_new.matrix().clone();
    let conj_inv = |m: &DMatrix<f64>| &g_inv * m * g_mat;

    let mut omega1 = a.tensor(1)?.zero_like();
    for mu in 0..n {
        *omega1.entry_mut(&[mu])? = -conj_inv(a.tensor(1)?.entry(&[mu])?);
    }
    let mut omega2 = a.tensor(2)?.zero_like();
    for mu in 0..n {
        for nu in 0..n {
            let x = a.tensor(1)?.entry(&[nu])?;
            let y = a.tensor(1)?.entry(&[mu])?;
            let bracket = x * y - y * x;
            *omega2.entry_mut(&[mu, nu])? =
                -conj_inv(a.tensor(2)?.entry(&[mu, nu])?) + conj_inv(&bracket);
        }
    }
    TrivializedJet::from_parts(g_new, vec![omega1, omega2])
}

fn check_k2(a: &TrivializedJet) -> Result<()> {
    if a.order() != 2 {
        return Err(Error::Domain(format!(
            "closed forms are for k = 2, jet has order {}",
            a.order()
        )));
    }
    Ok(())
}
