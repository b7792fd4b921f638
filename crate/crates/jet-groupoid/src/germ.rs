//! Truncated multivariate Taylor germs with matrix coefficients.
//!
//! A `MatrixGerm` holds the Taylor coefficients of a matrix-valued
//! function at the origin of ℝⁿ, exact through a truncation order `K`.
//! Products, inverses and partial derivatives are computed exactly on the
//! retained coefficients, so a germ is a faithful finite model of a k-jet
//! for every `k ≤ K`. This is the brute-force side of every identity in
//! the crate: the jet formulas are checked against plain germ arithmetic.
//!
//! `trivialize_flat` maps a group-valued germ to its right-trivialized
//! jet through the signed partition sum
//! `ξ⁽ʲ⁾ = Σ_{λ∈P₁⁺(j)} ε(λ) ξ_{λ₁} ⋯ ξ_{λ_l}` built from the raw
//! derivative products `ξ_{μ₁…μⱼ} = (∂_{μ₁}…∂_{μⱼ} g) g⁻¹`, while
//! `trivialize_covariant` iterates a covariant derivative instead. The
//! two agree for the flat connection and are kept as independent routes.

use std::collections::BTreeMap;

use nalgebra::DMatrix;

use crate::connection::{covariant_derivative, ChristoffelGerm, TensorFieldGerm};
use crate::error::{Error, Result};
use crate::jets::TrivializedJet;
use crate::lie::{AlgebraElement, GroupElement, GroupTag};
use crate::partitions::enumerate_p1plus;
use crate::tensor::{multi_indices, GValuedTensor};
use crate::tol;

pub(crate) fn degree(exps: &[usize]) -> usize {
    exps.iter().sum()
}

/// All exponent vectors over `n` variables with total degree exactly `d`,
/// in lexicographic order.
fn exponents_of_degree(n: usize, d: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, d: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == n - 1 {
            prefix.push(d);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for take in 0..=d {
            prefix.push(take);
            rec(n, d - take, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, d, &mut Vec::new(), &mut out);
    out
}

/// A truncated Taylor germ of a real-valued function on ℝⁿ.
///
/// Used for Christoffel symbol components; missing exponents are zero.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarGerm {
    base_dim: usize,
    truncation: usize,
    coeffs: BTreeMap<Vec<usize>, f64>,
}

impl ScalarGerm {
    pub fn new(
        base_dim: usize,
        truncation: usize,
        coeffs: BTreeMap<Vec<usize>, f64>,
    ) -> Result<Self> {
        for exps in coeffs.keys() {
            check_exponents(exps, base_dim, truncation)?;
        }
        Ok(Self {
            base_dim,
            truncation,
            coeffs,
        })
    }

    pub fn zero(base_dim: usize, truncation: usize) -> Self {
        Self {
            base_dim,
            truncation,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn constant(base_dim: usize, truncation: usize, value: f64) -> Self {
        let mut coeffs = BTreeMap::new();
        if value != 0.0 {
            coeffs.insert(vec![0; base_dim], value);
        }
        Self {
            base_dim,
            truncation,
            coeffs,
        }
    }

    pub fn base_dim(&self) -> usize {
        self.base_dim
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn coeff(&self, exps: &[usize]) -> f64 {
        self.coeffs.get(exps).copied().unwrap_or(0.0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, f64)> {
        self.coeffs.iter().map(|(e, &c)| (e, c))
    }

    pub fn set_coeff(&mut self, exps: Vec<usize>, value: f64) -> Result<()> {
        check_exponents(&exps, self.base_dim, self.truncation)?;
        self.coeffs.insert(exps, value);
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.values().all(|&c| c == 0.0)
    }

    /// Formal partial derivative; the truncation drops by one.
    pub fn partial(&self, mu: usize) -> Result<ScalarGerm> {
        if self.truncation == 0 {
            return Err(Error::Truncation(
                "cannot differentiate a scalar germ of truncation 0".into(),
            ));
        }
        check_direction(mu, self.base_dim)?;
        let mut coeffs = BTreeMap::new();
        for (exps, &c) in &self.coeffs {
            if exps[mu] > 0 {
                let mut e2 = exps.clone();
                e2[mu] -= 1;
                coeffs.insert(e2, c * exps[mu] as f64);
            }
        }
        Ok(ScalarGerm {
            base_dim: self.base_dim,
            truncation: self.truncation - 1,
            coeffs,
        })
    }

    /// Product with a matrix germ, truncated to the smaller truncation.
    pub fn mul_matrix(&self, m: &MatrixGerm) -> Result<MatrixGerm> {
        if self.base_dim != m.base_dim {
            return Err(Error::ShapeMismatch(format!(
                "scalar germ over ℝ^{} times matrix germ over ℝ^{}",
                self.base_dim, m.base_dim
            )));
        }
        let truncation = self.truncation.min(m.truncation);
        let nsize = m.nsize();
        let mut coeffs: BTreeMap<Vec<usize>, DMatrix<f64>> = BTreeMap::new();
        for (ea, &ca) in &self.coeffs {
            if ca == 0.0 {
                continue;
            }
            for (eb, mb) in &m.coeffs {
                let e: Vec<usize> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                if degree(&e) > truncation {
                    continue;
                }
                let term = mb * ca;
                coeffs
                    .entry(e)
                    .and_modify(|acc| *acc += &term)
                    .or_insert(term);
            }
        }
        Ok(MatrixGerm {
            base_dim: self.base_dim,
            truncation,
            tag: m.tag,
            nsize,
            coeffs,
        })
    }
}

fn check_exponents(exps: &[usize], base_dim: usize, truncation: usize) -> Result<()> {
    if exps.len() != base_dim {
        return Err(Error::ShapeMismatch(format!(
            "exponent vector {exps:?} does not have length {base_dim}"
        )));
    }
    if degree(exps) > truncation {
        return Err(Error::Truncation(format!(
            "exponent {exps:?} exceeds truncation order {truncation}"
        )));
    }
    Ok(())
}

fn check_direction(mu: usize, base_dim: usize) -> Result<()> {
    if mu >= base_dim {
        return Err(Error::ShapeMismatch(format!(
            "direction {mu} out of range for base dimension {base_dim}"
        )));
    }
    Ok(())
}

/// Truncated Taylor germ of an `N×N`-matrix-valued function at the origin
/// of ℝⁿ. The tag names the group the constant term is expected to lie in
/// when the germ is trivialized.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixGerm {
    base_dim: usize,
    truncation: usize,
    tag: GroupTag,
    nsize: usize,
    coeffs: BTreeMap<Vec<usize>, DMatrix<f64>>,
}

impl MatrixGerm {
    pub fn new(
        base_dim: usize,
        truncation: usize,
        tag: GroupTag,
        coeffs: BTreeMap<Vec<usize>, DMatrix<f64>>,
    ) -> Result<Self> {
        if base_dim == 0 {
            return Err(Error::ShapeMismatch("base dimension must be ≥ 1".into()));
        }
        let nsize = tag.matrix_size();
        for (exps, m) in &coeffs {
            check_exponents(exps, base_dim, truncation)?;
            if m.nrows() != nsize || m.ncols() != nsize {
                return Err(Error::DimensionMismatch(format!(
                    "coefficient at {exps:?} is {}×{}, expected {nsize}×{nsize}",
                    m.nrows(),
                    m.ncols()
                )));
            }
        }
        Ok(Self {
            base_dim,
            truncation,
            tag,
            nsize,
            coeffs,
        })
    }

    /// Germ of a constant function.
    pub fn constant(base_dim: usize, truncation: usize, tag: GroupTag, value: DMatrix<f64>) -> Result<Self> {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(vec![0; base_dim], value);
        Self::new(base_dim, truncation, tag, coeffs)
    }

    /// Germ of the constant identity function.
    pub fn identity(base_dim: usize, truncation: usize, tag: GroupTag) -> Self {
        let n = tag.matrix_size();
        Self::constant(base_dim, truncation, tag, DMatrix::identity(n, n))
            .expect("identity coefficients are valid")
    }

    pub fn zero(base_dim: usize, truncation: usize, tag: GroupTag) -> Self {
        Self {
            base_dim,
            truncation,
            tag,
            nsize: tag.matrix_size(),
            coeffs: BTreeMap::new(),
        }
    }

    pub fn base_dim(&self) -> usize {
        self.base_dim
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn tag(&self) -> GroupTag {
        self.tag
    }

    pub fn nsize(&self) -> usize {
        self.nsize
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &DMatrix<f64>)> {
        self.coeffs.iter()
    }

    /// Taylor coefficient at an exponent vector (zero if absent).
    pub fn coeff(&self, exps: &[usize]) -> DMatrix<f64> {
        self.coeffs
            .get(exps)
            .cloned()
            .unwrap_or_else(|| DMatrix::zeros(self.nsize, self.nsize))
    }

    pub fn set_coeff(&mut self, exps: Vec<usize>, value: DMatrix<f64>) -> Result<()> {
        check_exponents(&exps, self.base_dim, self.truncation)?;
        if value.nrows() != self.nsize || value.ncols() != self.nsize {
            return Err(Error::DimensionMismatch(format!(
                "coefficient is {}×{}, expected {}×{}",
                value.nrows(),
                value.ncols(),
                self.nsize,
                self.nsize
            )));
        }
        self.coeffs.insert(exps, value);
        Ok(())
    }

    /// Value at the base point.
    pub fn value(&self) -> DMatrix<f64> {
        self.coeff(&vec![0; self.base_dim])
    }

    /// Drops every coefficient of degree above `new_truncation`.
    pub fn truncate(&self, new_truncation: usize) -> MatrixGerm {
        let truncation = new_truncation.min(self.truncation);
        let coeffs = self
            .coeffs
            .iter()
            .filter(|(e, _)| degree(e) <= truncation)
            .map(|(e, m)| (e.clone(), m.clone()))
            .collect();
        MatrixGerm {
            base_dim: self.base_dim,
            truncation,
            tag: self.tag,
            nsize: self.nsize,
            coeffs,
        }
    }

    fn check_compatible(&self, other: &MatrixGerm) -> Result<()> {
        if self.base_dim != other.base_dim
            || self.truncation != other.truncation
            || self.nsize != other.nsize
        {
            return Err(Error::ShapeMismatch(format!(
                "germ shapes differ: n {} vs {}, K {} vs {}, N {} vs {}",
                self.base_dim,
                other.base_dim,
                self.truncation,
                other.truncation,
                self.nsize,
                other.nsize
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &MatrixGerm) -> Result<MatrixGerm> {
        self.check_compatible(other)?;
        let mut coeffs = self.coeffs.clone();
        for (e, m) in &other.coeffs {
            coeffs
                .entry(e.clone())
                .and_modify(|acc| *acc += m)
                .or_insert_with(|| m.clone());
        }
        Ok(MatrixGerm {
            base_dim: self.base_dim,
            truncation: self.truncation,
            tag: self.tag,
            nsize: self.nsize,
            coeffs,
        })
    }

    pub fn sub(&self, other: &MatrixGerm) -> Result<MatrixGerm> {
        self.add(&other.scale(-1.0))
    }

    pub fn scale(&self, factor: f64) -> MatrixGerm {
        MatrixGerm {
            base_dim: self.base_dim,
            truncation: self.truncation,
            tag: self.tag,
            nsize: self.nsize,
            coeffs: self
                .coeffs
                .iter()
                .map(|(e, m)| (e.clone(), m * factor))
                .collect(),
        }
    }

    /// Noncommutative truncated product: the Cauchy product of the two
    /// coefficient families, dropping all terms above the truncation.
    pub fn multiply(&self, other: &MatrixGerm) -> Result<MatrixGerm> {
        self.check_compatible(other)?;
        let mut coeffs: BTreeMap<Vec<usize>, DMatrix<f64>> = BTreeMap::new();
        for (ea, ma) in &self.coeffs {
            let da = degree(ea);
            for (eb, mb) in &other.coeffs {
                if da + degree(eb) > self.truncation {
                    continue;
                }
                let e: Vec<usize> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                let term = ma * mb;
                coeffs
                    .entry(e)
                    .and_modify(|acc| *acc += &term)
                    .or_insert(term);
            }
        }
        Ok(MatrixGerm {
            base_dim: self.base_dim,
            truncation: self.truncation,
            tag: self.tag,
            nsize: self.nsize,
            coeffs,
        })
    }

    /// Multiplicative inverse through the truncation order, computed
    /// degree by degree from the inverse of the constant term.
    pub fn inverse(&self) -> Result<MatrixGerm> {
        let v0 = self.value();
        let v0_inv = v0.try_inverse().ok_or_else(|| {
            Error::Singular("germ has a singular constant term".into())
        })?;
        let mut out: BTreeMap<Vec<usize>, DMatrix<f64>> = BTreeMap::new();
        out.insert(vec![0; self.base_dim], v0_inv.clone());
        for d in 1..=self.truncation {
            for gamma in exponents_of_degree(self.base_dim, d) {
                let mut sum = DMatrix::zeros(self.nsize, self.nsize);
                for (alpha, ma) in &self.coeffs {
                    let da = degree(alpha);
                    if da == 0 || da > d {
                        continue;
                    }
                    if alpha.iter().zip(&gamma).any(|(a, g)| a > g) {
                        continue;
                    }
                    let beta: Vec<usize> = gamma.iter().zip(alpha).map(|(g, a)| g - a).collect();
                    if let Some(mb) = out.get(&beta) {
                        sum += ma * mb;
                    }
                }
                out.insert(gamma, -(&v0_inv) * sum);
            }
        }
        Ok(MatrixGerm {
            base_dim: self.base_dim,
            truncation: self.truncation,
            tag: self.tag,
            nsize: self.nsize,
            coeffs: out,
        })
    }

    /// Formal partial derivative in direction `mu`; truncation drops by one.
    pub fn partial(&self, mu: usize) -> Result<MatrixGerm> {
        if self.truncation == 0 {
            return Err(Error::Truncation(
                "cannot differentiate a germ of truncation 0".into(),
            ));
        }
        check_direction(mu, self.base_dim)?;
        let mut coeffs = BTreeMap::new();
        for (exps, m) in &self.coeffs {
            if exps[mu] > 0 {
                let mut e2 = exps.clone();
                e2[mu] -= 1;
                coeffs.insert(e2, m * exps[mu] as f64);
            }
        }
        Ok(MatrixGerm {
            base_dim: self.base_dim,
            truncation: self.truncation - 1,
            tag: self.tag,
            nsize: self.nsize,
            coeffs,
        })
    }

    /// Mixed partial derivative at the base point: for directions
    /// `(μ₁, …, μⱼ)` with multiplicity vector `c`, this is `c! ·` the
    /// Taylor coefficient at `c`.
    pub fn derivative_at_zero(&self, directions: &[usize]) -> Result<DMatrix<f64>> {
        if directions.len() > self.truncation {
            return Err(Error::Truncation(format!(
                "derivative order {} exceeds truncation {}",
                directions.len(),
                self.truncation
            )));
        }
        let mut counts = vec![0usize; self.base_dim];
        for &mu in directions {
            check_direction(mu, self.base_dim)?;
            counts[mu] += 1;
        }
        let mut factor = 1.0;
        for &c in &counts {
            for i in 1..=c {
                factor *= i as f64;
            }
        }
        Ok(self.coeff(&counts) * factor)
    }

    /// The right-translated derivative
    /// `ξ_{μ₁…μⱼ} = (∂_{μ₁}…∂_{μⱼ} g)(0) · g(0)⁻¹`, symmetric under
    /// permutation of the directions. The value lies in the enveloping
    /// algebra, not necessarily in the tagged subalgebra.
    pub fn xi_multi(&self, directions: &[usize]) -> Result<DMatrix<f64>> {
        let v0_inv = self
            .value()
            .try_inverse()
            .ok_or_else(|| Error::Singular("germ has a singular constant term".into()))?;
        Ok(self.derivative_at_zero(directions)? * v0_inv)
    }

    /// The germ of the map `x ↦ (∂_{μ₁}…∂_{μⱼ} g)(x) · g(x)⁻¹`, truncated
    /// to `K − j`.
    pub fn xi_field(&self, directions: &[usize]) -> Result<MatrixGerm> {
        let j = directions.len();
        if j > self.truncation {
            return Err(Error::Truncation(format!(
                "derivative order {j} exceeds truncation {}",
                self.truncation
            )));
        }
        let mut deriv = self.clone();
        for &mu in directions {
            deriv = deriv.partial(mu)?;
        }
        let inv = self.inverse()?.truncate(self.truncation - j);
        deriv.multiply(&inv)
    }

    /// Largest absolute difference of coefficients, over all exponents of
    /// either germ.
    pub fn max_abs_diff(&self, other: &MatrixGerm) -> f64 {
        let mut worst: f64 = 0.0;
        for e in self.coeffs.keys().chain(other.coeffs.keys()) {
            let d = self.coeff(e) - other.coeff(e);
            worst = d.iter().fold(worst, |w, x| w.max(x.abs()));
        }
        worst
    }

    /// Right trivialization of the k-jet of this germ under the flat
    /// connection: `ξ⁽ʲ⁾_{μ₁…μⱼ} = Σ_{λ∈P₁⁺(j)} ε(λ) ξ_{λ₁} ⋯ ξ_{λ_l}`,
    /// where each block factor is the derivative product selected by the
    /// block positions.
    pub fn trivialize_flat(&self, k: usize) -> Result<TrivializedJet> {
        self.trivialize_flat_with_tolerance(k, tol::MEMBERSHIP)
    }

    pub fn trivialize_flat_with_tolerance(&self, k: usize, tol: f64) -> Result<TrivializedJet> {
        if k == 0 {
            return Err(Error::Domain("jet order k must be ≥ 1".into()));
        }
        if k > self.truncation {
            return Err(Error::Truncation(format!(
                "jet order {k} exceeds germ truncation {}",
                self.truncation
            )));
        }
        let g = GroupElement::with_tolerance(self.value(), self.tag, tol)?;
        let v0_inv = self
            .value()
            .try_inverse()
            .ok_or_else(|| Error::Singular("germ has a singular constant term".into()))?;

        // ξ table keyed by direction multiplicities
        let mut xi: BTreeMap<Vec<usize>, DMatrix<f64>> = BTreeMap::new();
        for d in 1..=k {
            for counts in exponents_of_degree(self.base_dim, d) {
                let mut factor = 1.0;
                for &c in &counts {
                    for i in 1..=c {
                        factor *= i as f64;
                    }
                }
                xi.insert(counts.clone(), self.coeff(&counts) * factor * &v0_inv);
            }
        }
        let block_counts = |block: &crate::partitions::Block, idx: &[usize]| {
            let mut counts = vec![0usize; self.base_dim];
            for &pos in block.elements() {
                counts[idx[pos - 1]] += 1;
            }
            counts
        };

        let mut tensors = Vec::with_capacity(k);
        for j in 1..=k {
            let family = enumerate_p1plus(j)?;
            let signs: Vec<f64> = family
                .iter()
                .map(|p| p.sign().expect("enumerated partitions are in P₁⁺") as f64)
                .collect();
            let mut entries = Vec::with_capacity(self.base_dim.pow(j as u32));
            for idx in multi_indices(self.base_dim, j) {
                let mut acc = DMatrix::zeros(self.nsize, self.nsize);
                for (p, &sign) in family.iter().zip(&signs) {
                    let mut prod: Option<DMatrix<f64>> = None;
                    for block in p.blocks() {
                        let factor = &xi[&block_counts(block, &idx)];
                        prod = Some(match prod {
                            None => factor.clone(),
                            Some(acc) => acc * factor,
                        });
                    }
                    acc += prod.expect("partitions have at least one block") * sign;
                }
                entries.push(acc);
            }
            tensors.push(GValuedTensor::with_tolerance(
                j,
                self.base_dim,
                self.tag,
                entries,
                tol,
            )?);
        }
        TrivializedJet::from_parts(g, tensors)
    }

    /// Right trivialization through iterated covariant derivatives:
    /// `ξ⁽¹⁾ = (dg) g⁻¹` and `ξ⁽ʲ⁾ = ∇̃⁽ʲ⁻¹⁾ ξ⁽ʲ⁻¹⁾`, evaluated at the
    /// base point. With a zero Christoffel germ this reproduces
    /// `trivialize_flat`.
    pub fn trivialize_covariant(
        &self,
        k: usize,
        gamma: &ChristoffelGerm,
    ) -> Result<TrivializedJet> {
        self.trivialize_covariant_with_tolerance(k, gamma, tol::MEMBERSHIP)
    }

    pub fn trivialize_covariant_with_tolerance(
        &self,
        k: usize,
        gamma: &ChristoffelGerm,
        tol: f64,
    ) -> Result<TrivializedJet> {
        if k == 0 {
            return Err(Error::Domain("jet order k must be ≥ 1".into()));
        }
        if k > self.truncation {
            return Err(Error::Truncation(format!(
                "jet order {k} exceeds germ truncation {}",
                self.truncation
            )));
        }
        if gamma.base_dim() != self.base_dim {
            return Err(Error::ShapeMismatch(format!(
                "christoffel germ over ℝ^{} applied to a germ over ℝ^{}",
                gamma.base_dim(),
                self.base_dim
            )));
        }
        if gamma.truncation() + 1 < self.truncation {
            return Err(Error::Truncation(format!(
                "christoffel truncation {} is below K−1 = {}",
                gamma.truncation(),
                self.truncation - 1
            )));
        }
        let g = GroupElement::with_tolerance(self.value(), self.tag, tol)?;

        let inv = self.inverse()?.truncate(self.truncation - 1);
        let entries: Vec<MatrixGerm> = (0..self.base_dim)
            .map(|mu| self.partial(mu)?.multiply(&inv))
            .collect::<Result<_>>()?;
        let mut field = TensorFieldGerm::new(1, self.base_dim, entries)?;

        let mut tensors = vec![field.eval_at_zero(self.tag, tol)?];
        for _ in 2..=k {
            field = covariant_derivative(&field, gamma)?;
            tensors.push(field.eval_at_zero(self.tag, tol)?);
        }
        TrivializedJet::from_parts(g, tensors)
    }
}

/// Test-data generator: the germ of
/// `g(x) = exp(Σ_μ x^μ A_μ + Σ_{μν} x^μ x^ν B_{μν})`, expanded through
/// the truncation order. The coefficients must belong to the tagged
/// subalgebra, which makes the germ group-valued with `g(0) = I`.
pub fn sample_exp_germ(
    base_dim: usize,
    truncation: usize,
    tag: GroupTag,
    linear: &[AlgebraElement],
    quadratic: &[AlgebraElement],
) -> Result<MatrixGerm> {
    if linear.len() != base_dim {
        return Err(Error::ShapeMismatch(format!(
            "expected {base_dim} linear coefficients, got {}",
            linear.len()
        )));
    }
    if quadratic.len() != base_dim * base_dim {
        return Err(Error::ShapeMismatch(format!(
            "expected {} quadratic coefficients, got {}",
            base_dim * base_dim,
            quadratic.len()
        )));
    }
    for a in linear.iter().chain(quadratic) {
        if a.tag() != tag {
            return Err(Error::Membership(format!(
                "coefficient tagged {} used in a {} germ",
                a.tag(),
                tag
            )));
        }
    }

    let mut poly = MatrixGerm::zero(base_dim, truncation, tag);
    for (mu, a) in linear.iter().enumerate() {
        let mut e = vec![0; base_dim];
        e[mu] = 1;
        if degree(&e) <= truncation {
            let prev = poly.coeff(&e);
            poly.set_coeff(e, prev + a.matrix())?;
        }
    }
    if truncation >= 2 {
        for mu in 0..base_dim {
            for nu in 0..base_dim {
                let b = &quadratic[mu * base_dim + nu];
                let mut e = vec![0; base_dim];
                e[mu] += 1;
                e[nu] += 1;
                let prev = poly.coeff(&e);
                poly.set_coeff(e, prev + b.matrix())?;
            }
        }
    }

    // exp(P) = Σ Pᵐ/m!; P has no constant term, so degree m terms start at m
    let mut acc = MatrixGerm::identity(base_dim, truncation, tag);
    let mut term = MatrixGerm::identity(base_dim, truncation, tag);
    for m in 1..=truncation {
        term = term.multiply(&poly)?.scale(1.0 / m as f64);
        acc = acc.add(&term)?;
    }
    Ok(acc)
}
