//! Linear connections in coordinates and covariant derivatives of
//! germ-valued tensor fields.
//!
//! A connection is given by its Christoffel symbols `Γ^σ_{μν}`, each a
//! scalar germ on the chart. The covariant derivative of an order-`j`
//! algebra-valued tensor field appends the differentiation index in the
//! last slot:
//!
//! ```text
//! (∇α)_{μ₁…μⱼν} = ∂_ν α_{μ₁…μⱼ} − Σᵢ Γ^σ_{νμᵢ} α_{μ₁…σ…μⱼ}
//! ```
//!
//! The first lower index of `Γ` is the differentiation direction; no
//! symmetry of `Γ` is assumed. Setting `Γ = 0` reduces `∇` to the
//! componentwise partial derivative.

use crate::error::{Error, Result};
use crate::germ::{MatrixGerm, ScalarGerm};
use crate::lie::GroupTag;
use crate::tensor::{multi_indices, GValuedTensor};

/// Christoffel symbols `Γ^σ_{μν}` of a linear connection, as scalar germs
/// sharing one base dimension and truncation order.
#[derive(Debug, Clone, PartialEq)]
pub struct ChristoffelGerm {
    base_dim: usize,
    truncation: usize,
    // (σ, μ, ν) row-major with σ slowest, all 0-based
    components: Vec<ScalarGerm>,
}

impl ChristoffelGerm {
    pub fn new(base_dim: usize, truncation: usize, components: Vec<ScalarGerm>) -> Result<Self> {
        let expected = base_dim * base_dim * base_dim;
        if components.len() != expected {
            return Err(Error::ShapeMismatch(format!(
                "expected {expected} christoffel components, got {}",
                components.len()
            )));
        }
        for c in &components {
            if c.base_dim() != base_dim || c.truncation() != truncation {
                return Err(Error::ShapeMismatch(
                    "all christoffel components must share base dimension and truncation".into(),
                ));
            }
        }
        Ok(Self {
            base_dim,
            truncation,
            components,
        })
    }

    /// The flat connection: every symbol identically zero.
    pub fn zeros(base_dim: usize, truncation: usize) -> Self {
        Self {
            base_dim,
            truncation,
            components: vec![ScalarGerm::zero(base_dim, truncation); base_dim.pow(3)],
        }
    }

    pub fn base_dim(&self) -> usize {
        self.base_dim
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    /// `Γ^σ_{μν}` with 0-based indices.
    pub fn component(&self, sigma: usize, mu: usize, nu: usize) -> Result<&ScalarGerm> {
        self.check(sigma, mu, nu)?;
        Ok(&self.components[(sigma * self.base_dim + mu) * self.base_dim + nu])
    }

    pub fn set_component(
        &mut self,
        sigma: usize,
        mu: usize,
        nu: usize,
        germ: ScalarGerm,
    ) -> Result<()> {
        self.check(sigma, mu, nu)?;
        if germ.base_dim() != self.base_dim || germ.truncation() != self.truncation {
            return Err(Error::ShapeMismatch(
                "component germ does not match the christoffel shape".into(),
            ));
        }
        self.components[(sigma * self.base_dim + mu) * self.base_dim + nu] = germ;
        Ok(())
    }

    pub fn components(&self) -> &[ScalarGerm] {
        &self.components
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(ScalarGerm::is_zero)
    }

    fn check(&self, sigma: usize, mu: usize, nu: usize) -> Result<()> {
        if sigma >= self.base_dim || mu >= self.base_dim || nu >= self.base_dim {
            return Err(Error::ShapeMismatch(format!(
                "christoffel index ({sigma},{mu},{nu}) out of range for base dimension {}",
                self.base_dim
            )));
        }
        Ok(())
    }
}

/// An order-`j` tensor field with matrix-germ entries: the germ-level
/// analogue of a `GValuedTensor`-valued map on the chart.
#[derive(Debug, Clone)]
pub struct TensorFieldGerm {
    order: usize,
    base_dim: usize,
    truncation: usize,
    entries: Vec<MatrixGerm>,
}

impl TensorFieldGerm {
    pub fn new(order: usize, base_dim: usize, entries: Vec<MatrixGerm>) -> Result<Self> {
        let expected = base_dim.pow(order as u32);
        if entries.len() != expected {
            return Err(Error::ShapeMismatch(format!(
                "order-{order} field over ℝ^{base_dim} needs {expected} entries, got {}",
                entries.len()
            )));
        }
        let truncation = entries
            .first()
            .map(MatrixGerm::truncation)
            .ok_or_else(|| Error::ShapeMismatch("a tensor field needs entries".into()))?;
        for e in &entries {
            if e.base_dim() != base_dim || e.truncation() != truncation {
                return Err(Error::ShapeMismatch(
                    "all field entries must share base dimension and truncation".into(),
                ));
            }
        }
        Ok(Self {
            order,
            base_dim,
            truncation,
            entries,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn base_dim(&self) -> usize {
        self.base_dim
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn entry(&self, idx: &[usize]) -> Result<&MatrixGerm> {
        if idx.len() != self.order {
            return Err(Error::ShapeMismatch(format!(
                "multi-index length {} does not match field order {}",
                idx.len(),
                self.order
            )));
        }
        let mut lin = 0usize;
        for &mu in idx {
            if mu >= self.base_dim {
                return Err(Error::ShapeMismatch(format!(
                    "index component {mu} out of range for base dimension {}",
                    self.base_dim
                )));
            }
            lin = lin * self.base_dim + mu;
        }
        Ok(&self.entries[lin])
    }

    /// Values of all entries at the base point, as an algebra-valued
    /// tensor checked against the tagged subalgebra.
    pub fn eval_at_zero(&self, tag: GroupTag, tol: f64) -> Result<GValuedTensor> {
        let values = self.entries.iter().map(MatrixGerm::value).collect();
        GValuedTensor::with_tolerance(self.order, self.base_dim, tag, values, tol)
    }
}

/// Covariant derivative of a germ-valued tensor field. The output has
/// order `j + 1` (differentiation index last) and one less truncation
/// order.
pub fn covariant_derivative(
    field: &TensorFieldGerm,
    gamma: &ChristoffelGerm,
) -> Result<TensorFieldGerm> {
    if field.truncation == 0 {
        return Err(Error::Truncation(
            "field truncation is exhausted, cannot differentiate".into(),
        ));
    }
    if gamma.base_dim() != field.base_dim {
        return Err(Error::ShapeMismatch(format!(
            "christoffel germ over ℝ^{} applied to a field over ℝ^{}",
            gamma.base_dim(),
            field.base_dim
        )));
    }
    if gamma.truncation() + 1 < field.truncation {
        return Err(Error::Truncation(format!(
            "christoffel truncation {} cannot cover a field of truncation {}",
            gamma.truncation(),
            field.truncation
        )));
    }
    let n = field.base_dim;
    let out_trunc = field.truncation - 1;
    let mut entries = Vec::with_capacity(n.pow((field.order + 1) as u32));
    for idx in multi_indices(n, field.order + 1) {
        let (head, nu) = (&idx[..field.order], idx[field.order]);
        let mut acc = field.entry(head)?.partial(nu)?;
        for slot in 0..field.order {
            for sigma in 0..n {
                let symbol = gamma.component(sigma, nu, head[slot])?;
                if symbol.is_zero() {
                    continue;
                }
                let mut replaced = head.to_vec();
                replaced[slot] = sigma;
                let correction = symbol.mul_matrix(field.entry(&replaced)?)?.truncate(out_trunc);
                acc = acc.sub(&correction)?;
            }
        }
        entries.push(acc);
    }
    TensorFieldGerm::new(field.order + 1, n, entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::DMatrix;

    const GL2: GroupTag = GroupTag::GeneralLinear(2);

    fn const_field1(n: usize, trunc: usize, values: &[DMatrix<f64>]) -> TensorFieldGerm {
        let entries = values
            .iter()
            .map(|v| MatrixGerm::constant(n, trunc, GL2, v.clone()).unwrap())
            .collect();
        TensorFieldGerm::new(1, n, entries).unwrap()
    }

    #[test]
    fn zero_christoffel_is_plain_partial() {
        // order-1 field with entry x²A in the only slot, n = 1
        let a = DMatrix::from_row_slice(2, 2, &[1., 0., 0., -1.]);
        let mut g = MatrixGerm::zero(1, 3, GL2);
        g.set_coeff(vec![2], a.clone()).unwrap();
        let field = TensorFieldGerm::new(1, 1, vec![g]).unwrap();
        let d = covariant_derivative(&field, &ChristoffelGerm::zeros(1, 3)).unwrap();
        assert_eq!(d.order(), 2);
        assert_eq!(d.truncation(), 2);
        assert_eq!(d.entry(&[0, 0]).unwrap().coeff(&[1]), &a * 2.0);
    }

    #[test]
    fn order_zero_field_gets_plain_gradient() {
        // a 𝔤-valued function has no tensor slot to correct, any Γ
        let a = DMatrix::from_row_slice(2, 2, &[0., 1., 1., 0.]);
        let mut g = MatrixGerm::zero(2, 2, GL2);
        g.set_coeff(vec![1, 0], a.clone()).unwrap();
        let field = TensorFieldGerm::new(0, 2, vec![g]).unwrap();
        let mut gamma = ChristoffelGerm::zeros(2, 2);
        gamma
            .set_component(0, 0, 0, ScalarGerm::constant(2, 2, 5.0))
            .unwrap();
        let d = covariant_derivative(&field, &gamma).unwrap();
        assert_eq!(d.order(), 1);
        assert_eq!(d.entry(&[0]).unwrap().value(), a);
        assert_eq!(d.entry(&[1]).unwrap().value(), DMatrix::zeros(2, 2));
    }

    #[test]
    fn constant_christoffel_hand_value() {
        // n = 1, Γ¹₁₁ = c, constant 1-form with entry a: (∇α)₁₁ = −c·a
        let c = 0.75;
        let a = DMatrix::from_row_slice(2, 2, &[2., 0., 1., -2.]);
        let field = const_field1(1, 2, std::slice::from_ref(&a));
        let mut gamma = ChristoffelGerm::zeros(1, 2);
        gamma
            .set_component(0, 0, 0, ScalarGerm::constant(1, 2, c))
            .unwrap();
        let d = covariant_derivative(&field, &gamma).unwrap();
        assert!((d.entry(&[0, 0]).unwrap().value() - &a * (-c)).norm() < 1e-15);
    }

    #[test]
    fn truncation_exhaustion_and_shape_errors() {
        let a = DMatrix::identity(2, 2);
        let field = const_field1(1, 0, std::slice::from_ref(&a));
        assert!(covariant_derivative(&field, &ChristoffelGerm::zeros(1, 0)).is_err());
        let field = const_field1(1, 2, &[a]);
        assert!(covariant_derivative(&field, &ChristoffelGerm::zeros(2, 2)).is_err());
        // christoffel truncation too small for the field
        assert!(covariant_derivative(&field, &ChristoffelGerm::zeros(1, 0)).is_err());
    }

    #[test]
    fn christoffel_indexing() {
        let mut gamma = ChristoffelGerm::zeros(2, 1);
        let g = ScalarGerm::constant(2, 1, 3.0);
        gamma.set_component(1, 0, 1, g.clone()).unwrap();
        assert_eq!(gamma.component(1, 0, 1).unwrap(), &g);
        assert!(gamma.component(0, 0, 0).unwrap().is_zero());
        assert!(gamma.component(2, 0, 0).is_err());
        assert!(!gamma.is_zero());
        assert!(ChristoffelGerm::zeros(2, 1).is_zero());
        assert!(ChristoffelGerm::new(2, 1, vec![ScalarGerm::zero(2, 1); 3]).is_err());
    }
}
