//! Matrix Lie group and Lie algebra primitives.
//!
//! Elements are plain dense `N×N` real matrices tagged with the ambient
//! group. Three groups are supported: the full general linear group
//! `GL(N)`, the special linear group `SL(2)` (unit determinant, traceless
//! algebra) and the rotation group `SO(3)` (orthogonal, skew-symmetric
//! algebra). Membership is checked against a residual tolerance at
//! construction; the algebraic operations themselves preserve membership
//! exactly up to rounding.

use nalgebra::DMatrix;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::tol;

/// Identifies the ambient matrix group of an element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GroupTag {
    /// Invertible `N×N` matrices.
    GeneralLinear(usize),
    /// `2×2` matrices of unit determinant.
    SpecialLinear2,
    /// `3×3` rotation matrices.
    SpecialOrthogonal3,
}

impl GroupTag {
    /// Side length of the matrices in this group.
    pub fn matrix_size(&self) -> usize {
        match self {
            GroupTag::GeneralLinear(n) => *n,
            GroupTag::SpecialLinear2 => 2,
            GroupTag::SpecialOrthogonal3 => 3,
        }
    }

    /// Canonical name, also used in JSON files.
    pub fn name(&self) -> String {
        match self {
            GroupTag::GeneralLinear(n) => format!("general-linear({n})"),
            GroupTag::SpecialLinear2 => "special-linear(2)".into(),
            GroupTag::SpecialOrthogonal3 => "special-orthogonal(3)".into(),
        }
    }

    /// Parses a tag name; accepts the canonical spelling plus the short
    /// forms `gl(N)`/`glN`, `sl(2)`/`sl2` and `so(3)`/`so3`.
    pub fn parse(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_lowercase();
        match t.as_str() {
            "sl(2)" | "sl2" | "special-linear(2)" => return Ok(GroupTag::SpecialLinear2),
            "so(3)" | "so3" | "special-orthogonal(3)" => return Ok(GroupTag::SpecialOrthogonal3),
            _ => {}
        }
        for prefix in ["general-linear(", "gl("] {
            if let Some(rest) = t.strip_prefix(prefix) {
                if let Some(num) = rest.strip_suffix(')') {
                    return parse_gl_size(num);
                }
            }
        }
        if let Some(num) = t.strip_prefix("gl") {
            return parse_gl_size(num);
        }
        Err(Error::Unsupported(format!("unknown group tag {s:?}")))
    }
}

fn parse_gl_size(num: &str) -> Result<GroupTag> {
    let n: usize = num
        .parse()
        .map_err(|_| Error::Unsupported(format!("bad general-linear size {num:?}")))?;
    if n == 0 {
        return Err(Error::Unsupported("general-linear size must be ≥ 1".into()));
    }
    Ok(GroupTag::GeneralLinear(n))
}

impl std::fmt::Display for GroupTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.name())
    }
}

impl Serialize for GroupTag {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.name())
    }
}

impl<'de> Deserialize<'de> for GroupTag {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        GroupTag::parse(&s).map_err(serde::de::Error::custom)
    }
}

/// How far a matrix is from satisfying the defining equations of the
/// tagged group. Zero for `GL(N)` (invertibility is checked separately).
pub fn group_residual(m: &DMatrix<f64>, tag: GroupTag) -> f64 {
    match tag {
        GroupTag::GeneralLinear(_) => 0.0,
        GroupTag::SpecialLinear2 => (m.determinant() - 1.0).abs(),
        GroupTag::SpecialOrthogonal3 => {
            let ortho = (m.transpose() * m - DMatrix::identity(3, 3)).norm();
            ortho.max((m.determinant() - 1.0).abs())
        }
    }
}

/// Distance of a matrix from the tagged subalgebra.
pub fn algebra_residual(m: &DMatrix<f64>, tag: GroupTag) -> f64 {
    match tag {
        GroupTag::GeneralLinear(_) => 0.0,
        GroupTag::SpecialLinear2 => m.trace().abs(),
        GroupTag::SpecialOrthogonal3 => (m + m.transpose()).norm(),
    }
}

fn check_square(m: &DMatrix<f64>, tag: GroupTag) -> Result<()> {
    let n = tag.matrix_size();
    if m.nrows() != n || m.ncols() != n {
        return Err(Error::DimensionMismatch(format!(
            "expected a {n}×{n} matrix for {tag}, got {}×{}",
            m.nrows(),
            m.ncols()
        )));
    }
    Ok(())
}

/// An element of a matrix Lie group.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupElement {
    matrix: DMatrix<f64>,
    tag: GroupTag,
}

impl GroupElement {
    /// Validates membership at the default tolerance.
    pub fn new(matrix: DMatrix<f64>, tag: GroupTag) -> Result<Self> {
        Self::with_tolerance(matrix, tag, tol::MEMBERSHIP)
    }

    /// Validates invertibility and the group residual against `tol`.
    pub fn with_tolerance(matrix: DMatrix<f64>, tag: GroupTag, tol: f64) -> Result<Self> {
        check_square(&matrix, tag)?;
        if matrix.determinant().abs() <= tol {
            return Err(Error::Membership(format!(
                "matrix is not invertible (|det| ≤ {tol:e})"
            )));
        }
        let r = group_residual(&matrix, tag);
        if r > tol {
            return Err(Error::Membership(format!(
                "group residual {r:e} exceeds tolerance {tol:e} for {tag}"
            )));
        }
        Ok(Self { matrix, tag })
    }

    /// Identity element of the tagged group.
    pub fn identity(tag: GroupTag) -> Self {
        let n = tag.matrix_size();
        Self {
            matrix: DMatrix::identity(n, n),
            tag,
        }
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn tag(&self) -> GroupTag {
        self.tag
    }

    /// Group multiplication `self · other`.
    pub fn multiply(&self, other: &GroupElement) -> Result<GroupElement> {
        if self.tag != other.tag {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {} by {}",
                self.tag, other.tag
            )));
        }
        Ok(GroupElement {
            matrix: &self.matrix * &other.matrix,
            tag: self.tag,
        })
    }

    /// Group inverse.
    pub fn inverse(&self) -> Result<GroupElement> {
        let inv = self
            .matrix
            .clone()
            .try_inverse()
            .ok_or_else(|| Error::Singular("group element is not invertible".into()))?;
        Ok(GroupElement {
            matrix: inv,
            tag: self.tag,
        })
    }

    /// Adjoint action `Ad_g(ξ) = g ξ g⁻¹`.
    pub fn adjoint(&self, xi: &AlgebraElement) -> Result<AlgebraElement> {
        if self.tag != xi.tag {
            return Err(Error::DimensionMismatch(format!(
                "adjoint of {} applied to {}",
                self.tag, xi.tag
            )));
        }
        let inv = self
            .matrix
            .clone()
            .try_inverse()
            .ok_or_else(|| Error::Singular("group element is not invertible".into()))?;
        Ok(AlgebraElement {
            matrix: &self.matrix * &xi.matrix * inv,
            tag: self.tag,
        })
    }
}

/// An element of the Lie algebra of the tagged group.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraElement {
    matrix: DMatrix<f64>,
    tag: GroupTag,
}

impl AlgebraElement {
    /// Validates subalgebra membership at the default tolerance.
    pub fn new(matrix: DMatrix<f64>, tag: GroupTag) -> Result<Self> {
        Self::with_tolerance(matrix, tag, tol::MEMBERSHIP)
    }

    /// Validates the subalgebra residual against `tol`.
    pub fn with_tolerance(matrix: DMatrix<f64>, tag: GroupTag, tol: f64) -> Result<Self> {
        check_square(&matrix, tag)?;
        let r = algebra_residual(&matrix, tag);
        if r > tol {
            return Err(Error::Membership(format!(
                "algebra residual {r:e} exceeds tolerance {tol:e} for {tag}"
            )));
        }
        Ok(Self { matrix, tag })
    }

    pub fn zero(tag: GroupTag) -> Self {
        let n = tag.matrix_size();
        Self {
            matrix: DMatrix::zeros(n, n),
            tag,
        }
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn tag(&self) -> GroupTag {
        self.tag
    }

    /// Adjoint representation of the algebra: `ad(ξ)(η) = ξη − ηξ`.
    pub fn bracket(&self, other: &AlgebraElement) -> Result<AlgebraElement> {
        if self.tag != other.tag {
            return Err(Error::DimensionMismatch(format!(
                "bracket of {} with {}",
                self.tag, other.tag
            )));
        }
        Ok(AlgebraElement {
            matrix: &self.matrix * &other.matrix - &other.matrix * &self.matrix,
            tag: self.tag,
        })
    }

    /// Exponential map into the group, by scaling and squaring of the
    /// power series (terms below `tol::EXP_SERIES` are dropped).
    pub fn exp(&self) -> GroupElement {
        GroupElement {
            matrix: matrix_exp(&self.matrix),
            tag: self.tag,
        }
    }
}

/// Matrix exponential via scaling-and-squaring over the Taylor series.
pub fn matrix_exp(m: &DMatrix<f64>) -> DMatrix<f64> {
    let n = m.nrows();
    let norm = m.norm();
    // scale so the series argument has norm ≤ 1/2
    let squarings = if norm > 0.5 {
        (norm / 0.5).log2().ceil() as u32
    } else {
        0
    };
    let scaled = m / f64::powi(2.0, squarings as i32);
    let mut acc = DMatrix::identity(n, n);
    let mut term = DMatrix::identity(n, n);
    for k in 1..200 {
        term = &term * &scaled / (k as f64);
        acc += &term;
        if term.norm() < tol::EXP_SERIES {
            break;
        }
    }
    for _ in 0..squarings {
        acc = &acc * &acc;
    }
    acc
}

/// The standard skew-symmetric generators of so(3): rotations about the
/// x, y and z axes, with `[E₁, E₂] = E₃` cyclically.
pub fn so3_generators() -> [AlgebraElement; 3] {
    let tag = GroupTag::SpecialOrthogonal3;
    let e1 = DMatrix::from_row_slice(3, 3, &[0., 0., 0., 0., 0., -1., 0., 1., 0.]);
    let e2 = DMatrix::from_row_slice(3, 3, &[0., 0., 1., 0., 0., 0., -1., 0., 0.]);
    let e3 = DMatrix::from_row_slice(3, 3, &[0., -1., 0., 1., 0., 0., 0., 0., 0.]);
    [
        AlgebraElement { matrix: e1, tag },
        AlgebraElement { matrix: e2, tag },
        AlgebraElement { matrix: e3, tag },
    ]
}

/// Projects a raw matrix onto the tagged subalgebra: traceless part for
/// sl(2), skew-symmetric part for so(3), unchanged for gl(N).
pub fn project_to_algebra(m: &DMatrix<f64>, tag: GroupTag) -> AlgebraElement {
    let matrix = match tag {
        GroupTag::GeneralLinear(_) => m.clone(),
        GroupTag::SpecialLinear2 => {
            let t = m.trace() / 2.0;
            m - DMatrix::identity(2, 2) * t
        }
        GroupTag::SpecialOrthogonal3 => (m - m.transpose()) / 2.0,
    };
    AlgebraElement { matrix, tag }
}

/// A uniformly sampled algebra element: entries drawn from [-1, 1] and
/// projected onto the tagged subalgebra.
pub fn random_algebra<R: rand::Rng>(tag: GroupTag, rng: &mut R) -> AlgebraElement {
    let n = tag.matrix_size();
    let raw = DMatrix::from_fn(n, n, |_, _| rng.gen_range(-1.0..=1.0));
    project_to_algebra(&raw, tag)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const GL3: GroupTag = GroupTag::GeneralLinear(3);

    fn max_abs(m: &DMatrix<f64>) -> f64 {
        m.iter().fold(0.0, |a, x| a.max(x.abs()))
    }

    #[test]
    fn tag_names_round_trip() {
        for tag in [GL3, GroupTag::SpecialLinear2, GroupTag::SpecialOrthogonal3] {
            assert_eq!(GroupTag::parse(&tag.name()).unwrap(), tag);
        }
        assert_eq!(GroupTag::parse("so3").unwrap(), GroupTag::SpecialOrthogonal3);
        assert_eq!(GroupTag::parse("SL(2)").unwrap(), GroupTag::SpecialLinear2);
        assert_eq!(GroupTag::parse("gl(4)").unwrap(), GroupTag::GeneralLinear(4));
        assert_eq!(GroupTag::parse("gl2").unwrap(), GroupTag::GeneralLinear(2));
        assert!(GroupTag::parse("su(2)").is_err());
    }

    #[test]
    fn bracket_is_antisymmetric() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let xi = random_algebra(GroupTag::SpecialOrthogonal3, &mut rng);
        let eta = random_algebra(GroupTag::SpecialOrthogonal3, &mut rng);
        assert_eq!(max_abs(xi.bracket(&xi).unwrap().matrix()), 0.0);
        let lhs = xi.bracket(&eta).unwrap();
        let rhs = eta.bracket(&xi).unwrap();
        assert!(max_abs(&(lhs.matrix() + rhs.matrix())) < 1e-15);
        let zero = AlgebraElement::zero(GroupTag::SpecialOrthogonal3);
        assert_eq!(max_abs(zero.bracket(&eta).unwrap().matrix()), 0.0);
    }

    #[test]
    fn so3_generators_commute_cyclically() {
        let [e1, e2, e3] = so3_generators();
        let c = e1.bracket(&e2).unwrap();
        assert!(max_abs(&(c.matrix() - e3.matrix())) < 1e-15);
        let c = e2.bracket(&e3).unwrap();
        assert!(max_abs(&(c.matrix() - e1.matrix())) < 1e-15);
    }

    #[test]
    fn adjoint_of_identity_is_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let xi = random_algebra(GroupTag::SpecialLinear2, &mut rng);
        let id = GroupElement::identity(GroupTag::SpecialLinear2);
        let out = id.adjoint(&xi).unwrap();
        assert!(max_abs(&(out.matrix() - xi.matrix())) < 1e-15);
    }

    #[test]
    fn adjoint_fixes_its_own_generator() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for tag in [GL3, GroupTag::SpecialLinear2, GroupTag::SpecialOrthogonal3] {
            let xi = random_algebra(tag, &mut rng);
            let g = xi.exp();
            let out = g.adjoint(&xi).unwrap();
            assert!(max_abs(&(out.matrix() - xi.matrix())) < 1e-12);
        }
    }

    #[test]
    fn adjoint_is_an_algebra_homomorphism() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for tag in [GL3, GroupTag::SpecialLinear2, GroupTag::SpecialOrthogonal3] {
            let g = random_algebra(tag, &mut rng).exp();
            let h = random_algebra(tag, &mut rng).exp();
            let xi = random_algebra(tag, &mut rng);
            let eta = random_algebra(tag, &mut rng);

            // Ad_{gh} = Ad_g ∘ Ad_h
            let gh = g.multiply(&h).unwrap();
            let lhs = gh.adjoint(&xi).unwrap();
            let rhs = g.adjoint(&h.adjoint(&xi).unwrap()).unwrap();
            assert!(max_abs(&(lhs.matrix() - rhs.matrix())) < 1e-10);

            // Ad_g[ξ,η] = [Ad_g ξ, Ad_g η]
            let lhs = g.adjoint(&xi.bracket(&eta).unwrap()).unwrap();
            let rhs = g
                .adjoint(&xi)
                .unwrap()
                .bracket(&g.adjoint(&eta).unwrap())
                .unwrap();
            assert!(max_abs(&(lhs.matrix() - rhs.matrix())) < 1e-10);
        }
    }

    #[test]
    fn jacobi_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for tag in [GL3, GroupTag::SpecialLinear2, GroupTag::SpecialOrthogonal3] {
            for _ in 0..20 {
                let xi = random_algebra(tag, &mut rng);
                let eta = random_algebra(tag, &mut rng);
                let zeta = random_algebra(tag, &mut rng);
                let a = xi.bracket(&eta.bracket(&zeta).unwrap()).unwrap();
                let b = eta.bracket(&zeta.bracket(&xi).unwrap()).unwrap();
                let c = zeta.bracket(&xi.bracket(&eta).unwrap()).unwrap();
                let total = a.matrix() + b.matrix() + c.matrix();
                assert!(max_abs(&total) < 1e-12);
            }
        }
    }

    #[test]
    fn multiply_by_inverse_gives_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for tag in [GL3, GroupTag::SpecialLinear2, GroupTag::SpecialOrthogonal3] {
            let g = random_algebra(tag, &mut rng).exp();
            let prod = g.multiply(&g.inverse().unwrap()).unwrap();
            let n = tag.matrix_size();
            assert!(max_abs(&(prod.matrix() - DMatrix::identity(n, n))) < 1e-12);
        }
    }

    #[test]
    fn exp_of_zero_is_identity() {
        let z = AlgebraElement::zero(GL3);
        assert_eq!(z.exp().matrix(), &DMatrix::identity(3, 3));
    }

    #[test]
    fn exp_matches_rodrigues_rotation() {
        // quarter turn about the z axis
        let [_, _, e3] = so3_generators();
        let half_pi = std::f64::consts::FRAC_PI_2;
        let scaled = AlgebraElement::new(e3.matrix() * half_pi, GroupTag::SpecialOrthogonal3)
            .unwrap();
        let got = scaled.exp();
        let expect = DMatrix::from_row_slice(3, 3, &[0., -1., 0., 1., 0., 0., 0., 0., 1.]);
        assert!(max_abs(&(got.matrix() - expect)) < 1e-12);

        // general axis against the Rodrigues closed form
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let xi = random_algebra(GroupTag::SpecialOrthogonal3, &mut rng);
        let k = xi.matrix();
        let theta = (k.norm_squared() / 2.0).sqrt(); // |axis| of a skew matrix
        let unit = k / theta;
        let rodrigues =
            DMatrix::identity(3, 3) + &unit * theta.sin() + &unit * &unit * (1.0 - theta.cos());
        assert!(max_abs(&(xi.exp().matrix() - rodrigues)) < 1e-12);
    }

    #[test]
    fn membership_validation() {
        let skew = so3_generators()[0].clone();
        assert!(AlgebraElement::new(skew.matrix().clone(), GroupTag::SpecialOrthogonal3).is_ok());
        let not_skew = DMatrix::identity(3, 3);
        assert!(AlgebraElement::new(not_skew, GroupTag::SpecialOrthogonal3).is_err());
        let not_rotation = DMatrix::identity(3, 3) * 2.0;
        assert!(GroupElement::new(not_rotation, GroupTag::SpecialOrthogonal3).is_err());
        let singular = DMatrix::zeros(3, 3);
        assert!(GroupElement::new(singular, GL3).is_err());
        let wrong_size = DMatrix::identity(2, 2);
        assert!(GroupElement::new(wrong_size, GL3).is_err());
    }

    #[test]
    fn mismatched_tags_are_rejected() {
        let a = AlgebraElement::zero(GroupTag::SpecialLinear2);
        let b = AlgebraElement::zero(GL3);
        assert!(a.bracket(&b).is_err());
        let g = GroupElement::identity(GL3);
        assert!(g.adjoint(&a).is_err());
        assert!(g.multiply(&GroupElement::identity(GroupTag::SpecialLinear2)).is_err());
    }
}
