//! Default numerical tolerances.
//!
//! Every comparison threshold used by the library and the verification
//! harness is named here. All of them are configurable at the call sites
//! that take an explicit tolerance; these are the defaults.

/// Group / subalgebra membership residual (e.g. ‖gᵀg − I‖ for rotations,
/// |tr ξ| for traceless matrices).
///
/// Trivialized jets are exact algebra elements up to rounding; repeated
/// products of order-1 matrices drift by a few ulps per operation, so
/// 1e-9 leaves six orders of headroom over observed residuals (~1e-14).
pub const MEMBERSHIP: f64 = 1e-9;

/// Entrywise residual for the germ-oracle identities (trivialize of a
/// product vs. product of trivializations, and the inverse analogue).
///
/// Fourth-order jets of exponential germs with coefficients in [-1, 1]
/// reach entry magnitudes of O(10²); double precision leaves residuals
/// around 1e-12, so 1e-8 is conservative.
pub const ORACLE: f64 = 1e-8;

/// Entrywise residual for the covariant-derivative variants of the
/// oracle identities. Christoffel corrections add one extra germ product
/// per order, hence one order of magnitude slack over `ORACLE`.
pub const COVARIANT_ORACLE: f64 = 1e-7;

/// Residual for identities that are the same floating-point computation
/// up to reordering (closed second-order forms vs. the partition sum,
/// flat trivialization vs. covariant trivialization at zero Christoffel).
pub const EXACT_FORM: f64 = 1e-12;

/// Residual for the count-weighted one-dimensional product against the
/// partition-sum product. Terms are grouped before summation, so only
/// reassociation error remains.
pub const COUNT_PATH: f64 = 1e-10;

/// Residual for the second-order image condition
/// skew(ξ⁽²⁾)_{μν} = −½[ξ⁽¹⁾_μ, ξ⁽¹⁾_ν].
pub const IMAGE: f64 = 1e-9;

/// Matrix-exponential series truncation threshold.
pub const EXP_SERIES: f64 = 1e-12;
