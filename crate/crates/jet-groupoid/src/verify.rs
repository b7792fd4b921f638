//! Seeded property verification over randomly generated germs.
//!
//! `run_verify` draws reproducible exponential-type germs (and random
//! polynomial Christoffel symbols), pushes them through both the germ
//! arithmetic and the jet formulas, and reports the worst residual per
//! property. The germ side is the oracle: trivializing a product of germs
//! must agree with the groupoid product of the trivializations, for any
//! connection, and likewise for inverses.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::connection::ChristoffelGerm;
use crate::error::{Error, Result};
use crate::germ::{sample_exp_germ, MatrixGerm, ScalarGerm};
use crate::jets::{inverse_k2_closed_form, multiply_k2_closed_form, TrivializedJet};
use crate::lie::{random_algebra, GroupTag};
use crate::tol;

/// Largest base dimension accepted by the harness.
pub const MAX_BASE_DIM: usize = 4;
/// Largest jet order accepted by the harness.
pub const MAX_ORDER: usize = 5;

/// Configuration of one verification run.
#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub tag: GroupTag,
    pub base_dim: usize,
    pub order: usize,
    pub trials: usize,
    pub seed: u64,
    /// Residual bound for the germ-oracle identities.
    pub oracle_tol: f64,
    /// Residual bound for the covariant-connection variants.
    pub covariant_tol: f64,
    /// Residual bound for reorderings of the same computation.
    pub exact_tol: f64,
    /// Subalgebra membership bound.
    pub membership_tol: f64,
    /// Second-order image condition bound.
    pub image_tol: f64,
    /// Count-weighted 1D product bound.
    pub count_tol: f64,
}

impl VerifyConfig {
    pub fn new(tag: GroupTag, base_dim: usize, order: usize, trials: usize, seed: u64) -> Self {
        Self {
            tag,
            base_dim,
            order,
            trials,
            seed,
            oracle_tol: tol::ORACLE,
            covariant_tol: tol::COVARIANT_ORACLE,
            exact_tol: tol::EXACT_FORM,
            membership_tol: tol::MEMBERSHIP,
            image_tol: tol::IMAGE,
            count_tol: tol::COUNT_PATH,
        }
    }

    /// Replaces the oracle tolerance (the covariant bound is kept at
    /// least as loose).
    pub fn with_oracle_tolerance(mut self, tol: f64) -> Self {
        self.oracle_tol = tol;
        self.covariant_tol = self.covariant_tol.max(tol);
        self
    }
}

/// Outcome of a single property over all trials.
#[derive(Debug, Clone, Serialize)]
pub struct PropertyReport {
    pub name: String,
    pub trials: usize,
    pub max_residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

/// Outcome of a verification run.
#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub group: String,
    pub base_dim: usize,
    pub order: usize,
    pub trials: usize,
    pub seed: u64,
    pub properties: Vec<PropertyReport>,
    pub all_pass: bool,
}

/// A reproducible group-valued germ `exp(x^μ A_μ + x^μ x^ν B_{μν})` with
/// coefficients drawn uniformly from [-1, 1] and projected onto the
/// tagged subalgebra.
pub fn random_group_germ<R: Rng>(
    base_dim: usize,
    truncation: usize,
    tag: GroupTag,
    rng: &mut R,
) -> MatrixGerm {
    let linear: Vec<_> = (0..base_dim).map(|_| random_algebra(tag, rng)).collect();
    let quadratic: Vec<_> = (0..base_dim * base_dim)
        .map(|_| random_algebra(tag, rng))
        .collect();
    sample_exp_germ(base_dim, truncation, tag, &linear, &quadratic)
        .expect("random coefficients are valid")
}

/// A random polynomial Christoffel germ: every component gets a uniform
/// [-1, 1] coefficient for each exponent up to the truncation order.
pub fn random_christoffel<R: Rng>(
    base_dim: usize,
    truncation: usize,
    rng: &mut R,
) -> ChristoffelGerm {
    let mut gamma = ChristoffelGerm::zeros(base_dim, truncation);
    for sigma in 0..base_dim {
        for mu in 0..base_dim {
            for nu in 0..base_dim {
                let mut germ = ScalarGerm::zero(base_dim, truncation);
                for exps in all_exponents(base_dim, truncation) {
                    germ.set_coeff(exps, rng.gen_range(-1.0..=1.0))
                        .expect("exponents in range");
                }
                gamma
                    .set_component(sigma, mu, nu, germ)
                    .expect("indices in range");
            }
        }
    }
    gamma
}

fn all_exponents(n: usize, max_degree: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, budget: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        for take in 0..=budget {
            prefix.push(take);
            rec(n, budget - take, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, max_degree, &mut Vec::new(), &mut out);
    out
}

struct PropertyRun {
    name: &'static str,
    tolerance: f64,
    max_residual: f64,
}

impl PropertyRun {
    fn new(name: &'static str, tolerance: f64) -> Self {
        Self {
            name,
            tolerance,
            max_residual: 0.0,
        }
    }

    fn record(&mut self, residual: f64) {
        self.max_residual = self.max_residual.max(residual);
    }

    fn report(self, trials: usize) -> PropertyReport {
        PropertyReport {
            name: self.name.to_string(),
            trials,
            max_residual: self.max_residual,
            pass: self.max_residual <= self.tolerance,
            tolerance: self.tolerance,
        }
    }
}

/// Runs every applicable property for the configuration and returns the
/// report. Deterministic for a fixed seed.
pub fn run_verify(cfg: &VerifyConfig) -> Result<VerifyReport> {
    if cfg.trials == 0 {
        return Err(Error::Unsupported("trials must be ≥ 1".into()));
    }
    if cfg.base_dim == 0 || cfg.base_dim > MAX_BASE_DIM {
        return Err(Error::Unsupported(format!(
            "base dimension {} outside 1..={MAX_BASE_DIM}",
            cfg.base_dim
        )));
    }
    if cfg.order == 0 || cfg.order > MAX_ORDER {
        return Err(Error::Unsupported(format!(
            "jet order {} outside 1..={MAX_ORDER}",
            cfg.order
        )));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let (n, k, tag) = (cfg.base_dim, cfg.order, cfg.tag);

    let mut mul_flat = PropertyRun::new("multiply-matches-germ-product", cfg.oracle_tol);
    let mut inv_flat = PropertyRun::new("inverse-matches-germ-inverse", cfg.oracle_tol);
    let mut mul_cov = PropertyRun::new("covariant-multiply-matches-germ-product", cfg.covariant_tol);
    let mut inv_cov = PropertyRun::new("covariant-inverse-matches-germ-inverse", cfg.covariant_tol);
    let mut flat_agree = PropertyRun::new("covariant-flat-agreement", cfg.exact_tol);
    let mut assoc = PropertyRun::new("associativity", cfg.oracle_tol);
    let mut ident = PropertyRun::new("identity-two-sided", cfg.exact_tol);
    let mut inv_axiom = PropertyRun::new("inverse-axiom", cfg.oracle_tol);
    let mut containment = PropertyRun::new("algebra-containment", cfg.membership_tol);
    let mut image = PropertyRun::new("image-condition-k2", cfg.image_tol);
    let mut closed2 = PropertyRun::new("closed-form-k2", cfg.exact_tol);
    let mut counts1d = PropertyRun::new("count-weighted-product-1d", cfg.count_tol);

    let identity_jet = TrivializedJet::identity(n, k, tag)?;
    for _ in 0..cfg.trials {
        let p = random_group_germ(n, k, tag, &mut rng);
        let q = random_group_germ(n, k, tag, &mut rng);
        let r = random_group_germ(n, k, tag, &mut rng);
        let gamma = random_christoffel(n, k, &mut rng);

        let a = p.trivialize_flat(k)?;
        let b = q.trivialize_flat(k)?;
        let c = r.trivialize_flat(k)?;

        mul_flat.record(p.multiply(&q)?.trivialize_flat(k)?.max_abs_diff(&a.multiply(&b)?)?);
        inv_flat.record(p.inverse()?.trivialize_flat(k)?.max_abs_diff(&a.inverse()?)?);

        let ac = p.trivialize_covariant(k, &gamma)?;
        let bc = q.trivialize_covariant(k, &gamma)?;
        mul_cov.record(
            p.multiply(&q)?
                .trivialize_covariant(k, &gamma)?
                .max_abs_diff(&ac.multiply(&bc)?)?,
        );
        inv_cov.record(
            p.inverse()?
                .trivialize_covariant(k, &gamma)?
                .max_abs_diff(&ac.inverse()?)?,
        );
        let zero_gamma = ChristoffelGerm::zeros(n, k);
        flat_agree.record(p.trivialize_covariant(k, &zero_gamma)?.max_abs_diff(&a)?);

        assoc.record(
            a.multiply(&b)?
                .multiply(&c)?
                .max_abs_diff(&a.multiply(&b.multiply(&c)?)?)?,
        );
        ident.record(
            identity_jet
                .multiply(&a)?
                .max_abs_diff(&a)?
                .max(a.multiply(&identity_jet)?.max_abs_diff(&a)?),
        );
        inv_axiom.record(
            a.multiply(&a.inverse()?)?
                .max_abs_diff(&identity_jet)?
                .max(a.inverse()?.multiply(&a)?.max_abs_diff(&identity_jet)?),
        );
        containment.record(a.algebra_residual().max(ac.algebra_residual()));

        if k >= 2 {
            let a2 = a.truncate_order(2)?;
            let b2 = b.truncate_order(2)?;
            image.record(a2.image_residual_k2()?);
            closed2.record(
                multiply_k2_closed_form(&a2, &b2)?
                    .max_abs_diff(&a2.multiply(&b2)?)?
                    .max(inverse_k2_closed_form(&a2)?.max_abs_diff(&a2.inverse()?)?),
            );
        }
        if n == 1 {
            counts1d.record(a.multiply_via_counts(&b)?.max_abs_diff(&a.multiply(&b)?)?);
        }
    }

    let mut properties = vec![
        mul_flat.report(cfg.trials),
        inv_flat.report(cfg.trials),
        mul_cov.report(cfg.trials),
        inv_cov.report(cfg.trials),
        flat_agree.report(cfg.trials),
        assoc.report(cfg.trials),
        ident.report(cfg.trials),
        inv_axiom.report(cfg.trials),
        containment.report(cfg.trials),
    ];
    if k >= 2 {
        properties.push(image.report(cfg.trials));
        properties.push(closed2.report(cfg.trials));
    }
    if n == 1 {
        properties.push(counts1d.report(cfg.trials));
    }

    let all_pass = properties.iter().all(|p| p.pass);
    Ok(VerifyReport {
        group: tag.name(),
        base_dim: n,
        order: k,
        trials: cfg.trials,
        seed: cfg.seed,
        properties,
        all_pass,
    })
}
