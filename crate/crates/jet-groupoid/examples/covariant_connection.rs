//! Trivializing through a non-flat connection: the groupoid formulas do
//! not depend on the Christoffel symbols.
//!
//! ```bash
//! cargo run --example covariant_connection
//! ```

use jet_groupoid::connection::ChristoffelGerm;
use jet_groupoid::germ::{sample_exp_germ, ScalarGerm};
use jet_groupoid::lie::{so3_generators, AlgebraElement, GroupTag};
use jet_groupoid::verify::{random_christoffel, random_group_germ};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let tag = GroupTag::SpecialOrthogonal3;
    let (n, k) = (2, 3);
    let mut rng = ChaCha8Rng::seed_from_u64(99);

    // with Γ = 0 the covariant route reproduces the flat partition sum
    let p = random_group_germ(n, k, tag, &mut rng);
    let zero = ChristoffelGerm::zeros(n, k);
    println!(
        "Γ = 0 route vs flat partition sum: {:.2e}",
        p.trivialize_covariant(k, &zero)?
            .max_abs_diff(&p.trivialize_flat(k)?)?
    );

    // a random polynomial connection changes the jet components …
    let gamma = random_christoffel(n, k, &mut rng);
    let a = p.trivialize_covariant(k, &gamma)?;
    println!(
        "Γ ≠ 0 moves ξ⁽²⁾ by up to {:.2}",
        a.tensor(2)?.max_abs_diff(p.trivialize_flat(k)?.tensor(2)?)?
    );

    // … but the product formula still matches the germ oracle
    let q = random_group_germ(n, k, tag, &mut rng);
    let b = q.trivialize_covariant(k, &gamma)?;
    println!(
        "covariant trivialize(p·q) vs product of jets: {:.2e}",
        p.multiply(&q)?
            .trivialize_covariant(k, &gamma)?
            .max_abs_diff(&a.multiply(&b)?)?
    );

    // hand-checkable curve: exp(t E₃) under Γ¹₁₁ = c gives ξ⁽²⁾ = −c E₃
    let c = 0.6;
    let [_, _, e3] = so3_generators();
    let curve = sample_exp_germ(1, 2, tag, std::slice::from_ref(&e3), &[AlgebraElement::zero(tag)])?;
    let mut gamma1 = ChristoffelGerm::zeros(1, 2);
    gamma1.set_component(0, 0, 0, ScalarGerm::constant(1, 2, c))?;
    let jet = curve.trivialize_covariant(2, &gamma1)?;
    println!(
        "exp(t E₃) with Γ¹₁₁ = {c}: ‖ξ⁽²⁾ + c E₃‖ = {:.2e}",
        (jet.tensor(2)?.entry(&[0, 0])? + e3.matrix() * c).norm()
    );
    Ok(())
}
