//! Matrix Lie group primitives: brackets, exponentials and the adjoint
//! representations.
//!
//! ```bash
//! cargo run --example lie_basics
//! ```

use jet_groupoid::lie::{random_algebra, so3_generators, GroupTag};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let [e1, e2, e3] = so3_generators();
    println!("so(3) generators satisfy [E₁, E₂] = E₃:");
    println!("{}", e1.bracket(&e2)?.matrix());

    println!("quarter turn about z, exp(π/2 · E₃):");
    let quarter = jet_groupoid::lie::AlgebraElement::new(
        e3.matrix() * std::f64::consts::FRAC_PI_2,
        GroupTag::SpecialOrthogonal3,
    )?;
    println!("{}", quarter.exp().matrix());

    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for tag in [
        GroupTag::GeneralLinear(3),
        GroupTag::SpecialLinear2,
        GroupTag::SpecialOrthogonal3,
    ] {
        let xi = random_algebra(tag, &mut rng);
        let eta = random_algebra(tag, &mut rng);
        let zeta = random_algebra(tag, &mut rng);
        let g = xi.exp();

        // Ad_g is an algebra homomorphism
        let lhs = g.adjoint(&eta.bracket(&zeta)?)?;
        let rhs = g.adjoint(&eta)?.bracket(&g.adjoint(&zeta)?)?;
        let hom = (lhs.matrix() - rhs.matrix()).norm();

        // Jacobi identity
        let jacobi = (eta.bracket(&zeta.bracket(&xi)?)?.matrix()
            + zeta.bracket(&xi.bracket(&eta)?)?.matrix()
            + xi.bracket(&eta.bracket(&zeta)?)?.matrix())
        .norm();

        println!("{tag}: ‖Ad∘[,] − [Ad,Ad]‖ = {hom:.2e},  Jacobi residual = {jacobi:.2e}");
    }
    Ok(())
}
