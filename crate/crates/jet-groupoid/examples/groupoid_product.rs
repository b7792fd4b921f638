//! The fibered product and inverse on trivialized jets, cross-checked
//! against plain germ arithmetic.
//!
//! ```bash
//! cargo run --example groupoid_product
//! ```

use jet_groupoid::jets::TrivializedJet;
use jet_groupoid::lie::GroupTag;
use jet_groupoid::verify::random_group_germ;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let tag = GroupTag::SpecialOrthogonal3;
    let (n, k) = (2, 3);
    let mut rng = ChaCha8Rng::seed_from_u64(2024);

    let p = random_group_germ(n, k, tag, &mut rng);
    let q = random_group_germ(n, k, tag, &mut rng);

    let a = p.trivialize_flat(k)?;
    let b = q.trivialize_flat(k)?;
    let product = a.multiply(&b)?;

    // the same jet through the oracle route: multiply germs first
    let oracle = p.multiply(&q)?.trivialize_flat(k)?;
    println!(
        "trivialize(p·q) vs trivialize(p)·trivialize(q): {:.2e}",
        product.max_abs_diff(&oracle)?
    );

    let inverse = a.inverse()?;
    let oracle = p.inverse()?.trivialize_flat(k)?;
    println!(
        "trivialize(p⁻¹) vs trivialize(p)⁻¹:             {:.2e}",
        inverse.max_abs_diff(&oracle)?
    );

    let identity = TrivializedJet::identity(n, k, tag)?;
    println!(
        "a · a⁻¹ vs identity jet:                        {:.2e}",
        a.multiply(&inverse)?.max_abs_diff(&identity)?
    );

    let c = random_group_germ(n, k, tag, &mut rng).trivialize_flat(k)?;
    println!(
        "(a·b)·c vs a·(b·c):                             {:.2e}",
        a.multiply(&b)?
            .multiply(&c)?
            .max_abs_diff(&a.multiply(&b.multiply(&c)?)?)?
    );
    Ok(())
}
