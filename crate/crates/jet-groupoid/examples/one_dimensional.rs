//! Curves (base dimension 1): the jet bundle collapses to `G × k𝔤` and
//! the partition sum collapses to a count-weighted composition sum.
//!
//! ```bash
//! cargo run --example one_dimensional
//! ```

use jet_groupoid::jets::TrivializedJet;
use jet_groupoid::lie::GroupTag;
use jet_groupoid::partitions::{compositions, count_n};
use jet_groupoid::verify::random_group_germ;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let tag = GroupTag::SpecialLinear2;
    let k = 4;
    let mut rng = ChaCha8Rng::seed_from_u64(11);

    let a = random_group_germ(1, k, tag, &mut rng).trivialize_flat(k)?;
    let b = random_group_germ(1, k, tag, &mut rng).trivialize_flat(k)?;

    // each order contributes one algebra element: the G × k𝔤 picture
    let (g, xs) = a.to_curve_form()?;
    println!("curve jet over {} with k = {}:", g.tag(), xs.len());
    for (j, x) in xs.iter().enumerate() {
        println!("  ξ⁽{}⁾ first row: {:?}", j + 1, x.matrix().row(0).iter().copied().collect::<Vec<_>>());
    }
    let back = TrivializedJet::from_curve_form(g, xs)?;
    println!("round trip is exact: {}", back.max_abs_diff(&a)? == 0.0);

    // the count-weighted product agrees with the partition sum
    let fast = a.multiply_via_counts(&b)?;
    let slow = a.multiply(&b)?;
    println!("count-weighted vs partition-sum product: {:.2e}", fast.max_abs_diff(&slow)?);

    // the weights are the per-size cardinalities of Pᵃ(j)
    println!("composition weights N(j₁,…,j_l) for j = {k}:");
    for sizes in compositions(k) {
        println!("  {:?} → {}", sizes, count_n(&sizes)?);
    }
    Ok(())
}
