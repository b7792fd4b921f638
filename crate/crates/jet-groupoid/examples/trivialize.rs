//! Right trivialization of jets: from a group-valued germ to
//! `(g, ξ⁽¹⁾, …, ξ⁽ᵏ⁾)` through the signed partition sum.
//!
//! ```bash
//! cargo run --example trivialize
//! ```

use jet_groupoid::germ::sample_exp_germ;
use jet_groupoid::lie::{so3_generators, AlgebraElement, GroupTag};
use jet_groupoid::tensor::multi_indices;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let tag = GroupTag::SpecialOrthogonal3;
    let [e1, e2, e3] = so3_generators();

    // a one-parameter subgroup t ↦ exp(t E₃) has constant ξ, so ξ⁽²⁾ = 0
    let curve = sample_exp_germ(1, 2, tag, std::slice::from_ref(&e3), &[AlgebraElement::zero(tag)])?;
    let jet = curve.trivialize_flat(2)?;
    println!("exp(t E₃):  ξ⁽¹⁾ = E₃ → {:.2e} drift,  ξ⁽²⁾ max |entry| = {:.2e}",
        (jet.tensor(1)?.entry(&[0])? - e3.matrix()).norm(),
        jet.tensor(2)?.max_abs(),
    );

    // a genuinely two-dimensional germ
    let surface = sample_exp_germ(
        2,
        3,
        tag,
        &[e1.clone(), e2.clone()],
        &[e3.clone(), e1.clone(), e2.clone(), e3.clone()],
    )?;
    let jet = surface.trivialize_flat(3)?;

    // second order agrees with the direct ξ_{μν} − ξ_μ ξ_ν computation
    let mut worst: f64 = 0.0;
    for idx in multi_indices(2, 2) {
        let direct = surface.xi_multi(&idx)?
            - surface.xi_multi(&idx[..1])? * surface.xi_multi(&idx[1..])?;
        worst = worst.max((jet.tensor(2)?.entry(&idx)? - direct).norm());
    }
    println!("ξ⁽²⁾ vs ξ_{{μν}} − ξ_μ ξ_ν: {worst:.2e}");

    // every component lies in so(3), even though the summands do not
    println!("subalgebra residual over all ξ⁽ʲ⁾: {:.2e}", jet.algebra_residual());

    // and the second-order part satisfies the image condition
    let second = jet.truncate_order(2)?;
    println!("image residual skew(ξ⁽²⁾) + ½[ξ⁽¹⁾,ξ⁽¹⁾]: {:.2e}", second.image_residual_k2()?);
    Ok(())
}
