//! Truncated noncommutative Taylor arithmetic — the oracle layer.
//!
//! ```bash
//! cargo run --example germ_arithmetic
//! ```

use jet_groupoid::germ::{sample_exp_germ, MatrixGerm};
use jet_groupoid::lie::{so3_generators, AlgebraElement, GroupTag};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let tag = GroupTag::SpecialOrthogonal3;
    let [e1, e2, e3] = so3_generators();

    // g(x, y) = exp(x E₁ + y E₂ + x² E₃ + xy E₁ …), exact through order 3
    let g = sample_exp_germ(
        2,
        3,
        tag,
        &[e1.clone(), e2.clone()],
        &[e3.clone(), e1.clone(), AlgebraElement::zero(tag), e2.clone()],
    )?;
    println!("germ value at the base point (must be the identity):\n{}", g.value());

    let inv = g.inverse()?;
    let product = g.multiply(&inv)?;
    let id = MatrixGerm::identity(2, 3, tag);
    println!(
        "‖g · g⁻¹ − 1‖ over all retained coefficients: {:.2e}",
        product.max_abs_diff(&id)
    );

    // partial derivatives drop the truncation order by one
    let gx = g.partial(0)?;
    println!(
        "∂g/∂x has truncation {} and ∂g/∂x(0) =\n{}",
        gx.truncation(),
        gx.value()
    );

    // right-translated derivatives ξ_{μ₁…μⱼ} = (∂…∂ g) g⁻¹ are symmetric
    let a = g.xi_multi(&[0, 1])?;
    let b = g.xi_multi(&[1, 0])?;
    println!("ξ_{{xy}} − ξ_{{yx}} = {:.2e} (symmetry of partials)", (a - b).norm());

    // the JSON form round-trips
    let text = serde_json::to_string_pretty(&g)?;
    let back: MatrixGerm = serde_json::from_str(&text)?;
    println!("JSON round trip drift: {:.2e}", g.max_abs_diff(&back));
    Ok(())
}
