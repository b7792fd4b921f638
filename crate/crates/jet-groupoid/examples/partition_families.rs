//! Enumerate the partition families that index the jet formulas.
//!
//! ```bash
//! cargo run --example partition_families
//! ```

use jet_groupoid::partitions::{
    compositions, count_c, count_n, enumerate_antilex, enumerate_p1plus, Partition,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let j = 3;

    println!("P₁⁺({j}) — partly ordered, 1 in the first block, with signs:");
    for p in enumerate_p1plus(j)? {
        println!("  {p}  ε = {:+}", p.sign()?);
    }

    println!("\nPᵃ({j}) — block maxima increasing:");
    for p in enumerate_antilex(j)? {
        println!("  {p}");
    }

    println!("\nper-size counts for j = {j}:");
    for sizes in compositions(j) {
        println!(
            "  sizes {:?} → c = {}, N = {}",
            sizes,
            count_c(&sizes)?,
            count_n(&sizes)?
        );
    }

    // the one-element extensions that generate the families
    let p = Partition::from_vecs(vec![vec![2, 3], vec![1]])?;
    println!("\nextensions of {p}:");
    println!("  plus  at block 1 → {}", p.extend_plus(1)?);
    println!("  minus at block 1 → {}", p.extend_minus(1)?);

    // every P₁⁺ partition walks back to ({1}) through unique parents
    let mut walk = Partition::from_vecs(vec![vec![1, 3], vec![2], vec![4]])?;
    print!("parent chain: {walk}");
    while walk.ground_size() > 1 {
        let (parent, s, kind) = walk.parent()?;
        print!(" ← {parent} (s = {s}, {kind:?})");
        walk = parent;
    }
    println!();
    Ok(())
}
