//! Run the seeded verification harness from library code and print the
//! JSON report (the `jetgroupoid verify` subcommand wraps exactly this).
//!
//! ```bash
//! cargo run --example verify_report
//! ```

use jet_groupoid::lie::GroupTag;
use jet_groupoid::verify::{run_verify, VerifyConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = VerifyConfig::new(GroupTag::SpecialOrthogonal3, 2, 3, 25, 42);
    let report = run_verify(&cfg)?;
    println!("{}", serde_json::to_string_pretty(&report)?);
    if !report.all_pass {
        std::process::exit(1);
    }
    Ok(())
}
