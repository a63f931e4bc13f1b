//! Sum-DoF bounds for a handful of antenna/user configurations.
//!
//! ```text
//! cargo run --example bounds_table
//! ```

use misobc::bounds::{bound_report, gamma_dof, mat_dof, min_cost_max_dof};
use misobc::{ratio, SystemConfig};

fn main() -> misobc::Result<()> {
    println!("{:>3} {:>3} {:>8} {:>10} {:>8}", "M", "K", "Λ", "Γ", "C_P*");
    for (m, k) in [(1, 4), (2, 2), (2, 3), (2, 5), (3, 3), (3, 6), (4, 8)] {
        let cfg = SystemConfig::new(m, k)?;
        let gamma = gamma_dof(cfg).map(|g| g.to_string()).unwrap_or_else(|_| "-".into());
        println!(
            "{m:>3} {k:>3} {:>8} {gamma:>10} {:>8}",
            mat_dof(cfg).to_string(),
            min_cost_max_dof(cfg).cost.to_string()
        );
    }

    let cfg = SystemConfig::new(2, 3)?;
    let alpha = vec![ratio(1, 3), ratio(1, 3), ratio(1, 3)];
    let report = bound_report(cfg, &alpha)?;
    println!("\nM=2 K=3 ᾱ=1/3 each:\n{}", serde_json::to_string_pretty(&report).unwrap());
    Ok(())
}
