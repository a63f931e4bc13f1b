//! Exact maximum sum DoF over the outer region, next to the closed-form
//! bounds.
//!
//! ```text
//! cargo run --example lp_max
//! ```

use misobc::bounds::{inner_sum_dof, sum_dof_outer};
use misobc::region::max_sum_dof_lp;
use misobc::{ratio, Rational, SystemConfig};

fn main() -> misobc::Result<()> {
    let cases: Vec<(usize, usize, Vec<Rational>)> = vec![
        (2, 3, vec![ratio(0, 1); 3]),
        (2, 3, vec![ratio(2, 3); 3]),
        (2, 3, vec![ratio(1, 1), ratio(1, 2), ratio(0, 1)]),
        (3, 4, vec![ratio(1, 4), ratio(1, 2), ratio(3, 4), ratio(0, 1)]),
        (2, 2, vec![ratio(1, 1); 2]),
    ];
    for (m, k, alpha) in cases {
        let cfg = SystemConfig::new(m, k)?;
        let lp = max_sum_dof_lp(cfg, &alpha)?;
        let inner = inner_sum_dof(cfg, alpha.iter().min().unwrap())?;
        println!(
            "M={m} K={k} ᾱ={alpha:?}: inner {inner} ≤ LP {} ≤ outer {} at d={:?}",
            lp.value,
            sum_dof_outer(cfg, &alpha)?,
            lp.argmax.values()
        );
    }
    Ok(())
}
