//! Greedy perfect-CSIT schedule reaching the full sum DoF with unequal
//! per-user feedback budgets.
//!
//! ```text
//! cargo run --example greedy_schedule
//! ```

use misobc::model::parse_rational_vector;
use misobc::scheduler::{audit_schedule, greedy_schedule, minimal_period};
use misobc::SystemConfig;

fn main() -> misobc::Result<()> {
    for (m, k, budgets) in [(2, 3, "1/3,2/3,1"), (2, 4, "1/5,2/5,3/5,4/5"), (3, 5, "1/2,1/2,2/3,2/3,2/3")] {
        let cfg = SystemConfig::new(m, k)?;
        let deltas = parse_rational_vector(budgets)?;
        let s = greedy_schedule(cfg, &deltas)?;
        println!("M={m} K={k} δ={budgets} (period {})", minimal_period(&deltas)?);
        for slot in &s.slots {
            println!("  t={}: users {:?}", slot.t, slot.active_users);
        }
        let a = audit_schedule(&s)?;
        println!("  audit: fractions {:?}, sum DoF {}", a.per_user_perfect_fraction, a.sum_dof);
    }

    let s = greedy_schedule(SystemConfig::new(2, 3)?, &parse_rational_vector("1/3,2/3,1")?)?;
    println!("\n{}", s.to_json()?);
    Ok(())
}
