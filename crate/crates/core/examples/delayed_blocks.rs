//! Delayed-CSIT-only block schemes for two antennas and their feedback
//! fractions, against the delayed-CSIT inner bound.
//!
//! ```text
//! cargo run --example delayed_blocks
//! ```

use misobc::bounds::inner_sum_dof_delayed;
use misobc::scheduler::{audit_schedule, delayed_block_schedule, DelayedTarget};

fn main() -> misobc::Result<()> {
    for k in 3..=6 {
        for target in [DelayedTarget::FourThirds, DelayedTarget::ThreeHalves] {
            let s = delayed_block_schedule(k, target)?;
            let a = audit_schedule(&s)?;
            let frac = &a.per_user_delayed_fraction[0];
            println!(
                "K={k} {target:?}: {} slots, delayed fraction {frac}, sum DoF {} (inner bound there: {})",
                s.slots.len(),
                a.sum_dof,
                inner_sum_dof_delayed(k, frac)?
            );
        }
    }

    let s = delayed_block_schedule(3, DelayedTarget::FourThirds)?;
    for slot in &s.slots[..3] {
        println!("t={} users {:?} feedback {:?}", slot.t, slot.active_users, slot.feedback);
    }
    Ok(())
}
