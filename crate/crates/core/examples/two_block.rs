//! Zero-forcing block followed by delayed-CSIT blocks: the cost/DoF tradeoff
//! for two antennas and three users, and time sharing between end points.
//!
//! ```text
//! cargo run --example two_block
//! ```

use misobc::bounds::min_cost_m2k3;
use misobc::scheduler::{audit_schedule, time_share, two_block_schedule};
use misobc::{ratio, Rational};

fn main() -> misobc::Result<()> {
    for deltas in [
        vec![ratio(0, 1); 3],
        vec![ratio(1, 6), ratio(1, 3), ratio(1, 2)],
        vec![ratio(1, 3); 3],
        vec![ratio(1, 2), ratio(1, 2), ratio(1, 2)],
        vec![ratio(1, 3), ratio(2, 3), ratio(1, 1)],
    ] {
        let s = two_block_schedule(&deltas)?;
        let a = audit_schedule(&s)?;
        let cost: Rational = deltas.iter().sum();
        println!(
            "δ={deltas:?}: {} slots, blocks {:?}, sum DoF {} (minimum cost for it: {})",
            s.slots.len(),
            s.blocks.iter().map(|b| (b.kind.as_str(), b.len())).collect::<Vec<_>>(),
            a.sum_dof,
            min_cost_m2k3(&a.sum_dof)?
        );
        assert_eq!(a.sum_dof, ratio(3, 2) + cost / Rational::from(4i64));
    }

    // mixing delayed-only (δ=0, 3/2) with full ZF (δ=2/3, 2)
    let (mix, dof) = time_share((&ratio(0, 1), &ratio(3, 2)), (&ratio(2, 3), &ratio(2, 1)), &ratio(1, 3))?;
    println!("time share at δ=1/3: weight {mix} on the delayed scheme, sum DoF {dof}");
    Ok(())
}
