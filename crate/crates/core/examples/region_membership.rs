//! Membership of DoF points in the outer region and the tightest permutation
//! constraint, checked against the exhaustive scan.
//!
//! ```text
//! cargo run --example region_membership
//! ```

use misobc::region::{evaluate_constraint, tightest_permutation, tightest_permutation_brute_force};
use misobc::{ratio, DoFPoint, SystemConfig};

fn main() -> misobc::Result<()> {
    let cfg = SystemConfig::new(2, 3)?;
    let alpha = vec![ratio(1, 1), ratio(1, 1), ratio(0, 1)];
    let points = [
        vec![ratio(1, 2), ratio(1, 2), ratio(1, 2)],
        vec![ratio(1, 1), ratio(1, 1), ratio(0, 1)],
        vec![ratio(1, 1), ratio(1, 1), ratio(1, 10)],
    ];
    for d in points {
        let p = DoFPoint::new(d)?;
        let v = tightest_permutation(cfg, &alpha, &p)?;
        assert_eq!(v, tightest_permutation_brute_force(cfg, &alpha, &p)?);
        println!(
            "d={:?}: inside={} slack={} tightest π={:?}",
            p.values(),
            v.inside,
            v.slack,
            v.tightest.permutation
        );
    }

    let p = DoFPoint::new(vec![ratio(1, 1), ratio(1, 1), ratio(1, 10)])?;
    let (lhs, rhs) = evaluate_constraint(cfg, &alpha, &p, &[1, 2, 3])?;
    println!("identity ordering alone: lhs={lhs} rhs={rhs}");
    Ok(())
}
