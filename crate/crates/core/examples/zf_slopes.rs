//! Monte Carlo zero-forcing rates with imperfect CSIT and the fitted DoF
//! slope.
//!
//! ```text
//! cargo run --release --example zf_slopes
//! ```

use misobc::numerics::{parse_snr_grid, zf_slope_check, ZfMetric};
use misobc::SystemConfig;

fn main() -> misobc::Result<()> {
    let grid = parse_snr_grid("30:70:10")?;
    let cfg = SystemConfig::new(2, 2)?;
    for alpha in [0.0, 0.5, 1.0] {
        let (r, resampled) = zf_slope_check(cfg, &[alpha, alpha], ZfMetric::Sum, &grid, 1500, 1, 0.15)?;
        println!("α={alpha}: sum slope {:.3} ± {:.3} (predicted {}, resampled {resampled})", r.fit.slope, r.fit.stderr, r.bound);
        print!("{}", r.to_csv());
    }
    let (r, _) = zf_slope_check(cfg, &[0.5, 0.5], ZfMetric::User(2), &grid, 1500, 1, 0.1)?;
    println!("α=0.5 user 2 slope {:.3}: {}", r.fit.slope, r.summary_json());
    Ok(())
}
