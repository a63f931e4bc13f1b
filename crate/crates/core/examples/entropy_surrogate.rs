//! Gaussian log-det surrogate of the entropy-difference bound for several
//! transmit covariances.
//!
//! ```text
//! cargo run --release --example entropy_surrogate
//! ```

use misobc::numerics::{prop4_slope_check, PsiKind};

fn main() -> misobc::Result<()> {
    let grid = [30.0, 40.0, 50.0, 60.0, 70.0];
    for (m, l) in [(2, 1), (3, 1), (3, 2)] {
        for psi in PsiKind::ALL {
            for alpha in [0.0, 0.5, 1.0] {
                let fit = prop4_slope_check(m, l, 2, &vec![alpha; l], psi, &grid, 2000, 5, 0.1)?;
                println!(
                    "m={m} l={l} {:<16} α={alpha}: slope {:+.3} vs bound {:.2} -> {}",
                    psi.as_str(),
                    fit.report.fit.slope,
                    fit.report.bound,
                    if fit.report.pass { "ok" } else { "exceeds" }
                );
            }
        }
    }
    Ok(())
}
