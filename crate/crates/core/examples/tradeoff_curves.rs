//! Inner/outer sum-DoF curves as CSV, for alternating perfect CSIT and for
//! delayed CSIT only.
//!
//! ```text
//! cargo run --example tradeoff_curves > curves.csv
//! ```

use misobc::cli::{curve_csv, curve_rows, CurveMode};
use misobc::{ratio, Rational, SystemConfig};

fn main() -> misobc::Result<()> {
    for (m, k) in [(2, 3), (2, 5), (3, 3)] {
        let rows = curve_rows(SystemConfig::new(m, k)?, CurveMode::Alternating, 9, &Rational::one())?;
        println!("# alternating M={m} K={k}");
        print!("{}", curve_csv(&rows));
    }
    let rows = curve_rows(SystemConfig::new(2, 4)?, CurveMode::Delayed, 9, &ratio(1, 2))?;
    println!("# delayed M=2 K=4");
    print!("{}", curve_csv(&rows));
    Ok(())
}
