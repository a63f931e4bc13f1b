//! Randomized checks of the pivoted-QR diagonal bound, the permuted subset
//! determinant bound, and the log-det slope of a matrix with growing
//! singular values.
//!
//! ```text
//! cargo run --release --example lemma_checks
//! ```

use misobc::numerics::linalg::CMatrix;
use misobc::numerics::{lemma1_slope_check, lemma2_check, pivoted_qr_lemma2, verify_lemma2, verify_lemma3};

fn main() -> misobc::Result<()> {
    let ones = CMatrix::from_real_rows(&[&[1.0, 1.0], &[1.0, 1.0]]);
    let qr = pivoted_qr_lemma2(&ones);
    println!("all-ones: r11²={:.3}, r22={:.3}, {:?}", qr.r[(0, 0)].re.powi(2), qr.r[(1, 1)].re, lemma2_check(&ones));

    println!("{}", serde_json::to_string(&verify_lemma2(500, 1)).unwrap());
    println!("{}", serde_json::to_string(&verify_lemma3(100, 1)).unwrap());

    let grid = [40.0, 50.0, 60.0, 70.0];
    for b in [vec![1.0, 0.0], vec![0.5, 0.25, 0.0], vec![-0.5, 0.0]] {
        let (r, floored) = lemma1_slope_check(&b, &grid, 3000, 1, 0.1)?;
        println!("b={b:?}: slope {:.3}, predicted {}, floored {floored}", r.fit.slope, r.bound);
    }
    Ok(())
}
