//! Per-slot CSIT quality exponents, their averages and the feedback cost.
//!
//! ```text
//! cargo run --example feedback_profile
//! ```

use misobc::model::parse_rational_vector;
use misobc::{FeedbackMode, FeedbackProfile};

fn main() -> misobc::Result<()> {
    // three users, four slots; 1 = perfect current CSIT, 0 = none
    let rows = vec![
        parse_rational_vector("1,0,0,0")?,
        parse_rational_vector("1,1,0,1")?,
        parse_rational_vector("0,1,1,1")?,
    ];
    let profile = FeedbackProfile::from_slots(rows, FeedbackMode::AlternatingPerfect)?;
    for (u, a) in profile.averages().iter().enumerate() {
        println!("user {}: average quality {a}", u + 1);
    }
    println!("total perfect-CSIT cost: {}", profile.cost()?.total);

    // partial-quality exponents are allowed outside the alternating mode
    let graded = FeedbackProfile::from_slots(
        vec![parse_rational_vector("0.5,1/4")?, parse_rational_vector("1,0")?],
        FeedbackMode::Quality,
    )?;
    println!("graded averages: {:?}", graded.averages());
    Ok(())
}
