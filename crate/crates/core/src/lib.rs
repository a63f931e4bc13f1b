//! Degrees-of-freedom versus CSIT-feedback tradeoffs for the K-user
//! `M × 1` MISO broadcast channel.
//!
//! * [`bounds`]: exact closed-form sum-DoF outer and inner bounds.
//! * [`region`]: the permutation-indexed DoF region, membership queries and
//!   exact sum-DoF maximization.
//! * [`scheduler`]: feedback schedules that reach the inner bounds, and an
//!   auditor that recomputes their cost and DoF.
//! * [`numerics`]: Monte Carlo checks of the matrix lemmas and of
//!   zero-forcing DoF slopes under imperfect CSIT.
//! * [`cli`]: the `misobc` command-line front end.
//!
//! Every exact quantity is a [`Rational`]; floating point only appears in
//! [`numerics`].

pub mod bounds;
pub mod cli;
pub mod error;
pub mod model;
pub mod numerics;
pub mod rational;
pub mod region;
pub mod scheduler;

pub use error::{Error, Result};
pub use model::{DoFPoint, FeedbackCost, FeedbackMode, FeedbackProfile, SystemConfig};
pub use rational::{ratio, Rational};
