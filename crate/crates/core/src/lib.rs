//! Finite-scale diagnostics for the order and independence properties of a
//! real-valued formula, read off an exact rational evaluation matrix.
//!
//! Searches return checkable witnesses: staircases for the order property,
//! shattered row sets for independence. Around them sit an exact simplex
//! solver for the convex-mean, Mazur and gauge computations, Ramsey and
//! pigeonhole extraction, the monotone-table approximation of a target
//! column, and a classifier that turns ranks into verdicts.

pub mod classify;
pub mod cli;
pub mod convex;
pub mod csv_io;
pub mod definable;
pub mod error;
pub mod generate;
pub mod independence;
pub mod lp;
pub mod matrix;
pub mod order;
pub mod ramsey;
pub mod rational;
pub mod report;
pub mod witness;

pub use classify::{classify, ClassificationParams, Report};
pub use error::{Error, Result};
pub use independence::{independence_rank, ip_to_op, l1_lower_cert};
pub use matrix::{validate_matrix, EvalMatrix};
pub use order::{defect_profile, order_rank};
pub use rational::Rational;
pub use witness::{
    check_shatter, check_staircase, Check, CoefVector, Orientation, ShatterWitness,
    StaircaseWitness, ThresholdPair,
};
