//! Window families `F_n` and `G_n` in the increasing-map monoid, with exact
//! cardinalities, translation ratios against closed-form lower bounds, a
//! generator-ball growth census, and the fixed-mass word census `A_n`.
//!
//! `F_n` collects the normal forms `th[-n]^h(-n) ... th[n]^h(n) t^l` with
//! total exponent mass at most `n^2` and `|l| <= n`; `G_n` is the variant
//! with the shift on the left.  All counting is exact (big integers and
//! rationals); enumeration is streaming and budget-guarded.

mod census;
mod counting;
mod enumerate;
mod growth;
mod klawe;
mod ratios;
pub mod report;

pub use census::{an_census, CensusReport};
pub use counting::{binomial, card_fn, right_ratio_lower_bound};
pub use enumerate::{enumerate_fn, enumerate_gn, in_fn, in_gn, Budget};
pub use growth::{growth_ball, GrowthReport, GROWTH_RADIUS_CAP};
pub use klawe::{klawe_witness, KlaweWitness};
pub use ratios::{left_ratio, right_ratio, standard_fixtures, RatioReport};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum FolnerError {
    #[error("enumeration budget exceeded: needs {needed} elements, cap is {cap}")]
    BudgetExceeded { needed: num_bigint::BigUint, cap: u64 },
    #[error("radius {radius} exceeds the growth cap {cap}")]
    RadiusExceeded { radius: u32, cap: u32 },
    #[error("invalid parameter: {0}")]
    BadParameter(String),
}
