//! Averaging the stationary quasi-free state over the windows `F_n`.
//!
//! The averaged state `omega_n = |F_n|^-1 sum_{h in F_n} omega . alpha_h`
//! is computed exactly: under a window element the image of a site tuple
//! depends only on the shift and on block sums of the exponent vector, so
//! the distribution of the image gaps is a ratio of binomial counts.  The
//! combinatorial side (gap laws, profiles) stays in big rationals; the one
//! irrational scale `C = 1/opnorm` and the phase enter only when a value is
//! finally assembled, so every profile identity can be asserted exactly.
//!
//! On top of the averaging sit the three classification witnesses: the
//! stationary state is not spreadable (pair values at distance one and two
//! disagree by a factor of four), the averaged states are antisymmetric in
//! the pair direction at every `n` (so no limit point is symmetric), and
//! the vacuum is separated from all of them on the position subalgebra.

mod average;
mod law;
mod profile;
mod witness;

pub use average::{
    averaged_eval, averaged_pair_backward, averaged_pair_value, spreadability_residual,
    AveragedValue,
};
pub use law::{image_law, ImageLawQuery, LAW_SITE_CAP, LAW_STATE_CAP, N_CAP};
pub use profile::{gap_profile, GapProfile};
pub use witness::{classification_witnesses, WitnessReport};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum SpreadError {
    #[error("monomial support has {got} sites, cap is {cap}")]
    SiteCap { got: usize, cap: usize },
    #[error("window index {n} exceeds the cap of {cap}")]
    WindowCap { n: u32, cap: u32 },
    #[error("image law needs about {estimate} states, cap is {cap}")]
    StateBudget { estimate: u128, cap: u64 },
    #[error("sites must be strictly increasing and nonempty")]
    BadSites,
    #[error(transparent)]
    Car(#[from] car_wick::CarError),
    #[error(transparent)]
    Jz(#[from] jz_core::JzError),
}
