//! The monoid of strictly increasing self-maps of `Z` with cofinite range.
//!
//! Elements are stored in a canonical normal form: a finite product of
//! partial shifts `th[m]` with strictly increasing indices and positive
//! exponents, followed by a power of the full shift `t`,
//!
//! ```text
//! th[m1]^p1 th[m2]^p2 ... th[mr]^pr t^l      (m1 < m2 < ... < mr, pi >= 1)
//! ```
//!
//! where `t(k) = k + 1` and `th[m]` fixes everything below `m` and shifts
//! everything from `m` up by one.  Products are function composition with
//! `f * g` meaning "`f` after `g`"; normalization uses the rewriting rule
//! `th[k] th[l] = th[l] th[k-1]` for `l < k` together with
//! `t^l th[m] t^-l = th[m+l]`.
//!
//! The normal form is complete: two elements are equal as maps if and only
//! if their normal forms coincide (see the property tests).

mod element;
mod word;

pub use element::JElement;
pub use word::{Gen, GeneratorWord};

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum JzError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("not a normal form: {0}")]
    NotNormalForm(String),
}
