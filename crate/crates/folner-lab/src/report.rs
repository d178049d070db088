//! Plain-text emitters for sweep results, shared by the command-line tools.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::{CensusReport, RatioReport};

/// Render a float with twelve significant digits, the fixed width used by
/// every machine-readable report in this workspace.
pub fn sig12(x: f64) -> String {
    format!("{:.11e}", x)
}

/// Convert an exact ratio to `f64`, scaling through big integers when the
/// parts individually overflow the float range.
pub fn rational_to_f64(r: &BigRational) -> f64 {
    if let Some(v) = r.to_f64() {
        if v.is_finite() {
            return v;
        }
    }
    let scale = BigInt::from(10u8).pow(18);
    let scaled = (r.numer() * &scale) / r.denom();
    scaled.to_f64().unwrap_or(f64::NAN) / 1e18
}

/// Exact `p/q` rendering (plain `p` when the ratio is integral).
pub fn rational_str(r: &BigRational) -> String {
    r.to_string()
}

/// CSV for translation-ratio sweeps.
pub fn ratio_csv(rows: &[RatioReport]) -> String {
    let mut out = String::from(
        "n,f,card,stayers,image_size,set_intersection,injective,ratio,ratio_approx,lower_bound,lower_bound_approx\n",
    );
    for row in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{}\n",
            row.n,
            row.f,
            row.card,
            row.stayers,
            row.image_size,
            row.set_intersection,
            row.injective,
            rational_str(&row.ratio),
            sig12(rational_to_f64(&row.ratio)),
            rational_str(&row.lower_bound),
            sig12(rational_to_f64(&row.lower_bound)),
        ));
    }
    out
}

/// CSV for the fixed-mass census.
pub fn census_csv(rows: &[CensusReport]) -> String {
    let mut out =
        String::from("n,count,expected,word_length,naive_word_length,words_verified,all_distinct\n");
    for row in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            row.n,
            row.count,
            row.expected,
            row.word_length,
            row.naive_word_length,
            row.words_verified,
            row.all_distinct,
        ));
    }
    out
}
