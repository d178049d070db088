use jz_core::JElement;

use crate::FolnerError;

/// A non-cancellation certificate: two distinct elements `f != g` with
/// `f s = g s` for the common right factor `s`.
#[derive(Debug, Clone)]
pub struct KlaweWitness {
    pub f: JElement,
    pub g: JElement,
    pub s: JElement,
    pub fs: JElement,
    pub gs: JElement,
    /// True when `f != g` yet the two products agree both as normal forms
    /// and pointwise on a window covering all their supports.
    pub holds: bool,
}

/// Build the witness at position `j`: `f = th[j]`, `g = s = th[j-1]`.
/// Both products collapse to `th[j-1]^2`, so right translation by `s`
/// identifies two distinct elements.
pub fn klawe_witness(j: i64) -> Result<KlaweWitness, FolnerError> {
    if j.checked_sub(1).is_none() {
        return Err(FolnerError::BadParameter(format!(
            "witness index {j} underflows"
        )));
    }
    let f = JElement::theta(j);
    let g = JElement::theta(j - 1);
    let s = g.clone();
    let fs = f.compose(&s);
    let gs = g.compose(&s);
    let window = j.abs() + 3;
    let pointwise_equal =
        (-window..=window).all(|k| fs.apply(k) == gs.apply(k));
    let holds = f != g && fs == gs && pointwise_equal;
    Ok(KlaweWitness { f, g, s, fs, gs, holds })
}
