use std::collections::HashSet;

use jz_core::{Gen, JElement};

use crate::FolnerError;

/// Hard cap on the ball radius; beyond this the dedup set outgrows the
/// enumeration budget quickly.
pub const GROWTH_RADIUS_CAP: u32 = 12;

#[derive(Debug, Clone)]
pub struct GrowthReport {
    /// `ball[r]` = number of distinct elements spelled by generator words of
    /// length at most `r`, for `r = 0..=radius`.
    pub ball: Vec<u64>,
}

impl GrowthReport {
    pub fn strictly_increasing(&self) -> bool {
        self.ball.windows(2).all(|w| w[0] < w[1])
    }
}

/// Breadth-first closure of `{t, T, s}` words up to the given radius,
/// deduplicated through normal forms.
pub fn growth_ball(radius: u32) -> Result<GrowthReport, FolnerError> {
    if radius > GROWTH_RADIUS_CAP {
        return Err(FolnerError::RadiusExceeded { radius, cap: GROWTH_RADIUS_CAP });
    }
    let generators = [Gen::Tau, Gen::TauInv, Gen::Theta0].map(|g| g.element());
    let mut seen: HashSet<JElement> = HashSet::new();
    seen.insert(JElement::identity());
    let mut frontier: Vec<JElement> = vec![JElement::identity()];
    let mut ball = vec![1u64];
    for _ in 1..=radius {
        let mut next = Vec::new();
        for w in &frontier {
            for g in &generators {
                let candidate = w.compose(g);
                if seen.insert(candidate.clone()) {
                    next.push(candidate);
                }
            }
        }
        frontier = next;
        ball.push(seen.len() as u64);
    }
    Ok(GrowthReport { ball })
}
