use std::collections::BTreeMap;
use std::fmt;

use crate::JzError;

/// A strictly increasing map `Z -> Z` with cofinite range, in normal form.
///
/// The map represented by exponents `{m -> h_m}` and shift `l` is
/// `k |-> k + l + sum of h_m over m <= k + l`.
///
/// Index and shift arithmetic is done on machine integers with checked
/// operations; composing elements whose coordinates approach `i64`/`u64`
/// range panics rather than wrapping.  All supported workloads keep
/// coordinates tiny, while the counting layers upstream switch to big
/// integers where values genuinely grow.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct JElement {
    /// Exponent of `th[m]` for each index `m` in the support; values >= 1.
    exponents: BTreeMap<i64, u64>,
    /// Power of the full shift `t` on the right of the normal form.
    shift: i64,
}

impl JElement {
    /// The identity map.
    pub fn identity() -> Self {
        JElement { exponents: BTreeMap::new(), shift: 0 }
    }

    /// The partial shift `th[m]`: fixes `k < m`, maps `k |-> k + 1` for `k >= m`.
    pub fn theta(m: i64) -> Self {
        JElement { exponents: BTreeMap::from([(m, 1)]), shift: 0 }
    }

    /// `th[m]^p` (`p = 0` gives the identity).
    pub fn theta_pow(m: i64, p: u64) -> Self {
        if p == 0 {
            return Self::identity();
        }
        JElement { exponents: BTreeMap::from([(m, p)]), shift: 0 }
    }

    /// The full shift power `t^l`.
    pub fn tau_power(l: i64) -> Self {
        JElement { exponents: BTreeMap::new(), shift: l }
    }

    /// The co-shift `ps[h]`: fixes `k > h`, maps `k |-> k - 1` for `k <= h`.
    /// Equals `th[h] t^-1` in normal form.
    pub fn psi(h: i64) -> Self {
        JElement { exponents: BTreeMap::from([(h, 1)]), shift: -1 }
    }

    /// Build directly from a normal form; rejects zero exponents.
    pub fn from_parts(exponents: BTreeMap<i64, u64>, shift: i64) -> Result<Self, JzError> {
        if exponents.values().any(|&p| p == 0) {
            return Err(JzError::NotNormalForm("zero exponent in th-block".into()));
        }
        Ok(JElement { exponents, shift })
    }

    pub fn is_identity(&self) -> bool {
        self.exponents.is_empty() && self.shift == 0
    }

    pub fn exponents(&self) -> &BTreeMap<i64, u64> {
        &self.exponents
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    /// Total exponent mass of the `th`-block (the number of points missing
    /// from the range equals this).
    pub fn theta_mass(&self) -> u64 {
        self.exponents.values().copied().sum()
    }

    /// Largest absolute value of a support index, 0 for an empty block.
    pub fn max_abs_support(&self) -> i64 {
        self.exponents.keys().map(|m| m.abs()).max().unwrap_or(0)
    }

    /// Evaluate the map at `k`.
    pub fn apply(&self, k: i64) -> i64 {
        let shifted = k.checked_add(self.shift).expect("point evaluation overflow");
        let mass: u64 = self.exponents.range(..=shifted).map(|(_, &p)| p).sum();
        let out = shifted as i128 + mass as i128;
        i128_to_i64(out, "point evaluation overflow")
    }

    /// Composition `self . g` ("self after g").
    ///
    /// With `self = H t^a` and `g = K t^b`, this is `H * (t^a K t^-a) * t^(a+b)`,
    /// and the interior conjugate shifts every index of `K` by `a`; the two
    /// `th`-blocks are then merged by the rewriting rule.
    pub fn compose(&self, g: &JElement) -> JElement {
        let mut block = self.exponents.clone();
        for (&m, &p) in &g.exponents {
            let idx = m.checked_add(self.shift).expect("index overflow in composition");
            right_multiply_theta(&mut block, idx, p);
        }
        let shift = self.shift.checked_add(g.shift).expect("shift overflow in composition");
        JElement { exponents: block, shift }
    }

    /// Render the normal form, e.g. `th[-1]^2 th[0] t^-3`; the identity is `e`.
    pub fn render(&self) -> String {
        self.to_string()
    }

    /// Parse a normal form as produced by [`JElement::render`].
    ///
    /// Tokens are whitespace-separated: `th[m]` or `th[m]^p` factors with
    /// strictly increasing indices, then at most one trailing `t^l` (the
    /// shorthands `t` and `T` mean `t^1` and `t^-1`).  The single token `e`
    /// is the identity.
    pub fn parse(s: &str) -> Result<Self, JzError> {
        let tokens: Vec<&str> = s.split_whitespace().collect();
        if tokens.is_empty() {
            return Err(JzError::Parse("empty input".into()));
        }
        if tokens == ["e"] {
            return Ok(Self::identity());
        }
        let mut exponents = BTreeMap::new();
        let mut shift = 0i64;
        let mut seen_tau = false;
        let mut last_index: Option<i64> = None;
        for tok in tokens {
            if seen_tau {
                return Err(JzError::NotNormalForm(format!("token `{tok}` after the t-power")));
            }
            if let Some(rest) = tok.strip_prefix("th[") {
                let (idx_str, exp_str) = match rest.split_once(']') {
                    Some((i, r)) => (i, r),
                    None => return Err(JzError::Parse(format!("unterminated index in `{tok}`"))),
                };
                let m: i64 = idx_str
                    .parse()
                    .map_err(|_| JzError::Parse(format!("bad index in `{tok}`")))?;
                let p: u64 = match exp_str {
                    "" => 1,
                    s => s
                        .strip_prefix('^')
                        .and_then(|e| e.parse().ok())
                        .ok_or_else(|| JzError::Parse(format!("bad exponent in `{tok}`")))?,
                };
                if p == 0 {
                    return Err(JzError::NotNormalForm(format!("zero exponent in `{tok}`")));
                }
                if last_index.is_some_and(|prev| prev >= m) {
                    return Err(JzError::NotNormalForm(format!(
                        "indices must be strictly increasing at `{tok}`"
                    )));
                }
                last_index = Some(m);
                exponents.insert(m, p);
            } else if tok == "t" {
                shift = 1;
                seen_tau = true;
            } else if tok == "T" {
                shift = -1;
                seen_tau = true;
            } else if let Some(rest) = tok.strip_prefix("t^") {
                shift = rest
                    .parse()
                    .map_err(|_| JzError::Parse(format!("bad shift in `{tok}`")))?;
                seen_tau = true;
            } else {
                return Err(JzError::Parse(format!("unrecognized token `{tok}`")));
            }
        }
        Ok(JElement { exponents, shift })
    }

    /// A window `[-B, B]` on which this element is guaranteed to differ
    /// pointwise from any other element it differs from at all, provided
    /// both elements' windows are joined (take the max of the two bounds).
    pub fn separation_bound(&self) -> i64 {
        let sup = self.max_abs_support();
        let mass = self.theta_mass().min(i64::MAX as u64) as i64;
        sup.saturating_add(self.shift.abs()).saturating_add(mass).saturating_add(2)
    }
}

/// Multiply `block` by `th[b]^t` on the right and renormalize.
///
/// Sliding the new factors left with `th[k] th[b] = th[b] th[k-1]` (`b < k`)
/// decrements every passed index once per copy, so a factor at `m > b` lands
/// at `max(b, m - t)`; everything reaching `b` merges there.
fn right_multiply_theta(block: &mut BTreeMap<i64, u64>, b: i64, t: u64) {
    if t == 0 {
        return;
    }
    let moved: Vec<(i64, u64)> = block
        .range((std::ops::Bound::Excluded(b), std::ops::Bound::Unbounded))
        .map(|(&m, &p)| (m, p))
        .collect();
    for (m, _) in &moved {
        block.remove(m);
    }
    let mut at_b = t;
    for (m, p) in moved {
        let dist = (m as i128) - (b as i128); // >= 1
        if dist <= t as i128 {
            at_b = at_b.checked_add(p).expect("exponent overflow in composition");
        } else {
            let idx = i128_to_i64(m as i128 - t as i128, "index overflow in composition");
            block.insert(idx, p);
        }
    }
    let slot = block.entry(b).or_insert(0);
    *slot = slot.checked_add(at_b).expect("exponent overflow in composition");
}

fn i128_to_i64(v: i128, msg: &str) -> i64 {
    i64::try_from(v).unwrap_or_else(|_| panic!("{msg}"))
}

impl fmt::Display for JElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return write!(f, "e");
        }
        let mut parts: Vec<String> = Vec::new();
        for (&m, &p) in &self.exponents {
            if p == 1 {
                parts.push(format!("th[{m}]"));
            } else {
                parts.push(format!("th[{m}]^{p}"));
            }
        }
        if self.shift != 0 {
            parts.push(format!("t^{}", self.shift));
        }
        write!(f, "{}", parts.join(" "))
    }
}
