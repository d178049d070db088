use std::collections::BTreeMap;

use jz_core::JElement;
use num_traits::ToPrimitive;

use crate::{card_fn, FolnerError};

/// Guard for streaming enumerations; the default keeps every supported
/// workload comfortably inside memory and time limits.
#[derive(Debug, Clone, Copy)]
pub struct Budget {
    pub max_elements: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_elements: 20_000_000 }
    }
}

/// Stream `F_n` in a fixed deterministic order: shift `l` ascending from
/// `-n` to `n`, and for each shift the exponent vectors
/// `(h(-n), ..., h(n))` in lexicographic order.
pub fn enumerate_fn(
    n: u32,
    budget: Budget,
) -> Result<impl Iterator<Item = JElement>, FolnerError> {
    check(n, budget)?;
    Ok(WindowIter::new(n, false))
}

/// Stream `G_n` (shift on the left: `t^l H`, i.e. the conjugated block
/// `th[m+l] ...` followed by `t^l`) in the same `(l, h)` order.
pub fn enumerate_gn(
    n: u32,
    budget: Budget,
) -> Result<impl Iterator<Item = JElement>, FolnerError> {
    check(n, budget)?;
    Ok(WindowIter::new(n, true))
}

/// Membership test for `F_n`.
pub fn in_fn(e: &JElement, n: u32) -> bool {
    let n = n as i64;
    e.shift().abs() <= n
        && e.theta_mass() <= (n * n) as u64
        && e.exponents().keys().all(|&m| m.abs() <= n)
}

/// Membership test for `G_n`: `t^l H` in normal form is the block shifted
/// by `l`, so the support window moves with the shift.
pub fn in_gn(e: &JElement, n: u32) -> bool {
    let n = n as i64;
    let l = e.shift();
    l.abs() <= n
        && e.theta_mass() <= (n * n) as u64
        && e.exponents().keys().all(|&m| (m - l).abs() <= n)
}

fn check(n: u32, budget: Budget) -> Result<(), FolnerError> {
    if n == 0 {
        return Err(FolnerError::BadParameter("window index n must be >= 1".into()));
    }
    let needed = card_fn(n);
    if needed.to_u64().map_or(true, |v| v > budget.max_elements) {
        return Err(FolnerError::BudgetExceeded { needed, cap: budget.max_elements });
    }
    Ok(())
}

struct WindowIter {
    n: i64,
    mass_cap: u64,
    left_shift: bool,
    l: i64,
    h: Vec<u64>,
    mass: u64,
    done: bool,
    fresh: bool,
}

impl WindowIter {
    fn new(n: u32, left_shift: bool) -> Self {
        let n = n as i64;
        WindowIter {
            n,
            mass_cap: (n * n) as u64,
            left_shift,
            l: -n,
            h: vec![0; (2 * n + 1) as usize],
            mass: 0,
            done: false,
            fresh: true,
        }
    }

    fn current(&self) -> JElement {
        let offset = if self.left_shift { self.l } else { 0 };
        let exponents: BTreeMap<i64, u64> = self
            .h
            .iter()
            .enumerate()
            .filter(|(_, &p)| p > 0)
            .map(|(i, &p)| (i as i64 - self.n + offset, p))
            .collect();
        JElement::from_parts(exponents, self.l).expect("positive exponents by construction")
    }

    /// Advance `h` to its lexicographic successor under the mass cap;
    /// rolls the shift `l` forward when the vectors are exhausted.
    fn advance(&mut self) -> bool {
        let mut j = self.h.len();
        loop {
            if j == 0 {
                self.h.iter_mut().for_each(|v| *v = 0);
                self.mass = 0;
                self.l += 1;
                return self.l <= self.n;
            }
            j -= 1;
            if self.mass + 1 <= self.mass_cap {
                self.h[j] += 1;
                self.mass += 1;
                return true;
            }
            self.mass -= self.h[j];
            self.h[j] = 0;
        }
    }
}

impl Iterator for WindowIter {
    type Item = JElement;

    fn next(&mut self) -> Option<JElement> {
        if self.done {
            return None;
        }
        if self.fresh {
            self.fresh = false;
            return Some(self.current());
        }
        if self.advance() {
            Some(self.current())
        } else {
            self.done = true;
            None
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn enumeration_count_matches_formula() {
        for n in 1..=3u32 {
            let all: Vec<JElement> = enumerate_fn(n, Budget::default()).unwrap().collect();
            assert_eq!(
                num_bigint::BigUint::from(all.len()),
                card_fn(n),
                "n={n}"
            );
            let set: HashSet<&JElement> = all.iter().collect();
            assert_eq!(set.len(), all.len(), "duplicates at n={n}");
            assert!(all.iter().all(|e| in_fn(e, n)));
        }
    }

    #[test]
    fn gn_count_matches_formula() {
        for n in 1..=3u32 {
            let all: Vec<JElement> = enumerate_gn(n, Budget::default()).unwrap().collect();
            assert_eq!(num_bigint::BigUint::from(all.len()), card_fn(n));
            let set: HashSet<&JElement> = all.iter().collect();
            assert_eq!(set.len(), all.len());
            assert!(all.iter().all(|e| in_gn(e, n)));
        }
    }

    #[test]
    fn first_window_lists_every_member() {
        let all: Vec<String> =
            enumerate_fn(1, Budget::default()).unwrap().map(|e| e.render()).collect();
        assert_eq!(all.len(), 12);
        assert_eq!(all[0], "t^-1");
        assert!(all.contains(&"e".to_string()));
        assert!(all.contains(&"th[-1] t^-1".to_string()));
        assert!(all.contains(&"th[1] t^1".to_string()));
    }

    #[test]
    fn budget_guard_trips() {
        // |F_2| = 630, so a cap of 100 must refuse before enumerating.
        let tight = Budget { max_elements: 100 };
        assert!(matches!(
            enumerate_fn(2, tight).map(|_| ()),
            Err(FolnerError::BudgetExceeded { .. })
        ));
        assert!(enumerate_fn(2, Budget::default()).is_ok());
    }

    #[test]
    fn left_and_right_windows_are_conjugate() {
        // Every g = t^l H in G_n satisfies t^-l ∘ g = H, a block in F_n;
        // conversely H t^l in F_n gives t^l ∘ (t^-l ∘ H t^l) back in G_n.
        let g2: Vec<JElement> = enumerate_gn(2, Budget::default()).unwrap().collect();
        for e in &g2 {
            let block = jz_core::JElement::tau_power(-e.shift()).compose(e);
            assert_eq!(block.shift(), 0);
            assert!(in_fn(&block, 2), "G_2 member {e} has block outside F_2");
        }
        let f2: HashSet<JElement> = enumerate_fn(2, Budget::default()).unwrap().collect();
        let rebuilt: HashSet<JElement> = g2
            .iter()
            .map(|e| {
                let block = jz_core::JElement::tau_power(-e.shift()).compose(e);
                block.compose(&jz_core::JElement::tau_power(e.shift()))
            })
            .collect();
        assert_eq!(rebuilt, f2);
    }
}
