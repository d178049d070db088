use std::collections::{BTreeMap, HashSet};

use jz_core::{Gen, GeneratorWord, JElement};
use num_bigint::BigUint;

use crate::{binomial, FolnerError};

/// Census of the fixed-mass family `A_n`: blocks
/// `th[-n]^h(-n) ... th[n]^h(n)` with every exponent >= 1 and total mass
/// `3n + 1`.
#[derive(Debug, Clone)]
pub struct CensusReport {
    pub n: u32,
    /// Distinct normal forms found (always equals `expected`).
    pub count: u64,
    /// `C(3n, n)`, the number of compositions of `3n+1` into `2n+1` parts.
    pub expected: BigUint,
    pub all_distinct: bool,
    /// Length of the canonical generator spelling of each member:
    /// `T^n s^h(-n) t s^h(-n+1) t ... t s^h(n) T^n`.
    pub word_length: u64,
    /// The naive letter count `7n` forgets one trailing `T`; the verified
    /// length is `7n + 1`.  Kept so reports can flag the off-by-one.
    pub naive_word_length: u64,
    pub words_verified: bool,
}

/// Enumerate `A_n`, spell every member canonically in the generators,
/// multiply the words back out, and certify distinctness.
pub fn an_census(n: u32) -> Result<CensusReport, FolnerError> {
    if n == 0 || n > 6 {
        return Err(FolnerError::BadParameter(format!(
            "census index n must be in 1..=6, got {n}"
        )));
    }
    let slots = (2 * n + 1) as usize;
    let mass = 3 * n as u64 + 1;
    let mut seen: HashSet<JElement> = HashSet::new();
    let mut words_verified = true;
    let mut word_length = 0u64;
    for h in positive_compositions(mass, slots) {
        let exponents: BTreeMap<i64, u64> =
            h.iter().enumerate().map(|(i, &p)| (i as i64 - n as i64, p)).collect();
        let element = JElement::from_parts(exponents, 0).expect("positive parts");
        let word = canonical_word(n, &h);
        word_length = word.len() as u64;
        if word.to_element() != element {
            words_verified = false;
        }
        seen.insert(element);
    }
    let expected = binomial(3 * n as u64, n as u64);
    Ok(CensusReport {
        n,
        count: seen.len() as u64,
        all_distinct: BigUint::from(seen.len()) == expected,
        expected,
        word_length,
        naive_word_length: 7 * n as u64,
        words_verified,
    })
}

/// `T^n s^h(-n) t s^h(-n+1) t ... t s^h(n) T^n`: each block `th[i]^h`
/// is conjugated to the base generator, `th[i] = t^i s t^-i`, and the
/// interior shifts collapse pairwise.
fn canonical_word(n: u32, h: &[u64]) -> GeneratorWord {
    let mut letters = Vec::new();
    letters.extend(std::iter::repeat(Gen::TauInv).take(n as usize));
    for (i, &p) in h.iter().enumerate() {
        if i > 0 {
            letters.push(Gen::Tau);
        }
        letters.extend(std::iter::repeat(Gen::Theta0).take(p as usize));
    }
    letters.extend(std::iter::repeat(Gen::TauInv).take(n as usize));
    GeneratorWord(letters)
}

/// All vectors of `slots` positive integers summing to `mass`, lexicographic.
fn positive_compositions(mass: u64, slots: usize) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    let mut current = vec![1u64; slots];
    fill(&mut out, &mut current, 0, mass - slots as u64);
    out
}

fn fill(out: &mut Vec<Vec<u64>>, current: &mut Vec<u64>, pos: usize, extra: u64) {
    if pos + 1 == current.len() {
        current[pos] = 1 + extra;
        out.push(current.clone());
        current[pos] = 1;
        return;
    }
    for e in 0..=extra {
        current[pos] = 1 + e;
        fill(out, current, pos + 1, extra - e);
    }
    current[pos] = 1;
}
