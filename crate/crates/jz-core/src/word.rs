use std::fmt;

use crate::{JElement, JzError};

/// One of the three monoid generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Gen {
    /// `t`: the full shift `k |-> k + 1`.
    Tau,
    /// `T`: its inverse `k |-> k - 1`.
    TauInv,
    /// `s`: the partial shift `th[0]`.
    Theta0,
}

impl Gen {
    pub fn element(self) -> JElement {
        match self {
            Gen::Tau => JElement::tau_power(1),
            Gen::TauInv => JElement::tau_power(-1),
            Gen::Theta0 => JElement::theta(0),
        }
    }

    pub fn letter(self) -> char {
        match self {
            Gen::Tau => 't',
            Gen::TauInv => 'T',
            Gen::Theta0 => 's',
        }
    }
}

/// A word in the generators, multiplied left to right (leftmost letter is the
/// outermost map: `l1 l2 ... ld` denotes `l1 ∘ l2 ∘ ... ∘ ld`).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GeneratorWord(pub Vec<Gen>);

impl GeneratorWord {
    /// Parse a string over the alphabet `{t, T, s}`; whitespace is ignored.
    pub fn parse(s: &str) -> Result<Self, JzError> {
        let mut letters = Vec::new();
        for ch in s.chars() {
            match ch {
                't' => letters.push(Gen::Tau),
                'T' => letters.push(Gen::TauInv),
                's' => letters.push(Gen::Theta0),
                c if c.is_whitespace() => {}
                c => return Err(JzError::Parse(format!("invalid generator letter `{c}`"))),
            }
        }
        Ok(GeneratorWord(letters))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Multiply the word out into a normal form.
    pub fn to_element(&self) -> JElement {
        let mut acc = JElement::identity();
        for g in &self.0 {
            acc = acc.compose(&g.element());
        }
        acc
    }
}

impl fmt::Display for GeneratorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for g in &self.0 {
            write!(f, "{}", g.letter())?;
        }
        Ok(())
    }
}
