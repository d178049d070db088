use std::fmt;

/// A single creator (`dagger = true`) or annihilator at an integer site.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CarOp {
    pub site: i64,
    pub dagger: bool,
}

impl CarOp {
    pub fn create(site: i64) -> Self {
        Self { site, dagger: true }
    }

    pub fn annihilate(site: i64) -> Self {
        Self { site, dagger: false }
    }

    pub fn adjoint(self) -> Self {
        Self { site: self.site, dagger: !self.dagger }
    }
}

impl fmt::Display for CarOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.dagger {
            write!(f, "a+[{}]", self.site)
        } else {
            write!(f, "a[{}]", self.site)
        }
    }
}

/// An ordered word of ladder operators; the empty word is the unit `I`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct CarMonomial(pub Vec<CarOp>);

impl CarMonomial {
    pub fn unit() -> Self {
        Self(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn factors(&self) -> &[CarOp] {
        &self.0
    }

    /// True when the word is Wick-ordered: creators first with strictly
    /// increasing sites, then annihilators with strictly decreasing sites.
    pub fn is_canonical(&self) -> bool {
        let split = self.0.iter().take_while(|op| op.dagger).count();
        let (creators, annihilators) = self.0.split_at(split);
        annihilators.iter().all(|op| !op.dagger)
            && creators.windows(2).all(|w| w[0].site < w[1].site)
            && annihilators.windows(2).all(|w| w[0].site > w[1].site)
    }

    /// Creator sites (ascending) and annihilator sites in the stored
    /// (descending) order.  Panics on non-canonical words.
    pub fn split_canonical(&self) -> (Vec<i64>, Vec<i64>) {
        assert!(self.is_canonical(), "monomial not Wick-ordered: {self}");
        let split = self.0.iter().take_while(|op| op.dagger).count();
        (
            self.0[..split].iter().map(|op| op.site).collect(),
            self.0[split..].iter().map(|op| op.site).collect(),
        )
    }

    /// All distinct sites touched by the word.
    pub fn support(&self) -> Vec<i64> {
        let mut sites: Vec<i64> = self.0.iter().map(|op| op.site).collect();
        sites.sort_unstable();
        sites.dedup();
        sites
    }
}

impl fmt::Display for CarMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "I");
        }
        let parts: Vec<String> = self.0.iter().map(|op| op.to_string()).collect();
        write!(f, "{}", parts.join("*"))
    }
}
