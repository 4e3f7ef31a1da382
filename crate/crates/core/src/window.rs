use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A finite set of positive coordinates, iterated in ascending order.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Window(BTreeSet<u64>);

impl Window {
    pub fn new<I: IntoIterator<Item = u64>>(indices: I) -> Result<Self> {
        let set: BTreeSet<u64> = indices.into_iter().collect();
        if set.contains(&0) {
            return Err(Error::InvalidWindow("coordinate 0 is not allowed".into()));
        }
        Ok(Window(set))
    }

    /// `{1, …, n}`.
    pub fn range(n: u64) -> Self {
        Window((1..=n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, i: u64) -> bool {
        self.0.contains(&i)
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.0.iter().copied()
    }

    pub fn is_superset(&self, other: &Window) -> bool {
        self.0.is_superset(&other.0)
    }

    pub fn as_set(&self) -> &BTreeSet<u64> {
        &self.0
    }
}

/// Accepts `1..N` (inclusive) or a comma separated list such as `1,3,7`.
impl FromStr for Window {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = |msg: &str| Error::InvalidWindow(format!("{msg}: {s:?}"));
        if s.is_empty() {
            return Ok(Window::default());
        }
        if let Some((lo, hi)) = s.split_once("..") {
            let lo: u64 = lo.trim().parse().map_err(|_| bad("bad range start"))?;
            let hi: u64 = hi.trim().parse().map_err(|_| bad("bad range end"))?;
            if lo == 0 {
                return Err(bad("range must start at 1 or later"));
            }
            return Window::new(lo..=hi);
        }
        let items = s
            .split(',')
            .map(|t| t.trim().parse::<u64>().map_err(|_| bad("bad list entry")))
            .collect::<Result<Vec<_>>>()?;
        Window::new(items)
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u64::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl FromIterator<u64> for Window {
    /// Panics on a zero coordinate; use [`Window::new`] for fallible input.
    fn from_iter<I: IntoIterator<Item = u64>>(iter: I) -> Self {
        Window::new(iter).expect("window coordinates must be positive")
    }
}
