//! Vertices of the infinite-dimensional hypercube.
//!
//! A vertex is a maximal singular subset `X` of `Z\{0}`: for every `i >= 1`
//! exactly one of `i`, `-i` lies in `X`. It is stored as the sign function
//! `i -> ±1` with `sign(i)·i ∈ X`. Only eventually periodic sign functions
//! are representable: a periodic pattern anchored at index 1 plus a finite
//! set of overrides.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::window::Window;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn of(x: i64) -> Sign {
        if x < 0 {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flipped(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }

    pub fn from_char(c: char) -> Option<Sign> {
        match c {
            '+' => Some(Sign::Plus),
            '-' => Some(Sign::Minus),
            _ => None,
        }
    }
}

impl std::ops::Mul for Sign {
    type Output = Sign;

    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

/// Raw description of an eventually periodic sign function.
///
/// `pattern[r]` is the sign of every index `i` with `i ≡ r + 1 (mod period)`,
/// except where `overrides` says otherwise.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignRule {
    pub period: usize,
    pub pattern: Vec<Sign>,
    pub overrides: BTreeMap<u64, Sign>,
}

impl SignRule {
    pub fn periodic(pattern: Vec<Sign>) -> SignRule {
        SignRule {
            period: pattern.len(),
            pattern,
            overrides: BTreeMap::new(),
        }
    }

    fn validate(&self) -> Result<()> {
        if self.period == 0 {
            return Err(Error::InvalidRule("period must be at least 1".into()));
        }
        if self.pattern.len() != self.period {
            return Err(Error::InvalidRule(format!(
                "pattern length {} does not match period {}",
                self.pattern.len(),
                self.period
            )));
        }
        if self.overrides.contains_key(&0) {
            return Err(Error::InvalidRule(
                "override index must be at least 1".into(),
            ));
        }
        Ok(())
    }

    fn pattern_sign(&self, i: u64) -> Sign {
        self.pattern[((i - 1) % self.period as u64) as usize]
    }

    fn canonicalize(mut self) -> SignRule {
        let p = self.period;
        let minimal = (1..=p)
            .filter(|&d| p.is_multiple_of(d))
            .find(|&d| (0..p).all(|r| self.pattern[r] == self.pattern[r % d]))
            .unwrap_or(p);
        self.pattern.truncate(minimal);
        self.period = minimal;
        let overrides = std::mem::take(&mut self.overrides);
        self.overrides = overrides
            .into_iter()
            .filter(|&(i, s)| self.pattern_sign(i) != s)
            .collect();
        self
    }
}

/// A maximal singular subset of `Z\{0}` in canonical form.
///
/// Structural equality coincides with equality of the denoted sets.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Vertex {
    rule: SignRule,
}

/// Graph distance between two vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Distance {
    Finite(usize),
    Infinite,
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Finite(d) => write!(f, "{d}"),
            Distance::Infinite => f.write_str("infinity"),
        }
    }
}

impl Vertex {
    /// Validates and canonicalizes `rule`.
    pub fn new(rule: SignRule) -> Result<Vertex> {
        rule.validate()?;
        Ok(Vertex {
            rule: rule.canonicalize(),
        })
    }

    /// The basepoint `{1, 2, 3, …}`.
    pub fn basepoint() -> Vertex {
        Vertex::periodic(&[Sign::Plus])
    }

    /// `{1, -2, 3, -4, …}`.
    pub fn alternating() -> Vertex {
        Vertex::periodic(&[Sign::Plus, Sign::Minus])
    }

    /// Purely periodic vertex. Panics on an empty pattern.
    pub fn periodic(pattern: &[Sign]) -> Vertex {
        Vertex::new(SignRule::periodic(pattern.to_vec())).expect("pattern must be non-empty")
    }

    /// Builds a vertex agreeing with `tail` except on the listed elements.
    ///
    /// Fails if the elements contain 0 or both `i` and `-i`.
    pub fn from_elements<I: IntoIterator<Item = i64>>(
        elements: I,
        tail: &Vertex,
    ) -> Result<Vertex> {
        let mut signs = BTreeMap::new();
        for x in elements {
            if x == 0 {
                return Err(Error::ZeroElement);
            }
            let i = x.unsigned_abs();
            if let Some(prev) = signs.insert(i, Sign::of(x)) {
                if prev != Sign::of(x) {
                    return Err(Error::InvalidRule(format!(
                        "elements {i} and -{i} cannot both belong to a singular set"
                    )));
                }
            }
        }
        Ok(tail.with_signs(signs))
    }

    pub fn rule(&self) -> &SignRule {
        &self.rule
    }

    pub fn period(&self) -> usize {
        self.rule.period
    }

    pub fn pattern(&self) -> &[Sign] {
        &self.rule.pattern
    }

    pub fn overrides(&self) -> &BTreeMap<u64, Sign> {
        &self.rule.overrides
    }

    /// Sign of coordinate `i >= 1`.
    pub fn sign_at(&self, i: u64) -> Sign {
        debug_assert!(i >= 1);
        self.rule
            .overrides
            .get(&i)
            .copied()
            .unwrap_or_else(|| self.rule.pattern_sign(i))
    }

    /// The element of this vertex at coordinate `i`, i.e. `±i`.
    pub fn element_at(&self, i: u64) -> i64 {
        self.sign_at(i).value() * i as i64
    }

    pub fn contains(&self, x: i64) -> Result<bool> {
        if x == 0 {
            return Err(Error::ZeroElement);
        }
        Ok(self.sign_at(x.unsigned_abs()) == Sign::of(x))
    }

    /// The unique neighbor differing from `self` at coordinate `i`.
    pub fn flip(&self, i: u64) -> Result<Vertex> {
        if i == 0 {
            return Err(Error::InvalidIndex(0));
        }
        Ok(self.flip_at(i))
    }

    pub(crate) fn flip_at(&self, i: u64) -> Vertex {
        let mut rule = self.rule.clone();
        let new_sign = self.sign_at(i).flipped();
        if rule.pattern_sign(i) == new_sign {
            rule.overrides.remove(&i);
        } else {
            rule.overrides.insert(i, new_sign);
        }
        Vertex { rule }
    }

    /// Flips every coordinate in `indices`.
    pub fn flip_all<I: IntoIterator<Item = u64>>(&self, indices: I) -> Result<Vertex> {
        let mut v = self.clone();
        for i in indices {
            v = v.flip(i)?;
        }
        Ok(v)
    }

    /// Overwrites the sign at each listed coordinate (all must be `>= 1`).
    pub(crate) fn with_signs<I: IntoIterator<Item = (u64, Sign)>>(&self, signs: I) -> Vertex {
        let mut rule = self.rule.clone();
        for (i, s) in signs {
            debug_assert!(i >= 1);
            if rule.pattern_sign(i) == s {
                rule.overrides.remove(&i);
            } else {
                rule.overrides.insert(i, s);
            }
        }
        Vertex { rule }
    }

    /// Coordinates where the two sign functions differ, or `None` when there
    /// are infinitely many.
    ///
    /// Canonical patterns have minimal period, so two tails agree iff their
    /// patterns are identical; beyond that only override keys can differ.
    pub fn difference(&self, other: &Vertex) -> Option<BTreeSet<u64>> {
        if self.rule.pattern != other.rule.pattern {
            return None;
        }
        Some(
            self.rule
                .overrides
                .keys()
                .chain(other.rule.overrides.keys())
                .copied()
                .filter(|&i| self.sign_at(i) != other.sign_at(i))
                .collect(),
        )
    }

    pub fn same_component(&self, other: &Vertex) -> bool {
        self.rule.pattern == other.rule.pattern
    }

    pub fn adjacent(&self, other: &Vertex) -> bool {
        self.distance(other) == Distance::Finite(1)
    }

    pub fn distance(&self, other: &Vertex) -> Distance {
        match self.difference(other) {
            Some(d) => Distance::Finite(d.len()),
            None => Distance::Infinite,
        }
    }

    /// `flip(self, i)` for each `i` in the window, ascending.
    pub fn neighbors_in_window(&self, window: &Window) -> Vec<Vertex> {
        window.iter().map(|i| self.flip_at(i)).collect()
    }

    /// Every vertex reachable by flipping at most `radius` distinct
    /// coordinates of `window`, ordered by number of flips and then
    /// lexicographically by flipped coordinates.
    pub fn ball(&self, radius: usize, window: &Window) -> Vec<Vertex> {
        let coords: Vec<u64> = window.iter().collect();
        (0..=radius.min(coords.len()))
            .flat_map(|k| coords.iter().copied().combinations(k))
            .map(|flips| flips.into_iter().fold(self.clone(), |v, i| v.flip_at(i)))
            .collect()
    }
}

impl fmt::Display for Vertex {
    /// Lists the elements at coordinates `1..=max(period, last override)`
    /// followed by `…`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self
            .rule
            .overrides
            .keys()
            .next_back()
            .copied()
            .unwrap_or(0)
            .max(self.rule.period as u64);
        let shown: Vec<String> = (1..=last).map(|i| self.element_at(i).to_string()).collect();
        write!(f, "{{{},…}}", shown.join(","))
    }
}
