//! Finitely supported symplectic permutations of `Z\{0}`.
//!
//! A permutation `s` is symplectic when `s(-i) = -s(i)`. Only the images of
//! positive moved points are stored; the odd extension is implicit. The
//! same group is described by [`WreathPair`]: a permutation of coordinates
//! followed by a finite set of sign flips.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_integer::Integer;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::vertex::{Sign, Vertex};

#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SymplecticPerm {
    moves: BTreeMap<u64, i64>,
}

impl SymplecticPerm {
    pub fn identity() -> SymplecticPerm {
        SymplecticPerm::default()
    }

    /// Builds a permutation from images of positive points.
    ///
    /// Entries `i -> i` are dropped. The absolute values of the remaining
    /// images must permute the remaining keys.
    pub fn from_moves<I: IntoIterator<Item = (u64, i64)>>(moves: I) -> Result<SymplecticPerm> {
        let mut map = BTreeMap::new();
        for (i, x) in moves {
            if i == 0 {
                return Err(Error::InvalidPermutation(
                    "0 cannot be a moved point".into(),
                ));
            }
            if x == 0 {
                return Err(Error::InvalidPermutation(format!("{i} is mapped to 0")));
            }
            if map.insert(i, x).is_some() {
                return Err(Error::InvalidPermutation(format!("{i} has two images")));
            }
        }
        map.retain(|&i, &mut x| x != i as i64);
        let keys: BTreeSet<u64> = map.keys().copied().collect();
        let targets: BTreeSet<u64> = map.values().map(|x| x.unsigned_abs()).collect();
        if targets.len() != map.len() || keys != targets {
            return Err(Error::InvalidPermutation(
                "images do not permute the support".into(),
            ));
        }
        Ok(SymplecticPerm { moves: map })
    }

    /// Flips the sign of each listed coordinate.
    pub fn sign_flip<I: IntoIterator<Item = u64>>(indices: I) -> SymplecticPerm {
        SymplecticPerm {
            moves: indices
                .into_iter()
                .inspect(|&i| assert!(i >= 1, "coordinate must be positive"))
                .map(|i| (i, -(i as i64)))
                .collect(),
        }
    }

    pub fn moves(&self) -> &BTreeMap<u64, i64> {
        &self.moves
    }

    pub fn support(&self) -> BTreeSet<u64> {
        self.moves.keys().copied().collect()
    }

    pub fn is_identity(&self) -> bool {
        self.moves.is_empty()
    }

    pub fn apply(&self, x: i64) -> Result<i64> {
        if x == 0 {
            return Err(Error::ZeroElement);
        }
        Ok(self.apply_nonzero(x))
    }

    pub(crate) fn apply_nonzero(&self, x: i64) -> i64 {
        let image = self.image_of(x.unsigned_abs());
        if x < 0 {
            -image
        } else {
            image
        }
    }

    /// Image of a positive coordinate.
    pub fn image_of(&self, i: u64) -> i64 {
        self.moves.get(&i).copied().unwrap_or(i as i64)
    }

    /// The vertex `{ s(x) : x ∈ v }`.
    ///
    /// Only coordinates in the support change sign, so the pattern of `v`
    /// is preserved and the result stays in the component of `v`.
    pub fn apply_vertex(&self, v: &Vertex) -> Vertex {
        v.with_signs(
            self.moves
                .iter()
                .map(|(&i, &x)| (x.unsigned_abs(), v.sign_at(i) * Sign::of(x))),
        )
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &SymplecticPerm) -> SymplecticPerm {
        let support: BTreeSet<u64> = self
            .moves
            .keys()
            .chain(other.moves.keys())
            .copied()
            .collect();
        let moves = support
            .into_iter()
            .map(|i| (i, self.apply_nonzero(other.image_of(i))))
            .filter(|&(i, x)| x != i as i64)
            .collect();
        SymplecticPerm { moves }
    }

    pub fn inverse(&self) -> SymplecticPerm {
        let moves = self
            .moves
            .iter()
            .map(|(&i, &x)| (x.unsigned_abs(), Sign::of(x).value() * i as i64))
            .collect();
        SymplecticPerm { moves }
    }

    pub fn pow(&self, k: u64) -> SymplecticPerm {
        (0..k).fold(SymplecticPerm::identity(), |acc, _| acc.compose(self))
    }

    /// Signed cycles of the support as `(length, sign product)`.
    pub fn signed_cycles(&self) -> Vec<(usize, Sign)> {
        let mut seen = BTreeSet::new();
        let mut cycles = Vec::new();
        for &start in self.moves.keys() {
            if seen.contains(&start) {
                continue;
            }
            let mut len = 0;
            let mut sign = Sign::Plus;
            let mut i = start;
            loop {
                seen.insert(i);
                let x = self.image_of(i);
                sign = sign * Sign::of(x);
                len += 1;
                i = x.unsigned_abs();
                if i == start {
                    break;
                }
            }
            cycles.push((len, sign));
        }
        cycles
    }

    /// Least `k >= 1` with `s^k = id`. A cycle of length `l` contributes `l`
    /// when its sign product is `+1` and `2l` otherwise.
    pub fn order(&self) -> u64 {
        self.signed_cycles()
            .into_iter()
            .map(|(len, sign)| match sign {
                Sign::Plus => len as u64,
                Sign::Minus => 2 * len as u64,
            })
            .fold(1, |acc, c| acc.lcm(&c))
    }

    /// Whether `s(base)` lies in the component of `base`, i.e. `s` belongs to
    /// the weak wreath product stabilizing that component.
    pub fn weak_membership(&self, base: &Vertex) -> bool {
        self.apply_vertex(base).same_component(base)
    }

    pub fn to_wreath(&self) -> WreathPair {
        let perm = self
            .moves
            .iter()
            .map(|(&i, &x)| (i, x.unsigned_abs()))
            .filter(|&(i, j)| i != j)
            .collect();
        let signs = self
            .moves
            .values()
            .filter(|&&x| x < 0)
            .map(|x| x.unsigned_abs())
            .collect();
        WreathPair { perm, signs }
    }

    pub fn from_wreath(w: &WreathPair) -> SymplecticPerm {
        let support: BTreeSet<u64> = w.perm.keys().chain(w.signs.iter()).copied().collect();
        let moves = support
            .into_iter()
            .map(|i| {
                let j = w.perm_image(i);
                let sign = if w.signs.contains(&j) { -1 } else { 1 };
                (i, sign * j as i64)
            })
            .filter(|&(i, x)| x != i as i64)
            .collect();
        SymplecticPerm { moves }
    }

    /// Uniform random element of the signed permutations of
    /// `{1..support_bound}`, deterministic per seed.
    pub fn random(support_bound: u64, seed: u64) -> SymplecticPerm {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        SymplecticPerm::random_with(support_bound, &mut rng)
    }

    pub fn random_with<R: Rng + ?Sized>(support_bound: u64, rng: &mut R) -> SymplecticPerm {
        let mut targets: Vec<u64> = (1..=support_bound).collect();
        targets.shuffle(rng);
        let moves = (1..=support_bound)
            .zip(targets)
            .map(|(i, j)| (i, if rng.gen() { -(j as i64) } else { j as i64 }))
            .filter(|&(i, x)| x != i as i64)
            .collect();
        SymplecticPerm { moves }
    }
}

impl fmt::Display for SymplecticPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.moves.is_empty() {
            return f.write_str("id");
        }
        let parts: Vec<String> = self.moves.iter().map(|(i, x)| format!("{i}→{x}")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Checks whether a finite map on nonzero integers is a symplectic
/// permutation of its domain.
///
/// The domain must be closed under negation and exclude 0, the map must
/// permute it, and `f(-i) = -f(i)` must hold throughout.
pub fn is_symplectic(raw: &BTreeMap<i64, i64>) -> bool {
    if raw.contains_key(&0) {
        return false;
    }
    if raw.keys().any(|&i| !raw.contains_key(&-i)) {
        return false;
    }
    let images: BTreeSet<i64> = raw.values().copied().collect();
    if images.len() != raw.len() || images.iter().any(|x| !raw.contains_key(x)) {
        return false;
    }
    raw.iter().all(|(&i, &x)| raw[&-i] == -x)
}

/// Wreath-product form of a signed permutation.
///
/// `perm` moves coordinates (fixed points omitted); `signs` lists the target
/// coordinates that receive a sign flip afterwards, so the permutation is
/// `i -> σ(perm(i))·perm(i)`.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WreathPair {
    perm: BTreeMap<u64, u64>,
    signs: BTreeSet<u64>,
}

impl WreathPair {
    pub fn new<P, S>(perm: P, signs: S) -> Result<WreathPair>
    where
        P: IntoIterator<Item = (u64, u64)>,
        S: IntoIterator<Item = u64>,
    {
        let mut map = BTreeMap::new();
        for (i, j) in perm {
            if i == 0 || j == 0 {
                return Err(Error::InvalidPermutation(
                    "coordinate 0 in permutation".into(),
                ));
            }
            if map.insert(i, j).is_some() {
                return Err(Error::InvalidPermutation(format!("{i} has two images")));
            }
        }
        map.retain(|i, j| i != j);
        let targets: BTreeSet<u64> = map.values().copied().collect();
        if targets.len() != map.len() || !targets.iter().all(|t| map.contains_key(t)) {
            return Err(Error::InvalidPermutation(
                "perm is not a bijection on its support".into(),
            ));
        }
        let signs: BTreeSet<u64> = signs.into_iter().collect();
        if signs.contains(&0) {
            return Err(Error::InvalidPermutation(
                "sign flip at coordinate 0".into(),
            ));
        }
        Ok(WreathPair { perm: map, signs })
    }

    pub fn perm(&self) -> &BTreeMap<u64, u64> {
        &self.perm
    }

    pub fn signs(&self) -> &BTreeSet<u64> {
        &self.signs
    }

    pub fn perm_image(&self, i: u64) -> u64 {
        self.perm.get(&i).copied().unwrap_or(i)
    }

    pub fn support(&self) -> BTreeSet<u64> {
        self.perm.keys().chain(self.signs.iter()).copied().collect()
    }

    /// Product in the wreath group, `self · other` (apply `other` first).
    ///
    /// Coordinates compose as `perm ∘ other.perm`; the flip at target `k` is
    /// the flip of `self` at `k` times the flip of `other` at `perm⁻¹(k)`.
    pub fn compose(&self, other: &WreathPair) -> WreathPair {
        let support: BTreeSet<u64> = self.support().union(&other.support()).copied().collect();
        let perm = support
            .iter()
            .map(|&i| (i, self.perm_image(other.perm_image(i))))
            .filter(|(i, j)| i != j)
            .collect();
        let preimage: BTreeMap<u64, u64> = self.perm.iter().map(|(&i, &j)| (j, i)).collect();
        let signs = support
            .into_iter()
            .filter(|k| {
                let from = preimage.get(k).copied().unwrap_or(*k);
                self.signs.contains(k) ^ other.signs.contains(&from)
            })
            .collect();
        WreathPair { perm, signs }
    }
}
