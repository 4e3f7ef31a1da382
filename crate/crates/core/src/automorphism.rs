//! Automorphism oracles and the reconstruction of their local action.
//!
//! Every automorphism of the infinite cube agrees, on each connected
//! component, with the automorphism induced by some symplectic permutation.
//! [`reconstruct_local`] recovers that permutation on a finite window of
//! coordinates from `|window| + 1` oracle queries around a vertex `X`:
//!
//! 1. query `f(X)` and let `t` flip the signs where `f(X)` and `X` differ,
//!    so `g = t∘f` fixes `X`;
//! 2. for each coordinate `i`, the neighbor `Y = flip(X, i)` is the only
//!    neighbor of `X` containing the element `y` of `Y∖X`; `g(Y)` is again a
//!    neighbor of `X`, and its element outside `X` is `s(y)`;
//! 3. extend by `s(-y) = -s(y)` and undo the normalization, `t⁻¹∘s`.
//!
//! Neighboring vertices yield the same permutation, which
//! [`reconstruct_component`] verifies on sampled vertices near `X`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::symplectic::SymplecticPerm;
use crate::vertex::Vertex;
use crate::window::Window;

pub type VertexMap = dyn Fn(&Vertex) -> Vertex + Send + Sync;

/// A black-box vertex map promised to be an automorphism.
#[derive(Clone)]
pub enum AutomorphismOracle {
    /// Induced by a symplectic permutation.
    Regular(SymplecticPerm),
    /// Acts by its own permutation on each listed component and as the
    /// identity on every other component.
    Piecewise(Vec<(Vertex, SymplecticPerm)>),
    /// Arbitrary callback. Not validated up front.
    Callback(Arc<VertexMap>),
}

impl fmt::Debug for AutomorphismOracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AutomorphismOracle::Regular(s) => f.debug_tuple("Regular").field(s).finish(),
            AutomorphismOracle::Piecewise(cases) => {
                f.debug_tuple("Piecewise").field(cases).finish()
            }
            AutomorphismOracle::Callback(_) => f.write_str("Callback(..)"),
        }
    }
}

impl AutomorphismOracle {
    /// Checks that every case permutation preserves its component and that
    /// the case components are pairwise distinct.
    pub fn piecewise(cases: Vec<(Vertex, SymplecticPerm)>) -> Result<AutomorphismOracle> {
        for (k, (rep, s)) in cases.iter().enumerate() {
            if !s.weak_membership(rep) {
                return Err(Error::InvalidOracle(format!(
                    "case {k} moves its representative out of its component"
                )));
            }
            if let Some(j) = cases[..k]
                .iter()
                .position(|(other, _)| other.same_component(rep))
            {
                return Err(Error::SharedComponent(j, k));
            }
        }
        Ok(AutomorphismOracle::Piecewise(cases))
    }

    pub fn callback<F>(f: F) -> AutomorphismOracle
    where
        F: Fn(&Vertex) -> Vertex + Send + Sync + 'static,
    {
        AutomorphismOracle::Callback(Arc::new(f))
    }

    pub fn evaluate(&self, v: &Vertex) -> Vertex {
        match self {
            AutomorphismOracle::Regular(s) => s.apply_vertex(v),
            AutomorphismOracle::Piecewise(cases) => cases
                .iter()
                .find(|(rep, _)| rep.same_component(v))
                .map_or_else(|| v.clone(), |(_, s)| s.apply_vertex(v)),
            AutomorphismOracle::Callback(f) => f(v),
        }
    }
}

/// The recovered permutation restricted to a window of coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReconstructionResult {
    pub window: Window,
    /// Image of every window coordinate, identity entries included.
    pub action: BTreeMap<u64, i64>,
    /// Vertices whose local reconstruction was compared against this one.
    pub checked_at: Vec<Vertex>,
    pub queries: usize,
}

impl ReconstructionResult {
    pub fn image(&self, i: u64) -> Option<i64> {
        self.action.get(&i).copied()
    }

    /// Converts the action to a closed permutation when the window images
    /// permute the window, i.e. nothing outside the window is needed.
    pub fn finitize(&self) -> Option<SymplecticPerm> {
        let targets: BTreeSet<u64> = self.action.values().map(|x| x.unsigned_abs()).collect();
        if &targets != self.window.as_set() {
            return None;
        }
        SymplecticPerm::from_moves(self.action.iter().map(|(&i, &x)| (i, x))).ok()
    }

    /// Whether the action agrees with `s` on every window coordinate.
    pub fn agrees_with(&self, s: &SymplecticPerm) -> bool {
        self.action.iter().all(|(&i, &x)| s.image_of(i) == x)
    }
}

/// Recovers the local symplectic permutation of `f` at `x` on `window`.
///
/// Performs exactly `|window| + 1` oracle evaluations. Fails with
/// [`Error::MalformedOracle`] whenever an image contradicts `f` being an
/// automorphism of the component of `x`.
pub fn reconstruct_local(
    f: &AutomorphismOracle,
    x: &Vertex,
    window: &Window,
) -> Result<ReconstructionResult> {
    let fx = f.evaluate(x);
    let moved = fx.difference(x).ok_or_else(|| {
        Error::MalformedOracle(format!("f({x}) = {fx} left the component of {x}"))
    })?;
    let normalize = SymplecticPerm::sign_flip(moved);
    let mut queries = 1;

    let mut action = BTreeMap::new();
    let mut used_targets = BTreeSet::new();
    for i in window.iter() {
        let y = x.flip_at(i);
        let gy = normalize.apply_vertex(&f.evaluate(&y));
        queries += 1;
        let diff = gy.difference(x).unwrap_or_default();
        let j = match diff.len() {
            1 => *diff.iter().next().expect("singleton"),
            0 => {
                return Err(Error::MalformedOracle(format!(
                    "neighbor {y} of {x} maps onto the image of {x}"
                )))
            }
            _ => {
                return Err(Error::MalformedOracle(format!(
                    "image of neighbor {y} is not adjacent to the image of {x}"
                )))
            }
        };
        if !used_targets.insert(j) {
            return Err(Error::MalformedOracle(format!(
                "two neighbors of {x} map to the same vertex"
            )));
        }
        // y_elem ∈ Y∖X is sent to the element of g(Y)∖X; oddness fixes s(i).
        let y_sign = y.sign_at(i);
        let image_of_y_elem = gy.element_at(j);
        let s_i = y_sign.value() * image_of_y_elem;
        action.insert(i, normalize.apply_nonzero(s_i));
    }

    Ok(ReconstructionResult {
        window: window.clone(),
        action,
        checked_at: Vec::new(),
        queries,
    })
}

/// Reconstructs at `x`, then at `checks` seeded random vertices within two
/// flips of `x` inside `window`, and requires all local actions to agree.
pub fn reconstruct_component(
    f: &AutomorphismOracle,
    x: &Vertex,
    window: &Window,
    checks: usize,
    seed: u64,
) -> Result<ReconstructionResult> {
    let mut result = reconstruct_local(f, x, window)?;
    if window.is_empty() {
        return Ok(result);
    }
    let coords: Vec<u64> = window.iter().collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..checks {
        let flips = if coords.len() >= 2 && rng.gen_bool(0.5) {
            2
        } else {
            1
        };
        let picked: Vec<u64> = coords.choose_multiple(&mut rng, flips).copied().collect();
        let y = picked.iter().fold(x.clone(), |v, &i| v.flip_at(i));
        let other = reconstruct_local(f, &y, window)?;
        result.queries += other.queries;
        if let Some((&i, &a)) = result
            .action
            .iter()
            .find(|(i, a)| other.action.get(i) != Some(a))
        {
            return Err(Error::MalformedOracle(format!(
                "local actions disagree at coordinate {i}: {a} at {x}, {} at {y}",
                other.action[&i]
            )));
        }
        result.checked_at.push(y);
    }
    Ok(result)
}

/// Outcome of comparing local actions across components.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    /// Certificate: no single symplectic permutation acts like this on
    /// both components.
    NonRegular {
        index: u64,
        reps: (usize, usize),
        images: (i64, i64),
    },
    /// All reconstructions agree on the window. Not a proof of regularity.
    ConsistentWithinWindow,
}

/// Compares the local actions of `f` at representatives of distinct
/// components. The first disagreement in (pair, coordinate) order is the
/// witness.
pub fn is_regular_verdict(
    f: &AutomorphismOracle,
    reps: &[Vertex],
    window: &Window,
) -> Result<Verdict> {
    for (b, rep) in reps.iter().enumerate() {
        if let Some(a) = reps[..b].iter().position(|r| r.same_component(rep)) {
            return Err(Error::SharedComponent(a, b));
        }
    }
    let actions = reps
        .iter()
        .map(|rep| reconstruct_local(f, rep, window).map(|r| r.action))
        .collect::<Result<Vec<_>>>()?;
    for a in 0..actions.len() {
        for b in a + 1..actions.len() {
            for i in window.iter() {
                let (x, y) = (actions[a][&i], actions[b][&i]);
                if x != y {
                    return Ok(Verdict::NonRegular {
                        index: i,
                        reps: (a, b),
                        images: (x, y),
                    });
                }
            }
        }
    }
    Ok(Verdict::ConsistentWithinWindow)
}

/// The non-regular automorphism acting by `s` on the component of `a` and
/// fixing every other component.
pub fn example1_automorphism(a: &Vertex, s: &SymplecticPerm) -> Result<AutomorphismOracle> {
    if s.is_identity() {
        return Err(Error::InvalidOracle(
            "the identity permutation gives the trivial automorphism".into(),
        ));
    }
    AutomorphismOracle::piecewise(vec![(a.clone(), s.clone())])
}

/// Samples `samples` vertex pairs from `ball(base, 2, window)`, alternating
/// edges and arbitrary pairs, and checks `adjacent(u, w) ⇔ adjacent(f u, f w)`.
pub fn check_automorphism_on_sample(
    f: &AutomorphismOracle,
    base: &Vertex,
    window: &Window,
    samples: usize,
    seed: u64,
) -> bool {
    let ball = base.ball(2, window);
    let images: Vec<Vertex> = ball.iter().map(|v| f.evaluate(v)).collect();
    let mut edges = Vec::new();
    for a in 0..ball.len() {
        for b in a + 1..ball.len() {
            if ball[a].adjacent(&ball[b]) {
                edges.push((a, b));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..samples).all(|k| {
        let (a, b) = match edges.choose(&mut rng) {
            Some(&e) if k % 2 == 0 => e,
            _ => (rng.gen_range(0..ball.len()), rng.gen_range(0..ball.len())),
        };
        ball[a].adjacent(&ball[b]) == images[a].adjacent(&images[b])
            && (a == b) == (images[a] == images[b])
    })
}

/// `t` such that `t(v) = base` within one component: the sign flip on the
/// coordinates where they differ.
pub fn normalizing_flip(v: &Vertex, base: &Vertex) -> Option<SymplecticPerm> {
    v.difference(base).map(SymplecticPerm::sign_flip)
}
