//! Finite hypercubes `H_n` and their automorphism groups.
//!
//! Vertices are `n`-bit masks; bit `k - 1` of the mask is coordinate `k`.
//! Two enumerators are provided: exhaustive search over all vertex
//! bijections (tiny `n` only) and extension from the image of the origin and
//! its neighbors. Both agree with the `2^n · n!` signed permutations.

use std::collections::BTreeMap;

use itertools::Itertools;
use rayon::prelude::*;

use crate::automorphism::AutomorphismOracle;
use crate::error::{Error, Result};
use crate::symplectic::{SymplecticPerm, WreathPair};
use crate::vertex::{Sign, Vertex};

pub const MAX_BRUTE_FORCE_DIM: usize = 3;
pub const MAX_EXTENSION_DIM: usize = 8;
pub const MAX_CUBE_DIM: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FiniteCube {
    n: usize,
}

impl FiniteCube {
    pub fn new(n: usize) -> Result<FiniteCube> {
        check_dim(n, 1, MAX_CUBE_DIM)?;
        Ok(FiniteCube { n })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn vertex_count(&self) -> usize {
        1 << self.n
    }

    pub fn vertices(&self) -> impl Iterator<Item = u32> + Clone {
        0..(1u32 << self.n)
    }

    pub fn adjacent(a: u32, b: u32) -> bool {
        (a ^ b).count_ones() == 1
    }

    pub fn neighbors(&self, v: u32) -> impl Iterator<Item = u32> {
        (0..self.n).map(move |k| v ^ (1 << k))
    }

    /// Each edge once, as `(v, v | bit)` with the bit clear in `v`.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.vertices()
            .flat_map(move |v| (0..self.n).map(move |k| (v, 1u32 << k)))
            .filter(|&(v, bit)| v & bit == 0)
            .map(|(v, bit)| (v, v | bit))
    }
}

fn check_dim(n: usize, min: usize, max: usize) -> Result<()> {
    if n < min || n > max {
        return Err(Error::DimensionOutOfRange { n, min, max });
    }
    Ok(())
}

/// A bijection of the vertices of `H_n` preserving adjacency.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CubeAutomorphism {
    n: usize,
    map: Vec<u32>,
}

impl CubeAutomorphism {
    /// Validates that `map` is an adjacency-preserving bijection of `H_n`.
    pub fn new(n: usize, map: Vec<u32>) -> Result<CubeAutomorphism> {
        let cube = FiniteCube::new(n)?;
        if !is_cube_automorphism(&cube, &map) {
            return Err(Error::InvalidPermutation(format!(
                "map is not an automorphism of H_{n}"
            )));
        }
        Ok(CubeAutomorphism { n, map })
    }

    pub fn identity(n: usize) -> Result<CubeAutomorphism> {
        let cube = FiniteCube::new(n)?;
        Ok(CubeAutomorphism {
            n,
            map: cube.vertices().collect(),
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn map(&self) -> &[u32] {
        &self.map
    }

    pub fn apply(&self, v: u32) -> u32 {
        self.map[v as usize]
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &CubeAutomorphism) -> CubeAutomorphism {
        assert_eq!(self.n, other.n);
        CubeAutomorphism {
            n: self.n,
            map: other.map.iter().map(|&v| self.apply(v)).collect(),
        }
    }

    /// Reads off the wreath pair from the images of the origin and the unit
    /// vectors, then checks that the pair reproduces the whole map.
    pub fn to_wreath(&self) -> Result<WreathPair> {
        let origin = self.apply(0);
        let mut perm = Vec::with_capacity(self.n);
        for k in 0..self.n {
            let moved = self.apply(1 << k) ^ origin;
            if moved.count_ones() != 1 {
                return Err(Error::NotWreathInduced(format!(
                    "unit vector {} is not sent to a unit vector",
                    k + 1
                )));
            }
            perm.push((k as u64 + 1, moved.trailing_zeros() as u64 + 1));
        }
        let signs = (0..self.n as u64)
            .filter(|k| origin >> k & 1 == 1)
            .map(|k| k + 1);
        let w = WreathPair::new(perm, signs).map_err(|e| Error::NotWreathInduced(e.to_string()))?;
        if wreath_to_cube(&w, self.n)? != *self {
            return Err(Error::NotWreathInduced("map is not affine".into()));
        }
        Ok(w)
    }
}

fn is_cube_automorphism(cube: &FiniteCube, map: &[u32]) -> bool {
    if map.len() != cube.vertex_count() {
        return false;
    }
    let mut hit = vec![false; map.len()];
    for &v in map {
        match hit.get_mut(v as usize) {
            Some(seen) if !*seen => *seen = true,
            _ => return false,
        }
    }
    // A bijection carrying every edge to an edge preserves non-edges too,
    // since both edge sets have the same size.
    cube.edges()
        .all(|(a, b)| FiniteCube::adjacent(map[a as usize], map[b as usize]))
}

/// Every automorphism of `H_n` by testing all `(2^n)!` vertex bijections,
/// in lexicographic order of the vertex map.
pub fn enumerate_automorphisms_bruteforce(n: usize) -> Result<Vec<CubeAutomorphism>> {
    check_dim(n, 1, MAX_BRUTE_FORCE_DIM)?;
    let cube = FiniteCube::new(n)?;
    let autos = cube
        .vertices()
        .permutations(cube.vertex_count())
        .filter(|map| {
            let edges_ok = cube
                .edges()
                .all(|(a, b)| FiniteCube::adjacent(map[a as usize], map[b as usize]));
            let non_edges_ok = cube.vertices().tuple_combinations().all(|(a, b)| {
                FiniteCube::adjacent(a, b)
                    || !FiniteCube::adjacent(map[a as usize], map[b as usize])
            });
            edges_ok && non_edges_ok
        })
        .map(|map| CubeAutomorphism { n, map })
        .collect();
    Ok(autos)
}

/// Extends an image of the origin plus a bijection of its neighbors to the
/// whole cube, or `None` if the result is not an automorphism.
///
/// Vertices are filled in increasing order. A vertex `v` with two set bits
/// `i`, `j` has two lower neighbors `v^i`, `v^j` whose images share exactly
/// two common neighbors; one is the image of `v^i^j`, the other must be the
/// image of `v`.
fn extend(cube: &FiniteCube, origin: u32, unit_images: &[u32]) -> Option<Vec<u32>> {
    let mut map = vec![0u32; cube.vertex_count()];
    map[0] = origin;
    for (k, &img) in unit_images.iter().enumerate() {
        map[1 << k] = img;
    }
    for v in 1..cube.vertex_count() as u32 {
        if v.count_ones() < 2 {
            continue;
        }
        let i = 1u32 << v.trailing_zeros();
        let rest = v ^ i;
        let j = 1u32 << rest.trailing_zeros();
        let (a, b, c) = (
            map[(v ^ i) as usize],
            map[(v ^ j) as usize],
            map[(v ^ i ^ j) as usize],
        );
        map[v as usize] = a ^ b ^ c;
    }
    is_cube_automorphism(cube, &map).then_some(map)
}

fn extension_candidates(n: usize) -> impl ParallelIterator<Item = Vec<u32>> {
    let cube = FiniteCube { n };
    let orderings: Vec<Vec<usize>> = (0..n).permutations(n).collect();
    (0..cube.vertex_count() as u32)
        .into_par_iter()
        .flat_map_iter(move |origin| {
            orderings.clone().into_iter().filter_map(move |order| {
                let units: Vec<u32> = order.iter().map(|&k| origin ^ (1 << k)).collect();
                extend(&cube, origin, &units)
            })
        })
}

/// Every automorphism of `H_n` via extension from the origin's star, in
/// lexicographic order of the vertex map.
pub fn enumerate_automorphisms_extension(n: usize) -> Result<Vec<CubeAutomorphism>> {
    check_dim(n, 1, MAX_EXTENSION_DIM)?;
    let mut maps: Vec<Vec<u32>> = extension_candidates(n).collect();
    maps.par_sort_unstable();
    maps.dedup();
    Ok(maps
        .into_iter()
        .map(|map| CubeAutomorphism { n, map })
        .collect())
}

/// Size of the automorphism group by the extension method, without
/// materializing the maps.
pub fn count_automorphisms_extension(n: usize) -> Result<usize> {
    check_dim(n, 1, MAX_EXTENSION_DIM)?;
    Ok(extension_candidates(n).count())
}

/// The vertex map `x -> y` with `y[perm(k)] = x[k] xor flip(perm(k))`.
pub fn wreath_to_cube(w: &WreathPair, n: usize) -> Result<CubeAutomorphism> {
    FiniteCube::new(n)?;
    if let Some(&k) = w.support().iter().next_back() {
        if k > n as u64 {
            return Err(Error::InvalidPermutation(format!(
                "wreath pair moves coordinate {k} outside H_{n}"
            )));
        }
    }
    let flips: u32 = w
        .signs()
        .iter()
        .map(|&k| 1u32 << (k - 1))
        .fold(0, |a, b| a | b);
    let map = (0..1u32 << n)
        .map(|x| {
            let moved = (0..n as u64)
                .filter(|k| x >> k & 1 == 1)
                .map(|k| 1u32 << (w.perm_image(k + 1) - 1))
                .fold(0, |a, b| a | b);
            moved ^ flips
        })
        .collect();
    Ok(CubeAutomorphism { n, map })
}

/// All `2^n · n!` wreath pairs supported in `{1..n}`.
pub fn all_wreath_pairs(n: usize) -> Vec<WreathPair> {
    let perms: Vec<Vec<u64>> = (1..=n as u64).permutations(n).collect();
    perms
        .iter()
        .flat_map(|p| {
            (0..1u32 << n).map(move |mask| {
                let perm = (1..=n as u64).zip(p.iter().copied());
                let signs = (0..n as u64)
                    .filter(move |k| mask >> k & 1 == 1)
                    .map(|k| k + 1);
                WreathPair::new(perm, signs).expect("permutation of 1..n")
            })
        })
        .collect()
}

/// Parses an `n`-character bit string; character `k - 1` is coordinate `k`.
pub fn parse_bits(bits: &str) -> Result<(usize, u32)> {
    let n = bits.chars().count();
    check_dim(n, 1, MAX_CUBE_DIM)?;
    let mut mask = 0;
    for (k, c) in bits.chars().enumerate() {
        match c {
            '0' => {}
            '1' => mask |= 1 << k,
            _ => return Err(Error::Json(format!("bad bit string {bits:?}"))),
        }
    }
    Ok((n, mask))
}

pub fn format_bits(mask: u32, n: usize) -> String {
    (0..n)
        .map(|k| if mask >> k & 1 == 1 { '1' } else { '0' })
        .collect()
}

/// Bit `k` set means coordinate `k` is flipped relative to `base`.
pub fn embed_cube_vertex(mask: u32, n: usize, base: &Vertex) -> Vertex {
    (0..n as u64)
        .filter(|k| mask >> k & 1 == 1)
        .fold(base.clone(), |v, k| v.flip_at(k + 1))
}

/// The symplectic permutation realizing `a` on the embedded copy of `H_n`
/// at `base`.
///
/// For the all-positive basepoint this is the wreath pair of `a` itself;
/// otherwise it is conjugated by the sign flip on the negative coordinates
/// of `base` within `{1..n}`.
pub fn lift_permutation(a: &CubeAutomorphism, base: &Vertex) -> Result<SymplecticPerm> {
    let s = SymplecticPerm::from_wreath(&a.to_wreath()?);
    let t = SymplecticPerm::sign_flip((1..=a.n as u64).filter(|&k| base.sign_at(k) == Sign::Minus));
    Ok(t.compose(&s).compose(&t))
}

pub fn lift_cube_automorphism(a: &CubeAutomorphism, base: &Vertex) -> Result<AutomorphismOracle> {
    lift_permutation(a, base).map(AutomorphismOracle::Regular)
}

/// Serialization form: bit string of every vertex to the bit string of its
/// image.
pub fn cube_map_strings(a: &CubeAutomorphism) -> BTreeMap<String, String> {
    a.map
        .iter()
        .enumerate()
        .map(|(v, &img)| (format_bits(v as u32, a.n), format_bits(img, a.n)))
        .collect()
}
