//! Brute-force face lattice of a matroid base polytope, and the flag f-vector and
//! cd-index read off from it. Shares nothing with the formula modules except the
//! ab/cd conversion.
//!
//! A weight `w = e_{S_1} + … + e_{S_t}` for a chain `S_1 ⊂ … ⊂ S_t` of nonempty
//! proper subsets lies in the relative interior of a cone of the braid fan, and every
//! face of a base polytope is the argmax of such a `w`. The argmax is the set of
//! bases with `|B ∩ S_i| = rk S_i` for every `i`.

use std::collections::HashSet;

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::error::{CdError, Result};
use crate::matroid::Matroid;
use crate::ncpoly::{FlagFVector, NcPoly};

pub const DEFAULT_MAX_N: usize = 8;
/// Vertex sets are `u128` bitsets over the basis list.
pub const MAX_VERTICES: usize = 128;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Face {
    /// Bit `i` set when the `i`-th basis is a vertex of the face.
    pub vertices: u128,
    /// `-1` for the empty face.
    pub dim: isize,
}

#[derive(Clone, Debug)]
pub struct FaceLattice {
    pub n: usize,
    pub bases: Vec<u64>,
    /// Sorted by `(dim, vertices)`, so the empty face comes first.
    pub faces: Vec<Face>,
}

pub fn face_lattice(m: &Matroid, max_n: usize) -> Result<FaceLattice> {
    let n = m.n();
    if n > max_n || m.num_bases() > MAX_VERTICES {
        return Err(CdError::ScaleExceeded { n, bound: max_n });
    }
    let bases = m.bases().to_vec();
    let full: u64 = (1u64 << n) - 1;
    let all_vertices: u128 = if bases.len() == 128 {
        u128::MAX
    } else {
        (1u128 << bases.len()) - 1
    };

    // tight[S] = bases attaining rk S on S
    let tight: Vec<u128> = (0..=full)
        .map(|s| {
            let rank = bases
                .iter()
                .map(|b| (b & s).count_ones())
                .max()
                .unwrap_or(0);
            bases
                .iter()
                .enumerate()
                .filter(|(_, b)| (*b & s).count_ones() == rank)
                .fold(0u128, |acc, (i, _)| acc | 1 << i)
        })
        .collect();

    let mut vertex_sets: HashSet<u128> = (1..full)
        .into_par_iter()
        .map(|s| {
            let mut found = HashSet::new();
            extend_chain(
                s,
                all_vertices & tight[s as usize],
                full,
                &tight,
                &mut found,
            );
            found
        })
        .reduce(HashSet::new, |mut a, b| {
            a.extend(b);
            a
        });
    vertex_sets.insert(all_vertices);

    let mut faces: Vec<Face> = vertex_sets
        .into_iter()
        .map(|v| Face {
            vertices: v,
            dim: affine_dim(&bases, v, n),
        })
        .collect();
    faces.push(Face {
        vertices: 0,
        dim: -1,
    });
    faces.sort();
    Ok(FaceLattice { n, bases, faces })
}

fn extend_chain(last: u64, vertices: u128, full: u64, tight: &[u128], found: &mut HashSet<u128>) {
    found.insert(vertices);
    if vertices.count_ones() == 1 {
        return;
    }
    let free = full & !last;
    // nonempty proper subsets of the complement, added on top of `last`
    let mut sub = free;
    while sub != 0 {
        let next = last | sub;
        if next != full {
            extend_chain(next, vertices & tight[next as usize], full, tight, found);
        }
        sub = (sub - 1) & free;
    }
}

/// Dimension of the affine span of the chosen 0/1 vectors, by exact elimination.
fn affine_dim(bases: &[u64], vertices: u128, n: usize) -> isize {
    let chosen: Vec<u64> = (0..bases.len())
        .filter(|i| vertices >> i & 1 == 1)
        .map(|i| bases[i])
        .collect();
    let Some((&first, rest)) = chosen.split_first() else {
        return -1;
    };
    let mut rows: Vec<Vec<i128>> = rest
        .iter()
        .map(|b| {
            (0..n)
                .map(|e| (b >> e & 1) as i128 - (first >> e & 1) as i128)
                .collect()
        })
        .collect();
    let mut rank = 0;
    for col in 0..n {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let (head, tail) = rows.split_at_mut(rank + 1);
        let pivot_row = &head[rank];
        for row in tail.iter_mut().filter(|row| row[col] != 0) {
            let (p, q) = (pivot_row[col], row[col]);
            for (x, &y) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                *x = *x * p - y * q;
            }
            let g = row.iter().fold(0i128, |g, &x| gcd(g, x.abs()));
            if g > 1 {
                row.iter_mut().for_each(|x| *x /= g);
            }
        }
        rank += 1;
    }
    rank as isize
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl FaceLattice {
    pub fn dim(&self) -> isize {
        self.faces.iter().map(|f| f.dim).max().unwrap_or(-1)
    }

    /// Number of faces of each dimension `0..=dim`.
    pub fn face_counts(&self) -> Vec<usize> {
        let d = self.dim();
        (0..=d)
            .map(|k| self.faces.iter().filter(|f| f.dim == k).count())
            .collect()
    }

    /// Flag f-vector, counting chains `G_1 ⊂ … ⊂ G_s ⊊ P` of nonempty faces by the
    /// set of their dimensions.
    pub fn flag_f_vector(&self) -> Result<FlagFVector> {
        let faces: Vec<&Face> = self.faces.iter().filter(|f| f.dim >= 0).collect();
        let Some(top) = faces.iter().rposition(|f| f.dim == self.dim()) else {
            return Err(CdError::InvalidParams(
                "lattice has no nonempty face".into(),
            ));
        };
        // chains[i][mask] counts chains strictly below faces[i]
        let mut chains: Vec<Vec<u128>> = Vec::with_capacity(faces.len());
        for (i, f) in faces.iter().enumerate() {
            let mut acc = vec![0u128; 1 << f.dim];
            acc[0] = 1;
            for (j, g) in faces[..i].iter().enumerate() {
                if g.dim < f.dim && g.vertices & !f.vertices == 0 {
                    let bit = 1usize << g.dim;
                    for (mask, &count) in chains[j].iter().enumerate() {
                        acc[mask | bit] += count;
                    }
                }
            }
            chains.push(acc);
        }
        let entries = chains[top].iter().map(|&c| BigInt::from(c)).collect();
        FlagFVector::from_entries(faces[top].dim as usize, entries)
    }

    /// `Σ_{x ≤ z ≤ y} (-1)^{dim z} = 0` for all `x < y`. Returns the first failing
    /// interval as indices into `faces`.
    pub fn eulerian_check(&self) -> std::result::Result<(), (usize, usize)> {
        let count = self.faces.len();
        let words = count.div_ceil(64);
        let bitset = |pred: &dyn Fn(usize) -> bool| {
            let mut out = vec![0u64; words];
            for i in (0..count).filter(|&i| pred(i)) {
                out[i / 64] |= 1 << (i % 64);
            }
            out
        };
        let contains = |x: usize, y: usize| self.faces[x].vertices & !self.faces[y].vertices == 0;
        let even = bitset(&|i| self.faces[i].dim.rem_euclid(2) == 0);
        let below: Vec<Vec<u64>> = (0..count).map(|y| bitset(&|z| contains(z, y))).collect();
        let above: Vec<Vec<u64>> = (0..count).map(|x| bitset(&|z| contains(x, z))).collect();
        for (x, up) in above.iter().enumerate() {
            for (y, down) in below.iter().enumerate() {
                if x == y || !contains(x, y) {
                    continue;
                }
                let (mut evens, mut odds) = (0, 0);
                for ((u, d), e) in up.iter().zip(down).zip(&even) {
                    let interval = u & d;
                    evens += (interval & e).count_ones();
                    odds += (interval & !e).count_ones();
                }
                if evens != odds {
                    return Err((x, y));
                }
            }
        }
        Ok(())
    }

    /// Intersections of vertex sets of faces are again faces.
    pub fn is_meet_closed(&self) -> bool {
        let sets: HashSet<u128> = self.faces.iter().map(|f| f.vertices).collect();
        self.faces.iter().all(|f| {
            self.faces
                .iter()
                .all(|g| sets.contains(&(f.vertices & g.vertices)))
        })
    }
}

pub fn oracle_flag_f(m: &Matroid, max_n: usize) -> Result<FlagFVector> {
    face_lattice(m, max_n)?.flag_f_vector()
}

pub fn oracle_cd_index(m: &Matroid, max_n: usize) -> Result<NcPoly> {
    oracle_flag_f(m, max_n)?.cd_index()
}
