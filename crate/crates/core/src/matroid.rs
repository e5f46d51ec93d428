//! Matroids given by their bases, with the cyclic-flat machinery needed to
//! recognise connected split matroids and read off their `λ` and `μ` statistics.
//!
//! Elements are `0..n` and subsets are `u64` bitsets, so `n ≤ 64`. Queries that
//! enumerate all subsets of the ground set (cyclic flats, split detection) are
//! limited to `n ≤ MAX_ENUM_N`.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;
use std::sync::OnceLock;

use crate::combinatorics::{binomial_u64, bits, k_subsets, to_set};
use crate::error::{CdError, Result};

pub const MAX_N: usize = 64;
pub const MAX_ENUM_N: usize = 22;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CyclicFlat {
    pub set: u64,
    pub rank: usize,
}

impl CyclicFlat {
    pub fn new(elements: &[usize], rank: usize) -> Self {
        CyclicFlat {
            set: to_set(elements.iter().copied()),
            rank,
        }
    }

    pub fn elements(&self) -> Vec<usize> {
        bits(self.set).collect()
    }

    pub fn size(&self) -> usize {
        self.set.count_ones() as usize
    }
}

impl fmt::Display for CyclicFlat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} (rank {})", self.elements(), self.rank)
    }
}

#[derive(Clone, Debug)]
pub struct Matroid {
    n: usize,
    k: usize,
    bases: Vec<u64>,
    lookup: HashSet<u64>,
    ranks: OnceLock<Vec<u8>>,
}

impl PartialEq for Matroid {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.k == other.k && self.bases == other.bases
    }
}

impl Eq for Matroid {}

impl Matroid {
    /// Validates the bases, including the exchange axiom.
    pub fn from_bases(n: usize, k: usize, bases: impl IntoIterator<Item = u64>) -> Result<Self> {
        let m = Matroid::from_bases_unchecked(n, k, bases)?;
        m.check_exchange()?;
        Ok(m)
    }

    pub fn from_basis_lists(n: usize, k: usize, bases: &[Vec<usize>]) -> Result<Self> {
        for b in bases {
            if let Some(&e) = b.iter().find(|&&e| e >= n) {
                return Err(CdError::InvalidParams(format!(
                    "element {e} outside a ground set of size {n}"
                )));
            }
        }
        Matroid::from_bases(n, k, bases.iter().map(|b| to_set(b.iter().copied())))
    }

    fn from_bases_unchecked(
        n: usize,
        k: usize,
        bases: impl IntoIterator<Item = u64>,
    ) -> Result<Self> {
        if n > MAX_N || k > n {
            return Err(CdError::InvalidParams(format!(
                "need k <= n <= {MAX_N}, got k = {k}, n = {n}"
            )));
        }
        let ground = ground_set(n);
        let set: BTreeSet<u64> = bases.into_iter().collect();
        if set.is_empty() {
            return Err(CdError::InvalidParams(
                "a matroid needs at least one basis".into(),
            ));
        }
        if let Some(&b) = set
            .iter()
            .find(|&&b| b & !ground != 0 || b.count_ones() as usize != k)
        {
            return Err(CdError::InvalidParams(format!(
                "{:?} is not a {k}-subset of the ground set",
                bits(b).collect::<Vec<_>>()
            )));
        }
        let bases: Vec<u64> = set.into_iter().collect();
        Ok(Matroid {
            n,
            k,
            lookup: bases.iter().copied().collect(),
            bases,
            ranks: OnceLock::new(),
        })
    }

    fn check_exchange(&self) -> Result<()> {
        for &b1 in &self.bases {
            for &b2 in &self.bases {
                for x in bits(b1 & !b2) {
                    let without = b1 & !(1 << x);
                    if !bits(b2 & !b1).any(|y| self.is_basis(without | 1 << y)) {
                        return Err(CdError::NotAMatroid {
                            basis: bits(b1).collect(),
                            element: x,
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn uniform(k: usize, n: usize) -> Result<Self> {
        Matroid::from_bases_unchecked(n, k, k_subsets(n, k))
    }

    /// The matroid carved out of `Δ_{k,n}` by `x(F) ≤ rk F` for the given flats.
    /// The proper cyclic flats of the result must be exactly the input.
    pub fn from_cyclic_flats(n: usize, k: usize, flats: &[CyclicFlat]) -> Result<Self> {
        if n > MAX_N || k > n {
            return Err(CdError::InvalidParams(format!(
                "need k <= n <= {MAX_N}, got k = {k}, n = {n}"
            )));
        }
        let ground = ground_set(n);
        let wanted: BTreeSet<CyclicFlat> = flats.iter().copied().collect();
        if let Some(f) = wanted
            .iter()
            .find(|f| f.set == 0 || f.set & !ground != 0 || f.set == ground)
        {
            return Err(CdError::InvalidParams(format!(
                "cyclic flat {f} is not a proper nonempty subset of the ground set"
            )));
        }
        let bases: Vec<u64> = k_subsets(n, k)
            .into_iter()
            .filter(|&b| {
                wanted
                    .iter()
                    .all(|f| (b & f.set).count_ones() as usize <= f.rank)
            })
            .collect();
        if bases.is_empty() {
            return Err(CdError::EmptyMatroid);
        }
        let m = Matroid::from_bases(n, k, bases)?;
        let derived: BTreeSet<CyclicFlat> = m.proper_cyclic_flats()?.into_iter().collect();
        if let Some(f) = wanted.symmetric_difference(&derived).next() {
            return Err(CdError::PresentationMismatch {
                set: f.elements(),
                rank: f.rank,
            });
        }
        Ok(m)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.k
    }

    pub fn ground(&self) -> u64 {
        ground_set(self.n)
    }

    pub fn bases(&self) -> &[u64] {
        &self.bases
    }

    pub fn num_bases(&self) -> usize {
        self.bases.len()
    }

    pub fn is_basis(&self, set: u64) -> bool {
        self.lookup.contains(&set)
    }

    pub fn is_uniform(&self) -> bool {
        self.bases.len() as u64 == binomial_u64(self.n, self.k)
    }

    /// `rk S = max |B ∩ S|` over bases.
    pub fn rank_of(&self, set: u64) -> usize {
        if let Some(table) = self.ranks.get() {
            return table[set as usize] as usize;
        }
        self.bases
            .iter()
            .map(|b| (b & set).count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    fn rank_table(&self) -> Result<&[u8]> {
        if self.n > MAX_ENUM_N {
            return Err(CdError::ScaleExceeded {
                n: self.n,
                bound: MAX_ENUM_N,
            });
        }
        Ok(self.ranks.get_or_init(|| {
            let size = 1usize << self.n;
            let mut independent = vec![false; size];
            for &b in &self.bases {
                independent[b as usize] = true;
            }
            for s in (0..size).rev() {
                if independent[s] {
                    for e in bits(s as u64) {
                        independent[s & !(1 << e)] = true;
                    }
                }
            }
            let mut rank = vec![0u8; size];
            for s in 1..size {
                rank[s] = if independent[s] {
                    (s as u64).count_ones() as u8
                } else {
                    bits(s as u64)
                        .map(|e| rank[s & !(1 << e)])
                        .max()
                        .unwrap_or(0)
                };
            }
            rank
        }))
    }

    pub fn closure(&self, set: u64) -> u64 {
        let r = self.rank_of(set);
        (0..self.n)
            .filter(|&e| set >> e & 1 == 1 || self.rank_of(set | 1 << e) == r)
            .fold(0, |acc, e| acc | 1 << e)
    }

    pub fn is_flat(&self, set: u64) -> bool {
        self.closure(set) == set
    }

    /// `M|S` has no coloop: removing any element keeps the rank.
    pub fn is_cyclic(&self, set: u64) -> bool {
        let r = self.rank_of(set);
        bits(set).all(|e| self.rank_of(set & !(1 << e)) == r)
    }

    /// All cyclic flats, including the smallest (`∅` when loopless) and the
    /// largest (`E` when coloopless), sorted by size then bitset.
    pub fn cyclic_flats(&self) -> Result<Vec<CyclicFlat>> {
        self.rank_table()?;
        let mut out: Vec<CyclicFlat> = (0..=self.ground())
            .filter(|&s| self.is_cyclic(s) && self.is_flat(s))
            .map(|s| CyclicFlat {
                set: s,
                rank: self.rank_of(s),
            })
            .collect();
        out.sort_by_key(|f| (f.size(), f.set));
        Ok(out)
    }

    /// Cyclic flats other than `∅` and `E`.
    pub fn proper_cyclic_flats(&self) -> Result<Vec<CyclicFlat>> {
        let ground = self.ground();
        Ok(self
            .cyclic_flats()?
            .into_iter()
            .filter(|f| f.set != 0 && f.set != ground)
            .collect())
    }

    /// `k`-subsets `B` with `|B ∩ A| ≥ rk A + 1`.
    pub fn cover(&self, set: u64) -> Vec<u64> {
        let r = self.rank_of(set);
        k_subsets(self.n, self.k)
            .into_iter()
            .filter(|b| (b & set).count_ones() as usize > r)
            .collect()
    }

    /// Adds `Cover A` to the bases.
    pub fn relax(&self, set: u64) -> Result<Matroid> {
        let bases = self.bases.iter().copied().chain(self.cover(set));
        Matroid::from_bases(self.n, self.k, bases)
    }

    pub fn dual(&self) -> Matroid {
        let ground = self.ground();
        Matroid::from_bases_unchecked(
            self.n,
            self.n - self.k,
            self.bases.iter().map(|b| ground & !b),
        )
        .expect("dual of a valid matroid")
    }

    /// `M|S`, relabelled onto `0..|S|` in increasing order.
    pub fn restrict(&self, set: u64) -> Matroid {
        let r = self.rank_of(set);
        let elems: Vec<usize> = bits(set).collect();
        let relabel = |b: u64| {
            elems
                .iter()
                .enumerate()
                .filter(|(_, &e)| b >> e & 1 == 1)
                .fold(0u64, |acc, (i, _)| acc | 1 << i)
        };
        let bases = self
            .bases
            .iter()
            .filter(|b| (*b & set).count_ones() as usize == r)
            .map(|b| relabel(b & set));
        Matroid::from_bases_unchecked(elems.len(), r, bases)
            .expect("restriction of a valid matroid")
    }

    /// Connected components: classes of the relation generated by `i ~ j` whenever
    /// `B - i + j` is a basis for some basis `B ∋ i`, `j ∉ B`.
    pub fn connected_components(&self) -> Vec<Component> {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(parent: &mut [usize], x: usize) -> usize {
            let mut root = x;
            while parent[root] != root {
                root = parent[root];
            }
            let mut cur = x;
            while parent[cur] != root {
                let next = parent[cur];
                parent[cur] = root;
                cur = next;
            }
            root
        }
        let ground = self.ground();
        for &b in &self.bases {
            for i in bits(b) {
                for j in bits(ground & !b) {
                    if self.is_basis(b & !(1 << i) | 1 << j) {
                        let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                        if ri != rj {
                            parent[ri.max(rj)] = ri.min(rj);
                        }
                    }
                }
            }
        }
        let mut classes: BTreeMap<usize, u64> = BTreeMap::new();
        for e in 0..self.n {
            let root = find(&mut parent, e);
            *classes.entry(root).or_default() |= 1 << e;
        }
        classes
            .into_values()
            .map(|set| Component {
                elements: set,
                matroid: self.restrict(set),
            })
            .collect()
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() == 1
    }

    /// Relaxes stressed subsets (proper cyclic flats that are both minimal and
    /// maximal) until none is left, and reports whether the result is uniform.
    pub fn is_connected_split(&self) -> Result<SplitCheck> {
        if !self.is_connected() {
            return Ok(SplitCheck {
                is_split: false,
                obstruction: Some("matroid is not connected".into()),
                relaxed: Vec::new(),
            });
        }
        let mut current = self.clone();
        let mut relaxed = Vec::new();
        loop {
            let proper = current.proper_cyclic_flats()?;
            if proper.is_empty() {
                debug_assert!(current.is_uniform());
                return Ok(SplitCheck {
                    is_split: true,
                    obstruction: None,
                    relaxed,
                });
            }
            let stressed: Vec<CyclicFlat> = proper
                .iter()
                .filter(|f| {
                    proper
                        .iter()
                        .all(|g| g == *f || (g.set & f.set != g.set && g.set & f.set != f.set))
                })
                .copied()
                .collect();
            let Some(first) = stressed.first() else {
                let f = proper[0];
                return Ok(SplitCheck {
                    is_split: false,
                    obstruction: Some(format!(
                        "no stressed subset left; cyclic flat {f} is comparable to another"
                    )),
                    relaxed,
                });
            };
            if current.cover(first.set).is_empty() {
                return Ok(SplitCheck {
                    is_split: false,
                    obstruction: Some(format!("stressed subset {first} has an empty cover")),
                    relaxed,
                });
            }
            current = current.relax(first.set)?;
            relaxed.push(*first);
        }
    }

    /// `λ` and `μ` from the proper cyclic flats. Assumes a connected split matroid.
    pub fn split_profile(&self) -> Result<SplitProfile> {
        let flats = self.proper_cyclic_flats()?;
        let mut profile = SplitProfile::default();
        for f in &flats {
            *profile.lambda.entry((f.rank, f.size())).or_default() += 1;
        }
        for (i, f) in flats.iter().enumerate() {
            for g in &flats[i + 1..] {
                let meet = f.set & g.set;
                let common = meet.count_ones() as usize;
                if f.rank + g.rank != common + self.k {
                    continue;
                }
                if self.rank_of(meet) < common {
                    return Err(CdError::ModularityAnomaly {
                        f: f.elements(),
                        g: g.elements(),
                    });
                }
                let one = (f.rank - common, (f.set & !g.set).count_ones() as usize);
                let other = (g.rank - common, (g.set & !f.set).count_ones() as usize);
                let (lo, hi) = if one <= other {
                    (one, other)
                } else {
                    (other, one)
                };
                *profile
                    .mu
                    .entry(ModularKey {
                        alpha: lo.0,
                        beta: hi.0,
                        a: lo.1,
                        b: hi.1,
                    })
                    .or_default() += 1;
            }
        }
        Ok(profile)
    }

    /// Connected, and every proper cyclic flat is a circuit-hyperplane.
    pub fn is_sparse_paving(&self) -> Result<bool> {
        if !self.is_connected() {
            return Ok(false);
        }
        Ok(self
            .proper_cyclic_flats()?
            .iter()
            .all(|f| f.rank + 1 == self.k && f.size() == self.k))
    }

    /// Direct sum, with `other` relabelled to `n..n + other.n`.
    pub fn direct_sum(&self, other: &Matroid) -> Result<Matroid> {
        let shift = self.n;
        let bases = self
            .bases
            .iter()
            .flat_map(|&b1| other.bases.iter().map(move |&b2| b1 | b2 << shift));
        Matroid::from_bases_unchecked(self.n + other.n, self.k + other.k, bases)
    }
}

impl fmt::Display for Matroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "matroid of rank {} on {} elements with {} bases",
            self.k,
            self.n,
            self.bases.len()
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub elements: u64,
    pub matroid: Matroid,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitCheck {
    pub is_split: bool,
    pub obstruction: Option<String>,
    pub relaxed: Vec<CyclicFlat>,
}

/// Signature of a modular pair with `(alpha, a) ≤ (beta, b)` lexicographically.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModularKey {
    pub alpha: usize,
    pub beta: usize,
    pub a: usize,
    pub b: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SplitProfile {
    /// `(rank, size)` → number of proper cyclic flats.
    pub lambda: BTreeMap<(usize, usize), u64>,
    pub mu: BTreeMap<ModularKey, u64>,
}

impl SplitProfile {
    pub fn total_lambda(&self) -> u64 {
        self.lambda.values().sum()
    }

    pub fn total_mu(&self) -> u64 {
        self.mu.values().sum()
    }
}

fn ground_set(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}
