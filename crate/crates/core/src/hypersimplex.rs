//! cd-index of the hypersimplex `Δ_{k,n}` by stratifying chains over its faces.
//!
//! Every face of dimension at least one is `σ_{C,D}`: coordinates in `C` fixed to
//! one and coordinates in `D` fixed to zero, with `|C| < k` and `|D| < n - k`. Such a
//! face is again a hypersimplex `Δ_{k-|C|, n-|C ∪ D|}`, so the recursion only ever
//! needs the pair of sizes `(|C|, |D|)`.

use std::sync::Arc;

use crate::combinatorics::{binomial, binomial_u64, k_subsets};
use crate::error::{CdError, Result};
use crate::memo::{CacheKind, Memo};
use crate::ncpoly::{alt_power, normalize_mixed, NcPoly};

/// `(k, n)` stored with `k ≤ n - k`; `Δ_{k,n}` and `Δ_{n-k,n}` are affinely
/// isomorphic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HypersimplexKey {
    k: usize,
    n: usize,
}

impl HypersimplexKey {
    pub fn new(k: usize, n: usize) -> Result<Self> {
        if n == 0 || k > n {
            return Err(CdError::InvalidParams(format!(
                "hypersimplex needs 0 <= k <= n and n >= 1, got k = {k}, n = {n}"
            )));
        }
        Ok(HypersimplexKey { k: k.min(n - k), n })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        if self.k == 0 {
            0
        } else {
            self.n - 1
        }
    }
}

/// A face `σ_{C,D}` of `Δ_{k,n}` of dimension at least one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FaceSpec {
    /// Coordinates fixed to one.
    pub contract: u64,
    /// Coordinates fixed to zero.
    pub delete: u64,
    /// The face is isomorphic to `Δ_{iso_k, iso_n}`.
    pub iso_k: usize,
    pub iso_n: usize,
}

impl FaceSpec {
    pub fn dim(&self) -> usize {
        self.iso_n - 1
    }

    pub fn codim(&self) -> usize {
        (self.contract | self.delete).count_ones() as usize
    }
}

/// Enumerates every proper face of `Δ_{k,n}` of dimension at least one.
pub fn faces_of_hypersimplex(k: usize, n: usize) -> Result<Vec<FaceSpec>> {
    if n < 2 || k == 0 || k >= n || n > 64 {
        return Err(CdError::InvalidParams(format!(
            "face catalogue needs 1 <= k <= n-1 and 2 <= n <= 64, got k = {k}, n = {n}"
        )));
    }
    let mut out = Vec::new();
    for i in 0..k {
        for j in 0..(n - k) {
            if i + j == 0 {
                continue;
            }
            for contract in k_subsets(n, i) {
                let rest: Vec<usize> = (0..n).filter(|e| contract >> e & 1 == 0).collect();
                for picked in k_subsets(rest.len(), j) {
                    let delete = crate::combinatorics::bits(picked)
                        .map(|p| 1u64 << rest[p])
                        .fold(0, |a, b| a | b);
                    out.push(FaceSpec {
                        contract,
                        delete,
                        iso_k: k - i,
                        iso_n: n - i - j,
                    });
                }
            }
        }
    }
    Ok(out)
}

/// Number of faces of `Δ_{k,n}` of each type `Δ_{k-i, n-i-j}`, as
/// `(i, j, count)` over all `(i, j) ≠ (0, 0)` with `i < k`, `j < n - k`.
pub fn face_types(k: usize, n: usize) -> Vec<(usize, usize, u64)> {
    let mut out = Vec::new();
    for i in 0..k {
        for j in 0..n.saturating_sub(k) {
            if i + j > 0 {
                out.push((i, j, binomial_u64(n, i) * binomial_u64(n - i, j)));
            }
        }
    }
    out
}

/// cd-index of `Δ_{k,n}`, homogeneous of degree `n - 1` (degree zero when `Δ_{k,n}`
/// is a point).
pub fn cd_hypersimplex(memo: &Memo, k: usize, n: usize) -> Result<Arc<NcPoly>> {
    let key = HypersimplexKey::new(k, n)?;
    let raw = [key.k, key.n];
    if let Some(hit) = memo.get(CacheKind::Hypersimplex, &raw) {
        return Ok(hit);
    }
    let value = compute(memo, key.k, key.n)?;
    Ok(memo.insert(CacheKind::Hypersimplex, &raw, value))
}

/// Runs the top level of the recursion with `k` as given rather than
/// `min(k, n - k)`, so `Δ_{k,n}` and `Δ_{n-k,n}` are stratified differently.
pub fn cd_hypersimplex_unreduced(memo: &Memo, k: usize, n: usize) -> Result<NcPoly> {
    HypersimplexKey::new(k, n)?;
    compute(memo, k, n)
}

fn compute(memo: &Memo, k: usize, n: usize) -> Result<NcPoly> {
    if k == 0 || k == n {
        return Ok(NcPoly::one());
    }
    if n == 2 {
        return Ok(NcPoly::c());
    }
    // empty chain and vertices
    let mut phi = alt_power(n - 1);
    phi += &memo.g(n - 2).scale(&binomial(n, k));
    // chains ending in σ_{C,D} with |C| = i, |D| = j
    for (i, j, count) in face_types(k, n) {
        let face = cd_hypersimplex(memo, k - i, n - i - j)?;
        let term = &*face * &*memo.g(i + j - 1);
        phi += &term.scale(&count.into());
    }
    normalize_mixed(&phi)
}
