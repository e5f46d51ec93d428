//! cd-index of the cuspidal polytope `Δ_{k,n} ∩ {x(F) ≤ r}` with `|F| = h`.
//!
//! Its faces are of two sorts. Faces of `Δ_{k,n}` meeting the open side
//! `x(F) < r` survive with unchanged dimension, either untouched (a smaller
//! hypersimplex) or cut (a smaller cuspidal polytope). The remaining faces lie in
//! the new facet `τ = Δ_{k,n} ∩ {x(F) = r} ≅ Δ_{r,h} × Δ_{k-r,n-h}`.

use std::sync::Arc;

use num_bigint::BigInt;

use crate::combinatorics::{binomial, binomial_u64};
use crate::error::{CdError, Result};
use crate::hypersimplex::{cd_hypersimplex, face_types};
use crate::memo::{CacheKind, Memo};
use crate::ncpoly::{emve, normalize_mixed, NcPoly};
use crate::product::cd_product;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CuspidalKey {
    pub k: usize,
    pub n: usize,
    pub r: usize,
    pub h: usize,
}

impl CuspidalKey {
    /// Validates that `x(F) = r` cuts the interior of `Δ_{k,n}`.
    pub fn new(k: usize, n: usize, r: usize, h: usize) -> Result<Self> {
        let key = CuspidalKey { k, n, r, h };
        if key.is_cutting() {
            Ok(key)
        } else {
            Err(CdError::InvalidParams(format!(
                "(k, n, r, h) = ({k}, {n}, {r}, {h}) does not cut the hypersimplex"
            )))
        }
    }

    pub fn is_cutting(&self) -> bool {
        let CuspidalKey { k, n, r, h } = *self;
        h <= n && k <= n && r >= 1 && r < k.min(h) && k.saturating_sub(n - h) < r
    }

    /// The key of the dual matroid: complement flat `E \ F` of rank
    /// `(n - k) - (h - r)`.
    pub fn dual(&self) -> CuspidalKey {
        let CuspidalKey { k, n, r, h } = *self;
        CuspidalKey {
            k: n - k,
            n,
            r: n + r - k - h,
            h: n - h,
        }
    }

    /// Number of `k`-subsets `B` with `|B ∩ F| ≤ r`.
    pub fn vertex_count(&self) -> u64 {
        (0..=self.r)
            .map(|t| binomial_u64(self.h, t) * binomial_u64(self.n - self.h, self.k - t))
            .sum()
    }

    fn raw(&self) -> [usize; 4] {
        [self.k, self.n, self.r, self.h]
    }
}

/// Where a face `σ_{C,D}` of `Δ_{k,n}` sits relative to `x(F) = r`, given
/// `c_in = |C ∩ F|`, `c_out = |C \ F|`, `d_in = |D ∩ F|`, `d_out = |D \ F|`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FaceSide {
    /// Lies in `x(F) ≥ r`; contributes at most a face of `τ`.
    Excluded,
    /// Lies in `x(F) ≤ r`: a hypersimplex `Δ_{k', n'}`.
    Kept { k: usize, n: usize },
    /// Cut by the hyperplane: the smaller cuspidal polytope.
    Cut(CuspidalKey),
}

pub fn classify_face(
    key: &CuspidalKey,
    c_in: usize,
    c_out: usize,
    d_in: usize,
    d_out: usize,
) -> FaceSide {
    let k_face = key.k - c_in - c_out;
    let n_face = key.n - c_in - c_out - d_in - d_out;
    let h_face = key.h - c_in - d_in;
    // range of x(F) over the face
    let lo = c_in + k_face.saturating_sub(n_face - h_face);
    let hi = c_in + h_face.min(k_face);
    if lo >= key.r {
        FaceSide::Excluded
    } else if hi <= key.r {
        FaceSide::Kept {
            k: k_face,
            n: n_face,
        }
    } else {
        FaceSide::Cut(CuspidalKey {
            k: k_face,
            n: n_face,
            r: key.r - c_in,
            h: h_face,
        })
    }
}

/// cd-index of the cuspidal polytope, homogeneous of degree `n - 1`.
pub fn cd_cuspidal(memo: &Memo, key: CuspidalKey) -> Result<Arc<NcPoly>> {
    if !key.is_cutting() {
        return Err(CdError::InvalidParams(format!(
            "cuspidal key {key:?} does not cut the hypersimplex"
        )));
    }
    if let Some(hit) = memo.get(CacheKind::Cuspidal, &key.raw()) {
        return Ok(hit);
    }
    let value = compute(memo, &key)?;
    memo.insert(CacheKind::Cuspidal, &key.dual().raw(), value.clone());
    Ok(memo.insert(CacheKind::Cuspidal, &key.raw(), value))
}

fn compute(memo: &Memo, key: &CuspidalKey) -> Result<NcPoly> {
    let CuspidalKey { k, n, r, h } = *key;
    let mut phi = emve(n - 1, key.vertex_count());

    // faces inherited from Δ_{k,n}
    let outside = n - h;
    for c_in in 0..=h.min(k - 1) {
        for c_out in 0..=outside.min(k - 1 - c_in) {
            for d_in in 0..=(h - c_in) {
                for d_out in 0..=(outside - c_out) {
                    let codim = c_in + c_out + d_in + d_out;
                    if codim == 0 || d_in + d_out >= n - k {
                        continue;
                    }
                    let side = classify_face(key, c_in, c_out, d_in, d_out);
                    #[cfg(debug_assertions)]
                    if n <= 7 {
                        check_side_conditions(key, c_in, c_out, d_in, d_out, side);
                    }
                    let face = match side {
                        FaceSide::Excluded => continue,
                        FaceSide::Kept { k, n } => cd_hypersimplex(memo, k, n)?,
                        FaceSide::Cut(inner) => cd_cuspidal(memo, inner)?,
                    };
                    let count = binomial(h, c_in)
                        * binomial(h - c_in, d_in)
                        * binomial(outside, c_out)
                        * binomial(outside - c_out, d_out);
                    let term = &*face * &*memo.g(codim - 1);
                    phi += &term.scale(&count);
                }
            }
        }
    }

    // faces of τ ≅ Δ_{r,h} × Δ_{k-r,n-h}, including τ itself
    let tau_dim = n - 2;
    let left = factor_types(r, h);
    let right = factor_types(k - r, n - h);
    for &(lk, ln, lcount) in &left {
        for &(rk, rn, rcount) in &right {
            let dim = (ln - 1) + (rn - 1);
            if dim == 0 {
                continue;
            }
            let face = hypersimplex_product(memo, lk, ln, rk, rn)?;
            let term = &*face * &*memo.g(tau_dim - dim);
            phi += &term.scale(&(BigInt::from(lcount) * rcount));
        }
    }

    normalize_mixed(&phi)
}

/// Nonempty faces of `Δ_{k,n}` by isomorphism type `(k', n', count)`: the
/// polytope itself, the proper faces of dimension at least one and the vertices
/// (as `Δ_{1,1}`).
fn factor_types(k: usize, n: usize) -> Vec<(usize, usize, u64)> {
    let mut out = vec![(k, n, 1), (1, 1, binomial_u64(n, k))];
    out.extend(
        face_types(k, n)
            .into_iter()
            .map(|(i, j, count)| (k - i, n - i - j, count)),
    );
    out
}

/// cd-index of `Δ_{k1,n1} × Δ_{k2,n2}` (both factors non-empty), memoized.
pub fn hypersimplex_product(
    memo: &Memo,
    k1: usize,
    n1: usize,
    k2: usize,
    n2: usize,
) -> Result<Arc<NcPoly>> {
    let a = crate::hypersimplex::HypersimplexKey::new(k1, n1)?;
    let b = crate::hypersimplex::HypersimplexKey::new(k2, n2)?;
    let (a, b) = if a <= b { (a, b) } else { (b, a) };
    let raw = [a.k(), a.n(), b.k(), b.n()];
    if let Some(hit) = memo.product(raw) {
        return Ok(hit);
    }
    let pa = cd_hypersimplex(memo, a.k(), a.n())?;
    let pb = cd_hypersimplex(memo, b.k(), b.n())?;
    let value = cd_product(&pa, a.dim(), &pb, b.dim())?;
    Ok(memo.insert_product(raw, value))
}

/// The inclusion conditions written directly on `C` and `D`: the face lies in
/// `x(F) ≥ r` iff `|C ∩ F| ≥ r` or `|D \ F| ≥ (n-h) - (k-r)`, and in `x(F) ≤ r`
/// iff `|C \ F| ≥ k - r` or `|D ∩ F| ≥ h - r`.
#[cfg(debug_assertions)]
fn check_side_conditions(
    key: &CuspidalKey,
    c_in: usize,
    c_out: usize,
    d_in: usize,
    d_out: usize,
    side: FaceSide,
) {
    let CuspidalKey { k, n, r, h } = *key;
    let upper = c_in >= r || d_out + k >= n - h + r;
    let lower = c_out + r >= k || d_in + r >= h;
    let expected_excluded = upper;
    debug_assert_eq!(
        matches!(side, FaceSide::Excluded),
        expected_excluded,
        "{key:?}"
    );
    if !upper {
        debug_assert_eq!(matches!(side, FaceSide::Kept { .. }), lower, "{key:?}");
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncpoly::cd_to_flag_f;

    fn poly(s: &str) -> NcPoly {
        s.parse().unwrap()
    }

    #[test]
    fn key_validation() {
        assert!(CuspidalKey::new(2, 4, 1, 2).is_ok());
        assert!(CuspidalKey::new(2, 4, 2, 2).is_err());
        assert!(CuspidalKey::new(2, 4, 0, 2).is_err());
        // cover empty: x(F) ≥ k - (n - h) = 2 on all of Δ_{3,4}
        assert!(CuspidalKey::new(3, 4, 2, 3).is_err());
        assert_eq!(
            CuspidalKey::new(3, 7, 2, 3).unwrap().dual(),
            CuspidalKey::new(4, 7, 3, 4).unwrap()
        );
    }

    #[test]
    fn square_pyramid() {
        let memo = Memo::new();
        let p = cd_cuspidal(&memo, CuspidalKey::new(2, 4, 1, 2).unwrap()).unwrap();
        // square pyramid: f = (5, 8, 5)
        assert_eq!(*p, poly("ccc + 3*cd + 3*dc"));
    }

    #[test]
    fn vertex_counts_match() {
        let memo = Memo::new();
        for n in 3..=8 {
            for k in 1..n {
                for h in 1..n {
                    for r in 1..n {
                        let Ok(key) = CuspidalKey::new(k, n, r, h) else {
                            continue;
                        };
                        let p = cd_cuspidal(&memo, key).unwrap();
                        assert!(p.is_nonnegative(), "{key:?}");
                        let f = cd_to_flag_f(&p, n - 1).unwrap();
                        assert_eq!(f.get(&[0]), key.vertex_count().into(), "{key:?}");
                        let dual = cd_cuspidal(&Memo::new(), key.dual()).unwrap();
                        assert_eq!(p, dual, "{key:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn non_cutting_keys_rejected() {
        let memo = Memo::new();
        let bad = CuspidalKey {
            k: 2,
            n: 4,
            r: 2,
            h: 3,
        };
        assert!(matches!(
            cd_cuspidal(&memo, bad),
            Err(CdError::InvalidParams(_))
        ));
    }
}
