//! cd-index of a Cartesian product of polytopes.
//!
//! The nonempty faces of `V × W` are the pairs `(σ, τ)` of nonempty faces, with
//! dimensions adding. A chain of such pairs projects to a weakly increasing chain in
//! each factor, and a weak chain with dimensions `e_1 ≤ … ≤ e_s` is a strict chain on
//! its distinct dimensions, so it is counted by `f_{set(e)}` of the factor. Summing
//! over all chains of dimension pairs in the grid `[0, dim V] × [0, dim W]` yields the
//! flag f-vector of the product.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{CdError, Result};
use crate::ncpoly::{cd_to_flag_f, FlagFVector, NcPoly};

/// Flag f-vector of `V × W` from those of the factors.
pub fn flag_product(v: &FlagFVector, w: &FlagFVector) -> FlagFVector {
    let p = v.dim();
    let q = w.dim();
    let mut acc = vec![BigInt::zero(); 1 << (p + q)];
    acc[0] += 1;
    let mut walker = ChainWalker {
        p,
        q,
        v,
        w,
        acc: &mut acc,
    };
    for x in 0..=p {
        for y in 0..=q {
            if (x, y) != (p, q) {
                walker.visit(x, y, 0, 0, 0);
            }
        }
    }
    FlagFVector::from_entries(p + q, acc).expect("sized by construction")
}

struct ChainWalker<'a> {
    p: usize,
    q: usize,
    v: &'a FlagFVector,
    w: &'a FlagFVector,
    acc: &'a mut [BigInt],
}

impl ChainWalker<'_> {
    /// Extends the current chain by the grid point `(x, y)` and recurses upward.
    fn visit(&mut self, x: usize, y: usize, e_mask: usize, g_mask: usize, s_mask: usize) {
        let e_mask = if x < self.p { e_mask | 1 << x } else { e_mask };
        let g_mask = if y < self.q { g_mask | 1 << y } else { g_mask };
        let s_mask = s_mask | 1 << (x + y);
        self.acc[s_mask] += self.v.get_mask(e_mask) * self.w.get_mask(g_mask);
        for nx in x..=self.p {
            for ny in y..=self.q {
                if (nx, ny) != (x, y) && (nx, ny) != (self.p, self.q) {
                    self.visit(nx, ny, e_mask, g_mask, s_mask);
                }
            }
        }
    }
}

/// cd-index of `V × W` given the cd-indices of `V` and `W`.
pub fn cd_product(p: &NcPoly, dim_p: usize, q: &NcPoly, dim_q: usize) -> Result<NcPoly> {
    let fv = factor_flags(p, dim_p)?;
    let fw = factor_flags(q, dim_q)?;
    flag_product(&fv, &fw).cd_index()
}

fn factor_flags(p: &NcPoly, dim: usize) -> Result<FlagFVector> {
    if p.is_zero() || !p.is_cd() || !p.is_homogeneous_of(dim) {
        return Err(CdError::DegreeMismatch {
            expected: dim,
            found: format!("factor {p}"),
        });
    }
    cd_to_flag_f(p, dim)
}
