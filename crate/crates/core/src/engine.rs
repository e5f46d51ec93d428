//! cd-index of a connected split matroid from its cyclic-flat statistics, and the
//! dispatcher for arbitrary matroids.

use std::sync::Arc;

use rayon::prelude::*;

use crate::combinatorics::binomial;
use crate::cuspidal::{cd_cuspidal, hypersimplex_product, CuspidalKey};
use crate::error::{CdError, Result};
use crate::hypersimplex::cd_hypersimplex;
use crate::matroid::{Matroid, ModularKey, SplitProfile};
use crate::memo::{CacheKind, Memo};
use crate::ncpoly::NcPoly;
use crate::oracle::oracle_cd_index;
use crate::product::cd_product;

/// Error-term parameters of a modular pair, plus the ground set size.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WKey {
    pub alpha: usize,
    pub beta: usize,
    pub a: usize,
    pub b: usize,
    pub n: usize,
}

impl WKey {
    /// Needs `n > a + b` so every face figure `Δ_{1, n-i-j}` is nonempty. Index
    /// ranges that are vacuous (`α = 0`, `α ≥ a`, …) are allowed and give zero.
    pub fn new(alpha: usize, beta: usize, a: usize, b: usize, n: usize) -> Result<Self> {
        if n <= a + b {
            return Err(CdError::InvalidParams(format!(
                "W({alpha}, {beta}, {a}, {b}) needs n > a + b, got n = {n}"
            )));
        }
        Ok(WKey {
            alpha,
            beta,
            a,
            b,
            n,
        })
    }

    pub fn from_modular(key: &ModularKey, n: usize) -> Result<Self> {
        WKey::new(key.alpha, key.beta, key.a, key.b, n)
    }

    pub fn swapped(&self) -> WKey {
        WKey {
            alpha: self.beta,
            beta: self.alpha,
            a: self.b,
            b: self.a,
            n: self.n,
        }
    }

    fn raw(&self) -> [usize; 5] {
        [self.alpha, self.beta, self.a, self.b, self.n]
    }
}

/// `Σ C(a,i) C(b,j) C(a-i,α-p) C(b-j,β-q) Ψ(Δ_{p,i} × Δ_{q,j}) · d · Ψ(Δ_{1,n-i-j})`
/// over `1 ≤ p ≤ α`, `1 ≤ q ≤ β`, `p < i ≤ a-α+p`, `q < j ≤ b-β+q`.
pub fn w_term(memo: &Memo, key: WKey) -> Result<Arc<NcPoly>> {
    if let Some(hit) = memo.get(CacheKind::W, &key.raw()) {
        return Ok(hit);
    }
    let WKey {
        alpha,
        beta,
        a,
        b,
        n,
    } = key;
    let mut acc = NcPoly::zero();
    if alpha < a && beta < b {
        for p in 1..=alpha {
            for q in 1..=beta {
                for i in p + 1..=a - alpha + p {
                    for j in q + 1..=b - beta + q {
                        let count = binomial(a, i)
                            * binomial(b, j)
                            * binomial(a - i, alpha - p)
                            * binomial(b - j, beta - q);
                        let face = hypersimplex_product(memo, p, i, q, j)?;
                        let figure = cd_hypersimplex(memo, 1, n - i - j)?;
                        let term = &(&*face * &NcPoly::d()) * &*figure;
                        acc += &term.scale(&count);
                    }
                }
            }
        }
    }
    Ok(memo.insert(CacheKind::W, &key.raw(), acc))
}

/// The cuspidal key of a proper cyclic flat of rank `r` and size `h`.
pub fn lambda_key(k: usize, n: usize, r: usize, h: usize) -> Result<CuspidalKey> {
    CuspidalKey::new(k, n, r, h)
}

/// `Ψ(Δ_{k,n}) + Σ λ(r,h) (Ψ(Λ) - Ψ(Δ_{k,n})) - Σ μ W` for a profile of a
/// connected split matroid.
pub fn cd_from_profile(memo: &Memo, k: usize, n: usize, profile: &SplitProfile) -> Result<NcPoly> {
    let delta = cd_hypersimplex(memo, k, n)?;
    let lambda: Vec<_> = profile.lambda.iter().collect();
    let cut_terms = lambda
        .par_iter()
        .map(|(&(r, h), &count)| {
            let cusp = cd_cuspidal(memo, lambda_key(k, n, r, h)?)?;
            Ok((&*cusp - &*delta).scale(&count.into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let modular: Vec<_> = profile.mu.iter().collect();
    let error_terms = modular
        .par_iter()
        .map(|(key, &count)| Ok(w_term(memo, WKey::from_modular(key, n)?)?.scale(&count.into())))
        .collect::<Result<Vec<_>>>()?;
    let mut phi = (*delta).clone();
    for t in &cut_terms {
        phi += t;
    }
    for t in &error_terms {
        phi -= t;
    }
    Ok(phi)
}

pub fn cd_split_matroid(memo: &Memo, m: &Matroid) -> Result<NcPoly> {
    if !m.is_connected() {
        return Err(CdError::NotConnected);
    }
    if m.n() == 1 {
        return Ok(NcPoly::one());
    }
    let check = m.is_connected_split()?;
    if !check.is_split {
        return Err(CdError::NotSplit(check.obstruction.unwrap_or_default()));
    }
    cd_from_profile(memo, m.rank(), m.n(), &m.split_profile()?)
}

/// `λ Ψ(Λ_{1,k,n-k,n}) - (λ-1) Ψ(Δ_{k,n}) - μ (c²d + 2d²) Ψ(Δ_{1,n-4})`.
pub fn cd_sparse_paving(memo: &Memo, m: &Matroid) -> Result<NcPoly> {
    if !m.is_sparse_paving()? {
        return Err(CdError::NotSparsePaving(format!(
            "{m} is disconnected or has a proper cyclic flat that is not a circuit-hyperplane"
        )));
    }
    let (k, n) = (m.rank(), m.n());
    let flats = m.proper_cyclic_flats()?;
    let lambda = flats.len();
    let mu = flats
        .iter()
        .enumerate()
        .flat_map(|(i, f)| flats[i + 1..].iter().map(move |g| (f, g)))
        .filter(|(f, g)| (f.set & g.set).count_ones() as usize + 2 == k)
        .count();
    sparse_paving_formula(memo, k, n, lambda, mu)
}

/// The sparse paving expression for given `λ` and `μ`.
pub fn sparse_paving_formula(
    memo: &Memo,
    k: usize,
    n: usize,
    lambda: usize,
    mu: usize,
) -> Result<NcPoly> {
    let delta = cd_hypersimplex(memo, k, n)?;
    let mut phi = (*delta).clone();
    if lambda > 0 {
        let cusp = cd_cuspidal(memo, lambda_key(k, n, k - 1, k)?)?;
        phi += &(&*cusp - &*delta).scale(&lambda.into());
    }
    if mu > 0 {
        if n < 5 {
            return Err(CdError::InvalidParams(format!(
                "modular circuit-hyperplanes need n >= 5, got n = {n}"
            )));
        }
        let square: NcPoly = "ccd + 2*dd".parse().expect("literal");
        let tail = &square * &*cd_hypersimplex(memo, 1, n - 4)?;
        phi -= &tail.scale(&mu.into());
    }
    Ok(phi)
}

#[derive(Clone, Copy, Debug, Default)]
pub struct EngineOptions {
    /// Components that are not split are handed to the oracle when their size is at
    /// most this bound.
    pub oracle_fallback: Option<usize>,
}

/// cd-index of any matroid: split components by formula, combined by products.
pub fn cd_index(memo: &Memo, m: &Matroid, options: EngineOptions) -> Result<NcPoly> {
    let mut acc = NcPoly::one();
    let mut dim = 0;
    for comp in m.connected_components() {
        let c = &comp.matroid;
        let comp_dim = c.n() - 1;
        let poly = if c.n() == 1 {
            NcPoly::one()
        } else {
            match cd_split_matroid(memo, c) {
                Ok(p) => p,
                Err(CdError::NotSplit(reason)) => match options.oracle_fallback {
                    Some(bound) if c.n() <= bound => oracle_cd_index(c, bound)?,
                    _ => {
                        return Err(CdError::UnsupportedMatroid(format!(
                            "component {:?} is not split ({reason})",
                            crate::combinatorics::bits(comp.elements).collect::<Vec<_>>()
                        )))
                    }
                },
                Err(e) => return Err(e),
            }
        };
        acc = cd_product(&acc, dim, &poly, comp_dim)?;
        dim += comp_dim;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn poly(s: &str) -> NcPoly {
        s.parse().unwrap()
    }

    #[test]
    fn small_w_terms() {
        let memo = Memo::new();
        let w = w_term(&memo, WKey::new(1, 1, 2, 2, 5).unwrap()).unwrap();
        assert_eq!(*w, poly("ccd + 2*dd"));
        assert!(w_term(&memo, WKey::new(2, 1, 2, 2, 5).unwrap())
            .unwrap()
            .is_zero());
        assert!(w_term(&memo, WKey::new(0, 1, 2, 2, 5).unwrap())
            .unwrap()
            .is_zero());
        assert!(WKey::new(1, 1, 2, 2, 4).is_err());
    }

    #[test]
    fn w_is_symmetric() {
        let memo = Memo::new();
        for n in 6..=10 {
            for (alpha, beta, a, b) in [
                (1, 1, 2, 3),
                (1, 2, 2, 3),
                (2, 1, 3, 2),
                (1, 2, 3, 4),
                (2, 2, 3, 4),
            ] {
                let Ok(key) = WKey::new(alpha, beta, a, b, n) else {
                    continue;
                };
                assert_eq!(
                    w_term(&memo, key).unwrap(),
                    w_term(&memo, key.swapped()).unwrap()
                );
            }
        }
    }

    #[test]
    fn uniform_and_point() {
        let memo = Memo::new();
        let u = Matroid::uniform(2, 5).unwrap();
        assert_eq!(
            cd_split_matroid(&memo, &u).unwrap(),
            *cd_hypersimplex(&memo, 2, 5).unwrap()
        );
        let coloop = Matroid::uniform(1, 1).unwrap();
        assert_eq!(
            cd_index(&memo, &coloop, EngineOptions::default()).unwrap(),
            NcPoly::one()
        );
    }

    #[test]
    fn square_by_dispatch() {
        let memo = Memo::new();
        let seg = Matroid::uniform(1, 2).unwrap();
        let square = seg.direct_sum(&seg).unwrap();
        assert_eq!(
            cd_index(&memo, &square, EngineOptions::default()).unwrap(),
            poly("cc + 2*d")
        );
        assert!(matches!(
            cd_split_matroid(&memo, &square),
            Err(CdError::NotConnected)
        ));
    }

    #[test]
    fn sparse_paving_agrees_with_theorem() {
        let memo = Memo::new();
        for m in [
            catalog::fano(),
            catalog::mk4(),
            catalog::example_535(),
            catalog::example_m(1),
        ] {
            assert_eq!(
                cd_sparse_paving(&memo, &m).unwrap(),
                cd_split_matroid(&memo, &m).unwrap()
            );
        }
    }

    #[test]
    fn non_split_is_unsupported_without_fallback() {
        let memo = Memo::new();
        let m = Matroid::from_cyclic_flats(
            6,
            3,
            &[
                crate::matroid::CyclicFlat::new(&[0, 1], 1),
                crate::matroid::CyclicFlat::new(&[0, 1, 2, 3], 2),
            ],
        )
        .unwrap();
        assert!(matches!(
            cd_index(&memo, &m, EngineOptions::default()),
            Err(CdError::UnsupportedMatroid(_))
        ));
        let options = EngineOptions {
            oracle_fallback: Some(8),
        };
        let p = cd_index(&memo, &m, options).unwrap();
        assert!(p.is_homogeneous_of(5));
    }
}
