//! Deterministic families of connected split matroids for cross-checking the
//! formulas against the oracle.

use std::fmt;

use crate::catalog;
use crate::combinatorics::to_set;
use crate::cuspidal::CuspidalKey;
use crate::error::Result;
use crate::matroid::Matroid;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Uniform,
    Cuspidal,
    SparsePaving,
    Example535,
    RankTwo,
}

impl Family {
    pub const ALL: [Family; 5] = [
        Family::Uniform,
        Family::Cuspidal,
        Family::SparsePaving,
        Family::Example535,
        Family::RankTwo,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Family::Uniform => "uniform",
            Family::Cuspidal => "cuspidal",
            Family::SparsePaving => "sparse-paving",
            Family::Example535 => "example-535",
            Family::RankTwo => "rank-two",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug)]
pub struct Instance {
    pub name: String,
    pub family: Family,
    pub matroid: Matroid,
}

pub fn generate(max_n: usize, families: &[Family]) -> Result<Vec<Instance>> {
    let mut out = Vec::new();
    for &family in families {
        match family {
            Family::Uniform => uniforms(max_n, &mut out)?,
            Family::Cuspidal => cuspidals(max_n, &mut out)?,
            Family::SparsePaving => sparse_pavings(max_n, &mut out)?,
            Family::Example535 if max_n >= 5 => out.push(Instance {
                name: "example-535".into(),
                family,
                matroid: catalog::example_535(),
            }),
            Family::Example535 => {}
            Family::RankTwo => rank_twos(max_n, &mut out)?,
        }
    }
    Ok(out)
}

fn uniforms(max_n: usize, out: &mut Vec<Instance>) -> Result<()> {
    for n in 2..=max_n {
        for k in 1..n {
            out.push(Instance {
                name: format!("uniform({k},{n})"),
                family: Family::Uniform,
                matroid: Matroid::uniform(k, n)?,
            });
        }
    }
    Ok(())
}

fn cuspidals(max_n: usize, out: &mut Vec<Instance>) -> Result<()> {
    for n in 3..=max_n {
        for k in 1..n {
            for h in 1..n {
                for r in 1..k.min(h) {
                    if let Ok(key) = CuspidalKey::new(k, n, r, h) {
                        out.push(Instance {
                            name: format!("cuspidal({k},{n},{r},{h})"),
                            family: Family::Cuspidal,
                            matroid: catalog::cuspidal(key)?,
                        });
                    }
                }
            }
        }
    }
    Ok(())
}

/// One to three circuit-hyperplanes, covering every intersection pattern of the
/// second and third with the earlier ones.
fn sparse_pavings(max_n: usize, out: &mut Vec<Instance>) -> Result<()> {
    for n in 4..=max_n {
        for k in 2..=n - 2 {
            let first: Vec<usize> = (0..k).collect();
            push_sparse(n, k, vec![first.clone()], out)?;
            for t in (2 * k).saturating_sub(n)..=k - 2 {
                // second shares its first t elements with the first
                let second: Vec<usize> = (0..t).chain(k..2 * k - t).collect();
                push_sparse(n, k, vec![first.clone(), second.clone()], out)?;
                let blocks = [
                    (0..t).collect::<Vec<_>>(),
                    (t..k).collect(),
                    (k..2 * k - t).collect(),
                    (2 * k - t..n).collect(),
                ];
                for x0 in 0..=blocks[0].len() {
                    for x1 in 0..=blocks[1].len() {
                        for x2 in 0..=blocks[2].len() {
                            let used = x0 + x1 + x2;
                            if used > k || k - used > blocks[3].len() {
                                continue;
                            }
                            let x3 = k - used;
                            if x0 + x1 > k - 2 || x0 + x2 > k - 2 {
                                continue;
                            }
                            let third: Vec<usize> = blocks
                                .iter()
                                .zip([x0, x1, x2, x3])
                                .flat_map(|(b, x)| b[..x].iter().copied())
                                .collect();
                            push_sparse(n, k, vec![first.clone(), second.clone(), third], out)?;
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

fn push_sparse(
    n: usize,
    k: usize,
    hyperplanes: Vec<Vec<usize>>,
    out: &mut Vec<Instance>,
) -> Result<()> {
    let m = catalog::sparse_paving(n, k, &hyperplanes)?;
    if !m.is_connected() {
        return Ok(());
    }
    let labels: Vec<String> = hyperplanes
        .iter()
        .map(|h| format!("{:x}", to_set(h.iter().copied())))
        .collect();
    out.push(Instance {
        name: format!("sparse-paving({k},{n};{})", labels.join(",")),
        family: Family::SparsePaving,
        matroid: m,
    });
    Ok(())
}

fn rank_twos(max_n: usize, out: &mut Vec<Instance>) -> Result<()> {
    for n in 3..=max_n {
        for parts in 3..=5 {
            for sizes in partitions(n, parts, n) {
                out.push(Instance {
                    name: format!("rank-two({})", join(&sizes)),
                    family: Family::RankTwo,
                    matroid: catalog::rank_two(&sizes)?,
                });
            }
        }
    }
    Ok(())
}

/// Partitions of `n` into exactly `parts` positive parts, each at most `max`,
/// in nonincreasing order.
fn partitions(n: usize, parts: usize, max: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return if n == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in (1..=max.min(n)).rev() {
        for mut rest in partitions(n - first, parts - 1, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn join(sizes: &[usize]) -> String {
    sizes
        .iter()
        .map(usize::to_string)
        .collect::<Vec<_>>()
        .join(",")
}
