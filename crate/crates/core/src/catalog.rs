//! Named matroids. Element labels in the tables are 0-based.

use crate::combinatorics::{k_subsets, to_set};
use crate::cuspidal::CuspidalKey;
use crate::error::Result;
use crate::matroid::{CyclicFlat, Matroid};

pub const FANO_LINES: [[usize; 3]; 7] = [
    [0, 1, 2],
    [0, 3, 4],
    [0, 5, 6],
    [1, 3, 5],
    [1, 4, 6],
    [2, 3, 6],
    [2, 4, 5],
];

pub const MK4_TRIANGLES: [[usize; 3]; 4] = [[0, 1, 3], [0, 2, 4], [1, 2, 5], [3, 4, 5]];

/// All `k`-subsets except the listed circuit-hyperplanes.
pub fn sparse_paving(n: usize, k: usize, nonbases: &[Vec<usize>]) -> Result<Matroid> {
    let removed: Vec<u64> = nonbases.iter().map(|b| to_set(b.iter().copied())).collect();
    Matroid::from_bases(
        n,
        k,
        k_subsets(n, k).into_iter().filter(|b| !removed.contains(b)),
    )
}

fn from_table<const K: usize>(n: usize, nonbases: &[[usize; K]]) -> Matroid {
    let lists: Vec<Vec<usize>> = nonbases.iter().map(|b| b.to_vec()).collect();
    sparse_paving(n, K, &lists).expect("catalogue entry is a matroid")
}

pub fn fano() -> Matroid {
    from_table(7, &FANO_LINES)
}

pub fn mk4() -> Matroid {
    from_table(6, &MK4_TRIANGLES)
}

/// Rank 4 on pairs `{0,1}, {2,3}, {4,5}, {6,7}`; the nonbases are five of the six
/// unions of two pairs, all but `{4,5,6,7}`.
pub fn vamos() -> Matroid {
    let pairs = [[0, 1], [2, 3], [4, 5], [6, 7]];
    let mut nonbases = Vec::new();
    for i in 0..4 {
        for j in i + 1..4 {
            if (i, j) != (2, 3) {
                nonbases.push([pairs[i][0], pairs[i][1], pairs[j][0], pairs[j][1]]);
            }
        }
    }
    from_table(8, &nonbases)
}

/// The rank-4 matroids on eight elements with two circuit-hyperplanes meeting in
/// two, one and zero elements.
pub fn example_m(which: u8) -> Matroid {
    let second = match which {
        1 => [0, 1, 4, 5],
        2 => [0, 4, 5, 6],
        3 => [4, 5, 6, 7],
        _ => panic!("example_m takes 1, 2 or 3"),
    };
    from_table(8, &[[0, 1, 2, 3], second])
}

/// Rank 3 on five elements without the bases `{0,1,2}` and `{0,3,4}`.
pub fn example_535() -> Matroid {
    from_table(5, &[[0, 1, 2], [0, 3, 4]])
}

/// The matroid whose base polytope is the cuspidal polytope of `key`, with the
/// cut flat `{0, …, h-1}`.
pub fn cuspidal(key: CuspidalKey) -> Result<Matroid> {
    let flat = CyclicFlat {
        set: to_set(0..key.h),
        rank: key.r,
    };
    Matroid::from_cyclic_flats(key.n, key.k, &[flat])
}

/// Rank 2 with the given parallel class sizes (all at least 1); classes of size
/// one are ordinary elements.
pub fn rank_two(classes: &[usize]) -> Result<Matroid> {
    let mut label = Vec::new();
    for (c, &size) in classes.iter().enumerate() {
        label.extend(std::iter::repeat_n(c, size));
    }
    let n = label.len();
    let bases = k_subsets(n, 2).into_iter().filter(|&b| {
        let i = b.trailing_zeros() as usize;
        let j = 63 - b.leading_zeros() as usize;
        label[i] != label[j]
    });
    Matroid::from_bases(n, 2, bases)
}
