use cdx::catalog;
use cdx::cuspidal::{cd_cuspidal, CuspidalKey};
use cdx::hypersimplex::cd_hypersimplex;
use cdx::matroid::Matroid;
use cdx::oracle::{face_lattice, oracle_cd_index};
use cdx::product::cd_product;
use cdx::Memo;

#[test]
fn hypersimplices_match_oracle() {
    let memo = Memo::new();
    for n in 2..=7 {
        for k in 1..n {
            let formula = cd_hypersimplex(&memo, k, n).unwrap();
            let oracle = oracle_cd_index(&Matroid::uniform(k, n).unwrap(), 8).unwrap();
            assert_eq!(*formula, oracle, "k = {k}, n = {n}");
        }
    }
}

#[test]
fn cuspidals_match_oracle() {
    let memo = Memo::new();
    let mut checked = 0;
    for n in 3..=7 {
        for k in 1..n {
            for h in 1..n {
                for r in 1..n {
                    let Ok(key) = CuspidalKey::new(k, n, r, h) else {
                        continue;
                    };
                    let m = catalog::cuspidal(key).unwrap();
                    let formula = cd_cuspidal(&memo, key).unwrap();
                    assert_eq!(*formula, oracle_cd_index(&m, 8).unwrap(), "{key:?}");
                    checked += 1;
                }
            }
        }
    }
    assert!(checked > 20);
}

#[test]
fn products_match_oracle() {
    let memo = Memo::new();
    for (k1, n1, k2, n2) in [(1, 2, 1, 3), (1, 3, 1, 3), (2, 4, 1, 2), (1, 3, 2, 4)] {
        let left = Matroid::uniform(k1, n1).unwrap();
        let right = Matroid::uniform(k2, n2).unwrap();
        let sum = left.direct_sum(&right).unwrap();
        let formula = cd_product(
            &cd_hypersimplex(&memo, k1, n1).unwrap(),
            n1 - 1,
            &cd_hypersimplex(&memo, k2, n2).unwrap(),
            n2 - 1,
        )
        .unwrap();
        assert_eq!(formula, oracle_cd_index(&sum, 8).unwrap());
    }
}

#[test]
fn oracle_lattices_are_eulerian_and_meet_closed() {
    let corpus = [
        Matroid::uniform(2, 5).unwrap(),
        Matroid::uniform(3, 6).unwrap(),
        catalog::example_535(),
        catalog::mk4(),
        catalog::rank_two(&[2, 2, 2]).unwrap(),
    ];
    for m in &corpus {
        let lattice = face_lattice(m, 8).unwrap();
        assert!(lattice.eulerian_check().is_ok(), "{m}");
        assert!(lattice.is_meet_closed(), "{m}");
    }
}

#[test]
fn corpus_matches_oracle() {
    use cdx::corpus::{generate, Family};
    use cdx::engine::{cd_index, EngineOptions};
    let memo = Memo::new();
    let corpus = generate(6, &Family::ALL).unwrap();
    for inst in &corpus {
        let formula = cd_index(&memo, &inst.matroid, EngineOptions::default()).unwrap();
        let oracle = oracle_cd_index(&inst.matroid, 8).unwrap();
        assert_eq!(formula, oracle, "{}", inst.name);
        let dual = cd_index(&memo, &inst.matroid.dual(), EngineOptions::default()).unwrap();
        assert_eq!(formula, dual, "dual of {}", inst.name);
    }
}
