use cdx::catalog;
use cdx::corpus::{generate, Family};
use cdx::engine::{cd_index, EngineOptions};
use cdx::ncpoly::{ab_to_cd, cd_to_ab, cd_to_flag_f};
use cdx::oracle::face_lattice;
use cdx::{Letter, Memo, NcPoly, Word};
use num_bigint::BigInt;
use proptest::prelude::*;

/// A cd-word of the given degree read off the bits of `choice`.
fn cd_word(degree: usize, mut choice: u64) -> Word {
    let mut rem = degree;
    let mut letters = Vec::new();
    while rem > 0 {
        if rem >= 2 && choice & 1 == 1 {
            letters.push(Letter::D);
            rem -= 2;
        } else {
            letters.push(Letter::C);
            rem -= 1;
        }
        choice >>= 1;
    }
    Word::new(letters)
}

fn cd_poly() -> impl Strategy<Value = (usize, NcPoly)> {
    (0usize..=10).prop_flat_map(|degree| {
        prop::collection::vec((any::<u64>(), -1000i64..1000), 1..8).prop_map(move |terms| {
            let poly = NcPoly::from_terms(
                terms
                    .into_iter()
                    .map(|(choice, coeff)| (cd_word(degree, choice), BigInt::from(coeff))),
            );
            (degree, poly)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn ab_cd_roundtrip((degree, p) in cd_poly()) {
        let ab = cd_to_ab(&p).unwrap();
        prop_assert!(ab.is_ab());
        prop_assert!(ab.is_zero() || ab.is_homogeneous_of(degree));
        prop_assert_eq!(ab.swap_ab(), ab.clone());
        prop_assert_eq!(ab_to_cd(&ab).unwrap(), p);
    }

    #[test]
    fn products_of_words_multiply_degrees((d1, p) in cd_poly(), (d2, q) in cd_poly()) {
        let pq = &p * &q;
        prop_assert!(pq.is_zero() || pq.is_homogeneous_of(d1 + d2));
        prop_assert_eq!(cd_to_ab(&pq).unwrap(), &cd_to_ab(&p).unwrap() * &cd_to_ab(&q).unwrap());
    }
}

#[test]
fn computed_indices_are_consistent() {
    let memo = Memo::new();
    let mut corpus: Vec<_> = generate(7, &Family::ALL)
        .unwrap()
        .into_iter()
        .map(|i| i.matroid)
        .collect();
    corpus.extend([
        catalog::fano(),
        catalog::vamos(),
        catalog::mk4(),
        catalog::example_m(1),
    ]);
    for m in &corpus {
        let p = cd_index(&memo, m, EngineOptions::default()).unwrap();
        assert!(p.is_nonnegative(), "{m}");
        let ab = cd_to_ab(&p).unwrap();
        assert_eq!(ab.swap_ab(), ab, "{m}");
        let flags = cd_to_flag_f(&p, m.n() - 1).unwrap();
        assert_eq!(flags.get(&[]), BigInt::from(1));
        assert_eq!(flags.get(&[0]), BigInt::from(m.num_bases()));
        assert!(flags.iter().all(|(_, v)| *v >= BigInt::from(0)));
    }
}

#[test]
fn small_lattices_are_eulerian() {
    for inst in generate(6, &Family::ALL).unwrap() {
        let lattice = face_lattice(&inst.matroid, 8).unwrap();
        assert!(lattice.eulerian_check().is_ok(), "{}", inst.name);
    }
}
