//! One line per acceptance criterion. All comparisons are exact; the only
//! tolerances are the wall-clock limits below.

use std::time::{Duration, Instant};

use cdx::catalog;
use cdx::corpus::{generate, Family};
use cdx::engine::{cd_index, cd_sparse_paving, cd_split_matroid, w_term, EngineOptions, WKey};
use cdx::hypersimplex::{cd_hypersimplex, cd_hypersimplex_unreduced};
use cdx::matroid::{Matroid, ModularKey};
use cdx::ncpoly::{ab_to_cd, cd_to_ab, cd_to_flag_f};
use cdx::oracle::{face_lattice, oracle_cd_index};
use cdx::reference::{self, parse_printed};
use cdx::{Letter, Memo, NcPoly, Word};
use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

const LIMIT_U25: Duration = Duration::from_secs(1);
const LIMIT_AB: Duration = Duration::from_secs(1);
const LIMIT_M123: Duration = Duration::from_secs(10);
const LIMIT_FANO_VAMOS: Duration = Duration::from_secs(30);
const LIMIT_SPARSE: Duration = Duration::from_secs(120);
const LIMIT_ORACLE: Duration = Duration::from_secs(600);
const MIN_RANDOM_SPARSE: usize = 50;
const RANDOM_ROUNDTRIPS: usize = 1000;
const SEED: u64 = 0x5eed_cd1d;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

fn timed(limit: Duration, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let mut out = f();
    let elapsed = start.elapsed();
    if elapsed > limit {
        out.passed = false;
    }
    out.detail = format!("{} [{:.2?} / limit {:?}]", out.detail, elapsed, limit);
    out
}

fn printed(text: &str) -> NcPoly {
    parse_printed(text).expect("reference text parses")
}

fn criterion_1() -> Outcome {
    timed(LIMIT_U25, || {
        let p = cd_hypersimplex(&Memo::new(), 2, 5).unwrap();
        outcome(
            *p == printed(reference::U25_CD),
            format!("Psi(Delta_2,5) = {p}"),
        )
    })
}

fn criterion_2() -> Outcome {
    timed(LIMIT_AB, || {
        let ab = cd_to_ab(&printed(reference::U25_CD)).unwrap();
        let want = printed(reference::U25_AB);
        outcome(
            ab == want && ab.len() == 16 && ab.swap_ab() == ab,
            format!("{} terms", ab.len()),
        )
    })
}

fn criterion_3() -> Outcome {
    let memo = Memo::new();
    cd_hypersimplex(&memo, 4, 8).unwrap();
    timed(LIMIT_M123, || {
        let psi: Vec<NcPoly> = (1..=3)
            .map(|i| cd_split_matroid(&memo, &catalog::example_m(i)).unwrap())
            .collect();
        let w = w_term(&memo, WKey::new(1, 1, 2, 2, 8).unwrap()).unwrap();
        let exact = psi[0] == printed(reference::M1_CD) && psi[1] == printed(reference::M2_CD);
        let same = psi[1] == psi[2] && psi[0] != psi[1];
        let diff = &psi[1] - &psi[0] == *w;
        outcome(
            exact && same && diff,
            format!(
                "published values {exact}, M2 = M3 != M1 {same}, M2 - M1 = W(1,1,2,2,8) {diff}"
            ),
        )
    })
}

fn criterion_4() -> Outcome {
    timed(LIMIT_FANO_VAMOS, || {
        let memo = Memo::new();
        let key = ModularKey {
            alpha: 1,
            beta: 1,
            a: 2,
            b: 2,
        };
        let mut ok = true;
        let mut notes = Vec::new();
        for (name, m, text, lambda, mu) in [
            ("Fano", catalog::fano(), reference::FANO_CD, 7, 21),
            ("Vamos", catalog::vamos(), reference::VAMOS_CD, 5, 8),
        ] {
            let profile = m.split_profile().unwrap();
            let counts = profile.total_lambda() == lambda
                && profile.total_mu() == mu
                && profile.mu.get(&key) == Some(&mu);
            let want = printed(text);
            let exact = cd_split_matroid(&memo, &m).unwrap() == want;
            ok &= counts && exact;
            notes.push(format!(
                "{name}: lambda/mu {counts}, {} terms exact {exact}",
                want.len()
            ));
        }
        outcome(ok, notes.join("; "))
    })
}

/// Random packings of `k`-subsets pairwise meeting in at most `k - 2` elements.
fn random_sparse_paving(rng: &mut StdRng) -> Option<Matroid> {
    let n = rng.gen_range(6..=9);
    let k = rng.gen_range(3..=n - 3);
    let mut pool = cdx::combinatorics::k_subsets(n, k);
    pool.shuffle(rng);
    let target = rng.gen_range(1..=8);
    let mut chosen: Vec<u64> = Vec::new();
    for s in pool {
        if chosen.len() == target {
            break;
        }
        if chosen
            .iter()
            .all(|c| (c & s).count_ones() as usize <= k - 2)
        {
            chosen.push(s);
        }
    }
    let lists: Vec<Vec<usize>> = chosen
        .iter()
        .map(|&s| cdx::combinatorics::bits(s).collect())
        .collect();
    let m = catalog::sparse_paving(n, k, &lists).ok()?;
    m.is_connected().then_some(m)
}

fn criterion_5() -> Outcome {
    timed(LIMIT_SPARSE, || {
        let memo = Memo::new();
        let mut rng = StdRng::seed_from_u64(SEED);
        let mut instances = vec![catalog::fano(), catalog::vamos()];
        while instances.len() < MIN_RANDOM_SPARSE + 2 {
            if let Some(m) = random_sparse_paving(&mut rng) {
                instances.push(m);
            }
        }
        let mismatches = instances
            .iter()
            .filter(|m| cd_sparse_paving(&memo, m).unwrap() != cd_split_matroid(&memo, m).unwrap())
            .count();
        let modular = instances
            .iter()
            .filter(|m| m.split_profile().unwrap().total_mu() > 0)
            .count();
        outcome(
            mismatches == 0,
            format!(
                "{} instances ({modular} with modular pairs), {mismatches} mismatches",
                instances.len()
            ),
        )
    })
}

fn criterion_6() -> Outcome {
    timed(LIMIT_ORACLE, || {
        let memo = Memo::new();
        let corpus = generate(7, &Family::ALL).unwrap();
        let mut failures = Vec::new();
        let mut per_family = std::collections::BTreeMap::new();
        for inst in &corpus {
            *per_family.entry(inst.family.as_str()).or_insert(0) += 1;
            let formula = cd_index(&memo, &inst.matroid, EngineOptions::default()).unwrap();
            if formula != oracle_cd_index(&inst.matroid, 8).unwrap() {
                failures.push(inst.name.clone());
            }
        }
        outcome(
            failures.is_empty(),
            format!(
                "{} instances {per_family:?}, failures {failures:?}",
                corpus.len()
            ),
        )
    })
}

fn criterion_7() -> Outcome {
    let memo = Memo::new();
    let square: NcPoly = "ccd + 2*dd".parse().unwrap();
    let w_ok = (5..=12).all(|n| {
        let w = w_term(&memo, WKey::new(1, 1, 2, 2, n).unwrap()).unwrap();
        *w == &square * &*cd_hypersimplex(&memo, 1, n - 4).unwrap()
    });
    let dual_ok = (2..=9).all(|n| {
        (1..n).all(|k| {
            cd_hypersimplex_unreduced(&memo, k, n).unwrap()
                == cd_hypersimplex_unreduced(&memo, n - k, n).unwrap()
        })
    });
    outcome(
        w_ok && dual_ok,
        format!("W identity for 5 <= n <= 12: {w_ok}; hypersimplex duality for n <= 9: {dual_ok}"),
    )
}

fn random_cd(rng: &mut StdRng, degree: usize) -> NcPoly {
    let terms = (0..rng.gen_range(1..8)).map(|_| {
        let mut rem = degree;
        let mut letters = Vec::new();
        while rem > 0 {
            if rem >= 2 && rng.gen_bool(0.5) {
                letters.push(Letter::D);
                rem -= 2;
            } else {
                letters.push(Letter::C);
                rem -= 1;
            }
        }
        (
            Word::new(letters),
            BigInt::from(rng.gen_range(-1000i64..1000)),
        )
    });
    NcPoly::from_terms(terms)
}

fn criterion_8() -> Outcome {
    let mut rng = StdRng::seed_from_u64(SEED);
    let roundtrip = (0..RANDOM_ROUNDTRIPS).all(|_| {
        let degree = rng.gen_range(0..=10);
        let p = random_cd(&mut rng, degree);
        ab_to_cd(&cd_to_ab(&p).unwrap()).unwrap() == p
    });

    let memo = Memo::new();
    let mut matroids: Vec<Matroid> = generate(7, &Family::ALL)
        .unwrap()
        .into_iter()
        .map(|i| i.matroid)
        .collect();
    matroids.extend([catalog::fano(), catalog::vamos(), catalog::mk4()]);
    matroids.extend((1..=3).map(catalog::example_m));
    let (mut mirror, mut flags, mut nonneg) = (true, true, true);
    for m in &matroids {
        let p = cd_index(&memo, m, EngineOptions::default()).unwrap();
        let ab = cd_to_ab(&p).unwrap();
        mirror &= ab.swap_ab() == ab;
        let f = cd_to_flag_f(&p, m.n() - 1).unwrap();
        flags &= f.get(&[]) == BigInt::from(1)
            && f.iter().all(|(_, v)| v.sign() != num_bigint::Sign::Minus);
        nonneg &= p.is_nonnegative();
    }
    let eulerian = generate(6, &Family::ALL).unwrap().iter().all(|inst| {
        face_lattice(&inst.matroid, 8)
            .unwrap()
            .eulerian_check()
            .is_ok()
    });
    outcome(
        roundtrip && mirror && flags && nonneg && eulerian,
        format!(
            "roundtrip x{RANDOM_ROUNDTRIPS} {roundtrip}; over {} indices: mirror {mirror}, \
             flag-f nonnegative with f_empty = 1 {flags}, cd nonnegative {nonneg}; \
             Eulerian lattices n <= 6 {eulerian}",
            matroids.len()
        ),
    )
}

type Criterion = (&'static str, fn() -> Outcome);

#[test]
fn acceptance() {
    let criteria: [Criterion; 8] = [
        ("1 cd-index of Delta_2,5", criterion_1),
        ("2 ab-index of Delta_2,5", criterion_2),
        ("3 M1, M2, M3", criterion_3),
        ("4 Fano and Vamos", criterion_4),
        ("5 sparse paving fast path", criterion_5),
        ("6 oracle equivalence n <= 7", criterion_6),
        ("7 identities", criterion_7),
        ("8 property suite", criterion_8),
    ];
    let mut failed = Vec::new();
    for (name, check) in criteria {
        let out = check();
        println!(
            "{} criterion {name}: {}",
            if out.passed { "PASS" } else { "FAIL" },
            out.detail
        );
        if !out.passed {
            failed.push(name);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
