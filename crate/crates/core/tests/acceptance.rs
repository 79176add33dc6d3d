//! Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any
//! criterion fails. All checks are exact; only runtimes carry limits.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use fanver_core::binomial;
use fanver_core::complexes::{
    barycentric_subdivide, crosspolytope_boundary, torus_fixture, Labelling, Z2Complex, TORUS_DEFAULT_N,
};
use fanver_core::om::{
    alternating_dual, check_cocircuit_axioms, chirotope_from_matrix, cocircuit_faces, minimal_intersected_faces,
    MatroidFile, OrientedMatroid, RationalMatrix,
};
use fanver_core::signsets::{Sign, SignVector};
use fanver_core::verifier::{
    build_cochain_representative, fuzz_campaign, kyfan_classical, parity_check, parity_check_with_lhs,
    random_uniform_matrix, rotated_argmax_labelling, verify_representative, FuzzConfig,
};
use fanver_core::z2homology::{sw_number, sw_number_with_order, VertexOrder};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const LABEL_ATTEMPTS: usize = 64;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn random_rational_matrix(rng: &mut ChaCha8Rng, r: usize, m: usize) -> RationalMatrix {
    loop {
        let rows: Vec<Vec<BigRational>> = (0..r)
            .map(|_| {
                (0..m)
                    .map(|_| {
                        let p: i64 = rng.gen_range(-5..=5);
                        let q: i64 = rng.gen_range(1..=4);
                        BigRational::new(BigInt::from(p), BigInt::from(q))
                    })
                    .collect()
            })
            .collect();
        let a = RationalMatrix::new(rows).expect("rectangular");
        if a.rank() == r {
            return a;
        }
    }
}

fn matrix_corpus() -> Vec<RationalMatrix> {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    (0..50)
        .map(|_| {
            let r = rng.gen_range(1..=3);
            let m = rng.gen_range(r + 1..=6);
            random_rational_matrix(&mut rng, r, m)
        })
        .collect()
}

fn criterion_1(corpus: &[RationalMatrix]) -> Outcome {
    let mut bad = 0;
    for a in corpus {
        let om = chirotope_from_matrix(a).expect("full rank").cocircuits();
        let from_chirotope: BTreeSet<_> = cocircuit_faces(&om).into_iter().collect();
        let geometric: BTreeSet<_> = minimal_intersected_faces(a).expect("full rank").into_iter().collect();
        if from_chirotope != geometric {
            bad += 1;
        }
    }
    outcome(bad == 0, format!("{} matrices, {bad} disagreements", corpus.len()))
}

fn criterion_2(corpus: &[RationalMatrix]) -> Outcome {
    let mut bad = Vec::new();
    for (i, a) in corpus.iter().enumerate() {
        let chi = chirotope_from_matrix(a).expect("full rank");
        let om = chi.cocircuits();
        let circuits = chi.circuits();
        let axioms = check_cocircuit_axioms(om.cocircuits()).is_ok();
        let orthogonal = circuits
            .iter()
            .all(|x| om.cocircuits().iter().all(|y| x.is_orthogonal(y).unwrap_or(false)));
        let dual_chirotope = chi.dual().cocircuits();
        let brute_dual = om.dual().expect("small ground set");
        let duality = dual_chirotope.cocircuits() == circuits.as_slice() && brute_dual == dual_chirotope;
        if !(axioms && orthogonal && duality) {
            bad.push(i);
        }
    }
    outcome(bad.is_empty(), format!("{} matrices, failing indices {bad:?}", corpus.len()))
}

fn alternating_signs(tau: &SignVector) -> bool {
    tau.entries()
        .iter()
        .filter(|s| !s.is_zero())
        .enumerate()
        .all(|(j, &s)| s == if j % 2 == 0 { Sign::Pos } else { Sign::Neg })
}

fn criterion_3() -> Outcome {
    let mut cases = 0;
    let mut bad = Vec::new();
    for m in 2..=8 {
        for n in 1..m {
            cases += 1;
            let ok = match alternating_dual(m, n) {
                Ok(om) => {
                    om.orbit_count() as u64 == binomial(m as u64, n as u64 + 1)
                        && om.orbit_representatives().iter().all(alternating_signs)
                        && om.cocircuits().iter().all(|c| c.support_len() == n + 1)
                }
                Err(_) => false,
            };
            if !ok {
                bad.push((m, n));
            }
        }
    }
    outcome(bad.is_empty(), format!("{cases} (m, n) pairs, failing {bad:?}"))
}

fn subdivisions(k: Z2Complex) -> Vec<(String, Z2Complex)> {
    let sd = barycentric_subdivide(&k).expect("valid");
    let sd2 = barycentric_subdivide(&sd).expect("valid");
    vec![("K".into(), k), ("sd".into(), sd), ("sd2".into(), sd2)]
}

/// Runs every labelling/matroid combination on `k`; returns (runs, failures).
fn parity_sweep(
    k: &Z2Complex,
    expected: bool,
    ms: &[usize],
    labellings: usize,
    matroids: usize,
    rng: &mut ChaCha8Rng,
) -> (usize, Vec<String>) {
    let n = k.dim();
    let lhs = match sw_number(k) {
        Ok(w) => w,
        Err(e) => return (0, vec![format!("sw_number: {e}")]),
    };
    let mut failures = Vec::new();
    if lhs != expected {
        failures.push(format!("w(M) = {}", lhs as u8));
    }
    let mut runs = 0;
    for i in 0..labellings {
        let m = ms[i % ms.len()];
        let lambda: Labelling = match rotated_argmax_labelling(k, m, rng, LABEL_ATTEMPTS) {
            Ok(l) => l,
            Err(e) => {
                failures.push(format!("labelling m={m}: {e}"));
                continue;
            }
        };
        for _ in 0..matroids {
            let (_, om) = random_uniform_matrix(m - n, m, rng);
            runs += 1;
            match parity_check_with_lhs(k, &lambda, &om, lhs) {
                Ok(r) if r.pass && r.rhs == expected as u8 => {}
                Ok(r) => failures.push(format!("m={m}: lhs {} rhs {}", r.lhs, r.rhs)),
                Err(e) => failures.push(format!("m={m}: {e}")),
            }
        }
    }
    (runs, failures)
}

fn criterion_4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut runs = 0;
    let mut failures = Vec::new();
    for n in 1..=3 {
        let ms: Vec<usize> = (n + 1..=n + 4).collect();
        for (name, k) in subdivisions(crosspolytope_boundary(n + 1).expect("k > 0")) {
            let (r, f) = parity_sweep(&k, true, &ms, 10, 5, &mut rng);
            runs += r;
            failures.extend(f.into_iter().map(|s| format!("n={n} {name}: {s}")));
        }
    }
    outcome(failures.is_empty(), format!("{runs} parity checks, failures {failures:?}"))
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let torus = torus_fixture(TORUS_DEFAULT_N).expect("even size");
    let (mut runs, mut failures) = parity_sweep(&torus, false, &[3, 4, 5, 6], 10, 2, &mut rng);
    let sd = barycentric_subdivide(&torus).expect("valid");
    let (r, f) = parity_sweep(&sd, false, &[3, 5], 2, 2, &mut rng);
    runs += r;
    failures.extend(f);
    outcome(failures.is_empty(), format!("{runs} parity checks on the torus, failures {failures:?}"))
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut fixtures: Vec<(String, Z2Complex, bool)> = Vec::new();
    for n in 1..=3 {
        for (name, k) in subdivisions(crosspolytope_boundary(n + 1).expect("k > 0")) {
            fixtures.push((format!("S{n}/{name}"), k, true));
        }
    }
    let torus = torus_fixture(TORUS_DEFAULT_N).expect("even size");
    for (name, k) in subdivisions(torus).into_iter().take(2) {
        fixtures.push((format!("T2/{name}"), k, false));
    }
    let mut bad = Vec::new();
    for (name, k, expected) in &fixtures {
        if sw_number(k).ok() != Some(*expected) {
            bad.push(format!("{name} ascending"));
        }
        for shuffle in 0..20 {
            let w = sw_number_with_order(k, |q| VertexOrder::shuffled(q.vertices(), &mut rng));
            if w.ok() != Some(*expected) {
                bad.push(format!("{name} shuffle {shuffle}"));
            }
        }
    }
    outcome(bad.is_empty(), format!("{} fixtures x 21 vertex orders, failing {bad:?}", fixtures.len()))
}

fn hexagon() -> (Z2Complex, Labelling) {
    let antipode = (0..6).map(|v| (v, (v + 3) % 6)).collect();
    let k = Z2Complex::new(1, 0..6, antipode, (0..6).map(|v| vec![v, (v + 1) % 6]), None);
    let labels = [1, 2, 3, -1, -2, -3].into_iter().enumerate().map(|(v, l)| (v as i64, l)).collect();
    (k, Labelling::new(3, labels))
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut cases: Vec<(String, Z2Complex, Labelling, usize)> = Vec::new();
    let (hex, hex_labels) = hexagon();
    cases.push(("hexagon m=3".into(), hex, hex_labels, 3));
    let sphere = crosspolytope_boundary(3).expect("k > 0");
    let sd2 = barycentric_subdivide(&barycentric_subdivide(&sphere).expect("valid")).expect("valid");
    for m in [4, 5] {
        match rotated_argmax_labelling(&sd2, m, &mut rng, LABEL_ATTEMPTS) {
            Ok(l) => cases.push((format!("sd2 octahedron m={m}"), sd2.clone(), l, m)),
            Err(e) => return outcome(false, format!("labelling m={m}: {e}")),
        }
    }
    let mut bad = Vec::new();
    for (name, k, lambda, m) in &cases {
        let ky = kyfan_classical(k, lambda, *m);
        let direct = alternating_dual(*m, k.dim()).map(|om| parity_check(k, lambda, &om));
        let ok = match (ky, direct) {
            (Ok(ky), Ok(Ok(direct))) => ky.report == direct && ky.sequence_parity == 1 && direct.rhs == 1 && direct.pass,
            _ => false,
        };
        if !ok {
            bad.push(name.clone());
        }
    }
    outcome(bad.is_empty(), format!("{} Ky Fan cases, failing {bad:?}", cases.len()))
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut corpus: Vec<(String, OrientedMatroid)> = Vec::new();
    for m in 2..=8 {
        for n in 1..m {
            corpus.push((format!("alternating m={m} n={n}"), alternating_dual(m, n).expect("0 < n < m")));
            let (_, om) = random_uniform_matrix(m - n, m, &mut rng);
            corpus.push((format!("random m={m} r={}", m - n), om));
        }
    }
    let mut bad = Vec::new();
    for (name, om) in &corpus {
        if !verify_representative(om).map(|r| r.pass).unwrap_or(false) {
            bad.push(name.clone());
        }
    }
    let file = include_str!("fixtures/uniform_m9_r3.json");
    let large = serde_json::from_str::<MatroidFile>(file)
        .map_err(|e| e.to_string())
        .and_then(|f| f.into_matroid(false).map_err(|e| e.to_string()));
    let support = match &large {
        Ok(om) => build_cochain_representative(om).map(|c| c.support.len()).unwrap_or(0),
        Err(_) => 0,
    };
    let large_pass = large.as_ref().map(|om| verify_representative(om).map(|r| r.pass).unwrap_or(false)).unwrap_or(false);
    let expected = 2 * binomial(9, 2) as usize;
    outcome(
        bad.is_empty() && support == expected && large_pass,
        format!(
            "{} uniform matroids, failing {bad:?}; m=9 r=3 support {support} (expected {expected}), check {}",
            corpus.len(),
            if large_pass { "pass" } else { "fail" }
        ),
    )
}

fn criterion_9() -> Outcome {
    let config = FuzzConfig { trials: 200, n_range: (1, 2), m_range: (2, 6), seed: 42 };
    let first = fuzz_campaign(&config);
    let second = fuzz_campaign(&config);
    let same = serde_json::to_string(&first).ok() == serde_json::to_string(&second).ok();
    outcome(
        first.passes == 200 && first.pass && same,
        format!("{}/{} passes, deterministic: {same}", first.passes, first.trials.len()),
    )
}

type Criterion<'a> = (&'static str, Duration, Box<dyn Fn() -> Outcome + 'a>);

fn main() {
    let corpus = matrix_corpus();
    let criteria: Vec<Criterion> = vec![
        ("1 geometric agreement of cocircuits", Duration::from_secs(30), Box::new(|| criterion_1(&corpus))),
        ("2 axioms, orthogonality and duality", Duration::from_secs(60), Box::new(|| criterion_2(&corpus))),
        ("3 alternating matroid constructions", Duration::from_secs(60), Box::new(criterion_3)),
        ("4 sphere parity", Duration::from_secs(120), Box::new(criterion_4)),
        ("5 torus parity", Duration::from_secs(60), Box::new(criterion_5)),
        ("6 Stiefel-Whitney numbers", Duration::from_secs(120), Box::new(criterion_6)),
        ("7 classical Ky Fan", Duration::from_secs(60), Box::new(criterion_7)),
        ("8 cochain representatives", Duration::from_secs(120), Box::new(criterion_8)),
        ("9 fuzz gate", Duration::from_secs(120), Box::new(criterion_9)),
    ];
    let mut all = true;
    for (name, limit, run) in &criteria {
        let start = Instant::now();
        let o = run();
        let elapsed = start.elapsed();
        let pass = o.pass && elapsed <= *limit;
        all &= pass;
        println!(
            "{} criterion {name}: {} [{:.2} s, limit {} s]",
            if pass { "PASS" } else { "FAIL" },
            o.detail,
            elapsed.as_secs_f64(),
            limit.as_secs()
        );
    }
    if !all {
        std::process::exit(1);
    }
}
