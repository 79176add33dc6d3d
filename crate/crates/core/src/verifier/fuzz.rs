//! Seeded random campaign over fixtures, labellings and realizable uniform
//! matroids. Each trial draws from its own ChaCha8 stream, so the campaign
//! output does not depend on scheduling.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{parity_check, verify_representative, ParityReport, RepresentativeCheck, VerifierError};
use crate::complexes::{
    argmax_labelling, barycentric_subdivide, crosspolytope_boundary, random_rotation, torus_fixture, ComplexError,
    ComplexFile, Labelling, SignedInjection, Z2Complex, TORUS_DEFAULT_N,
};
use crate::om::{MatrixFile, OrientedMatroid, RationalMatrix};

/// Identifier recorded in every report: ChaCha8 seeded with
/// `seed_from_u64(seed)`, stream `trial` for trial number `trial`.
pub const RNG_ALGORITHM: &str = "rand_chacha::ChaCha8Rng(seed_from_u64(seed), set_stream(trial))";

pub const ROTATION_ATTEMPTS: usize = 8;
const EXTRA_SUBDIVISIONS: usize = 2;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct FuzzConfig {
    pub trials: usize,
    /// Inclusive bounds on the complex dimension.
    pub n_range: (usize, usize),
    /// Inclusive bounds on the ground set size.
    pub m_range: (usize, usize),
    pub seed: u64,
}

impl Default for FuzzConfig {
    fn default() -> Self {
        FuzzConfig { trials: 200, n_range: (1, 2), m_range: (2, 6), seed: 42 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct TrialSummary {
    pub trial: usize,
    pub n: usize,
    pub m: usize,
    pub fixture: String,
    pub lhs: Option<u8>,
    pub rhs: Option<u8>,
    pub pass: bool,
}

/// Everything needed to rerun a failing trial by hand.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct FuzzFinding {
    pub trial: usize,
    pub seed: u64,
    pub n: usize,
    pub m: usize,
    pub fixture: String,
    pub reason: String,
    pub complex: Option<ComplexFile>,
    pub labelling: Option<Labelling>,
    pub matrix: Option<MatrixFile>,
    pub report: Option<ParityReport>,
    pub representative: Option<RepresentativeCheck>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct FuzzReport {
    pub algorithm: String,
    pub config: FuzzConfig,
    pub passes: usize,
    pub failures: usize,
    pub pass: bool,
    pub trials: Vec<TrialSummary>,
    pub findings: Vec<FuzzFinding>,
}

/// Argmax labelling of `k` after a random rotation and signed injection,
/// redrawn up to `attempts` times while the result is inadmissible.
pub fn rotated_argmax_labelling<R: Rng + ?Sized>(
    k: &Z2Complex,
    m: usize,
    rng: &mut R,
    attempts: usize,
) -> Result<Labelling, ComplexError> {
    let d = k
        .coords()
        .and_then(|c| c.values().next())
        .map(|x| x.len())
        .ok_or_else(|| ComplexError::MissingCoordinates(k.vertices().first().copied().unwrap_or(0)))?;
    let mut last = None;
    for _ in 0..attempts.max(1) {
        let rotated = k.rotated(&random_rotation(d, rng))?;
        let injection = SignedInjection::random(d, m, rng)?;
        match argmax_labelling(&rotated, &injection, m) {
            Ok(lambda) => return Ok(lambda),
            Err(e @ ComplexError::LabellingInadmissible { .. }) => last = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(last.expect("at least one attempt was made"))
}

/// [`rotated_argmax_labelling`] with `ROTATION_ATTEMPTS` draws; on failure
/// the complex is subdivided and the search repeats, at most
/// `EXTRA_SUBDIVISIONS` times. Returns the complex actually labelled and the
/// number of extra subdivisions.
pub fn generate_labelling<R: Rng + ?Sized>(
    k: &Z2Complex,
    m: usize,
    rng: &mut R,
) -> Result<(Z2Complex, Labelling, usize), ComplexError> {
    let mut current = k.clone();
    for extra in 0..=EXTRA_SUBDIVISIONS {
        match rotated_argmax_labelling(&current, m, rng, ROTATION_ATTEMPTS) {
            Ok(lambda) => return Ok((current, lambda, extra)),
            Err(e @ ComplexError::LabellingInadmissible { .. }) if extra == EXTRA_SUBDIVISIONS => return Err(e),
            Err(ComplexError::LabellingInadmissible { .. }) => current = barycentric_subdivide(&current)?,
            Err(e) => return Err(e),
        }
    }
    unreachable!()
}

/// Random `r x m` integer matrix with entries in `-4..=4`, redrawn until its
/// oriented matroid is uniform of rank `r`.
pub fn random_uniform_matrix<R: Rng + ?Sized>(r: usize, m: usize, rng: &mut R) -> (RationalMatrix, OrientedMatroid) {
    loop {
        let rows: Vec<Vec<i64>> = (0..r).map(|_| (0..m).map(|_| rng.gen_range(-4..=4)).collect()).collect();
        let Ok(a) = RationalMatrix::from_integers(&rows) else { continue };
        if let Ok(om) = OrientedMatroid::from_matrix(&a) {
            if om.rank() == r && om.is_uniform() {
                return (a, om);
            }
        }
    }
}

struct Outcome {
    summary: TrialSummary,
    finding: Option<FuzzFinding>,
}

fn run_trial(config: &FuzzConfig, trial: usize) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    rng.set_stream(trial as u64);

    let (n_lo, n_hi) = config.n_range;
    let n_hi = n_hi.min(config.m_range.1.saturating_sub(1));
    let n = rng.gen_range(n_lo.max(1)..=n_hi.max(n_lo.max(1)));
    let m = rng.gen_range(config.m_range.0.max(n + 1)..=config.m_range.1.max(n + 1));

    let use_torus = n == 2 && rng.gen_ratio(1, 4);
    let (base, mut fixture, subdivisions) = if use_torus {
        (torus_fixture(TORUS_DEFAULT_N), format!("torus{TORUS_DEFAULT_N}"), 0)
    } else {
        let s = rng.gen_range(0..=2usize);
        (crosspolytope_boundary(n + 1), format!("crosspolytope{}", n + 1), s)
    };

    let mut finding = FuzzFinding {
        trial,
        seed: config.seed,
        n,
        m,
        fixture: fixture.clone(),
        reason: String::new(),
        complex: None,
        labelling: None,
        matrix: None,
        report: None,
        representative: None,
    };
    let fail = |mut finding: FuzzFinding, fixture: String, reason: String, report: Option<&ParityReport>| {
        finding.fixture = fixture.clone();
        finding.reason = reason;
        Outcome {
            summary: TrialSummary {
                trial,
                n,
                m,
                fixture,
                lhs: report.map(|r| r.lhs),
                rhs: report.map(|r| r.rhs),
                pass: false,
            },
            finding: Some(finding),
        }
    };

    let mut k = match base {
        Ok(k) => k,
        Err(e) => return fail(finding, fixture, e.to_string(), None),
    };
    for _ in 0..subdivisions {
        k = match barycentric_subdivide(&k) {
            Ok(k) => k,
            Err(e) => return fail(finding, fixture, e.to_string(), None),
        };
    }
    let (k, lambda, extra) = match generate_labelling(&k, m, &mut rng) {
        Ok(t) => t,
        Err(e) => {
            finding.complex = Some(k.to_file());
            return fail(finding, fixture, e.to_string(), None);
        }
    };
    let total_sd = subdivisions + extra;
    if total_sd > 0 {
        fixture = format!("{fixture}/sd{total_sd}");
    }
    let (a, om) = random_uniform_matrix(m - n, m, &mut rng);
    finding.complex = Some(k.to_file());
    finding.labelling = Some(lambda.clone());
    finding.matrix = Some(MatrixFile::from_matrix(&a));

    let report = match parity_check(&k, &lambda, &om) {
        Ok(r) => r,
        Err(e) => return fail(finding, fixture, e.to_string(), None),
    };
    let representative = match verify_representative(&om) {
        Ok(r) => r,
        Err(VerifierError::NonUniform) => unreachable!("matrix was drawn uniform"),
        Err(e) => return fail(finding, fixture, e.to_string(), Some(&report)),
    };
    if report.pass && representative.pass {
        return Outcome {
            summary: TrialSummary {
                trial,
                n,
                m,
                fixture,
                lhs: Some(report.lhs),
                rhs: Some(report.rhs),
                pass: true,
            },
            finding: None,
        };
    }
    let reason = if !report.pass { "parity mismatch" } else { "cochain representative check failed" };
    finding.report = Some(report.clone());
    finding.representative = Some(representative);
    fail(finding, fixture, reason.to_string(), Some(&report))
}

/// Worker count from `FANVER_THREADS`; 0 (rayon's default) when unset or
/// unparsable.
fn thread_count() -> usize {
    std::env::var("FANVER_THREADS").ok().and_then(|s| s.trim().parse().ok()).unwrap_or(0)
}

pub fn fuzz_campaign(config: &FuzzConfig) -> FuzzReport {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(thread_count())
        .build()
        .expect("thread pool");
    let outcomes: Vec<Outcome> = pool.install(|| (0..config.trials).into_par_iter().map(|t| run_trial(config, t)).collect());
    let passes = outcomes.iter().filter(|o| o.summary.pass).count();
    let mut trials = Vec::with_capacity(outcomes.len());
    let mut findings = Vec::new();
    for o in outcomes {
        trials.push(o.summary);
        findings.extend(o.finding);
    }
    FuzzReport {
        algorithm: RNG_ALGORITHM.to_string(),
        config: config.clone(),
        passes,
        failures: trials.len() - passes,
        pass: passes == trials.len(),
        trials,
        findings,
    }
}
