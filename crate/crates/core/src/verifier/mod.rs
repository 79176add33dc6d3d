//! The parity identity between the Stiefel-Whitney number of a free
//! Z2-manifold and the count of facets whose labels form cocircuits, its
//! Ky Fan special case, and the cochain representative of `w_1^n`.

mod fuzz;

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use fuzz::{
    fuzz_campaign, generate_labelling, random_uniform_matrix, rotated_argmax_labelling, FuzzConfig, FuzzFinding, FuzzReport, TrialSummary,
    RNG_ALGORITHM, ROTATION_ATTEMPTS,
};

use crate::complexes::{
    crosspolytope_boundary, lambda_image, validate_labelling, ComplexError, LabelImage, Labelling, LabellingViolation,
    Simplex, Z2Complex,
};
use crate::om::{alternating_dual, OmError, OrientedMatroid};
use crate::signsets::{face_from_signvector, SignVector};
use crate::z2homology::{
    invariant_coboundary_witness, is_cocycle, sw_number, GF2Cochain, SimplexTable, Z2Error,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifierError {
    #[error("matroid rank {r} on {m} elements does not match complex dimension {n} (need m - r = n)")]
    RankMismatch { m: usize, r: usize, n: usize },
    #[error("labelling uses m = {labels} but the matroid has m = {matroid}")]
    GroundMismatch { labels: usize, matroid: usize },
    #[error("oriented matroid is not uniform")]
    NonUniform,
    #[error("no admissible configuration: need n < m (n = {n}, m = {m})")]
    NoAdmissibleConfiguration { n: usize, m: usize },
    #[error("labelling violates {0}")]
    Labelling(LabellingViolation),
    #[error("hits on {orbit} and its negative differ ({positive} vs {negative})")]
    Equivariance { orbit: SignVector, positive: u64, negative: u64 },
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Matroid(#[from] OmError),
    #[error(transparent)]
    Homology(#[from] Z2Error),
}

/// Facet counts by cocircuit orbit. `hits` keeps, per canonical
/// representative `τ`, the number of facets labelled `τ` and labelled `-τ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlphaTable {
    hits: BTreeMap<SignVector, (u64, u64)>,
    total_facets: u64,
    degenerate: u64,
    non_cocircuit: u64,
}

impl AlphaTable {
    /// `α(τ) + α(-τ)` for each orbit, zeros included.
    pub fn by_orbit(&self) -> BTreeMap<SignVector, u64> {
        self.hits.iter().map(|(k, (p, q))| (k.clone(), p + q)).collect()
    }

    /// `α(τ)` for the canonical representative only.
    pub fn representative_hits(&self, tau: &SignVector) -> Option<u64> {
        self.hits.get(tau).map(|h| h.0)
    }

    pub fn total_facets(&self) -> u64 {
        self.total_facets
    }

    pub fn degenerate_count(&self) -> u64 {
        self.degenerate
    }

    pub fn non_cocircuit_count(&self) -> u64 {
        self.non_cocircuit
    }

    pub fn total_hits(&self) -> u64 {
        self.hits.values().map(|(p, q)| p + q).sum()
    }
}

fn check_inputs(k: &Z2Complex, lambda: &Labelling, om: &OrientedMatroid) -> Result<(), VerifierError> {
    k.validate().map_err(|v| VerifierError::Complex(ComplexError::Invalid(v)))?;
    validate_labelling(k, lambda).map_err(VerifierError::Labelling)?;
    if lambda.m != om.m() {
        return Err(VerifierError::GroundMismatch { labels: lambda.m, matroid: om.m() });
    }
    if om.corank() != k.dim() {
        return Err(VerifierError::RankMismatch { m: om.m(), r: om.rank(), n: k.dim() });
    }
    if !om.is_uniform() {
        return Err(VerifierError::NonUniform);
    }
    Ok(())
}

pub fn alpha_counts(k: &Z2Complex, lambda: &Labelling, om: &OrientedMatroid) -> Result<AlphaTable, VerifierError> {
    check_inputs(k, lambda, om)?;
    // face label set -> (canonical representative, is the representative itself)
    let mut lookup: HashMap<Vec<i64>, (SignVector, bool)> = HashMap::new();
    let mut hits = BTreeMap::new();
    for c in om.cocircuits() {
        let rep = c.canonical_orbit_representative().expect("cocircuits are nonzero");
        let labels: Vec<i64> = face_from_signvector(c).labels().iter().copied().collect();
        lookup.insert(labels, (rep.clone(), rep == *c));
        hits.insert(rep, (0u64, 0u64));
    }
    let (mut degenerate, mut non_cocircuit) = (0, 0);
    for f in k.facets() {
        match lambda_image(f, lambda).map_err(VerifierError::Labelling)? {
            LabelImage::Degenerate => degenerate += 1,
            LabelImage::Face(face) => {
                let labels: Vec<i64> = face.labels().iter().copied().collect();
                match lookup.get(&labels) {
                    Some((rep, true)) => hits.get_mut(rep).expect("orbit registered").0 += 1,
                    Some((rep, false)) => hits.get_mut(rep).expect("orbit registered").1 += 1,
                    None => non_cocircuit += 1,
                }
            }
        }
    }
    if let Some((orbit, &(positive, negative))) = hits.iter().find(|(_, (p, q))| p != q) {
        return Err(VerifierError::Equivariance { orbit: orbit.clone(), positive, negative });
    }
    let table = AlphaTable { hits, total_facets: k.facets().len() as u64, degenerate, non_cocircuit };
    debug_assert_eq!(table.total_hits() + degenerate + non_cocircuit, table.total_facets);
    Ok(table)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ParityReport {
    pub lhs: u8,
    pub rhs: u8,
    pub pass: bool,
    pub alpha_by_orbit: BTreeMap<SignVector, u64>,
    pub degenerate_count: u64,
    pub non_cocircuit_count: u64,
    pub total_facets: u64,
}

/// The parity report for a known `lhs = w(M)`; lets callers reuse one
/// Stiefel-Whitney computation across many labellings of the same complex.
pub fn parity_check_with_lhs(
    k: &Z2Complex,
    lambda: &Labelling,
    om: &OrientedMatroid,
    lhs: bool,
) -> Result<ParityReport, VerifierError> {
    let table = alpha_counts(k, lambda, om)?;
    let half_of_all = (table.total_hits() / 2) % 2;
    let over_orbits = table.hits.values().map(|h| h.0).sum::<u64>() % 2;
    assert_eq!(half_of_all, over_orbits, "the two forms of the right-hand side disagree");
    let rhs = half_of_all as u8;
    Ok(ParityReport {
        lhs: lhs as u8,
        rhs,
        pass: lhs as u8 == rhs,
        alpha_by_orbit: table.by_orbit(),
        degenerate_count: table.degenerate,
        non_cocircuit_count: table.non_cocircuit,
        total_facets: table.total_facets,
    })
}

pub fn parity_check(k: &Z2Complex, lambda: &Labelling, om: &OrientedMatroid) -> Result<ParityReport, VerifierError> {
    check_inputs(k, lambda, om)?;
    let lhs = sw_number(k)?;
    parity_check_with_lhs(k, lambda, om, lhs)
}

/// `α(k_1, -k_2, k_3, …)` for one increasing sequence `k_1 < … < k_{n+1}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceCount {
    pub labels: Vec<i64>,
    pub alpha: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct KyFanReport {
    #[serde(flatten)]
    pub report: ParityReport,
    pub sequences: Vec<SequenceCount>,
    /// `Σ α(k_1, -k_2, …) mod 2`.
    pub sequence_parity: u8,
}

/// Parity check against the alternating matroid on `m` elements, with the
/// count of each alternating label sequence.
pub fn kyfan_classical(k: &Z2Complex, lambda: &Labelling, m: usize) -> Result<KyFanReport, VerifierError> {
    let n = k.dim();
    if n >= m {
        return Err(VerifierError::NoAdmissibleConfiguration { n, m });
    }
    let om = alternating_dual(m, n)?;
    let report = parity_check(k, lambda, &om)?;
    let table = alpha_counts(k, lambda, &om)?;
    let sequences: Vec<SequenceCount> = om
        .orbit_representatives()
        .into_iter()
        .map(|tau| {
            let labels = tau
                .entries()
                .iter()
                .enumerate()
                .filter(|(_, s)| !s.is_zero())
                .enumerate()
                .map(|(j, (i, _))| if j % 2 == 0 { i as i64 + 1 } else { -(i as i64 + 1) })
                .collect();
            SequenceCount { labels, alpha: table.representative_hits(&tau).unwrap_or(0) }
        })
        .collect();
    let sequence_parity = (sequences.iter().map(|s| s.alpha).sum::<u64>() % 2) as u8;
    Ok(KyFanReport { report, sequences, sequence_parity })
}

/// `C_M`: the degree-`(m - r)` cochain on `∂♦^m` with value 1 on the face of
/// every cocircuit.
pub fn build_cochain_representative(om: &OrientedMatroid) -> Result<GF2Cochain, VerifierError> {
    if !om.is_uniform() {
        return Err(VerifierError::NonUniform);
    }
    let faces = om.cocircuits().iter().map(|c| face_from_signvector(c).labels().iter().copied().collect::<Simplex>());
    Ok(GF2Cochain::new(om.corank(), faces))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct RepresentativeCheck {
    pub is_cocycle: bool,
    pub is_nontrivial: bool,
    pub pass: bool,
}

/// Checks an arbitrary cochain on `∂♦^m`: it must be a cocycle and must not be
/// the coboundary of any `ν`-invariant cochain. Invariant cochains compute
/// the cohomology of the quotient `RP^{m-1}`, whose degree-n group is `Z2`
/// for `n ≤ m - 1`, so passing means the cochain represents `w_1^n`.
pub fn verify_cochain(m: usize, c: &GF2Cochain) -> Result<RepresentativeCheck, VerifierError> {
    let sphere = crosspolytope_boundary(m)?;
    let table = SimplexTable::of_complex(&sphere);
    let is_cocycle = is_cocycle(&table, c)?;
    let is_nontrivial = invariant_coboundary_witness(&table, c, |v| -v)?.is_none();
    Ok(RepresentativeCheck { is_cocycle, is_nontrivial, pass: is_cocycle && is_nontrivial })
}

pub fn verify_representative(om: &OrientedMatroid) -> Result<RepresentativeCheck, VerifierError> {
    verify_cochain(om.m(), &build_cochain_representative(om)?)
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeSet;

    use super::*;
    use crate::om::{alternating_dual_combinatorial, RationalMatrix};

    fn square_identity() -> (Z2Complex, Labelling) {
        let k = crosspolytope_boundary(2).unwrap();
        let labels = k.vertices().iter().map(|&v| (v, v)).collect();
        (k, Labelling::new(2, labels))
    }

    fn hexagon() -> (Z2Complex, Labelling) {
        let antipode = (0..6).map(|v| (v, (v + 3) % 6)).collect();
        let k = Z2Complex::new(1, 0..6, antipode, (0..6).map(|v| vec![v, (v + 1) % 6]), None);
        let labels = [1, 2, 3, -1, -2, -3].into_iter().enumerate().map(|(v, l)| (v as i64, l)).collect();
        (k, Labelling::new(3, labels))
    }

    fn sv(s: &str) -> SignVector {
        s.parse().unwrap()
    }

    #[test]
    fn square_counts() {
        let (k, lambda) = square_identity();
        let om = alternating_dual(2, 1).unwrap();
        let t = alpha_counts(&k, &lambda, &om).unwrap();
        assert_eq!(t.by_orbit(), BTreeMap::from([(sv("+-"), 2)]));
        assert_eq!(t.representative_hits(&sv("+-")), Some(1));
        assert_eq!((t.total_facets(), t.degenerate_count(), t.non_cocircuit_count()), (4, 0, 2));
        let r = parity_check(&k, &lambda, &om).unwrap();
        assert_eq!((r.lhs, r.rhs, r.pass), (1, 1, true));
    }

    #[test]
    fn hexagon_counts() {
        let (k, lambda) = hexagon();
        let om = alternating_dual(3, 1).unwrap();
        let t = alpha_counts(&k, &lambda, &om).unwrap();
        assert_eq!(
            t.by_orbit(),
            BTreeMap::from([(sv("+-0"), 0), (sv("+0-"), 2), (sv("0+-"), 0)])
        );
        let r = parity_check(&k, &lambda, &om).unwrap();
        assert_eq!((r.lhs, r.rhs, r.pass), (1, 1, true));
        let ky = kyfan_classical(&k, &lambda, 3).unwrap();
        assert_eq!(ky.report, r);
        assert_eq!(ky.sequence_parity, 1);
        let hit = ky.sequences.iter().find(|s| s.labels == vec![1, -3]).unwrap();
        assert_eq!(hit.alpha, 1);
    }

    #[test]
    fn reports_round_trip_through_json() {
        let (k, lambda) = hexagon();
        let ky = kyfan_classical(&k, &lambda, 3).unwrap();
        let json = serde_json::to_string(&ky).unwrap();
        assert!(json.contains("\"alphaByOrbit\":{\"0+-\":0,\"+-0\":0,\"+0-\":2}"));
        assert_eq!(serde_json::from_str::<KyFanReport>(&json).unwrap(), ky);
        let check = verify_representative(&alternating_dual(3, 1).unwrap()).unwrap();
        let json = serde_json::to_string(&check).unwrap();
        assert_eq!(json, r#"{"isCocycle":true,"isNontrivial":true,"pass":true}"#);
    }

    #[test]
    fn degenerate_facets_are_separate() {
        let (k, _) = hexagon();
        let labels = [1, 1, 2, -1, -1, -2].into_iter().enumerate().map(|(v, l)| (v as i64, l)).collect();
        let lambda = Labelling::new(2, labels);
        let t = alpha_counts(&k, &lambda, &alternating_dual(2, 1).unwrap()).unwrap();
        assert_eq!((t.degenerate_count(), t.non_cocircuit_count(), t.total_hits()), (2, 2, 2));
        assert!(parity_check(&k, &lambda, &alternating_dual(2, 1).unwrap()).unwrap().pass);
    }

    #[test]
    fn rejects_bad_configurations() {
        let (k, lambda) = square_identity();
        let om3 = alternating_dual(3, 1).unwrap();
        assert!(matches!(parity_check(&k, &lambda, &om3), Err(VerifierError::GroundMismatch { .. })));
        let (hk, hl) = hexagon();
        let wrong_rank = alternating_dual(3, 2).unwrap();
        assert!(matches!(parity_check(&hk, &hl, &wrong_rank), Err(VerifierError::RankMismatch { .. })));
        assert!(matches!(
            kyfan_classical(&hk, &hl, 1),
            Err(VerifierError::NoAdmissibleConfiguration { n: 1, m: 1 })
        ));
        let non_uniform = OrientedMatroid::from_matrix(&RationalMatrix::from_integers(&[vec![1, 0, 0], vec![0, 1, 1]]).unwrap()).unwrap();
        assert!(!non_uniform.is_uniform());
        assert!(matches!(parity_check(&hk, &hl, &non_uniform), Err(VerifierError::NonUniform)));
        assert!(matches!(build_cochain_representative(&non_uniform), Err(VerifierError::NonUniform)));
    }

    #[test]
    fn cochain_examples() {
        let c = build_cochain_representative(&alternating_dual(2, 1).unwrap()).unwrap();
        assert_eq!(c.support, BTreeSet::from([vec![-2, 1], vec![-1, 2]]));
        let check = verify_representative(&alternating_dual(2, 1).unwrap()).unwrap();
        assert!(check.pass);

        let moment = OrientedMatroid::from_matrix(&RationalMatrix::moment_curve(2, 3).unwrap()).unwrap();
        let c = build_cochain_representative(&moment).unwrap();
        assert_eq!((c.dim, c.support.len()), (1, 6));
        assert!(verify_representative(&moment).unwrap().pass);

        let top = build_cochain_representative(&alternating_dual_combinatorial(3, 2).unwrap()).unwrap();
        assert_eq!(top.support, BTreeSet::from([vec![-2, 1, 3], vec![-3, -1, 2]]));
    }

    #[test]
    fn corrupted_cochain_is_caught() {
        let om = OrientedMatroid::from_matrix(&RationalMatrix::moment_curve(2, 3).unwrap()).unwrap();
        let mut c = build_cochain_representative(&om).unwrap();
        let first = c.support.iter().next().unwrap().clone();
        let mut partner: Simplex = first.iter().map(|v| -v).collect();
        partner.sort_unstable();
        c.support.remove(&first);
        c.support.remove(&partner);
        assert!(!verify_cochain(3, &c).unwrap().pass);
    }
}
