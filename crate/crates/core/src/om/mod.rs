//! Oriented matroids given by their cocircuits.
//!
//! Realizable matroids come from exact rational matrices through their
//! chirotope ([`chirotope_from_matrix`]); anything else enters as a
//! cocircuit list and is passed through [`check_cocircuit_axioms`] first.
//!
//! All cocircuit lists are kept in one deterministic order: by support
//! (ascending index list), canonical sign before its negation.

mod chirotope;
mod matrix;
mod oracle;

use std::collections::{BTreeSet, HashSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use chirotope::{chirotope_from_matrix, Chirotope};
pub use matrix::{determinant_sign, null_space, rank_of, MatrixFile, RationalMatrix};
pub use oracle::{minimal_intersected_faces, subspace_face_oracle};

use crate::signsets::{face_from_signvector, Sign, SignVector};
use crate::util::{binomial, combinations};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OmError {
    #[error("matrix has {rows} rows but rank {rank}")]
    RankDeficient { rows: usize, rank: usize },
    #[error("rank {r} exceeds ground size {m}")]
    RankExceedsGround { r: usize, m: usize },
    #[error("matrix is empty")]
    EmptyMatrix,
    #[error("matrix row {row} has a different length from row 0")]
    RaggedMatrix { row: usize },
    #[error("cannot parse rational {0:?}")]
    BadRational(String),
    #[error("chirotope must be given on every increasing tuple")]
    IncompleteChirotope,
    #[error("chirotope is identically zero")]
    ZeroChirotope,
    #[error("alternating matroid needs 0 < n < m (got m={m}, n={n})")]
    BadAlternatingParameters { m: usize, n: usize },
    #[error("combinatorial and moment-curve constructions of the alternating matroid disagree")]
    ConstructionMismatch,
    #[error("cocircuit {vector} has length {len}, expected {m}")]
    WrongLength { vector: String, len: usize, m: usize },
    #[error("cocircuit list violates the axioms: {0}")]
    Axioms(AxiomViolation),
    #[error("ground size {0} too large for brute-force duality")]
    GroundTooLarge(usize),
}

/// A cocircuit axiom failure, with the sign vectors that witness it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "axiom", rename_all = "kebab-case")]
pub enum AxiomViolation {
    Empty,
    GroundSize { vector: SignVector, expected: usize },
    ZeroVector,
    Symmetry { vector: SignVector },
    Incomparability { smaller: SignVector, larger: SignVector },
    EqualSupports { first: SignVector, second: SignVector },
    Elimination { first: SignVector, second: SignVector, element: usize },
}

impl std::fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            AxiomViolation::Empty => write!(f, "empty cocircuit set"),
            AxiomViolation::GroundSize { vector, expected } => {
                write!(f, "{vector} does not have length {expected}")
            }
            AxiomViolation::ZeroVector => write!(f, "zero vector present"),
            AxiomViolation::Symmetry { vector } => write!(f, "{vector} present but its negation is not"),
            AxiomViolation::Incomparability { smaller, larger } => {
                write!(f, "support of {smaller} is properly contained in support of {larger}")
            }
            AxiomViolation::EqualSupports { first, second } => {
                write!(f, "{first} and {second} share a support but are not opposite")
            }
            AxiomViolation::Elimination { first, second, element } => write!(
                f,
                "no elimination of element {} between {first} and {second}",
                element + 1
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct AxiomVerdict {
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub violation: Option<AxiomViolation>,
}

/// Checks symmetry, support incomparability and signed cocircuit elimination.
pub fn check_cocircuit_axioms(set: &[SignVector]) -> Result<(), AxiomViolation> {
    let Some(first) = set.first() else {
        return Err(AxiomViolation::Empty);
    };
    let m = first.len();
    if let Some(v) = set.iter().find(|v| v.len() != m) {
        return Err(AxiomViolation::GroundSize { vector: v.clone(), expected: m });
    }
    if set.iter().any(|v| v.is_zero()) {
        return Err(AxiomViolation::ZeroVector);
    }
    let members: HashSet<&SignVector> = set.iter().collect();
    let distinct: Vec<&SignVector> = {
        let ordered: BTreeSet<&SignVector> = set.iter().collect();
        ordered.into_iter().collect()
    };
    for v in &distinct {
        if !members.contains(&v.negate()) {
            return Err(AxiomViolation::Symmetry { vector: (*v).clone() });
        }
    }
    let supports: Vec<BTreeSet<usize>> =
        distinct.iter().map(|v| v.support().into_iter().collect()).collect();
    for (i, x) in distinct.iter().enumerate() {
        for (j, y) in distinct.iter().enumerate() {
            if i == j {
                continue;
            }
            if supports[i] == supports[j] {
                if **x != y.negate() {
                    return Err(AxiomViolation::EqualSupports { first: (*x).clone(), second: (*y).clone() });
                }
            } else if supports[i].is_subset(&supports[j]) {
                return Err(AxiomViolation::Incomparability { smaller: (*x).clone(), larger: (*y).clone() });
            }
        }
    }
    for x in &distinct {
        for y in &distinct {
            if **x == y.negate() {
                continue;
            }
            for e in 0..m {
                let (a, b) = (x.get(e), y.get(e));
                if a.is_zero() || a != -b {
                    continue;
                }
                let eliminates = distinct.iter().any(|z| {
                    z.get(e).is_zero()
                        && (0..m).all(|f| {
                            let s = z.get(f);
                            s.is_zero() || s == x.get(f) || s == y.get(f)
                        })
                });
                if !eliminates {
                    return Err(AxiomViolation::Elimination {
                        first: (*x).clone(),
                        second: (*y).clone(),
                        element: e,
                    });
                }
            }
        }
    }
    Ok(())
}

pub fn axiom_verdict(set: &[SignVector]) -> AxiomVerdict {
    match check_cocircuit_axioms(set) {
        Ok(()) => AxiomVerdict { pass: true, violation: None },
        Err(v) => AxiomVerdict { pass: false, violation: Some(v) },
    }
}

/// Ground size, rank and the full (negation-closed) cocircuit set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrientedMatroid {
    m: usize,
    r: usize,
    cocircuits: Vec<SignVector>,
}

impl OrientedMatroid {
    /// Builds from one or both orientations of each cocircuit; the negation
    /// of every vector is added and the list put into canonical order.
    pub fn from_orbits(m: usize, r: usize, vectors: impl IntoIterator<Item = SignVector>) -> Self {
        let mut all: BTreeSet<SignVector> = BTreeSet::new();
        for v in vectors {
            all.insert(v.negate());
            all.insert(v);
        }
        let mut cocircuits: Vec<SignVector> = all.into_iter().collect();
        cocircuits.sort_by(|a, b| a.support_order(b));
        OrientedMatroid { m, r, cocircuits }
    }

    /// Builds from user data, running the axiom checker. With
    /// `complete_negations` the missing orientation of each vector is added
    /// before checking; otherwise the list must already be symmetric.
    pub fn from_cocircuits(
        m: usize,
        r: usize,
        vectors: Vec<SignVector>,
        complete_negations: bool,
    ) -> Result<Self, OmError> {
        if r > m {
            return Err(OmError::RankExceedsGround { r, m });
        }
        if let Some(v) = vectors.iter().find(|v| v.len() != m) {
            return Err(OmError::WrongLength { vector: v.to_string(), len: v.len(), m });
        }
        let mut vectors = vectors;
        if complete_negations {
            let negs: Vec<SignVector> = vectors.iter().map(|v| v.negate()).collect();
            vectors.extend(negs);
        }
        check_cocircuit_axioms(&vectors).map_err(OmError::Axioms)?;
        Ok(OrientedMatroid::from_orbits(m, r, vectors))
    }

    pub fn from_matrix(a: &RationalMatrix) -> Result<Self, OmError> {
        Ok(chirotope_from_matrix(a)?.cocircuits())
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn rank(&self) -> usize {
        self.r
    }

    /// `m - r`, the dimension of the simplices that cocircuits name.
    pub fn corank(&self) -> usize {
        self.m - self.r
    }

    pub fn cocircuits(&self) -> &[SignVector] {
        &self.cocircuits
    }

    /// Canonical representatives, one per `{X, -X}` pair.
    pub fn orbit_representatives(&self) -> Vec<SignVector> {
        self.cocircuits.iter().filter(|v| v.is_canonical()).cloned().collect()
    }

    pub fn orbit_count(&self) -> usize {
        self.cocircuits.len() / 2
    }

    /// Every cocircuit support has size `m - r + 1`.
    pub fn is_uniform(&self) -> bool {
        let want = self.m + 1 - self.r;
        self.cocircuits.iter().all(|c| c.support_len() == want)
    }

    /// Dual matroid computed from the cocircuits alone: circuits of `self`
    /// are the support-minimal nonzero sign vectors orthogonal to every
    /// cocircuit. Exhaustive over `3^m` vectors.
    pub fn dual(&self) -> Result<OrientedMatroid, OmError> {
        if self.m > 12 {
            return Err(OmError::GroundTooLarge(self.m));
        }
        let vectors: Vec<SignVector> = crate::signsets::all_signvectors(self.m)
            .filter(|x| !x.is_zero())
            .filter(|x| self.cocircuits.iter().all(|c| x.is_orthogonal(c).unwrap_or(false)))
            .collect();
        let supports: Vec<BTreeSet<usize>> = vectors.iter().map(|v| v.support().into_iter().collect()).collect();
        let minimal = vectors.iter().enumerate().filter(|(i, _)| {
            !supports.iter().any(|s| s.len() < supports[*i].len() && s.is_subset(&supports[*i]))
        });
        Ok(OrientedMatroid::from_orbits(
            self.m,
            self.m - self.r,
            minimal.map(|(_, v)| v.clone()).collect::<Vec<_>>(),
        ))
    }

    pub fn to_file(&self) -> MatroidFile {
        MatroidFile { m: self.m, r: self.r, cocircuits: self.cocircuits.clone() }
    }
}

/// `{ "m": int, "r": int, "cocircuits": ["+-0", ...] }`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatroidFile {
    pub m: usize,
    pub r: usize,
    pub cocircuits: Vec<SignVector>,
}

impl MatroidFile {
    pub fn into_matroid(self, complete_negations: bool) -> Result<OrientedMatroid, OmError> {
        OrientedMatroid::from_cocircuits(self.m, self.r, self.cocircuits, complete_negations)
    }
}

/// Cocircuits supported on `k_1 < ... < k_{n+1}` with sign `(-1)^(j-1)` at
/// `k_j`, and their negatives: rank `m - n`.
pub fn alternating_dual_combinatorial(m: usize, n: usize) -> Result<OrientedMatroid, OmError> {
    if n == 0 || n >= m {
        return Err(OmError::BadAlternatingParameters { m, n });
    }
    let vectors = combinations(m, n + 1).into_iter().map(|support| {
        let mut entries = vec![Sign::Zero; m];
        for (j, &k) in support.iter().enumerate() {
            entries[k] = if j % 2 == 0 { Sign::Pos } else { Sign::Neg };
        }
        SignVector::from_fn(m, |i| entries[i])
    });
    Ok(OrientedMatroid::from_orbits(m, m - n, vectors))
}

/// Cocircuits of the dual of the rank-`n` moment-curve chirotope on `m` points.
pub fn alternating_dual_via_moment_curve(m: usize, n: usize) -> Result<OrientedMatroid, OmError> {
    if n == 0 || n >= m {
        return Err(OmError::BadAlternatingParameters { m, n });
    }
    let w = RationalMatrix::moment_curve(n, m)?;
    Ok(chirotope_from_matrix(&w)?.dual().cocircuits())
}

/// The alternating pattern, built both ways; the constructions must agree.
pub fn alternating_dual(m: usize, n: usize) -> Result<OrientedMatroid, OmError> {
    let direct = alternating_dual_combinatorial(m, n)?;
    let via_curve = alternating_dual_via_moment_curve(m, n)?;
    if direct != via_curve {
        return Err(OmError::ConstructionMismatch);
    }
    Ok(direct)
}

/// Number of cocircuit pairs of a uniform rank-`r` matroid on `m` elements.
pub fn uniform_pair_count(m: usize, r: usize) -> u64 {
    if r == 0 {
        return 0;
    }
    binomial(m as u64, r as u64 - 1)
}

/// Faces of the crosspolytope named by the cocircuits, in cocircuit order.
pub fn cocircuit_faces(om: &OrientedMatroid) -> Vec<crate::signsets::CrossPolytopeFace> {
    om.cocircuits.iter().map(face_from_signvector).collect()
}
