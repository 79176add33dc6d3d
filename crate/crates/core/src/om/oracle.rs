//! Geometric oracle: which crosspolytope faces does the row space of a
//! matrix meet in their relative interior?
//!
//! A point `x = y A` of the row space lies in `relint(F)` (up to positive
//! scaling) iff `x_i = 0` off the support of `F` and `s_i x_i > 0` on it,
//! where `s` is the sign vector of `F`. The equalities are solved exactly,
//! which leaves a homogeneous strict system `g_i . z > 0`; that is decided
//! by Fourier-Motzkin elimination over the rationals.

use std::collections::BTreeSet;

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::matrix::{null_space, RationalMatrix};
use super::OmError;
use crate::signsets::{all_signvectors, face_from_signvector, CrossPolytopeFace, Sign, SignVector};

/// True iff the row space of `a` meets the relative interior of `face`.
/// The empty face is met by convention (the origin).
pub fn subspace_face_oracle(a: &RationalMatrix, face: &CrossPolytopeFace) -> Result<bool, OmError> {
    let r = a.nrows();
    let rank = a.rank();
    if rank < r {
        return Err(OmError::RankDeficient { rows: r, rank });
    }
    if face.is_empty() {
        return Ok(true);
    }
    let signs = face.to_signvector();
    Ok(row_space_meets(a, &signs))
}

fn row_space_meets(a: &RationalMatrix, signs: &SignVector) -> bool {
    let r = a.nrows();
    // y . A[:, j] = 0 for every j off the support
    let zero_cols: Vec<Vec<BigRational>> = (0..a.ncols())
        .filter(|&j| signs.get(j).is_zero())
        .map(|j| a.column(j))
        .collect();
    let basis = if zero_cols.is_empty() {
        (0..r)
            .map(|i| {
                let mut e = vec![BigRational::zero(); r];
                e[i] = BigRational::from_integer(1.into());
                e
            })
            .collect()
    } else {
        null_space(&zero_cols, r)
    };
    if basis.is_empty() {
        return false;
    }
    let rows: Vec<Vec<BigRational>> = signs
        .support()
        .into_iter()
        .map(|i| {
            let col = a.column(i);
            basis
                .iter()
                .map(|b| {
                    let dot: BigRational = b.iter().zip(&col).map(|(x, y)| x * y).sum();
                    if signs.get(i) == Sign::Neg {
                        -dot
                    } else {
                        dot
                    }
                })
                .collect()
        })
        .collect();
    strict_homogeneous_feasible(rows, basis.len())
}

/// Scale a row so its first nonzero entry has absolute value one.
fn normalize(row: Vec<BigRational>) -> Vec<BigRational> {
    match row.iter().find(|v| !v.is_zero()) {
        None => row,
        Some(lead) => {
            let s = lead.abs();
            row.iter().map(|v| v / &s).collect()
        }
    }
}

/// Is `{ z : g . z > 0 for every row g }` nonempty?
fn strict_homogeneous_feasible(rows: Vec<Vec<BigRational>>, vars: usize) -> bool {
    let mut system: BTreeSet<Vec<BigRational>> = BTreeSet::new();
    for row in rows {
        if row.iter().all(|v| v.is_zero()) {
            return false;
        }
        system.insert(normalize(row));
    }
    for k in 0..vars {
        let (mut pos, mut neg, mut rest) = (Vec::new(), Vec::new(), BTreeSet::new());
        for row in system {
            if row[k].is_positive() {
                pos.push(row);
            } else if row[k].is_negative() {
                neg.push(row);
            } else {
                rest.insert(row);
            }
        }
        for p in &pos {
            for q in &neg {
                let cp = p[k].clone();
                let cq = -q[k].clone();
                let combined: Vec<BigRational> =
                    p.iter().zip(q).map(|(a, b)| a * &cq + b * &cp).collect();
                if combined.iter().all(|v| v.is_zero()) {
                    return false;
                }
                rest.insert(normalize(combined));
            }
        }
        system = rest;
    }
    system.is_empty()
}

/// Faces met by the row space that contain no smaller nonempty face that is
/// also met. Exhaustive over all `3^m - 1` nonempty faces.
pub fn minimal_intersected_faces(a: &RationalMatrix) -> Result<Vec<CrossPolytopeFace>, OmError> {
    let r = a.nrows();
    let rank = a.rank();
    if rank < r {
        return Err(OmError::RankDeficient { rows: r, rank });
    }
    let met: Vec<SignVector> = all_signvectors(a.ncols())
        .filter(|x| !x.is_zero() && row_space_meets(a, x))
        .collect();
    let faces: Vec<CrossPolytopeFace> = met.iter().map(face_from_signvector).collect();
    let mut minimal: Vec<CrossPolytopeFace> = faces
        .iter()
        .filter(|f| !faces.iter().any(|g| g != *f && g.is_subface_of(f)))
        .cloned()
        .collect();
    minimal.sort_by(|a, b| a.to_signvector().support_order(&b.to_signvector()));
    Ok(minimal)
}
