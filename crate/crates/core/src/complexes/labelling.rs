use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{ComplexError, VertexId, Z2Complex};
use crate::signsets::{CrossPolytopeFace, SignError};

/// Vertex labels in `{±1, …, ±m}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Labelling {
    pub m: usize,
    pub labels: BTreeMap<VertexId, i64>,
}

/// On-disk form `{ "m": int, "labels": {vertexId: signedInt} }`.
pub type LabellingFile = Labelling;

impl Labelling {
    pub fn new(m: usize, labels: BTreeMap<VertexId, i64>) -> Self {
        Labelling { m, labels }
    }

    pub fn get(&self, v: VertexId) -> Option<i64> {
        self.labels.get(&v).copied()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "condition", rename_all = "kebab-case")]
pub enum LabellingViolation {
    EmptyGround,
    Missing { vertex: VertexId },
    OutOfRange { vertex: VertexId, label: i64 },
    /// Condition (a): `λ(ν(v)) = -λ(v)`.
    #[serde(rename = "(a)")]
    Antipodality { vertex: VertexId, label: i64, antipode: VertexId, antipode_label: i64 },
    /// Condition (b): no edge carries labels `i` and `-i`.
    #[serde(rename = "(b)")]
    ComplementaryEdge { edge: [VertexId; 2], label: i64 },
}

impl std::fmt::Display for LabellingViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LabellingViolation::EmptyGround => write!(f, "ground size m must be positive"),
            LabellingViolation::Missing { vertex } => write!(f, "vertex {vertex} has no label"),
            LabellingViolation::OutOfRange { vertex, label } => {
                write!(f, "label {label} of vertex {vertex} is out of range")
            }
            LabellingViolation::Antipodality { vertex, label, antipode, antipode_label } => write!(
                f,
                "condition (a) fails: vertex {vertex} has label {label}, its antipode {antipode} has {antipode_label}"
            ),
            LabellingViolation::ComplementaryEdge { edge, label } => write!(
                f,
                "condition (b) fails: edge {edge:?} carries labels {label} and {}",
                -label
            ),
        }
    }
}

pub fn validate_labelling(k: &Z2Complex, lambda: &Labelling) -> Result<(), LabellingViolation> {
    if lambda.m == 0 {
        return Err(LabellingViolation::EmptyGround);
    }
    for &v in k.vertices() {
        let Some(l) = lambda.get(v) else {
            return Err(LabellingViolation::Missing { vertex: v });
        };
        if l == 0 || l.unsigned_abs() as usize > lambda.m {
            return Err(LabellingViolation::OutOfRange { vertex: v, label: l });
        }
    }
    for &v in k.vertices() {
        let w = k.antipode(v);
        let (lv, lw) = (lambda.labels[&v], lambda.labels[&w]);
        if lw != -lv {
            return Err(LabellingViolation::Antipodality { vertex: v, label: lv, antipode: w, antipode_label: lw });
        }
    }
    for f in k.facets() {
        for (i, &u) in f.iter().enumerate() {
            for &v in &f[i + 1..] {
                let lu = lambda.labels[&u];
                if lu + lambda.labels[&v] == 0 {
                    return Err(LabellingViolation::ComplementaryEdge { edge: [u, v], label: lu });
                }
            }
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LabelImage {
    Face(CrossPolytopeFace),
    /// Two vertices of the simplex share a label.
    Degenerate,
}

/// The signed label set of `simplex` as a crosspolytope face.
pub fn lambda_image(simplex: &[VertexId], lambda: &Labelling) -> Result<LabelImage, LabellingViolation> {
    let mut labels = Vec::with_capacity(simplex.len());
    for &v in simplex {
        labels.push(lambda.get(v).ok_or(LabellingViolation::Missing { vertex: v })?);
    }
    let mut sorted = labels.clone();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() < labels.len() {
        return Ok(LabelImage::Degenerate);
    }
    match CrossPolytopeFace::new(lambda.m, sorted) {
        Ok(face) => Ok(LabelImage::Face(face)),
        Err(SignError::AntipodalPair(l)) => {
            let u = simplex.iter().copied().find(|&v| lambda.labels[&v] == l).unwrap_or(simplex[0]);
            let v = simplex.iter().copied().find(|&v| lambda.labels[&v] == -l).unwrap_or(simplex[0]);
            Err(LabellingViolation::ComplementaryEdge { edge: [u.min(v), u.max(v)], label: l })
        }
        Err(_) => {
            let (v, l) = simplex
                .iter()
                .map(|&v| (v, lambda.labels[&v]))
                .find(|(_, l)| *l == 0 || l.unsigned_abs() as usize > lambda.m)
                .unwrap_or((simplex[0], 0));
            Err(LabellingViolation::OutOfRange { vertex: v, label: l })
        }
    }
}

/// Map `coordinate index -> label`, injective on absolute values.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignedInjection(Vec<i64>);

impl SignedInjection {
    pub fn new(images: Vec<i64>, m: usize) -> Result<Self, ComplexError> {
        let mut seen = vec![false; m + 1];
        for &l in &images {
            let a = l.unsigned_abs() as usize;
            if l == 0 || a > m {
                return Err(ComplexError::BadInjection(format!("label {l} outside ±1..±{m}")));
            }
            if seen[a] {
                return Err(ComplexError::BadInjection(format!("label {a} used twice")));
            }
            seen[a] = true;
        }
        Ok(SignedInjection(images))
    }

    pub fn identity(d: usize) -> Self {
        SignedInjection((1..=d as i64).collect())
    }

    /// Uniformly random injection of `d` coordinates into `±1..±m`.
    pub fn random<R: Rng + ?Sized>(d: usize, m: usize, rng: &mut R) -> Result<Self, ComplexError> {
        if d > m {
            return Err(ComplexError::BadInjection(format!("cannot inject {d} coordinates into {m} labels")));
        }
        let mut pool: Vec<i64> = (1..=m as i64).collect();
        pool.shuffle(rng);
        let images = pool[..d].iter().map(|&l| if rng.gen_bool(0.5) { l } else { -l }).collect();
        Ok(SignedInjection(images))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn images(&self) -> &[i64] {
        &self.0
    }

    fn apply(&self, index: usize, positive: bool) -> i64 {
        if positive {
            self.0[index]
        } else {
            -self.0[index]
        }
    }
}

/// `λ(v) = ± injection(i)` where `i` maximizes `|x_i|` (smallest index on
/// ties) and the sign is that of `x_i`. Each orbit is labelled at its least
/// vertex and the antipode gets the negated label, so condition (a) holds by
/// construction; condition (b) is checked and reported as
/// `LabellingInadmissible`.
pub fn argmax_labelling(
    k: &Z2Complex,
    injection: &SignedInjection,
    m: usize,
) -> Result<Labelling, ComplexError> {
    SignedInjection::new(injection.0.clone(), m)?;
    let coords = k.coords().ok_or_else(|| ComplexError::MissingCoordinates(k.vertices()[0]))?;
    let d = injection.len();
    for &v in k.vertices() {
        let x = coords.get(&v).ok_or(ComplexError::MissingCoordinates(v))?;
        if x.len() != d {
            return Err(ComplexError::CoordinateDimension { vertex: v, got: x.len(), expected: d });
        }
        let y = coords.get(&k.antipode(v)).ok_or(ComplexError::MissingCoordinates(k.antipode(v)))?;
        if x.iter().zip(y).any(|(a, b)| *a != -b.clone()) {
            return Err(ComplexError::CoordinatesNotAntipodal(v));
        }
    }
    let mut labels = BTreeMap::new();
    for &v in k.vertices() {
        let w = k.antipode(v);
        if w < v {
            continue;
        }
        let x = &coords[&v];
        let mut best = 0;
        for i in 1..d {
            if x[i].abs() > x[best].abs() {
                best = i;
            }
        }
        let label = injection.apply(best, !x[best].is_negative());
        labels.insert(v, label);
        labels.insert(w, -label);
    }
    let lambda = Labelling { m, labels };
    match validate_labelling(k, &lambda) {
        Ok(()) => Ok(lambda),
        Err(LabellingViolation::ComplementaryEdge { edge, label }) => {
            Err(ComplexError::LabellingInadmissible { edge, label })
        }
        Err(other) => unreachable!("argmax labelling broke {other}"),
    }
}

fn invert(mut a: Vec<Vec<BigRational>>) -> Vec<Vec<BigRational>> {
    let n = a.len();
    let mut inv: Vec<Vec<BigRational>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }).collect())
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&i| !a[i][col].is_zero()).expect("matrix is invertible");
        a.swap(col, p);
        inv.swap(col, p);
        let s = a[col][col].recip();
        for j in 0..n {
            a[col][j] = &a[col][j] * &s;
            inv[col][j] = &inv[col][j] * &s;
        }
        for i in 0..n {
            if i != col && !a[i][col].is_zero() {
                let f = a[i][col].clone();
                for j in 0..n {
                    let (x, y) = (&a[col][j] * &f, &inv[col][j] * &f);
                    a[i][j] -= x;
                    inv[i][j] -= y;
                }
            }
        }
    }
    inv
}

/// Exact rational rotation `(I - S)(I + S)^{-1}` from a random skew-symmetric
/// `S` with small integer entries (Cayley transform).
pub fn random_rotation<R: Rng + ?Sized>(d: usize, rng: &mut R) -> Vec<Vec<BigRational>> {
    let mut s = vec![vec![BigRational::zero(); d]; d];
    for i in 0..d {
        for j in i + 1..d {
            let den: i64 = rng.gen_range(1..=4);
            let num: i64 = rng.gen_range(-6..=6);
            s[i][j] = BigRational::new(num.into(), den.into());
            s[j][i] = -s[i][j].clone();
        }
    }
    let id = |i: usize, j: usize| if i == j { BigRational::one() } else { BigRational::zero() };
    let minus: Vec<Vec<BigRational>> = (0..d).map(|i| (0..d).map(|j| id(i, j) - &s[i][j]).collect()).collect();
    let plus: Vec<Vec<BigRational>> = (0..d).map(|i| (0..d).map(|j| id(i, j) + &s[i][j]).collect()).collect();
    let plus_inv = invert(plus);
    (0..d)
        .map(|i| {
            (0..d)
                .map(|j| (0..d).map(|l| &minus[i][l] * &plus_inv[l][j]).sum())
                .collect()
        })
        .collect()
}

impl Z2Complex {
    /// Applies the linear map `rotation` to every coordinate vector.
    pub fn rotated(&self, rotation: &[Vec<BigRational>]) -> Result<Z2Complex, ComplexError> {
        let coords = self.coords().ok_or_else(|| ComplexError::MissingCoordinates(self.vertices()[0]))?;
        let mut out = BTreeMap::new();
        for (&v, x) in coords {
            if x.len() != rotation.len() {
                return Err(ComplexError::CoordinateDimension { vertex: v, got: x.len(), expected: rotation.len() });
            }
            out.insert(v, rotation.iter().map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum()).collect());
        }
        Ok(self.clone().with_coords(Some(out)))
    }
}
