//! Sign vectors over `{0,+,-}` and their dictionary with faces of the
//! crosspolytope `conv{±e_1, …, ±e_m}`.
//!
//! A sign vector `X` of length `m` names the face spanned by `e_i` for every
//! `X_i = +` and `-e_i` for every `X_i = -`. Faces are written with signed
//! 1-based labels, so `(+,-,0)` is the face `{1, -2}`.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Mul, Neg};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SignError {
    #[error("sign vectors of different ground sizes ({0} vs {1})")]
    GroundSizeMismatch(usize, usize),
    #[error("label {label} is out of range for ground size {m}")]
    LabelOutOfRange { label: i64, m: usize },
    #[error("face contains both {0} and -{0}")]
    AntipodalPair(i64),
    #[error("invalid sign character {0:?} (expected '+', '-' or '0')")]
    BadChar(char),
    #[error("the zero sign vector has no orbit representative")]
    ZeroVector,
    #[error("ground size must be positive")]
    EmptyGround,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Neg,
    Zero,
    Pos,
}

impl Sign {
    pub fn is_zero(self) -> bool {
        self == Sign::Zero
    }

    pub fn from_i64(v: i64) -> Sign {
        match v.cmp(&0) {
            Ordering::Less => Sign::Neg,
            Ordering::Equal => Sign::Zero,
            Ordering::Greater => Sign::Pos,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Sign::Neg => '-',
            Sign::Zero => '0',
            Sign::Pos => '+',
        }
    }

    pub fn from_char(c: char) -> Result<Sign, SignError> {
        match c {
            '+' => Ok(Sign::Pos),
            '-' => Ok(Sign::Neg),
            '0' => Ok(Sign::Zero),
            other => Err(SignError::BadChar(other)),
        }
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        match self {
            Sign::Neg => Sign::Pos,
            Sign::Zero => Sign::Zero,
            Sign::Pos => Sign::Neg,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        match (self, rhs) {
            (Sign::Zero, _) | (_, Sign::Zero) => Sign::Zero,
            (a, b) if a == b => Sign::Pos,
            _ => Sign::Neg,
        }
    }
}

/// An element of `{0,+,-}^m`. Ordering is lexicographic on entries with
/// `- < 0 < +`; downstream code sorts by support first where it matters.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignVector(Vec<Sign>);

impl SignVector {
    pub fn new(entries: Vec<Sign>) -> Result<Self, SignError> {
        if entries.is_empty() {
            return Err(SignError::EmptyGround);
        }
        Ok(SignVector(entries))
    }

    pub fn zero(m: usize) -> Self {
        SignVector(vec![Sign::Zero; m])
    }

    pub fn from_fn(m: usize, f: impl FnMut(usize) -> Sign) -> Self {
        SignVector((0..m).map(f).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[Sign] {
        &self.0
    }

    /// Entry at 0-based position `i`.
    pub fn get(&self, i: usize) -> Sign {
        self.0[i]
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|s| s.is_zero())
    }

    pub fn negate(&self) -> SignVector {
        SignVector(self.0.iter().map(|&s| -s).collect())
    }

    /// 0-based indices of the nonzero entries, ascending.
    pub fn support(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, s)| !s.is_zero())
            .map(|(i, _)| i)
            .collect()
    }

    pub fn support_len(&self) -> usize {
        self.0.iter().filter(|s| !s.is_zero()).count()
    }

    pub fn is_orthogonal(&self, other: &SignVector) -> Result<bool, SignError> {
        if self.len() != other.len() {
            return Err(SignError::GroundSizeMismatch(self.len(), other.len()));
        }
        let mut seen_pos = false;
        let mut seen_neg = false;
        for (&a, &b) in self.0.iter().zip(&other.0) {
            match a * b {
                Sign::Pos => seen_pos = true,
                Sign::Neg => seen_neg = true,
                Sign::Zero => {}
            }
        }
        Ok(seen_pos == seen_neg)
    }

    /// `self` or its negation, whichever is `+` at the first nonzero entry.
    pub fn canonical_orbit_representative(&self) -> Result<SignVector, SignError> {
        match self.0.iter().find(|s| !s.is_zero()) {
            None => Err(SignError::ZeroVector),
            Some(Sign::Pos) => Ok(self.clone()),
            Some(_) => Ok(self.negate()),
        }
    }

    pub fn is_canonical(&self) -> bool {
        self.0.iter().find(|s| !s.is_zero()) == Some(&Sign::Pos)
    }

    /// Ordering used for every emitted list of signed sets: by support
    /// (lexicographic on the ascending index list), canonical sign first.
    pub fn support_order(&self, other: &SignVector) -> Ordering {
        self.support()
            .cmp(&other.support())
            .then_with(|| other.is_canonical().cmp(&self.is_canonical()))
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl fmt::Display for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            write!(f, "{}", s.as_char())?;
        }
        Ok(())
    }
}

impl FromStr for SignVector {
    type Err = SignError;
    fn from_str(s: &str) -> Result<Self, SignError> {
        let entries = s.chars().map(Sign::from_char).collect::<Result<Vec<_>, _>>()?;
        SignVector::new(entries)
    }
}

impl Serialize for SignVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for SignVector {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A face of the crosspolytope in `R^m`, given by its signed vertex labels.
/// The empty label set is the empty face.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CrossPolytopeFace {
    m: usize,
    labels: BTreeSet<i64>,
}

impl CrossPolytopeFace {
    pub fn new(m: usize, labels: impl IntoIterator<Item = i64>) -> Result<Self, SignError> {
        if m == 0 {
            return Err(SignError::EmptyGround);
        }
        let labels: BTreeSet<i64> = labels.into_iter().collect();
        for &l in &labels {
            if l == 0 || l.unsigned_abs() as usize > m {
                return Err(SignError::LabelOutOfRange { label: l, m });
            }
            if l > 0 && labels.contains(&-l) {
                return Err(SignError::AntipodalPair(l));
            }
        }
        Ok(CrossPolytopeFace { m, labels })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn labels(&self) -> &BTreeSet<i64> {
        &self.labels
    }

    /// `|vertices| - 1`; the empty face has dimension -1.
    pub fn dimension(&self) -> isize {
        self.labels.len() as isize - 1
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn to_signvector(&self) -> SignVector {
        let mut entries = vec![Sign::Zero; self.m];
        for &l in &self.labels {
            entries[l.unsigned_abs() as usize - 1] = Sign::from_i64(l);
        }
        SignVector(entries)
    }

    pub fn from_signvector(x: &SignVector) -> CrossPolytopeFace {
        let labels = x
            .0
            .iter()
            .enumerate()
            .filter_map(|(i, s)| match s {
                Sign::Pos => Some(i as i64 + 1),
                Sign::Neg => Some(-(i as i64 + 1)),
                Sign::Zero => None,
            })
            .collect();
        CrossPolytopeFace { m: x.len(), labels }
    }

    pub fn negate(&self) -> CrossPolytopeFace {
        CrossPolytopeFace {
            m: self.m,
            labels: self.labels.iter().map(|l| -l).collect(),
        }
    }

    pub fn is_subface_of(&self, other: &CrossPolytopeFace) -> bool {
        self.labels.is_subset(&other.labels)
    }
}

impl fmt::Display for CrossPolytopeFace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, l) in self.labels.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, "}}")
    }
}

pub fn signvector_from_face(face: &CrossPolytopeFace) -> SignVector {
    face.to_signvector()
}

pub fn face_from_signvector(x: &SignVector) -> CrossPolytopeFace {
    CrossPolytopeFace::from_signvector(x)
}

/// Every sign vector of length `m`, in lexicographic order of entries.
pub fn all_signvectors(m: usize) -> impl Iterator<Item = SignVector> {
    let total = 3usize.pow(m as u32);
    (0..total).map(move |mut code| {
        SignVector::from_fn(m, |_| {
            let s = match code % 3 {
                0 => Sign::Neg,
                1 => Sign::Zero,
                _ => Sign::Pos,
            };
            code /= 3;
            s
        })
    })
}
