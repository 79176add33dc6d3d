use std::collections::BTreeMap;

use super::matrix::{determinant_sign, RationalMatrix};
use super::{OmError, OrientedMatroid};
use crate::signsets::{Sign, SignVector};
use crate::util::{combinations, sorting_parity_is_odd};

/// Basis orientations of a rank-`r` oriented matroid on `m` elements.
/// Values are stored on strictly increasing 0-based `r`-tuples and extended
/// to arbitrary tuples by alternation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chirotope {
    m: usize,
    r: usize,
    values: BTreeMap<Vec<usize>, Sign>,
}

impl Chirotope {
    pub fn from_values(m: usize, r: usize, values: BTreeMap<Vec<usize>, Sign>) -> Result<Self, OmError> {
        if r > m {
            return Err(OmError::RankExceedsGround { r, m });
        }
        let expected = combinations(m, r);
        if values.len() != expected.len() || expected.iter().any(|t| !values.contains_key(t)) {
            return Err(OmError::IncompleteChirotope);
        }
        if values.values().all(|s| s.is_zero()) {
            return Err(OmError::ZeroChirotope);
        }
        Ok(Chirotope { m, r, values })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn rank(&self) -> usize {
        self.r
    }

    pub fn values(&self) -> &BTreeMap<Vec<usize>, Sign> {
        &self.values
    }

    /// Value on an arbitrary `r`-tuple of 0-based indices.
    pub fn eval(&self, tuple: &[usize]) -> Sign {
        debug_assert_eq!(tuple.len(), self.r);
        let mut sorted = tuple.to_vec();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Sign::Zero;
        }
        let s = self.values[&sorted];
        if sorting_parity_is_odd(tuple) {
            -s
        } else {
            s
        }
    }

    pub fn negate(&self) -> Chirotope {
        Chirotope {
            m: self.m,
            r: self.r,
            values: self.values.iter().map(|(k, &v)| (k.clone(), -v)).collect(),
        }
    }

    /// True if `self == other` or `self == -other`.
    pub fn equal_up_to_sign(&self, other: &Chirotope) -> bool {
        self == other || *self == other.negate()
    }

    /// Sign vectors `Y(e) = chi(h_1, ..., h_{r-1}, e)` for every (r-1)-subset
    /// spanning a hyperplane, together with their negatives.
    pub fn cocircuits(&self) -> OrientedMatroid {
        let mut found = Vec::new();
        if self.r > 0 {
            for h in combinations(self.m, self.r - 1) {
                let mut tuple = h.clone();
                tuple.push(0);
                let y = SignVector::from_fn(self.m, |e| {
                    tuple[self.r - 1] = e;
                    self.eval(&tuple)
                });
                if !y.is_zero() {
                    found.push(y);
                }
            }
        }
        OrientedMatroid::from_orbits(self.m, self.r, found)
    }

    /// Signed circuits: for every (r+1)-subset `c_0 < ... < c_r`, entry
    /// `c_i` is `(-1)^i chi(subset minus c_i)`.
    pub fn circuits(&self) -> Vec<SignVector> {
        let mut found = Vec::new();
        for subset in combinations(self.m, self.r + 1) {
            let mut entries = vec![Sign::Zero; self.m];
            for (i, &c) in subset.iter().enumerate() {
                let rest: Vec<usize> = subset.iter().copied().filter(|&x| x != c).collect();
                let v = self.eval(&rest);
                entries[c] = if i % 2 == 0 { v } else { -v };
            }
            let x = SignVector::from_fn(self.m, |i| entries[i]);
            if !x.is_zero() {
                found.push(x);
            }
        }
        OrientedMatroid::from_orbits(self.m, self.r, found).cocircuits().to_vec()
    }

    /// Rank `m - r` chirotope with `chi*(complement of B) = chi(B) * sgn(B, complement of B)`.
    pub fn dual(&self) -> Chirotope {
        let mut values = BTreeMap::new();
        for b in combinations(self.m, self.r) {
            let comp: Vec<usize> = (0..self.m).filter(|i| !b.contains(i)).collect();
            let mut perm = b.clone();
            perm.extend_from_slice(&comp);
            let v = self.values[&b];
            values.insert(comp, if sorting_parity_is_odd(&perm) { -v } else { v });
        }
        Chirotope { m: self.m, r: self.m - self.r, values }
    }
}

/// Signs of the maximal minors of a full-rank `r x m` rational matrix.
pub fn chirotope_from_matrix(a: &RationalMatrix) -> Result<Chirotope, OmError> {
    let r = a.nrows();
    let m = a.ncols();
    if r > m {
        return Err(OmError::RankExceedsGround { r, m });
    }
    let rank = a.rank();
    if rank < r {
        return Err(OmError::RankDeficient { rows: r, rank });
    }
    let ints = a.integer_columns();
    let values = combinations(m, r)
        .into_iter()
        .map(|cols| {
            let sub = ints.iter().map(|row| cols.iter().map(|&c| row[c].clone()).collect()).collect();
            (cols, determinant_sign(sub))
        })
        .collect();
    Chirotope::from_values(m, r, values)
}
