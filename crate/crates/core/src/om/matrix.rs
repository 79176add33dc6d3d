//! Exact rational matrices. Everything here is arbitrary-precision; there is
//! no floating point anywhere in the oriented-matroid code.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::OmError;
use crate::signsets::Sign;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: Vec<Vec<BigRational>>,
    cols: usize,
}

impl RationalMatrix {
    pub fn new(rows: Vec<Vec<BigRational>>) -> Result<Self, OmError> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.is_empty() || cols == 0 {
            return Err(OmError::EmptyMatrix);
        }
        if let Some(bad) = rows.iter().position(|r| r.len() != cols) {
            return Err(OmError::RaggedMatrix { row: bad });
        }
        Ok(RationalMatrix { rows, cols })
    }

    pub fn from_integers(rows: &[Vec<i64>]) -> Result<Self, OmError> {
        RationalMatrix::new(
            rows.iter()
                .map(|r| r.iter().map(|&v| BigRational::from_integer(v.into())).collect())
                .collect(),
        )
    }

    /// `rows x m` matrix with entry `(p, i)` equal to `t_i^p`, where `t_i = i`
    /// (1-based), so `0 < t_1 < ... < t_m`.
    pub fn moment_curve(rows: usize, m: usize) -> Result<Self, OmError> {
        let data = (0..rows)
            .map(|p| {
                (1..=m)
                    .map(|t| BigRational::from_integer(BigInt::from(t).pow(p as u32)))
                    .collect()
            })
            .collect();
        RationalMatrix::new(data)
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[Vec<BigRational>] {
        &self.rows
    }

    pub fn get(&self, row: usize, col: usize) -> &BigRational {
        &self.rows[row][col]
    }

    pub fn column(&self, col: usize) -> Vec<BigRational> {
        self.rows.iter().map(|r| r[col].clone()).collect()
    }

    pub fn rank(&self) -> usize {
        rank_of(self.rows.clone())
    }

    /// Integer matrix obtained by scaling every column by the (positive)
    /// lcm of its denominators. Column scaling by positive factors leaves
    /// every maximal-minor sign unchanged.
    pub fn integer_columns(&self) -> Vec<Vec<BigInt>> {
        let mut out = vec![vec![BigInt::zero(); self.cols]; self.rows.len()];
        for c in 0..self.cols {
            let mut lcm = BigInt::one();
            for r in &self.rows {
                lcm = num_integer::Integer::lcm(&lcm, r[c].denom());
            }
            for (i, r) in self.rows.iter().enumerate() {
                out[i][c] = (&r[c] * BigRational::from_integer(lcm.clone())).to_integer();
            }
        }
        out
    }
}

/// Rank by Gaussian elimination over the rationals.
pub fn rank_of(mut rows: Vec<Vec<BigRational>>) -> usize {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank][col].clone();
        for i in rank + 1..rows.len() {
            if rows[i][col].is_zero() {
                continue;
            }
            let f = &rows[i][col] / &pivot;
            for j in col..ncols {
                let v = &rows[rank][j] * &f;
                rows[i][j] -= v;
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// Basis of `{y : M y = 0}` for an `a x b` rational matrix, as vectors of length `b`.
pub fn null_space(rows: &[Vec<BigRational>], b: usize) -> Vec<Vec<BigRational>> {
    let mut m: Vec<Vec<BigRational>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..b {
        let Some(p) = (r..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][col].recip();
        for j in 0..b {
            m[r][j] = &m[r][j] * &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                for j in 0..b {
                    let v = &m[r][j] * &f;
                    m[i][j] -= v;
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    let free: Vec<usize> = (0..b).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![BigRational::zero(); b];
            v[f] = BigRational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[row][f].clone();
            }
            v
        })
        .collect()
}

/// Sign of the determinant of a square integer matrix (Bareiss elimination).
pub fn determinant_sign(mut a: Vec<Vec<BigInt>>) -> Sign {
    let n = a.len();
    if n == 0 {
        return Sign::Pos;
    }
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return Sign::Zero;
            };
            a.swap(k, p);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    let det = &a[n - 1][n - 1];
    let s = if det.is_zero() {
        Sign::Zero
    } else if det.is_positive() {
        Sign::Pos
    } else {
        Sign::Neg
    };
    if negate {
        -s
    } else {
        s
    }
}

/// One matrix entry in a matrix file: a `"p/q"` string or a bare integer.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
enum Entry {
    Text(String),
    Int(i64),
}

/// `{ "rows": [["p/q", ...], ...] }`
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixFile {
    rows: Vec<Vec<Entry>>,
}

impl MatrixFile {
    pub fn from_matrix(a: &RationalMatrix) -> MatrixFile {
        MatrixFile {
            rows: a
                .rows
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|v| Entry::Text(format!("{}/{}", v.numer(), v.denom())))
                        .collect()
                })
                .collect(),
        }
    }

    pub fn to_matrix(&self) -> Result<RationalMatrix, OmError> {
        let rows = self
            .rows
            .iter()
            .map(|r| r.iter().map(parse_entry).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        RationalMatrix::new(rows)
    }
}

fn parse_entry(e: &Entry) -> Result<BigRational, OmError> {
    match e {
        Entry::Int(v) => Ok(BigRational::from_integer((*v).into())),
        Entry::Text(s) => {
            let t = s.trim();
            let parsed = match t.split_once('/') {
                Some((p, q)) => {
                    let p: BigInt = p.trim().parse().map_err(|_| OmError::BadRational(s.clone()))?;
                    let q: BigInt = q.trim().parse().map_err(|_| OmError::BadRational(s.clone()))?;
                    if q.is_zero() {
                        return Err(OmError::BadRational(s.clone()));
                    }
                    BigRational::new(p, q)
                }
                None => BigRational::from_integer(
                    t.parse().map_err(|_| OmError::BadRational(s.clone()))?,
                ),
            };
            Ok(parsed)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect()
    }

    #[test]
    fn bareiss_signs() {
        assert_eq!(determinant_sign(ints(&[&[1, 0], &[0, 1]])), Sign::Pos);
        assert_eq!(determinant_sign(ints(&[&[0, 1], &[1, 0]])), Sign::Neg);
        assert_eq!(determinant_sign(ints(&[&[1, 2], &[2, 4]])), Sign::Zero);
        assert_eq!(
            determinant_sign(ints(&[&[0, 2, 1], &[3, 0, 0], &[1, 1, 5]])),
            // det = 0*(0-0) - 2*(15-0) + 1*(3-0) = -27
            Sign::Neg
        );
        assert_eq!(determinant_sign(Vec::new()), Sign::Pos);
    }

    /// Cofactor expansion, independent of the elimination path.
    fn cofactor_det(a: &[Vec<i64>]) -> i64 {
        let n = a.len();
        if n == 1 {
            return a[0][0];
        }
        (0..n)
            .map(|j| {
                let minor: Vec<Vec<i64>> = a[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, &v)| v).collect())
                    .collect();
                let s = if j % 2 == 0 { 1 } else { -1 };
                s * a[0][j] * cofactor_det(&minor)
            })
            .sum()
    }

    #[test]
    fn bareiss_matches_cofactor_expansion() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..300 {
            let n = rng.gen_range(1..=5);
            let a: Vec<Vec<i64>> =
                (0..n).map(|_| (0..n).map(|_| rng.gen_range(-3..=3)).collect()).collect();
            let expect = Sign::from_i64(cofactor_det(&a));
            let big = a.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect();
            assert_eq!(determinant_sign(big), expect, "{a:?}");
        }
    }

    #[test]
    fn rank_and_null_space() {
        let a = RationalMatrix::from_integers(&[vec![1, 2, 3], vec![2, 4, 6]]).unwrap();
        assert_eq!(a.rank(), 1);
        let ns = null_space(a.rows(), 3);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            for r in a.rows() {
                let dot: BigRational = r.iter().zip(v).map(|(x, y)| x * y).sum();
                assert!(dot.is_zero());
            }
        }
        assert_eq!(RationalMatrix::moment_curve(3, 4).unwrap().rank(), 3);
    }

    #[test]
    fn matrix_file_parsing() {
        let f: MatrixFile = serde_json::from_str(r#"{"rows": [["1/2", "-3", 4], ["0/5", "6/4", "7"]]}"#).unwrap();
        let a = f.to_matrix().unwrap();
        assert_eq!(a.get(1, 1), &BigRational::new(3.into(), 2.into()));
        assert_eq!(a.get(0, 2), &BigRational::from_integer(4.into()));
        let back = MatrixFile::from_matrix(&a).to_matrix().unwrap();
        assert_eq!(back, a);
        let bad: MatrixFile = serde_json::from_str(r#"{"rows": [["1/0"]]}"#).unwrap();
        assert!(matches!(bad.to_matrix(), Err(OmError::BadRational(_))));
        let ragged: MatrixFile = serde_json::from_str(r#"{"rows": [["1"], ["1", "2"]]}"#).unwrap();
        assert!(matches!(ragged.to_matrix(), Err(OmError::RaggedMatrix { row: 1 })));
    }

    #[test]
    fn integer_columns_keep_signs() {
        let f: MatrixFile = serde_json::from_str(r#"{"rows": [["1/2", "1/3"], ["-1/4", "1/6"]]}"#).unwrap();
        let a = f.to_matrix().unwrap();
        let ints = a.integer_columns();
        assert_eq!(ints, vec![vec![BigInt::from(2), BigInt::from(2)], vec![BigInt::from(-1), BigInt::from(1)]]);
    }
}
