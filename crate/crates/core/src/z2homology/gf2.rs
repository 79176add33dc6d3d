//! Dense bit-packed matrices over GF(2).

use std::fmt;

#[derive(Clone, PartialEq, Eq)]
pub struct GF2Matrix {
    rows: usize,
    cols: usize,
    words: usize,
    data: Vec<u64>,
}

impl fmt::Debug for GF2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "GF2Matrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows.min(32) {
            let line: String = (0..self.cols.min(64)).map(|c| if self.get(r, c) { '1' } else { '.' }).collect();
            writeln!(f, "  {line}")?;
        }
        Ok(())
    }
}

impl GF2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let words = cols.div_ceil(64);
        GF2Matrix { rows, cols, words, data: vec![0; rows * words] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.data[r * self.words + c / 64] >> (c % 64) & 1 == 1
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        let w = &mut self.data[r * self.words + c / 64];
        if value {
            *w |= 1 << (c % 64);
        } else {
            *w &= !(1 << (c % 64));
        }
    }

    pub fn flip(&mut self, r: usize, c: usize) {
        self.data[r * self.words + c / 64] ^= 1 << (c % 64);
    }

    fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.words..(r + 1) * self.words]
    }

    pub fn row_weight(&self, r: usize) -> u32 {
        self.row(r).iter().map(|w| w.count_ones()).sum()
    }

    /// `self * x` for a column vector `x` of length `cols`.
    pub fn mul_vec(&self, x: &[bool]) -> Vec<bool> {
        assert_eq!(x.len(), self.cols);
        let packed = pack(x, self.words);
        (0..self.rows)
            .map(|r| self.row(r).iter().zip(&packed).map(|(a, b)| (a & b).count_ones()).sum::<u32>() % 2 == 1)
            .collect()
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &GF2Matrix) -> GF2Matrix {
        assert_eq!(self.cols, other.rows);
        let mut out = GF2Matrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                if self.get(r, k) {
                    let (dst, src) = (r * out.words, k * other.words);
                    for w in 0..out.words {
                        out.data[dst + w] ^= other.data[src + w];
                    }
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.eliminate(None).len()
    }

    /// Gaussian elimination to reduced row echelon form; the pivot column
    /// of each pivot row is returned in order. When `rhs` is given it is
    /// carried along as an extra column.
    fn eliminate(&mut self, mut rhs: Option<&mut Vec<bool>>) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut next = 0;
        for c in 0..self.cols {
            if next == self.rows {
                break;
            }
            let (word, bit) = (c / 64, 1u64 << (c % 64));
            let Some(p) = (next..self.rows).find(|&r| self.data[r * self.words + word] & bit != 0) else {
                continue;
            };
            if p != next {
                for w in 0..self.words {
                    self.data.swap(p * self.words + w, next * self.words + w);
                }
                if let Some(b) = rhs.as_deref_mut() {
                    b.swap(p, next);
                }
            }
            let pivot_row: Vec<u64> = self.row(next).to_vec();
            let pivot_rhs = rhs.as_deref().map(|b| b[next]);
            for r in 0..self.rows {
                if r != next && self.data[r * self.words + word] & bit != 0 {
                    for (w, pw) in pivot_row.iter().enumerate().skip(word) {
                        self.data[r * self.words + w] ^= pw;
                    }
                    if let (Some(b), Some(pb)) = (rhs.as_deref_mut(), pivot_rhs) {
                        b[r] ^= pb;
                    }
                }
            }
            pivots.push(c);
            next += 1;
        }
        pivots
    }

    /// Some `x` with `self * x = b`, or `None` if the system is inconsistent.
    pub fn solve(&self, b: &[bool]) -> Option<Vec<bool>> {
        assert_eq!(b.len(), self.rows);
        let mut m = self.clone();
        let mut rhs = b.to_vec();
        let pivots = m.eliminate(Some(&mut rhs));
        if rhs[pivots.len()..].iter().any(|&v| v) {
            return None;
        }
        let mut x = vec![false; self.cols];
        for (row, &c) in pivots.iter().enumerate() {
            x[c] = rhs[row];
        }
        Some(x)
    }
}

fn pack(x: &[bool], words: usize) -> Vec<u64> {
    let mut out = vec![0u64; words];
    for (i, &v) in x.iter().enumerate() {
        if v {
            out[i / 64] |= 1 << (i % 64);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn from_rows(rows: &[&[u8]]) -> GF2Matrix {
        let mut m = GF2Matrix::zeros(rows.len(), rows.first().map_or(0, |r| r.len()));
        for (i, r) in rows.iter().enumerate() {
            for (j, &v) in r.iter().enumerate() {
                m.set(i, j, v == 1);
            }
        }
        m
    }

    #[test]
    fn rank_small() {
        assert_eq!(from_rows(&[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]]).rank(), 2);
        assert_eq!(from_rows(&[&[1, 0], &[0, 1]]).rank(), 2);
        assert_eq!(GF2Matrix::zeros(3, 5).rank(), 0);
    }

    #[test]
    fn solve_consistent_and_not() {
        let m = from_rows(&[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]]);
        assert!(m.solve(&[true, true, true]).is_none());
        let x = m.solve(&[true, false, true]).unwrap();
        assert_eq!(m.mul_vec(&x), vec![true, false, true]);
    }

    #[test]
    fn wide_matrices_cross_word_boundaries() {
        let mut m = GF2Matrix::zeros(3, 130);
        m.set(0, 0, true);
        m.set(0, 129, true);
        m.set(1, 64, true);
        m.set(2, 129, true);
        assert_eq!(m.rank(), 3);
        let x = m.solve(&[false, true, true]).unwrap();
        assert_eq!(m.mul_vec(&x), vec![false, true, true]);
    }

    fn arb_matrix() -> impl Strategy<Value = (usize, usize, Vec<bool>)> {
        (1usize..40, 1usize..90).prop_flat_map(|(r, c)| {
            (Just(r), Just(c), proptest::collection::vec(proptest::bool::weighted(0.3), r * c))
        })
    }

    proptest! {
        #[test]
        fn solutions_satisfy_system((r, c, bits) in arb_matrix(), seed in 0u64..1000) {
            let mut m = GF2Matrix::zeros(r, c);
            for i in 0..r { for j in 0..c { m.set(i, j, bits[i * c + j]); } }
            // a right-hand side in the image is always solvable
            let x0: Vec<bool> = (0..c).map(|j| (seed >> (j % 10)) & 1 == 1).collect();
            let b = m.mul_vec(&x0);
            let x = m.solve(&b).expect("b is in the image");
            prop_assert_eq!(m.mul_vec(&x), b);
            let t = {
                let mut t = GF2Matrix::zeros(c, r);
                for i in 0..r { for j in 0..c { t.set(j, i, m.get(i, j)); } }
                t
            };
            prop_assert_eq!(m.rank(), t.rank());
        }
    }
}
