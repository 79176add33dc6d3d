//! Small combinatorial helpers shared across modules.

/// All `k`-subsets of `0..n` as ascending index vectors, in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let mut i = k;
        while i > 0 && idx[i - 1] == n - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        idx[i - 1] += 1;
        for j in i..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// Parity of the permutation that sorts `seq` (distinct entries): `true` if odd.
pub fn sorting_parity_is_odd<T: Ord>(seq: &[T]) -> bool {
    let mut inversions = 0usize;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i] > seq[j] {
                inversions += 1;
            }
        }
    }
    inversions % 2 == 1
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn combinations_counts() {
        for n in 0..8 {
            for k in 0..=n + 1 {
                let c = combinations(n, k);
                assert_eq!(c.len() as u64, binomial(n as u64, k as u64), "n={n} k={k}");
                assert!(c.windows(2).all(|w| w[0] < w[1]));
            }
        }
        assert_eq!(combinations(3, 0), vec![Vec::<usize>::new()]);
        assert_eq!(combinations(3, 2), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
    }

    #[test]
    fn parity() {
        assert!(!sorting_parity_is_odd(&[1, 2, 3]));
        assert!(sorting_parity_is_odd(&[2, 1, 3]));
        assert!(!sorting_parity_is_odd(&[2, 3, 1]));
    }
}
