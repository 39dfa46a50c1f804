//! Exact rank of sparse rational matrices.
//!
//! Rows are scaled to integers and reduced with fraction-free (Bareiss)
//! elimination. The matrix is first split into the connected components of
//! its row/column incidence graph, which keeps the dense work tiny for the
//! block-sparse differentials of string and band complexes.

use std::collections::{BTreeMap, HashMap};

use num::{BigInt, BigRational, Integer, One, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), BigRational>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, entries: BTreeMap::new() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn add(&mut self, row: usize, col: usize, value: &BigRational) {
        assert!(row < self.rows && col < self.cols, "entry ({row}, {col}) out of bounds");
        let slot = self.entries.entry((row, col)).or_insert_with(BigRational::zero);
        *slot += value;
        if slot.is_zero() {
            self.entries.remove(&(row, col));
        }
    }

    pub fn get(&self, row: usize, col: usize) -> BigRational {
        self.entries.get(&(row, col)).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn nonzeros(&self) -> impl Iterator<Item = (&(usize, usize), &BigRational)> {
        self.entries.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn to_dense(&self) -> Vec<Vec<BigRational>> {
        let mut out = vec![vec![BigRational::zero(); self.cols]; self.rows];
        for (&(r, c), v) in &self.entries {
            out[r][c] = v.clone();
        }
        out
    }

    pub fn rank(&self) -> usize {
        if self.entries.is_empty() {
            return 0;
        }
        // union-find over rows (0..rows) and columns (rows..rows+cols)
        let mut parent: Vec<usize> = (0..self.rows + self.cols).collect();
        fn find(parent: &mut [usize], x: usize) -> usize {
            let mut root = x;
            while parent[root] != root {
                root = parent[root];
            }
            let mut cur = x;
            while parent[cur] != root {
                let next = parent[cur];
                parent[cur] = root;
                cur = next;
            }
            root
        }
        for &(r, c) in self.entries.keys() {
            let (a, b) = (find(&mut parent, r), find(&mut parent, self.rows + c));
            if a != b {
                parent[a] = b;
            }
        }
        let mut blocks: HashMap<usize, Vec<(usize, usize, &BigRational)>> = HashMap::new();
        for (&(r, c), v) in &self.entries {
            let root = find(&mut parent, r);
            blocks.entry(root).or_default().push((r, c, v));
        }
        blocks.values().map(|entries| block_rank(entries)).sum()
    }
}

fn block_rank(entries: &[(usize, usize, &BigRational)]) -> usize {
    let mut row_ids: Vec<usize> = entries.iter().map(|e| e.0).collect();
    let mut col_ids: Vec<usize> = entries.iter().map(|e| e.1).collect();
    row_ids.sort_unstable();
    row_ids.dedup();
    col_ids.sort_unstable();
    col_ids.dedup();
    if row_ids.len() == 1 || col_ids.len() == 1 {
        return 1;
    }
    let row_pos: HashMap<usize, usize> = row_ids.iter().enumerate().map(|(i, &r)| (r, i)).collect();
    let col_pos: HashMap<usize, usize> = col_ids.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let mut dense = vec![vec![BigRational::zero(); col_ids.len()]; row_ids.len()];
    for &(r, c, v) in entries {
        dense[row_pos[&r]][col_pos[&c]] = v.clone();
    }
    bareiss_rank(integer_rows(&dense))
}

/// Scales each row by the lcm of its denominators.
pub fn integer_rows(m: &[Vec<BigRational>]) -> Vec<Vec<BigInt>> {
    m.iter()
        .map(|row| {
            let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            row.iter().map(|x| (x * BigRational::from_integer(lcm.clone())).to_integer()).collect()
        })
        .collect()
}

/// Rank by fraction-free Gaussian elimination.
pub fn bareiss_rank(mut m: Vec<Vec<BigInt>>) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut rank = 0;
    let mut prev = BigInt::one();
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pivot) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        let piv = m[rank][col].clone();
        for r in rank + 1..rows {
            let factor = m[r][col].clone();
            for c in col + 1..cols {
                let value = &piv * &m[r][c] - &factor * &m[rank][c];
                // exact division: the Bareiss invariant
                m[r][c] = value / &prev;
            }
            m[r][col] = BigInt::zero();
        }
        prev = piv;
        rank += 1;
    }
    rank
}

/// Dense rank by plain rational Gaussian elimination, kept as an
/// independent cross-check for the fraction-free route.
pub fn rational_rank(mut m: Vec<Vec<BigRational>>) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        let inv = m[rank][col].recip();
        for r in 0..rows {
            if r != rank && !m[r][col].is_zero() {
                let f = &m[r][col] * &inv;
                for c in col..cols {
                    let sub = &f * &m[rank][c];
                    m[r][c] -= sub;
                }
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn small_ranks() {
        let mut m = SparseMatrix::zeros(3, 3);
        assert_eq!(m.rank(), 0);
        m.add(0, 0, &q(1, 1));
        m.add(1, 1, &q(1, 2));
        m.add(2, 0, &q(2, 1));
        m.add(2, 1, &q(1, 1));
        assert_eq!(m.rank(), 2);
        m.add(2, 2, &q(-3, 7));
        assert_eq!(m.rank(), 3);
    }

    #[test]
    fn cancelling_entries_vanish() {
        let mut m = SparseMatrix::zeros(1, 1);
        m.add(0, 0, &q(1, 1));
        m.add(0, 0, &q(-1, 1));
        assert!(m.is_zero());
    }

    proptest! {
        #[test]
        fn bareiss_agrees_with_rational_elimination(
            cells in proptest::collection::vec((-3i64..=3, 1i64..=3), 1..=36),
            cols in 1usize..=6,
        ) {
            let rows = cells.len().div_ceil(cols);
            let mut m = SparseMatrix::zeros(rows, cols);
            for (i, &(n, d)) in cells.iter().enumerate() {
                m.add(i / cols, i % cols, &q(n, d));
            }
            prop_assert_eq!(m.rank(), rational_rank(m.to_dense()));
        }
    }
}
