//! Small exact integer matrices for lattice automorphisms.

use std::fmt;

/// Square integer matrix, row-major. Entries are `i64`; products use
/// `i128` accumulators and panic on (practically impossible) overflow
/// rather than wrap.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntMatrix {
    n: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn identity(n: usize) -> Self {
        let mut data = vec![0; n * n];
        for i in 0..n {
            data[i * n + i] = 1;
        }
        IntMatrix { n, data }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        IntMatrix {
            n,
            data: rows.iter().flatten().copied().collect(),
        }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.data[r * self.n + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: i64) {
        self.data[r * self.n + c] = v;
    }

    pub fn row(&self, r: usize) -> &[i64] {
        &self.data[r * self.n..(r + 1) * self.n]
    }

    pub fn column(&self, c: usize) -> Vec<i64> {
        (0..self.n).map(|r| self.get(r, c)).collect()
    }

    pub fn is_identity(&self) -> bool {
        *self == IntMatrix::identity(self.n)
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.n, other.n, "dimension mismatch");
        let n = self.n;
        let mut data = vec![0i64; n * n];
        for r in 0..n {
            for c in 0..n {
                let mut acc: i128 = 0;
                for k in 0..n {
                    acc += self.get(r, k) as i128 * other.get(k, c) as i128;
                }
                data[r * n + c] = i64::try_from(acc).expect("integer matrix entry overflow");
            }
        }
        IntMatrix { n, data }
    }

    /// Apply to a column vector.
    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        assert_eq!(v.len(), self.n, "dimension mismatch");
        (0..self.n)
            .map(|r| {
                let acc: i128 = (0..self.n)
                    .map(|k| self.get(r, k) as i128 * v[k] as i128)
                    .sum();
                i64::try_from(acc).expect("integer vector entry overflow")
            })
            .collect()
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<i64>> = (0..self.n).map(|r| self.row(r).to_vec()).collect();
        write!(f, "IntMatrix({:?})", rows)
    }
}
