//! Dense linear algebra over the prime field GF(p), used to build the
//! vector-space decomposition of a field over a subfield and to invert
//! subfield embeddings. Crate-private.

pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

/// Row-major matrix over GF(p).
#[derive(Debug, Clone)]
pub(crate) struct GfpMatrix {
    pub p: u64,
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<u64>,
}

impl GfpMatrix {
    pub fn zero(p: u64, rows: usize, cols: usize) -> Self {
        GfpMatrix {
            p,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(p: u64, n: usize) -> Self {
        let mut m = Self::zero(p, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Builds the matrix whose j-th column is `columns[j]`.
    pub fn from_columns(p: u64, rows: usize, columns: &[Vec<u64>]) -> Self {
        let mut m = Self::zero(p, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            debug_assert_eq!(col.len(), rows);
            for (i, &v) in col.iter().enumerate() {
                m.data[i * m.cols + j] = v % p;
            }
        }
        m
    }

    pub fn at(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn mul_vec(&self, v: &[u64]) -> Vec<u64> {
        debug_assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc: u128 = 0;
                for (j, &vj) in v.iter().enumerate() {
                    acc += self.at(i, j) as u128 * vj as u128;
                }
                (acc % self.p as u128) as u64
            })
            .collect()
    }

    /// Gauss-Jordan inverse; `None` when singular. Square matrices only.
    pub fn inverse(&self) -> Option<GfpMatrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let p = self.p;
        let mut a = self.clone();
        let mut inv = GfpMatrix::identity(p, n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| a.at(r, col) != 0)?;
            if pivot != col {
                for j in 0..n {
                    let (x, y) = (a.at(pivot, j), a.at(col, j));
                    a.set(pivot, j, y);
                    a.set(col, j, x);
                    let (x, y) = (inv.at(pivot, j), inv.at(col, j));
                    inv.set(pivot, j, y);
                    inv.set(col, j, x);
                }
            }
            let scale = inv_mod(a.at(col, col), p);
            for j in 0..n {
                a.set(col, j, mul_mod(a.at(col, j), scale, p));
                inv.set(col, j, mul_mod(inv.at(col, j), scale, p));
            }
            for r in 0..n {
                if r != col && a.at(r, col) != 0 {
                    let factor = a.at(r, col);
                    for j in 0..n {
                        let va = (a.at(r, j) + p - mul_mod(factor, a.at(col, j), p)) % p;
                        a.set(r, j, va);
                        let vi = (inv.at(r, j) + p - mul_mod(factor, inv.at(col, j), p)) % p;
                        inv.set(r, j, vi);
                    }
                }
            }
        }
        Some(inv)
    }
}

/// Precomputed least-squares-style solver for a fixed (possibly rectangular)
/// system `A x = b` over GF(p): row-reduces `A` once, then answers repeated
/// solves, reporting inconsistent right-hand sides as `None`.
#[derive(Debug, Clone)]
pub(crate) struct GfpSolver {
    p: u64,
    rows: usize,
    cols: usize,
    /// Row-reduced echelon form of A.
    rref: GfpMatrix,
    /// Transform T with T*A = rref; applied to each right-hand side.
    transform: GfpMatrix,
    /// pivot_cols[k] = column of the k-th pivot row.
    pivot_cols: Vec<usize>,
}

impl GfpSolver {
    pub fn new(a: &GfpMatrix) -> Self {
        let p = a.p;
        let (rows, cols) = (a.rows, a.cols);
        let mut m = a.clone();
        let mut t = GfpMatrix::identity(p, rows);
        let mut pivot_cols = Vec::new();
        let mut rank = 0usize;
        for col in 0..cols {
            let Some(pivot) = (rank..rows).find(|&r| m.at(r, col) != 0) else {
                continue;
            };
            if pivot != rank {
                for j in 0..cols {
                    let (x, y) = (m.at(pivot, j), m.at(rank, j));
                    m.set(pivot, j, y);
                    m.set(rank, j, x);
                }
                for j in 0..rows {
                    let (x, y) = (t.at(pivot, j), t.at(rank, j));
                    t.set(pivot, j, y);
                    t.set(rank, j, x);
                }
            }
            let scale = inv_mod(m.at(rank, col), p);
            for j in 0..cols {
                m.set(rank, j, mul_mod(m.at(rank, j), scale, p));
            }
            for j in 0..rows {
                t.set(rank, j, mul_mod(t.at(rank, j), scale, p));
            }
            for r in 0..rows {
                if r != rank && m.at(r, col) != 0 {
                    let factor = m.at(r, col);
                    for j in 0..cols {
                        let v = (m.at(r, j) + p - mul_mod(factor, m.at(rank, j), p)) % p;
                        m.set(r, j, v);
                    }
                    for j in 0..rows {
                        let v = (t.at(r, j) + p - mul_mod(factor, t.at(rank, j), p)) % p;
                        t.set(r, j, v);
                    }
                }
            }
            pivot_cols.push(col);
            rank += 1;
        }
        GfpSolver {
            p,
            rows,
            cols,
            rref: m,
            transform: t,
            pivot_cols,
        }
    }

    pub fn rank(&self) -> usize {
        self.pivot_cols.len()
    }

    /// Solves `A x = b`; `None` if inconsistent. Free variables are set to 0.
    pub fn solve(&self, b: &[u64]) -> Option<Vec<u64>> {
        debug_assert_eq!(b.len(), self.rows);
        let y = self.transform.mul_vec(b);
        if y[self.rank()..].iter().any(|&v| v != 0) {
            return None;
        }
        let mut x = vec![0u64; self.cols];
        for (r, &c) in self.pivot_cols.iter().enumerate() {
            // y[r] already accounts for the eliminated entries; with free
            // variables pinned to zero the pivot value is the solution.
            let mut v = y[r];
            for (j, &xj) in x.iter().enumerate().skip(c + 1) {
                if self.rref.at(r, j) != 0 {
                    v = (v + self.p - mul_mod(self.rref.at(r, j), xj, self.p)) % self.p;
                }
            }
            x[c] = v;
        }
        Some(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_round_trip_gf5() {
        let a = GfpMatrix {
            p: 5,
            rows: 2,
            cols: 2,
            data: vec![1, 2, 3, 4],
        };
        let inv = a.inverse().unwrap();
        // (A^-1 A) v = v for basis vectors
        for v in [[1, 0], [0, 1]] {
            let av = a.mul_vec(&v);
            let back = inv.mul_vec(&av);
            assert_eq!(back, v);
        }
    }

    #[test]
    fn singular_matrix_has_no_inverse() {
        let a = GfpMatrix {
            p: 3,
            rows: 2,
            cols: 2,
            data: vec![1, 2, 2, 1],
        };
        // det = 1 - 4 = -3 = 0 mod 3
        assert!(a.inverse().is_none());
    }

    #[test]
    fn solver_detects_inconsistency() {
        // Column space of [[1],[1]] over GF(2): b = (1,0) unsolvable.
        let a = GfpMatrix::from_columns(2, 2, &[vec![1, 1]]);
        let s = GfpSolver::new(&a);
        assert_eq!(s.rank(), 1);
        assert_eq!(s.solve(&[1, 1]), Some(vec![1]));
        assert_eq!(s.solve(&[1, 0]), None);
    }

    #[test]
    fn solver_full_rank_rectangular() {
        // 3x2 system over GF(7).
        let a = GfpMatrix::from_columns(7, 3, &[vec![1, 0, 2], vec![0, 1, 3]]);
        let s = GfpSolver::new(&a);
        let x = vec![4, 5];
        let b = a.mul_vec(&x);
        assert_eq!(s.solve(&b), Some(x));
    }
}
