use std::fmt;
use std::ops::{Index, IndexMut};

use num_traits::{One, Zero};

use super::{Int, Rat};

/// Dense integer matrix with exact arithmetic.
#[derive(Clone, PartialEq, Eq)]
pub struct IMat {
    rows: usize,
    cols: usize,
    data: Vec<Int>,
}

impl IMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IMat {
            rows,
            cols,
            data: vec![Int::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IMat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Int::one();
        }
        m
    }

    /// Build from row vectors; all rows must have equal length.
    pub fn from_rows(rows: &[Vec<Int>]) -> Self {
        let nc = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == nc), "ragged rows");
        IMat {
            rows: rows.len(),
            cols: nc,
            data: rows.concat(),
        }
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        let big: Vec<Vec<Int>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| Int::from(x)).collect())
            .collect();
        IMat::from_rows(&big)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> Vec<Int> {
        (0..self.cols).map(|j| self[(i, j)].clone()).collect()
    }

    pub fn col(&self, j: usize) -> Vec<Int> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Int>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn transpose(&self) -> IMat {
        let mut t = IMat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IMat) -> IMat {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut p = IMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let t = a * &other[(k, j)];
                    p[(i, j)] += t;
                }
            }
        }
        p
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `row_i -= q * row_t`
    pub fn row_sub_mul(&mut self, i: usize, t: usize, q: &Int) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let d = q * &self[(t, j)];
            self[(i, j)] -= d;
        }
    }

    /// `col_j -= q * col_t`
    pub fn col_sub_mul(&mut self, j: usize, t: usize, q: &Int) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let d = q * &self[(i, t)];
            self[(i, j)] -= d;
        }
    }

    /// `row_t += row_i`
    pub fn row_add(&mut self, t: usize, i: usize) {
        for j in 0..self.cols {
            let d = self[(i, j)].clone();
            self[(t, j)] += d;
        }
    }

    pub fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self[(i, j)].clone();
            self[(i, j)] = v;
        }
    }

    /// Determinant by fraction-free (Bareiss) elimination; square input only.
    pub fn det(&self) -> Int {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Int::one();
        }
        let mut w = self.clone();
        let mut sign = Int::one();
        let mut prev = Int::one();
        for k in 0..n - 1 {
            if w[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !w[(i, k)].is_zero()) {
                    Some(i) => {
                        w.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return Int::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let t = &w[(i, j)] * &w[(k, k)] - &w[(i, k)] * &w[(k, j)];
                    w[(i, j)] = &t / &prev;
                }
            }
            prev = w[(k, k)].clone();
        }
        sign * w[(n - 1, n - 1)].clone()
    }

    /// Rank over the rationals.
    pub fn rank(&self) -> usize {
        let mut w: Vec<Vec<Rat>> = (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| Rat::from(self[(i, j)].clone()))
                    .collect()
            })
            .collect();
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(p) = (rank..self.rows).find(|&i| !w[i][col].is_zero()) else {
                continue;
            };
            w.swap(rank, p);
            for i in 0..self.rows {
                if i != rank && !w[i][col].is_zero() {
                    let f = &w[i][col] / &w[rank][col];
                    for j in col..self.cols {
                        let d = &f * &w[rank][j];
                        w[i][j] = &w[i][j] - &d;
                    }
                }
            }
            rank += 1;
            if rank == self.rows {
                break;
            }
        }
        rank
    }
}

impl Index<(usize, usize)> for IMat {
    type Output = Int;
    fn index(&self, (i, j): (usize, usize)) -> &Int {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Int {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IMat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self[(i, j)].to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Solve `A x = b` exactly over the rationals.
///
/// Returns `None` when the system is inconsistent. The solution is unique
/// whenever `A` has full column rank, which every caller in this crate
/// guarantees; a free column is resolved to zero.
pub fn solve_exact(a: &IMat, b: &[Int]) -> Option<Vec<Rat>> {
    assert_eq!(a.rows(), b.len(), "dimension mismatch in solve");
    let rows = a.rows();
    let cols = a.cols();
    let mut w: Vec<Vec<Rat>> = (0..rows)
        .map(|i| {
            let mut r: Vec<Rat> = (0..cols).map(|j| Rat::from(a[(i, j)].clone())).collect();
            r.push(Rat::from(b[i].clone()));
            r
        })
        .collect();
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; cols];
    let mut next = 0;
    for col in 0..cols {
        let Some(p) = (next..rows).find(|&i| !w[i][col].is_zero()) else {
            continue;
        };
        w.swap(next, p);
        let inv = w[next][col].clone();
        for j in col..=cols {
            w[next][j] = &w[next][j] / &inv;
        }
        for i in 0..rows {
            if i != next && !w[i][col].is_zero() {
                let f = w[i][col].clone();
                for j in col..=cols {
                    let d = &f * &w[next][j];
                    w[i][j] = &w[i][j] - &d;
                }
            }
        }
        pivot_of_col[col] = Some(next);
        next += 1;
    }
    // inconsistent when a zero row has non-zero right-hand side
    for i in next..rows {
        if !w[i][cols].is_zero() {
            return None;
        }
    }
    let mut x = vec![Rat::zero(); cols];
    for col in 0..cols {
        if let Some(p) = pivot_of_col[col] {
            x[col] = w[p][cols].clone();
        }
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intlin::int;

    #[test]
    fn det_and_rank() {
        let m = IMat::from_i64_rows(&[vec![2, 0], vec![1, 3]]);
        assert_eq!(m.det(), int(6));
        assert_eq!(m.rank(), 2);
        let s = IMat::from_i64_rows(&[vec![1, 2], vec![2, 4]]);
        assert_eq!(s.det(), int(0));
        assert_eq!(s.rank(), 1);
    }

    #[test]
    fn solve_unique_and_inconsistent() {
        let a = IMat::from_i64_rows(&[vec![2, -1], vec![-1, 2]]);
        let x = solve_exact(&a, &[int(1), int(1)]).unwrap();
        assert_eq!(x, vec![Rat::from(int(1)), Rat::from(int(1))]);
        let bad = IMat::from_i64_rows(&[vec![1, 1], vec![1, 1]]);
        assert!(solve_exact(&bad, &[int(0), int(1)]).is_none());
    }
}
