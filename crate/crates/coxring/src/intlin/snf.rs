use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::{IMat, Int};

/// Smith normal form `L * M * R = D` with unimodular transforms.
pub struct Snf {
    /// Diagonal of `D`, length `min(rows, cols)`, non-negative, each entry
    /// dividing the next (zeros trail).
    pub diag: Vec<Int>,
    pub left: IMat,
    pub right: IMat,
}

impl Snf {
    /// Diagonal entries with the trailing zeros removed.
    pub fn nonzero_factors(&self) -> Vec<Int> {
        self.diag.iter().filter(|d| !d.is_zero()).cloned().collect()
    }

    pub fn rank(&self) -> usize {
        self.diag.iter().filter(|d| !d.is_zero()).count()
    }
}

fn find_min_abs_nonzero(w: &IMat, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..w.rows() {
        for j in t..w.cols() {
            if w[(i, j)].is_zero() {
                continue;
            }
            match best {
                Some(b) if w[(b.0, b.1)].abs() <= w[(i, j)].abs() => {}
                _ => best = Some((i, j)),
            }
        }
    }
    best
}

/// Diagonalize an integer matrix by unimodular row and column operations.
///
/// The returned transforms satisfy `left * m * right = diag(d)` exactly,
/// `det(left), det(right) = ±1`, and the diagonal is non-negative with a
/// divisibility chain `d_1 | d_2 | ...`. Empty matrices are fine.
pub fn smith_normal_form(m: &IMat) -> Snf {
    let nr = m.rows();
    let nc = m.cols();
    let mut w = m.clone();
    let mut left = IMat::identity(nr);
    let mut right = IMat::identity(nc);

    let mut t = 0;
    while t < nr.min(nc) {
        let Some((pi, pj)) = find_min_abs_nonzero(&w, t) else {
            break;
        };
        w.swap_rows(t, pi);
        left.swap_rows(t, pi);
        w.swap_cols(t, pj);
        right.swap_cols(t, pj);

        loop {
            // clear column t below the pivot
            let mut dirty = false;
            for i in t + 1..nr {
                if !w[(i, t)].is_zero() {
                    let q = w[(i, t)].div_floor(&w[(t, t)]);
                    w.row_sub_mul(i, t, &q);
                    left.row_sub_mul(i, t, &q);
                    if !w[(i, t)].is_zero() {
                        // remainder is strictly smaller; promote it to pivot
                        w.swap_rows(t, i);
                        left.swap_rows(t, i);
                        dirty = true;
                    }
                }
            }
            // clear row t right of the pivot
            for j in t + 1..nc {
                if !w[(t, j)].is_zero() {
                    let q = w[(t, j)].div_floor(&w[(t, t)]);
                    w.col_sub_mul(j, t, &q);
                    right.col_sub_mul(j, t, &q);
                    if !w[(t, j)].is_zero() {
                        w.swap_cols(t, j);
                        right.swap_cols(t, j);
                        dirty = true;
                    }
                }
            }
            if dirty {
                continue;
            }
            // pivot must divide the whole trailing block for the chain to hold
            let offender = (t + 1..nr)
                .flat_map(|i| (t + 1..nc).map(move |j| (i, j)))
                .find(|&(i, j)| !w[(i, j)].mod_floor(&w[(t, t)]).is_zero());
            match offender {
                Some((i, _)) => {
                    w.row_add(t, i);
                    left.row_add(t, i);
                }
                None => break,
            }
        }

        if w[(t, t)].is_negative() {
            w.negate_row(t);
            left.negate_row(t);
        }
        t += 1;
    }

    let diag: Vec<Int> = (0..nr.min(nc)).map(|i| w[(i, i)].clone()).collect();
    Snf {
        diag,
        left,
        right,
    }
}
