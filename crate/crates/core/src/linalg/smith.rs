use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{IntMatrix, LatticeVector};

/// `U * A * V = D` with `U`, `V` unimodular and `D` diagonal,
/// `d_i | d_{i+1}`, `d_i >= 0`.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SmithDecomposition {
    /// Diagonal entries `d_1, ..., d_min(rows, cols)` (including zeros).
    pub fn diagonal(&self) -> Vec<BigInt> {
        let n = self.d.rows().min(self.d.cols());
        (0..n).map(|i| self.d[(i, i)].clone()).collect()
    }

    /// Nonzero elementary divisors.
    pub fn divisors(&self) -> Vec<BigInt> {
        self.diagonal().into_iter().filter(|x| !x.is_zero()).collect()
    }

    pub fn rank(&self) -> usize {
        self.divisors().len()
    }
}

/// Smith normal form by elementary row and column operations, always
/// pivoting on the entry of least absolute value in the active block.
pub fn smith_normal_form(a: &IntMatrix) -> SmithDecomposition {
    let (rows, cols) = (a.rows(), a.cols());
    let mut d = a.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);

    for t in 0..rows.min(cols) {
        loop {
            let Some((pi, pj)) = min_abs_entry(&d, t) else {
                return SmithDecomposition { u, d, v };
            };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let mut clean = true;
            for i in t + 1..rows {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let q = d[(i, t)].div_floor(&d[(t, t)]);
                d.sub_row_multiple(i, t, &q);
                u.sub_row_multiple(i, t, &q);
                clean &= d[(i, t)].is_zero();
            }
            for j in t + 1..cols {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let q = d[(t, j)].div_floor(&d[(t, t)]);
                d.sub_col_multiple(j, t, &q);
                v.sub_col_multiple(j, t, &q);
                clean &= d[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }

            // divisibility of the remaining block by the pivot
            let pivot = d[(t, t)].clone();
            let offender = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !d[(i, j)].is_multiple_of(&pivot));
            match offender {
                Some((i, _)) => {
                    // row t += row i, then reduce again
                    let minus_one = -BigInt::one();
                    d.sub_row_multiple(t, i, &minus_one);
                    u.sub_row_multiple(t, i, &minus_one);
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    SmithDecomposition { u, d, v }
}

fn min_abs_entry(d: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<((usize, usize), BigInt)> = None;
    for i in t..d.rows() {
        for j in t..d.cols() {
            let x = d[(i, j)].abs();
            if x.is_zero() {
                continue;
            }
            if best.as_ref().is_none_or(|(_, b)| &x < b) {
                best = Some(((i, j), x));
            }
        }
    }
    best.map(|(pos, _)| pos)
}

/// Integer `gamma` with `A * gamma = (1, ..., 1)` if one exists.
///
/// With `U A V = D` the system becomes `D y = U 1`, `gamma = V y`; it is
/// solvable iff each `d_i` divides the matching entry of `U 1` and the
/// entries past the rank vanish.
pub fn solve_all_ones(a: &IntMatrix) -> Option<LatticeVector> {
    let snf = smith_normal_form(a);
    let ones = LatticeVector::new(vec![BigInt::one(); a.rows()]);
    let b = snf.u.mul_vec(&ones);
    let diag = snf.diagonal();
    let mut y = vec![BigInt::zero(); a.cols()];
    for (i, bi) in b.entries().iter().enumerate() {
        let di = diag.get(i).cloned().unwrap_or_else(BigInt::zero);
        if di.is_zero() {
            if !bi.is_zero() {
                return None;
            }
        } else {
            let (q, r) = bi.div_rem(&di);
            if !r.is_zero() {
                return None;
            }
            y[i] = q;
        }
    }
    let gamma = snf.v.mul_vec(&LatticeVector::new(y));
    debug_assert_eq!(a.mul_vec(&gamma), ones);
    Some(gamma)
}
