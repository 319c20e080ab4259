use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{IntMatrix, LinalgError};

/// `left · M · right = diag(d)` (padded with zeros to the shape of `M`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition {
    /// Nonzero invariant factors, each dividing the next. Positive.
    pub d: Vec<BigInt>,
    pub left: IntMatrix,
    pub right: IntMatrix,
    pub rows: usize,
    pub cols: usize,
}

impl SmithDecomposition {
    pub fn rank(&self) -> usize {
        self.d.len()
    }

    /// The diagonal matrix `diag(d)` padded to `rows × cols`.
    pub fn diagonal(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.rows, self.cols);
        for (i, x) in self.d.iter().enumerate() {
            m.set(i, i, x.clone());
        }
        m
    }
}

/// Locate the nonzero entry of smallest absolute value in the trailing block
/// starting at `(t, t)`. Ties go to the lowest row, then the lowest column.
fn smallest_pivot(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..a.nrows() {
        for j in t..a.ncols() {
            let x = a.get(i, j);
            if x.is_zero() {
                continue;
            }
            match best {
                Some((bi, bj)) if a.get(bi, bj).abs() <= x.abs() => {}
                _ => best = Some((i, j)),
            }
        }
    }
    best
}

/// Smallest nonzero entry in row `t` / column `t` of the trailing block.
fn smallest_in_cross(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let cells = (t..a.nrows())
        .map(|i| (i, t))
        .chain((t + 1..a.ncols()).map(|j| (t, j)));
    let mut best: Option<(usize, usize)> = None;
    for (i, j) in cells {
        let x = a.get(i, j);
        if x.is_zero() {
            continue;
        }
        match best {
            Some((bi, bj)) if a.get(bi, bj).abs() <= x.abs() => {}
            _ => best = Some((i, j)),
        }
    }
    best
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithDecomposition {
    let (rows, cols) = m.shape();
    let mut a = m.clone();
    let mut left = IntMatrix::identity(rows);
    let mut right = IntMatrix::identity(cols);
    let mut d = Vec::new();

    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pi, pj)) = smallest_pivot(&a, t) else {
            break;
        };
        a.swap_rows(t, pi);
        left.swap_rows(t, pi);
        a.swap_cols(t, pj);
        right.swap_cols(t, pj);

        loop {
            let p = a.get(t, t).clone();
            let mut clean = true;
            for i in t + 1..rows {
                if a.get(i, t).is_zero() {
                    continue;
                }
                let q = -a.get(i, t).div_floor(&p);
                a.add_row_multiple(i, t, &q);
                left.add_row_multiple(i, t, &q);
                clean &= a.get(i, t).is_zero();
            }
            for j in t + 1..cols {
                if a.get(t, j).is_zero() {
                    continue;
                }
                let q = -a.get(t, j).div_floor(&p);
                a.add_col_multiple(j, t, &q);
                right.add_col_multiple(j, t, &q);
                clean &= a.get(t, j).is_zero();
            }
            if !clean {
                // a remainder smaller than the pivot survived; promote it
                let (i, j) = smallest_in_cross(&a, t).expect("pivot row is nonzero");
                a.swap_rows(t, i);
                left.swap_rows(t, i);
                a.swap_cols(t, j);
                right.swap_cols(t, j);
                continue;
            }
            // the pivot must divide the whole trailing block
            let bad = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !a.get(i, j).is_multiple_of(&p));
            match bad {
                Some((i, _)) => {
                    let one = BigInt::one();
                    a.add_row_multiple(t, i, &one);
                    left.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }

        if a.get(t, t).is_negative() {
            a.negate_row(t);
            left.negate_row(t);
        }
        d.push(a.get(t, t).clone());
        t += 1;
    }

    SmithDecomposition {
        d,
        left,
        right,
        rows,
        cols,
    }
}

/// Canonical row-style Hermite normal form of the lattice spanned by the
/// rows of `m`. Zero rows are dropped; pivots are positive and entries
/// above a pivot are reduced into `[0, pivot)`.
pub fn hermite_rows(m: &IntMatrix) -> IntMatrix {
    let mut a = m.clone();
    let (rows, cols) = a.shape();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        // gcd-combine column c into row r
        loop {
            let nz: Vec<usize> = (r..rows).filter(|&i| !a.get(i, c).is_zero()).collect();
            if nz.is_empty() {
                break;
            }
            let pivot = *nz
                .iter()
                .min_by(|&&x, &&y| a.get(x, c).abs().cmp(&a.get(y, c).abs()).then(x.cmp(&y)))
                .unwrap();
            a.swap_rows(r, pivot);
            let p = a.get(r, c).clone();
            let mut done = true;
            for i in r + 1..rows {
                if a.get(i, c).is_zero() {
                    continue;
                }
                let q = -a.get(i, c).div_floor(&p);
                a.add_row_multiple(i, r, &q);
                done &= a.get(i, c).is_zero();
            }
            if done {
                break;
            }
        }
        if a.get(r, c).is_zero() {
            continue;
        }
        if a.get(r, c).is_negative() {
            a.negate_row(r);
        }
        let p = a.get(r, c).clone();
        for i in 0..r {
            let q = -a.get(i, c).div_floor(&p);
            a.add_row_multiple(i, r, &q);
        }
        r += 1;
    }
    a.select_rows(&(0..r).collect::<Vec<_>>())
}

/// A ℤ-basis of `ker M`, as the columns of the returned `cols(M) × k`
/// matrix. The basis spans a direct summand and is put in Hermite form.
pub fn kernel_basis(m: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(m);
    let free: Vec<usize> = (snf.rank()..m.ncols()).collect();
    let raw = snf.right.select_columns(&free);
    let normalized = hermite_rows(&raw.transpose()).transpose();
    if normalized.ncols() == free.len() {
        normalized
    } else {
        // unreachable for a basis; keep the raw columns if it ever happens
        raw
    }
}

/// `coker(M) ≅ ℤ^free_rank ⊕ ⊕ ℤ/torsion[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cokernel {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

pub fn cokernel_presentation(m: &IntMatrix) -> Cokernel {
    let snf = smith_normal_form(m);
    Cokernel {
        free_rank: m.nrows() - snf.rank(),
        torsion: snf.d.iter().filter(|x| !x.is_one()).cloned().collect(),
    }
}

/// Some integer `X` with `M·X = b`, or `None` when none exists.
pub fn solve_linear(m: &IntMatrix, b: &IntMatrix) -> Result<Option<IntMatrix>, LinalgError> {
    if m.nrows() != b.nrows() {
        return Err(LinalgError::DimensionMismatch {
            op: "solve",
            left: m.shape(),
            right: b.shape(),
        });
    }
    let snf = smith_normal_form(m);
    let lb = &snf.left * b;
    let rank = snf.rank();
    let mut y = IntMatrix::zeros(m.ncols(), b.ncols());
    for (i, d) in snf.d.iter().enumerate() {
        for j in 0..b.ncols() {
            let (q, r) = lb.get(i, j).div_rem(d);
            if !r.is_zero() {
                return Ok(None);
            }
            y.set(i, j, q);
        }
    }
    for i in rank..m.nrows() {
        if lb.row(i).iter().any(|x| !x.is_zero()) {
            return Ok(None);
        }
    }
    Ok(Some(&snf.right * &y))
}

/// Inverse of a unimodular matrix.
pub fn unimodular_inverse(m: &IntMatrix) -> Option<IntMatrix> {
    if !m.is_square() || !m.is_unimodular() {
        return None;
    }
    solve_linear(m, &IntMatrix::identity(m.nrows())).ok().flatten()
}

/// Completes the columns of a saturated `n×k` basis to a unimodular `n×n`
/// matrix whose first `k` columns are exactly `basis`.
pub fn complete_to_unimodular(basis: &IntMatrix) -> Option<IntMatrix> {
    let (n, k) = basis.shape();
    // left · basis · right = [I_k; 0] when the columns span a summand
    let snf = smith_normal_form(basis);
    if snf.rank() != k || snf.d.iter().any(|x| !x.is_one()) {
        return None;
    }
    let linv = unimodular_inverse(&snf.left)?;
    // basis = linv · [I;0] · right^{-1}; columns k.. of linv complete it
    let rest: Vec<usize> = (k..n).collect();
    let complement = linv.select_columns(&rest);
    basis.hstack(&complement).ok()
}
