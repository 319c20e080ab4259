use std::fmt;

use num_integer::Integer;

use super::{IntMatrix, LinalgError};

/// Dense matrix over 𝔽₂.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct F2Matrix {
    rows: usize,
    cols: usize,
    bits: Vec<bool>,
}

impl F2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        F2Matrix {
            rows,
            cols,
            bits: vec![false; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_rows<R: AsRef<[u8]>>(rows: &[R]) -> Result<Self, LinalgError> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut m = Self::zeros(nrows, ncols);
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            if r.len() != ncols {
                return Err(LinalgError::BadShape {
                    rows: nrows,
                    cols: ncols,
                    len: r.len(),
                });
            }
            for (j, &b) in r.iter().enumerate() {
                match b {
                    0 => {}
                    1 => m.set(i, j, true),
                    _ => return Err(LinalgError::NotABit(b)),
                }
            }
        }
        Ok(m)
    }

    /// Reduction modulo 2.
    pub fn reduce(m: &IntMatrix) -> Self {
        let mut out = Self::zeros(m.nrows(), m.ncols());
        for i in 0..m.nrows() {
            for j in 0..m.ncols() {
                out.set(i, j, m.get(i, j).is_odd());
            }
        }
        out
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: bool) {
        self.bits[i * self.cols + j] = v;
    }

    pub fn flip(&mut self, i: usize, j: usize) {
        self.bits[i * self.cols + j] ^= true;
    }

    pub fn column(&self, j: usize) -> Vec<bool> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.bits.iter().all(|b| !b)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn try_mul(&self, rhs: &F2Matrix) -> Result<F2Matrix, LinalgError> {
        if self.cols != rhs.rows {
            return Err(LinalgError::DimensionMismatch {
                op: "multiply",
                left: (self.rows, self.cols),
                right: (rhs.rows, rhs.cols),
            });
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.get(i, k) {
                    for j in 0..rhs.cols {
                        if rhs.get(k, j) {
                            out.flip(i, j);
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn apply(&self, v: &[bool]) -> Vec<bool> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| (0..self.cols).fold(false, |acc, j| acc ^ (self.get(i, j) & v[j])))
            .collect()
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (F2Matrix, Vec<usize>) {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..a.cols {
            if r == a.rows {
                break;
            }
            let Some(p) = (r..a.rows).find(|&i| a.get(i, c)) else {
                continue;
            };
            if p != r {
                for j in 0..a.cols {
                    a.bits.swap(p * a.cols + j, r * a.cols + j);
                }
            }
            for i in 0..a.rows {
                if i != r && a.get(i, c) {
                    for j in c..a.cols {
                        let v = a.get(r, j);
                        if v {
                            a.flip(i, j);
                        }
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (a, pivots)
    }
}

impl fmt::Display for F2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let line: String = (0..self.cols)
                .map(|j| if self.get(i, j) { '1' } else { '0' })
                .collect();
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}

pub fn f2_rank(m: &F2Matrix) -> usize {
    m.rref().1.len()
}

/// Basis of `ker M` over 𝔽₂, as the columns of a `cols(M) × k` matrix.
pub fn f2_kernel_basis(m: &F2Matrix) -> F2Matrix {
    let (r, pivots) = m.rref();
    let free: Vec<usize> = (0..m.ncols()).filter(|c| !pivots.contains(c)).collect();
    let mut basis = F2Matrix::zeros(m.ncols(), free.len());
    for (k, &f) in free.iter().enumerate() {
        basis.set(f, k, true);
        for (row, &p) in pivots.iter().enumerate() {
            if r.get(row, f) {
                basis.set(p, k, true);
            }
        }
    }
    basis
}

/// Whether `v` lies in the column space of `m`.
pub fn f2_in_column_space(m: &F2Matrix, v: &[bool]) -> bool {
    assert_eq!(v.len(), m.nrows());
    let mut aug = F2Matrix::zeros(m.nrows(), m.ncols() + 1);
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            aug.set(i, j, m.get(i, j));
        }
        aug.set(i, m.ncols(), v[i]);
    }
    f2_rank(&aug) == f2_rank(m)
}
