use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::LinalgError;

/// Dense integer matrix with arbitrary-precision entries, stored row-major.
///
/// Empty shapes (`0×n`, `n×0`, `0×0`) are ordinary values.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<BigInt>) -> Result<Self, LinalgError> {
        if data.len() != rows * cols {
            return Err(LinalgError::BadShape {
                rows,
                cols,
                len: data.len(),
            });
        }
        Ok(IntMatrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from small integer rows. Panics on ragged input.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(nrows * ncols);
        for r in rows {
            let r = r.as_ref();
            assert_eq!(r.len(), ncols, "ragged rows");
            data.extend(r.iter().map(|&x| BigInt::from(x)));
        }
        IntMatrix {
            rows: nrows,
            cols: ncols,
            data,
        }
    }

    /// Like [`IntMatrix::from_rows`] but with an explicit column count, so
    /// that `n×0` shapes can be expressed.
    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Result<Self, LinalgError> {
        Self::new(rows, cols, entries.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn from_diagonal(d: &[BigInt]) -> Self {
        let n = d.len();
        let mut m = Self::zeros(n, n);
        for (i, x) in d.iter().enumerate() {
            m.data[i * n + i] = x.clone();
        }
        m
    }

    pub fn column_vector(entries: &[BigInt]) -> Self {
        IntMatrix {
            rows: entries.len(),
            cols: 1,
            data: entries.to_vec(),
        }
    }

    #[inline]
    pub fn nrows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    /// The submatrix made of the given columns, in order.
    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let mut m = Self::zeros(self.rows, cols.len());
        for i in 0..self.rows {
            for (k, &j) in cols.iter().enumerate() {
                m.set(i, k, self.get(i, j).clone());
            }
        }
        m
    }

    pub fn select_rows(&self, rows: &[usize]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * self.cols);
        for &i in rows {
            data.extend_from_slice(self.row(i));
        }
        IntMatrix {
            rows: rows.len(),
            cols: self.cols,
            data,
        }
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = self.get(i, j);
                    if i == j {
                        x.is_one()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (i + 1..self.cols).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn try_mul(&self, rhs: &IntMatrix) -> Result<IntMatrix, LinalgError> {
        if self.cols != rhs.rows {
            return Err(LinalgError::DimensionMismatch {
                op: "multiply",
                left: self.shape(),
                right: rhs.shape(),
            });
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        *out.get_mut(i, j) += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn try_add(&self, rhs: &IntMatrix) -> Result<IntMatrix, LinalgError> {
        self.zip_with(rhs, "add", |a, b| a + b)
    }

    pub fn try_sub(&self, rhs: &IntMatrix) -> Result<IntMatrix, LinalgError> {
        self.zip_with(rhs, "subtract", |a, b| a - b)
    }

    fn zip_with(
        &self,
        rhs: &IntMatrix,
        op: &'static str,
        f: impl Fn(&BigInt, &BigInt) -> BigInt,
    ) -> Result<IntMatrix, LinalgError> {
        if self.shape() != rhs.shape() {
            return Err(LinalgError::DimensionMismatch {
                op,
                left: self.shape(),
                right: rhs.shape(),
            });
        }
        Ok(IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn scale(&self, k: &BigInt) -> IntMatrix {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * k).collect(),
        }
    }

    /// Block diagonal sum `self ⊕ other`.
    pub fn block_diag(&self, other: &IntMatrix) -> IntMatrix {
        let mut m = Self::zeros(self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j).clone());
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                m.set(self.rows + i, self.cols + j, other.get(i, j).clone());
            }
        }
        m
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &IntMatrix) -> Result<IntMatrix, LinalgError> {
        if self.rows != other.rows {
            return Err(LinalgError::DimensionMismatch {
                op: "hstack",
                left: self.shape(),
                right: other.shape(),
            });
        }
        let mut m = Self::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j).clone());
            }
            for j in 0..other.cols {
                m.set(i, self.cols + j, other.get(i, j).clone());
            }
        }
        Ok(m)
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

    /// `row[dst] += k * row[src]`
    pub fn add_row_multiple(&mut self, dst: usize, src: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = self.get(src, j) * k;
            *self.get_mut(dst, j) += v;
        }
    }

    /// `col[dst] += k * col[src]`
    pub fn add_col_multiple(&mut self, dst: usize, src: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = self.get(i, src) * k;
            *self.get_mut(i, dst) += v;
        }
    }

    pub fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let x = self.get_mut(i, j);
            *x = -std::mem::take(x);
        }
    }

    pub fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let x = self.get_mut(i, j);
            *x = -std::mem::take(x);
        }
    }

    /// Determinant by fraction-free (Bareiss) elimination. Errors on
    /// non-square input; the empty matrix has determinant 1.
    pub fn determinant(&self) -> Result<BigInt, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare(self.shape()));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a.get(k, k).is_zero() {
                match (k + 1..n).find(|&i| !a.get(i, k).is_zero()) {
                    Some(i) => {
                        a.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j)) / &prev;
                    a.set(i, j, v);
                }
            }
            prev = a.get(k, k).clone();
        }
        Ok(sign * a.get(n - 1, n - 1))
    }

    /// True when square with determinant ±1.
    pub fn is_unimodular(&self) -> bool {
        self.determinant().map(|d| d.abs().is_one()).unwrap_or(false)
    }

    /// Entrywise reduction into small integers, if every entry fits.
    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|x| x.to_i64()).collect())
            .collect()
    }

    /// Largest absolute value of an entry (zero for empty matrices).
    pub fn max_abs(&self) -> BigInt {
        self.data.iter().map(|x| x.abs()).max().unwrap_or_default()
    }

    /// Entrywise divisibility by `k`.
    pub fn divisible_by(&self, k: &BigInt) -> bool {
        self.data.iter().all(|x| x.is_multiple_of(k))
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "[")?;
            for (j, x) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl<'a> Mul<&'a IntMatrix> for &'a IntMatrix {
    type Output = IntMatrix;

    fn mul(self, rhs: &'a IntMatrix) -> IntMatrix {
        self.try_mul(rhs).expect("matrix product dimension mismatch")
    }
}

impl<'a> Add<&'a IntMatrix> for &'a IntMatrix {
    type Output = IntMatrix;

    fn add(self, rhs: &'a IntMatrix) -> IntMatrix {
        self.try_add(rhs).expect("matrix sum dimension mismatch")
    }
}

impl<'a> Sub<&'a IntMatrix> for &'a IntMatrix {
    type Output = IntMatrix;

    fn sub(self, rhs: &'a IntMatrix) -> IntMatrix {
        self.try_sub(rhs).expect("matrix difference dimension mismatch")
    }
}

impl Neg for &IntMatrix {
    type Output = IntMatrix;

    fn neg(self) -> IntMatrix {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| -x).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinant_small_cases() {
        assert_eq!(IntMatrix::zeros(0, 0).determinant().unwrap(), BigInt::one());
        let m = IntMatrix::from_rows(&[[2, 1], [7, 4]]);
        assert_eq!(m.determinant().unwrap(), BigInt::from(1));
        let m = IntMatrix::from_rows(&[[0, 1, 2], [1, 0, 3], [4, -3, 8]]);
        assert_eq!(m.determinant().unwrap(), BigInt::from(-2));
        let m = IntMatrix::from_rows(&[[1, 2], [2, 4]]);
        assert_eq!(m.determinant().unwrap(), BigInt::zero());
    }

    #[test]
    fn empty_shapes_multiply() {
        let a = IntMatrix::zeros(3, 0);
        let b = IntMatrix::zeros(0, 2);
        assert_eq!(&a * &b, IntMatrix::zeros(3, 2));
        let c = IntMatrix::zeros(0, 3);
        assert_eq!((&c * &a).shape(), (0, 0));
    }

    #[test]
    fn rejects_bad_shape() {
        assert!(IntMatrix::from_i64(2, 2, &[1, 2, 3]).is_err());
        assert!(IntMatrix::from_rows(&[[1, 2]])
            .try_mul(&IntMatrix::from_rows(&[[1, 2]]))
            .is_err());
    }

    #[test]
    fn display_is_json_like() {
        let m = IntMatrix::from_rows(&[[1, -2], [0, 3]]);
        assert_eq!(m.to_string(), "[[1,-2],[0,3]]");
        assert_eq!(IntMatrix::zeros(0, 0).to_string(), "[]");
    }
}
