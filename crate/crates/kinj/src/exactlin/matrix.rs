use super::scalar::{Field, FieldError, Scalar};
use std::fmt;

/// Dense row-major matrix over one field. Zero-by-anything shapes are legal
/// and behave as zero maps, which the block complexes rely on heavily.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    field: Field,
    data: Vec<Scalar>,
}

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum LinError {
    #[error("dimension mismatch: {0}")]
    Shape(String),
    #[error("inconsistent linear system")]
    Inconsistent,
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Result of row reduction: `transform * original = reduced`, `pivots[k]` is
/// the column of the k-th pivot.
pub struct Rref {
    pub reduced: Matrix,
    pub pivots: Vec<usize>,
    pub transform: Matrix,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix {
            rows,
            cols,
            field,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>) -> Result<Matrix, LinError> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(LinError::Shape("ragged rows".into()));
            }
            for s in row {
                if s.field() != field {
                    return Err(LinError::Shape("mixed fields".into()));
                }
                data.push(s);
            }
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            field,
            data,
        })
    }

    pub fn from_i64_rows(field: Field, rows: &[Vec<i64>]) -> Matrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = Matrix::zeros(field, r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, field.from_i64(v));
            }
        }
        m
    }

    pub fn field(&self) -> Field {
        self.field
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        debug_assert_eq!(v.field(), self.field);
        self.data[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|s| s.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let e = self.get(i, j);
                    if i == j {
                        e.is_one()
                    } else {
                        e.is_zero()
                    }
                })
            })
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix, LinError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(LinError::Shape(format!(
                "add {}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a = a.add(b);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix, LinError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Matrix {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a = a.neg();
        }
        out
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a = a.mul(s);
        }
        out
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix, LinError> {
        if self.cols != other.rows {
            return Err(LinError::Shape(format!(
                "mul {}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.get(i, j).add(&a.mul(b));
                    out.set(i, j, cur);
                }
            }
        }
        Ok(out)
    }

    /// Horizontal concatenation.
    pub fn hstack(&self, other: &Matrix) -> Result<Matrix, LinError> {
        if self.rows != other.rows {
            return Err(LinError::Shape("hstack row mismatch".into()));
        }
        let mut out = Matrix::zeros(self.field, self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
            for j in 0..other.cols {
                out.set(i, self.cols + j, other.get(i, j).clone());
            }
        }
        Ok(out)
    }

    pub fn vstack(&self, other: &Matrix) -> Result<Matrix, LinError> {
        if self.cols != other.cols {
            return Err(LinError::Shape("vstack col mismatch".into()));
        }
        let mut out = Matrix::zeros(self.field, self.rows + other.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
        }
        for i in 0..other.rows {
            for j in 0..self.cols {
                out.set(self.rows + i, j, other.get(i, j).clone());
            }
        }
        Ok(out)
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(self.field, rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                out.set(a, b, self.get(i, j).clone());
            }
        }
        out
    }

    /// Row-reduced echelon form with deterministic pivoting: columns scanned
    /// left to right, pivot is the first row (top to bottom) with a nonzero
    /// entry among unused rows.
    pub fn rref(&self) -> Rref {
        let mut r = self.clone();
        let mut t = Matrix::identity(self.field, self.rows);
        let mut pivots = Vec::new();
        let mut next_row = 0usize;
        for col in 0..r.cols {
            if next_row >= r.rows {
                break;
            }
            let pivot_row = (next_row..r.rows).find(|&i| !r.get(i, col).is_zero());
            let Some(prow) = pivot_row else { continue };
            if prow != next_row {
                r.swap_rows(prow, next_row);
                t.swap_rows(prow, next_row);
            }
            let inv = r.get(next_row, col).inv().expect("nonzero pivot");
            r.scale_row(next_row, &inv);
            t.scale_row(next_row, &inv);
            for i in 0..r.rows {
                if i != next_row && !r.get(i, col).is_zero() {
                    let factor = r.get(i, col).clone();
                    r.row_sub_scaled(i, next_row, &factor);
                    t.row_sub_scaled(i, next_row, &factor);
                }
            }
            pivots.push(col);
            next_row += 1;
        }
        Rref {
            reduced: r,
            pivots,
            transform: t,
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn scale_row(&mut self, i: usize, s: &Scalar) {
        for j in 0..self.cols {
            let v = self.get(i, j).mul(s);
            self.set(i, j, v);
        }
    }

    /// row i -= s * row k
    fn row_sub_scaled(&mut self, i: usize, k: usize, s: &Scalar) {
        for j in 0..self.cols {
            let v = self.get(i, j).sub(&s.mul(self.get(k, j)));
            self.set(i, j, v);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Basis of the right kernel, one column vector per free column, in
    /// ascending free-column order.
    pub fn kernel_basis(&self) -> Vec<Matrix> {
        let Rref {
            reduced, pivots, ..
        } = self.rref();
        let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set.contains(&free) {
                continue;
            }
            let mut v = Matrix::zeros(self.field, self.cols, 1);
            v.set(free, 0, self.field.one());
            for (k, &pc) in pivots.iter().enumerate() {
                let coeff = reduced.get(k, free).neg();
                v.set(pc, 0, coeff);
            }
            basis.push(v);
        }
        basis
    }

    /// Solves `self * x = rhs` (rhs may have several columns). Returns one
    /// particular solution with zeros in the free coordinates.
    pub fn solve(&self, rhs: &Matrix) -> Result<Matrix, LinError> {
        if rhs.rows != self.rows {
            return Err(LinError::Shape("solve rhs rows".into()));
        }
        let aug = self.hstack(rhs)?;
        let Rref {
            reduced, pivots, ..
        } = aug.rref();
        // any pivot in the rhs block means inconsistency
        if pivots.iter().any(|&c| c >= self.cols) {
            return Err(LinError::Inconsistent);
        }
        let mut x = Matrix::zeros(self.field, self.cols, rhs.cols);
        for (k, &pc) in pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                x.set(pc, j, reduced.get(k, self.cols + j).clone());
            }
        }
        Ok(x)
    }

    /// Indices of a column basis of the column space (pivot columns).
    pub fn column_space_pivots(&self) -> Vec<usize> {
        self.rref().pivots
    }

    /// True if the square matrix is invertible; returns the inverse.
    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let r = self.rref();
        if r.pivots.len() == self.rows {
            Some(r.transform)
        } else {
            None
        }
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rational
    }

    #[test]
    fn kernel_of_ones_row() {
        // kernel of [1 1 1] is 2-dimensional; each basis vector really lies
        // in the kernel and the two are independent (checked via rank)
        let m = Matrix::from_i64_rows(q(), &[vec![1, 1, 1]]);
        let k = m.kernel_basis();
        assert_eq!(k.len(), 2);
        let mut stacked = k[0].clone();
        stacked = stacked.hstack(&k[1]).unwrap();
        assert_eq!(stacked.rank(), 2);
        for v in &k {
            assert!(m.mul(v).unwrap().is_zero());
        }
    }

    #[test]
    fn solve_upper_triangular() {
        // [[1,1],[0,1]] x = (2,1)^T has x = (1,1)^T; verified by multiplying back
        let a = Matrix::from_i64_rows(q(), &[vec![1, 1], vec![0, 1]]);
        let b = Matrix::from_i64_rows(q(), &[vec![2], vec![1]]);
        let x = a.solve(&b).unwrap();
        assert_eq!(a.mul(&x).unwrap(), b);
        assert_eq!(x, Matrix::from_i64_rows(q(), &[vec![1], vec![1]]));
    }

    #[test]
    fn solve_detects_inconsistency() {
        let a = Matrix::from_i64_rows(q(), &[vec![1, 1], vec![1, 1]]);
        let b = Matrix::from_i64_rows(q(), &[vec![0], vec![1]]);
        assert!(matches!(a.solve(&b), Err(LinError::Inconsistent)));
    }

    #[test]
    fn rref_transform_reproduces_reduction() {
        let m = Matrix::from_i64_rows(q(), &[vec![2, 4, 6], vec![1, 2, 4], vec![0, 0, 1]]);
        let r = m.rref();
        assert_eq!(r.transform.mul(&m).unwrap(), r.reduced);
        assert_eq!(r.pivots, vec![0, 2]);
    }

    #[test]
    fn empty_shapes_behave_as_zero_maps() {
        let a = Matrix::zeros(q(), 0, 3);
        let b = Matrix::zeros(q(), 3, 2);
        let c = a.mul(&b).unwrap();
        assert_eq!((c.rows, c.cols), (0, 2));
        assert_eq!(a.rank(), 0);
        assert_eq!(a.kernel_basis().len(), 3);
        let d = Matrix::zeros(q(), 2, 0);
        assert_eq!(d.kernel_basis().len(), 0);
    }

    #[test]
    fn inverse_round_trip() {
        let m = Matrix::from_i64_rows(q(), &[vec![1, 2], vec![3, 5]]);
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).unwrap().is_identity());
        assert!(inv.mul(&m).unwrap().is_identity());
        let singular = Matrix::from_i64_rows(q(), &[vec![1, 2], vec![2, 4]]);
        assert!(singular.inverse().is_none());
    }

    #[test]
    fn fp_rank_differs_from_rational_when_expected() {
        let m2 = Matrix::from_i64_rows(Field::fp(2).unwrap(), &[vec![1, 1], vec![1, 1]]);
        assert_eq!(m2.rank(), 1);
        let mq = Matrix::from_i64_rows(q(), &[vec![1, 1], vec![1, 1]]);
        assert_eq!(mq.rank(), 1);
        let m3 = Matrix::from_i64_rows(Field::fp(3).unwrap(), &[vec![1, 2], vec![2, 1]]);
        assert_eq!(m3.rank(), 1); // det = 1*1 - 2*2 = -3 = 0 mod 3
    }
}
