use std::fmt;

use super::{NumericsError, Scalar};

/// Dense row-major matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

/// Row vector (initial vectors).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RowVec<T>(pub Vec<T>);

/// Column vector (final vectors).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ColVec<T>(pub Vec<T>);

impl<T: Scalar> Matrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Result<Self, NumericsError> {
        if rows * cols != data.len() {
            return Err(NumericsError::EntryCount {
                rows,
                cols,
                entries: data.len(),
            });
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self, NumericsError> {
        let height = rows.len();
        let width = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != width) {
            return Err(NumericsError::RaggedRows);
        }
        let data = rows.into_iter().flatten().collect();
        Matrix::new(height, width, data)
    }

    /// Builds from integer rows; handy for small fixtures.
    pub fn from_integers(rows: &[&[i64]]) -> Self {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&v| T::from_integer(v)).collect())
            .collect();
        Matrix::from_rows(rows).expect("rectangular integer rows")
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = T::one();
        }
        m
    }

    /// The m×m matrix whose entries all equal `value`.
    pub fn constant(value: T, m: usize) -> Self {
        Matrix {
            rows: m,
            cols: m,
            data: vec![value; m * m],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: T) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn mul(&self, rhs: &Matrix<T>) -> Result<Matrix<T>, NumericsError> {
        if self.cols != rhs.rows {
            return Err(NumericsError::Dimension {
                op: "matrix product",
                left: (self.rows, self.cols),
                right: (rhs.rows, rhs.cols),
            });
        }
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.data[i * rhs.cols + j] += &a.mul_ref(b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, rhs: &Matrix<T>) -> Result<Matrix<T>, NumericsError> {
        if (self.rows, self.cols) != (rhs.rows, rhs.cols) {
            return Err(NumericsError::Dimension {
                op: "matrix sum",
                left: (self.rows, self.cols),
                right: (rhs.rows, rhs.cols),
            });
        }
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| {
                let mut s = a.clone();
                s += b;
                s
            })
            .collect();
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn scale(&self, factor: &T) -> Matrix<T> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a.mul_ref(factor)).collect(),
        }
    }

    pub fn pow(&self, exponent: u32) -> Result<Matrix<T>, NumericsError> {
        if !self.is_square() {
            return Err(NumericsError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let mut acc = Matrix::identity(self.rows);
        for _ in 0..exponent {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Kronecker product: the block matrix `(a_ij · rhs)`.
    pub fn kronecker(&self, rhs: &Matrix<T>) -> Matrix<T> {
        let rows = self.rows * rhs.rows;
        let cols = self.cols * rhs.cols;
        let mut out = Matrix::zeros(rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..rhs.rows {
                    for l in 0..rhs.cols {
                        out.set(i * rhs.rows + k, j * rhs.cols + l, a.mul_ref(rhs.get(k, l)));
                    }
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> Matrix<T> {
        let mut out = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn row_sums(&self) -> ColVec<T> {
        ColVec((0..self.rows).map(|i| sum(self.row(i).iter())).collect())
    }

    pub fn col_sums(&self) -> RowVec<T> {
        RowVec(
            (0..self.cols)
                .map(|j| sum((0..self.rows).map(|i| self.get(i, j))))
                .collect(),
        )
    }

    pub fn total_sum(&self) -> T {
        sum(self.data.iter())
    }

    pub fn min_entry(&self) -> Option<&T> {
        self.data
            .iter()
            .min_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal))
    }

    pub fn is_nonnegative(&self) -> bool {
        self.data.iter().all(Scalar::is_nonnegative)
    }

    /// Entries non-negative and every row summing to one.
    pub fn is_row_stochastic(&self) -> Result<bool, NumericsError> {
        if !self.is_square() {
            return Err(NumericsError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok(self.is_nonnegative() && self.row_sums().0.iter().all(|s| s.approx_eq(&T::one())))
    }

    pub fn approx_eq(&self, other: &Matrix<T>) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self.data.iter().zip(&other.data).all(|(a, b)| a.approx_eq(b))
    }

    /// Block-diagonal matrix with the given square blocks.
    pub fn block_diag(blocks: &[&Matrix<T>]) -> Matrix<T> {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for block in blocks {
            out.paste(r0, c0, block);
            r0 += block.rows;
            c0 += block.cols;
        }
        out
    }

    /// Copies `block` into `self` with its top-left corner at `(row, col)`.
    pub fn paste(&mut self, row: usize, col: usize, block: &Matrix<T>) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(row + i, col + j, block.get(i, j).clone());
            }
        }
    }
}

fn sum<'a, T: Scalar>(items: impl Iterator<Item = &'a T>) -> T {
    let mut acc = T::zero();
    for item in items {
        acc += item;
    }
    acc
}

impl<T: Scalar> RowVec<T> {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn unit(n: usize, index: usize) -> Self {
        let mut v = vec![T::zero(); n];
        v[index] = T::one();
        RowVec(v)
    }

    pub fn mul_matrix(&self, m: &Matrix<T>) -> Result<RowVec<T>, NumericsError> {
        if self.len() != m.rows {
            return Err(NumericsError::Dimension {
                op: "row vector times matrix",
                left: (1, self.len()),
                right: (m.rows, m.cols),
            });
        }
        let mut out = vec![T::zero(); m.cols];
        for (k, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in m.row(k).iter().enumerate() {
                if !b.is_zero() {
                    out[j] += &a.mul_ref(b);
                }
            }
        }
        Ok(RowVec(out))
    }

    pub fn dot(&self, col: &ColVec<T>) -> Result<T, NumericsError> {
        if self.len() != col.len() {
            return Err(NumericsError::Dimension {
                op: "row vector times column vector",
                left: (1, self.len()),
                right: (col.len(), 1),
            });
        }
        let mut acc = T::zero();
        for (a, b) in self.0.iter().zip(&col.0) {
            if !a.is_zero() && !b.is_zero() {
                acc += &a.mul_ref(b);
            }
        }
        Ok(acc)
    }

    pub fn kronecker(&self, rhs: &RowVec<T>) -> RowVec<T> {
        RowVec(kron_vec(&self.0, &rhs.0))
    }

    pub fn transpose(&self) -> ColVec<T> {
        ColVec(self.0.clone())
    }

    pub fn sum(&self) -> T {
        sum(self.0.iter())
    }

    pub fn scale(&self, factor: &T) -> RowVec<T> {
        RowVec(self.0.iter().map(|a| a.mul_ref(factor)).collect())
    }
}

impl<T: Scalar> ColVec<T> {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn unit(n: usize, index: usize) -> Self {
        ColVec(RowVec::unit(n, index).0)
    }

    pub fn kronecker(&self, rhs: &ColVec<T>) -> ColVec<T> {
        ColVec(kron_vec(&self.0, &rhs.0))
    }

    pub fn transpose(&self) -> RowVec<T> {
        RowVec(self.0.clone())
    }

    pub fn sum(&self) -> T {
        sum(self.0.iter())
    }
}

impl<T: Scalar> Matrix<T> {
    pub fn mul_col(&self, col: &ColVec<T>) -> Result<ColVec<T>, NumericsError> {
        if self.cols != col.len() {
            return Err(NumericsError::Dimension {
                op: "matrix times column vector",
                left: (self.rows, self.cols),
                right: (col.len(), 1),
            });
        }
        Ok(ColVec(
            (0..self.rows)
                .map(|i| {
                    let mut acc = T::zero();
                    for (a, b) in self.row(i).iter().zip(&col.0) {
                        if !a.is_zero() && !b.is_zero() {
                            acc += &a.mul_ref(b);
                        }
                    }
                    acc
                })
                .collect(),
        ))
    }
}

fn kron_vec<T: Scalar>(a: &[T], b: &[T]) -> Vec<T> {
    a.iter()
        .flat_map(|x| b.iter().map(move |y| x.mul_ref(y)))
        .collect()
}

impl<T: Scalar> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for (j, v) in self.row(i).iter().enumerate() {
                if j > 0 {
                    f.write_str(", ")?;
                }
                f.write_str(&v.to_literal())?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{ratio, Rational};

    fn m(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_integers(rows)
    }

    #[test]
    fn identity_is_neutral() {
        let a = m(&[&[1, 2], &[3, 4]]);
        assert_eq!(Matrix::identity(2).mul(&a).unwrap(), a);
    }

    #[test]
    fn unipotent_products() {
        let x = m(&[&[1, 1], &[0, 1]]);
        let y = m(&[&[1, -1], &[0, 1]]);
        let z = m(&[&[1, 0], &[1, 1]]);
        assert_eq!(x.mul(&y).unwrap(), Matrix::identity(2));
        assert_eq!(x.mul(&z).unwrap(), m(&[&[2, 1], &[1, 1]]));
    }

    #[test]
    fn product_dimension_mismatch() {
        let a = m(&[&[1, 2, 3]]);
        assert!(matches!(a.mul(&a), Err(NumericsError::Dimension { .. })));
    }

    #[test]
    fn kronecker_with_identity_is_block_diagonal() {
        let b = m(&[&[1, 2], &[3, 4]]);
        assert_eq!(
            Matrix::identity(2).kronecker(&b),
            Matrix::block_diag(&[&b, &b])
        );
    }

    #[test]
    fn kronecker_of_m_adic_digit_with_identity() {
        // P1(x) ⊗ I2 for m = 2, x = 1.
        let p = Matrix::from_rows(vec![
            vec![ratio(1, 2), ratio(1, 2)],
            vec![ratio(0, 1), ratio(1, 1)],
        ])
        .unwrap();
        let k = p.kronecker(&Matrix::identity(2));
        let h = ratio(1, 2);
        let z = ratio(0, 1);
        let o = ratio(1, 1);
        let expected = Matrix::from_rows(vec![
            vec![h.clone(), z.clone(), h.clone(), z.clone()],
            vec![z.clone(), h.clone(), z.clone(), h.clone()],
            vec![z.clone(), z.clone(), o.clone(), z.clone()],
            vec![z.clone(), z.clone(), z.clone(), o.clone()],
        ])
        .unwrap();
        assert_eq!(k, expected);
        // the block-diagonal layout is the other factor order
        let block = Matrix::block_diag(&[&p, &p]);
        assert_eq!(Matrix::identity(2).kronecker(&p), block);
        assert_ne!(k, block);
    }

    #[test]
    fn sums() {
        let z: Matrix<Rational> = Matrix::zeros(2, 3);
        assert!(z.row_sums().0.iter().all(|v| *v == ratio(0, 1)));
        assert_eq!(z.total_sum(), ratio(0, 1));
        let a = m(&[&[1, 1], &[0, 1]]);
        assert_eq!(a.row_sums(), ColVec(vec![ratio(2, 1), ratio(1, 1)]));
        assert_eq!(a.col_sums(), RowVec(vec![ratio(1, 1), ratio(2, 1)]));
        assert_eq!(a.total_sum(), ratio(3, 1));
    }

    #[test]
    fn constant_matrices() {
        let b0: Matrix<Rational> = Matrix::constant(ratio(0, 1), 3);
        assert_eq!(b0, Matrix::zeros(3, 3));
        // A zero-row-sum, zero-column-sum matrix annihilates B_r on both sides.
        let q1 = m(&[&[0, 0, 0], &[-2, 2, 0], &[2, -2, 0]]);
        let br = Matrix::constant(ratio(5, 3), 3);
        assert_eq!(q1.mul(&br).unwrap(), Matrix::zeros(3, 3));
        assert_eq!(br.mul(&q1).unwrap(), Matrix::zeros(3, 3));
    }

    #[test]
    fn stochasticity() {
        let id: Matrix<Rational> = Matrix::identity(3);
        assert!(id.is_row_stochastic().unwrap());
        let p = Matrix::from_rows(vec![
            vec![ratio(1, 2), ratio(1, 2)],
            vec![ratio(0, 1), ratio(1, 1)],
        ])
        .unwrap();
        assert!(p.is_row_stochastic().unwrap());
        assert!(!m(&[&[1, 1], &[0, 1]]).is_row_stochastic().unwrap());
        assert!(m(&[&[1, 0, 0], &[0, 1, 0]]).is_row_stochastic().is_err());
        let negative = m(&[&[2, -1], &[0, 1]]);
        assert!(!negative.is_row_stochastic().unwrap());
    }

    #[test]
    fn float_stochasticity_tolerates_rounding() {
        let third = 1.0 / 3.0;
        let p = Matrix::from_rows(vec![vec![third, third, third]; 3]).unwrap();
        assert!(p.is_row_stochastic().unwrap());
    }

    #[test]
    fn vector_products() {
        let a = m(&[&[1, 2], &[3, 4]]);
        let pi = RowVec(vec![ratio(1, 1), ratio(-1, 1)]);
        assert_eq!(
            pi.mul_matrix(&a).unwrap(),
            RowVec(vec![ratio(-2, 1), ratio(-2, 1)])
        );
        let f = ColVec(vec![ratio(0, 1), ratio(1, 1)]);
        assert_eq!(a.mul_col(&f).unwrap(), ColVec(vec![ratio(2, 1), ratio(4, 1)]));
        assert_eq!(pi.dot(&f).unwrap(), ratio(-1, 1));
        assert!(pi.dot(&ColVec(vec![ratio(1, 1)])).is_err());
    }

    #[test]
    fn display_uses_literals() {
        let p = Matrix::from_rows(vec![vec![ratio(1, 2), ratio(-3, 1)]]).unwrap();
        assert_eq!(p.to_string(), "[[1/2, -3]]");
    }
}
