//! Dense exact matrices over [`QuadScalar`].

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::scalar::{Field, QuadScalar, ScalarError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("matrix is not square ({0}x{1})")]
    NotSquare(usize, usize),
    #[error("matrix is singular")]
    Singular,
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// Row-major dense matrix; every entry lives in `field`.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    field: Field,
    entries: Vec<QuadScalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize, field: Field) -> Self {
        Matrix { rows, cols, field, entries: vec![QuadScalar::zero(field); rows * cols] }
    }

    pub fn identity(size: usize, field: Field) -> Self {
        let mut m = Self::zeros(size, size, field);
        for i in 0..size {
            m.set(i, i, QuadScalar::one(field));
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<QuadScalar>>, field: Field) -> Result<Self, LinalgError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(LinalgError::ShapeMismatch("ragged rows".into()));
            }
            for v in row {
                if v.field() != field {
                    return Err(ScalarError::FieldMismatch(v.field(), field).into());
                }
                entries.push(v);
            }
        }
        Ok(Matrix { rows: r, cols: c, field, entries })
    }

    /// Convenience constructor from small integers.
    pub fn from_ints(rows: &[&[i64]], field: Field) -> Self {
        let rows = rows.iter().map(|row| row.iter().map(|&v| QuadScalar::from_int(v, field)).collect()).collect();
        Self::from_rows(rows, field).expect("integer rows must be rectangular")
    }

    pub fn diagonal(values: &[QuadScalar], field: Field) -> Self {
        let mut m = Self::zeros(values.len(), values.len(), field);
        for (i, v) in values.iter().enumerate() {
            m.set(i, i, v.clone());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &QuadScalar {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: QuadScalar) {
        assert_eq!(value.field(), self.field, "entry field must match matrix field");
        self.entries[r * self.cols + c] = value;
    }

    pub fn add_to(&mut self, r: usize, c: usize, value: &QuadScalar) {
        let idx = r * self.cols + c;
        self.entries[idx] = &self.entries[idx] + value;
    }

    pub fn row(&self, r: usize) -> &[QuadScalar] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(QuadScalar::is_zero)
    }

    pub fn to_rows(&self) -> Vec<Vec<QuadScalar>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    /// Picks out the listed rows and columns, in the given order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(rows.len(), cols.len(), self.field);
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                out.set(i, j, self.get(r, c).clone());
            }
        }
        out
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.cols, self.rows, self.field);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c).clone());
            }
        }
        out
    }

    pub fn multiply(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::ShapeMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        if self.field != other.field {
            return Err(ScalarError::FieldMismatch(self.field, other.field).into());
        }
        let mut out = Matrix::zeros(self.rows, other.cols, self.field);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        out.add_to(r, c, &(a * b));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(LinalgError::ShapeMismatch("subtraction".into()));
        }
        let entries =
            self.entries.iter().zip(&other.entries).map(|(a, b)| a.checked_sub(b)).collect::<Result<_, _>>()?;
        Ok(Matrix { rows: self.rows, cols: self.cols, field: self.field, entries })
    }

    pub fn scale(&self, factor: &QuadScalar) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            field: self.field,
            entries: self.entries.iter().map(|v| v * factor).collect(),
        }
    }

    pub fn trace(&self) -> Result<QuadScalar, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare(self.rows, self.cols));
        }
        Ok((0..self.rows).fold(QuadScalar::zero(self.field), |acc, i| acc + self.get(i, i)))
    }

    /// Rank by fraction-free (Bareiss) elimination.
    ///
    /// Every step replaces row `i` by `(p·row_i − m_i·row_k) / p_prev` with the
    /// current pivot `p` and previous pivot `p_prev`, both nonzero, so each step
    /// is an invertible row operation.
    pub fn rank(&self) -> usize {
        let mut m = self.to_rows();
        let rows = self.rows;
        let cols = self.cols;
        let mut rank = 0;
        let mut prev = QuadScalar::one(self.field);
        for col in 0..cols {
            if rank == rows {
                break;
            }
            let Some(pivot_row) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
                continue;
            };
            m.swap(rank, pivot_row);
            let (head, tail) = m.split_at_mut(rank + 1);
            let pivot = &head[rank];
            let p = pivot[col].clone();
            for row in tail.iter_mut() {
                let lead = row[col].clone();
                for j in col + 1..cols {
                    let v = &(&p * &row[j]) - &(&lead * &pivot[j]);
                    row[j] = &v / &prev;
                }
                row[col] = QuadScalar::zero(self.field);
            }
            prev = p;
            rank += 1;
        }
        rank
    }

    pub fn kernel_dim(&self) -> usize {
        self.cols - self.rank()
    }

    /// Gauss–Jordan inverse.
    pub fn inverse(&self) -> Result<Matrix, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare(self.rows, self.cols));
        }
        let n = self.rows;
        let mut a = self.to_rows();
        let mut inv = Matrix::identity(n, self.field).to_rows();
        for col in 0..n {
            let pivot_row = (col..n).find(|&r| !a[r][col].is_zero()).ok_or(LinalgError::Singular)?;
            a.swap(col, pivot_row);
            inv.swap(col, pivot_row);
            let p_inv = a[col][col].inv()?;
            for j in 0..n {
                a[col][j] = &a[col][j] * &p_inv;
                inv[col][j] = &inv[col][j] * &p_inv;
            }
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let factor = a[r][col].clone();
                for j in 0..n {
                    let da = &factor * &a[col][j];
                    let di = &factor * &inv[col][j];
                    a[r][j] = &a[r][j] - &da;
                    inv[r][j] = &inv[r][j] - &di;
                }
            }
        }
        Matrix::from_rows(inv, self.field)
    }

    /// `e`-fold product by repeated squaring; `e = 0` gives the identity.
    pub fn pow(&self, mut e: u32) -> Result<Matrix, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare(self.rows, self.cols));
        }
        let mut acc = Matrix::identity(self.rows, self.field);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.multiply(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.multiply(&base)?;
            }
        }
        Ok(acc)
    }

    /// True iff `(m − I)^s = 0` where `s` is the size.
    pub fn is_unipotent(&self) -> Result<bool, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare(self.rows, self.cols));
        }
        let shifted = self.sub(&Matrix::identity(self.rows, self.field))?;
        Ok(shifted.pow(self.rows as u32)?.is_zero())
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Right-aligned rows, one per line.
impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<Vec<String>> =
            (0..self.rows).map(|r| self.row(r).iter().map(ToString::to_string).collect()).collect();
        let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
        for row in &cells {
            let padded: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
            writeln!(f, "  {}", padded.join(" "))?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixRepr {
    rows: usize,
    cols: usize,
    d: u64,
    entries: Vec<String>,
}

impl Serialize for Matrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        MatrixRepr {
            rows: self.rows,
            cols: self.cols,
            d: self.field.d(),
            entries: self.entries.iter().map(ToString::to_string).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Matrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let repr = MatrixRepr::deserialize(deserializer)?;
        let field = Field::new(repr.d).map_err(D::Error::custom)?;
        if repr.entries.len() != repr.rows * repr.cols {
            return Err(D::Error::custom("entry count does not match shape"));
        }
        let entries = repr
            .entries
            .iter()
            .map(|s| QuadScalar::parse(s, field))
            .collect::<Result<_, _>>()
            .map_err(D::Error::custom)?;
        Ok(Matrix { rows: repr.rows, cols: repr.cols, field, entries })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rational;

    fn int(v: i64) -> QuadScalar {
        QuadScalar::from_int(v, Q)
    }

    #[test]
    fn identity_rank_and_kernel() {
        assert_eq!(Matrix::identity(2, Q).rank(), 2);
        assert_eq!(Matrix::identity(2, Q).kernel_dim(), 0);
        assert_eq!(Matrix::zeros(3, 3, Q).kernel_dim(), 3);
        assert_eq!(Matrix::zeros(0, 4, Q).rank(), 0);
        assert_eq!(Matrix::zeros(4, 0, Q).rank(), 0);
    }

    #[test]
    fn rank_needs_column_skipping() {
        let m = Matrix::from_ints(&[&[0, 1, 2], &[0, 2, 4], &[0, 0, 1]], Q);
        assert_eq!(m.rank(), 2);
        let m = Matrix::from_ints(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]], Q);
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn rank_over_quadratic_field() {
        let f = Field::Quadratic(5);
        let r5 = QuadScalar::sqrt_d(f).unwrap();
        let one = QuadScalar::one(f);
        // rows (1, √5) and (√5, 5) are proportional
        let m = Matrix::from_rows(vec![vec![one.clone(), r5.clone()], vec![r5.clone(), QuadScalar::from_int(5, f)]], f)
            .unwrap();
        assert_eq!(m.rank(), 1);
        let m = Matrix::from_rows(vec![vec![one.clone(), r5.clone()], vec![r5, one]], f).unwrap();
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn inverse_of_diagonal_and_singular() {
        let d = Matrix::diagonal(&[int(2), int(3)], Q);
        let expected = Matrix::diagonal(&[QuadScalar::from_ratio(1, 2, Q), QuadScalar::from_ratio(1, 3, Q)], Q);
        assert_eq!(d.inverse().unwrap(), expected);
        assert_eq!(Matrix::identity(3, Q).inverse().unwrap(), Matrix::identity(3, Q));
        let singular = Matrix::from_ints(&[&[1, 2], &[2, 4]], Q);
        assert_eq!(singular.inverse(), Err(LinalgError::Singular));
        assert!(matches!(Matrix::zeros(2, 3, Q).inverse(), Err(LinalgError::NotSquare(2, 3))));
    }

    #[test]
    fn powers() {
        let m = Matrix::from_ints(&[&[1, 1], &[1, 0]], Q);
        assert_eq!(m.pow(0).unwrap(), Matrix::identity(2, Q));
        assert_eq!(m.pow(1).unwrap(), m);
        assert_eq!(m.pow(2).unwrap(), Matrix::from_ints(&[&[2, 1], &[1, 1]], Q));
    }

    #[test]
    fn trace_transpose_multiply() {
        assert_eq!(Matrix::identity(4, Q).trace().unwrap(), int(4));
        let m = Matrix::from_ints(&[&[1, 2, 3], &[4, 5, 6]], Q);
        assert_eq!(m.transpose().transpose(), m);
        assert!(matches!(m.multiply(&m), Err(LinalgError::ShapeMismatch(_))));
        assert!(matches!(m.trace(), Err(LinalgError::NotSquare(2, 3))));
        let p = m.multiply(&m.transpose()).unwrap();
        assert_eq!(p, Matrix::from_ints(&[&[14, 32], &[32, 77]], Q));
    }

    #[test]
    fn unipotency() {
        assert!(Matrix::identity(3, Q).is_unipotent().unwrap());
        assert!(Matrix::from_ints(&[&[1, 5], &[0, 1]], Q).is_unipotent().unwrap());
        assert!(!Matrix::from_ints(&[&[2, 0], &[0, 1]], Q).is_unipotent().unwrap());
    }

    #[test]
    fn json_shape() {
        let m = Matrix::from_ints(&[&[1, -2]], Q);
        let json = serde_json::to_string(&m).unwrap();
        assert_eq!(json, r#"{"rows":1,"cols":2,"d":1,"entries":["1","-2"]}"#);
        let back: Matrix = serde_json::from_str(&json).unwrap();
        assert_eq!(back, m);
    }
}
