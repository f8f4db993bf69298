//! Dense matrices over a prime field and the exact elimination kernel.

use crate::error::{Error, Result};
use crate::field::Field;

/// Row-major dense matrix over GF(q).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldMatrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl FieldMatrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        FieldMatrix {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: Field, size: usize) -> Self {
        let mut m = Self::zeros(field, size, size);
        for i in 0..size {
            m.data[i * size + i] = 1;
        }
        m
    }

    /// Builds a matrix from row-major entries, validating shape and range.
    pub fn from_rows(field: Field, rows: &[Vec<u64>]) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::InvalidParams("matrix needs at least one row".into()));
        }
        let cols = rows[0].len();
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            for &v in row {
                data.push(field.check(v)?);
            }
        }
        Ok(FieldMatrix {
            field,
            rows: rows.len(),
            cols,
            data,
        })
    }

    /// Builds a `len × columns.len()` matrix from column vectors.
    pub fn from_columns(field: Field, len: usize, columns: &[Vec<u64>]) -> Result<Self> {
        let mut m = Self::zeros(field, len, columns.len());
        for (j, col) in columns.iter().enumerate() {
            if col.len() != len {
                return Err(Error::DimensionMismatch {
                    expected: len,
                    found: col.len(),
                });
            }
            for (i, &v) in col.iter().enumerate() {
                m.data[i * m.cols + j] = field.check(v)?;
            }
        }
        Ok(m)
    }

    #[inline]
    pub fn field(&self) -> Field {
        self.field
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> u64 {
        self.data[row * self.cols + col]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: u64) {
        self.data[row * self.cols + col] = self.field.reduce(value);
    }

    pub fn row(&self, row: usize) -> &[u64] {
        &self.data[row * self.cols..(row + 1) * self.cols]
    }

    pub fn column(&self, col: usize) -> Vec<u64> {
        (0..self.rows).map(|i| self.get(i, col)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<u64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j);
            }
        }
        t
    }

    /// The submatrix made of the given columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let mut m = Self::zeros(self.field, self.rows, cols.len());
        for i in 0..self.rows {
            for (jj, &j) in cols.iter().enumerate() {
                m.data[i * cols.len() + jj] = self.get(i, j);
            }
        }
        m
    }

    /// `self · v` for a column vector `v`.
    pub fn mul_vec(&self, v: &[u64]) -> Result<Vec<u64>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        let f = self.field;
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(0, |acc, (&a, &b)| f.mul_add(acc, a, b))
            })
            .collect())
    }

    /// Row vector times matrix: `x^T · self`.
    pub fn vec_mul(&self, x: &[u64]) -> Result<Vec<u64>> {
        if x.len() != self.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: x.len(),
            });
        }
        let f = self.field;
        let mut out = vec![0u64; self.cols];
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (o, &g) in out.iter_mut().zip(self.row(i)) {
                *o = f.mul_add(*o, xi, g);
            }
        }
        Ok(out)
    }

    pub fn rank(&self) -> usize {
        let mut scratch = self.data.clone();
        eliminate(self.field, &mut scratch, self.rows, self.cols).len()
    }

    /// Rank of the column subset `cols`, reusing `scratch` as working storage.
    pub fn column_subset_rank(&self, cols: &[usize], scratch: &mut Vec<u64>) -> usize {
        scratch.clear();
        for i in 0..self.rows {
            let row = self.row(i);
            scratch.extend(cols.iter().map(|&j| row[j]));
        }
        eliminate(self.field, scratch, self.rows, cols.len()).len()
    }

    /// Determinant of a square matrix.
    pub fn determinant(&self) -> Result<u64> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: self.cols,
            });
        }
        let f = self.field;
        let n = self.rows;
        let mut a = self.data.clone();
        let mut det = 1u64;
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| a[r * n + c] != 0) else {
                return Ok(0);
            };
            if p != c {
                for j in 0..n {
                    a.swap(p * n + j, c * n + j);
                }
                det = f.neg(det);
            }
            let pivot = a[c * n + c];
            det = f.mul(det, pivot);
            let inv = f.inv(pivot)?;
            for r in c + 1..n {
                let factor = f.mul(a[r * n + c], inv);
                if factor == 0 {
                    continue;
                }
                for j in c..n {
                    let v = f.mul(factor, a[c * n + j]);
                    a[r * n + j] = f.sub(a[r * n + j], v);
                }
            }
        }
        Ok(det)
    }

    /// Solves `self · λ = v` for λ if `v` lies in the column span.
    ///
    /// Free variables are set to zero, so the returned solution is the one
    /// supported on the pivot columns of the eliminated system.
    pub fn express_in_span(&self, v: &[u64]) -> Result<Option<Vec<u64>>> {
        if v.len() != self.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: v.len(),
            });
        }
        let f = self.field;
        let width = self.cols + 1;
        let mut aug = Vec::with_capacity(self.rows * width);
        for i in 0..self.rows {
            aug.extend_from_slice(self.row(i));
            aug.push(f.check(v[i])?);
        }
        let pivots = reduce_rref(f, &mut aug, self.rows, width);
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut lambda = vec![0u64; self.cols];
        for (row, &col) in pivots.iter().enumerate() {
            lambda[col] = aug[row * width + self.cols];
        }
        Ok(Some(lambda))
    }
}

/// Forward elimination in place with first-nonzero pivoting; returns pivot columns.
fn eliminate(f: Field, a: &mut [u64], rows: usize, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::with_capacity(rows.min(cols));
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| a[i * cols + c] != 0) else {
            continue;
        };
        if p != r {
            for j in c..cols {
                a.swap(p * cols + j, r * cols + j);
            }
        }
        let inv = f.inv(a[r * cols + c]).expect("pivot is nonzero");
        for i in r + 1..rows {
            let factor = f.mul(a[i * cols + c], inv);
            if factor == 0 {
                continue;
            }
            for j in c..cols {
                let v = f.mul(factor, a[r * cols + j]);
                a[i * cols + j] = f.sub(a[i * cols + j], v);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Reduced row echelon form in place; returns pivot columns.
fn reduce_rref(f: Field, a: &mut [u64], rows: usize, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| a[i * cols + c] != 0) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                a.swap(p * cols + j, r * cols + j);
            }
        }
        let inv = f.inv(a[r * cols + c]).expect("pivot is nonzero");
        for j in c..cols {
            a[r * cols + j] = f.mul(a[r * cols + j], inv);
        }
        for i in 0..rows {
            if i == r {
                continue;
            }
            let factor = a[i * cols + c];
            if factor == 0 {
                continue;
            }
            for j in c..cols {
                let v = f.mul(factor, a[r * cols + j]);
                a[i * cols + j] = f.sub(a[i * cols + j], v);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}
