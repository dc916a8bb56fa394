//! Dense matrices over an exact field, with rank, nullspace and inverse by
//! Gaussian elimination. All operations are exact; there is no floating point
//! anywhere in the crate.

use crate::error::{Error, Result};
use crate::scalar::{Field, Scalar};

/// A dense row-major matrix with a single field tag.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    field: Field,
    entries: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix {
            rows,
            cols,
            field,
            entries: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>) -> Result<Matrix> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(nrows * ncols);
        for row in rows {
            if row.len() != ncols {
                return Err(Error::DimensionMismatch("ragged rows".into()));
            }
            for e in row {
                if e.field() != field {
                    return Err(Error::FieldMismatch(format!(
                        "entry field {} differs from declared {}",
                        e.field(),
                        field
                    )));
                }
                entries.push(e);
            }
        }
        Ok(Matrix {
            rows: nrows,
            cols: ncols,
            field,
            entries,
        })
    }

    pub fn from_fn(field: Field, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Matrix {
        let mut m = Matrix::zeros(field, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    pub fn diagonal(field: Field, diag: &[Scalar]) -> Matrix {
        let n = diag.len();
        let mut m = Matrix::zeros(field, n, n);
        for (i, d) in diag.iter().enumerate() {
            m.set(i, i, d.clone());
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

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        assert_eq!(v.field(), self.field, "mixed fields in one expression");
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.field, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            field: self.field,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            field: self.field,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn neg(&self) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            field: self.field,
            entries: self.entries.iter().map(|a| -a).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            field: self.field,
            entries: self.entries.iter().map(|a| c * a).collect(),
        }
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "incompatible shapes for product");
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
                    let cur = out.get(i, j).clone();
                    out.set(i, j, &cur + &(a * b));
                }
            }
        }
        out
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len(), "incompatible shapes for apply");
        (0..self.rows)
            .map(|i| {
                let mut acc = self.field.zero();
                for (a, x) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !x.is_zero() {
                        acc = &acc + &(a * x);
                    }
                }
                acc
            })
            .collect()
    }

    /// Row rank, by exact Gaussian elimination.
    pub fn rank(&self) -> usize {
        let mut ech = RowEchelon::new(self.field, self.cols);
        for i in 0..self.rows {
            ech.insert(self.row(i).to_vec());
        }
        ech.rank()
    }

    /// Reduced row-echelon form together with the pivot column indices.
    ///
    /// Pivot selection among candidate rows follows the largest numerator
    /// magnitude; correctness does not depend on the choice.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut current = 0usize;
        for col in 0..m.cols {
            if current == m.rows {
                break;
            }
            let mut best: Option<usize> = None;
            for r in current..m.rows {
                if m.get(r, col).is_zero() {
                    continue;
                }
                best = match best {
                    None => Some(r),
                    Some(b) => {
                        if m.get(r, col).numer_magnitude() > m.get(b, col).numer_magnitude() {
                            Some(r)
                        } else {
                            Some(b)
                        }
                    }
                };
            }
            let Some(pivot_row) = best else { continue };
            m.swap_rows(pivot_row, current);
            let inv = m.get(current, col).inverse().expect("pivot is nonzero");
            for c in col..m.cols {
                let v = m.get(current, c).clone();
                m.set(current, c, &inv * &v);
            }
            for r in 0..m.rows {
                if r == current || m.get(r, col).is_zero() {
                    continue;
                }
                let factor = m.get(r, col).clone();
                for c in col..m.cols {
                    let v = &m.get(r, c).clone() - &(&factor * m.get(current, c));
                    m.set(r, c, v);
                }
            }
            pivots.push(col);
            current += 1;
        }
        (m, pivots)
    }

    /// A basis of `{ v : self * v = 0 }`, one vector per free column.
    pub fn nullspace_basis(&self) -> Vec<Vec<Scalar>> {
        let (r, pivots) = self.rref();
        let pivot_of_col: Vec<Option<usize>> = {
            let mut v = vec![None; self.cols];
            for (row, &col) in pivots.iter().enumerate() {
                v[col] = Some(row);
            }
            v
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_of_col[free].is_some() {
                continue;
            }
            let mut v = vec![self.field.zero(); self.cols];
            v[free] = self.field.one();
            for col in 0..self.cols {
                if let Some(row) = pivot_of_col[col] {
                    v[col] = -r.get(row, free);
                }
            }
            basis.push(v);
        }
        basis
    }

    /// Exact inverse.
    pub fn invert(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "cannot invert a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        // Augment with the identity and reduce.
        let mut aug = Matrix::zeros(self.field, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, self.field.one());
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots.iter().any(|&c| c >= n) {
            return Err(Error::NotInvertible);
        }
        let mut inv = Matrix::zeros(self.field, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j).clone());
            }
        }
        Ok(inv)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn pow(&self, k: usize) -> Matrix {
        assert!(self.is_square());
        let mut acc = Matrix::identity(self.field, self.rows);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }
}

/// Incremental row-echelon accumulator.
///
/// Rows are inserted one at a time and reduced against the pivots seen so
/// far; the rank is the number of rows that survived. This keeps the
/// cohomology assembly streaming instead of materializing huge systems.
#[derive(Debug, Clone)]
pub struct RowEchelon {
    field: Field,
    cols: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl RowEchelon {
    pub fn new(field: Field, cols: usize) -> RowEchelon {
        RowEchelon {
            field,
            cols,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    /// Inserts a row; returns true when it increased the rank.
    pub fn insert(&mut self, mut row: Vec<Scalar>) -> bool {
        assert_eq!(row.len(), self.cols);
        for (r, &p) in self.rows.iter().zip(&self.pivots) {
            if row[p].is_zero() {
                continue;
            }
            let factor = row[p].clone();
            for c in p..self.cols {
                row[c] = &row[c] - &(&factor * &r[c]);
            }
        }
        let Some(pivot) = row.iter().position(|v| !v.is_zero()) else {
            return false;
        };
        let inv = row[pivot].inverse().expect("pivot is nonzero");
        for c in row.iter_mut().skip(pivot) {
            *c = &inv * &*c;
        }
        self.rows.push(row);
        self.pivots.push(pivot);
        let _ = self.field;
        true
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Whether `row` is a linear combination of the inserted rows.
    pub fn contains(&self, row: &[Scalar]) -> bool {
        let mut row = row.to_vec();
        for (r, &p) in self.rows.iter().zip(&self.pivots) {
            if row[p].is_zero() {
                continue;
            }
            let factor = row[p].clone();
            for c in p..self.cols {
                row[c] = &row[c] - &(&factor * &r[c]);
            }
        }
        row.iter().all(Scalar::is_zero)
    }
}
