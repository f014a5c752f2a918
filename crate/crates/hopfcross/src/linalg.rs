//! Dense exact linear algebra over a [`FieldSpec`].
//!
//! Everything is Gaussian elimination with the first nonzero entry as
//! pivot, which is deterministic and exact over the supported fields.
//! Dimensions stay small (tensor squares of algebras of dimension at most
//! around 20), so no sparse representations or pivoting heuristics are
//! needed.

use crate::scalars::{FieldSpec, Scalar};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("field mismatch between operands")]
    FieldMismatch,
    #[error("matrix is singular")]
    Singular,
}

/// A dense column vector.
#[derive(Clone, PartialEq, Eq)]
pub struct Vector {
    field: FieldSpec,
    entries: Vec<Scalar>,
}

impl std::fmt::Debug for Vector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self
            .entries
            .iter()
            .map(|s| self.field.format_scalar(s))
            .collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

impl Vector {
    pub fn new(field: FieldSpec, entries: Vec<Scalar>) -> Self {
        debug_assert!(entries.iter().all(|s| field.contains(s)));
        Vector { field, entries }
    }

    pub fn zero(field: &FieldSpec, n: usize) -> Self {
        Vector {
            field: field.clone(),
            entries: vec![field.zero(); n],
        }
    }

    /// The standard basis vector e_i.
    pub fn unit(field: &FieldSpec, n: usize, i: usize) -> Self {
        let mut v = Vector::zero(field, n);
        v.entries[i] = field.one();
        v
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, i: usize) -> &Scalar {
        &self.entries[i]
    }

    pub fn set(&mut self, i: usize, s: Scalar) {
        debug_assert!(self.field.contains(&s));
        self.entries[i] = s;
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Scalar> {
        self.entries.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|s| s.is_zero())
    }

    pub fn add(&self, other: &Vector) -> Vector {
        assert_eq!(self.len(), other.len(), "vector length mismatch");
        Vector {
            field: self.field.clone(),
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Vector) -> Vector {
        assert_eq!(self.len(), other.len(), "vector length mismatch");
        Vector {
            field: self.field.clone(),
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn neg(&self) -> Vector {
        Vector {
            field: self.field.clone(),
            entries: self.entries.iter().map(|a| -a).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Vector {
        Vector {
            field: self.field.clone(),
            entries: self.entries.iter().map(|a| a * c).collect(),
        }
    }

    /// self += c * other, skipping work when c or an entry is zero.
    pub fn axpy(&mut self, c: &Scalar, other: &Vector) {
        if c.is_zero() {
            return;
        }
        for (a, b) in self.entries.iter_mut().zip(&other.entries) {
            if !b.is_zero() {
                *a = &*a + &(b * c);
            }
        }
    }

    /// Kronecker product: (u ⊗ v)[i*n + j] = u[i] * v[j].
    pub fn kron(&self, other: &Vector) -> Vector {
        let n = other.len();
        let mut entries = Vec::with_capacity(self.len() * n);
        for a in &self.entries {
            if a.is_zero() {
                entries.extend(std::iter::repeat_with(|| self.field.zero()).take(n));
            } else {
                entries.extend(other.entries.iter().map(|b| a * b));
            }
        }
        Vector {
            field: self.field.clone(),
            entries,
        }
    }

    /// Index of the first nonzero entry.
    pub fn leading_index(&self) -> Option<usize> {
        self.entries.iter().position(|s| !s.is_zero())
    }
}

/// A dense row-major matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl std::fmt::Debug for Matrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let parts: Vec<String> = (0..self.cols)
                .map(|c| self.field.format_scalar(self.get(r, c)))
                .collect();
            writeln!(f, "  [{}]", parts.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Matrix {
    pub fn zero(field: &FieldSpec, rows: usize, cols: usize) -> Self {
        Matrix {
            field: field.clone(),
            rows,
            cols,
            entries: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: &FieldSpec, n: usize) -> Self {
        let mut m = Matrix::zero(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_fn(
        field: &FieldSpec,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Scalar,
    ) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        Matrix {
            field: field.clone(),
            rows,
            cols,
            entries,
        }
    }

    /// Builds the matrix whose columns are the given vectors.
    pub fn from_columns(field: &FieldSpec, rows: usize, cols: &[Vector]) -> Self {
        Matrix::from_fn(field, rows, cols.len(), |r, c| cols[c].get(r).clone())
    }

    pub fn from_rows(field: &FieldSpec, cols: usize, rows: &[Vector]) -> Self {
        Matrix::from_fn(field, rows.len(), cols, |r, c| rows[r].get(c).clone())
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, s: Scalar) {
        debug_assert!(self.field.contains(&s));
        self.entries[r * self.cols + c] = s;
    }

    pub fn column(&self, c: usize) -> Vector {
        Vector {
            field: self.field.clone(),
            entries: (0..self.rows).map(|r| self.get(r, c).clone()).collect(),
        }
    }

    pub fn row(&self, r: usize) -> Vector {
        Vector {
            field: self.field.clone(),
            entries: (0..self.cols).map(|c| self.get(r, c).clone()).collect(),
        }
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(&self.field, self.cols, self.rows, |r, c| {
            self.get(c, r).clone()
        })
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|s| s.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        if self.rows != self.cols {
            return false;
        }
        for r in 0..self.rows {
            for c in 0..self.cols {
                let e = self.get(r, c);
                if r == c {
                    if !e.is_one() {
                        return false;
                    }
                } else if !e.is_zero() {
                    return false;
                }
            }
        }
        true
    }

    pub fn mul_vec(&self, v: &Vector) -> Vector {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        let mut out = Vector::zero(&self.field, self.rows);
        for (c, coeff) in v.entries.iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            for r in 0..self.rows {
                let e = self.get(r, c);
                if !e.is_zero() {
                    out.entries[r] = &out.entries[r] + &(e * coeff);
                }
            }
        }
        out
    }

    pub fn mul_mat(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix-matrix shape mismatch");
        let mut out = Matrix::zero(&self.field, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        let t = &out.entries[r * out.cols + c] + &(a * b);
                        out.entries[r * out.cols + c] = t;
                    }
                }
            }
        }
        out
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    /// Kronecker product, with (i1*r2+i2, j1*c2+j2) = a[i1,j1]*b[i2,j2].
    pub fn kron(&self, other: &Matrix) -> Matrix {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        Matrix::from_fn(&self.field, rows, cols, |r, c| {
            let a = self.get(r / other.rows, c / other.cols);
            if a.is_zero() {
                self.field.zero()
            } else {
                a * other.get(r % other.rows, c % other.cols)
            }
        })
    }

    /// In-place reduced row echelon form. Returns the pivot columns, one
    /// per pivot row and strictly increasing. Pivot selection is the first
    /// row with a nonzero entry, scanning top to bottom, so the result is
    /// deterministic.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0usize;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let pivot_row = (row..self.rows).find(|&r| !self.get(r, col).is_zero());
            let pr = match pivot_row {
                Some(pr) => pr,
                None => continue,
            };
            if pr != row {
                for c in 0..self.cols {
                    self.entries.swap(pr * self.cols + c, row * self.cols + c);
                }
            }
            let inv = self.get(row, col).inv().expect("pivot is nonzero");
            for c in col..self.cols {
                let e = self.get(row, c);
                if !e.is_zero() {
                    self.set(row, c, e * &inv);
                }
            }
            for r in 0..self.rows {
                if r == row || self.get(r, col).is_zero() {
                    continue;
                }
                let factor = self.get(r, col).clone();
                for c in col..self.cols {
                    let e = self.get(row, c);
                    if !e.is_zero() {
                        let t = self.get(r, c) - &(e * &factor);
                        self.set(r, c, t);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref_in_place().len()
    }
}

/// Outcome of solving M x = b.
#[derive(Debug, Clone)]
pub enum LinearSolution {
    /// A particular solution plus a basis of the kernel; the full solution
    /// set is particular + span(kernel). The kernel basis is the canonical
    /// one read off the reduced echelon form, ordered by free column.
    Solution {
        particular: Vector,
        kernel: Vec<Vector>,
    },
    Inconsistent,
}

pub fn solve_linear(m: &Matrix, b: &Vector) -> Result<LinearSolution, LinalgError> {
    if m.field != *b.field() {
        return Err(LinalgError::FieldMismatch);
    }
    if m.rows != b.len() {
        return Err(LinalgError::ShapeMismatch(format!(
            "matrix has {} rows but right side has {} entries",
            m.rows,
            b.len()
        )));
    }
    // Augment with b, reduce, read off the solution.
    let mut aug = Matrix::from_fn(&m.field, m.rows, m.cols + 1, |r, c| {
        if c < m.cols {
            m.get(r, c).clone()
        } else {
            b.get(r).clone()
        }
    });
    let pivots = aug.rref_in_place();
    if pivots.last() == Some(&m.cols) {
        return Ok(LinearSolution::Inconsistent);
    }
    let mut particular = Vector::zero(&m.field, m.cols);
    for (row, &col) in pivots.iter().enumerate() {
        particular.set(col, aug.get(row, m.cols).clone());
    }
    let kernel = kernel_from_rref(&aug, &pivots, m.cols);
    Ok(LinearSolution::Solution { particular, kernel })
}

/// Canonical kernel basis of a matrix (solutions of M x = 0).
pub fn kernel_basis(m: &Matrix) -> Vec<Vector> {
    let mut red = m.clone();
    let pivots = red.rref_in_place();
    kernel_from_rref(&red, &pivots, m.cols)
}

fn kernel_from_rref(rref: &Matrix, pivots: &[usize], ncols: usize) -> Vec<Vector> {
    let field = rref.field().clone();
    let mut kernel = Vec::new();
    let mut pivot_iter = pivots.iter().peekable();
    let mut free_cols = Vec::new();
    for c in 0..ncols {
        if pivot_iter.peek() == Some(&&c) {
            pivot_iter.next();
        } else {
            free_cols.push(c);
        }
    }
    for &fc in &free_cols {
        let mut v = Vector::zero(&field, ncols);
        v.set(fc, field.one());
        for (row, &pc) in pivots.iter().enumerate() {
            let e = rref.get(row, fc);
            if !e.is_zero() {
                v.set(pc, -e);
            }
        }
        kernel.push(v);
    }
    kernel
}

/// Inverse of a square matrix; `LinalgError::Singular` when rank-deficient.
pub fn invert_matrix(m: &Matrix) -> Result<Matrix, LinalgError> {
    if m.rows != m.cols {
        return Err(LinalgError::ShapeMismatch(format!(
            "cannot invert a {}x{} matrix",
            m.rows, m.cols
        )));
    }
    let n = m.rows;
    let mut aug = Matrix::from_fn(&m.field, n, 2 * n, |r, c| {
        if c < n {
            m.get(r, c).clone()
        } else if c - n == r {
            m.field.one()
        } else {
            m.field.zero()
        }
    });
    let pivots = aug.rref_in_place();
    if pivots.len() < n || pivots.iter().enumerate().any(|(i, &c)| i != c) {
        return Err(LinalgError::Singular);
    }
    Ok(Matrix::from_fn(&m.field, n, n, |r, c| {
        aug.get(r, n + c).clone()
    }))
}

/// A linear subspace of k^n held as a canonical reduced-echelon basis, so
/// two computations of the same subspace produce identical bases.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    field: FieldSpec,
    ambient_dim: usize,
    basis: Vec<Vector>,
}

impl Subspace {
    /// Canonicalizes an arbitrary spanning set.
    pub fn from_spanning(field: &FieldSpec, ambient_dim: usize, spanning: &[Vector]) -> Self {
        if spanning.is_empty() {
            return Subspace {
                field: field.clone(),
                ambient_dim,
                basis: Vec::new(),
            };
        }
        let mut m = Matrix::from_rows(field, ambient_dim, spanning);
        let pivots = m.rref_in_place();
        let basis = (0..pivots.len()).map(|r| m.row(r)).collect();
        Subspace {
            field: field.clone(),
            ambient_dim,
            basis,
        }
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn contains(&self, v: &Vector) -> bool {
        if v.len() != self.ambient_dim {
            return false;
        }
        // Reduce v against the echelon basis.
        let mut r = v.clone();
        for b in &self.basis {
            let lead = b.leading_index().expect("basis vectors are nonzero");
            let c = r.get(lead).clone();
            if !c.is_zero() {
                r.axpy(&c.neg(), b);
            }
        }
        r.is_zero()
    }

    /// Coordinates of v in the echelon basis, if v lies in the subspace.
    pub fn coordinates(&self, v: &Vector) -> Option<Vec<Scalar>> {
        let mut r = v.clone();
        let mut coords = Vec::with_capacity(self.basis.len());
        for b in &self.basis {
            let lead = b.leading_index().expect("basis vectors are nonzero");
            let c = r.get(lead).clone();
            if !c.is_zero() {
                r.axpy(&c.neg(), b);
            }
            coords.push(c);
        }
        if r.is_zero() {
            Some(coords)
        } else {
            None
        }
    }

    pub fn linear_combination(&self, coords: &[Scalar]) -> Vector {
        assert_eq!(coords.len(), self.basis.len());
        let mut v = Vector::zero(&self.field, self.ambient_dim);
        for (c, b) in coords.iter().zip(&self.basis) {
            v.axpy(c, b);
        }
        v
    }

    pub fn equals(&self, other: &Subspace) -> bool {
        self.ambient_dim == other.ambient_dim && self.basis == other.basis
    }
}
