//! Exact linear algebra over cyclotomic fields.
//!
//! Key operations:
//! - `Matrix`: row-major matrices of `CycloNumber` with exact arithmetic.
//! - Determinant (fraction-free), inverse, right kernel, eigenspaces of
//!   finite-order matrices, multiplicative order, and linear solving with
//!   an explicit affine solution set.
//!
//! Design notes:
//! - Pivoting always picks the first nonzero entry in column order, so all
//!   reductions are deterministic.

use exactnum::{CycloNumber, NumError};
use serde_json::{json, Value};
use std::fmt;
use std::ops::{Add, Mul, Sub};
use thiserror::Error;

/// Errors raised by linear-algebra operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LaError {
    /// The matrix is not invertible.
    #[error("matrix is singular")]
    Singular,
    /// Operand shapes are incompatible.
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    /// No power up to the cap equals the identity.
    #[error("matrix order exceeds cap {cap}")]
    OrderExceedsCap { cap: u32 },
    /// The linear system has no solution.
    #[error("linear system is inconsistent")]
    Inconsistent,
    /// A serialized matrix could not be parsed.
    #[error("malformed serialized matrix: {0}")]
    Malformed(String),
}

/// The solution set of a consistent linear system A·x = b.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearSolution {
    /// One solution (free variables set to zero).
    pub particular: Vec<CycloNumber>,
    /// Basis of the homogeneous solution space.
    pub nullspace: Vec<Vec<CycloNumber>>,
}

impl LinearSolution {
    /// The solution if it is unique.
    pub fn unique(&self) -> Option<&Vec<CycloNumber>> {
        if self.nullspace.is_empty() {
            Some(&self.particular)
        } else {
            None
        }
    }
}

/// A dense row-major matrix over cyclotomic numbers.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<CycloNumber>,
}

impl Matrix {
    /// Builds a matrix from row-major data.
    pub fn new(rows: usize, cols: usize, data: Vec<CycloNumber>) -> Matrix {
        assert_eq!(data.len(), rows * cols, "data length must be rows*cols");
        Matrix { rows, cols, data }
    }

    /// Builds a matrix from rows.
    pub fn from_rows(rows: Vec<Vec<CycloNumber>>) -> Matrix {
        let r = rows.len();
        assert!(r > 0, "matrix must have at least one row");
        let c = rows[0].len();
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix::new(r, c, rows.into_iter().flatten().collect())
    }

    /// The zero matrix.
    pub fn zeros(rows: usize, cols: usize) -> Matrix {
        Matrix::new(rows, cols, vec![CycloNumber::zero(); rows * cols])
    }

    /// The identity matrix.
    pub fn identity(n: usize) -> Matrix {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, CycloNumber::one());
        }
        m
    }

    /// A square diagonal matrix.
    pub fn diagonal(entries: Vec<CycloNumber>) -> Matrix {
        let n = entries.len();
        let mut m = Matrix::zeros(n, n);
        for (i, e) in entries.into_iter().enumerate() {
            m.set(i, i, e);
        }
        m
    }

    /// Number of rows.
    pub fn rows(&self) -> usize {
        self.rows
    }

    /// Number of columns.
    pub fn cols(&self) -> usize {
        self.cols
    }

    /// The entry at (i, j), 0-based.
    pub fn get(&self, i: usize, j: usize) -> &CycloNumber {
        &self.data[i * self.cols + j]
    }

    /// Overwrites the entry at (i, j).
    pub fn set(&mut self, i: usize, j: usize, v: CycloNumber) {
        self.data[i * self.cols + j] = v;
    }

    /// The i-th row as a slice.
    pub fn row(&self, i: usize) -> &[CycloNumber] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// The j-th column as a vector.
    pub fn col(&self, j: usize) -> Vec<CycloNumber> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    /// The transpose.
    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    /// Sum; errors on shape mismatch.
    pub fn checked_add(&self, rhs: &Matrix) -> Result<Matrix, LaError> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(LaError::ShapeMismatch(format!(
                "{}x{} + {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Matrix::new(self.rows, self.cols, data))
    }

    /// Difference; errors on shape mismatch.
    pub fn checked_sub(&self, rhs: &Matrix) -> Result<Matrix, LaError> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(LaError::ShapeMismatch(format!(
                "{}x{} - {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Matrix::new(self.rows, self.cols, data))
    }

    /// Product; errors on shape mismatch.
    pub fn checked_mul(&self, rhs: &Matrix) -> Result<Matrix, LaError> {
        if self.cols != rhs.rows {
            return Err(LaError::ShapeMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
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
                        let mut cur = out.get(i, j).clone();
                        cur += &(a * b);
                        out.set(i, j, cur);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Matrix-vector product.
    pub fn mul_vec(&self, v: &[CycloNumber]) -> Vec<CycloNumber> {
        assert_eq!(v.len(), self.cols, "vector length must match columns");
        (0..self.rows)
            .map(|i| {
                let mut acc = CycloNumber::zero();
                for j in 0..self.cols {
                    let a = self.get(i, j);
                    if !a.is_zero() && !v[j].is_zero() {
                        acc += &(a * &v[j]);
                    }
                }
                acc
            })
            .collect()
    }

    /// Scales every entry.
    pub fn mul_scalar(&self, c: &CycloNumber) -> Matrix {
        Matrix::new(
            self.rows,
            self.cols,
            self.data.iter().map(|a| a * c).collect(),
        )
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> CycloNumber {
        assert_eq!(self.rows, self.cols, "determinant needs a square matrix");
        let n = self.rows;
        if n == 0 {
            return CycloNumber::one();
        }
        let mut m: Vec<Vec<CycloNumber>> =
            (0..n).map(|i| self.row(i).to_vec()).collect();
        let mut sign = false;
        let mut prev = CycloNumber::one();
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                let Some(swap) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                    return CycloNumber::zero();
                };
                m.swap(k, swap);
                sign = !sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &m[k][k] * &m[i][j] - &m[i][k] * &m[k][j];
                    m[i][j] = num.checked_div(&prev).expect("Bareiss division is exact");
                }
            }
            for i in k + 1..n {
                m[i][k] = CycloNumber::zero();
            }
            prev = m[k][k].clone();
        }
        let d = m[n - 1][n - 1].clone();
        if sign {
            -d
        } else {
            d
        }
    }

    /// Inverse by Gauss-Jordan elimination; errors if singular.
    pub fn inverse(&self) -> Result<Matrix, LaError> {
        assert_eq!(self.rows, self.cols, "inverse needs a square matrix");
        let n = self.rows;
        let mut work: Vec<Vec<CycloNumber>> = (0..n)
            .map(|i| {
                let mut row = self.row(i).to_vec();
                row.extend((0..n).map(|j| {
                    if i == j {
                        CycloNumber::one()
                    } else {
                        CycloNumber::zero()
                    }
                }));
                row
            })
            .collect();
        let pivots = rref(&mut work, n);
        if pivots.len() < n {
            return Err(LaError::Singular);
        }
        let data: Vec<CycloNumber> = (0..n)
            .flat_map(|i| work[i][n..].to_vec())
            .collect();
        Ok(Matrix::new(n, n, data))
    }

    /// Basis of the right null space (empty iff injective).
    pub fn kernel(&self) -> Vec<Vec<CycloNumber>> {
        let mut work: Vec<Vec<CycloNumber>> =
            (0..self.rows).map(|i| self.row(i).to_vec()).collect();
        let pivots = rref(&mut work, self.cols);
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivots.contains(&free) {
                continue;
            }
            let mut v = vec![CycloNumber::zero(); self.cols];
            v[free] = CycloNumber::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -&work[r][free];
            }
            basis.push(v);
        }
        basis
    }

    /// Basis of the eigenspace V(g, λ) = Ker(g − λI).
    pub fn eigenspace(&self, lambda: &CycloNumber) -> Vec<Vec<CycloNumber>> {
        assert_eq!(self.rows, self.cols, "eigenspace needs a square matrix");
        let shifted = self
            .checked_sub(&Matrix::identity(self.rows).mul_scalar(lambda))
            .unwrap();
        shifted.kernel()
    }

    /// Least k ≤ cap with g^k = I.
    pub fn matrix_order(&self, cap: u32) -> Result<u32, LaError> {
        assert_eq!(self.rows, self.cols, "order needs a square matrix");
        let id = Matrix::identity(self.rows);
        let mut power = self.clone();
        for k in 1..=cap {
            if power == id {
                return Ok(k);
            }
            power = power.checked_mul(self).unwrap();
        }
        Err(LaError::OrderExceedsCap { cap })
    }

    /// Solves A·x = b exactly, reporting the full affine solution set.
    pub fn solve_linear(&self, b: &[CycloNumber]) -> Result<LinearSolution, LaError> {
        assert_eq!(b.len(), self.rows, "right-hand side length must match rows");
        let n = self.cols;
        let mut work: Vec<Vec<CycloNumber>> = (0..self.rows)
            .map(|i| {
                let mut row = self.row(i).to_vec();
                row.push(b[i].clone());
                row
            })
            .collect();
        let pivots = rref(&mut work, n);
        for (r, row) in work.iter().enumerate() {
            if r >= pivots.len() && !row[n].is_zero() {
                return Err(LaError::Inconsistent);
            }
        }
        let mut particular = vec![CycloNumber::zero(); n];
        for (r, &p) in pivots.iter().enumerate() {
            particular[p] = work[r][n].clone();
        }
        let mut nullspace = Vec::new();
        for free in 0..n {
            if pivots.contains(&free) {
                continue;
            }
            let mut v = vec![CycloNumber::zero(); n];
            v[free] = CycloNumber::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -&work[r][free];
            }
            nullspace.push(v);
        }
        Ok(LinearSolution {
            particular,
            nullspace,
        })
    }

    /// Deterministic key for hashing (entries at their stored orders).
    pub fn key_string(&self) -> String {
        let mut s = format!("{}x{};", self.rows, self.cols);
        for e in &self.data {
            s.push_str(&e.key_string());
            s.push(';');
        }
        s
    }

    /// Embeds every entry into Q(zeta_N).
    pub fn embed(&self, n: u32) -> Result<Matrix, NumError> {
        let data = self
            .data
            .iter()
            .map(|e| e.embed(n))
            .collect::<Result<_, _>>()?;
        Ok(Matrix::new(self.rows, self.cols, data))
    }

    /// Serializes as nested arrays of CycloNumber records.
    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = (0..self.rows)
            .map(|i| Value::Array(self.row(i).iter().map(|e| e.to_json()).collect()))
            .collect();
        json!(rows)
    }

    /// Parses the serialization produced by `to_json`.
    pub fn from_json(v: &Value) -> Result<Matrix, LaError> {
        let rows = v
            .as_array()
            .ok_or_else(|| LaError::Malformed("expected an array of rows".into()))?;
        if rows.is_empty() {
            return Err(LaError::Malformed("matrix must have rows".into()));
        }
        let parsed: Vec<Vec<CycloNumber>> = rows
            .iter()
            .map(|row| {
                row.as_array()
                    .ok_or_else(|| LaError::Malformed("row is not an array".into()))?
                    .iter()
                    .map(|e| {
                        CycloNumber::from_json(e).map_err(|err| LaError::Malformed(err.to_string()))
                    })
                    .collect()
            })
            .collect::<Result<_, _>>()?;
        let c = parsed[0].len();
        if parsed.iter().any(|r| r.len() != c) {
            return Err(LaError::Malformed("ragged rows".into()));
        }
        Ok(Matrix::from_rows(parsed))
    }
}

/// In-place reduced row echelon form; pivot search restricted to the first
/// `pivot_cols` columns, reduction applied to full row width. Returns the
/// pivot column list.
fn rref(work: &mut [Vec<CycloNumber>], pivot_cols: usize) -> Vec<usize> {
    let nrows = work.len();
    let width = if nrows > 0 { work[0].len() } else { 0 };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..pivot_cols {
        if r == nrows {
            break;
        }
        let Some(pr) = (r..nrows).find(|&i| !work[i][c].is_zero()) else {
            continue;
        };
        work.swap(r, pr);
        let inv = work[r][c].inv().expect("pivot is nonzero");
        for j in c..width {
            if !work[r][j].is_zero() {
                work[r][j] = &work[r][j] * &inv;
            }
        }
        for i in 0..nrows {
            if i != r && !work[i][c].is_zero() {
                let f = work[i][c].clone();
                for j in c..width {
                    if !work[r][j].is_zero() {
                        let t = &f * &work[r][j];
                        work[i][j] -= &t;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        self.checked_add(rhs).expect("matrix shapes must match")
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        self.checked_sub(rhs).expect("matrix shapes must match")
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        self.checked_mul(rhs).expect("matrix shapes must be compatible")
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(|e| e.to_string()).collect();
            write!(f, "{}", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use exactnum::rat;

    fn int_matrix(rows: usize, cols: usize, vals: &[i64]) -> Matrix {
        Matrix::new(
            rows,
            cols,
            vals.iter().map(|&v| CycloNumber::from_int(v)).collect(),
        )
    }

    #[test]
    fn determinant_of_small_matrices() {
        assert_eq!(int_matrix(1, 1, &[7]).det(), CycloNumber::from_int(7));
        let m = int_matrix(2, 2, &[1, 2, 3, 4]);
        assert_eq!(m.det(), CycloNumber::from_int(-2));
        let singular = int_matrix(3, 3, &[1, 2, 3, 2, 4, 6, 1, 0, 1]);
        assert!(singular.det().is_zero());
    }

    #[test]
    fn determinant_with_zero_leading_pivot() {
        let m = int_matrix(3, 3, &[0, 1, 2, 1, 0, 3, 4, 5, 0]);
        // Cofactor expansion: 0·(0−15) − 1·(0−12) + 2·(5−0) = 22.
        assert_eq!(m.det(), CycloNumber::from_int(22));
    }

    #[test]
    fn inverse_round_trip() {
        let m = int_matrix(3, 3, &[2, 1, 0, 1, 3, 1, 0, 1, 2]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.checked_mul(&inv).unwrap(), Matrix::identity(3));
        assert_eq!(inv.checked_mul(&m).unwrap(), Matrix::identity(3));
        let singular = int_matrix(2, 2, &[1, 2, 2, 4]);
        assert_eq!(singular.inverse(), Err(LaError::Singular));
    }

    #[test]
    fn kernel_examples() {
        assert!(Matrix::identity(3).kernel().is_empty());
        let zero = Matrix::zeros(3, 3);
        assert_eq!(zero.kernel().len(), 3);
        let m = int_matrix(1, 2, &[1, -1]);
        let k = m.kernel();
        assert_eq!(k.len(), 1);
        assert!(m.mul_vec(&k[0]).iter().all(|e| e.is_zero()));
    }

    #[test]
    fn eigenspace_of_diagonal_root_matrix() {
        let g = Matrix::diagonal(vec![
            CycloNumber::root_of_unity(8, 1),
            CycloNumber::root_of_unity(8, 3),
        ]);
        let space = g.eigenspace(&CycloNumber::root_of_unity(8, 1));
        assert_eq!(space.len(), 1);
        assert_eq!(space[0][0], CycloNumber::one());
        assert!(space[0][1].is_zero());
        assert_eq!(g.eigenspace(&CycloNumber::one()).len(), 0);
        assert_eq!(Matrix::identity(2).eigenspace(&CycloNumber::one()).len(), 2);
    }

    #[test]
    fn matrix_order_examples() {
        assert_eq!(Matrix::identity(4).matrix_order(10), Ok(1));
        let g = Matrix::diagonal(vec![
            CycloNumber::root_of_unity(8, 1),
            CycloNumber::root_of_unity(8, 3),
        ]);
        assert_eq!(g.matrix_order(16), Ok(8));
        assert_eq!(
            g.matrix_order(5),
            Err(LaError::OrderExceedsCap { cap: 5 })
        );
    }

    #[test]
    fn solve_identity_and_underdetermined() {
        let id = Matrix::identity(2);
        let b = vec![CycloNumber::from_int(3), CycloNumber::from_int(-1)];
        let sol = id.solve_linear(&b).unwrap();
        assert_eq!(sol.unique(), Some(&b));

        let m = int_matrix(1, 2, &[1, 1]);
        let sol = m.solve_linear(&[CycloNumber::from_int(4)]).unwrap();
        assert_eq!(sol.nullspace.len(), 1);
        assert!(sol.unique().is_none());
        let check = m.mul_vec(&sol.particular);
        assert_eq!(check[0], CycloNumber::from_int(4));

        let inconsistent = int_matrix(2, 1, &[1, 1]);
        assert_eq!(
            inconsistent.solve_linear(&[CycloNumber::zero(), CycloNumber::one()]),
            Err(LaError::Inconsistent)
        );
    }

    #[test]
    fn arithmetic_and_shape_errors() {
        let a = int_matrix(2, 2, &[1, 2, 3, 4]);
        let b = int_matrix(2, 2, &[0, 1, 1, 0]);
        assert_eq!(&a * &b, int_matrix(2, 2, &[2, 1, 4, 3]));
        assert_eq!(&a + &b, int_matrix(2, 2, &[1, 3, 4, 4]));
        let c = int_matrix(1, 2, &[1, 1]);
        assert!(matches!(a.checked_add(&c), Err(LaError::ShapeMismatch(_))));
        assert!(matches!(c.checked_mul(&c), Err(LaError::ShapeMismatch(_))));
    }

    #[test]
    fn transpose_and_scalar() {
        let a = int_matrix(2, 3, &[1, 2, 3, 4, 5, 6]);
        let t = a.transpose();
        assert_eq!(t.rows(), 3);
        assert_eq!(t.get(2, 1), &CycloNumber::from_int(6));
        let half = a.mul_scalar(&CycloNumber::rational(rat(1, 2)));
        assert_eq!(half.get(0, 1), &CycloNumber::rational(rat(1, 1)));
    }

    #[test]
    fn serialization_round_trips() {
        let m = Matrix::from_rows(vec![
            vec![CycloNumber::root_of_unity(12, 5), CycloNumber::zero()],
            vec![CycloNumber::rational(rat(-2, 3)), CycloNumber::one()],
        ]);
        let v = m.to_json();
        assert_eq!(Matrix::from_json(&v).unwrap(), m);
    }
}
