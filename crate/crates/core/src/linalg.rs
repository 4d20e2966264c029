//! Exact linear algebra over the rationals.
//!
//! Everything the cohomology and deformation code needs reduces to rank,
//! kernels and linear solves of modest dense matrices with (mostly) small
//! integer entries. Elimination skips zero entries aggressively since the
//! differential matrices are very sparse.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational number, always reduced with a positive
/// denominator.
pub type Rational = BigRational;

/// Shorthand for the rational `num/den`. Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Shorthand for an integral rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"n"`, `"-n"` or `"n/d"` into a reduced rational.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).ok()?;
            let d = BigInt::from_str(d.trim()).ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rational::new(n, d))
        }
        None => BigInt::from_str(s).ok().map(Rational::from_integer),
    }
}

/// Formats a rational as `"num/den"`, including a denominator of 1.
pub fn format_rational(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Dense row-major rational matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = Rational::one();
        }
        m
    }

    /// Builds a matrix from a row-major entry vector.
    pub fn from_entries(rows: usize, cols: usize, entries: Vec<Rational>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                found: entries.len(),
            });
        }
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    /// Builds a matrix from rows; all rows must have the same length.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            entries.extend(row);
        }
        Ok(Self {
            rows: n,
            cols,
            entries,
        })
    }

    /// Integer matrix literal, mostly for tests and examples.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let data = rows
            .iter()
            .map(|r| r.iter().map(|&x| int(x)).collect())
            .collect();
        Self::from_rows(data).expect("ragged integer matrix literal")
    }

    /// Matrix whose columns are the given vectors of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<Rational>]) -> Result<Self> {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(Error::DimensionMismatch {
                    expected: rows,
                    found: col.len(),
                });
            }
            for (i, x) in col.iter().enumerate() {
                if !x.is_zero() {
                    m.entries[i * m.cols + j] = x.clone();
                }
            }
        }
        Ok(m)
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

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Rational) {
        self.entries[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let x = self.get(i, j);
                if !x.is_zero() {
                    t.set(j, i, x.clone());
                }
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.entries[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = Rational::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += a * b;
                    }
                }
                acc
            })
            .collect())
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.check_same_shape(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.check_same_shape(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    pub fn scale(&self, s: &Rational) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|x| x * s).collect(),
        }
    }

    /// `self^k` for a square matrix; `k = 0` gives the identity.
    pub fn pow(&self, k: usize) -> Matrix {
        assert!(self.is_square(), "pow of a non-square matrix");
        let mut out = Matrix::identity(self.rows);
        for _ in 0..k {
            out = out.mul(self).expect("square");
        }
        out
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.cols,
            });
        }
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        Ok(Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            entries,
        })
    }

    fn check_same_shape(&self, other: &Matrix) -> Result<()> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: other.rows,
            });
        }
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.cols,
            });
        }
        Ok(())
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> Echelon {
        let mut m = self.entries.clone();
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            // partial pivoting: largest magnitude in the column
            let mut best: Option<usize> = None;
            for i in r..rows {
                let x = &m[i * cols + c];
                if x.is_zero() {
                    continue;
                }
                match best {
                    Some(b) if m[b * cols + c].abs() >= x.abs() => {}
                    _ => best = Some(i),
                }
            }
            let Some(p) = best else { continue };
            if p != r {
                for j in 0..cols {
                    m.swap(p * cols + j, r * cols + j);
                }
            }
            let inv = m[r * cols + c].recip();
            let mut support = Vec::new();
            for j in c..cols {
                let idx = r * cols + j;
                if !m[idx].is_zero() {
                    m[idx] = &m[idx] * &inv;
                    support.push(j);
                }
            }
            for i in 0..rows {
                if i == r {
                    continue;
                }
                let f = m[i * cols + c].clone();
                if f.is_zero() {
                    continue;
                }
                for &j in &support {
                    let delta = &f * &m[r * cols + j];
                    m[i * cols + j] -= delta;
                }
            }
            pivots.push(c);
            r += 1;
        }
        Echelon {
            reduced: Matrix {
                rows,
                cols,
                entries: m,
            },
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        // eliminate along the shorter side
        if self.rows < self.cols {
            self.rref().pivots.len()
        } else {
            self.transpose().rref().pivots.len()
        }
    }

    pub fn nullspace(&self) -> Subspace {
        let ech = self.rref();
        let free: Vec<usize> = (0..self.cols)
            .filter(|c| ech.pivots.binary_search(c).is_err())
            .collect();
        let basis = free
            .iter()
            .map(|&f| {
                let mut v = vec![Rational::zero(); self.cols];
                v[f] = Rational::one();
                for (row, &p) in ech.pivots.iter().enumerate() {
                    let x = ech.reduced.get(row, f);
                    if !x.is_zero() {
                        v[p] = -x;
                    }
                }
                v
            })
            .collect();
        Subspace {
            ambient_dim: self.cols,
            basis,
        }
    }

    /// Basis of the column space, taken from the pivot columns of `self`.
    pub fn column_space(&self) -> Subspace {
        let ech = self.rref();
        Subspace {
            ambient_dim: self.rows,
            basis: ech.pivots.iter().map(|&c| self.column(c)).collect(),
        }
    }

    /// Solves `self · x = b`. Returns `Ok(None)` when the system is
    /// inconsistent; free variables are set to zero.
    pub fn solve(&self, b: &[Rational]) -> Result<Option<Vec<Rational>>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: b.len(),
            });
        }
        let aug_cols = self.cols + 1;
        let mut aug = Matrix::zeros(self.rows, aug_cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let x = self.get(i, j);
                if !x.is_zero() {
                    aug.set(i, j, x.clone());
                }
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let ech = aug.rref();
        if ech.pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![Rational::zero(); self.cols];
        for (row, &p) in ech.pivots.iter().enumerate() {
            x[p] = ech.reduced.get(row, self.cols).clone();
        }
        Ok(Some(x))
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Output of [`Matrix::rref`].
#[derive(Debug, Clone)]
pub struct Echelon {
    pub reduced: Matrix,
    pub pivots: Vec<usize>,
}

/// A linear subspace of `ℚ^ambient_dim` given by a basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<Vec<Rational>>,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        let basis = (0..ambient_dim)
            .map(|i| {
                let mut v = vec![Rational::zero(); ambient_dim];
                v[i] = Rational::one();
                v
            })
            .collect();
        Self { ambient_dim, basis }
    }

    /// Span of `vectors`, keeping a linearly independent subset in order.
    pub fn span(ambient_dim: usize, vectors: &[Vec<Rational>]) -> Result<Self> {
        let m = Matrix::from_columns(ambient_dim, vectors)?;
        Ok(m.column_space())
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    pub fn into_basis(self) -> Vec<Vec<Rational>> {
        self.basis
    }

    /// Matrix whose columns are the basis vectors.
    pub fn basis_matrix(&self) -> Matrix {
        Matrix::from_columns(self.ambient_dim, &self.basis).expect("basis lengths")
    }

    pub fn contains(&self, v: &[Rational]) -> Result<bool> {
        Ok(self.coordinates(v)?.is_some())
    }

    /// Coordinates of `v` in the basis, if `v` lies in the span.
    pub fn coordinates(&self, v: &[Rational]) -> Result<Option<Vec<Rational>>> {
        if v.len() != self.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                found: v.len(),
            });
        }
        if self.basis.is_empty() {
            return Ok(v.iter().all(Zero::is_zero).then(Vec::new));
        }
        self.basis_matrix().solve(v)
    }
}

/// Exact rank of `m`.
pub fn rank(m: &Matrix) -> usize {
    m.rank()
}

/// Basis of `{v : m·v = 0}`.
pub fn nullspace(m: &Matrix) -> Subspace {
    m.nullspace()
}

/// Some `x` with `m·x = b`, or `None` if `b` is outside the column space.
pub fn solve(m: &Matrix, b: &[Rational]) -> Result<Option<Vec<Rational>>> {
    m.solve(b)
}

/// Whether `v` lies in the span of `s`.
pub fn membership(s: &Subspace, v: &[Rational]) -> Result<bool> {
    s.contains(v)
}
