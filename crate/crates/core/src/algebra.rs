//! Multiplicative Hom-Leibniz algebras given by structure constants.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{Matrix, Rational};

/// A finite-dimensional algebra `(L, [·,·], α)`.
///
/// The bracket is stored as structure constants `c[i][j][k]`, the
/// coefficient of `e_k` in `[e_i, e_j]`. The structure map acts on
/// coordinate columns: `α(e_j) = Σ_k A[k][j] e_k`.
///
/// Construction only checks shapes; use [`verify_hom_leibniz`] and
/// [`verify_multiplicative`] (or [`HomLeibnizAlgebra::is_validated`]) to
/// check the axioms.
///
/// [`verify_hom_leibniz`]: HomLeibnizAlgebra::verify_hom_leibniz
/// [`verify_multiplicative`]: HomLeibnizAlgebra::verify_multiplicative
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomLeibnizAlgebra {
    dim: usize,
    bracket: Vec<Rational>,
    alpha: Matrix,
}

/// One failing instance of an identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub law: String,
    pub indices: Vec<usize>,
    pub lhs: Vec<Rational>,
    pub rhs: Vec<Rational>,
}

/// Outcome of checking an identity on all basis tuples.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidationReport {
    pub passed: bool,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn from_violations(violations: Vec<Violation>) -> Self {
        Self {
            passed: violations.is_empty(),
            violations,
        }
    }

    pub fn merge(mut self, other: ValidationReport) -> Self {
        self.violations.extend(other.violations);
        self.passed = self.violations.is_empty();
        self
    }
}

impl HomLeibnizAlgebra {
    /// Builds an algebra from a flat `dim³` structure-constant array in
    /// `[i][j][k]` order and a `dim × dim` structure matrix.
    pub fn new(dim: usize, bracket: Vec<Rational>, alpha: Matrix) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidParameters(
                "dimension must be positive".into(),
            ));
        }
        if bracket.len() != dim * dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim * dim,
                found: bracket.len(),
            });
        }
        if alpha.rows() != dim || alpha.cols() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: if alpha.rows() != dim {
                    alpha.rows()
                } else {
                    alpha.cols()
                },
            });
        }
        Ok(Self {
            dim,
            bracket,
            alpha,
        })
    }

    /// Builds an algebra from sparse entries `(i, j, k, c)` meaning
    /// `[e_i, e_j]` has coefficient `c` on `e_k` (0-based).
    pub fn from_entries(
        dim: usize,
        entries: &[(usize, usize, usize, Rational)],
        alpha: Matrix,
    ) -> Result<Self> {
        let mut bracket = vec![Rational::zero(); dim * dim * dim];
        for (i, j, k, c) in entries {
            for &idx in [i, j, k] {
                if idx >= dim {
                    return Err(Error::DimensionMismatch {
                        expected: dim,
                        found: idx + 1,
                    });
                }
            }
            bracket[(i * dim + j) * dim + k] += c;
        }
        Self::new(dim, bracket, alpha)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn alpha(&self) -> &Matrix {
        &self.alpha
    }

    /// Flat structure constants in `[i][j][k]` order.
    pub fn structure_constants(&self) -> &[Rational] {
        &self.bracket
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.bracket[(i * self.dim + j) * self.dim + k]
    }

    /// Coordinates of `[e_i, e_j]`.
    pub fn basis_bracket(&self, i: usize, j: usize) -> &[Rational] {
        let start = (i * self.dim + j) * self.dim;
        &self.bracket[start..start + self.dim]
    }

    /// Same bracket, different structure map.
    pub fn with_alpha(&self, alpha: Matrix) -> Result<Self> {
        Self::new(self.dim, self.bracket.clone(), alpha)
    }

    /// `[x, y]` for coordinate vectors.
    pub fn bracket_eval(&self, x: &[Rational], y: &[Rational]) -> Result<Vec<Rational>> {
        self.check_len(x)?;
        self.check_len(y)?;
        let d = self.dim;
        let mut out = vec![Rational::zero(); d];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let w = xi * yj;
                for (o, c) in out.iter_mut().zip(self.basis_bracket(i, j)) {
                    if !c.is_zero() {
                        *o += &w * c;
                    }
                }
            }
        }
        Ok(out)
    }

    /// `α^k x`; `k = 0` returns `x`.
    pub fn alpha_power_eval(&self, k: usize, x: &[Rational]) -> Result<Vec<Rational>> {
        self.check_len(x)?;
        let mut v = x.to_vec();
        for _ in 0..k {
            v = self.alpha.mul_vec(&v)?;
        }
        Ok(v)
    }

    /// Checks `[α e_a, [e_b, e_c]] = [[e_a, e_b], α e_c] − [[e_a, e_c], α e_b]`
    /// on every basis triple.
    pub fn verify_hom_leibniz(&self) -> ValidationReport {
        let d = self.dim;
        let alpha_cols: Vec<Vec<Rational>> = (0..d).map(|j| self.alpha.column(j)).collect();
        let mut violations = Vec::new();
        for a in 0..d {
            for b in 0..d {
                let ab = self.basis_bracket(a, b).to_vec();
                for c in 0..d {
                    let bc = self.basis_bracket(b, c).to_vec();
                    let ac = self.basis_bracket(a, c).to_vec();
                    let lhs = self.bracket_eval(&alpha_cols[a], &bc).expect("dim");
                    let r1 = self.bracket_eval(&ab, &alpha_cols[c]).expect("dim");
                    let r2 = self.bracket_eval(&ac, &alpha_cols[b]).expect("dim");
                    let rhs: Vec<Rational> = r1.iter().zip(&r2).map(|(p, q)| p - q).collect();
                    if lhs != rhs {
                        violations.push(Violation {
                            law: "hom-leibniz".into(),
                            indices: vec![a, b, c],
                            lhs,
                            rhs,
                        });
                    }
                }
            }
        }
        ValidationReport::from_violations(violations)
    }

    /// Checks `α[e_a, e_b] = [α e_a, α e_b]` on every basis pair.
    pub fn verify_multiplicative(&self) -> ValidationReport {
        let d = self.dim;
        let alpha_cols: Vec<Vec<Rational>> = (0..d).map(|j| self.alpha.column(j)).collect();
        let mut violations = Vec::new();
        for a in 0..d {
            for b in 0..d {
                let lhs = self.alpha.mul_vec(self.basis_bracket(a, b)).expect("dim");
                let rhs = self
                    .bracket_eval(&alpha_cols[a], &alpha_cols[b])
                    .expect("dim");
                if lhs != rhs {
                    violations.push(Violation {
                        law: "multiplicative".into(),
                        indices: vec![a, b],
                        lhs,
                        rhs,
                    });
                }
            }
        }
        ValidationReport::from_violations(violations)
    }

    /// Both axioms hold.
    pub fn is_validated(&self) -> bool {
        self.verify_hom_leibniz().passed && self.verify_multiplicative().passed
    }

    /// Returns `Err(NotValidated)` unless both axioms hold.
    pub fn require_validated(&self) -> Result<()> {
        let hl = self.verify_hom_leibniz();
        if let Some(v) = hl.violations.first() {
            return Err(Error::NotValidated(format!(
                "Hom-Leibniz identity fails on basis triple {:?}",
                v.indices
            )));
        }
        let mult = self.verify_multiplicative();
        if let Some(v) = mult.violations.first() {
            return Err(Error::NotValidated(format!(
                "α is not multiplicative on basis pair {:?}",
                v.indices
            )));
        }
        Ok(())
    }

    fn check_len(&self, x: &[Rational]) -> Result<()> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: x.len(),
            });
        }
        Ok(())
    }
}

/// Coordinate vector of `e_i` in dimension `dim`.
pub fn basis_vector(dim: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); dim];
    v[i] = num_traits::One::one();
    v
}
