//! Differentials as matrices, and cohomology of the α-type complex and of
//! the α-compatible (Cheng–Cai) subcomplex.
//!
//! Columns of the degree-`n` matrix are indexed by the basis cochains of
//! `C̃Lⁿ` in flattening order: the γ-block (arity `n`) first, then the
//! α-block (arity `n − 1`).

use std::sync::OnceLock;

use crate::algebra::HomLeibnizAlgebra;
use crate::cochain::{
    d_gamma_alpha, d_gamma_gamma, differential_unchecked, AlphaTypeCochain, GammaCochain,
};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Rational};

/// Default upper bound on materialized degrees.
pub const DEFAULT_MAX_DEGREE: usize = 4;

/// The differentials around one degree.
#[derive(Debug, Clone)]
pub struct ComplexSlice {
    pub degree: usize,
    pub ambient_dim: usize,
    /// `∂ⁿ : C̃Lⁿ → C̃Lⁿ⁺¹`.
    pub out_matrix: Matrix,
    /// `∂ⁿ⁻¹ : C̃Lⁿ⁻¹ → C̃Lⁿ`, absent in degree 1.
    pub in_matrix: Option<Matrix>,
}

/// Dimensions and bases of cocycles, coboundaries and cohomology in one degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohomologyReport {
    pub degree: usize,
    /// Dimension of the cochain space the complex lives in at this degree.
    pub ambient_dim: usize,
    pub dim_cocycles: usize,
    pub dim_coboundaries: usize,
    pub betti: usize,
    pub cocycle_basis: Vec<AlphaTypeCochain>,
    pub coboundary_basis: Vec<AlphaTypeCochain>,
    /// Cocycles completing the coboundaries to a basis of the cocycles,
    /// chosen greedily in basis order; one per cohomology dimension.
    pub representatives: Vec<AlphaTypeCochain>,
}

/// The α-type complex of a validated algebra, with lazily cached
/// differential matrices in degrees `1..=max_degree`.
#[derive(Debug)]
pub struct AlphaComplex {
    algebra: HomLeibnizAlgebra,
    max_degree: usize,
    matrices: Vec<OnceLock<Matrix>>,
}

impl AlphaComplex {
    pub fn new(l: &HomLeibnizAlgebra) -> Result<Self> {
        Self::with_max_degree(l, DEFAULT_MAX_DEGREE)
    }

    pub fn with_max_degree(l: &HomLeibnizAlgebra, max_degree: usize) -> Result<Self> {
        l.require_validated()?;
        Ok(Self {
            algebra: l.clone(),
            max_degree,
            matrices: (0..=max_degree).map(|_| OnceLock::new()).collect(),
        })
    }

    pub fn algebra(&self) -> &HomLeibnizAlgebra {
        &self.algebra
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    fn check_degree(&self, n: usize) -> Result<()> {
        if n == 0 || n > self.max_degree {
            return Err(Error::DegreeOutOfRange {
                degree: n,
                max: self.max_degree,
            });
        }
        Ok(())
    }

    /// `dim C̃Lⁿ`.
    pub fn cochain_dim(&self, n: usize) -> usize {
        AlphaTypeCochain::ambient_dim(self.algebra.dim(), n)
    }

    /// The matrix of `∂ⁿ`.
    pub fn differential_matrix(&self, n: usize) -> Result<&Matrix> {
        self.check_degree(n)?;
        Ok(self.matrices[n].get_or_init(|| {
            let d = self.algebra.dim();
            let cols: Vec<Vec<Rational>> = (0..self.cochain_dim(n))
                .map(|idx| {
                    let b = AlphaTypeCochain::basis(d, n, idx);
                    differential_unchecked(&self.algebra, &b)
                        .expect("basis cochain has matching shape")
                        .flatten()
                })
                .collect();
            Matrix::from_columns(self.cochain_dim(n + 1), &cols).expect("column lengths")
        }))
    }

    /// Applies `∂` to a cochain of degree at most `max_degree + 1`.
    pub fn apply(&self, c: &AlphaTypeCochain) -> Result<AlphaTypeCochain> {
        if c.dim() != self.algebra.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.algebra.dim(),
                found: c.dim(),
            });
        }
        differential_unchecked(&self.algebra, c)
    }

    pub fn assemble(&self, n: usize) -> Result<ComplexSlice> {
        self.check_degree(n)?;
        Ok(ComplexSlice {
            degree: n,
            ambient_dim: self.cochain_dim(n),
            out_matrix: self.differential_matrix(n)?.clone(),
            in_matrix: if n >= 2 {
                Some(self.differential_matrix(n - 1)?.clone())
            } else {
                None
            },
        })
    }

    pub fn cohomology(&self, n: usize) -> Result<CohomologyReport> {
        self.check_degree(n)?;
        let out = self.differential_matrix(n)?;
        let input = if n >= 2 {
            Some(self.differential_matrix(n - 1)?)
        } else {
            None
        };
        let d = self.algebra.dim();
        Ok(subcomplex_report(n, out, input, None, None, |v| {
            AlphaTypeCochain::from_flat(d, n, v).expect("ambient length")
        }))
    }

    fn check_cochain(&self, c: &AlphaTypeCochain) -> Result<()> {
        self.check_degree(c.degree())?;
        if c.dim() != self.algebra.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.algebra.dim(),
                found: c.dim(),
            });
        }
        Ok(())
    }

    pub fn is_cocycle(&self, c: &AlphaTypeCochain) -> Result<bool> {
        self.check_cochain(c)?;
        Ok(self.apply(c)?.is_zero())
    }

    /// Some `x` with `∂x = c`, or `None` if `c` is not a coboundary.
    /// Degree-1 cochains have no preimage space; asking is an error.
    pub fn is_coboundary(&self, c: &AlphaTypeCochain) -> Result<Option<AlphaTypeCochain>> {
        self.check_cochain(c)?;
        let n = c.degree();
        if n == 1 {
            return Err(Error::DegreeOutOfRange {
                degree: 1,
                max: self.max_degree,
            });
        }
        let m = self.differential_matrix(n - 1)?;
        Ok(m.solve(&c.flatten())?
            .map(|x| AlphaTypeCochain::from_flat(self.algebra.dim(), n - 1, &x).expect("length")))
    }

    /// Whether `c₁ − c₂` is a coboundary (in degree 1: whether `c₁ = c₂`).
    pub fn cohomologous(&self, c1: &AlphaTypeCochain, c2: &AlphaTypeCochain) -> Result<bool> {
        self.check_cochain(c1)?;
        let diff = c1.sub(c2)?;
        if diff.degree() == 1 {
            return Ok(diff.is_zero());
        }
        Ok(self.is_coboundary(&diff)?.is_some())
    }

    /// Matrix of `∂_γγ` on `Hom(L^{⊗n}, L)`.
    pub fn gamma_gamma_matrix(&self, n: usize) -> Result<Matrix> {
        let d = self.algebra.dim();
        let cols: Vec<Vec<Rational>> = (0..GammaCochain::len_for(d, n))
            .map(|idx| {
                d_gamma_gamma(&self.algebra, &GammaCochain::basis(d, n, idx))
                    .map(GammaCochain::into_coeffs)
            })
            .collect::<Result<_>>()?;
        Matrix::from_columns(GammaCochain::len_for(d, n + 1), &cols)
    }

    /// Matrix of `∂_γα` on `Hom(L^{⊗n}, L)`.
    pub fn gamma_alpha_matrix(&self, n: usize) -> Result<Matrix> {
        let d = self.algebra.dim();
        let cols: Vec<Vec<Rational>> = (0..GammaCochain::len_for(d, n))
            .map(|idx| {
                d_gamma_alpha(&self.algebra, &GammaCochain::basis(d, n, idx))
                    .map(GammaCochain::into_coeffs)
            })
            .collect::<Result<_>>()?;
        Matrix::from_columns(GammaCochain::len_for(d, n), &cols)
    }

    /// Basis of `CLⁿ_α = ker ∂_γα` as columns of a matrix.
    pub fn compatible_basis(&self, n: usize) -> Result<Matrix> {
        let k = self.gamma_alpha_matrix(n)?.nullspace();
        Ok(k.basis_matrix())
    }

    /// Cohomology of `(CL*_α, δ = ∂_γγ)`. Cochains are reported through the
    /// chain map `φ ↦ (φ, 0)` into the α-type complex.
    pub fn cheng_cai_cohomology(&self, n: usize) -> Result<CohomologyReport> {
        self.check_degree(n)?;
        let out = self.gamma_gamma_matrix(n)?;
        let dom = self.compatible_basis(n)?;
        let (input, dom_in) = if n >= 2 {
            (
                Some(self.gamma_gamma_matrix(n - 1)?),
                Some(self.compatible_basis(n - 1)?),
            )
        } else {
            (None, None)
        };
        let d = self.algebra.dim();
        Ok(subcomplex_report(
            n,
            &out,
            input.as_ref(),
            Some(&dom),
            dom_in.as_ref(),
            |v| {
                let gamma = GammaCochain::from_coeffs(d, n, v.to_vec()).expect("length");
                let alpha = (n >= 2).then(|| GammaCochain::zero(d, n - 1));
                AlphaTypeCochain::new(gamma, alpha).expect("shape")
            },
        ))
    }
}

/// Cohomology at degree `n` of the subcomplex spanned by the columns of
/// `dom` (all of the ambient space when `None`). `out` and `input` are the
/// ambient differentials into and out of degree `n`; `dom_in` spans the
/// subcomplex in degree `n − 1`. `embed` turns an ambient coordinate vector
/// into a cochain.
pub(crate) fn subcomplex_report(
    n: usize,
    out: &Matrix,
    input: Option<&Matrix>,
    dom: Option<&Matrix>,
    dom_in: Option<&Matrix>,
    embed: impl Fn(&[Rational]) -> AlphaTypeCochain,
) -> CohomologyReport {
    let ambient = out.cols();
    let restricted_out;
    let (out_r, ambient_dim) = match dom {
        Some(b) => {
            restricted_out = out.mul(b).expect("shapes");
            (&restricted_out, b.cols())
        }
        None => (out, ambient),
    };
    let kernel = out_r.nullspace();
    let cocycles: Vec<Vec<Rational>> = match dom {
        Some(b) => kernel
            .basis()
            .iter()
            .map(|v| b.mul_vec(v).expect("shapes"))
            .collect(),
        None => kernel.into_basis(),
    };

    let coboundaries: Vec<Vec<Rational>> = match input {
        None => Vec::new(),
        Some(m) => {
            let image_gen = match dom_in {
                Some(b) => m.mul(b).expect("shapes"),
                None => m.clone(),
            };
            image_gen.column_space().into_basis()
        }
    };

    // greedy completion: pivots of [B | Z] beyond the coboundary block
    let mut all = coboundaries.clone();
    all.extend(cocycles.iter().cloned());
    let reps: Vec<Vec<Rational>> = if all.is_empty() {
        Vec::new()
    } else {
        let m = Matrix::from_columns(ambient, &all).expect("lengths");
        m.rref()
            .pivots
            .into_iter()
            .filter(|&c| c >= coboundaries.len())
            .map(|c| all[c].clone())
            .collect()
    };

    let dim_cocycles = cocycles.len();
    let dim_coboundaries = coboundaries.len();
    debug_assert!(dim_coboundaries <= dim_cocycles);
    debug_assert_eq!(reps.len(), dim_cocycles - dim_coboundaries);
    CohomologyReport {
        degree: n,
        ambient_dim,
        dim_cocycles,
        dim_coboundaries,
        betti: dim_cocycles - dim_coboundaries,
        cocycle_basis: cocycles.iter().map(|v| embed(v)).collect(),
        coboundary_basis: coboundaries.iter().map(|v| embed(v)).collect(),
        representatives: reps.iter().map(|v| embed(v)).collect(),
    }
}

/// [`AlphaComplex::assemble`] with the default degree bound.
pub fn assemble(l: &HomLeibnizAlgebra, n: usize) -> Result<ComplexSlice> {
    AlphaComplex::new(l)?.assemble(n)
}

/// [`AlphaComplex::cohomology`] with the default degree bound.
pub fn cohomology(l: &HomLeibnizAlgebra, n: usize) -> Result<CohomologyReport> {
    AlphaComplex::new(l)?.cohomology(n)
}

/// [`AlphaComplex::cheng_cai_cohomology`] with the default degree bound.
pub fn cheng_cai_cohomology(l: &HomLeibnizAlgebra, n: usize) -> Result<CohomologyReport> {
    AlphaComplex::new(l)?.cheng_cai_cohomology(n)
}

pub fn is_cocycle(l: &HomLeibnizAlgebra, c: &AlphaTypeCochain) -> Result<bool> {
    AlphaComplex::new(l)?.is_cocycle(c)
}

pub fn is_coboundary(
    l: &HomLeibnizAlgebra,
    c: &AlphaTypeCochain,
) -> Result<Option<AlphaTypeCochain>> {
    AlphaComplex::new(l)?.is_coboundary(c)
}

pub fn cohomologous(
    l: &HomLeibnizAlgebra,
    c1: &AlphaTypeCochain,
    c2: &AlphaTypeCochain,
) -> Result<bool> {
    AlphaComplex::new(l)?.cohomologous(c1, c2)
}
