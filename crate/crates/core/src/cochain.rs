//! Multilinear cochains `L^{⊗m} → L` and the α-type differential.
//!
//! A [`GammaCochain`] of arity `m` stores `T[k | i₁,…,i_m]`, the coefficient
//! of `e_k` in `φ(e_{i₁},…,e_{i_m})`, flattened with the output index
//! outermost and the inputs row-major:
//! `flat = k·dᵐ + Σ_s i_s·d^{m−1−s}`.
//!
//! The differentials are built from a handful of tensor operations
//! (composition in a slot, argument permutation) that only visit nonzero
//! coefficients, so differentials of basis cochains are cheap.

use num_traits::{One, Zero};

use crate::algebra::HomLeibnizAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{int, Matrix, Rational};

/// A multilinear map `L^{⊗arity} → L` as a dense coefficient tensor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaCochain {
    dim: usize,
    arity: usize,
    coeffs: Vec<Rational>,
}

impl GammaCochain {
    pub fn zero(dim: usize, arity: usize) -> Self {
        Self {
            dim,
            arity,
            coeffs: vec![Rational::zero(); Self::len_for(dim, arity)],
        }
    }

    /// Number of coefficients, `dim^(arity+1)`.
    pub fn len_for(dim: usize, arity: usize) -> usize {
        dim.pow(arity as u32 + 1)
    }

    pub fn from_coeffs(dim: usize, arity: usize, coeffs: Vec<Rational>) -> Result<Self> {
        let expected = Self::len_for(dim, arity);
        if coeffs.len() != expected {
            return Err(Error::DimensionMismatch {
                expected,
                found: coeffs.len(),
            });
        }
        Ok(Self { dim, arity, coeffs })
    }

    /// The cochain with a single coefficient 1 at flat position `index`.
    pub fn basis(dim: usize, arity: usize, index: usize) -> Self {
        let mut c = Self::zero(dim, arity);
        c.coeffs[index] = Rational::one();
        c
    }

    /// The linear map with matrix `m` (column convention).
    pub fn from_matrix(m: &Matrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::DimensionMismatch {
                expected: m.rows(),
                found: m.cols(),
            });
        }
        Self::from_coeffs(m.rows(), 1, m.entries().to_vec())
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_matrix(&Matrix::identity(dim)).expect("square")
    }

    /// The bracket `m₀ = [·,·]` of `l` as a bilinear cochain.
    pub fn bracket_of(l: &HomLeibnizAlgebra) -> Self {
        let d = l.dim();
        let mut c = Self::zero(d, 2);
        for i in 0..d {
            for j in 0..d {
                for (k, x) in l.basis_bracket(i, j).iter().enumerate() {
                    if !x.is_zero() {
                        c.coeffs[k * d * d + i * d + j] = x.clone();
                    }
                }
            }
        }
        c
    }

    /// The structure map `α` of `l` as a linear cochain.
    pub fn alpha_of(l: &HomLeibnizAlgebra) -> Self {
        Self::from_matrix(l.alpha()).expect("square")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    fn inputs_len(&self) -> usize {
        self.dim.pow(self.arity as u32)
    }

    /// Coefficient of `e_k` in `φ(e_{inputs[0]}, …)`.
    pub fn get(&self, k: usize, inputs: &[usize]) -> &Rational {
        &self.coeffs[self.flat_index(k, inputs)]
    }

    pub fn set(&mut self, k: usize, inputs: &[usize], value: Rational) {
        let idx = self.flat_index(k, inputs);
        self.coeffs[idx] = value;
    }

    fn flat_index(&self, k: usize, inputs: &[usize]) -> usize {
        assert_eq!(inputs.len(), self.arity, "wrong number of inputs");
        inputs.iter().fold(k, |acc, &i| acc * self.dim + i)
    }

    /// `φ(e_{inputs[0]}, …)` as a coordinate vector.
    pub fn value_at(&self, inputs: &[usize]) -> Vec<Rational> {
        let base = self.flat_index(0, inputs);
        let n_in = self.inputs_len();
        (0..self.dim)
            .map(|k| self.coeffs[k * n_in + base].clone())
            .collect()
    }

    /// Input tuple of the first nonzero coefficient, if any.
    pub fn first_nonzero_inputs(&self) -> Option<Vec<usize>> {
        let n_in = self.inputs_len();
        let (flat, _) = self.nonzero().next()?;
        let mut t = flat % n_in;
        let mut inputs = vec![0; self.arity];
        for s in (0..self.arity).rev() {
            inputs[s] = t % self.dim;
            t /= self.dim;
        }
        Some(inputs)
    }

    /// Matrix of an arity-1 cochain.
    pub fn to_matrix(&self) -> Result<Matrix> {
        if self.arity != 1 {
            return Err(Error::ArityOutOfRange {
                arity: self.arity,
                reason: "only linear cochains are matrices",
            });
        }
        Matrix::from_entries(self.dim, self.dim, self.coeffs.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn check_same_shape(&self, other: &GammaCochain) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        if self.arity != other.arity {
            return Err(Error::ArityOutOfRange {
                arity: other.arity,
                reason: "operands must have equal arity",
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &GammaCochain) -> Result<GammaCochain> {
        self.check_same_shape(other)?;
        let mut out = self.clone();
        out.add_assign_scaled(other, &Rational::one());
        Ok(out)
    }

    pub fn sub(&self, other: &GammaCochain) -> Result<GammaCochain> {
        self.check_same_shape(other)?;
        let mut out = self.clone();
        out.add_assign_scaled(other, &-Rational::one());
        Ok(out)
    }

    pub fn scale(&self, s: &Rational) -> GammaCochain {
        GammaCochain {
            dim: self.dim,
            arity: self.arity,
            coeffs: self.coeffs.iter().map(|x| x * s).collect(),
        }
    }

    pub fn neg(&self) -> GammaCochain {
        self.scale(&-Rational::one())
    }

    /// `self += s · other`; shapes must agree.
    pub(crate) fn add_assign_scaled(&mut self, other: &GammaCochain, s: &Rational) {
        debug_assert_eq!(self.coeffs.len(), other.coeffs.len());
        if s.is_zero() {
            return;
        }
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            if !b.is_zero() {
                *a += b * s;
            }
        }
    }

    fn nonzero(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.coeffs.iter().enumerate().filter(|(_, x)| !x.is_zero())
    }

    /// Evaluates the map on coordinate vectors.
    pub fn eval(&self, args: &[Vec<Rational>]) -> Result<Vec<Rational>> {
        if args.len() != self.arity {
            return Err(Error::ArityOutOfRange {
                arity: args.len(),
                reason: "argument count must equal the arity",
            });
        }
        for a in args {
            if a.len() != self.dim {
                return Err(Error::DimensionMismatch {
                    expected: self.dim,
                    found: a.len(),
                });
            }
        }
        let n_in = self.inputs_len();
        let mut out = vec![Rational::zero(); self.dim];
        for (flat, c) in self.nonzero() {
            let (k, mut t) = (flat / n_in, flat % n_in);
            let mut w = c.clone();
            for s in (0..self.arity).rev() {
                let x = &args[s][t % self.dim];
                t /= self.dim;
                if x.is_zero() {
                    w = Rational::zero();
                    break;
                }
                w *= x;
            }
            if !w.is_zero() {
                out[k] += w;
            }
        }
        Ok(out)
    }

    /// `(x₁,…,x_m) ↦ φ(…, a(x_slot), …)`.
    pub fn precompose_slot(&self, slot: usize, a: &Matrix) -> GammaCochain {
        assert!(slot < self.arity, "slot out of range");
        let d = self.dim;
        let n_in = self.inputs_len();
        let stride = d.pow((self.arity - 1 - slot) as u32);
        let mut out = GammaCochain::zero(d, self.arity);
        for (flat, c) in self.nonzero() {
            let (k, t) = (flat / n_in, flat % n_in);
            let j = (t / stride) % d;
            let base = t - j * stride;
            for i in 0..d {
                let aji = a.get(j, i);
                if !aji.is_zero() {
                    out.coeffs[k * n_in + base + i * stride] += c * aji;
                }
            }
        }
        out
    }

    /// `φ ∘ a^{⊗m}`.
    pub fn precompose_all(&self, a: &Matrix) -> GammaCochain {
        (0..self.arity).fold(self.clone(), |acc, s| acc.precompose_slot(s, a))
    }

    /// `a ∘ φ`.
    pub fn postcompose(&self, a: &Matrix) -> GammaCochain {
        let d = self.dim;
        let n_in = self.inputs_len();
        let mut out = GammaCochain::zero(d, self.arity);
        for (flat, c) in self.nonzero() {
            let (k, t) = (flat / n_in, flat % n_in);
            for kk in 0..d {
                let x = a.get(kk, k);
                if !x.is_zero() {
                    out.coeffs[kk * n_in + t] += c * x;
                }
            }
        }
        out
    }

    /// Plugs `inner` into slot `slot` of `self`:
    /// `(a…, b…, c…) ↦ self(a…, inner(b…), c…)`, of arity
    /// `self.arity + inner.arity − 1`.
    pub fn substitute(&self, slot: usize, inner: &GammaCochain) -> GammaCochain {
        assert!(slot < self.arity, "slot out of range");
        assert_eq!(self.dim, inner.dim, "dimension mismatch");
        let d = self.dim;
        let r = inner.arity;
        let n_in = self.inputs_len();
        let inner_in = inner.inputs_len();
        let tail = d.pow((self.arity - 1 - slot) as u32);
        let arity = self.arity + r - 1;
        let out_in = d.pow(arity as u32);
        let mut out = GammaCochain::zero(d, arity);
        for (flat, c) in self.nonzero() {
            let (k, t) = (flat / n_in, flat % n_in);
            let suffix = t % tail;
            let j = (t / tail) % d;
            let prefix = t / (tail * d);
            let block = &inner.coeffs[j * inner_in..(j + 1) * inner_in];
            for (b, x) in block.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                let idx = ((prefix * inner_in + b) * tail) + suffix;
                out.coeffs[k * out_in + idx] += c * x;
            }
        }
        out
    }

    /// `(x₁,…,x_m) ↦ φ(x_{perm[0]}, …, x_{perm[m−1]})` for a permutation of
    /// `0..m`.
    pub fn permute_args(&self, perm: &[usize]) -> GammaCochain {
        assert_eq!(perm.len(), self.arity, "permutation length");
        let d = self.dim;
        let m = self.arity;
        let n_in = self.inputs_len();
        let strides: Vec<usize> = (0..m).map(|s| d.pow((m - 1 - s) as u32)).collect();
        let mut out = GammaCochain::zero(d, m);
        for (flat, c) in self.nonzero() {
            let (k, mut t) = (flat / n_in, flat % n_in);
            let mut idx = 0;
            for p in (0..m).rev() {
                idx += (t % d) * strides[perm[p]];
                t /= d;
            }
            out.coeffs[k * n_in + idx] += c;
        }
        out
    }
}

/// A degree-`n` element `(φ, ψ)` of `C̃Lⁿ = Hom(L^{⊗n}, L) ⊕ Hom(L^{⊗n−1}, L)`.
/// Degree-1 cochains have no ψ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlphaTypeCochain {
    degree: usize,
    gamma: GammaCochain,
    alpha: Option<GammaCochain>,
}

impl AlphaTypeCochain {
    pub fn new(gamma: GammaCochain, alpha: Option<GammaCochain>) -> Result<Self> {
        let degree = gamma.arity();
        if degree == 0 {
            return Err(Error::ArityOutOfRange {
                arity: 0,
                reason: "α-type cochains start in degree 1",
            });
        }
        match (&alpha, degree) {
            (None, 1) => {}
            (Some(a), n) if n >= 2 => {
                if a.dim() != gamma.dim() {
                    return Err(Error::DimensionMismatch {
                        expected: gamma.dim(),
                        found: a.dim(),
                    });
                }
                if a.arity() != n - 1 {
                    return Err(Error::ArityOutOfRange {
                        arity: a.arity(),
                        reason: "ψ must have arity degree − 1",
                    });
                }
            }
            (None, _) => {
                return Err(Error::ArityOutOfRange {
                    arity: 0,
                    reason: "ψ is required from degree 2 on",
                })
            }
            (Some(a), _) => {
                return Err(Error::ArityOutOfRange {
                    arity: a.arity(),
                    reason: "degree-1 cochains have no ψ",
                })
            }
        }
        Ok(Self {
            degree,
            gamma,
            alpha,
        })
    }

    pub fn zero(dim: usize, degree: usize) -> Self {
        assert!(degree >= 1, "degree must be at least 1");
        Self {
            degree,
            gamma: GammaCochain::zero(dim, degree),
            alpha: (degree >= 2).then(|| GammaCochain::zero(dim, degree - 1)),
        }
    }

    /// `dim C̃Lⁿ = d^{n+1} + d^n` (second summand absent at `n = 1`).
    pub fn ambient_dim(dim: usize, degree: usize) -> usize {
        GammaCochain::len_for(dim, degree)
            + if degree >= 2 {
                GammaCochain::len_for(dim, degree - 1)
            } else {
                0
            }
    }

    /// Rebuilds a cochain from its flattening (γ-block, then α-block).
    pub fn from_flat(dim: usize, degree: usize, flat: &[Rational]) -> Result<Self> {
        let expected = Self::ambient_dim(dim, degree);
        if flat.len() != expected || degree == 0 {
            return Err(Error::DimensionMismatch {
                expected,
                found: flat.len(),
            });
        }
        let ng = GammaCochain::len_for(dim, degree);
        let gamma = GammaCochain::from_coeffs(dim, degree, flat[..ng].to_vec())?;
        let alpha = if degree >= 2 {
            Some(GammaCochain::from_coeffs(
                dim,
                degree - 1,
                flat[ng..].to_vec(),
            )?)
        } else {
            None
        };
        Ok(Self {
            degree,
            gamma,
            alpha,
        })
    }

    /// The `index`-th basis cochain in the flattening order.
    pub fn basis(dim: usize, degree: usize, index: usize) -> Self {
        let mut flat = vec![Rational::zero(); Self::ambient_dim(dim, degree)];
        flat[index] = Rational::one();
        Self::from_flat(dim, degree, &flat).expect("consistent shape")
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.gamma.dim()
    }

    pub fn gamma_part(&self) -> &GammaCochain {
        &self.gamma
    }

    pub fn alpha_part(&self) -> Option<&GammaCochain> {
        self.alpha.as_ref()
    }

    pub fn flatten(&self) -> Vec<Rational> {
        let mut v = self.gamma.coeffs().to_vec();
        if let Some(a) = &self.alpha {
            v.extend_from_slice(a.coeffs());
        }
        v
    }

    pub fn is_zero(&self) -> bool {
        self.gamma.is_zero() && self.alpha.as_ref().is_none_or(GammaCochain::is_zero)
    }

    fn check_same_shape(&self, other: &AlphaTypeCochain) -> Result<()> {
        if self.degree != other.degree {
            return Err(Error::ArityOutOfRange {
                arity: other.degree,
                reason: "operands must have equal degree",
            });
        }
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &AlphaTypeCochain) -> Result<AlphaTypeCochain> {
        self.check_same_shape(other)?;
        Ok(Self {
            degree: self.degree,
            gamma: self.gamma.add(&other.gamma)?,
            alpha: match (&self.alpha, &other.alpha) {
                (Some(a), Some(b)) => Some(a.add(b)?),
                _ => None,
            },
        })
    }

    pub fn sub(&self, other: &AlphaTypeCochain) -> Result<AlphaTypeCochain> {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, s: &Rational) -> AlphaTypeCochain {
        Self {
            degree: self.degree,
            gamma: self.gamma.scale(s),
            alpha: self.alpha.as_ref().map(|a| a.scale(s)),
        }
    }
}

fn check_dim(l: &HomLeibnizAlgebra, c: &GammaCochain) -> Result<()> {
    if c.dim() != l.dim() {
        return Err(Error::DimensionMismatch {
            expected: l.dim(),
            found: c.dim(),
        });
    }
    Ok(())
}

fn sign(exp: usize) -> Rational {
    if exp.is_multiple_of(2) {
        int(1)
    } else {
        int(-1)
    }
}

/// The Hom-Leibniz coboundary shape shared by `∂_γγ` and `∂_αα`, with
/// `α^p` in the first two blocks.
fn leibniz_coboundary(l: &HomLeibnizAlgebra, phi: &GammaCochain, p: usize) -> GammaCochain {
    let d = l.dim();
    let m = phi.arity();
    let m0 = GammaCochain::bracket_of(l);
    let alpha = l.alpha();
    let ap = GammaCochain::from_matrix(&alpha.pow(p)).expect("square");
    let mut out = GammaCochain::zero(d, m + 1);

    // [α^p x₁, φ(x₂,…)]
    out.add_assign_scaled(&m0.substitute(0, &ap).substitute(1, phi), &int(1));

    // (−1)^i [φ(…x̂_i…), α^p x_i]
    let right = m0.substitute(1, &ap).substitute(0, phi);
    for i in 2..=m + 1 {
        let mut perm: Vec<usize> = (0..=m).filter(|&s| s != i - 1).collect();
        perm.push(i - 1);
        out.add_assign_scaled(&right.permute_args(&perm), &sign(i));
    }

    // (−1)^{j+1} φ(αx₁,…,[x_i,x_j],…,α̂x_j,…)
    for i in 1..=m {
        let twisted = (0..m)
            .filter(|&s| s != i - 1)
            .fold(phi.clone(), |acc, s| acc.precompose_slot(s, alpha));
        let inserted = twisted.substitute(i - 1, &m0);
        for j in i + 1..=m + 1 {
            let mut perm: Vec<usize> = (0..i - 1).collect();
            perm.push(i - 1);
            perm.push(j - 1);
            perm.extend((i..=m).filter(|&s| s != j - 1));
            out.add_assign_scaled(&inserted.permute_args(&perm), &sign(j + 1));
        }
    }
    out
}

/// `∂_γγ φ` for `φ` of arity `n`, using `α^{n−1}`.
pub fn d_gamma_gamma(l: &HomLeibnizAlgebra, phi: &GammaCochain) -> Result<GammaCochain> {
    check_dim(l, phi)?;
    if phi.arity() == 0 {
        return Err(Error::ArityOutOfRange {
            arity: 0,
            reason: "∂_γγ needs arity ≥ 1",
        });
    }
    Ok(leibniz_coboundary(l, phi, phi.arity() - 1))
}

/// `∂_αα ψ` for `ψ` of arity `n − 1`, using `α^{n−1}`; the result has arity `n`.
pub fn d_alpha_alpha(l: &HomLeibnizAlgebra, psi: &GammaCochain) -> Result<GammaCochain> {
    check_dim(l, psi)?;
    if psi.arity() == 0 {
        return Err(Error::ArityOutOfRange {
            arity: 0,
            reason: "∂_αα needs arity ≥ 1",
        });
    }
    Ok(leibniz_coboundary(l, psi, psi.arity()))
}

/// `∂_γα φ = α∘φ − φ∘α^{⊗n}`.
pub fn d_gamma_alpha(l: &HomLeibnizAlgebra, phi: &GammaCochain) -> Result<GammaCochain> {
    check_dim(l, phi)?;
    let a = l.alpha();
    phi.postcompose(a).sub(&phi.precompose_all(a))
}

/// `∂_αγ ψ` for `ψ` of arity `n − 1 ≥ 1`; the result has arity `n + 1`.
///
/// Uses `α^{n−2}` and the signs `(−1)^i` and `(−1)^{i+j}` on the two
/// double-bracket blocks; the latter makes `∂∘∂ = 0` in every degree.
pub fn d_alpha_gamma(l: &HomLeibnizAlgebra, psi: &GammaCochain) -> Result<GammaCochain> {
    check_dim(l, psi)?;
    d_alpha_gamma_signed(l, psi, |i, j| sign(i + j))
}

/// `∂_αγ` with the second block signed `(−1)^j` instead of `(−1)^{i+j}`.
/// Kept for regression tests: with it `∂∘∂ ≠ 0` on twisted algebras.
#[doc(hidden)]
pub fn d_alpha_gamma_literal_sign(
    l: &HomLeibnizAlgebra,
    psi: &GammaCochain,
) -> Result<GammaCochain> {
    check_dim(l, psi)?;
    d_alpha_gamma_signed(l, psi, |_, j| sign(j))
}

fn d_alpha_gamma_signed(
    l: &HomLeibnizAlgebra,
    psi: &GammaCochain,
    second_sign: impl Fn(usize, usize) -> Rational,
) -> Result<GammaCochain> {
    let r = psi.arity();
    if r == 0 {
        return Err(Error::ArityOutOfRange {
            arity: 0,
            reason: "∂_αγ is defined from degree 2 (ψ of arity ≥ 1)",
        });
    }
    let n = r + 1;
    let d = l.dim();
    let m0 = GammaCochain::bracket_of(l);
    let ap = GammaCochain::from_matrix(&l.alpha().pow(n - 2)).expect("square");
    let beta = m0.substitute(0, &ap).substitute(1, &ap);
    let mut out = GammaCochain::zero(d, n + 1);

    // (−1)^i [[α^p x₁, α^p x_i], ψ(x₂,…,x̂_i,…)]
    let left = m0.substitute(0, &beta).substitute(2, psi);
    for i in 2..=n + 1 {
        let mut perm = vec![0, i - 1];
        perm.extend((1..=n).filter(|&s| s != i - 1));
        out.add_assign_scaled(&left.permute_args(&perm), &sign(i));
    }

    // ± [ψ(x₁,…,x̂_i,…,x̂_j,…), [α^p x_i, α^p x_j]]
    let right = m0.substitute(1, &beta).substitute(0, psi);
    for i in 2..=n + 1 {
        for j in i + 1..=n + 1 {
            let mut perm: Vec<usize> = (0..=n).filter(|&s| s != i - 1 && s != j - 1).collect();
            perm.push(i - 1);
            perm.push(j - 1);
            out.add_assign_scaled(&right.permute_args(&perm), &second_sign(i, j));
        }
    }
    Ok(out)
}

/// `∂(φ, ψ) = (∂_γγφ − ∂_αγψ, ∂_γαφ − ∂_ααψ)`. Refuses algebras that fail
/// either axiom.
pub fn differential(l: &HomLeibnizAlgebra, c: &AlphaTypeCochain) -> Result<AlphaTypeCochain> {
    l.require_validated()?;
    differential_unchecked(l, c)
}

/// [`differential`] without re-validating `l`.
pub(crate) fn differential_unchecked(
    l: &HomLeibnizAlgebra,
    c: &AlphaTypeCochain,
) -> Result<AlphaTypeCochain> {
    let phi = c.gamma_part();
    let mut gamma = d_gamma_gamma(l, phi)?;
    let mut alpha = d_gamma_alpha(l, phi)?;
    if let Some(psi) = c.alpha_part() {
        gamma.add_assign_scaled(&d_alpha_gamma(l, psi)?, &-Rational::one());
        alpha.add_assign_scaled(&d_alpha_alpha(l, psi)?, &-Rational::one());
    }
    AlphaTypeCochain::new(gamma, Some(alpha))
}

/// `α∘φ = φ∘α^{⊗n}`.
pub fn is_alpha_compatible(l: &HomLeibnizAlgebra, phi: &GammaCochain) -> bool {
    d_gamma_alpha(l, phi).is_ok_and(|c| c.is_zero())
}

/// The coboundary `δ` of the α-compatible subcomplex, computed by direct
/// evaluation of its defining sum on basis tuples (independent of the
/// tensor route behind [`d_gamma_gamma`]).
pub fn cheng_cai_delta(l: &HomLeibnizAlgebra, phi: &GammaCochain) -> Result<GammaCochain> {
    check_dim(l, phi)?;
    if !is_alpha_compatible(l, phi) {
        return Err(Error::IncompatibleCochain { arity: phi.arity() });
    }
    let d = l.dim();
    let n = phi.arity();
    let basis: Vec<Vec<Rational>> = (0..d).map(|i| crate::algebra::basis_vector(d, i)).collect();
    let mut out = GammaCochain::zero(d, n + 1);
    let mut tuple = vec![0usize; n + 1];
    let count = d.pow(n as u32 + 1);
    for _ in 0..count {
        let x: Vec<&Vec<Rational>> = tuple.iter().map(|&t| &basis[t]).collect();
        let mut acc = vec![Rational::zero(); d];
        let mut add = |v: Vec<Rational>, s: &Rational| {
            for (a, b) in acc.iter_mut().zip(v) {
                *a += b * s;
            }
        };
        let owned = |xs: &[&Vec<Rational>]| xs.iter().map(|v| (*v).clone()).collect::<Vec<_>>();

        let first = l.alpha_power_eval(n - 1, x[0])?;
        add(
            l.bracket_eval(&first, &phi.eval(&owned(&x[1..]))?)?,
            &int(1),
        );

        for i in 2..=n + 1 {
            let rest: Vec<&Vec<Rational>> = (0..=n).filter(|&s| s != i - 1).map(|s| x[s]).collect();
            let v = phi.eval(&owned(&rest))?;
            let w = l.alpha_power_eval(n - 1, x[i - 1])?;
            add(l.bracket_eval(&v, &w)?, &sign(i));
        }

        for i in 1..=n + 1 {
            for j in i + 1..=n + 1 {
                let mut args = Vec::with_capacity(n);
                for k in 1..=n + 1 {
                    if k == j {
                        continue;
                    }
                    if k == i {
                        args.push(l.bracket_eval(x[i - 1], x[j - 1])?);
                    } else {
                        args.push(l.alpha_power_eval(1, x[k - 1])?);
                    }
                }
                add(phi.eval(&args)?, &sign(j + 1));
            }
        }

        for (k, v) in acc.into_iter().enumerate() {
            if !v.is_zero() {
                out.set(k, &tuple, v);
            }
        }
        // advance the row-major multi-index
        for s in (0..=n).rev() {
            tuple[s] += 1;
            if tuple[s] < d {
                break;
            }
            tuple[s] = 0;
        }
    }
    Ok(out)
}
