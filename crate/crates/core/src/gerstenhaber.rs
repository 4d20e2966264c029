//! Circle product and Gerstenhaber bracket on shifted, α-compatible cochains.
//!
//! `CH^p` consists of `(p+1)`-linear maps `φ` with `α∘φ = φ∘α^{⊗p+1}`. For
//! `ψ ∈ CH^q`, `φ ∈ CH^p`:
//!
//! ```text
//! ψ∘φ(x₁,…,x_{p+q+1}) = Σ_{k=1}^{q+1} (−1)^{p(k−1)} Σ_{σ ∈ Sh(p, q−k+1)} sgn σ ·
//!     ψ(α^p x₁,…,α^p x_{k−1}, φ(x_k, x_{σ(k+1)},…,x_{σ(k+p)}), α^p x_{σ(k+p+1)},…)
//! ```
//!
//! with `σ` permuting the window `{k+1,…,p+q+1}`. At `p = q = 1` this is
//! minus the α-associator `ψ(αx₁, φ(x₂,x₃)) − ψ(φ(x₁,x₂), αx₃) + ψ(φ(x₁,x₃), αx₂)`.

use itertools::Itertools;

use crate::algebra::HomLeibnizAlgebra;
use crate::cochain::{d_gamma_gamma, is_alpha_compatible, GammaCochain};
use crate::error::{Error, Result};
use crate::linalg::{int, Matrix, Rational};

/// An element of `CH^p`: an α-compatible map of arity `p + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShiftedCochain {
    map: GammaCochain,
}

impl ShiftedCochain {
    /// Wraps `map`, checking compatibility with the structure map of `l`.
    pub fn new(l: &HomLeibnizAlgebra, map: GammaCochain) -> Result<Self> {
        if map.arity() == 0 {
            return Err(Error::ArityOutOfRange {
                arity: 0,
                reason: "CH^{-1} is not represented",
            });
        }
        if map.dim() != l.dim() {
            return Err(Error::DimensionMismatch {
                expected: l.dim(),
                found: map.dim(),
            });
        }
        if !is_alpha_compatible(l, &map) {
            return Err(Error::IncompatibleCochain { arity: map.arity() });
        }
        Ok(Self { map })
    }

    /// The bracket `m₀ ∈ CH¹` of a multiplicative algebra.
    pub fn bracket_of(l: &HomLeibnizAlgebra) -> Result<Self> {
        Self::new(l, GammaCochain::bracket_of(l))
    }

    pub fn zero(dim: usize, ch_degree: usize) -> Self {
        Self {
            map: GammaCochain::zero(dim, ch_degree + 1),
        }
    }

    /// The degree `p`.
    pub fn ch_degree(&self) -> usize {
        self.map.arity() - 1
    }

    /// `|φ| = p + 1`.
    pub fn parity_degree(&self) -> usize {
        self.map.arity()
    }

    pub fn map(&self) -> &GammaCochain {
        &self.map
    }

    pub fn into_map(self) -> GammaCochain {
        self.map
    }

    pub fn is_zero(&self) -> bool {
        self.map.is_zero()
    }

    pub fn add(&self, other: &ShiftedCochain) -> Result<ShiftedCochain> {
        Ok(Self {
            map: self.map.add(&other.map)?,
        })
    }

    pub fn sub(&self, other: &ShiftedCochain) -> Result<ShiftedCochain> {
        Ok(Self {
            map: self.map.sub(&other.map)?,
        })
    }

    pub fn scale(&self, s: &Rational) -> ShiftedCochain {
        Self {
            map: self.map.scale(s),
        }
    }
}

/// A `(p, q)`-shuffle and its sign.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedShuffle {
    /// `permutation[i] = σ(i+1) − 1`: the first `p` entries feed the first
    /// block, the remaining `q` the second.
    pub permutation: Vec<usize>,
    pub sign: i8,
}

/// All `(p, q)`-shuffles in lexicographic order of their first block.
pub fn shuffles(p: usize, q: usize) -> Vec<SignedShuffle> {
    let n = p + q;
    (0..n)
        .combinations(p)
        .map(|first| {
            let second = (0..n).filter(|i| !first.contains(i));
            let permutation: Vec<usize> = first.iter().copied().chain(second).collect();
            let inversions = permutation
                .iter()
                .tuple_combinations()
                .filter(|(a, b)| a > b)
                .count();
            SignedShuffle {
                permutation,
                sign: if inversions % 2 == 0 { 1 } else { -1 },
            }
        })
        .collect()
}

/// The circle product with an arbitrary twist `t` in place of `α^p`:
/// `ψ` of arity `q + 1`, `φ` of arity `p + 1`.
pub fn circle_with(psi: &GammaCochain, phi: &GammaCochain, twist: &Matrix) -> GammaCochain {
    assert_eq!(psi.dim(), phi.dim(), "dimension mismatch");
    let q = psi.arity() - 1;
    let p = phi.arity() - 1;
    let n = p + q + 1;
    let mut out = GammaCochain::zero(psi.dim(), n);
    for k in 1..=q + 1 {
        // ψ(t y₁,…,t y_{k−1}, φ(y_k,…,y_{k+p}), t y_{k+p+1},…)
        let outer = (0..=q)
            .filter(|&s| s != k - 1)
            .fold(psi.clone(), |acc, s| acc.precompose_slot(s, twist));
        let plugged = outer.substitute(k - 1, phi);
        let outer_sign = if (p * (k - 1)).is_multiple_of(2) {
            1
        } else {
            -1
        };
        for sh in shuffles(p, q + 1 - k) {
            let mut perm: Vec<usize> = (0..k).collect();
            perm.extend(sh.permutation.iter().map(|&w| k + w));
            let s = int(i64::from(outer_sign * sh.sign));
            out.add_assign_scaled(&plugged.permute_args(&perm), &s);
        }
    }
    out
}

fn check_pair(l: &HomLeibnizAlgebra, a: &ShiftedCochain, b: &ShiftedCochain) -> Result<()> {
    for c in [a, b] {
        if c.map.dim() != l.dim() {
            return Err(Error::DimensionMismatch {
                expected: l.dim(),
                found: c.map.dim(),
            });
        }
    }
    Ok(())
}

fn checked(l: &HomLeibnizAlgebra, map: GammaCochain) -> Result<ShiftedCochain> {
    if !is_alpha_compatible(l, &map) {
        return Err(Error::IncompatibleCochain { arity: map.arity() });
    }
    Ok(ShiftedCochain { map })
}

/// `ψ∘φ ∈ CH^{p+q}`.
pub fn circle(
    psi: &ShiftedCochain,
    phi: &ShiftedCochain,
    l: &HomLeibnizAlgebra,
) -> Result<ShiftedCochain> {
    check_pair(l, psi, phi)?;
    let twist = l.alpha().pow(phi.ch_degree());
    checked(l, circle_with(&psi.map, &phi.map, &twist))
}

/// `[ψ, φ] = ψ∘φ + (−1)^{pq+1} φ∘ψ`.
pub fn bracket(
    psi: &ShiftedCochain,
    phi: &ShiftedCochain,
    l: &HomLeibnizAlgebra,
) -> Result<ShiftedCochain> {
    check_pair(l, psi, phi)?;
    let (q, p) = (psi.ch_degree(), phi.ch_degree());
    let a = circle_with(&psi.map, &phi.map, &l.alpha().pow(p));
    let b = circle_with(&phi.map, &psi.map, &l.alpha().pow(q));
    let map = if (p * q + 1) % 2 == 0 {
        a.add(&b)?
    } else {
        a.sub(&b)?
    };
    checked(l, map)
}

/// `d φ = (−1)^{p+1} δφ` with `δ = ∂_γγ`.
pub fn d_graded(phi: &ShiftedCochain, l: &HomLeibnizAlgebra) -> Result<ShiftedCochain> {
    let delta = d_gamma_gamma(l, &phi.map)?;
    let map = if phi.ch_degree().is_multiple_of(2) {
        delta.neg()
    } else {
        delta
    };
    checked(l, map)
}
