//! Independent oracles and generators shared by the integration tests.
//!
//! The oracles work on raw structure constants and flat coefficient arrays
//! and never call the tensor primitives of the library.

#![allow(dead_code)]

use homleib::linalg::{int, Matrix, Rational};
use homleib::{AlphaTypeCochain, GammaCochain, HomLeibnizAlgebra};
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A small rational: mostly integers in `[-2, 2]`, sometimes halves.
pub fn small_rational(r: &mut ChaCha8Rng) -> Rational {
    let n = r.gen_range(-2i64..=2);
    if r.gen_bool(0.2) {
        Rational::new(BigInt::from(n), BigInt::from(2))
    } else {
        int(n)
    }
}

/// A vector with roughly `density` of its entries nonzero.
pub fn random_vector(r: &mut ChaCha8Rng, len: usize, density: f64) -> Vec<Rational> {
    (0..len)
        .map(|_| {
            if r.gen_bool(density) {
                small_rational(r)
            } else {
                Rational::zero()
            }
        })
        .collect()
}

pub fn random_gamma(r: &mut ChaCha8Rng, dim: usize, arity: usize) -> GammaCochain {
    let len = GammaCochain::len_for(dim, arity);
    GammaCochain::from_coeffs(dim, arity, random_vector(r, len, 0.5)).unwrap()
}

pub fn random_cochain(r: &mut ChaCha8Rng, dim: usize, degree: usize) -> AlphaTypeCochain {
    let len = AlphaTypeCochain::ambient_dim(dim, degree);
    AlphaTypeCochain::from_flat(dim, degree, &random_vector(r, len, 0.5)).unwrap()
}

/// A random combination of the columns of `basis`.
pub fn random_combination(r: &mut ChaCha8Rng, basis: &Matrix) -> Vec<Rational> {
    let coeffs: Vec<Rational> = (0..basis.cols()).map(|_| small_rational(r)).collect();
    basis.mul_vec(&coeffs).unwrap()
}

pub fn random_matrix(r: &mut ChaCha8Rng, dim: usize) -> Matrix {
    Matrix::from_entries(dim, dim, random_vector(r, dim * dim, 0.5)).unwrap()
}

// ---------------------------------------------------------------------------
// Sparse vectors and direct evaluation.

type Sparse = Vec<(usize, Rational)>;

fn sparse(v: &[Rational]) -> Sparse {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

fn unit(i: usize) -> Sparse {
    vec![(i, Rational::one())]
}

fn bracket(l: &HomLeibnizAlgebra, x: &Sparse, y: &Sparse) -> Sparse {
    let d = l.dim();
    let mut out = vec![Rational::zero(); d];
    for (i, a) in x {
        for (j, b) in y {
            let ab = a * b;
            for (k, o) in out.iter_mut().enumerate() {
                let c = l.structure_constant(*i, *j, k);
                if !c.is_zero() {
                    *o += &ab * c;
                }
            }
        }
    }
    sparse(&out)
}

fn apply(m: &Matrix, x: &Sparse) -> Sparse {
    let mut out = vec![Rational::zero(); m.rows()];
    for (j, a) in x {
        for (k, o) in out.iter_mut().enumerate() {
            let c = m.get(k, *j);
            if !c.is_zero() {
                *o += a * c;
            }
        }
    }
    sparse(&out)
}

fn combine(d: usize, terms: &[(Rational, Sparse)]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); d];
    for (s, v) in terms {
        for (i, x) in v {
            out[*i] += s * x;
        }
    }
    out
}

/// `φ(args)` by multilinear expansion over the nonzero coordinates of the
/// arguments; `coeffs` uses the library's documented flattening.
fn eval(d: usize, coeffs: &[Rational], args: &[Sparse]) -> Sparse {
    let m = args.len();
    let block = d.pow(m as u32);
    let mut out = vec![Rational::zero(); d];
    let mut stack: Vec<(usize, usize, Rational)> = vec![(0, 0, Rational::one())];
    while let Some((slot, offset, weight)) = stack.pop() {
        if slot == m {
            for (k, o) in out.iter_mut().enumerate() {
                let c = &coeffs[k * block + offset];
                if !c.is_zero() {
                    *o += &weight * c;
                }
            }
            continue;
        }
        for (i, a) in &args[slot] {
            stack.push((slot + 1, offset * d + i, &weight * a));
        }
    }
    sparse(&out)
}

fn tuples(d: usize, m: usize) -> Vec<Vec<usize>> {
    let count = d.pow(m as u32);
    (0..count)
        .map(|mut t| {
            let mut v = vec![0; m];
            for s in (0..m).rev() {
                v[s] = t % d;
                t /= d;
            }
            v
        })
        .collect()
}

/// Tabulates `f` on all basis tuples into a flat coefficient array.
fn tabulate(d: usize, m: usize, f: impl Fn(&[usize]) -> Vec<Rational>) -> Vec<Rational> {
    let block = d.pow(m as u32);
    let mut out = vec![Rational::zero(); d * block];
    for (pos, t) in tuples(d, m).iter().enumerate() {
        for (k, v) in f(t).into_iter().enumerate() {
            out[k * block + pos] = v;
        }
    }
    out
}

fn sign(e: usize) -> Rational {
    if e.is_multiple_of(2) {
        int(1)
    } else {
        int(-1)
    }
}

/// The Hom-Leibniz coboundary shape with twist `α^p` in the two outer
/// blocks, evaluated term by term.
fn coboundary_shape(l: &HomLeibnizAlgebra, phi: &[Rational], m: usize, p: usize) -> Vec<Rational> {
    let d = l.dim();
    let ap = l.alpha().pow(p);
    let a = l.alpha();
    tabulate(d, m + 1, |t| {
        let x: Vec<Sparse> = t.iter().map(|&i| unit(i)).collect();
        let mut terms = Vec::new();
        terms.push((
            int(1),
            bracket(l, &apply(&ap, &x[0]), &eval(d, phi, &x[1..])),
        ));
        for i in 2..=m + 1 {
            let rest: Vec<Sparse> = (1..=m + 1)
                .filter(|&s| s != i)
                .map(|s| x[s - 1].clone())
                .collect();
            terms.push((
                sign(i),
                bracket(l, &eval(d, phi, &rest), &apply(&ap, &x[i - 1])),
            ));
        }
        for i in 1..=m + 1 {
            for j in i + 1..=m + 1 {
                let args: Vec<Sparse> = (1..=m + 1)
                    .filter(|&s| s != j)
                    .map(|s| {
                        if s == i {
                            bracket(l, &x[i - 1], &x[j - 1])
                        } else {
                            apply(a, &x[s - 1])
                        }
                    })
                    .collect();
                terms.push((sign(j + 1), eval(d, phi, &args)));
            }
        }
        combine(d, &terms)
    })
}

pub fn oracle_d_gamma_gamma(
    l: &HomLeibnizAlgebra,
    phi: &[Rational],
    arity: usize,
) -> Vec<Rational> {
    coboundary_shape(l, phi, arity, arity - 1)
}

pub fn oracle_d_alpha_alpha(
    l: &HomLeibnizAlgebra,
    psi: &[Rational],
    arity: usize,
) -> Vec<Rational> {
    coboundary_shape(l, psi, arity, arity)
}

pub fn oracle_d_gamma_alpha(
    l: &HomLeibnizAlgebra,
    phi: &[Rational],
    arity: usize,
) -> Vec<Rational> {
    let d = l.dim();
    let a = l.alpha();
    tabulate(d, arity, |t| {
        let x: Vec<Sparse> = t.iter().map(|&i| unit(i)).collect();
        let ax: Vec<Sparse> = x.iter().map(|v| apply(a, v)).collect();
        combine(
            d,
            &[
                (int(1), apply(a, &eval(d, phi, &x))),
                (int(-1), eval(d, phi, &ax)),
            ],
        )
    })
}

/// `∂_αγ ψ` for `ψ` of arity `r`: output arity `r + 2`, twist `α^{r−1}`.
pub fn oracle_d_alpha_gamma(l: &HomLeibnizAlgebra, psi: &[Rational], r: usize) -> Vec<Rational> {
    let d = l.dim();
    let n = r + 1;
    let ap = l.alpha().pow(n - 2);
    tabulate(d, n + 1, |t| {
        let x: Vec<Sparse> = t.iter().map(|&i| unit(i)).collect();
        let tw: Vec<Sparse> = x.iter().map(|v| apply(&ap, v)).collect();
        let mut terms = Vec::new();
        for i in 2..=n + 1 {
            let rest: Vec<Sparse> = (2..=n + 1)
                .filter(|&s| s != i)
                .map(|s| x[s - 1].clone())
                .collect();
            let inner = bracket(l, &tw[0], &tw[i - 1]);
            terms.push((sign(i), bracket(l, &inner, &eval(d, psi, &rest))));
        }
        for i in 2..=n + 1 {
            for j in i + 1..=n + 1 {
                let rest: Vec<Sparse> = (1..=n + 1)
                    .filter(|&s| s != i && s != j)
                    .map(|s| x[s - 1].clone())
                    .collect();
                let inner = bracket(l, &tw[i - 1], &tw[j - 1]);
                terms.push((sign(i + j), bracket(l, &eval(d, psi, &rest), &inner)));
            }
        }
        combine(d, &terms)
    })
}

fn add_scaled(a: &mut [Rational], b: &[Rational], s: i64) {
    let s = int(s);
    for (x, y) in a.iter_mut().zip(b) {
        *x += y * &s;
    }
}

/// `∂(φ, ψ)` on a flattened degree-`n` cochain, returned flattened.
pub fn oracle_differential(l: &HomLeibnizAlgebra, n: usize, flat: &[Rational]) -> Vec<Rational> {
    let d = l.dim();
    let g_len = d.pow(n as u32 + 1);
    let (phi, psi) = flat.split_at(g_len);
    let mut gamma = oracle_d_gamma_gamma(l, phi, n);
    let mut alpha = oracle_d_gamma_alpha(l, phi, n);
    if n >= 2 {
        add_scaled(&mut gamma, &oracle_d_alpha_gamma(l, psi, n - 1), -1);
        add_scaled(&mut alpha, &oracle_d_alpha_alpha(l, psi, n - 1), -1);
    }
    gamma.extend(alpha);
    gamma
}

/// The differential matrix `C̃Lⁿ → C̃Lⁿ⁺¹` assembled from the oracle.
pub fn oracle_differential_matrix(l: &HomLeibnizAlgebra, n: usize) -> Matrix {
    let d = l.dim();
    let len = AlphaTypeCochain::ambient_dim(d, n);
    let cols: Vec<Vec<Rational>> = (0..len)
        .map(|idx| {
            let mut e = vec![Rational::zero(); len];
            e[idx] = Rational::one();
            oracle_differential(l, n, &e)
        })
        .collect();
    Matrix::from_columns(AlphaTypeCochain::ambient_dim(d, n + 1), &cols).unwrap()
}

// ---------------------------------------------------------------------------
// Classical Leibniz cohomology (α = Id).

/// The Loday–Pirashvili coboundary of a right Leibniz algebra with adjoint
/// coefficients, as a matrix `Hom(L^{⊗n}, L) → Hom(L^{⊗n+1}, L)`, built
/// entry by entry from structure constants.
///
/// `(df)(x₁,…,x_{n+1}) = [x₁, f(x₂,…)] + Σ_{i≥2} (−1)^i [f(…x̂_i…), x_i]
///   + Σ_{i<j} (−1)^{j+1} f(x₁,…,x_{i−1},[x_i,x_j],x_{i+1},…,x̂_j,…)`.
pub fn loday_pirashvili_matrix(l: &HomLeibnizAlgebra, n: usize) -> Vec<Vec<i64>> {
    let d = l.dim();
    let c = |i: usize, j: usize, k: usize| -> i64 {
        let v = l.structure_constant(i, j, k);
        assert!(v.is_integer(), "integral structure constants expected");
        v.to_integer().to_i64().unwrap()
    };
    let index = |k: usize, t: &[usize]| -> usize { t.iter().fold(k, |acc, &i| acc * d + i) };
    let in_len = d.pow(n as u32 + 1);
    let out_len = d.pow(n as u32 + 2);
    let mut m = vec![vec![0i64; in_len]; out_len];
    for x in tuples(d, n + 1) {
        for k in 0..d {
            let row = index(k, &x);
            // [x₁, f(x₂,…)]: coefficient of f(x₂..)_a is c(x₁, a, k)
            for a in 0..d {
                m[row][index(a, &x[1..])] += c(x[0], a, k);
            }
            for i in 2..=n + 1 {
                let rest: Vec<usize> = (1..=n + 1).filter(|&s| s != i).map(|s| x[s - 1]).collect();
                let s = if i % 2 == 0 { 1 } else { -1 };
                for a in 0..d {
                    m[row][index(a, &rest)] += s * c(a, x[i - 1], k);
                }
            }
            for i in 1..=n + 1 {
                for j in i + 1..=n + 1 {
                    let s = if (j + 1) % 2 == 0 { 1 } else { -1 };
                    for b in 0..d {
                        let w = c(x[i - 1], x[j - 1], b);
                        if w == 0 {
                            continue;
                        }
                        let args: Vec<usize> = (1..=n + 1)
                            .filter(|&t| t != j)
                            .map(|t| if t == i { b } else { x[t - 1] })
                            .collect();
                        m[row][index(k, &args)] += s * w;
                    }
                }
            }
        }
    }
    m
}

/// Classical Leibniz betti numbers `H¹..H^{max}` from integer matrices,
/// ranks taken modulo a large prime.
pub fn classical_betti(l: &HomLeibnizAlgebra, max: usize) -> Vec<usize> {
    let d = l.dim();
    let ranks: Vec<usize> = (1..=max)
        .map(|n| rank_mod_p(&loday_pirashvili_matrix(l, n), 1_000_000_007))
        .collect();
    (1..=max)
        .map(|n| {
            let cochains = d.pow(n as u32 + 1);
            let incoming = if n >= 2 { ranks[n - 2] } else { 0 };
            cochains - ranks[n - 1] - incoming
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Modular rank.

/// Rank of an integer matrix over `𝔽_p`.
pub fn rank_mod_p(m: &[Vec<i64>], p: i64) -> usize {
    let mut a: Vec<Vec<i64>> = m
        .iter()
        .map(|row| row.iter().map(|x| x.rem_euclid(p)).collect())
        .collect();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(rank, piv);
        let inv = pow_mod(a[rank][c], p - 2, p);
        for x in a[rank].iter_mut() {
            *x = (*x * inv) % p;
        }
        for i in 0..rows {
            if i != rank && a[i][c] != 0 {
                let f = a[i][c];
                for k in 0..cols {
                    a[i][k] = (a[i][k] - f * a[rank][k]).rem_euclid(p);
                }
            }
        }
        rank += 1;
    }
    rank
}

fn pow_mod(mut b: i64, mut e: i64, p: i64) -> i64 {
    let mut r = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// A rational matrix with integral entries as `i64` rows.
pub fn integral_rows(m: &Matrix) -> Vec<Vec<i64>> {
    (0..m.rows())
        .map(|i| {
            m.row(i)
                .iter()
                .map(|x| {
                    assert!(x.is_integer(), "integral matrix expected");
                    assert!(x.abs() < int(1 << 40));
                    x.to_integer().to_i64().unwrap()
                })
                .collect()
        })
        .collect()
}

pub const PRIMES: [i64; 2] = [1_000_000_007, 998_244_353];

// ---------------------------------------------------------------------------
// Shifted cochains.

/// Bases of the α-compatible maps of arity `1..=max_arity`, as columns.
pub fn compatible_bases(l: &HomLeibnizAlgebra, max_arity: usize) -> Vec<Matrix> {
    let complex = homleib::cohomology::AlphaComplex::new(l).unwrap();
    (0..=max_arity)
        .map(|n| {
            if n == 0 {
                Matrix::zeros(0, 0)
            } else {
                complex.compatible_basis(n).unwrap()
            }
        })
        .collect()
}

/// A random element of `CH^p`, drawn from `bases[p + 1]`.
pub fn random_shifted(
    r: &mut ChaCha8Rng,
    l: &HomLeibnizAlgebra,
    bases: &[Matrix],
    p: usize,
) -> homleib::gerstenhaber::ShiftedCochain {
    let v = random_combination(r, &bases[p + 1]);
    let map = GammaCochain::from_coeffs(l.dim(), p + 1, v).unwrap();
    homleib::gerstenhaber::ShiftedCochain::new(l, map).unwrap()
}

/// The algebra with bracket `m` and the structure map of `l`.
pub fn with_bracket(l: &HomLeibnizAlgebra, m: &GammaCochain) -> HomLeibnizAlgebra {
    let d = l.dim();
    let mut bracket = vec![Rational::zero(); d * d * d];
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                bracket[(i * d + j) * d + k] = m.get(k, &[i, j]).clone();
            }
        }
    }
    HomLeibnizAlgebra::new(d, bracket, l.alpha().clone()).unwrap()
}

// ---------------------------------------------------------------------------
// Deformations.

use homleib::deformation::{apply_gauge, gauge_from, GaugeTransform, TruncatedDeformation};

pub fn random_gauge(r: &mut ChaCha8Rng, dim: usize, order: usize) -> GaugeTransform {
    let mut jets = vec![Matrix::identity(dim)];
    jets.extend((0..order).map(|_| random_matrix(r, dim)));
    gauge_from(jets).unwrap()
}

/// `Ψ_t⁻¹ ∘ m₀ ∘ (Ψ_t ⊗ Ψ_t)` for a random gauge; nontrivial unless every
/// gauge fixes the trivial deformation (abelian with `α = Id`).
pub fn gauge_image_of_trivial(
    r: &mut ChaCha8Rng,
    l: &HomLeibnizAlgebra,
    order: usize,
) -> TruncatedDeformation {
    let trivial = TruncatedDeformation::trivial(l, order);
    let mut d = trivial.clone();
    for _ in 0..20 {
        d = apply_gauge(&trivial, &random_gauge(r, l.dim(), order)).unwrap();
        if !d.is_trivial() {
            break;
        }
    }
    d
}

/// An order-1 deformation whose jet is a random nonzero 2-cocycle.
pub fn cocycle_seeded(r: &mut ChaCha8Rng, l: &HomLeibnizAlgebra) -> TruncatedDeformation {
    let complex = homleib::cohomology::AlphaComplex::with_max_degree(l, 2).unwrap();
    let z = complex.cohomology(2).unwrap();
    assert!(!z.cocycle_basis.is_empty(), "no 2-cocycles");
    let cols: Vec<Vec<Rational>> = z.cocycle_basis.iter().map(|c| c.flatten()).collect();
    let basis = Matrix::from_columns(AlphaTypeCochain::ambient_dim(l.dim(), 2), &cols).unwrap();
    loop {
        let v = random_combination(r, &basis);
        if v.iter().all(Zero::is_zero) {
            continue;
        }
        let c = AlphaTypeCochain::from_flat(l.dim(), 2, &v).unwrap();
        return TruncatedDeformation::from_first_order(l, &c).unwrap();
    }
}

// ---------------------------------------------------------------------------
// Axioms.

/// `[e_a, e_b]` read straight from the structure constants.
fn structure_column(l: &HomLeibnizAlgebra, a: usize, b: usize) -> Vec<Rational> {
    let d = l.dim();
    let c = l.structure_constants();
    (0..d).map(|k| c[(a * d + b) * d + k].clone()).collect()
}

fn bracket_dense(l: &HomLeibnizAlgebra, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
    let d = l.dim();
    let mut out = vec![Rational::zero(); d];
    for (i, xi) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
        for (j, yj) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (o, c) in out.iter_mut().zip(structure_column(l, i, j)) {
                *o += xi * yj * c;
            }
        }
    }
    out
}

fn alpha_column(l: &HomLeibnizAlgebra, j: usize) -> Vec<Rational> {
    let d = l.dim();
    (0..d).map(|k| l.alpha().get(k, j).clone()).collect()
}

pub fn apply_alpha(l: &HomLeibnizAlgebra, x: &[Rational]) -> Vec<Rational> {
    let d = l.dim();
    let mut out = vec![Rational::zero(); d];
    for (j, xj) in x.iter().enumerate() {
        for (o, a) in out.iter_mut().zip(alpha_column(l, j)) {
            *o += xj * a;
        }
    }
    out
}

/// Every failing basis triple of the Hom-Leibniz identity.
pub fn oracle_hom_leibniz(
    l: &HomLeibnizAlgebra,
) -> Vec<(Vec<usize>, Vec<Rational>, Vec<Rational>)> {
    let d = l.dim();
    let mut out = Vec::new();
    for a in 0..d {
        for b in 0..d {
            for c in 0..d {
                let lhs = bracket_dense(l, &alpha_column(l, a), &structure_column(l, b, c));
                let r1 = bracket_dense(l, &structure_column(l, a, b), &alpha_column(l, c));
                let r2 = bracket_dense(l, &structure_column(l, a, c), &alpha_column(l, b));
                let rhs: Vec<Rational> = r1.iter().zip(&r2).map(|(p, q)| p - q).collect();
                if lhs != rhs {
                    out.push((vec![a, b, c], lhs, rhs));
                }
            }
        }
    }
    out
}

/// Every failing basis pair of multiplicativity.
pub fn oracle_multiplicative(
    l: &HomLeibnizAlgebra,
) -> Vec<(Vec<usize>, Vec<Rational>, Vec<Rational>)> {
    let d = l.dim();
    let mut out = Vec::new();
    for a in 0..d {
        for b in 0..d {
            let lhs = apply_alpha(l, &structure_column(l, a, b));
            let rhs = bracket_dense(l, &alpha_column(l, a), &alpha_column(l, b));
            if lhs != rhs {
                out.push((vec![a, b], lhs, rhs));
            }
        }
    }
    out
}
