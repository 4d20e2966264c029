//! Finite group actions by automorphisms and the invariant subcomplex.
//!
//! A group acts on cochains by `(g·c)(x₁,…,x_n) = g·c(g⁻¹x₁,…,g⁻¹x_n)`, so a
//! cochain is invariant iff `g·c = c` for every `g`.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::algebra::{basis_vector, HomLeibnizAlgebra, ValidationReport, Violation};
use crate::cochain::{AlphaTypeCochain, GammaCochain};
use crate::cohomology::{subcomplex_report, AlphaComplex, CohomologyReport, DEFAULT_MAX_DEGREE};
use crate::deformation::{
    extend_using, obstruction, reduce_using, Extension, ObstructionClass, RigidityReport,
    TruncatedDeformation,
};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Rational};

/// A finite group given by its multiplication table:
/// `mult_table[a][b]` is the index of `a·b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    mult_table: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
}

impl FiniteGroup {
    /// Checks closure, associativity, identity and inverses.
    pub fn from_table(mult_table: Vec<Vec<usize>>) -> Result<Self> {
        let n = mult_table.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty table".into()));
        }
        for row in &mult_table {
            if row.len() != n {
                return Err(Error::InvalidGroup("table is not square".into()));
            }
            if row.iter().any(|&x| x >= n) {
                return Err(Error::InvalidGroup("entry out of range".into()));
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| mult_table[e][a] == a && mult_table[a][e] == a))
            .ok_or_else(|| Error::InvalidGroup("no identity element".into()))?;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if mult_table[mult_table[a][b]][c] != mult_table[a][mult_table[b][c]] {
                        return Err(Error::InvalidGroup(format!(
                            "not associative on ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        let inverse = (0..n)
            .map(|a| {
                (0..n)
                    .find(|&b| mult_table[a][b] == identity && mult_table[b][a] == identity)
                    .ok_or_else(|| Error::InvalidGroup(format!("element {a} has no inverse")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            mult_table,
            identity,
            inverse,
        })
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    /// `ℤ/n` with element `k` the class of `k`.
    pub fn cyclic(n: usize) -> Self {
        let table = (0..n)
            .map(|a| (0..n).map(|b| (a + b) % n).collect())
            .collect();
        Self::from_table(table).expect("cyclic group table")
    }

    /// `S₃` as permutations of `{0,1,2}` in lexicographic order, with
    /// `(σ·τ)(i) = σ(τ(i))`.
    pub fn symmetric3() -> Self {
        let perms: Vec<[usize; 3]> = vec![
            [0, 1, 2],
            [0, 2, 1],
            [1, 0, 2],
            [1, 2, 0],
            [2, 0, 1],
            [2, 1, 0],
        ];
        let table = perms
            .iter()
            .map(|s| {
                perms
                    .iter()
                    .map(|t| {
                        let st = [s[t[0]], s[t[1]], s[t[2]]];
                        perms.iter().position(|p| *p == st).expect("closed")
                    })
                    .collect()
            })
            .collect();
        Self::from_table(table).expect("S3 table")
    }

    pub fn order(&self) -> usize {
        self.mult_table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn inverse(&self, g: usize) -> usize {
        self.inverse[g]
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mult_table[a][b]
    }

    pub fn mult_table(&self) -> &[Vec<usize>] {
        &self.mult_table
    }
}

/// A representation `ρ : G → GL(L)`; the action axioms are checked by
/// [`verify_action`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupAction {
    group: FiniteGroup,
    reps: Vec<Matrix>,
}

impl GroupAction {
    pub fn new(group: FiniteGroup, reps: Vec<Matrix>) -> Result<Self> {
        if reps.len() != group.order() {
            return Err(Error::InvalidAction(format!(
                "{} matrices for a group of order {}",
                reps.len(),
                group.order()
            )));
        }
        let d = reps[0].rows();
        if reps.iter().any(|m| m.rows() != d || m.cols() != d) {
            return Err(Error::InvalidAction(
                "matrices must share one square shape".into(),
            ));
        }
        Ok(Self { group, reps })
    }

    /// Every element acts as the identity.
    pub fn trivial_on(group: FiniteGroup, dim: usize) -> Self {
        let reps = vec![Matrix::identity(dim); group.order()];
        Self { group, reps }
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn reps(&self) -> &[Matrix] {
        &self.reps
    }

    pub fn rep(&self, g: usize) -> &Matrix {
        &self.reps[g]
    }

    pub fn dim(&self) -> usize {
        self.reps[0].rows()
    }
}

/// Checks `ρ(e) = Id`, `ρ(g₁g₂) = ρ(g₁)ρ(g₂)`, `ρ(g)[x,y] = [ρ(g)x, ρ(g)y]`
/// and `α∘ρ(g) = ρ(g)∘α` on basis elements.
pub fn verify_action(l: &HomLeibnizAlgebra, a: &GroupAction) -> ValidationReport {
    let d = l.dim();
    if a.dim() != d {
        return ValidationReport::from_violations(vec![Violation {
            law: format!(
                "shape: representation of dimension {} on a {d}-dimensional algebra",
                a.dim()
            ),
            indices: vec![],
            lhs: vec![],
            rhs: vec![],
        }]);
    }
    let g = &a.group;
    let mut violations = Vec::new();
    let id = Matrix::identity(d);
    let e = a.rep(g.identity());
    for j in 0..d {
        if e.column(j) != id.column(j) {
            violations.push(Violation {
                law: "identity acts trivially".into(),
                indices: vec![j],
                lhs: e.column(j),
                rhs: id.column(j),
            });
        }
    }
    for g1 in 0..g.order() {
        for g2 in 0..g.order() {
            let lhs_m = a.rep(g.mul(g1, g2));
            let rhs_m = a.rep(g1).mul(a.rep(g2)).expect("square");
            for j in 0..d {
                if lhs_m.column(j) != rhs_m.column(j) {
                    violations.push(Violation {
                        law: "homomorphism".into(),
                        indices: vec![g1, g2, j],
                        lhs: lhs_m.column(j),
                        rhs: rhs_m.column(j),
                    });
                }
            }
        }
    }
    for h in 0..g.order() {
        let r = a.rep(h);
        let cols: Vec<Vec<Rational>> = (0..d).map(|j| r.column(j)).collect();
        for x in 0..d {
            for y in 0..d {
                let lhs = r.mul_vec(l.basis_bracket(x, y)).expect("dim");
                let rhs = l.bracket_eval(&cols[x], &cols[y]).expect("dim");
                if lhs != rhs {
                    violations.push(Violation {
                        law: "bracket equivariance".into(),
                        indices: vec![h, x, y],
                        lhs,
                        rhs,
                    });
                }
            }
        }
        for j in 0..d {
            let ej = basis_vector(d, j);
            let lhs = l
                .alpha()
                .mul_vec(&r.mul_vec(&ej).expect("dim"))
                .expect("dim");
            let rhs = r
                .mul_vec(&l.alpha().mul_vec(&ej).expect("dim"))
                .expect("dim");
            if lhs != rhs {
                violations.push(Violation {
                    law: "structure-map equivariance".into(),
                    indices: vec![h, j],
                    lhs,
                    rhs,
                });
            }
        }
    }
    ValidationReport::from_violations(violations)
}

fn act_gamma(a: &GroupAction, g: usize, c: &GammaCochain) -> GammaCochain {
    let inv = a.rep(a.group.inverse(g));
    c.precompose_all(inv).postcompose(a.rep(g))
}

/// `g·c`, acting on both parts.
pub fn cochain_action(a: &GroupAction, g: usize, c: &AlphaTypeCochain) -> Result<AlphaTypeCochain> {
    if c.dim() != a.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: c.dim(),
        });
    }
    if g >= a.group.order() {
        return Err(Error::InvalidAction(format!("no group element {g}")));
    }
    AlphaTypeCochain::new(
        act_gamma(a, g, c.gamma_part()),
        c.alpha_part().map(|p| act_gamma(a, g, p)),
    )
}

/// `(1/|G|) Σ_g g·c`.
pub fn reynolds(a: &GroupAction, c: &AlphaTypeCochain) -> Result<AlphaTypeCochain> {
    let mut acc = AlphaTypeCochain::zero(c.dim(), c.degree());
    for g in 0..a.group.order() {
        acc = acc.add(&cochain_action(a, g, c)?)?;
    }
    let n = Rational::from_integer(BigInt::from(a.group.order()));
    Ok(acc.scale(&n.recip()))
}

/// Whether `g·c = c` for every group element.
pub fn is_invariant(a: &GroupAction, c: &AlphaTypeCochain) -> Result<bool> {
    for g in 0..a.group.order() {
        if cochain_action(a, g, c)? != *c {
            return Ok(false);
        }
    }
    Ok(true)
}

fn is_invariant_gamma(a: &GroupAction, c: &GammaCochain) -> bool {
    (0..a.group.order()).all(|g| act_gamma(a, g, c) == *c)
}

/// Invariant cochains of one degree, with the differential restricted to
/// them.
#[derive(Debug, Clone)]
pub struct InvariantSubcomplexSlice {
    pub degree: usize,
    /// Columns: a basis of the invariant cochains, in ambient coordinates.
    pub basis: Matrix,
    /// `∂` in the invariant bases of degrees `n` and `n + 1`.
    pub restricted_differential: Matrix,
}

/// The invariant subcomplex of a verified action.
#[derive(Debug)]
pub struct EquivariantComplex {
    complex: AlphaComplex,
    action: GroupAction,
    bases: Vec<OnceLock<Matrix>>,
}

impl EquivariantComplex {
    pub fn new(l: &HomLeibnizAlgebra, a: &GroupAction) -> Result<Self> {
        Self::with_max_degree(l, a, DEFAULT_MAX_DEGREE)
    }

    pub fn with_max_degree(
        l: &HomLeibnizAlgebra,
        a: &GroupAction,
        max_degree: usize,
    ) -> Result<Self> {
        let complex = AlphaComplex::with_max_degree(l, max_degree)?;
        let report = verify_action(l, a);
        if let Some(v) = report.violations.first() {
            return Err(Error::InvalidAction(format!(
                "{} fails at {:?}",
                v.law, v.indices
            )));
        }
        Ok(Self {
            complex,
            action: a.clone(),
            bases: (0..=max_degree + 1).map(|_| OnceLock::new()).collect(),
        })
    }

    pub fn complex(&self) -> &AlphaComplex {
        &self.complex
    }

    pub fn action(&self) -> &GroupAction {
        &self.action
    }

    fn check_degree(&self, n: usize) -> Result<()> {
        if n == 0 || n > self.complex.max_degree() {
            return Err(Error::DegreeOutOfRange {
                degree: n,
                max: self.complex.max_degree(),
            });
        }
        Ok(())
    }

    /// Matrix of `c ↦ g·c` on `C̃Lⁿ`.
    pub fn action_matrix(&self, g: usize, n: usize) -> Matrix {
        let d = self.complex.algebra().dim();
        let dim = AlphaTypeCochain::ambient_dim(d, n);
        let cols: Vec<Vec<Rational>> = (0..dim)
            .map(|idx| {
                cochain_action(&self.action, g, &AlphaTypeCochain::basis(d, n, idx))
                    .expect("shape")
                    .flatten()
            })
            .collect();
        Matrix::from_columns(dim, &cols).expect("lengths")
    }

    /// Basis of `C̃Lⁿ_G` as columns: the common kernel of `ρₙ(g) − Id` over
    /// all group elements. Defined up to `max_degree + 1`.
    pub fn invariant_basis(&self, n: usize) -> Result<&Matrix> {
        if n == 0 || n > self.complex.max_degree() + 1 {
            return Err(Error::DegreeOutOfRange {
                degree: n,
                max: self.complex.max_degree() + 1,
            });
        }
        Ok(self.bases[n].get_or_init(|| {
            let dim = self.complex.cochain_dim(n);
            let id = Matrix::identity(dim);
            let mut stacked = Matrix::zeros(0, dim);
            for g in 0..self.action.group.order() {
                if g == self.action.group.identity() {
                    continue;
                }
                let m = self.action_matrix(g, n).sub(&id).expect("square");
                stacked = stacked.vstack(&m).expect("cols");
            }
            stacked.nullspace().basis_matrix()
        }))
    }

    pub fn invariant_slice(&self, n: usize) -> Result<InvariantSubcomplexSlice> {
        self.check_degree(n)?;
        let basis = self.invariant_basis(n)?.clone();
        let next = self.invariant_basis(n + 1)?;
        let image = self.complex.differential_matrix(n)?.mul(&basis)?;
        let mut cols = Vec::with_capacity(image.cols());
        for j in 0..image.cols() {
            let coords = next
                .solve(&image.column(j))?
                .unwrap_or_else(|| panic!("∂ of an invariant degree-{n} cochain is not invariant"));
            cols.push(coords);
        }
        let restricted = Matrix::from_columns(next.cols(), &cols)?;
        Ok(InvariantSubcomplexSlice {
            degree: n,
            basis,
            restricted_differential: restricted,
        })
    }

    pub fn cohomology(&self, n: usize) -> Result<CohomologyReport> {
        self.check_degree(n)?;
        let out = self.complex.differential_matrix(n)?;
        let dom = self.invariant_basis(n)?;
        let (input, dom_in) = if n >= 2 {
            (
                Some(self.complex.differential_matrix(n - 1)?),
                Some(self.invariant_basis(n - 1)?),
            )
        } else {
            (None, None)
        };
        let d = self.complex.algebra().dim();
        Ok(subcomplex_report(n, out, input, Some(dom), dom_in, |v| {
            AlphaTypeCochain::from_flat(d, n, v).expect("length")
        }))
    }

    /// Some invariant `x` with `∂x = c`, or `None`.
    pub fn is_coboundary(&self, c: &AlphaTypeCochain) -> Result<Option<AlphaTypeCochain>> {
        let n = c.degree();
        self.check_degree(n)?;
        if n == 1 {
            return Err(Error::DegreeOutOfRange {
                degree: 1,
                max: self.complex.max_degree(),
            });
        }
        let basis = self.invariant_basis(n - 1)?;
        let restricted = self.complex.differential_matrix(n - 1)?.mul(basis)?;
        let d = self.complex.algebra().dim();
        Ok(match restricted.solve(&c.flatten())? {
            None => None,
            Some(y) => Some(AlphaTypeCochain::from_flat(d, n - 1, &basis.mul_vec(&y)?)?),
        })
    }

    pub fn rigidity_report(&self) -> Result<RigidityReport> {
        Ok(RigidityReport::from_betti(
            self.cohomology(2)?.betti,
            self.cohomology(3)?.betti,
        ))
    }
}

pub fn invariant_slice(
    l: &HomLeibnizAlgebra,
    a: &GroupAction,
    n: usize,
) -> Result<InvariantSubcomplexSlice> {
    EquivariantComplex::new(l, a)?.invariant_slice(n)
}

pub fn equivariant_cohomology(
    l: &HomLeibnizAlgebra,
    a: &GroupAction,
    n: usize,
) -> Result<CohomologyReport> {
    EquivariantComplex::new(l, a)?.cohomology(n)
}

/// Rejects deformations with a jet that does not commute with the action.
pub fn check_equivariant_jets(d: &TruncatedDeformation, a: &GroupAction) -> Result<()> {
    if a.dim() != d.base().dim() {
        return Err(Error::DimensionMismatch {
            expected: d.base().dim(),
            found: a.dim(),
        });
    }
    for (index, m) in d.m_jets().iter().enumerate() {
        if !is_invariant_gamma(a, m) {
            return Err(Error::NotEquivariant {
                kind: "bracket",
                index,
            });
        }
    }
    for (index, m) in d.a_jets().iter().enumerate() {
        if !is_invariant_gamma(a, m) {
            return Err(Error::NotEquivariant {
                kind: "structure map",
                index,
            });
        }
    }
    Ok(())
}

/// The obstruction of an equivariant deformation; the same tensor as the
/// plain obstruction, and invariant.
pub fn equivariant_obstruction(
    d: &TruncatedDeformation,
    a: &GroupAction,
    n: usize,
) -> Result<ObstructionClass> {
    check_equivariant_jets(d, a)?;
    let obs = obstruction(d, n)?;
    assert!(
        is_invariant(a, &obs.to_cochain())?,
        "obstruction of equivariant jets is not invariant"
    );
    Ok(obs)
}

/// Extends by one order, solving inside the invariant cochains so that the
/// new jets are equivariant.
pub fn equivariant_extend(d: &TruncatedDeformation, a: &GroupAction) -> Result<Extension> {
    let eq = EquivariantComplex::with_max_degree(d.base(), a, 3)?;
    equivariant_extend_in(&eq, d)
}

pub fn equivariant_extend_in(
    eq: &EquivariantComplex,
    d: &TruncatedDeformation,
) -> Result<Extension> {
    check_equivariant_jets(d, &eq.action)?;
    extend_using(d, |obs| eq.is_coboundary(obs))
}

/// Extends order by order up to `target` inside the invariant cochains.
pub fn equivariant_extend_to(
    d: &TruncatedDeformation,
    a: &GroupAction,
    target: usize,
) -> Result<Extension> {
    let eq = EquivariantComplex::with_max_degree(d.base(), a, 3)?;
    let mut current = d.clone();
    while current.order() < target {
        match equivariant_extend_in(&eq, &current)? {
            Extension::Extended(next) => current = next,
            obstructed => return Ok(obstructed),
        }
    }
    Ok(Extension::Extended(current))
}

/// Reduction using equivariant gauges only.
pub fn equivariant_reduce(
    d: &TruncatedDeformation,
    a: &GroupAction,
) -> Result<TruncatedDeformation> {
    let eq = EquivariantComplex::with_max_degree(d.base(), a, 2)?;
    check_equivariant_jets(d, a)?;
    reduce_using(d, |c| eq.is_coboundary(c)).map(|(reduced, _)| reduced)
}

pub fn equivariant_rigidity_report(
    l: &HomLeibnizAlgebra,
    a: &GroupAction,
) -> Result<RigidityReport> {
    EquivariantComplex::with_max_degree(l, a, 3)?.rigidity_report()
}

/// `L^H = ∩_{h∈H} ker(ρ(h) − Id)` with the restricted bracket and structure
/// map, plus the inclusion matrix (columns: the chosen basis of `L^H`).
pub fn fixed_subalgebra(
    l: &HomLeibnizAlgebra,
    a: &GroupAction,
    subgroup: &[usize],
) -> Result<(HomLeibnizAlgebra, Matrix)> {
    let g = &a.group;
    if subgroup.is_empty() {
        return Err(Error::NotASubgroup("empty subset".into()));
    }
    if let Some(&bad) = subgroup.iter().find(|&&h| h >= g.order()) {
        return Err(Error::NotASubgroup(format!("no group element {bad}")));
    }
    for &x in subgroup {
        for &y in subgroup {
            if !subgroup.contains(&g.mul(x, y)) {
                return Err(Error::NotASubgroup(format!(
                    "product of {x} and {y} leaves the subset"
                )));
            }
        }
    }
    let d = l.dim();
    let id = Matrix::identity(d);
    let mut stacked = Matrix::zeros(0, d);
    for &h in subgroup {
        stacked = stacked.vstack(&a.rep(h).sub(&id)?)?;
    }
    let fixed = stacked.nullspace();
    let r = fixed.dim();
    if r == 0 {
        return Err(Error::InvalidParameters(
            "the fixed-point subspace is zero".into(),
        ));
    }
    let incl = fixed.basis_matrix();
    let coords = |v: &[Rational]| -> Vec<Rational> {
        incl.solve(v)
            .expect("length")
            .unwrap_or_else(|| panic!("fixed-point subspace is not closed under the structure"))
    };
    let basis = fixed.basis();
    let mut bracket = vec![Rational::zero(); r * r * r];
    for i in 0..r {
        for j in 0..r {
            let v = coords(&l.bracket_eval(&basis[i], &basis[j])?);
            for (k, x) in v.into_iter().enumerate() {
                bracket[(i * r + j) * r + k] = x;
            }
        }
    }
    let alpha_cols: Vec<Vec<Rational>> = basis
        .iter()
        .map(|b| coords(&l.alpha().mul_vec(b).expect("dim")))
        .collect();
    let alpha = Matrix::from_columns(r, &alpha_cols)?;
    Ok((HomLeibnizAlgebra::new(r, bracket, alpha)?, incl))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::linalg::int;

    fn z2_flip() -> GroupAction {
        GroupAction::new(
            FiniteGroup::cyclic(2),
            vec![Matrix::identity(2), Matrix::from_i64(&[&[1, 0], &[0, -1]])],
        )
        .unwrap()
    }

    #[test]
    fn group_tables() {
        assert_eq!(FiniteGroup::symmetric3().order(), 6);
        assert!(FiniteGroup::from_table(vec![vec![0, 1], vec![1, 1]]).is_err());
        let g = FiniteGroup::cyclic(4);
        assert_eq!(g.inverse(1), 3);
        assert_eq!(g.mul(3, 3), 2);
    }

    #[test]
    fn flip_on_abelian_and_on_two_dim_example() {
        let ab = corpus::abelian(2, Matrix::identity(2)).unwrap();
        assert!(verify_action(&ab, &z2_flip()).passed);
        let report = verify_action(&corpus::paper_2dim(), &z2_flip());
        assert!(!report.passed);
        let v = report
            .violations
            .iter()
            .find(|v| v.law == "structure-map equivariance")
            .unwrap();
        assert_eq!(v.indices, vec![1, 1]);
        assert_eq!(v.lhs, vec![int(-1), int(-1)]);
        assert_eq!(v.rhs, vec![int(1), int(-1)]);
    }

    #[test]
    fn parity_weights_on_abelian() {
        let a = z2_flip();
        let mut gamma = GammaCochain::zero(2, 2);
        gamma.set(0, &[1, 1], int(1));
        let c = AlphaTypeCochain::new(gamma, Some(GammaCochain::zero(2, 1))).unwrap();
        assert_eq!(cochain_action(&a, 1, &c).unwrap(), c);

        let mut gamma = GammaCochain::zero(2, 2);
        gamma.set(0, &[0, 1], int(1));
        let c = AlphaTypeCochain::new(gamma, Some(GammaCochain::zero(2, 1))).unwrap();
        assert!(reynolds(&a, &c).unwrap().is_zero());
    }

    #[test]
    fn invariant_dimension_and_betti() {
        let ab = corpus::abelian(2, Matrix::identity(2)).unwrap();
        let eq = EquivariantComplex::new(&ab, &z2_flip()).unwrap();
        assert_eq!(eq.invariant_basis(2).unwrap().cols(), 6);
        assert_eq!(eq.cohomology(2).unwrap().betti, 6);
    }

    #[test]
    fn fixed_points() {
        let ab = corpus::abelian(2, Matrix::identity(2)).unwrap();
        let (sub, incl) = fixed_subalgebra(&ab, &z2_flip(), &[0, 1]).unwrap();
        assert_eq!(sub.dim(), 1);
        assert_eq!(sub.alpha(), &Matrix::identity(1));
        assert_eq!(incl.column(0), vec![int(1), int(0)]);
        let (whole, _) = fixed_subalgebra(&ab, &z2_flip(), &[0]).unwrap();
        assert_eq!(whole.dim(), 2);
        assert!(fixed_subalgebra(&ab, &z2_flip(), &[1]).is_err());
    }
}
