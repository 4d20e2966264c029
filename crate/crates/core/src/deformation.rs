//! One-parameter formal deformations `m_t = Σ m_i tⁱ`, `α_t = Σ α_i tⁱ`,
//! truncated at a finite order.
//!
//! The order-`n` deformation equations are
//!
//! ```text
//! Σ_{i+j+k=n} m_i ∘_{α_j} m_k = 0
//! Σ_{i+j+k=n} m_i(α_j x, α_k y) − Σ_{i+j=n} α_i(m_j(x, y)) = 0
//! ```
//!
//! The obstruction at order `n` collects every term of the order-`n+1`
//! equations that does not involve `(m_{n+1}, α_{n+1})`; an order-`n`
//! deformation extends exactly when it is a coboundary.

use crate::algebra::{HomLeibnizAlgebra, ValidationReport, Violation};
use crate::cochain::{AlphaTypeCochain, GammaCochain};
use crate::cohomology::AlphaComplex;
use crate::error::{Error, Result};
use crate::gerstenhaber::circle_with;
use crate::linalg::{Matrix, Rational};

/// Jets `(m₀,…,m_N)` and `(α₀,…,α_N)` with `m₀ = [·,·]` and `α₀ = α`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedDeformation {
    base: HomLeibnizAlgebra,
    m_jets: Vec<GammaCochain>,
    a_jets: Vec<GammaCochain>,
}

impl TruncatedDeformation {
    /// Checks shapes and the order-0 jets; the deformation equations are
    /// checked by [`verify`].
    pub fn new(
        base: &HomLeibnizAlgebra,
        m_jets: Vec<GammaCochain>,
        a_jets: Vec<GammaCochain>,
    ) -> Result<Self> {
        if m_jets.len() != a_jets.len() {
            return Err(Error::OrderMismatch {
                left: m_jets.len().saturating_sub(1),
                right: a_jets.len().saturating_sub(1),
            });
        }
        if m_jets.is_empty() {
            return Err(Error::InvalidDeformation("no jets given".into()));
        }
        for (jets, arity) in [(&m_jets, 2), (&a_jets, 1)] {
            for j in jets {
                if j.dim() != base.dim() {
                    return Err(Error::DimensionMismatch {
                        expected: base.dim(),
                        found: j.dim(),
                    });
                }
                if j.arity() != arity {
                    return Err(Error::ArityOutOfRange {
                        arity: j.arity(),
                        reason: "bracket jets are bilinear, structure-map jets linear",
                    });
                }
            }
        }
        if m_jets[0] != GammaCochain::bracket_of(base) {
            return Err(Error::InvalidDeformation(
                "m₀ must equal the bracket of the base".into(),
            ));
        }
        if a_jets[0] != GammaCochain::alpha_of(base) {
            return Err(Error::InvalidDeformation(
                "α₀ must equal the structure map of the base".into(),
            ));
        }
        Ok(Self {
            base: base.clone(),
            m_jets,
            a_jets,
        })
    }

    /// The trivial deformation: all jets beyond order 0 vanish.
    pub fn trivial(base: &HomLeibnizAlgebra, order: usize) -> Self {
        let d = base.dim();
        let mut m = vec![GammaCochain::bracket_of(base)];
        let mut a = vec![GammaCochain::alpha_of(base)];
        for _ in 0..order {
            m.push(GammaCochain::zero(d, 2));
            a.push(GammaCochain::zero(d, 1));
        }
        Self {
            base: base.clone(),
            m_jets: m,
            a_jets: a,
        }
    }

    /// The order-1 deformation `(m₀ + m₁t, α + α₁t)` from a degree-2 cochain.
    pub fn from_first_order(base: &HomLeibnizAlgebra, c: &AlphaTypeCochain) -> Result<Self> {
        if c.degree() != 2 {
            return Err(Error::ArityOutOfRange {
                arity: c.degree(),
                reason: "first-order jets form a degree-2 cochain",
            });
        }
        let mut d = Self::trivial(base, 1);
        d.m_jets[1] = c.gamma_part().clone();
        d.a_jets[1] = c.alpha_part().expect("degree 2").clone();
        Self::new(base, d.m_jets, d.a_jets)
    }

    pub fn base(&self) -> &HomLeibnizAlgebra {
        &self.base
    }

    pub fn order(&self) -> usize {
        self.m_jets.len() - 1
    }

    pub fn m_jets(&self) -> &[GammaCochain] {
        &self.m_jets
    }

    pub fn a_jets(&self) -> &[GammaCochain] {
        &self.a_jets
    }

    /// `(m_n, α_n)` as a degree-2 cochain.
    pub fn jet_pair(&self, n: usize) -> AlphaTypeCochain {
        AlphaTypeCochain::new(self.m_jets[n].clone(), Some(self.a_jets[n].clone()))
            .expect("jet shapes")
    }

    /// Keeps jets up to `order`.
    pub fn truncate(&self, order: usize) -> Self {
        let keep = order.min(self.order()) + 1;
        Self {
            base: self.base.clone(),
            m_jets: self.m_jets[..keep].to_vec(),
            a_jets: self.a_jets[..keep].to_vec(),
        }
    }

    /// Appends `(m_{N+1}, α_{N+1})`.
    pub fn push_jets(&self, m: GammaCochain, a: GammaCochain) -> Result<Self> {
        let mut mj = self.m_jets.clone();
        let mut aj = self.a_jets.clone();
        mj.push(m);
        aj.push(a);
        Self::new(&self.base, mj, aj)
    }

    pub fn is_trivial(&self) -> bool {
        self.m_jets[1..].iter().all(GammaCochain::is_zero)
            && self.a_jets[1..].iter().all(GammaCochain::is_zero)
    }

    fn matrices(&self) -> Vec<Matrix> {
        self.a_jets
            .iter()
            .map(|a| a.to_matrix().expect("linear jet"))
            .collect()
    }
}

/// `m_i ∘_{α_j} m_k (x,y,z) = m_i(α_j x, m_k(y,z)) − m_i(m_k(x,y), α_j z) + m_i(m_k(x,z), α_j y)`.
pub fn alpha_associator(
    m_i: &GammaCochain,
    m_k: &GammaCochain,
    alpha_j: &GammaCochain,
) -> Result<GammaCochain> {
    for c in [m_k, alpha_j] {
        if c.dim() != m_i.dim() {
            return Err(Error::DimensionMismatch {
                expected: m_i.dim(),
                found: c.dim(),
            });
        }
    }
    if m_i.arity() != 2 || m_k.arity() != 2 || alpha_j.arity() != 1 {
        return Err(Error::ArityOutOfRange {
            arity: alpha_j.arity(),
            reason: "associator takes two bilinear maps and a linear map",
        });
    }
    Ok(circle_with(m_i, m_k, &alpha_j.to_matrix()?).neg())
}

/// Left-hand sides of the order-`total` equations restricted to index
/// tuples whose largest entry is at most `max_index`.
fn order_sums(
    d: &TruncatedDeformation,
    a_mats: &[Matrix],
    total: usize,
    max_index: usize,
) -> (GammaCochain, GammaCochain) {
    let dim = d.base.dim();
    let mut gamma = GammaCochain::zero(dim, 3);
    let mut alpha = GammaCochain::zero(dim, 2);
    let one = Rational::from_integer(1.into());
    let minus = -one.clone();
    let lim = max_index.min(d.order());
    for i in 0..=lim.min(total) {
        for j in 0..=lim.min(total - i) {
            let k = total - i - j;
            if k > lim {
                continue;
            }
            let (mi, mk) = (&d.m_jets[i], &d.m_jets[k]);
            if mi.is_zero() || (mk.is_zero() && d.a_jets[k].is_zero()) {
                continue;
            }
            if !mk.is_zero() && !d.a_jets[j].is_zero() {
                gamma.add_assign_scaled(&circle_with(mi, mk, &a_mats[j]), &minus);
            }
            if !d.a_jets[j].is_zero() && !d.a_jets[k].is_zero() {
                let term = mi
                    .precompose_slot(0, &a_mats[j])
                    .precompose_slot(1, &a_mats[k]);
                alpha.add_assign_scaled(&term, &one);
            }
        }
    }
    for i in 0..=lim.min(total) {
        let j = total - i;
        if j > lim {
            continue;
        }
        alpha.add_assign_scaled(&d.m_jets[j].postcompose(&a_mats[i]), &minus);
    }
    (gamma, alpha)
}

/// Checks both families of deformation equations at every order `0..=N`,
/// reporting the first failing basis tuple of each failing equation.
pub fn verify(d: &TruncatedDeformation) -> ValidationReport {
    let a_mats = d.matrices();
    let mut violations = Vec::new();
    for n in 0..=d.order() {
        let (g, a) = order_sums(d, &a_mats, n, n);
        for (law, c) in [("deformation", &g), ("deformation multiplicativity", &a)] {
            if let Some(t) = c.first_nonzero_inputs() {
                let mut indices = vec![n];
                indices.extend(&t);
                violations.push(Violation {
                    law: format!("{law} (order {n})"),
                    indices,
                    lhs: c.value_at(&t),
                    rhs: vec![Rational::from_integer(0.into()); d.base.dim()],
                });
            }
        }
    }
    ValidationReport::from_violations(violations)
}

/// The smallest `n ≥ 1` with `(m_n, α_n) ≠ 0`, and that pair.
pub fn infinitesimal(d: &TruncatedDeformation) -> Result<(usize, AlphaTypeCochain)> {
    (1..=d.order())
        .find(|&n| !d.m_jets[n].is_zero() || !d.a_jets[n].is_zero())
        .map(|n| (n, d.jet_pair(n)))
        .ok_or(Error::TrivialJet)
}

/// `Obsⁿ = (Obsⁿ_γ, Obsⁿ_α)`, a degree-3 cochain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObstructionClass {
    pub order: usize,
    pub gamma_part: GammaCochain,
    pub alpha_part: GammaCochain,
}

impl ObstructionClass {
    pub fn to_cochain(&self) -> AlphaTypeCochain {
        AlphaTypeCochain::new(self.gamma_part.clone(), Some(self.alpha_part.clone()))
            .expect("obstruction shapes")
    }

    pub fn is_zero(&self) -> bool {
        self.gamma_part.is_zero() && self.alpha_part.is_zero()
    }
}

/// The obstruction to extending the order-`n` truncation of `d`.
///
/// Sign convention: `(m_{n+1}, α_{n+1})` extends the deformation iff
/// `∂(m_{n+1}, α_{n+1}) = Obsⁿ`. Only jets of index `≤ n` are read.
pub fn obstruction(d: &TruncatedDeformation, n: usize) -> Result<ObstructionClass> {
    if n == 0 || n > d.order() {
        return Err(Error::DegreeOutOfRange {
            degree: n,
            max: d.order(),
        });
    }
    let a_mats = d.matrices();
    let (g, a) = order_sums(d, &a_mats, n + 1, n);
    Ok(ObstructionClass {
        order: n,
        gamma_part: g.neg(),
        alpha_part: a,
    })
}

/// Result of trying to extend a deformation by one order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Extension {
    Extended(TruncatedDeformation),
    Obstructed(ObstructionClass),
}

/// Extends an order-`n` deformation to order `n + 1` when its obstruction
/// is a coboundary, using a particular solution of `∂x = Obsⁿ`.
pub fn extend(d: &TruncatedDeformation) -> Result<Extension> {
    let complex = AlphaComplex::with_max_degree(d.base(), 3)?;
    extend_in(&complex, d)
}

/// [`extend`] reusing the differential matrices of `complex`.
pub fn extend_in(complex: &AlphaComplex, d: &TruncatedDeformation) -> Result<Extension> {
    extend_using(d, |obs| complex.is_coboundary(obs))
}

/// Extends order by order up to `target`, stopping at the first obstruction.
pub fn extend_to(d: &TruncatedDeformation, target: usize) -> Result<Extension> {
    let complex = AlphaComplex::with_max_degree(d.base(), 3)?;
    let mut current = d.clone();
    while current.order() < target {
        match extend_in(&complex, &current)? {
            Extension::Extended(next) => current = next,
            obstructed => return Ok(obstructed),
        }
    }
    Ok(Extension::Extended(current))
}

/// Shared extension step: `solve` returns a preimage of the obstruction
/// under the degree-2 differential, if there is one.
pub(crate) fn extend_using(
    d: &TruncatedDeformation,
    solve: impl Fn(&AlphaTypeCochain) -> Result<Option<AlphaTypeCochain>>,
) -> Result<Extension> {
    require_verified(d)?;
    if d.order() == 0 {
        let dim = d.base.dim();
        let next = d.push_jets(GammaCochain::zero(dim, 2), GammaCochain::zero(dim, 1))?;
        return Ok(Extension::Extended(next));
    }
    let obs = obstruction(d, d.order())?;
    match solve(&obs.to_cochain())? {
        None => Ok(Extension::Obstructed(obs)),
        Some(x) => {
            let next = d.push_jets(
                x.gamma_part().clone(),
                x.alpha_part().expect("degree 2").clone(),
            )?;
            let report = verify(&next);
            assert!(
                report.passed,
                "extension solved ∂x = Obs but fails the deformation equations: {:?}",
                report.violations.first()
            );
            Ok(Extension::Extended(next))
        }
    }
}

fn require_verified(d: &TruncatedDeformation) -> Result<()> {
    let report = verify(d);
    match report.violations.first() {
        None => Ok(()),
        Some(v) => Err(Error::InvalidDeformation(format!(
            "{} fails on basis tuple {:?}",
            v.law,
            &v.indices[1..]
        ))),
    }
}

/// A formal isomorphism `Ψ_t = Σ ψ_i tⁱ` with `ψ₀ = Id`, and its truncated
/// inverse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaugeTransform {
    psi_jets: Vec<Matrix>,
    inverse_jets: Vec<Matrix>,
}

impl GaugeTransform {
    pub fn order(&self) -> usize {
        self.psi_jets.len() - 1
    }

    pub fn psi_jets(&self) -> &[Matrix] {
        &self.psi_jets
    }

    pub fn inverse_jets(&self) -> &[Matrix] {
        &self.inverse_jets
    }

    /// The truncated inverse as a gauge transform.
    pub fn inverse(&self) -> GaugeTransform {
        GaugeTransform {
            psi_jets: self.inverse_jets.clone(),
            inverse_jets: self.psi_jets.clone(),
        }
    }

    /// `Id + ψ tⁿ` truncated at `order`.
    pub fn monomial(psi: &Matrix, n: usize, order: usize) -> Result<GaugeTransform> {
        let dim = psi.rows();
        let mut jets = vec![Matrix::identity(dim)];
        jets.extend((1..=order).map(|i| {
            if i == n {
                psi.clone()
            } else {
                Matrix::zeros(dim, dim)
            }
        }));
        gauge_from(jets)
    }
}

/// Builds a gauge transform, computing `ψ̄` from `Σ_{i+j=n} ψ_i ψ̄_j = 0`.
pub fn gauge_from(psi_jets: Vec<Matrix>) -> Result<GaugeTransform> {
    let first = psi_jets.first().ok_or(Error::GaugeNotUnipotent)?;
    let dim = first.rows();
    if *first != Matrix::identity(dim) {
        return Err(Error::GaugeNotUnipotent);
    }
    for m in &psi_jets {
        if m.rows() != dim || m.cols() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: m.rows().max(m.cols()),
            });
        }
    }
    let mut inverse: Vec<Matrix> = vec![Matrix::identity(dim)];
    for n in 1..psi_jets.len() {
        let mut acc = Matrix::zeros(dim, dim);
        for i in 1..=n {
            acc = acc.sub(&psi_jets[i].mul(&inverse[n - i])?)?;
        }
        inverse.push(acc);
    }
    Ok(GaugeTransform {
        psi_jets,
        inverse_jets: inverse,
    })
}

/// The transformed deformation
/// `m'_t = Ψ_t⁻¹ ∘ m_t ∘ (Ψ_t ⊗ Ψ_t)`, `α'_t = Ψ_t⁻¹ ∘ α_t ∘ Ψ_t`.
///
/// At first order `m'₁ − m₁ = ∂_γγ ψ₁` and `α'₁ − α₁ = ∂_γα ψ₁`.
pub fn apply_gauge(d: &TruncatedDeformation, g: &GaugeTransform) -> Result<TruncatedDeformation> {
    if d.order() != g.order() {
        return Err(Error::OrderMismatch {
            left: d.order(),
            right: g.order(),
        });
    }
    if g.psi_jets[0].rows() != d.base.dim() {
        return Err(Error::DimensionMismatch {
            expected: d.base.dim(),
            found: g.psi_jets[0].rows(),
        });
    }
    let n_max = d.order();
    let dim = d.base.dim();
    let a_mats = d.matrices();
    let psi = &g.psi_jets;
    let inv = &g.inverse_jets;
    let one = Rational::from_integer(1.into());

    // inner_s = Σ_{b+c+e=s} m_b ∘ (ψ_c ⊗ ψ_e), inner_a_s = Σ_{b+c=s} α_b ∘ ψ_c
    let mut inner_m = Vec::with_capacity(n_max + 1);
    let mut inner_a = Vec::with_capacity(n_max + 1);
    for s in 0..=n_max {
        let mut m = GammaCochain::zero(dim, 2);
        let mut a = Matrix::zeros(dim, dim);
        for b in 0..=s {
            if !d.m_jets[b].is_zero() {
                for c in 0..=s - b {
                    let left = d.m_jets[b].precompose_slot(0, &psi[c]);
                    m.add_assign_scaled(&left.precompose_slot(1, &psi[s - b - c]), &one);
                }
            }
            a = a.add(&a_mats[b].mul(&psi[s - b])?)?;
        }
        inner_m.push(m);
        inner_a.push(a);
    }
    let mut m_jets = Vec::with_capacity(n_max + 1);
    let mut a_jets = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let mut m = GammaCochain::zero(dim, 2);
        let mut a = Matrix::zeros(dim, dim);
        for i in 0..=n {
            m.add_assign_scaled(&inner_m[n - i].postcompose(&inv[i]), &one);
            a = a.add(&inv[i].mul(&inner_a[n - i])?)?;
        }
        m_jets.push(m);
        a_jets.push(GammaCochain::from_matrix(&a)?);
    }
    TruncatedDeformation::new(&d.base, m_jets, a_jets)
}

/// Repeatedly gauges away infinitesimals that are coboundaries.
///
/// Stops when the infinitesimal is not a coboundary, or when every jet up to
/// the truncation order vanishes.
pub fn reduce(d: &TruncatedDeformation) -> Result<TruncatedDeformation> {
    reduce_with_steps(d).map(|(reduced, _)| reduced)
}

/// [`reduce`], also returning the number of gauge transformations applied.
pub fn reduce_with_steps(d: &TruncatedDeformation) -> Result<(TruncatedDeformation, usize)> {
    let complex = AlphaComplex::with_max_degree(d.base(), 2)?;
    reduce_using(d, |c| complex.is_coboundary(c))
}

pub(crate) fn reduce_using(
    d: &TruncatedDeformation,
    witness: impl Fn(&AlphaTypeCochain) -> Result<Option<AlphaTypeCochain>>,
) -> Result<(TruncatedDeformation, usize)> {
    require_verified(d)?;
    let mut current = d.clone();
    let mut steps = 0;
    loop {
        let (n, c) = match infinitesimal(&current) {
            Ok(found) => found,
            Err(Error::TrivialJet) => return Ok((current, steps)),
            Err(e) => return Err(e),
        };
        match witness(&c)? {
            None => return Ok((current, steps)),
            Some(w) => {
                steps += 1;
                let psi = w
                    .gamma_part()
                    .to_matrix()?
                    .scale(&-Rational::from_integer(1.into()));
                let g = GaugeTransform::monomial(&psi, n, current.order())?;
                current = apply_gauge(&current, &g)?;
            }
        }
    }
}

/// Which sufficient conditions hold.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RigidityVerdict {
    /// `H̃L² = 0`: every deformation is equivalent to the trivial one.
    Rigid,
    /// `H̃L³ = 0`: every 2-cocycle integrates to a formal deformation.
    Unobstructed,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RigidityReport {
    pub betti2: usize,
    pub betti3: usize,
    pub verdict: RigidityVerdict,
}

impl RigidityReport {
    pub fn from_betti(betti2: usize, betti3: usize) -> Self {
        let verdict = if betti2 == 0 {
            RigidityVerdict::Rigid
        } else if betti3 == 0 {
            RigidityVerdict::Unobstructed
        } else {
            RigidityVerdict::Inconclusive
        };
        Self {
            betti2,
            betti3,
            verdict,
        }
    }

    pub fn rigid(&self) -> bool {
        self.betti2 == 0
    }

    pub fn unobstructed(&self) -> bool {
        self.betti3 == 0
    }
}

pub fn rigidity_report(l: &HomLeibnizAlgebra) -> Result<RigidityReport> {
    let complex = AlphaComplex::with_max_degree(l, 3)?;
    Ok(RigidityReport::from_betti(
        complex.cohomology(2)?.betti,
        complex.cohomology(3)?.betti,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cochain::{d_gamma_alpha, d_gamma_gamma};
    use crate::corpus;
    use crate::linalg::int;

    #[test]
    fn associator_of_valid_bracket_vanishes() {
        for n in corpus::corpus() {
            let m0 = GammaCochain::bracket_of(&n.algebra);
            let a0 = GammaCochain::alpha_of(&n.algebra);
            assert!(
                alpha_associator(&m0, &m0, &a0).unwrap().is_zero(),
                "{}",
                n.name
            );
        }
    }

    #[test]
    fn associator_with_zero_twist_on_two_dim_example() {
        let l = corpus::paper_2dim();
        let m0 = GammaCochain::bracket_of(&l);
        let z = GammaCochain::zero(2, 1);
        let a = alpha_associator(&m0, &m0, &z).unwrap();
        assert_eq!(a.value_at(&[1, 1, 1]), vec![int(0), int(0)]);
    }

    #[test]
    fn trivial_deformation_verifies_and_extends() {
        let l = corpus::paper_2dim();
        let d = TruncatedDeformation::trivial(&l, 2);
        assert!(verify(&d).passed);
        assert!(obstruction(&d, 2).unwrap().is_zero());
        match extend(&d).unwrap() {
            Extension::Extended(e) => {
                assert_eq!(e.order(), 3);
                assert!(e.is_trivial());
            }
            Extension::Obstructed(_) => panic!("trivial deformation is unobstructed"),
        }
        assert!(matches!(infinitesimal(&d), Err(Error::TrivialJet)));
    }

    #[test]
    fn inverse_jets_of_monomial_gauge() {
        let p = Matrix::from_i64(&[&[1, 2], &[0, -1]]);
        let g = gauge_from(vec![
            Matrix::identity(2),
            p.clone(),
            Matrix::zeros(2, 2),
            Matrix::zeros(2, 2),
        ])
        .unwrap();
        assert_eq!(g.inverse_jets()[1], p.scale(&int(-1)));
        assert_eq!(g.inverse_jets()[2], p.pow(2));
        assert_eq!(g.inverse_jets()[3], p.pow(3).scale(&int(-1)));
        assert!(gauge_from(vec![Matrix::zeros(2, 2)]).is_err());
    }

    #[test]
    fn first_order_gauge_identity() {
        let l = corpus::paper_2dim();
        let psi = Matrix::from_i64(&[&[2, -1], &[3, 1]]);
        let d = TruncatedDeformation::trivial(&l, 1);
        let g = GaugeTransform::monomial(&psi, 1, 1).unwrap();
        let e = apply_gauge(&d, &g).unwrap();
        assert!(verify(&e).passed);
        let p = GammaCochain::from_matrix(&psi).unwrap();
        assert_eq!(e.m_jets()[1], d_gamma_gamma(&l, &p).unwrap());
        assert_eq!(e.a_jets()[1], d_gamma_alpha(&l, &p).unwrap());
    }

    #[test]
    fn rigidity_of_idempotent_line() {
        let r = rigidity_report(&corpus::idempotent_line()).unwrap();
        assert_eq!(r.verdict, RigidityVerdict::Rigid);
        let r = rigidity_report(&corpus::abelian(2, Matrix::identity(2)).unwrap()).unwrap();
        assert_eq!(r.betti2, 12);
        assert_eq!(r.verdict, RigidityVerdict::Inconclusive);
    }
}
