mod common;

use homleib::cochain::{d_gamma_alpha, d_gamma_gamma};
use homleib::cohomology::AlphaComplex;
use homleib::corpus;
use homleib::deformation::{
    apply_gauge, extend, extend_to, infinitesimal, obstruction, reduce_with_steps, rigidity_report,
    verify, Extension, GaugeTransform, RigidityVerdict, TruncatedDeformation,
};
use homleib::linalg::Matrix;
use homleib::GammaCochain;

use common::*;

#[test]
fn infinitesimals_are_two_cocycles() {
    let mut r = rng(31);
    let mut checked = 0;
    for named in corpus::corpus() {
        let l = &named.algebra;
        let complex = AlphaComplex::with_max_degree(l, 2).unwrap();
        for k in 0..6 {
            let d = if k % 2 == 0 {
                gauge_image_of_trivial(&mut r, l, 3)
            } else {
                cocycle_seeded(&mut r, l)
            };
            assert!(verify(&d).passed, "{}", named.name);
            if d.is_trivial() {
                continue;
            }
            let (_, c) = infinitesimal(&d).unwrap();
            assert!(complex.is_cocycle(&c).unwrap(), "{}", named.name);
            checked += 1;
        }
    }
    assert!(checked >= 50);
}

/// Every truncation of a genuine deformation extends by one order.
#[test]
fn truncated_gauge_images_extend_one_order() {
    let mut r = rng(32);
    for named in corpus::corpus() {
        let l = &named.algebra;
        let d = gauge_image_of_trivial(&mut r, l, 4);
        for n in 1..4 {
            match extend(&d.truncate(n)).unwrap() {
                Extension::Extended(e) => {
                    assert_eq!(e.order(), n + 1);
                    assert!(verify(&e).passed, "{}", named.name);
                }
                Extension::Obstructed(o) => {
                    panic!("{}: obstructed at order {}", named.name, o.order)
                }
            }
        }
    }
}

#[test]
fn obstructions_are_cocycles() {
    let mut r = rng(33);
    for named in corpus::corpus() {
        let l = &named.algebra;
        let complex = AlphaComplex::with_max_degree(l, 3).unwrap();
        let mut d = cocycle_seeded(&mut r, l);
        for _ in 0..2 {
            let obs = obstruction(&d, d.order()).unwrap();
            assert!(
                complex.is_cocycle(&obs.to_cochain()).unwrap(),
                "{}",
                named.name
            );
            match homleib::deformation::extend_in(&complex, &d).unwrap() {
                Extension::Extended(next) => d = next,
                Extension::Obstructed(o) => {
                    assert!(complex.is_coboundary(&o.to_cochain()).unwrap().is_none());
                    break;
                }
            }
        }
    }
}

#[test]
fn obstruction_ignores_the_next_jet() {
    let mut r = rng(34);
    for named in corpus::corpus() {
        let l = &named.algebra;
        let d = gauge_image_of_trivial(&mut r, l, 3);
        let before = obstruction(&d, 2).unwrap();
        let mut m = d.m_jets().to_vec();
        let mut a = d.a_jets().to_vec();
        m[3] = random_gamma(&mut r, l.dim(), 2);
        a[3] = random_gamma(&mut r, l.dim(), 1);
        let perturbed = TruncatedDeformation::new(l, m, a).unwrap();
        assert_eq!(
            obstruction(&perturbed, 2).unwrap(),
            before,
            "{}",
            named.name
        );
    }
}

fn check_pure_gauge_identity(d: &TruncatedDeformation, psi: &Matrix, n: usize) {
    let l = d.base();
    let g = GaugeTransform::monomial(psi, n, d.order()).unwrap();
    let moved = apply_gauge(d, &g).unwrap();
    let p = GammaCochain::from_matrix(psi).unwrap();
    let dm = moved.m_jets()[n].sub(&d.m_jets()[n]).unwrap();
    let da = moved.a_jets()[n].sub(&d.a_jets()[n]).unwrap();
    assert_eq!(dm, d_gamma_gamma(l, &p).unwrap());
    assert_eq!(da, d_gamma_alpha(l, &p).unwrap());
}

#[test]
fn first_order_gauge_identities() {
    let mut r = rng(35);
    for named in corpus::corpus() {
        let l = &named.algebra;
        for k in 0..4 {
            let d = if k % 2 == 0 {
                cocycle_seeded(&mut r, l)
            } else {
                gauge_image_of_trivial(&mut r, l, 1)
            };
            let g = random_gauge(&mut r, l.dim(), 1);
            let moved = apply_gauge(&d, &g).unwrap();
            let p = GammaCochain::from_matrix(&g.psi_jets()[1]).unwrap();
            assert_eq!(
                moved.m_jets()[1].sub(&d.m_jets()[1]).unwrap(),
                d_gamma_gamma(l, &p).unwrap(),
                "{}",
                named.name
            );
            assert_eq!(
                moved.a_jets()[1].sub(&d.a_jets()[1]).unwrap(),
                d_gamma_alpha(l, &p).unwrap(),
                "{}",
                named.name
            );
        }
    }
}

#[test]
fn pure_order_n_gauge_identities() {
    let mut r = rng(36);
    for named in corpus::corpus() {
        let l = &named.algebra;
        let d = gauge_image_of_trivial(&mut r, l, 3);
        for n in 1..=3 {
            check_pure_gauge_identity(&d, &random_matrix(&mut r, l.dim()), n);
        }
    }
}

#[test]
fn gauge_inverse_undoes_the_gauge() {
    let mut r = rng(37);
    for named in corpus::corpus() {
        let l = &named.algebra;
        let d = gauge_image_of_trivial(&mut r, l, 3);
        let g = random_gauge(&mut r, l.dim(), 3);
        let there = apply_gauge(&d, &g).unwrap();
        assert!(verify(&there).passed);
        assert_eq!(
            apply_gauge(&there, &g.inverse()).unwrap(),
            d,
            "{}",
            named.name
        );
    }
}

#[test]
fn reduce_trivializes_gauge_images() {
    let mut r = rng(38);
    for named in corpus::corpus() {
        let l = &named.algebra;
        for order in 1..=3 {
            let d = gauge_image_of_trivial(&mut r, l, order);
            let (reduced, steps) = reduce_with_steps(&d).unwrap();
            assert!(reduced.is_trivial(), "{} order {order}", named.name);
            assert!(
                steps <= order,
                "{}: {steps} steps at order {order}",
                named.name
            );
        }
    }
}

#[test]
fn reduce_keeps_non_coboundary_infinitesimals() {
    let mut r = rng(39);
    for named in corpus::corpus() {
        let l = &named.algebra;
        let complex = AlphaComplex::with_max_degree(l, 2).unwrap();
        if complex.cohomology(2).unwrap().betti == 0 {
            continue;
        }
        let d = loop {
            let d = cocycle_seeded(&mut r, l);
            if complex.is_coboundary(&d.jet_pair(1)).unwrap().is_none() {
                break d;
            }
        };
        let (reduced, steps) = reduce_with_steps(&d).unwrap();
        assert_eq!(steps, 0);
        assert_eq!(reduced, d);
    }
}

#[test]
fn equivalent_deformations_have_cohomologous_infinitesimals() {
    let mut r = rng(40);
    let mut pairs = 0;
    let algebras = corpus::corpus();
    while pairs < 20 {
        let named = &algebras[pairs % algebras.len()];
        let l = &named.algebra;
        let complex = AlphaComplex::with_max_degree(l, 2).unwrap();
        let d = cocycle_seeded(&mut r, l);
        let moved = apply_gauge(&d, &random_gauge(&mut r, l.dim(), 1)).unwrap();
        let (n, c) = infinitesimal(&d).unwrap();
        let Ok((n2, c2)) = infinitesimal(&moved) else {
            continue;
        };
        if n != n2 {
            continue;
        }
        assert!(complex.cohomologous(&c, &c2).unwrap(), "{}", named.name);
        pairs += 1;
    }
}

#[test]
fn non_cocycle_first_order_jets_fail_verification() {
    let mut r = rng(41);
    for named in corpus::corpus() {
        let l = &named.algebra;
        let complex = AlphaComplex::with_max_degree(l, 2).unwrap();
        if complex.differential_matrix(2).unwrap().rank() == 0 {
            continue;
        }
        let c = loop {
            let c = random_cochain(&mut r, l.dim(), 2);
            if !complex.is_cocycle(&c).unwrap() {
                break c;
            }
        };
        let d = TruncatedDeformation::from_first_order(l, &c).unwrap();
        let report = verify(&d);
        assert!(!report.passed, "{}", named.name);
        assert_eq!(report.violations[0].indices[0], 1);
    }
}

#[test]
fn rigidity_verdicts() {
    let paper = rigidity_report(&corpus::paper_2dim()).unwrap();
    assert_eq!((paper.betti2, paper.betti3), (2, 2));
    assert_eq!(paper.verdict, RigidityVerdict::Inconclusive);

    let ab = rigidity_report(&corpus::abelian(2, Matrix::identity(2)).unwrap()).unwrap();
    assert_eq!(ab.betti2, 12);
    assert_eq!(ab.verdict, RigidityVerdict::Inconclusive);

    let line = rigidity_report(&corpus::idempotent_line()).unwrap();
    assert_eq!(line.verdict, RigidityVerdict::Rigid);

    let tsl2 = rigidity_report(&corpus::twisted_sl2()).unwrap();
    assert_eq!((tsl2.betti2, tsl2.betti3), (1, 0));
    assert_eq!(tsl2.verdict, RigidityVerdict::Unobstructed);
}

#[test]
fn unobstructed_algebras_always_extend() {
    let mut r = rng(42);
    for l in [
        corpus::twisted_sl2(),
        corpus::twisted_leibniz_plane(),
        corpus::twisted_free_1_3(),
    ] {
        assert!(rigidity_report(&l).unwrap().unobstructed());
        let d = cocycle_seeded(&mut r, &l);
        assert!(matches!(extend_to(&d, 4).unwrap(), Extension::Extended(_)));
    }
}

#[test]
fn rigid_line_reduces_every_deformation() {
    let mut r = rng(43);
    let l = corpus::idempotent_line();
    let seeded = cocycle_seeded(&mut r, &l);
    let Extension::Extended(d) = extend_to(&seeded, 3).unwrap() else {
        panic!("obstructed");
    };
    let (reduced, _) = reduce_with_steps(&d).unwrap();
    assert!(reduced.is_trivial());
}
