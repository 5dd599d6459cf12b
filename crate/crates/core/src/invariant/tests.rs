use num_rational::Rational64;

use super::*;
use crate::algebra::{Poly, F2, Q};
use crate::complex::build_cube;
use crate::corpus;
use crate::lee::{gamma_class, lift_tilde};

fn t(s: &str) -> RationalT {
    s.parse().unwrap()
}

fn r(n: i64) -> Rational64 {
    Rational64::from_integer(n)
}

#[test]
fn rational_t() {
    assert_eq!(t("2/4"), RationalT::new(1, 2).unwrap());
    assert_eq!(t("2").to_string(), "2");
    assert_eq!(t(" 3 / 8 ").to_string(), "3/8");
    assert_eq!(t("3/8").reflect(), t("13/8"));
    assert!("5/2".parse::<RationalT>().is_err());
    assert!("1/0".parse::<RationalT>().is_err());
    assert!("-1/2".parse::<RationalT>().is_err());
    assert!("x".parse::<RationalT>().is_err());
    assert_eq!(RationalT::grid(2).len(), 5);
    assert!(t("1/2") < t("1") && t("3/2") < t("2") && t("2/4") == t("1/2"));
    assert!(t("0").is_endpoint() && t("2").is_endpoint() && !t("1").is_endpoint());
    let json = serde_json::to_string(&t("1/2")).unwrap();
    assert_eq!(json, "\"1/2\"");
    assert_eq!(serde_json::from_str::<RationalT>(&json).unwrap(), t("1/2"));
}

#[test]
fn lattice_points() {
    let p = LatticePoint { m: 1, n: 0, q: 1 };
    assert_eq!(p.gr_t(t("1/2")), Rational64::new(1, 2));
    let c = build_cube::<Q>(&LinkDiagram::unknot(), 12).unwrap().complex;
    let z = vec![Poly::u(), Poly::zero()];
    assert_eq!(gr_t_of_chain(&c, 0, &z, t("1/2")), Some(Rational64::new(1, 2)));
    assert_eq!(gr_t_of_chain(&c, 0, &[Poly::zero(), Poly::zero()], t("1")), None);
}

#[test]
fn torus_knot_gradings() {
    // UV (1 (x) 1 (x) 1) and (U+V) 1 (x) 1 (x) X at the oriented resolution
    let d = corpus::torus_3_m4();
    let cube = build_cube::<Q>(&d, 12).unwrap();
    let o = d.default_orientation();
    let u = crate::complex::Cube::<Q>::vertex(&d.oriented_vertex(&o).unwrap());
    let h = cube.degree_of_vertex(u);
    assert_eq!(h, 0);
    let one = crate::frobenius::AlgebraElem::<Q>::one();
    let x = crate::frobenius::AlgebraElem::<Q>::x();
    let a = cube.pure_tensor(u, &[one.clone(), one.clone(), one.clone()]);
    let a: Vec<Poly<Q>> = a.iter().map(|p| p.mul(&Poly::uv())).collect();
    let b = cube.pure_tensor(u, &[one.clone(), one, x]);
    let b: Vec<Poly<Q>> = b.iter().map(|p| p.mul(&Poly::u_plus_v())).collect();
    for k in 0..=8 {
        let tt = RationalT::new(k, 4).unwrap();
        assert_eq!(gr_t_of_chain(&cube.complex, h, &a, tt), Some(r(-7)));
        let tv = tt.value();
        let expected = (r(-7) - tv).min(r(-9) + tv);
        assert_eq!(gr_t_of_chain(&cube.complex, h, &b, tt), Some(expected));
    }
}

#[test]
fn truncations_of_the_unknot() {
    let c = build_cube::<Q>(&LinkDiagram::unknot(), 12).unwrap().complex;
    let tr = truncate(&c, t("1"), r(1), 0).unwrap();
    assert_eq!(tr.basis, vec![(crate::algebra::Mono::new(0, 0), 0)]);
    // 1, X, and the six multiples U^m V^n 1 with m + n <= 2
    let tr = truncate(&c, t("1"), r(-1), 0).unwrap();
    assert_eq!(tr.basis.len(), 7);
    assert_eq!(tr.basis.iter().filter(|(_, i)| *i == 1).count(), 1);
    assert!(truncate(&c, t("1"), r(2), 0).unwrap().basis.is_empty());
    assert!(matches!(truncate(&c, t("0"), r(1), 0), Err(InvariantError::Endpoint(_))));
}

#[test]
fn truncation_is_a_subcomplex() {
    let c = build_cube::<Q>(&corpus::trefoil(), 12).unwrap().complex;
    for lam in -3..4 {
        let lo = truncate(&c, t("1/2"), r(lam), -1).unwrap();
        let hi = truncate(&c, t("1/2"), r(lam), 0).unwrap();
        // the image lands in the degree-0 truncation at the same level
        let image: std::collections::HashSet<_> = lo
            .target
            .iter()
            .enumerate()
            .filter(|(k, _)| lo.d.rows[*k].iter().any(|x| !x.is_zero()))
            .map(|(_, x)| *x)
            .collect();
        let allowed: std::collections::HashSet<_> = hi.basis.iter().copied().collect();
        assert!(image.is_subset(&allowed), "level {lam}");
    }
}

fn settings(mode: Mode) -> Settings {
    Settings { mode, ..Settings::default() }
}

#[test]
fn unknot_values() {
    for d in [LinkDiagram::unknot(), corpus::unknot_positive_kink(), corpus::unknot_negative_kink()] {
        let p = Prepared::<Q>::new(&d, &settings(Mode::Scan)).unwrap();
        for tt in RationalT::grid(4) {
            assert_eq!(p.s(tt).unwrap().value, r(0), "{} at {tt}", d.to_pd_string());
        }
    }
}

#[test]
fn trefoil_values() {
    let d = corpus::trefoil();
    let p = Prepared::<Q>::new(&d, &settings(Mode::Scan)).unwrap();
    let prof = sweep(&p, 4).unwrap();
    assert!(prof.points.iter().all(|x| x.value == r(2) && x.stable));
    assert!(prof.symmetric && prof.rational);
    assert_eq!(rasmussen_s_crosscheck::<Q>(&d, 12).unwrap(), 2);
    let l = Prepared::<Q>::new(&corpus::left_trefoil(), &settings(Mode::Scan)).unwrap();
    assert_eq!(l.s(t("1")).unwrap().value, r(-2));
    assert_eq!(rasmussen_s_crosscheck::<F2>(&corpus::left_trefoil(), 12).unwrap(), -2);
}

#[test]
fn refinement_is_consistent() {
    let p = Prepared::<F2>::new(&corpus::figure_eight(), &settings(Mode::Scan)).unwrap();
    let coarse = sweep(&p, 2).unwrap();
    let fine = sweep(&p, 4).unwrap();
    for x in &coarse.points {
        assert_eq!(fine.value(x.t), Some(x.value));
    }
}

#[test]
fn gamma_of_the_trefoil() {
    let d = corpus::trefoil();
    let cube = build_cube::<Q>(&d, 12).unwrap();
    let o = d.default_orientation();
    let g = gamma_class(&cube, &d, &o).unwrap();
    for k in 0..=8 {
        assert_eq!(gr_t_of_chain(&cube.complex, g.h, &g.chain, RationalT::new(k, 4).unwrap()), Some(r(3)));
    }
    let lift = lift_tilde(&cube, &d, &o).unwrap();
    assert_eq!(gr_t_of_chain(&cube.complex, 0, &lift.chain, t("1")), Some(r(1)));
}

#[test]
fn scan_and_cube_agree() {
    for (name, d) in corpus::all() {
        if d.ncrossings() > 4 {
            continue;
        }
        let a = sweep(&Prepared::<F2>::new(&d, &settings(Mode::Scan)).unwrap(), 4).unwrap();
        let b = sweep(&Prepared::<F2>::new(&d, &settings(Mode::Cube)).unwrap(), 4).unwrap();
        assert_eq!(a, b, "{name}");
    }
}

#[test]
fn reduced_values() {
    let s = Settings::default();
    let u0 = LinkDiagram::unknot().with_basepoint(1).unwrap();
    let u1 = corpus::unknot_positive_kink().with_basepoint(1).unwrap();
    for tt in RationalT::grid(4) {
        assert_eq!(s_tilde_t::<Q>(&u0, tt, &s).unwrap().value, r(0));
        assert_eq!(s_tilde_t::<Q>(&u1, tt, &s).unwrap().value, r(0));
    }
    let tr = corpus::trefoil().with_basepoint(1).unwrap();
    assert!(s_tilde_t::<Q>(&tr, t("1"), &s).unwrap().value <= r(4));
    assert!(matches!(s_tilde_t::<Q>(&corpus::trefoil(), t("1"), &s), Err(InvariantError::Complex(_))));
}

#[test]
fn links_need_knots_for_rasmussen() {
    assert!(matches!(rasmussen_s_crosscheck::<F2>(&corpus::hopf(), 12), Err(InvariantError::NotAKnot(2))));
}
