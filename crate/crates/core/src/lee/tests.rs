use super::*;
use crate::algebra::{PolyMatrix, F2, Q};
use crate::complex::{build_cube, reduced_subcomplex};
use crate::corpus;

#[test]
fn unknot_generators() {
    let u = LinkDiagram::unknot();
    let o = u.default_orientation();
    assert_eq!(canonical_generator(&u, &o).unwrap().labels, vec![Label::A]);
    assert_eq!(canonical_generator(&u, &o.reverse()).unwrap().labels, vec![Label::B]);
    let cube = build_cube::<Q>(&u, 12).unwrap();
    let lift = lift_tilde(&cube, &u, &o).unwrap();
    assert_eq!(lift.chain, vec![Poly::u().neg(), Poly::one()]);
}

#[test]
fn based_unknot_marks_e1() {
    let u = LinkDiagram::unknot().with_basepoint(1).unwrap();
    for o in Orientation::all(&u) {
        assert_eq!(reduced_canonical_generator(&u, &o).unwrap().labels, vec![Label::A]);
    }
    assert!(matches!(reduced_canonical_generator(&LinkDiagram::unknot(), &Orientation::all(&u)[0]), Err(LeeError::NoBasepoint)));
}

#[test]
fn reduced_generators_pair_up() {
    for d in [corpus::trefoil(), corpus::hopf(), corpus::unlink2()] {
        let d = d.with_basepoint(d.edge_labels()[0]).unwrap();
        let os = Orientation::all(&d);
        for o in &os {
            assert_eq!(reduced_canonical_generator(&d, o).unwrap(), LeeGenerator {
                orientation: o.clone(),
                ..reduced_canonical_generator(&d, &o.reverse()).unwrap()
            });
        }
        let mut distinct: Vec<_> = os
            .iter()
            .map(|o| {
                let g = reduced_canonical_generator(&d, o).unwrap();
                (g.vertex, g.labels)
            })
            .collect();
        distinct.sort();
        distinct.dedup();
        assert_eq!(distinct.len(), 1 << (d.ncomponents() - 1));
    }
}

#[test]
fn lifts_are_cycles() {
    for (name, d) in corpus::all() {
        if d.ncrossings() > 6 {
            continue;
        }
        let cube = build_cube::<Q>(&d, 12).unwrap();
        for o in Orientation::all(&d) {
            let l = lift_tilde(&cube, &d, &o).unwrap();
            assert!(cube.complex.apply_d(l.h, &l.chain).iter().all(|p| p.is_zero()), "{name}");
            assert!(is_nontorsion(&cube.complex, l.h, &l.chain).unwrap(), "{name}");
        }
    }
}

#[test]
fn reduced_lifts_are_cycles() {
    for (name, d) in corpus::all() {
        if d.ncrossings() > 4 {
            continue;
        }
        let d = d.with_basepoint(d.edge_labels()[0]).unwrap();
        let cube = reduced_subcomplex(&build_cube::<F2>(&d, 12).unwrap(), &d).unwrap();
        for o in Orientation::all(&d) {
            let l = lift_tilde(&cube, &d, &o).unwrap();
            assert!(is_nontorsion(&cube.complex, l.h, &l.chain).unwrap(), "{name}");
        }
    }
}

#[test]
fn lifts_span_the_localization() {
    for (name, d) in corpus::all() {
        if d.ncrossings() > 4 {
            continue;
        }
        let cube = build_cube::<Q>(&d, 12).unwrap();
        let mut by_degree: BTreeMap<i32, Vec<Vec<Poly<Q>>>> = BTreeMap::new();
        for o in Orientation::all(&d) {
            let l = lift_tilde(&cube, &d, &o).unwrap();
            by_degree.entry(l.h).or_default().push(l.chain);
        }
        let total: usize = by_degree
            .iter()
            .map(|(h, zs)| {
                // independent modulo boundaries
                let mut cols: Vec<Vec<Poly<Q>>> = zs.clone();
                let b = cube.complex.d(h - 1).transpose().to_dense();
                cols.extend(b);
                let m = PolyMatrix::from_dense(&cols).transpose();
                ffge_rank(&m) - ffge_rank(&cube.complex.d(h - 1))
            })
            .sum();
        assert_eq!(total, 1 << d.ncomponents(), "{name}");
    }
}

#[test]
fn involution_swaps_lifts() {
    let d = corpus::trefoil();
    let cube = build_cube::<F2>(&d, 12).unwrap();
    let o = d.default_orientation();
    let a = lift_tilde(&cube, &d, &o).unwrap();
    let b = lift_tilde(&cube, &d, &o.reverse()).unwrap();
    let swapped: Vec<AlgebraElem<F2>> = a.factors.iter().map(|f| f.involution()).collect();
    assert_eq!(swapped, b.factors);
}

#[test]
fn trefoil_lift_bottom_summand() {
    let d = corpus::trefoil();
    let cube = build_cube::<Q>(&d, 12).unwrap();
    let l = lift_tilde(&cube, &d, &d.default_orientation()).unwrap();
    let gens = cube.complex.gens(0);
    let qmin = gens.iter().zip(&l.chain).filter(|(_, p)| !p.is_zero()).map(|(g, _)| g.q).min().unwrap();
    let xx = crate::complex::CubeGen { u: l.vertex, mask: 0b11 };
    let i = cube.index_of(xx).unwrap().1;
    assert_eq!(gens[i].q, qmin);
    assert!(l.chain[i] == Poly::one() || l.chain[i] == Poly::one().neg());
}

#[test]
fn nontorsion_examples() {
    let u = build_cube::<Q>(&LinkDiagram::unknot(), 12).unwrap().complex;
    assert!(is_nontorsion(&u, 0, &[Poly::one(), Poly::zero()]).unwrap());
    let n = build_cube::<Q>(&corpus::unknot_negative_kink(), 12).unwrap().complex;
    let mut one = vec![Poly::zero(); n.rank(-1)];
    one[0] = Poly::one();
    let z = n.apply_d(-1, &one);
    assert!(!is_nontorsion(&n, 0, &z).unwrap());
    assert!(matches!(is_nontorsion(&n, -1, &one), Err(LeeError::NotACycle)));
    assert!(matches!(is_nontorsion(&n, 0, &[]), Err(LeeError::WrongLength { .. })));
}

#[test]
fn nontorsion_ignores_boundaries() {
    let d = corpus::trefoil();
    let cube = build_cube::<Q>(&d, 12).unwrap();
    let l = lift_tilde(&cube, &d, &d.default_orientation()).unwrap();
    let c = &cube.complex;
    for seed in 0..4i64 {
        let w: Vec<Poly<Q>> = (0..c.rank(-1)).map(|i| Poly::from_i64((i as i64 * 7 + seed) % 5 - 2).mul(&Poly::u())).collect();
        let dw = c.apply_d(-1, &w);
        let z: Vec<Poly<Q>> = l.chain.iter().zip(&dw).map(|(a, b)| a.add(b)).collect();
        assert!(is_nontorsion(c, 0, &z).unwrap());
        assert!(!is_nontorsion(c, 0, &dw).unwrap());
    }
}

#[test]
fn localized_ranks() {
    let rank = |d: &LinkDiagram| localized_rank(&build_cube::<Q>(d, 12).unwrap().complex);
    assert_eq!(rank(&LinkDiagram::unknot()), BTreeMap::from([(0, 2)]));
    assert_eq!(rank(&corpus::trefoil()), BTreeMap::from([(0, 2)]));
    assert_eq!(rank(&corpus::hopf()).values().sum::<usize>(), 4);
    assert_eq!(rank(&corpus::unlink2()), BTreeMap::from([(0, 4)]));
}

#[test]
fn gamma_cancels_the_bottom() {
    let d = corpus::trefoil();
    let cube = build_cube::<Q>(&d, 12).unwrap();
    let o = d.default_orientation();
    let g = gamma_class(&cube, &d, &o).unwrap();
    let full: Vec<Poly<Q>> = g.chain.iter().map(|p| p.mul(&Poly::v_minus_u())).collect();
    let i = cube.index_of(crate::complex::CubeGen { u: g.vertex, mask: 0b11 }).unwrap().1;
    assert!(full[i].is_zero());
    for p in full.iter().filter(|p| !p.is_zero()) {
        assert_eq!(p.swap_uv(), p.neg());
    }
    assert!(matches!(gamma_class(&cube, &d.mirror(), &o), Err(LeeError::NotPositive)));
}
