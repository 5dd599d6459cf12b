use super::*;
use crate::algebra::{ffge_rank, Poly, Q, F2};
use crate::corpus;
use crate::diagram::LinkDiagram;

fn p(s: &str) -> Poly<Q> {
    Poly::parse(s).unwrap()
}

#[test]
fn zero_crossing_unknot() {
    let c = build_cube::<Q>(&LinkDiagram::unknot(), 12).unwrap();
    assert_eq!(c.complex.degrees(), 0..1);
    let qs: Vec<i32> = c.complex.gens(0).iter().map(|g| g.q).collect();
    assert_eq!(qs, vec![1, -1]);
}

#[test]
fn negative_kink_cube() {
    // 0-resolution is one circle, the 1-resolution two: d is a split
    let c = build_cube::<Q>(&corpus::unknot_negative_kink(), 12).unwrap();
    assert_eq!(c.complex.degrees(), -1..1);
    let d = c.complex.d(-1);
    let one = c.index_of(CubeGen { u: 0, mask: 0 }).unwrap().1;
    let x = c.index_of(CubeGen { u: 0, mask: 1 }).unwrap().1;
    let at = |u: u64, mask: u64| c.index_of(CubeGen { u, mask }).unwrap().1;
    // Delta(1) = 1 (x) X + X (x) 1 - (U+V) 1 (x) 1
    assert_eq!(d.get(at(1, 0b10), one), Poly::one());
    assert_eq!(d.get(at(1, 0b01), one), Poly::one());
    assert_eq!(d.get(at(1, 0), one), p("-U-V"));
    // Delta(X) = X (x) X - UV 1 (x) 1
    assert_eq!(d.get(at(1, 0b11), x), Poly::one());
    assert_eq!(d.get(at(1, 0), x), p("-U*V"));
}

#[test]
fn cubes_are_complexes() {
    for (name, d) in corpus::all() {
        if d.ncrossings() > 6 {
            continue;
        }
        let c = build_cube::<Q>(&d, 12).unwrap();
        c.complex.check().unwrap_or_else(|e| panic!("{name}: {e}"));
        let c2 = build_cube::<F2>(&d, 12).unwrap();
        c2.complex.check().unwrap_or_else(|e| panic!("{name}: {e}"));
        if d.basepoint().is_some() {
            let r = reduced_subcomplex(&c, &d).unwrap();
            r.complex.check().unwrap_or_else(|e| panic!("{name} reduced: {e}"));
        }
    }
}

#[test]
fn crossing_cap() {
    let t = corpus::torus_3_m4();
    assert!(matches!(build_cube::<F2>(&t, 6), Err(ComplexError::CrossingCap { crossings: 8, cap: 6 })));
}

#[test]
fn reduced_ranks_halve() {
    for (name, d) in corpus::all() {
        if d.ncrossings() > 6 {
            continue;
        }
        let d = match d.basepoint() {
            Some(_) => d,
            None => d.with_basepoint(d.edge_labels()[0]).unwrap(),
        };
        let c = build_cube::<Q>(&d, 12).unwrap();
        let r = reduced_subcomplex(&c, &d).unwrap();
        assert_eq!(2 * r.complex.total_rank(), c.complex.total_rank(), "{name}");
    }
}

#[test]
fn json_round_trip() {
    let c = build_cube::<Q>(&corpus::trefoil(), 12).unwrap().complex;
    assert_eq!(GradedChainComplex::from_json(&c.to_json()).unwrap(), c);
    assert!(GradedChainComplex::<Q>::from_json("{}").is_err());
}

fn localized_ranks<F: crate::algebra::Field>(c: &GradedChainComplex<F>) -> Vec<(i32, usize)> {
    c.degrees()
        .map(|h| {
            let r = |m: Option<&crate::algebra::PolyMatrix<F>>| m.map_or(0, |m| ffge_rank(m));
            let lower = if h > c.degrees().start { r(c.d_ref(h - 1)) } else { 0 };
            (h, c.rank(h) - r(c.d_ref(h)) - lower)
        })
        .filter(|(_, k)| *k > 0)
        .collect()
}

#[test]
fn gauss_reduce_is_an_equivalence() {
    for (name, d) in corpus::all() {
        if d.ncrossings() > 4 {
            continue;
        }
        let c = build_cube::<Q>(&d, 12).unwrap().complex;
        let (r, tr) = gauss_reduce(&c, true);
        r.check().unwrap();
        tr.unwrap().check(&c, &r).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert!(r.total_rank() <= c.total_rank());
        assert_eq!(localized_ranks(&r), localized_ranks(&c), "{name}");
    }
}

#[test]
fn transport_matches_trace() {
    let c = build_cube::<Q>(&corpus::trefoil(), 12).unwrap().complex;
    let (_, tr) = gauss_reduce(&c, true);
    let tr = tr.unwrap();
    let z: Vec<Poly<Q>> = (0..c.rank(0)).map(|i| Poly::from_i64(i as i64 + 1)).collect();
    let (_, moved) = transport_chain(&c, 0, &z);
    assert_eq!(moved, tr.forward(0, &z));
}

fn scan<F: crate::algebra::Field>(d: &LinkDiagram, reduced: bool, trace: bool) -> (GradedChainComplex<F>, Option<EquivalenceTrace<F>>) {
    scan_reduce::<F>(d, &ScanOptions { reduced, trace }).unwrap()
}

#[test]
fn scan_is_an_equivalence() {
    for (name, d) in corpus::all() {
        if d.ncrossings() > 4 {
            continue;
        }
        let cube = build_cube::<Q>(&d, 12).unwrap();
        let (s, tr) = scan::<Q>(&d, false, true);
        s.check().unwrap_or_else(|e| panic!("{name}: {e}"));
        tr.unwrap().check(&cube.complex, &s).unwrap_or_else(|e| panic!("{name}: {e}"));
        let (s2, tr2) = scan::<F2>(&d, false, true);
        let cube2 = build_cube::<F2>(&d, 12).unwrap();
        tr2.unwrap().check(&cube2.complex, &s2).unwrap_or_else(|e| panic!("{name} over F2: {e}"));
    }
}

#[test]
fn reduced_scan_is_an_equivalence() {
    for (name, d) in corpus::all() {
        if d.ncrossings() > 4 {
            continue;
        }
        for e in d.edge_labels().iter().take(3) {
            let d = d.with_basepoint(*e).unwrap();
            let cube = reduced_subcomplex(&build_cube::<Q>(&d, 12).unwrap(), &d).unwrap();
            let (s, tr) = scan::<Q>(&d, true, true);
            s.check().unwrap_or_else(|err| panic!("{name} at {e}: {err}"));
            tr.unwrap().check(&cube.complex, &s).unwrap_or_else(|err| panic!("{name} at {e}: {err}"));
        }
    }
}

#[test]
fn scan_needs_basepoint_for_reduced() {
    let r = scan_reduce::<Q>(&corpus::hopf(), &ScanOptions { reduced: true, trace: false });
    assert!(matches!(r, Err(ComplexError::NoBasepoint)));
}

#[test]
fn localized_ranks_of_small_links() {
    let rank = |d: &LinkDiagram| -> usize { localized_ranks(&scan::<Q>(d, false, false).0).iter().map(|x| x.1).sum() };
    assert_eq!(rank(&LinkDiagram::unknot()), 2);
    assert_eq!(rank(&corpus::trefoil()), 2);
    assert_eq!(localized_ranks(&scan::<Q>(&corpus::trefoil(), false, false).0), vec![(0, 2)]);
    assert_eq!(rank(&corpus::hopf()), 4);
    assert_eq!(rank(&corpus::unlink2()), 4);
}

#[test]
fn torus_scan_is_small() {
    let (s, _) = scan::<F2>(&corpus::torus_3_m4(), false, false);
    s.check().unwrap();
    assert!(s.total_rank() < 1 << 8);
    assert_eq!(localized_ranks(&s).iter().map(|x| x.1).sum::<usize>(), 2);
}

#[test]
fn dual_of_dual() {
    let c = build_cube::<Q>(&corpus::trefoil(), 12).unwrap().complex;
    let dd = mirror_dual(&mirror_dual(&c));
    assert_eq!(dd.degrees(), c.degrees());
    for h in c.degrees() {
        assert_eq!(dd.d(h), c.d(h));
        let qs: Vec<i32> = dd.gens(h).iter().map(|g| g.q).collect();
        assert_eq!(qs, c.gens(h).iter().map(|g| g.q).collect::<Vec<_>>());
    }
}

#[test]
fn mirror_duality() {
    for d in [LinkDiagram::unknot(), corpus::unknot_positive_kink(), corpus::trefoil(), corpus::hopf()] {
        verify_mirror_duality::<Q>(&d).unwrap();
        verify_mirror_duality::<F2>(&d).unwrap();
    }
    for d in [corpus::unknot_positive_kink(), corpus::trefoil()] {
        let d = d.with_basepoint(d.edge_labels()[0]).unwrap();
        verify_reduced_mirror_duality::<Q>(&d).unwrap();
        verify_reduced_mirror_duality::<F2>(&d).unwrap();
    }
}

