use super::*;
use crate::corpus;

#[test]
fn one_crossing_codes() {
    let p = LinkDiagram::parse_pd("PD[X[2,2,1,1]]").unwrap();
    assert_eq!((p.ncrossings(), p.ncomponents(), p.writhe()), (1, 1, 1));
    let n = LinkDiagram::parse_pd("PD[X[1,2,2,1]]").unwrap();
    assert_eq!((n.ncrossings(), n.ncomponents(), n.writhe()), (1, 1, -1));
}

#[test]
fn knot_theory_trefoil_code() {
    // every edge appears twice and the three crossings share one sign
    let d = LinkDiagram::parse_pd("PD[X[1,4,2,5],X[3,6,4,1],X[5,2,6,3]]").unwrap();
    assert_eq!((d.ncrossings(), d.ncomponents()), (3, 1));
    assert_eq!(d.writhe(), -3);
    assert_eq!(d.mirror().writhe(), 3);
}

#[test]
fn malformed_codes() {
    assert!(matches!(LinkDiagram::parse_pd("PD[X[1,4,2]]"), Err(DiagramError::Malformed(_))));
    assert!(matches!(LinkDiagram::parse_pd("PD[X[1,4,2,3]]"), Err(DiagramError::EdgeCount { .. })));
    assert!(LinkDiagram::parse_pd("X[1,1,2,2]").is_err());
    assert!(LinkDiagram::parse_pd("PD[X[2,2,1,1],]").is_err());
    assert!(LinkDiagram::parse_pd("PD[X[a,2,1,1]]").is_err());
}

#[test]
fn non_planar_code_is_rejected() {
    // labels pair up but the faces do not close up to a sphere
    let r = LinkDiagram::parse_pd("PD[X[1,1,2,3],X[2,4,3,4]]");
    assert!(matches!(r, Err(DiagramError::NonPlanar { .. })), "{r:?}");
    assert!(LinkDiagram::parse_pd("PD[X[1,3,2,4],X[3,1,4,2]]").is_ok());
}

#[test]
fn json_form() {
    let d = LinkDiagram::parse_json(r#"{"crossings":[{"edges":[2,2,1,1],"sign":1}],"basepoint":1,"unknots":1}"#)
        .unwrap();
    assert_eq!((d.ncrossings(), d.ncomponents(), d.basepoint()), (1, 2, Some(1)));
    assert!(matches!(
        LinkDiagram::parse_json(r#"{"crossings":[{"edges":[2,2,1,1],"sign":-1}]}"#),
        Err(DiagramError::SignMismatch { .. })
    ));
    assert!(matches!(LinkDiagram::parse_json(r#"{"crossings":[],"basepoint":7}"#), Err(DiagramError::NoSuchEdge(7))));
    let u = LinkDiagram::parse(r#"{"unknots":2}"#).unwrap();
    assert_eq!(u.ncomponents(), 2);
}

#[test]
fn mirror_is_an_involution() {
    let p = corpus::unknot_positive_kink();
    assert_eq!(p.mirror().writhe(), -1);
    let t = corpus::trefoil();
    assert_eq!(t.mirror().writhe(), -3);
    assert_eq!(t.mirror().mirror(), t);
    for (_, d) in corpus::all() {
        let m = d.mirror();
        assert_eq!(m.ncomponents(), d.ncomponents());
        assert_eq!(m.writhe(), -d.writhe());
        assert_eq!(m.mirror(), d);
    }
}

#[test]
fn mirror_swaps_smoothings() {
    let t = corpus::trefoil();
    let m = t.mirror();
    for bits in 0..8u32 {
        let u: Vec<bool> = (0..3).map(|i| bits >> i & 1 == 1).collect();
        let ubar: Vec<bool> = u.iter().map(|b| !b).collect();
        assert_eq!(t.resolve(&u).unwrap().circles, m.resolve(&ubar).unwrap().circles);
    }
}

#[test]
fn resolutions() {
    let p = corpus::unknot_positive_kink();
    let r0 = p.resolve(&[false]).unwrap().circles.len();
    let r1 = p.resolve(&[true]).unwrap().circles.len();
    assert_eq!((r0, r1), (2, 1));
    let n = corpus::unknot_negative_kink();
    assert_eq!(n.resolve(&[false]).unwrap().circles.len(), 1);
    assert_eq!(n.resolve(&[true]).unwrap().circles.len(), 2);
    assert_eq!(LinkDiagram::unknot().resolve(&[]).unwrap().circles.len(), 1);
    assert!(matches!(p.resolve(&[]), Err(DiagramError::WrongLength { .. })));
}

#[test]
fn oriented_resolutions() {
    let t = corpus::trefoil();
    let o = t.default_orientation();
    assert_eq!(t.oriented_vertex(&o).unwrap(), vec![false; 3]);
    assert_eq!(t.oriented_resolution(&o).unwrap().circles.len(), 2);
    assert_eq!(t.seifert_circle_count(&o).unwrap(), 2);
    let p = corpus::unknot_positive_kink();
    assert_eq!(p.seifert_circle_count(&p.default_orientation()).unwrap(), 2);
    let n = corpus::unknot_negative_kink();
    assert_eq!(n.oriented_vertex(&n.default_orientation()).unwrap(), vec![true]);
    assert_eq!(n.seifert_circle_count(&n.default_orientation()).unwrap(), 2);
    assert_eq!(LinkDiagram::unknot().seifert_circle_count(&LinkDiagram::unknot().default_orientation()).unwrap(), 1);
    assert_eq!(LinkDiagram::unlink(2).seifert_circle_count(&LinkDiagram::unlink(2).default_orientation()).unwrap(), 2);
}

#[test]
fn hopf_orientations() {
    let h = corpus::hopf();
    let os = Orientation::all(&h);
    assert_eq!(os.len(), 4);
    let writhes: Vec<i64> = os.iter().map(|o| h.writhe_with(o).unwrap()).collect();
    assert_eq!(writhes, vec![2, -2, -2, 2]);
}

#[test]
fn arc_count_is_preserved() {
    for (_, d) in corpus::all() {
        let n = d.ncrossings();
        if n > 8 {
            continue;
        }
        let u: Vec<bool> = (0..n).map(|i| i % 2 == 1).collect();
        let r = d.resolve(&u).unwrap();
        let total: usize = r.circles.iter().map(|c| c.edges.len()).sum();
        assert_eq!(total, d.edge_labels().len());
    }
}

#[test]
fn faces_satisfy_euler() {
    for (_, d) in corpus::all() {
        if d.ncrossings() == 0 {
            continue;
        }
        let f = Faces::trace(&d);
        let v = d.ncrossings() as i64;
        assert_eq!(v - 2 * v + f.len() as i64, 2 * f.npieces() as i64);
    }
}

#[test]
fn checkerboard_unknot() {
    let u = LinkDiagram::unknot();
    let o = u.default_orientation();
    assert_eq!(u.checkerboard_labels(&o, None).unwrap().labels, vec![Label::A]);
    assert_eq!(u.checkerboard_labels(&o.reverse(), None).unwrap().labels, vec![Label::B]);
    let cw = u.with_loop_direction(1, false).unwrap();
    assert_eq!(cw.checkerboard_labels(&o, None).unwrap().labels, vec![Label::B]);
    // with a basepoint the marked circle is always a
    assert_eq!(cw.checkerboard_labels(&o, Some(1)).unwrap().labels, vec![Label::A]);
    assert!(matches!(u.checkerboard_labels(&o, Some(9)), Err(DiagramError::NoSuchEdge(9))));
}

#[test]
fn checkerboard_trefoil() {
    let t = corpus::trefoil();
    let o = t.default_orientation();
    let l = t.checkerboard_labels(&o, None).unwrap();
    assert_eq!(l.labels.len(), 2);
    assert_ne!(l.labels[0], l.labels[1]);
}

#[test]
fn checkerboard_reversal_swaps_labels() {
    for (_, d) in corpus::all() {
        for o in Orientation::all(&d) {
            let a = d.checkerboard_labels(&o, None).unwrap();
            let b = d.checkerboard_labels(&o.reverse(), None).unwrap();
            assert_eq!(a.swapped(), b);
        }
    }
}

#[test]
fn basepoint_marks_circle_a() {
    for (_, d) in corpus::all() {
        for p in d.edge_labels().iter().copied().take(4) {
            for o in Orientation::all(&d) {
                let res = d.oriented_resolution(&o).unwrap();
                let l = d.checkerboard_labels(&o, Some(p)).unwrap();
                let c = res.circle_of_edge(&d, p).unwrap();
                assert_eq!(l.labels[c], Label::A);
            }
        }
    }
}
