//! Small regression corpus of diagrams.

use crate::diagram::LinkDiagram;

/// Closure of a braid word on `n` strands: `i` is sigma_i (positive crossing), `-i` its
/// inverse. Strands run upwards; positions are numbered from 1 on the left.
pub fn braid_closure(n: usize, word: &[i32]) -> LinkDiagram {
    let mut next = n as u32 + 1;
    let mut cur: Vec<u32> = (1..=n as u32).collect();
    let mut crossings = Vec::new();
    let mut signs = Vec::new();
    for &g in word {
        let i = g.unsigned_abs() as usize - 1;
        assert!(i + 1 < n, "generator {g} needs more than {n} strands");
        let (a, b) = (cur[i], cur[i + 1]);
        let (c, d) = (next, next + 1);
        next += 2;
        if g > 0 {
            crossings.push([b, d, c, a]);
            signs.push(1);
        } else {
            crossings.push([a, b, d, c]);
            signs.push(-1);
        }
        cur[i] = c;
        cur[i + 1] = d;
    }
    // close up: the top label at each position becomes the bottom label
    let rename = |e: u32| -> u32 {
        match cur.iter().position(|x| *x == e) {
            Some(p) if e > n as u32 => p as u32 + 1,
            _ => e,
        }
    };
    let crossings: Vec<[u32; 4]> = crossings.iter().map(|x| x.map(rename)).collect();
    let idle = (1..=n as u32).filter(|e| cur[*e as usize - 1] == *e).count();
    // compact the labels to 1..E in order of appearance
    let mut seen = std::collections::BTreeMap::new();
    for x in &crossings {
        for e in x {
            let k = seen.len() as u32 + 1;
            seen.entry(*e).or_insert(k);
        }
    }
    let crossings: Vec<[u32; 4]> = crossings.iter().map(|x| x.map(|e| seen[&e])).collect();
    LinkDiagram::new(&crossings, Some(&signs), idle).expect("braid closures are valid diagrams")
}

pub fn unknot() -> LinkDiagram {
    LinkDiagram::unknot()
}

/// One-crossing diagram of the unknot with a positive kink.
pub fn unknot_positive_kink() -> LinkDiagram {
    LinkDiagram::parse_pd("PD[X[2,2,1,1]]").unwrap()
}

/// One-crossing diagram of the unknot with a negative kink.
pub fn unknot_negative_kink() -> LinkDiagram {
    LinkDiagram::parse_pd("PD[X[1,2,2,1]]").unwrap()
}

pub fn trefoil() -> LinkDiagram {
    braid_closure(2, &[1, 1, 1])
}

pub fn left_trefoil() -> LinkDiagram {
    braid_closure(2, &[-1, -1, -1])
}

/// Right-handed trefoil with an extra positive Reidemeister I kink.
pub fn trefoil_kinked() -> LinkDiagram {
    braid_closure(3, &[1, 1, 1, 2])
}

pub fn figure_eight() -> LinkDiagram {
    braid_closure(3, &[1, -2, 1, -2])
}

pub fn hopf() -> LinkDiagram {
    braid_closure(2, &[1, 1])
}

pub fn unlink2() -> LinkDiagram {
    LinkDiagram::unlink(2)
}

pub fn trefoil_sum_trefoil() -> LinkDiagram {
    braid_closure(3, &[1, 1, 1, 2, 2, 2])
}

pub fn trefoil_plus_unknot() -> LinkDiagram {
    trefoil().with_unknots(1)
}

/// T(3,-4) as the closure of (sigma_1^-1 sigma_2^-1)^4.
pub fn torus_3_m4() -> LinkDiagram {
    braid_closure(3, &[-1, -2, -1, -2, -1, -2, -1, -2])
}

/// Named corpus entries.
pub fn all() -> Vec<(&'static str, LinkDiagram)> {
    vec![
        ("unknot", unknot()),
        ("unknot+kink", unknot_positive_kink()),
        ("unknot-kink", unknot_negative_kink()),
        ("trefoil", trefoil()),
        ("trefoil-left", left_trefoil()),
        ("trefoil+kink", trefoil_kinked()),
        ("figure-eight", figure_eight()),
        ("hopf", hopf()),
        ("unlink2", unlink2()),
        ("trefoil#trefoil", trefoil_sum_trefoil()),
        ("trefoil+unknot", trefoil_plus_unknot()),
        ("T(3,-4)", torus_3_m4()),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn braid_closures() {
        let t = trefoil();
        assert_eq!((t.ncrossings(), t.ncomponents(), t.writhe()), (3, 1, 3));
        let o = t.default_orientation();
        assert_eq!(t.seifert_circle_count(&o).unwrap(), 2);
        let h = hopf();
        assert_eq!((h.ncomponents(), h.writhe()), (2, 2));
        let k = torus_3_m4();
        assert_eq!((k.ncrossings(), k.ncomponents(), k.writhe()), (8, 1, -8));
        assert_eq!(k.seifert_circle_count(&k.default_orientation()).unwrap(), 3);
        assert_eq!(figure_eight().writhe(), 0);
        assert_eq!(figure_eight().ncomponents(), 1);
        assert_eq!(trefoil_sum_trefoil().ncomponents(), 1);
        assert_eq!(trefoil_kinked().writhe(), 4);
        assert_eq!(trefoil_plus_unknot().ncomponents(), 2);
    }
}
