use std::collections::{BTreeMap, HashMap};

use crate::algebra::{Field, Poly, PolyMatrix};
use crate::diagram::{LinkDiagram, Resolution};
use crate::frobenius::{add_into, AlgebraElem};

use super::{ComplexError, GradedChainComplex, Generator};

/// A Khovanov generator: vertex `u` (bit i = smoothing at crossing i) and the circles
/// labelled X (bit k = k-th circle of D_u). In a reduced cube the marked circle's bit is
/// always clear and stands for the factor X - U.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CubeGen {
    pub u: u64,
    pub mask: u64,
}

/// The cube of resolutions together with the bookkeeping that identifies its generators.
#[derive(Clone, Debug)]
pub struct Cube<F: Field> {
    pub complex: GradedChainComplex<F>,
    gens: Vec<Vec<CubeGen>>,
    index: HashMap<CubeGen, (i32, usize)>,
    resolutions: Vec<Resolution>,
    n_minus: usize,
    marked: Option<u32>,
}

fn bits(u: &[bool]) -> u64 {
    u.iter().enumerate().fold(0, |acc, (i, b)| acc | (*b as u64) << i)
}

fn unbits(u: u64, n: usize) -> Vec<bool> {
    (0..n).map(|i| u >> i & 1 == 1).collect()
}

fn vertex_name(u: u64, n: usize) -> String {
    (0..n).map(|i| if u >> i & 1 == 1 { '1' } else { '0' }).collect()
}

fn label_name(mask: u64, r: usize, marked: Option<usize>) -> String {
    (0..r)
        .map(|k| match (marked == Some(k), mask >> k & 1 == 1) {
            (true, _) => 'm',
            (false, true) => 'X',
            (false, false) => '1',
        })
        .collect()
}

/// How the circles of D_u pass to D_v along the edge changing crossing j.
enum EdgeKind {
    Merge { a: usize, b: usize, into: usize },
    Split { from: usize, a: usize, b: usize },
}

struct Edge {
    kind: EdgeKind,
    /// circle of D_v receiving each untouched circle of D_u
    carry: Vec<usize>,
}

fn edge_map(d: &LinkDiagram, ru: &Resolution, rv: &Resolution, j: usize) -> Edge {
    let e = |s: usize| d.edge_at((j, s));
    let (c0, c2) = (ru.circle_of_edge_id(e(0)), ru.circle_of_edge_id(e(2)));
    let carry = ru.circles.iter().map(|c| rv.circle_of_edge_id(c.edge_ids[0])).collect();
    let kind = if c0 != c2 {
        EdgeKind::Merge { a: c0, b: c2, into: rv.circle_of_edge_id(e(0)) }
    } else {
        EdgeKind::Split { from: c0, a: rv.circle_of_edge_id(e(0)), b: rv.circle_of_edge_id(e(1)) }
    };
    Edge { kind, carry }
}

impl Edge {
    /// Image of the generator with labels `mask` in D_u, as labels of D_v.
    fn apply<F: Field>(&self, mask: u64, r_u: usize) -> BTreeMap<u64, Poly<F>> {
        let mut rest = 0u64;
        let skip = |k: usize| match self.kind {
            EdgeKind::Merge { a, b, .. } => k == a || k == b,
            EdgeKind::Split { from, .. } => k == from,
        };
        for k in 0..r_u {
            if !skip(k) && mask >> k & 1 == 1 {
                rest |= 1 << self.carry[k];
            }
        }
        let mut out = BTreeMap::new();
        match self.kind {
            EdgeKind::Merge { a, b, into } => {
                let p = AlgebraElem::<F>::basis(mask >> a & 1 == 1).mul(&AlgebraElem::basis(mask >> b & 1 == 1));
                add_into(&mut out, rest, p.c0);
                add_into(&mut out, rest | 1 << into, p.c1);
            }
            EdgeKind::Split { from, a, b } => {
                let t = AlgebraElem::<F>::basis(mask >> from & 1 == 1).comult();
                for (i, row) in t.iter().enumerate() {
                    for (k, c) in row.iter().enumerate() {
                        add_into(&mut out, rest | (i as u64) << a | (k as u64) << b, c.clone());
                    }
                }
            }
        }
        out
    }
}

/// The sign s_{u,v} = (-1)^{#{i<j : u_i = 1}}.
fn edge_sign(u: u64, j: usize) -> bool {
    (u & ((1u64 << j) - 1)).count_ones() % 2 == 1
}

/// The cube of resolutions CKh(D) over R, with gradings gr_h = |u| - n_- and
/// gr_q = #1 - #X + |u| + n_+ - 2n_-.
pub fn build_cube<F: Field>(d: &LinkDiagram, cap: usize) -> Result<Cube<F>, ComplexError> {
    let n = d.ncrossings();
    if n > cap || n > 20 {
        return Err(ComplexError::CrossingCap { crossings: n, cap: cap.min(20) });
    }
    let (np, nm) = (d.n_plus() as i32, d.n_minus() as i32);
    let resolutions: Vec<Resolution> =
        (0..1u64 << n).map(|u| d.resolve(&unbits(u, n))).collect::<Result<_, _>>()?;
    let mut gens: Vec<Vec<CubeGen>> = vec![Vec::new(); n + 1];
    let mut gen_info: Vec<Vec<Generator>> = vec![Vec::new(); n + 1];
    let mut index = HashMap::new();
    for u in 0..1u64 << n {
        let w = u.count_ones() as usize;
        let r = resolutions[u as usize].circles.len();
        for mask in 0..1u64 << r {
            let g = CubeGen { u, mask };
            index.insert(g, (w as i32 - nm, gens[w].len()));
            gens[w].push(g);
            let q = r as i32 - 2 * mask.count_ones() as i32 + w as i32 + np - 2 * nm;
            gen_info[w].push(Generator { q, name: format!("{}:{}", vertex_name(u, n), label_name(mask, r, None)) });
        }
    }
    let char2 = F::characteristic() == 2;
    let mut blocks = Vec::new();
    for w in 0..n {
        let mut entries = Vec::new();
        for (col, g) in gens[w].iter().enumerate() {
            let ru = &resolutions[g.u as usize];
            for j in (0..n).filter(|j| g.u >> j & 1 == 0) {
                let v = g.u | 1 << j;
                let edge = edge_map(d, ru, &resolutions[v as usize], j);
                let neg = !char2 && edge_sign(g.u, j);
                for (m, p) in edge.apply::<F>(g.mask, ru.circles.len()) {
                    let row = index[&CubeGen { u: v, mask: m }].1;
                    entries.push((row, col, if neg { p.neg() } else { p }));
                }
            }
        }
        blocks.push(PolyMatrix::from_entries(gens[w + 1].len(), gens[w].len(), entries));
    }
    let complex = GradedChainComplex { h_min: -nm, gens: gen_info, d: blocks };
    Ok(Cube { complex, gens, index, resolutions, n_minus: nm as usize, marked: None })
}

/// The subcomplex spanned by generators carrying X - U on the circle through the basepoint,
/// quantum-shifted up by one.
pub fn reduced_subcomplex<F: Field>(cube: &Cube<F>, d: &LinkDiagram) -> Result<Cube<F>, ComplexError> {
    let p = d.basepoint().ok_or(ComplexError::NoBasepoint)?;
    assert!(cube.marked.is_none(), "cube is already reduced");
    let n = d.ncrossings();
    let marked_circle = |u: u64| cube.resolutions[u as usize].circle_of_edge(d, p).expect("basepoint edge exists");
    let mut gens: Vec<Vec<CubeGen>> = Vec::new();
    let mut gen_info = Vec::new();
    let mut index = HashMap::new();
    for (i, gs) in cube.gens.iter().enumerate() {
        let h = cube.complex.h_min + i as i32;
        let mut row = Vec::new();
        let mut info = Vec::new();
        for g in gs {
            let m = marked_circle(g.u);
            if g.mask >> m & 1 == 0 {
                index.insert(*g, (h, row.len()));
                // gr_q(X - U) = gr_q(X), plus the shift
                let full = &cube.complex.gens(h)[cube.index[&CubeGen { u: g.u, mask: g.mask | 1 << m }].1];
                let r = cube.resolutions[g.u as usize].circles.len();
                info.push(Generator { q: full.q + 1, name: format!("{}:{}", vertex_name(g.u, n), label_name(g.mask, r, Some(m))) });
                row.push(*g);
            }
        }
        gens.push(row);
        gen_info.push(info);
    }
    let mut blocks = Vec::new();
    for (i, gs) in gens.iter().enumerate().take(gens.len().saturating_sub(1)) {
        let h = cube.complex.h_min + i as i32;
        let full = cube.complex.d(h);
        let mut entries = Vec::new();
        for (col, g) in gs.iter().enumerate() {
            let m = marked_circle(g.u);
            let cx = cube.index[&CubeGen { u: g.u, mask: g.mask | 1 << m }].1;
            let c1 = cube.index[g].1;
            // d((X - U) y) = d(X y) - U d(1 y)
            let mut acc: BTreeMap<u64, Poly<F>> = BTreeMap::new();
            for (r, a) in full.col(cx) {
                add_into(&mut acc, *r as u64, a.clone());
            }
            for (r, a) in full.col(c1) {
                add_into(&mut acc, *r as u64, a.mul(&Poly::u()).neg());
            }
            for (r, c) in &acc {
                let tg = cube.gens[i + 1][*r as usize];
                let mt = marked_circle(tg.u);
                if tg.mask >> mt & 1 == 1 {
                    let base = CubeGen { u: tg.u, mask: tg.mask & !(1 << mt) };
                    let c0 = acc.get(&(cube.index[&base].1 as u64)).cloned().unwrap_or_default();
                    assert_eq!(c0, c.mul(&Poly::u()).neg(), "reduced subcomplex is not closed under d");
                    entries.push((index[&base].1, col, c.clone()));
                }
            }
        }
        blocks.push(PolyMatrix::from_entries(gens[i + 1].len(), gs.len(), entries));
    }
    let complex = GradedChainComplex { h_min: cube.complex.h_min, gens: gen_info, d: blocks };
    Ok(Cube { complex, gens, index, resolutions: cube.resolutions.clone(), n_minus: cube.n_minus, marked: Some(p) })
}

impl<F: Field> Cube<F> {
    pub fn gens(&self, h: i32) -> &[CubeGen] {
        let i = h - self.complex.h_min;
        if i < 0 || i as usize >= self.gens.len() {
            &[]
        } else {
            &self.gens[i as usize]
        }
    }

    pub fn index_of(&self, g: CubeGen) -> Option<(i32, usize)> {
        self.index.get(&g).copied()
    }

    pub fn resolution(&self, u: u64) -> &Resolution {
        &self.resolutions[u as usize]
    }

    pub fn degree_of_vertex(&self, u: u64) -> i32 {
        u.count_ones() as i32 - self.n_minus as i32
    }

    pub fn marked(&self) -> Option<u32> {
        self.marked
    }

    pub fn is_reduced(&self) -> bool {
        self.marked.is_some()
    }

    /// Vertex bits of a boolean vertex.
    pub fn vertex(u: &[bool]) -> u64 {
        bits(u)
    }

    /// Expands a pure tensor at vertex `u` (one algebra element per circle; the marked
    /// circle's factor is ignored in a reduced cube) into a chain of degree |u| - n_-.
    pub fn pure_tensor(&self, u: u64, factors: &[AlgebraElem<F>]) -> Vec<Poly<F>> {
        let h = self.degree_of_vertex(u);
        let mut z = vec![Poly::zero(); self.gens(h).len()];
        let r = factors.len();
        let skip = self.marked.map(|p| {
            let res = &self.resolutions[u as usize];
            res.circles.iter().position(|c| c.edges.contains(&p)).expect("marked circle")
        });
        let mut terms: Vec<(u64, Poly<F>)> = vec![(0, Poly::one())];
        for (k, f) in factors.iter().enumerate().take(r) {
            if Some(k) == skip {
                continue;
            }
            let mut next = Vec::new();
            for (m, c) in &terms {
                if !f.c0.is_zero() {
                    next.push((*m, c.mul(&f.c0)));
                }
                if !f.c1.is_zero() {
                    next.push((*m | 1 << k, c.mul(&f.c1)));
                }
            }
            terms = next;
        }
        for (m, c) in terms {
            let (_, i) = self.index[&CubeGen { u, mask: m }];
            z[i] = z[i].add(&c);
        }
        z
    }
}
