//! Scanning: the complex of the tangle built from the first k crossings, kept small by
//! delooping closed circles and cancelling isomorphisms after each crossing.
//!
//! Boundary points are crossing slots, numbered 4c + s. A morphism between two crossingless
//! matchings O1, O2 of the same points is stored by its value in A^{(x) c}, where the c
//! circles are those of O1 glued to O2 along the boundary: term `mask` stands for the union
//! of disks bounding these circles, dotted where the bit is set.

use std::collections::{BTreeMap, HashMap};
use std::rc::Rc;

use crate::algebra::{Field, Poly, PolyMatrix};
use crate::diagram::LinkDiagram;
use crate::frobenius::{add_into, FrobeniusPair};

use super::cube::{build_cube, reduced_subcomplex, CubeGen};
use super::reduce::{Hom, Sparse, Tracking};
use super::{ComplexError, EquivalenceTrace, GradedChainComplex, Generator};

/// A crossingless matching: arcs (a < b, sorted) and closed loops tagged by their
/// smallest slot.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct Object {
    arcs: Vec<(u32, u32)>,
    loops: Vec<u32>,
}

impl Object {
    fn new(mut arcs: Vec<(u32, u32)>, loops: Vec<u32>) -> Self {
        for a in arcs.iter_mut() {
            if a.0 > a.1 {
                *a = (a.1, a.0);
            }
        }
        arcs.sort();
        Object { arcs, loops }
    }

    fn without_loops(&self) -> Self {
        Object { arcs: self.arcs.clone(), loops: vec![] }
    }
}

type Cob<F> = BTreeMap<u64, Poly<F>>;

/// Circles of O1 glued to O2: arc circles by smallest point, then the loops of O1, then
/// those of O2.
struct Circles {
    n_arc: usize,
    of_point: HashMap<u32, usize>,
    n_src: usize,
    n_tgt: usize,
}

impl Circles {
    fn len(&self) -> usize {
        self.n_arc + self.n_src + self.n_tgt
    }
    fn src_loop(&self, i: usize) -> usize {
        self.n_arc + i
    }
    fn tgt_loop(&self, i: usize) -> usize {
        self.n_arc + self.n_src + i
    }
}

fn find(p: &mut [usize], x: usize) -> usize {
    let mut x = x;
    while p[x] != x {
        p[x] = p[p[x]];
        x = p[x];
    }
    x
}

/// A surface assembled from disks by gluing along intervals and circles.
struct Assembly {
    ndisks: usize,
    /// per component: disks bitmask, genus, result circles
    comps: Vec<(u64, u32, Vec<usize>)>,
}

fn assemble(ndisks: usize, intervals: &[(usize, usize)], circles: &[(usize, usize)], result: &[usize]) -> Assembly {
    assert!(ndisks <= 64, "too many disks in one cobordism");
    let mut p: Vec<usize> = (0..ndisks).collect();
    for (a, b) in intervals.iter().chain(circles) {
        let (ra, rb) = (find(&mut p, *a), find(&mut p, *b));
        p[ra] = rb;
    }
    let mut roots: Vec<usize> = (0..ndisks).map(|x| find(&mut p, x)).collect();
    let mut ids: Vec<usize> = roots.clone();
    ids.sort();
    ids.dedup();
    for r in roots.iter_mut() {
        *r = ids.binary_search(r).unwrap();
    }
    let mut comps: Vec<(u64, i64, Vec<usize>)> = vec![(0, 0, vec![]); ids.len()];
    for (x, r) in roots.iter().enumerate() {
        comps[*r].0 |= 1 << x;
        comps[*r].1 += 1;
    }
    for (a, _) in intervals {
        comps[roots[*a]].1 -= 1;
    }
    for (i, d) in result.iter().enumerate() {
        comps[roots[*d]].2.push(i);
    }
    let comps = comps
        .into_iter()
        .map(|(m, chi, cs)| {
            let twice_g = 2 - chi - cs.len() as i64;
            assert!(twice_g >= 0 && twice_g % 2 == 0, "impossible surface: chi {chi}, {} boundary circles", cs.len());
            (m, (twice_g / 2) as u32, cs)
        })
        .collect();
    Assembly { ndisks, comps }
}

/// The cobordism category on crossingless matchings, with caches.
pub(crate) struct CobCat<F: Field> {
    objs: Vec<Object>,
    ids: HashMap<Object, usize>,
    circles: HashMap<(usize, usize), Rc<Circles>>,
    compositions: HashMap<(usize, usize, usize), Rc<Assembly>>,
    /// Delta^(b)(X^k h^g) on b factors
    values: HashMap<(usize, u32, u32), Rc<Cob<F>>>,
    pair: FrobeniusPair<F>,
}

impl<F: Field> CobCat<F> {
    fn new() -> Self {
        CobCat {
            objs: vec![],
            ids: HashMap::new(),
            circles: HashMap::new(),
            compositions: HashMap::new(),
            values: HashMap::new(),
            pair: FrobeniusPair::standard(),
        }
    }

    fn intern(&mut self, o: Object) -> usize {
        if let Some(i) = self.ids.get(&o) {
            return *i;
        }
        self.objs.push(o.clone());
        self.ids.insert(o, self.objs.len() - 1);
        self.objs.len() - 1
    }

    fn circles(&mut self, a: usize, b: usize) -> Rc<Circles> {
        if let Some(c) = self.circles.get(&(a, b)) {
            return c.clone();
        }
        let (oa, ob) = (&self.objs[a], &self.objs[b]);
        let mut pts: Vec<u32> = oa.arcs.iter().flat_map(|(x, y)| [*x, *y]).collect();
        pts.sort();
        let idx = |x: u32| pts.binary_search(&x).expect("objects share their boundary");
        let mut p: Vec<usize> = (0..pts.len()).collect();
        for (x, y) in oa.arcs.iter().chain(&ob.arcs) {
            let (rx, ry) = (find(&mut p, idx(*x)), find(&mut p, idx(*y)));
            p[rx] = ry;
        }
        // points are sorted, so first appearance orders circles by smallest point
        let mut circle_of_root = HashMap::new();
        let mut of_point = HashMap::new();
        for (i, x) in pts.iter().enumerate() {
            let r = find(&mut p, i);
            let n = circle_of_root.len();
            let c = *circle_of_root.entry(r).or_insert(n);
            of_point.insert(*x, c);
        }
        let c = Rc::new(Circles { n_arc: circle_of_root.len(), of_point, n_src: oa.loops.len(), n_tgt: ob.loops.len() });
        self.circles.insert((a, b), c.clone());
        c
    }

    fn value(&mut self, b: usize, k: u32, g: u32) -> Rc<Cob<F>> {
        if let Some(v) = self.values.get(&(b, k, g)) {
            return v.clone();
        }
        let mut e = self.pair.x_pow(k);
        for _ in 0..g {
            e = self.pair.mult(&e, &self.pair.handle());
        }
        let v = if b == 0 {
            let mut m = BTreeMap::new();
            add_into(&mut m, 0, e.counit());
            m
        } else {
            self.pair.comult_iter(&e, b)
        };
        let v = Rc::new(v);
        self.values.insert((b, k, g), v.clone());
        v
    }

    /// Value of an assembled surface whose disks carry the dots in `dots`.
    fn evaluate(&mut self, asm: &Assembly, dots: u64, coeff: &Poly<F>, out: &mut Cob<F>) {
        let mut acc: Vec<(u64, Poly<F>)> = vec![(0, coeff.clone())];
        for (mask, g, cs) in &asm.comps {
            let k = (dots & mask).count_ones();
            let v = self.value(cs.len(), k, *g);
            if v.is_empty() {
                return;
            }
            let mut next = Vec::with_capacity(acc.len() * v.len());
            for (m, c) in &acc {
                for (lm, lc) in v.iter() {
                    let mut rm = *m;
                    for (i, circ) in cs.iter().enumerate() {
                        if lm >> i & 1 == 1 {
                            rm |= 1 << circ;
                        }
                    }
                    next.push((rm, c.mul(lc)));
                }
            }
            acc = next;
        }
        for (m, c) in acc {
            add_into(out, m, c);
        }
    }

    fn composition(&mut self, a: usize, b: usize, c: usize) -> Rc<Assembly> {
        if let Some(x) = self.compositions.get(&(a, b, c)) {
            return x.clone();
        }
        let cf = self.circles(a, b);
        let cg = self.circles(b, c);
        let cr = self.circles(a, c);
        let nf = cf.len();
        let ob = &self.objs[b];
        let intervals: Vec<(usize, usize)> = ob.arcs.iter().map(|(x, _)| (cf.of_point[x], nf + cg.of_point[x])).collect();
        let glued: Vec<(usize, usize)> = (0..ob.loops.len()).map(|i| (cf.tgt_loop(i), nf + cg.src_loop(i))).collect();
        let mut result = vec![usize::MAX; cr.len()];
        for (x, circ) in &cr.of_point {
            result[*circ] = cf.of_point[x];
        }
        for i in 0..cr.n_src {
            result[cr.src_loop(i)] = cf.src_loop(i);
        }
        for i in 0..cr.n_tgt {
            result[cr.tgt_loop(i)] = nf + cg.tgt_loop(i);
        }
        let asm = Rc::new(assemble(nf + cg.len(), &intervals, &glued, &result));
        self.compositions.insert((a, b, c), asm.clone());
        asm
    }

    fn combine(&mut self, asm: &Assembly, f: &Cob<F>, nf: usize, g: &Cob<F>) -> Cob<F> {
        let mut out = BTreeMap::new();
        debug_assert!(asm.ndisks >= nf);
        for (mf, cf) in f {
            for (mg, cg) in g {
                self.evaluate(asm, mf | mg << nf, &cf.mul(cg), &mut out);
            }
        }
        out
    }

    fn has_loops(&self, a: usize) -> bool {
        !self.objs[a].loops.is_empty()
    }
}

impl<F: Field> Hom<F> for CobCat<F> {
    type E = Cob<F>;

    fn compose(&mut self, g: &Cob<F>, f: &Cob<F>, a: usize, b: usize, c: usize) -> Cob<F> {
        let asm = self.composition(a, b, c);
        let nf = self.circles(a, b).len();
        self.combine(&asm, f, nf, g)
    }

    fn add(&self, x: &Cob<F>, y: &Cob<F>) -> Cob<F> {
        let mut out = x.clone();
        for (m, c) in y {
            add_into(&mut out, *m, c.clone());
        }
        out
    }

    fn scale(&self, x: &Cob<F>, c: &F) -> Cob<F> {
        x.iter().map(|(m, p)| (*m, p.scale(c))).filter(|(_, p)| !p.is_zero()).collect()
    }

    fn is_zero(&self, x: &Cob<F>) -> bool {
        x.is_empty()
    }

    fn unit(&self, x: &Cob<F>, a: usize, b: usize) -> Option<F> {
        if a != b || x.len() != 1 || self.has_loops(a) {
            return None;
        }
        x.get(&0).and_then(|p| p.as_unit().cloned())
    }
}

/// Joins two matchings along pairs of boundary points. New loops are tagged by their
/// smallest point and come after the existing ones, ordered by tag.
fn glue(o: &Object, s: &Object, pairs: &[(u32, u32)]) -> Object {
    let mut partner: HashMap<u32, u32> = HashMap::new();
    for (x, y) in o.arcs.iter().chain(&s.arcs) {
        partner.insert(*x, *y);
        partner.insert(*y, *x);
    }
    let mut joined: HashMap<u32, u32> = HashMap::new();
    for (x, y) in pairs {
        joined.insert(*x, *y);
        joined.insert(*y, *x);
    }
    let mut pts: Vec<u32> = partner.keys().copied().collect();
    pts.sort();
    let mut seen: HashMap<u32, bool> = HashMap::new();
    let mut arcs = Vec::new();
    for &x in &pts {
        if joined.contains_key(&x) || seen.contains_key(&x) {
            continue;
        }
        let mut at = x;
        loop {
            seen.insert(at, true);
            let y = partner[&at];
            seen.insert(y, true);
            match joined.get(&y) {
                Some(z) => at = *z,
                None => {
                    arcs.push((x, y));
                    break;
                }
            }
        }
    }
    let mut loops = o.loops.clone();
    loops.extend(&s.loops);
    let mut new_loops = Vec::new();
    for &x in &pts {
        if seen.contains_key(&x) {
            continue;
        }
        let mut at = x;
        let mut tag = x;
        loop {
            seen.insert(at, true);
            let y = partner[&at];
            seen.insert(y, true);
            tag = tag.min(y);
            at = joined[&y];
            if at == x {
                break;
            }
            tag = tag.min(at);
        }
        new_loops.push(tag);
    }
    new_loops.sort();
    loops.extend(new_loops);
    Object::new(arcs, loops)
}

/// Per-crossing data of one scanning step: the two smoothings and the slots glued to the
/// tangle built so far.
struct Step {
    pieces: [usize; 2],
    pairs: Vec<(u32, u32)>,
}

struct Scanner<F: Field> {
    cat: CobCat<F>,
    glued: HashMap<(usize, usize), usize>,
    tensors: HashMap<(usize, usize, usize, usize), Rc<Assembly>>,
}

impl<F: Field> Scanner<F> {
    fn glue(&mut self, a: usize, s: usize, pairs: &[(u32, u32)]) -> usize {
        if let Some(x) = self.glued.get(&(a, s)) {
            return *x;
        }
        let o = glue(&self.cat.objs[a], &self.cat.objs[s], pairs);
        let id = self.cat.intern(o);
        self.glued.insert((a, s), id);
        id
    }

    /// f (x) k for f: o1 -> o2 on the old tangle and k: s1 -> s2 on the new crossing.
    #[allow(clippy::too_many_arguments)]
    fn tensor(&mut self, f: &Cob<F>, o1: usize, o2: usize, k: &Cob<F>, s1: usize, s2: usize, pairs: &[(u32, u32)]) -> Cob<F> {
        let n1 = self.glue(o1, s1, pairs);
        let n2 = self.glue(o2, s2, pairs);
        let cf = self.cat.circles(o1, o2);
        let ck = self.cat.circles(s1, s2);
        let nf = cf.len();
        let asm = match self.tensors.get(&(o1, o2, s1, s2)) {
            Some(a) => a.clone(),
            None => {
                let disk = |x: &u32| match cf.of_point.get(x) {
                    Some(c) => *c,
                    None => nf + ck.of_point[x],
                };
                let intervals: Vec<(usize, usize)> = pairs.iter().map(|(x, y)| (disk(x), disk(y))).collect();
                let cr = self.cat.circles(n1, n2);
                let mut result = vec![usize::MAX; cr.len()];
                for (x, circ) in &cr.of_point {
                    result[*circ] = disk(x);
                }
                let (old1, old2) = (self.cat.objs[o1].loops.len(), self.cat.objs[o2].loops.len());
                for (side, obj, old, n) in [(0, n1, old1, cr.n_src), (1, n2, old2, cr.n_tgt)] {
                    for i in 0..n {
                        let slot = if side == 0 { cr.src_loop(i) } else { cr.tgt_loop(i) };
                        result[slot] = if i < old {
                            if side == 0 {
                                cf.src_loop(i)
                            } else {
                                cf.tgt_loop(i)
                            }
                        } else {
                            // a new loop runs through its tag point
                            disk(&self.cat.objs[obj].loops[i])
                        };
                    }
                }
                let a = Rc::new(assemble(nf + ck.len(), &intervals, &[], &result));
                self.tensors.insert((o1, o2, s1, s2), a.clone());
                a
            }
        };
        self.cat.combine(&asm, f, nf, k)
    }
}

fn identity<F: Field>() -> Cob<F> {
    BTreeMap::from([(0, Poly::one())])
}

/// Splitting off all loops of an object: projection onto the summand where loop i carries
/// 1 (bit clear, q+1) or X (bit set, q-1), and the matching inclusion.
fn deloop_maps<F: Field>(n_arc: usize, nloops: usize, sigma: u64) -> (Cob<F>, Cob<F>) {
    let mut split: Vec<(u64, Poly<F>)> = vec![(0, Poly::one())];
    let mut merge = 0u64;
    for i in 0..nloops {
        let bit = 1u64 << (n_arc + i);
        if sigma >> i & 1 == 0 {
            // pair against X - (U+V)
            split = split.into_iter().flat_map(|(m, c)| [(m | bit, c.clone()), (m, c.mul(&Poly::u_plus_v()).neg())]).collect();
        } else {
            merge |= bit;
        }
    }
    let mut s = BTreeMap::new();
    for (m, c) in split {
        add_into(&mut s, m, c);
    }
    (s, BTreeMap::from([(merge, Poly::one())]))
}

#[derive(Clone, Debug, Default)]
pub struct ScanOptions {
    /// compute the reduced complex, cutting the diagram at its basepoint
    pub reduced: bool,
    /// record transport maps to the cube of resolutions (small diagrams only)
    pub trace: bool,
}

struct KGen {
    u: u64,
}

/// Builds the complex of `d` crossing by crossing in input order, delooping and cancelling
/// after each step. With `trace`, also returns chain homotopy equivalence data relative to
/// the cube (or its reduced subcomplex).
pub fn scan_reduce<F: Field>(
    d: &LinkDiagram,
    opts: &ScanOptions,
) -> Result<(GradedChainComplex<F>, Option<EquivalenceTrace<F>>), ComplexError> {
    let n = d.ncrossings();
    let cut = if opts.reduced {
        let p = d.basepoint().ok_or(ComplexError::NoBasepoint)?;
        Some(d.edge_idx(p).expect("basepoint is an edge"))
    } else {
        None
    };
    let cut_on_loop = cut.is_some_and(|e| d.is_free_loop(e));
    let cut_edge = cut.filter(|_| !cut_on_loop);

    let mut sc: Scanner<F> = Scanner { cat: CobCat::new(), glued: HashMap::new(), tensors: HashMap::new() };
    let empty = sc.cat.intern(Object::new(vec![], vec![]));
    let mut cx: Sparse<Cob<F>> = Sparse::new();
    cx.push(0, 0, empty);
    let mut kgens = vec![KGen { u: 0 }];
    if opts.trace {
        cx.tracking = Some(Tracking {
            src_obj: vec![empty],
            fwd: vec![BTreeMap::from([(0, identity())])],
            back: Some(vec![BTreeMap::from([(0, identity())])]),
        });
    }
    let char2 = F::characteristic() == 2;

    for c in 0..n {
        let p = |s: usize| (4 * c + s) as u32;
        let piece0 = sc.cat.intern(Object::new(vec![(p(0), p(1)), (p(2), p(3))], vec![]));
        let piece1 = sc.cat.intern(Object::new(vec![(p(0), p(3)), (p(1), p(2))], vec![]));
        let mut pairs = Vec::new();
        for s in 0..4 {
            let e = d.edge_at((c, s));
            if Some(e) == cut_edge {
                continue;
            }
            let [a, b] = d.ends(e);
            let other = if a == (c, s) { b } else { a };
            if other.0 < c || (other.0 == c && other.1 > s) {
                pairs.push((p(s), (4 * other.0 + other.1) as u32));
            }
        }
        let step = Step { pieces: [piece0, piece1], pairs };
        sc.glued.clear();
        sc.tensors.clear();
        cx = tensor_step(&mut sc, &cx, &step, char2, &mut kgens, c);
        deloop_all(&mut sc, &mut cx);
        cx.reduce_all(&mut sc.cat);
        cx.compact();
        log::debug!("crossing {c}: {} generators", cx.len());
    }

    // read off the closed (or cut) complex
    let (np, nm) = (d.n_plus() as i32, d.n_minus() as i32);
    let to_poly = |m: &Cob<F>| -> Poly<F> {
        m.iter().fold(Poly::zero(), |acc, (mask, c)| {
            acc.add(&if mask & 1 == 1 { c.mul(&Poly::v()) } else { c.clone() })
        })
    };
    let hs: Vec<i32> = cx.h.clone();
    let lo = hs.iter().copied().min().unwrap_or(0);
    let hi = hs.iter().copied().max().unwrap_or(0);
    let mut gens: Vec<Vec<Generator>> = vec![Vec::new(); (hi - lo + 1) as usize];
    let mut pos = Vec::new();
    for i in 0..cx.len() {
        let k = (cx.h[i] - lo) as usize;
        pos.push(gens[k].len());
        gens[k].push(Generator { q: cx.q[i] + np - 2 * nm, name: format!("s{i}") });
    }
    let mut entries: Vec<Vec<(usize, usize, Poly<F>)>> = vec![Vec::new(); gens.len() - 1];
    for i in 0..cx.len() {
        for (j, m) in &cx.out[i] {
            entries[(cx.h[i] - lo) as usize].push((pos[*j], pos[i], to_poly(m)));
        }
    }
    let blocks = entries
        .into_iter()
        .enumerate()
        .map(|(k, e)| PolyMatrix::from_entries(gens[k + 1].len(), gens[k].len(), e))
        .collect();
    let mut out = GradedChainComplex::new(lo - nm, gens, blocks)?;
    let loops: Vec<u32> = d
        .free_loops()
        .iter()
        .map(|l| l.edge)
        .filter(|e| !(cut_on_loop && d.basepoint() == Some(*e)))
        .collect();
    for e in &loops {
        out = out.tensor_circle(&format!("o{e}"));
    }

    let trace = if opts.trace {
        Some(read_trace(d, &sc, &cx, &kgens, &pos, lo, cut_on_loop, &loops, opts.reduced)?)
    } else {
        None
    };
    Ok((out, trace))
}

fn tensor_step<F: Field>(
    sc: &mut Scanner<F>,
    cx: &Sparse<Cob<F>>,
    step: &Step,
    char2: bool,
    kgens: &mut Vec<KGen>,
    c: usize,
) -> Sparse<Cob<F>> {
    let mut nx: Sparse<Cob<F>> = Sparse::new();
    let pieces = step.pieces;
    let [p0, p1] = pieces;
    // the saddle is a single undotted disk
    let saddle: Cob<F> = identity();
    if let Some(t) = &cx.tracking {
        let mut src_obj = Vec::new();
        for k in 0..kgens.len() {
            for s in &pieces {
                src_obj.push(sc.glue(t.src_obj[k], *s, &step.pairs));
            }
        }
        nx.tracking = Some(Tracking { src_obj, fwd: vec![], back: Some(vec![]) });
        let old = std::mem::take(kgens);
        for kg in old {
            kgens.push(KGen { u: kg.u });
            kgens.push(KGen { u: kg.u | 1 << c });
        }
    }
    for i in 0..cx.len() {
        for (j, s) in pieces.iter().enumerate() {
            let o = sc.glue(cx.obj[i], *s, &step.pairs);
            nx.push(cx.h[i] + j as i32, cx.q[i] + j as i32, o);
        }
    }
    let id = identity::<F>();
    for i in 0..cx.len() {
        for (y, f) in &cx.out[i] {
            for (j, s) in pieces.iter().enumerate() {
                let e = sc.tensor(f, cx.obj[i], cx.obj[*y], &id, *s, *s, &step.pairs);
                nx.add(&sc.cat, 2 * i + j, 2 * y + j, e);
            }
        }
        let mut e = sc.tensor(&id, cx.obj[i], cx.obj[i], &saddle, p0, p1, &step.pairs);
        if !char2 && cx.h[i] % 2 != 0 {
            e = sc.cat.scale(&e, &F::one().neg());
        }
        nx.add(&sc.cat, 2 * i, 2 * i + 1, e);
    }
    if let (Some(t), Some(nt)) = (&cx.tracking, &mut nx.tracking) {
        let back = t.back.as_ref().unwrap();
        nt.fwd.clear();
        nt.back.as_mut().unwrap().clear();
        for i in 0..cx.len() {
            for (j, s) in pieces.iter().enumerate() {
                let mut fw = BTreeMap::new();
                for (k, f) in &t.fwd[i] {
                    let e = sc.tensor(f, t.src_obj[*k], cx.obj[i], &id, *s, *s, &step.pairs);
                    if !e.is_empty() {
                        fw.insert(2 * k + j, e);
                    }
                }
                let mut bk = BTreeMap::new();
                for (k, g) in &back[i] {
                    let e = sc.tensor(g, cx.obj[i], t.src_obj[*k], &id, *s, *s, &step.pairs);
                    if !e.is_empty() {
                        bk.insert(2 * k + j, e);
                    }
                }
                nt.fwd.push(fw);
                nt.back.as_mut().unwrap().push(bk);
            }
        }
    }
    nx
}

fn deloop_all<F: Field>(sc: &mut Scanner<F>, cx: &mut Sparse<Cob<F>>) {
    let n = cx.len();
    for i in 0..n {
        if !cx.alive[i] || !sc.cat.has_loops(cx.obj[i]) {
            continue;
        }
        let o = cx.obj[i];
        let o0 = sc.cat.intern(sc.cat.objs[o].without_loops());
        let nloops = sc.cat.objs[o].loops.len();
        let n_arc = sc.cat.objs[o0].arcs.len();
        let ins: Vec<(usize, Cob<F>)> = cx.inn[i].iter().map(|x| (*x, cx.out[*x][&i].clone())).collect();
        let outs: Vec<(usize, Cob<F>)> = cx.out[i].iter().map(|(y, e)| (*y, e.clone())).collect();
        for sigma in 0..1u64 << nloops {
            let (split, merge) = deloop_maps::<F>(n_arc, nloops, sigma);
            let dq = nloops as i32 - 2 * sigma.count_ones() as i32;
            let ni = cx.push(cx.h[i], cx.q[i] + dq, o0);
            for (x, g) in &ins {
                let e = sc.cat.compose(&split, g, cx.obj[*x], o, o0);
                cx.add(&sc.cat, *x, ni, e);
            }
            for (y, f) in &outs {
                let e = sc.cat.compose(f, &merge, o0, o, cx.obj[*y]);
                cx.add(&sc.cat, ni, *y, e);
            }
            if let Some(mut t) = cx.tracking.take() {
                let fw: Vec<(usize, Cob<F>)> = t.fwd[i].iter().map(|(k, e)| (*k, e.clone())).collect();
                for (k, f) in fw {
                    let e = sc.cat.compose(&split, &f, t.src_obj[k], o, o0);
                    if !e.is_empty() {
                        t.fwd[ni].insert(k, e);
                    }
                }
                let back = t.back.as_mut().unwrap();
                let bk: Vec<(usize, Cob<F>)> = back[i].iter().map(|(k, e)| (*k, e.clone())).collect();
                for (k, g) in bk {
                    let e = sc.cat.compose(&g, &merge, o0, o, t.src_obj[k]);
                    if !e.is_empty() {
                        back[ni].insert(k, e);
                    }
                }
                cx.tracking = Some(t);
            }
        }
        cx.alive[i] = false;
        for x in std::mem::take(&mut cx.inn[i]) {
            cx.out[x].remove(&i);
        }
        for y in std::mem::take(&mut cx.out[i]).into_keys() {
            cx.inn[y].remove(&i);
        }
        if let Some(t) = &mut cx.tracking {
            t.fwd[i].clear();
            t.back.as_mut().unwrap()[i].clear();
        }
    }
    cx.compact();
}

/// Converts the tracked maps (tangle level) into matrices against the cube's generators.
#[allow(clippy::too_many_arguments)]
fn read_trace<F: Field>(
    d: &LinkDiagram,
    sc: &Scanner<F>,
    cx: &Sparse<Cob<F>>,
    kgens: &[KGen],
    pos: &[usize],
    lo: i32,
    cut_on_loop: bool,
    loops: &[u32],
    reduced: bool,
) -> Result<EquivalenceTrace<F>, ComplexError> {
    let full = build_cube::<F>(d, usize::MAX)?;
    let cube = if reduced { reduced_subcomplex(&full, d)? } else { full };
    let t = cx.tracking.as_ref().unwrap();
    let back = t.back.as_ref().unwrap();
    let nm = d.n_minus() as i32;
    let n = d.ncrossings();
    // free loop circles, in the order their tensor factors were added
    let loop_edges: Vec<usize> = loops.iter().map(|e| d.edge_idx(*e).unwrap()).collect();
    let based_loop = if cut_on_loop { d.basepoint().and_then(|p| d.edge_idx(p)) } else { None };
    let arc_shift = if reduced && !cut_on_loop { 1 } else { 0 };
    let eps = |y: bool, a: bool| -> Poly<F> {
        match (y, a) {
            (false, false) => Poly::zero(),
            (true, true) => Poly::u_plus_v(),
            _ => Poly::one(),
        }
    };
    let hs: Vec<i32> = cube.complex.degrees().collect();
    let mut fm = Vec::new();
    let mut gm = Vec::new();
    let target_rank = |h: i32| -> usize {
        (0..cx.len()).filter(|i| cx.h[*i] - nm == h).count() << loops.len()
    };
    for &h in &hs {
        let (ns, nt) = (cube.complex.rank(h), target_rank(h));
        let mut fe = Vec::new();
        let mut ge = Vec::new();
        for i in (0..cx.len()).filter(|i| cx.h[*i] - nm == h) {
            let _ = lo;
            for (k, m) in &t.fwd[i] {
                let u = kgens[*k].u;
                let res = cube.resolution(u);
                let kobj = &sc.cat.objs[t.src_obj[*k]];
                let circ: Vec<usize> =
                    kobj.loops.iter().map(|tag| res.circle_of_edge_id(d.edge_at(((*tag / 4) as usize, (*tag % 4) as usize)))).collect();
                let free: Vec<usize> = loop_edges.iter().map(|e| res.circle_of_edge_id(*e)).collect();
                let skip: Vec<usize> = based_loop.map(|e| res.circle_of_edge_id(e)).into_iter().collect();
                let r = res.circles.len();
                for g in cube.gens(h).iter().filter(|g| g.u == u) {
                    let mut coeff = Poly::zero();
                    for (a, p) in m {
                        let mut c = p.clone();
                        if arc_shift == 1 && a & 1 == 1 {
                            c = c.mul(&Poly::v());
                        }
                        for (l, ci) in circ.iter().enumerate() {
                            c = c.mul(&eps(g.mask >> ci & 1 == 1, a >> (l + arc_shift) & 1 == 1));
                        }
                        coeff = coeff.add(&c);
                    }
                    if coeff.is_zero() {
                        continue;
                    }
                    let fl = free.iter().fold(0usize, |acc, ci| acc << 1 | (g.mask >> ci & 1) as usize);
                    let row = (pos[i] << loops.len()) | fl;
                    let col = cube.index_of(*g).unwrap().1;
                    fe.push((row, col, coeff));
                }
                let _ = (r, &skip);
            }
            for (k, m) in &back[i] {
                let u = kgens[*k].u;
                let res = cube.resolution(u);
                let kobj = &sc.cat.objs[t.src_obj[*k]];
                let circ: Vec<usize> =
                    kobj.loops.iter().map(|tag| res.circle_of_edge_id(d.edge_at(((*tag / 4) as usize, (*tag % 4) as usize)))).collect();
                let free: Vec<usize> = loop_edges.iter().map(|e| res.circle_of_edge_id(*e)).collect();
                for (a, p) in m {
                    let mut c = p.clone();
                    if arc_shift == 1 && a & 1 == 1 {
                        c = c.mul(&Poly::v());
                    }
                    let mut mask = 0u64;
                    for (l, ci) in circ.iter().enumerate() {
                        if a >> (l + arc_shift) & 1 == 1 {
                            mask |= 1 << ci;
                        }
                    }
                    for fl in 0..1u64 << free.len() {
                        let mut mk = mask;
                        for (b, ci) in free.iter().enumerate() {
                            if fl >> (free.len() - 1 - b) & 1 == 1 {
                                mk |= 1 << ci;
                            }
                        }
                        let col = (pos[i] << loops.len()) | fl as usize;
                        let row = cube.index_of(CubeGen { u, mask: mk }).expect("cube generator").1;
                        ge.push((row, col, c.clone()));
                    }
                }
            }
        }
        let _ = n;
        fm.push(PolyMatrix::from_entries(nt, ns, fe));
        gm.push(PolyMatrix::from_entries(ns, nt, ge));
    }
    Ok(EquivalenceTrace::new(cube.complex.degrees().start, fm, gm))
}
