use std::collections::{BTreeMap, BTreeSet};

use crate::algebra::{Field, Poly, PolyMatrix};

use super::{GradedChainComplex, Generator};

/// Morphisms between the objects sitting at generators. For closed complexes every object
/// is the ground ring and morphisms are polynomials.
pub(crate) trait Hom<F: Field> {
    type E: Clone;
    /// g . f for f: a -> b, g: b -> c.
    fn compose(&mut self, g: &Self::E, f: &Self::E, a: usize, b: usize, c: usize) -> Self::E;
    fn add(&self, x: &Self::E, y: &Self::E) -> Self::E;
    fn scale(&self, x: &Self::E, c: &F) -> Self::E;
    fn is_zero(&self, x: &Self::E) -> bool;
    /// `Some(c)` when x = c id_a (so a == b).
    fn unit(&self, x: &Self::E, a: usize, b: usize) -> Option<F>;
}

pub(crate) struct PolyHom;

impl<F: Field> Hom<F> for PolyHom {
    type E = Poly<F>;
    fn compose(&mut self, g: &Poly<F>, f: &Poly<F>, _: usize, _: usize, _: usize) -> Poly<F> {
        g.mul(f)
    }
    fn add(&self, x: &Poly<F>, y: &Poly<F>) -> Poly<F> {
        x.add(y)
    }
    fn scale(&self, x: &Poly<F>, c: &F) -> Poly<F> {
        x.scale(c)
    }
    fn is_zero(&self, x: &Poly<F>) -> bool {
        x.is_zero()
    }
    fn unit(&self, x: &Poly<F>, _: usize, _: usize) -> Option<F> {
        x.as_unit().cloned()
    }
}

/// Transport data from a fixed source complex to the one being reduced. `fwd[i]` holds the
/// components of F landing on generator i, `back[i]` those of G leaving it.
pub(crate) struct Tracking<E> {
    pub src_obj: Vec<usize>,
    pub fwd: Vec<BTreeMap<usize, E>>,
    pub back: Option<Vec<BTreeMap<usize, E>>>,
}

/// A complex of objects with sparse morphism entries, indexed globally.
pub(crate) struct Sparse<E> {
    pub h: Vec<i32>,
    pub q: Vec<i32>,
    pub obj: Vec<usize>,
    pub alive: Vec<bool>,
    pub out: Vec<BTreeMap<usize, E>>,
    pub inn: Vec<BTreeSet<usize>>,
    pub tracking: Option<Tracking<E>>,
}

fn add_entry<F: Field, C: Hom<F>>(cat: &C, m: &mut BTreeMap<usize, C::E>, k: usize, e: C::E) -> bool {
    if cat.is_zero(&e) {
        return m.contains_key(&k);
    }
    match m.get_mut(&k) {
        Some(x) => {
            let s = cat.add(x, &e);
            if cat.is_zero(&s) {
                m.remove(&k);
                false
            } else {
                *x = s;
                true
            }
        }
        None => {
            m.insert(k, e);
            true
        }
    }
}

impl<E: Clone> Sparse<E> {
    pub fn new() -> Self {
        Sparse { h: vec![], q: vec![], obj: vec![], alive: vec![], out: vec![], inn: vec![], tracking: None }
    }

    pub fn len(&self) -> usize {
        self.h.len()
    }

    pub fn push(&mut self, h: i32, q: i32, obj: usize) -> usize {
        self.h.push(h);
        self.q.push(q);
        self.obj.push(obj);
        self.alive.push(true);
        self.out.push(BTreeMap::new());
        self.inn.push(BTreeSet::new());
        if let Some(t) = &mut self.tracking {
            t.fwd.push(BTreeMap::new());
            if let Some(b) = &mut t.back {
                b.push(BTreeMap::new());
            }
        }
        self.h.len() - 1
    }

    pub fn add<F: Field, C: Hom<F, E = E>>(&mut self, cat: &C, from: usize, to: usize, e: E) {
        if add_entry(cat, &mut self.out[from], to, e) {
            self.inn[to].insert(from);
        } else {
            self.inn[to].remove(&from);
        }
    }

    pub fn live(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(|i| self.alive[*i])
    }

    fn kill(&mut self, i: usize) {
        self.alive[i] = false;
        for x in std::mem::take(&mut self.inn[i]) {
            self.out[x].remove(&i);
        }
        for y in std::mem::take(&mut self.out[i]).into_keys() {
            self.inn[y].remove(&i);
        }
        if let Some(t) = &mut self.tracking {
            t.fwd[i].clear();
            if let Some(b) = &mut t.back {
                b[i].clear();
            }
        }
    }

    /// Cancels the isomorphism c id: b -> a.
    pub fn eliminate<F: Field, C: Hom<F, E = E>>(&mut self, cat: &mut C, b: usize, a: usize, c: &F) {
        let minus_inv = c.inv().expect("unit entries are nonzero").neg();
        let xs: Vec<(usize, E)> =
            self.inn[a].iter().filter(|x| **x != b).map(|x| (*x, self.out[*x][&a].clone())).collect();
        let ys: Vec<(usize, E)> = self.out[b].iter().filter(|(y, _)| **y != a).map(|(y, e)| (*y, e.clone())).collect();
        let ob = self.obj[b];
        for (x, gamma) in &xs {
            for (y, delta) in &ys {
                let e = cat.compose(delta, gamma, self.obj[*x], ob, self.obj[*y]);
                let e = cat.scale(&e, &minus_inv);
                self.add(cat, *x, *y, e);
            }
        }
        if let Some(mut t) = self.tracking.take() {
            // F: the a-component of F is pushed along -delta c^-1
            let fa: Vec<(usize, E)> = t.fwd[a].iter().map(|(k, e)| (*k, e.clone())).collect();
            for (y, delta) in &ys {
                for (k, f) in &fa {
                    let e = cat.compose(delta, f, t.src_obj[*k], ob, self.obj[*y]);
                    add_entry(cat, &mut t.fwd[*y], *k, cat.scale(&e, &minus_inv));
                }
            }
            if let Some(back) = &mut t.back {
                let gb: Vec<(usize, E)> = back[b].iter().map(|(k, e)| (*k, e.clone())).collect();
                for (x, gamma) in &xs {
                    for (k, g) in &gb {
                        let e = cat.compose(g, gamma, self.obj[*x], ob, t.src_obj[*k]);
                        add_entry(cat, &mut back[*x], *k, cat.scale(&e, &minus_inv));
                    }
                }
            }
            self.tracking = Some(t);
        }
        self.kill(a);
        self.kill(b);
    }

    /// Eliminates unit entries until none is left. Pivots are taken in generator order,
    /// preferring the entry with the least fill-in.
    pub fn reduce_all<F: Field, C: Hom<F, E = E>>(&mut self, cat: &mut C) -> usize {
        let mut count = 0;
        loop {
            let mut changed = false;
            for b in 0..self.len() {
                if !self.alive[b] {
                    continue;
                }
                let best = self.out[b]
                    .iter()
                    .filter_map(|(a, e)| cat.unit(e, self.obj[b], self.obj[*a]).map(|c| (*a, c)))
                    .min_by_key(|(a, _)| self.inn[*a].len());
                if let Some((a, c)) = best {
                    self.eliminate(cat, b, a, &c);
                    count += 1;
                    changed = true;
                }
            }
            if !changed {
                return count;
            }
        }
    }

    /// Renumbers the surviving generators, keeping their order.
    pub fn compact(&mut self) -> Vec<usize> {
        let mut new_of = vec![usize::MAX; self.len()];
        let mut keep = Vec::new();
        for i in self.live() {
            new_of[i] = keep.len();
            keep.push(i);
        }
        let remap = |m: &BTreeMap<usize, E>| -> BTreeMap<usize, E> { m.iter().map(|(k, e)| (new_of[*k], e.clone())).collect() };
        let out = keep.iter().map(|i| remap(&self.out[*i])).collect();
        let inn = keep.iter().map(|i| self.inn[*i].iter().map(|k| new_of[*k]).collect()).collect();
        self.h = keep.iter().map(|i| self.h[*i]).collect();
        self.q = keep.iter().map(|i| self.q[*i]).collect();
        self.obj = keep.iter().map(|i| self.obj[*i]).collect();
        self.alive = vec![true; keep.len()];
        self.out = out;
        self.inn = inn;
        if let Some(t) = &mut self.tracking {
            t.fwd = keep.iter().map(|i| std::mem::take(&mut t.fwd[*i])).collect();
            if let Some(b) = &mut t.back {
                *b = keep.iter().map(|i| std::mem::take(&mut b[*i])).collect();
            }
        }
        keep
    }
}

/// Chain homotopy equivalence data between a source complex and its reduction: F maps
/// source to target, G target to source, both degree-0 chain maps preserving gr_q, with
/// F G = id.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceTrace<F: Field> {
    h_min: i32,
    /// per degree: target gens x source gens
    f: Vec<PolyMatrix<F>>,
    /// per degree: source gens x target gens
    g: Vec<PolyMatrix<F>>,
}

impl<F: Field> EquivalenceTrace<F> {
    pub(crate) fn new(h_min: i32, f: Vec<PolyMatrix<F>>, g: Vec<PolyMatrix<F>>) -> Self {
        EquivalenceTrace { h_min, f, g }
    }

    fn slot(&self, h: i32) -> Option<usize> {
        let i = h - self.h_min;
        (i >= 0 && (i as usize) < self.f.len()).then_some(i as usize)
    }

    pub fn forward_matrix(&self, h: i32) -> Option<&PolyMatrix<F>> {
        self.slot(h).map(|i| &self.f[i])
    }

    pub fn backward_matrix(&self, h: i32) -> Option<&PolyMatrix<F>> {
        self.slot(h).map(|i| &self.g[i])
    }

    /// F applied to a source chain of degree h.
    pub fn forward(&self, h: i32, z: &[Poly<F>]) -> Vec<Poly<F>> {
        match self.slot(h) {
            Some(i) => self.f[i].apply(z).expect("chain length matches"),
            None => vec![],
        }
    }

    /// G applied to a target chain of degree h.
    pub fn backward(&self, h: i32, z: &[Poly<F>]) -> Vec<Poly<F>> {
        match self.slot(h) {
            Some(i) => self.g[i].apply(z).expect("chain length matches"),
            None => vec![],
        }
    }

    /// Checks that F and G are gr_q-preserving chain maps and F G = id.
    pub fn check(&self, source: &GradedChainComplex<F>, target: &GradedChainComplex<F>) -> Result<(), String> {
        let hs: BTreeSet<i32> = source.degrees().chain(target.degrees()).collect();
        let dims = |h: i32| (source.rank(h), target.rank(h));
        let f = |h: i32| {
            let (s, t) = dims(h);
            self.forward_matrix(h).cloned().unwrap_or_else(|| PolyMatrix::zero(t, s))
        };
        let g = |h: i32| {
            let (s, t) = dims(h);
            self.backward_matrix(h).cloned().unwrap_or_else(|| PolyMatrix::zero(s, t))
        };
        for &h in &hs {
            let (fh, gh) = (f(h), g(h));
            if (fh.nrows(), fh.ncols()) != (target.rank(h), source.rank(h)) {
                return Err(format!("F has the wrong shape in degree {h}"));
            }
            if fh.mul(&gh) != PolyMatrix::identity(target.rank(h)) {
                return Err(format!("F G != id in degree {h}"));
            }
            if f(h + 1).mul(&source.d(h)) != target.d(h).mul(&fh) {
                return Err(format!("F is not a chain map in degree {h}"));
            }
            if g(h + 1).mul(&target.d(h)) != source.d(h).mul(&gh) {
                return Err(format!("G is not a chain map in degree {h}"));
            }
            for (m, from, to) in [(&fh, source.gens(h), target.gens(h)), (&gh, target.gens(h), source.gens(h))] {
                for (r, c, p) in m.entries() {
                    if p.terms().iter().any(|(mono, _)| to[r].q - 2 * mono.degree() as i32 != from[c].q) {
                        return Err(format!("transport map does not preserve gr_q in degree {h}"));
                    }
                }
            }
        }
        Ok(())
    }
}

fn to_sparse<F: Field>(c: &GradedChainComplex<F>) -> (Sparse<Poly<F>>, Vec<(i32, usize)>) {
    let mut s = Sparse::new();
    let mut pos = Vec::new();
    let mut offset = Vec::new();
    for h in c.degrees() {
        offset.push(s.len());
        for (i, g) in c.gens(h).iter().enumerate() {
            s.push(h, g.q, 0);
            pos.push((h, i));
        }
    }
    for (k, h) in c.degrees().enumerate() {
        if let Some(m) = c.d_ref(h) {
            for (r, col, p) in m.entries() {
                s.add(&PolyHom, offset[k] + col, offset[k + 1] + r, p.clone());
            }
        }
    }
    (s, pos)
}

fn from_sparse<F: Field>(s: &Sparse<Poly<F>>, names: &[String]) -> (GradedChainComplex<F>, Vec<(i32, usize)>) {
    let hs: BTreeSet<i32> = s.h.iter().copied().collect();
    let (lo, hi) = match (hs.first(), hs.last()) {
        (Some(a), Some(b)) => (*a, *b),
        _ => return (GradedChainComplex::zero(), vec![]),
    };
    let mut gens: Vec<Vec<Generator>> = vec![Vec::new(); (hi - lo + 1) as usize];
    let mut pos = Vec::new();
    for i in 0..s.len() {
        let k = (s.h[i] - lo) as usize;
        pos.push((s.h[i], gens[k].len()));
        gens[k].push(Generator { q: s.q[i], name: names[i].clone() });
    }
    let mut entries: Vec<Vec<(usize, usize, Poly<F>)>> = vec![Vec::new(); gens.len().saturating_sub(1)];
    for i in 0..s.len() {
        for (j, p) in &s.out[i] {
            debug_assert_eq!(s.h[*j], s.h[i] + 1);
            entries[(s.h[i] - lo) as usize].push((pos[*j].1, pos[i].1, p.clone()));
        }
    }
    let d = entries
        .into_iter()
        .enumerate()
        .map(|(k, e)| PolyMatrix::from_entries(gens[k + 1].len(), gens[k].len(), e))
        .collect();
    (GradedChainComplex::new(lo, gens, d).expect("reduced complex is well formed"), pos)
}

/// Cancels every unit entry of the differential. Returns the reduced complex and, if
/// requested, the transport maps.
pub fn gauss_reduce<F: Field>(c: &GradedChainComplex<F>, trace: bool) -> (GradedChainComplex<F>, Option<EquivalenceTrace<F>>) {
    let (mut s, src_pos) = to_sparse(c);
    let names: Vec<String> = src_pos.iter().map(|(h, i)| c.gens(*h)[*i].name.clone()).collect();
    if trace {
        let n = s.len();
        let unit = |i: usize| BTreeMap::from([(i, Poly::one())]);
        s.tracking = Some(Tracking {
            src_obj: vec![0; n],
            fwd: (0..n).map(unit).collect(),
            back: Some((0..n).map(unit).collect()),
        });
    }
    s.reduce_all(&mut PolyHom);
    let keep = s.compact();
    let names: Vec<String> = keep.iter().map(|i| names[*i].clone()).collect();
    let (reduced, pos) = from_sparse(&s, &names);
    let tr = s.tracking.as_ref().map(|t| {
        let hs: Vec<i32> = c.degrees().collect();
        let mut f = Vec::new();
        let mut g = Vec::new();
        for &h in &hs {
            let mut fe = Vec::new();
            let mut ge = Vec::new();
            for (i, (hi, ti)) in pos.iter().enumerate() {
                if *hi != h {
                    continue;
                }
                for (k, p) in &t.fwd[i] {
                    fe.push((*ti, src_pos[*k].1, p.clone()));
                }
                for (k, p) in &t.back.as_ref().unwrap()[i] {
                    ge.push((src_pos[*k].1, *ti, p.clone()));
                }
            }
            f.push(PolyMatrix::from_entries(reduced.rank(h), c.rank(h), fe));
            g.push(PolyMatrix::from_entries(c.rank(h), reduced.rank(h), ge));
        }
        EquivalenceTrace::new(c.degrees().start, f, g)
    });
    (reduced, tr)
}

/// Reduces `c` and carries the chain `z` of degree h along F. Cheaper than a full trace.
pub fn transport_chain<F: Field>(c: &GradedChainComplex<F>, h: i32, z: &[Poly<F>]) -> (GradedChainComplex<F>, Vec<Poly<F>>) {
    let (mut s, src_pos) = to_sparse(c);
    let names: Vec<String> = src_pos.iter().map(|(h, i)| c.gens(*h)[*i].name.clone()).collect();
    let mut fwd = vec![BTreeMap::new(); s.len()];
    for (i, (hi, k)) in src_pos.iter().enumerate() {
        if *hi == h && !z[*k].is_zero() {
            fwd[i].insert(0, z[*k].clone());
        }
    }
    s.tracking = Some(Tracking { src_obj: vec![0], fwd, back: None });
    s.reduce_all(&mut PolyHom);
    let keep = s.compact();
    let names: Vec<String> = keep.iter().map(|i| names[*i].clone()).collect();
    let (reduced, pos) = from_sparse(&s, &names);
    let t = s.tracking.as_ref().unwrap();
    let mut out = vec![Poly::zero(); reduced.rank(h)];
    for (i, (hi, ti)) in pos.iter().enumerate() {
        if *hi == h {
            if let Some(p) = t.fwd[i].get(&0) {
                out[*ti] = p.clone();
            }
        }
    }
    (reduced, out)
}
