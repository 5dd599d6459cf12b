//! Planar link diagrams given by PD codes.
//!
//! Slot convention: `X[i,j,k,l]` lists the four edges counterclockwise starting from the
//! incoming under-strand, so the under-strand runs i -> k. The crossing is positive when the
//! over-strand runs l -> j.

mod faces;
mod resolve;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use faces::{Face, Faces};
pub use resolve::{Circle, CircleLabeling, Label, Resolution};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagramError {
    #[error("malformed PD code: {0}")]
    Malformed(String),
    #[error("edge {edge} appears {count} times (expected 2)")]
    EdgeCount { edge: u32, count: usize },
    #[error("face count gives Euler characteristic {euler}, expected {expected}")]
    NonPlanar { euler: i64, expected: i64 },
    #[error("inconsistent orientation: {0}")]
    InconsistentOrientation(String),
    #[error("crossing {crossing}: given sign {given} disagrees with the orientation")]
    SignMismatch { crossing: usize, given: i8 },
    #[error("edge {0} is not on the diagram")]
    NoSuchEdge(u32),
    #[error("resolution vertex has length {got}, expected {expected}")]
    WrongLength { expected: usize, got: usize },
    #[error("orientation has {got} component flags, expected {expected}")]
    BadOrientation { expected: usize, got: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Crossing {
    pub edges: [u32; 4],
    pub sign: i8,
}

/// A crossingless component, drawn apart from everything else.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FreeLoop {
    pub edge: u32,
    pub ccw: bool,
}

/// Slot position: (crossing index, slot 0..4).
pub type Slot = (usize, usize);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkDiagram {
    crossings: Vec<Crossing>,
    free_loops: Vec<FreeLoop>,
    basepoint: Option<u32>,
    edges: Vec<u32>,
    edge_index: BTreeMap<u32, usize>,
    /// the two slots of each edge (dense index)
    ends: Vec<[Slot; 2]>,
    /// which end of each edge is entered when following the orientation
    head: Vec<u8>,
    /// component of each edge, components numbered by smallest edge label
    component: Vec<usize>,
    ncomponents: usize,
}

/// Per-component reversal relative to the diagram's own orientation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Orientation {
    pub reversed: Vec<bool>,
}

impl Orientation {
    pub fn all(d: &LinkDiagram) -> Vec<Orientation> {
        let l = d.ncomponents();
        (0..1u64 << l).map(|m| Orientation { reversed: (0..l).map(|i| m >> i & 1 == 1).collect() }).collect()
    }

    pub fn reverse(&self) -> Orientation {
        Orientation { reversed: self.reversed.iter().map(|b| !b).collect() }
    }
}

#[derive(Deserialize)]
struct JsonCrossing {
    edges: [u32; 4],
    sign: Option<i8>,
}

#[derive(Deserialize)]
struct JsonDiagram {
    #[serde(default)]
    crossings: Vec<JsonCrossing>,
    basepoint: Option<u32>,
    #[serde(default)]
    unknots: usize,
}

impl LinkDiagram {
    /// Builds a diagram from crossings; `signs` (if given) pick the orientation of
    /// components that never pass under and are checked against the rest.
    pub fn new(crossings: &[[u32; 4]], signs: Option<&[i8]>, unknots: usize) -> Result<Self, DiagramError> {
        let mut counts: BTreeMap<u32, usize> = BTreeMap::new();
        for x in crossings {
            for e in x {
                if *e == 0 {
                    return Err(DiagramError::Malformed("edge labels must be positive".into()));
                }
                *counts.entry(*e).or_default() += 1;
            }
        }
        if let Some((e, c)) = counts.iter().find(|(_, c)| **c != 2) {
            return Err(DiagramError::EdgeCount { edge: *e, count: *c });
        }
        if let Some(s) = signs {
            if s.len() != crossings.len() || s.iter().any(|x| x.abs() != 1) {
                return Err(DiagramError::Malformed("signs must be one of +1/-1 per crossing".into()));
            }
        }
        let top = counts.keys().last().copied().unwrap_or(0);
        let free_loops = (0..unknots).map(|i| FreeLoop { edge: top + 1 + i as u32, ccw: true }).collect();
        Self::assemble(crossings, signs, free_loops, None)
    }

    /// The crossingless unlink with `n` counterclockwise components.
    pub fn unlink(n: usize) -> Self {
        Self::new(&[], None, n).unwrap()
    }

    pub fn unknot() -> Self {
        Self::unlink(1)
    }

    fn assemble(
        crossings: &[[u32; 4]],
        signs: Option<&[i8]>,
        free_loops: Vec<FreeLoop>,
        basepoint: Option<u32>,
    ) -> Result<Self, DiagramError> {
        let mut edge_index = BTreeMap::new();
        let mut edges = Vec::new();
        let mut ends: Vec<Vec<Slot>> = Vec::new();
        for (c, x) in crossings.iter().enumerate() {
            for (s, e) in x.iter().enumerate() {
                let idx = *edge_index.entry(*e).or_insert_with(|| {
                    edges.push(*e);
                    ends.push(Vec::new());
                    edges.len() - 1
                });
                ends[idx].push((c, s));
            }
        }
        for l in &free_loops {
            if edge_index.contains_key(&l.edge) {
                return Err(DiagramError::Malformed(format!("loop edge {} reused", l.edge)));
            }
            edge_index.insert(l.edge, edges.len());
            edges.push(l.edge);
            ends.push(Vec::new());
        }
        // sort edges by label so dense indices follow label order
        let mut order: Vec<usize> = (0..edges.len()).collect();
        order.sort_by_key(|&i| edges[i]);
        let edges: Vec<u32> = order.iter().map(|&i| edges[i]).collect();
        let ends_sorted: Vec<Vec<Slot>> = order.iter().map(|&i| ends[i].clone()).collect();
        let edge_index: BTreeMap<u32, usize> = edges.iter().enumerate().map(|(i, e)| (*e, i)).collect();
        let ends: Vec<[Slot; 2]> = ends_sorted
            .iter()
            .map(|v| if v.len() == 2 { [v[0], v[1]] } else { [(usize::MAX, 0), (usize::MAX, 0)] })
            .collect();

        let mut d = LinkDiagram {
            crossings: crossings.iter().map(|x| Crossing { edges: *x, sign: 0 }).collect(),
            free_loops,
            basepoint: None,
            edges,
            edge_index,
            ends,
            head: Vec::new(),
            component: Vec::new(),
            ncomponents: 0,
        };
        d.orient(signs)?;
        d.check_planar()?;
        if let Some(p) = basepoint {
            d = d.with_basepoint(p)?;
        }
        Ok(d)
    }

    fn other_end(&self, e: usize, at: Slot) -> Slot {
        let [a, b] = self.ends[e];
        if a == at {
            b
        } else {
            a
        }
    }

    pub(crate) fn edge_at(&self, (c, s): Slot) -> usize {
        self.edge_index[&self.crossings[c].edges[s]]
    }

    /// Follows the strand through crossings; returns the sequence of (edge, entered slot).
    fn strand_from(&self, e: usize, entry: Slot) -> Vec<(usize, Slot)> {
        let mut seq = Vec::new();
        let (mut e, mut entry) = (e, entry);
        loop {
            seq.push((e, entry));
            let out = (entry.0, (entry.1 + 2) % 4);
            let e2 = self.edge_at(out);
            let next = self.other_end(e2, out);
            if e2 == seq[0].0 && next == seq[0].1 {
                break;
            }
            e = e2;
            entry = next;
        }
        seq
    }

    fn orient(&mut self, signs: Option<&[i8]>) -> Result<(), DiagramError> {
        let ne = self.edges.len();
        let mut head = vec![u8::MAX; ne];
        let mut component = vec![usize::MAX; ne];
        let mut ncomp = 0;
        for e in 0..ne {
            if component[e] != usize::MAX {
                continue;
            }
            if self.ends[e][0].0 == usize::MAX {
                component[e] = ncomp;
                head[e] = 0;
                ncomp += 1;
                continue;
            }
            let seq = self.strand_from(e, self.ends[e][1]);
            // under-passes fix the direction: the under-strand enters at slot 0
            let mut forward = None;
            for (_, (c, s)) in &seq {
                let f = match s {
                    0 => true,
                    2 => false,
                    _ => continue,
                };
                match forward {
                    None => forward = Some(f),
                    Some(g) if g != f => {
                        return Err(DiagramError::InconsistentOrientation(format!(
                            "strand through edge {} enters crossing {c} against slot 1",
                            self.edges[e]
                        )))
                    }
                    _ => {}
                }
            }
            let forward = match forward {
                Some(f) => f,
                None => self.over_only_direction(&seq, signs)?,
            };
            for (ee, entry) in &seq {
                component[*ee] = ncomp;
                let idx = if self.ends[*ee][0] == *entry { 0 } else { 1 };
                head[*ee] = if forward { idx } else { 1 - idx };
            }
            ncomp += 1;
        }
        // renumber components by smallest edge label (edges are label-sorted already)
        let mut renum = vec![usize::MAX; ncomp];
        let mut next = 0;
        for &c in &component {
            if renum[c] == usize::MAX {
                renum[c] = next;
                next += 1;
            }
        }
        self.component = component.iter().map(|c| renum[*c]).collect();
        self.ncomponents = ncomp;
        self.head = head;
        for c in 0..self.crossings.len() {
            let s = self.sign_with(c, &self.head);
            if let Some(given) = signs.map(|g| g[c]) {
                if given != s {
                    return Err(DiagramError::SignMismatch { crossing: c, given });
                }
            }
            self.crossings[c].sign = s;
        }
        Ok(())
    }

    /// Direction of a strand that only passes over: from the given sign at its first
    /// crossing, or else from the usual labelling where labels increase along the strand.
    fn over_only_direction(&self, seq: &[(usize, Slot)], signs: Option<&[i8]>) -> Result<bool, DiagramError> {
        let (_, (c, s)) = seq[0];
        let x = self.crossings[c].edges;
        let l_to_j = match signs {
            Some(g) => {
                // the under-strand of c runs 0 -> 2 by convention
                g[c] > 0
            }
            None => {
                let (j, l) = (x[1], x[3]);
                j == l + 1 || l > j + 1
            }
        };
        // forward means the strand enters c at slot s as traversed
        Ok(if s == 3 { l_to_j } else { !l_to_j })
    }

    fn sign_with(&self, c: usize, head: &[u8]) -> i8 {
        let enters = |s: usize| {
            let e = self.edge_at((c, s));
            self.ends[e][head[e] as usize] == (c, s)
        };
        let under = if enters(0) { 1 } else { -1 };
        let over = if enters(3) { 1 } else { -1 };
        under * over
    }

    fn check_planar(&self) -> Result<(), DiagramError> {
        if self.crossings.is_empty() {
            return Ok(());
        }
        let faces = Faces::trace(self);
        let v = self.crossings.len() as i64;
        let e = 2 * v;
        let f = faces.len() as i64;
        let expected = 2 * faces.npieces() as i64;
        if v - e + f != expected {
            return Err(DiagramError::NonPlanar { euler: v - e + f, expected });
        }
        Ok(())
    }

    pub fn parse_pd(text: &str) -> Result<Self, DiagramError> {
        let crossings = parse_pd_crossings(text)?;
        if crossings.is_empty() {
            return Err(DiagramError::Malformed("no crossings (use an explicit unknot)".into()));
        }
        Self::new(&crossings, None, 0)
    }

    /// `{"crossings":[{"edges":[a,b,c,d],"sign":1}],"basepoint":e,"unknots":k}`.
    pub fn parse_json(text: &str) -> Result<Self, DiagramError> {
        let j: JsonDiagram = serde_json::from_str(text).map_err(|e| DiagramError::Malformed(e.to_string()))?;
        let xs: Vec<[u32; 4]> = j.crossings.iter().map(|c| c.edges).collect();
        let signs: Option<Vec<i8>> = j.crossings.iter().map(|c| c.sign).collect();
        let signs = if j.crossings.iter().any(|c| c.sign.is_some()) {
            Some(signs.ok_or_else(|| DiagramError::Malformed("give a sign for every crossing or none".into()))?)
        } else {
            None
        };
        let d = Self::new(&xs, signs.as_deref(), j.unknots)?;
        match j.basepoint {
            Some(p) => d.with_basepoint(p),
            None => Ok(d),
        }
    }

    /// Accepts either textual form.
    pub fn parse(text: &str) -> Result<Self, DiagramError> {
        if text.trim_start().starts_with('{') {
            Self::parse_json(text)
        } else {
            Self::parse_pd(text)
        }
    }

    pub fn with_basepoint(&self, edge: u32) -> Result<Self, DiagramError> {
        if !self.edge_index.contains_key(&edge) {
            return Err(DiagramError::NoSuchEdge(edge));
        }
        let mut d = self.clone();
        d.basepoint = Some(edge);
        Ok(d)
    }

    /// Adds `k` counterclockwise free loops (a split union with the unlink).
    pub fn with_unknots(&self, k: usize) -> Self {
        let mut d = self.clone();
        let top = self.edges.last().copied().unwrap_or(0);
        for i in 0..k {
            let e = top + 1 + i as u32;
            d.free_loops.push(FreeLoop { edge: e, ccw: true });
            d.edge_index.insert(e, d.edges.len());
            d.edges.push(e);
            d.ends.push([(usize::MAX, 0), (usize::MAX, 0)]);
            d.head.push(0);
            d.component.push(d.ncomponents);
            d.ncomponents += 1;
        }
        d
    }

    /// Flips the orientation of the free loop on `edge`.
    pub fn with_loop_direction(&self, edge: u32, ccw: bool) -> Result<Self, DiagramError> {
        let mut d = self.clone();
        let l = d.free_loops.iter_mut().find(|l| l.edge == edge).ok_or(DiagramError::NoSuchEdge(edge))?;
        l.ccw = ccw;
        Ok(d)
    }

    /// Crossing change at every crossing, keeping the projection and edge labels.
    pub fn mirror(&self) -> Self {
        let crossings: Vec<[u32; 4]> = self
            .crossings
            .iter()
            .map(|x| {
                let [i, j, k, l] = x.edges;
                if x.sign > 0 {
                    [l, i, j, k]
                } else {
                    [j, k, l, i]
                }
            })
            .collect();
        let signs: Vec<i8> = self.crossings.iter().map(|x| -x.sign).collect();
        Self::assemble(&crossings, Some(&signs), self.free_loops.clone(), self.basepoint)
            .expect("mirror of a valid diagram is valid")
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn free_loops(&self) -> &[FreeLoop] {
        &self.free_loops
    }

    pub fn basepoint(&self) -> Option<u32> {
        self.basepoint
    }

    pub fn ncrossings(&self) -> usize {
        self.crossings.len()
    }

    pub fn ncomponents(&self) -> usize {
        self.ncomponents
    }

    pub fn n_plus(&self) -> usize {
        self.crossings.iter().filter(|x| x.sign > 0).count()
    }

    pub fn n_minus(&self) -> usize {
        self.crossings.iter().filter(|x| x.sign < 0).count()
    }

    pub fn writhe(&self) -> i64 {
        self.n_plus() as i64 - self.n_minus() as i64
    }

    pub fn edge_labels(&self) -> &[u32] {
        &self.edges
    }

    pub(crate) fn edge_idx(&self, label: u32) -> Option<usize> {
        self.edge_index.get(&label).copied()
    }

    pub(crate) fn ends(&self, e: usize) -> [Slot; 2] {
        self.ends[e]
    }

    pub(crate) fn is_free_loop(&self, e: usize) -> bool {
        self.ends[e][0].0 == usize::MAX
    }

    pub fn component_of_edge(&self, label: u32) -> Option<usize> {
        self.edge_idx(label).map(|e| self.component[e])
    }

    pub fn default_orientation(&self) -> Orientation {
        Orientation { reversed: vec![false; self.ncomponents] }
    }

    fn check_orientation(&self, o: &Orientation) -> Result<(), DiagramError> {
        if o.reversed.len() != self.ncomponents {
            return Err(DiagramError::BadOrientation { expected: self.ncomponents, got: o.reversed.len() });
        }
        Ok(())
    }

    /// Head slot index (0/1 into `ends`) of each edge under `o`.
    pub(crate) fn heads(&self, o: &Orientation) -> Result<Vec<u8>, DiagramError> {
        self.check_orientation(o)?;
        Ok(self
            .head
            .iter()
            .zip(&self.component)
            .map(|(h, c)| if o.reversed[*c] { 1 - h } else { *h })
            .collect())
    }

    /// Whether the free loop on edge index `e` runs counterclockwise under `o`.
    pub(crate) fn loop_ccw(&self, e: usize, o: &Orientation) -> bool {
        let l = self.free_loops.iter().find(|l| self.edge_index[&l.edge] == e).expect("free loop");
        l.ccw != o.reversed[self.component[e]]
    }

    /// Crossing signs under `o`.
    pub fn signs(&self, o: &Orientation) -> Result<Vec<i8>, DiagramError> {
        let head = self.heads(o)?;
        Ok((0..self.crossings.len()).map(|c| self.sign_with(c, &head)).collect())
    }

    /// Writhe of the diagram oriented by `o`.
    pub fn writhe_with(&self, o: &Orientation) -> Result<i64, DiagramError> {
        Ok(self.signs(o)?.iter().map(|s| *s as i64).sum())
    }

    pub fn resolve(&self, u: &[bool]) -> Result<Resolution, DiagramError> {
        Resolution::of(self, u)
    }

    /// The vertex whose smoothings follow the orientation: 0 at positive, 1 at negative crossings.
    pub fn oriented_vertex(&self, o: &Orientation) -> Result<Vec<bool>, DiagramError> {
        Ok(self.signs(o)?.iter().map(|s| *s < 0).collect())
    }

    pub fn oriented_resolution(&self, o: &Orientation) -> Result<Resolution, DiagramError> {
        self.resolve(&self.oriented_vertex(o)?)
    }

    pub fn seifert_circle_count(&self, o: &Orientation) -> Result<usize, DiagramError> {
        Ok(self.oriented_resolution(o)?.circles.len())
    }

    /// a/b labels of the Seifert circles from a checkerboard colouring with the unbounded
    /// region unshaded, or, with a basepoint, with the region left of it shaded.
    pub fn checkerboard_labels(&self, o: &Orientation, basepoint: Option<u32>) -> Result<CircleLabeling, DiagramError> {
        faces::checkerboard_labels(self, o, basepoint)
    }

    pub fn to_pd_string(&self) -> String {
        let xs: Vec<String> = self
            .crossings
            .iter()
            .map(|x| format!("X[{},{},{},{}]", x.edges[0], x.edges[1], x.edges[2], x.edges[3]))
            .collect();
        format!("PD[{}]", xs.join(","))
    }
}

impl fmt::Display for LinkDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_pd_string())?;
        if !self.free_loops.is_empty() {
            write!(f, " + {} unknot(s)", self.free_loops.len())?;
        }
        if let Some(p) = self.basepoint {
            write!(f, " @{p}")?;
        }
        Ok(())
    }
}

fn parse_pd_crossings(text: &str) -> Result<Vec<[u32; 4]>, DiagramError> {
    let err = |m: &str| DiagramError::Malformed(format!("{m} in {text:?}"));
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let body = s
        .strip_prefix("PD[")
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| err("expected PD[...]"))?;
    let mut out = Vec::new();
    let mut rest = body;
    while !rest.is_empty() {
        let r = rest.strip_prefix("X[").ok_or_else(|| err("expected X[...]"))?;
        let close = r.find(']').ok_or_else(|| err("unclosed X["))?;
        let nums: Vec<&str> = r[..close].split(',').collect();
        if nums.len() != 4 {
            return Err(err("crossing needs four edges"));
        }
        let mut x = [0u32; 4];
        for (k, n) in nums.iter().enumerate() {
            x[k] = n.parse().map_err(|_| err("bad edge label"))?;
        }
        out.push(x);
        rest = &r[close + 1..];
        if let Some(r2) = rest.strip_prefix(',') {
            if r2.is_empty() {
                return Err(err("trailing comma"));
            }
            rest = r2;
        } else if !rest.is_empty() {
            return Err(err("expected ','"));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests;
