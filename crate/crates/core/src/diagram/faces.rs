use super::{CircleLabeling, DiagramError, Label, LinkDiagram, Orientation};

/// A face is the cycle of half-edges having it on their left. Half-edge `2e + k` runs
/// along edge `e` towards its end `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub half_edges: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct Faces {
    faces: Vec<Face>,
    face_of: Vec<usize>,
    piece_of_face: Vec<usize>,
    npieces: usize,
}

impl Faces {
    /// Traces faces by turning left at every crossing: arriving at slot s we leave through
    /// slot s+3 (the next slot clockwise).
    pub fn trace(d: &LinkDiagram) -> Faces {
        let ne = d.edge_labels().len();
        let mut face_of = vec![usize::MAX; 2 * ne];
        let mut faces = Vec::new();
        for start in 0..2 * ne {
            if face_of[start] != usize::MAX || d.is_free_loop(start / 2) {
                continue;
            }
            let mut hs = Vec::new();
            let mut h = start;
            loop {
                face_of[h] = faces.len();
                hs.push(h);
                let (c, s) = d.ends(h / 2)[h % 2];
                let out = (c, (s + 3) % 4);
                let e2 = d.edge_at(out);
                let k2 = if d.ends(e2)[0] == out { 1 } else { 0 };
                h = 2 * e2 + k2;
                if h == start {
                    break;
                }
            }
            faces.push(Face { half_edges: hs });
        }

        // connected pieces of the underlying graph
        let nx = d.ncrossings();
        let mut parent: Vec<usize> = (0..nx).collect();
        fn find(p: &mut Vec<usize>, x: usize) -> usize {
            let mut x = x;
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for e in 0..ne {
            if d.is_free_loop(e) {
                continue;
            }
            let [(a, _), (b, _)] = d.ends(e);
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            parent[ra] = rb;
        }
        let mut roots: Vec<usize> = (0..nx).map(|x| find(&mut parent, x)).collect();
        let mut ids = roots.clone();
        ids.sort();
        ids.dedup();
        for r in roots.iter_mut() {
            *r = ids.binary_search(r).unwrap();
        }
        let piece_of_face = faces
            .iter()
            .map(|f| {
                let h = f.half_edges[0];
                roots[d.ends(h / 2)[h % 2].0]
            })
            .collect();
        Faces { faces, face_of, piece_of_face, npieces: ids.len() }
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn npieces(&self) -> usize {
        self.npieces
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face_of(&self, half_edge: usize) -> usize {
        self.face_of[half_edge]
    }

    /// The face drawn as unbounded in each piece: the one with the most sides, ties going to
    /// the face touching the smallest edge label.
    pub fn unbounded(&self) -> Vec<usize> {
        (0..self.npieces)
            .map(|p| {
                (0..self.faces.len())
                    .filter(|f| self.piece_of_face[*f] == p)
                    .max_by_key(|f| {
                        let face = &self.faces[*f];
                        let min_e = face.half_edges.iter().map(|h| h / 2).min().unwrap();
                        (face.half_edges.len(), std::cmp::Reverse(min_e))
                    })
                    .unwrap()
            })
            .collect()
    }

    /// Checkerboard colouring (true = shaded) with unbounded faces unshaded.
    pub fn shading(&self) -> Vec<bool> {
        let mut color: Vec<Option<bool>> = vec![None; self.faces.len()];
        let mut queue = std::collections::VecDeque::new();
        for f in self.unbounded() {
            color[f] = Some(false);
            queue.push_back(f);
        }
        while let Some(f) = queue.pop_front() {
            let c = color[f].unwrap();
            for h in &self.faces[f].half_edges {
                let g = self.face_of[h ^ 1];
                match color[g] {
                    None => {
                        color[g] = Some(!c);
                        queue.push_back(g);
                    }
                    Some(cg) => assert_ne!(cg, c, "checkerboard colouring failed; diagram not planar"),
                }
            }
        }
        color.into_iter().map(|c| c.expect("every face reached")).collect()
    }
}

pub(super) fn checkerboard_labels(
    d: &LinkDiagram,
    o: &Orientation,
    basepoint: Option<u32>,
) -> Result<CircleLabeling, DiagramError> {
    let heads = d.heads(o)?;
    let res = d.oriented_resolution(o)?;
    let faces = Faces::trace(d);
    let shade = faces.shading();
    // shading of the region just left of edge e, following o
    let left_shaded = |e: usize| -> bool {
        if d.is_free_loop(e) {
            d.loop_ccw(e, o)
        } else {
            shade[faces.face_of(2 * e + heads[e] as usize)]
        }
    };
    let flip = match basepoint {
        Some(p) => !left_shaded(d.edge_idx(p).ok_or(DiagramError::NoSuchEdge(p))?),
        None => false,
    };
    let labels = res
        .circles
        .iter()
        .map(|c| {
            let s = left_shaded(c.edge_ids[0]);
            debug_assert!(c.edge_ids.iter().all(|e| left_shaded(*e) == s));
            if s != flip {
                Label::A
            } else {
                Label::B
            }
        })
        .collect();
    Ok(CircleLabeling { labels })
}
