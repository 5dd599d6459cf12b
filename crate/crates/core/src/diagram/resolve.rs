use serde::Serialize;

use super::{DiagramError, LinkDiagram, Slot};

/// 0-smoothing joins slots (0,1) and (2,3); 1-smoothing joins (0,3) and (1,2).
pub(crate) fn smoothing_mate(s: usize, one: bool) -> usize {
    if one {
        3 - s
    } else {
        s ^ 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Circle {
    /// edge labels in traversal order, starting from the smallest
    pub edges: Vec<u32>,
    #[serde(skip)]
    pub(crate) edge_ids: Vec<usize>,
}

impl Circle {
    pub fn min_edge(&self) -> u32 {
        self.edges[0]
    }
}

/// A full smoothing D_u. Circles are ordered by their smallest edge label.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Resolution {
    pub vertex: Vec<bool>,
    pub circles: Vec<Circle>,
    #[serde(skip)]
    circle_of_edge: Vec<usize>,
}

impl Resolution {
    pub(crate) fn of(d: &LinkDiagram, u: &[bool]) -> Result<Self, DiagramError> {
        if u.len() != d.ncrossings() {
            return Err(DiagramError::WrongLength { expected: d.ncrossings(), got: u.len() });
        }
        let ne = d.edge_labels().len();
        let mut circle_of_edge = vec![usize::MAX; ne];
        let mut circles = Vec::new();
        for e in 0..ne {
            if circle_of_edge[e] != usize::MAX {
                continue;
            }
            let id = circles.len();
            let mut ids = vec![e];
            circle_of_edge[e] = id;
            if !d.is_free_loop(e) {
                // travel along e from end 0 to end 1, then across the smoothing
                let mut at: Slot = d.ends(e)[1];
                loop {
                    let m = (at.0, smoothing_mate(at.1, u[at.0]));
                    let e2 = d.edge_at(m);
                    if e2 == e {
                        break;
                    }
                    circle_of_edge[e2] = id;
                    ids.push(e2);
                    let [a, b] = d.ends(e2);
                    at = if a == m { b } else { a };
                }
            }
            let labels = ids.iter().map(|i| d.edge_labels()[*i]).collect();
            circles.push(Circle { edges: labels, edge_ids: ids });
        }
        Ok(Resolution { vertex: u.to_vec(), circles, circle_of_edge })
    }

    pub fn weight(&self) -> usize {
        self.vertex.iter().filter(|b| **b).count()
    }

    pub(crate) fn circle_of_edge_id(&self, e: usize) -> usize {
        self.circle_of_edge[e]
    }

    pub fn circle_of_edge(&self, d: &LinkDiagram, label: u32) -> Option<usize> {
        d.edge_idx(label).map(|e| self.circle_of_edge[e])
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Label {
    /// shaded side; e1 / X - U
    A,
    /// unshaded side; e2 / V - X
    B,
}

impl Label {
    pub fn swap(self) -> Label {
        match self {
            Label::A => Label::B,
            Label::B => Label::A,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CircleLabeling {
    pub labels: Vec<Label>,
}

impl CircleLabeling {
    pub fn count(&self, l: Label) -> usize {
        self.labels.iter().filter(|x| **x == l).count()
    }

    pub fn swapped(&self) -> CircleLabeling {
        CircleLabeling { labels: self.labels.iter().map(|l| l.swap()).collect() }
    }
}
