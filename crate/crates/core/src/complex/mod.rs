//! Chain complexes over R = F[U,V]: the cube of resolutions, its reduced subcomplex,
//! Gaussian elimination, tangle scanning and mirror duality.

mod cube;
mod dual;
mod reduce;
mod tangle;

use serde::{Deserialize, Serialize};

use crate::algebra::{Field, PolyMatrix};
use crate::diagram::DiagramError;

pub use cube::{build_cube, reduced_subcomplex, Cube, CubeGen};
pub use dual::{mirror_dual, verify_mirror_duality, verify_reduced_mirror_duality, DualityFailure};
pub use reduce::{gauss_reduce, transport_chain, EquivalenceTrace};
pub use tangle::{scan_reduce, ScanOptions};

#[derive(Debug, thiserror::Error)]
pub enum ComplexError {
    #[error("{crossings} crossings exceeds the full-cube cap of {cap}")]
    CrossingCap { crossings: usize, cap: usize },
    #[error("diagram has no basepoint")]
    NoBasepoint,
    #[error("d^2 != 0 at degree {0}")]
    NotAComplex(i32),
    #[error("entry ({row},{col}) of d at degree {h} is not gr_q-homogeneous")]
    Inhomogeneous { h: i32, row: usize, col: usize },
    #[error("bad complex: {0}")]
    Malformed(String),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Generator {
    pub q: i32,
    pub name: String,
}

/// Finitely generated free graded complex over R. `d[i]` maps degree `h_min + i` to
/// `h_min + i + 1` (rows index the target).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct GradedChainComplex<F: Field> {
    h_min: i32,
    gens: Vec<Vec<Generator>>,
    d: Vec<PolyMatrix<F>>,
}

impl<F: Field> GradedChainComplex<F> {
    pub fn new(h_min: i32, gens: Vec<Vec<Generator>>, d: Vec<PolyMatrix<F>>) -> Result<Self, ComplexError> {
        if gens.is_empty() {
            if !d.is_empty() {
                return Err(ComplexError::Malformed("differential without generators".into()));
            }
        } else if d.len() + 1 != gens.len() {
            return Err(ComplexError::Malformed(format!("{} degrees but {} blocks", gens.len(), d.len())));
        }
        for (i, m) in d.iter().enumerate() {
            if m.ncols() != gens[i].len() || m.nrows() != gens[i + 1].len() {
                return Err(ComplexError::Malformed(format!("block {i} has the wrong shape")));
            }
        }
        let mut c = GradedChainComplex { h_min, gens, d };
        c.trim();
        Ok(c)
    }

    /// Drops empty degrees at both ends.
    fn trim(&mut self) {
        while self.gens.last().is_some_and(|g| g.is_empty()) {
            self.gens.pop();
            self.d.pop();
        }
        while self.gens.first().is_some_and(|g| g.is_empty()) {
            self.gens.remove(0);
            if !self.d.is_empty() {
                self.d.remove(0);
            }
            self.h_min += 1;
        }
        if self.gens.is_empty() {
            self.h_min = 0;
        }
    }

    pub fn zero() -> Self {
        GradedChainComplex { h_min: 0, gens: vec![], d: vec![] }
    }

    /// Degrees with at least one generator, ascending.
    pub fn degrees(&self) -> std::ops::Range<i32> {
        self.h_min..self.h_min + self.gens.len() as i32
    }

    pub fn gens(&self, h: i32) -> &[Generator] {
        match self.slot(h) {
            Some(i) => &self.gens[i],
            None => &[],
        }
    }

    pub fn rank(&self, h: i32) -> usize {
        self.gens(h).len()
    }

    pub fn total_rank(&self) -> usize {
        self.gens.iter().map(|g| g.len()).sum()
    }

    fn slot(&self, h: i32) -> Option<usize> {
        let i = h - self.h_min;
        (i >= 0 && (i as usize) < self.gens.len()).then_some(i as usize)
    }

    /// The block from degree h to h+1.
    pub fn d(&self, h: i32) -> PolyMatrix<F> {
        match self.slot(h) {
            Some(i) if i < self.d.len() => self.d[i].clone(),
            _ => PolyMatrix::zero(self.rank(h + 1), self.rank(h)),
        }
    }

    pub fn d_ref(&self, h: i32) -> Option<&PolyMatrix<F>> {
        self.slot(h).and_then(|i| self.d.get(i))
    }

    pub fn check_d_squared(&self) -> Result<(), ComplexError> {
        for (i, w) in self.d.windows(2).enumerate() {
            if !w[1].mul(&w[0]).is_zero() {
                return Err(ComplexError::NotAComplex(self.h_min + i as i32));
            }
        }
        Ok(())
    }

    /// Every entry p from g to g' satisfies gr_q(g') - 2 deg(p) = gr_q(g) termwise.
    pub fn check_homogeneity(&self) -> Result<(), ComplexError> {
        for (i, m) in self.d.iter().enumerate() {
            for (r, c, p) in m.entries() {
                let (qs, qt) = (self.gens[i][c].q, self.gens[i + 1][r].q);
                if p.terms().iter().any(|(mono, _)| qt - 2 * mono.degree() as i32 != qs) {
                    return Err(ComplexError::Inhomogeneous { h: self.h_min + i as i32, row: r, col: c });
                }
            }
        }
        Ok(())
    }

    pub fn check(&self) -> Result<(), ComplexError> {
        self.check_d_squared()?;
        self.check_homogeneity()
    }

    /// Applies d to a chain in degree h.
    pub fn apply_d(&self, h: i32, z: &[crate::algebra::Poly<F>]) -> Vec<crate::algebra::Poly<F>> {
        self.d(h).apply(z).expect("chain length matches the degree")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("complexes serialize")
    }

    pub fn from_json(s: &str) -> Result<Self, ComplexError> {
        let c: Self = serde_json::from_str(s).map_err(|e| ComplexError::Malformed(e.to_string()))?;
        Self::new(c.h_min, c.gens, c.d)
    }

    /// Tensor product with the rank-2 module A = R{1} (+) R{-1} carrying zero differential.
    pub fn tensor_circle(&self, tag: &str) -> Self {
        let gens = self
            .gens
            .iter()
            .map(|gs| {
                gs.iter()
                    .flat_map(|g| {
                        [(1, "1"), (-1, "X")]
                            .map(|(dq, l)| Generator { q: g.q + dq, name: format!("{}|{}:{}", g.name, tag, l) })
                    })
                    .collect()
            })
            .collect();
        let d = self
            .d
            .iter()
            .map(|m| {
                PolyMatrix::from_entries(
                    2 * m.nrows(),
                    2 * m.ncols(),
                    m.entries().flat_map(|(r, c, p)| [(2 * r, 2 * c, p.clone()), (2 * r + 1, 2 * c + 1, p.clone())]),
                )
            })
            .collect();
        GradedChainComplex { h_min: self.h_min, gens, d }
    }

    /// Shifts homological and quantum gradings.
    pub fn shifted(&self, dh: i32, dq: i32) -> Self {
        let mut c = self.clone();
        c.h_min += dh;
        for gs in &mut c.gens {
            for g in gs {
                g.q += dq;
            }
        }
        c
    }

    pub fn map_entries(&self, f: impl Fn(&crate::algebra::Poly<F>) -> crate::algebra::Poly<F>) -> Self {
        let mut c = self.clone();
        for m in &mut c.d {
            *m = m.map(&f);
        }
        c
    }
}

#[cfg(test)]
mod tests;
