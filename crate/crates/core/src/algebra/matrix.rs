use serde::{Deserialize, Serialize};

use super::field::Field;
use super::poly::Poly;
use super::AlgebraError;

/// Sparse matrix over R = F[U,V], stored column by column.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(bound = "")]
#[serde(into = "MatrixRepr<F>", try_from = "MatrixRepr<F>")]
pub struct PolyMatrix<F: Field> {
    rows: usize,
    cols: usize,
    data: Vec<Vec<(usize, Poly<F>)>>,
}

impl<F: Field> PolyMatrix<F> {
    pub fn zero(rows: usize, cols: usize) -> Self {
        PolyMatrix { rows, cols, data: vec![Vec::new(); cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_entries(n, n, (0..n).map(|i| (i, i, Poly::one())))
    }

    /// Sums duplicate positions and drops zeros.
    pub fn from_entries(rows: usize, cols: usize, entries: impl IntoIterator<Item = (usize, usize, Poly<F>)>) -> Self {
        let mut data: Vec<Vec<(usize, Poly<F>)>> = vec![Vec::new(); cols];
        for (i, j, p) in entries {
            assert!(i < rows && j < cols, "entry ({i},{j}) outside {rows}x{cols}");
            data[j].push((i, p));
        }
        for col in data.iter_mut() {
            col.sort_by_key(|(i, _)| *i);
            let mut merged: Vec<(usize, Poly<F>)> = Vec::with_capacity(col.len());
            for (i, p) in col.drain(..) {
                match merged.last_mut() {
                    Some((li, lp)) if *li == i => *lp = lp.add(&p),
                    _ => merged.push((i, p)),
                }
            }
            merged.retain(|(_, p)| !p.is_zero());
            *col = merged;
        }
        PolyMatrix { rows, cols, data }
    }

    /// Row-major dense input.
    pub fn from_dense(rows: &[Vec<Poly<F>>]) -> Self {
        let ncols = rows.first().map(|r| r.len()).unwrap_or(0);
        let entries = rows
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter().enumerate().map(move |(j, p)| (i, j, p.clone())));
        Self::from_entries(rows.len(), ncols, entries)
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn col(&self, j: usize) -> &[(usize, Poly<F>)] {
        &self.data[j]
    }

    pub fn get(&self, i: usize, j: usize) -> Poly<F> {
        self.data[j]
            .binary_search_by_key(&i, |(r, _)| *r)
            .map(|k| self.data[j][k].1.clone())
            .unwrap_or_else(|_| Poly::zero())
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Poly<F>)> {
        self.data.iter().enumerate().flat_map(|(j, c)| c.iter().map(move |(i, p)| (*i, j, p)))
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(|c| c.len()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|c| c.is_empty())
    }

    pub fn to_dense(&self) -> Vec<Vec<Poly<F>>> {
        let mut out = vec![vec![Poly::zero(); self.cols]; self.rows];
        for (i, j, p) in self.entries() {
            out[i][j] = p.clone();
        }
        out
    }

    pub fn transpose(&self) -> Self {
        Self::from_entries(self.cols, self.rows, self.entries().map(|(i, j, p)| (j, i, p.clone())))
    }

    /// `self * other`.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product dimension mismatch");
        let mut entries = Vec::new();
        for (j, col) in other.data.iter().enumerate() {
            for (k, b) in col {
                for (i, a) in &self.data[*k] {
                    entries.push((*i, j, a.mul(b)));
                }
            }
        }
        Self::from_entries(self.rows, other.cols, entries)
    }

    pub fn apply(&self, v: &[Poly<F>]) -> Result<Vec<Poly<F>>, AlgebraError> {
        if v.len() != self.cols {
            return Err(AlgebraError::DimensionMismatch { expected: self.cols, got: v.len() });
        }
        let mut out = vec![Poly::zero(); self.rows];
        for (j, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (i, a) in &self.data[j] {
                out[*i] = out[*i].add(&a.mul(x));
            }
        }
        Ok(out)
    }

    /// Appends a column.
    pub fn with_column(&self, z: &[Poly<F>]) -> Result<Self, AlgebraError> {
        if z.len() != self.rows {
            return Err(AlgebraError::DimensionMismatch { expected: self.rows, got: z.len() });
        }
        let mut m = self.clone();
        m.cols += 1;
        m.data.push(z.iter().cloned().enumerate().filter(|(_, p)| !p.is_zero()).collect());
        Ok(m)
    }

    pub fn map(&self, f: impl Fn(&Poly<F>) -> Poly<F>) -> Self {
        Self::from_entries(self.rows, self.cols, self.entries().map(|(i, j, p)| (i, j, f(p))))
    }

    pub fn sub_matrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut rmap = vec![usize::MAX; self.rows];
        for (k, &r) in rows.iter().enumerate() {
            rmap[r] = k;
        }
        let entries = cols.iter().enumerate().flat_map(|(k, &c)| {
            let rmap = &rmap;
            self.data[c].iter().filter(move |(r, _)| rmap[*r] != usize::MAX).map(move |(r, p)| (rmap[*r], k, p.clone()))
        });
        Self::from_entries(rows.len(), cols.len(), entries.collect::<Vec<_>>())
    }
}

#[derive(Serialize, Deserialize)]
#[serde(bound = "")]
struct MatrixRepr<F: Field> {
    rows: usize,
    cols: usize,
    entries: Vec<(usize, usize, Poly<F>)>,
}

impl<F: Field> From<PolyMatrix<F>> for MatrixRepr<F> {
    fn from(m: PolyMatrix<F>) -> Self {
        let entries = m.entries().map(|(i, j, p)| (i, j, p.clone())).collect();
        MatrixRepr { rows: m.rows, cols: m.cols, entries }
    }
}

impl<F: Field> TryFrom<MatrixRepr<F>> for PolyMatrix<F> {
    type Error = String;
    fn try_from(r: MatrixRepr<F>) -> Result<Self, String> {
        if let Some((i, j, _)) = r.entries.iter().find(|(i, j, _)| *i >= r.rows || *j >= r.cols) {
            return Err(format!("entry ({i},{j}) outside {}x{}", r.rows, r.cols));
        }
        Ok(PolyMatrix::from_entries(r.rows, r.cols, r.entries))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::F2;

    fn p(s: &str) -> Poly<F2> {
        Poly::parse(s).unwrap()
    }

    #[test]
    fn product_and_transpose() {
        let a = PolyMatrix::from_dense(&[vec![p("U"), p("V")], vec![p("0"), p("1")]]);
        let b = PolyMatrix::from_dense(&[vec![p("V")], vec![p("U")]]);
        let ab = a.mul(&b);
        assert_eq!(ab.get(0, 0), Poly::zero()); // UV + VU = 0 over F2
        assert_eq!(ab.get(1, 0), p("U"));
        assert_eq!(a.transpose().transpose(), a);
        assert_eq!(a.apply(&[p("1"), p("1")]).unwrap(), vec![p("U + V"), p("1")]);
    }

    #[test]
    fn json_round_trip() {
        let a = PolyMatrix::from_dense(&[vec![p("U^2 + V"), p("0")], vec![p("1"), p("U*V")]]);
        let s = serde_json::to_string(&a).unwrap();
        let b: PolyMatrix<F2> = serde_json::from_str(&s).unwrap();
        assert_eq!(a, b);
    }
}
