//! Linear algebra over Frac(R) without leaving R, and plain linear algebra over F.

use super::field::Field;
use super::matrix::PolyMatrix;
use super::poly::Poly;
use super::AlgebraError;

/// Result of fraction-free elimination. After a full (Gauss-Jordan) run every pivot entry
/// equals `det` and pivot columns are otherwise zero.
#[derive(Clone, Debug)]
pub struct Ffge<F: Field> {
    pub pivots: Vec<(usize, usize)>,
    pub mat: Vec<Vec<Poly<F>>>,
    pub det: Poly<F>,
    pub ncols: usize,
}

impl<F: Field> Ffge<F> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Basis of the right null space over Frac(R), with polynomial entries.
    /// Requires a Gauss-Jordan run.
    pub fn nullspace(&self) -> Vec<Vec<Poly<F>>> {
        let mut is_pivot = vec![false; self.ncols];
        for (_, c) in &self.pivots {
            is_pivot[*c] = true;
        }
        (0..self.ncols)
            .filter(|j| !is_pivot[*j])
            .map(|j| {
                let mut x = vec![Poly::zero(); self.ncols];
                x[j] = self.det.clone();
                for (r, c) in &self.pivots {
                    x[*c] = self.mat[*r][j].neg();
                }
                x
            })
            .collect()
    }
}

/// Fraction-free (Bareiss) elimination. Each step divides by the previous pivot; the
/// division is exact because all intermediate entries are minors of the input.
/// With `gauss_jordan` the rows above the pivot are cleared as well.
pub fn ffge<F: Field>(mut a: Vec<Vec<Poly<F>>>, ncols: usize, gauss_jordan: bool) -> Ffge<F> {
    let nrows = a.len();
    let mut used_row = vec![false; nrows];
    let mut used_col = vec![false; ncols];
    let mut pivots = Vec::new();
    let mut prev = Poly::one();

    loop {
        let mut best: Option<((usize, u32), usize, usize)> = None;
        for (i, row) in a.iter().enumerate() {
            if used_row[i] {
                continue;
            }
            for (j, p) in row.iter().enumerate() {
                if used_col[j] || p.is_zero() {
                    continue;
                }
                let w = p.weight();
                if best.as_ref().map(|(bw, _, _)| w < *bw).unwrap_or(true) {
                    best = Some((w, i, j));
                }
            }
        }
        let Some((_, r, c)) = best else { break };
        used_row[r] = true;
        used_col[c] = true;
        pivots.push((r, c));

        let piv = a[r][c].clone();
        let prow = a[r].clone();
        for i in 0..nrows {
            if i == r || (!gauss_jordan && used_row[i]) {
                continue;
            }
            let f = a[i][c].clone();
            let row = &mut a[i];
            for j in 0..ncols {
                let num = if f.is_zero() {
                    if row[j].is_zero() {
                        continue;
                    }
                    piv.mul(&row[j])
                } else {
                    piv.mul(&row[j]).sub(&f.mul(&prow[j]))
                };
                row[j] = if prev.is_one() { num } else { num.div_exact_or_panic(&prev) };
            }
        }
        prev = piv;
    }
    Ffge { pivots, mat: a, det: prev, ncols }
}

/// Rank over Frac(R).
pub fn ffge_rank<F: Field>(m: &PolyMatrix<F>) -> usize {
    // eliminate along the shorter side
    if m.nrows() <= m.ncols() {
        ffge(m.to_dense(), m.ncols(), false).rank()
    } else {
        let t = m.transpose();
        ffge(t.to_dense(), t.ncols(), false).rank()
    }
}

/// Whether `z` lies in the column span of `m` over Frac(R).
pub fn in_column_span<F: Field>(m: &PolyMatrix<F>, z: &[Poly<F>]) -> Result<bool, AlgebraError> {
    let mz = m.with_column(z)?;
    Ok(ffge_rank(&mz) == ffge_rank(m))
}

/// Rows spanning the left null space of a matrix over Frac(R): `z` is in the column span
/// iff every row annihilates it.
#[derive(Clone, Debug)]
pub struct Annihilator<F: Field> {
    dim: usize,
    rows: Vec<Vec<(usize, Poly<F>)>>,
}

impl<F: Field> Annihilator<F> {
    pub fn of(m: &PolyMatrix<F>) -> Self {
        let dim = m.nrows();
        let rows = if m.is_zero() {
            (0..dim).map(|i| vec![(i, Poly::one())]).collect()
        } else {
            let t = m.transpose();
            ffge(t.to_dense(), dim, true)
                .nullspace()
                .into_iter()
                .map(|w| w.into_iter().enumerate().filter(|(_, p)| !p.is_zero()).collect())
                .collect()
        };
        Annihilator { dim, rows }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Codimension of the span.
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rows(&self) -> &[Vec<(usize, Poly<F>)>] {
        &self.rows
    }

    pub fn apply(&self, z: &[Poly<F>]) -> Vec<Poly<F>> {
        self.rows
            .iter()
            .map(|w| w.iter().fold(Poly::zero(), |acc, (i, p)| if z[*i].is_zero() { acc } else { acc.add(&p.mul(&z[*i])) }))
            .collect()
    }

    pub fn contains(&self, z: &[Poly<F>]) -> Result<bool, AlgebraError> {
        if z.len() != self.dim {
            return Err(AlgebraError::DimensionMismatch { expected: self.dim, got: z.len() });
        }
        Ok(self.apply(z).iter().all(|p| p.is_zero()))
    }
}

/// Dense matrix over a field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldMatrix<F: Field> {
    pub ncols: usize,
    pub rows: Vec<Vec<F>>,
}

impl<F: Field> FieldMatrix<F> {
    pub fn zero(nrows: usize, ncols: usize) -> Self {
        FieldMatrix { ncols, rows: vec![vec![F::zero(); ncols]; nrows] }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    /// Reduced row echelon form; returns pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.ncols {
            let Some(p) = (r..self.rows.len()).find(|&i| !self.rows[i][c].is_zero()) else { continue };
            self.rows.swap(r, p);
            let inv = self.rows[r][c].inv().unwrap();
            for x in self.rows[r].iter_mut() {
                *x = x.mul(&inv);
            }
            let prow = self.rows[r].clone();
            for (i, row) in self.rows.iter_mut().enumerate() {
                if i == r || row[c].is_zero() {
                    continue;
                }
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&prow) {
                    if !y.is_zero() {
                        *x = x.sub(&f.mul(y));
                    }
                }
            }
            pivots.push(c);
            r += 1;
            if r == self.rows.len() {
                break;
            }
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    pub fn kernel(&self) -> Vec<Vec<F>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let mut is_pivot = vec![None; self.ncols];
        for (r, c) in pivots.iter().enumerate() {
            is_pivot[*c] = Some(r);
        }
        (0..self.ncols)
            .filter(|j| is_pivot[*j].is_none())
            .map(|j| {
                let mut x = vec![F::zero(); self.ncols];
                x[j] = F::one();
                for (r, c) in pivots.iter().enumerate() {
                    x[*c] = m.rows[r][j].neg();
                }
                x
            })
            .collect()
    }

    pub fn apply(&self, x: &[F]) -> Vec<F> {
        self.rows
            .iter()
            .map(|row| row.iter().zip(x).fold(F::zero(), |acc, (a, b)| acc.add(&a.mul(b))))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::{Fp, Q};
    use crate::algebra::poly::Mono;
    use proptest::prelude::*;

    type P = Poly<Q>;

    fn p(s: &str) -> P {
        P::parse(s).unwrap()
    }

    fn m(rows: &[&[&str]]) -> PolyMatrix<Q> {
        PolyMatrix::from_dense(&rows.iter().map(|r| r.iter().map(|s| p(s)).collect()).collect::<Vec<_>>())
    }

    #[test]
    fn ranks() {
        assert_eq!(ffge_rank(&m(&[&["U", "V"], &["V", "U"]])), 2);
        assert_eq!(ffge_rank(&m(&[&["U", "V"], &["2*U", "2*V"]])), 1);
        assert_eq!(ffge_rank(&PolyMatrix::<Q>::zero(3, 2)), 0);
        assert_eq!(ffge_rank(&PolyMatrix::<Q>::zero(0, 0)), 0);
    }

    #[test]
    fn column_span() {
        assert!(in_column_span(&m(&[&["V - U"]]), &[p("1")]).unwrap());
        assert!(!in_column_span(&PolyMatrix::zero(1, 0), &[p("U")]).unwrap());
        assert!(!in_column_span(&m(&[&["U"], &["V"]]), &[p("V"), p("U")]).unwrap());
        assert!(in_column_span(&m(&[&["U"], &["V"]]), &[p("U^2"), p("U*V")]).unwrap());
        assert!(in_column_span(&m(&[&["U"]]), &[p("1"), p("0")]).is_err());
    }

    #[test]
    fn annihilator_examples() {
        let a = Annihilator::of(&m(&[&["U"], &["V"]]));
        assert_eq!(a.len(), 1);
        assert!(a.contains(&[p("U^2"), p("U*V")]).unwrap());
        assert!(!a.contains(&[p("V"), p("U")]).unwrap());
        let e = Annihilator::of(&PolyMatrix::<Q>::zero(2, 0));
        assert_eq!(e.len(), 2);
        assert!(!e.contains(&[p("0"), p("U")]).unwrap());
    }

    #[test]
    fn field_kernel() {
        type F5 = Fp<5>;
        let m = FieldMatrix { ncols: 3, rows: vec![vec![F5::new(1), F5::new(2), F5::new(3)], vec![F5::new(2), F5::new(4), F5::new(2)]] };
        assert_eq!(m.rank(), 2);
        let k = m.kernel();
        assert_eq!(k.len(), 1);
        assert!(m.apply(&k[0]).iter().all(|x| x.is_zero()));
    }

    fn arb_matrix() -> impl Strategy<Value = PolyMatrix<Q>> {
        (1usize..4, 1usize..4).prop_flat_map(|(r, c)| {
            proptest::collection::vec(proptest::collection::vec((0u32..2, 0u32..2, -2i64..3), 0..3), r * c).prop_map(
                move |cells| {
                    let entries = cells.into_iter().enumerate().map(|(k, ts)| {
                        let poly = P::from_terms(ts.into_iter().map(|(u, v, c)| (Mono::new(u, v), Q::from_i64(c))));
                        (k / c, k % c, poly)
                    });
                    PolyMatrix::from_entries(r, c, entries.collect::<Vec<_>>())
                },
            )
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn rank_of_transpose(a in arb_matrix()) {
            prop_assert_eq!(ffge_rank(&a), ffge_rank(&a.transpose()));
        }

        #[test]
        fn image_is_in_span(a in arb_matrix(), seed in proptest::collection::vec((0u32..2, -2i64..3), 4)) {
            let c: Vec<P> = (0..a.ncols()).map(|j| {
                let (u, k) = seed[j % seed.len()];
                P::monomial(Mono::new(u, 1 - u), Q::from_i64(k))
            }).collect();
            let z = a.apply(&c).unwrap();
            prop_assert!(in_column_span(&a, &z).unwrap());
            prop_assert!(Annihilator::of(&a).contains(&z).unwrap());
        }

        #[test]
        fn annihilator_matches_rank_test(a in arb_matrix(), z in proptest::collection::vec(-1i64..2, 3)) {
            let z: Vec<P> = (0..a.nrows()).map(|i| P::from_i64(z[i % 3]).mul(&P::parse(if i % 2 == 0 { "U" } else { "V" }).unwrap())).collect();
            prop_assert_eq!(in_column_span(&a, &z).unwrap(), Annihilator::of(&a).contains(&z).unwrap());
        }
    }
}
