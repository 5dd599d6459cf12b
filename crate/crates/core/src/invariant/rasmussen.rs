//! s over F: set U = 0 and measure how far the Lee-type class is divisible by V.

use std::collections::HashMap;

use crate::algebra::{Annihilator, Field, FieldMatrix, Mono, Poly};
use crate::complex::{build_cube, transport_chain, Cube};
use crate::diagram::{Label, LinkDiagram};
use crate::frobenius::AlgebraElem;

use super::InvariantError;

/// Rasmussen's invariant of a knot diagram from the graded Bar-Natan complex over F[V].
pub fn rasmussen_s_crosscheck<F: Field>(d: &LinkDiagram, max_crossings: usize) -> Result<i64, InvariantError> {
    if d.ncomponents() != 1 {
        return Err(InvariantError::NotAKnot(d.ncomponents()));
    }
    let cube = build_cube::<F>(d, max_crossings)?;
    let c0 = cube.complex.map_entries(Poly::set_u_zero);
    let o = d.default_orientation();
    let u = Cube::<F>::vertex(&d.oriented_vertex(&o)?);
    let labels = d.checkerboard_labels(&o, None)?.labels;
    // X - U and V - X at U = 0
    let factors: Vec<AlgebraElem<F>> = labels
        .iter()
        .map(|l| match l {
            Label::A => AlgebraElem::x(),
            Label::B => AlgebraElem::v_minus_x(),
        })
        .collect();
    let h = cube.degree_of_vertex(u);
    let alpha: Vec<Poly<F>> = cube.pure_tensor(u, &factors);
    let (red, v) = transport_chain(&c0, h, &alpha);
    let ann = Annihilator::of(&red.d(h - 1));
    let q_alpha = d.writhe() - labels.len() as i64;
    let wv = ann.apply(&v);
    let dh = red.d(h);
    let top = red.gens(h).iter().map(|g| g.q as i64).max().unwrap_or(q_alpha);

    // alpha = V^k beta modulo torsion for a cycle beta of degree q_alpha + 2k?
    let divisible = |k: u32| -> bool {
        let qb = q_alpha + 2 * k as i64;
        let unknowns: Vec<(u32, usize)> = red
            .gens(h)
            .iter()
            .enumerate()
            .filter(|(_, g)| g.q as i64 >= qb && (g.q as i64 - qb) % 2 == 0)
            .map(|(i, g)| (((g.q as i64 - qb) / 2) as u32, i))
            .collect();
        let mut eq: HashMap<(bool, Mono, usize), usize> = HashMap::new();
        let mut key = |k: (bool, Mono, usize)| {
            let n = eq.len();
            *eq.entry(k).or_insert(n)
        };
        let mut entries: Vec<(usize, usize, F)> = Vec::new();
        for (col, (n, i)) in unknowns.iter().enumerate() {
            let vn = Mono::new(0, *n);
            for (j, p) in dh.col(*i) {
                for (m, a) in p.terms() {
                    entries.push((key((false, vn.mul(m), *j)), col, a.clone()));
                }
            }
            for (r, row) in ann.rows().iter().enumerate() {
                for (_, p) in row.iter().filter(|(ii, _)| ii == i) {
                    for (m, a) in p.terms() {
                        entries.push((key((true, vn.mul(m).mul(&Mono::new(0, k)), r)), col, a.clone()));
                    }
                }
            }
        }
        let mut rhs: Vec<(usize, F)> = Vec::new();
        for (r, p) in wv.iter().enumerate() {
            for (m, a) in p.terms() {
                rhs.push((key((true, *m, r)), a.clone()));
            }
        }
        let ncols = unknowns.len();
        let mut a = FieldMatrix::<F>::zero(eq.len(), ncols + 1);
        for (r, c, x) in entries {
            a.rows[r][c] = a.rows[r][c].add(&x);
        }
        for (r, x) in rhs {
            a.rows[r][ncols] = a.rows[r][ncols].add(&x);
        }
        let coeffs = FieldMatrix { ncols, rows: a.rows.iter().map(|row| row[..ncols].to_vec()).collect() };
        coeffs.rank() == a.rank()
    };
    let mut k = 0u32;
    while q_alpha + 2 * (k as i64 + 1) <= top && divisible(k + 1) {
        k += 1;
    }
    debug_assert!(divisible(0));
    Ok(q_alpha + 2 * k as i64 + 1)
}
