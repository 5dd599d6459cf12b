//! Canonical Lee generators, their lifts to the cube and the nontorsion test.

use std::collections::BTreeMap;

use crate::algebra::{ffge_rank, in_column_span, AlgebraError, Field, Poly};
use crate::complex::{ComplexError, Cube, GradedChainComplex};
use crate::diagram::{DiagramError, Label, LinkDiagram, Orientation};
use crate::frobenius::AlgebraElem;

#[derive(Debug, thiserror::Error)]
pub enum LeeError {
    #[error("chain is not a cycle")]
    NotACycle,
    #[error("chain has length {got}, degree {h} has rank {expected}")]
    WrongLength { h: i32, expected: usize, got: usize },
    #[error("gamma is only defined here for positive diagrams")]
    NotPositive,
    #[error("gamma has (V-U)-divisibility {0}, expected 1")]
    Divisibility(u32),
    #[error("diagram has no basepoint")]
    NoBasepoint,
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// s_o: the oriented resolution with each circle labelled e1 (A) or e2 (B).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeeGenerator {
    pub vertex: Vec<bool>,
    pub labels: Vec<Label>,
    pub orientation: Orientation,
}

/// (V-U)^r s_o written in CKh(D): A-circles carry X - U and B-circles V - X.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftedGenerator<F: Field> {
    pub h: i32,
    pub vertex: u64,
    pub factors: Vec<AlgebraElem<F>>,
    pub chain: Vec<Poly<F>>,
}

pub fn canonical_generator(d: &LinkDiagram, o: &Orientation) -> Result<LeeGenerator, LeeError> {
    Ok(LeeGenerator {
        vertex: d.oriented_vertex(o)?,
        labels: d.checkerboard_labels(o, None)?.labels,
        orientation: o.clone(),
    })
}

/// The reduced generator r_o: colours are swapped if needed so the marked circle is e1.
pub fn reduced_canonical_generator(d: &LinkDiagram, o: &Orientation) -> Result<LeeGenerator, LeeError> {
    let p = d.basepoint().ok_or(LeeError::NoBasepoint)?;
    Ok(LeeGenerator {
        vertex: d.oriented_vertex(o)?,
        labels: d.checkerboard_labels(o, Some(p))?.labels,
        orientation: o.clone(),
    })
}

fn factor<F: Field>(l: Label) -> AlgebraElem<F> {
    match l {
        Label::A => AlgebraElem::x_minus_u(),
        Label::B => AlgebraElem::v_minus_x(),
    }
}

/// The lift of s_o (or r_o in a reduced cube, where the marked factor is dropped).
pub fn lift_tilde<F: Field>(cube: &Cube<F>, d: &LinkDiagram, o: &Orientation) -> Result<LiftedGenerator<F>, LeeError> {
    let g = if cube.is_reduced() { reduced_canonical_generator(d, o)? } else { canonical_generator(d, o)? };
    let vertex = Cube::<F>::vertex(&g.vertex);
    let factors: Vec<AlgebraElem<F>> = g.labels.iter().map(|l| factor(*l)).collect();
    let chain = cube.pure_tensor(vertex, &factors);
    Ok(LiftedGenerator { h: cube.degree_of_vertex(vertex), vertex, factors, chain })
}

/// Whether the cycle z of degree h survives localization, i.e. is not a boundary over
/// Frac(R).
pub fn is_nontorsion<F: Field>(c: &GradedChainComplex<F>, h: i32, z: &[Poly<F>]) -> Result<bool, LeeError> {
    if z.len() != c.rank(h) {
        return Err(LeeError::WrongLength { h, expected: c.rank(h), got: z.len() });
    }
    if c.apply_d(h, z).iter().any(|p| !p.is_zero()) {
        return Err(LeeError::NotACycle);
    }
    if z.iter().all(|p| p.is_zero()) {
        return Ok(false);
    }
    Ok(!in_column_span(&c.d(h - 1), z)?)
}

/// Rank of the localized homology in each degree where it is nonzero.
pub fn localized_rank<F: Field>(c: &GradedChainComplex<F>) -> BTreeMap<i32, usize> {
    let ranks: BTreeMap<i32, usize> = c.degrees().map(|h| (h, c.d_ref(h).map_or(0, ffge_rank))).collect();
    c.degrees()
        .map(|h| (h, c.rank(h) - ranks[&h] - ranks.get(&(h - 1)).copied().unwrap_or(0)))
        .filter(|(_, k)| *k > 0)
        .collect()
}

/// For a positive diagram, gamma = s~_o -+ s~_obar divided by V - U.
pub fn gamma_class<F: Field>(cube: &Cube<F>, d: &LinkDiagram, o: &Orientation) -> Result<LiftedGenerator<F>, LeeError> {
    if d.signs(o)?.iter().any(|s| *s < 0) {
        return Err(LeeError::NotPositive);
    }
    let so = lift_tilde(cube, d, o)?;
    let sb = lift_tilde(cube, d, &o.reverse())?;
    let labels = d.checkerboard_labels(o, None)?;
    let (a, b) = (labels.count(Label::A), labels.count(Label::B));
    let gamma: Vec<Poly<F>> = so
        .chain
        .iter()
        .zip(&sb.chain)
        .map(|(x, y)| if (a + b) % 2 == 0 { x.sub(y) } else { x.add(y) })
        .collect();
    let div = gamma.iter().filter(|p| !p.is_zero()).map(|p| p.vu_divisibility()).collect::<Result<Vec<u32>, _>>()?;
    let k = div.into_iter().min().unwrap_or(0);
    if k != 1 {
        return Err(LeeError::Divisibility(k));
    }
    let vu = Poly::v_minus_u();
    let chain = gamma.iter().map(|p| p.div_exact_or_panic(&vu)).collect();
    Ok(LiftedGenerator { chain, ..so })
}

#[cfg(test)]
mod tests;
