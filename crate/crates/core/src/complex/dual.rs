//! Dual complexes and the identification of C(mirror D) with the dual of C(D).

use crate::algebra::{Field, Poly, PolyMatrix};
use crate::diagram::LinkDiagram;

use super::cube::{build_cube, reduced_subcomplex, Cube, CubeGen};
use super::{ComplexError, GradedChainComplex, Generator};

#[derive(Debug, thiserror::Error)]
pub enum DualityFailure {
    #[error("ranks differ in degree {0}")]
    Shape(i32),
    #[error("the intertwiner is not a chain map in degree {0}")]
    NotChainMap(i32),
    #[error("the intertwiner does not preserve gr_q in degree {0}")]
    Grading(i32),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

/// Hom_R(C, R): degree i is dual to degree -i, q is negated and the differential out of
/// degree i is the transpose of d into degree -i.
pub fn mirror_dual<F: Field>(c: &GradedChainComplex<F>) -> GradedChainComplex<F> {
    let hs: Vec<i32> = c.degrees().rev().collect();
    if hs.is_empty() {
        return GradedChainComplex::zero();
    }
    let gens: Vec<Vec<Generator>> = hs
        .iter()
        .map(|h| c.gens(*h).iter().map(|g| Generator { q: -g.q, name: format!("{}*", g.name) }).collect())
        .collect();
    let d = hs.windows(2).map(|w| c.d(w[1]).transpose()).collect();
    GradedChainComplex::new(-hs[0], gens, d).expect("dual of a complex is well formed")
}

/// gamma on one circle: 1 -> X*, X -> 1* + (U+V) X*, as (target bit, coefficient).
fn gamma<F: Field>(x: bool) -> Vec<(bool, Poly<F>)> {
    if x {
        vec![(false, Poly::one()), (true, Poly::u_plus_v())]
    } else {
        vec![(true, Poly::one())]
    }
}

/// The map C(mirror D) -> C(D)^* sending (ubar, y) to sigma(u) (x) gamma(y_i).
fn intertwiner<F: Field>(
    cube: &Cube<F>,
    mirror: &Cube<F>,
    n: usize,
    h: i32,
) -> Result<PolyMatrix<F>, DualityFailure> {
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let char2 = F::characteristic() == 2;
    let marked = |c: &Cube<F>, u: u64| c.marked().map(|p| c.resolution(u).circles.iter().position(|k| k.edges.contains(&p)).unwrap());
    let mut entries = Vec::new();
    for (col, g) in mirror.gens(h).iter().enumerate() {
        let u = !g.u & full;
        let r = cube.resolution(u).circles.len();
        let skip = marked(cube, u);
        if skip != marked(mirror, g.u) {
            return Err(DualityFailure::Shape(h));
        }
        let odd = (0..n).filter(|i| u >> i & 1 == 1).sum::<usize>() % 2 == 1;
        let sign = if odd && !char2 { Poly::one().neg() } else { Poly::one() };
        let mut terms = vec![(0u64, sign)];
        for k in (0..r).filter(|k| Some(*k) != skip) {
            terms = terms
                .into_iter()
                .flat_map(|(m, p)| gamma::<F>(g.mask >> k & 1 == 1).into_iter().map(move |(b, c)| (m | (b as u64) << k, p.mul(&c))))
                .collect();
        }
        for (m, p) in terms {
            let (hh, row) = cube.index_of(CubeGen { u, mask: m }).ok_or(DualityFailure::Shape(h))?;
            debug_assert_eq!(hh, -h);
            entries.push((row, col, p));
        }
    }
    Ok(PolyMatrix::from_entries(cube.complex.rank(-h), mirror.complex.rank(h), entries))
}

fn verify<F: Field>(cube: &Cube<F>, mirror: &Cube<F>, n: usize) -> Result<(), DualityFailure> {
    cube.complex.check()?;
    mirror.complex.check()?;
    let dual = mirror_dual(&cube.complex);
    let hs: Vec<i32> = mirror.complex.degrees().collect();
    for &h in &hs {
        if mirror.complex.rank(h) != dual.rank(h) {
            return Err(DualityFailure::Shape(h));
        }
        let phi = intertwiner(cube, mirror, n, h)?;
        let phi_next = intertwiner(cube, mirror, n, h + 1)?;
        if phi_next.mul(&mirror.complex.d(h)) != dual.d(h).mul(&phi) {
            return Err(DualityFailure::NotChainMap(h));
        }
        let (from, to) = (mirror.complex.gens(h), dual.gens(h));
        for (r, c, p) in phi.entries() {
            if p.terms().iter().any(|(mono, _)| to[r].q - 2 * mono.degree() as i32 != from[c].q) {
                return Err(DualityFailure::Grading(h));
            }
        }
    }
    if dual.degrees() != mirror.complex.degrees() {
        return Err(DualityFailure::Shape(dual.degrees().start));
    }
    Ok(())
}

/// Checks that the explicit intertwiner is a grading-preserving chain isomorphism from
/// C(mirror D) to C(D)^*. It is unitriangular on each vertex, so invertibility is automatic.
pub fn verify_mirror_duality<F: Field>(d: &LinkDiagram) -> Result<(), DualityFailure> {
    let cube = build_cube::<F>(d, usize::MAX)?;
    let mirror = build_cube::<F>(&d.mirror(), usize::MAX)?;
    verify(&cube, &mirror, d.ncrossings())
}

/// The same for the reduced complexes, with the identity on the marked circle.
pub fn verify_reduced_mirror_duality<F: Field>(d: &LinkDiagram) -> Result<(), DualityFailure> {
    let m = d.mirror();
    let cube = reduced_subcomplex(&build_cube::<F>(d, usize::MAX)?, d)?;
    let mirror = reduced_subcomplex(&build_cube::<F>(&m, usize::MAX)?, &m)?;
    verify(&cube, &mirror, d.ncrossings())
}
