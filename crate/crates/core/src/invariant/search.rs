//! Truncations F^t_lambda and the search for the largest level holding a nontorsion cycle.
//!
//! The differential preserves gr_q, so the monomial multiples U^m V^n g split into finite
//! slices of constant gr_q(g) - 2(m + n). A cycle z is torsion iff W z = 0, W spanning the
//! left null space of the incoming differential. Inside one slice a nontorsion cycle
//! exists iff stacking W under d raises the F-rank.

use std::collections::{BTreeMap, HashMap};

use num_rational::Rational64;

use crate::algebra::{Annihilator, Field, FieldMatrix, Mono, Poly};
use crate::complex::GradedChainComplex;

use super::{GrT, InvariantError, LatticePoint, RationalT};

/// F-basis of F^t_lambda in one degree and the differential restricted to it.
#[derive(Clone, Debug)]
pub struct Truncation<F: Field> {
    pub h: i32,
    pub lambda: Rational64,
    /// (monomial, generator index), in enumeration order
    pub basis: Vec<(Mono, usize)>,
    /// coordinates of the image, in the degree h+1 monomial basis
    pub target: Vec<(Mono, usize)>,
    /// rows index `target`, columns `basis`
    pub d: FieldMatrix<F>,
}

/// Monomial multiples with scaled gr_t at least `level`. `cap` bounds the exponent that gr_t
/// does not see at t = 0 (U) or t = 2 (V).
fn domain<F: Field>(c: &GradedChainComplex<F>, h: i32, t: RationalT, level: i64, cap: u32) -> Vec<(Mono, usize)> {
    let mut out = Vec::new();
    let (p, q) = (t.numer(), t.denom());
    for (i, g) in c.gens(h).iter().enumerate() {
        let at = |m: u32, n: u32| t.scaled(&LatticePoint { m, n, q: g.q });
        for m in 0.. {
            if (p == 0 && m > cap) || at(m, 0) < level {
                break;
            }
            for n in 0.. {
                if (p == 2 * q && n > cap) || at(m, n) < level {
                    break;
                }
                out.push((Mono::new(m, n), i));
            }
        }
    }
    out
}

fn scaled_level(t: RationalT, lambda: Rational64) -> i64 {
    let x = lambda * Rational64::from_integer(t.denom() as i64);
    x.ceil().to_integer()
}

pub fn truncate<F: Field>(c: &GradedChainComplex<F>, t: RationalT, lambda: Rational64, h: i32) -> Result<Truncation<F>, InvariantError> {
    if t.is_endpoint() {
        return Err(InvariantError::Endpoint(t));
    }
    let basis = domain(c, h, t, scaled_level(t, lambda), 0);
    let dh = c.d(h);
    let mut index: HashMap<(Mono, usize), usize> = HashMap::new();
    let mut target = Vec::new();
    let mut cols: Vec<Vec<(usize, F)>> = Vec::new();
    for (mono, i) in &basis {
        let mut col = Vec::new();
        for (j, p) in dh.col(*i) {
            for (m2, a) in p.terms() {
                let key = (mono.mul(m2), *j);
                let n = index.len();
                let r = *index.entry(key).or_insert_with(|| {
                    target.push(key);
                    n
                });
                col.push((r, a.clone()));
            }
        }
        cols.push(col);
    }
    let mut d = FieldMatrix::<F>::zero(target.len(), basis.len());
    for (k, col) in cols.into_iter().enumerate() {
        for (r, a) in col {
            d.rows[r][k] = d.rows[r][k].add(&a);
        }
    }
    Ok(Truncation { h, lambda, basis, target, d })
}

/// Coordinates of sparse vectors indexed by (which block, monomial, row).
struct Coords {
    index: HashMap<(bool, Mono, usize), usize>,
}

impl Coords {
    fn get(&mut self, key: (bool, Mono, usize)) -> usize {
        let n = self.index.len();
        *self.index.entry(key).or_insert(n)
    }
}

fn has_nontorsion<F: Field>(c: &GradedChainComplex<F>, ann: &Annihilator<F>, h: i32, t: RationalT, level: i64, cap: u32) -> bool {
    let mut slices: BTreeMap<i32, Vec<(Mono, usize)>> = BTreeMap::new();
    let gens = c.gens(h);
    for (mono, i) in domain(c, h, t, level, cap) {
        slices.entry(gens[i].q - 2 * mono.degree() as i32).or_default().push((mono, i));
    }
    let dh = c.d(h);
    // W restricted to each generator: column i of W
    let mut wcols: Vec<Vec<(usize, &Poly<F>)>> = vec![Vec::new(); gens.len()];
    for (r, row) in ann.rows().iter().enumerate() {
        for (i, p) in row {
            wcols[*i].push((r, p));
        }
    }
    for elems in slices.values() {
        let mut co = Coords { index: HashMap::new() };
        let mut rows: Vec<Vec<(usize, F)>> = Vec::new();
        for (mono, i) in elems {
            let mut row = Vec::new();
            for (j, p) in dh.col(*i) {
                for (m2, a) in p.terms() {
                    row.push((co.get((false, mono.mul(m2), *j)), a.clone()));
                }
            }
            rows.push(row);
        }
        let nd = co.index.len();
        for (k, (mono, i)) in elems.iter().enumerate() {
            for (r, p) in &wcols[*i] {
                for (m2, a) in p.terms() {
                    rows[k].push((co.get((true, mono.mul(m2), *r)), a.clone()));
                }
            }
        }
        let ncols = co.index.len();
        if ncols == nd {
            continue;
        }
        let mut full = FieldMatrix::<F>::zero(rows.len(), ncols);
        for (k, row) in rows.into_iter().enumerate() {
            for (col, a) in row {
                full.rows[k][col] = full.rows[k][col].add(&a);
            }
        }
        let donly = FieldMatrix { ncols: nd, rows: full.rows.iter().map(|r| r[..nd].to_vec()).collect() };
        if full.rank() > donly.rank() {
            return true;
        }
    }
    false
}

/// Largest level in [floor, top] with a hit, assuming one at the floor.
fn bisect(mut lo: i64, mut hi: i64, hit: impl Fn(i64) -> bool) -> i64 {
    while lo < hi {
        let mid = lo + (hi - lo + 1) / 2;
        if hit(mid) {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    lo
}

fn top<F: Field>(c: &GradedChainComplex<F>, h: i32, t: RationalT) -> i64 {
    c.gens(h).iter().map(|g| g.q as i64 * t.denom() as i64).max().unwrap_or(i64::MIN)
}

pub(super) fn interior<F: Field>(
    c: &GradedChainComplex<F>,
    ann: &Annihilator<F>,
    h: i32,
    t: RationalT,
    floor: i64,
) -> Result<GrT, InvariantError> {
    let lo = floor * t.denom() as i64;
    let hit = |l: i64| has_nontorsion(c, ann, h, t, l, 0);
    if !hit(lo) {
        return Err(InvariantError::SearchExhausted { t, h });
    }
    let best = bisect(lo, top(c, h, t).max(lo), hit);
    Ok(GrT { t, value: Rational64::new(best, t.denom() as i64), stable: true })
}

/// At t = 0 or 2 the unseen exponent is capped; the result is a lower bound, flagged stable
/// when raising the cap by 2 changes nothing.
pub(super) fn endpoint<F: Field>(c: &GradedChainComplex<F>, ann: &Annihilator<F>, h: i32, t: RationalT, floor: i64, cap: u32) -> GrT {
    let run = |cap: u32| -> Option<i64> {
        let hit = |l: i64| has_nontorsion(c, ann, h, t, l, cap);
        hit(floor).then(|| bisect(floor, top(c, h, t).max(floor), hit))
    };
    let (a, b) = (run(cap), run(cap + 2));
    let value = b.or(a).unwrap_or(floor);
    GrT { t, value: Rational64::from_integer(value), stable: a.is_some() && a == b }
}
