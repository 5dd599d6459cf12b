//! The gr_t filtration and the profile t -> s_t.

mod profile;
mod rasmussen;
mod search;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::algebra::{Annihilator, Field, Mono, Poly};
use crate::complex::{build_cube, gauss_reduce, reduced_subcomplex, scan_reduce, ComplexError, GradedChainComplex, ScanOptions};
use crate::diagram::{DiagramError, LinkDiagram, Orientation};
use crate::lee::{localized_rank, LeeError};

pub use profile::{sweep, PLProfile};
pub use rasmussen::rasmussen_s_crosscheck;
pub use search::{truncate, Truncation};

#[derive(Debug, thiserror::Error)]
pub enum InvariantError {
    #[error("bad t: {0}")]
    BadT(String),
    #[error("t = {0} is an endpoint; use the capped search")]
    Endpoint(RationalT),
    #[error("no nontorsion cycle at the guaranteed floor (t = {t}, degree {h})")]
    SearchExhausted { t: RationalT, h: i32 },
    #[error("expected a knot, got {0} components")]
    NotAKnot(usize),
    #[error("reduced value {reduced} exceeds s_t + 2 = {bound} at t = {t}")]
    BoundViolated { t: RationalT, reduced: Rational64, bound: Rational64 },
    #[error("localized homology sits in degrees {found:?}, orientations predict {expected:?}")]
    Degrees { found: Vec<i32>, expected: Vec<i32> },
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Lee(#[from] LeeError),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

/// t = p/q in lowest terms with 0 <= t <= 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct RationalT {
    p: u32,
    q: u32,
}

impl RationalT {
    pub fn new(p: u32, q: u32) -> Result<Self, InvariantError> {
        if q == 0 {
            return Err(InvariantError::BadT(format!("{p}/0")));
        }
        if p > 2 * q {
            return Err(InvariantError::BadT(format!("{p}/{q} is larger than 2")));
        }
        let g = p.gcd(&q);
        Ok(RationalT { p: p / g, q: q / g })
    }

    /// k/q for k = 0..=2q.
    pub fn grid(q: u32) -> Vec<RationalT> {
        (0..=2 * q).map(|k| RationalT::new(k, q).unwrap()).collect()
    }

    pub fn numer(&self) -> u32 {
        self.p
    }

    pub fn denom(&self) -> u32 {
        self.q
    }

    pub fn value(&self) -> Rational64 {
        Rational64::new(self.p as i64, self.q as i64)
    }

    pub fn is_endpoint(&self) -> bool {
        self.p == 0 || self.p == 2 * self.q
    }

    /// 2 - t.
    pub fn reflect(&self) -> Self {
        RationalT { p: 2 * self.q - self.p, q: self.q }
    }

    /// Integer form of gr_t scaled by q: q gr_q - p m - (2q - p) n.
    pub fn scaled(&self, pt: &LatticePoint) -> i64 {
        let (p, q) = (self.p as i64, self.q as i64);
        q * pt.q as i64 - p * pt.m as i64 - (2 * q - p) * pt.n as i64
    }
}

impl Ord for RationalT {
    fn cmp(&self, o: &Self) -> std::cmp::Ordering {
        (self.p as u64 * o.q as u64).cmp(&(o.p as u64 * self.q as u64))
    }
}

impl PartialOrd for RationalT {
    fn partial_cmp(&self, o: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Display for RationalT {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.q == 1 {
            write!(f, "{}", self.p)
        } else {
            write!(f, "{}/{}", self.p, self.q)
        }
    }
}

impl FromStr for RationalT {
    type Err = InvariantError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || InvariantError::BadT(s.to_string());
        let (p, q) = match s.trim().split_once('/') {
            Some((p, q)) => (p.trim().parse().map_err(|_| bad())?, q.trim().parse().map_err(|_| bad())?),
            None => (s.trim().parse().map_err(|_| bad())?, 1),
        };
        RationalT::new(p, q)
    }
}

impl TryFrom<String> for RationalT {
    type Error = InvariantError;
    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl From<RationalT> for String {
    fn from(t: RationalT) -> String {
        t.to_string()
    }
}

/// U^m V^n g with gr_q(g) = q.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LatticePoint {
    pub m: u32,
    pub n: u32,
    pub q: i32,
}

impl LatticePoint {
    pub fn of(mono: &Mono, q: i32) -> Self {
        LatticePoint { m: mono.u, n: mono.v, q }
    }

    pub fn gr_t(&self, t: RationalT) -> Rational64 {
        Rational64::new(t.scaled(self), t.q as i64)
    }
}

/// Minimal gr_t over the homogeneous summands of a chain of degree h; `None` for zero.
pub fn gr_t_of_chain<F: Field>(c: &GradedChainComplex<F>, h: i32, z: &[Poly<F>], t: RationalT) -> Option<Rational64> {
    c.gens(h)
        .iter()
        .zip(z)
        .flat_map(|(g, p)| p.terms().iter().map(move |(m, _)| LatticePoint::of(m, g.q).gr_t(t)))
        .min()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    #[default]
    Scan,
    Cube,
}

impl FromStr for Mode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "scan" => Ok(Mode::Scan),
            "cube" => Ok(Mode::Cube),
            _ => Err(format!("unknown mode {s:?} (scan|cube)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Settings {
    pub mode: Mode,
    pub reduced: bool,
    /// exponent cap in the unbounded direction at t = 0, 2
    pub cap: u32,
    /// largest diagram accepted by the full cube
    pub max_crossings: usize,
}

impl Default for Settings {
    fn default() -> Self {
        Settings { mode: Mode::Scan, reduced: false, cap: 6, max_crossings: 12 }
    }
}

/// gr_t(D) (or its reduced version) at one t. At the endpoints `stable` says whether
/// raising the cap by 2 left the value unchanged; elsewhere it is always true.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GrT {
    pub t: RationalT,
    pub value: Rational64,
    pub stable: bool,
}

/// A reduced complex for a diagram together with what the search needs.
pub struct Prepared<F: Field> {
    pub complex: GradedChainComplex<F>,
    pub reduced: bool,
    pub cap: u32,
    /// degree -> largest gr_t of a lifted canonical generator there (independent of t)
    pub floors: BTreeMap<i32, i64>,
    pub localized: BTreeMap<i32, usize>,
    anns: BTreeMap<i32, Annihilator<F>>,
}

/// Lower bounds from the lifted generators: gr_t of the all-X summand, the minimum.
fn floors(d: &LinkDiagram, reduced: bool) -> Result<BTreeMap<i32, i64>, InvariantError> {
    let (np, nm) = (d.n_plus() as i64, d.n_minus() as i64);
    let mut out: BTreeMap<i32, i64> = BTreeMap::new();
    for o in Orientation::all(d) {
        let u = d.oriented_vertex(&o)?.iter().filter(|b| **b).count() as i64;
        let r = d.seifert_circle_count(&o)? as i64;
        let h = (u - nm) as i32;
        let f = -r + u + np - 2 * nm + reduced as i64;
        let e = out.entry(h).or_insert(f);
        *e = (*e).max(f);
    }
    Ok(out)
}

impl<F: Field> Prepared<F> {
    pub fn new(d: &LinkDiagram, s: &Settings) -> Result<Self, InvariantError> {
        let complex = match s.mode {
            Mode::Scan => scan_reduce::<F>(d, &ScanOptions { reduced: s.reduced, trace: false })?.0,
            Mode::Cube => {
                let cube = build_cube::<F>(d, s.max_crossings)?;
                let cube = if s.reduced { reduced_subcomplex(&cube, d)? } else { cube };
                gauss_reduce(&cube.complex, false).0
            }
        };
        Self::from_complex(complex, floors(d, s.reduced)?, s.reduced, s.cap)
    }

    /// Wraps an already reduced complex; `floors` must come from lifted generators.
    pub fn from_complex(
        complex: GradedChainComplex<F>,
        floors: BTreeMap<i32, i64>,
        reduced: bool,
        cap: u32,
    ) -> Result<Self, InvariantError> {
        let localized = localized_rank(&complex);
        let found: Vec<i32> = localized.keys().copied().collect();
        let expected: Vec<i32> = floors.keys().copied().collect();
        if found != expected {
            return Err(InvariantError::Degrees { found, expected });
        }
        let anns = found.iter().map(|h| (*h, Annihilator::of(&complex.d(h - 1)))).collect();
        Ok(Prepared { complex, reduced, cap, floors, localized, anns })
    }

    /// gr_t(D): the largest gr_t of a nontorsion cycle, over all degrees.
    pub fn gr_t(&self, t: RationalT) -> Result<GrT, InvariantError> {
        let mut best: Option<GrT> = None;
        for (&h, &floor) in &self.floors {
            let g = if t.is_endpoint() {
                search::endpoint(&self.complex, &self.anns[&h], h, t, floor, self.cap)
            } else {
                search::interior(&self.complex, &self.anns[&h], h, t, floor)?
            };
            best = Some(match best {
                Some(b) if b.value >= g.value => GrT { stable: b.stable && g.stable, ..b },
                Some(b) => GrT { stable: b.stable && g.stable, ..g },
                None => g,
            });
        }
        Ok(best.expect("a nonempty link has localized homology"))
    }

    /// s_t = gr_t - 1, or the reduced value itself.
    pub fn s(&self, t: RationalT) -> Result<GrT, InvariantError> {
        let g = self.gr_t(t)?;
        Ok(if self.reduced { g } else { GrT { value: g.value - 1, ..g } })
    }
}

/// s_t of a diagram.
pub fn s_t<F: Field>(d: &LinkDiagram, t: RationalT, s: &Settings) -> Result<GrT, InvariantError> {
    Prepared::<F>::new(d, &Settings { reduced: false, ..s.clone() })?.s(t)
}

/// The reduced value at t, checked against s_t + 2.
pub fn s_tilde_t<F: Field>(d: &LinkDiagram, t: RationalT, s: &Settings) -> Result<GrT, InvariantError> {
    let red = Prepared::<F>::new(d, &Settings { reduced: true, ..s.clone() })?.s(t)?;
    let full = s_t::<F>(d, t, s)?;
    let bound = full.value + 2;
    if red.value > bound && red.stable && full.stable {
        return Err(InvariantError::BoundViolated { t, reduced: red.value, bound });
    }
    Ok(red)
}

#[cfg(test)]
mod tests;
