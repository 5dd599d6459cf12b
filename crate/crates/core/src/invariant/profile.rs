use num_rational::Rational64;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::Field;

use super::{GrT, InvariantError, Prepared, RationalT};

/// Values of s_t (or the reduced version) on the grid t = k/q, k = 0..=2q.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PLProfile {
    pub q: u32,
    pub points: Vec<ProfilePoint>,
    /// s_t = s_{2-t} at every grid point
    pub symmetric: bool,
    /// every value lies in (1/q)Z
    pub rational: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProfilePoint {
    pub t: RationalT,
    #[serde(serialize_with = "rational_string")]
    pub value: Rational64,
    pub stable: bool,
}

fn rational_string<S: serde::Serializer>(r: &Rational64, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

impl From<GrT> for ProfilePoint {
    fn from(g: GrT) -> Self {
        ProfilePoint { t: g.t, value: g.value, stable: g.stable }
    }
}

impl PLProfile {
    pub fn value(&self, t: RationalT) -> Option<Rational64> {
        self.points.iter().find(|p| p.t == t).map(|p| p.value)
    }
}

/// Evaluates every grid point, in parallel.
pub fn sweep<F: Field>(prep: &Prepared<F>, q: u32) -> Result<PLProfile, InvariantError> {
    if q == 0 {
        return Err(InvariantError::BadT("grid denominator 0".into()));
    }
    let points: Vec<ProfilePoint> = RationalT::grid(q)
        .into_par_iter()
        .map(|t| prep.s(t).map(ProfilePoint::from))
        .collect::<Result<_, _>>()?;
    let n = points.len();
    let symmetric = (0..n).all(|k| points[k].value == points[n - 1 - k].value);
    let rational = points.iter().all(|p| (p.value * Rational64::from_integer(q as i64)).is_integer());
    Ok(PLProfile { q, points, symmetric, rational })
}
