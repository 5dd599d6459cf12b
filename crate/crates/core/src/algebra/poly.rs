use std::cmp::Ordering;
use std::fmt::{self, Display};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::field::Field;
use super::AlgebraError;

/// Monomial U^u V^v.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Mono {
    pub u: u32,
    pub v: u32,
}

impl Mono {
    pub const ONE: Mono = Mono { u: 0, v: 0 };

    pub fn new(u: u32, v: u32) -> Self {
        Mono { u, v }
    }

    pub fn degree(&self) -> u32 {
        self.u + self.v
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        Mono { u: self.u + other.u, v: self.v + other.v }
    }

    pub fn divides(&self, other: &Mono) -> bool {
        self.u <= other.u && self.v <= other.v
    }

    fn div(&self, other: &Mono) -> Mono {
        Mono { u: self.u - other.u, v: self.v - other.v }
    }
}

// graded lex, U > V
impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then(self.u.cmp(&other.u))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial in F[U,V]. Terms are kept sorted by descending monomial with no
/// zero coefficients, so structural equality is mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly<F: Field> {
    terms: Vec<(Mono, F)>,
}

impl<F: Field> Default for Poly<F> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<F: Field> Poly<F> {
    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(F::one())
    }

    pub fn constant(c: F) -> Self {
        Self::monomial(Mono::ONE, c)
    }

    pub fn from_i64(n: i64) -> Self {
        Self::constant(F::from_i64(n))
    }

    pub fn monomial(m: Mono, c: F) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Poly { terms: vec![(m, c)] }
        }
    }

    pub fn u() -> Self {
        Self::monomial(Mono::new(1, 0), F::one())
    }

    pub fn v() -> Self {
        Self::monomial(Mono::new(0, 1), F::one())
    }

    /// V - U, the square root of the discriminant.
    pub fn v_minus_u() -> Self {
        Self::v().sub(&Self::u())
    }

    pub fn u_plus_v() -> Self {
        Self::u().add(&Self::v())
    }

    pub fn uv() -> Self {
        Self::monomial(Mono::new(1, 1), F::one())
    }

    /// Builds from arbitrary (monomial, coefficient) pairs, combining duplicates.
    pub fn from_terms(terms: impl IntoIterator<Item = (Mono, F)>) -> Self {
        let mut v: Vec<(Mono, F)> = terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        v.sort_by(|a, b| b.0.cmp(&a.0));
        let mut out: Vec<(Mono, F)> = Vec::with_capacity(v.len());
        for (m, c) in v {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => {
                    *lc = lc.add(&c);
                    if lc.is_zero() {
                        out.pop();
                    }
                }
                _ => out.push((m, c)),
            }
        }
        Poly { terms: out }
    }

    pub fn terms(&self) -> &[(Mono, F)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn nterms(&self) -> usize {
        self.terms.len()
    }

    /// Nonzero constant, i.e. a unit of R.
    pub fn as_unit(&self) -> Option<&F> {
        match self.terms.as_slice() {
            [(m, c)] if *m == Mono::ONE => Some(c),
            _ => None,
        }
    }

    pub fn is_one(&self) -> bool {
        self.as_unit().map(|c| c.is_one()).unwrap_or(false)
    }

    pub fn coeff(&self, m: &Mono) -> F {
        self.terms
            .binary_search_by(|(tm, _)| m.cmp(tm))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_else(|_| F::zero())
    }

    pub fn leading(&self) -> Option<&(Mono, F)> {
        self.terms.first()
    }

    /// Total degree of the leading monomial; 0 for the zero polynomial.
    pub fn degree(&self) -> u32 {
        self.terms.first().map(|(m, _)| m.degree()).unwrap_or(0)
    }

    pub fn min_degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.degree()).min().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.terms.first().map(|(m, _)| m.degree()) == self.terms.last().map(|(m, _)| m.degree())
    }

    pub fn add(&self, other: &Self) -> Self {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return other.clone();
        }
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (a, b) = (&self.terms[i], &other.terms[j]);
            match a.0.cmp(&b.0) {
                Ordering::Greater => {
                    out.push(a.clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(b.clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = a.1.add(&b.1);
                    if !c.is_zero() {
                        out.push((a.0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&other.terms[j..]);
        Poly { terms: out }
    }

    pub fn neg(&self) -> Self {
        Poly { terms: self.terms.iter().map(|(m, c)| (*m, c.neg())).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Poly { terms: self.terms.iter().map(|(m, a)| (*m, a.mul(c))).collect() }
    }

    pub fn mul_mono(&self, m: &Mono) -> Self {
        Poly { terms: self.terms.iter().map(|(a, c)| (a.mul(m), c.clone())).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if let Some(c) = other.as_unit() {
            return self.scale(c);
        }
        if let Some(c) = self.as_unit() {
            return other.scale(c);
        }
        let mut prods = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                prods.push((ma.mul(mb), ca.mul(cb)));
            }
        }
        Self::from_terms(prods)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`.
    pub fn divide_exact(&self, d: &Self) -> Result<Option<Self>, AlgebraError> {
        let (dm, dc) = d.leading().ok_or(AlgebraError::DivisionByZero)?.clone();
        let dinv = dc.inv().expect("nonzero leading coefficient");
        if let Some(c) = d.as_unit() {
            return Ok(Some(self.scale(&c.inv().unwrap())));
        }
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some((rm, rc)) = rem.leading().cloned() {
            if !dm.divides(&rm) {
                return Ok(None);
            }
            let t = Poly::monomial(rm.div(&dm), rc.mul(&dinv));
            rem = rem.sub(&d.mul(&t));
            quot.extend(t.terms);
        }
        Ok(Some(Self::from_terms(quot)))
    }

    /// Like `divide_exact` but panics when the division is not exact.
    pub fn div_exact_or_panic(&self, d: &Self) -> Self {
        self.divide_exact(d)
            .expect("nonzero divisor")
            .unwrap_or_else(|| panic!("{self} is not divisible by {d}"))
    }

    /// Largest k with (V-U)^k dividing `self`.
    pub fn vu_divisibility(&self) -> Result<u32, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::ZeroPolynomial);
        }
        let d = Self::v_minus_u();
        let mut k = 0;
        let mut p = self.clone();
        while let Some(q) = p.divide_exact(&d)? {
            p = q;
            k += 1;
        }
        Ok(k)
    }

    /// Substitutes U -> a*U, V -> b*V for scalars a, b.
    pub fn scale_vars(&self, a: &F, b: &F) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, c)| {
            let mut k = c.clone();
            for _ in 0..m.u {
                k = k.mul(a);
            }
            for _ in 0..m.v {
                k = k.mul(b);
            }
            (*m, k)
        }))
    }

    /// Substitutes U = 0.
    pub fn set_u_zero(&self) -> Self {
        Poly { terms: self.terms.iter().filter(|(m, _)| m.u == 0).cloned().collect() }
    }

    /// Swaps U and V.
    pub fn swap_uv(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, c)| (Mono::new(m.v, m.u), c.clone())))
    }

    pub fn parse(s: &str) -> Result<Self, AlgebraError> {
        parse_poly(s)
    }

    /// Sort key used for pivot selection: fewer terms first, then lower degree.
    pub fn weight(&self) -> (usize, u32) {
        (self.terms.len(), self.degree())
    }
}

fn fmt_mono(m: &Mono) -> String {
    let mut parts = Vec::new();
    match m.u {
        0 => {}
        1 => parts.push("U".to_string()),
        k => parts.push(format!("U^{k}")),
    }
    match m.v {
        0 => {}
        1 => parts.push("V".to_string()),
        k => parts.push(format!("V^{k}")),
    }
    parts.join("*")
}

impl<F: Field> Display for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let mut cs = c.to_string();
            let negative = cs.starts_with('-');
            if negative {
                cs.remove(0);
            }
            if i == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { '-' } else { '+' })?;
            }
            let ms = fmt_mono(m);
            match (ms.is_empty(), cs == "1") {
                (true, _) => write!(f, "{cs}")?,
                (false, true) => write!(f, "{ms}")?,
                (false, false) => write!(f, "{cs}*{ms}")?,
            }
        }
        Ok(())
    }
}

fn parse_poly<F: Field>(s: &str) -> Result<Poly<F>, AlgebraError> {
    let err = || AlgebraError::Parse(s.to_string());
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(err());
    }
    // split into signed terms
    let mut terms = Vec::new();
    let mut cur = String::new();
    for (i, ch) in compact.chars().enumerate() {
        if (ch == '+' || ch == '-') && i > 0 && !cur.ends_with('/') {
            terms.push(std::mem::take(&mut cur));
        }
        cur.push(ch);
    }
    terms.push(cur);

    let mut out = Vec::new();
    for t in terms {
        let (neg, body) = match t.strip_prefix('-') {
            Some(b) => (true, b),
            None => (false, t.strip_prefix('+').unwrap_or(&t)),
        };
        if body.is_empty() {
            return Err(err());
        }
        let mut coeff = F::one();
        let mut mono = Mono::ONE;
        for factor in body.split('*') {
            if let Some(rest) = factor.strip_prefix('U') {
                mono.u += parse_exp(rest).ok_or_else(err)?;
            } else if let Some(rest) = factor.strip_prefix('V') {
                mono.v += parse_exp(rest).ok_or_else(err)?;
            } else {
                coeff = coeff.mul(&F::parse_coeff(factor).ok_or_else(err)?);
            }
        }
        if neg {
            coeff = coeff.neg();
        }
        out.push((mono, coeff));
    }
    Ok(Poly::from_terms(out))
}

fn parse_exp(s: &str) -> Option<u32> {
    if s.is_empty() {
        Some(1)
    } else {
        s.strip_prefix('^')?.parse().ok()
    }
}

impl<F: Field> Serialize for Poly<F> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de, F: Field> Deserialize<'de> for Poly<F> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        parse_poly(&s).map_err(serde::de::Error::custom)
    }
}
