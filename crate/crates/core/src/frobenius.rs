//! The Frobenius pair (R, A) with A = R[X]/((X-U)(X-V)).

use std::collections::BTreeMap;
use std::fmt;

use num_rational::Rational64;

use crate::algebra::{Field, Mono, Poly};

/// c0*1 + c1*X.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct AlgebraElem<F: Field> {
    pub c0: Poly<F>,
    pub c1: Poly<F>,
}

/// Element of A (x) A; `c[i][j]` is the coefficient of b_i (x) b_j where b_0 = 1, b_1 = X.
pub type Tensor2<F> = [[Poly<F>; 2]; 2];

/// The structure constants: X^2 = s X - p. The standard pair has s = U+V, p = UV.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobeniusPair<F: Field> {
    pub s: Poly<F>,
    pub p: Poly<F>,
}

impl<F: Field> FrobeniusPair<F> {
    pub fn standard() -> Self {
        FrobeniusPair { s: Poly::u_plus_v(), p: Poly::uv() }
    }

    /// The pair with (U, V) replaced by (-U, -V).
    pub fn negated() -> Self {
        FrobeniusPair { s: Poly::u_plus_v().neg(), p: Poly::uv() }
    }

    pub fn mult(&self, a: &AlgebraElem<F>, b: &AlgebraElem<F>) -> AlgebraElem<F> {
        let xx = a.c1.mul(&b.c1);
        AlgebraElem {
            c0: a.c0.mul(&b.c0).sub(&xx.mul(&self.p)),
            c1: a.c0.mul(&b.c1).add(&a.c1.mul(&b.c0)).add(&xx.mul(&self.s)),
        }
    }

    pub fn comult(&self, a: &AlgebraElem<F>) -> Tensor2<F> {
        // 1 -> X(x)1 + 1(x)X - s 1(x)1,  X -> X(x)X - p 1(x)1
        [
            [a.c0.mul(&self.s).neg().sub(&a.c1.mul(&self.p)), a.c0.clone()],
            [a.c0.clone(), a.c1.clone()],
        ]
    }

    pub fn counit(&self, a: &AlgebraElem<F>) -> Poly<F> {
        a.c1.clone()
    }

    /// m(Delta(1)), the element a handle multiplies by.
    pub fn handle(&self) -> AlgebraElem<F> {
        AlgebraElem { c0: self.s.neg(), c1: Poly::from_i64(2) }
    }

    pub fn involution(&self, a: &AlgebraElem<F>) -> AlgebraElem<F> {
        AlgebraElem { c0: a.c0.add(&a.c1.mul(&self.s)), c1: a.c1.neg() }
    }

    /// X^k.
    pub fn x_pow(&self, k: u32) -> AlgebraElem<F> {
        let mut acc = AlgebraElem::one();
        for _ in 0..k {
            acc = self.mult(&acc, &AlgebraElem::x());
        }
        acc
    }

    /// Iterated comultiplication into b tensor factors, as coefficients indexed by the
    /// bitmask of X-labelled factors (bit i = factor i).
    pub fn comult_iter(&self, a: &AlgebraElem<F>, b: usize) -> BTreeMap<u64, Poly<F>> {
        assert!(b >= 1);
        let mut cur: BTreeMap<u64, Poly<F>> = BTreeMap::new();
        insert_nonzero(&mut cur, 0, a.c0.clone());
        insert_nonzero(&mut cur, 1, a.c1.clone());
        for k in 1..b {
            // split factor k-1 into factors k-1, k
            let mut next = BTreeMap::new();
            for (mask, c) in cur {
                let bit = (mask >> (k - 1)) & 1 == 1;
                let rest = mask & !(1 << (k - 1));
                let t = self.comult(&AlgebraElem::basis(bit));
                for (i, row) in t.iter().enumerate() {
                    for (j, e) in row.iter().enumerate() {
                        if e.is_zero() {
                            continue;
                        }
                        let m = rest | ((i as u64) << (k - 1)) | ((j as u64) << k);
                        add_into(&mut next, m, c.mul(e));
                    }
                }
            }
            cur = next;
        }
        cur
    }
}

pub(crate) fn insert_nonzero<F: Field>(m: &mut BTreeMap<u64, Poly<F>>, k: u64, p: Poly<F>) {
    if !p.is_zero() {
        m.insert(k, p);
    }
}

pub(crate) fn add_into<F: Field>(m: &mut BTreeMap<u64, Poly<F>>, k: u64, p: Poly<F>) {
    if p.is_zero() {
        return;
    }
    match m.get_mut(&k) {
        Some(q) => {
            *q = q.add(&p);
            if q.is_zero() {
                m.remove(&k);
            }
        }
        None => {
            m.insert(k, p);
        }
    }
}

impl<F: Field> AlgebraElem<F> {
    pub fn new(c0: Poly<F>, c1: Poly<F>) -> Self {
        AlgebraElem { c0, c1 }
    }

    pub fn zero() -> Self {
        AlgebraElem { c0: Poly::zero(), c1: Poly::zero() }
    }

    pub fn one() -> Self {
        AlgebraElem { c0: Poly::one(), c1: Poly::zero() }
    }

    pub fn x() -> Self {
        AlgebraElem { c0: Poly::zero(), c1: Poly::one() }
    }

    /// 1 for `false`, X for `true`.
    pub fn basis(x: bool) -> Self {
        if x {
            Self::x()
        } else {
            Self::one()
        }
    }

    /// X - U.
    pub fn x_minus_u() -> Self {
        AlgebraElem { c0: Poly::u().neg(), c1: Poly::one() }
    }

    /// V - X.
    pub fn v_minus_x() -> Self {
        AlgebraElem { c0: Poly::v(), c1: Poly::one().neg() }
    }

    pub fn is_zero(&self) -> bool {
        self.c0.is_zero() && self.c1.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        AlgebraElem { c0: self.c0.add(&o.c0), c1: self.c1.add(&o.c1) }
    }

    pub fn sub(&self, o: &Self) -> Self {
        AlgebraElem { c0: self.c0.sub(&o.c0), c1: self.c1.sub(&o.c1) }
    }

    pub fn scale(&self, p: &Poly<F>) -> Self {
        AlgebraElem { c0: self.c0.mul(p), c1: self.c1.mul(p) }
    }

    pub fn mul(&self, o: &Self) -> Self {
        FrobeniusPair::standard().mult(self, o)
    }

    pub fn comult(&self) -> Tensor2<F> {
        FrobeniusPair::standard().comult(self)
    }

    pub fn counit(&self) -> Poly<F> {
        self.c1.clone()
    }

    pub fn involution(&self) -> Self {
        FrobeniusPair::standard().involution(self)
    }

    /// Gradings of the homogeneous summands, with gr(1) = 1, gr(X) = -1, gr(U) = gr(V) = -2.
    pub fn gradings(&self) -> Vec<i32> {
        let mut g: Vec<i32> = self.c0.terms().iter().map(|(m, _)| 1 - 2 * m.degree() as i32).collect();
        g.extend(self.c1.terms().iter().map(|(m, _)| -1 - 2 * m.degree() as i32));
        g.sort();
        g.dedup();
        g
    }
}

impl<F: Field> fmt::Display for AlgebraElem<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})*1 + ({})*X", self.c0, self.c1)
    }
}

pub fn tensor2_of<F: Field>(a: &AlgebraElem<F>, b: &AlgebraElem<F>) -> Tensor2<F> {
    [[a.c0.mul(&b.c0), a.c0.mul(&b.c1)], [a.c1.mul(&b.c0), a.c1.mul(&b.c1)]]
}

/// Delooping: A = R{+1} (+) R{-1}. The split map pairs against the dual basis
/// {X - (U+V), 1} of {1, X}.
pub fn deloop_split<F: Field>(a: &AlgebraElem<F>) -> (Poly<F>, Poly<F>) {
    let dual_one = AlgebraElem { c0: Poly::u_plus_v().neg(), c1: Poly::one() };
    (a.mul(&dual_one).counit(), a.counit())
}

pub fn deloop_merge<F: Field>(c_plus: &Poly<F>, c_minus: &Poly<F>) -> AlgebraElem<F> {
    AlgebraElem { c0: c_plus.clone(), c1: c_minus.clone() }
}

/// Idempotent-basis coordinates: (a1 e1 + a2 e2) / (V-U)^k.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LocalizedElem<F: Field> {
    pub a1: Poly<F>,
    pub a2: Poly<F>,
    pub k: u32,
}

impl<F: Field> LocalizedElem<F> {
    pub fn e1() -> Self {
        LocalizedElem { a1: Poly::one(), a2: Poly::zero(), k: 0 }
    }

    pub fn e2() -> Self {
        LocalizedElem { a1: Poly::zero(), a2: Poly::one(), k: 0 }
    }

    /// X = U e2 + V e1, so alpha + beta X = (alpha + beta V) e1 + (alpha + beta U) e2.
    pub fn from_algebra(a: &AlgebraElem<F>) -> Self {
        LocalizedElem { a1: a.c0.add(&a.c1.mul(&Poly::v())), a2: a.c0.add(&a.c1.mul(&Poly::u())), k: 0 }
    }

    /// Returns `(numerator, j)` with value numerator / (V-U)^j, j minimal.
    pub fn to_algebra(&self) -> (AlgebraElem<F>, u32) {
        // e1 = (X-U)/(V-U), e2 = (V-X)/(V-U)
        let num = AlgebraElem {
            c0: self.a2.mul(&Poly::v()).sub(&self.a1.mul(&Poly::u())),
            c1: self.a1.sub(&self.a2),
        };
        let mut j = self.k + 1;
        let mut num = num;
        let d = Poly::v_minus_u();
        while j > 0 {
            match (num.c0.divide_exact(&d).unwrap(), num.c1.divide_exact(&d).unwrap()) {
                (Some(a), Some(b)) => {
                    num = AlgebraElem { c0: a, c1: b };
                    j -= 1;
                }
                _ => break,
            }
        }
        (num, j)
    }

    pub fn mul(&self, o: &Self) -> Self {
        LocalizedElem { a1: self.a1.mul(&o.a1), a2: self.a2.mul(&o.a2), k: self.k + o.k }
    }
}

/// gamma: A -> A*, in coordinates on the dual basis {1*, X*}: gamma(1) = X*,
/// gamma(X) = 1* + (U+V) X*. Row i is the image of basis element i.
pub fn gamma_matrix<F: Field>() -> [[Poly<F>; 2]; 2] {
    [[Poly::zero(), Poly::one()], [Poly::one(), Poly::u_plus_v()]]
}

fn gamma<F: Field>(a: &AlgebraElem<F>) -> [Poly<F>; 2] {
    let g = gamma_matrix::<F>();
    [a.c0.mul(&g[0][0]).add(&a.c1.mul(&g[1][0])), a.c0.mul(&g[0][1]).add(&a.c1.mul(&g[1][1]))]
}

/// Checks the four identities making gamma an isomorphism of Frobenius algebras A -> A*
/// (unit <-> counit*, counit <-> unit*, mult <-> comult*), plus the twisted comultiplication
/// identity for phi(X) = X + U + V. Returns a description of the first failure.
pub fn self_dual_iso<F: Field>() -> Result<(), String> {
    let b = [AlgebraElem::<F>::one(), AlgebraElem::x()];
    // gamma(1) = counit*
    let g1 = gamma(&b[0]);
    let counit_star = [b[0].counit(), b[1].counit()];
    if g1 != counit_star {
        return Err("gamma(1) != counit*".into());
    }
    // unit*(gamma(a)) = gamma(a)(1) = counit(a)
    for a in &b {
        if gamma(a)[0] != a.counit() {
            return Err(format!("unit* o gamma != counit on {a}"));
        }
    }
    // comult*(f (x) g)(a) = (f (x) g)(comult a); mult*(f)(a (x) b) = f(ab)
    for (i, a) in b.iter().enumerate() {
        // m* o gamma (a) evaluated on b_j (x) b_k  vs  (gamma (x) gamma)(comult a) on b_j (x) b_k
        let ga = gamma(a);
        let d = a.comult();
        for (j, bj) in b.iter().enumerate() {
            for (k, bk) in b.iter().enumerate() {
                let prod = bj.mul(bk);
                let lhs = ga[0].mul(&prod.c0).add(&ga[1].mul(&prod.c1));
                let mut rhs = Poly::zero();
                for (p, row) in d.iter().enumerate() {
                    for (q, c) in row.iter().enumerate() {
                        rhs = rhs.add(&c.mul(&gamma(&b[p])[j]).mul(&gamma(&b[q])[k]));
                    }
                }
                if lhs != rhs {
                    return Err(format!("m* o gamma != (gamma x gamma) o comult at ({i},{j},{k})"));
                }
            }
        }
        // gamma(a b) = comult*(gamma a (x) gamma b)
        for (j, bj) in b.iter().enumerate() {
            let lhs = gamma(&a.mul(bj));
            let (ga, gb) = (gamma(a), gamma(bj));
            for (k, bk) in b.iter().enumerate() {
                let d = bk.comult();
                let mut rhs = Poly::zero();
                for (p, row) in d.iter().enumerate() {
                    for (q, c) in row.iter().enumerate() {
                        rhs = rhs.add(&c.mul(&ga[p]).mul(&gb[q]));
                    }
                }
                if lhs[k] != rhs {
                    return Err(format!("gamma o m != comult* o (gamma x gamma) at ({i},{j},{k})"));
                }
            }
        }
    }
    // phi(X) = X + U + V intertwines the comultiplications of (U,V) and (-U,-V)
    let std = FrobeniusPair::<F>::standard();
    let neg = FrobeniusPair::<F>::negated();
    let phi = |a: &AlgebraElem<F>| AlgebraElem { c0: a.c0.add(&a.c1.mul(&Poly::u_plus_v())), c1: a.c1.clone() };
    for a in &b {
        let lhs = neg.comult(&phi(a));
        let d = std.comult(a);
        let mut rhs: Tensor2<F> = Default::default();
        for (p, row) in d.iter().enumerate() {
            for (q, c) in row.iter().enumerate() {
                let t = tensor2_of(&phi(&b[p]), &phi(&b[q]));
                for x in 0..2 {
                    for y in 0..2 {
                        rhs[x][y] = rhs[x][y].add(&c.mul(&t[x][y]));
                    }
                }
            }
        }
        if lhs != rhs {
            return Err(format!("phi does not intertwine comultiplications on {a}"));
        }
    }
    // gamma preserves gradings: the image of 1 (gr 1) is X* (gr 1), of X (gr -1) is 1* + (U+V)X*
    Ok(())
}

/// gr_t of U^m V^n b where b has TQFT grading `gr`.
pub fn gr_t_mono(gr: i32, m: &Mono, t: Rational64) -> Rational64 {
    Rational64::from_integer(gr as i64) - t * (m.u as i64) - (Rational64::from_integer(2) - t) * (m.v as i64)
}

/// Degree inequality gr_t(out) >= gr_t(in) + chi for merge, split (chi = -1) and cup, cap
/// (chi = +1), on all inputs U^m V^n b with m, n <= `max_exp`.
pub fn elementary_degree_check<F: Field>(t: Rational64, max_exp: u32) -> Result<(), String> {
    let gr = |x: bool| if x { -1 } else { 1 };
    let monos: Vec<Mono> = (0..=max_exp).flat_map(|m| (0..=max_exp).map(move |n| Mono::new(m, n))).collect();
    let check = |name: &str, gin: Rational64, outs: Vec<(i32, Poly<F>)>| -> Result<(), String> {
        for (g, c) in outs {
            for (m, _) in c.terms() {
                if gr_t_mono(g, m, t) < gin - 1 + if name == "cup" || name == "cap" { 2 } else { 0 } {
                    return Err(format!("{name}: output U^{}V^{} at gr {g} violates the bound at t={t}", m.u, m.v));
                }
            }
        }
        Ok(())
    };
    for mono in &monos {
        let c = Poly::<F>::monomial(*mono, F::one());
        for a in [false, true] {
            for b in [false, true] {
                let gin = gr_t_mono(gr(a) + gr(b), mono, t);
                let out = AlgebraElem::basis(a).mul(&AlgebraElem::basis(b)).scale(&c);
                check("merge", gin, vec![(1, out.c0), (-1, out.c1)])?;
            }
            let gin = gr_t_mono(gr(a), mono, t);
            let d = AlgebraElem::basis(a).scale(&c).comult();
            let outs = vec![(2, d[0][0].clone()), (0, d[0][1].clone()), (0, d[1][0].clone()), (-2, d[1][1].clone())];
            check("split", gin, outs)?;
            let cap = AlgebraElem::basis(a).scale(&c).counit();
            check("cap", gin, vec![(0, cap)])?;
        }
        let gin = gr_t_mono(0, mono, t);
        let cup = AlgebraElem::one().scale(&c);
        check("cup", gin, vec![(1, cup.c0), (-1, cup.c1)])?;
    }
    Ok(())
}

fn ensure<T: PartialEq + fmt::Debug>(what: &str, a: T, b: T) -> Result<(), String> {
    if a == b {
        Ok(())
    } else {
        Err(format!("{what}: {a:?} != {b:?}"))
    }
}

fn sum_tensor<F: Field>(coeffs: &Tensor2<F>, f: impl Fn(usize, usize) -> Tensor2<F>) -> Tensor2<F> {
    let mut out: Tensor2<F> = Default::default();
    for i in 0..2 {
        for j in 0..2 {
            let t = f(i, j);
            for x in 0..2 {
                for y in 0..2 {
                    out[x][y] = out[x][y].add(&coeffs[i][j].mul(&t[x][y]));
                }
            }
        }
    }
    out
}

/// Frobenius, counit and involution identities on the basis {1, X}.
pub fn check_axioms<F: Field>() -> Result<(), String> {
    let b = [AlgebraElem::<F>::one(), AlgebraElem::x()];
    for a in &b {
        for c in &b {
            let dm = a.mul(c).comult();
            let left = sum_tensor(&c.comult(), |i, j| tensor2_of(&a.mul(&b[i]), &b[j]));
            let right = sum_tensor(&a.comult(), |i, j| tensor2_of(&b[i], &b[j].mul(c)));
            ensure("(m x id)(id x D) = D m", &left, &dm)?;
            ensure("(id x m)(D x id) = D m", &right, &dm)?;
            ensure("iota multiplicative", a.mul(c).involution(), a.involution().mul(&c.involution()))?;
        }
        let d = a.comult();
        ensure("(eps x id) D = id", &AlgebraElem::new(d[1][0].clone(), d[1][1].clone()), a)?;
        ensure("(id x eps) D = id", &AlgebraElem::new(d[0][1].clone(), d[1][1].clone()), a)?;
        let lhs = a.involution().comult();
        let rhs = sum_tensor(&d, |i, j| tensor2_of(&b[i].involution(), &b[j].involution()));
        for i in 0..2 {
            for j in 0..2 {
                ensure("D iota = -(iota x iota) D", lhs[i][j].clone(), rhs[i][j].neg())?;
            }
        }
        ensure("eps iota = -eps", a.involution().counit(), a.counit().neg())?;
        ensure("iota^2 = id", &a.involution().involution(), a)?;
    }
    Ok(())
}

/// Splitting a circle and merging it back is the identity, in both orders.
pub fn check_delooping<F: Field>() -> Result<(), String> {
    for a in [AlgebraElem::<F>::one(), AlgebraElem::x()] {
        let (cp, cm) = deloop_split(&a);
        ensure("merge o split", &deloop_merge(&cp, &cm), &a)?;
    }
    let (one, zero) = (Poly::<F>::one(), Poly::<F>::zero());
    ensure("split o merge (+)", deloop_split(&deloop_merge(&one, &zero)), (one.clone(), zero.clone()))?;
    ensure("split o merge (-)", deloop_split(&deloop_merge(&zero, &one)), (zero, one))?;
    Ok(())
}
