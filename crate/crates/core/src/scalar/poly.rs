//! Multilinear polynomials over the rationals in square-root atoms.
//!
//! A [`Poly`] is a finite sum `Σ c_i · ρ_{i,1} ⋯ ρ_{i,k}` where each `ρ` is a
//! [`Radical`] (the positive square root of another `Poly`) and no radical
//! appears twice in one monomial. Radicals with a rational radicand are kept
//! as square roots of squarefree integers, and at most one of them appears
//! per monomial. The form is not canonical when radicals are algebraically
//! dependent; every decision about values goes through [`Poly::signum`],
//! which is exact regardless.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::integer::{rational_sqrt_exact, rational_sqrt_parts};
use super::interval::{Interval, Precision};

/// `√radicand`, with `radicand > 0` and not a perfect rational square.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub(crate) struct Radical {
    radicand: Poly,
}

impl Radical {
    pub(crate) fn depth(&self) -> usize {
        1 + self.radicand.depth()
    }

    /// Squarefree integer radicand, if the radicand is rational.
    fn surd(&self) -> Option<BigInt> {
        self.radicand.as_rational().map(|q| q.to_integer())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub(crate) struct Monomial(BTreeSet<Radical>);

impl Monomial {
    fn is_unit(&self) -> bool {
        self.0.is_empty()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub(crate) struct Poly(BTreeMap<Monomial, BigRational>);

impl Poly {
    pub(crate) fn zero() -> Self {
        Poly(BTreeMap::new())
    }

    pub(crate) fn constant(q: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !q.is_zero() {
            terms.insert(Monomial::default(), q);
        }
        Poly(terms)
    }

    pub(crate) fn one() -> Self {
        Self::constant(BigRational::one())
    }

    fn from_term(coeff: BigRational, mono: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(mono, coeff);
        }
        Poly(terms)
    }

    fn from_radical(rad: Radical) -> Self {
        Self::from_term(BigRational::one(), Monomial([rad].into_iter().collect()))
    }

    pub(crate) fn as_rational(&self) -> Option<BigRational> {
        match self.0.len() {
            0 => Some(BigRational::zero()),
            1 => {
                let (m, c) = self.0.iter().next()?;
                m.is_unit().then(|| c.clone())
            }
            _ => None,
        }
    }

    /// Maximum square-root nesting depth; zero for rationals.
    pub(crate) fn depth(&self) -> usize {
        self.0
            .keys()
            .flat_map(|m| m.0.iter())
            .map(Radical::depth)
            .max()
            .unwrap_or(0)
    }

    fn add_term(&mut self, mono: Monomial, coeff: BigRational) {
        if coeff.is_zero() {
            return;
        }
        match self.0.get_mut(&mono) {
            Some(c) => {
                *c += coeff;
                if c.is_zero() {
                    self.0.remove(&mono);
                }
            }
            None => {
                self.0.insert(mono, coeff);
            }
        }
    }

    pub(crate) fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.0 {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub(crate) fn neg(&self) -> Poly {
        Poly(self.0.iter().map(|(m, c)| (m.clone(), -c)).collect())
    }

    pub(crate) fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub(crate) fn scale(&self, q: &BigRational) -> Poly {
        if q.is_zero() {
            return Poly::zero();
        }
        Poly(self.0.iter().map(|(m, c)| (m.clone(), c * q)).collect())
    }

    pub(crate) fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (ma, ca) in &self.0 {
            for (mb, cb) in &other.0 {
                let coeff = ca * cb;
                for (m, c) in mul_monomials(ma, mb).0 {
                    out.add_term(m, c * &coeff);
                }
            }
        }
        out
    }

    /// Writes `self = a + b·ρ` with `ρ` absent from both `a` and `b`, and
    /// returns `(a, b, ρ²)`.
    ///
    /// `a² − b²ρ²` is then free of `ρ`: a nested `ρ` is never produced by
    /// products of other radicals, and a surd pivot `√d` divides every surd
    /// radicand or is coprime to it, so no product of the rest yields `√d`.
    fn split(&self, pivot: &Pivot) -> (Poly, Poly, Poly) {
        let mut a = Poly::zero();
        let mut b = Poly::zero();
        for (m, c) in &self.0 {
            let hit = m.0.iter().find(|r| match pivot {
                Pivot::Nested(rad) => *r == rad,
                Pivot::Surd(d) => r.surd().is_some_and(|s| (&s % d).is_zero()),
            });
            match hit {
                Some(r) => {
                    let mut rest = m.clone();
                    rest.0.remove(r);
                    if let Pivot::Surd(d) = pivot {
                        let cofactor = r.surd().expect("surd") / d;
                        if !cofactor.is_one() {
                            rest.0.insert(surd_radical(cofactor));
                        }
                    }
                    b.add_term(rest, c.clone());
                }
                None => a.add_term(m.clone(), c.clone()),
            }
        }
        (a, b, pivot.square())
    }

    /// The radical to eliminate next: a deepest nested radical if there is
    /// one, else `√d` with `d` dividing or coprime to every surd radicand.
    fn pivot(&self) -> Option<Pivot> {
        let deepest = self.outermost_radical()?;
        if deepest.depth() > 1 {
            return Some(Pivot::Nested(deepest));
        }
        let surds: Vec<BigInt> = self
            .0
            .keys()
            .flat_map(|m| m.0.iter())
            .filter_map(Radical::surd)
            .collect();
        let mut d = surds.first()?.clone();
        loop {
            let before = d.clone();
            for s in &surds {
                let g = d.gcd(s);
                if !g.is_one() {
                    d = g;
                }
            }
            if d == before {
                return Some(Pivot::Surd(d));
            }
        }
    }

    /// A radical of maximal depth; no other radical of `self` contains it.
    fn outermost_radical(&self) -> Option<Radical> {
        self.0
            .keys()
            .flat_map(|m| m.0.iter())
            .max_by(|x, y| x.depth().cmp(&y.depth()).then_with(|| x.cmp(y)))
            .cloned()
    }

    pub(crate) fn enclose(&self, prec: Precision) -> Interval {
        let mut cache = BTreeMap::new();
        self.enclose_cached(prec, &mut cache)
    }

    fn enclose_cached(&self, prec: Precision, cache: &mut BTreeMap<Radical, Interval>) -> Interval {
        let mut total = Interval::zero(prec);
        for (m, c) in &self.0 {
            let mut term = Interval::point(c, prec);
            for rad in &m.0 {
                let iv = match cache.get(rad) {
                    Some(iv) => iv.clone(),
                    None => {
                        let iv = rad.radicand.enclose_cached(prec, cache).sqrt();
                        cache.insert(rad.clone(), iv.clone());
                        iv
                    }
                };
                term = term.mul(&iv);
            }
            total = total.add(&term);
        }
        total
    }

    /// Exact sign of the value.
    ///
    /// Interval enclosures settle almost every call. When they cannot (the
    /// value is zero or extremely close to it) the outermost radical `ρ = √c`
    /// is split off as `a + b·ρ` and the sign follows from the signs of `a`,
    /// `b` and `a² − b²c`, each of which has fewer radicals.
    pub(crate) fn signum(&self) -> Ordering {
        if let Some(q) = self.as_rational() {
            return q.cmp(&BigRational::zero());
        }
        for bits in [64, 128, 256] {
            let iv = self.enclose(Precision::bits(bits));
            if iv.is_positive() {
                return Ordering::Greater;
            }
            if iv.is_negative() {
                return Ordering::Less;
            }
        }
        self.algebraic_signum()
    }

    fn algebraic_signum(&self) -> Ordering {
        let Some(pivot) = self.pivot() else {
            return self.as_rational().unwrap_or_default().cmp(&BigRational::zero());
        };
        let (a, b, c) = self.split(&pivot);
        let sb = b.signum();
        if sb == Ordering::Equal {
            return a.signum();
        }
        let sa = a.signum();
        if sa == Ordering::Equal || sa == sb {
            return sb;
        }
        let norm = a.mul(&a).sub(&b.mul(&b).mul(&c));
        match sa {
            Ordering::Greater => norm.signum(),
            _ => norm.signum().reverse(),
        }
    }

    /// Exact inverse. `None` when the value is zero.
    pub(crate) fn recip(&self) -> Option<Poly> {
        if let Some(q) = self.as_rational() {
            return (!q.is_zero()).then(|| Poly::constant(q.recip()));
        }
        if self.signum() == Ordering::Equal {
            return None;
        }
        let pivot = self.pivot()?;
        let (a, b, c) = self.split(&pivot);
        // (a + bρ)(a − bρ) = a² − b²c
        let norm = a.mul(&a).sub(&b.mul(&b).mul(&c));
        if norm.signum() == Ordering::Equal {
            // ρ lies in the field of the remaining radicals and bρ = a.
            return a.scale(&BigRational::from_integer(2.into())).recip();
        }
        let conj = a.sub(&b.mul(&pivot.root()));
        Some(conj.mul(&norm.recip()?))
    }

    /// Exact square root of a value known to be nonnegative.
    ///
    /// Rationals reduce to `s·√t` with `t` squarefree. `a + b√t` with
    /// `a² − b²t` a rational square is denested. Anything else becomes a new
    /// radical.
    pub(crate) fn sqrt_nonneg(&self) -> Poly {
        if let Some(q) = self.as_rational() {
            let (outside, squarefree) = rational_sqrt_parts(&q);
            return match squarefree {
                None => Poly::constant(outside),
                Some(t) => Poly::from_term(outside, Monomial([surd_radical(t)].into_iter().collect())),
            };
        }
        if let Some(denested) = self.denest() {
            return denested;
        }
        Poly::from_radical(Radical { radicand: self.clone() })
    }

    fn denest(&self) -> Option<Poly> {
        if self.depth() != 1 || self.0.len() > 2 {
            return None;
        }
        let mut a = BigRational::zero();
        let mut b = BigRational::zero();
        let mut t = None;
        for (m, c) in &self.0 {
            match m.0.len() {
                0 => a = c.clone(),
                1 => {
                    let rad = m.0.iter().next()?;
                    t = Some(rad.radicand.as_rational()?);
                    b = c.clone();
                }
                _ => return None,
            }
        }
        let t = t?;
        let disc = &a * &a - &b * &b * &t;
        if disc.is_negative() {
            return None;
        }
        let e = rational_sqrt_exact(&disc)?;
        let two = BigRational::from_integer(2.into());
        let u = Poly::constant((&a + &e) / &two).sqrt_nonneg();
        let v = Poly::constant((&a - &e) / &two).sqrt_nonneg();
        Some(if b.is_negative() { u.sub(&v) } else { u.add(&v) })
    }
}

enum Pivot {
    Nested(Radical),
    Surd(BigInt),
}

impl Pivot {
    fn square(&self) -> Poly {
        match self {
            Pivot::Nested(rad) => rad.radicand.clone(),
            Pivot::Surd(d) => Poly::constant(BigRational::from_integer(d.clone())),
        }
    }

    fn root(&self) -> Poly {
        match self {
            Pivot::Nested(rad) => Poly::from_radical(rad.clone()),
            Pivot::Surd(d) => Poly::from_radical(surd_radical(d.clone())),
        }
    }
}

fn surd_radical(t: BigInt) -> Radical {
    Radical {
        radicand: Poly::constant(BigRational::from_integer(t)),
    }
}

fn mul_monomials(a: &Monomial, b: &Monomial) -> Poly {
    let mut set = a.0.clone();
    let mut extra = Poly::one();
    for rad in &b.0 {
        if set.remove(rad) {
            extra = extra.mul(&rad.radicand);
            continue;
        }
        if let Some(t) = rad.surd() {
            let other = set.iter().find_map(|r| r.surd().map(|s| (r.clone(), s)));
            if let Some((existing, s)) = other {
                set.remove(&existing);
                // √s·√t = g·√(st/g²)
                let g = s.gcd(&t);
                let rest = (&s / &g) * (&t / &g);
                extra = extra.scale(&BigRational::from_integer(g));
                if !rest.is_one() {
                    set.insert(surd_radical(rest));
                }
                continue;
            }
        }
        set.insert(rad.clone());
    }
    let base = Poly::from_term(BigRational::one(), Monomial(set));
    match extra.as_rational() {
        Some(q) => base.scale(&q),
        None => extra.mul(&base),
    }
}

fn write_rational(f: &mut fmt::Formatter<'_>, q: &BigRational) -> fmt::Result {
    if q.is_integer() {
        write!(f, "{}", q.numer())
    } else {
        write!(f, "{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for Radical {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "sqrt({})", self.radicand)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.0.iter().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mag = c.abs();
            if m.is_unit() {
                write_rational(f, &mag)?;
                continue;
            }
            if !mag.is_one() {
                write_rational(f, &mag)?;
                f.write_str("*")?;
            }
            for (j, rad) in m.0.iter().enumerate() {
                if j > 0 {
                    f.write_str("*")?;
                }
                write!(f, "{rad}")?;
            }
        }
        Ok(())
    }
}
