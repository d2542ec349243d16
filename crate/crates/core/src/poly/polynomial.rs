use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use super::{Coeff, Monomial, PolyError, TermOrder, VarSet};

/// Sparse polynomial with exact rational coefficients over a fixed [`VarSet`].
///
/// Terms are kept in a map keyed by exponent vector; no zero coefficient is
/// ever stored. The map order is not a term order: callers pass the
/// [`TermOrder`] they care about to the operations that need one.
#[derive(Debug, Clone)]
pub struct Polynomial {
    ambient: Arc<VarSet>,
    terms: BTreeMap<Monomial, Coeff>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        same_ambient(&self.ambient, &other.ambient) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

pub(crate) fn same_ambient(a: &Arc<VarSet>, b: &Arc<VarSet>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl Polynomial {
    pub fn zero(ambient: Arc<VarSet>) -> Self {
        Polynomial {
            ambient,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ambient: Arc<VarSet>) -> Self {
        Self::constant(ambient, Coeff::one())
    }

    pub fn constant(ambient: Arc<VarSet>, c: Coeff) -> Self {
        let n = ambient.len();
        Self::monomial(ambient, Monomial::one(n), c)
    }

    pub fn monomial(ambient: Arc<VarSet>, m: Monomial, c: Coeff) -> Self {
        assert_eq!(
            m.len(),
            ambient.len(),
            "monomial length differs from ambient"
        );
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { ambient, terms }
    }

    pub fn var(ambient: Arc<VarSet>, index: usize) -> Self {
        let n = ambient.len();
        Self::monomial(ambient, Monomial::var(n, index), Coeff::one())
    }

    /// Sums the given terms; repeated monomials are combined.
    pub fn from_terms(
        ambient: Arc<VarSet>,
        terms: impl IntoIterator<Item = (Monomial, Coeff)>,
    ) -> Self {
        let mut p = Self::zero(ambient);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn ambient(&self) -> &Arc<VarSet> {
        &self.ambient
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in storage order (lexicographic on exponent vectors, ascending).
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Coeff)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Coeff {
        self.terms.get(m).cloned().unwrap_or_else(Coeff::zero)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Coeff) {
        debug_assert_eq!(m.len(), self.ambient.len());
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn check_ambient(&self, other: &Polynomial) -> Result<(), PolyError> {
        if same_ambient(&self.ambient, &other.ambient) {
            Ok(())
        } else {
            Err(PolyError::AmbientMismatch)
        }
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_ambient(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_ambient(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_ambient(other)?;
        let mut out = Polynomial::zero(self.ambient.clone());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Coeff) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.ambient.clone());
        }
        Polynomial {
            ambient: self.ambient.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    /// `c * m * self` for a monomial `m`.
    pub fn mul_term(&self, m: &Monomial, c: &Coeff) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.ambient.clone());
        }
        Polynomial {
            ambient: self.ambient.clone(),
            terms: self.terms.iter().map(|(t, a)| (t.mul(m), a * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut acc = Polynomial::one(self.ambient.clone());
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn leading_term(&self, ord: &TermOrder) -> Result<(&Monomial, &Coeff), PolyError> {
        if !same_ambient(&self.ambient, ord.ambient()) {
            return Err(PolyError::AmbientMismatch);
        }
        self.terms
            .iter()
            .max_by(|a, b| ord.cmp(a.0, b.0))
            .ok_or(PolyError::ZeroPolynomial)
    }

    pub fn leading_monomial(&self, ord: &TermOrder) -> Result<&Monomial, PolyError> {
        self.leading_term(ord).map(|(m, _)| m)
    }

    /// Terms sorted from largest to smallest under `ord`.
    pub fn sorted_terms(&self, ord: &TermOrder) -> Vec<(&Monomial, &Coeff)> {
        let mut t: Vec<_> = self.terms.iter().collect();
        t.sort_by(|a, b| ord.cmp(b.0, a.0));
        t
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self, ord: &TermOrder) -> Result<Polynomial, PolyError> {
        let (_, lc) = self.leading_term(ord)?;
        Ok(self.scale(&lc.recip()))
    }

    /// Weighted degree shared by every term, or `None` for the zero
    /// polynomial and for inhomogeneous polynomials.
    pub fn homogeneous_degree(&self) -> Option<u64> {
        let w = self.ambient.weights();
        let mut degs = self.terms.keys().map(|m| m.weighted_degree(w));
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    pub fn max_weighted_degree(&self) -> Option<u64> {
        let w = self.ambient.weights();
        self.terms.keys().map(|m| m.weighted_degree(w)).max()
    }

    /// Substitutes `images[i]` for the i-th variable. All images must share
    /// one ambient, which becomes the ambient of the result.
    pub fn substitute(&self, images: &[Polynomial]) -> Result<Polynomial, PolyError> {
        if images.len() != self.ambient.len() {
            return Err(PolyError::AmbientMismatch);
        }
        let target = match images.first() {
            Some(p) => p.ambient.clone(),
            None => return Ok(self.clone()),
        };
        for img in images {
            if !same_ambient(&img.ambient, &target) {
                return Err(PolyError::AmbientMismatch);
            }
        }
        let mut out = Polynomial::zero(target.clone());
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(target.clone(), c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    t = &t * &images[i].pow(e);
                }
            }
            out = &out + &t;
        }
        Ok(out)
    }

    /// Moves the polynomial into `target`, sending variable `i` to
    /// `var_map[i]`.
    pub fn embed(&self, target: Arc<VarSet>, var_map: &[usize]) -> Result<Polynomial, PolyError> {
        if var_map.len() != self.ambient.len() || var_map.iter().any(|&v| v >= target.len()) {
            return Err(PolyError::AmbientMismatch);
        }
        let n = target.len();
        let mut out = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut e = vec![0; n];
            for (i, &x) in m.exponents().iter().enumerate() {
                e[var_map[i]] += x;
            }
            out.add_term(Monomial::new(e), c.clone());
        }
        Ok(out)
    }

    /// Inverse of [`embed`](Self::embed): keeps only polynomials whose
    /// support lies in the image of `var_map`.
    pub fn restrict(&self, target: Arc<VarSet>, var_map: &[usize]) -> Option<Polynomial> {
        let k = target.len();
        if var_map.len() != k {
            return None;
        }
        let mut out = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let e = m.exponents();
            let used: u64 = var_map.iter().map(|&v| u64::from(e[v])).sum();
            if used != m.total_degree() {
                return None;
            }
            out.add_term(
                Monomial::new(var_map.iter().map(|&v| e[v]).collect()),
                c.clone(),
            );
        }
        Some(out)
    }

    /// Rendering with terms in descending `ord` order.
    pub fn display_with<'a>(&'a self, ord: &'a TermOrder) -> impl fmt::Display + 'a {
        OrderedDisplay { poly: self, ord }
    }

    fn write_terms<'a>(
        &'a self,
        f: &mut fmt::Formatter<'_>,
        terms: impl Iterator<Item = (&'a Monomial, &'a Coeff)>,
    ) -> fmt::Result {
        let mut first = true;
        for (m, c) in terms {
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { "-" } else { "+" })?;
            }
            first = false;
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", m.display(&self.ambient))?;
            } else {
                write!(f, "{abs}*{}", m.display(&self.ambient))?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

struct OrderedDisplay<'a> {
    poly: &'a Polynomial,
    ord: &'a TermOrder,
}

impl fmt::Display for OrderedDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.poly.sorted_terms(self.ord);
        self.poly.write_terms(f, terms.into_iter())
    }
}

/// Macaulay2-style rendering, largest exponent vector first
/// (e.g. `x_0*x_2-x_1^2`).
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_terms(f, self.terms.iter().rev())
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.try_add(rhs)
            .expect("ambient mismatch in polynomial addition")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.try_sub(rhs)
            .expect("ambient mismatch in polynomial subtraction")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.try_mul(rhs)
            .expect("ambient mismatch in polynomial multiplication")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Coeff::one())
    }
}

/// Monomial keyed by a term order, so that ordered maps iterate in term
/// order.
pub(crate) struct OrderedMonomial<'a> {
    pub mono: Monomial,
    pub ord: &'a TermOrder,
}

impl PartialEq for OrderedMonomial<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.mono == other.mono
    }
}

impl Eq for OrderedMonomial<'_> {}

impl PartialOrd for OrderedMonomial<'_> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for OrderedMonomial<'_> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.ord.cmp(&self.mono, &other.mono)
    }
}

/// Multivariate division: the remainder of `f` on division by `divisors`
/// under `ord`.
///
/// The largest remaining term is repeatedly cancelled against the first
/// divisor (in list order) whose leading monomial divides it; terms that no
/// leading monomial divides move to the remainder. Zero divisors are
/// ignored.
pub fn normal_form(
    f: &Polynomial,
    divisors: &[Polynomial],
    ord: &TermOrder,
) -> Result<Polynomial, PolyError> {
    if !same_ambient(f.ambient(), ord.ambient()) {
        return Err(PolyError::AmbientMismatch);
    }
    let mut leads = Vec::with_capacity(divisors.len());
    for g in divisors {
        f.check_ambient(g)?;
        if g.is_zero() {
            continue;
        }
        let (m, c) = g.leading_term(ord)?;
        leads.push((m.clone(), c.recip(), g));
    }
    let mut work: BTreeMap<OrderedMonomial<'_>, Coeff> = f
        .terms
        .iter()
        .map(|(m, c)| {
            (
                OrderedMonomial {
                    mono: m.clone(),
                    ord,
                },
                c.clone(),
            )
        })
        .collect();
    let mut rem = Polynomial::zero(f.ambient.clone());
    while let Some((top, c)) = work.pop_last() {
        let hit = leads
            .iter()
            .find_map(|(lm, inv, g)| top.mono.div(lm).map(|q| (q, inv, g)));
        match hit {
            None => {
                rem.terms.insert(top.mono, c);
            }
            Some((q, inv, g)) => {
                let factor = &c * inv;
                for (m, gc) in g.terms.iter() {
                    let mono = m.mul(&q);
                    if mono == top.mono {
                        continue;
                    }
                    let key = OrderedMonomial { mono, ord };
                    let delta = -(&factor * gc);
                    match work.entry(key) {
                        std::collections::btree_map::Entry::Vacant(v) => {
                            v.insert(delta);
                        }
                        std::collections::btree_map::Entry::Occupied(mut o) => {
                            *o.get_mut() += delta;
                            if o.get().is_zero() {
                                o.remove();
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(rem)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::TieBreak;

    fn ring() -> Arc<VarSet> {
        VarSet::new(["x_0", "x_1", "x_2", "y_0", "y_1"], [1, 1, 1, 2, 2]).unwrap()
    }

    fn p(s: &str) -> Polynomial {
        Polynomial::parse(s, ring()).unwrap()
    }

    #[test]
    fn arithmetic_and_rendering() {
        let f = p("x_0*x_2 - x_1^2");
        assert_eq!(f.to_string(), "x_0*x_2-x_1^2");
        let g = &f * &f;
        assert_eq!(g.to_string(), "x_0^2*x_2^2-2*x_0*x_1^2*x_2+x_1^4");
        assert!((&f - &f).is_zero());
        assert_eq!(Polynomial::zero(ring()).to_string(), "0");
        assert_eq!(p("-3/2").to_string(), "-3/2");
        assert_eq!(p("1/2*y_0 - x_0").to_string(), "-x_0+1/2*y_0");
    }

    #[test]
    fn homogeneity_uses_weights() {
        assert_eq!(p("x_0*y_0 - x_1*x_2^2").homogeneous_degree(), Some(3));
        assert_eq!(p("x_0*y_0 - x_1*x_2").homogeneous_degree(), None);
        assert!(Polynomial::zero(ring()).is_homogeneous());
    }

    #[test]
    fn leading_term_of_zero_is_an_error() {
        let ord = TermOrder::grevlex(ring());
        assert_eq!(
            Polynomial::zero(ring()).leading_term(&ord).unwrap_err(),
            PolyError::ZeroPolynomial
        );
        let c = p("7");
        let (m, k) = c.leading_term(&ord).unwrap();
        assert!(m.is_one());
        assert_eq!(*k, Coeff::from_integer(7.into()));
    }

    #[test]
    fn ambient_mismatch_is_reported() {
        let other = VarSet::standard(["a", "b"]).unwrap();
        let a = Polynomial::var(other, 0);
        assert_eq!(p("x_0").try_add(&a), Err(PolyError::AmbientMismatch));
        let ord = TermOrder::grevlex(ring());
        assert_eq!(normal_form(&a, &[], &ord), Err(PolyError::AmbientMismatch));
    }

    #[test]
    fn normal_form_small_cases() {
        let ord = TermOrder::grevlex(ring());
        let g = p("x_0*x_2 - x_1^2");
        assert!(normal_form(&g, std::slice::from_ref(&g), &ord)
            .unwrap()
            .is_zero());
        let f = p("x_0^2 + y_1");
        assert_eq!(normal_form(&f, &[], &ord).unwrap(), f);
        // grevlex makes x_1^2 the lead, so x_1^2 reduces to x_0*x_2
        assert_eq!(normal_form(&p("x_1^2"), &[g], &ord).unwrap(), p("x_0*x_2"));
    }

    #[test]
    fn substitute_and_embed() {
        let st = VarSet::standard(["s", "t"]).unwrap();
        let s = Polynomial::var(st.clone(), 0);
        let t = Polynomial::var(st.clone(), 1);
        let images = vec![
            s.pow(3),
            &s.pow(2) * &t,
            &s * &t.pow(2),
            &s * &t.pow(5),
            t.pow(6),
        ];
        assert!(p("x_0*x_2 - x_1^2").substitute(&images).unwrap().is_zero());
        assert!(!p("x_0*x_1 - x_2^2").substitute(&images).unwrap().is_zero());

        let big = VarSet::standard(["a", "x_0", "x_1", "x_2", "y_0", "y_1"]).unwrap();
        let map = [1, 2, 3, 4, 5];
        let f = p("x_0*y_1 - 2*x_1");
        let e = f.embed(big.clone(), &map).unwrap();
        assert_eq!(e.to_string(), "x_0*y_1-2*x_1");
        assert_eq!(e.restrict(ring(), &map).unwrap(), f);
        let a = Polynomial::var(big, 0);
        assert!(a.restrict(ring(), &map).is_none());
    }

    #[test]
    fn display_with_order() {
        let vars = ring();
        let ord = TermOrder::new(
            vars.clone(),
            vec![vec![1, 1, 1, 1, 1]],
            TieBreak::RevLex,
            vec![0, 1, 2, 3, 4],
        )
        .unwrap();
        assert_eq!(
            p("x_0*x_2 - x_1^2").display_with(&ord).to_string(),
            "-x_1^2+x_0*x_2"
        );
    }
}
