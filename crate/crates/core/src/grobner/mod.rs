//! Gröbner bases: Buchberger's algorithm, verification with certificates,
//! initial ideals, standard monomials and the elimination-based kernel of a
//! monomial map.

mod buchberger;
mod monomial_ideal;
mod toric;

use std::sync::Arc;

use crate::poly::{normal_form, same_ambient, PolyError, Polynomial, TermOrder, VarSet};

pub use buchberger::{buchberger, buchberger_with, s_polynomial, BuchbergerOptions};
pub use monomial_ideal::MonomialIdeal;
pub use toric::{toric_kernel, toric_kernel_with};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GrobnerError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("pair queue grew to {pairs} entries, over the budget of {limit}")]
    BudgetExceeded { pairs: usize, limit: usize },
    #[error("basis has not been verified as a Gröbner basis")]
    NotVerified,
    #[error("not a Gröbner basis: S-pair ({0}, {1}) has a nonzero remainder")]
    NotGroebner(usize, usize),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

/// Generators of an ideal together with the term order they are read in.
/// `is_groebner` is only ever set by verification or by an algorithm whose
/// output is a Gröbner basis by construction.
#[derive(Debug, Clone, PartialEq)]
pub struct IdealBasis {
    gens: Vec<Polynomial>,
    order: TermOrder,
    is_groebner: bool,
}

/// A failing S-pair: the indices of the two generators and the nonzero
/// remainder of their S-polynomial.
#[derive(Debug, Clone, PartialEq)]
pub struct PairFailure {
    pub i: usize,
    pub j: usize,
    pub remainder: Polynomial,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GroebnerCertificate {
    pub pairs_checked: usize,
    pub failures: Vec<PairFailure>,
}

impl GroebnerCertificate {
    pub fn is_groebner(&self) -> bool {
        self.failures.is_empty()
    }
}

impl IdealBasis {
    /// Zero generators are dropped; all generators must live over the
    /// order's variable set.
    pub fn new(gens: Vec<Polynomial>, order: TermOrder) -> Result<Self, GrobnerError> {
        for g in &gens {
            if !same_ambient(g.ambient(), order.ambient()) {
                return Err(PolyError::AmbientMismatch.into());
            }
        }
        Ok(IdealBasis {
            gens: gens.into_iter().filter(|g| !g.is_zero()).collect(),
            order,
            is_groebner: false,
        })
    }

    pub(crate) fn new_groebner(gens: Vec<Polynomial>, order: TermOrder) -> Self {
        IdealBasis {
            gens,
            order,
            is_groebner: true,
        }
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn order(&self) -> &TermOrder {
        &self.order
    }

    pub fn ambient(&self) -> &Arc<VarSet> {
        self.order.ambient()
    }

    pub fn is_groebner(&self) -> bool {
        self.is_groebner
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    /// Runs [`is_groebner_basis`] and marks the basis on success.
    pub fn verify(mut self) -> Result<Self, GrobnerError> {
        let cert = is_groebner_basis(&self)?;
        if let Some(f) = cert.failures.first() {
            return Err(GrobnerError::NotGroebner(f.i, f.j));
        }
        self.is_groebner = true;
        Ok(self)
    }

    /// Same generators read in another order; the Gröbner flag is cleared.
    pub fn with_order(&self, order: TermOrder) -> Result<Self, GrobnerError> {
        Self::new(self.gens.clone(), order)
    }

    pub fn reduce(&self, f: &Polynomial) -> Result<Polynomial, GrobnerError> {
        Ok(normal_form(f, &self.gens, &self.order)?)
    }

    /// Ideal membership; needs a verified basis.
    pub fn contains(&self, f: &Polynomial) -> Result<bool, GrobnerError> {
        if !self.is_groebner {
            return Err(GrobnerError::NotVerified);
        }
        Ok(self.reduce(f)?.is_zero())
    }
}

/// Checks every S-pair (no criteria are applied) and records each pair whose
/// S-polynomial does not reduce to zero.
pub fn is_groebner_basis(basis: &IdealBasis) -> Result<GroebnerCertificate, GrobnerError> {
    let gens = &basis.gens;
    let mut failures = Vec::new();
    let mut pairs_checked = 0;
    for i in 0..gens.len() {
        for j in (i + 1)..gens.len() {
            pairs_checked += 1;
            let s = s_polynomial(&gens[i], &gens[j], &basis.order)?;
            let r = normal_form(&s, gens, &basis.order)?;
            if !r.is_zero() {
                failures.push(PairFailure { i, j, remainder: r });
            }
        }
    }
    Ok(GroebnerCertificate {
        pairs_checked,
        failures,
    })
}

/// Minimal generators of the leading-term ideal of a verified basis.
pub fn initial_ideal(basis: &IdealBasis) -> Result<MonomialIdeal, GrobnerError> {
    if !basis.is_groebner {
        return Err(GrobnerError::NotVerified);
    }
    leading_monomial_ideal(basis)
}

/// Ideal generated by the leading monomials of the given generators, with no
/// Gröbner precondition.
pub fn leading_monomial_ideal(basis: &IdealBasis) -> Result<MonomialIdeal, GrobnerError> {
    let leads = basis
        .gens
        .iter()
        .map(|g| g.leading_monomial(&basis.order).cloned())
        .collect::<Result<Vec<_>, _>>()?;
    Ok(MonomialIdeal::new(basis.ambient().clone(), leads))
}

/// Ideal equality by mutual reduction against Gröbner bases of each side.
pub fn ideal_equal(a: &IdealBasis, b: &IdealBasis) -> Result<bool, GrobnerError> {
    ideal_equal_with(a, b, BuchbergerOptions::default())
}

pub fn ideal_equal_with(
    a: &IdealBasis,
    b: &IdealBasis,
    opts: BuchbergerOptions,
) -> Result<bool, GrobnerError> {
    if !same_ambient(a.ambient(), b.ambient()) {
        return Err(PolyError::AmbientMismatch.into());
    }
    let gb = |x: &IdealBasis| -> Result<IdealBasis, GrobnerError> {
        if x.is_groebner {
            Ok(x.clone())
        } else {
            buchberger_with(x, opts)
        }
    };
    let gb_b = gb(b)?;
    for f in &a.gens {
        if !gb_b.contains(f)? {
            return Ok(false);
        }
    }
    let gb_a = gb(a)?;
    for f in &b.gens {
        if !gb_a.contains(f)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::TieBreak;

    fn ring() -> Arc<VarSet> {
        VarSet::standard(["x_0", "x_1", "x_2"]).unwrap()
    }

    fn p(s: &str) -> Polynomial {
        Polynomial::parse(s, ring()).unwrap()
    }

    #[test]
    fn ideal_equality_small_cases() {
        let ord = TermOrder::grevlex(ring());
        let a = IdealBasis::new(vec![p("x_0")], ord.clone()).unwrap();
        let b = IdealBasis::new(vec![p("x_0"), p("x_0^2")], ord.clone()).unwrap();
        let c = IdealBasis::new(vec![p("x_1")], ord).unwrap();
        assert!(ideal_equal(&a, &b).unwrap());
        assert!(!ideal_equal(&a, &c).unwrap());
    }

    #[test]
    fn certificate_reports_failing_pair() {
        // lex with x_0 > x_1 > x_2 makes x_0*x_1 the lead of the first generator
        let ord = TermOrder::new(ring(), vec![], TieBreak::Lex, vec![0, 1, 2]).unwrap();
        let basis = IdealBasis::new(vec![p("x_0*x_1 - x_2^2"), p("x_0")], ord).unwrap();
        let cert = is_groebner_basis(&basis).unwrap();
        assert!(!cert.is_groebner());
        assert_eq!(cert.failures.len(), 1);
        let f = &cert.failures[0];
        assert_eq!((f.i, f.j), (0, 1));
        // S = x_0*x_1 - x_2^2 - x_1*x_0 = -x_2^2, irreducible by {x_0*x_1, x_0}
        assert_eq!(f.remainder, p("-x_2^2"));
        assert_eq!(basis.verify().unwrap_err(), GrobnerError::NotGroebner(0, 1));
    }

    #[test]
    fn initial_ideal_needs_verification() {
        let ord = TermOrder::grevlex(ring());
        let basis = IdealBasis::new(vec![p("x_0*x_2 - x_1^2")], ord).unwrap();
        assert_eq!(
            initial_ideal(&basis).unwrap_err(),
            GrobnerError::NotVerified
        );
        let verified = basis.verify().unwrap();
        let j = initial_ideal(&verified).unwrap();
        assert_eq!(j.gens(), &[crate::poly::Monomial::new(vec![0, 2, 0])]);
    }

    #[test]
    fn zero_generators_are_dropped() {
        let ord = TermOrder::grevlex(ring());
        let basis = IdealBasis::new(vec![p("0"), p("x_1")], ord).unwrap();
        assert_eq!(basis.len(), 1);
    }
}
