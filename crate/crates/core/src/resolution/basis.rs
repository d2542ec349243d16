use std::collections::HashMap;
use std::sync::RwLock;

use num_traits::One;

use super::{Multidegree, ResolutionError};
use crate::curve::CurveData;
use crate::grobner::{initial_ideal, IdealBasis};
use crate::invariants::hilbert_function_r;
use crate::poly::{normal_form, Coeff, Monomial, Polynomial};

/// Standard monomials of `R = S/I` under `<_w`, degree by degree. Every
/// graded piece `R_a` is spanned by monomials of pairwise distinct
/// multidegree (`(s, t)` exponents of their image), so each multidegree
/// indexes at most one basis element.
#[derive(Debug)]
pub struct GradedBasis {
    d: u32,
    gb: IdealBasis,
    by_degree: Vec<Vec<Monomial>>,
    multidegrees: Vec<Vec<Multidegree>>,
    index: HashMap<Multidegree, Monomial>,
    products: RwLock<HashMap<(Multidegree, Multidegree), Coeff>>,
}

impl GradedBasis {
    /// Basis through weighted degree `max_degree`; each piece is checked
    /// against `h_R(a)`.
    pub fn new(curve: &CurveData, max_degree: u32) -> Result<Self, ResolutionError> {
        let gb = curve.ideal_basis().verify()?;
        let lead = initial_ideal(&gb)?;
        let mut by_degree = Vec::with_capacity(max_degree as usize + 1);
        let mut multidegrees = Vec::with_capacity(max_degree as usize + 1);
        let mut index = HashMap::new();
        for a in 0..=max_degree {
            let mut mons = lead.standard_monomials(u64::from(a), curve.ambient());
            let expected = hilbert_function_r(curve.d(), curve.e(), u64::from(a));
            if mons.len() as u64 != expected {
                return Err(ResolutionError::BasisMismatch {
                    degree: a,
                    found: mons.len() as u64,
                    expected,
                });
            }
            mons.sort_by(|x, y| gb.order().cmp(x, y));
            let mut md = Vec::with_capacity(mons.len());
            for m in &mons {
                let lambda = curve.multidegree(m);
                if index.insert(lambda, m.clone()).is_some() {
                    return Err(ResolutionError::StructureMismatch(format!(
                        "two standard monomials of multidegree {lambda:?}"
                    )));
                }
                md.push(lambda);
            }
            by_degree.push(mons);
            multidegrees.push(md);
        }
        Ok(GradedBasis {
            d: curve.d(),
            gb,
            by_degree,
            multidegrees,
            index,
            products: RwLock::new(HashMap::new()),
        })
    }

    pub fn max_degree(&self) -> u32 {
        self.by_degree.len() as u32 - 1
    }

    pub fn groebner_basis(&self) -> &IdealBasis {
        &self.gb
    }

    /// Standard monomials of weighted degree `a`, increasing under `<_w`.
    pub fn degree(&self, a: u32) -> &[Monomial] {
        &self.by_degree[a as usize]
    }

    pub fn multidegrees(&self, a: u32) -> &[Multidegree] {
        &self.multidegrees[a as usize]
    }

    pub fn internal_degree(&self, lambda: Multidegree) -> u64 {
        (lambda.0 + lambda.1) / u64::from(self.d)
    }

    pub fn contains(&self, lambda: Multidegree) -> bool {
        self.index.contains_key(&lambda)
    }

    pub fn monomial_at(&self, lambda: Multidegree) -> Option<&Monomial> {
        self.index.get(&lambda)
    }

    pub fn polynomial_at(&self, lambda: Multidegree) -> Option<Polynomial> {
        self.monomial_at(lambda)
            .map(|m| Polynomial::monomial(self.gb.ambient().clone(), m.clone(), Coeff::one()))
    }

    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial, ResolutionError> {
        Ok(normal_form(f, self.gb.gens(), self.gb.order())?)
    }

    /// The scalar `c` with `NF(m_lambda * m_mu) = c * m_(lambda + mu)`.
    pub fn product_coefficient(
        &self,
        lambda: Multidegree,
        mu: Multidegree,
    ) -> Result<Coeff, ResolutionError> {
        let key = if lambda <= mu {
            (lambda, mu)
        } else {
            (mu, lambda)
        };
        if let Some(c) = self.products.read().expect("lock").get(&key) {
            return Ok(c.clone());
        }
        let sum = (lambda.0 + mu.0, lambda.1 + mu.1);
        let missing = |x: Multidegree| {
            ResolutionError::StructureMismatch(format!("multidegree {x:?} is outside the basis"))
        };
        let a = self.monomial_at(lambda).ok_or_else(|| missing(lambda))?;
        let b = self.monomial_at(mu).ok_or_else(|| missing(mu))?;
        let target = self.monomial_at(sum).ok_or_else(|| missing(sum))?;
        let prod = Polynomial::monomial(self.gb.ambient().clone(), a.mul(b), Coeff::one());
        let nf = self.normal_form(&prod)?;
        let c = nf.coeff(target);
        if nf.num_terms() != 1 || nf.is_zero() || c == Coeff::from_integer(0.into()) {
            return Err(ResolutionError::StructureMismatch(format!(
                "normal form of a product in multidegree {sum:?} is {nf}"
            )));
        }
        self.products.write().expect("lock").insert(key, c.clone());
        Ok(c)
    }
}
