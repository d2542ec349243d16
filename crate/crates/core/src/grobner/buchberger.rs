use std::cmp::{Ordering, Reverse};
use std::collections::{BinaryHeap, HashSet};

use num_traits::One;

use super::{GrobnerError, IdealBasis};
use crate::poly::{normal_form, Coeff, Monomial, Polynomial, TermOrder};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BuchbergerOptions {
    /// Hard cap on the number of pending S-pairs.
    pub max_pairs: usize,
}

impl Default for BuchbergerOptions {
    fn default() -> Self {
        BuchbergerOptions {
            max_pairs: 1_000_000,
        }
    }
}

/// S-polynomial of `f` and `g`: both scaled up to the lcm of their leading
/// monomials so the leading terms cancel.
pub fn s_polynomial(
    f: &Polynomial,
    g: &Polynomial,
    ord: &TermOrder,
) -> Result<Polynomial, GrobnerError> {
    f.check_ambient(g)?;
    let (mf, cf) = f.leading_term(ord)?;
    let (mg, cg) = g.leading_term(ord)?;
    let l = mf.lcm(mg);
    let qf = l.div(mf).expect("lcm is a multiple");
    let qg = l.div(mg).expect("lcm is a multiple");
    let a = f.mul_term(&qf, &cf.recip());
    let b = g.mul_term(&qg, &cg.recip());
    Ok(&a - &b)
}

/// Reduced Gröbner basis with the default budget.
pub fn buchberger(basis: &IdealBasis) -> Result<IdealBasis, GrobnerError> {
    buchberger_with(basis, BuchbergerOptions::default())
}

/// Buchberger's algorithm with the normal selection strategy (smallest lcm
/// degree first), the coprime-leads criterion and the chain criterion.
/// Returns the reduced, monic basis sorted by increasing leading monomial.
pub fn buchberger_with(
    basis: &IdealBasis,
    opts: BuchbergerOptions,
) -> Result<IdealBasis, GrobnerError> {
    let ord = basis.order();
    let mut gens: Vec<Polynomial> = Vec::new();
    let mut leads: Vec<Monomial> = Vec::new();
    for g in basis.gens() {
        let g = g.monic(ord)?;
        if gens.contains(&g) {
            continue;
        }
        leads.push(g.leading_monomial(ord)?.clone());
        gens.push(g);
    }

    let mut queue: BinaryHeap<Reverse<(u64, u64, usize, usize)>> = BinaryHeap::new();
    let mut pending: HashSet<(usize, usize)> = HashSet::new();
    let mut seq = 0u64;
    let mut push_pairs_for = |k: usize,
                              leads: &[Monomial],
                              queue: &mut BinaryHeap<Reverse<(u64, u64, usize, usize)>>,
                              pending: &mut HashSet<(usize, usize)>|
     -> Result<(), GrobnerError> {
        for i in 0..k {
            let deg = leads[i].lcm(&leads[k]).total_degree();
            queue.push(Reverse((deg, seq, i, k)));
            seq += 1;
            pending.insert((i, k));
        }
        if pending.len() > opts.max_pairs {
            return Err(GrobnerError::BudgetExceeded {
                pairs: pending.len(),
                limit: opts.max_pairs,
            });
        }
        Ok(())
    };
    for k in 0..gens.len() {
        push_pairs_for(k, &leads, &mut queue, &mut pending)?;
    }

    while let Some(Reverse((_, _, i, j))) = queue.pop() {
        pending.remove(&(i, j));
        if leads[i].is_coprime(&leads[j]) {
            continue;
        }
        let l = leads[i].lcm(&leads[j]);
        let chain = (0..gens.len()).any(|k| {
            k != i
                && k != j
                && leads[k].divides(&l)
                && !pending.contains(&key(i, k))
                && !pending.contains(&key(j, k))
        });
        if chain {
            continue;
        }
        let s = s_polynomial(&gens[i], &gens[j], ord)?;
        let r = normal_form(&s, &gens, ord)?;
        if r.is_zero() {
            continue;
        }
        let r = r.monic(ord)?;
        leads.push(r.leading_monomial(ord)?.clone());
        gens.push(r);
        push_pairs_for(gens.len() - 1, &leads, &mut queue, &mut pending)?;
    }

    Ok(IdealBasis::new_groebner(
        reduce_basis(gens, ord)?,
        ord.clone(),
    ))
}

fn key(a: usize, b: usize) -> (usize, usize) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Minimalizes and interreduces a Gröbner basis.
pub(crate) fn reduce_basis(
    gens: Vec<Polynomial>,
    ord: &TermOrder,
) -> Result<Vec<Polynomial>, GrobnerError> {
    let mut items: Vec<(Monomial, Polynomial)> = gens
        .into_iter()
        .map(|g| Ok((g.leading_monomial(ord)?.clone(), g)))
        .collect::<Result<_, GrobnerError>>()?;
    items.sort_by(|a, b| ord.cmp(&a.0, &b.0));
    // with leads sorted increasingly, a lead can only be divided by an
    // earlier (smaller or equal) lead
    let mut minimal: Vec<(Monomial, Polynomial)> = Vec::new();
    for (m, g) in items {
        if minimal.iter().any(|(n, _)| n.divides(&m)) {
            continue;
        }
        minimal.push((m, g));
    }
    let polys: Vec<Polynomial> = minimal.iter().map(|(_, g)| g.clone()).collect();
    let mut out = Vec::with_capacity(polys.len());
    for (idx, (m, g)) in minimal.iter().enumerate() {
        let lc = g.coeff(m);
        let tail = g.try_sub(&Polynomial::monomial(
            g.ambient().clone(),
            m.clone(),
            lc.clone(),
        ))?;
        let others: Vec<Polynomial> = polys
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != idx)
            .map(|(_, p)| p.clone())
            .collect();
        let tail = normal_form(&tail, &others, ord)?;
        let reduced = tail.try_add(&Polynomial::monomial(g.ambient().clone(), m.clone(), lc))?;
        let reduced = reduced.monic(ord)?;
        debug_assert!(reduced.coeff(m) == Coeff::one());
        out.push(reduced);
    }
    out.sort_by(|a, b| {
        let la = a.leading_monomial(ord).expect("nonzero");
        let lb = b.leading_monomial(ord).expect("nonzero");
        match ord.cmp(la, lb) {
            Ordering::Equal => Ordering::Equal,
            o => o,
        }
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grobner::is_groebner_basis;
    use crate::poly::{TieBreak, VarSet};
    use std::sync::Arc;

    fn ring() -> Arc<VarSet> {
        VarSet::standard(["x_0", "x_1", "x_2", "x_3"]).unwrap()
    }

    fn p(s: &str) -> Polynomial {
        Polynomial::parse(s, ring()).unwrap()
    }

    #[test]
    fn s_polynomial_of_self_is_zero() {
        let ord = TermOrder::grevlex(ring());
        let f = p("x_0*x_2 - x_1^2 + 3*x_3");
        assert!(s_polynomial(&f, &f, &ord).unwrap().is_zero());
    }

    #[test]
    fn coprime_leads_reduce_to_zero() {
        let ord = TermOrder::grevlex(ring());
        let f = p("x_0^2 - x_1*x_3");
        let g = p("x_2^3 + x_3^3");
        let lf = f.leading_monomial(&ord).unwrap();
        let lg = g.leading_monomial(&ord).unwrap();
        assert!(lf.is_coprime(lg));
        let s = s_polynomial(&f, &g, &ord).unwrap();
        assert!(normal_form(&s, &[f, g], &ord).unwrap().is_zero());
    }

    #[test]
    fn trivial_inputs() {
        let ord = TermOrder::grevlex(ring());
        let gb = buchberger(&IdealBasis::new(vec![p("x_0")], ord.clone()).unwrap()).unwrap();
        assert_eq!(gb.gens(), &[p("x_0")]);
        assert!(gb.is_groebner());
        let f = p("x_0*x_2 - x_1^2");
        let gb = buchberger(&IdealBasis::new(vec![f.clone()], ord.clone()).unwrap()).unwrap();
        assert_eq!(gb.gens(), &[p("x_1^2 - x_0*x_2")]);
        let gb = buchberger(&IdealBasis::new(vec![], ord).unwrap()).unwrap();
        assert!(gb.is_empty());
    }

    #[test]
    fn twisted_cubic_grevlex() {
        // 2x2 minors of [[x0,x1,x2],[x1,x2,x3]] are a Gröbner basis for grevlex
        let ord = TermOrder::grevlex(ring());
        let minors = vec![
            p("x_0*x_2 - x_1^2"),
            p("x_0*x_3 - x_1*x_2"),
            p("x_1*x_3 - x_2^2"),
        ];
        let basis = IdealBasis::new(minors, ord.clone()).unwrap();
        assert!(is_groebner_basis(&basis).unwrap().is_groebner());
        let gb = buchberger(&basis).unwrap();
        assert_eq!(gb.len(), 3);
    }

    #[test]
    fn lex_elimination_adds_elements() {
        let ord = TermOrder::new(ring(), vec![], TieBreak::Lex, vec![0, 1, 2, 3]).unwrap();
        let basis = IdealBasis::new(vec![p("x_0*x_1 - x_2^2"), p("x_0 - x_3")], ord).unwrap();
        let gb = buchberger(&basis).unwrap();
        assert!(is_groebner_basis(&gb).unwrap().is_groebner());
        assert_eq!(gb.gens(), &[p("x_1*x_3 - x_2^2"), p("x_0 - x_3")]);
    }

    #[test]
    fn budget_is_enforced() {
        let ord = TermOrder::grevlex(ring());
        let basis = IdealBasis::new(
            vec![
                p("x_0*x_2 - x_1^2"),
                p("x_0*x_3 - x_1*x_2"),
                p("x_1*x_3 - x_2^2"),
            ],
            ord,
        )
        .unwrap();
        let err = buchberger_with(&basis, BuchbergerOptions { max_pairs: 1 }).unwrap_err();
        assert!(matches!(err, GrobnerError::BudgetExceeded { limit: 1, .. }));
    }
}
