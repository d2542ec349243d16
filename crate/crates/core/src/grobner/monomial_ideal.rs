use std::sync::Arc;

use crate::poly::{Monomial, VarSet};

/// Monomial ideal stored by its minimal generators, an antichain under
/// divisibility kept in storage order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialIdeal {
    ambient: Arc<VarSet>,
    min_gens: Vec<Monomial>,
}

impl MonomialIdeal {
    pub fn new(ambient: Arc<VarSet>, gens: impl IntoIterator<Item = Monomial>) -> Self {
        let mut all: Vec<Monomial> = gens.into_iter().collect();
        all.sort_by_key(|m| (m.total_degree(), m.clone()));
        all.dedup();
        let mut min_gens: Vec<Monomial> = Vec::new();
        for m in all {
            if !min_gens.iter().any(|g| g.divides(&m)) {
                min_gens.push(m);
            }
        }
        min_gens.sort();
        MonomialIdeal { ambient, min_gens }
    }

    pub fn ambient(&self) -> &Arc<VarSet> {
        &self.ambient
    }

    pub fn gens(&self) -> &[Monomial] {
        &self.min_gens
    }

    pub fn len(&self) -> usize {
        self.min_gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.min_gens.is_empty()
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.min_gens.iter().any(|g| g.divides(m))
    }

    /// Monomials of weighted degree `degree` (weights taken from `vars`,
    /// which must have the ambient's length) outside the ideal.
    pub fn standard_monomials(&self, degree: u64, vars: &VarSet) -> Vec<Monomial> {
        assert_eq!(vars.len(), self.ambient.len(), "variable count mismatch");
        let mut out = Vec::new();
        let mut exps = vec![0u32; vars.len()];
        self.walk(vars.weights(), 0, degree, &mut exps, &mut |e| {
            out.push(Monomial::new(e.to_vec()))
        });
        out
    }

    pub fn count_standard_monomials(&self, degree: u64, vars: &VarSet) -> u64 {
        assert_eq!(vars.len(), self.ambient.len(), "variable count mismatch");
        let mut count = 0u64;
        let mut exps = vec![0u32; vars.len()];
        self.walk(vars.weights(), 0, degree, &mut exps, &mut |_| count += 1);
        count
    }

    // Depth-first over exponent vectors, pruning as soon as the partial
    // monomial lies in the ideal (every extension then does too).
    fn walk(
        &self,
        weights: &[u32],
        var: usize,
        remaining: u64,
        exps: &mut Vec<u32>,
        emit: &mut impl FnMut(&[u32]),
    ) {
        if var == weights.len() {
            if remaining == 0 {
                emit(exps);
            }
            return;
        }
        let w = u64::from(weights[var]);
        let max = remaining / w;
        for a in 0..=max {
            exps[var] = a as u32;
            if self.divides_partial(exps) {
                break;
            }
            self.walk(weights, var + 1, remaining - a * w, exps, emit);
        }
        exps[var] = 0;
    }

    fn divides_partial(&self, exps: &[u32]) -> bool {
        self.min_gens
            .iter()
            .any(|g| g.exponents().iter().zip(exps).all(|(a, b)| a <= b))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimalizes_generators() {
        let vars = VarSet::standard(["a", "b"]).unwrap();
        let j = MonomialIdeal::new(
            vars,
            [
                Monomial::new(vec![2, 1]),
                Monomial::new(vec![1, 0]),
                Monomial::new(vec![0, 3]),
                Monomial::new(vec![1, 0]),
            ],
        );
        assert_eq!(
            j.gens(),
            &[Monomial::new(vec![0, 3]), Monomial::new(vec![1, 0])]
        );
    }

    #[test]
    fn standard_monomial_counts() {
        let vars = VarSet::new(["a", "b", "c"], [1, 1, 2]).unwrap();
        let empty = MonomialIdeal::new(vars.clone(), []);
        assert_eq!(empty.count_standard_monomials(0, &vars), 1);
        // a^i b^j c^k with i + j + 2k = 2: a^2, ab, b^2, c
        assert_eq!(empty.count_standard_monomials(2, &vars), 4);
        let j = MonomialIdeal::new(vars.clone(), [Monomial::new(vec![1, 1, 0])]);
        assert_eq!(j.count_standard_monomials(2, &vars), 3);
        let listed = j.standard_monomials(2, &vars);
        assert_eq!(listed.len(), 3);
        assert!(listed.iter().all(|m| !j.contains(m)));
    }
}
