use std::fmt;
use std::sync::Arc;

use super::PolyError;

/// Ordered, weighted set of variables. The position of a name is the index
/// used in every exponent vector built over this set.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VarSet {
    names: Vec<String>,
    weights: Vec<u32>,
}

impl VarSet {
    pub fn new<S: Into<String>>(
        names: impl IntoIterator<Item = S>,
        weights: impl IntoIterator<Item = u32>,
    ) -> Result<Arc<Self>, PolyError> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let weights: Vec<u32> = weights.into_iter().collect();
        if names.len() != weights.len() {
            return Err(PolyError::InvalidVarSet(format!(
                "{} names but {} weights",
                names.len(),
                weights.len()
            )));
        }
        for (i, name) in names.iter().enumerate() {
            if name.is_empty() || !valid_identifier(name) {
                return Err(PolyError::InvalidVarSet(format!(
                    "bad variable name {name:?}"
                )));
            }
            if names[..i].contains(name) {
                return Err(PolyError::InvalidVarSet(format!(
                    "duplicate variable {name}"
                )));
            }
        }
        if let Some(pos) = weights.iter().position(|&w| w == 0) {
            return Err(PolyError::InvalidVarSet(format!(
                "variable {} has weight 0",
                names[pos]
            )));
        }
        Ok(Arc::new(VarSet { names, weights }))
    }

    /// All variables of weight one.
    pub fn standard<S: Into<String>>(
        names: impl IntoIterator<Item = S>,
    ) -> Result<Arc<Self>, PolyError> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let n = names.len();
        Self::new(names, std::iter::repeat_n(1, n))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Same names, new weights.
    pub fn reweighted(
        &self,
        weights: impl IntoIterator<Item = u32>,
    ) -> Result<Arc<Self>, PolyError> {
        Self::new(self.names.clone(), weights)
    }

    /// This set followed by `other`, which must not share names with it.
    pub fn concat(&self, other: &VarSet) -> Result<Arc<Self>, PolyError> {
        Self::new(
            self.names.iter().chain(other.names.iter()).cloned(),
            self.weights.iter().chain(other.weights.iter()).copied(),
        )
    }
}

fn valid_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Exponent vector. The derived `Ord` is plain lexicographic comparison of
/// the exponents and serves only as a storage order; term orders live in
/// [`TermOrder`](super::TermOrder).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, index: usize) -> Self {
        let mut e = vec![0; nvars];
        e[index] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&e| u64::from(e)).sum()
    }

    pub fn weighted_degree(&self, weights: &[u32]) -> u64 {
        self.0
            .iter()
            .zip(weights)
            .map(|(&e, &w)| u64::from(e) * u64::from(w))
            .sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.len(), other.len());
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `self / divisor`, if the division is exact.
    pub fn div(&self, divisor: &Monomial) -> Option<Monomial> {
        if !divisor.divides(self) {
            return None;
        }
        Some(Monomial(
            self.0.iter().zip(&divisor.0).map(|(a, b)| a - b).collect(),
        ))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Renders with the variable names of `vars`, e.g. `x_0*x_2^2`.
    pub fn display<'a>(&'a self, vars: &'a VarSet) -> MonomialDisplay<'a> {
        MonomialDisplay { mono: self, vars }
    }
}

pub struct MonomialDisplay<'a> {
    mono: &'a Monomial,
    vars: &'a VarSet,
}

impl fmt::Display for MonomialDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.mono.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.mono.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "{}", self.vars.name(i))?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn varset_rejects_duplicates_and_zero_weights() {
        assert!(VarSet::new(["a", "a"], [1, 1]).is_err());
        assert!(VarSet::new(["a", "b"], [1, 0]).is_err());
        assert!(VarSet::new(["a"], [1, 2]).is_err());
        assert!(VarSet::new(["1a"], [1]).is_err());
        assert!(VarSet::new(["x_0", "y_1"], [1, 2]).is_ok());
    }

    #[test]
    fn weighted_degree_is_additive() {
        let w = [1, 1, 2];
        let a = Monomial::new(vec![1, 0, 2]);
        let b = Monomial::new(vec![0, 3, 1]);
        assert_eq!(
            a.mul(&b).weighted_degree(&w),
            a.weighted_degree(&w) + b.weighted_degree(&w)
        );
    }

    #[test]
    fn division_and_lcm() {
        let a = Monomial::new(vec![2, 1, 0]);
        let b = Monomial::new(vec![1, 1, 0]);
        assert_eq!(a.div(&b), Some(Monomial::new(vec![1, 0, 0])));
        assert_eq!(b.div(&a), None);
        assert_eq!(
            a.lcm(&Monomial::new(vec![0, 3, 1])),
            Monomial::new(vec![2, 3, 1])
        );
        assert!(Monomial::new(vec![1, 0, 0]).is_coprime(&Monomial::new(vec![0, 2, 1])));
    }
}
