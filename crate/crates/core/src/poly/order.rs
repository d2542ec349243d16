use std::cmp::Ordering;
use std::sync::Arc;

use super::{Monomial, PolyError, VarSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TieBreak {
    Lex,
    RevLex,
}

/// Matrix term order: monomials are compared by the dot products with each
/// weight row in turn, and the remaining ties are broken by lex or revlex
/// on an explicit variable precedence (first entry is the largest variable).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermOrder {
    ambient: Arc<VarSet>,
    rows: Vec<Vec<i64>>,
    tie_break: TieBreak,
    precedence: Vec<usize>,
}

impl TermOrder {
    /// Rejects orders that are not global, i.e. where some variable would be
    /// smaller than 1.
    pub fn new(
        ambient: Arc<VarSet>,
        rows: Vec<Vec<i64>>,
        tie_break: TieBreak,
        precedence: Vec<usize>,
    ) -> Result<Self, PolyError> {
        let n = ambient.len();
        if let Some(row) = rows.iter().find(|r| r.len() != n) {
            return Err(PolyError::InvalidOrder(format!(
                "weight row of length {} over {n} variables",
                row.len()
            )));
        }
        let mut seen = vec![false; n];
        for &p in &precedence {
            if p >= n || seen[p] {
                return Err(PolyError::InvalidOrder(
                    "precedence is not a permutation of the variables".into(),
                ));
            }
            seen[p] = true;
        }
        if precedence.len() != n {
            return Err(PolyError::InvalidOrder(
                "precedence is not a permutation of the variables".into(),
            ));
        }
        for var in 0..n {
            let lead = rows.iter().map(|r| r[var]).find(|&w| w != 0);
            let positive = match lead {
                Some(w) => w > 0,
                None => tie_break == TieBreak::Lex,
            };
            if !positive {
                return Err(PolyError::InvalidOrder(format!(
                    "not a global order: {} < 1",
                    ambient.name(var)
                )));
            }
        }
        Ok(TermOrder {
            ambient,
            rows,
            tie_break,
            precedence,
        })
    }

    /// Degree reverse lexicographic order with the variables' own order as
    /// precedence.
    pub fn grevlex(ambient: Arc<VarSet>) -> Self {
        let n = ambient.len();
        Self::new(
            ambient,
            vec![vec![1; n]],
            TieBreak::RevLex,
            (0..n).collect(),
        )
        .expect("grevlex is global")
    }

    pub fn lex(ambient: Arc<VarSet>) -> Self {
        let n = ambient.len();
        Self::new(ambient, Vec::new(), TieBreak::Lex, (0..n).collect()).expect("lex is global")
    }

    pub fn ambient(&self) -> &Arc<VarSet> {
        &self.ambient
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn tie_break(&self) -> TieBreak {
        self.tie_break
    }

    pub fn precedence(&self) -> &[usize] {
        &self.precedence
    }

    /// Compares two exponent vectors; both must have the ambient length.
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        debug_assert_eq!(a.len(), self.ambient.len());
        debug_assert_eq!(b.len(), self.ambient.len());
        let (a, b) = (a.exponents(), b.exponents());
        for row in &self.rows {
            let wa: i64 = row.iter().zip(a).map(|(w, &e)| w * i64::from(e)).sum();
            let wb: i64 = row.iter().zip(b).map(|(w, &e)| w * i64::from(e)).sum();
            match wa.cmp(&wb) {
                Ordering::Equal => {}
                other => return other,
            }
        }
        match self.tie_break {
            TieBreak::Lex => {
                for &v in &self.precedence {
                    match a[v].cmp(&b[v]) {
                        Ordering::Equal => {}
                        other => return other,
                    }
                }
            }
            TieBreak::RevLex => {
                for &v in self.precedence.iter().rev() {
                    match a[v].cmp(&b[v]) {
                        Ordering::Equal => {}
                        other => return other.reverse(),
                    }
                }
            }
        }
        Ordering::Equal
    }

    /// [`cmp`](Self::cmp) with a length check against the ambient set.
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Result<Ordering, PolyError> {
        let n = self.ambient.len();
        if a.len() != n || b.len() != n {
            return Err(PolyError::AmbientMismatch);
        }
        Ok(self.cmp(a, b))
    }

    pub fn max<'m>(&self, a: &'m Monomial, b: &'m Monomial) -> &'m Monomial {
        if self.cmp(a, b) == Ordering::Less {
            b
        } else {
            a
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xyz() -> Arc<VarSet> {
        VarSet::standard(["x", "y", "z"]).unwrap()
    }

    #[test]
    fn grevlex_basics() {
        let ord = TermOrder::grevlex(xyz());
        let m = |v: [u32; 3]| Monomial::new(v.to_vec());
        // x*z < y^2 in grevlex with x > y > z
        assert_eq!(ord.cmp(&m([1, 0, 1]), &m([0, 2, 0])), Ordering::Less);
        assert_eq!(ord.cmp(&m([1, 1, 0]), &m([0, 0, 3])), Ordering::Less);
        assert_eq!(ord.cmp(&m([2, 0, 0]), &m([2, 0, 0])), Ordering::Equal);
    }

    #[test]
    fn lex_basics() {
        let ord = TermOrder::lex(xyz());
        let m = |v: [u32; 3]| Monomial::new(v.to_vec());
        assert_eq!(ord.cmp(&m([1, 0, 0]), &m([0, 5, 5])), Ordering::Greater);
    }

    #[test]
    fn rejects_local_orders() {
        let vars = xyz();
        assert!(TermOrder::new(vars.clone(), vec![], TieBreak::RevLex, vec![0, 1, 2]).is_err());
        assert!(TermOrder::new(
            vars.clone(),
            vec![vec![1, -1, 1]],
            TieBreak::RevLex,
            vec![0, 1, 2]
        )
        .is_err());
        assert!(
            TermOrder::new(vars.clone(), vec![vec![1, 1]], TieBreak::Lex, vec![0, 1, 2]).is_err()
        );
        assert!(TermOrder::new(vars, vec![], TieBreak::Lex, vec![0, 0, 2]).is_err());
    }

    #[test]
    fn compare_checks_lengths() {
        let ord = TermOrder::grevlex(xyz());
        assert_eq!(
            ord.compare(&Monomial::one(2), &Monomial::one(3)),
            Err(PolyError::AmbientMismatch)
        );
    }
}
