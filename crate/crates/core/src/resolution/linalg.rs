//! Dense exact linear algebra over `Q` for the small graded pieces.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::poly::Coeff;

/// Basis of `{x : A x = 0}` for the `rows` of `A` (each of length `ncols`),
/// one vector per free column of the reduced row echelon form.
pub(crate) fn nullspace(rows: &[Vec<Coeff>], ncols: usize) -> Vec<Vec<Coeff>> {
    let mut a: Vec<Vec<Coeff>> = rows.to_vec();
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..a.len()).find(|&k| !a[k][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        for k in 0..a.len() {
            if k != r && !a[k][c].is_zero() {
                let f = a[k][c].clone();
                let pivot_row = a[r].clone();
                for (x, y) in a[k].iter_mut().zip(&pivot_row).skip(c) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == a.len() {
            break;
        }
    }
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Coeff::zero(); ncols];
        v[free] = Coeff::one();
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = -a[row][free].clone();
        }
        basis.push(v);
    }
    basis
}

/// Incrementally built, fully reduced row echelon form.
#[derive(Debug, Default)]
pub(crate) struct Echelon {
    rows: Vec<(usize, Vec<Coeff>)>,
}

impl Echelon {
    #[cfg(test)]
    pub(crate) fn rank(&self) -> usize {
        self.rows.len()
    }

    pub(crate) fn reduce(&self, v: &mut [Coeff]) {
        for (p, row) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let f = v[*p].clone();
            for (x, y) in v.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
    }

    /// Adds `v` to the span; returns its reduction modulo the previous span
    /// when that is nonzero.
    pub(crate) fn insert(&mut self, mut v: Vec<Coeff>) -> Option<Vec<Coeff>> {
        self.reduce(&mut v);
        let p = v.iter().position(|x| !x.is_zero())?;
        let remainder = v.clone();
        let inv = v[p].recip();
        for x in v.iter_mut() {
            *x *= &inv;
        }
        for (_, row) in self.rows.iter_mut() {
            if !row[p].is_zero() {
                let f = row[p].clone();
                for (x, y) in row.iter_mut().zip(&v) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        self.rows.push((p, v));
        Some(remainder)
    }
}

/// Scales `v` to a primitive integer vector whose first nonzero entry is
/// positive.
pub(crate) fn primitive(v: &[Coeff]) -> Vec<Coeff> {
    let den = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let nums: Vec<BigInt> = v
        .iter()
        .map(|x| (x * Coeff::from(den.clone())).to_integer())
        .collect();
    let mut g = nums.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return v.to_vec();
    }
    if nums
        .iter()
        .find(|x| !x.is_zero())
        .is_some_and(|x| x.is_negative())
    {
        g = -g;
    }
    nums.into_iter().map(|x| Coeff::from(x / &g)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Coeff {
        Coeff::from_integer(n.into())
    }

    fn mat_vec(a: &[Vec<Coeff>], v: &[Coeff]) -> Vec<Coeff> {
        a.iter()
            .map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum())
            .collect()
    }

    #[test]
    fn nullspace_dimension_and_membership() {
        let a = vec![vec![q(1), q(2), q(3)], vec![q(2), q(4), q(6)]];
        let ns = nullspace(&a, 3);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(mat_vec(&a, v).iter().all(|x| x.is_zero()));
        }
        assert_eq!(nullspace(&[], 2).len(), 2);
        let id = vec![vec![q(1), q(0)], vec![q(0), q(1)]];
        assert!(nullspace(&id, 2).is_empty());
    }

    #[test]
    fn echelon_insert() {
        let mut e = Echelon::default();
        assert!(e.insert(vec![q(1), q(1), q(0)]).is_some());
        assert!(e.insert(vec![q(2), q(2), q(0)]).is_none());
        let r = e.insert(vec![q(1), q(2), q(0)]).unwrap();
        assert_eq!(r, vec![q(0), q(1), q(0)]);
        assert_eq!(e.rank(), 2);
        assert!(e.insert(vec![q(0), q(0), q(0)]).is_none());
    }

    #[test]
    fn primitive_vectors() {
        let half = Coeff::new(1.into(), 2.into());
        let v = vec![q(0), -half.clone(), q(3)];
        assert_eq!(primitive(&v), vec![q(0), q(1), q(-6)]);
    }
}
