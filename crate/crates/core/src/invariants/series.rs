use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SeriesError {
    #[error("coefficient overflow while expanding to order {order}")]
    Overflow { order: u32 },
    #[error("coefficient overflow in a numerator product")]
    NumeratorOverflow,
    #[error("denominator factor {0} must have constant term 1")]
    BadFactor(String),
    #[error("specialization makes the denominator factor {0} vanish at the origin")]
    DegenerateSpecialization(String),
    #[error("truncation order {order} is below the minimum {min}")]
    OrderTooSmall { order: u32, min: u32 },
}

/// Integer polynomial in `z` and `w`, keyed by `(z exponent, w exponent)`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct IntPoly {
    terms: BTreeMap<(u32, u32), i128>,
}

impl IntPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::term(0, 0, 1)
    }

    pub fn term(z: u32, w: u32, c: i128) -> Self {
        let mut p = Self::zero();
        p.add_term(z, w, c);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = ((u32, u32), i128)>) -> Self {
        let mut p = Self::zero();
        for ((z, w), c) in terms {
            p.add_term(z, w, c);
        }
        p
    }

    /// `sum_a coeffs[a] z^a`.
    pub fn univariate(coeffs: &[i128]) -> Self {
        Self::from_terms(coeffs.iter().enumerate().map(|(a, &c)| ((a as u32, 0), c)))
    }

    /// `1 - z^a w^b`.
    pub fn one_minus(z: u32, w: u32) -> Self {
        let mut p = Self::one();
        p.add_term(z, w, -1);
        p
    }

    pub fn add_term(&mut self, z: u32, w: u32, c: i128) {
        if c == 0 {
            return;
        }
        let slot = self.terms.entry((z, w)).or_insert(0);
        *slot += c;
        if *slot == 0 {
            self.terms.remove(&(z, w));
        }
    }

    pub fn coeff(&self, z: u32, w: u32) -> i128 {
        self.terms.get(&(z, w)).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), i128)> + '_ {
        self.terms.iter().map(|(&k, &c)| (k, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_univariate(&self) -> bool {
        self.terms.keys().all(|&(_, w)| w == 0)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(z, w)| z + w).max()
    }

    pub fn checked_mul(&self, other: &IntPoly) -> Option<IntPoly> {
        let mut out = IntPoly::zero();
        for (&(z1, w1), &a) in &self.terms {
            for (&(z2, w2), &b) in &other.terms {
                let c = a.checked_mul(b)?;
                let slot = out.terms.entry((z1 + z2, w1 + w2)).or_insert(0);
                *slot = slot.checked_add(c)?;
            }
        }
        out.terms.retain(|_, c| *c != 0);
        Some(out)
    }

    pub fn checked_pow(&self, k: u32) -> Option<IntPoly> {
        (0..k).try_fold(IntPoly::one(), |acc, _| acc.checked_mul(self))
    }

    pub fn add(&self, other: &IntPoly) -> IntPoly {
        let mut out = self.clone();
        for (&(z, w), &c) in &other.terms {
            out.add_term(z, w, c);
        }
        out
    }

    pub fn sub(&self, other: &IntPoly) -> IntPoly {
        self.add(&other.scale(-1))
    }

    pub fn scale(&self, k: i128) -> IntPoly {
        IntPoly::from_terms(self.terms().map(|(m, c)| (m, c * k)))
    }

    pub fn set_w_one(&self) -> IntPoly {
        IntPoly::from_terms(self.terms().map(|((z, _), c)| ((z, 0), c)))
    }

    /// Substitutes `z = 1`; the result is a polynomial in `w` alone.
    pub fn set_z_one(&self) -> IntPoly {
        IntPoly::from_terms(self.terms().map(|((_, w), c)| ((0, w), c)))
    }

    pub fn negate_z(&self) -> IntPoly {
        IntPoly::from_terms(
            self.terms()
                .map(|((z, w), c)| ((z, w), if z % 2 == 1 { -c } else { c })),
        )
    }

    pub fn swap_variables(&self) -> IntPoly {
        IntPoly::from_terms(self.terms().map(|((z, w), c)| ((w, z), c)))
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, z: u32, w: u32) -> fmt::Result {
    match w {
        0 => {}
        1 => write!(f, "w")?,
        _ => write!(f, "w^{w}")?,
    }
    match z {
        0 => {}
        1 => write!(f, "z")?,
        _ => write!(f, "z^{z}")?,
    }
    Ok(())
}

impl fmt::Display for IntPoly {
    /// Terms by increasing `z` then `w` degree: `1+2z+3z^2`, `1-w^2z`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (&(z, w), &c)) in self.terms.iter().enumerate() {
            let sign = if c < 0 {
                "-"
            } else if k > 0 {
                "+"
            } else {
                ""
            };
            write!(f, "{sign}")?;
            let mag = c.unsigned_abs();
            if mag != 1 || (z == 0 && w == 0) {
                write!(f, "{mag}")?;
            }
            write_monomial(f, z, w)?;
        }
        Ok(())
    }
}

/// A rational function `numerator / prod factor^multiplicity` in `z, w`
/// read as a power series. Every factor has constant term 1, so the
/// expansion lives in `Z[[z, w]]` and is truncated by total degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SeriesRepr", into = "SeriesRepr")]
pub struct RationalSeries {
    numerator: IntPoly,
    factors: Vec<(IntPoly, u32)>,
}

impl RationalSeries {
    pub fn new(numerator: IntPoly, factors: Vec<(IntPoly, u32)>) -> Result<Self, SeriesError> {
        let mut merged: Vec<(IntPoly, u32)> = Vec::new();
        for (p, m) in factors {
            if p.coeff(0, 0) != 1 {
                return Err(SeriesError::BadFactor(p.to_string()));
            }
            if m == 0 || p == IntPoly::one() {
                continue;
            }
            match merged.iter_mut().find(|(q, _)| *q == p) {
                Some((_, k)) => *k += m,
                None => merged.push((p, m)),
            }
        }
        Ok(RationalSeries {
            numerator,
            factors: merged,
        })
    }

    pub fn polynomial(p: IntPoly) -> Self {
        RationalSeries {
            numerator: p,
            factors: Vec::new(),
        }
    }

    pub fn numerator(&self) -> &IntPoly {
        &self.numerator
    }

    pub fn factors(&self) -> &[(IntPoly, u32)] {
        &self.factors
    }

    pub fn is_univariate(&self) -> bool {
        self.numerator.is_univariate() && self.factors.iter().all(|(p, _)| p.is_univariate())
    }

    pub fn mul(&self, other: &RationalSeries) -> Result<RationalSeries, SeriesError> {
        let numerator = self
            .numerator
            .checked_mul(&other.numerator)
            .ok_or(SeriesError::NumeratorOverflow)?;
        let factors = self.factors.iter().chain(&other.factors).cloned().collect();
        RationalSeries::new(numerator, factors)
    }

    fn map(&self, f: impl Fn(&IntPoly) -> IntPoly) -> Result<RationalSeries, SeriesError> {
        let numerator = f(&self.numerator);
        let mut factors = Vec::with_capacity(self.factors.len());
        for (p, m) in &self.factors {
            let q = f(p);
            if q.coeff(0, 0) != 1 {
                return Err(SeriesError::DegenerateSpecialization(p.to_string()));
            }
            factors.push((q, *m));
        }
        RationalSeries::new(numerator, factors)
    }

    pub fn set_w_one(&self) -> Result<RationalSeries, SeriesError> {
        self.map(IntPoly::set_w_one)
    }

    /// `z = 1`, leaving a series in `w`.
    pub fn set_z_one(&self) -> Result<RationalSeries, SeriesError> {
        self.map(IntPoly::set_z_one)
    }

    pub fn negate_z(&self) -> RationalSeries {
        self.map(IntPoly::negate_z)
            .expect("z -> -z keeps constant terms")
    }

    pub fn swap_variables(&self) -> RationalSeries {
        self.map(IntPoly::swap_variables)
            .expect("swapping keeps constant terms")
    }

    /// All coefficients of total degree `<= order`.
    pub fn expand(&self, order: u32) -> Result<Expansion, SeriesError> {
        let n = order as usize;
        let overflow = SeriesError::Overflow { order };
        // grid[a][b] = coefficient of z^a w^b, a + b <= n
        let mut grid: Vec<Vec<i128>> = (0..=n).map(|a| vec![0; n + 1 - a]).collect();
        for ((z, w), c) in self.numerator.terms() {
            if (z + w) as usize <= n {
                grid[z as usize][w as usize] = c;
            }
        }
        for (p, m) in &self.factors {
            let tail: Vec<((usize, usize), i128)> = p
                .terms()
                .filter(|&((z, w), _)| (z, w) != (0, 0))
                .map(|((z, w), c)| ((z as usize, w as usize), c))
                .collect();
            for _ in 0..*m {
                // solve q * p = grid in increasing total degree
                for t in 0..=n {
                    for a in 0..=t {
                        let b = t - a;
                        let mut acc = grid[a][b];
                        for &((pz, pw), c) in &tail {
                            if pz <= a && pw <= b {
                                let prod = c
                                    .checked_mul(grid[a - pz][b - pw])
                                    .ok_or(overflow.clone())?;
                                acc = acc.checked_sub(prod).ok_or(overflow.clone())?;
                            }
                        }
                        grid[a][b] = acc;
                    }
                }
            }
        }
        Ok(Expansion { order, grid })
    }

    /// Agreement of the two expansions through total degree `order`.
    pub fn series_eq(&self, other: &RationalSeries, order: u32) -> Result<bool, SeriesError> {
        Ok(self.expand(order)? == other.expand(order)?)
    }
}

impl fmt::Display for RationalSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.numerator.terms.len() > 1 && !self.factors.is_empty() {
            write!(f, "({})", self.numerator)?;
        } else {
            write!(f, "{}", self.numerator)?;
        }
        if self.factors.is_empty() {
            return Ok(());
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|(p, m)| {
                if *m == 1 {
                    format!("({p})")
                } else {
                    format!("({p})^{m}")
                }
            })
            .collect();
        if parts.len() == 1 {
            write!(f, "/{}", parts[0])
        } else {
            write!(f, "/({})", parts.concat())
        }
    }
}

/// Truncated coefficients of a series.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expansion {
    order: u32,
    grid: Vec<Vec<i128>>,
}

impl Expansion {
    pub fn order(&self) -> u32 {
        self.order
    }

    /// Coefficient of `z^a w^b`; `None` past the truncation.
    pub fn get(&self, a: u32, b: u32) -> Option<i128> {
        if a + b > self.order {
            return None;
        }
        Some(self.grid[a as usize][b as usize])
    }

    /// Coefficients of `z^0, ..., z^order` with `w^0`.
    pub fn z_coefficients(&self) -> Vec<i128> {
        self.grid.iter().map(|row| row[0]).collect()
    }

    /// Coefficients of `w^0, ..., w^order` with `z^0`.
    pub fn w_coefficients(&self) -> Vec<i128> {
        self.grid[0].clone()
    }

    /// The coefficient of `z^a` as a polynomial in `w`, known through
    /// `w^(order - a)`.
    pub fn z_slice(&self, a: u32) -> &[i128] {
        &self.grid[a as usize]
    }

    /// Nonzero coefficients, in increasing `(z, w)`.
    pub fn nonzero(&self) -> Vec<SeriesTerm> {
        let mut out = Vec::new();
        for (a, row) in self.grid.iter().enumerate() {
            for (b, &c) in row.iter().enumerate() {
                if c != 0 {
                    out.push(SeriesTerm {
                        z: a as u32,
                        w: b as u32,
                        c,
                    });
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesTerm {
    pub z: u32,
    pub w: u32,
    pub c: i128,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct SeriesRepr {
    numerator: Vec<SeriesTerm>,
    denominator: Vec<FactorRepr>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct FactorRepr {
    factor: Vec<SeriesTerm>,
    multiplicity: u32,
}

fn poly_terms(p: &IntPoly) -> Vec<SeriesTerm> {
    p.terms()
        .map(|((z, w), c)| SeriesTerm { z, w, c })
        .collect()
}

fn poly_from(terms: &[SeriesTerm]) -> IntPoly {
    IntPoly::from_terms(terms.iter().map(|t| ((t.z, t.w), t.c)))
}

impl From<RationalSeries> for SeriesRepr {
    fn from(s: RationalSeries) -> Self {
        SeriesRepr {
            numerator: poly_terms(&s.numerator),
            denominator: s
                .factors
                .iter()
                .map(|(p, m)| FactorRepr {
                    factor: poly_terms(p),
                    multiplicity: *m,
                })
                .collect(),
        }
    }
}

impl TryFrom<SeriesRepr> for RationalSeries {
    type Error = SeriesError;

    fn try_from(r: SeriesRepr) -> Result<Self, Self::Error> {
        RationalSeries::new(
            poly_from(&r.numerator),
            r.denominator
                .iter()
                .map(|f| (poly_from(&f.factor), f.multiplicity))
                .collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn geometric_series() {
        let s = RationalSeries::new(IntPoly::one(), vec![(IntPoly::one_minus(1, 0), 1)]).unwrap();
        assert_eq!(s.expand(5).unwrap().z_coefficients(), vec![1; 6]);
        let s = RationalSeries::new(IntPoly::one(), vec![(IntPoly::one_minus(1, 0), 2)]).unwrap();
        assert_eq!(s.expand(4).unwrap().z_coefficients(), vec![1, 2, 3, 4, 5]);
        assert_eq!(s.to_string(), "1/(1-z)^2");
    }

    #[test]
    fn bivariate_expansion() {
        // 1/(1 - wz) = sum (wz)^k
        let s = RationalSeries::new(IntPoly::one(), vec![(IntPoly::one_minus(1, 1), 1)]).unwrap();
        let ex = s.expand(6).unwrap();
        assert_eq!(ex.get(3, 3), Some(1));
        assert_eq!(ex.get(2, 3), Some(0));
        assert_eq!(ex.get(4, 3), None);
        assert_eq!(
            s.set_w_one().unwrap().expand(3).unwrap().z_coefficients(),
            vec![1; 4]
        );
    }

    #[test]
    fn merging_and_rendering() {
        let num = IntPoly::univariate(&[1, 2, 3]);
        let s = RationalSeries::new(
            num,
            vec![
                (IntPoly::one_minus(1, 0), 1),
                (IntPoly::one_minus(2, 0), 1),
                (IntPoly::one_minus(1, 0), 1),
            ],
        )
        .unwrap();
        assert_eq!(s.factors().len(), 2);
        assert_eq!(s.to_string(), "(1+2z+3z^2)/((1-z)^2(1-z^2))");
        let b = IntPoly::from_terms([((0, 0), 1), ((1, 2), -1), ((2, 3), 4)]);
        assert_eq!(b.to_string(), "1-w^2z+4w^3z^2");
    }

    #[test]
    fn rejects_bad_factors() {
        assert!(RationalSeries::new(IntPoly::one(), vec![(IntPoly::term(1, 0, 1), 1)]).is_err());
        let trivial = RationalSeries::new(IntPoly::one(), vec![(IntPoly::one(), 1)]).unwrap();
        assert!(trivial.factors().is_empty());
        // 1 - w is a fine factor until w = 1
        let s = RationalSeries::new(IntPoly::one(), vec![(IntPoly::one_minus(0, 1), 1)]).unwrap();
        assert!(matches!(
            s.set_w_one(),
            Err(SeriesError::DegenerateSpecialization(_))
        ));
    }

    #[test]
    fn product_and_negation() {
        let s = RationalSeries::new(IntPoly::one(), vec![(IntPoly::one_minus(1, 0), 1)]).unwrap();
        let t = RationalSeries::polynomial(IntPoly::one_minus(1, 0));
        let one = s.mul(&t).unwrap();
        assert_eq!(one.expand(10).unwrap().z_coefficients()[..3], [1, 0, 0]);
        let alt = s.negate_z().expand(4).unwrap().z_coefficients();
        assert_eq!(alt, vec![1, -1, 1, -1, 1]);
    }

    #[test]
    fn overflow_is_reported() {
        let s = RationalSeries::new(
            IntPoly::one(),
            vec![(
                IntPoly::from_terms([((0, 0), 1), ((1, 0), -1_000_000_000_000)]),
                1,
            )],
        )
        .unwrap();
        assert!(matches!(s.expand(10), Err(SeriesError::Overflow { .. })));
    }

    #[test]
    fn json_round_trip() {
        let s = RationalSeries::new(
            IntPoly::from_terms([((0, 0), 1), ((1, 1), -3)]),
            vec![(IntPoly::one_minus(1, 2), 2)],
        )
        .unwrap();
        let json = serde_json::to_string(&s).unwrap();
        let back: RationalSeries = serde_json::from_str(&json).unwrap();
        assert_eq!(back, s);
    }
}
