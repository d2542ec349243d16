use serde::Serialize;

use super::betti::BettiTable;
use super::series::{IntPoly, RationalSeries, SeriesError};

fn check_type(d: u32, e: u32) {
    assert!(
        d >= 1 && e >= 1,
        "curve type needs d, e >= 1 (got {d}, {e})"
    );
}

/// `C(n, k)`, zero whenever `k < 0`, `n < 0` or `k > n`.
pub fn binomial(n: i64, k: i64) -> i128 {
    if n < 0 || k < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: i128 = 1;
    for t in 0..k {
        acc = acc * (n - t) as i128 / (t + 1) as i128;
    }
    acc
}

fn ipow(base: i128, exp: u32) -> i128 {
    base.pow(exp)
}

/// `dim_k R_a = d*a + 1 - (a mod e)`.
pub fn hilbert_function_r(d: u32, e: u32, a: u64) -> u64 {
    check_type(d, e);
    u64::from(d) * a + 1 - a % u64::from(e)
}

/// `(1 + (d-1)(z + ... + z^e) + (e-1)z^e) / ((1-z)(1-z^e))`.
pub fn hilbert_series_r(d: u32, e: u32) -> RationalSeries {
    check_type(d, e);
    let mut num = IntPoly::one();
    for a in 1..=e {
        num.add_term(a, 0, i128::from(d) - 1);
    }
    num.add_term(e, 0, i128::from(e) - 1);
    RationalSeries::new(
        num,
        vec![(IntPoly::one_minus(1, 0), 1), (IntPoly::one_minus(e, 0), 1)],
    )
    .expect("valid factors")
}

/// Numerator of the Eagon-Northcott Hilbert series over
/// `(1-z)^d (1-z^e)^e`:
/// `1 + sum_k (-1)^k k sum_i C(d-1, k+1-i) C(e, i) z^(k+1+i(e-1))`.
pub fn en_numerator(d: u32, e: u32) -> IntPoly {
    check_type(d, e);
    let (d, e) = (i64::from(d), i64::from(e));
    let mut num = IntPoly::one();
    for k in 1..=(d + e - 2) {
        let sign: i128 = if k % 2 == 0 { 1 } else { -1 };
        for i in 0..=(k + 1) {
            let c = binomial(d - 1, k + 1 - i) * binomial(e, i);
            let deg = (k + 1 + i * (e - 1)) as u32;
            num.add_term(deg, 0, sign * k as i128 * c);
        }
    }
    num
}

pub fn hilbert_series_en(d: u32, e: u32) -> RationalSeries {
    RationalSeries::new(
        en_numerator(d, e),
        vec![(IntPoly::one_minus(1, 0), d), (IntPoly::one_minus(e, 0), e)],
    )
    .expect("valid factors")
}

/// `beta_{k, k+1+i(e-1)} = k C(d-1, k+1-i) C(e, i)` for `1 <= k <= d+e-2`,
/// with contributions landing on the same degree summed, plus `beta_{0,0}`.
pub fn betti_table_en(d: u32, e: u32) -> BettiTable {
    check_type(d, e);
    let mut t = BettiTable::new();
    t.add(0, 0, 1);
    let (di, ei) = (i64::from(d), i64::from(e));
    for k in 1..=(di + ei - 2) {
        for i in 0..=(k + 1) {
            let c = k as i128 * binomial(di - 1, k + 1 - i) * binomial(ei, i);
            let deg = (k + 1 + i * (ei - 1)) as u32;
            t.add(k as u32, deg, c as u64);
        }
    }
    t
}

/// `sum_{i,j} (-1)^i beta_{i,j} z^j`.
pub fn alternating_numerator(table: &BettiTable) -> IntPoly {
    IntPoly::from_terms(table.entries().map(|b| {
        let sign = if b.i % 2 == 0 { 1 } else { -1 };
        ((b.j, 0), sign * i128::from(b.value))
    }))
}

/// Multiplicity of `z = 1` as a root of a univariate integer polynomial.
fn root_multiplicity_at_one(p: &IntPoly) -> u32 {
    let mut coeffs: Vec<i128> = Vec::new();
    for ((z, _), c) in p.terms() {
        let z = z as usize;
        if coeffs.len() <= z {
            coeffs.resize(z + 1, 0);
        }
        coeffs[z] += c;
    }
    let mut mult = 0;
    while !coeffs.is_empty() && coeffs.iter().sum::<i128>() == 0 {
        if coeffs.iter().all(|&c| c == 0) {
            break;
        }
        // synthetic division by (z - 1), highest degree first
        let n = coeffs.len() - 1;
        let mut q = vec![0i128; n];
        let mut carry = 0i128;
        for k in (1..=n).rev() {
            carry += coeffs[k];
            q[k - 1] = carry;
        }
        coeffs = q;
        mult += 1;
    }
    mult
}

/// Order of the pole at `z = 1` of a univariate series whose factors are
/// all of the form `1 - z^a`, i.e. the Krull dimension of the module.
pub fn pole_order_at_one(s: &RationalSeries) -> u32 {
    let poles: u32 = s.factors().iter().map(|(_, m)| m).sum();
    poles - root_multiplicity_at_one(s.numerator())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CmReport {
    pub codim: u32,
    pub pdim: u32,
    pub dim: u32,
    pub cohen_macaulay: bool,
}

/// Codimension from the pole order of the Eagon-Northcott Hilbert series and
/// projective dimension from its Betti table; `S/I` is Cohen-Macaulay when
/// the two agree.
pub fn cm_check(d: u32, e: u32) -> CmReport {
    let n = d + e;
    let dim = pole_order_at_one(&hilbert_series_en(d, e));
    let codim = n - dim;
    let pdim = betti_table_en(d, e).pdim().unwrap_or(0);
    CmReport {
        codim,
        pdim,
        dim,
        cohen_macaulay: codim == pdim && codim == n - 2,
    }
}

/// Hilbert series of `gr_m(R)`. Bigraded (`z` counts the m-adic degree,
/// `w` the internal degree):
/// `(1 + (d-2)wz + (e-1)w^e z - (d+e-2)w^(e+1)z^2) / ((1-wz)^2 (1-w^e z))`;
/// otherwise `(1 + (d+e-2)z) / (1-z)^2`.
pub fn hilbert_series_gr(d: u32, e: u32, bigraded: bool) -> RationalSeries {
    check_type(d, e);
    let (di, ei) = (i128::from(d), i128::from(e));
    if bigraded {
        let num = IntPoly::from_terms([
            ((0, 0), 1),
            ((1, 1), di - 2),
            ((1, e), ei - 1),
            ((2, e + 1), -(di + ei - 2)),
        ]);
        RationalSeries::new(
            num,
            vec![(IntPoly::one_minus(1, 1), 2), (IntPoly::one_minus(1, e), 1)],
        )
        .expect("valid factors")
    } else {
        RationalSeries::new(
            IntPoly::univariate(&[1, di + ei - 2]),
            vec![(IntPoly::one_minus(1, 0), 2)],
        )
        .expect("valid factors")
    }
}

/// `[z^u] HS_gr(z, w) = ((d-1)u + 1) w^u + sum_{i=1..u} e w^(u + i(e-1))`,
/// returned as a polynomial in `w` (stored on the `w` axis).
pub fn gr_z_coefficient(d: u32, e: u32, u: u32) -> IntPoly {
    check_type(d, e);
    let mut p = IntPoly::term(0, u, i128::from(d - 1) * i128::from(u) + 1);
    for i in 1..=u {
        p.add_term(0, u + i * (e - 1), i128::from(e));
    }
    p
}

/// Poincaré series of `k` over `R`. Graded:
/// `(1+wz)^2 (1+w^e z) / (1 - (d-2)wz - (e-1)w^e z - (d+e-2)w^(e+1)z^2)`;
/// ungraded: `(1+z)^2 / (1 - (d+e-2)z)`.
pub fn poincare_series(d: u32, e: u32, graded: bool) -> RationalSeries {
    check_type(d, e);
    let (di, ei) = (i128::from(d), i128::from(e));
    if graded {
        let a = IntPoly::from_terms([((0, 0), 1), ((1, 1), 1)]);
        let b = IntPoly::from_terms([((0, 0), 1), ((1, e), 1)]);
        let num = a
            .checked_mul(&a)
            .and_then(|p| p.checked_mul(&b))
            .expect("small");
        let den = IntPoly::from_terms([
            ((0, 0), 1),
            ((1, 1), -(di - 2)),
            ((1, e), -(ei - 1)),
            ((2, e + 1), -(di + ei - 2)),
        ]);
        RationalSeries::new(num, vec![(den, 1)]).expect("valid factors")
    } else {
        RationalSeries::new(
            IntPoly::univariate(&[1, 2, 1]),
            vec![(IntPoly::univariate(&[1, -(di + ei - 2)]), 1)],
        )
        .expect("valid factors")
    }
}

/// Total Betti numbers of `k` over `R`: `1`, `d+e`, then
/// `(d+e-1)^2 (d+e-2)^(i-2)`.
pub fn poincare_betti(d: u32, e: u32, i: u32) -> i128 {
    check_type(d, e);
    let n = i128::from(d + e);
    match i {
        0 => 1,
        1 => n,
        _ => (n - 1) * (n - 1) * ipow(n - 2, i - 2),
    }
}

/// `(beta_{i,i}, beta_{i,ei})` of `k` over `R`: the linear strand
/// `1, d, (d-1)^2 (d-2)^(i-2)` and the strand `1, e(e-1)^(i-1)` of top
/// internal degree. For `e = 1` the two strands are the same row and these
/// values are not Betti numbers on their own.
pub fn strand_bettis(d: u32, e: u32, i: u32) -> (i128, i128) {
    check_type(d, e);
    let (di, ei) = (i128::from(d), i128::from(e));
    let linear = match i {
        0 => 1,
        1 => di,
        _ => ipow(di - 2, i - 2) * (di - 1) * (di - 1),
    };
    let top = match i {
        0 => 1,
        _ => ei * ipow(ei - 1, i - 1),
    };
    (linear, top)
}

/// `Poin^S_I(z) = sum_{i=0}^{d+e-3} (i+1) C(d+e-1, i+2) z^i`.
pub fn poincare_s_of_i(d: u32, e: u32) -> IntPoly {
    check_type(d, e);
    let n = i64::from(d + e);
    let mut p = IntPoly::zero();
    for i in 0..=(n - 3).max(-1) {
        p.add_term(i as u32, 0, (i as i128 + 1) * binomial(n - 1, i + 2));
    }
    p
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GolodReport {
    pub order: u32,
    /// `(1+z)^(d+e) / (1 - z^2 Poin^S_I)` agrees with the Poincaré series.
    pub bound_attained: bool,
    /// `1 - z^2 Poin^S_I = (1+z)^(d+e-2) (1 - (d+e-2)z)` as polynomials.
    pub denominator_identity: bool,
    /// `Poin^S_I` coefficients are the row sums of the Eagon-Northcott table
    /// shifted by one homological degree.
    pub coarsening: bool,
}

impl GolodReport {
    pub fn passed(&self) -> bool {
        self.bound_attained && self.denominator_identity && self.coarsening
    }
}

pub fn golod_check(d: u32, e: u32, order: u32) -> Result<GolodReport, SeriesError> {
    check_type(d, e);
    if order < 5 {
        return Err(SeriesError::OrderTooSmall { order, min: 5 });
    }
    let n = d + e;
    let psi = poincare_s_of_i(d, e);
    let den = IntPoly::one().sub(&psi.checked_mul(&IntPoly::term(2, 0, 1)).expect("small"));

    let one_plus_z = IntPoly::univariate(&[1, 1]);
    let rhs = one_plus_z
        .checked_pow(n - 2)
        .and_then(|p| p.checked_mul(&IntPoly::univariate(&[1, -(i128::from(n) - 2)])))
        .ok_or(SeriesError::NumeratorOverflow)?;
    let denominator_identity = den == rhs;

    let bound = RationalSeries::new(
        one_plus_z
            .checked_pow(n)
            .ok_or(SeriesError::NumeratorOverflow)?,
        vec![(den, 1)],
    )?;
    let bound_attained = bound.series_eq(&poincare_series(d, e, false), order)?;

    let table = betti_table_en(d, e);
    let coarsening = (0..n).all(|i| i128::from(table.total(i + 1)) == psi.coeff(i, 0));

    Ok(GolodReport {
        order,
        bound_attained,
        denominator_identity,
        coarsening,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(5, 0), 1);
        assert_eq!(binomial(2, 3), 0);
        assert_eq!(binomial(2, -1), 0);
        assert_eq!(binomial(-1, 0), 0);
        assert_eq!(binomial(40, 20), 137_846_528_820);
    }

    #[test]
    fn hilbert_function_values() {
        assert_eq!(hilbert_function_r(3, 2, 2), 7);
        assert_eq!(hilbert_function_r(3, 2, 1), 3);
        assert_eq!(hilbert_function_r(3, 2, 5), 15);
        assert_eq!(hilbert_function_r(4, 3, 0), 1);
    }

    #[test]
    fn reduced_hilbert_series_3_2() {
        let s = hilbert_series_r(3, 2);
        assert_eq!(s.numerator(), &IntPoly::univariate(&[1, 2, 3]));
        assert_eq!(s.to_string(), "(1+2z+3z^2)/((1-z)(1-z^2))");
    }

    #[test]
    fn en_numerator_3_2() {
        assert_eq!(
            en_numerator(3, 2),
            IntPoly::univariate(&[1, 0, -1, -4, 3, 4, -3])
        );
    }

    #[test]
    fn en_table_3_2() {
        let t = betti_table_en(3, 2);
        let want = [
            ((0, 0), 1),
            ((1, 2), 1),
            ((1, 3), 4),
            ((1, 4), 1),
            ((2, 4), 4),
            ((2, 5), 4),
            ((3, 6), 3),
        ];
        assert_eq!(t.entries().count(), want.len());
        for ((i, j), v) in want {
            assert_eq!(t.get(i, j), v, "beta_{i},{j}");
        }
    }

    #[test]
    fn conic_table() {
        let t = betti_table_en(2, 1);
        assert_eq!(t.entries().count(), 2);
        assert_eq!(t.get(1, 2), 1);
    }

    #[test]
    fn pole_orders() {
        assert_eq!(pole_order_at_one(&hilbert_series_r(3, 2)), 2);
        assert_eq!(pole_order_at_one(&hilbert_series_en(3, 2)), 2);
        assert_eq!(pole_order_at_one(&hilbert_series_en(1, 1)), 2);
    }

    #[test]
    fn cm_reports() {
        assert_eq!(
            cm_check(3, 2),
            CmReport {
                codim: 3,
                pdim: 3,
                dim: 2,
                cohen_macaulay: true
            }
        );
        let r = cm_check(6, 2);
        assert_eq!((r.codim, r.pdim), (6, 6));
        let r = cm_check(5, 1);
        assert_eq!((r.codim, r.pdim), (4, 4));
    }

    #[test]
    fn gr_series_specializations() {
        let s = hilbert_series_gr(3, 2, true);
        assert_eq!(
            s.set_w_one().unwrap().expand(20).unwrap(),
            hilbert_series_gr(3, 2, false).expand(20).unwrap()
        );
        assert_eq!(hilbert_series_gr(3, 2, false).to_string(), "(1+3z)/(1-z)^2");
    }

    #[test]
    fn poincare_totals_3_2() {
        let ex = poincare_series(3, 2, false).expand(5).unwrap();
        assert_eq!(ex.z_coefficients(), vec![1, 5, 16, 48, 144, 432]);
        for i in 0..6 {
            assert_eq!(poincare_betti(3, 2, i), ex.z_coefficients()[i as usize]);
        }
        assert_eq!(poincare_betti(1, 2, 1), 3);
    }

    #[test]
    fn strand_values() {
        assert_eq!(strand_bettis(3, 2, 2), (4, 2));
        assert_eq!(strand_bettis(2, 2, 2).0, 1);
        assert_eq!(strand_bettis(2, 2, 3).0, 0);
        assert_eq!(strand_bettis(3, 3, 2).1, 6);
    }

    #[test]
    fn golod_small() {
        assert!(golod_check(3, 2, 10).unwrap().passed());
        assert!(golod_check(4, 1, 10).unwrap().passed());
        assert!(golod_check(1, 1, 10).unwrap().passed());
        assert!(matches!(
            golod_check(3, 2, 4),
            Err(SeriesError::OrderTooSmall { .. })
        ));
    }
}
