//! Per-curve consistency checks run over grids of `(d, e)`. Each check
//! compares a closed form with an independent computation (Gröbner bases,
//! standard monomial counts, series expansions, semigroup membership).

use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::curve::{CurveData, MatrixVariant};
use crate::grobner::{
    ideal_equal_with, initial_ideal, is_groebner_basis, toric_kernel_with, BuchbergerOptions,
    GrobnerError,
};
use crate::invariants::{
    alternating_numerator, betti_table_en, binomial, cm_check, en_numerator, golod_check,
    gr_z_coefficient, hilbert_function_r, hilbert_series_en, hilbert_series_gr, hilbert_series_r,
    poincare_betti, poincare_series, strand_bettis, IntPoly, RationalSeries, SeriesError,
};
use crate::poly::Monomial;

pub const CHECK_NAMES: [&str; 10] = [
    "determinantal",
    "groebner",
    "hilbert",
    "betti_en",
    "cohen_macaulay",
    "assoc_graded",
    "gr_series",
    "poincare",
    "golod",
    "non_normal",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIPPED",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub status: Status,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellReport {
    pub d: u32,
    pub e: u32,
    pub checks: Vec<CheckResult>,
}

impl CellReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Largest `d + e` for checks that run Buchberger's algorithm.
    pub groebner_cap: u32,
    /// Largest `d + e` for the series-only checks.
    pub series_cap: u32,
    /// Truncation order for series comparisons.
    pub order: u32,
    /// Highest degree for standard monomial counts.
    pub count_degree: u32,
    pub golod_order: u32,
    pub budget: BuchbergerOptions,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            groebner_cap: 9,
            series_cap: 12,
            order: 25,
            count_degree: 15,
            golod_order: 10,
            budget: BuchbergerOptions::default(),
        }
    }
}

enum Outcome {
    Pass(String),
    Fail(String),
    Skip(String),
}

impl From<GrobnerError> for Outcome {
    fn from(e: GrobnerError) -> Self {
        match e {
            GrobnerError::BudgetExceeded { .. } => Outcome::Skip(e.to_string()),
            other => Outcome::Fail(other.to_string()),
        }
    }
}

impl From<SeriesError> for Outcome {
    fn from(e: SeriesError) -> Self {
        Outcome::Fail(e.to_string())
    }
}

fn verdict(ok: bool, pass: impl Into<String>, fail: impl Into<String>) -> Outcome {
    if ok {
        Outcome::Pass(pass.into())
    } else {
        Outcome::Fail(fail.into())
    }
}

macro_rules! tri {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(err) => return Outcome::from(err),
        }
    };
}

/// Runs all checks on the given cells in parallel; reports come back in the
/// order of `cells`.
pub fn run_grid(cells: &[(u32, u32)], opts: &VerifyOptions) -> Vec<CellReport> {
    cells
        .par_iter()
        .map(|&(d, e)| verify_cell(d, e, opts))
        .collect()
}

/// Cells `1 <= d <= d_max`, `1 <= e <= e_max`, ordered by `d + e`, then `d`.
pub fn grid(d_max: u32, e_max: u32) -> Vec<(u32, u32)> {
    let mut cells: Vec<(u32, u32)> = (1..=d_max)
        .flat_map(|d| (1..=e_max).map(move |e| (d, e)))
        .collect();
    cells.sort_by_key(|&(d, e)| (d + e, d));
    cells
}

pub fn verify_cell(d: u32, e: u32, opts: &VerifyOptions) -> CellReport {
    let curve = CurveData::build(d, e).expect("grid cells have d, e >= 1");
    let n = d + e;
    let run_gb = n <= opts.groebner_cap;
    let run_series = n <= opts.series_cap;
    let checks = CHECK_NAMES
        .iter()
        .map(|&name| {
            let needs_gb = matches!(name, "determinantal" | "groebner" | "assoc_graded");
            let outcome = if !run_series || (needs_gb && !run_gb) {
                let cap = if needs_gb {
                    opts.groebner_cap
                } else {
                    opts.series_cap
                };
                Outcome::Skip(format!("d+e = {n} is above the cap {cap}"))
            } else {
                match name {
                    "determinantal" => check_determinantal(&curve, opts),
                    "groebner" => check_groebner(&curve),
                    "hilbert" => check_hilbert(&curve, opts, run_gb),
                    "betti_en" => check_betti_en(&curve),
                    "cohen_macaulay" => check_cm(&curve),
                    "assoc_graded" => check_assoc_graded(&curve, opts),
                    "gr_series" => check_gr_series(&curve, opts),
                    "poincare" => check_poincare(&curve),
                    "golod" => check_golod(&curve, opts),
                    "non_normal" => check_non_normal(&curve),
                    _ => unreachable!(),
                }
            };
            let (status, detail) = match outcome {
                Outcome::Pass(s) => (Status::Pass, s),
                Outcome::Fail(s) => (Status::Fail, s),
                Outcome::Skip(s) => (Status::Skipped, s),
            };
            CheckResult {
                name: name.to_string(),
                status,
                detail,
            }
        })
        .collect();
    CellReport { d, e, checks }
}

/// The initial ideal of the minors under `<_w`, listed family by family:
/// `x_(i+1) x_j` (`i < j <= d-2`), `y_(i+1) y_j` (`i < j <= e-2`),
/// `x_j y_(i+1)` (`i <= e-2`, `j <= d-2`), `x_i y_0` (`i <= d-2`) and
/// `y_0 y_i` (`i <= e-2`).
pub fn initial_ideal_families(curve: &CurveData) -> Vec<Monomial> {
    let (d, e) = (curve.d() as usize, curve.e() as usize);
    let n = curve.num_vars();
    let x = |i: usize| i;
    let y = |i: usize| d + i;
    let prod = |a: usize, b: usize| {
        let mut exps = vec![0u32; n];
        exps[a] += 1;
        exps[b] += 1;
        Monomial::new(exps)
    };
    let mut out = Vec::new();
    for j in 0..d.saturating_sub(1) {
        for i in 0..j {
            out.push(prod(x(i + 1), x(j)));
        }
    }
    for j in 0..e.saturating_sub(1) {
        for i in 0..j {
            out.push(prod(y(i + 1), y(j)));
        }
    }
    for i in 0..e.saturating_sub(1) {
        for j in 0..d.saturating_sub(1) {
            out.push(prod(x(j), y(i + 1)));
        }
    }
    for i in 0..d.saturating_sub(1) {
        out.push(prod(x(i), y(0)));
    }
    for i in 0..e.saturating_sub(1) {
        out.push(prod(y(0), y(i)));
    }
    out
}

fn check_determinantal(curve: &CurveData, opts: &VerifyOptions) -> Outcome {
    let minors = curve.ideal_basis();
    let kernel = tri!(toric_kernel_with(
        &curve.phi_images(),
        &curve.order_w(),
        opts.budget
    ));
    let equal = tri!(ideal_equal_with(&minors, &kernel, opts.budget));
    verdict(
        equal,
        format!(
            "{} minors generate the kernel ({} generators)",
            minors.len(),
            kernel.len()
        ),
        "minors and kernel generate different ideals",
    )
}

fn check_groebner(curve: &CurveData) -> Outcome {
    let basis = curve.ideal_basis();
    let cert = tri!(is_groebner_basis(&basis));
    if let Some(f) = cert.failures.first() {
        return Outcome::Fail(format!(
            "S-pair ({}, {}) leaves remainder {}",
            f.i, f.j, f.remainder
        ));
    }
    let verified = tri!(basis.verify());
    let lead = tri!(initial_ideal(&verified));
    let got: BTreeSet<Monomial> = lead.gens().iter().cloned().collect();
    let want: BTreeSet<Monomial> = initial_ideal_families(curve).into_iter().collect();
    verdict(
        got == want,
        format!(
            "{} S-pairs reduce to 0; initial ideal has {} generators matching the families",
            cert.pairs_checked,
            got.len()
        ),
        format!(
            "initial ideal differs from the families: {} computed, {} expected",
            got.len(),
            want.len()
        ),
    )
}

fn check_hilbert(curve: &CurveData, opts: &VerifyOptions, with_counts: bool) -> Outcome {
    let (d, e) = (curve.d(), curve.e());
    let hs = hilbert_series_r(d, e);
    let coeffs = tri!(hs.expand(opts.order)).z_coefficients();
    let h = |a: u32| hilbert_function_r(d, e, u64::from(a));
    if let Some(a) = (0..=opts.order).find(|&a| coeffs[a as usize] != h(a) as i128) {
        return Outcome::Fail(format!("HS_R coefficient {a} differs from h_R({a})"));
    }
    if !tri!(hilbert_series_en(d, e).series_eq(&hs, opts.order)) {
        return Outcome::Fail(format!(
            "Eagon-Northcott series differs from HS_R below order {}",
            opts.order
        ));
    }
    if !with_counts {
        return Outcome::Pass(format!(
            "series agree to order {}; counts skipped",
            opts.order
        ));
    }
    let lead = tri!(initial_ideal(&tri!(curve.ideal_basis().verify())));
    for a in 0..=opts.count_degree {
        let count = lead.count_standard_monomials(u64::from(a), curve.ambient());
        if count != h(a) {
            return Outcome::Fail(format!("{count} standard monomials in degree {a}"));
        }
    }
    Outcome::Pass(format!(
        "series agree to order {}; standard monomial counts match through degree {}",
        opts.order, opts.count_degree
    ))
}

fn check_betti_en(curve: &CurveData) -> Outcome {
    let (d, e) = (curve.d(), curve.e());
    let table = betti_table_en(d, e);
    if alternating_numerator(&table) != en_numerator(d, e) {
        return Outcome::Fail("alternating sum of the table is not the series numerator".into());
    }
    let n = i64::from(d + e);
    for k in 1..=(d + e - 2) {
        let want = i128::from(k) * binomial(n - 1, i64::from(k) + 1);
        if i128::from(table.total(k)) != want {
            return Outcome::Fail(format!(
                "beta_{k} = {} but k*C(d+e-1, k+1) = {want}",
                table.total(k)
            ));
        }
    }
    Outcome::Pass(format!(
        "table of length {} matches numerator and row sums",
        d + e - 2
    ))
}

fn check_cm(curve: &CurveData) -> Outcome {
    let r = cm_check(curve.d(), curve.e());
    verdict(
        r.cohen_macaulay,
        format!("codim {} = pdim {}", r.codim, r.pdim),
        format!("codim {} but pdim {}", r.codim, r.pdim),
    )
}

fn check_assoc_graded(curve: &CurveData, opts: &VerifyOptions) -> Outcome {
    let (d, e) = (curve.d(), curve.e());
    let m0 = tri!(curve.minors_basis(MatrixVariant::M0));
    let cert = tri!(is_groebner_basis(&m0));
    if !cert.is_groebner() {
        return Outcome::Fail("minors of M_0 are not a Gröbner basis under <_w".into());
    }
    let lead0 = tri!(initial_ideal(&tri!(m0.verify())));
    let lead = tri!(initial_ideal(&tri!(curve.ideal_basis().verify())));
    if lead0 != lead {
        return Outcome::Fail("initial ideals of M and M_0 differ".into());
    }
    let series = tri!(hilbert_series_gr(d, e, false).expand(opts.count_degree)).z_coefficients();
    let standard = tri!(curve
        .ambient()
        .reweighted(std::iter::repeat_n(1, curve.num_vars()))
        .map_err(GrobnerError::from));
    let weights = curve.ambient().weights();
    for u in 0..=opts.count_degree {
        let mons = lead0.standard_monomials(u64::from(u), &standard);
        if mons.len() as i128 != series[u as usize] {
            return Outcome::Fail(format!(
                "{} standard monomials of degree {u}, series says {}",
                mons.len(),
                series[u as usize]
            ));
        }
        let mut by_weight = IntPoly::zero();
        for m in &mons {
            by_weight.add_term(0, m.weighted_degree(weights) as u32, 1);
        }
        if by_weight != gr_z_coefficient(d, e, u) {
            return Outcome::Fail(format!("internal degrees in standard degree {u} disagree"));
        }
    }
    Outcome::Pass(format!(
        "M_0 minors are a Gröbner basis with the same initial ideal; bigraded counts match through degree {}",
        opts.count_degree
    ))
}

fn check_gr_series(curve: &CurveData, opts: &VerifyOptions) -> Outcome {
    let (d, e) = (curve.d(), curve.e());
    let bi = hilbert_series_gr(d, e, true);
    if !tri!(tri!(bi.set_w_one()).series_eq(&hilbert_series_gr(d, e, false), opts.order)) {
        return Outcome::Fail("w = 1 does not give (1+(d+e-2)z)/(1-z)^2".into());
    }
    if !tri!(tri!(bi.set_z_one()).series_eq(&hilbert_series_r(d, e).swap_variables(), opts.order)) {
        return Outcome::Fail("z = 1 does not give HS_R(w)".into());
    }
    // slices of z^u are complete once u(e+1) <= order
    let ex = tri!(bi.expand(opts.order));
    let top = opts.order / (e + 1);
    for u in 0..=top {
        let slice = IntPoly::from_terms(
            ex.z_slice(u)
                .iter()
                .enumerate()
                .map(|(w, &c)| ((0, w as u32), c)),
        );
        if slice != gr_z_coefficient(d, e, u) {
            return Outcome::Fail(format!("coefficient of z^{u} differs from the closed form"));
        }
    }
    Outcome::Pass(format!(
        "both specializations hold; z-slices match through z^{top}"
    ))
}

fn check_poincare(curve: &CurveData) -> Outcome {
    let (d, e) = (curve.d(), curve.e());
    let order = 20u32;
    let graded = poincare_series(d, e, true);
    let ungraded = poincare_series(d, e, false);
    if !tri!(tri!(graded.set_w_one()).series_eq(&ungraded, order)) {
        return Outcome::Fail("w = 1 does not give the ungraded series".into());
    }
    let product = tri!(graded.mul(&hilbert_series_gr(d, e, true).negate_z()));
    let one = RationalSeries::polynomial(IntPoly::one());
    if !tri!(product.series_eq(&one, order)) {
        return Outcome::Fail("Poin(z, w) * HS_gr(-z, w) is not 1".into());
    }
    let totals = tri!(ungraded.expand(order)).z_coefficients();
    if let Some(i) = (0..=order).find(|&i| totals[i as usize] != poincare_betti(d, e, i)) {
        return Outcome::Fail(format!("total Betti number beta_{i} disagrees"));
    }
    // beta_(i, ei) sits in total degree i(e+1)
    const STRAND_STEPS: u32 = 4;
    if e >= 2 {
        let ex = tri!(graded.expand(STRAND_STEPS * (e + 1)));
        for i in 0..=STRAND_STEPS {
            let (lin, top) = strand_bettis(d, e, i);
            if ex.get(i, i) != Some(lin) || ex.get(i, e * i) != Some(top) {
                return Outcome::Fail(format!("strand values at i = {i} disagree"));
            }
        }
    }
    Outcome::Pass(format!(
        "reciprocity and totals hold to order {order}{}",
        if e >= 2 {
            "; strands match through i = 4"
        } else {
            ""
        }
    ))
}

fn check_golod(curve: &CurveData, opts: &VerifyOptions) -> Outcome {
    let r = tri!(golod_check(curve.d(), curve.e(), opts.golod_order));
    verdict(
        r.passed(),
        format!("Golod bound attained to order {}", r.order),
        format!("{r:?}"),
    )
}

fn check_non_normal(curve: &CurveData) -> Outcome {
    let (d, e) = (curve.d(), curve.e());
    let sg = curve.semigroup();
    let td = sg.member((0, d));
    let tde = sg.member((0, d * e));
    if e >= 2 {
        verdict(
            !td && tde,
            format!("t^{d} is missing while t^{} is present", d * e),
            format!("membership of t^{d}: {td}, t^{}: {tde}", d * e),
        )
    } else {
        verdict(
            td,
            format!("e = 1 and t^{d} is present"),
            format!("t^{d} is missing"),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn families_3_2() {
        let c = CurveData::build(3, 2).unwrap();
        let fam = initial_ideal_families(&c);
        assert_eq!(fam.len(), 6);
        let names: BTreeSet<String> = fam
            .iter()
            .map(|m| m.display(c.ambient()).to_string())
            .collect();
        let want: BTreeSet<String> = ["x_1^2", "x_0*y_0", "x_1*y_0", "x_0*y_1", "x_1*y_1", "y_0^2"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        assert_eq!(names, want);
    }

    #[test]
    fn cell_3_2_passes_everything() {
        let r = verify_cell(3, 2, &VerifyOptions::default());
        assert_eq!(r.checks.len(), 10);
        for c in &r.checks {
            assert_eq!(c.status, Status::Pass, "{}: {}", c.name, c.detail);
        }
    }

    #[test]
    fn caps_skip() {
        let opts = VerifyOptions {
            groebner_cap: 4,
            ..VerifyOptions::default()
        };
        let r = verify_cell(3, 2, &opts);
        let skipped: Vec<&str> = r
            .checks
            .iter()
            .filter(|c| c.status == Status::Skipped)
            .map(|c| c.name.as_str())
            .collect();
        assert_eq!(skipped, ["determinantal", "groebner", "assoc_graded"]);
        assert!(r.passed());
    }

    #[test]
    fn budget_exhaustion_skips() {
        let opts = VerifyOptions {
            budget: BuchbergerOptions { max_pairs: 2 },
            ..VerifyOptions::default()
        };
        let r = verify_cell(3, 2, &opts);
        assert_eq!(r.checks[0].status, Status::Skipped);
    }

    #[test]
    fn grid_order() {
        assert_eq!(grid(2, 2), vec![(1, 1), (1, 2), (2, 1), (2, 2)]);
    }
}
