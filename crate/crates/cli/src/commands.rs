use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;
use wrc_core::grobner::{is_groebner_basis, leading_monomial_ideal, GrobnerError};
use wrc_core::invariants::{
    betti_table_en, hilbert_series_gr, hilbert_series_r, poincare_series, IntPoly, SeriesError,
};
use wrc_core::resolution::{betti_from_resolution, resolve_k, Resolution, ResolutionError};
use wrc_core::verify::{grid, run_grid, Status, VerifyOptions};
use wrc_core::{Coeff, CurveData, MatrixVariant, Polynomial};

use crate::args::{Cell, Format, Output, Variant, VerifyArgs};
use crate::error::CliError;

fn curve(cell: &Cell) -> Result<CurveData, CliError> {
    CurveData::build(cell.d, cell.e).map_err(|e| CliError::Param(e.to_string()))
}

fn formats(out: &Output, allowed: &[Format], what: &str) -> Result<(), CliError> {
    if allowed.contains(&out.format) {
        Ok(())
    } else {
        Err(CliError::Param(format!(
            "{what} supports --format {}",
            allowed
                .iter()
                .map(|f| format!("{f:?}").to_lowercase())
                .collect::<Vec<_>>()
                .join(", ")
        )))
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}

fn to_csv<R: Serialize>(header: &[&str], rows: impl IntoIterator<Item = R>) -> String {
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.serialize(r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush to memory")).expect("csv is utf-8")
}

fn series_err(e: SeriesError) -> CliError {
    match e {
        SeriesError::Overflow { .. } | SeriesError::NumeratorOverflow => {
            CliError::Exhausted(format!("{e}; lower --order"))
        }
        SeriesError::OrderTooSmall { .. } => CliError::Param(e.to_string()),
        other => CliError::Internal(other.to_string()),
    }
}

fn grobner_err(e: GrobnerError) -> CliError {
    match e {
        GrobnerError::BudgetExceeded { .. } => CliError::Exhausted(e.to_string()),
        other => CliError::Internal(other.to_string()),
    }
}

pub fn cmd_curve(cell: &Cell, variant: Variant, out: &Output) -> Result<String, CliError> {
    formats(out, &[Format::Text, Format::Json], "curve")?;
    let c = curve(cell)?;
    let m = c.matrix(variant.into());
    let vars = m.ambient().clone();
    let images = c.phi_images();
    if out.format == Format::Json {
        return Ok(to_json(&json!({
            "d": c.d(),
            "e": c.e(),
            "variables": vars.names().iter().zip(vars.weights())
                .map(|(n, w)| json!({"name": n, "weight": w})).collect::<Vec<_>>(),
            "images": c.series_w().iter().enumerate()
                .map(|(k, (s, t))| json!({"variable": vars.name(k), "s": s, "t": t}))
                .collect::<Vec<_>>(),
            "matrix": {
                "variant": format!("{:?}", MatrixVariant::from(variant)),
                "top": m.top().iter().map(|p| p.to_string()).collect::<Vec<_>>(),
                "bottom": m.bottom().iter().map(|p| p.to_string()).collect::<Vec<_>>(),
            },
        })));
    }
    let mut s = String::new();
    writeln!(s, "weighted rational curve of type ({}, {})", c.d(), c.e()).unwrap();
    let names = |w: u32| {
        vars.names()
            .iter()
            .zip(vars.weights())
            .filter(|(_, &x)| x == w)
            .map(|(n, _)| n.as_str())
            .collect::<Vec<_>>()
            .join(" ")
    };
    if c.e() == 1 {
        writeln!(s, "variables (degree 1): {}", names(1)).unwrap();
    } else {
        writeln!(s, "variables (degree 1): {}", names(1)).unwrap();
        writeln!(s, "variables (degree {}): {}", c.e(), names(c.e())).unwrap();
    }
    writeln!(s, "parametrization:").unwrap();
    for (k, p) in images.iter().enumerate() {
        writeln!(s, "  {} -> {}", vars.name(k), p).unwrap();
    }
    writeln!(s, "matrix {:?}:", MatrixVariant::from(variant)).unwrap();
    writeln!(s, "{m}").unwrap();
    Ok(s)
}

pub fn cmd_gb(
    cell: &Cell,
    check: bool,
    variant: Variant,
    out: &Output,
) -> Result<String, CliError> {
    formats(out, &[Format::Text, Format::Json], "gb")?;
    let c = curve(cell)?;
    let basis = c.minors_basis(variant.into()).map_err(grobner_err)?;
    let lead = leading_monomial_ideal(&basis).map_err(grobner_err)?;
    let vars = basis.ambient().clone();
    let groebner = if check {
        Some(
            is_groebner_basis(&basis)
                .map_err(grobner_err)?
                .is_groebner(),
        )
    } else {
        None
    };
    let lead_strs: Vec<String> = lead
        .gens()
        .iter()
        .map(|m| m.display(&vars).to_string())
        .collect();
    if out.format == Format::Json {
        return Ok(to_json(&json!({
            "d": c.d(),
            "e": c.e(),
            "variant": format!("{:?}", MatrixVariant::from(variant)),
            "generators": basis.gens().iter()
                .map(|g| g.display_with(basis.order()).to_string()).collect::<Vec<_>>(),
            "initial_ideal": lead_strs,
            "groebner": groebner,
        })));
    }
    let mut s = String::new();
    if let Some(ok) = groebner {
        writeln!(
            s,
            "GROEBNER: {ok}, {} generators, initial ideal: {} monomials",
            basis.len(),
            lead.len()
        )
        .unwrap();
        return Ok(s);
    }
    writeln!(
        s,
        "2x2 minors of {:?} under <_w, leading term first:",
        MatrixVariant::from(variant)
    )
    .unwrap();
    for g in basis.gens() {
        writeln!(s, "  {}", g.display_with(basis.order())).unwrap();
    }
    writeln!(s, "initial ideal: ({})", lead_strs.join(", ")).unwrap();
    Ok(s)
}

pub fn cmd_hilbert(cell: &Cell, order: u32, out: &Output) -> Result<String, CliError> {
    let c = curve(cell)?;
    let hs = hilbert_series_r(c.d(), c.e());
    let coeffs = hs.expand(order).map_err(series_err)?.z_coefficients();
    Ok(match out.format {
        Format::Json => to_json(&json!({
            "d": c.d(),
            "e": c.e(),
            "order": order,
            "series": hs,
            "coefficients": coeffs,
        })),
        Format::Csv => to_csv(&["degree", "value"], coeffs.iter().enumerate()),
        Format::Text => {
            let list: Vec<String> = coeffs.iter().map(|x| x.to_string()).collect();
            format!("HS_R(z) = {hs}\nh(0..{order}): {}\n", list.join(" "))
        }
    })
}

pub fn cmd_betti(cell: &Cell, out: &Output) -> Result<String, CliError> {
    let c = curve(cell)?;
    let table = betti_table_en(c.d(), c.e());
    Ok(match out.format {
        Format::Json => to_json(&table),
        Format::Csv => to_csv(
            &["i", "j", "value"],
            table.entries().map(|b| (b.i, b.j, b.value)),
        ),
        Format::Text => table.render(),
    })
}

/// Nonzero coefficients grouped by the power of `z`, as polynomials in `w`.
fn by_z_rows(terms: &[wrc_core::invariants::SeriesTerm]) -> Vec<(u32, IntPoly)> {
    let mut rows: Vec<(u32, IntPoly)> = Vec::new();
    for t in terms {
        if rows.last().map(|r| r.0) != Some(t.z) {
            rows.push((t.z, IntPoly::zero()));
        }
        rows.last_mut().unwrap().1.add_term(0, t.w, t.c);
    }
    rows
}

fn bigraded_output(
    name: &str,
    series: &wrc_core::RationalSeries,
    order: u32,
    out: &Output,
    extra: serde_json::Value,
) -> Result<String, CliError> {
    let mut terms = series.expand(order).map_err(series_err)?.nonzero();
    terms.sort_by_key(|t| (t.z, t.w));
    Ok(match out.format {
        Format::Json => to_json(&json!({
            "series": series,
            "order": order,
            "terms": terms,
            "extra": extra,
        })),
        Format::Csv => to_csv(&["z", "w", "c"], terms.iter().map(|t| (t.z, t.w, t.c))),
        Format::Text => {
            let mut s = format!("{name} = {series}\ncoefficients through total degree {order}:\n");
            for (u, p) in by_z_rows(&terms) {
                writeln!(s, "  z^{u}: {p}").unwrap();
            }
            s
        }
    })
}

pub fn cmd_gr(cell: &Cell, order: u32, out: &Output) -> Result<String, CliError> {
    let c = curve(cell)?;
    let hs = hilbert_series_gr(c.d(), c.e(), true);
    let standard = hilbert_series_gr(c.d(), c.e(), false);
    let mut s = bigraded_output(
        "HS_gr(z, w)",
        &hs,
        order,
        out,
        json!({ "standard": standard }),
    )?;
    if out.format == Format::Text {
        writeln!(s, "standard grading: {standard}").unwrap();
    }
    Ok(s)
}

pub fn cmd_poincare(
    cell: &Cell,
    order: u32,
    ungraded: bool,
    out: &Output,
) -> Result<String, CliError> {
    let c = curve(cell)?;
    if ungraded {
        let p = poincare_series(c.d(), c.e(), false);
        let totals = p.expand(order).map_err(series_err)?.z_coefficients();
        return Ok(match out.format {
            Format::Json => to_json(&json!({"series": p, "order": order, "coefficients": totals})),
            Format::Csv => to_csv(&["i", "rank"], totals.iter().enumerate()),
            Format::Text => {
                let list: Vec<String> = totals.iter().map(|x| x.to_string()).collect();
                format!("Poin(z) = {p}\nranks 0..{order}: {}\n", list.join(" "))
            }
        });
    }
    let p = poincare_series(c.d(), c.e(), true);
    bigraded_output("Poin(z, w)", &p, order, out, serde_json::Value::Null)
}

fn resolution_or_partial(
    c: &CurveData,
    steps: u32,
    cap: Option<u32>,
) -> Result<Resolution, CliError> {
    match resolve_k(c, steps, cap) {
        Ok(r) => Ok(r),
        Err(ResolutionError::NoSteps) => Err(CliError::Param("--steps must be at least 1".into())),
        Err(e @ ResolutionError::IncompleteResolution { .. }) => {
            Err(CliError::Exhausted(format!("{e}; raise --degree-cap")))
        }
        Err(e) => Err(CliError::Internal(e.to_string())),
    }
}

/// `d_(i-1)(d_i(v))` for random `v` with standard-monomial coordinates;
/// returns how many combinations were tried, or the first failing step.
pub fn random_d_squared(res: &Resolution, seed: u64, trials: usize) -> Result<usize, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let basis = res.basis();
    let steps = res.steps().len() as u32;
    let mut tried = 0;
    for _ in 0..trials {
        if steps < 2 {
            break;
        }
        let i = rng.gen_range(2..=steps);
        let v: Vec<Polynomial> = (0..res.rank(i))
            .map(|_| {
                let a = rng.gen_range(0..=2u32.min(basis.max_degree()));
                let mons = basis.degree(a);
                let m = &mons[rng.gen_range(0..mons.len())];
                let c = Coeff::from_integer(rng.gen_range(-3i64..=3).into());
                Polynomial::monomial(res.ambient().clone(), m.clone(), c)
            })
            .collect();
        let once = res
            .apply(i, &v)
            .map_err(|e| CliError::Internal(e.to_string()))?;
        let twice = res
            .apply(i - 1, &once)
            .map_err(|e| CliError::Internal(e.to_string()))?;
        if twice.iter().any(|p| !p.is_zero()) {
            return Err(CliError::Failed(format!(
                "d_{} o d_{i} is nonzero on a random element",
                i - 1
            )));
        }
        tried += 1;
    }
    Ok(tried)
}

pub fn cmd_resolve(
    cell: &Cell,
    steps: u32,
    degree_cap: Option<u32>,
    check: bool,
    seed: u64,
    out: &Output,
) -> Result<String, CliError> {
    let c = curve(cell)?;
    let res = resolution_or_partial(&c, steps, degree_cap)?;
    let mut checks = Vec::new();
    if check {
        let sq = res
            .check_d_squared()
            .map_err(|e| CliError::Internal(e.to_string()))?;
        if let Some((i, col)) = sq {
            return Err(CliError::Failed(format!(
                "d_{} o d_{i} is nonzero on generator {col}",
                i - 1
            )));
        }
        if let Some((i, row, col)) = res.check_minimal() {
            return Err(CliError::Failed(format!(
                "d_{i} has a unit entry at ({row}, {col})"
            )));
        }
        let tried = random_d_squared(&res, seed, 100)?;
        checks.push(format!(
            "D_SQUARED: true (all generators, {tried} random elements, seed {seed})"
        ));
        checks.push("MINIMAL: true".to_string());
    }
    Ok(match out.format {
        Format::Json => to_json(&res.export()),
        Format::Csv => to_csv(
            &["step", "row", "col", "entry"],
            (1..=res.steps().len() as u32).flat_map(|i| {
                res.entries(i)
                    .into_iter()
                    .map(move |(r, col, p)| (i, r, col, p.to_string()))
            }),
        ),
        Format::Text => {
            let mut s = format!(
                "resolution of k over R for ({}, {}): {} steps, degree cap {}\n",
                c.d(),
                c.e(),
                steps,
                res.degree_cap()
            );
            for step in res.steps() {
                let twists: Vec<String> =
                    step.source_twists().iter().map(|t| t.to_string()).collect();
                writeln!(
                    s,
                    "F_{}: rank {}, twists {}",
                    step.index(),
                    step.rank(),
                    twists.join(" ")
                )
                .unwrap();
            }
            s.push_str(&betti_from_resolution(&res).render());
            for line in checks {
                writeln!(s, "{line}").unwrap();
            }
            s
        }
    })
}

pub fn cmd_lattice(cell: &Cell, order: u32, out: &Output) -> Result<String, CliError> {
    let c = curve(cell)?;
    let pts = c.lattice_grid(order);
    Ok(match out.format {
        Format::Json => to_json(&pts),
        Format::Csv => to_csv(&["i", "j", "member"], pts.iter()),
        Format::Text => {
            let mut s =
                String::from("o = in the semigroup, . = gap; point (i, j) with i + j = d*a\n");
            for a in 0..=order {
                let row: String = pts
                    .iter()
                    .filter(|p| p.i + p.j == c.d() * a)
                    .map(|p| if p.member { 'o' } else { '.' })
                    .collect();
                writeln!(s, "a={a:<3} {row}").unwrap();
            }
            let gaps: Vec<String> = pts
                .iter()
                .filter(|p| !p.member)
                .map(|p| format!("({},{})", p.i, p.j))
                .collect();
            writeln!(
                s,
                "gaps: {}",
                if gaps.is_empty() {
                    "none".into()
                } else {
                    gaps.join(" ")
                }
            )
            .unwrap();
            s
        }
    })
}

#[derive(Debug, Serialize)]
struct Summary {
    cells: usize,
    pass: usize,
    fail: usize,
    skipped: usize,
}

/// Returns the rendered report and whether any check failed.
pub fn cmd_verify(args: &VerifyArgs) -> Result<(String, bool), CliError> {
    let cells = match (args.d, args.e) {
        (Some(d), Some(e)) => {
            CurveData::build(d, e).map_err(|x| CliError::Param(x.to_string()))?;
            vec![(d, e)]
        }
        _ => {
            if args.d_max < 1 || args.e_max < 1 {
                return Err(CliError::Param(
                    "--d-max and --e-max must be at least 1".into(),
                ));
            }
            grid(args.d_max, args.e_max)
                .into_iter()
                .filter(|(d, e)| d + e <= args.sum_max)
                .collect()
        }
    };
    if args.order < 10 {
        return Err(CliError::Param("--order must be at least 10".into()));
    }
    let mut opts = VerifyOptions {
        groebner_cap: args.degree_cap,
        series_cap: args.series_cap,
        order: args.order,
        ..VerifyOptions::default()
    };
    if let Some(b) = args.budget {
        opts.budget.max_pairs = b;
    }
    let reports = run_grid(&cells, &opts);
    let count = |s: Status| {
        reports
            .iter()
            .flat_map(|r| &r.checks)
            .filter(|c| c.status == s)
            .count()
    };
    let summary = Summary {
        cells: reports.len(),
        pass: count(Status::Pass),
        fail: count(Status::Fail),
        skipped: count(Status::Skipped),
    };
    let failed = summary.fail > 0;
    let body = match args.out.format {
        Format::Json => to_json(&json!({ "summary": summary, "cells": reports })),
        Format::Csv => to_csv(
            &["d", "e", "check", "status", "detail"],
            reports.iter().flat_map(|r| {
                r.checks
                    .iter()
                    .map(move |c| (r.d, r.e, c.name.clone(), c.status, c.detail.clone()))
            }),
        ),
        Format::Text => {
            let mut s = String::new();
            for r in &reports {
                for c in &r.checks {
                    writeln!(
                        s,
                        "({},{}) {:<15} {:<7} {}",
                        r.d, r.e, c.name, c.status, c.detail
                    )
                    .unwrap();
                }
            }
            s.push_str(&serde_json::to_string(&summary).expect("plain data"));
            s.push('\n');
            s
        }
    };
    Ok((body, failed))
}
