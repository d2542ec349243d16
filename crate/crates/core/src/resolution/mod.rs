//! Minimal graded free resolution of the residue field `k` over `R = S/I`,
//! truncated in homological and internal degree.
//!
//! `R` is graded by the semigroup of exponents of its monomials, with every
//! nonzero piece one-dimensional, and each differential is homogeneous for
//! that grading. A generator `g` of `F_i` has a multidegree `alpha_g` and
//! `d_i(g) = sum c * m_(alpha_g - alpha_g') e_g'` with scalar `c` and `m_x`
//! the standard monomial of multidegree `x`. Syzygies are found one
//! multidegree at a time as kernels of small rational matrices.

mod basis;
mod linalg;

use std::collections::HashMap;

use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::curve::{CurveData, CurveError};
use crate::grobner::GrobnerError;
use crate::invariants::BettiTable;
use crate::poly::{Coeff, PolyError, Polynomial, VarSet};

pub use basis::GradedBasis;
use linalg::{nullspace, primitive, Echelon};

/// `(s, t)` exponents of a monomial's image; internal degree is
/// `(s + t) / d`.
pub type Multidegree = (u64, u64);

#[derive(Debug, thiserror::Error)]
pub enum ResolutionError {
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Grobner(#[from] GrobnerError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("need at least one step")]
    NoSteps,
    #[error("degree {degree} has {found} standard monomials, expected {expected}")]
    BasisMismatch {
        degree: u32,
        found: u64,
        expected: u64,
    },
    #[error("coordinate ring is not a semigroup ring as expected: {0}")]
    StructureMismatch(String),
    #[error(
        "degree cap {cap} reached: step {step} has a generator in degree {degree}, \
         so generators above the cap may be missing"
    )]
    IncompleteResolution {
        step: u32,
        degree: u32,
        cap: u32,
        partial: Box<Resolution>,
    },
}

/// The differential `d_i : F_i -> F_(i-1)`.
#[derive(Debug, Clone)]
pub struct ResolutionStep {
    index: u32,
    generators: Vec<Multidegree>,
    degrees: Vec<u32>,
    columns: Vec<Vec<(usize, Coeff)>>,
}

impl ResolutionStep {
    /// Homological degree `i` of the source.
    pub fn index(&self) -> u32 {
        self.index
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn multidegrees(&self) -> &[Multidegree] {
        &self.generators
    }

    /// Internal degrees of the source generators, nondecreasing.
    pub fn source_degrees(&self) -> &[u32] {
        &self.degrees
    }

    /// `-degree` for each generator, as in `R(-a)`.
    pub fn source_twists(&self) -> Vec<i64> {
        self.degrees.iter().map(|&a| -i64::from(a)).collect()
    }

    /// Nonzero scalars of column `g`, keyed by target generator.
    pub fn column(&self, g: usize) -> &[(usize, Coeff)] {
        &self.columns[g]
    }
}

#[derive(Debug)]
pub struct Resolution {
    d: u32,
    e: u32,
    degree_cap: u32,
    basis: GradedBasis,
    steps: Vec<ResolutionStep>,
}

/// `e * steps + d + e`.
pub fn default_degree_cap(d: u32, e: u32, steps: u32) -> u32 {
    e * steps + d + e
}

/// Resolution of `k` through `steps` differentials, computed in internal
/// degrees `<= degree_cap` (default [`default_degree_cap`]). Everything
/// returned is exact up to the cap; when a step has generators within `e`
/// of the cap the result comes back inside
/// [`ResolutionError::IncompleteResolution`].
pub fn resolve_k(
    curve: &CurveData,
    steps: u32,
    degree_cap: Option<u32>,
) -> Result<Resolution, ResolutionError> {
    if steps == 0 {
        return Err(ResolutionError::NoSteps);
    }
    let (d, e) = (curve.d(), curve.e());
    let cap = degree_cap.unwrap_or_else(|| default_degree_cap(d, e, steps));
    let basis = GradedBasis::new(curve, cap)?;

    // levels[k] = multidegrees of the generators of F_k
    let mut levels: Vec<Vec<Multidegree>> = vec![vec![(0, 0)]];
    let mut out: Vec<ResolutionStep> = Vec::with_capacity(steps as usize);
    let mut incomplete: Option<(u32, u32)> = None;
    for i in 1..=steps {
        let k = i as usize;
        let below = Slice {
            source: &levels[k - 1],
            target: if k >= 2 { &levels[k - 2] } else { &[] },
            columns: out.last().map(|s| s.columns.as_slice()).unwrap_or(&[]),
        };
        let mut gens: Vec<Multidegree> = Vec::new();
        let mut degrees: Vec<u32> = Vec::new();
        let mut cols: Vec<Vec<(usize, Coeff)>> = Vec::new();
        for a in 0..=cap {
            let found: Vec<Vec<Vec<(usize, Coeff)>>> = basis
                .multidegrees(a)
                .par_iter()
                .map(|&beta| new_generators(&basis, beta, &below, &gens, &cols))
                .collect::<Result<_, _>>()?;
            for (&beta, new) in basis.multidegrees(a).iter().zip(found) {
                for col in new {
                    gens.push(beta);
                    degrees.push(a);
                    cols.push(col);
                }
            }
        }
        if let Some(&top) = degrees.last() {
            if top + e > cap && incomplete.is_none() {
                incomplete = Some((i, top));
            }
        }
        levels.push(gens.clone());
        out.push(ResolutionStep {
            index: i,
            generators: gens,
            degrees,
            columns: cols,
        });
    }

    let res = Resolution {
        d,
        e,
        degree_cap: cap,
        basis,
        steps: out,
    };
    match incomplete {
        Some((step, degree)) => Err(ResolutionError::IncompleteResolution {
            step,
            degree,
            cap,
            partial: Box::new(res),
        }),
        None => Ok(res),
    }
}

fn sub(a: Multidegree, b: Multidegree) -> Option<Multidegree> {
    Some((a.0.checked_sub(b.0)?, a.1.checked_sub(b.1)?))
}

/// The known differential `d_(i-1) : F_(i-1) -> F_(i-2)`; for `i = 1` the
/// target is empty and the map stands for the augmentation `R -> k`.
struct Slice<'a> {
    source: &'a [Multidegree],
    target: &'a [Multidegree],
    columns: &'a [Vec<(usize, Coeff)>],
}

/// New generators of `F_i` in multidegree `beta`: a complement of the image
/// of the lower-degree generators found so far inside the kernel of
/// `d_(i-1)` (of the augmentation for `i = 1`).
fn new_generators(
    basis: &GradedBasis,
    beta: Multidegree,
    below: &Slice<'_>,
    gens: &[Multidegree],
    cols: &[Vec<(usize, Coeff)>],
) -> Result<Vec<Vec<(usize, Coeff)>>, ResolutionError> {
    if beta == (0, 0) {
        // (F_0)_0 maps isomorphically onto k, and F_i lives in positive
        // degrees for i >= 1
        return Ok(Vec::new());
    }
    // coordinates of (F_(i-1))_beta: generators g with beta - alpha_g in Lambda
    let src: Vec<usize> = (0..below.source.len())
        .filter(|&g| sub(beta, below.source[g]).is_some_and(|x| basis.contains(x)))
        .collect();
    if src.is_empty() {
        return Ok(Vec::new());
    }
    let pos: HashMap<usize, usize> = src.iter().enumerate().map(|(k, &g)| (g, k)).collect();

    let mut row_of: HashMap<usize, usize> = HashMap::new();
    let mut rows: Vec<Vec<Coeff>> = Vec::new();
    for (k, &g) in src.iter().enumerate() {
        let lam = sub(beta, below.source[g]).expect("filtered");
        for (target, c) in below.columns.get(g).map(Vec::as_slice).unwrap_or(&[]) {
            let mu = sub(below.source[g], below.target[*target]).ok_or_else(|| {
                ResolutionError::StructureMismatch("inhomogeneous differential".into())
            })?;
            let r = *row_of.entry(*target).or_insert_with(|| {
                rows.push(vec![Coeff::zero(); src.len()]);
                rows.len() - 1
            });
            rows[r][k] += c * basis.product_coefficient(lam, mu)?;
        }
    }
    let kernel = nullspace(&rows, src.len());
    if kernel.is_empty() {
        return Ok(Vec::new());
    }

    let mut ech = Echelon::default();
    for (h, &alpha) in gens.iter().enumerate() {
        let Some(lam) = sub(beta, alpha) else {
            continue;
        };
        if lam == (0, 0) || !basis.contains(lam) {
            continue;
        }
        let mut v = vec![Coeff::zero(); src.len()];
        for (g, c) in &cols[h] {
            let mu = sub(alpha, below.source[*g]).expect("homogeneous");
            v[pos[g]] += c * basis.product_coefficient(lam, mu)?;
        }
        ech.insert(v);
    }
    let mut new = Vec::new();
    for v in kernel {
        if let Some(rem) = ech.insert(v) {
            new.push(
                primitive(&rem)
                    .into_iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(k, c)| (src[k], c))
                    .collect(),
            );
        }
    }
    Ok(new)
}

impl Resolution {
    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn degree_cap(&self) -> u32 {
        self.degree_cap
    }

    pub fn basis(&self) -> &GradedBasis {
        &self.basis
    }

    pub fn ambient(&self) -> &std::sync::Arc<VarSet> {
        self.basis.groebner_basis().ambient()
    }

    /// The differentials `d_1, d_2, ...`.
    pub fn steps(&self) -> &[ResolutionStep] {
        &self.steps
    }

    /// Rank of `F_i` (`F_0 = R`).
    pub fn rank(&self, i: u32) -> usize {
        match i {
            0 => 1,
            _ => self.steps[i as usize - 1].rank(),
        }
    }

    fn target_multidegrees(&self, i: u32) -> &[Multidegree] {
        const ORIGIN: [Multidegree; 1] = [(0, 0)];
        match i {
            1 => &ORIGIN,
            _ => &self.steps[i as usize - 2].generators,
        }
    }

    /// Entry `(row, col)` of `d_i` as a polynomial in normal form.
    pub fn entry(&self, i: u32, row: usize, col: usize) -> Polynomial {
        let step = &self.steps[i as usize - 1];
        let c = step.columns[col]
            .iter()
            .find(|(r, _)| *r == row)
            .map(|(_, c)| c.clone());
        match c {
            None => Polynomial::zero(self.ambient().clone()),
            Some(c) => {
                let lam = sub(step.generators[col], self.target_multidegrees(i)[row])
                    .expect("homogeneous");
                self.basis
                    .polynomial_at(lam)
                    .expect("entry multidegree lies in the basis")
                    .scale(&c)
            }
        }
    }

    /// Nonzero entries of `d_i` as `(row, col, polynomial)`, column by
    /// column.
    pub fn entries(&self, i: u32) -> Vec<(usize, usize, Polynomial)> {
        let step = &self.steps[i as usize - 1];
        let mut out = Vec::new();
        for (col, entries) in step.columns.iter().enumerate() {
            for (row, _) in entries {
                out.push((*row, col, self.entry(i, *row, col)));
            }
        }
        out
    }

    /// `d_i` applied to an element of `F_i` given by its coordinates in `R`,
    /// with products reduced to normal form.
    pub fn apply(&self, i: u32, v: &[Polynomial]) -> Result<Vec<Polynomial>, ResolutionError> {
        let step = &self.steps[i as usize - 1];
        assert_eq!(
            v.len(),
            step.rank(),
            "vector length must match rank of F_{i}"
        );
        let mut out =
            vec![Polynomial::zero(self.ambient().clone()); self.target_multidegrees(i).len()];
        for (col, entries) in step.columns.iter().enumerate() {
            if v[col].is_zero() {
                continue;
            }
            for (row, _) in entries {
                let prod = v[col].try_mul(&self.entry(i, *row, col))?;
                out[*row] = out[*row].try_add(&prod)?;
            }
        }
        out.iter().map(|p| self.basis.normal_form(p)).collect()
    }

    /// `d_(i-1) o d_i = 0` for every computed `i >= 2`, checked on each
    /// generator with polynomial products and normal forms. Returns the first
    /// failure as `(i, column)`.
    pub fn check_d_squared(&self) -> Result<Option<(u32, usize)>, ResolutionError> {
        for i in 2..=self.steps.len() as u32 {
            let rank = self.rank(i);
            for col in 0..rank {
                let mut unit = vec![Polynomial::zero(self.ambient().clone()); rank];
                unit[col] = Polynomial::one(self.ambient().clone());
                let once = self.apply(i, &unit)?;
                let twice = self.apply(i - 1, &once)?;
                if twice.iter().any(|p| !p.is_zero()) {
                    return Ok(Some((i, col)));
                }
            }
        }
        Ok(None)
    }

    /// No differential has a nonzero constant entry. Returns the first
    /// offending `(i, row, col)`.
    pub fn check_minimal(&self) -> Option<(u32, usize, usize)> {
        for step in &self.steps {
            let targets = self.target_multidegrees(step.index);
            for (col, entries) in step.columns.iter().enumerate() {
                for (row, c) in entries {
                    if !c.is_zero() && targets[*row] == step.generators[col] {
                        return Some((step.index, *row, col));
                    }
                }
            }
        }
        None
    }

    pub fn export(&self) -> ResolutionExport {
        ResolutionExport {
            d: self.d,
            e: self.e,
            degree_cap: self.degree_cap,
            steps: self
                .steps
                .iter()
                .map(|s| StepExport {
                    index: s.index,
                    rank: s.rank(),
                    twists: s.source_twists(),
                    multidegrees: s.generators.clone(),
                    entries: self
                        .entries(s.index)
                        .into_iter()
                        .map(|(row, col, p)| EntryExport {
                            row,
                            col,
                            entry: p.to_string(),
                        })
                        .collect(),
                })
                .collect(),
        }
    }
}

/// `beta_(i,j)` = number of generators of `F_i` in degree `j`.
pub fn betti_from_resolution(res: &Resolution) -> BettiTable {
    let mut t = BettiTable::new();
    t.add(0, 0, 1);
    for step in &res.steps {
        for &a in &step.degrees {
            t.add(step.index, a, 1);
        }
    }
    t
}

/// `(row, col, entry)` of a differential.
pub type Entry = (usize, usize, Polynomial);

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolutionExport {
    pub d: u32,
    pub e: u32,
    pub degree_cap: u32,
    pub steps: Vec<StepExport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepExport {
    pub index: u32,
    pub rank: usize,
    pub twists: Vec<i64>,
    pub multidegrees: Vec<Multidegree>,
    pub entries: Vec<EntryExport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryExport {
    pub row: usize,
    pub col: usize,
    pub entry: String,
}

impl ResolutionExport {
    /// Parses every entry back into a polynomial over `ambient`.
    pub fn parse_entries(
        &self,
        ambient: &std::sync::Arc<VarSet>,
    ) -> Result<Vec<Vec<Entry>>, PolyError> {
        self.steps
            .iter()
            .map(|s| {
                s.entries
                    .iter()
                    .map(|x| Ok((x.row, x.col, Polynomial::parse(&x.entry, ambient.clone())?)))
                    .collect()
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn resolve(d: u32, e: u32, steps: u32) -> Resolution {
        resolve_k(&CurveData::build(d, e).unwrap(), steps, None).unwrap()
    }

    #[test]
    fn first_step_is_the_variables() {
        for (d, e) in [(1, 1), (1, 2), (3, 2), (2, 3)] {
            let r = resolve(d, e, 1);
            assert_eq!(r.rank(1), (d + e) as usize);
            let mut degs = r.steps()[0].source_degrees().to_vec();
            degs.sort();
            let want: Vec<u32> = (0..d).map(|_| 1).chain((0..e).map(|_| e)).collect();
            assert_eq!(degs, want);
        }
    }

    #[test]
    fn weighted_line_2_steps() {
        let r = resolve(1, 2, 2);
        assert_eq!(r.steps()[0].source_twists(), vec![-1, -2, -2]);
        assert_eq!(r.steps()[1].source_twists(), vec![-3, -3, -4, -4]);
        assert_eq!(r.check_d_squared().unwrap(), None);
        assert_eq!(r.check_minimal(), None);
    }

    #[test]
    fn ranks_3_2() {
        let r = resolve(3, 2, 3);
        assert_eq!(
            (1..=3).map(|i| r.rank(i)).collect::<Vec<_>>(),
            vec![5, 16, 48]
        );
    }

    #[test]
    fn zero_steps_rejected() {
        let c = CurveData::build(2, 2).unwrap();
        assert!(matches!(
            resolve_k(&c, 0, None),
            Err(ResolutionError::NoSteps)
        ));
    }

    #[test]
    fn low_cap_reports_incomplete() {
        let c = CurveData::build(3, 2).unwrap();
        match resolve_k(&c, 2, Some(3)) {
            Err(ResolutionError::IncompleteResolution { partial, cap, .. }) => {
                assert_eq!(cap, 3);
                assert_eq!(partial.rank(1), 5);
            }
            other => panic!("expected incomplete, got {other:?}"),
        }
    }

    #[test]
    fn export_round_trip() {
        let r = resolve(1, 2, 2);
        let ex = r.export();
        let json = serde_json::to_string(&ex).unwrap();
        let back: ResolutionExport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, ex);
        let parsed = back.parse_entries(r.ambient()).unwrap();
        for (i, step) in parsed.iter().enumerate() {
            for (row, col, p) in step {
                assert_eq!(p, &r.entry(i as u32 + 1, *row, *col));
            }
        }
    }
}
