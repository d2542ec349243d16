//! Per-`(d, e)` data: the parametrization, the two-row matrices whose 2x2
//! minors cut out the curve (and its degenerations), and the affine
//! semigroup of exponents of the coordinate ring.

use std::sync::Arc;

use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::grobner::{GrobnerError, IdealBasis};
use crate::poly::{Coeff, Monomial, PolyError, Polynomial, TermOrder, TieBreak, VarSet};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CurveError {
    #[error("curve type needs d >= 1 and e >= 1, got d = {d}, e = {e}")]
    InvalidParameters { d: u32, e: u32 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MatrixVariant {
    /// The defining matrix, with `x_{d-1}^e` in column `d-1`.
    M,
    /// `x_{d-1}^e` replaced by a fresh variable `v` of degree `e`.
    Mv,
    /// `x_{d-1}^e` replaced by zero.
    M0,
}

/// Weighted rational curve of type `(d, e)`.
#[derive(Debug, Clone)]
pub struct CurveData {
    d: u32,
    e: u32,
    ambient: Arc<VarSet>,
    params: Arc<VarSet>,
    /// `(s, t)` exponents of the image of each ambient variable.
    images: Vec<(u32, u32)>,
}

impl CurveData {
    pub fn build(d: u32, e: u32) -> Result<Self, CurveError> {
        if d < 1 || e < 1 {
            return Err(CurveError::InvalidParameters { d, e });
        }
        let names = (0..d)
            .map(|i| format!("x_{i}"))
            .chain((0..e).map(|i| format!("y_{i}")));
        let weights = std::iter::repeat_n(1, d as usize).chain(std::iter::repeat_n(e, e as usize));
        let ambient = VarSet::new(names, weights).expect("generated names are valid");
        let params = VarSet::standard(["s", "t"]).expect("valid");
        let mut images = Vec::with_capacity((d + e) as usize);
        for i in 0..d {
            images.push((d - i, i));
        }
        for i in 0..e {
            images.push((e - 1 - i, e * d - (e - 1) + i));
        }
        Ok(CurveData {
            d,
            e,
            ambient,
            params,
            images,
        })
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    /// `S = k[x_0..x_{d-1}, y_0..y_{e-1}]`, `deg x_i = 1`, `deg y_i = e`.
    pub fn ambient(&self) -> &Arc<VarSet> {
        &self.ambient
    }

    /// The parameter ring `k[s, t]`.
    pub fn params(&self) -> &Arc<VarSet> {
        &self.params
    }

    pub fn num_vars(&self) -> usize {
        (self.d + self.e) as usize
    }

    pub fn x_index(&self, i: u32) -> usize {
        assert!(i < self.d);
        i as usize
    }

    pub fn y_index(&self, i: u32) -> usize {
        assert!(i < self.e);
        (self.d + i) as usize
    }

    pub fn x(&self, i: u32) -> Polynomial {
        Polynomial::var(self.ambient.clone(), self.x_index(i))
    }

    pub fn y(&self, i: u32) -> Polynomial {
        Polynomial::var(self.ambient.clone(), self.y_index(i))
    }

    /// The log complete series `W` as `(s, t)` exponent pairs, in variable
    /// order.
    pub fn series_w(&self) -> &[(u32, u32)] {
        &self.images
    }

    /// Images of the variables in `k[s, t]`.
    pub fn phi_images(&self) -> Vec<Polynomial> {
        self.images
            .iter()
            .map(|&(a, b)| {
                Polynomial::monomial(self.params.clone(), Monomial::new(vec![a, b]), Coeff::one())
            })
            .collect()
    }

    pub fn phi(&self, f: &Polynomial) -> Result<Polynomial, PolyError> {
        f.substitute(&self.phi_images())
    }

    /// `(s, t)` exponents of the image of a monomial of `S`.
    pub fn multidegree(&self, m: &Monomial) -> (u64, u64) {
        m.exponents()
            .iter()
            .zip(&self.images)
            .fold((0, 0), |(a, b), (&k, &(s, t))| {
                (
                    a + u64::from(k) * u64::from(s),
                    b + u64::from(k) * u64::from(t),
                )
            })
    }

    /// The order `<_w`: weight 0 on `x_{d-1}` and 1 elsewhere, then total
    /// degree, then revlex with `y_0 > ... > y_{e-1} > x_0 > ... > x_{d-1}`.
    pub fn order_w(&self) -> TermOrder {
        order_w_on(self.ambient.clone(), self.d, self.e)
    }

    /// `S[v]` with `v` appended last, of weight `e`.
    pub fn ambient_v(&self) -> Arc<VarSet> {
        let v = VarSet::new(["v"], [self.e]).expect("valid");
        self.ambient.concat(&v).expect("v is fresh")
    }

    pub fn matrix(&self, variant: MatrixVariant) -> TwoRowMatrix {
        let ambient = match variant {
            MatrixVariant::Mv => self.ambient_v(),
            _ => self.ambient.clone(),
        };
        let var = |i: usize| Polynomial::var(ambient.clone(), i);
        let d = self.d as usize;
        let e = self.e as usize;
        let mut top = Vec::with_capacity(d + e - 1);
        let mut bottom = Vec::with_capacity(d + e - 1);
        for c in 0..d - 1 {
            top.push(var(c));
            bottom.push(var(c + 1));
        }
        top.push(match variant {
            MatrixVariant::M => var(d - 1).pow(self.e),
            MatrixVariant::Mv => var(d + e),
            MatrixVariant::M0 => Polynomial::zero(ambient.clone()),
        });
        bottom.push(var(d));
        for j in 0..e - 1 {
            top.push(var(d + j));
            bottom.push(var(d + j + 1));
        }
        TwoRowMatrix {
            variant,
            ambient,
            top,
            bottom,
        }
    }

    /// Minors of `M` read under `<_w`.
    pub fn ideal_basis(&self) -> IdealBasis {
        self.minors_basis(MatrixVariant::M)
            .expect("minors live over the ambient")
    }

    /// Minors of `M` or `M_0` under `<_w`.
    pub fn minors_basis(&self, variant: MatrixVariant) -> Result<IdealBasis, GrobnerError> {
        let order = match variant {
            MatrixVariant::Mv => order_w_on(self.ambient_v(), self.d, self.e),
            _ => self.order_w(),
        };
        let gens = self
            .matrix(variant)
            .minors()
            .into_iter()
            .map(|m| m.poly)
            .collect();
        IdealBasis::new(gens, order)
    }

    pub fn semigroup(&self) -> SemigroupLambda {
        SemigroupLambda {
            generators: self.images.clone(),
        }
    }

    /// Semigroup elements `(i, j)` (for `s^i t^j`) with `i + j <= d * max_degree`.
    pub fn lattice_points(&self, max_degree: u32) -> Vec<(u32, u32)> {
        self.lattice_grid(max_degree)
            .into_iter()
            .filter(|p| p.member)
            .map(|p| (p.i, p.j))
            .collect()
    }

    /// Every point on the lines `i + j = d * a`, `a <= max_degree`, flagged
    /// with semigroup membership.
    pub fn lattice_grid(&self, max_degree: u32) -> Vec<LatticePoint> {
        let total = self.d * max_degree;
        let table = self.semigroup().reachable(total, total);
        let mut out = Vec::new();
        for a in 0..=max_degree {
            let sum = self.d * a;
            for j in 0..=sum {
                let i = sum - j;
                out.push(LatticePoint {
                    i,
                    j,
                    member: table[i as usize][j as usize],
                });
            }
        }
        out
    }
}

/// `<_w` on a variable set laid out as `x_0..x_{d-1}, y_0..y_{e-1}` followed
/// by any extra variables, which get weight 1 and the lowest precedence.
pub(crate) fn order_w_on(ambient: Arc<VarSet>, d: u32, e: u32) -> TermOrder {
    let n = ambient.len();
    let (d, e) = (d as usize, e as usize);
    let mut w = vec![1i64; n];
    w[d - 1] = 0;
    let ones = vec![1i64; n];
    let precedence: Vec<usize> = (d..d + e).chain(0..d).chain(d + e..n).collect();
    TermOrder::new(ambient, vec![w, ones], TieBreak::RevLex, precedence)
        .expect("<_w is a global order")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticePoint {
    pub i: u32,
    pub j: u32,
    pub member: bool,
}

/// A 2x2 minor together with the pair of columns it came from.
#[derive(Debug, Clone, PartialEq)]
pub struct Minor {
    pub cols: (usize, usize),
    pub poly: Polynomial,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TwoRowMatrix {
    variant: MatrixVariant,
    ambient: Arc<VarSet>,
    top: Vec<Polynomial>,
    bottom: Vec<Polynomial>,
}

impl TwoRowMatrix {
    pub fn from_rows(
        variant: MatrixVariant,
        top: Vec<Polynomial>,
        bottom: Vec<Polynomial>,
    ) -> Result<Self, PolyError> {
        let ambient = top
            .first()
            .or(bottom.first())
            .map(|p| p.ambient().clone())
            .ok_or(PolyError::AmbientMismatch)?;
        if top.len() != bottom.len() {
            return Err(PolyError::AmbientMismatch);
        }
        for p in top.iter().chain(&bottom) {
            if p.ambient() != &ambient {
                return Err(PolyError::AmbientMismatch);
            }
        }
        Ok(TwoRowMatrix {
            variant,
            ambient,
            top,
            bottom,
        })
    }

    pub fn variant(&self) -> MatrixVariant {
        self.variant
    }

    pub fn ambient(&self) -> &Arc<VarSet> {
        &self.ambient
    }

    pub fn ncols(&self) -> usize {
        self.top.len()
    }

    pub fn top(&self) -> &[Polynomial] {
        &self.top
    }

    pub fn bottom(&self) -> &[Polynomial] {
        &self.bottom
    }

    /// All nonzero 2x2 minors `top[i]*bottom[j] - top[j]*bottom[i]`, `i < j`.
    /// Single-term minors are normalized to coefficient +1.
    pub fn minors(&self) -> Vec<Minor> {
        let n = self.ncols();
        let mut out = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                let mut poly =
                    &(&self.top[i] * &self.bottom[j]) - &(&self.top[j] * &self.bottom[i]);
                if poly.is_zero() {
                    continue;
                }
                if poly.num_terms() == 1 {
                    let (_, c) = poly.terms().next().expect("one term");
                    let c = c.clone();
                    poly = poly.scale(&c.abs().recip());
                    if c.is_negative() {
                        poly = -&poly;
                    }
                }
                out.push(Minor { cols: (i, j), poly });
            }
        }
        out
    }
}

impl std::fmt::Display for TwoRowMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let row = |r: &[Polynomial]| r.iter().map(|p| p.to_string()).collect::<Vec<_>>();
        let (t, b) = (row(&self.top), row(&self.bottom));
        let widths: Vec<usize> = t
            .iter()
            .zip(&b)
            .map(|(x, y)| x.len().max(y.len()))
            .collect();
        for r in [&t, &b] {
            let cells: Vec<String> = r
                .iter()
                .zip(&widths)
                .map(|(c, w)| format!("{c:>w$}"))
                .collect();
            writeln!(f, "| {} |", cells.join(" "))?;
        }
        Ok(())
    }
}

/// The affine semigroup `Lambda` generated by the exponent pairs of `W`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemigroupLambda {
    pub generators: Vec<(u32, u32)>,
}

impl SemigroupLambda {
    /// Whether `s^i t^j` is a product of generators.
    pub fn member(&self, point: (u32, u32)) -> bool {
        let table = self.reachable(point.0, point.1);
        table[point.0 as usize][point.1 as usize]
    }

    /// `table[i][j]` for every `i <= max_i`, `j <= max_j`, filled by an
    /// unbounded-knapsack sweep.
    pub fn reachable(&self, max_i: u32, max_j: u32) -> Vec<Vec<bool>> {
        let (mi, mj) = (max_i as usize, max_j as usize);
        let mut table = vec![vec![false; mj + 1]; mi + 1];
        table[0][0] = true;
        // increasing i then j visits every predecessor (i - a, j - b) first
        for i in 0..=mi {
            for j in 0..=mj {
                if table[i][j] {
                    continue;
                }
                table[i][j] = self.generators.iter().any(|&(a, b)| {
                    let (a, b) = (a as usize, b as usize);
                    (a, b) != (0, 0) && a <= i && b <= j && table[i - a][j - b]
                });
            }
        }
        table
    }
}
