//! Lie algebra actions on a chart and the Poisson bivectors they induce.

mod freeness;

use thiserror::Error;

use crate::geomcalc::{self, Chart, GeomError, KForm, KMultivector, VectorField};
use crate::liealg::{yang_baxter_bracket, AlgBivector, AlgTrivector, LieAlgebra, LieError};
use crate::polyalg::linalg::Matrix;
use crate::polyalg::{MultiPoly, Rat};

pub use freeness::{generic_rank, local_freeness, Freeness, FreenessReport};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PoissonError {
    #[error("expected {expected} vector fields, got {got}")]
    FieldCount { expected: usize, got: usize },
    #[error("action is not a Lie algebra morphism on ({i},{j}): residual {residual}")]
    NotMorphism {
        i: usize,
        j: usize,
        residual: VectorField,
    },
    #[error("r does not solve the classical Yang-Baxter equation")]
    YangBaxter(AlgTrivector),
    #[error("bivector matrix is not antisymmetric at ({0},{1})")]
    NotAntisymmetric(usize, usize),
    #[error("bivector has dimension {got}, algebra has {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("probe has {got} coordinates, chart has {expected}")]
    ProbeDimension { expected: usize, got: usize },
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error(transparent)]
    Lie(#[from] LieError),
}

#[derive(Debug, Clone, PartialEq)]
pub enum MorphismVerdict {
    Pass,
    /// `[U_i, U_j] - Gamma([u_i, u_j])` is nonzero for the first such pair.
    Fail { pair: (usize, usize), residual: VectorField },
}

impl MorphismVerdict {
    pub fn passed(&self) -> bool {
        matches!(self, MorphismVerdict::Pass)
    }
}

fn combine(chart: &Chart, fields: &[VectorField], u: &[Rat]) -> VectorField {
    let mut acc = VectorField::zero(chart);
    for (c, x) in u.iter().zip(fields) {
        if !c.is_zero() {
            acc = acc.add(&x.scale(c));
        }
    }
    acc
}

/// Checks `[U_i, U_j] = Gamma([u_i, u_j])` for all `i < j`.
pub fn morphism_check(
    algebra: &LieAlgebra,
    chart: &Chart,
    fields: &[VectorField],
) -> Result<MorphismVerdict, PoissonError> {
    if fields.len() != algebra.dim() {
        return Err(PoissonError::FieldCount {
            expected: algebra.dim(),
            got: fields.len(),
        });
    }
    for x in fields {
        chart.check(x.chart())?;
    }
    for i in 0..fields.len() {
        for j in i + 1..fields.len() {
            let lhs = geomcalc::vf_bracket(&fields[i], &fields[j])?;
            let rhs = combine(chart, fields, algebra.table().get(i, j));
            let residual = lhs.sub(&rhs);
            if !residual.is_zero() {
                return Ok(MorphismVerdict::Fail {
                    pair: (i, j),
                    residual,
                });
            }
        }
    }
    Ok(MorphismVerdict::Pass)
}

/// A Lie algebra together with a morphism `Gamma` into vector fields on a
/// chart, given by `U_i = Gamma(u_i)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ActionSetup {
    algebra: LieAlgebra,
    chart: Chart,
    fields: Vec<VectorField>,
}

impl ActionSetup {
    pub fn new(
        algebra: LieAlgebra,
        chart: Chart,
        fields: Vec<VectorField>,
    ) -> Result<Self, PoissonError> {
        if let MorphismVerdict::Fail { pair, residual } = morphism_check(&algebra, &chart, &fields)? {
            return Err(PoissonError::NotMorphism {
                i: pair.0,
                j: pair.1,
                residual,
            });
        }
        Ok(ActionSetup {
            algebra,
            chart,
            fields,
        })
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn fields(&self) -> &[VectorField] {
        &self.fields
    }

    /// `Gamma(u)` for `u` in algebra coordinates.
    pub fn gamma(&self, u: &[Rat]) -> VectorField {
        combine(&self.chart, &self.fields, u)
    }

    /// The same action written in the basis given by the columns of `p`.
    pub fn change_basis(&self, p: &Matrix) -> Result<ActionSetup, PoissonError> {
        let algebra = self.algebra.change_basis(p)?;
        let n = self.algebra.dim();
        let fields = (0..n)
            .map(|j| self.gamma(&(0..n).map(|i| p[i][j].clone()).collect::<Vec<_>>()))
            .collect();
        ActionSetup::new(algebra, self.chart.clone(), fields)
    }
}

/// An antisymmetric polynomial bivector `pi^{ij}` on a chart.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PoissonBivector {
    chart: Chart,
    matrix: Vec<Vec<MultiPoly>>,
}

impl PoissonBivector {
    pub fn new(chart: &Chart, matrix: Vec<Vec<MultiPoly>>) -> Result<Self, PoissonError> {
        let m = chart.dim();
        if matrix.len() != m || matrix.iter().any(|r| r.len() != m) {
            return Err(GeomError::ComponentCount {
                expected: m * m,
                got: matrix.iter().map(Vec::len).sum(),
            }
            .into());
        }
        if matrix.iter().flatten().any(|p| p.vars() != chart.vars()) {
            return Err(GeomError::ChartMismatch.into());
        }
        for i in 0..m {
            for j in i..m {
                if matrix[i][j] != -&matrix[j][i] {
                    return Err(PoissonError::NotAntisymmetric(i, j));
                }
            }
        }
        Ok(PoissonBivector {
            chart: chart.clone(),
            matrix,
        })
    }

    pub fn zero(chart: &Chart) -> Self {
        let m = chart.dim();
        PoissonBivector {
            chart: chart.clone(),
            matrix: vec![vec![chart.zero(); m]; m],
        }
    }

    pub fn from_multivector(v: &KMultivector) -> Result<Self, PoissonError> {
        if v.degree() != 2 {
            return Err(GeomError::WrongDegree {
                expected: 2,
                got: v.degree(),
            }
            .into());
        }
        let m = v.chart().dim();
        let matrix = (0..m).map(|i| (0..m).map(|j| v.get(&[i, j])).collect()).collect();
        PoissonBivector::new(v.chart(), matrix)
    }

    pub fn to_multivector(&self) -> KMultivector {
        let m = self.chart.dim();
        let mut comps = Vec::new();
        for i in 0..m {
            for j in i + 1..m {
                comps.push((vec![i, j], self.matrix[i][j].clone()));
            }
        }
        KMultivector::from_components(&self.chart, 2, comps).expect("components within chart")
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn matrix(&self) -> &[Vec<MultiPoly>] {
        &self.matrix
    }

    pub fn entry(&self, i: usize, j: usize) -> &MultiPoly {
        &self.matrix[i][j]
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.iter().flatten().all(MultiPoly::is_zero)
    }

    /// `pi(alpha, beta) = sum_ij pi^{ij} alpha_i beta_j` for 1-forms.
    pub fn eval(&self, alpha: &KForm, beta: &KForm) -> Result<MultiPoly, PoissonError> {
        let a = one_form_comps(&self.chart, alpha)?;
        let b = one_form_comps(&self.chart, beta)?;
        let mut acc = self.chart.zero();
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                let p = &self.matrix[i][j];
                if !p.is_zero() && !bj.is_zero() {
                    acc = &acc + &(&(p * ai) * bj);
                }
            }
        }
        Ok(acc)
    }

    /// `{f, g} = pi(df, dg)`.
    pub fn bracket(&self, f: &MultiPoly, g: &MultiPoly) -> MultiPoly {
        let df = KForm::function(&self.chart, f.clone()).exterior_d();
        let dg = KForm::function(&self.chart, g.clone()).exterior_d();
        self.eval(&df, &dg).expect("differentials are 1-forms on the chart")
    }
}

fn one_form_comps(chart: &Chart, alpha: &KForm) -> Result<Vec<MultiPoly>, PoissonError> {
    chart.check(alpha.chart())?;
    if alpha.degree() != 1 {
        return Err(GeomError::WrongDegree {
            expected: 1,
            got: alpha.degree(),
        }
        .into());
    }
    Ok(alpha.to_vec())
}

/// `Gamma(r)` after certifying that `r` solves the classical Yang-Baxter
/// equation.
pub fn induced_poisson(a: &ActionSetup, r: &AlgBivector) -> Result<PoissonBivector, PoissonError> {
    if r.dim() != a.algebra.dim() {
        return Err(PoissonError::DimensionMismatch {
            expected: a.algebra.dim(),
            got: r.dim(),
        });
    }
    let t = yang_baxter_bracket(&a.algebra, r)?;
    if !t.is_zero() {
        return Err(PoissonError::YangBaxter(t));
    }
    Ok(induced_bivector_unchecked(a, r))
}

/// `pi^{ab} = sum_ij r^{ij} U_i^a U_j^b` without the Yang-Baxter check.
pub fn induced_bivector_unchecked(a: &ActionSetup, r: &AlgBivector) -> PoissonBivector {
    let m = a.chart.dim();
    let mut matrix = vec![vec![a.chart.zero(); m]; m];
    for (i, j, c) in r.terms() {
        let (ui, uj) = (&a.fields[i], &a.fields[j]);
        for p in 0..m {
            for q in p + 1..m {
                let w = &(ui.comp(p) * uj.comp(q)) - &(ui.comp(q) * uj.comp(p));
                if w.is_zero() {
                    continue;
                }
                let w = w.scale(&c);
                matrix[p][q] = &matrix[p][q] + &w;
                matrix[q][p] = &matrix[q][p] - &w;
            }
        }
    }
    PoissonBivector {
        chart: a.chart.clone(),
        matrix,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SchoutenVerdict {
    Pass,
    /// First triple `i < j < k` with a nonzero cyclic sum.
    Fail { triple: (usize, usize, usize), value: MultiPoly },
}

impl SchoutenVerdict {
    pub fn passed(&self) -> bool {
        matches!(self, SchoutenVerdict::Pass)
    }
}

/// Vanishing of `sum_l (pi^{li} d_l pi^{jk} + pi^{lj} d_l pi^{ki} + pi^{lk} d_l pi^{ij})`.
pub fn schouten_jacobi_check(pi: &PoissonBivector) -> SchoutenVerdict {
    let m = pi.chart.dim();
    let p = &pi.matrix;
    let der: Vec<Vec<Vec<MultiPoly>>> = (0..m)
        .map(|i| (0..m).map(|j| (0..m).map(|l| p[i][j].diff_at(l)).collect()).collect())
        .collect();
    for i in 0..m {
        for j in i + 1..m {
            for k in j + 1..m {
                let mut acc = pi.chart.zero();
                for l in 0..m {
                    for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
                        if !p[l][a].is_zero() && !der[b][c][l].is_zero() {
                            acc = &acc + &(&p[l][a] * &der[b][c][l]);
                        }
                    }
                }
                if !acc.is_zero() {
                    return SchoutenVerdict::Fail {
                        triple: (i, j, k),
                        value: acc,
                    };
                }
            }
        }
    }
    SchoutenVerdict::Pass
}

/// `pi#(alpha)^i = sum_j pi^{ji} alpha_j`, so that `beta(pi#(alpha)) = pi(alpha, beta)`.
pub fn anchor(pi: &PoissonBivector, alpha: &KForm) -> Result<VectorField, PoissonError> {
    let a = one_form_comps(&pi.chart, alpha)?;
    let m = pi.chart.dim();
    let comps = (0..m)
        .map(|i| {
            let mut acc = pi.chart.zero();
            for (j, aj) in a.iter().enumerate() {
                if !aj.is_zero() && !pi.matrix[j][i].is_zero() {
                    acc = &acc + &(&pi.matrix[j][i] * aj);
                }
            }
            acc
        })
        .collect();
    Ok(VectorField::new(&pi.chart, comps)?)
}

/// `[alpha, beta]_pi = L_{pi#(alpha)} beta - L_{pi#(beta)} alpha - d(pi(alpha, beta))`.
pub fn koszul_bracket(
    pi: &PoissonBivector,
    alpha: &KForm,
    beta: &KForm,
) -> Result<KForm, PoissonError> {
    let pa = anchor(pi, alpha)?;
    let pb = anchor(pi, beta)?;
    let pab = KForm::function(&pi.chart, pi.eval(alpha, beta)?);
    Ok(beta
        .lie_derivative(&pa)
        .sub(&alpha.lie_derivative(&pb))
        .sub(&pab.exterior_d()))
}
