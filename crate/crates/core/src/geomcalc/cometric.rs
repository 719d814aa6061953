use super::{Chart, GeomError, KForm, VectorField};
use crate::polyalg::linalg::{self, Matrix};
use crate::polyalg::{MultiPoly, Rat};

/// Pairing on 1-forms `G^{ij} = <dx^i, dx^j>`, nondegenerate at a chosen
/// rational base point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoMetric {
    chart: Chart,
    matrix: Vec<Vec<MultiPoly>>,
    base_point: Vec<Rat>,
}

impl CoMetric {
    pub fn new(
        chart: &Chart,
        matrix: Vec<Vec<MultiPoly>>,
        base_point: Vec<Rat>,
    ) -> Result<Self, GeomError> {
        let m = chart.dim();
        if matrix.len() != m || matrix.iter().any(|r| r.len() != m) {
            return Err(GeomError::ComponentCount {
                expected: m * m,
                got: matrix.iter().map(Vec::len).sum(),
            });
        }
        if matrix.iter().flatten().any(|p| p.vars() != chart.vars()) {
            return Err(GeomError::ChartMismatch);
        }
        if base_point.len() != m {
            return Err(GeomError::BasePoint {
                expected: m,
                got: base_point.len(),
            });
        }
        for i in 0..m {
            for j in i + 1..m {
                if matrix[i][j] != matrix[j][i] {
                    return Err(GeomError::NotSymmetric(i, j));
                }
            }
        }
        let at: Matrix = matrix
            .iter()
            .map(|r| r.iter().map(|p| p.eval_at(&base_point)).collect())
            .collect();
        if linalg::det(&at).is_zero() {
            return Err(GeomError::DegenerateCoMetric);
        }
        Ok(CoMetric {
            chart: chart.clone(),
            matrix,
            base_point,
        })
    }

    pub fn identity(chart: &Chart) -> Self {
        let m = chart.dim();
        let matrix = (0..m)
            .map(|i| {
                (0..m)
                    .map(|j| if i == j { MultiPoly::one(chart.vars()) } else { chart.zero() })
                    .collect()
            })
            .collect();
        CoMetric::new(chart, matrix, vec![Rat::zero(); m]).expect("identity is nondegenerate")
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

    pub fn base_point(&self) -> &[Rat] {
        &self.base_point
    }

    pub fn det(&self) -> MultiPoly {
        linalg::poly_det(&self.matrix, self.chart.vars())
    }

    /// `<alpha, beta> = sum_ij G^{ij} alpha_i beta_j` for 1-forms.
    pub fn pair(&self, alpha: &KForm, beta: &KForm) -> Result<MultiPoly, GeomError> {
        self.chart.check(alpha.chart())?;
        self.chart.check(beta.chart())?;
        for s in [alpha, beta] {
            if s.degree() != 1 {
                return Err(GeomError::WrongDegree {
                    expected: 1,
                    got: s.degree(),
                });
            }
        }
        let mut acc = self.chart.zero();
        for (ka, a) in alpha.components() {
            for (kb, b) in beta.components() {
                let g = &self.matrix[ka[0]][kb[0]];
                if !g.is_zero() {
                    acc = &acc + &(&(g * a) * b);
                }
            }
        }
        Ok(acc)
    }
}

/// `(L_X G)^{ij} = sum_l (X^l d_l G^{ij} - G^{lj} d_l X^i - G^{il} d_l X^j)`.
pub fn lie_derivative_cometric(
    x: &VectorField,
    g: &CoMetric,
) -> Result<Vec<Vec<MultiPoly>>, GeomError> {
    x.chart().check(&g.chart)?;
    let m = g.chart.dim();
    let dx: Vec<Vec<MultiPoly>> = (0..m)
        .map(|i| (0..m).map(|l| x.comp(i).diff_at(l)).collect())
        .collect();
    let mut out = vec![vec![g.chart.zero(); m]; m];
    for i in 0..m {
        for j in i..m {
            let mut acc = x.apply(&g.matrix[i][j]);
            for l in 0..m {
                acc = &acc - &(&g.matrix[l][j] * &dx[i][l]);
                acc = &acc - &(&g.matrix[i][l] * &dx[j][l]);
            }
            out[j][i] = acc.clone();
            out[i][j] = acc;
        }
    }
    Ok(out)
}
