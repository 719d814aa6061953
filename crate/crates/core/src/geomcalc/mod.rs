//! Exterior calculus with polynomial coefficients on a single coordinate
//! chart.
//!
//! Sign conventions:
//! - `i_X` inserts `X` into the first slot of a form.
//! - A multivector contracts as `i_{X^Y} = i_X o i_Y`, so the last factor is
//!   inserted first. In particular `i_{dx^dy}` of `dx^dy` is `-1`.

mod alt;
mod cometric;

use std::fmt;

use thiserror::Error;

use crate::polyalg::{MultiPoly, Rat, Vars};

pub use alt::{AltTensor, Contravariant, Covariant, KForm, KMultivector, Variance};
pub use cometric::{lie_derivative_cometric, CoMetric};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeomError {
    #[error("objects live on different charts")]
    ChartMismatch,
    #[error("duplicate coordinate name `{0}`")]
    DuplicateCoordinate(String),
    #[error("chart needs at least one coordinate")]
    EmptyChart,
    #[error("expected {expected} components, got {got}")]
    ComponentCount { expected: usize, got: usize },
    #[error("degree {degree} exceeds chart dimension {dim}")]
    DegreeTooLarge { degree: usize, dim: usize },
    #[error("cannot contract a degree-{vector} multivector into a degree-{form} form")]
    ContractionDegree { vector: usize, form: usize },
    #[error("expected a form of degree {expected}, got {got}")]
    WrongDegree { expected: usize, got: usize },
    #[error("matrix is not symmetric at ({0},{1})")]
    NotSymmetric(usize, usize),
    #[error("co-metric is degenerate at the base point")]
    DegenerateCoMetric,
    #[error("base point has {got} coordinates, chart has {expected}")]
    BasePoint { expected: usize, got: usize },
}

/// A coordinate chart: an ordered list of distinct coordinate names.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Chart {
    vars: Vars,
}

impl Chart {
    pub fn new<S: AsRef<str>>(coords: &[S]) -> Result<Self, GeomError> {
        if coords.is_empty() {
            return Err(GeomError::EmptyChart);
        }
        for (i, a) in coords.iter().enumerate() {
            if coords[..i].iter().any(|b| b.as_ref() == a.as_ref()) {
                return Err(GeomError::DuplicateCoordinate(a.as_ref().to_string()));
            }
        }
        Ok(Chart {
            vars: crate::polyalg::vars(coords),
        })
    }

    pub fn dim(&self) -> usize {
        self.vars.len()
    }

    pub fn coords(&self) -> &[String] {
        &self.vars
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn zero(&self) -> MultiPoly {
        MultiPoly::zero(&self.vars)
    }

    pub fn constant(&self, c: Rat) -> MultiPoly {
        MultiPoly::constant(&self.vars, c)
    }

    pub fn coord(&self, i: usize) -> MultiPoly {
        MultiPoly::var_at(&self.vars, i)
    }

    pub(crate) fn check(&self, other: &Chart) -> Result<(), GeomError> {
        if self == other {
            Ok(())
        } else {
            Err(GeomError::ChartMismatch)
        }
    }
}

impl fmt::Debug for Chart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Chart{:?}", self.coords())
    }
}

/// `X = sum_i X^i d/dx^i`.
#[derive(Clone, PartialEq, Eq)]
pub struct VectorField {
    chart: Chart,
    comps: Vec<MultiPoly>,
}

impl VectorField {
    pub fn new(chart: &Chart, comps: Vec<MultiPoly>) -> Result<Self, GeomError> {
        if comps.len() != chart.dim() {
            return Err(GeomError::ComponentCount {
                expected: chart.dim(),
                got: comps.len(),
            });
        }
        if comps.iter().any(|c| c.vars() != chart.vars()) {
            return Err(GeomError::ChartMismatch);
        }
        Ok(VectorField {
            chart: chart.clone(),
            comps,
        })
    }

    pub fn zero(chart: &Chart) -> Self {
        VectorField {
            chart: chart.clone(),
            comps: vec![chart.zero(); chart.dim()],
        }
    }

    /// The coordinate field `d/dx^i`.
    pub fn coordinate(chart: &Chart, i: usize) -> Self {
        let mut v = VectorField::zero(chart);
        v.comps[i] = MultiPoly::one(chart.vars());
        v
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn comps(&self) -> &[MultiPoly] {
        &self.comps
    }

    pub fn comp(&self, i: usize) -> &MultiPoly {
        &self.comps[i]
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(MultiPoly::is_zero)
    }

    /// The directional derivative `X(f)`.
    pub fn apply(&self, f: &MultiPoly) -> MultiPoly {
        let mut acc = self.chart.zero();
        for (i, xi) in self.comps.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            let d = f.diff_at(i);
            if !d.is_zero() {
                acc = &acc + &(xi * &d);
            }
        }
        acc
    }

    pub fn add(&self, other: &VectorField) -> VectorField {
        VectorField {
            chart: self.chart.clone(),
            comps: self.comps.iter().zip(&other.comps).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &VectorField) -> VectorField {
        VectorField {
            chart: self.chart.clone(),
            comps: self.comps.iter().zip(&other.comps).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> VectorField {
        VectorField {
            chart: self.chart.clone(),
            comps: self.comps.iter().map(|a| a.scale(c)).collect(),
        }
    }

    pub fn mul_poly(&self, f: &MultiPoly) -> VectorField {
        VectorField {
            chart: self.chart.clone(),
            comps: self.comps.iter().map(|a| a * f).collect(),
        }
    }

    /// Value of the field at a rational point.
    pub fn eval_at(&self, point: &[Rat]) -> Vec<Rat> {
        self.comps.iter().map(|c| c.eval_at(point)).collect()
    }

    /// The same field as a degree-1 multivector.
    pub fn to_multivector(&self) -> KMultivector {
        KMultivector::from_vector(self)
    }
}

impl fmt::Display for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.to_multivector(), f)
    }
}

impl fmt::Debug for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VectorField({self})")
    }
}

/// `[X,Y]^i = sum_j (X^j d_j Y^i - Y^j d_j X^i)`.
pub fn vf_bracket(x: &VectorField, y: &VectorField) -> Result<VectorField, GeomError> {
    x.chart.check(&y.chart)?;
    let comps = (0..x.chart.dim())
        .map(|i| &x.apply(&y.comps[i]) - &y.apply(&x.comps[i]))
        .collect();
    Ok(VectorField {
        chart: x.chart.clone(),
        comps,
    })
}

/// `d sigma`; the result is the zero form of degree `k+1` on top-degree input.
pub fn exterior_d(sigma: &KForm) -> KForm {
    sigma.exterior_d()
}

/// Contraction `i_X sigma` of a vector field into the first slot.
pub fn interior_vector(x: &VectorField, sigma: &KForm) -> Result<KForm, GeomError> {
    x.chart.check(sigma.chart())?;
    Ok(sigma.interior_vector(x))
}

/// Full contraction `i_V sigma` of a multivector into a form.
pub fn interior_product(v: &KMultivector, sigma: &KForm) -> Result<KForm, GeomError> {
    v.chart().check(sigma.chart())?;
    if v.degree() > sigma.degree() {
        return Err(GeomError::ContractionDegree {
            vector: v.degree(),
            form: sigma.degree(),
        });
    }
    Ok(sigma.interior_multivector(v))
}

pub fn wedge(sigma: &KForm, rho: &KForm) -> Result<KForm, GeomError> {
    sigma.chart().check(rho.chart())?;
    Ok(sigma.wedge(rho))
}

/// `L_X sigma = i_X d sigma + d i_X sigma`.
pub fn lie_derivative(x: &VectorField, sigma: &KForm) -> Result<KForm, GeomError> {
    x.chart.check(sigma.chart())?;
    Ok(sigma.lie_derivative(x))
}

/// `a(X)` for a 1-form `a`.
pub fn pair_form_vector(alpha: &KForm, x: &VectorField) -> Result<MultiPoly, GeomError> {
    x.chart.check(alpha.chart())?;
    if alpha.degree() != 1 {
        return Err(GeomError::WrongDegree {
            expected: 1,
            got: alpha.degree(),
        });
    }
    Ok(alpha.pair_vector(x))
}
