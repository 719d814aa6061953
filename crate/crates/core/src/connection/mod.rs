//! Contravariant connections induced by an action and a solution of the
//! classical Yang-Baxter equation, their torsion, curvature and
//! metacurvature, and the metric contravariant connection of a co-metric.

mod metric;
mod volume;

use thiserror::Error;

use crate::geomcalc::{Chart, GeomError, KForm, VectorField};
use crate::liealg::{image_basis, AlgBivector, LieError};
use crate::poisson::{
    anchor, induced_bivector_unchecked, induced_poisson, koszul_bracket, ActionSetup, Freeness,
    PoissonBivector, PoissonError,
};
use crate::polyalg::{MultiPoly, Rat};

pub use metric::{killing_check, metric_connection_derivative, KillingVerdict, MetricContraConnection};
pub use volume::{hawkins_volume_check, VolumeReport};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConnError {
    #[error(transparent)]
    Poisson(#[from] PoissonError),
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error("first slot is not parallel: D along {direction} gives {value}")]
    NotParallel { direction: usize, value: KForm },
    #[error("co-metric determinant {0} vanishes identically")]
    DegenerateCoMetric(MultiPoly),
    #[error("non-polynomial connection coefficients in component {component}")]
    NonPolynomial { component: usize },
    #[error("volume form must have top degree {expected}, got {got}")]
    NotTopDegree { expected: usize, got: usize },
    #[error("volume form vanishes at the certification point")]
    VolumeVanishes,
}

/// `D_alpha beta = sum_{i<j} a_ij (alpha(U_i) L_{U_j} beta - alpha(U_j) L_{U_i} beta)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ContraConnection {
    action: ActionSetup,
    r: AlgBivector,
    poisson: PoissonBivector,
    terms: Vec<(Rat, usize, usize)>,
}

impl ContraConnection {
    /// Refuses `r` unless it solves the classical Yang-Baxter equation.
    pub fn new(action: ActionSetup, r: AlgBivector) -> Result<Self, ConnError> {
        let poisson = induced_poisson(&action, &r)?;
        Ok(Self::assemble(action, r, poisson))
    }

    /// Same formula with no Yang-Baxter check, for negative controls.
    pub fn new_unverified(action: ActionSetup, r: AlgBivector) -> Result<Self, ConnError> {
        if r.dim() != action.algebra().dim() {
            return Err(PoissonError::DimensionMismatch {
                expected: action.algebra().dim(),
                got: r.dim(),
            }
            .into());
        }
        let poisson = induced_bivector_unchecked(&action, &r);
        Ok(Self::assemble(action, r, poisson))
    }

    fn assemble(action: ActionSetup, r: AlgBivector, poisson: PoissonBivector) -> Self {
        let terms = r.terms().into_iter().map(|(i, j, c)| (c, i, j)).collect();
        ContraConnection {
            action,
            r,
            poisson,
            terms,
        }
    }

    pub fn action(&self) -> &ActionSetup {
        &self.action
    }

    pub fn chart(&self) -> &Chart {
        self.action.chart()
    }

    pub fn r(&self) -> &AlgBivector {
        &self.r
    }

    pub fn poisson(&self) -> &PoissonBivector {
        &self.poisson
    }

    /// The `(a_ij, i, j)` summands, `i < j`.
    pub fn terms(&self) -> &[(Rat, usize, usize)] {
        &self.terms
    }

    fn check_one_form(&self, alpha: &KForm) -> Result<(), ConnError> {
        self.chart().check(alpha.chart())?;
        if alpha.degree() != 1 {
            return Err(GeomError::WrongDegree {
                expected: 1,
                got: alpha.degree(),
            }
            .into());
        }
        Ok(())
    }
}

/// `D_alpha sigma` for a 1-form `alpha` and a form `sigma` of any degree.
pub fn contra_derivative(
    c: &ContraConnection,
    alpha: &KForm,
    sigma: &KForm,
) -> Result<KForm, ConnError> {
    c.check_one_form(alpha)?;
    c.chart().check(sigma.chart())?;
    let fields = c.action.fields();
    let mut lie: Vec<Option<KForm>> = vec![None; fields.len()];
    let mut lie_at = |i: usize| -> KForm {
        lie[i].get_or_insert_with(|| sigma.lie_derivative(&fields[i])).clone()
    };
    let mut acc = KForm::zero(c.chart(), sigma.degree());
    for (a, i, j) in &c.terms {
        let ai = alpha.pair_vector(&fields[*i]);
        let aj = alpha.pair_vector(&fields[*j]);
        let mut t = KForm::zero(c.chart(), sigma.degree());
        if !ai.is_zero() {
            t = t.add(&lie_at(*j).mul_poly(&ai));
        }
        if !aj.is_zero() {
            t = t.sub(&lie_at(*i).mul_poly(&aj));
        }
        acc = acc.add(&t.scale(a));
    }
    Ok(acc)
}

/// `D_alpha beta - D_beta alpha - [alpha, beta]_pi`.
pub fn torsion(c: &ContraConnection, alpha: &KForm, beta: &KForm) -> Result<KForm, ConnError> {
    c.check_one_form(beta)?;
    let k = koszul_bracket(&c.poisson, alpha, beta)?;
    Ok(contra_derivative(c, alpha, beta)?
        .sub(&contra_derivative(c, beta, alpha)?)
        .sub(&k))
}

/// `K(alpha, beta) gamma = D_alpha D_beta gamma - D_beta D_alpha gamma - D_{[alpha,beta]_pi} gamma`.
pub fn curvature(
    c: &ContraConnection,
    alpha: &KForm,
    beta: &KForm,
    gamma: &KForm,
) -> Result<KForm, ConnError> {
    c.check_one_form(beta)?;
    let k = koszul_bracket(&c.poisson, alpha, beta)?;
    let ab = contra_derivative(c, alpha, &contra_derivative(c, beta, gamma)?)?;
    let ba = contra_derivative(c, beta, &contra_derivative(c, alpha, gamma)?)?;
    Ok(ab.sub(&ba).sub(&contra_derivative(c, &k, gamma)?))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParallelCriterion {
    /// `L_{Gamma(u)} beta = 0` for `u` in a basis of `Im r`.
    LieDerivative,
    /// `D_{dx^k} beta = 0` for every coordinate differential.
    Direct,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ParallelVerdict {
    pub parallel: bool,
    pub criterion: ParallelCriterion,
    /// Failing index (basis element of `Im r` or coordinate) and the nonzero form.
    pub witness: Option<(usize, KForm)>,
}

fn direct_parallel(c: &ContraConnection, beta: &KForm) -> Result<Option<(usize, KForm)>, ConnError> {
    for k in 0..c.chart().dim() {
        let d = contra_derivative(c, &KForm::basis(c.chart(), &[k]), beta)?;
        if !d.is_zero() {
            return Ok(Some((k, d)));
        }
    }
    Ok(None)
}

/// Parallelism of a 1-form. Under certified local freeness the Lie
/// derivative criterion is used, otherwise the direct one.
pub fn is_parallel(
    c: &ContraConnection,
    beta: &KForm,
    freeness: Freeness,
) -> Result<ParallelVerdict, ConnError> {
    c.check_one_form(beta)?;
    if freeness == Freeness::Yes {
        for (n, u) in image_basis(&c.r).iter().enumerate() {
            let l = beta.lie_derivative(&c.action.gamma(u));
            if !l.is_zero() {
                return Ok(ParallelVerdict {
                    parallel: false,
                    criterion: ParallelCriterion::LieDerivative,
                    witness: Some((n, l)),
                });
            }
        }
        return Ok(ParallelVerdict {
            parallel: true,
            criterion: ParallelCriterion::LieDerivative,
            witness: None,
        });
    }
    let witness = direct_parallel(c, beta)?;
    Ok(ParallelVerdict {
        parallel: witness.is_none(),
        criterion: ParallelCriterion::Direct,
        witness,
    })
}

fn require_parallel(c: &ContraConnection, alpha: &KForm) -> Result<(), ConnError> {
    c.check_one_form(alpha)?;
    match direct_parallel(c, alpha)? {
        None => Ok(()),
        Some((direction, value)) => Err(ConnError::NotParallel { direction, value }),
    }
}

/// `M(alpha, beta, gamma) = -D_beta D_gamma d alpha` for parallel `alpha`.
pub fn metacurvature(
    c: &ContraConnection,
    alpha: &KForm,
    beta: &KForm,
    gamma: &KForm,
) -> Result<KForm, ConnError> {
    require_parallel(c, alpha)?;
    c.check_one_form(beta)?;
    c.check_one_form(gamma)?;
    let da = alpha.exterior_d();
    Ok(contra_derivative(c, beta, &contra_derivative(c, gamma, &da)?)?.neg())
}

/// `{f, sigma} = D_{df} sigma`.
pub fn bracket_function(c: &ContraConnection, f: &MultiPoly, sigma: &KForm) -> Result<KForm, ConnError> {
    let df = KForm::function(c.chart(), f.clone()).exterior_d();
    contra_derivative(c, &df, sigma)
}

/// `{alpha, beta} = -D_beta d alpha` for parallel `alpha`.
pub fn bracket_parallel(c: &ContraConnection, alpha: &KForm, beta: &KForm) -> Result<KForm, ConnError> {
    require_parallel(c, alpha)?;
    c.check_one_form(beta)?;
    Ok(contra_derivative(c, beta, &alpha.exterior_d())?.neg())
}

/// `{f,{alpha,beta}} - {{f,alpha},beta} - {{f,beta},alpha}` assembled from
/// the two special brackets. For parallel `alpha`, `{f,alpha} = 0` and
/// `{{f,beta},alpha}` is taken as `{alpha, D_{df} beta}`.
pub fn jacobiator_function_slot(
    c: &ContraConnection,
    f: &MultiPoly,
    alpha: &KForm,
    beta: &KForm,
) -> Result<KForm, ConnError> {
    let inner = bracket_parallel(c, alpha, beta)?;
    let first = bracket_function(c, f, &inner)?;
    let f_alpha = bracket_function(c, f, alpha)?;
    debug_assert!(f_alpha.is_zero());
    let f_beta = bracket_function(c, f, beta)?;
    let third = bracket_parallel(c, alpha, &f_beta)?;
    Ok(first.sub(&third))
}

/// The anchor of the induced Poisson bivector.
pub fn connection_anchor(c: &ContraConnection, alpha: &KForm) -> Result<VectorField, ConnError> {
    Ok(anchor(&c.poisson, alpha)?)
}
