use super::ConnError;
use crate::geomcalc::{lie_derivative_cometric, CoMetric, GeomError, KForm};
use crate::liealg::{image_basis, AlgBivector};
use crate::poisson::{anchor, koszul_bracket, ActionSetup, PoissonBivector};
use crate::polyalg::linalg::poly_adjugate;
use crate::polyalg::{MultiPoly, Rat};

/// The connection determined by
/// `2<D_a b, c> = pi#(a)<b,c> + pi#(b)<a,c> - pi#(c)<a,b> + <[c,a],b> + <[c,b],a> + <[a,b],c>`.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricContraConnection {
    poisson: PoissonBivector,
    cometric: CoMetric,
    det: MultiPoly,
    adj: Vec<Vec<MultiPoly>>,
}

impl MetricContraConnection {
    pub fn new(poisson: PoissonBivector, cometric: CoMetric) -> Result<Self, ConnError> {
        poisson.chart().check(cometric.chart())?;
        let det = cometric.det();
        if det.is_zero() {
            return Err(ConnError::DegenerateCoMetric(det));
        }
        let adj = poly_adjugate(cometric.matrix(), cometric.chart().vars());
        Ok(MetricContraConnection {
            poisson,
            cometric,
            det,
            adj,
        })
    }

    pub fn poisson(&self) -> &PoissonBivector {
        &self.poisson
    }

    pub fn cometric(&self) -> &CoMetric {
        &self.cometric
    }
}

/// The unique `D_alpha beta` with polynomial coefficients, or an error if
/// the solution has a nontrivial denominator.
pub fn metric_connection_derivative(
    m: &MetricContraConnection,
    alpha: &KForm,
    beta: &KForm,
) -> Result<KForm, ConnError> {
    let chart = m.poisson.chart();
    for s in [alpha, beta] {
        chart.check(s.chart())?;
        if s.degree() != 1 {
            return Err(GeomError::WrongDegree {
                expected: 1,
                got: s.degree(),
            }
            .into());
        }
    }
    let g = &m.cometric;
    let pi = &m.poisson;
    let pa = anchor(pi, alpha)?;
    let pb = anchor(pi, beta)?;
    let ab = g.pair(alpha, beta)?;
    let kab = koszul_bracket(pi, alpha, beta)?;
    let dim = chart.dim();
    let mut rhs = Vec::with_capacity(dim);
    for k in 0..dim {
        let gamma = KForm::basis(chart, &[k]);
        let pc = anchor(pi, &gamma)?;
        let mut acc = pa.apply(&g.pair(beta, &gamma)?);
        acc = &acc + &pb.apply(&g.pair(alpha, &gamma)?);
        acc = &acc - &pc.apply(&ab);
        acc = &acc + &g.pair(&koszul_bracket(pi, &gamma, alpha)?, beta)?;
        acc = &acc + &g.pair(&koszul_bracket(pi, &gamma, beta)?, alpha)?;
        acc = &acc + &g.pair(&kab, &gamma)?;
        rhs.push(acc);
    }
    let denom = m.det.scale(&Rat::from_int(2));
    let mut comps = Vec::with_capacity(dim);
    for i in 0..dim {
        let mut num = chart.zero();
        for (k, r) in rhs.iter().enumerate() {
            if !r.is_zero() && !m.adj[i][k].is_zero() {
                num = &num + &(&m.adj[i][k] * r);
            }
        }
        let q = num
            .div_exact(&denom)
            .ok_or(ConnError::NonPolynomial { component: i })?;
        comps.push(q);
    }
    Ok(KForm::one_form(chart, comps)?)
}

#[derive(Debug, Clone, PartialEq)]
pub enum KillingVerdict {
    Pass,
    /// `L_{Gamma(u)} G` is nonzero for the `index`-th basis vector of `Im r`.
    Fail { index: usize, value: Vec<Vec<MultiPoly>> },
}

impl KillingVerdict {
    pub fn passed(&self) -> bool {
        matches!(self, KillingVerdict::Pass)
    }
}

/// Whether every `Gamma(u)`, `u` in `Im r`, is Killing for the co-metric.
pub fn killing_check(
    a: &ActionSetup,
    r: &AlgBivector,
    g: &CoMetric,
) -> Result<KillingVerdict, ConnError> {
    for (index, u) in image_basis(r).iter().enumerate() {
        let l = lie_derivative_cometric(&a.gamma(u), g)?;
        if l.iter().flatten().any(|p| !p.is_zero()) {
            return Ok(KillingVerdict::Fail { index, value: l });
        }
    }
    Ok(KillingVerdict::Pass)
}
