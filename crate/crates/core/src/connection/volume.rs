use super::ConnError;
use crate::geomcalc::{interior_product, KForm};
use crate::liealg::{darboux_basis, image_form, unimodular_check, AlgBivector, UnimodularReport};
use crate::poisson::{induced_poisson, ActionSetup};
use crate::polyalg::Rat;

#[derive(Debug, Clone, PartialEq)]
pub struct VolumeReport {
    /// `(label, L_{Gamma(u)} eps)` for `u` over a Darboux basis of `Im r`,
    /// labelled `e1, f1, e2, f2, ...`.
    pub invariance: Vec<(String, KForm)>,
    /// `None` when `r = 0`, where `Im r` is trivially unimodular.
    pub unimodular: Option<UnimodularReport>,
    /// `d(i_pi eps)`.
    pub compatibility: KForm,
}

impl VolumeReport {
    pub fn invariant(&self) -> bool {
        self.invariance.iter().all(|(_, l)| l.is_zero())
    }

    pub fn is_unimodular(&self) -> bool {
        self.unimodular.as_ref().is_none_or(UnimodularReport::unimodular)
    }

    pub fn compatible(&self) -> bool {
        self.compatibility.is_zero()
    }

    /// Invariance and unimodularity must imply compatibility.
    pub fn implication_holds(&self) -> bool {
        !(self.invariant() && self.is_unimodular()) || self.compatible()
    }
}

/// Invariance of `eps` under `Im r`, unimodularity of `Im r` and
/// `d(i_{Gamma(r)} eps)`. `point` certifies that `eps` does not vanish.
pub fn hawkins_volume_check(
    a: &ActionSetup,
    r: &AlgBivector,
    eps: &KForm,
    point: &[Rat],
) -> Result<VolumeReport, ConnError> {
    let chart = a.chart();
    chart.check(eps.chart())?;
    if eps.degree() != chart.dim() {
        return Err(ConnError::NotTopDegree {
            expected: chart.dim(),
            got: eps.degree(),
        });
    }
    let top: Vec<usize> = (0..chart.dim()).collect();
    if point.len() != chart.dim() || eps.get(&top).eval_at(point).is_zero() {
        return Err(ConnError::VolumeVanishes);
    }
    let pi = induced_poisson(a, r)?;
    let compatibility = interior_product(&pi.to_multivector(), eps)?.exterior_d();
    if r.is_zero() {
        return Ok(VolumeReport {
            invariance: Vec::new(),
            unimodular: None,
            compatibility,
        });
    }
    let sf = image_form(a.algebra(), r)?;
    let db = darboux_basis(&sf)?;
    let mut invariance = Vec::new();
    for (k, (e, f)) in db.e.iter().zip(&db.f).enumerate() {
        invariance.push((format!("e{}", k + 1), eps.lie_derivative(&a.gamma(e))));
        invariance.push((format!("f{}", k + 1), eps.lie_derivative(&a.gamma(f))));
    }
    let unimodular = Some(unimodular_check(a.algebra(), &sf)?);
    Ok(VolumeReport {
        invariance,
        unimodular,
        compatibility,
    })
}
