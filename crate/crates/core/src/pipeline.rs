//! Dependency-ordered execution of every check on a [`ProblemSpec`].

use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use crate::connection::{
    contra_derivative, curvature, hawkins_volume_check, is_parallel, killing_check, metacurvature,
    metric_connection_derivative, torsion, ContraConnection, KillingVerdict, MetricContraConnection,
    ParallelCriterion,
};
use crate::geomcalc::{CoMetric, KForm};
use crate::liealg::{
    cocycle_check, image_form, jacobi_check, structure_relation_check, unimodular_check,
    yang_baxter_bracket, CocycleVerdict, JacobiVerdict, LieAlgebra, RelationFamily,
    StructureVerdict, SubspaceForm,
};
use crate::poisson::{
    local_freeness, morphism_check, schouten_jacobi_check, ActionSetup, Freeness as Free, FreenessReport,
    MorphismVerdict, SchoutenVerdict,
};
use crate::problem::ProblemSpec;
use crate::polyalg::{vars, MultiPoly, Rat};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CheckName {
    Jacobi,
    YangBaxter,
    ImageForm,
    Cocycle,
    StructureRelations,
    Unimodular,
    Morphism,
    InducedPoisson,
    Schouten,
    Torsion,
    Curvature,
    Freeness,
    Parallel,
    Metacurvature,
    Killing,
    Metric,
    HawkinsVolume,
}

impl CheckName {
    /// Every check in execution order.
    pub const ALL: [CheckName; 17] = [
        CheckName::Jacobi,
        CheckName::YangBaxter,
        CheckName::ImageForm,
        CheckName::Cocycle,
        CheckName::StructureRelations,
        CheckName::Unimodular,
        CheckName::Morphism,
        CheckName::InducedPoisson,
        CheckName::Schouten,
        CheckName::Torsion,
        CheckName::Curvature,
        CheckName::Freeness,
        CheckName::Parallel,
        CheckName::Metacurvature,
        CheckName::Killing,
        CheckName::Metric,
        CheckName::HawkinsVolume,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CheckName::Jacobi => "jacobi",
            CheckName::YangBaxter => "yang_baxter",
            CheckName::ImageForm => "image_form",
            CheckName::Cocycle => "cocycle",
            CheckName::StructureRelations => "structure_relations",
            CheckName::Unimodular => "unimodular",
            CheckName::Morphism => "morphism",
            CheckName::InducedPoisson => "induced_poisson",
            CheckName::Schouten => "schouten",
            CheckName::Torsion => "torsion",
            CheckName::Curvature => "curvature",
            CheckName::Freeness => "freeness",
            CheckName::Parallel => "parallel",
            CheckName::Metacurvature => "metacurvature",
            CheckName::Killing => "killing",
            CheckName::Metric => "metric",
            CheckName::HawkinsVolume => "hawkins_volume",
        }
    }

    /// Canonical names plus the short aliases `yb`, `flatness`, `hawkins`
    /// and `structure`.
    pub fn parse(s: &str) -> Option<CheckName> {
        let alias = match s {
            "yb" => Some(CheckName::YangBaxter),
            "flatness" => Some(CheckName::Curvature),
            "hawkins" => Some(CheckName::HawkinsVolume),
            "structure" => Some(CheckName::StructureRelations),
            _ => None,
        };
        alias.or_else(|| CheckName::ALL.into_iter().find(|c| c.as_str() == s))
    }

    /// Prerequisites that must pass.
    fn hard_deps(self) -> &'static [CheckName] {
        use CheckName::*;
        match self {
            Jacobi => &[],
            YangBaxter | ImageForm | Morphism => &[Jacobi],
            Cocycle | StructureRelations | Unimodular => &[ImageForm],
            InducedPoisson => &[Morphism, YangBaxter],
            Schouten => &[InducedPoisson],
            Torsion | Curvature | Parallel => &[Schouten],
            Freeness => &[Morphism, ImageForm],
            Metacurvature => &[],
            Killing | HawkinsVolume => &[Morphism, YangBaxter],
            Metric => &[Killing, Schouten],
        }
    }

    /// Prerequisites that must have run, whatever their verdict.
    fn soft_deps(self) -> &'static [CheckName] {
        match self {
            CheckName::Parallel => &[CheckName::Freeness],
            CheckName::Metacurvature => &[CheckName::Parallel],
            _ => &[],
        }
    }

    fn deps(self) -> impl Iterator<Item = CheckName> {
        self.hard_deps().iter().chain(self.soft_deps()).copied()
    }

    /// Problem fields this check reads directly.
    fn own_data(self) -> &'static [&'static str] {
        use CheckName::*;
        match self {
            Morphism => &["action"],
            Parallel => &["parallel_candidates"],
            Killing => &["cometric"],
            HawkinsVolume => &["volume"],
            _ => &[],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Verdict {
    Pass,
    Fail,
    Skipped,
    Refused,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Skipped => "skipped",
            Verdict::Refused => "refused",
        }
    }

    pub fn parse(s: &str) -> Option<Verdict> {
        [Verdict::Pass, Verdict::Fail, Verdict::Skipped, Verdict::Refused]
            .into_iter()
            .find(|v| v.as_str() == s)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckRecord {
    pub check: CheckName,
    pub verdict: Verdict,
    pub expected: Option<Verdict>,
    pub witness: Option<String>,
    pub details: Vec<String>,
    pub elapsed: Duration,
}

impl CheckRecord {
    /// A verdict other than the declared expectation, or without one, a
    /// failure or refusal.
    pub fn unexpected(&self) -> bool {
        match self.expected {
            Some(e) => e != self.verdict,
            None => matches!(self.verdict, Verdict::Fail | Verdict::Refused),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub problem: Option<String>,
    pub checks: Vec<CheckRecord>,
}

impl Report {
    pub fn get(&self, c: CheckName) -> Option<&CheckRecord> {
        self.checks.iter().find(|r| r.check == c)
    }

    pub fn verdict(&self, c: CheckName) -> Option<Verdict> {
        self.get(c).map(|r| r.verdict)
    }

    /// 0 when every verdict is as expected, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.checks.iter().any(CheckRecord::unexpected) {
            1
        } else {
            0
        }
    }
}

struct Outcome {
    verdict: Verdict,
    witness: Option<String>,
    details: Vec<String>,
}

impl Outcome {
    fn pass(details: Vec<String>) -> Self {
        Outcome {
            verdict: Verdict::Pass,
            witness: None,
            details,
        }
    }

    fn fail(witness: impl Into<String>, details: Vec<String>) -> Self {
        Outcome {
            verdict: Verdict::Fail,
            witness: Some(witness.into()),
            details,
        }
    }

    fn not_run(verdict: Verdict, detail: String) -> Self {
        Outcome {
            verdict,
            witness: None,
            details: vec![detail],
        }
    }
}

#[derive(Default)]
struct State {
    algebra: Option<LieAlgebra>,
    subspace: Option<SubspaceForm>,
    action: Option<ActionSetup>,
    connection: Option<ContraConnection>,
    freeness: Option<FreenessReport>,
    parallel: Vec<bool>,
}

fn alg_vector(basis: &[String], v: &[Rat]) -> String {
    let bv = vars(basis);
    let mut p = MultiPoly::zero(&bv);
    for (k, c) in v.iter().enumerate() {
        p = &p + &MultiPoly::var_at(&bv, k).scale(c);
    }
    p.to_string()
}

fn point_str(p: &[Rat]) -> String {
    let items: Vec<String> = p.iter().map(Rat::to_string).collect();
    format!("({})", items.join(", "))
}

fn coframe(chart: &crate::geomcalc::Chart) -> Vec<KForm> {
    (0..chart.dim()).map(|k| KForm::basis(chart, &[k])).collect()
}

/// Notes whether a nonzero witness survives at the regular probes, where
/// the rank of `pi` is maximal among the probes.
fn probe_note(w: &KForm, spec: &ProblemSpec, st: &State) -> Option<String> {
    if spec.probes.is_empty() {
        return None;
    }
    let pi = st.connection.as_ref()?.poisson();
    let rank_at = |pt: &[Rat]| {
        let m: Vec<Vec<Rat>> = pi.matrix().iter().map(|r| r.iter().map(|c| c.eval_at(pt)).collect()).collect();
        crate::polyalg::linalg::rank(&m)
    };
    let ranks: Vec<usize> = spec.probes.iter().map(|p| rank_at(p)).collect();
    let max = *ranks.iter().max()?;
    let regular_nonzero = spec
        .probes
        .iter()
        .zip(&ranks)
        .filter(|(_, r)| **r == max)
        .any(|(p, _)| !w.eval_at(p).is_empty());
    Some(if regular_nonzero {
        "witness is nonzero at a regular probe".to_string()
    } else {
        "witness vanishes at every regular probe".to_string()
    })
}

fn run_one(c: CheckName, spec: &ProblemSpec, st: &mut State) -> Outcome {
    use CheckName::*;
    let basis = &spec.basis;
    match c {
        Jacobi => match jacobi_check(&spec.table()) {
            JacobiVerdict::Pass => {
                st.algebra = Some(LieAlgebra::new(spec.table()).expect("Jacobi verified"));
                Outcome::pass(vec![])
            }
            JacobiVerdict::Fail { triple, residual } => Outcome::fail(
                alg_vector(basis, &residual),
                vec![format!(
                    "cyclic sum on ({}, {}, {})",
                    basis[triple.0], basis[triple.1], basis[triple.2]
                )],
            ),
        },
        YangBaxter => {
            let alg = st.algebra.as_ref().unwrap();
            let t = yang_baxter_bracket(alg, &spec.r_bivector()).expect("dimensions validated");
            if t.is_zero() {
                Outcome::pass(vec![])
            } else {
                let mut w = String::new();
                for ((i, j, k), v) in t.components() {
                    let wedge = format!("{}^{}^{}", basis[*i], basis[*j], basis[*k]);
                    let term = if v.abs().is_one() { wedge } else { format!("{}*{wedge}", v.abs()) };
                    match (w.is_empty(), v.is_negative()) {
                        (true, false) => w = term,
                        (true, true) => w = format!("-{term}"),
                        (false, false) => w = format!("{w} + {term}"),
                        (false, true) => w = format!("{w} - {term}"),
                    }
                }
                Outcome::fail(w, vec!["[r,r] != 0".into()])
            }
        }
        ImageForm => match image_form(st.algebra.as_ref().unwrap(), &spec.r_bivector()) {
            Ok(sf) => {
                let b: Vec<String> = sf.basis().iter().map(|v| alg_vector(basis, v)).collect();
                st.subspace = Some(sf);
                Outcome::pass(vec![format!("Im r = span{{{}}}", b.join(", "))])
            }
            Err(e) => Outcome::fail("Im r = 0", vec![e.to_string()]),
        },
        Cocycle => {
            let sf = st.subspace.as_ref().unwrap();
            match cocycle_check(st.algebra.as_ref().unwrap(), sf) {
                CocycleVerdict::Symplectic => Outcome::pass(vec!["Im r is a symplectic subalgebra".into()]),
                CocycleVerdict::NotSubalgebra { pair, bracket } => Outcome::fail(
                    alg_vector(basis, &bracket),
                    vec![format!("bracket of Im r basis vectors {} and {} leaves Im r", pair.0, pair.1)],
                ),
                CocycleVerdict::CocycleFails { triple, value } => Outcome::fail(
                    value.to_string(),
                    vec![format!("cocycle sum on Im r basis triple {triple:?}")],
                ),
            }
        }
        StructureRelations => {
            let sf = st.subspace.as_ref().unwrap();
            match structure_relation_check(st.algebra.as_ref().unwrap(), sf) {
                StructureVerdict::Holds => Outcome::pass(vec![]),
                StructureVerdict::Violated {
                    family,
                    indices,
                    value,
                } => {
                    let fam = match family {
                        RelationFamily::Vvv => "vvv",
                        RelationFamily::Uuu => "uuu",
                        RelationFamily::Uuv => "uuv",
                        RelationFamily::Uvv => "uvv",
                    };
                    Outcome::fail(value.to_string(), vec![format!("family {fam} at {indices:?}")])
                }
                StructureVerdict::NotSubalgebra { pair } => {
                    Outcome::fail("not a subalgebra", vec![format!("Im r basis pair {pair:?}")])
                }
            }
        }
        Unimodular => match unimodular_check(st.algebra.as_ref().unwrap(), st.subspace.as_ref().unwrap()) {
            Ok(rep) => {
                let traces: Vec<String> = rep.traces.iter().map(Rat::to_string).collect();
                let details = vec![
                    format!("traces of ad on Im r: [{}]", traces.join(", ")),
                    format!("Darboux sum: {}", alg_vector(basis, &rep.darboux_sum)),
                ];
                if !rep.routes_agree() {
                    Outcome::fail("trace and Darboux routes disagree", details)
                } else if rep.unimodular() {
                    Outcome::pass(details)
                } else {
                    Outcome::fail(alg_vector(basis, &rep.darboux_sum), details)
                }
            }
            Err(e) => Outcome::fail("not a subalgebra", vec![e.to_string()]),
        },
        Morphism => {
            let alg = st.algebra.clone().unwrap();
            let chart = spec.chart().unwrap();
            let fields = spec.fields().unwrap();
            match morphism_check(&alg, &chart, &fields) {
                Ok(MorphismVerdict::Pass) => {
                    st.action = Some(ActionSetup::new(alg, chart, fields).expect("morphism verified"));
                    Outcome::pass(vec![])
                }
                Ok(MorphismVerdict::Fail { pair, residual }) => Outcome::fail(
                    residual.to_string(),
                    vec![format!("[Gamma({}), Gamma({})] - Gamma([{0}, {1}])", basis[pair.0], basis[pair.1])],
                ),
                Err(e) => Outcome::fail(e.to_string(), vec![]),
            }
        }
        InducedPoisson => {
            let a = st.action.clone().unwrap();
            match ContraConnection::new(a, spec.r_bivector()) {
                Ok(cn) => {
                    let pi = cn.poisson().to_multivector().to_string();
                    st.connection = Some(cn);
                    Outcome::pass(vec![format!("pi = {pi}")])
                }
                Err(e) => Outcome::fail(e.to_string(), vec![]),
            }
        }
        Schouten => match schouten_jacobi_check(st.connection.as_ref().unwrap().poisson()) {
            SchoutenVerdict::Pass => Outcome::pass(vec![]),
            SchoutenVerdict::Fail { triple, value } => {
                Outcome::fail(value.to_string(), vec![format!("coordinate triple {triple:?}")])
            }
        },
        Torsion => {
            let cn = st.connection.as_ref().unwrap();
            let frame = coframe(cn.chart());
            let cands = spec.candidates();
            let mut pairs: Vec<(&KForm, &KForm)> = Vec::new();
            for i in 0..frame.len() {
                for j in i + 1..frame.len() {
                    pairs.push((&frame[i], &frame[j]));
                }
            }
            for a in &cands {
                for b in &frame {
                    pairs.push((a, b));
                }
            }
            let n = pairs.len();
            for (a, b) in pairs {
                let t = torsion(cn, a, b).expect("forms on the chart");
                if !t.is_zero() {
                    let mut d = vec![format!("alpha = {a}, beta = {b}")];
                    d.extend(probe_note(&t, spec, st));
                    return Outcome::fail(t.to_string(), d);
                }
            }
            Outcome::pass(vec![format!("{n} pairs")])
        }
        Curvature => {
            let cn = st.connection.as_ref().unwrap();
            let frame = coframe(cn.chart());
            let mut n = 0;
            for i in 0..frame.len() {
                for j in i + 1..frame.len() {
                    for g in &frame {
                        n += 1;
                        let k = curvature(cn, &frame[i], &frame[j], g).expect("forms on the chart");
                        if !k.is_zero() {
                            let mut d = vec![format!("alpha = {}, beta = {}, gamma = {g}", frame[i], frame[j])];
                            d.extend(probe_note(&k, spec, st));
                            return Outcome::fail(k.to_string(), d);
                        }
                    }
                }
            }
            Outcome::pass(vec![format!("{n} triples")])
        }
        Freeness => {
            let a = st.action.as_ref().unwrap();
            let rep = local_freeness(a, st.subspace.as_ref().unwrap(), &spec.probes)
                .expect("probe shapes validated at parse time");
            let ranks: Vec<String> = rep.probe_ranks.iter().map(usize::to_string).collect();
            let mut details = vec![
                format!("generic rank {} of {}", rep.generic_rank, rep.subspace_dim),
                format!("probe ranks [{}]", ranks.join(", ")),
            ];
            let out = match rep.locally_free {
                Free::Yes => Outcome::pass(details),
                Free::No => {
                    let w = if rep.generic_rank < rep.subspace_dim {
                        format!("generic rank {} < {}", rep.generic_rank, rep.subspace_dim)
                    } else {
                        let k = rep.probe_ranks.iter().position(|&r| r < rep.subspace_dim).unwrap();
                        format!("rank drops at probe {}", point_str(&spec.probes[k]))
                    };
                    Outcome::fail(w, details)
                }
                Free::Unknown => {
                    let minors: Vec<String> = rep.drop_locus.iter().map(|p| p.to_string()).collect();
                    details.push("no constant maximal minor; freeness off the probes is not certified".into());
                    Outcome::fail(format!("unknown; rank may drop where {} = 0", minors.join(" = ")), details)
                }
            };
            st.freeness = Some(rep);
            out
        }
        Parallel => {
            let cn = st.connection.as_ref().unwrap();
            let free = st.freeness.as_ref().map(|f| f.locally_free).unwrap_or(Free::No);
            let mut details = Vec::new();
            let mut first_fail: Option<String> = None;
            st.parallel.clear();
            for (i, beta) in spec.candidates().iter().enumerate() {
                let v = is_parallel(cn, beta, free).expect("forms on the chart");
                let crit = match v.criterion {
                    ParallelCriterion::LieDerivative => "Lie derivative criterion",
                    ParallelCriterion::Direct => "direct criterion",
                };
                if free == Free::Yes {
                    let direct = is_parallel(cn, beta, Free::No).expect("forms on the chart");
                    if direct.parallel != v.parallel {
                        return Outcome::fail(
                            format!("criteria disagree on {beta}"),
                            vec![format!("candidate {i}")],
                        );
                    }
                }
                details.push(format!(
                    "candidate {i} = {beta}: {} ({crit})",
                    if v.parallel { "parallel" } else { "not parallel" }
                ));
                if let (false, None, Some((k, w))) = (v.parallel, &first_fail, &v.witness) {
                    let what = match v.criterion {
                        ParallelCriterion::LieDerivative => format!("L_Gamma(s{k})"),
                        ParallelCriterion::Direct => format!("D_dx{k}"),
                    };
                    first_fail = Some(format!("candidate {i} = {beta}: {what} = {w}"));
                }
                st.parallel.push(v.parallel);
            }
            match first_fail {
                None => Outcome::pass(details),
                Some(w) => Outcome::fail(w, details),
            }
        }
        Metacurvature => {
            let cn = st.connection.as_ref().unwrap();
            let frame = coframe(cn.chart());
            let cands = spec.candidates();
            let mut n = 0;
            for (alpha, _) in cands.iter().zip(&st.parallel).filter(|(_, p)| **p) {
                for b in &frame {
                    for g in &frame {
                        n += 1;
                        let m = metacurvature(cn, alpha, b, g).expect("candidate certified parallel");
                        if !m.is_zero() {
                            let mut d = vec![format!("alpha = {alpha}, beta = {b}, gamma = {g}")];
                            d.extend(probe_note(&m, spec, st));
                            return Outcome::fail(m.to_string(), d);
                        }
                    }
                }
            }
            Outcome::pass(vec![format!("{n} evaluations on parallel candidates")])
        }
        Killing => {
            let a = st.action.as_ref().unwrap();
            let chart = a.chart().clone();
            let bp = spec.effective_base_point().unwrap();
            let g = match CoMetric::new(&chart, spec.cometric.clone().unwrap(), bp.clone()) {
                Ok(g) => g,
                Err(e) => return Outcome::fail(e.to_string(), vec![format!("base point {}", point_str(&bp))]),
            };
            match killing_check(a, &spec.r_bivector(), &g).expect("same chart") {
                KillingVerdict::Pass => Outcome::pass(vec![]),
                KillingVerdict::Fail { index, value } => {
                    let m = chart.dim();
                    let mut entries = Vec::new();
                    for i in 0..m {
                        for j in i..m {
                            if !value[i][j].is_zero() {
                                entries.push(format!("({i},{j}): {}", value[i][j]));
                            }
                        }
                    }
                    Outcome::fail(entries.join("; "), vec![format!("Im r basis vector {index}")])
                }
            }
        }
        Metric => {
            let cn = st.connection.as_ref().unwrap();
            let chart = cn.chart().clone();
            let bp = spec.effective_base_point().unwrap();
            let g = CoMetric::new(&chart, spec.cometric.clone().unwrap(), bp).expect("certified by killing");
            let mc = match MetricContraConnection::new(cn.poisson().clone(), g) {
                Ok(m) => m,
                Err(e) => return Outcome::fail(e.to_string(), vec![]),
            };
            let mut forms = coframe(&chart);
            forms.extend(spec.candidates());
            let mut n = 0;
            for a in &forms {
                for b in &forms {
                    n += 1;
                    let lhs = match metric_connection_derivative(&mc, a, b) {
                        Ok(x) => x,
                        Err(e) => return Outcome::fail(e.to_string(), vec![format!("alpha = {a}, beta = {b}")]),
                    };
                    let diff = lhs.sub(&contra_derivative(cn, a, b).expect("forms on the chart"));
                    if !diff.is_zero() {
                        return Outcome::fail(diff.to_string(), vec![format!("alpha = {a}, beta = {b}")]);
                    }
                }
            }
            Outcome::pass(vec![format!("{n} pairs agree")])
        }
        HawkinsVolume => {
            let a = st.action.as_ref().unwrap();
            let chart = a.chart().clone();
            let top: Vec<usize> = (0..chart.dim()).collect();
            let eps = KForm::basis(&chart, &top).mul_poly(spec.volume.as_ref().unwrap());
            let bp = spec.effective_base_point().unwrap();
            let rep = match hawkins_volume_check(a, &spec.r_bivector(), &eps, &bp) {
                Ok(r) => r,
                Err(e) => return Outcome::fail(e.to_string(), vec![format!("base point {}", point_str(&bp))]),
            };
            let mut details: Vec<String> = rep
                .invariance
                .iter()
                .map(|(l, f)| format!("L_Gamma({l}) eps = {f}"))
                .collect();
            details.push(format!("unimodular: {}", rep.is_unimodular()));
            details.push(format!("d(i_pi eps) = {}", rep.compatibility));
            if !rep.implication_holds() {
                Outcome::fail("invariant and unimodular but not compatible", details)
            } else if !rep.compatible() {
                Outcome::fail(rep.compatibility.to_string(), details)
            } else {
                Outcome::pass(details)
            }
        }
    }
}

fn missing_data(c: CheckName, spec: &ProblemSpec) -> Option<&'static str> {
    let mut stack = vec![c];
    let mut seen = BTreeSet::new();
    while let Some(x) = stack.pop() {
        if !seen.insert(x) {
            continue;
        }
        for field in x.own_data() {
            let present = match *field {
                "action" => spec.action.is_some(),
                "parallel_candidates" => !spec.parallel_candidates.is_empty(),
                "cometric" => spec.cometric.is_some(),
                "volume" => spec.volume.is_some(),
                _ => true,
            };
            if !present {
                return Some(field);
            }
        }
        stack.extend(x.deps());
    }
    None
}

/// Runs the requested checks (all when `None`) and their prerequisites.
/// Only requested checks appear in the report.
pub fn run_pipeline(spec: &ProblemSpec, requested: Option<&BTreeSet<CheckName>>) -> Report {
    let explicit = requested.is_some();
    let targets: BTreeSet<CheckName> = match requested {
        Some(r) => r.clone(),
        None => CheckName::ALL.into_iter().collect(),
    };
    let mut needed = BTreeSet::new();
    let mut stack: Vec<CheckName> = targets.iter().copied().collect();
    while let Some(c) = stack.pop() {
        if needed.insert(c) {
            stack.extend(c.deps());
        }
    }
    let mut st = State::default();
    let mut verdicts: BTreeMap<CheckName, Verdict> = BTreeMap::new();
    let mut records = Vec::new();
    for c in CheckName::ALL {
        if !needed.contains(&c) {
            continue;
        }
        let start = Instant::now();
        let outcome = if let Some(field) = missing_data(c, spec) {
            let v = if explicit && targets.contains(&c) {
                Verdict::Refused
            } else {
                Verdict::Skipped
            };
            Outcome::not_run(v, format!("missing field `{field}`"))
        } else if let Some(d) = c.hard_deps().iter().find(|d| verdicts[*d] != Verdict::Pass) {
            Outcome::not_run(Verdict::Skipped, format!("prerequisite `{}` did not pass", d.as_str()))
        } else if let Some(d) = c
            .soft_deps()
            .iter()
            .find(|d| matches!(verdicts[*d], Verdict::Skipped | Verdict::Refused))
        {
            Outcome::not_run(Verdict::Skipped, format!("prerequisite `{}` did not run", d.as_str()))
        } else {
            run_one(c, spec, &mut st)
        };
        verdicts.insert(c, outcome.verdict);
        if targets.contains(&c) {
            records.push(CheckRecord {
                check: c,
                verdict: outcome.verdict,
                expected: spec.expect.get(&c).copied(),
                witness: outcome.witness,
                details: outcome.details,
                elapsed: start.elapsed(),
            });
        }
    }
    Report {
        problem: spec.name.clone(),
        checks: records,
    }
}
