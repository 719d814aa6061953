//! Acceptance criteria 1-8. Prints one line per criterion and exits
//! nonzero if any criterion fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::*;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

use cybe_core::connection::{
    contra_derivative, curvature, hawkins_volume_check, is_parallel, killing_check, metacurvature,
    metric_connection_derivative, torsion, ContraConnection, MetricContraConnection,
};
use cybe_core::fixtures::{self, FIXTURES};
use cybe_core::geomcalc::{lie_derivative_cometric, CoMetric, KForm};
use cybe_core::liealg::{
    catalog, cocycle_check, image_form, structure_relation_check, unimodular_check, yang_baxter_bracket,
    AlgBivector, LieAlgebra, SubspaceForm,
};
use cybe_core::pipeline::{run_pipeline, CheckName, Verdict};
use cybe_core::poisson::{induced_poisson, local_freeness, ActionSetup, Freeness};
use cybe_core::problem::parse_problem;
use cybe_core::polyalg::{MultiPoly, Rat};

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn fixture_verdicts(name: &str, want: &[(CheckName, Verdict)]) -> Check {
    let spec = parse_problem(fixtures::get(name).unwrap().json.as_bytes()).map_err(|e| e.to_string())?;
    let rep = run_pipeline(&spec, None);
    for (c, v) in want {
        ensure(rep.verdict(*c) == Some(*v), || {
            format!("{name}: {} is {:?}, wanted {:?}", c.as_str(), rep.verdict(*c), v)
        })?;
    }
    ensure(rep.exit_code() == 0, || format!("{name}: unexpected verdicts"))
}

fn criterion_1() -> Check {
    let alg = catalog::oscillator(Rat::one(), Rat::one());
    let r = AlgBivector::from_terms(6, &[(1, 2, Rat::one()), (3, 4, Rat::one())]).unwrap();
    let t = yang_baxter_bracket(&alg, &r).map_err(|e| e.to_string())?;
    ensure(t.is_zero(), || "[r,r] != 0".into())?;
    ensure(yang_baxter_oracle(&alg, &r), || "cyclic-sum oracle disagrees".into())?;
    let sf = image_form(&alg, &r).map_err(|e| e.to_string())?;
    ensure(sf.dim() == 4, || format!("dim Im r = {}", sf.dim()))?;
    // span{e0, e1, e2, ec1}: no em1 or ec2 component
    ensure(sf.basis().iter().all(|v| v[0].is_zero() && v[5].is_zero()), || "Im r leaves span{e0,e1,e2,ec1}".into())?;
    ensure(cocycle_check(&alg, &sf).passed(), || "cocycle check failed".into())?;
    let u = unimodular_check(&alg, &sf).map_err(|e| e.to_string())?;
    ensure(u.trace_route(), || format!("trace route: {:?}", u.traces))?;
    ensure(u.darboux_route(), || format!("Darboux route: {:?}", u.darboux_sum))?;
    let mut want = vec![
        (CheckName::YangBaxter, Verdict::Pass),
        (CheckName::Cocycle, Verdict::Pass),
        (CheckName::Unimodular, Verdict::Pass),
    ];
    for c in [CheckName::Morphism, CheckName::InducedPoisson, CheckName::Curvature, CheckName::Metacurvature] {
        want.push((c, Verdict::Skipped));
    }
    fixture_verdicts("oscillator", &want)
}

fn criterion_2() -> Check {
    let ex = aff1_remark();
    let c = ContraConnection::new(ex.action, ex.r).map_err(|e| e.to_string())?;
    let ch = c.chart().clone();
    ensure(c.poisson().is_zero(), || "pi != 0".into())?;
    let forms = [one_form(&ch, &["1", "0"]), one_form(&ch, &["0", "1"]), one_form(&ch, &["0", "x"])];
    for a in &forms {
        for b in &forms {
            let got = contra_derivative(&c, a, b).map_err(|e| e.to_string())?;
            let want = KForm::one_form(&ch, vec![&a.get(&[0]) * &b.get(&[0]), ch.zero()]).unwrap();
            ensure(got == want, || format!("D_({a}) ({b}) = {got}, expected {want}"))?;
        }
    }
    let a = ex_freeness_remark()?;
    let cands = [
        one_form(&ch, &["1", "0"]),
        one_form(&ch, &["0", "1"]),
        one_form(&ch, &["0", "x"]),
        one_form(&ch, &["0", "y"]),
    ];
    let got: Vec<bool> = cands.iter().map(|b| is_parallel(&c, b, a).unwrap().parallel).collect();
    ensure(got == [false, true, true, true], || format!("parallel pattern {got:?}"))?;
    let m = metacurvature(&c, &cands[2], &cands[0], &cands[0]).map_err(|e| e.to_string())?;
    let dxdy = KForm::basis(&ch, &[0, 1]);
    ensure(m == dxdy || m == dxdy.neg(), || format!("metacurvature = {m}"))?;
    let f = p(&ch, "x");
    ensure(m.get(&[0, 1]).eval_at(&[Rat::zero(), Rat::zero()]).abs() == f.diff_at(0).as_constant().unwrap(), || {
        "coefficient is not df/dx = 1".into()
    })?;
    fixture_verdicts(
        "remark-aff1",
        &[
            (CheckName::YangBaxter, Verdict::Pass),
            (CheckName::Curvature, Verdict::Pass),
            (CheckName::Freeness, Verdict::Fail),
            (CheckName::Metacurvature, Verdict::Fail),
        ],
    )
}

fn ex_freeness_remark() -> Result<Freeness, String> {
    let ex = aff1_remark();
    let sf = image_form(ex.action.algebra(), &ex.r).map_err(|e| e.to_string())?;
    let probes = vec![vec![Rat::zero(), Rat::zero()], vec![Rat::one(), Rat::from_int(2)]];
    let rep = local_freeness(&ex.action, &sf, &probes).map_err(|e| e.to_string())?;
    ensure(rep.locally_free == Freeness::No, || format!("freeness {:?}", rep.locally_free))?;
    Ok(rep.locally_free)
}

fn test_forms(c: &ContraConnection, seed: u8) -> Vec<KForm> {
    let mut run = runner(seed);
    let mut fs = coframe(c.chart());
    for _ in 0..10 {
        fs.push(sample(&kform(c.chart().clone(), 1, 2), &mut run));
    }
    fs
}

fn criterion_3() -> Check {
    let mut run = runner(3);
    let examples = vec![
        translations(2),
        translations(4),
        oscillator_abelian(),
        aff1_remark(),
        random_abelian(&mut run),
        heisenberg_free(),
    ];
    for (k, ex) in examples.into_iter().enumerate() {
        let name = ex.name.clone();
        let c = ContraConnection::new(ex.action, ex.r).map_err(|e| format!("{name}: {e}"))?;
        let fs = test_forms(&c, 30 + k as u8);
        for a in &fs {
            for b in &fs {
                let t = torsion(&c, a, b).unwrap();
                ensure(t.is_zero(), || format!("{name}: T({a}, {b}) = {t}"))?;
            }
        }
        for (i, a) in fs.iter().enumerate() {
            for b in &fs[i + 1..] {
                for g in &fs {
                    let kv = curvature(&c, a, b, g).unwrap();
                    ensure(kv.is_zero(), || format!("{name}: K({a}, {b}) {g} = {kv}"))?;
                }
            }
        }
    }
    let ex = heisenberg_control();
    let c = ContraConnection::new_unverified(ex.action, ex.r).unwrap();
    let cf = coframe(c.chart());
    let mut witness = None;
    for a in &cf {
        for b in &cf {
            for g in &cf {
                let kv = curvature(&c, a, b, g).unwrap();
                if witness.is_none() && !kv.is_zero() {
                    witness = Some(kv);
                }
            }
        }
    }
    ensure(witness.is_some(), || "control has zero curvature on the coframe".into())
}

fn criterion_4() -> Check {
    let ex = translations(2);
    let ch = ex.action.chart().clone();
    let g = CoMetric::identity(&ch);
    for (i, u) in ex.action.fields().iter().enumerate() {
        let l = lie_derivative_cometric(u, &g).unwrap();
        ensure(l.iter().flatten().all(MultiPoly::is_zero), || format!("field {i} is not Killing"))?;
    }
    ensure(killing_check(&ex.action, &ex.r, &g).unwrap().passed(), || "Killing check failed".into())?;
    let c = ContraConnection::new(ex.action, ex.r).unwrap();
    let m = MetricContraConnection::new(c.poisson().clone(), g).unwrap();
    let mut fs = coframe(&ch);
    let mut run = runner(4);
    for _ in 0..5 {
        fs.push(sample(&kform(ch.clone(), 1, 2), &mut run));
    }
    for a in &fs {
        for b in &fs {
            let dm = metric_connection_derivative(&m, a, b).map_err(|e| e.to_string())?;
            let dc = contra_derivative(&c, a, b).unwrap();
            ensure(dm == dc, || format!("D_({a}) ({b}): metric {dm}, induced {dc}"))?;
        }
    }
    Ok(())
}

fn criterion_5() -> Check {
    for (ex, cands) in [
        (
            heisenberg_free(),
            vec![
                vec!["1", "0", "0", "0"],
                vec!["0", "1", "0", "0"],
                vec!["0", "0", "0", "1"],
                vec!["-y", "0", "1", "0"],
                vec!["0", "0", "1", "0"],
                vec!["y", "x", "0", "0"],
            ],
        ),
        (translations(4), vec![vec!["1", "0", "0", "0"], vec!["0", "2", "0", "-1"], vec!["0", "0", "1/2", "0"], vec!["x", "0", "0", "0"]]),
    ] {
        let name = ex.name.clone();
        let sf = image_form(ex.action.algebra(), &ex.r).unwrap();
        let zero = vec![Rat::zero(); 4];
        let fr = local_freeness(&ex.action, &sf, &[zero]).unwrap();
        ensure(fr.locally_free == Freeness::Yes, || format!("{name} is not certified locally free"))?;
        let c = ContraConnection::new(ex.action, ex.r).unwrap();
        let cf = coframe(c.chart());
        let mut parallel = 0;
        for comps in &cands {
            let alpha = one_form(c.chart(), comps);
            if !is_parallel(&c, &alpha, Freeness::Yes).unwrap().parallel {
                continue;
            }
            parallel += 1;
            for b in &cf {
                for g in &cf {
                    let m = metacurvature(&c, &alpha, b, g).map_err(|e| e.to_string())?;
                    ensure(m.is_zero(), || format!("{name}: M({alpha}, {b}, {g}) = {m}"))?;
                }
            }
        }
        ensure(parallel >= 3, || format!("{name}: only {parallel} parallel candidates"))?;
    }
    Ok(())
}

fn criterion_6() -> Check {
    let spec = parse_problem(fixtures::get("translations-r3-volume").unwrap().json.as_bytes()).unwrap();
    let ch = spec.chart().unwrap();
    let a = ActionSetup::new(LieAlgebra::new(spec.table()).unwrap(), ch.clone(), spec.fields().unwrap())
        .map_err(|e| e.to_string())?;
    let eps = KForm::basis(&ch, &[0, 1, 2]).mul_poly(&p(&ch, "1 + z^2"));
    let rep = hawkins_volume_check(&a, &spec.r_bivector(), &eps, &[Rat::zero(), Rat::zero(), Rat::zero()])
        .map_err(|e| e.to_string())?;
    ensure(rep.invariant(), || "invariance fails".into())?;
    ensure(rep.is_unimodular(), || "unimodularity fails".into())?;
    ensure(rep.compatible(), || format!("d(i_pi eps) = {}", rep.compatibility))?;
    let pi = induced_poisson(&a, &spec.r_bivector()).unwrap();
    ensure(!pi.is_zero(), || "pi vanishes".into())?;
    let mut run = proptest_runner(6, 128);
    let strat = (vector_field(ch.clone(), 2), vector_field(ch.clone(), 2), poly(ch.vars().clone(), 2, 4));
    run.run(&strat, |(x, y, f)| {
        let e = KForm::basis(&ch, &[0, 1, 2]).mul_poly(&f);
        identity_chain(&x, &y, &e).map_err(TestCaseError::fail)
    })
    .map_err(|e| e.to_string())
}

fn criterion_7() -> Check {
    let mut run = runner(7);
    let cases = bivector_cases(24, &mut run);
    let mut seen = [0usize; 2];
    for c in &cases {
        let yb = yang_baxter_bracket(&c.alg, &c.r).unwrap().is_zero();
        let sympl = image_form(&c.alg, &c.r).map(|sf| cocycle_check(&c.alg, &sf).passed()).unwrap();
        ensure(yb == yang_baxter_oracle(&c.alg, &c.r), || format!("{}: Yang-Baxter oracle disagrees", c.name))?;
        ensure(sympl == symplectic_image_oracle(&c.alg, &c.r), || format!("{}: symplectic oracle disagrees", c.name))?;
        ensure(yb == sympl, || format!("{}: [r,r]=0 is {yb}, symplectic subalgebra is {sympl}", c.name))?;
        seen[yb as usize] += 1;
    }
    ensure(seen[0] > 0 && seen[1] > 0, || format!("Yang-Baxter verdict mix {seen:?}"))?;
    let cases = form_cases(24, &mut run);
    let mut seen = [0usize; 2];
    for c in &cases {
        let sf = SubspaceForm::new(c.basis.clone(), c.form.clone()).unwrap();
        let oracle = cocycle_oracle(&c.alg, &c.basis, &c.form).unwrap();
        let fam = structure_relation_check(&c.alg, &sf).passed();
        ensure(fam == oracle, || format!("{}: families {fam}, cocycle {oracle}", c.name))?;
        ensure(cocycle_check(&c.alg, &sf).passed() == oracle, || format!("{}: cocycle check disagrees", c.name))?;
        seen[oracle as usize] += 1;
    }
    ensure(seen[0] > 0 && seen[1] > 0, || format!("structure verdict mix {seen:?}"))
}

fn proptest_runner(seed: u8, cases: u32) -> TestRunner {
    let config = Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    };
    TestRunner::new_with_rng(config, TestRng::from_seed(RngAlgorithm::ChaCha, &[seed; 32]))
}

fn named<T: std::fmt::Debug>(r: Result<(), proptest::test_runner::TestError<T>>, what: &str) -> Check {
    r.map_err(|err| format!("{what}: {err}"))
}

fn criterion_8() -> Check {
    let ch = chart(3);
    let v = ch.vars().clone();
    let mut run = proptest_runner(8, 256);
    named(
        run.run(&(poly(v.clone(), 3, 5), poly(v.clone(), 3, 5), poly(v.clone(), 2, 4)), |(a, b, c)| {
            ring_axioms(&a, &b, &c).map_err(TestCaseError::fail)
        }),
        "ring axioms",
    )?;
    named(run.run(&poly(v.clone(), 4, 6), |a| poly_roundtrip(&a).map_err(TestCaseError::fail)), "polynomial round-trip")?;
    named(run.run(&any_kform(ch.clone(), 3), |s| d_squared(&s).map_err(TestCaseError::fail)), "d^2 = 0")?;
    named(
        run.run(&(vector_field(ch.clone(), 2), any_kform(ch.clone(), 2)), |(x, s)| {
            cartan(&x, &s).map_err(TestCaseError::fail)
        }),
        "Cartan formula",
    )?;
    named(
        run.run(
            &(vector_field(ch.clone(), 2), vector_field(ch.clone(), 2), vector_field(ch.clone(), 1)),
            |(x, y, z)| vf_jacobi(&x, &y, &z).map_err(TestCaseError::fail),
        ),
        "vector field Jacobi",
    )?;
    for f in FIXTURES {
        let p1 = parse_problem(f.json.as_bytes()).map_err(|e| e.to_string())?;
        let p2 = parse_problem(p1.to_json_string().as_bytes()).map_err(|e| e.to_string())?;
        ensure(p1 == p2, || format!("{}: problem round-trip", f.name))?;
    }
    Ok(())
}

type Criterion = (u32, &'static str, fn() -> Check, Option<Duration>);

fn main() {
    let criteria: [Criterion; 8] = [
        (1, "oscillator golden test", criterion_1, Some(Duration::from_secs(1))),
        (2, "aff(1) counterexample", criterion_2, Some(Duration::from_secs(1))),
        (3, "torsion and curvature vanish", criterion_3, Some(Duration::from_secs(30))),
        (4, "Killing co-metric connection", criterion_4, None),
        (5, "metacurvature on a free action", criterion_5, None),
        (6, "volume form compatibility", criterion_6, None),
        (7, "equivalence suites", criterion_7, None),
        (8, "infrastructure properties", criterion_8, Some(Duration::from_secs(120))),
    ];
    let mut failed = 0;
    for (n, title, run, limit) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let elapsed = start.elapsed();
        let outcome = match (outcome, limit) {
            (Ok(()), Some(l)) if elapsed > l => Err(format!("took {elapsed:?}, limit {l:?}")),
            (o, _) => o,
        };
        let ms = elapsed.as_secs_f64() * 1000.0;
        match outcome {
            Ok(()) => println!("criterion {n}: PASS  {title} ({ms:.0} ms)"),
            Err(why) => {
                failed += 1;
                println!("criterion {n}: FAIL  {title} ({ms:.0} ms): {why}");
            }
        }
    }
    println!("acceptance: {} of 8 criteria pass", 8 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
