mod common;

use common::*;
use proptest::prelude::*;
use serde_json::json;

use cybe_core::fixtures::FIXTURES;
use cybe_core::pipeline::run_pipeline;
use cybe_core::problem::parse_problem;
use cybe_core::report::{emit_report, Format};

#[test]
fn fixtures_roundtrip() {
    for f in FIXTURES {
        let p = parse_problem(f.json.as_bytes()).unwrap();
        let emitted = p.to_json_string();
        let q = parse_problem(emitted.as_bytes()).unwrap();
        assert_eq!(p, q, "{}", f.name);
        assert_eq!(q.to_json_string(), emitted, "{}", f.name);
        let a = emit_report(&run_pipeline(&p, None), Format::Json, false);
        let b = emit_report(&run_pipeline(&q, None), Format::Json, false);
        assert_eq!(a, b, "{}", f.name);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_specs_roundtrip(
        fields in prop::collection::vec(poly(chart(3).vars().clone(), 3, 4), 6),
        r in (1i64..=5, 1i64..=4),
        probe in prop::collection::vec(rat(), 3),
        volume in poly(chart(3).vars().clone(), 2, 3),
        cand in prop::collection::vec(poly(chart(3).vars().clone(), 2, 3), 3),
    ) {
        let s = |q: &cybe_core::polyalg::MultiPoly| q.to_string();
        let src = json!({
            "schema_version": 1,
            "name": "random",
            "lie_algebra": {"dim": 2, "basis": ["a", "b"]},
            "r": [["b", "a", format!("{}/{}", r.0, r.1)]],
            "action": {
                "coords": ["x", "y", "z"],
                "fields": {"a": fields[..3].iter().map(s).collect::<Vec<_>>(), "b": fields[3..].iter().map(s).collect::<Vec<_>>()}
            },
            "volume": s(&volume),
            "probes": [probe.iter().map(|c| c.to_string()).collect::<Vec<_>>()],
            "parallel_candidates": [cand.iter().map(s).collect::<Vec<_>>()],
            "expect": {"yb": "pass", "flatness": "skipped"}
        });
        let p = parse_problem(src.to_string().as_bytes()).unwrap();
        let q = parse_problem(p.to_json_string().as_bytes()).unwrap();
        prop_assert_eq!(&p, &q);
        prop_assert_eq!(p.to_json_string(), q.to_json_string());
        prop_assert_eq!(&p.action.as_ref().unwrap().fields[0], &fields[..3].to_vec());
    }
}
