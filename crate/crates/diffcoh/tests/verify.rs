//! The job runner: determinism, failure reporting, and the compute report.

use diffcoh::verify::{compute, resolve_complex, run, JobSpec};

fn job(complexes: &[&str], suites: &[&str]) -> JobSpec {
    serde_json::from_value(serde_json::json!({
        "complexes": complexes,
        "suites": suites,
        "seed": 42,
        "samples": 2,
    }))
    .unwrap()
}

#[test]
fn certificates_are_deterministic() {
    let j = job(&["circle"], &["group", "axioms"]);
    let a = run(&j).unwrap();
    let b = run(&j).unwrap();
    assert!(!a.is_empty());
    assert_eq!(a.len(), b.len());
    for (x, y) in a.iter().zip(&b) {
        assert_eq!(x.claim, y.claim);
        assert_eq!(x.status, y.status);
        // payloads are byte-identical, timings may differ
        assert_eq!(
            serde_json::to_vec(&x.payload).unwrap(),
            serde_json::to_vec(&y.payload).unwrap()
        );
        assert!(x.ok(), "{}: {}", x.claim, x.payload);
    }
}

#[test]
fn corrupted_fixture_produces_a_counterexample() {
    let mut j = job(&["circle"], &["axioms"]);
    j.corrupt = true;
    let certs = run(&j).unwrap();
    let bad: Vec<_> = certs.iter().filter(|c| !c.ok()).collect();
    assert_eq!(bad.len(), 1);
    assert_eq!(bad[0].status, "failed");
    let text = bad[0].payload.to_string();
    assert!(
        text.contains("structure equation") && text.contains("cell"),
        "counterexample must name the violation: {text}"
    );
}

#[test]
fn bad_inputs_are_rejected() {
    assert!(run(&job(&["banana"], &["axioms"])).is_err());
    assert!(run(&job(&["circle"], &["nonsense"])).is_err());
    assert!(resolve_complex("circle-pair").is_ok());
    assert!(compute("rp2", 2, "no-such-ring").is_err());
}

#[test]
fn compute_reports_known_groups() {
    let rp2 = compute("rp2", 2, "integers").unwrap();
    assert_eq!(rp2["cohomology"], "Z/2");
    assert_eq!(rp2["rank_im_R"], 0);
    let s1 = compute("circle", 1, "integers").unwrap();
    assert_eq!(s1["cohomology"], "Z");
    assert_eq!(s1["flat_torus_rank"], 1);
    let pt = compute("point", 0, "integers").unwrap();
    assert_eq!(pt["cohomology"], "Z");
}
