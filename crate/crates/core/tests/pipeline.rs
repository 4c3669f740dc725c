use fermat5::arith::{int, rat};
use fermat5::curves::{EquationId, FactTable};
use fermat5::galois::GaloisClass;
use fermat5::pipeline::{run_theorem2, run_theorem2_with, Conclusion, TheoremReport};

fn tampered(eq: EquationId) -> FactTable {
    let mut table = FactTable::embedded();
    for e in table.entries.iter_mut().filter(|e| e.equation == eq) {
        e.solutions.pop();
    }
    table
}

#[test]
fn height_100_confirms() {
    let r = run_theorem2(100).unwrap();
    assert_eq!(r.conclusion, Conclusion::Confirmed, "{:?}", r.failing_step);
    assert_eq!(r.galois_class, Some(GaloisClass::C4));
    assert_eq!(r.point.rendered, "(2, 2α, −α−1)");
    assert_eq!(r.field_minpoly, "31X⁴−36X³+26X²−36X+31");
    assert!(r.scan_summary.cond1_hits.is_empty());
    assert_eq!(r.scan_summary.cond2_hits, vec![rat(-1, 2), int(0)]);
    assert_eq!(r.scan_summary.c2_points.len(), 4);
    assert!(r.certificate_verdicts.c1_empty && r.certificate_verdicts.c2_points);
    assert!(r.steps.iter().all(|s| s.passed));
    assert!(r.failing_step.is_none());
}

#[test]
fn conjugates_pair_up_under_permutation() {
    let r = run_theorem2(2).unwrap();
    let c = &r.conjugates;
    assert_eq!(c.roots.len(), 4);
    assert!(c.all_on_curve && c.all_images_match);
    // α and 1/α give permuted points, so the four conjugates form two classes
    assert_eq!(c.permutation_classes, 2);
    assert!(c.roots.contains(&"α".to_string()));
}

#[test]
fn small_height_still_confirms() {
    // t = -1/2 has height 2, so the scan at height 1 sees only t = 0 and t = 1
    let r = run_theorem2(1).unwrap();
    assert!(r.is_confirmed());
    assert_eq!(r.scan_summary.cond2_hits, vec![int(0)]);
}

#[test]
fn tampered_table_refutes_at_lookup() {
    for (eq, name) in [(EquationId::E16, "c1-certificate"), (EquationId::E4, "c2-certificate")] {
        let r = run_theorem2_with(10, &tampered(eq), false).unwrap();
        assert_eq!(r.conclusion, Conclusion::Refuted);
        let f = r.failing_step.expect("failing step");
        assert_eq!(f.name, name);
        assert_eq!(f.step_kind.as_deref(), Some("FactLookup"));
    }
}

#[test]
fn oracle_cross_check_agrees() {
    let r = run_theorem2_with(5, &FactTable::embedded(), true).unwrap();
    assert!(r.is_confirmed());
    let class = r.steps.iter().find(|s| s.name == "galois-class").unwrap();
    assert!(class.detail.contains("root finding 4"), "{}", class.detail);
}

#[test]
fn report_is_deterministic_and_round_trips() {
    let a = run_theorem2(30).unwrap().to_json();
    let b = run_theorem2(30).unwrap().to_json();
    assert_eq!(a, b);
    let parsed = TheoremReport::from_json(&a).unwrap();
    assert_eq!(parsed.to_json(), a);
    assert!(a.contains("\"schema_version\": 1"));
}

#[test]
fn golden_report() {
    let got = run_theorem2(20).unwrap().to_json();
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/golden/theorem_h20.json");
    if std::env::var_os("FERMAT5_BLESS").is_some() {
        std::fs::write(path, &got).unwrap();
    }
    let want = std::fs::read_to_string(path).unwrap();
    assert_eq!(got, want);
}
