use fermat5::arith::{int, rat};
use fermat5::curves::*;
use serde_json::Value;

fn check(cert: &ObstructionCertificate) {
    if let Err(e) = verify_certificate(cert) {
        panic!("{e}\n{}", cert.to_json());
    }
}

#[test]
fn both_certificates_verify() {
    check(&prove_c1_empty());
    check(&prove_c2_points());
    assert_eq!(prove_c1_empty().verdict, Verdict::Empty);
    assert_eq!(
        prove_c2_points().verdict.points(),
        &[
            AffinePoint::new(rat(-1, 2), rat(3, 4)),
            AffinePoint::new(rat(-1, 2), rat(-3, 4)),
            AffinePoint::new(int(0), int(1)),
            AffinePoint::new(int(0), int(-1)),
        ]
    );
}

#[test]
fn certificates_are_deterministic_and_round_trip() {
    for cert in [prove_c1_empty(), prove_c2_points()] {
        let json = cert.to_json();
        assert_eq!(json, cert.to_json());
        let back = ObstructionCertificate::from_json(&json).unwrap();
        assert_eq!(back, cert);
        check(&back);
    }
}

#[test]
fn search_agrees_with_verdicts() {
    assert_eq!(search_points(CurveId::C1, 60), prove_c1_empty().verdict.points());
    assert_eq!(search_points(CurveId::C2, 60), prove_c2_points().verdict.points());
}

#[test]
fn mod25_incompatibility_needs_units() {
    assert_eq!(mod25_case_count(true), 0);
    assert!(mod25_case_count(false) > 0);
}

#[test]
fn tampered_table_is_rejected() {
    let mut table = FactTable::embedded();
    table.entries[0].solutions.pop();
    let err = verify_certificate_with(&prove_c1_empty(), &table).unwrap_err();
    assert_eq!(err.label, "e16-lookup");
    assert!(verify_certificate_with(&prove_c2_points(), &table).is_ok());
    let mut table = FactTable::embedded();
    table.entries.retain(|e| e.equation != EquationId::E4);
    let err = verify_certificate_with(&prove_c2_points(), &table).unwrap_err();
    assert_eq!(err.label, "e4-lookup");
}

/// Applies `edit` to the JSON of `cert` and expects rejection, either at
/// parse time or by the verifier.
fn rejects(cert: &ObstructionCertificate, what: &str, edit: impl FnOnce(&mut Value)) {
    let mut v: Value = serde_json::from_str(&cert.to_json()).unwrap();
    edit(&mut v);
    let Ok(mutated) = serde_json::from_value::<ObstructionCertificate>(v) else {
        return;
    };
    assert_ne!(&mutated, cert, "mutation {what} changed nothing");
    assert!(verify_certificate(&mutated).is_err(), "mutation {what} was accepted");
}

fn step<'a>(v: &'a mut Value, label: &str) -> &'a mut Value {
    v["steps"]
        .as_array_mut()
        .unwrap()
        .iter_mut()
        .find(|s| s["label"] == label)
        .unwrap_or_else(|| panic!("no step {label}"))
}

#[test]
fn c1_mutations_are_rejected() {
    let c = prove_c1_empty();
    rejects(&c, "cofactor", |v| {
        step(v, "scaled-equation")["form"]["derivation"]["cofactors"][0] = "1/4".into()
    });
    rejects(&c, "multiplier", |v| {
        step(v, "homogenized")["form"]["derivation"]["multiplier"] = "2".into()
    });
    rejects(&c, "modulus", |v| step(v, "two-adic-integral")["modulus"] = "24".into());
    rejects(&c, "modulus to 4", |v| step(v, "two-adic-integral")["modulus"] = "4".into());
    rejects(&c, "count", |v| step(v, "five-adic-unit")["claim"]["count"]["count"] = "1".into());
    rejects(&c, "witness set", |v| {
        step(v, "squares-mod-8")["claim"]["image"]["values"][2][0] = "5".into()
    });
    rejects(&c, "image", |v| {
        step(v, "fifth-powers-mod-25")["claim"]["image"]["values"][1][0] = "8".into()
    });
    rejects(&c, "prime", |v| {
        step(v, "five-adic-positive")["form"]["dominant_term"]["prime"]["prime"] = "3".into()
    });
    rejects(&c, "parity", |v| {
        step(v, "five-adic-denominator")["form"]["dominant_term"]["conclusion"]["parity"]["residue"] = 0.into()
    });
    rejects(&c, "kernel", |v| {
        step(v, "denominator-kernel")["form"]["denominator_kernel"]["kernel"] = "10".into()
    });
    rejects(&c, "candidate", |v| step(v, "e16-lookup")["candidates"][0][2] = "5".into());
    rejects(&c, "abscissa", |v| step(v, "e16-lookup")["abscissae"][0] = "1/2".into());
    rejects(&c, "square verdict", |v| {
        step(v, "square-test-zero")["verdict"] = serde_json::json!({"square": {"root": "5"}})
    });
    rejects(&c, "square value", |v| step(v, "square-test-zero")["value"] = "4".into());
    rejects(&c, "definition", |v| {
        step(v, "bruin-form")["form"]["derivation"]["hypotheses"][2]["definition"]["value"] = "25*c^5*Z".into()
    });
    rejects(&c, "verdict", |v| {
        v["verdict"] = serde_json::json!({"points": [{"x": "0", "y": "1"}]})
    });
    rejects(&c, "curve", |v| v["curve"]["rhs"] = "80*X^5 + 4".into());
    rejects(&c, "curve tag", |v| v["curve"]["tag"] = "C2".into());
    for i in 0..c.steps.len() {
        rejects(&c, &format!("delete step {i}"), |v| {
            v["steps"].as_array_mut().unwrap().remove(i);
        });
    }
}

#[test]
fn c2_mutations_are_rejected() {
    let c = prove_c2_points();
    rejects(&c, "cofactor", |v| {
        step(v, "homogenized")["form"]["derivation"]["cofactors"][0] = "b^9".into()
    });
    rejects(&c, "combination", |v| {
        step(v, "gcd-b")["form"]["combination"]["result"] = "3*b^5".into()
    });
    rejects(&c, "kernels", |v| {
        step(v, "case-split")["form"]["squarefree_cases"]["kernels"] = serde_json::json!(["1", "2", "5"])
    });
    rejects(&c, "factor", |v| {
        step(v, "case-split")["form"]["squarefree_cases"]["factor"] = 1.into()
    });
    rejects(&c, "pattern", |v| {
        step(v, "two-adic-case-b-even")["form"]["dominant_term"]["patterns"]["b"] = "zero".into()
    });
    rejects(&c, "case list", |v| {
        step(v, "two-adic-case-units")["form"]["dominant_term"]["target"]["cases"]["kernels"] =
            serde_json::json!(["2", "5", "10"])
    });
    rejects(&c, "modulus", |v| step(v, "mod-25-incompatibility")["modulus"] = "5".into());
    rejects(&c, "units", |v| step(v, "mod-25-incompatibility")["uses"] = serde_json::json!([]));
    rejects(&c, "image", |v| {
        step(v, "five-divides-neither")["claim"]["image"]["values"] = serde_json::json!([["0", "1"]])
    });
    rejects(&c, "family", |v| step(v, "e4-lookup")["families"] = serde_json::json!([]));
    rejects(&c, "root", |v| {
        step(v, "square-test-minus-half")["verdict"]["square"]["root"] = "-3/4".into()
    });
    rejects(&c, "verdict", |v| {
        v["verdict"]["points"].as_array_mut().unwrap().pop();
    });
    rejects(&c, "case multiplier", |v| {
        step(v, "case-five-cofactor")["form"]["derivation"]["multiplier"] = "5*W^2".into()
    });
    for i in 0..c.steps.len() {
        rejects(&c, &format!("delete step {i}"), |v| {
            v["steps"].as_array_mut().unwrap().remove(i);
        });
    }
}

#[test]
fn failures_name_the_step() {
    let mut c = prove_c1_empty();
    if let Step::ResidueEnumeration(s) = &mut c.steps[3] {
        s.claim = ResidueClaim::Count { count: 3 };
    }
    let err = verify_certificate(&c).unwrap_err();
    assert_eq!(err.step, Some(3));
    assert_eq!(err.label, "two-adic-integral");
    assert!(err.to_string().starts_with("step 4 (two-adic-integral)"));
}

#[test]
fn gcd_support_of_the_factors() {
    use num_integer::Integer;
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
    let mut seen = 0;
    while seen < 1000 {
        let (a, b): (i128, i128) = (rng.gen_range(-5000..=5000), rng.gen_range(-5000..=5000));
        if a.gcd(&b) != 1 {
            continue;
        }
        seen += 1;
        let (a5, b5) = (a.pow(5), b.pow(5));
        let mut g = (b5 - 4 * a5).gcd(&(16 * a5 + b5));
        for p in [2, 5] {
            while g % p == 0 {
                g /= p;
            }
        }
        assert_eq!(g, 1, "a = {a}, b = {b}");
    }
}

#[test]
fn c2_search_is_stable_in_height() {
    let four = prove_c2_points().verdict.points().to_vec();
    for h in [2, 3, 10, 100, 300] {
        assert_eq!(search_points(CurveId::C2, h), four, "height {h}");
    }
}

#[test]
fn bruin_corroboration_examples() {
    use num_traits::Zero;
    let nonzero = |eq, bound| -> Vec<_> {
        corroborate_bruin(eq, bound)
            .into_iter()
            .filter(|t| !t[0].is_zero() && !t[1].is_zero())
            .collect()
    };
    assert_eq!(nonzero(EquationId::E16, 100), vec![triple_of(-1, 2, -4), triple_of(-1, 2, 4)]);
    assert_eq!(nonzero(EquationId::E16, 2), nonzero(EquationId::E16, 100));
    assert_eq!(nonzero(EquationId::E4, 100), vec![triple_of(-1, 2, -6), triple_of(-1, 2, 6)]);
    // a = 0 leaves b^5 = d^2, the squares family b = s^2
    let family: Vec<_> = corroborate_bruin(EquationId::E4, 100).into_iter().filter(|t| t[0].is_zero()).collect();
    assert!(family.contains(&triple_of(0, 1, 1)) && family.contains(&triple_of(0, 1, -1)));
    assert!(FactTable::embedded().unexplained(EquationId::E4, 100).is_empty());
}
