use super::*;

#[test]
fn unknown_suite_lists_the_others() {
    let err = suite("nope").unwrap_err().to_string();
    for name in suite_names() {
        assert!(err.contains(name), "{err}");
    }
}

#[test]
fn reports_are_deterministic() {
    let s = suite("flip").unwrap();
    let a = run_suite(s, 3, 6);
    let b = run_suite(s, 3, 6);
    assert_eq!(a, b);
    assert!(a.passed(), "{}", a.summary());
}

#[test]
fn every_suite_passes_a_few_cases() {
    for s in SUITES {
        let rep = run_suite(s, 1, 3);
        assert!(rep.passed(), "{}{:?}", rep.summary(), rep.counterexamples.first().map(|c| &c.context));
        assert!(rep.properties.iter().all(|p| p.passed + p.failed <= 3));
    }
}

fn broken(_: &CaseInput, ck: &mut Checker) -> crate::Result<()> {
    ck.flag("always", false, || "context".into());
    Ok(())
}

#[test]
fn failures_carry_replayable_payloads() {
    let good = suite("oracles").unwrap();
    let s = Suite {
        name: "broken",
        about: "",
        default_cases: 1,
        generate: good.generate,
        check: broken,
    };
    let rep = run_suite(&s, 9, 2);
    assert!(!rep.passed());
    assert_eq!(rep.counterexamples.len(), 2);
    let text = serde_json::to_string(&rep.counterexamples[0]).unwrap();
    let back: Counterexample = serde_json::from_str(&text).unwrap();
    assert_eq!(back, rep.counterexamples[0]);
    let again = run_case(&s, &back.input);
    assert!(again.iter().any(|o| !o.passed && o.property == "always"));
}

#[test]
fn replay_reproduces_a_real_case() {
    let s = suite("splitting").unwrap();
    let input = generate_case(s, 7, 4);
    let text = serde_json::to_string(&input).unwrap();
    let back: CaseInput = serde_json::from_str(&text).unwrap();
    assert_eq!(run_case(s, &input), run_case(s, &back));
}
