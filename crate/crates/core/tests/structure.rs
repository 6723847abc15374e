use braid3::verify::{run_suite, Suite};
use braid3::{
    coincidence, normal_form, verify_structure_lemma, ConjugacyEngine, NormalForm,
    DEFAULT_CLOSURE_CAP,
};

fn nf(s: &str) -> NormalForm {
    normal_form(&s.parse().unwrap())
}

#[test]
fn structure_lemma_holds_to_length_eighteen() {
    let engine = ConjugacyEngine::default();
    let report = verify_structure_lemma(&engine, 18).unwrap();
    assert!(report.passed(), "{:?}", report.failures);
    assert!(report.instances_checked > 0);
    assert!(report.splits_checked >= report.instances_checked);
}

#[test]
fn verdicts_for_selected_braids() {
    let cases = [
        // (word, coincides)
        ("1111", false),
        ("1122", true),
        ("1112", true),
        // Admissible shape, odd length: never (c·c̄)^ℓ.
        ("11122", false),
        ("11222", false),
        // Admissible shape, 112·221 ≠ 112211 and (12)³ ≠ 112211.
        ("112211", false),
        // Second shape with a₁ = 1 fails condition (2).
        ("122122", true),
        ("11221122", true),
        ("1212", true),
    ];
    let engine = ConjugacyEngine::default();
    for (w, expected) in cases {
        let a = nf(w);
        let direct = engine.cyclic_class(&a).unwrap().contains(&a.reflect());
        assert_eq!(direct, expected, "direct test for {w}");
        let verdict = coincidence(&a, DEFAULT_CLOSURE_CAP).unwrap();
        assert_eq!(verdict.coincides, expected, "verdict for {w}");
    }
}

#[test]
fn all_suites_pass_at_length_nine() {
    let engine = ConjugacyEngine::default();
    for report in run_suite(&engine, Suite::All, 9).unwrap() {
        assert!(report.passed(), "{}: {:?}", report.suite, report.failures);
    }
}
