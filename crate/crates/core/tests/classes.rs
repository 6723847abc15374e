use std::collections::HashSet;

use braid3::{normal_form, normal_forms_of_length, ConjugacyEngine, NormalForm, PosWord};
use proptest::prelude::*;

fn nf(s: &str) -> NormalForm {
    normal_form(&s.parse().unwrap())
}

fn rendered(forms: &[NormalForm]) -> Vec<String> {
    let mut v: Vec<String> = forms.iter().map(ToString::to_string).collect();
    v.sort();
    v
}

#[test]
fn all_length_four_classes() {
    let engine = ConjugacyEngine::default();
    let mut classes: Vec<Vec<String>> = Vec::new();
    let mut covered = HashSet::new();
    for a in normal_forms_of_length(4) {
        if covered.contains(&a) {
            continue;
        }
        let r = engine.class_report(&a).unwrap();
        covered.extend(r.conjugacy_class.iter().copied());
        classes.push(rendered(&r.conjugacy_class));
    }
    classes.sort();
    // (σ₁σ₂)² = 1212 = Δ·σ₂ and (σ₂σ₁)² = 2121 = Δ·σ₁.
    assert_eq!(
        classes,
        vec![
            vec!["D^0:1111", "D^0:2222"],
            vec!["D^0:1112", "D^0:1222", "D^0:2111", "D^0:2221", "D^1:1", "D^1:2"],
            vec!["D^0:1122", "D^0:1221", "D^0:2112", "D^0:2211"],
        ]
    );
}

#[test]
fn short_lengths() {
    let engine = ConjugacyEngine::default();
    let r = engine.class_report(&nf("e")).unwrap();
    assert_eq!(rendered(&r.conjugacy_class), ["D^0:e"]);
    // σ₂ = Δ⁻¹σ₁Δ, but no cyclic move relates the two one-letter words.
    let r = engine.class_report(&nf("1")).unwrap();
    assert_eq!(rendered(&r.conjugacy_class), ["D^0:1", "D^0:2"]);
    assert_eq!(r.cyclic_classes.len(), 2);
    let r = engine.class_report(&nf("121")).unwrap();
    assert_eq!(
        rendered(&r.conjugacy_class),
        ["D^0:112", "D^0:122", "D^0:211", "D^0:221", "D^1:e"]
    );
    assert!(r.coincides);
}

#[test]
fn large_infimum_classes_are_single_cyclic_classes() {
    let engine = ConjugacyEngine::default();
    for w in ["121121", "1211212", "12112122", "121212121211"] {
        let a = nf(w);
        assert!(a.infimum() >= 1);
        let r = engine.class_report(&a).unwrap();
        assert!(r.coincides, "{w}");
        assert_eq!(
            r.conjugacy_set(),
            engine.positive_conjugates_oracle(&a).unwrap()
        );
    }
}

#[test]
fn engine_is_shareable_across_threads() {
    let engine = ConjugacyEngine::default();
    let forms = normal_forms_of_length(8);
    let sizes: Vec<Vec<usize>> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..4)
            .map(|_| {
                scope.spawn(|| {
                    forms
                        .iter()
                        .map(|a| engine.class_report(a).unwrap().conjugacy_class.len())
                        .collect()
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });
    assert!(sizes.windows(2).all(|w| w[0] == w[1]));
}

fn arb_word(min: usize, max: usize) -> impl Strategy<Value = PosWord> {
    proptest::collection::vec(prop::bool::ANY, min..=max).prop_map(|bits| {
        let text: String = bits
            .into_iter()
            .map(|b| if b { '2' } else { '1' })
            .collect();
        if text.is_empty() {
            PosWord::EMPTY
        } else {
            text.parse().unwrap()
        }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    // Random braids beyond the exhaustive range.
    #[test]
    fn closed_form_matches_oracle(w in arb_word(11, 15)) {
        let engine = ConjugacyEngine::default();
        let a = normal_form(&w);
        let report = engine.class_report(&a).unwrap();
        prop_assert!((1..=2).contains(&report.cyclic_classes.len()));
        prop_assert_eq!(report.conjugacy_set(), engine.positive_conjugates_oracle(&a).unwrap());
    }

    #[test]
    fn conjugacy_is_symmetric(x in arb_word(6, 9), k in 0usize..9) {
        let engine = ConjugacyEngine::default();
        // A rotation of a word is always conjugate.
        let y = x.rotate(k % (x.len() + 1)).unwrap().reflect();
        let (a, b) = (normal_form(&x), normal_form(&y));
        prop_assert!(engine.are_conjugate(&a, &b).unwrap());
        prop_assert!(engine.are_conjugate(&b, &a).unwrap());
    }

    #[test]
    fn cyclic_classes_are_reflection_equivariant(w in arb_word(0, 14)) {
        let engine = ConjugacyEngine::default();
        let a = normal_form(&w);
        let mirrored: HashSet<NormalForm> =
            engine.cyclic_class(&a).unwrap().members().iter().map(NormalForm::reflect).collect();
        let reflected = engine.cyclic_class(&a.reflect()).unwrap();
        prop_assert_eq!(&mirrored, reflected.as_set());
    }
}
