//! Braids of the form `(c·c̄)^ℓ` and the criterion for when a positive
//! conjugacy class is a single cyclic class.
//!
//! For `a ∈ B₃⁺`, `[a]` is one cyclic class unless all three hold:
//!
//! 1. `inf(a) = 0`;
//! 2. the tail has an odd number of blocks, or an even number with both end
//!    exponents at least 2;
//! 3. `a` is not `(c·c̄)^ℓ` for any nonempty word `c`.

use rayon::prelude::*;
use serde::Serialize;

use crate::conj::ConjugacyEngine;
use crate::normal_form::{delta_free_words, normal_form, BlockForm, LemmaShape, NormalForm};
use crate::word::{CapExceeded, PosWord};

/// A factorization `a = (c·c̄)^ℓ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PalindromicPower {
    pub c: PosWord,
    pub ell: usize,
    /// `c·c̄` is not itself `(d·d̄)^k` with `k ≥ 2`.
    pub minimal: bool,
}

impl PalindromicPower {
    /// `c·c̄`.
    pub fn period(&self) -> PosWord {
        self.c.concat(self.c.reflect())
    }

    /// The literal word `(c·c̄)^ℓ`.
    pub fn word(&self) -> PosWord {
        self.period().repeat(self.ell)
    }

    /// Whether `w` is literally `(c·c̄)^k·c` for some `k ≥ 0`.
    pub fn is_split_prefix(&self, w: &PosWord) -> bool {
        let h = self.c.len();
        if w.len() < h || !(w.len() - h).is_multiple_of(2 * h) {
            return false;
        }
        let k = (w.len() - h) / (2 * h);
        self.period().repeat(k).concat(self.c) == *w
    }
}

/// Largest `ℓ` with `a = (c·c̄)^ℓ`, ties broken by the least `c`.
fn largest_power(a: &NormalForm, cap: usize) -> Result<Option<(PosWord, usize)>, CapExceeded> {
    let n = a.len();
    if n == 0 || !n.is_multiple_of(2) {
        return Ok(None);
    }
    let reps = a.word().representatives_capped(cap)?;
    let mut best: Option<(PosWord, usize)> = None;
    for ell in (1..=n / 2).rev().filter(|ell| n.is_multiple_of(2 * ell)) {
        let h = n / (2 * ell);
        for w in &reps {
            let c = w.prefix(h);
            if c.concat(c.reflect()).repeat(ell) == *w && best.is_none_or(|(bc, _)| c < bc) {
                best = Some((c, ell));
            }
        }
        if best.is_some() {
            break;
        }
    }
    Ok(best)
}

/// Finds a minimal expression `a = (c·c̄)^ℓ`, if `a` has that form.
///
/// Every such factorization is literally one of the representative words of
/// `a`, so scanning representatives and periods is exhaustive. The largest
/// `ℓ` is always minimal; the flag re-checks that on `c·c̄` itself.
pub fn find_ccbar_power(
    a: &NormalForm,
    cap: usize,
) -> Result<Option<PalindromicPower>, CapExceeded> {
    let Some((c, ell)) = largest_power(a, cap)? else {
        return Ok(None);
    };
    let period = normal_form(&c.concat(c.reflect()));
    let minimal = largest_power(&period, cap)?.is_none_or(|(_, k)| k == 1);
    Ok(Some(PalindromicPower { c, ell, minimal }))
}

/// Condition (2): the Δ-free tail has one of the two admissible block shapes.
/// False for braids with positive infimum and for the identity.
pub fn shape_condition(a: &NormalForm) -> bool {
    if a.infimum() != 0 {
        return false;
    }
    let Ok(blocks) = BlockForm::from_word(&a.tail()) else {
        return false;
    };
    let e = blocks.exponents();
    match blocks.shape() {
        LemmaShape::Identity => false,
        LemmaShape::First => true,
        LemmaShape::Second => e[0] >= 2 && e[e.len() - 1] >= 2,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CoincidenceVerdict {
    /// `[a]` is a single cyclic class.
    pub coincides: bool,
    pub condition_1_inf_zero: bool,
    pub condition_2_shape: bool,
    /// `None` when the earlier conditions already decided the verdict.
    pub condition_3_not_ccbar_power: Option<bool>,
}

/// Evaluates the three conditions in order, stopping before the
/// `(c·c̄)^ℓ` search once the verdict is known.
pub fn coincidence(a: &NormalForm, cap: usize) -> Result<CoincidenceVerdict, CapExceeded> {
    let inf_zero = a.infimum() == 0;
    let shape = shape_condition(a);
    let not_power = if inf_zero && shape {
        Some(find_ccbar_power(a, cap)?.is_none())
    } else {
        None
    };
    Ok(CoincidenceVerdict {
        coincides: !(inf_zero && shape && not_power == Some(true)),
        condition_1_inf_zero: inf_zero,
        condition_2_shape: shape,
        condition_3_not_ccbar_power: not_power,
    })
}

/// Like [`coincidence`] but always evaluates condition (3).
pub fn coincidence_full(a: &NormalForm, cap: usize) -> Result<CoincidenceVerdict, CapExceeded> {
    let mut verdict = coincidence(a, cap)?;
    if verdict.condition_3_not_ccbar_power.is_none() {
        verdict.condition_3_not_ccbar_power = Some(find_ccbar_power(a, cap)?.is_none());
    }
    Ok(verdict)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructureFailure {
    pub braid: NormalForm,
    pub reason: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct StructureReport {
    pub max_len: usize,
    /// Δ-free braids with an admissible shape and `a ∼↻ ā`.
    pub instances_checked: u64,
    /// Splits `a = w₁w₂` with `ā = w₂w₁` across all instances.
    pub splits_checked: u64,
    pub failures: Vec<StructureFailure>,
}

impl StructureReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

struct InstanceOutcome {
    instance: bool,
    splits: u64,
    failure: Option<String>,
}

fn check_instance(
    engine: &ConjugacyEngine,
    a: &NormalForm,
) -> Result<InstanceOutcome, CapExceeded> {
    let skip = InstanceOutcome {
        instance: false,
        splits: 0,
        failure: None,
    };
    if !shape_condition(a) || !engine.cyclic_class(a)?.contains(&a.reflect()) {
        return Ok(skip);
    }
    let fail = |reason: String, splits| InstanceOutcome {
        instance: true,
        splits,
        failure: Some(reason),
    };
    let Some(power) = find_ccbar_power(a, engine.cap())? else {
        return Ok(fail("a ∼↻ ā but a is not (c·c̄)^ℓ".into(), 0));
    };
    if !power.minimal || normal_form(&power.word()) != *a {
        return Ok(fail(
            format!("bad expression c={} ℓ={}", power.c, power.ell),
            0,
        ));
    }
    // Δ-free braids have a single word, so braid equality is word equality.
    let word = a.tail();
    let target = word.reflect();
    let mut splits = 0;
    for k in 0..=word.len() {
        let (w1, w2) = (word.prefix(k), word.suffix_from(k));
        if w2.concat(w1) != target {
            continue;
        }
        splits += 1;
        if !power.is_split_prefix(&w1) {
            return Ok(fail(
                format!("split w₁={w1} is not (c·c̄)^k·c for c={}", power.c),
                splits,
            ));
        }
    }
    if splits == 0 {
        return Ok(fail("no single cyclic move takes a to ā".into(), 0));
    }
    Ok(InstanceOutcome {
        instance: true,
        splits,
        failure: None,
    })
}

/// Exhaustive check, over all Δ-free braids of length `1..=max_len` with an
/// admissible shape and `a ∼↻ ā`, that
///
/// * `a = (c·c̄)^ℓ` for a minimal expression, and
/// * every split `a = w₁w₂` with `ā = w₂w₁` has `w₁ = (c·c̄)^k·c`.
///
/// Also checks that at least one such split exists for each instance.
pub fn verify_structure_lemma(
    engine: &ConjugacyEngine,
    max_len: usize,
) -> Result<StructureReport, CapExceeded> {
    let candidates: Vec<NormalForm> = (1..=max_len)
        .flat_map(delta_free_words)
        .map(|w| normal_form(&w))
        .collect();
    let outcomes: Vec<(NormalForm, InstanceOutcome)> = candidates
        .par_iter()
        .map(|a| check_instance(engine, a).map(|o| (*a, o)))
        .collect::<Result<_, _>>()?;

    let mut report = StructureReport {
        max_len,
        ..StructureReport::default()
    };
    for (a, outcome) in outcomes {
        report.instances_checked += outcome.instance as u64;
        report.splits_checked += outcome.splits;
        if let Some(reason) = outcome.failure {
            report.failures.push(StructureFailure { braid: a, reason });
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::{Letter, DEFAULT_CLOSURE_CAP};

    const CAP: usize = DEFAULT_CLOSURE_CAP;

    fn nf(s: &str) -> NormalForm {
        normal_form(&s.parse().unwrap())
    }

    fn w(s: &str) -> PosWord {
        s.parse().unwrap()
    }

    #[test]
    fn ccbar_examples() {
        let p = find_ccbar_power(&nf("1122"), CAP).unwrap().unwrap();
        assert_eq!((p.c, p.ell, p.minimal), (w("11"), 1, true));
        assert_eq!(find_ccbar_power(&nf("1111"), CAP).unwrap(), None);
        let p = find_ccbar_power(&nf("12"), CAP).unwrap().unwrap();
        assert_eq!((p.c, p.ell, p.minimal), (w("1"), 1, true));
        assert_eq!(find_ccbar_power(&nf("e"), CAP).unwrap(), None);
        assert_eq!(find_ccbar_power(&nf("112"), CAP).unwrap(), None);
    }

    #[test]
    fn ccbar_prefers_the_largest_power() {
        // (12)^3 = Δ², and also c = 121 gives 121·212 = Δ².
        let p = find_ccbar_power(&nf("121212"), CAP).unwrap().unwrap();
        assert_eq!((p.c, p.ell, p.minimal), (w("1"), 3, true));
        let p = find_ccbar_power(&nf("11221122"), CAP).unwrap().unwrap();
        assert_eq!((p.c, p.ell), (w("11"), 2));
    }

    #[test]
    fn split_prefixes() {
        let p = PalindromicPower {
            c: w("11"),
            ell: 2,
            minimal: true,
        };
        assert!(p.is_split_prefix(&w("11")));
        assert!(p.is_split_prefix(&w("112211")));
        assert!(!p.is_split_prefix(&w("1122")));
        assert!(!p.is_split_prefix(&w("e")));
    }

    #[test]
    fn shape_condition_examples() {
        assert!(shape_condition(&nf("1122")));
        assert!(!shape_condition(&nf("1112")));
        assert!(shape_condition(&nf("1221")));
        assert!(shape_condition(&nf("1111")));
        assert!(!shape_condition(&nf("1121")));
        assert!(!shape_condition(&nf("e")));
        assert!(!shape_condition(&nf("12")));
    }

    #[test]
    fn coincidence_examples() {
        let v = coincidence(&nf("1111"), CAP).unwrap();
        assert_eq!(
            (
                v.condition_1_inf_zero,
                v.condition_2_shape,
                v.condition_3_not_ccbar_power
            ),
            (true, true, Some(true))
        );
        assert!(!v.coincides);

        let v = coincidence(&nf("1122"), CAP).unwrap();
        assert_eq!(v.condition_3_not_ccbar_power, Some(false));
        assert!(v.coincides);

        let v = coincidence(&nf("1121"), CAP).unwrap();
        assert!(!v.condition_1_inf_zero);
        assert_eq!(v.condition_3_not_ccbar_power, None);
        assert!(v.coincides);
        // 1121 = (σ₁σ₂)², so condition (3) fails as well.
        let full = coincidence_full(&nf("1121"), CAP).unwrap();
        assert_eq!(full.condition_3_not_ccbar_power, Some(false));
        assert!(full.coincides);
    }

    #[test]
    fn structure_lemma_small_lengths() {
        let engine = ConjugacyEngine::default();
        let r = verify_structure_lemma(&engine, 1).unwrap();
        assert_eq!((r.instances_checked, r.splits_checked), (0, 0));
        assert!(r.passed());

        let r = verify_structure_lemma(&engine, 4).unwrap();
        assert!(r.passed(), "{:?}", r.failures);
        // 1122, 1221, 2211 and 2112.
        assert_eq!(r.instances_checked, 4);
    }

    /// Brute-force search over every word `c` of the right length.
    fn brute_powers(a: &NormalForm) -> Vec<(PosWord, usize)> {
        let n = a.len();
        let mut out = Vec::new();
        for ell in 1..=n / 2 {
            if !n.is_multiple_of(2 * ell) {
                continue;
            }
            let h = n / (2 * ell);
            for bits in 0u64..(1 << h) {
                let c = PosWord::from_letters((0..h).map(|i| {
                    if (bits >> i) & 1 == 1 {
                        Letter::S2
                    } else {
                        Letter::S1
                    }
                }))
                .unwrap();
                if normal_form(&c.concat(c.reflect()).repeat(ell)) == *a {
                    out.push((c, ell));
                }
            }
        }
        out
    }

    #[test]
    fn find_ccbar_power_is_sound_and_complete() {
        for len in 0..=12 {
            for a in crate::normal_form::normal_forms_of_length(len) {
                let found = find_ccbar_power(&a, CAP).unwrap();
                let brute = brute_powers(&a);
                match found {
                    None => assert!(brute.is_empty(), "{a} has {brute:?}"),
                    Some(p) => {
                        assert_eq!(normal_form(&p.word()), a);
                        assert!(p.minimal, "{a}");
                        let max = brute.iter().map(|&(_, l)| l).max().unwrap();
                        assert_eq!(p.ell, max, "{a}");
                    }
                }
                // Every minimal expression has the same exponent and period.
                let minimal: Vec<_> = brute
                    .iter()
                    .filter(|(c, _)| {
                        brute_powers(&normal_form(&c.concat(c.reflect())))
                            .iter()
                            .all(|&(_, k)| k == 1)
                    })
                    .collect();
                if let Some(&&(c0, l0)) = minimal.first() {
                    for &&(c, l) in &minimal {
                        assert_eq!((l, c.len()), (l0, c0.len()), "{a}");
                    }
                }
            }
        }
    }

    #[test]
    fn ccbar_powers_are_cyclic_equivalent_to_their_reflection() {
        let engine = ConjugacyEngine::default();
        for h in 1..=4 {
            for bits in 0u64..(1 << h) {
                let c = PosWord::from_letters((0..h).map(|i| {
                    if (bits >> i) & 1 == 1 {
                        Letter::S2
                    } else {
                        Letter::S1
                    }
                }))
                .unwrap();
                for ell in 1..=2 {
                    let a = normal_form(&c.concat(c.reflect()).repeat(ell));
                    assert!(
                        engine.cyclic_class(&a).unwrap().contains(&a.reflect()),
                        "{a}"
                    );
                }
            }
        }
    }
}
