//! Exhaustive verification suites over all positive braids up to a length.
//!
//! Each suite walks every braid (or word) of each length in parallel and
//! collects counterexamples instead of stopping at the first one.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::conj::{ClassReport, ConjugacyEngine, SimpleElement};
use crate::normal_form::{
    normal_form, normal_form_by_closure, normal_forms_of_length, BlockForm, NormalForm,
};
use crate::structure::{coincidence, find_ccbar_power, verify_structure_lemma};
use crate::word::{CapExceeded, Letter, PosWord};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    Oracle,
    OneStep,
    InfGe1,
    Uniqueness,
    Shape,
    Prop,
    Structure,
    All,
}

impl Suite {
    pub const INDIVIDUAL: [Suite; 7] = [
        Suite::Oracle,
        Suite::OneStep,
        Suite::InfGe1,
        Suite::Uniqueness,
        Suite::Shape,
        Suite::Prop,
        Suite::Structure,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Oracle => "oracle",
            Suite::OneStep => "one-step",
            Suite::InfGe1 => "inf-ge-1",
            Suite::Uniqueness => "uniqueness",
            Suite::Shape => "shape",
            Suite::Prop => "prop",
            Suite::Structure => "structure",
            Suite::All => "all",
        }
    }

    /// Length bound used when the caller gives none.
    pub fn default_max_len(self) -> usize {
        match self {
            Suite::Oracle | Suite::OneStep | Suite::Prop => 10,
            Suite::InfGe1 => 12,
            Suite::Uniqueness | Suite::Shape | Suite::Structure => 14,
            Suite::All => 10,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::INDIVIDUAL
            .into_iter()
            .chain([Suite::All])
            .find(|suite| suite.name() == s)
            .ok_or_else(|| format!("unknown suite {s:?}"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub instance: String,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub max_len: usize,
    pub instances_checked: u64,
    /// Suite-specific tallies, e.g. class reports or splits inspected.
    pub counts: BTreeMap<String, u64>,
    pub failures: Vec<Failure>,
}

impl SuiteReport {
    fn new(suite: Suite, max_len: usize) -> SuiteReport {
        SuiteReport {
            suite: suite.name().to_string(),
            max_len,
            instances_checked: 0,
            counts: BTreeMap::new(),
            failures: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn bump(&mut self, key: &str, by: u64) {
        *self.counts.entry(key.to_string()).or_default() += by;
    }

    fn fail(&mut self, instance: impl fmt::Display, detail: impl Into<String>) {
        self.failures.push(Failure {
            instance: instance.to_string(),
            detail: detail.into(),
        });
    }
}

/// Per-instance outcome: counters to add and failure details.
#[derive(Default)]
struct Tally {
    counts: Vec<(&'static str, u64)>,
    failures: Vec<String>,
}

impl Tally {
    fn count(&mut self, key: &'static str) {
        self.counts.push((key, 1));
    }

    fn check(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(detail());
        }
    }
}

fn run_over<T, F>(report: &mut SuiteReport, items: Vec<T>, check: F) -> Result<(), CapExceeded>
where
    T: fmt::Display + Send + Sync,
    F: Fn(&T) -> Result<Tally, CapExceeded> + Sync,
{
    let outcomes: Vec<Tally> = items.par_iter().map(&check).collect::<Result<_, _>>()?;
    for (item, tally) in items.iter().zip(outcomes) {
        report.instances_checked += 1;
        for (key, by) in tally.counts {
            report.bump(key, by);
        }
        for detail in tally.failures {
            report.fail(item, detail);
        }
    }
    Ok(())
}

fn all_words(len: usize) -> Vec<PosWord> {
    (0u64..(1u64 << len))
        .map(|bits| {
            PosWord::from_letters((0..len).map(|i| {
                if (bits >> i) & 1 == 1 {
                    Letter::S2
                } else {
                    Letter::S1
                }
            }))
            .expect("length is bounded")
        })
        .collect()
}

fn braids_up_to(max_len: usize) -> Vec<NormalForm> {
    (0..=max_len).flat_map(normal_forms_of_length).collect()
}

/// The class-report invariants: one or two disjoint cyclic classes whose
/// union is the conjugacy class.
fn check_report_shape(report: &ClassReport, tally: &mut Tally) {
    tally.count("class_reports");
    let n = report.cyclic_classes.len();
    tally.check((1..=2).contains(&n), || format!("{n} cyclic classes"));
    let union: usize = report.cyclic_classes.iter().map(|c| c.len()).sum();
    tally.check(union == report.conjugacy_class.len(), || {
        "cyclic classes overlap or miss members".to_string()
    });
    tally.check(report.coincides == (n == 1), || {
        "coincides flag mismatch".to_string()
    });
}

/// The closed-form class against the simple-conjugation oracle, the class
/// report invariants, reflection equivariance, and that the reports
/// partition each length.
pub fn suite_oracle(engine: &ConjugacyEngine, max_len: usize) -> Result<SuiteReport, CapExceeded> {
    let mut report = SuiteReport::new(Suite::Oracle, max_len);
    run_over(&mut report, braids_up_to(max_len), |a| {
        let mut tally = Tally::default();
        let class = engine.class_report(a)?;
        check_report_shape(&class, &mut tally);
        let oracle = engine.positive_conjugates_oracle(a)?;
        tally.check(oracle == class.conjugacy_set(), || {
            format!(
                "oracle has {} braids, closed form has {}",
                oracle.len(),
                class.conjugacy_class.len()
            )
        });
        let own = engine.cyclic_class(a)?;
        let mirrored: HashSet<NormalForm> = own.members().iter().map(NormalForm::reflect).collect();
        tally.check(
            &mirrored == engine.cyclic_class(&a.reflect())?.as_set(),
            || "cyclic class is not reflection-equivariant".to_string(),
        );
        Ok(tally)
    })?;

    // Each braid's class must be the same set whichever member computed it.
    for len in 0..=max_len {
        let mut class_of: HashMap<NormalForm, NormalForm> = HashMap::new();
        let forms = normal_forms_of_length(len);
        for a in &forms {
            let class = engine.class_report(a)?;
            for m in &class.conjugacy_class {
                if m.len() != len {
                    report.fail(a, format!("class member {m} has a different length"));
                }
                let rep = class.representative();
                if let Some(prev) = class_of.insert(*m, rep) {
                    if prev != rep {
                        report.fail(m, format!("in classes of {prev} and {rep}"));
                    }
                }
            }
        }
        if class_of.len() != forms.len() {
            report.fail(
                format!("length {len}"),
                "class reports do not cover the length",
            );
        }
        let classes: HashSet<_> = class_of.values().collect();
        report.bump("classes", classes.len() as u64);
    }
    Ok(report)
}

/// Every positive simple conjugate stays in `[a]↻ ∪ [ā]↻`.
pub fn suite_one_step(
    engine: &ConjugacyEngine,
    max_len: usize,
) -> Result<SuiteReport, CapExceeded> {
    let mut report = SuiteReport::new(Suite::OneStep, max_len);
    run_over(&mut report, braids_up_to(max_len), |a| {
        let mut tally = Tally::default();
        let own = engine.cyclic_class(a)?;
        let mirror = engine.cyclic_class(&a.reflect())?;
        for s in SimpleElement::ALL {
            match engine.conjugate_by_simple(a, s)? {
                Some(b) => {
                    tally.count("positive_conjugations");
                    tally.check(own.contains(&b) || mirror.contains(&b), || {
                        format!("{s}⁻¹·a·{s} = {b} is outside [a]↻ ∪ [ā]↻")
                    });
                }
                None => tally.count("not_positive"),
            }
        }
        Ok(tally)
    })?;
    Ok(report)
}

/// `inf(a) ≥ 1` implies `ā ∈ [a]↻`.
pub fn suite_inf_ge_1(
    engine: &ConjugacyEngine,
    max_len: usize,
) -> Result<SuiteReport, CapExceeded> {
    let mut report = SuiteReport::new(Suite::InfGe1, max_len);
    let items: Vec<NormalForm> = braids_up_to(max_len)
        .into_iter()
        .filter(|a| a.infimum() >= 1)
        .collect();
    run_over(&mut report, items, |a| {
        let mut tally = Tally::default();
        let class = engine.cyclic_class(a)?;
        tally.check(class.contains(&a.reflect()), || "ā ∉ [a]↻".to_string());
        Ok(tally)
    })?;
    Ok(report)
}

/// Over every word: Δ-free braids have exactly one word, and two words have
/// the same normal form exactly when one rewrites to the other. The
/// normal form is also recomputed through the representative closure.
pub fn suite_uniqueness(
    engine: &ConjugacyEngine,
    max_len: usize,
) -> Result<SuiteReport, CapExceeded> {
    let mut report = SuiteReport::new(Suite::Uniqueness, max_len);
    let cap = engine.cap();
    for len in 0..=max_len {
        let words = all_words(len);
        let forms: Vec<NormalForm> = words.par_iter().map(normal_form).collect();
        let mut groups: HashMap<NormalForm, Vec<PosWord>> = HashMap::new();
        for (w, f) in words.iter().zip(&forms) {
            groups.entry(*f).or_default().push(*w);
        }
        let mut group_list: Vec<(NormalForm, Vec<PosWord>)> = groups.into_iter().collect();
        group_list.sort_by_cached_key(|(f, _)| f.sort_key());
        let outcomes: Vec<Tally> = group_list
            .par_iter()
            .map(|(f, members)| -> Result<Tally, CapExceeded> {
                let mut tally = Tally::default();
                let reps = members[0].representatives_capped(cap)?;
                let same: HashSet<PosWord> = members.iter().copied().collect();
                tally.check(reps == same, || {
                    format!(
                        "{} words normalize here but the closure has {}",
                        same.len(),
                        reps.len()
                    )
                });
                if f.is_delta_free() {
                    tally.count("delta_free");
                    tally.check(reps.len() == 1, || {
                        format!("Δ-free braid has {} words", reps.len())
                    });
                    tally.check(BlockForm::from_word(&f.tail()).is_ok(), || {
                        "Δ-free word fails the block shape".to_string()
                    });
                }
                for w in members.iter().take(4) {
                    let by_closure = normal_form_by_closure(w, cap)?;
                    tally.check(by_closure == *f, || {
                        format!("closure route gives {by_closure} for {w}")
                    });
                }
                Ok(tally)
            })
            .collect::<Result<_, _>>()?;
        for ((f, members), tally) in group_list.iter().zip(outcomes) {
            report.instances_checked += members.len() as u64;
            for (key, by) in tally.counts {
                report.bump(key, by);
            }
            for detail in tally.failures {
                report.fail(f, detail);
            }
        }
        report.bump("braids", group_list.len() as u64);
    }
    Ok(report)
}

/// The Δ-free braids are precisely the words of the block shape: every
/// shape-valid word is Δ-free by both normalization routes, every Δ-free
/// braid's word is shape-valid, and the two counts agree.
pub fn suite_shape(engine: &ConjugacyEngine, max_len: usize) -> Result<SuiteReport, CapExceeded> {
    let mut report = SuiteReport::new(Suite::Shape, max_len);
    let cap = engine.cap();
    for len in 0..=max_len {
        let blocks = BlockForm::enumerate(len);
        let outcomes: Vec<Tally> = blocks
            .par_iter()
            .map(|b| -> Result<Tally, CapExceeded> {
                let mut tally = Tally::default();
                let w = b.to_word();
                tally.check(BlockForm::from_word(&w).as_ref() == Ok(b), || {
                    "block form does not round-trip".to_string()
                });
                tally.check(normal_form(&w).infimum() == 0, || {
                    "greedy infimum > 0".into()
                });
                tally.check(normal_form_by_closure(&w, cap)?.infimum() == 0, || {
                    "closure infimum > 0".into()
                });
                Ok(tally)
            })
            .collect::<Result<_, _>>()?;
        for (b, tally) in blocks.iter().zip(outcomes) {
            report.instances_checked += 1;
            for detail in tally.failures {
                report.fail(b.to_word(), detail);
            }
        }

        let words = all_words(len);
        let delta_free: HashSet<PosWord> = words
            .par_iter()
            .map(normal_form)
            .filter(|f| f.is_delta_free())
            .map(|f| f.tail())
            .collect();
        for w in &delta_free {
            if BlockForm::from_word(w).is_err() {
                report.fail(w, "Δ-free braid outside the block shape");
            }
        }
        if delta_free.len() != blocks.len() {
            report.fail(
                format!("length {len}"),
                format!(
                    "{} Δ-free braids vs {} block forms",
                    delta_free.len(),
                    blocks.len()
                ),
            );
        }
        report.bump("delta_free_braids", delta_free.len() as u64);
    }
    Ok(report)
}

/// The three-condition verdict against the direct test `ā ∈ [a]↻` and the
/// class report, plus `a = (c·c̄)^ℓ ⟹ a ∼↻ ā`.
pub fn suite_prop(engine: &ConjugacyEngine, max_len: usize) -> Result<SuiteReport, CapExceeded> {
    let mut report = SuiteReport::new(Suite::Prop, max_len);
    let cap = engine.cap();
    run_over(&mut report, braids_up_to(max_len), |a| {
        let mut tally = Tally::default();
        let verdict = coincidence(a, cap)?;
        let direct = engine.cyclic_class(a)?.contains(&a.reflect());
        let class = engine.class_report(a)?;
        check_report_shape(&class, &mut tally);
        tally.check(verdict.coincides == direct, || {
            format!("verdict {} but ā ∈ [a]↻ is {direct}", verdict.coincides)
        });
        tally.check(class.coincides == direct, || {
            "class report disagrees".into()
        });
        if verdict.coincides {
            tally.count("coincide");
        }
        if let Some(p) = find_ccbar_power(a, cap)? {
            tally.count("ccbar_powers");
            tally.check(direct, || format!("(c·c̄)^ℓ with c={} but a ≁↻ ā", p.c));
        }
        Ok(tally)
    })?;
    Ok(report)
}

pub fn suite_structure(
    engine: &ConjugacyEngine,
    max_len: usize,
) -> Result<SuiteReport, CapExceeded> {
    let mut report = SuiteReport::new(Suite::Structure, max_len);
    let lemma = verify_structure_lemma(engine, max_len)?;
    report.instances_checked = lemma.instances_checked;
    report.bump("splits_checked", lemma.splits_checked);
    for f in lemma.failures {
        report.fail(f.braid, f.reason);
    }
    Ok(report)
}

/// Runs one suite, or every suite for [`Suite::All`].
pub fn run_suite(
    engine: &ConjugacyEngine,
    suite: Suite,
    max_len: usize,
) -> Result<Vec<SuiteReport>, CapExceeded> {
    let one = match suite {
        Suite::Oracle => suite_oracle(engine, max_len)?,
        Suite::OneStep => suite_one_step(engine, max_len)?,
        Suite::InfGe1 => suite_inf_ge_1(engine, max_len)?,
        Suite::Uniqueness => suite_uniqueness(engine, max_len)?,
        Suite::Shape => suite_shape(engine, max_len)?,
        Suite::Prop => suite_prop(engine, max_len)?,
        Suite::Structure => suite_structure(engine, max_len)?,
        Suite::All => {
            let mut out = Vec::new();
            for s in Suite::INDIVIDUAL {
                out.extend(run_suite(engine, s, max_len)?);
            }
            return Ok(out);
        }
    };
    Ok(vec![one])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_roundtrip() {
        for s in Suite::INDIVIDUAL.into_iter().chain([Suite::All]) {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("bogus".parse::<Suite>().is_err());
    }

    #[test]
    fn every_suite_passes_at_small_length() {
        let engine = ConjugacyEngine::default();
        for report in run_suite(&engine, Suite::All, 6).unwrap() {
            assert!(report.passed(), "{}: {:?}", report.suite, report.failures);
            assert!(report.instances_checked > 0, "{}", report.suite);
        }
    }

    #[test]
    fn oracle_suite_counts_length_four_classes() {
        let engine = ConjugacyEngine::default();
        let r = suite_oracle(&engine, 4).unwrap();
        // Lengths 0..=4 have 1, 1, 2, 2, 3 classes.
        assert_eq!(r.counts["classes"], 9);
    }
}
