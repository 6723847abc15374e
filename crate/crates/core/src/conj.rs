//! Cyclic-equivalence classes and conjugacy in `B₃⁺`.
//!
//! Two independent routes compute the positive conjugacy class of a braid:
//!
//! * the closed form: `[a] = [a]↻ ∪ [ā]↻`, built from cyclic word moves;
//! * the oracle: closure of `{a}` under conjugation by the six simple braids,
//!   keeping only positive results.
//!
//! The oracle never calls into the cyclic-class machinery.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use dashmap::DashMap;

use crate::normal_form::{normal_form, NormalForm};
use crate::word::{CapExceeded, PosWord, DEFAULT_CLOSURE_CAP};

/// A left divisor of `Δ` in `B₃⁺`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SimpleElement {
    E,
    S1,
    S2,
    S12,
    S21,
    Delta,
}

impl SimpleElement {
    pub const ALL: [SimpleElement; 6] = [
        SimpleElement::E,
        SimpleElement::S1,
        SimpleElement::S2,
        SimpleElement::S12,
        SimpleElement::S21,
        SimpleElement::Delta,
    ];

    pub fn word(self) -> PosWord {
        let text = match self {
            SimpleElement::E => "e",
            SimpleElement::S1 => "1",
            SimpleElement::S2 => "2",
            SimpleElement::S12 => "12",
            SimpleElement::S21 => "21",
            SimpleElement::Delta => "121",
        };
        text.parse().expect("simple element words are valid")
    }
}

impl fmt::Display for SimpleElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.word())
    }
}

/// Sorts by rendered text, the canonical output order.
pub fn sort_forms(forms: &mut [NormalForm]) {
    forms.sort_by_cached_key(NormalForm::sort_key);
}

/// The cyclic-equivalence class `[a]↻` of a positive braid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicClass {
    members: Vec<NormalForm>,
    lookup: HashSet<NormalForm>,
}

impl CyclicClass {
    fn from_set(lookup: HashSet<NormalForm>) -> CyclicClass {
        let mut members: Vec<_> = lookup.iter().copied().collect();
        sort_forms(&mut members);
        CyclicClass { members, lookup }
    }

    /// Members in canonical order.
    pub fn members(&self) -> &[NormalForm] {
        &self.members
    }

    pub fn contains(&self, a: &NormalForm) -> bool {
        self.lookup.contains(a)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// The lexicographically least rendered member.
    pub fn representative(&self) -> NormalForm {
        self.members[0]
    }

    pub fn as_set(&self) -> &HashSet<NormalForm> {
        &self.lookup
    }
}

/// The positive conjugacy class of a braid and its cyclic decomposition.
#[derive(Debug, Clone)]
pub struct ClassReport {
    pub input: NormalForm,
    /// All positive conjugates, in canonical order.
    pub conjugacy_class: Vec<NormalForm>,
    /// One or two disjoint cyclic classes, ordered by representative.
    pub cyclic_classes: Vec<Arc<CyclicClass>>,
    /// Whether the conjugacy class is a single cyclic class.
    pub coincides: bool,
}

impl ClassReport {
    pub fn representative(&self) -> NormalForm {
        self.conjugacy_class[0]
    }

    pub fn conjugacy_set(&self) -> HashSet<NormalForm> {
        self.conjugacy_class.iter().copied().collect()
    }
}

/// Conjugacy computations with a shared memo of cyclic classes.
///
/// The memo is keyed by every member of each computed class, so a later
/// query from any member is a single lookup. It is safe to share across
/// threads.
pub struct ConjugacyEngine {
    cap: usize,
    memo: DashMap<NormalForm, Arc<CyclicClass>>,
}

impl Default for ConjugacyEngine {
    fn default() -> Self {
        ConjugacyEngine::new(DEFAULT_CLOSURE_CAP)
    }
}

impl ConjugacyEngine {
    /// `cap` bounds every representative closure and every class closure.
    pub fn new(cap: usize) -> ConjugacyEngine {
        ConjugacyEngine {
            cap,
            memo: DashMap::new(),
        }
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    /// Number of braids with a memoized class.
    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }

    /// `[a]↻`: breadth-first closure under single-letter rotation of every
    /// word representative. A rotation by `k` letters is `k` single moves.
    pub fn cyclic_class(&self, a: &NormalForm) -> Result<Arc<CyclicClass>, CapExceeded> {
        if let Some(hit) = self.memo.get(a) {
            return Ok(Arc::clone(&hit));
        }
        let class = Arc::new(self.compute_cyclic_class(a)?);
        for m in class.members() {
            self.memo.entry(*m).or_insert_with(|| Arc::clone(&class));
        }
        Ok(class)
    }

    fn compute_cyclic_class(&self, a: &NormalForm) -> Result<CyclicClass, CapExceeded> {
        let mut seen = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(*a);
        queue.push_back(*a);
        while let Some(current) = queue.pop_front() {
            for rep in current.word().representatives_capped(self.cap)? {
                let next = normal_form(&rep.rotate_one());
                if seen.insert(next) {
                    if seen.len() > self.cap {
                        return Err(CapExceeded { cap: self.cap });
                    }
                    queue.push_back(next);
                }
            }
        }
        Ok(CyclicClass::from_set(seen))
    }

    /// `a ∼↻ b`.
    pub fn cyclic_equivalent(&self, a: &NormalForm, b: &NormalForm) -> Result<bool, CapExceeded> {
        if a.len() != b.len() {
            return Ok(false);
        }
        Ok(self.cyclic_class(a)?.contains(b))
    }

    /// Conjugacy in `B₃` of two positive braids: `b ∈ [a]↻` or `b̄ ∈ [a]↻`.
    /// For `inf(a) ≥ 1` the reflected test is redundant and skipped.
    pub fn are_conjugate(&self, a: &NormalForm, b: &NormalForm) -> Result<bool, CapExceeded> {
        if a.len() != b.len() {
            return Ok(false);
        }
        let class = self.cyclic_class(a)?;
        if class.contains(b) {
            return Ok(true);
        }
        if a.infimum() >= 1 {
            return Ok(false);
        }
        Ok(class.contains(&b.reflect()))
    }

    /// `[a] = [a]↻ ∪ [ā]↻`.
    pub fn class_report(&self, a: &NormalForm) -> Result<ClassReport, CapExceeded> {
        let own = self.cyclic_class(a)?;
        let reflected = a.reflect();
        let mut cyclic_classes = vec![Arc::clone(&own)];
        if !own.contains(&reflected) {
            cyclic_classes.push(self.cyclic_class(&reflected)?);
        }
        cyclic_classes.sort_by_cached_key(|c| c.representative().sort_key());
        let mut conjugacy_class: Vec<NormalForm> = cyclic_classes
            .iter()
            .flat_map(|c| c.members().iter().copied())
            .collect();
        sort_forms(&mut conjugacy_class);
        Ok(ClassReport {
            input: *a,
            coincides: cyclic_classes.len() == 1,
            conjugacy_class,
            cyclic_classes,
        })
    }

    /// `s⁻¹·a·s` when it is a positive braid, `None` otherwise.
    ///
    /// `s` left-divides `a·s` in `B₃⁺` exactly when some representative word
    /// of `a·s` begins with the letters of `s`; the quotient is the rest.
    pub fn conjugate_by_simple(
        &self,
        a: &NormalForm,
        s: SimpleElement,
    ) -> Result<Option<NormalForm>, CapExceeded> {
        if s == SimpleElement::E {
            return Ok(Some(*a));
        }
        let prefixes: &[PosWord] = if s == SimpleElement::Delta {
            &[PosWord::DELTA, PosWord::DELTA_ALT]
        } else {
            &[s.word()]
        };
        let product = a.word().concat(s.word());
        let mut quotients: Vec<PosWord> = product
            .representatives_capped(self.cap)?
            .into_iter()
            .filter_map(|rep| {
                prefixes
                    .iter()
                    .find(|p| rep.starts_with(p))
                    .map(|p| rep.suffix_from(p.len()))
            })
            .collect();
        quotients.sort();
        Ok(quotients.first().map(normal_form))
    }

    /// The positive conjugacy class by closure under simple conjugation.
    pub fn positive_conjugates_oracle(
        &self,
        a: &NormalForm,
    ) -> Result<HashSet<NormalForm>, CapExceeded> {
        let mut seen = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(*a);
        queue.push_back(*a);
        while let Some(current) = queue.pop_front() {
            for s in SimpleElement::ALL {
                if let Some(next) = self.conjugate_by_simple(&current, s)? {
                    if seen.insert(next) {
                        if seen.len() > self.cap {
                            return Err(CapExceeded { cap: self.cap });
                        }
                        queue.push_back(next);
                    }
                }
            }
        }
        Ok(seen)
    }
}
