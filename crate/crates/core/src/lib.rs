//! Conjugacy classes of positive 3-braids.
//!
//! Two positive braids in `B₃` are conjugate exactly when one is cyclically
//! equivalent to the other or to its reflection `ā = Δ⁻¹aΔ`. This crate
//! computes normal forms, cyclic classes and full positive conjugacy classes,
//! decides when the two coincide, and checks all of it exhaustively against
//! a brute-force oracle built from conjugation by simple braids.

pub mod conj;
pub mod normal_form;
pub mod structure;
pub mod verify;
pub mod word;

pub use conj::{ClassReport, ConjugacyEngine, CyclicClass, SimpleElement};
pub use normal_form::{
    delta_free_words, infimum, normal_form, normal_forms_of_length, BlockForm, LemmaShape,
    NormalForm, ShapeError,
};
pub use structure::{
    coincidence, coincidence_full, find_ccbar_power, shape_condition, verify_structure_lemma,
    CoincidenceVerdict, PalindromicPower, StructureReport,
};
pub use verify::{Suite, SuiteReport};
pub use word::{CapExceeded, Letter, PosWord, WordError, DEFAULT_CLOSURE_CAP, MAX_WORD_LEN};
