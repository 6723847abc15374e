//! Canonical values for positive 3-braids.
//!
//! Every positive braid is `Δ^m · P` with `P` not left-divisible by
//! `Δ = σ₁σ₂σ₁`. In `B₃⁺` such a `P` has exactly one positive word, and that
//! word has no `121` or `212` factor, so `(m, word(P))` is a hashable key.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::word::{CapExceeded, Letter, PosWord, WordError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ShapeError {
    /// Carries the index of the leftmost `121`/`212` factor.
    #[error("word {word} is not Δ-free: relation site at index {position}")]
    NotDeltaFree { word: PosWord, position: usize },
    #[error("block exponents {exponents:?} violate the Δ-free shape")]
    BadExponents { exponents: Vec<u32> },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseNormalFormError {
    #[error("expected D^m:tail, got {0:?}")]
    Syntax(String),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Shape(#[from] ShapeError),
}

/// `Δ^infimum · tail` with `tail` Δ-free.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct NormalForm {
    infimum: u32,
    tail: PosWord,
}

impl NormalForm {
    pub const IDENTITY: NormalForm = NormalForm {
        infimum: 0,
        tail: PosWord::EMPTY,
    };

    /// Builds a normal form from parts, rejecting a tail that is not Δ-free.
    pub fn from_parts(infimum: u32, tail: PosWord) -> Result<NormalForm, ShapeError> {
        if let Some(position) = tail.first_relation_site() {
            return Err(ShapeError::NotDeltaFree {
                word: tail,
                position,
            });
        }
        Ok(NormalForm { infimum, tail })
    }

    pub fn infimum(&self) -> u32 {
        self.infimum
    }

    pub fn tail(&self) -> PosWord {
        self.tail
    }

    /// Length of the braid, `3m + |tail|`.
    pub fn len(&self) -> usize {
        3 * self.infimum as usize + self.tail.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_delta_free(&self) -> bool {
        self.infimum == 0
    }

    /// A representative word: `(121)^m` followed by the tail.
    pub fn word(&self) -> PosWord {
        PosWord::DELTA
            .repeat(self.infimum as usize)
            .concat(self.tail)
    }

    /// Conjugation by `Δ`. `Δ` itself is fixed, so only the tail swaps letters.
    pub fn reflect(&self) -> NormalForm {
        NormalForm {
            infimum: self.infimum,
            tail: self.tail.reflect(),
        }
    }

    /// The key used for deterministic ordering of rendered output.
    pub fn sort_key(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "D^{}:{}", self.infimum, self.tail)
    }
}

impl fmt::Debug for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NormalForm({self})")
    }
}

impl FromStr for NormalForm {
    type Err = ParseNormalFormError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let syntax = || ParseNormalFormError::Syntax(s.to_string());
        let rest = s.strip_prefix("D^").ok_or_else(syntax)?;
        let (m, tail) = rest.split_once(':').ok_or_else(syntax)?;
        if m.is_empty() || !m.bytes().all(|b| b.is_ascii_digit()) {
            return Err(syntax());
        }
        let infimum = m.parse::<u32>().map_err(|_| syntax())?;
        let tail: PosWord = tail.parse()?;
        Ok(NormalForm::from_parts(infimum, tail)?)
    }
}

impl Serialize for NormalForm {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for NormalForm {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Normal form by left-to-right Δ extraction.
///
/// The running tail is Δ-free; appending a letter `x` can only create a
/// `121`/`212` factor at the very end, i.e. the tail is `T'·x·x̄`. Then
/// `T'·x·x̄·x = T'·Δ = Δ·T̄'`, so one more `Δ` moves to the front and the tail
/// becomes `T̄'`.
pub fn normal_form(w: &PosWord) -> NormalForm {
    let mut infimum = 0u32;
    let mut tail = PosWord::EMPTY;
    for x in w.letters() {
        let n = tail.len();
        if n >= 2 && tail.get(n - 1) == Some(x.other()) && tail.get(n - 2) == Some(x) {
            tail = tail.prefix(n - 2).reflect();
            infimum += 1;
        } else {
            tail = tail.push(x);
        }
    }
    NormalForm { infimum, tail }
}

/// Normal form through the representative closure.
///
/// While some representative carries a `121`/`212` factor, write it as
/// `u·Δ·v = Δ·ū·v`, strip the `Δ` and continue on `ū·v`. This is an
/// independent route to [`normal_form`] and is checked against it.
pub fn normal_form_by_closure(w: &PosWord, cap: usize) -> Result<NormalForm, CapExceeded> {
    let mut infimum = 0u32;
    let mut current = *w;
    'outer: loop {
        let mut reps: Vec<PosWord> = current.representatives_capped(cap)?.into_iter().collect();
        reps.sort();
        for rep in reps {
            if let Some(i) = rep.first_relation_site() {
                current = rep.prefix(i).reflect().concat(rep.suffix_from(i + 3));
                infimum += 1;
                continue 'outer;
            }
        }
        // Every representative is site-free, so there is exactly one.
        return Ok(NormalForm {
            infimum,
            tail: current,
        });
    }
}

pub fn infimum(w: &PosWord) -> u32 {
    normal_form(w).infimum()
}

/// Which of the two Δ-free shapes a block form has.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LemmaShape {
    /// No blocks: the identity.
    Identity,
    /// Odd block count, ending on the starting generator.
    First,
    /// Even block count, ending on the other generator.
    Second,
}

/// Run-length encoding `σᵢ^{a₁} σⱼ^{a₂} σᵢ^{a₃} …` of a Δ-free word.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BlockForm {
    start: Letter,
    exponents: Vec<u32>,
}

impl BlockForm {
    /// Validates the exponent constraints: ends `≥ 1`, interior `≥ 2`.
    pub fn new(start: Letter, exponents: Vec<u32>) -> Result<BlockForm, ShapeError> {
        let k = exponents.len();
        let interior_ok = |(i, &a): (usize, &u32)| a >= if i == 0 || i + 1 == k { 1 } else { 2 };
        let ok = exponents.iter().enumerate().all(interior_ok);
        if !ok {
            return Err(ShapeError::BadExponents { exponents });
        }
        let start = if k == 0 { Letter::S1 } else { start };
        Ok(BlockForm { start, exponents })
    }

    /// Decomposes a Δ-free word.
    pub fn from_word(tail: &PosWord) -> Result<BlockForm, ShapeError> {
        if let Some(position) = tail.first_relation_site() {
            return Err(ShapeError::NotDeltaFree {
                word: *tail,
                position,
            });
        }
        let mut exponents: Vec<u32> = Vec::new();
        let mut prev = None;
        for l in tail.letters() {
            if prev == Some(l) {
                *exponents.last_mut().unwrap() += 1;
            } else {
                exponents.push(1);
                prev = Some(l);
            }
        }
        BlockForm::new(tail.first().unwrap_or(Letter::S1), exponents)
    }

    pub fn start(&self) -> Letter {
        self.start
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn block_count(&self) -> usize {
        self.exponents.len()
    }

    pub fn shape(&self) -> LemmaShape {
        match self.exponents.len() {
            0 => LemmaShape::Identity,
            k if k % 2 == 1 => LemmaShape::First,
            _ => LemmaShape::Second,
        }
    }

    pub fn to_word(&self) -> PosWord {
        let mut w = PosWord::EMPTY;
        let mut letter = self.start;
        for &a in &self.exponents {
            w = w.concat(PosWord::power_of(letter, a as usize));
            letter = letter.other();
        }
        w
    }

    /// Every valid block form of total length `len`, in textual word order.
    pub fn enumerate(len: usize) -> Vec<BlockForm> {
        if len == 0 {
            return vec![BlockForm {
                start: Letter::S1,
                exponents: Vec::new(),
            }];
        }
        let mut tails = Vec::new();
        let mut current = Vec::new();
        for first in 1..=len {
            current.push(first as u32);
            extend_blocks(len - first, &mut current, &mut tails);
            current.pop();
        }
        let mut out = Vec::with_capacity(2 * tails.len());
        for start in [Letter::S1, Letter::S2] {
            out.extend(tails.iter().map(|e| BlockForm {
                start,
                exponents: e.clone(),
            }));
        }
        out.sort_by_key(|b| b.to_word());
        out
    }
}

fn extend_blocks(remaining: usize, current: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if remaining == 0 {
        out.push(current.clone());
        return;
    }
    // The closing block may be a single letter.
    current.push(remaining as u32);
    out.push(current.clone());
    current.pop();
    for interior in 2..remaining {
        current.push(interior as u32);
        extend_blocks(remaining - interior, current, out);
        current.pop();
    }
}

/// All Δ-free words of the given length.
pub fn delta_free_words(len: usize) -> Vec<PosWord> {
    BlockForm::enumerate(len)
        .iter()
        .map(BlockForm::to_word)
        .collect()
}

/// Every positive braid of the given length, one normal form each.
pub fn normal_forms_of_length(len: usize) -> Vec<NormalForm> {
    let mut out = Vec::new();
    for m in 0..=len / 3 {
        out.extend(
            delta_free_words(len - 3 * m)
                .into_iter()
                .map(|tail| NormalForm {
                    infimum: m as u32,
                    tail,
                }),
        );
    }
    out
}
