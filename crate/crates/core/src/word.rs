//! Positive words over the two generators of the 3-strand braid monoid.
//!
//! A word is packed into a `u64`: bit `i` is clear for `σ₁` and set for `σ₂`.
//! Bits at or above the length are always zero, so derived equality and
//! hashing are exact.

use std::cmp::Ordering;
use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Longest word a [`PosWord`] can hold.
pub const MAX_WORD_LEN: usize = 64;

/// Default bound on the size of a representative closure.
pub const DEFAULT_CLOSURE_CAP: usize = 1 << 22;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("invalid character {found:?} at index {index}; expected '1' or '2'")]
    InvalidLetter { index: usize, found: char },
    #[error("empty input; the identity word is written \"e\"")]
    Empty,
    #[error("word length {0} exceeds the maximum of {MAX_WORD_LEN}")]
    TooLong(usize),
    #[error("rotation by {k} is out of range for a word of length {len}")]
    RotationOutOfRange { k: usize, len: usize },
}

/// The closure of a computation grew past its configured bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("closure exceeded the cap of {cap} elements")]
pub struct CapExceeded {
    pub cap: usize,
}

/// A generator `σ₁` or `σ₂`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    S1,
    S2,
}

impl Letter {
    pub fn index(self) -> u8 {
        match self {
            Letter::S1 => 1,
            Letter::S2 => 2,
        }
    }

    pub fn from_index(index: u8) -> Option<Letter> {
        match index {
            1 => Some(Letter::S1),
            2 => Some(Letter::S2),
            _ => None,
        }
    }

    /// The other generator; this is the reflection `σᵢ ↦ σ₃₋ᵢ`.
    pub fn other(self) -> Letter {
        match self {
            Letter::S1 => Letter::S2,
            Letter::S2 => Letter::S1,
        }
    }

    fn bit(self) -> u64 {
        match self {
            Letter::S1 => 0,
            Letter::S2 => 1,
        }
    }

    fn from_bit(bit: u64) -> Letter {
        if bit & 1 == 0 {
            Letter::S1
        } else {
            Letter::S2
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.index())
    }
}

fn mask(len: usize) -> u64 {
    if len >= 64 {
        u64::MAX
    } else {
        (1u64 << len) - 1
    }
}

/// A word in the free monoid on `{σ₁, σ₂}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct PosWord {
    bits: u64,
    len: u8,
}

impl PosWord {
    pub const EMPTY: PosWord = PosWord { bits: 0, len: 0 };

    /// `σ₁σ₂σ₁`, one spelling of the Garside element.
    pub const DELTA: PosWord = PosWord {
        bits: 0b010,
        len: 3,
    };

    /// `σ₂σ₁σ₂`, the other spelling of the Garside element.
    pub const DELTA_ALT: PosWord = PosWord {
        bits: 0b101,
        len: 3,
    };

    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Result<PosWord, WordError> {
        let mut w = PosWord::EMPTY;
        for l in letters {
            if w.len() == MAX_WORD_LEN {
                return Err(WordError::TooLong(MAX_WORD_LEN + 1));
            }
            w = w.push(l);
        }
        Ok(w)
    }

    /// `letter^n`.
    pub fn power_of(letter: Letter, n: usize) -> PosWord {
        assert!(n <= MAX_WORD_LEN, "word too long");
        PosWord {
            bits: if letter == Letter::S2 { mask(n) } else { 0 },
            len: n as u8,
        }
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> Option<Letter> {
        (i < self.len()).then(|| Letter::from_bit(self.bits >> i))
    }

    pub fn first(&self) -> Option<Letter> {
        self.get(0)
    }

    pub fn last(&self) -> Option<Letter> {
        self.len().checked_sub(1).and_then(|i| self.get(i))
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        (0..self.len()).map(move |i| Letter::from_bit(self.bits >> i))
    }

    /// Appends one letter. Panics past [`MAX_WORD_LEN`].
    pub fn push(self, letter: Letter) -> PosWord {
        assert!(self.len() < MAX_WORD_LEN, "word too long");
        PosWord {
            bits: self.bits | (letter.bit() << self.len),
            len: self.len + 1,
        }
    }

    /// Concatenation. Panics past [`MAX_WORD_LEN`].
    pub fn concat(self, other: PosWord) -> PosWord {
        let len = self.len() + other.len();
        assert!(len <= MAX_WORD_LEN, "word too long");
        let shifted = if other.is_empty() {
            0
        } else {
            other.bits << self.len
        };
        PosWord {
            bits: self.bits | shifted,
            len: len as u8,
        }
    }

    pub fn checked_concat(self, other: PosWord) -> Result<PosWord, WordError> {
        let len = self.len() + other.len();
        if len > MAX_WORD_LEN {
            return Err(WordError::TooLong(len));
        }
        Ok(self.concat(other))
    }

    /// `self` repeated `n` times. Panics past [`MAX_WORD_LEN`].
    pub fn repeat(self, n: usize) -> PosWord {
        (0..n).fold(PosWord::EMPTY, |acc, _| acc.concat(self))
    }

    /// Letters `start..end`.
    pub fn slice(&self, start: usize, end: usize) -> PosWord {
        assert!(start <= end && end <= self.len(), "slice out of range");
        let len = end - start;
        let bits = if len == 0 {
            0
        } else {
            (self.bits >> start) & mask(len)
        };
        PosWord {
            bits,
            len: len as u8,
        }
    }

    pub fn prefix(&self, n: usize) -> PosWord {
        self.slice(0, n)
    }

    pub fn suffix_from(&self, start: usize) -> PosWord {
        self.slice(start, self.len())
    }

    pub fn starts_with(&self, prefix: &PosWord) -> bool {
        prefix.len() <= self.len() && self.prefix(prefix.len()) == *prefix
    }

    /// Letterwise swap `σ₁ ↔ σ₂`.
    pub fn reflect(self) -> PosWord {
        PosWord {
            bits: self.bits ^ mask(self.len()),
            len: self.len,
        }
    }

    /// Moves the first `k` letters to the end.
    pub fn rotate(self, k: usize) -> Result<PosWord, WordError> {
        if k > self.len() {
            return Err(WordError::RotationOutOfRange { k, len: self.len() });
        }
        Ok(self.suffix_from(k).concat(self.prefix(k)))
    }

    /// Single-letter rotation `x·u ↦ u·x`; the empty word is fixed.
    pub fn rotate_one(self) -> PosWord {
        if self.is_empty() {
            self
        } else {
            self.suffix_from(1).concat(self.prefix(1))
        }
    }

    /// Whether the letters at `i, i+1, i+2` read `121` or `212`.
    pub fn is_relation_site(&self, i: usize) -> bool {
        if i + 3 > self.len() {
            return false;
        }
        let w = (self.bits >> i) & 0b111;
        w == 0b010 || w == 0b101
    }

    /// Leftmost position of a `121` or `212` factor.
    pub fn first_relation_site(&self) -> Option<usize> {
        (0..self.len().saturating_sub(2)).find(|&i| self.is_relation_site(i))
    }

    pub fn has_relation_site(&self) -> bool {
        self.first_relation_site().is_some()
    }

    /// Every word reachable by rewriting one `121 ↔ 212` site.
    pub fn relation_neighbors(&self) -> Vec<PosWord> {
        (0..self.len().saturating_sub(2))
            .filter(|&i| self.is_relation_site(i))
            .map(|i| PosWord {
                bits: self.bits ^ (0b111 << i),
                len: self.len,
            })
            .collect()
    }

    /// All positive words representing the same braid as `self`.
    pub fn representatives(&self) -> Result<HashSet<PosWord>, CapExceeded> {
        self.representatives_capped(DEFAULT_CLOSURE_CAP)
    }

    /// Breadth-first closure under [`PosWord::relation_neighbors`].
    pub fn representatives_capped(&self, cap: usize) -> Result<HashSet<PosWord>, CapExceeded> {
        let mut seen = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(*self);
        queue.push_back(*self);
        while let Some(w) = queue.pop_front() {
            for n in w.relation_neighbors() {
                if seen.insert(n) {
                    if seen.len() > cap {
                        return Err(CapExceeded { cap });
                    }
                    queue.push_back(n);
                }
            }
        }
        Ok(seen)
    }
}

impl PartialOrd for PosWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic on the textual form, a proper prefix sorting first.
impl Ord for PosWord {
    fn cmp(&self, other: &Self) -> Ordering {
        let common = self.len().min(other.len());
        let diff = (self.bits ^ other.bits) & mask(common);
        if diff != 0 {
            let i = diff.trailing_zeros();
            return if (self.bits >> i) & 1 == 0 {
                Ordering::Less
            } else {
                Ordering::Greater
            };
        }
        self.len.cmp(&other.len)
    }
}

impl fmt::Display for PosWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("e");
        }
        for l in self.letters() {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for PosWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PosWord({self})")
    }
}

impl FromStr for PosWord {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "e" {
            return Ok(PosWord::EMPTY);
        }
        if s.is_empty() {
            return Err(WordError::Empty);
        }
        let mut w = PosWord::EMPTY;
        for (index, c) in s.chars().enumerate() {
            let letter = match c {
                '1' => Letter::S1,
                '2' => Letter::S2,
                found => return Err(WordError::InvalidLetter { index, found }),
            };
            if w.len() == MAX_WORD_LEN {
                return Err(WordError::TooLong(s.chars().count()));
            }
            w = w.push(letter);
        }
        Ok(w)
    }
}
