//! Alphabets, words, periodic expansion and longest-common-subsequence kernels.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{out_of_range, FrogError, Result};

/// Letters are the integers `1..=size`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Alphabet {
    size: u32,
}

impl Alphabet {
    pub fn new(size: u32) -> Result<Self> {
        if size == 0 {
            return Err(out_of_range("alphabet size", 0, ">= 1"));
        }
        Ok(Alphabet { size })
    }

    pub fn size(self) -> u32 {
        self.size
    }

    pub fn contains(self, letter: u32) -> bool {
        (1..=self.size).contains(&letter)
    }

    pub fn check(self, letter: u32) -> Result<()> {
        if self.contains(letter) {
            Ok(())
        } else {
            Err(FrogError::LetterOutOfRange {
                letter,
                sigma: self.size,
            })
        }
    }

    pub fn letters(self) -> impl Iterator<Item = u32> {
        1..=self.size
    }
}

/// A finite word over 1-based integer letters.
///
/// The textual form is comma-separated decimal letters, e.g. `1,2,2,1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(Vec<u32>);

impl Word {
    pub fn new(letters: Vec<u32>) -> Result<Self> {
        if let Some(&bad) = letters.iter().find(|&&l| l == 0) {
            return Err(FrogError::InvalidInput(format!(
                "letters are 1-based, got {bad}"
            )));
        }
        Ok(Word(letters))
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[u32] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<u32> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Largest letter appearing in the word, 0 for the empty word.
    pub fn max_letter(&self) -> u32 {
        self.0.iter().copied().max().unwrap_or(0)
    }

    pub fn fits(&self, alphabet: Alphabet) -> bool {
        self.0.iter().all(|&l| alphabet.contains(l))
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = FrogError;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Word::empty());
        }
        let letters = s
            .split(',')
            .map(|tok| {
                tok.trim()
                    .parse::<u32>()
                    .map_err(|e| FrogError::InvalidInput(format!("bad letter {tok:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Word::new(letters)
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// First `n` letters of the infinite repetition of `base`.
pub fn periodic_expand(base: &Word, n: usize) -> Result<Word> {
    if n == 0 {
        return Ok(Word::empty());
    }
    if base.is_empty() {
        return Err(FrogError::InvalidInput(
            "cannot expand an empty base word".into(),
        ));
    }
    Ok(Word(base.0.iter().copied().cycle().take(n).collect()))
}

/// `1,2,…,k,k,…,2,1`.
pub fn zigzag_word(k: usize) -> Result<Word> {
    if k < 1 {
        return Err(out_of_range("k", k as i64, ">= 1"));
    }
    let up = 1..=k as u32;
    Ok(Word(up.clone().chain(up.rev()).collect()))
}

/// `1,2,…,k`, the baseline word with uniform blind-frog stationary law.
pub fn increasing_word(k: usize) -> Result<Word> {
    if k < 1 {
        return Err(out_of_range("k", k as i64, ">= 1"));
    }
    Ok(Word((1..=k as u32).collect()))
}

/// True iff `w` is not a whole power `U U ⋯ U` of a shorter word.
pub fn is_irreducible(w: &Word) -> bool {
    let n = w.len();
    (1..n)
        .filter(|&d| n.is_multiple_of(d))
        .all(|d| (d..n).any(|i| w.0[i] != w.0[i - d]))
}

/// Classical LCS dynamic program with two rolling rows sized by the shorter word.
pub fn lcs_length(u: &[u32], v: &[u32]) -> usize {
    let (short, long) = if u.len() <= v.len() { (u, v) } else { (v, u) };
    if short.is_empty() {
        return 0;
    }
    let mut prev = vec![0usize; short.len() + 1];
    let mut cur = vec![0usize; short.len() + 1];
    for &b in long {
        for (j, &a) in short.iter().enumerate() {
            cur[j + 1] = if a == b {
                prev[j] + 1
            } else {
                prev[j + 1].max(cur[j])
            };
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[short.len()]
}

/// Bit-parallel LCS length (64 DP cells per machine word).
///
/// Must agree exactly with [`lcs_length`].
pub fn lcs_length_bitparallel(u: &[u32], v: &[u32]) -> usize {
    let (pattern, text) = if u.len() <= v.len() { (u, v) } else { (v, u) };
    let m = pattern.len();
    if m == 0 {
        return 0;
    }
    let words = m.div_ceil(64);
    let max_letter = pattern.iter().copied().max().unwrap_or(0) as usize;
    let mut masks = vec![vec![0u64; words]; max_letter + 1];
    for (i, &a) in pattern.iter().enumerate() {
        masks[a as usize][i / 64] |= 1u64 << (i % 64);
    }
    let mut row = vec![u64::MAX; words];
    for &b in text {
        let Some(mask) = masks.get(b as usize) else {
            continue;
        };
        let mut carry = false;
        for (vw, &mw) in row.iter_mut().zip(mask) {
            let u = *vw & mw;
            let (s1, c1) = vw.overflowing_add(u);
            let (s2, c2) = s1.overflowing_add(carry as u64);
            carry = c1 || c2;
            *vw = s2 | (*vw & !mw);
        }
    }
    let mut ones = 0usize;
    for (w, &vw) in row.iter().enumerate() {
        let bits = (m - w * 64).min(64);
        let valid = if bits == 64 {
            u64::MAX
        } else {
            (1u64 << bits) - 1
        };
        ones += (vw & valid).count_ones() as usize;
    }
    m - ones
}

/// `n` i.i.d. uniform letters from `alphabet`.
pub fn sample_word<R: Rng + ?Sized>(alphabet: Alphabet, n: usize, rng: &mut R) -> Word {
    let sigma = alphabet.size();
    Word((0..n).map(|_| rng.random_range(1..=sigma)).collect())
}
