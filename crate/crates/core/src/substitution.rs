//! The substitution over the gap alphabet and the label words it generates.
//!
//! Rules, for `1 <= i <= m - 1`:
//!
//! ```text
//! d_0 -> d_1 d_0
//! d_i -> d_1 d_{i+1}
//! d_m -> d_1
//! ```

use std::fmt;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::error::{Error, Result};

/// Default cap on the length of a generated word.
pub const DEFAULT_WORD_CAP: usize = 50_000_000;

/// A letter `d_index` of the gap alphabet.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter(pub usize);

impl Letter {
    pub fn new(index: usize, m: usize) -> Result<Self> {
        if index > m {
            return Err(Error::InvalidLetter { index, m });
        }
        Ok(Letter(index))
    }

    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "d{}", self.0)
    }
}

/// A finite word over the gap alphabet.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LabelWord(pub Vec<Letter>);

impl LabelWord {
    pub fn from_indices(indices: &[usize]) -> Self {
        LabelWord(indices.iter().map(|&i| Letter(i)).collect())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn indices(&self) -> Vec<usize> {
        self.0.iter().map(|l| l.0).collect()
    }
}

impl fmt::Display for LabelWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// Length of the image of `letter` (1 for `d_m`, otherwise 2).
pub fn image_len(letter: Letter, m: usize) -> usize {
    if letter.0 == m {
        1
    } else {
        2
    }
}

fn push_image(out: &mut Vec<Letter>, letter: Letter, m: usize) {
    out.push(Letter(1));
    match letter.0 {
        0 => out.push(Letter(0)),
        i if i < m => out.push(Letter(i + 1)),
        _ => {}
    }
}

/// The image of a single letter.
pub fn sigma_image(letter: Letter, m: usize) -> Result<LabelWord> {
    if letter.0 > m {
        return Err(Error::InvalidLetter { index: letter.0, m });
    }
    let mut out = Vec::with_capacity(2);
    push_image(&mut out, letter, m);
    Ok(LabelWord(out))
}

/// Applies the substitution letter by letter to a whole word.
pub fn apply(word: &LabelWord, m: usize) -> Result<LabelWord> {
    let mut out = Vec::with_capacity(2 * word.len());
    for &l in word.letters() {
        if l.0 > m {
            return Err(Error::InvalidLetter { index: l.0, m });
        }
        push_image(&mut out, l, m);
    }
    Ok(LabelWord(out))
}

/// `σ^n(d_0)`, refusing to build words longer than `cap`.
pub fn iterate_capped(n: u32, m: usize, cap: usize) -> Result<LabelWord> {
    if m < 2 {
        return Err(Error::InvalidDegree(m));
    }
    let needed = word_length_forecast(n, m);
    if needed > BigUint::from(cap) {
        return Err(Error::ResourceCap {
            what: "label word",
            needed: needed.to_string(),
            cap,
        });
    }
    let mut word = LabelWord(vec![Letter(0)]);
    for _ in 0..n {
        word = apply(&word, m)?;
    }
    Ok(word)
}

/// `σ^n(d_0)` under [`DEFAULT_WORD_CAP`].
pub fn iterate(n: u32, m: usize) -> Result<LabelWord> {
    iterate_capped(n, m, DEFAULT_WORD_CAP)
}

/// Exact length of `σ^n(d_0)` from the letter-count recurrence.
pub fn word_length_forecast(n: u32, m: usize) -> BigUint {
    // counts[i] = occurrences of d_i
    let mut counts = vec![BigUint::zero(); m + 1];
    counts[0] = BigUint::from(1u8);
    for _ in 0..n {
        let total: BigUint = counts.iter().sum();
        let mut next = vec![BigUint::zero(); m + 1];
        next[0] = counts[0].clone();
        next[1] = total;
        next[2..=m].clone_from_slice(&counts[1..m]);
        counts = next;
    }
    counts.iter().sum()
}
