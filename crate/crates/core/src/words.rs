//! Words in a free group.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A generator raised to `+1` or `-1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(generator: usize, exponent: i32) -> Self {
        assert!(exponent == 1 || exponent == -1, "letter exponent must be ±1");
        Letter { generator, inverse: exponent < 0 }
    }

    pub fn pos(generator: usize) -> Self {
        Letter { generator, inverse: false }
    }

    pub fn neg(generator: usize) -> Self {
        Letter { generator, inverse: true }
    }

    pub fn exponent(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    pub fn inv(self) -> Self {
        Letter { generator: self.generator, inverse: !self.inverse }
    }

    fn cancels(self, other: Letter) -> bool {
        self.generator == other.generator && self.inverse != other.inverse
    }
}

/// A word in the free group on generators `0, 1, 2, ...`.
///
/// Not reduced automatically; call [`Word::free_reduce`] when needed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn empty() -> Self {
        Word { letters: Vec::new() }
    }

    pub fn new(letters: Vec<Letter>) -> Self {
        Word { letters }
    }

    /// From `(generator, ±1)` pairs.
    pub fn from_pairs(pairs: &[(usize, i32)]) -> Self {
        Word { letters: pairs.iter().map(|&(g, e)| Letter::new(g, e)).collect() }
    }

    pub fn generator(g: usize) -> Self {
        Word { letters: vec![Letter::pos(g)] }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn push(&mut self, l: Letter) {
        self.letters.push(l);
    }

    /// Appends `l`, cancelling against the last letter when possible.
    pub fn push_reduced(&mut self, l: Letter) {
        if self.letters.last().is_some_and(|last| last.cancels(l)) {
            self.letters.pop();
        } else {
            self.letters.push(l);
        }
    }

    pub fn inverse(&self) -> Word {
        Word { letters: self.letters.iter().rev().map(|l| l.inv()).collect() }
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word { letters }
    }

    /// `self · other`, freely reduced at the junction (inputs assumed reduced).
    pub fn mul_reduced(&self, other: &Word) -> Word {
        let mut out = self.clone();
        for &l in &other.letters {
            out.push_reduced(l);
        }
        out
    }

    pub fn pow(&self, k: i64) -> Word {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::empty();
        for _ in 0..k.unsigned_abs() {
            out.letters.extend_from_slice(&base.letters);
        }
        out
    }

    /// Removes adjacent cancelling pairs until none remain.
    pub fn free_reduce(&self) -> Word {
        let mut out = Word { letters: Vec::with_capacity(self.letters.len()) };
        for &l in &self.letters {
            out.push_reduced(l);
        }
        out
    }

    pub fn is_reduced(&self) -> bool {
        self.letters.windows(2).all(|w| !w[0].cancels(w[1]))
    }

    /// Freely and cyclically reduced form of a conjugate.
    pub fn cyclic_reduce(&self) -> Word {
        let mut w = self.free_reduce().letters;
        let mut start = 0;
        let mut end = w.len();
        while end - start >= 2 && w[start].cancels(w[end - 1]) {
            start += 1;
            end -= 1;
        }
        w.truncate(end);
        w.drain(..start);
        Word { letters: w }
    }

    /// Generators that occur in the word, sorted and deduplicated.
    pub fn support(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self.letters.iter().map(|l| l.generator).collect();
        s.sort_unstable();
        s.dedup();
        s
    }

    pub fn occurrences(&self, g: usize) -> usize {
        self.letters.iter().filter(|l| l.generator == g).count()
    }

    /// Replaces each letter by the image of its generator (inverted for inverse letters).
    pub fn substitute(&self, images: &dyn Fn(usize) -> Word) -> Word {
        let mut out = Word::empty();
        for l in &self.letters {
            let img = images(l.generator);
            let img = if l.inverse { img.inverse() } else { img };
            for &x in img.letters() {
                out.push_reduced(x);
            }
        }
        out
    }

    /// Sum over letters of `weight(generator) * exponent`.
    pub fn weighted_exponent_sum(&self, weight: &[i64]) -> i64 {
        self.letters.iter().map(|l| weight[l.generator] * l.exponent()).sum()
    }

    /// Smallest representative among cyclic permutations of the word and its inverse.
    /// Two cyclically reduced relators with the same key generate the same normal subgroup.
    pub fn cyclic_key(&self) -> Word {
        let w = self.cyclic_reduce();
        let inv = w.inverse();
        let n = w.len();
        let mut best = w.clone();
        for cand in [&w, &inv] {
            for s in 0..n.max(1) {
                let mut letters = cand.letters[s..].to_vec();
                letters.extend_from_slice(&cand.letters[..s]);
                let rot = Word { letters };
                if rot < best {
                    best = rot;
                }
            }
        }
        best
    }
}

impl fmt::Display for Word {
    /// `x1 x2 X1` style: 1-based indices, capital letter for inverses; `1` for the empty word.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}{}", if l.inverse { 'X' } else { 'x' }, l.generator + 1)?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Word> {
        let mut letters = Vec::new();
        for tok in s.split_whitespace() {
            if tok == "1" {
                continue;
            }
            let (inverse, rest) = match tok.chars().next() {
                Some('x') => (false, &tok[1..]),
                Some('X') => (true, &tok[1..]),
                _ => return Err(Error::Parse(format!("bad letter `{}`", tok))),
            };
            let idx: usize =
                rest.parse().map_err(|_| Error::Parse(format!("bad letter `{}`", tok)))?;
            if idx == 0 {
                return Err(Error::Parse(format!("generator indices start at 1: `{}`", tok)));
            }
            letters.push(Letter { generator: idx - 1, inverse });
        }
        Ok(Word { letters })
    }
}
