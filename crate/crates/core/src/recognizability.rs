//! Fixed letters, return words and the recognizability test.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::substitution_matrix;
use crate::word::{Letter, PowerWalker, Substitution, Word, DEFAULT_WORD_BUDGET};

/// A letter `a` with `φ^k(a)` starting with `a`, for the least such `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixedLetter {
    pub letter: Letter,
    pub order: usize,
}

/// The fixed letter of least order; ties go to the smallest letter.
pub fn find_fixed_letter(sub: &Substitution) -> FixedLetter {
    let first: Vec<Letter> = sub.images().iter().map(|w| w[0]).collect();
    let l = sub.len();
    let mut best: Option<FixedLetter> = None;
    for a in 0..l {
        let mut x = first[a];
        for k in 1..=l {
            if x as usize == a {
                if best.map_or(true, |b| k < b.order) {
                    best = Some(FixedLetter { letter: a as Letter, order: k });
                }
                break;
            }
            x = first[x as usize];
        }
    }
    best.expect("the first-letter map has a cycle")
}

/// Return words to a fixed letter, sorted shortlex; the position in the list is the new label.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReturnWordSet {
    pub fixed: FixedLetter,
    pub words: Vec<Word>,
}

impl ReturnWordSet {
    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn label(&self, w: &[Letter]) -> Option<usize> {
        self.words.iter().position(|v| v.as_slice() == w)
    }

    /// Splits `w` at each occurrence of the fixed letter and labels the pieces.
    /// `w` must start with the fixed letter and every piece must be a return word.
    pub fn decompose(&self, w: &[Letter]) -> Option<Vec<usize>> {
        let a = self.fixed.letter;
        if w.first() != Some(&a) {
            return None;
        }
        split_at_letter(w, a).map(|piece| self.label(piece)).collect()
    }
}

/// Pieces of `w` each starting at an occurrence of `a`; the prefix before the first `a` is dropped.
fn split_at_letter(w: &[Letter], a: Letter) -> impl Iterator<Item = &[Letter]> {
    let starts: Vec<usize> = w.iter().enumerate().filter(|(_, &x)| x == a).map(|(i, _)| i).collect();
    let ends: Vec<usize> = starts.iter().skip(1).copied().chain(std::iter::once(w.len())).collect();
    starts.into_iter().zip(ends).map(move |(s, e)| &w[s..e])
}

pub fn return_words(sub: &Substitution, fixed: FixedLetter) -> Result<ReturnWordSet> {
    return_words_with_budget(sub, fixed, DEFAULT_WORD_BUDGET)
}

/// Return words found by scanning `ψ^m(a)` with `ψ = φ^k`, until the set is stable and closed under `ψ`.
pub fn return_words_with_budget(sub: &Substitution, fixed: FixedLetter, budget: usize) -> Result<ReturnWordSet> {
    if !substitution_matrix(sub).is_primitive()? {
        return Err(Error::NotPrimitive);
    }
    let a = fixed.letter;
    let psi = sub.power_with_budget(fixed.order, budget)?;
    let mut w = Word::letter(a);
    let mut prev: Option<BTreeSet<Word>> = None;
    loop {
        if psi.image_len(&w) > budget {
            return Err(Error::budget("return-word scan", budget as u64));
        }
        let next = psi.apply(&w);
        if next.len() == w.len() {
            // 0 ↦ 0: the language has no word of length 2, so no return words
            return Ok(ReturnWordSet { fixed, words: Vec::new() });
        }
        w = next;
        // complete pieces: each one followed by another a
        let pieces: Vec<&[Letter]> = split_at_letter(&w, a).collect();
        let found: BTreeSet<Word> = pieces[..pieces.len().saturating_sub(1)].iter().map(|p| Word::from(*p)).collect();
        if found.is_empty() {
            continue;
        }
        if prev.as_ref() == Some(&found) {
            let closed = found.iter().all(|v| {
                let img = psi.apply(v);
                let ok = split_at_letter(&img, a).all(|p| found.contains(&Word::from(p)));
                ok
            });
            if closed {
                let mut words: Vec<Word> = found.into_iter().collect();
                words.sort();
                return Ok(ReturnWordSet { fixed, words });
            }
        }
        prev = Some(found);
    }
}

/// One ordered pair comparison `φ^p(vv')` against `φ^p(v'v)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairCheck {
    pub v: Word,
    pub w: Word,
    pub equal: bool,
}

/// Outcome of the recognizability test.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Recognizability {
    pub return_words: ReturnWordSet,
    /// The power `l` (alphabet size) at which images are compared.
    pub power: usize,
    pub recognizable: bool,
    /// First pair with distinct images, when recognizable.
    pub witness: Option<(Word, Word)>,
    /// Unordered pairs of distinct return words, in label order.
    pub pairs: Vec<PairCheck>,
}

impl Recognizability {
    /// Some distinct pairs have equal images and some do not.
    pub fn is_mixed(&self) -> bool {
        self.pairs.iter().any(|p| p.equal) && self.pairs.iter().any(|p| !p.equal)
    }
}

/// Whether `φ^p(u) = φ^p(v)`, compared letter by letter.
pub fn images_equal(sub: &Substitution, u: &[Letter], v: &[Letter], p: usize, budget: usize) -> Result<bool> {
    let mut a = PowerWalker::new(sub, u, p);
    let mut b = PowerWalker::new(sub, v, p);
    let mut read = 0usize;
    loop {
        match (a.next(), b.next()) {
            (None, None) => return Ok(true),
            (x, y) if x != y => return Ok(false),
            _ => {}
        }
        read += 1;
        if read > budget {
            return Err(Error::budget("image comparison", budget as u64));
        }
    }
}

/// Not recognizable exactly when `φ^l(vv') = φ^l(v'v)` for every pair of return words.
pub fn is_recognizable(sub: &Substitution) -> Result<Recognizability> {
    is_recognizable_with_budget(sub, DEFAULT_WORD_BUDGET)
}

pub fn is_recognizable_with_budget(sub: &Substitution, budget: usize) -> Result<Recognizability> {
    let fixed = find_fixed_letter(sub);
    let rw = return_words_with_budget(sub, fixed, budget)?;
    let power = sub.len();
    let mut pairs = Vec::new();
    for i in 0..rw.len() {
        for j in i + 1..rw.len() {
            let (v, w) = (&rw.words[i], &rw.words[j]);
            let equal = images_equal(sub, &v.concat(w), &w.concat(v), power, budget)?;
            pairs.push(PairCheck { v: v.clone(), w: w.clone(), equal });
        }
    }
    let witness = pairs.iter().find(|p| !p.equal).map(|p| (p.v.clone(), p.w.clone()));
    Ok(Recognizability { return_words: rw, power, recognizable: witness.is_some(), witness, pairs })
}
