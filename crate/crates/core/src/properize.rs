//! Pre-left-properization by return words, left-proper powers and right conjugates.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::substitution_matrix;
use crate::recognizability::{find_fixed_letter, return_words_with_budget, ReturnWordSet};
use crate::word::{Letter, Substitution, Word, DEFAULT_WORD_BUDGET};

/// Cap on the power searched for a left-proper substitution.
pub const DEFAULT_LEFT_PROPER_CAP: usize = 64;

/// The full properization chain of a substitution.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Properization {
    pub source: Substitution,
    pub return_words: ReturnWordSet,
    /// `η` on the return-word alphabet, letter `i` standing for `return_words.words[i]`.
    pub eta: Substitution,
    /// Least `n` with `η^n` left-proper.
    pub power: usize,
    pub left_proper: Substitution,
    pub right_conjugate: Substitution,
    /// `η^n ∘ (η^n)^(R)`.
    pub full: Substitution,
}

impl Properization {
    /// Return-word labels as `[word]`.
    pub fn labels(&self) -> Vec<String> {
        self.return_words.words.iter().map(|w| format!("[{}]", w.render())).collect()
    }
}

/// `η`: each return word `v` maps to the labels of the return-word factorization of `φ^k(v)`.
pub fn pre_left_properize(sub: &Substitution) -> Result<(ReturnWordSet, Substitution)> {
    pre_left_properize_with_budget(sub, DEFAULT_WORD_BUDGET)
}

pub fn pre_left_properize_with_budget(sub: &Substitution, budget: usize) -> Result<(ReturnWordSet, Substitution)> {
    let fixed = find_fixed_letter(sub);
    let rw = return_words_with_budget(sub, fixed, budget)?;
    if rw.is_empty() {
        return Err(Error::Precondition("no return words: the language has no two-letter words".into()));
    }
    if rw.len() > crate::word::MAX_ALPHABET {
        return Err(Error::budget("return-word alphabet", crate::word::MAX_ALPHABET as u64));
    }
    let images = rw
        .words
        .iter()
        .map(|v| {
            let img = sub.iterate_with_budget(v, fixed.order, budget)?;
            let labels = rw.decompose(&img).ok_or_else(|| {
                Error::Internal(format!("φ^{}({}) does not factor into return words", fixed.order, v.render()))
            })?;
            Ok(Word::new(labels.into_iter().map(|x| x as Letter).collect()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((rw, Substitution::new(images)?))
}

/// Least `n ≥ 1` with all images of `η^n` sharing their first letter, and `η^n` itself.
pub fn left_properize(eta: &Substitution) -> Result<(usize, Substitution)> {
    left_properize_with_cap(eta, DEFAULT_LEFT_PROPER_CAP, DEFAULT_WORD_BUDGET)
}

pub fn left_properize_with_cap(eta: &Substitution, cap: usize, budget: usize) -> Result<(usize, Substitution)> {
    let first: Vec<Letter> = eta.images().iter().map(|w| w[0]).collect();
    // first letters of η^n(b) are f^n(b) for f(b) = first letter of η(b)
    let mut cur = first.clone();
    for n in 1..=cap {
        if cur.iter().all(|&x| x == cur[0]) {
            return Ok((n, eta.power_with_budget(n, budget)?));
        }
        cur = cur.iter().map(|&x| first[x as usize]).collect();
    }
    Err(Error::budget("left-properization power", cap as u64))
}

/// `φ^(R)(b) = w_b a` where `φ(b) = a w_b`.
pub fn right_conjugate(sub: &Substitution) -> Result<Substitution> {
    sub.left_proper_letter().ok_or(Error::NotLeftProper)?;
    let images = sub
        .images()
        .iter()
        .map(|w| {
            let mut v = w[1..].to_vec();
            v.push(w[0]);
            Word::new(v)
        })
        .collect();
    Substitution::new(images)
}

/// `φ ∘ φ^(R)` for a left-proper `φ`.
pub fn proper_composition(sub: &Substitution) -> Result<Substitution> {
    sub.compose(&right_conjugate(sub)?)
}

pub fn full_properize(sub: &Substitution) -> Result<Properization> {
    full_properize_with_budget(sub, DEFAULT_WORD_BUDGET)
}

pub fn full_properize_with_budget(sub: &Substitution, budget: usize) -> Result<Properization> {
    if !substitution_matrix(sub).is_primitive()? {
        return Err(Error::NotPrimitive);
    }
    let (return_words, eta) = pre_left_properize_with_budget(sub, budget)?;
    let (power, left_proper) = left_properize_with_cap(&eta, DEFAULT_LEFT_PROPER_CAP, budget)?;
    let right = right_conjugate(&left_proper)?;
    let full = left_proper.compose(&right)?;
    if full.left_proper_letter().is_none() || full.right_proper_letter().is_none() {
        return Err(Error::Internal("composition with the right conjugate is not fully proper".into()));
    }
    Ok(Properization {
        source: sub.clone(),
        return_words,
        eta,
        power,
        left_proper,
        right_conjugate: right,
        full,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sub(s: &str) -> Substitution {
        Substitution::parse(s).unwrap()
    }

    fn share(s: &Substitution) -> String {
        s.share_string().unwrap()
    }

    #[test]
    fn thue_morse_chain() {
        let (rw, eta) = pre_left_properize(&sub("01,10")).unwrap();
        assert_eq!(rw.words.len(), 3);
        // i = 0, j = 01, k = 011: i ↦ j, j ↦ ki, k ↦ kji
        assert_eq!(share(&eta), "1,20,210");
        let (n, eta2) = left_properize(&eta).unwrap();
        assert_eq!(n, 2);
        assert_eq!(share(&eta2), "20,2101,210201");
        let p = full_properize(&sub("01,10")).unwrap();
        assert_eq!(p.right_conjugate, sub("02,1012,102012"));
        assert!(p.full.left_proper_letter().is_some() && p.full.right_proper_letter().is_some());
        assert_eq!(p.labels(), ["[0]", "[01]", "[011]"]);
    }

    #[test]
    fn fibonacci_chain() {
        let (_, eta) = pre_left_properize(&sub("01,0")).unwrap();
        assert_eq!(share(&eta), "1,10");
        // both images already start with j
        assert_eq!(left_properize(&eta).unwrap().0, 1);
        assert_eq!(share(&proper_composition(&sub("01,0")).unwrap()), "001,01");
        assert_eq!(share(&right_conjugate(&sub("01,0")).unwrap()), "10,0");
    }

    #[test]
    fn conjugate_edge_cases() {
        assert_eq!(share(&right_conjugate(&sub("00")).unwrap()), "00");
        assert_eq!(right_conjugate(&sub("01,10")), Err(Error::NotLeftProper));
        assert_eq!(left_properize(&sub("01,0")).unwrap().0, 1);
        assert!(pre_left_properize(&sub("0")).is_err());
    }
}
