//! Admitted words and the complexity function.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::word::{Substitution, Word, DEFAULT_WORD_BUDGET};

/// The admitted words of one length, sorted and deduplicated.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WordSet {
    pub n: usize,
    pub words: Vec<Word>,
}

impl WordSet {
    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn contains(&self, w: &[u8]) -> bool {
        self.words.binary_search_by(|x| x.as_slice().cmp(w)).is_ok()
    }

    /// Position of `w` in the sorted listing.
    pub fn index_of(&self, w: &[u8]) -> Option<usize> {
        self.words.binary_search_by(|x| x.as_slice().cmp(w)).ok()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Word> {
        self.words.iter()
    }
}

/// `L^n_φ`: all admitted words of length `n`.
pub fn admitted_words(sub: &Substitution, n: usize) -> Result<WordSet> {
    admitted_words_with_budget(sub, n, DEFAULT_WORD_BUDGET)
}

/// As [`admitted_words`], failing once more than `budget` letters would be scanned in one pass.
pub fn admitted_words_with_budget(sub: &Substitution, n: usize, budget: usize) -> Result<WordSet> {
    if n == 0 {
        return Err(Error::Precondition("word length must be at least 1".into()));
    }
    // seed: the first iterate of the letter 0 that is long enough
    let mut seed = Word::letter(0);
    while seed.len() < n {
        let next = sub.apply(&seed);
        if next.len() == seed.len() {
            // lengths never grow, so no admitted word reaches length n
            return Ok(WordSet { n, words: Vec::new() });
        }
        if next.len() > budget {
            return Err(Error::budget("admitted-word seed", budget as u64));
        }
        seed = next;
    }
    let mut known: HashSet<Vec<u8>> = seed.windows(n).map(<[u8]>::to_vec).collect();
    let mut frontier: Vec<Vec<u8>> = known.iter().cloned().collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        let mut scanned = 0usize;
        for u in &frontier {
            let img = sub.apply(u);
            scanned += img.len();
            if scanned > budget {
                return Err(Error::budget("admitted-word enumeration", budget as u64));
            }
            for f in img.windows(n) {
                if !known.contains(f) {
                    known.insert(f.to_vec());
                    next.push(f.to_vec());
                }
            }
        }
        frontier = next;
    }
    let mut words: Vec<Word> = known.into_iter().map(Word::new).collect();
    words.sort();
    Ok(WordSet { n, words })
}

/// `p_φ(1), ..., p_φ(n_max)`.
pub fn complexity(sub: &Substitution, n_max: usize) -> Result<Vec<usize>> {
    (1..=n_max).map(|n| admitted_words(sub, n).map(|s| s.len())).collect()
}

/// Morse-Hedlund diagnostic: some `p(n) ≤ n` forces an eventually periodic language.
pub fn morse_hedlund_periodic(counts: &[usize]) -> bool {
    counts.iter().enumerate().any(|(i, &c)| c <= i + 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sub(s: &str) -> Substitution {
        Substitution::parse(s).unwrap()
    }

    fn listing(s: &WordSet) -> Vec<String> {
        s.words.iter().map(|w| w.render()).collect()
    }

    #[test]
    fn platinum_mean_words() {
        let pm = sub("0001,001");
        assert_eq!(listing(&admitted_words(&pm, 2).unwrap()), ["00", "01", "10"]);
        assert_eq!(listing(&admitted_words(&pm, 3).unwrap()), ["000", "001", "010", "100"]);
    }

    #[test]
    fn thue_morse_words() {
        let tm = sub("01,10");
        assert_eq!(listing(&admitted_words(&tm, 3).unwrap()), ["001", "010", "011", "100", "101", "110"]);
        assert_eq!(complexity(&tm, 2).unwrap(), [2, 4]);
    }

    #[test]
    fn complexity_sequences() {
        assert_eq!(complexity(&sub("01,0"), 5).unwrap(), [2, 3, 4, 5, 6]);
        assert_eq!(complexity(&sub("01,00"), 8).unwrap(), [2, 3, 5, 6, 8, 10, 11, 12]);
    }

    #[test]
    fn degenerate_inputs() {
        assert!(admitted_words(&sub("0"), 2).unwrap().is_empty());
        assert_eq!(listing(&admitted_words(&sub("00"), 3).unwrap()), ["000"]);
        assert!(admitted_words(&sub("01,0"), 0).is_err());
        assert!(morse_hedlund_periodic(&[1, 1]));
        assert!(!morse_hedlund_periodic(&[2, 3, 4]));
    }
}
