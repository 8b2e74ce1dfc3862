//! Alphabets, finite words and substitutions.
//!
//! Letters are always the integers `0..l`; glyphs only appear when a
//! substitution is parsed from or rendered to a share-string such as
//! `"01,0"` (the Fibonacci substitution `0 -> 01, 1 -> 0`).

use std::cmp::Ordering;
use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A letter of an alphabet `0..l`.
pub type Letter = u8;

/// Largest alphabet that can be represented.
pub const MAX_ALPHABET: usize = 256;

/// Glyph table of the share-string format.
pub const GLYPHS: &[u8; 36] = b"0123456789abcdefghijklmnopqrstuvwxyz";

/// Default cap on the length of any materialized word.
pub const DEFAULT_WORD_BUDGET: usize = 10_000_000;

/// Finite alphabet `0..size` with optional display glyphs.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    size: usize,
    glyphs: Option<Vec<char>>,
}

impl Alphabet {
    pub fn new(size: usize) -> Result<Self> {
        if size == 0 || size > MAX_ALPHABET {
            return Err(Error::Parse(format!("alphabet size {size} out of range")));
        }
        Ok(Alphabet { size, glyphs: None })
    }

    /// Alphabet with custom display glyphs, one distinct char per letter.
    pub fn with_glyphs(glyphs: Vec<char>) -> Result<Self> {
        let mut alphabet = Alphabet::new(glyphs.len())?;
        let mut seen = glyphs.clone();
        seen.sort_unstable();
        seen.dedup();
        if seen.len() != glyphs.len() {
            return Err(Error::Parse("display glyphs must be distinct".into()));
        }
        alphabet.glyphs = Some(glyphs);
        Ok(alphabet)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn glyph(&self, letter: Letter) -> char {
        match &self.glyphs {
            Some(g) => g[letter as usize],
            None if (letter as usize) < GLYPHS.len() => GLYPHS[letter as usize] as char,
            None => '?',
        }
    }
}

/// A finite word. Ordered shortlex: shorter words first, then lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letter(a: Letter) -> Self {
        Word(vec![a])
    }

    pub fn into_vec(self) -> Vec<Letter> {
        self.0
    }

    pub fn as_slice(&self) -> &[Letter] {
        &self.0
    }

    pub fn push(&mut self, a: Letter) {
        self.0.push(a);
    }

    pub fn extend_from_slice(&mut self, other: &[Letter]) {
        self.0.extend_from_slice(other);
    }

    pub fn concat(&self, other: &[Letter]) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(other);
        Word(v)
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    /// Parses a word written with the default glyph table (`"0110"`); `{n}` denotes letter `n`.
    pub fn parse(text: &str) -> Result<Word> {
        let mut out = Vec::with_capacity(text.len());
        let mut bytes = text.bytes();
        while let Some(b) = bytes.next() {
            if b == b'{' {
                let digits: String = bytes.by_ref().take_while(|&c| c != b'}').map(char::from).collect();
                let n: Letter = digits
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad letter escape {{{digits}}}")))?;
                out.push(n);
            } else {
                out.push(glyph_value(b).ok_or_else(|| Error::Parse(format!("bad glyph {:?}", b as char)))?);
            }
        }
        Ok(Word(out))
    }

    /// Renders with the default glyph table. Letters beyond 35 render as `{n}`.
    pub fn render(&self) -> String {
        let mut s = String::with_capacity(self.len());
        for &a in &self.0 {
            if (a as usize) < GLYPHS.len() {
                s.push(GLYPHS[a as usize] as char);
            } else {
                s.push_str(&format!("{{{a}}}"));
            }
        }
        s
    }
}

impl Deref for Word {
    type Target = [Letter];
    fn deref(&self) -> &[Letter] {
        &self.0
    }
}

impl From<Vec<Letter>> for Word {
    fn from(v: Vec<Letter>) -> Self {
        Word(v)
    }
}

impl From<&[Letter]> for Word {
    fn from(v: &[Letter]) -> Self {
        Word(v.to_vec())
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        shortlex(&self.0, &other.0)
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({:?})", self.render())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            f.write_str("ε")
        } else {
            f.write_str(&self.render())
        }
    }
}

/// Shortlex comparison of letter slices.
pub fn shortlex(a: &[Letter], b: &[Letter]) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

fn glyph_value(b: u8) -> Option<Letter> {
    match b {
        b'0'..=b'9' => Some(b - b'0'),
        b'a'..=b'z' => Some(b - b'a' + 10),
        _ => None,
    }
}

/// Letter counts of a word.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AbelianVector(pub Vec<u64>);

impl AbelianVector {
    pub fn zero(l: usize) -> Self {
        AbelianVector(vec![0; l])
    }

    pub fn total(&self) -> u64 {
        self.0.iter().sum()
    }
}

/// Abelianization: entry `i` counts the occurrences of letter `i` in `w`.
pub fn abelianize(w: &[Letter], l: usize) -> AbelianVector {
    let mut counts = vec![0u64; l];
    for &a in w {
        counts[a as usize] += 1;
    }
    AbelianVector(counts)
}

/// A substitution: one non-empty image word per letter.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Substitution {
    alphabet: Alphabet,
    images: Vec<Word>,
}

impl Substitution {
    /// Builds a substitution from its images; image `i` is the image of letter `i`.
    pub fn new(images: Vec<Word>) -> Result<Self> {
        let alphabet = Alphabet::new(images.len())?;
        Self::with_alphabet(alphabet, images)
    }

    pub fn with_alphabet(alphabet: Alphabet, images: Vec<Word>) -> Result<Self> {
        if images.len() != alphabet.size() {
            return Err(Error::Parse(format!(
                "{} images for an alphabet of {} letters",
                images.len(),
                alphabet.size()
            )));
        }
        for (i, w) in images.iter().enumerate() {
            if w.is_empty() {
                return Err(Error::Parse(format!("image of letter {i} is empty")));
            }
            if let Some(&bad) = w.iter().find(|&&a| a as usize >= images.len()) {
                return Err(Error::Parse(format!(
                    "letter {bad} in image of {i} is outside the alphabet of {} letters",
                    images.len()
                )));
            }
        }
        Ok(Substitution { alphabet, images })
    }

    /// Construction for callers that already guarantee the invariants.
    pub(crate) fn from_images_unchecked(images: Vec<Word>) -> Self {
        debug_assert!(Self::new(images.clone()).is_ok());
        let alphabet = Alphabet { size: images.len(), glyphs: None };
        Substitution { alphabet, images }
    }

    /// Parses a share-string: comma-separated images over the glyphs `0-9a-z`.
    pub fn parse(text: &str) -> Result<Self> {
        if text.is_empty() {
            return Err(Error::Parse("empty share-string".into()));
        }
        let fields: Vec<&str> = text.split(',').collect();
        if fields.len() > GLYPHS.len() {
            return Err(Error::Parse(format!("{} images exceed the 36-glyph table", fields.len())));
        }
        let mut images = Vec::with_capacity(fields.len());
        for (i, field) in fields.iter().enumerate() {
            if field.is_empty() {
                return Err(Error::Parse(format!("image {i} is empty")));
            }
            let mut letters = Vec::with_capacity(field.len());
            for b in field.bytes() {
                let v = glyph_value(b)
                    .ok_or_else(|| Error::Parse(format!("invalid glyph {:?}", b as char)))?;
                if v as usize >= fields.len() {
                    return Err(Error::Parse(format!(
                        "glyph {:?} denotes letter {v} but there are only {} images",
                        b as char,
                        fields.len()
                    )));
                }
                letters.push(v);
            }
            images.push(Word(letters));
        }
        Substitution::new(images)
    }

    /// The canonical share-string. Fails for alphabets beyond 36 letters.
    pub fn share_string(&self) -> Result<String> {
        if self.len() > GLYPHS.len() {
            return Err(Error::Parse(format!("{} letters cannot be written as a share-string", self.len())));
        }
        Ok(self.images.iter().map(Word::render).collect::<Vec<_>>().join(","))
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    /// Alphabet size `l`.
    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn image(&self, a: Letter) -> &Word {
        &self.images[a as usize]
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    /// Sum of the image lengths.
    pub fn total_length(&self) -> usize {
        self.images.iter().map(|w| w.len()).sum()
    }

    /// `φ(w)`: concatenation of the letter images.
    pub fn apply(&self, w: &[Letter]) -> Word {
        let len = w.iter().map(|&a| self.images[a as usize].len()).sum();
        let mut out = Vec::with_capacity(len);
        for &a in w {
            out.extend_from_slice(&self.images[a as usize]);
        }
        Word(out)
    }

    /// Length of `φ(w)` without building it, saturating on overflow.
    pub fn image_len(&self, w: &[Letter]) -> usize {
        w.iter()
            .fold(0usize, |acc, &a| acc.saturating_add(self.images[a as usize].len()))
    }

    /// `φ^p(seed)` under the default word budget.
    pub fn iterate(&self, seed: &[Letter], p: usize) -> Result<Word> {
        self.iterate_with_budget(seed, p, DEFAULT_WORD_BUDGET)
    }

    pub fn iterate_with_budget(&self, seed: &[Letter], p: usize, budget: usize) -> Result<Word> {
        if p == 0 {
            return Err(Error::Precondition("iteration power must be at least 1".into()));
        }
        let mut w = Word::from(seed);
        for _ in 0..p {
            if self.image_len(&w) > budget {
                return Err(Error::budget("word length", budget as u64));
            }
            w = self.apply(&w);
        }
        Ok(w)
    }

    /// Composition `self ∘ other`, i.e. `x ↦ self(other(x))`.
    pub fn compose(&self, other: &Substitution) -> Result<Substitution> {
        if self.len() != other.len() {
            return Err(Error::Precondition("composition needs equal alphabets".into()));
        }
        Ok(Substitution::from_images_unchecked(
            other.images.iter().map(|w| self.apply(w)).collect(),
        ))
    }

    /// `φ^p` as a substitution.
    pub fn power(&self, p: usize) -> Result<Substitution> {
        self.power_with_budget(p, DEFAULT_WORD_BUDGET)
    }

    pub fn power_with_budget(&self, p: usize, budget: usize) -> Result<Substitution> {
        let images = (0..self.len())
            .map(|a| self.iterate_with_budget(&[a as Letter], p, budget))
            .collect::<Result<Vec<_>>>()?;
        Ok(Substitution::from_images_unchecked(images))
    }

    /// Reverses every image word.
    pub fn reverse(&self) -> Substitution {
        Substitution::from_images_unchecked(self.images.iter().map(Word::reversed).collect())
    }

    /// Simultaneous relabelling: letter `i` becomes `perm[i]` in the domain and in all images.
    pub fn permute_letters(&self, perm: &[Letter]) -> Result<Substitution> {
        let l = self.len();
        if perm.len() != l {
            return Err(Error::InvalidPermutation(format!("expected {l} entries, got {}", perm.len())));
        }
        let mut seen = vec![false; l];
        for &p in perm {
            if p as usize >= l || std::mem::replace(&mut seen[p as usize], true) {
                return Err(Error::InvalidPermutation(format!("{perm:?} is not a bijection")));
            }
        }
        let mut images = vec![Word::empty(); l];
        for (i, w) in self.images.iter().enumerate() {
            images[perm[i] as usize] = Word(w.iter().map(|&a| perm[a as usize]).collect());
        }
        Ok(Substitution::from_images_unchecked(images))
    }

    /// Whether all images start with the same letter.
    pub fn left_proper_letter(&self) -> Option<Letter> {
        let first = self.images[0][0];
        self.images.iter().all(|w| w[0] == first).then_some(first)
    }

    /// Whether all images end with the same letter.
    pub fn right_proper_letter(&self) -> Option<Letter> {
        let last = *self.images[0].last().unwrap();
        self.images.iter().all(|w| *w.last().unwrap() == last).then_some(last)
    }
}

impl FromStr for Substitution {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Substitution::parse(s)
    }
}

impl fmt::Debug for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Substitution({})", self)
    }
}

impl fmt::Display for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, w) in self.images.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{} ↦ {}", self.alphabet.glyph(i as Letter), w.render())?;
        }
        Ok(())
    }
}

impl Serialize for Word {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.render())
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        Word::parse(&text).map_err(serde::de::Error::custom)
    }
}

impl Serialize for Substitution {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let text = self.share_string().map_err(serde::ser::Error::custom)?;
        s.serialize_str(&text)
    }
}

impl<'de> Deserialize<'de> for Substitution {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        Substitution::parse(&text).map_err(serde::de::Error::custom)
    }
}

/// Lazily yields the letters of `φ^n(w)` left to right without materializing it.
pub struct PowerWalker<'a> {
    sub: &'a Substitution,
    seed: &'a [Letter],
    seed_pos: usize,
    power: usize,
    // (letter whose image is being read, next index into the image, remaining applications)
    stack: Vec<(Letter, usize, usize)>,
}

impl<'a> PowerWalker<'a> {
    pub fn new(sub: &'a Substitution, seed: &'a [Letter], power: usize) -> Self {
        PowerWalker { sub, seed, seed_pos: 0, power, stack: Vec::with_capacity(power + 1) }
    }
}

impl Iterator for PowerWalker<'_> {
    type Item = Letter;

    fn next(&mut self) -> Option<Letter> {
        loop {
            match self.stack.last_mut() {
                None => {
                    let &a = self.seed.get(self.seed_pos)?;
                    self.seed_pos += 1;
                    if self.power == 0 {
                        return Some(a);
                    }
                    self.stack.push((a, 0, self.power - 1));
                }
                Some(frame) => {
                    let image = &self.sub.images[frame.0 as usize];
                    if frame.1 == image.len() {
                        self.stack.pop();
                        continue;
                    }
                    let child = image[frame.1];
                    frame.1 += 1;
                    let remaining = frame.2;
                    if remaining == 0 {
                        return Some(child);
                    }
                    self.stack.push((child, 0, remaining - 1));
                }
            }
        }
    }
}
