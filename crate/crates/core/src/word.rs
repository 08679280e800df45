//! Letters, alphabets with formal inverses, and words over them.
//!
//! A [`Letter`] packs a generator index and a sign into one `u32`: the low
//! bit is set for inverse letters. Alphabets own the generator tokens and do
//! all parsing and printing; the inverse of token `g` prints as `g^-1` and the
//! empty word prints as `1`.

use std::collections::HashMap;
use std::fmt;
use std::ops::Deref;

use crate::error::{Error, Result};

const INVERSE_SUFFIX: &str = "^-1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter(u32);

impl Letter {
    pub fn new(generator: u32, inverse: bool) -> Letter {
        Letter(generator << 1 | inverse as u32)
    }

    pub fn positive(generator: u32) -> Letter {
        Letter::new(generator, false)
    }

    pub fn from_index(index: u32) -> Letter {
        Letter(index)
    }

    /// Dense index in `0..2 * alphabet.len()`.
    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn generator(self) -> u32 {
        self.0 >> 1
    }

    pub fn is_inverse(self) -> bool {
        self.0 & 1 == 1
    }

    pub fn sign(self) -> i8 {
        if self.is_inverse() {
            -1
        } else {
            1
        }
    }

    pub fn inverse(self) -> Letter {
        Letter(self.0 ^ 1)
    }

    /// `self^exponent` as a word.
    pub fn pow(self, exponent: i64) -> Word {
        let letter = if exponent < 0 { self.inverse() } else { self };
        Word::from(vec![letter; exponent.unsigned_abs() as usize])
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn push(&mut self, letter: Letter) {
        self.0.push(letter);
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.0);
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    /// Reverse the word and flip every sign.
    pub fn formal_inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }
}

pub fn formal_inverse(word: &Word) -> Word {
    word.formal_inverse()
}

impl Deref for Word {
    type Target = [Letter];

    fn deref(&self) -> &[Letter] {
        &self.0
    }
}

impl std::borrow::Borrow<[Letter]> for Word {
    fn borrow(&self) -> &[Letter] {
        &self.0
    }
}

impl From<Vec<Letter>> for Word {
    fn from(letters: Vec<Letter>) -> Word {
        Word(letters)
    }
}

impl From<&[Letter]> for Word {
    fn from(letters: &[Letter]) -> Word {
        Word(letters.to_vec())
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Word {
        Word(iter.into_iter().collect())
    }
}

impl Extend<Letter> for Word {
    fn extend<I: IntoIterator<Item = Letter>>(&mut self, iter: I) {
        self.0.extend(iter)
    }
}

impl<'a> Extend<&'a Letter> for Word {
    fn extend<I: IntoIterator<Item = &'a Letter>>(&mut self, iter: I) {
        self.0.extend(iter)
    }
}

/// A finite set of generator tokens. Every generator `g` implicitly
/// contributes the two letters `g` and `g^-1`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Alphabet {
    tokens: Vec<String>,
    index: HashMap<String, u32>,
}

fn valid_token(token: &str) -> bool {
    !token.is_empty()
        && token != "1"
        && !token.contains('^')
        && !token.contains("->")
        && !token.ends_with(':')
        && !token.starts_with('#')
        && !token.chars().any(char::is_whitespace)
}

impl Alphabet {
    pub fn new<I, S>(tokens: I) -> Result<Alphabet>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut alphabet = Alphabet::default();
        for token in tokens {
            alphabet.add(token)?;
        }
        Ok(alphabet)
    }

    /// Adds a generator and returns its positive letter.
    pub fn add(&mut self, token: impl Into<String>) -> Result<Letter> {
        let token = token.into();
        if !valid_token(&token) {
            return Err(Error::InvalidToken(token));
        }
        if self.index.contains_key(&token) {
            return Err(Error::DuplicateToken(token));
        }
        let generator = self.tokens.len() as u32;
        self.index.insert(token.clone(), generator);
        self.tokens.push(token);
        Ok(Letter::positive(generator))
    }

    /// Number of generators.
    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    /// Number of letters, counting inverses.
    pub fn letter_count(&self) -> usize {
        2 * self.tokens.len()
    }

    pub fn tokens(&self) -> &[String] {
        &self.tokens
    }

    pub fn generator(&self, token: &str) -> Option<Letter> {
        self.index.get(token).map(|&g| Letter::positive(g))
    }

    /// All letters in the order `g1, g1^-1, g2, g2^-1, ...`.
    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        (0..self.letter_count() as u32).map(Letter::from_index)
    }

    pub fn contains(&self, letter: Letter) -> bool {
        (letter.generator() as usize) < self.tokens.len()
    }

    pub fn token(&self, letter: Letter) -> &str {
        &self.tokens[letter.generator() as usize]
    }

    pub fn parse_letter(&self, text: &str) -> Result<Letter> {
        let (token, inverse) = match text.strip_suffix(INVERSE_SUFFIX) {
            Some(stem) => (stem, true),
            None => (text, false),
        };
        self.index
            .get(token)
            .map(|&g| Letter::new(g, inverse))
            .ok_or_else(|| Error::UnknownLetter(text.to_string()))
    }

    /// Parses whitespace-separated letter tokens. `1` (alone) and the empty
    /// string denote the empty word.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let text = text.trim();
        if text.is_empty() || text == "1" {
            return Ok(Word::empty());
        }
        text.split_whitespace().map(|t| self.parse_letter(t)).collect()
    }

    pub fn letter_name(&self, letter: Letter) -> String {
        let token = self.token(letter);
        if letter.is_inverse() {
            format!("{token}{INVERSE_SUFFIX}")
        } else {
            token.to_string()
        }
    }

    pub fn display<'a>(&'a self, word: &'a [Letter]) -> DisplayWord<'a> {
        DisplayWord { alphabet: self, word }
    }

    pub fn format(&self, word: &[Letter]) -> String {
        self.display(word).to_string()
    }
}

pub struct DisplayWord<'a> {
    alphabet: &'a Alphabet,
    word: &'a [Letter],
}

impl fmt::Display for DisplayWord<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return f.write_str("1");
        }
        for (i, &letter) in self.word.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            f.write_str(self.alphabet.token(letter))?;
            if letter.is_inverse() {
                f.write_str(INVERSE_SUFFIX)?;
            }
        }
        Ok(())
    }
}
