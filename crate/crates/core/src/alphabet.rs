//! Ordered finite alphabets of short string symbols.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::{BLANK, HEAD};

/// Index of a symbol inside its [`Alphabet`].
pub type Sym = usize;
/// A word is a sequence of symbol indices.
pub type Word = Vec<Sym>;

/// A finite, ordered set of symbols. Symbol order is the declaration order and
/// drives every lexicographic tie-break in the crate.
#[derive(Clone, Default)]
pub struct Alphabet {
    symbols: Vec<String>,
    index: HashMap<String, Sym>,
}

impl Alphabet {
    pub fn new<I, S>(symbols: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut alphabet = Alphabet::default();
        for s in symbols {
            let s = s.into();
            if s.is_empty() || s.chars().any(char::is_whitespace) {
                return Err(Error::UnknownSymbol(s));
            }
            if alphabet.index.contains_key(&s) {
                return Err(Error::DuplicateSymbol(s));
            }
            alphabet.index.insert(s.clone(), alphabet.symbols.len());
            alphabet.symbols.push(s);
        }
        Ok(alphabet)
    }

    /// An alphabet of user symbols; the blank and head marker are rejected.
    pub fn user<I, S>(symbols: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let alphabet = Self::new(symbols)?;
        for reserved in [BLANK, HEAD] {
            if alphabet.contains(reserved) {
                return Err(Error::ReservedSymbol(reserved.to_string()));
            }
        }
        Ok(alphabet)
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn name(&self, sym: Sym) -> &str {
        &self.symbols[sym]
    }

    pub fn get(&self, name: &str) -> Option<Sym> {
        self.index.get(name).copied()
    }

    pub fn sym(&self, name: &str) -> Result<Sym> {
        self.get(name)
            .ok_or_else(|| Error::UnknownSymbol(name.to_string()))
    }

    pub fn contains(&self, name: &str) -> bool {
        self.index.contains_key(name)
    }

    /// Appends the symbols of `other` that are not already present.
    pub fn union(&self, other: &Alphabet) -> Alphabet {
        let mut out = self.clone();
        for s in &other.symbols {
            if !out.contains(s) {
                out.index.insert(s.clone(), out.symbols.len());
                out.symbols.push(s.clone());
            }
        }
        out
    }

    /// Parses a word. Whitespace-separated tokens are taken literally;
    /// otherwise the text is split greedily into the longest known symbols.
    /// The empty string and `λ` both denote the empty word.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let text = text.trim();
        if text.is_empty() || text == "λ" {
            return Ok(Vec::new());
        }
        if text.contains(char::is_whitespace) {
            return text.split_whitespace().map(|t| self.sym(t)).collect();
        }
        let mut out = Vec::new();
        let mut rest = text;
        while !rest.is_empty() {
            let best = self
                .symbols
                .iter()
                .enumerate()
                .filter(|(_, s)| rest.starts_with(s.as_str()))
                .max_by_key(|(_, s)| s.len());
            match best {
                Some((i, s)) => {
                    out.push(i);
                    rest = &rest[s.len()..];
                }
                None => return Err(Error::UnknownSymbol(rest.to_string())),
            }
        }
        Ok(out)
    }

    /// Renders a word; symbols are concatenated when all are single
    /// characters and space-separated otherwise.
    pub fn render(&self, word: &[Sym]) -> String {
        let compact = word.iter().all(|&s| self.symbols[s].chars().count() == 1);
        let sep = if compact { "" } else { " " };
        word.iter()
            .map(|&s| self.symbols[s].as_str())
            .collect::<Vec<_>>()
            .join(sep)
    }

    /// Concatenates symbol names with no separator.
    pub fn concat(&self, word: &[Sym]) -> String {
        word.iter().map(|&s| self.symbols[s].as_str()).collect()
    }

    /// Re-indexes a word of `self` into `target` by symbol name.
    pub fn translate(&self, word: &[Sym], target: &Alphabet) -> Result<Word> {
        word.iter().map(|&s| target.sym(self.name(s))).collect()
    }
}

impl PartialEq for Alphabet {
    fn eq(&self, other: &Self) -> bool {
        self.symbols == other.symbols
    }
}

impl Eq for Alphabet {}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.symbols).finish()
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbols.join(", "))
    }
}

/// All words over `alphabet` of length at most `max_len`, shortest first and
/// lexicographic within a length.
pub fn words_up_to(alphabet: &Alphabet, max_len: usize) -> Vec<Word> {
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for s in 0..alphabet.len() {
                let mut v = w.clone();
                v.push(s);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}
