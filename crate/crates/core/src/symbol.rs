use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A letter of an alphabet: a nonempty printable token without whitespace.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Symbol(String);

impl Symbol {
    pub fn new(name: impl Into<String>) -> Result<Self> {
        let name = name.into();
        if name.is_empty() || name.chars().any(|c| c.is_whitespace() || c.is_control()) {
            return Err(Error::InvalidSymbol(name));
        }
        Ok(Symbol(name))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Shorthand used throughout tests and examples. Panics on invalid names.
pub fn sym(name: &str) -> Symbol {
    Symbol::new(name).expect("valid symbol")
}

/// An ordered finite alphabet. Symbols are addressed by their index.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Alphabet {
    symbols: Vec<Symbol>,
    index: HashMap<Symbol, usize>,
}

impl Alphabet {
    pub fn new<I, S>(symbols: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut alphabet = Alphabet::default();
        for s in symbols {
            let symbol = Symbol::new(s.as_ref())?;
            if alphabet.index.contains_key(&symbol) {
                return Err(Error::DuplicateSymbol(symbol.0));
            }
            alphabet.push(symbol);
        }
        Ok(alphabet)
    }

    pub fn from_symbols(symbols: Vec<Symbol>) -> Result<Self> {
        let mut alphabet = Alphabet::default();
        for s in symbols {
            if alphabet.index.contains_key(&s) {
                return Err(Error::DuplicateSymbol(s.0));
            }
            alphabet.push(s);
        }
        Ok(alphabet)
    }

    /// Adds `symbol` if absent and returns its index.
    pub fn insert(&mut self, symbol: Symbol) -> usize {
        if let Some(&i) = self.index.get(&symbol) {
            return i;
        }
        self.push(symbol)
    }

    fn push(&mut self, symbol: Symbol) -> usize {
        let i = self.symbols.len();
        self.index.insert(symbol.clone(), i);
        self.symbols.push(symbol);
        i
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn symbol(&self, i: usize) -> &Symbol {
        &self.symbols[i]
    }

    pub fn index_of(&self, s: &Symbol) -> Option<usize> {
        self.index.get(s).copied()
    }

    pub fn lookup(&self, name: &str) -> Result<usize> {
        self.symbols
            .iter()
            .position(|s| s.as_str() == name)
            .ok_or_else(|| Error::UnknownSymbol(name.to_string()))
    }

    pub fn contains(&self, s: &Symbol) -> bool {
        self.index.contains_key(s)
    }

    /// True when every symbol is a single character, so words can be
    /// written without separators.
    pub fn is_compact(&self) -> bool {
        self.symbols.iter().all(|s| s.as_str().chars().count() == 1)
    }

    /// A symbol derived from `base` that is not in the alphabet:
    /// `base#1`, `base#2`, ...
    pub fn fresh(&self, base: &str) -> Symbol {
        (1..)
            .map(|k| Symbol(format!("{base}#{k}")))
            .find(|s| !self.contains(s))
            .expect("unbounded search")
    }

    /// Parses a word over this alphabet. Dots separate symbols explicitly;
    /// otherwise a compact alphabet is read character by character and a
    /// non-compact one requires the token to be a single symbol.
    pub fn parse_word(&self, token: &str) -> Result<Vec<usize>> {
        if token.contains('.') {
            return token.split('.').map(|s| self.lookup(s)).collect();
        }
        if let Ok(i) = self.lookup(token) {
            return Ok(vec![i]);
        }
        if self.is_compact() {
            return token
                .chars()
                .map(|c| self.lookup(c.encode_utf8(&mut [0; 4])))
                .collect();
        }
        Err(Error::UnknownSymbol(token.to_string()))
    }

    pub fn format_word(&self, word: &[usize]) -> String {
        let sep = if self.is_compact() { "" } else { "." };
        word.iter()
            .map(|&i| self.symbols[i].as_str())
            .collect::<Vec<_>>()
            .join(sep)
    }
}
