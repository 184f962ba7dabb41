use std::fmt;

use crate::error::{Error, Result};
use crate::symbol::Symbol;

/// A biinfinite periodic point, given by one period. Stored in canonical
/// form: the least rotation of the primitive root, so two values are equal
/// exactly when they describe the same orbit.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PeriodicWord {
    root: Vec<Symbol>,
}

impl PeriodicWord {
    pub fn new(word: Vec<Symbol>) -> Result<Self> {
        if word.is_empty() {
            return Err(Error::Precondition("periodic word must be nonempty".into()));
        }
        let root = primitive_root(&word);
        Ok(PeriodicWord {
            root: least_rotation(root),
        })
    }

    /// The canonical period word.
    pub fn root(&self) -> &[Symbol] {
        &self.root
    }

    /// The least period of the point.
    pub fn period(&self) -> usize {
        self.root.len()
    }

    /// Symbol at position `i` of the biinfinite sequence (position 0 is the
    /// first symbol of the root).
    pub fn at(&self, i: i64) -> &Symbol {
        let n = self.root.len() as i64;
        &self.root[i.rem_euclid(n) as usize]
    }
}

impl fmt::Display for PeriodicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let compact = self.root.iter().all(|s| s.as_str().chars().count() == 1);
        let sep = if compact { "" } else { "." };
        let body: Vec<&str> = self.root.iter().map(|s| s.as_str()).collect();
        write!(f, "({})^inf", body.join(sep))
    }
}

fn primitive_root(word: &[Symbol]) -> Vec<Symbol> {
    let n = word.len();
    (1..=n)
        .find(|&d| n.is_multiple_of(d) && (d..n).all(|i| word[i] == word[i - d]))
        .map(|d| word[..d].to_vec())
        .expect("d = n always works")
}

fn least_rotation(word: Vec<Symbol>) -> Vec<Symbol> {
    let n = word.len();
    (0..n)
        .map(|r| {
            let mut w = word[r..].to_vec();
            w.extend_from_slice(&word[..r]);
            w
        })
        .min()
        .unwrap_or(word)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbol::sym;

    fn w(s: &str) -> Vec<Symbol> {
        s.chars().map(|c| sym(&c.to_string())).collect()
    }

    #[test]
    fn canonical_form_is_rotation_and_root_invariant() {
        let a = PeriodicWord::new(w("baba")).unwrap();
        let b = PeriodicWord::new(w("ab")).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.period(), 2);
        assert_eq!(a.root(), w("ab").as_slice());
        assert_eq!(a.to_string(), "(ab)^inf");
    }

    #[test]
    fn empty_word_is_rejected() {
        assert!(PeriodicWord::new(Vec::new()).is_err());
    }
}
