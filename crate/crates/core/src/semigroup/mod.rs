//! Transition semigroups of deterministic automata, Green relations and
//! syntactic graphs.

mod green;
mod group;
mod syntactic;

use std::collections::HashMap;
use std::fmt;

pub use green::{green_structure, DClass, GreenStructure};
pub use group::GroupDescriptor;
pub use syntactic::{
    syntactic_graph, syntactic_graph_isomorphic, syntactic_graph_of, syntactic_automaton, syntactic_semigroup,
    SyntacticGraph, SyntacticNode,
};

use crate::automata::{Automaton, SEMIGROUP_LIMIT};
use crate::error::{Error, Result};
use crate::symbol::Alphabet;

const UNDEFINED: u32 = u32::MAX;

/// A partial map on the states `0..n` of an automaton.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartialMap(Vec<u32>);

impl PartialMap {
    pub fn from_options(values: &[Option<usize>]) -> Self {
        PartialMap(
            values
                .iter()
                .map(|v| v.map_or(UNDEFINED, |q| q as u32))
                .collect(),
        )
    }

    pub fn get(&self, q: usize) -> Option<usize> {
        match self.0[q] {
            UNDEFINED => None,
            p => Some(p as usize),
        }
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &PartialMap) -> PartialMap {
        PartialMap(
            self.0
                .iter()
                .map(|&p| if p == UNDEFINED { UNDEFINED } else { other.0[p as usize] })
                .collect(),
        )
    }

    /// The sorted set of values.
    pub fn image(&self) -> Vec<usize> {
        let mut img: Vec<usize> = self.0.iter().filter(|&&p| p != UNDEFINED).map(|&p| p as usize).collect();
        img.sort_unstable();
        img.dedup();
        img
    }

    pub fn rank(&self) -> usize {
        self.image().len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&p| p == UNDEFINED)
    }

    pub fn fixpoints(&self) -> usize {
        self.0
            .iter()
            .enumerate()
            .filter(|&(q, &p)| p as usize == q)
            .count()
    }

    /// Inclusion of graphs: wherever `self` is defined, `other` agrees.
    pub fn graph_le(&self, other: &PartialMap) -> bool {
        self.0
            .iter()
            .zip(&other.0)
            .all(|(&p, &q)| p == UNDEFINED || p == q)
    }
}

impl fmt::Display for PartialMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|&p| if p == UNDEFINED { "-".into() } else { p.to_string() })
            .collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

/// The semigroup of partial maps defined by the nonempty words on a
/// deterministic automaton, with a shortlex-least word for each element
/// and its right and left Cayley graphs.
#[derive(Clone, Debug)]
pub struct TransitionSemigroup {
    alphabet: Alphabet,
    elements: Vec<PartialMap>,
    index: HashMap<PartialMap, usize>,
    words: Vec<Vec<usize>>,
    generators: Vec<usize>,
    right: Vec<Vec<usize>>,
    left: Vec<Vec<usize>>,
}

/// The transition semigroup of a deterministic automaton.
pub fn transition_semigroup(a: &Automaton) -> Result<TransitionSemigroup> {
    TransitionSemigroup::new(a, SEMIGROUP_LIMIT)
}

impl TransitionSemigroup {
    pub fn new(a: &Automaton, limit: usize) -> Result<Self> {
        let delta = a.transitions()?;
        let k = a.alphabet().len();
        let gens: Vec<PartialMap> = (0..k)
            .map(|l| {
                PartialMap::from_options(&delta.iter().map(|row| row[l]).collect::<Vec<_>>())
            })
            .collect();
        let mut s = TransitionSemigroup {
            alphabet: a.alphabet().clone(),
            elements: Vec::new(),
            index: HashMap::new(),
            words: Vec::new(),
            generators: Vec::with_capacity(k),
            right: Vec::new(),
            left: Vec::new(),
        };
        for (l, g) in gens.iter().enumerate() {
            let i = match s.index.get(g) {
                Some(&i) => i,
                None => s.push(g.clone(), vec![l], limit)?,
            };
            s.generators.push(i);
        }
        let mut head = 0;
        while head < s.elements.len() {
            let mut row = Vec::with_capacity(k);
            for (l, g) in gens.iter().enumerate() {
                let next = s.elements[head].then(g);
                let j = match s.index.get(&next) {
                    Some(&j) => j,
                    None => {
                        let mut w = s.words[head].clone();
                        w.push(l);
                        s.push(next, w, limit)?
                    }
                };
                row.push(j);
            }
            s.right.push(row);
            head += 1;
        }
        s.left = (0..s.elements.len())
            .map(|i| {
                gens.iter()
                    .map(|g| s.index[&g.then(&s.elements[i])])
                    .collect()
            })
            .collect();
        Ok(s)
    }

    fn push(&mut self, m: PartialMap, word: Vec<usize>, limit: usize) -> Result<usize> {
        if self.elements.len() >= limit {
            return Err(Error::SemigroupTooLarge { limit });
        }
        let i = self.elements.len();
        self.index.insert(m.clone(), i);
        self.elements.push(m);
        self.words.push(word);
        Ok(i)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn element(&self, i: usize) -> &PartialMap {
        &self.elements[i]
    }

    pub fn elements(&self) -> &[PartialMap] {
        &self.elements
    }

    /// The shortlex-least word representing element `i`.
    pub fn word(&self, i: usize) -> &[usize] {
        &self.words[i]
    }

    /// The element of the letter with index `l`.
    pub fn generator(&self, l: usize) -> usize {
        self.generators[l]
    }

    pub fn index_of(&self, m: &PartialMap) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// The element represented by a nonempty word.
    pub fn evaluate(&self, word: &[usize]) -> Option<usize> {
        let (&first, rest) = word.split_first()?;
        Some(rest.iter().fold(self.generators[first], |s, &l| self.right[s][l]))
    }

    pub fn right_mult(&self, i: usize, l: usize) -> usize {
        self.right[i][l]
    }

    pub fn left_mult(&self, l: usize, i: usize) -> usize {
        self.left[i][l]
    }

    pub fn multiply(&self, i: usize, j: usize) -> usize {
        self.index[&self.elements[i].then(&self.elements[j])]
    }

    pub fn is_idempotent(&self, i: usize) -> bool {
        self.elements[i].then(&self.elements[i]) == self.elements[i]
    }

    pub fn idempotents(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.is_idempotent(i)).collect()
    }

    pub fn rank(&self, i: usize) -> usize {
        self.elements[i].rank()
    }

    /// The order of the semigroup: `i <= j` when the graph of `i` is
    /// contained in the graph of `j`.
    pub fn le(&self, i: usize, j: usize) -> bool {
        self.elements[i].graph_le(&self.elements[j])
    }

    /// The everywhere-undefined map, when it belongs to the semigroup.
    pub fn zero(&self) -> Option<usize> {
        self.elements.iter().position(|m| m.is_zero())
    }

    pub fn format_word(&self, i: usize) -> String {
        self.alphabet.format_word(&self.words[i])
    }
}

/// Returns true when `w1 -> w2` (same word in both) is a well-defined,
/// bijective, order-preserving and order-reflecting map between the two
/// semigroups. Letters are matched by name.
pub fn semigroups_generator_isomorphic(
    s1: &TransitionSemigroup,
    s2: &TransitionSemigroup,
) -> Result<bool> {
    let mut letter_map = Vec::new();
    for s in s1.alphabet().symbols() {
        letter_map.push(
            s2.alphabet()
                .index_of(s)
                .ok_or_else(|| Error::Precondition(format!("alphabets differ on {s}")))?,
        );
    }
    if s1.alphabet().len() != s2.alphabet().len() {
        return Err(Error::Precondition("alphabets differ".into()));
    }
    if s1.len() != s2.len() {
        return Ok(false);
    }
    let mut forward = vec![usize::MAX; s1.len()];
    let mut backward = vec![usize::MAX; s2.len()];
    let mut queue = Vec::new();
    fn assign(
        forward: &mut [usize],
        backward: &mut [usize],
        x: usize,
        y: usize,
        queue: &mut Vec<usize>,
    ) -> bool {
        match (forward[x], backward[y]) {
            (usize::MAX, usize::MAX) => {
                forward[x] = y;
                backward[y] = x;
                queue.push(x);
                true
            }
            (fx, by) => fx == y && by == x,
        }
    }
    for (l, &l2) in letter_map.iter().enumerate() {
        if !assign(&mut forward, &mut backward, s1.generator(l), s2.generator(l2), &mut queue) {
            return Ok(false);
        }
    }
    while let Some(x) = queue.pop() {
        let y = forward[x];
        for (l, &l2) in letter_map.iter().enumerate() {
            let (u, v) = (s1.right_mult(x, l), s2.right_mult(y, l2));
            if !assign(&mut forward, &mut backward, u, v, &mut queue) {
                return Ok(false);
            }
        }
    }
    let f = forward;
    for i in 0..s1.len() {
        for j in 0..s1.len() {
            if s1.le(i, j) != s2.le(f[i], f[j]) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Properties tested on every local submonoid `eSe`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LocalProperty {
    Commutative,
    IdempotentsCommute,
}

/// True when every local submonoid `eSe` (for `e` idempotent) has the
/// property.
pub fn local_pseudovariety_check(s: &TransitionSemigroup, property: LocalProperty) -> bool {
    for e in s.idempotents() {
        let mut local: Vec<usize> = (0..s.len())
            .map(|x| s.multiply(s.multiply(e, x), e))
            .collect();
        local.sort_unstable();
        local.dedup();
        if property == LocalProperty::IdempotentsCommute {
            local.retain(|&x| s.is_idempotent(x));
        }
        for (i, &x) in local.iter().enumerate() {
            for &y in &local[i + 1..] {
                if s.multiply(x, y) != s.multiply(y, x) {
                    return false;
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn even() -> Automaton {
        Automaton::from_edges(
            &["a", "b"],
            &["1", "2"],
            &[("1", "a", "1"), ("1", "b", "2"), ("2", "b", "1")],
        )
        .unwrap()
    }

    #[test]
    fn even_shift_semigroup_elements() {
        let s = transition_semigroup(&even()).unwrap();
        let b = s.generator(1);
        assert_eq!(s.element(b), &PartialMap::from_options(&[Some(1), Some(0)]));
        let bb = s.evaluate(&[1, 1]).unwrap();
        assert_eq!(s.element(bb), &PartialMap::from_options(&[Some(0), Some(1)]));
        assert_eq!(s.rank(s.generator(0)), 1);
        assert_eq!(s.evaluate(&[0, 1, 0]), s.zero());
    }

    #[test]
    fn single_loop_semigroup_is_trivial() {
        let a = Automaton::from_edges(&["a"], &["1"], &[("1", "a", "1")]).unwrap();
        let s = transition_semigroup(&a).unwrap();
        assert_eq!(s.len(), 1);
        assert!(local_pseudovariety_check(&s, LocalProperty::Commutative));
        assert!(local_pseudovariety_check(&s, LocalProperty::IdempotentsCommute));
    }

    #[test]
    fn even_shift_local_properties() {
        let s = transition_semigroup(&even()).unwrap();
        assert!(!local_pseudovariety_check(&s, LocalProperty::Commutative));
        assert!(local_pseudovariety_check(&s, LocalProperty::IdempotentsCommute));
    }

    #[test]
    fn nondeterministic_input_rejected() {
        let a = Automaton::from_edges(&["a"], &["1", "2"], &[("1", "a", "1"), ("1", "a", "2")])
            .unwrap();
        assert!(transition_semigroup(&a).is_err());
    }
}
