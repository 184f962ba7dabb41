use std::collections::HashMap;

use super::{block_language_difference, Automaton};
use crate::error::Result;
use crate::graph::{Edge, Graph};
use crate::symbol::Symbol;

/// A deterministic automaton obtained by merging states, with the class of
/// each original state.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quotient {
    pub automaton: Automaton,
    pub class_of: Vec<usize>,
}

/// Partition of the states of a deterministic automaton by right language
/// (the set of words readable from the state). Classes are numbered in
/// order of first appearance.
pub fn right_language_classes(a: &Automaton) -> Result<Vec<usize>> {
    let delta = a.transitions()?;
    let n = a.num_states();
    let renumber = |keys: Vec<Vec<Option<usize>>>| -> (Vec<usize>, usize) {
        let mut ids: HashMap<Vec<Option<usize>>, usize> = HashMap::new();
        let classes: Vec<usize> = keys
            .into_iter()
            .map(|k| {
                let next = ids.len();
                *ids.entry(k).or_insert(next)
            })
            .collect();
        (classes, ids.len())
    };
    // Initial signature: which letters are defined.
    let (mut class, mut count) = renumber(
        (0..n)
            .map(|q| delta[q].iter().map(|t| t.map(|_| 0)).collect())
            .collect(),
    );
    loop {
        let keys = (0..n)
            .map(|q| {
                let mut key = vec![Some(class[q])];
                key.extend(delta[q].iter().map(|t| t.map(|p| class[p])));
                key
            })
            .collect();
        let (next, next_count) = renumber(keys);
        if next_count == count {
            return Ok(next);
        }
        class = next;
        count = next_count;
    }
}

/// Merges states with equal right languages. Each class is represented by
/// its first state, whose name and outgoing edge ids are kept.
pub fn reduce(a: &Automaton) -> Result<Quotient> {
    let class_of = right_language_classes(a)?;
    Ok(Quotient {
        automaton: quotient(a, &class_of),
        class_of,
    })
}

pub(crate) fn quotient(a: &Automaton, class_of: &[usize]) -> Automaton {
    let count = class_of.iter().copied().max().map_or(0, |m| m + 1);
    let mut rep = vec![usize::MAX; count];
    for (q, &c) in class_of.iter().enumerate() {
        if rep[c] == usize::MAX {
            rep[c] = q;
        }
    }
    let names = rep.iter().map(|&q| a.states()[q].clone()).collect();
    let mut edges = Vec::new();
    let mut labels = Vec::new();
    for (i, e) in a.edges().iter().enumerate() {
        if rep[class_of[e.src]] == e.src {
            edges.push(Edge {
                id: e.id.clone(),
                src: class_of[e.src],
                dst: class_of[e.dst],
            });
            labels.push(a.label(i));
        }
    }
    let graph = Graph::new(names, edges).expect("representatives are distinct");
    Automaton::new(graph, labels, a.alphabet().clone()).expect("labels in range")
}

/// Outcome of [`reduction_map`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReductionOutcome {
    /// `map[p]` is the image of state `p`.
    Reduction(Vec<usize>),
    /// No reduction exists. `word`, when present, is a block of one
    /// automaton that is not a block of the other.
    Mismatch { word: Option<Vec<Symbol>> },
}

/// Looks for a surjection `h` from the states of `a` onto those of `target`
/// such that `(p, x, q)` is an edge of `a` iff `(h(p), x, h(q))` is an edge
/// of `target`. Both automata must be deterministic.
pub fn reduction_map(a: &Automaton, target: &Automaton) -> Result<ReductionOutcome> {
    a.check_deterministic()?;
    target.check_deterministic()?;
    let mismatch = || -> Result<ReductionOutcome> {
        let word = block_language_difference(a, target)
            .or_else(|| block_language_difference(target, a));
        Ok(ReductionOutcome::Mismatch { word })
    };
    let mut alphabet = a.alphabet().clone();
    for s in target.alphabet().symbols() {
        alphabet.insert(s.clone());
    }
    let a2 = a.with_alphabet(&alphabet)?;
    let t2 = target.with_alphabet(&alphabet)?;
    // Disjoint union, then compare right languages.
    let offset = a2.num_states();
    let mut names: Vec<String> = (0..offset).map(|i| format!("a{i}")).collect();
    names.extend((0..t2.num_states()).map(|i| format!("t{i}")));
    let mut edges = Vec::new();
    let mut labels = Vec::new();
    for (k, (x, shift)) in [(&a2, 0), (&t2, offset)].into_iter().enumerate() {
        for (i, e) in x.edges().iter().enumerate() {
            edges.push(Edge {
                id: format!("{k}:{i}"),
                src: e.src + shift,
                dst: e.dst + shift,
            });
            labels.push(x.label(i));
        }
    }
    let union = Automaton::new(Graph::new(names, edges)?, labels, alphabet)?;
    let class_of = right_language_classes(&union)?;
    let mut target_of_class = HashMap::new();
    for t in 0..t2.num_states() {
        target_of_class.entry(class_of[offset + t]).or_insert(t);
    }
    let mut map = Vec::with_capacity(offset);
    for p in 0..offset {
        match target_of_class.get(&class_of[p]) {
            Some(&t) => map.push(t),
            None => return mismatch(),
        }
    }
    let mut hit = vec![false; t2.num_states()];
    for &t in &map {
        hit[t] = true;
    }
    if hit.iter().any(|h| !h) {
        return mismatch();
    }
    let da = a2.transitions()?;
    let dt = t2.transitions()?;
    for p in 0..offset {
        for (l, q) in da[p].iter().enumerate() {
            if q.map(|q| map[q]) != dt[map[p]][l] {
                return mismatch();
            }
        }
    }
    Ok(ReductionOutcome::Reduction(map))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identical_loops_merge() {
        let a = Automaton::from_edges(&["a"], &["1", "2"], &[("1", "a", "1"), ("2", "a", "2")])
            .unwrap();
        let r = reduce(&a).unwrap();
        assert_eq!(r.automaton.num_states(), 1);
        assert_eq!(r.class_of, vec![0, 0]);
    }
}
