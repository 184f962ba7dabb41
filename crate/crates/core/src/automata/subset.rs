use std::collections::HashMap;

use super::Automaton;
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};

/// A deterministic automaton whose states are sets of states of a base
/// automaton. `subsets[i]` lists the base states (sorted) behind state `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsetAutomaton {
    pub automaton: Automaton,
    pub subsets: Vec<Vec<usize>>,
}

/// Display name of a set of states, e.g. `{1,3,4}`.
pub fn set_name(names: &[String], set: &[usize]) -> String {
    let parts: Vec<&str> = set.iter().map(|&q| names[q].as_str()).collect();
    format!("{{{}}}", parts.join(","))
}

/// The subset construction started from the set of all states, keeping
/// the nonempty accessible sets. State 0 is the full set. Every word that
/// labels a path of `a` labels a unique path from state 0.
pub fn determinize_full(a: &Automaton) -> Result<SubsetAutomaton> {
    if a.is_empty() {
        return Err(Error::EmptyShift);
    }
    let start: Vec<usize> = (0..a.num_states()).collect();
    Ok(subset_closure(a, vec![start]))
}

/// Subset automaton on the sets reachable from `roots`, in breadth-first
/// discovery order (roots first). Empty sets are dropped.
pub(crate) fn subset_closure(a: &Automaton, roots: Vec<Vec<usize>>) -> SubsetAutomaton {
    let succ = a.successors();
    let k = a.alphabet().len();
    let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut subsets: Vec<Vec<usize>> = Vec::new();
    for r in roots {
        if !r.is_empty() && !index.contains_key(&r) {
            index.insert(r.clone(), subsets.len());
            subsets.push(r);
        }
    }
    let mut edges = Vec::new();
    let mut labels = Vec::new();
    let mut head = 0;
    while head < subsets.len() {
        for letter in 0..k {
            let next = Automaton::step_set(&succ, &subsets[head], letter);
            if next.is_empty() {
                continue;
            }
            let j = match index.get(&next) {
                Some(&j) => j,
                None => {
                    index.insert(next.clone(), subsets.len());
                    subsets.push(next);
                    subsets.len() - 1
                }
            };
            edges.push(Edge {
                id: format!("e{}", edges.len() + 1),
                src: head,
                dst: j,
            });
            labels.push(letter);
        }
        head += 1;
    }
    let names = subsets.iter().map(|s| set_name(a.states(), s)).collect();
    let graph = Graph::new(names, edges).expect("distinct subsets have distinct names");
    SubsetAutomaton {
        automaton: Automaton::new(graph, labels, a.alphabet().clone()).expect("labels in range"),
        subsets,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_loop_is_unchanged() {
        let a = Automaton::from_edges(&["a"], &["1"], &[("1", "a", "1")]).unwrap();
        let d = determinize_full(&a).unwrap();
        assert!(d.automaton.is_isomorphic(&a));
    }

    #[test]
    fn even_shift_cover_gains_the_start_set() {
        let a = Automaton::from_edges(
            &["a", "b"],
            &["1", "2"],
            &[("1", "a", "1"), ("1", "b", "2"), ("2", "b", "1")],
        )
        .unwrap();
        let d = determinize_full(&a).unwrap();
        assert_eq!(d.automaton.states(), &["{1,2}", "{1}", "{2}"]);
        assert_eq!(d.automaton.num_edges(), 5);
    }
}
