use std::collections::HashMap;

use super::{determinize_full, Automaton};
use crate::error::{Error, Result};
use crate::symbol::Symbol;

/// A shortest word labeling a path of `a` but no path of `b`, if any.
/// Symbols are matched by name.
pub fn block_language_difference(a: &Automaton, b: &Automaton) -> Option<Vec<Symbol>> {
    let sa = a.successors();
    let sb = b.successors();
    let letters: Vec<(usize, Option<usize>)> = a
        .alphabet()
        .symbols()
        .iter()
        .enumerate()
        .map(|(i, s)| (i, b.alphabet().index_of(s)))
        .collect();
    type Node = (Vec<usize>, Vec<usize>);
    let start: Node = (
        (0..a.num_states()).collect(),
        (0..b.num_states()).collect(),
    );
    if start.0.is_empty() {
        return None;
    }
    let mut parent: HashMap<Node, Option<(Node, usize)>> = HashMap::new();
    parent.insert(start.clone(), None);
    let mut queue = std::collections::VecDeque::from([start]);
    let word_to = |parent: &HashMap<Node, Option<(Node, usize)>>, mut node: Node, last: usize| {
        let mut word = vec![last];
        while let Some(Some((prev, l))) = parent.get(&node) {
            word.push(*l);
            node = prev.clone();
        }
        word.reverse();
        word.iter().map(|&l| a.alphabet().symbol(l).clone()).collect()
    };
    while let Some(node) = queue.pop_front() {
        for &(la, lb) in &letters {
            let na = Automaton::step_set(&sa, &node.0, la);
            if na.is_empty() {
                continue;
            }
            let nb = match lb {
                Some(lb) => Automaton::step_set(&sb, &node.1, lb),
                None => Vec::new(),
            };
            if nb.is_empty() {
                return Some(word_to(&parent, node, la));
            }
            let next = (na, nb);
            if !parent.contains_key(&next) {
                parent.insert(next.clone(), Some((node.clone(), la)));
                queue.push_back(next);
            }
        }
    }
    None
}

/// True when the two automata label paths with the same words.
pub fn block_languages_equal(a: &Automaton, b: &Automaton) -> bool {
    block_language_difference(a, b).is_none() && block_language_difference(b, a).is_none()
}

/// `s_k`, the number of words of length `k` labeling a path, for
/// `k = 1..=n`. Computed by counting paths in the subset automaton.
pub fn block_counts(a: &Automaton, n: usize) -> Result<Vec<u128>> {
    if a.is_empty() {
        return Ok(vec![0; n]);
    }
    let d = determinize_full(a)?.automaton;
    let mut counts = vec![0u128; d.num_states()];
    counts[0] = 1;
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        let mut next = vec![0u128; d.num_states()];
        for e in d.edges() {
            next[e.dst] = next[e.dst]
                .checked_add(counts[e.src])
                .ok_or(Error::Overflow)?;
        }
        counts = next;
        let total = counts
            .iter()
            .try_fold(0u128, |acc, &c| acc.checked_add(c))
            .ok_or(Error::Overflow)?;
        out.push(total);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_mean_block_counts_are_fibonacci() {
        let a = Automaton::from_edges(
            &["a", "b"],
            &["1", "2"],
            &[("1", "a", "1"), ("1", "b", "2"), ("2", "a", "1")],
        )
        .unwrap();
        let s = block_counts(&a, 6).unwrap();
        assert_eq!(s, vec![2, 3, 5, 8, 13, 21]);
        for n in 1..5 {
            assert_eq!(s[n + 1], s[n] + s[n - 1]);
        }
    }

    #[test]
    fn difference_finds_shortest_word() {
        let golden = Automaton::from_edges(
            &["a", "b"],
            &["1", "2"],
            &[("1", "a", "1"), ("1", "b", "2"), ("2", "a", "1")],
        )
        .unwrap();
        let even = Automaton::from_edges(
            &["a", "b"],
            &["1", "2"],
            &[("1", "a", "1"), ("1", "b", "2"), ("2", "b", "1")],
        )
        .unwrap();
        let w = block_language_difference(&even, &golden).unwrap();
        assert_eq!(w.iter().map(|s| s.as_str()).collect::<String>(), "bb");
        assert!(!block_languages_equal(&even, &golden));
        assert!(block_languages_equal(&even, &even));
    }
}
