use std::collections::{HashMap, VecDeque};

use super::Automaton;
use crate::error::Result;

/// A word `w` such that exactly one state is reached by reading `w` from
/// all states, or `None` if the greedy pair-merging search finds none.
///
/// Pairs of states are merged one at a time, each by a shortest word that
/// sends both to the same state or kills exactly one of them. The
/// automaton must be deterministic.
pub fn synchronizing_word(a: &Automaton) -> Result<Option<Vec<usize>>> {
    let delta = a.transitions()?;
    let n = a.num_states();
    if n == 0 {
        return Ok(None);
    }
    if n == 1 {
        return Ok((0..a.alphabet().len()).find(|&l| delta[0][l].is_some()).map(|l| vec![l]));
    }
    let apply = |set: &[usize], w: &[usize]| -> Vec<usize> {
        let mut out: Vec<usize> = set
            .iter()
            .filter_map(|&q| w.iter().try_fold(q, |p, &l| delta[p][l]))
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    };
    let mut current: Vec<usize> = (0..n).collect();
    let mut word = Vec::new();
    while current.len() > 1 {
        let mut merged = None;
        'pairs: for i in 0..current.len() {
            for j in i + 1..current.len() {
                if let Some(w) = merge_pair(&delta, current[i], current[j]) {
                    merged = Some(w);
                    break 'pairs;
                }
            }
        }
        let Some(w) = merged else {
            return Ok(None);
        };
        current = apply(&current, &w);
        word.extend(w);
    }
    Ok(Some(word))
}

/// Shortest word after which the two states reach a single state.
fn merge_pair(delta: &[Vec<Option<usize>>], p: usize, q: usize) -> Option<Vec<usize>> {
    let letters = delta[0].len();
    let mut parent: HashMap<(usize, usize), Option<((usize, usize), usize)>> = HashMap::new();
    let start = (p.min(q), p.max(q));
    parent.insert(start, None);
    let mut queue = VecDeque::from([start]);
    let path = |parent: &HashMap<_, Option<((usize, usize), usize)>>, mut node, last| {
        let mut w = vec![last];
        while let Some(Some((prev, l))) = parent.get(&node) {
            w.push(*l);
            node = *prev;
        }
        w.reverse();
        w
    };
    while let Some((x, y)) = queue.pop_front() {
        for l in 0..letters {
            match (delta[x][l], delta[y][l]) {
                (None, None) => {}
                (Some(_), None) | (None, Some(_)) => return Some(path(&parent, (x, y), l)),
                (Some(u), Some(v)) if u == v => return Some(path(&parent, (x, y), l)),
                (Some(u), Some(v)) => {
                    let next = (u.min(v), u.max(v));
                    if let std::collections::hash_map::Entry::Vacant(e) = parent.entry(next) {
                        e.insert(Some(((x, y), l)));
                        queue.push_back(next);
                    }
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn even_shift_is_synchronized_by_a() {
        let a = Automaton::from_edges(
            &["a", "b"],
            &["1", "2"],
            &[("1", "a", "1"), ("1", "b", "2"), ("2", "b", "1")],
        )
        .unwrap();
        assert_eq!(synchronizing_word(&a).unwrap(), Some(vec![0]));
    }

    #[test]
    fn permutation_automaton_has_no_synchronizing_word() {
        let a = Automaton::from_edges(&["a"], &["1", "2"], &[("1", "a", "2"), ("2", "a", "1")])
            .unwrap();
        assert_eq!(synchronizing_word(&a).unwrap(), None);
    }
}
