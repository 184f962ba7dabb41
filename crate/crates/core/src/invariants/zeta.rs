use std::collections::HashMap;

use crate::automata::{Automaton, Relation, RelationSemigroup, ShiftPresentation, SEMIGROUP_LIMIT};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// `p_1..p_n`, where `p_k` counts the points `x` with `sigma^k(x) = x`.
pub fn periodic_counts(p: &ShiftPresentation, n: usize) -> Result<Vec<u128>> {
    periodic_counts_of(&p.to_automaton(), n)
}

/// Periodic counts of the edge shift of `g`: `p_k = trace(M^k)`.
pub fn periodic_counts_graph(g: &Graph, n: usize) -> Result<Vec<u128>> {
    g.adjacency().trace_powers(n)
}

/// Periodic counts of the shift presented by `a`. The point `w^inf` lies in
/// the shift exactly when `w^q` labels a path, `q` the number of states: by
/// pigeonhole such a path revisits a state at a multiple of `|w|`, closing a
/// cycle labeled by a power of `w`. Words are counted by the element of the
/// relation semigroup they define.
pub fn periodic_counts_of(a: &Automaton, n: usize) -> Result<Vec<u128>> {
    let a = a.essential_part();
    if a.is_empty() {
        return Ok(vec![0; n]);
    }
    let q = a.num_states();
    let s = RelationSemigroup::new(&a, SEMIGROUP_LIMIT)?;
    let index: HashMap<&Relation, usize> = s.elements.iter().enumerate().map(|(i, r)| (r, i)).collect();
    let letters: Vec<Relation> = (0..a.alphabet().len()).map(|l| Relation::of_letter(&a, l)).collect();
    let right: Vec<Vec<usize>> = s
        .elements
        .iter()
        .map(|r| letters.iter().map(|g| index[&r.then(g)]).collect())
        .collect();
    let periodic: Vec<bool> = s
        .elements
        .iter()
        .map(|r| {
            let mut p = r.clone();
            for _ in 1..q {
                p = p.then(r);
            }
            !p.is_empty()
        })
        .collect();

    let mut counts = vec![0u128; s.elements.len()];
    for g in &letters {
        counts[index[g]] += 1;
    }
    let mut out = Vec::with_capacity(n);
    for k in 1..=n {
        if k > 1 {
            let mut next = vec![0u128; counts.len()];
            for (x, &c) in counts.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                for &y in &right[x] {
                    next[y] = next[y].checked_add(c).ok_or(Error::Overflow)?;
                }
            }
            counts = next;
        }
        let total = counts
            .iter()
            .zip(&periodic)
            .filter(|(_, &p)| p)
            .try_fold(0u128, |acc, (&c, _)| acc.checked_add(c))
            .ok_or(Error::Overflow)?;
        out.push(total);
    }
    Ok(out)
}
