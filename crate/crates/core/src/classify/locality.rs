use super::pairs::PairGraph;
use crate::automata::Automaton;
use crate::graph::{longest_paths_from, strongly_connected_components};

/// Two distinct paths carrying the same label. When `cycles` is set both
/// are cycles; otherwise they share their first and last states.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EqualLabelPaths {
    pub label: String,
    pub first: Vec<String>,
    pub second: Vec<String>,
    pub cycles: bool,
}

/// Result of the locality test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalityWitness {
    /// Minimal admissible `(m, n)` with `m + n <= bound`, by increasing `m`.
    /// Empty when the automaton is not local.
    pub frontier: Vec<(usize, usize)>,
    pub bound: usize,
    pub counterexample: Option<EqualLabelPaths>,
    /// For each pair of distinct states reachable by two paths with a
    /// common label: the longest such path pair ending and starting there
    /// (`None` for unbounded).
    extents: Vec<(Option<usize>, Option<usize>)>,
}

impl LocalityWitness {
    pub fn is_local(&self) -> bool {
        self.counterexample.is_none()
    }

    /// Whether the automaton is `(m, n)`-local: any two paths `-u-> q -v->`
    /// and `-u-> q' -v->` with `|u| = m`, `|v| = n` have `q = q'`.
    pub fn admits(&self, m: usize, n: usize) -> bool {
        self.extents
            .iter()
            .all(|&(back, fwd)| back.is_some_and(|b| b < m) || fwd.is_some_and(|f| f < n))
    }

    /// Admissible pairs minimizing `m + n`, with no bound.
    pub fn least(&self) -> Option<(usize, usize)> {
        self.full_frontier().into_iter().min_by_key(|&(m, n)| (m + n, m))
    }

    fn full_frontier(&self) -> Vec<(usize, usize)> {
        if !self.is_local() {
            return Vec::new();
        }
        let mut out = Vec::new();
        let mut prev: Option<usize> = None;
        let top = self.extents.iter().filter_map(|e| e.0).max().map_or(0, |b| b + 1);
        for m in 0..=top {
            // Least n working for this m.
            let mut need = Some(0);
            for &(back, fwd) in &self.extents {
                if back.is_some_and(|b| b < m) {
                    continue;
                }
                need = match (need, fwd) {
                    (Some(x), Some(f)) => Some(x.max(f + 1)),
                    _ => None,
                };
            }
            if let Some(n) = need {
                if prev.is_none_or(|p| n < p) {
                    out.push((m, n));
                    prev = Some(n);
                }
                if n == 0 {
                    break;
                }
            }
        }
        out
    }
}

/// Locality of an automaton, read off the label-synchronized square of its
/// essential part. A pair of distinct states is the middle of arbitrarily
/// long equal-label path pairs on both sides exactly when the automaton is
/// not local. `bound` defaults to the square of the number of states.
pub fn locality(a: &Automaton, bound: Option<usize>) -> LocalityWitness {
    let a = a.essential_part();
    let pg = PairGraph::new(&a);
    let fwd = longest_paths_from(&pg.succ);
    let back = longest_paths_from(&pg.reversed());
    let n = a.num_states();
    let bound = bound.unwrap_or(n * n);
    let extents: Vec<(Option<usize>, Option<usize>)> = (0..n * n)
        .filter(|&v| !pg.is_diagonal(v))
        .map(|v| (back[v], fwd[v]))
        .collect();
    let bad = (0..n * n).find(|&v| !pg.is_diagonal(v) && back[v].is_none() && fwd[v].is_none());
    let counterexample = bad.map(|v| counterexample(&a, &pg, v));
    let mut w = LocalityWitness {
        frontier: Vec::new(),
        bound,
        counterexample,
        extents,
    };
    w.frontier = w
        .full_frontier()
        .into_iter()
        .filter(|&(m, n)| m + n <= bound)
        .collect();
    w
}

fn counterexample(a: &Automaton, pg: &PairGraph, bad: usize) -> EqualLabelPaths {
    // Prefer a cycle of the square through distinct states.
    let comps = strongly_connected_components(&pg.succ);
    let on_cycle = comps
        .iter()
        .filter(|c| c.len() > 1 || pg.succ[c[0]].contains(&c[0]))
        .flatten()
        .copied()
        .find(|&v| !pg.is_diagonal(v));
    let (path, cycles) = match on_cycle {
        Some(v) => (pg.path_to(v, |w| w == v).expect("cycle"), true),
        None => {
            // Both directions of `bad` end on the diagonal.
            let start = (0..pg.succ.len())
                .filter(|&d| pg.is_diagonal(d))
                .find_map(|d| pg.path_to(d, |w| w == bad))
                .expect("diagonal ancestor");
            let end = pg.path_to(bad, |w| pg.is_diagonal(w)).expect("diagonal descendant");
            (start.into_iter().chain(end).collect(), false)
        }
    };
    let ids = |pick: fn(&(usize, usize)) -> usize| -> Vec<String> {
        path.iter().map(|e| a.edges()[pick(e)].id.clone()).collect()
    };
    let labels: Vec<usize> = path.iter().map(|&(i, _)| a.label(i)).collect();
    EqualLabelPaths {
        label: a.alphabet().format_word(&labels),
        first: ids(|e| e.0),
        second: ids(|e| e.1),
        cycles,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn figure_local() -> Automaton {
        Automaton::from_edges(
            &["a", "b"],
            &["1", "2", "3"],
            &[("1", "a", "2"), ("1", "b", "2"), ("2", "b", "3"), ("3", "a", "1")],
        )
        .unwrap()
    }

    #[test]
    fn frontier_of_three_state_local_automaton() {
        let w = locality(&figure_local(), None);
        assert!(w.is_local());
        assert_eq!(w.frontier, vec![(0, 3), (1, 2), (2, 1), (3, 0)]);
        assert!(w.admits(3, 0) && w.admits(0, 3) && w.admits(2, 1) && w.admits(1, 2));
        assert!(!w.admits(2, 0));
        assert_eq!(w.least(), Some((0, 3)));
    }

    #[test]
    fn even_cover_is_not_local() {
        let a = Automaton::from_edges(
            &["a", "b"],
            &["1", "2"],
            &[("1", "a", "1"), ("1", "b", "2"), ("2", "b", "1")],
        )
        .unwrap();
        let w = locality(&a, None);
        assert!(!w.is_local());
        let c = w.counterexample.unwrap();
        assert!(c.cycles);
        assert_eq!(c.label, "bb");
        assert_ne!(c.first, c.second);
    }

    #[test]
    fn single_loop_is_zero_local() {
        let a = Automaton::from_edges(&["a"], &["1"], &[("1", "a", "1")]).unwrap();
        assert_eq!(locality(&a, None).frontier, vec![(0, 0)]);
    }

    #[test]
    fn diamond_is_not_local() {
        let a = Automaton::from_edges(
            &["x", "a", "b", "y"],
            &["1", "2", "3", "4"],
            &[
                ("1", "x", "1"),
                ("1", "a", "2"),
                ("1", "a", "3"),
                ("2", "b", "4"),
                ("3", "b", "4"),
                ("4", "y", "4"),
            ],
        )
        .unwrap();
        let w = locality(&a, None);
        let c = w.counterexample.unwrap();
        assert!(!c.cycles);
        assert_eq!(c.label, "ab");
    }
}
