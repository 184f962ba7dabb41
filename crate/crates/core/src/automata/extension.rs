use super::Automaton;
use crate::error::Result;

/// The extension automaton `A^[m,n]`: its underlying graph is the higher
/// edge graph of order `m + n + 1`, and the edge for the path
/// `e_0 ... e_{m+n}` is labeled by the label of `e_m`. `A^[0,0]` is the
/// essential part of `a`.
pub fn extension_automaton(a: &Automaton, m: usize, n: usize) -> Result<Automaton> {
    let a = a.essential_part();
    if m + n == 0 {
        return Ok(a);
    }
    let (graph, paths) = a.graph().higher_edge_graph_with_paths(m + n + 1);
    let labels = paths.iter().map(|p| a.label(p[m])).collect();
    Automaton::new(graph, labels, a.alphabet().clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::block_languages_equal;

    #[test]
    fn extension_of_even_cover() {
        let a = Automaton::from_edges(
            &["a", "b"],
            &["1", "2"],
            &[("1", "a", "1"), ("1", "b", "2"), ("2", "b", "1")],
        )
        .unwrap();
        assert_eq!(extension_automaton(&a, 0, 0).unwrap(), a);
        let e = extension_automaton(&a, 1, 0).unwrap();
        assert_eq!(e.num_states(), 3);
        assert!(block_languages_equal(&a, &e));
        let e = extension_automaton(&a, 1, 2).unwrap();
        assert!(block_languages_equal(&a, &e));
    }

    #[test]
    fn single_loop_extensions_are_single_loops() {
        let a = Automaton::from_edges(&["a"], &["1"], &[("1", "a", "1")]).unwrap();
        let e = extension_automaton(&a, 2, 3).unwrap();
        assert!(e.is_isomorphic(&a));
    }
}
