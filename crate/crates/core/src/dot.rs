//! Graphviz output. Nodes are emitted in index order and edges in storage
//! order, so the text is deterministic.

use crate::automata::Automaton;
use crate::graph::Graph;
use crate::semigroup::SyntacticGraph;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

fn render<'a>(
    nodes: impl Iterator<Item = (usize, String)>,
    edges: impl Iterator<Item = (usize, usize, Option<&'a str>)>,
) -> String {
    let mut body = String::new();
    for (i, label) in nodes {
        body.push_str(&format!("  n{i} [label={}];\n", quote(&label)));
    }
    for (s, d, label) in edges {
        match label {
            Some(l) => body.push_str(&format!("  n{s} -> n{d} [label={}];\n", quote(l))),
            None => body.push_str(&format!("  n{s} -> n{d};\n")),
        }
    }
    if body.is_empty() {
        return "digraph {\n}\n".into();
    }
    format!("digraph {{\n  rankdir=LR;\n{body}}}\n")
}

/// Nodes carry state names, edges their labels.
pub fn automaton_to_dot(a: &Automaton) -> String {
    render(
        a.states().iter().cloned().enumerate(),
        a.edges()
            .iter()
            .enumerate()
            .map(|(k, e)| (e.src, e.dst, Some(a.label_symbol(k).as_str()))),
    )
}

/// Edges are labeled by their ids.
pub fn graph_to_dot(g: &Graph) -> String {
    render(
        g.states().iter().cloned().enumerate(),
        g.edges().iter().map(|e| (e.src, e.dst, Some(e.id.as_str()))),
    )
}

/// The Hasse diagram of a syntactic graph, higher classes first.
pub fn syntactic_graph_to_dot(s: &SyntacticGraph) -> String {
    render(
        s.nodes.iter().map(|n| n.label()).enumerate(),
        s.hasse.iter().map(|&(i, j)| (i, j, None)),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn even_cover() {
        let a = Automaton::from_edges(
            &["a", "b"],
            &["1", "2"],
            &[("1", "a", "1"), ("1", "b", "2"), ("2", "b", "1")],
        )
        .unwrap();
        let dot = automaton_to_dot(&a);
        assert_eq!(dot.matches("[label=").count(), 5);
        assert_eq!(dot.matches(" -> ").count(), 3);
        assert!(dot.contains("n1 -> n0 [label=\"b\"];"));
    }

    #[test]
    fn empty_graph() {
        assert_eq!(graph_to_dot(&Graph::default()), "digraph {\n}\n");
    }

    #[test]
    fn escapes_quotes() {
        assert_eq!(quote("a\"b"), "\"a\\\"b\"");
    }
}
