use super::builder::Builder;
use crate::automata::Automaton;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::symbol::{Alphabet, Symbol};

/// Graph expansion at `p`: a new state `p'`, placed right after `p`,
/// receives every edge formerly entering `p`, and a single new edge goes
/// from `p'` to `p`.
pub fn graph_expansion(g: &Graph, p: usize) -> Result<Graph> {
    let alphabet = Alphabet::new(["_"])?;
    let a = Automaton::new(g.clone(), vec![0; g.num_edges()], alphabet)?;
    Ok(expand(&a, p, &Symbol::new("_")?)?.graph().clone())
}

/// Automaton expansion at `p` with the new symbol `fresh`: the graph
/// expansion at `p`, the new edge labeled `fresh`. It is a symbol expansion
/// of the presented shift when all edges entering `p` carry one label `a`
/// and every `a`-edge enters `p`.
pub fn automaton_expansion(a: &Automaton, p: usize, fresh: &Symbol) -> Result<Automaton> {
    if p >= a.num_states() {
        return Err(Error::UnknownState(format!("#{p}")));
    }
    if a.alphabet().contains(fresh) {
        return Err(Error::Precondition(format!("symbol {fresh} is already in use")));
    }
    let mut labels = a
        .edges()
        .iter()
        .enumerate()
        .filter(|(_, e)| e.dst == p)
        .map(|(i, _)| a.label(i));
    let Some(label) = labels.next() else {
        return Err(Error::Precondition(format!("no edge enters {}", a.states()[p])));
    };
    if labels.any(|l| l != label) {
        return Err(Error::Precondition(format!(
            "edges entering {} carry different labels",
            a.states()[p]
        )));
    }
    if let Some(e) = a.edges().iter().enumerate().find(|(i, e)| a.label(*i) == label && e.dst != p) {
        return Err(Error::Precondition(format!(
            "edge {} carries {} but does not enter {}",
            e.1.id,
            a.alphabet().symbol(label),
            a.states()[p]
        )));
    }
    expand(a, p, fresh)
}

fn expand(a: &Automaton, p: usize, fresh: &Symbol) -> Result<Automaton> {
    let mut b = Builder::new(a.alphabet().clone());
    for s in &a.states()[..=p] {
        b.state(s);
    }
    let mut taken = Builder::new(Alphabet::default());
    for s in a.states() {
        taken.state(s);
    }
    let name = taken.fresh_state(&format!("{}'", a.states()[p]));
    let new = b.state(&name);
    for s in &a.states()[p + 1..] {
        b.state(s);
    }
    let shift = |q: usize| if q > p { q + 1 } else { q };
    for e in a.edges() {
        b.reserve_id(&e.id);
    }
    for (i, e) in a.edges().iter().enumerate() {
        let dst = if e.dst == p { new } else { shift(e.dst) };
        b.edge(&e.id, shift(e.src), a.label_symbol(i), dst);
    }
    let id = b.fresh_id(&name);
    b.edge(&id, new, fresh, p);
    b.build()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::CountMatrix;
    use crate::symbol::sym;

    #[test]
    fn expansion_borders_the_adjacency_matrix() {
        let m = CountMatrix::from_rows(vec![vec![1, 1], vec![1, 1]]).unwrap();
        let g = graph_expansion(&Graph::from_matrix(&m).unwrap(), 0).unwrap();
        assert_eq!(
            g.adjacency().to_rows(),
            vec![vec![0, 1, 1], vec![1, 0, 0], vec![0, 1, 1]]
        );
        assert_eq!(g.states()[1], format!("{}'", g.states()[0]));
    }

    #[test]
    fn single_loop_becomes_two_cycle() {
        let a = Automaton::from_edges(&["a"], &["1"], &[("1", "a", "1")]).unwrap();
        let b = automaton_expansion(&a, 0, &sym("w")).unwrap();
        assert_eq!(b.states(), &["1".to_string(), "1'".to_string()]);
        assert_eq!(b.adjacency().to_string(), "[[0,a],[w,0]]");
    }

    #[test]
    fn expansion_requires_a_uniform_entry_label() {
        let a = Automaton::from_edges(
            &["a", "b"],
            &["1", "2"],
            &[("1", "a", "2"), ("2", "a", "1"), ("2", "b", "2")],
        )
        .unwrap();
        assert!(automaton_expansion(&a, 1, &sym("w")).is_err());
        assert!(automaton_expansion(&a, 0, &sym("a")).is_err());
    }
}
