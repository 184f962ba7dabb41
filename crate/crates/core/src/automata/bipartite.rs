use std::collections::{BTreeMap, BTreeSet};

use super::Automaton;
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};
use crate::matrix::AlphabeticMatrix;
use crate::symbol::{Alphabet, Symbol};

/// The two components of a bipartite automaton.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bipartite {
    /// Paths of length two starting in the first part, labeled by the
    /// concatenation of their two labels.
    pub first: Automaton,
    /// Paths of length two starting in the second part.
    pub second: Automaton,
}

/// The symbol naming the two-letter word `xy`.
pub fn concat_symbol(x: &Symbol, y: &Symbol) -> Symbol {
    Symbol::new(format!("{x}{y}")).expect("concatenation of valid symbols")
}

/// The bipartite automaton with adjacency matrix `[[0, R], [S, 0]]`.
/// States of the first part are named `1..k`, those of the second part
/// `1'..l'`.
pub fn bipartite_compose(r: &AlphabeticMatrix, s: &AlphabeticMatrix) -> Result<Automaton> {
    if r.cols() != s.rows() || s.cols() != r.rows() {
        return Err(Error::Dimension(format!(
            "R is {}x{} but S is {}x{}",
            r.rows(),
            r.cols(),
            s.rows(),
            s.cols()
        )));
    }
    let ar = r.symbols();
    let as_ = s.symbols();
    if let Some(x) = ar.intersection(&as_).next() {
        return Err(Error::AlphabetOverlap(x.to_string()));
    }
    let alphabet = Alphabet::from_symbols(ar.into_iter().chain(as_).collect())?;
    let k = r.rows();
    let l = r.cols();
    let mut names: Vec<String> = (1..=k).map(|i| i.to_string()).collect();
    names.extend((1..=l).map(|i| format!("{i}'")));
    let mut edges = Vec::new();
    let mut labels = Vec::new();
    let mut add = |m: &AlphabeticMatrix, src_off: usize, dst_off: usize| {
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                for (sym, &c) in m.get(i, j) {
                    for _ in 0..c {
                        edges.push(Edge {
                            id: format!("e{}", edges.len() + 1),
                            src: i + src_off,
                            dst: j + dst_off,
                        });
                        labels.push(alphabet.index_of(sym).expect("symbol collected"));
                    }
                }
            }
        }
    };
    add(r, 0, k);
    add(s, k, 0);
    Automaton::new(Graph::new(names, edges)?, labels, alphabet)
}

/// Splits a bipartite automaton into its two components. `first` lists the
/// states of the first part; every edge must cross between the parts, and
/// the labels used from each part must be disjoint.
pub fn bipartite_components(a: &Automaton, first: &[usize]) -> Result<Bipartite> {
    let mut in_first = vec![false; a.num_states()];
    for &q in first {
        in_first[q] = true;
    }
    let mut letters = [BTreeSet::new(), BTreeSet::new()];
    for (i, e) in a.edges().iter().enumerate() {
        if in_first[e.src] == in_first[e.dst] {
            return Err(Error::NotBipartite(e.id.clone()));
        }
        let side = if in_first[e.src] { 0 } else { 1 };
        letters[side].insert(a.label(i));
    }
    if let Some(&x) = letters[0].intersection(&letters[1]).next() {
        return Err(Error::AlphabetOverlap(a.alphabet().symbol(x).to_string()));
    }
    let keep_first: Vec<bool> = in_first.clone();
    let keep_second: Vec<bool> = in_first.iter().map(|b| !b).collect();
    Ok(Bipartite {
        first: component(a, &keep_first)?,
        second: component(a, &keep_second)?,
    })
}

fn component(a: &Automaton, part: &[bool]) -> Result<Automaton> {
    let out = a.graph().out_edges();
    let mut index = vec![usize::MAX; a.num_states()];
    let mut names = Vec::new();
    for (q, &inside) in part.iter().enumerate() {
        if inside {
            index[q] = names.len();
            names.push(a.states()[q].clone());
        }
    }
    let mut triples = Vec::new();
    let mut words: BTreeMap<Symbol, (Symbol, Symbol)> = BTreeMap::new();
    for (i, e) in a.edges().iter().enumerate() {
        if !part[e.src] {
            continue;
        }
        for &j in &out[e.dst] {
            let f = &a.edges()[j];
            let (x, y) = (a.label_symbol(i).clone(), a.label_symbol(j).clone());
            let s = concat_symbol(&x, &y);
            if let Some(prev) = words.insert(s.clone(), (x.clone(), y.clone())) {
                if prev.0 != x || prev.1 != y {
                    return Err(Error::Bijection(format!(
                        "two-letter words {}{} and {}{} have the same name",
                        prev.0, prev.1, x, y
                    )));
                }
            }
            triples.push((format!("{}.{}", e.id, f.id), index[e.src], s, index[f.dst]));
        }
    }
    let alphabet = Alphabet::from_symbols(words.into_keys().collect())?;
    let mut edges = Vec::new();
    let mut labels = Vec::new();
    for (id, src, s, dst) in triples {
        edges.push(Edge { id, src, dst });
        labels.push(alphabet.index_of(&s).expect("symbol collected"));
    }
    Automaton::new(Graph::new(names, edges)?, labels, alphabet)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_by_one_compose() {
        let r = AlphabeticMatrix::parse(&[&["x"]]).unwrap();
        let s = AlphabeticMatrix::parse(&[&["y"]]).unwrap();
        let c = bipartite_compose(&r, &s).unwrap();
        assert_eq!(c.num_states(), 2);
        let parts = bipartite_components(&c, &[0]).unwrap();
        assert_eq!(parts.first.adjacency(), AlphabeticMatrix::parse(&[&["xy"]]).unwrap());
        assert_eq!(parts.second.adjacency(), AlphabeticMatrix::parse(&[&["yx"]]).unwrap());
    }

    #[test]
    fn overlapping_alphabets_rejected() {
        let r = AlphabeticMatrix::parse(&[&["x"]]).unwrap();
        assert!(matches!(
            bipartite_compose(&r, &r),
            Err(Error::AlphabetOverlap(_))
        ));
    }

    #[test]
    fn non_bipartite_partition_reports_edge() {
        let a = Automaton::from_edges(&["a"], &["1"], &[("1", "a", "1")]).unwrap();
        assert_eq!(
            bipartite_components(&a, &[0]),
            Err(Error::NotBipartite("e1".into()))
        );
    }
}
