//! Labeled automata and the canonical presentations of sofic shifts.

mod bipartite;
mod cover;
mod extension;
mod forbidden;
mod language;
mod minimize;
mod subset;
mod sync;

use std::collections::{BTreeMap, HashMap};

pub use bipartite::{bipartite_components, bipartite_compose, concat_symbol, Bipartite};
pub use cover::{
    fischer, fischer_component, fischer_of, krieger, krieger_of, terminal_components, Cover,
    Relation, RelationSemigroup, SEMIGROUP_LIMIT,
};
pub use extension::extension_automaton;
pub use forbidden::presentation_from_forbidden;
pub use language::{block_language_difference, block_languages_equal, block_counts};
pub use minimize::{reduce, reduction_map, right_language_classes, Quotient, ReductionOutcome};
pub use subset::{determinize_full, set_name, SubsetAutomaton};
pub use sync::synchronizing_word;

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};
use crate::matrix::AlphabeticMatrix;
use crate::symbol::{Alphabet, Symbol};

/// A finite automaton with labeled edges: a graph plus a label for each
/// edge. There are no initial or final states; the automaton presents the
/// set of labels of its biinfinite paths.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Automaton {
    graph: Graph,
    labels: Vec<usize>,
    alphabet: Alphabet,
}

impl Automaton {
    pub fn new(graph: Graph, labels: Vec<usize>, alphabet: Alphabet) -> Result<Self> {
        if labels.len() != graph.num_edges() {
            return Err(Error::Dimension(format!(
                "{} labels for {} edges",
                labels.len(),
                graph.num_edges()
            )));
        }
        if let Some(&l) = labels.iter().find(|&&l| l >= alphabet.len()) {
            return Err(Error::UnknownSymbol(format!("#{l}")));
        }
        Ok(Automaton {
            graph,
            labels,
            alphabet,
        })
    }

    /// Builds an automaton from `(source, symbol, target)` triples, with
    /// edge ids `e1`, `e2`, ...
    pub fn from_edges<S: AsRef<str>, T: AsRef<str>>(
        alphabet: &[S],
        states: &[T],
        edges: &[(&str, &str, &str)],
    ) -> Result<Self> {
        let alphabet = Alphabet::new(alphabet)?;
        let names: Vec<String> = states.iter().map(|s| s.as_ref().to_string()).collect();
        let idx = |n: &str| {
            names
                .iter()
                .position(|s| s == n)
                .ok_or_else(|| Error::UnknownState(n.to_string()))
        };
        let mut graph_edges = Vec::new();
        let mut labels = Vec::new();
        for (k, (s, a, d)) in edges.iter().enumerate() {
            graph_edges.push(Edge {
                id: format!("e{}", k + 1),
                src: idx(s)?,
                dst: idx(d)?,
            });
            labels.push(alphabet.lookup(a)?);
        }
        Automaton::new(Graph::new(names, graph_edges)?, labels, alphabet)
    }

    /// The automaton presenting the edge shift of `g`: each edge is labeled
    /// by its own id.
    pub fn edge_shift(g: &Graph) -> Result<Self> {
        let alphabet = Alphabet::new(g.edges().iter().map(|e| e.id.as_str()))?;
        let labels = (0..g.num_edges()).collect();
        Automaton::new(g.clone(), labels, alphabet)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn label(&self, edge: usize) -> usize {
        self.labels[edge]
    }

    pub fn label_symbol(&self, edge: usize) -> &Symbol {
        self.alphabet.symbol(self.labels[edge])
    }

    pub fn num_states(&self) -> usize {
        self.graph.num_states()
    }

    pub fn num_edges(&self) -> usize {
        self.graph.num_edges()
    }

    pub fn states(&self) -> &[String] {
        self.graph.states()
    }

    pub fn edges(&self) -> &[Edge] {
        self.graph.edges()
    }

    pub fn is_empty(&self) -> bool {
        self.graph.is_empty()
    }

    pub fn state_index(&self, name: &str) -> Option<usize> {
        self.graph.state_index(name)
    }

    /// Same automaton over a larger alphabet containing the current one.
    pub fn with_alphabet(&self, alphabet: &Alphabet) -> Result<Automaton> {
        let labels = self
            .labels
            .iter()
            .map(|&l| {
                alphabet
                    .index_of(self.alphabet.symbol(l))
                    .ok_or_else(|| Error::UnknownSymbol(self.alphabet.symbol(l).to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        Automaton::new(self.graph.clone(), labels, alphabet.clone())
    }

    /// At most one edge per state and symbol.
    pub fn is_deterministic(&self) -> bool {
        self.check_deterministic().is_ok()
    }

    pub fn check_deterministic(&self) -> Result<()> {
        let mut seen = HashMap::new();
        for (i, e) in self.graph.edges().iter().enumerate() {
            if seen.insert((e.src, self.labels[i]), i).is_some() {
                return Err(Error::NotDeterministic {
                    state: self.graph.states()[e.src].clone(),
                    symbol: self.alphabet.symbol(self.labels[i]).to_string(),
                });
            }
        }
        Ok(())
    }

    /// The transition table of a deterministic automaton:
    /// `delta[state][letter]`.
    pub fn transitions(&self) -> Result<Vec<Vec<Option<usize>>>> {
        self.check_deterministic()?;
        let mut delta = vec![vec![None; self.alphabet.len()]; self.num_states()];
        for (i, e) in self.graph.edges().iter().enumerate() {
            delta[e.src][self.labels[i]] = Some(e.dst);
        }
        Ok(delta)
    }

    /// `succ[state][letter]`: targets of edges, with multiplicity.
    pub fn successors(&self) -> Vec<Vec<Vec<usize>>> {
        let mut succ = vec![vec![Vec::new(); self.alphabet.len()]; self.num_states()];
        for (i, e) in self.graph.edges().iter().enumerate() {
            succ[e.src][self.labels[i]].push(e.dst);
        }
        succ
    }

    /// The set of states reached from `set` by reading `letter`, sorted.
    pub fn step_set(succ: &[Vec<Vec<usize>>], set: &[usize], letter: usize) -> Vec<usize> {
        let mut out: Vec<usize> = set
            .iter()
            .flat_map(|&q| succ[q][letter].iter().copied())
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// True when `word` is the label of some path.
    pub fn labels_path(&self, word: &[usize]) -> bool {
        let succ = self.successors();
        let mut set: Vec<usize> = (0..self.num_states()).collect();
        for &l in word {
            set = Automaton::step_set(&succ, &set, l);
            if set.is_empty() {
                return false;
            }
        }
        !set.is_empty()
    }

    /// The adjacency matrix with symbolic entries.
    pub fn adjacency(&self) -> AlphabeticMatrix {
        let n = self.num_states();
        let mut m = AlphabeticMatrix::zeros(n, n);
        for (i, e) in self.graph.edges().iter().enumerate() {
            m.add_term(e.src, e.dst, self.alphabet.symbol(self.labels[i]).clone(), 1);
        }
        m
    }

    /// Restriction to the states marked in `keep`; returns the old index of
    /// each surviving state.
    pub fn induced(&self, keep: &[bool]) -> (Automaton, Vec<usize>) {
        let (graph, old, kept) = self.graph.induced_full(keep);
        let labels = kept.iter().map(|&e| self.labels[e]).collect();
        (
            Automaton {
                graph,
                labels,
                alphabet: self.alphabet.clone(),
            },
            old,
        )
    }

    pub fn essential_part(&self) -> Automaton {
        self.induced(&self.graph.essential_states()).0
    }

    pub fn is_essential(&self) -> bool {
        self.graph.is_essential()
    }

    pub fn is_strongly_connected(&self) -> bool {
        self.graph.is_strongly_connected()
    }

    /// All edges reversed, labels kept.
    pub fn reversed(&self) -> Automaton {
        Automaton {
            graph: self.graph.reversed(),
            labels: self.labels.clone(),
            alphabet: self.alphabet.clone(),
        }
    }

    /// Exact isomorphism of labeled multigraphs, comparing labels by symbol
    /// name. State and edge names are ignored.
    pub fn is_isomorphic(&self, other: &Automaton) -> bool {
        isomorphism(self, other).is_some()
    }

    /// A state bijection witnessing [`Automaton::is_isomorphic`].
    pub fn isomorphism(&self, other: &Automaton) -> Option<Vec<usize>> {
        isomorphism(self, other)
    }

    /// True when `other` contains this automaton: every state name of `self`
    /// is a state of `other`, and every edge id of `self` appears in
    /// `other` with the same endpoints and label.
    pub fn is_contained_in(&self, other: &Automaton) -> bool {
        self.containment_violation(other).is_none()
    }

    pub fn containment_violation(&self, other: &Automaton) -> Option<String> {
        for s in self.states() {
            if other.state_index(s).is_none() {
                return Some(format!("state {s} missing"));
            }
        }
        let index: HashMap<&str, usize> = other
            .edges()
            .iter()
            .enumerate()
            .map(|(i, e)| (e.id.as_str(), i))
            .collect();
        for (i, e) in self.edges().iter().enumerate() {
            let Some(&j) = index.get(e.id.as_str()) else {
                return Some(format!("edge {} missing", e.id));
            };
            let f = &other.edges()[j];
            let same = other.states()[f.src] == self.states()[e.src]
                && other.states()[f.dst] == self.states()[e.dst]
                && other.label_symbol(j) == self.label_symbol(i);
            if !same {
                return Some(format!("edge {} differs", e.id));
            }
        }
        None
    }
}

type Profile = (Vec<(String, usize)>, Vec<(String, usize)>);

fn profile(a: &Automaton) -> Vec<Profile> {
    let mut out: Vec<BTreeMap<String, usize>> = vec![BTreeMap::new(); a.num_states()];
    let mut inc: Vec<BTreeMap<String, usize>> = vec![BTreeMap::new(); a.num_states()];
    for (i, e) in a.edges().iter().enumerate() {
        let l = a.label_symbol(i).to_string();
        *out[e.src].entry(l.clone()).or_insert(0) += 1;
        *inc[e.dst].entry(l).or_insert(0) += 1;
    }
    out.into_iter()
        .zip(inc)
        .map(|(o, i)| (o.into_iter().collect(), i.into_iter().collect()))
        .collect()
}

fn edge_counts(a: &Automaton) -> HashMap<(usize, usize), BTreeMap<String, usize>> {
    let mut m: HashMap<(usize, usize), BTreeMap<String, usize>> = HashMap::new();
    for (i, e) in a.edges().iter().enumerate() {
        *m.entry((e.src, e.dst))
            .or_default()
            .entry(a.label_symbol(i).to_string())
            .or_insert(0) += 1;
    }
    m
}

fn isomorphism(a: &Automaton, b: &Automaton) -> Option<Vec<usize>> {
    if a.num_states() != b.num_states() || a.num_edges() != b.num_edges() {
        return None;
    }
    let pa = profile(a);
    let pb = profile(b);
    let mut sa = pa.clone();
    let mut sb = pb.clone();
    sa.sort();
    sb.sort();
    if sa != sb {
        return None;
    }
    let ca = edge_counts(a);
    let cb = edge_counts(b);
    let n = a.num_states();
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn extend(
        k: usize,
        n: usize,
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
        pa: &[Profile],
        pb: &[Profile],
        ca: &HashMap<(usize, usize), BTreeMap<String, usize>>,
        cb: &HashMap<(usize, usize), BTreeMap<String, usize>>,
    ) -> bool {
        if k == n {
            return true;
        }
        for cand in 0..n {
            if used[cand] || pa[k] != pb[cand] {
                continue;
            }
            map[k] = cand;
            let consistent = (0..=k).all(|j| {
                ca.get(&(k, j)) == cb.get(&(cand, map[j]))
                    && ca.get(&(j, k)) == cb.get(&(map[j], cand))
            });
            if consistent {
                used[cand] = true;
                if extend(k + 1, n, map, used, pa, pb, ca, cb) {
                    return true;
                }
                used[cand] = false;
            }
        }
        map[k] = usize::MAX;
        false
    }
    if extend(0, n, &mut map, &mut used, &pa, &pb, &ca, &cb) {
        Some(map)
    } else {
        None
    }
}

/// A finite set of forbidden words over an alphabet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ForbiddenWords {
    alphabet: Alphabet,
    words: Vec<Vec<usize>>,
}

impl ForbiddenWords {
    pub fn new(alphabet: Alphabet, words: Vec<Vec<usize>>) -> Result<Self> {
        if words.iter().any(|w| w.is_empty()) {
            return Err(Error::Precondition("forbidden words must be nonempty".into()));
        }
        if words.iter().flatten().any(|&l| l >= alphabet.len()) {
            return Err(Error::UnknownSymbol("letter outside the alphabet".into()));
        }
        Ok(ForbiddenWords { alphabet, words })
    }

    /// Parses words written over `alphabet` (see [`Alphabet::parse_word`]).
    pub fn parse<S: AsRef<str>>(alphabet: &[S], words: &[&str]) -> Result<Self> {
        let alphabet = Alphabet::new(alphabet)?;
        let words = words
            .iter()
            .map(|w| alphabet.parse_word(w))
            .collect::<Result<Vec<_>>>()?;
        ForbiddenWords::new(alphabet, words)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn words(&self) -> &[Vec<usize>] {
        &self.words
    }
}

/// A sofic shift given either by finitely many forbidden words or by an
/// automaton whose biinfinite path labels form the shift.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ShiftPresentation {
    Forbidden(ForbiddenWords),
    Automaton(Automaton),
}

impl ShiftPresentation {
    pub fn alphabet(&self) -> &Alphabet {
        match self {
            ShiftPresentation::Forbidden(f) => f.alphabet(),
            ShiftPresentation::Automaton(a) => a.alphabet(),
        }
    }

    /// An essential automaton presenting the shift (possibly empty).
    pub fn to_automaton(&self) -> Automaton {
        match self {
            ShiftPresentation::Forbidden(f) => presentation_from_forbidden(f),
            ShiftPresentation::Automaton(a) => a.essential_part(),
        }
    }
}

impl From<Automaton> for ShiftPresentation {
    fn from(a: Automaton) -> Self {
        ShiftPresentation::Automaton(a)
    }
}

impl From<ForbiddenWords> for ShiftPresentation {
    fn from(f: ForbiddenWords) -> Self {
        ShiftPresentation::Forbidden(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinism_detects_duplicate_labels() {
        let a = Automaton::from_edges(&["a"], &["1", "2"], &[("1", "a", "1"), ("1", "a", "2")])
            .unwrap();
        assert!(!a.is_deterministic());
        let b = Automaton::from_edges(&["a"], &["1"], &[("1", "a", "1"), ("1", "a", "1")]).unwrap();
        assert!(!b.is_deterministic());
    }

    #[test]
    fn isomorphism_ignores_names() {
        let a = Automaton::from_edges(
            &["a", "b"],
            &["1", "2"],
            &[("1", "a", "1"), ("1", "b", "2"), ("2", "b", "1")],
        )
        .unwrap();
        let b = Automaton::from_edges(
            &["a", "b"],
            &["x", "y"],
            &[("y", "b", "x"), ("x", "b", "y"), ("y", "a", "y")],
        )
        .unwrap();
        assert_eq!(a.isomorphism(&b), Some(vec![1, 0]));
        let c = Automaton::from_edges(
            &["a", "b"],
            &["x", "y"],
            &[("y", "b", "x"), ("x", "a", "y"), ("y", "a", "y")],
        )
        .unwrap();
        assert!(!a.is_isomorphic(&c));
    }
}
