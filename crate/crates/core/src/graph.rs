use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};
use crate::matrix::CountMatrix;

/// A directed edge, addressed by a unique id. Parallel edges are allowed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub id: String,
    pub src: usize,
    pub dst: usize,
}

/// A finite directed multigraph. States are indices into `states`, which
/// holds their display names.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Graph {
    states: Vec<String>,
    edges: Vec<Edge>,
}

impl Graph {
    pub fn new(states: Vec<String>, edges: Vec<Edge>) -> Result<Self> {
        let mut seen = HashSet::new();
        for s in &states {
            if !seen.insert(s.as_str()) {
                return Err(Error::DuplicateState(s.clone()));
            }
        }
        let mut ids = HashSet::new();
        for e in &edges {
            if e.src >= states.len() {
                return Err(Error::UnknownState(format!("#{}", e.src)));
            }
            if e.dst >= states.len() {
                return Err(Error::UnknownState(format!("#{}", e.dst)));
            }
            if !ids.insert(e.id.as_str()) {
                return Err(Error::DuplicateEdge(e.id.clone()));
            }
        }
        Ok(Graph { states, edges })
    }

    /// Builds a graph from named endpoints, assigning ids `e1`, `e2`, ...
    pub fn from_pairs<S: AsRef<str>>(states: &[S], pairs: &[(&str, &str)]) -> Result<Self> {
        let names: Vec<String> = states.iter().map(|s| s.as_ref().to_string()).collect();
        let idx = |n: &str| {
            names
                .iter()
                .position(|s| s == n)
                .ok_or_else(|| Error::UnknownState(n.to_string()))
        };
        let mut edges = Vec::new();
        for (k, (s, d)) in pairs.iter().enumerate() {
            edges.push(Edge {
                id: format!("e{}", k + 1),
                src: idx(s)?,
                dst: idx(d)?,
            });
        }
        Graph::new(names, edges)
    }

    /// The graph with adjacency matrix `m`; states are named `1..n`.
    pub fn from_matrix(m: &CountMatrix) -> Result<Self> {
        if m.rows() != m.cols() {
            return Err(Error::Dimension(format!(
                "adjacency matrix must be square, got {}x{}",
                m.rows(),
                m.cols()
            )));
        }
        let states = (1..=m.rows()).map(|i| i.to_string()).collect();
        let mut edges = Vec::new();
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                for _ in 0..m.get(i, j) {
                    edges.push(Edge {
                        id: format!("e{}", edges.len() + 1),
                        src: i,
                        dst: j,
                    });
                }
            }
        }
        Graph::new(states, edges)
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn state_index(&self, name: &str) -> Option<usize> {
        self.states.iter().position(|s| s == name)
    }

    pub fn edge_index(&self, id: &str) -> Option<usize> {
        self.edges.iter().position(|e| e.id == id)
    }

    /// Indices of edges leaving each state, in edge order.
    pub fn out_edges(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.states.len()];
        for (i, e) in self.edges.iter().enumerate() {
            out[e.src].push(i);
        }
        out
    }

    /// Indices of edges entering each state, in edge order.
    pub fn in_edges(&self) -> Vec<Vec<usize>> {
        let mut inc = vec![Vec::new(); self.states.len()];
        for (i, e) in self.edges.iter().enumerate() {
            inc[e.dst].push(i);
        }
        inc
    }

    pub fn adjacency(&self) -> CountMatrix {
        let n = self.states.len();
        let mut m = CountMatrix::zeros(n, n);
        for e in &self.edges {
            m.set(e.src, e.dst, m.get(e.src, e.dst) + 1);
        }
        m
    }

    /// The subgraph induced on `keep` (a mask over states), with edges whose
    /// both endpoints survive. Returns the graph and the old index of each
    /// new state.
    pub fn induced(&self, keep: &[bool]) -> (Graph, Vec<usize>) {
        let (g, states, _) = self.induced_full(keep);
        (g, states)
    }

    /// Like [`Graph::induced`], also returning the old index of each kept edge.
    pub fn induced_full(&self, keep: &[bool]) -> (Graph, Vec<usize>, Vec<usize>) {
        let mut new_index = vec![usize::MAX; self.states.len()];
        let mut old = Vec::new();
        for (i, &k) in keep.iter().enumerate() {
            if k {
                new_index[i] = old.len();
                old.push(i);
            }
        }
        let states = old.iter().map(|&i| self.states[i].clone()).collect();
        let mut kept = Vec::new();
        let mut edges = Vec::new();
        for (i, e) in self.edges.iter().enumerate() {
            if keep[e.src] && keep[e.dst] {
                kept.push(i);
                edges.push(Edge {
                    id: e.id.clone(),
                    src: new_index[e.src],
                    dst: new_index[e.dst],
                });
            }
        }
        (Graph { states, edges }, old, kept)
    }

    /// States lying on some biinfinite path.
    pub fn essential_states(&self) -> Vec<bool> {
        let n = self.states.len();
        let mut alive = vec![true; n];
        let mut indeg = vec![0usize; n];
        let mut outdeg = vec![0usize; n];
        for e in &self.edges {
            outdeg[e.src] += 1;
            indeg[e.dst] += 1;
        }
        let out = self.out_edges();
        let inc = self.in_edges();
        let mut stack: Vec<usize> = (0..n).filter(|&i| indeg[i] == 0 || outdeg[i] == 0).collect();
        while let Some(s) = stack.pop() {
            if !alive[s] {
                continue;
            }
            alive[s] = false;
            for &ei in &out[s] {
                let d = self.edges[ei].dst;
                indeg[d] -= 1;
                if alive[d] && indeg[d] == 0 {
                    stack.push(d);
                }
            }
            for &ei in &inc[s] {
                let src = self.edges[ei].src;
                outdeg[src] -= 1;
                if alive[src] && outdeg[src] == 0 {
                    stack.push(src);
                }
            }
        }
        alive
    }

    /// The maximal subgraph in which every state has an incoming and an
    /// outgoing edge.
    pub fn essential_part(&self) -> Graph {
        self.induced(&self.essential_states()).0
    }

    pub fn is_essential(&self) -> bool {
        self.essential_states().iter().all(|&b| b)
    }

    /// Strongly connected components in topological order: every edge
    /// between distinct components goes from a lower to a higher index.
    pub fn sccs(&self) -> Vec<Vec<usize>> {
        let succ: Vec<Vec<usize>> = self
            .out_edges()
            .iter()
            .map(|es| es.iter().map(|&e| self.edges[e].dst).collect())
            .collect();
        strongly_connected_components(&succ)
    }

    pub fn is_strongly_connected(&self) -> bool {
        !self.states.is_empty() && self.sccs().len() == 1
    }

    /// All paths of `len >= 1` edges, as edge-index sequences, in
    /// lexicographic order of edge indices. Returns nothing for `len = 0`.
    pub fn paths(&self, len: usize) -> Vec<Vec<usize>> {
        let out = self.out_edges();
        let mut paths: Vec<Vec<usize>> = (0..self.edges.len()).map(|e| vec![e]).collect();
        if len == 0 {
            return Vec::new();
        }
        for _ in 1..len {
            let mut next = Vec::new();
            for p in &paths {
                let last = self.edges[*p.last().unwrap()].dst;
                for &e in &out[last] {
                    let mut q = p.clone();
                    q.push(e);
                    next.push(q);
                }
            }
            paths = next;
        }
        paths
    }

    /// The higher edge graph: states are paths of length `n - 1`, edges are
    /// paths of length `n`. For `n = 1` the graph itself is returned.
    pub fn higher_edge_graph(&self, n: usize) -> Result<Graph> {
        if n == 0 {
            return Err(Error::Precondition("higher edge graph needs n >= 1".into()));
        }
        if n == 1 {
            return Ok(self.clone());
        }
        let (graph, _) = self.higher_edge_graph_with_paths(n);
        Ok(graph)
    }

    /// Like [`Graph::higher_edge_graph`] for `n >= 2`, also returning the
    /// path (edge indices) behind each new edge.
    pub(crate) fn higher_edge_graph_with_paths(&self, n: usize) -> (Graph, Vec<Vec<usize>>) {
        assert!(n >= 2);
        let vertices = self.paths(n - 1);
        let index: HashMap<&[usize], usize> = vertices
            .iter()
            .enumerate()
            .map(|(i, p)| (p.as_slice(), i))
            .collect();
        let paths = self.paths(n);
        let name = |p: &[usize]| {
            p.iter()
                .map(|&e| self.edges[e].id.as_str())
                .collect::<Vec<_>>()
                .join(".")
        };
        let states = vertices.iter().map(|p| name(p)).collect();
        let edges = paths
            .iter()
            .map(|p| Edge {
                id: name(p),
                src: index[&p[..n - 1]],
                dst: index[&p[1..]],
            })
            .collect();
        (Graph { states, edges }, paths)
    }

    /// The graph with all edges reversed.
    pub fn reversed(&self) -> Graph {
        Graph {
            states: self.states.clone(),
            edges: self
                .edges
                .iter()
                .map(|e| Edge {
                    id: e.id.clone(),
                    src: e.dst,
                    dst: e.src,
                })
                .collect(),
        }
    }

    /// True for a strongly connected graph that is a single cycle.
    pub fn is_trivial(&self) -> bool {
        self.is_strongly_connected() && self.edges.len() == self.states.len()
    }
}

/// Tarjan's algorithm, iterative. Components come out in reverse
/// topological order, so they are reversed before returning.
pub(crate) fn strongly_connected_components(succ: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let n = succ.len();
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut comps = Vec::new();
    let mut counter = 0;
    for root in 0..n {
        if index[root] != usize::MAX {
            continue;
        }
        let mut call: Vec<(usize, usize)> = vec![(root, 0)];
        index[root] = counter;
        low[root] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(&mut (v, ref mut pos)) = call.last_mut() {
            if *pos < succ[v].len() {
                let w = succ[v][*pos];
                *pos += 1;
                if index[w] == usize::MAX {
                    index[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                call.pop();
                if let Some(&(u, _)) = call.last() {
                    low[u] = low[u].min(low[v]);
                }
                if low[v] == index[v] {
                    let mut comp = Vec::new();
                    loop {
                        let w = stack.pop().unwrap();
                        on_stack[w] = false;
                        comp.push(w);
                        if w == v {
                            break;
                        }
                    }
                    comp.sort_unstable();
                    comps.push(comp);
                }
            }
        }
    }
    comps.reverse();
    comps
}

/// Longest path lengths in a directed graph: `None` means unbounded (a
/// cycle is reachable). `forward[v]` is the longest path starting at `v`.
pub(crate) fn longest_paths_from(succ: &[Vec<usize>]) -> Vec<Option<usize>> {
    let comps = strongly_connected_components(succ);
    let n = succ.len();
    let mut comp_of = vec![0; n];
    for (c, comp) in comps.iter().enumerate() {
        for &v in comp {
            comp_of[v] = c;
        }
    }
    let mut result: Vec<Option<usize>> = vec![Some(0); n];
    // Reverse topological order: successors first.
    for comp in comps.iter().rev() {
        let cyclic = comp.len() > 1 || succ[comp[0]].contains(&comp[0]);
        for &v in comp {
            if cyclic {
                result[v] = None;
                continue;
            }
            let mut best = Some(0);
            for &w in &succ[v] {
                best = match (best, result[w]) {
                    (Some(b), Some(r)) => Some(b.max(r + 1)),
                    _ => None,
                };
            }
            result[v] = best;
        }
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;

    fn golden() -> Graph {
        Graph::from_matrix(&CountMatrix::from_rows(vec![vec![1, 1], vec![1, 0]]).unwrap()).unwrap()
    }

    #[test]
    fn essential_part_trims_dangling_states() {
        let g = Graph::from_pairs(&["1", "2"], &[("1", "2")]).unwrap();
        assert!(g.essential_part().is_empty());
        let loop_ = Graph::from_pairs(&["q"], &[("q", "q")]).unwrap();
        assert_eq!(loop_.essential_part(), loop_);
        let g = Graph::from_pairs(
            &["0", "1", "2", "3"],
            &[("0", "1"), ("1", "2"), ("2", "1"), ("2", "3")],
        )
        .unwrap();
        let ess = g.essential_part();
        assert_eq!(ess.states(), &["1".to_string(), "2".to_string()]);
        assert_eq!(ess.num_edges(), 2);
    }

    #[test]
    fn higher_edge_graph_of_golden_mean() {
        let g = golden();
        assert_eq!(g.higher_edge_graph(1).unwrap(), g);
        let h = g.higher_edge_graph(2).unwrap();
        assert_eq!(h.num_states(), 3);
        assert_eq!(h.num_edges(), 5);
        assert_eq!(h.adjacency().trace(), 1);
    }

    #[test]
    fn higher_edge_graph_of_loop() {
        let g = Graph::from_pairs(&["q"], &[("q", "q")]).unwrap();
        let h = g.higher_edge_graph(3).unwrap();
        assert_eq!(h.states(), &["e1.e1".to_string()]);
        assert_eq!(h.num_edges(), 1);
    }

    #[test]
    fn sccs_are_topologically_ordered() {
        let g = Graph::from_pairs(&["a", "b", "c"], &[("c", "b"), ("b", "a"), ("a", "b")]).unwrap();
        let comps = g.sccs();
        assert_eq!(comps, vec![vec![2], vec![0, 1]]);
    }

    #[test]
    fn longest_paths_detect_cycles() {
        let succ = vec![vec![1], vec![2], vec![], vec![3]];
        assert_eq!(
            longest_paths_from(&succ),
            vec![Some(2), Some(1), Some(0), None]
        );
    }
}
