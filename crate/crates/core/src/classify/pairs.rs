use crate::automata::Automaton;

/// The label-synchronized product of an automaton with itself. Node
/// `p * n + q` stands for the pair `(p, q)`; an edge pairs two edges with
/// the same label.
pub(crate) struct PairGraph {
    pub n: usize,
    pub succ: Vec<Vec<usize>>,
    /// Edge indices `(i, j)` behind each successor in `succ`.
    pub via: Vec<Vec<(usize, usize)>>,
}

impl PairGraph {
    pub fn new(a: &Automaton) -> Self {
        let n = a.num_states();
        let out = a.graph().out_edges();
        let mut succ = vec![Vec::new(); n * n];
        let mut via = vec![Vec::new(); n * n];
        for p in 0..n {
            for q in 0..n {
                for &i in &out[p] {
                    for &j in &out[q] {
                        if a.label(i) == a.label(j) {
                            let e = &a.edges();
                            succ[p * n + q].push(e[i].dst * n + e[j].dst);
                            via[p * n + q].push((i, j));
                        }
                    }
                }
            }
        }
        PairGraph { n, succ, via }
    }

    pub fn pair(&self, v: usize) -> (usize, usize) {
        (v / self.n, v % self.n)
    }

    pub fn is_diagonal(&self, v: usize) -> bool {
        let (p, q) = self.pair(v);
        p == q
    }

    pub fn reversed(&self) -> Vec<Vec<usize>> {
        let mut pred = vec![Vec::new(); self.succ.len()];
        for (v, ws) in self.succ.iter().enumerate() {
            for &w in ws {
                pred[w].push(v);
            }
        }
        pred
    }

    /// A shortest nonempty path of pair edges from `from` to a node
    /// satisfying `target` (which may be `from` itself).
    pub fn path_to(&self, from: usize, target: impl Fn(usize) -> bool) -> Option<Vec<(usize, usize)>> {
        let mut prev: Vec<Option<(usize, (usize, usize))>> = vec![None; self.succ.len()];
        let mut queue = std::collections::VecDeque::from([from]);
        while let Some(v) = queue.pop_front() {
            for (k, &w) in self.succ[v].iter().enumerate() {
                if prev[w].is_some() {
                    continue;
                }
                prev[w] = Some((v, self.via[v][k]));
                if target(w) {
                    let mut path = Vec::new();
                    let mut cur = w;
                    loop {
                        let (p, e) = prev[cur].unwrap();
                        path.push(e);
                        if p == from {
                            break;
                        }
                        cur = p;
                    }
                    path.reverse();
                    return Some(path);
                }
                queue.push_back(w);
            }
        }
        None
    }
}
