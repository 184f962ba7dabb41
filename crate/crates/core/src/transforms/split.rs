use std::collections::{BTreeMap, HashMap};

use crate::automata::Automaton;
use crate::block_map::BlockMap;
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};
use crate::matrix::{AlphabeticMatrix, CountMatrix};
use crate::symbol::{Alphabet, Symbol};

/// Direction of a state split.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Orientation {
    /// Incoming edges are partitioned among the copies of a state:
    /// `M(G) = ED, M(H) = DE` with `D` an `R x Q` column division matrix.
    In,
    /// Outgoing edges are partitioned: `M(G) = DE, M(H) = ED` with `D` a
    /// `Q x R` row division matrix.
    Out,
}

/// A split given by its factorization. For graphs the factor `E` is a count
/// matrix, for automata `N` is alphabetic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitSpec<F> {
    pub orientation: Orientation,
    pub division: CountMatrix,
    pub factor: F,
    /// Names of the new states; defaults to `q_1, q_2, ...` for the copies
    /// of `q` (or `q` itself when it is not split).
    pub names: Option<Vec<String>>,
}

impl<F> SplitSpec<F> {
    pub fn new(orientation: Orientation, division: CountMatrix, factor: F) -> Self {
        SplitSpec {
            orientation,
            division,
            factor,
            names: None,
        }
    }
}

/// The result of a split or merge together with the graph morphism `(h, k)`
/// from the larger object onto the smaller one. For a split, `state_map`
/// and `edge_map` go from the result to the input; for a merge, from the
/// input to the result.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism<T> {
    pub result: T,
    pub state_map: Vec<usize>,
    pub edge_map: Vec<usize>,
}

const UNIFORM: &str = "_";

fn uniform(g: &Graph) -> Automaton {
    let alphabet = Alphabet::new([UNIFORM]).expect("valid symbol");
    Automaton::new(g.clone(), vec![0; g.num_edges()], alphabet).expect("labels in range")
}

fn uniform_matrix(m: &CountMatrix) -> AlphabeticMatrix {
    let mut out = AlphabeticMatrix::zeros(m.rows(), m.cols());
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            out.add_term(i, j, Symbol::new(UNIFORM).expect("valid"), m.get(i, j));
        }
    }
    out
}

/// The map `k` from new states to old ones encoded by a division matrix.
pub(crate) fn division_map(d: &CountMatrix, orientation: Orientation) -> Result<Vec<usize>> {
    let d = match orientation {
        Orientation::In => d.clone(),
        Orientation::Out => d.transpose(),
    };
    let mut k = Vec::with_capacity(d.rows());
    for r in 0..d.rows() {
        let row = d.row(r);
        if row.iter().any(|&x| x > 1) || row.iter().filter(|&&x| x == 1).count() != 1 {
            let what = match orientation {
                Orientation::In => "row",
                Orientation::Out => "column",
            };
            return Err(Error::DivisionMatrix(format!(
                "{what} {} must contain exactly one 1",
                r + 1
            )));
        }
        k.push(row.iter().position(|&x| x == 1).unwrap());
    }
    for q in 0..d.cols() {
        if !k.contains(&q) {
            let what = match orientation {
                Orientation::In => "column",
                Orientation::Out => "row",
            };
            return Err(Error::DivisionMatrix(format!("{what} {} is zero", q + 1)));
        }
    }
    Ok(k)
}

fn mismatch(expected: &AlphabeticMatrix, found: &AlphabeticMatrix, what: &str) -> Error {
    if expected.rows() != found.rows() || expected.cols() != found.cols() {
        return Error::Dimension(format!(
            "{what}: expected {}x{}, found {}x{}",
            expected.rows(),
            expected.cols(),
            found.rows(),
            found.cols()
        ));
    }
    let (i, j) = expected.first_difference(found).unwrap_or((0, 0));
    Error::Factorization {
        row: i + 1,
        col: j + 1,
        expected: crate::matrix::format_polynomial(expected.get(i, j)),
        found: crate::matrix::format_polynomial(found.get(i, j)),
    }
}

/// `None` when the matrices agree, otherwise the first differing entry.
pub(crate) fn factorization_error(expected: &AlphabeticMatrix, found: &AlphabeticMatrix) -> Option<Error> {
    (expected != found).then(|| mismatch(expected, found, "factorization"))
}

/// `N D` (in) or `D N` (out): the adjacency matrix of the merged automaton.
fn merged_product(o: Orientation, d: &CountMatrix, n: &AlphabeticMatrix) -> Result<AlphabeticMatrix> {
    match o {
        Orientation::In => n.mul_count(d),
        Orientation::Out => AlphabeticMatrix::count_mul(d, n),
    }
}

/// `D N` (in) or `N D` (out): the adjacency matrix of the split automaton.
fn split_product(o: Orientation, d: &CountMatrix, n: &AlphabeticMatrix) -> Result<AlphabeticMatrix> {
    match o {
        Orientation::In => AlphabeticMatrix::count_mul(d, n),
        Orientation::Out => n.mul_count(d),
    }
}

fn default_names(states: &[String], k: &[usize]) -> Vec<String> {
    let mut sizes = vec![0; states.len()];
    for &q in k {
        sizes[q] += 1;
    }
    let mut seen = vec![0; states.len()];
    k.iter()
        .map(|&q| {
            seen[q] += 1;
            if sizes[q] == 1 {
                states[q].clone()
            } else {
                format!("{}_{}", states[q], seen[q])
            }
        })
        .collect()
}

/// Splits the states of `a` as prescribed by `spec`. Labels are preserved
/// edgewise through the returned merge morphism.
pub fn labeled_split(
    a: &Automaton,
    spec: &SplitSpec<AlphabeticMatrix>,
) -> Result<Morphism<Automaton>> {
    let o = spec.orientation;
    let (d, n) = (&spec.division, &spec.factor);
    let k = division_map(d, o)?;
    let q_count = a.num_states();
    let r_count = k.len();
    let expected_q = match o {
        Orientation::In => d.cols(),
        Orientation::Out => d.rows(),
    };
    if expected_q != q_count {
        return Err(Error::Dimension(format!(
            "division matrix is for {expected_q} states, automaton has {q_count}"
        )));
    }
    let (nr, nc) = match o {
        Orientation::In => (q_count, r_count),
        Orientation::Out => (r_count, q_count),
    };
    if n.rows() != nr || n.cols() != nc {
        return Err(Error::Dimension(format!(
            "factor is {}x{}, expected {nr}x{nc}",
            n.rows(),
            n.cols()
        )));
    }
    let product = merged_product(o, d, n)?;
    let adjacency = a.adjacency();
    if product != adjacency {
        return Err(mismatch(&adjacency, &product, "factorization"));
    }

    let mut copies: Vec<Vec<usize>> = vec![Vec::new(); q_count];
    for (r, &q) in k.iter().enumerate() {
        copies[q].push(r);
    }
    // Assign each edge to a copy: of its target (in) or of its source (out).
    let mut groups: BTreeMap<(usize, usize, usize), Vec<usize>> = BTreeMap::new();
    for (i, e) in a.edges().iter().enumerate() {
        groups.entry((e.src, e.dst, a.label(i))).or_default().push(i);
    }
    let mut assigned = vec![usize::MAX; a.num_edges()];
    for (&(p, q, l), edges) in &groups {
        let symbol = a.alphabet().symbol(l);
        let mut it = edges.iter();
        let owners = match o {
            Orientation::In => &copies[q],
            Orientation::Out => &copies[p],
        };
        for &c in owners {
            let count = match o {
                Orientation::In => n.get(p, c).get(symbol).copied().unwrap_or(0),
                Orientation::Out => n.get(c, q).get(symbol).copied().unwrap_or(0),
            };
            for _ in 0..count {
                let e = it.next().ok_or_else(|| {
                    Error::Inconsistent("factor assigns more edges than exist".into())
                })?;
                assigned[*e] = c;
            }
        }
    }
    if assigned.contains(&usize::MAX) {
        return Err(Error::Inconsistent("an edge was not assigned to a copy".into()));
    }

    let names = match &spec.names {
        Some(names) if names.len() == r_count => names.clone(),
        Some(names) => {
            return Err(Error::Dimension(format!(
                "{} names for {r_count} states",
                names.len()
            )))
        }
        None => default_names(a.states(), &k),
    };
    let mut edges = Vec::new();
    let mut labels = Vec::new();
    let mut edge_map = Vec::new();
    for (i, e) in a.edges().iter().enumerate() {
        let c = assigned[i];
        let pairs: Vec<(usize, usize)> = match o {
            Orientation::In => copies[e.src].iter().map(|&r| (r, c)).collect(),
            Orientation::Out => copies[e.dst].iter().map(|&t| (c, t)).collect(),
        };
        for (src, dst) in pairs {
            let other = match o {
                Orientation::In => src,
                Orientation::Out => dst,
            };
            edges.push(Edge {
                id: format!("{}/{}", e.id, names[other]),
                src,
                dst,
            });
            labels.push(a.label(i));
            edge_map.push(i);
        }
    }
    let result = Automaton::new(Graph::new(names, edges)?, labels, a.alphabet().clone())?;
    Ok(Morphism {
        result,
        state_map: k,
        edge_map,
    })
}

/// Splits the states of a graph: `M(H) = DE` (in) or `M(H) = ED` (out).
pub fn graph_split(g: &Graph, spec: &SplitSpec<CountMatrix>) -> Result<Morphism<Graph>> {
    let labeled = SplitSpec {
        orientation: spec.orientation,
        division: spec.division.clone(),
        factor: uniform_matrix(&spec.factor),
        names: spec.names.clone(),
    };
    let m = labeled_split(&uniform(g), &labeled).map_err(|e| match e {
        Error::Factorization {
            row,
            col,
            expected,
            found,
        } => Error::Factorization {
            row,
            col,
            expected: count_of(&expected),
            found: count_of(&found),
        },
        other => other,
    })?;
    Ok(Morphism {
        result: m.result.graph().clone(),
        state_map: m.state_map,
        edge_map: m.edge_map,
    })
}

fn count_of(poly: &str) -> String {
    if poly == "0" {
        return poly.into();
    }
    let stripped = poly.trim_end_matches(UNIFORM).trim_end_matches('*');
    if stripped.is_empty() {
        "1".into()
    } else {
        stripped.into()
    }
}

/// The split of a single state `q` of `a` whose copies receive the classes
/// of `classes`, a partition of the edges entering `q` (in) or leaving it
/// (out) into nonempty sets of edge indices. The copies replace `q` in
/// the state order.
pub fn partition_split(
    a: &Automaton,
    q: usize,
    orientation: Orientation,
    classes: &[Vec<usize>],
) -> Result<SplitSpec<AlphabeticMatrix>> {
    let n = a.num_states();
    if q >= n {
        return Err(Error::UnknownState(format!("#{q}")));
    }
    let touches = |e: &Edge| match orientation {
        Orientation::In => e.dst == q,
        Orientation::Out => e.src == q,
    };
    let mut class_of = vec![None; a.num_edges()];
    for (c, class) in classes.iter().enumerate() {
        if class.is_empty() {
            return Err(Error::Precondition(format!("class {} is empty", c + 1)));
        }
        for &e in class {
            let edge = a.edges().get(e).ok_or_else(|| Error::Precondition(format!("no edge #{e}")))?;
            if !touches(edge) {
                return Err(Error::Precondition(format!(
                    "edge {} does not {} state {}",
                    edge.id,
                    if orientation == Orientation::In { "enter" } else { "leave" },
                    a.states()[q]
                )));
            }
            if class_of[e].replace(c).is_some() {
                return Err(Error::DuplicateEdge(edge.id.clone()));
            }
        }
    }
    if let Some(e) = (0..a.num_edges()).find(|&e| touches(&a.edges()[e]) && class_of[e].is_none()) {
        return Err(Error::Precondition(format!("edge {} is in no class", a.edges()[e].id)));
    }
    // New state r covers old state k[r]; the copies of q are q..q+classes.
    let k: Vec<usize> = (0..q)
        .chain(std::iter::repeat_n(q, classes.len()))
        .chain(q + 1..n)
        .collect();
    let copy = |e: usize, old: usize| match class_of[e] {
        Some(c) => q + c,
        None if old > q => old + classes.len() - 1,
        None => old,
    };
    let r_count = k.len();
    let (dr, dc) = match orientation {
        Orientation::In => (r_count, n),
        Orientation::Out => (n, r_count),
    };
    let mut d = CountMatrix::zeros(dr, dc);
    for (r, &old) in k.iter().enumerate() {
        match orientation {
            Orientation::In => d.set(r, old, 1),
            Orientation::Out => d.set(old, r, 1),
        }
    }
    let mut factor = match orientation {
        Orientation::In => AlphabeticMatrix::zeros(n, r_count),
        Orientation::Out => AlphabeticMatrix::zeros(r_count, n),
    };
    for (e, edge) in a.edges().iter().enumerate() {
        let symbol = a.label_symbol(e).clone();
        match orientation {
            Orientation::In => factor.add_term(edge.src, copy(e, edge.dst), symbol, 1),
            Orientation::Out => factor.add_term(copy(e, edge.src), edge.dst, symbol, 1),
        }
    }
    Ok(SplitSpec::new(orientation, d, factor))
}

/// [`partition_split`] for graphs.
pub fn graph_partition_split(
    g: &Graph,
    q: usize,
    orientation: Orientation,
    classes: &[Vec<usize>],
) -> Result<SplitSpec<CountMatrix>> {
    let spec = partition_split(&uniform(g), q, orientation, classes)?;
    Ok(SplitSpec::new(orientation, spec.division, spec.factor.forget_labels()))
}

/// Merges the states of `b` along `state_map`. For an in-merge the states
/// of a class must have the same outgoing edges (same targets and labels);
/// for an out-merge the same incoming edges. The merged state and edges are
/// named after the first member of each class.
pub fn labeled_merge(
    b: &Automaton,
    state_map: &[usize],
    orientation: Orientation,
) -> Result<Morphism<Automaton>> {
    if state_map.len() != b.num_states() {
        return Err(Error::Dimension(format!(
            "state map has {} entries for {} states",
            state_map.len(),
            b.num_states()
        )));
    }
    let q_count = state_map.iter().max().map_or(0, |m| m + 1);
    let mut rep = vec![usize::MAX; q_count];
    for (r, &q) in state_map.iter().enumerate() {
        if rep[q] == usize::MAX {
            rep[q] = r;
        }
    }
    if let Some(q) = rep.iter().position(|&r| r == usize::MAX) {
        return Err(Error::Precondition(format!("merged state {q} has no preimage")));
    }
    // Edges grouped by the state whose copies must agree, keyed by the
    // other endpoint and the label.
    let mut keyed: Vec<BTreeMap<(usize, usize), Vec<usize>>> = vec![BTreeMap::new(); b.num_states()];
    for (i, e) in b.edges().iter().enumerate() {
        let (own, other) = match orientation {
            Orientation::In => (e.src, e.dst),
            Orientation::Out => (e.dst, e.src),
        };
        keyed[own].entry((other, b.label(i))).or_default().push(i);
    }
    for (r, &q) in state_map.iter().enumerate() {
        let shape = |x: usize| -> Vec<((usize, usize), usize)> {
            keyed[x].iter().map(|(k, v)| (*k, v.len())).collect()
        };
        if shape(r) != shape(rep[q]) {
            return Err(Error::Precondition(format!(
                "states {} and {} cannot be merged",
                b.states()[rep[q]],
                b.states()[r]
            )));
        }
    }
    let mut new_index = vec![usize::MAX; b.num_edges()];
    let mut edges = Vec::new();
    let mut labels = Vec::new();
    for (i, e) in b.edges().iter().enumerate() {
        let own = match orientation {
            Orientation::In => e.src,
            Orientation::Out => e.dst,
        };
        if own == rep[state_map[own]] {
            new_index[i] = edges.len();
            edges.push(Edge {
                id: e.id.clone(),
                src: state_map[e.src],
                dst: state_map[e.dst],
            });
            labels.push(b.label(i));
        }
    }
    let mut edge_map = vec![0; b.num_edges()];
    for (r, groups) in keyed.iter().enumerate() {
        let rep_groups = &keyed[rep[state_map[r]]];
        for (key, list) in groups {
            for (pos, &i) in list.iter().enumerate() {
                edge_map[i] = new_index[rep_groups[key][pos]];
            }
        }
    }
    let names = rep.iter().map(|&r| b.states()[r].clone()).collect();
    let result = Automaton::new(Graph::new(names, edges)?, labels, b.alphabet().clone())?;
    Ok(Morphism {
        result,
        state_map: state_map.to_vec(),
        edge_map,
    })
}

pub fn graph_merge(h: &Graph, state_map: &[usize], orientation: Orientation) -> Result<Morphism<Graph>> {
    let m = labeled_merge(&uniform(h), state_map, orientation)?;
    Ok(Morphism {
        result: m.result.graph().clone(),
        state_map: m.state_map,
        edge_map: m.edge_map,
    })
}

/// Recovers `(D, N)` from a labeled split `y` of `x` with state map
/// `state_map` (from `y` to `x`), and checks `M(x) = ND, M(y) = DN` (in) or
/// `M(x) = DN, M(y) = ND` (out).
pub fn split_factorization(
    x: &Automaton,
    y: &Automaton,
    state_map: &[usize],
    orientation: Orientation,
) -> Result<(CountMatrix, AlphabeticMatrix)> {
    let (q, r) = (x.num_states(), y.num_states());
    let mut rep = vec![usize::MAX; q];
    for (s, &p) in state_map.iter().enumerate() {
        if rep[p] == usize::MAX {
            rep[p] = s;
        }
    }
    let (d, n) = match orientation {
        Orientation::In => {
            let mut d = CountMatrix::zeros(r, q);
            for (s, &p) in state_map.iter().enumerate() {
                d.set(s, p, 1);
            }
            let mut n = AlphabeticMatrix::zeros(q, r);
            for (i, e) in y.edges().iter().enumerate() {
                if rep[state_map[e.src]] == e.src {
                    n.add_term(state_map[e.src], e.dst, y.label_symbol(i).clone(), 1);
                }
            }
            (d, n)
        }
        Orientation::Out => {
            let mut d = CountMatrix::zeros(q, r);
            for (s, &p) in state_map.iter().enumerate() {
                d.set(p, s, 1);
            }
            let mut n = AlphabeticMatrix::zeros(r, q);
            for (i, e) in y.edges().iter().enumerate() {
                if rep[state_map[e.dst]] == e.dst {
                    n.add_term(e.src, state_map[e.dst], y.label_symbol(i).clone(), 1);
                }
            }
            (d, n)
        }
    };
    let mx = merged_product(orientation, &d, &n)?;
    if mx != x.adjacency() {
        return Err(mismatch(&x.adjacency(), &mx, "merged automaton"));
    }
    let my = split_product(orientation, &d, &n)?;
    if my != y.adjacency() {
        return Err(mismatch(&y.adjacency(), &my, "split automaton"));
    }
    Ok((d, n))
}

/// The mutually inverse sliding block maps between the edge shifts of `a`
/// and `b` when `M(a) = ND` and `M(b) = DN`. Symbols are edge ids. The
/// first map has memory 1 and sends `p -a-> q -b-> r` to the edge `t -b-> u`
/// of `b` with `(N_pt, a) = D_tq = 1` and `(N_qu, b) = D_ur = 1`; the second
/// has anticipation 1 and sends `s -a-> t -b-> u` to `p -a-> q` with
/// `D_sp = (N_pt, a) = D_tq = 1`.
pub fn elementary_conjugacy_maps(
    a: &Automaton,
    b: &Automaton,
    d: &CountMatrix,
    n: &AlphabeticMatrix,
) -> Result<(BlockMap, BlockMap)> {
    if n.mul_count(d)? != a.adjacency() {
        return Err(mismatch(&a.adjacency(), &n.mul_count(d)?, "M(A) = ND"));
    }
    if AlphabeticMatrix::count_mul(d, n)? != b.adjacency() {
        return Err(mismatch(&b.adjacency(), &AlphabeticMatrix::count_mul(d, n)?, "M(B) = DN"));
    }
    let unique = |what: &str| Error::Precondition(format!("{what} is not unique"));
    // The intermediate state t in R for an edge p -a-> q of a.
    let middle = |i: usize| -> Result<usize> {
        let e = &a.edges()[i];
        let s = a.label_symbol(i);
        let ts: Vec<usize> = (0..d.rows())
            .filter(|&t| n.get(e.src, t).get(s).copied().unwrap_or(0) > 0 && d.get(t, e.dst) > 0)
            .collect();
        match ts.as_slice() {
            [t] if n.get(e.src, *t)[s] == 1 && d.get(*t, e.dst) == 1 => Ok(*t),
            _ => Err(unique(&format!("factorization of edge {}", e.id))),
        }
    };
    let mut b_edges: HashMap<(usize, usize, &Symbol), Vec<usize>> = HashMap::new();
    for (j, f) in b.edges().iter().enumerate() {
        b_edges.entry((f.src, f.dst, b.label_symbol(j))).or_default().push(j);
    }
    let single = |key: (usize, usize, &Symbol)| -> Result<usize> {
        match b_edges.get(&key).map(|v| v.as_slice()) {
            Some([j]) => Ok(*j),
            _ => Err(unique("edge of B")),
        }
    };
    let sym = |id: &str| Symbol::new(id);
    let a_out = a.graph().out_edges();
    let mut forward = BTreeMap::new();
    for (i, e) in a.edges().iter().enumerate() {
        let t = middle(i)?;
        for &j in &a_out[e.dst] {
            let u = middle(j)?;
            let f = single((t, u, a.label_symbol(j)))?;
            forward.insert(
                vec![sym(&e.id)?, sym(&a.edges()[j].id)?],
                sym(&b.edges()[f].id)?,
            );
        }
    }
    let mut a_edges: HashMap<(usize, usize, &Symbol), Vec<usize>> = HashMap::new();
    for (i, e) in a.edges().iter().enumerate() {
        a_edges.entry((e.src, e.dst, a.label_symbol(i))).or_default().push(i);
    }
    let b_out = b.graph().out_edges();
    let mut backward = BTreeMap::new();
    for (j, f) in b.edges().iter().enumerate() {
        let label = b.label_symbol(j);
        let ps: Vec<usize> = (0..d.cols()).filter(|&p| d.get(f.src, p) == 1).collect();
        let [p] = ps.as_slice() else {
            return Err(unique(&format!("image of state {}", b.states()[f.src])));
        };
        let qs: Vec<usize> = (0..d.cols()).filter(|&q| d.get(f.dst, q) == 1).collect();
        let [q] = qs.as_slice() else {
            return Err(unique(&format!("image of state {}", b.states()[f.dst])));
        };
        if n.get(*p, f.dst).get(label).copied().unwrap_or(0) != 1 {
            return Err(unique(&format!("image of edge {}", f.id)));
        }
        let target = match a_edges.get(&(*p, *q, label)).map(|v| v.as_slice()) {
            Some([i]) => *i,
            _ => return Err(unique("edge of A")),
        };
        for &k in &b_out[f.dst] {
            backward.insert(
                vec![sym(&f.id)?, sym(&b.edges()[k].id)?],
                sym(&a.edges()[target].id)?,
            );
        }
    }
    Ok((BlockMap::new(1, 0, forward)?, BlockMap::new(0, 1, backward)?))
}
