//! Fixtures, random generators and brute-force oracles shared by the
//! integration tests.
#![allow(dead_code)]

use std::collections::{HashMap, HashSet, VecDeque};

use rand::seq::SliceRandom;
use rand::Rng;
use sofic::transforms::{IntegerStep, SseCertificate, SymbolicStep};
use sofic::{sym, Alphabet, AlphabeticMatrix, Automaton, CountMatrix, Edge, ForbiddenWords, Graph};

pub fn even() -> Automaton {
    Automaton::from_edges(
        &["a", "b"],
        &["1", "2"],
        &[("1", "a", "1"), ("1", "b", "2"), ("2", "b", "1")],
    )
    .unwrap()
}

/// The deterministic three-state cover: after `a`, after an odd block of
/// `b`, and inside a block of unknown parity.
pub fn even_krieger_expected() -> Automaton {
    Automaton::from_edges(
        &["a", "b"],
        &["A", "O", "U"],
        &[
            ("A", "a", "A"),
            ("A", "b", "O"),
            ("O", "b", "A"),
            ("U", "a", "A"),
            ("U", "b", "U"),
        ],
    )
    .unwrap()
}

pub fn golden() -> ForbiddenWords {
    ForbiddenWords::parse(&["a", "b"], &["bb"]).unwrap()
}

pub fn full_shift(k: usize) -> ForbiddenWords {
    let letters: Vec<String> = (0..k).map(|i| format!("s{i}")).collect();
    ForbiddenWords::new(Alphabet::new(&letters).unwrap(), vec![]).unwrap()
}

/// No `a` ever follows a `b`.
pub fn x_ba() -> ForbiddenWords {
    ForbiddenWords::parse(&["a", "b"], &["ba"]).unwrap()
}

/// Four states, five letters; its subset automaton has seven states.
pub fn four_state_presentation() -> Automaton {
    Automaton::from_edges(
        &["a", "b", "c", "d", "e"],
        &["1", "2", "3", "4"],
        &[
            ("1", "a", "1"),
            ("1", "b", "3"),
            ("1", "d", "2"),
            ("3", "a", "3"),
            ("3", "c", "1"),
            ("3", "e", "4"),
            ("2", "b", "4"),
            ("4", "a", "4"),
            ("4", "c", "1"),
        ],
    )
    .unwrap()
}

/// Three states on a cycle of length three, with a doubled first edge.
pub fn local_three_states() -> Automaton {
    Automaton::from_edges(
        &["a", "b"],
        &["1", "2", "3"],
        &[("1", "a", "2"), ("1", "b", "2"), ("2", "b", "3"), ("3", "a", "1")],
    )
    .unwrap()
}

pub fn right_delay_one() -> Automaton {
    Automaton::from_edges(
        &["a", "b"],
        &["1", "2"],
        &[("1", "a", "1"), ("1", "a", "2"), ("2", "b", "1")],
    )
    .unwrap()
}

pub fn infinite_left_delay() -> Automaton {
    Automaton::from_edges(
        &["a", "b", "c"],
        &["1", "2"],
        &[
            ("1", "a", "1"),
            ("1", "b", "1"),
            ("1", "c", "2"),
            ("2", "a", "1"),
            ("2", "b", "2"),
        ],
    )
    .unwrap()
}

/// An automaton from an alphabetic adjacency matrix, states `1..n`.
pub fn from_matrix(m: &AlphabeticMatrix) -> Automaton {
    let names: Vec<String> = (1..=m.rows()).map(|i| i.to_string()).collect();
    let mut triples = Vec::new();
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            for (s, &c) in m.get(i, j) {
                for _ in 0..c {
                    triples.push((names[i].clone(), s.to_string(), names[j].clone()));
                }
            }
        }
    }
    let letters: Vec<String> = m.symbols().iter().map(|s| s.to_string()).collect();
    let refs: Vec<(&str, &str, &str)> = triples
        .iter()
        .map(|(a, b, c)| (a.as_str(), b.as_str(), c.as_str()))
        .collect();
    Automaton::from_edges(&letters, &names, &refs).unwrap()
}

pub fn conjugate_pair() -> (AlphabeticMatrix, AlphabeticMatrix) {
    (
        AlphabeticMatrix::parse(&[&["a+b", "c"], &["c", "0"]]).unwrap(),
        AlphabeticMatrix::parse(&[&["d", "e+f"], &["f", "g"]]).unwrap(),
    )
}

pub fn conjugate_certificate() -> SseCertificate {
    let (start, end) = conjugate_pair();
    let bij = |pairs: &[(&str, &str, &str)]| {
        pairs
            .iter()
            .map(|(x, y, z)| ((sym(x), sym(y)), sym(z)))
            .collect()
    };
    SseCertificate::Symbolic {
        start,
        end,
        steps: vec![SymbolicStep {
            r: AlphabeticMatrix::parse(&[&["x", "y"], &["0", "x"]]).unwrap(),
            s: AlphabeticMatrix::parse(&[&["z", "t"], &["t", "0"]]).unwrap(),
            rs: bij(&[("x", "z", "a"), ("y", "t", "b"), ("x", "t", "c")]),
            sr: bij(&[("z", "x", "d"), ("z", "y", "e"), ("t", "x", "f"), ("t", "y", "g")]),
        }],
    }
}

pub fn cm(rows: Vec<Vec<u64>>) -> CountMatrix {
    CountMatrix::from_rows(rows).unwrap()
}

/// The in-split `M(G) = ED`, `M(H) = DE` and the out-split
/// `M(G) = DE`, `M(H) = ED` worked out on two small graphs.
pub fn split_certificates() -> Vec<SseCertificate> {
    let e = cm(vec![vec![2, 0, 1], vec![1, 1, 0]]);
    let d = cm(vec![vec![1, 0], vec![1, 0], vec![0, 1]]);
    let in_split = SseCertificate::Integer {
        start: e.mul(&d).unwrap(),
        end: d.mul(&e).unwrap(),
        steps: vec![IntegerStep { r: e, s: d }],
    };
    let d = cm(vec![vec![1, 1, 0], vec![0, 0, 1]]);
    let e = cm(vec![vec![1, 1], vec![2, 0], vec![1, 0]]);
    let out_split = SseCertificate::Integer {
        start: d.mul(&e).unwrap(),
        end: e.mul(&d).unwrap(),
        steps: vec![IntegerStep { r: d, s: e }],
    };
    vec![in_split, out_split]
}

/// Whether every word over the alphabet of length at most `len` labels a
/// path, by direct subset simulation.
pub fn labels_all_words(a: &Automaton, len: usize) -> bool {
    let k = a.alphabet().len();
    let mut frontier: Vec<Vec<bool>> = vec![vec![true; a.num_states()]];
    for _ in 0..len {
        let mut next = Vec::new();
        for set in &frontier {
            for letter in 0..k {
                let mut image = vec![false; a.num_states()];
                for (e, edge) in a.edges().iter().enumerate() {
                    if set[edge.src] && a.label(e) == letter {
                        image[edge.dst] = true;
                    }
                }
                if !image.contains(&true) {
                    return false;
                }
                next.push(image);
            }
        }
        next.sort();
        next.dedup();
        frontier = next;
    }
    true
}

/// Number of closed walks of length `n`, by enumerating state sequences
/// and multiplying edge multiplicities.
pub fn closed_walks(m: &CountMatrix, n: usize) -> u128 {
    fn walk(m: &CountMatrix, start: usize, at: usize, left: usize, acc: u128) -> u128 {
        if left == 1 {
            return acc * u128::from(m.get(at, start));
        }
        (0..m.cols())
            .filter(|&j| m.get(at, j) > 0)
            .map(|j| walk(m, start, j, left - 1, acc * u128::from(m.get(at, j))))
            .sum()
    }
    (0..m.rows()).map(|q| walk(m, q, q, n, 1)).sum()
}

pub fn random_count_matrix<R: Rng>(rng: &mut R, n: usize, max: u64) -> CountMatrix {
    cm((0..n)
        .map(|_| (0..n).map(|_| rng.gen_range(0..=max)).collect())
        .collect())
}

/// A strongly connected automaton: a cycle through every state plus
/// random extra edges, all labeled at random.
pub fn random_automaton<R: Rng>(rng: &mut R, max_states: usize, letters: &[&str]) -> Automaton {
    let n = rng.gen_range(1..=max_states);
    let names: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    let mut pairs: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    for _ in 0..rng.gen_range(0..=n + 1) {
        pairs.push((rng.gen_range(0..n), rng.gen_range(0..n)));
    }
    let edges: Vec<Edge> = pairs
        .iter()
        .enumerate()
        .map(|(k, &(src, dst))| Edge { id: format!("e{}", k + 1), src, dst })
        .collect();
    let labels = (0..edges.len()).map(|_| rng.gen_range(0..letters.len())).collect();
    let graph = Graph::new(names, edges).unwrap();
    Automaton::new(graph, labels, Alphabet::new(letters).unwrap()).unwrap()
}

/// Relabels `a` so that the edges entering `p` all carry letter `x` and no
/// other edge does; `a` needs at least two letters.
pub fn funnel_letter<R: Rng>(rng: &mut R, a: &Automaton, p: usize, x: usize) -> Automaton {
    let k = a.alphabet().len();
    let labels = a
        .edges()
        .iter()
        .enumerate()
        .map(|(e, edge)| {
            if edge.dst == p {
                x
            } else if a.label(e) == x {
                (x + rng.gen_range(1..k)) % k
            } else {
                a.label(e)
            }
        })
        .collect();
    Automaton::new(a.graph().clone(), labels, a.alphabet().clone()).unwrap()
}

/// The edges entering (`incoming`) or leaving `q`, spread over at most
/// three nonempty classes.
pub fn random_partition<R: Rng>(rng: &mut R, g: &Graph, q: usize, incoming: bool) -> Vec<Vec<usize>> {
    let mut edges: Vec<usize> = (0..g.num_edges())
        .filter(|&e| {
            let edge = &g.edges()[e];
            if incoming {
                edge.dst == q
            } else {
                edge.src == q
            }
        })
        .collect();
    edges.shuffle(rng);
    let k = rng.gen_range(1..=edges.len().min(3));
    let mut classes = vec![Vec::new(); k];
    for (i, e) in edges.into_iter().enumerate() {
        let c = if i < k { i } else { rng.gen_range(0..k) };
        classes[c].push(e);
    }
    classes
}

/// A graph seen as an automaton with a single label, so that isomorphism
/// ignores edge ids.
pub fn unlabeled(g: &Graph) -> Automaton {
    Automaton::new(g.clone(), vec![0; g.num_edges()], Alphabet::new(["_"]).unwrap()).unwrap()
}

/// The Krieger cover rebuilt from eventually periodic left-infinite words
/// `...uuu w`: the states reachable by a left-infinite path labeled `u^inf`
/// form the decreasing limit of `Q.u^k`; closing these sets under letters
/// gives every `...uuu w`. Sets with the same follower set are identified.
pub fn krieger_oracle(a: &Automaton, max_period: usize) -> Automaton {
    let a = trim(a);
    let n = a.num_states();
    let k = a.alphabet().len();
    assert!(n <= 32, "oracle uses bitmasks");
    let mut succ = vec![vec![0u32; k]; n];
    for (e, edge) in a.edges().iter().enumerate() {
        succ[edge.src][a.label(e)] |= 1 << edge.dst;
    }
    let step = |set: u32, letter: usize| -> u32 {
        (0..n)
            .filter(|&q| set >> q & 1 == 1)
            .fold(0, |acc, q| acc | succ[q][letter])
    };
    let all: u32 = if n == 32 { u32::MAX } else { (1 << n) - 1 };
    let mut seeds = Vec::new();
    let mut words: Vec<Vec<usize>> = (0..k).map(|l| vec![l]).collect();
    for _ in 0..max_period {
        let mut longer = Vec::new();
        for u in &words {
            let mut x = all;
            loop {
                let next = u.iter().fold(x, |s, &l| step(s, l));
                if next == x {
                    break;
                }
                x = next;
            }
            if x != 0 {
                seeds.push(x);
            }
            for l in 0..k {
                let mut v = u.clone();
                v.push(l);
                longer.push(v);
            }
        }
        words = longer;
    }
    let mut sets: Vec<u32> = Vec::new();
    let mut seen = HashSet::new();
    let mut queue: VecDeque<u32> = seeds.into_iter().collect();
    while let Some(s) = queue.pop_front() {
        if !seen.insert(s) {
            continue;
        }
        sets.push(s);
        for l in 0..k {
            let t = step(s, l);
            if t != 0 {
                queue.push_back(t);
            }
        }
    }
    let same_followers = |s: u32, t: u32| -> bool {
        let mut seen = HashSet::new();
        let mut queue = VecDeque::from([(s, t)]);
        while let Some((x, y)) = queue.pop_front() {
            if (x == 0) != (y == 0) {
                return false;
            }
            if x == 0 || !seen.insert((x, y)) {
                continue;
            }
            for l in 0..k {
                queue.push_back((step(x, l), step(y, l)));
            }
        }
        true
    };
    let mut reps: Vec<u32> = Vec::new();
    let mut class: HashMap<u32, usize> = HashMap::new();
    for &s in &sets {
        let c = match reps.iter().position(|&r| same_followers(r, s)) {
            Some(c) => c,
            None => {
                reps.push(s);
                reps.len() - 1
            }
        };
        class.insert(s, c);
    }
    let names: Vec<String> = (0..reps.len()).map(|i| format!("k{i}")).collect();
    let mut edges = Vec::new();
    let mut labels = Vec::new();
    for (c, &r) in reps.iter().enumerate() {
        for l in 0..k {
            let t = step(r, l);
            if t != 0 {
                edges.push(Edge { id: format!("t{}", edges.len()), src: c, dst: class[&t] });
                labels.push(l);
            }
        }
    }
    Automaton::new(Graph::new(names, edges).unwrap(), labels, a.alphabet().clone()).unwrap()
}

/// Removes states without incoming or outgoing edges until none is left.
pub fn trim(a: &Automaton) -> Automaton {
    let mut keep = vec![true; a.num_states()];
    loop {
        let mut has_in = vec![false; keep.len()];
        let mut has_out = vec![false; keep.len()];
        for e in a.edges() {
            if keep[e.src] && keep[e.dst] {
                has_out[e.src] = true;
                has_in[e.dst] = true;
            }
        }
        let next: Vec<bool> = (0..keep.len()).map(|q| keep[q] && has_in[q] && has_out[q]).collect();
        if next == keep {
            break;
        }
        keep = next;
    }
    a.induced(&keep).0
}
