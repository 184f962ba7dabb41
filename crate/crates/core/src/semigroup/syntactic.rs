use super::green::green_structure;
use super::{GroupDescriptor, TransitionSemigroup};
use crate::automata::{fischer_component, krieger_of, Automaton};
use crate::error::Result;

/// A vertex of a syntactic graph: a regular D-class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyntacticNode {
    pub rank: usize,
    pub group: GroupDescriptor,
    /// Shortlex-least word of an idempotent of the class.
    pub idempotent: String,
}

impl SyntacticNode {
    /// Display label, e.g. `rank=2 G=Z/2`.
    pub fn label(&self) -> String {
        format!("rank={} G={}", self.rank, self.group.label())
    }
}

/// The regular D-classes of a semigroup ordered by `>=_J`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyntacticGraph {
    /// Sorted by decreasing rank.
    pub nodes: Vec<SyntacticNode>,
    /// Strict comparabilities `(i, j)` with node `i` above node `j`.
    pub order: Vec<(usize, usize)>,
    /// Covering pairs of `order`.
    pub hasse: Vec<(usize, usize)>,
}

impl SyntacticGraph {
    pub fn is_above(&self, i: usize, j: usize) -> bool {
        self.order.contains(&(i, j))
    }
}

/// The automaton whose transition semigroup is used for `a`: its essential
/// part when that is deterministic, otherwise the Fischer cover of the
/// presented shift when irreducible, and its Krieger cover if not. The
/// covers' transition semigroups are the syntactic semigroup of the shift;
/// the minimal automaton of the block language has the same semigroup but
/// more states, so other ranks.
pub fn syntactic_automaton(a: &Automaton) -> Result<Automaton> {
    let e = a.essential_part();
    if e.is_deterministic() {
        return Ok(e);
    }
    let k = krieger_of(&e)?.automaton;
    Ok(match fischer_component(&k) {
        Some(comp) => {
            let mut keep = vec![false; k.num_states()];
            for q in comp {
                keep[q] = true;
            }
            k.induced(&keep).0
        }
        None => k.essential_part(),
    })
}

pub fn syntactic_semigroup(a: &Automaton) -> Result<TransitionSemigroup> {
    super::transition_semigroup(&syntactic_automaton(a)?)
}

pub fn syntactic_graph(a: &Automaton) -> Result<SyntacticGraph> {
    syntactic_graph_of(&syntactic_semigroup(a)?)
}

pub fn syntactic_graph_of(s: &TransitionSemigroup) -> Result<SyntacticGraph> {
    let g = green_structure(s)?;
    let regular: Vec<usize> = g.regular_classes().map(|(c, _)| c).collect();
    let nodes = regular
        .iter()
        .map(|&c| {
            let d = &g.d_classes[c];
            SyntacticNode {
                rank: d.rank,
                group: d.group.clone().expect("regular class has a group"),
                idempotent: s.format_word(d.idempotents[0]),
            }
        })
        .collect();
    let mut order = Vec::new();
    for (i, &c) in regular.iter().enumerate() {
        for (j, &d) in regular.iter().enumerate() {
            if i != j && g.j_above(c, d) {
                order.push((i, j));
            }
        }
    }
    let hasse = order
        .iter()
        .copied()
        .filter(|&(i, j)| {
            !(0..regular.len()).any(|k| order.contains(&(i, k)) && order.contains(&(k, j)))
        })
        .collect();
    Ok(SyntacticGraph {
        nodes,
        order,
        hasse,
    })
}

/// Isomorphism of syntactic graphs: a bijection of nodes preserving rank,
/// structure group up to isomorphism, and the order.
pub fn syntactic_graph_isomorphic(g1: &SyntacticGraph, g2: &SyntacticGraph) -> bool {
    let n = g1.nodes.len();
    if n != g2.nodes.len() || g1.order.len() != g2.order.len() {
        return false;
    }
    let rel = |g: &SyntacticGraph| {
        let mut m = vec![vec![false; n]; n];
        for &(i, j) in &g.order {
            m[i][j] = true;
        }
        m
    };
    let (r1, r2) = (rel(g1), rel(g2));
    let signature = |m: &[Vec<bool>], i: usize| {
        let down = m[i].iter().filter(|&&b| b).count();
        let up = m.iter().filter(|row| row[i]).count();
        (down, up)
    };
    let compatible: Vec<Vec<usize>> = (0..n)
        .map(|i| {
            (0..n)
                .filter(|&j| {
                    g1.nodes[i].rank == g2.nodes[j].rank
                        && signature(&r1, i) == signature(&r2, j)
                        && g1.nodes[i].group.is_isomorphic(&g2.nodes[j].group)
                })
                .collect()
        })
        .collect();
    fn extend(
        i: usize,
        map: &mut Vec<usize>,
        used: &mut [bool],
        compatible: &[Vec<usize>],
        r1: &[Vec<bool>],
        r2: &[Vec<bool>],
    ) -> bool {
        if i == compatible.len() {
            return true;
        }
        for &j in &compatible[i] {
            if used[j] {
                continue;
            }
            if (0..i).all(|k| r1[i][k] == r2[j][map[k]] && r1[k][i] == r2[map[k]][j]) {
                used[j] = true;
                map.push(j);
                if extend(i + 1, map, used, compatible, r1, r2) {
                    return true;
                }
                map.pop();
                used[j] = false;
            }
        }
        false
    }
    extend(0, &mut Vec::new(), &mut vec![false; n], &compatible, &r1, &r2)
}
