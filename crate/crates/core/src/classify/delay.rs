use std::fmt;

use super::pairs::PairGraph;
use crate::automata::Automaton;
use crate::graph::longest_paths_from;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Right,
    Left,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Right => "right",
            Side::Left => "left",
        })
    }
}

/// Why a delay is infinite: two edges `state -letter-> targets.0` and
/// `state -letter-> targets.1` (reversed for the left delay) followed by
/// paths from the two targets labeled by arbitrarily many repetitions of
/// `cycle`, possibly after the common word `prefix`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DelayWitness {
    pub state: String,
    pub letter: String,
    pub targets: (String, String),
    pub prefix: String,
    pub cycle: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DelayResult {
    pub side: Side,
    /// `None` when the delay is infinite.
    pub value: Option<usize>,
    pub witness: Option<DelayWitness>,
}

impl DelayResult {
    pub fn is_finite(&self) -> bool {
        self.value.is_some()
    }
}

/// The right delay is the least `d` such that two paths `p -a-> q -z->` and
/// `p -a-> q' -z->` with `|z| = d` force `q = q'`. It is one more than the
/// longest word readable from a pair of distinct siblings, and infinite
/// when such a pair reaches a cycle of the label-synchronized square. The
/// left delay is the right delay of the reversed automaton.
pub fn delay(a: &Automaton, side: Side) -> DelayResult {
    let a = a.essential_part();
    let a = match side {
        Side::Right => a,
        Side::Left => a.reversed(),
    };
    let pg = PairGraph::new(&a);
    let longest = longest_paths_from(&pg.succ);
    let out = a.graph().out_edges();
    let mut best = Some(0);
    let mut witness = None;
    for (p, edges) in out.iter().enumerate() {
        for &i in edges {
            for &j in edges {
                let (q, r) = (a.edges()[i].dst, a.edges()[j].dst);
                if a.label(i) != a.label(j) || q == r {
                    continue;
                }
                let v = q * pg.n + r;
                match longest[v] {
                    Some(l) => best = best.map(|b: usize| b.max(l + 1)),
                    None => {
                        best = None;
                        if witness.is_none() {
                            witness = Some(infinite_witness(&a, &pg, &longest, p, i, v, side));
                        }
                    }
                }
            }
        }
    }
    DelayResult {
        side,
        value: best,
        witness,
    }
}

fn infinite_witness(
    a: &Automaton,
    pg: &PairGraph,
    longest: &[Option<usize>],
    p: usize,
    edge: usize,
    v: usize,
    side: Side,
) -> DelayWitness {
    // Walk to a pair lying on a cycle, then around it.
    let on_cycle = |w: usize| longest[w].is_none() && pg.path_to(w, |x| x == w).is_some();
    let prefix = if on_cycle(v) {
        Vec::new()
    } else {
        pg.path_to(v, on_cycle).expect("a cycle is reachable")
    };
    let start = prefix.last().map_or(v, |&(i, j)| a.edges()[i].dst * pg.n + a.edges()[j].dst);
    let cycle = pg.path_to(start, |x| x == start).expect("on a cycle");
    let word = |path: &[(usize, usize)]| {
        let mut letters: Vec<usize> = path.iter().map(|&(i, _)| a.label(i)).collect();
        if side == Side::Left {
            letters.reverse();
        }
        a.alphabet().format_word(&letters)
    };
    let (q, r) = pg.pair(v);
    DelayWitness {
        state: a.states()[p].clone(),
        letter: a.label_symbol(edge).to_string(),
        targets: (a.states()[q].clone(), a.states()[r].clone()),
        prefix: word(&prefix),
        cycle: word(&cycle),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn right_delay_one() {
        let a = Automaton::from_edges(
            &["a", "b"],
            &["1", "2"],
            &[("1", "a", "1"), ("1", "a", "2"), ("2", "b", "1")],
        )
        .unwrap();
        let d = delay(&a, Side::Right);
        assert_eq!(d.value, Some(1));
        assert_eq!(delay(&a, Side::Left).value, Some(0));
    }

    #[test]
    fn infinite_left_delay() {
        let a = Automaton::from_edges(
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
        .unwrap();
        assert_eq!(delay(&a, Side::Right).value, Some(0));
        let d = delay(&a, Side::Left);
        assert_eq!(d.value, None);
        let w = d.witness.unwrap();
        assert_eq!((w.state.as_str(), w.letter.as_str()), ("1", "a"));
        assert_eq!(w.cycle, "b");
    }
}
