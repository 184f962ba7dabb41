use std::collections::HashMap;

use super::subset::{set_name, subset_closure};
use super::{block_language_difference, right_language_classes, Automaton, ShiftPresentation};
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};

/// Default bound on the number of semigroup elements computed anywhere in
/// the library.
pub const SEMIGROUP_LIMIT: usize = 100_000;

/// A binary relation on `0..n`, stored as one bitset row per state.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Relation {
    n: usize,
    bits: Vec<u64>,
}

impl Relation {
    fn words(n: usize) -> usize {
        n.div_ceil(64).max(1)
    }

    pub fn empty(n: usize) -> Self {
        Relation {
            n,
            bits: vec![0; n * Self::words(n)],
        }
    }

    /// The relation `p -> q` iff there is an edge `p -letter-> q`.
    pub fn of_letter(a: &Automaton, letter: usize) -> Self {
        let mut r = Relation::empty(a.num_states());
        for (i, e) in a.edges().iter().enumerate() {
            if a.label(i) == letter {
                r.insert(e.src, e.dst);
            }
        }
        r
    }

    pub fn insert(&mut self, p: usize, q: usize) {
        let w = Self::words(self.n);
        self.bits[p * w + q / 64] |= 1 << (q % 64);
    }

    pub fn contains(&self, p: usize, q: usize) -> bool {
        let w = Self::words(self.n);
        self.bits[p * w + q / 64] & (1 << (q % 64)) != 0
    }

    /// Relational composition: first `self`, then `other`.
    pub fn then(&self, other: &Relation) -> Relation {
        let w = Self::words(self.n);
        let mut out = Relation::empty(self.n);
        for p in 0..self.n {
            for q in 0..self.n {
                if self.contains(p, q) {
                    for k in 0..w {
                        out.bits[p * w + k] |= other.bits[q * w + k];
                    }
                }
            }
        }
        out
    }

    /// The set of states related to some member of `set`, sorted.
    pub fn image(&self, set: &[usize]) -> Vec<usize> {
        (0..self.n)
            .filter(|&q| set.iter().any(|&p| self.contains(p, q)))
            .collect()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&b| b == 0)
    }
}

/// The semigroup of relations generated by the letters of an automaton,
/// with a shortlex-least representative word for each element.
#[derive(Clone, Debug)]
pub struct RelationSemigroup {
    pub elements: Vec<Relation>,
    pub words: Vec<Vec<usize>>,
}

impl RelationSemigroup {
    pub fn new(a: &Automaton, limit: usize) -> Result<Self> {
        let gens: Vec<Relation> = (0..a.alphabet().len())
            .map(|l| Relation::of_letter(a, l))
            .collect();
        let mut index: HashMap<Relation, usize> = HashMap::new();
        let mut elements = Vec::new();
        let mut words = Vec::new();
        for (l, g) in gens.iter().enumerate() {
            if !index.contains_key(g) {
                index.insert(g.clone(), elements.len());
                elements.push(g.clone());
                words.push(vec![l]);
            }
        }
        let mut head = 0;
        while head < elements.len() {
            for (l, g) in gens.iter().enumerate() {
                let next = elements[head].then(g);
                if !index.contains_key(&next) {
                    if elements.len() >= limit {
                        return Err(Error::SemigroupTooLarge { limit });
                    }
                    let mut w = words[head].clone();
                    w.push(l);
                    index.insert(next.clone(), elements.len());
                    elements.push(next);
                    words.push(w);
                }
            }
            head += 1;
        }
        Ok(RelationSemigroup { elements, words })
    }

    pub fn idempotents(&self) -> impl Iterator<Item = &Relation> {
        self.elements.iter().filter(|e| e.then(e) == **e)
    }
}

/// A deterministic cover of a sofic shift, with the set of base states
/// behind each cover state.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cover {
    pub automaton: Automaton,
    /// For each state, the representative set of states of `base`.
    pub subsets: Vec<Vec<usize>>,
    /// The essential presentation the cover was computed from.
    pub base: Automaton,
}

/// The Krieger cover of the shift.
///
/// Its states are the sets of states reachable by left-infinite paths with
/// a common label. By Ramsey's theorem every such set has the form
/// `(Q.e).s` where `e` is an idempotent of the relation semigroup and `s`
/// is a word, so the sets are obtained by closing the images `Q.e` under
/// the letters. Sets with equal right languages are then identified.
pub fn krieger(p: &ShiftPresentation) -> Result<Cover> {
    krieger_of(&p.to_automaton())
}

pub fn krieger_of(a: &Automaton) -> Result<Cover> {
    let base = a.essential_part();
    if base.is_empty() {
        return Err(Error::EmptyShift);
    }
    let semigroup = RelationSemigroup::new(&base, SEMIGROUP_LIMIT)?;
    let all: Vec<usize> = (0..base.num_states()).collect();
    let mut roots: Vec<Vec<usize>> = semigroup
        .idempotents()
        .map(|e| e.image(&all))
        .filter(|s| !s.is_empty())
        .collect();
    roots.sort_by(|x, y| (x.len(), x).cmp(&(y.len(), y)));
    roots.dedup();
    let closure = subset_closure(&base, roots);
    let class_of = right_language_classes(&closure.automaton)?;

    let count = class_of.iter().max().map_or(0, |m| m + 1);
    let mut rep: Vec<Option<usize>> = vec![None; count];
    for (i, &c) in class_of.iter().enumerate() {
        let better = match rep[c] {
            None => true,
            Some(j) => {
                let (x, y) = (&closure.subsets[i], &closure.subsets[j]);
                (x.len(), x) < (y.len(), y)
            }
        };
        if better {
            rep[c] = Some(i);
        }
    }
    let mut order: Vec<usize> = (0..count).collect();
    order.sort_by(|&c, &d| {
        let x = &closure.subsets[rep[c].unwrap()];
        let y = &closure.subsets[rep[d].unwrap()];
        (x.len(), x).cmp(&(y.len(), y))
    });
    let mut position = vec![0; count];
    for (pos, &c) in order.iter().enumerate() {
        position[c] = pos;
    }
    let subsets: Vec<Vec<usize>> = order
        .iter()
        .map(|&c| closure.subsets[rep[c].unwrap()].clone())
        .collect();
    let names = subsets.iter().map(|s| set_name(base.states(), s)).collect();
    let delta = closure.automaton.transitions()?;
    let mut edges = Vec::new();
    let mut labels = Vec::new();
    for &c in &order {
        let r = rep[c].unwrap();
        for (letter, t) in delta[r].iter().enumerate() {
            if let Some(t) = t {
                edges.push(Edge {
                    id: format!("e{}", edges.len() + 1),
                    src: position[c],
                    dst: position[class_of[*t]],
                });
                labels.push(letter);
            }
        }
    }
    let automaton = Automaton::new(Graph::new(names, edges)?, labels, base.alphabet().clone())?;
    Ok(Cover {
        automaton,
        subsets,
        base,
    })
}

/// Strongly connected components with no edge leaving them.
pub fn terminal_components(a: &Automaton) -> Vec<Vec<usize>> {
    let comps = a.graph().sccs();
    let mut comp_of = vec![0; a.num_states()];
    for (c, comp) in comps.iter().enumerate() {
        for &q in comp {
            comp_of[q] = c;
        }
    }
    let mut leaves = vec![false; comps.len()];
    for e in a.edges() {
        if comp_of[e.src] != comp_of[e.dst] {
            leaves[comp_of[e.src]] = true;
        }
    }
    comps
        .into_iter()
        .enumerate()
        .filter(|(c, _)| !leaves[*c])
        .map(|(_, comp)| comp)
        .collect()
}

/// The component of a Krieger cover presenting the whole shift, when the
/// shift is irreducible: the unique terminal component, provided every
/// block of the cover is a block of that component.
pub fn fischer_component(krieger: &Automaton) -> Option<Vec<usize>> {
    let terminal = terminal_components(krieger);
    if terminal.len() != 1 {
        return None;
    }
    let comp = terminal.into_iter().next().unwrap();
    let mut keep = vec![false; krieger.num_states()];
    for &q in &comp {
        keep[q] = true;
    }
    let (sub, _) = krieger.induced(&keep);
    if block_language_difference(krieger, &sub).is_some() {
        return None;
    }
    Some(comp)
}

/// The Fischer cover of an irreducible shift: the minimal strongly
/// connected component of its Krieger cover.
pub fn fischer(p: &ShiftPresentation) -> Result<Cover> {
    fischer_of(&p.to_automaton())
}

pub fn fischer_of(a: &Automaton) -> Result<Cover> {
    let k = krieger_of(a)?;
    let comp = fischer_component(&k.automaton).ok_or(Error::NotIrreducible)?;
    let mut keep = vec![false; k.automaton.num_states()];
    for &q in &comp {
        keep[q] = true;
    }
    let (automaton, old) = k.automaton.induced(&keep);
    Ok(Cover {
        automaton,
        subsets: old.iter().map(|&q| k.subsets[q].clone()).collect(),
        base: k.base,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn even() -> Automaton {
        Automaton::from_edges(
            &["a", "b"],
            &["1", "2"],
            &[("1", "a", "1"), ("1", "b", "2"), ("2", "b", "1")],
        )
        .unwrap()
    }

    #[test]
    fn even_shift_covers() {
        let k = krieger_of(&even()).unwrap();
        assert_eq!(k.automaton.states(), &["{1}", "{2}", "{1,2}"]);
        assert_eq!(k.automaton.num_edges(), 5);
        let f = fischer_of(&even()).unwrap();
        assert!(f.automaton.is_isomorphic(&even()));
    }

    #[test]
    fn covers_of_a_four_state_presentation() {
        let a = Automaton::from_edges(
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
        .unwrap();
        let k = krieger_of(&a).unwrap();
        assert_eq!(k.automaton.states(), &["{1}", "{2}", "{3}", "{4}", "{1,3,4}"]);
        let f = fischer_of(&a).unwrap();
        assert!(f.automaton.is_isomorphic(&a));
    }

    #[test]
    fn relation_composition() {
        let a = even();
        let b = Relation::of_letter(&a, 1);
        let bb = b.then(&b);
        assert!(bb.contains(0, 0) && bb.contains(1, 1) && !bb.contains(0, 1));
        assert_eq!(b.image(&[0]), vec![1]);
    }

    #[test]
    fn empty_shift_has_no_cover() {
        let a = Automaton::from_edges(&["a"], &["1", "2"], &[("1", "a", "2")]).unwrap();
        assert_eq!(krieger_of(&a), Err(Error::EmptyShift));
    }
}
