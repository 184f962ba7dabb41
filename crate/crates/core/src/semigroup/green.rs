use std::collections::HashMap;

use super::{GroupDescriptor, TransitionSemigroup};
use crate::error::{Error, Result};
use crate::graph::strongly_connected_components;

/// A D-class of a finite semigroup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DClass {
    /// Elements, in increasing (shortlex) order.
    pub elements: Vec<usize>,
    /// Common rank of the elements.
    pub rank: usize,
    pub regular: bool,
    pub idempotents: Vec<usize>,
    /// Structure group (the H-class of an idempotent), for regular classes.
    pub group: Option<GroupDescriptor>,
}

/// Green relations of a transition semigroup. D-classes are sorted by
/// decreasing rank, then by their least element.
#[derive(Clone, Debug)]
pub struct GreenStructure {
    pub r_class: Vec<usize>,
    pub l_class: Vec<usize>,
    pub h_class: Vec<usize>,
    pub d_class: Vec<usize>,
    pub d_classes: Vec<DClass>,
    /// `above[c][d]` when D-class `c` is `>=_J` D-class `d`.
    above: Vec<Vec<bool>>,
}

impl GreenStructure {
    /// True when D-class `c` lies `>=_J` D-class `d`, i.e. the ideal
    /// generated by `d` is contained in the ideal generated by `c`.
    pub fn j_above(&self, c: usize, d: usize) -> bool {
        self.above[c][d]
    }

    pub fn regular_classes(&self) -> impl Iterator<Item = (usize, &DClass)> {
        self.d_classes.iter().enumerate().filter(|(_, d)| d.regular)
    }
}

fn class_numbers(n: usize, comps: &[Vec<usize>]) -> Vec<usize> {
    let mut class = vec![0; n];
    for (c, comp) in comps.iter().enumerate() {
        for &x in comp {
            class[x] = c;
        }
    }
    class
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut y = x;
    while parent[y] != r {
        let next = parent[y];
        parent[y] = r;
        y = next;
    }
    r
}

/// The structure group at the idempotent `e`: its H-class with the
/// semigroup multiplication.
pub(crate) fn structure_group(s: &TransitionSemigroup, h_class: &[usize], e: usize) -> GroupDescriptor {
    let members: Vec<usize> = (0..s.len()).filter(|&x| h_class[x] == h_class[e]).collect();
    let pos: HashMap<usize, usize> = members.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let table: Vec<Vec<usize>> = members
        .iter()
        .map(|&x| members.iter().map(|&y| pos[&s.multiply(x, y)]).collect())
        .collect();
    GroupDescriptor::from_table(&table, pos[&e])
}

/// Computes the R-, L-, H-, D- and J-classes and the J-order on D-classes.
/// R- and L-classes are the strong components of the right and left Cayley
/// graphs; J-classes those of their union. Fails if D and J disagree, which
/// cannot happen for a finite semigroup.
pub fn green_structure(s: &TransitionSemigroup) -> Result<GreenStructure> {
    let n = s.len();
    let k = s.alphabet().len();
    let right: Vec<Vec<usize>> = (0..n)
        .map(|x| (0..k).map(|l| s.right_mult(x, l)).collect())
        .collect();
    let left: Vec<Vec<usize>> = (0..n)
        .map(|x| (0..k).map(|l| s.left_mult(l, x)).collect())
        .collect();
    let both: Vec<Vec<usize>> = (0..n)
        .map(|x| right[x].iter().chain(&left[x]).copied().collect())
        .collect();
    let r_class = class_numbers(n, &strongly_connected_components(&right));
    let l_class = class_numbers(n, &strongly_connected_components(&left));
    let j_comps = strongly_connected_components(&both);
    let j_class = class_numbers(n, &j_comps);

    let mut parent: Vec<usize> = (0..n).collect();
    let mut first_r: HashMap<usize, usize> = HashMap::new();
    let mut first_l: HashMap<usize, usize> = HashMap::new();
    for x in 0..n {
        for rep in [
            *first_r.entry(r_class[x]).or_insert(x),
            *first_l.entry(l_class[x]).or_insert(x),
        ] {
            let (a, b) = (find(&mut parent, x), find(&mut parent, rep));
            parent[a] = b;
        }
    }
    let roots: Vec<usize> = (0..n).map(|x| find(&mut parent, x)).collect();
    // D must coincide with J.
    let mut root_of_j: HashMap<usize, usize> = HashMap::new();
    for x in 0..n {
        if *root_of_j.entry(j_class[x]).or_insert(roots[x]) != roots[x] {
            return Err(Error::Inconsistent(format!(
                "D and J differ at element {}",
                s.format_word(x)
            )));
        }
    }
    if root_of_j.len() != roots.iter().collect::<std::collections::HashSet<_>>().len() {
        return Err(Error::Inconsistent("D and J differ".into()));
    }

    let mut h_ids: HashMap<(usize, usize), usize> = HashMap::new();
    let h_class: Vec<usize> = (0..n)
        .map(|x| {
            let next = h_ids.len();
            *h_ids.entry((r_class[x], l_class[x])).or_insert(next)
        })
        .collect();

    // Order J-classes by decreasing rank, then least element.
    let mut order: Vec<usize> = (0..j_comps.len()).collect();
    let least: Vec<usize> = j_comps.iter().map(|c| *c.iter().min().unwrap()).collect();
    order.sort_by_key(|&c| (std::cmp::Reverse(s.rank(least[c])), least[c]));
    let mut position = vec![0; j_comps.len()];
    for (p, &c) in order.iter().enumerate() {
        position[c] = p;
    }
    let d_class: Vec<usize> = j_class.iter().map(|&c| position[c]).collect();

    let mut d_classes = Vec::with_capacity(order.len());
    for &c in &order {
        let mut elements = j_comps[c].clone();
        elements.sort_unstable();
        let idempotents: Vec<usize> = elements
            .iter()
            .copied()
            .filter(|&x| s.is_idempotent(x))
            .collect();
        let group = idempotents
            .first()
            .map(|&e| structure_group(s, &h_class, e));
        d_classes.push(DClass {
            rank: s.rank(elements[0]),
            regular: !idempotents.is_empty(),
            elements,
            idempotents,
            group,
        });
    }

    // Reachability between classes in the condensation. Components come in
    // topological order, so a reverse sweep sees successors first.
    let m = j_comps.len();
    let mut reach: Vec<Vec<bool>> = vec![vec![false; m]; m];
    for c in (0..m).rev() {
        reach[c][c] = true;
        for &x in &j_comps[c] {
            for &y in &both[x] {
                let d = j_class[y];
                if d != c && !reach[c][d] {
                    let (lo, hi) = reach.split_at_mut(d);
                    for (a, &b) in lo[c].iter_mut().zip(&hi[0]) {
                        *a |= b;
                    }
                }
            }
        }
    }
    let mut above = vec![vec![false; m]; m];
    for c in 0..m {
        for d in 0..m {
            above[position[c]][position[d]] = reach[c][d];
        }
    }
    Ok(GreenStructure {
        r_class,
        l_class,
        h_class,
        d_class,
        d_classes,
        above,
    })
}
