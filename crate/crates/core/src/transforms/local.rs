use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use super::builder::Builder;
use super::split::{factorization_error, split_factorization, Orientation};
use crate::automata::{determinize_full, Automaton};
use crate::classify::locality;
use crate::error::{Error, Result};
use crate::matrix::{AlphabeticMatrix, CountMatrix};
use crate::symbol::Alphabet;

/// Name of the state for the empty word.
pub const EMPTY_WORD: &str = "ε";

const STANDARD_LIMIT: usize = 1 << 16;

fn word_name(alphabet: &Alphabet, w: &[usize]) -> String {
    if w.is_empty() {
        EMPTY_WORD.to_string()
    } else {
        alphabet.format_word(w)
    }
}

/// All words of length `len` in lexicographic order of letter indices.
fn all_words(k: usize, len: usize) -> Vec<Vec<usize>> {
    let mut words = vec![Vec::new()];
    for _ in 0..len {
        words = words
            .into_iter()
            .flat_map(|w| {
                (0..k).map(move |c| {
                    let mut v = w.clone();
                    v.push(c);
                    v
                })
            })
            .collect();
    }
    words
}

/// The standard `(m, n)`-local automaton: states are the words of length
/// `m + n`, with an edge `w -> (wc)[1..]` labeled by letter `m` of `wc`
/// for every letter `c`. It is complete and `(m, n)`-local.
pub fn standard_local_automaton(alphabet: &Alphabet, m: usize, n: usize) -> Result<Automaton> {
    let k = alphabet.len();
    if m + n == 0 {
        return Err(Error::Precondition("m + n must be positive".into()));
    }
    if k == 0 {
        return Err(Error::Precondition("empty alphabet".into()));
    }
    if k.checked_pow((m + n) as u32).is_none_or(|s| s > STANDARD_LIMIT) {
        return Err(Error::Precondition(format!(
            "standard ({m}, {n})-local automaton over {k} letters is too large"
        )));
    }
    let words = all_words(k, m + n);
    let mut b = Builder::new(alphabet.clone());
    for w in &words {
        b.state(&word_name(alphabet, w));
    }
    let mut id = 0;
    for (s, w) in words.iter().enumerate() {
        for c in 0..k {
            let mut wc = w.clone();
            wc.push(c);
            // Index of wc[1..] in lexicographic order.
            let t = (s * k + c) % words.len();
            id += 1;
            b.edge(&format!("e{id}"), s, alphabet.symbol(wc[m]), t);
        }
    }
    b.build()
}

/// Whether every word over the alphabet labels a path.
pub fn is_complete(a: &Automaton) -> bool {
    if a.alphabet().is_empty() {
        return true;
    }
    let Ok(d) = determinize_full(a) else {
        return false;
    };
    let k = a.alphabet().len();
    let mut letters = vec![BTreeSet::new(); d.automaton.num_states()];
    for (i, e) in d.automaton.edges().iter().enumerate() {
        letters[e.src].insert(d.automaton.label(i));
    }
    letters.iter().all(|l| l.len() == k)
}

/// Output of a masking step: `A'` together with `D'` and `N'`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaskingResult {
    pub automaton: Automaton,
    pub d_prime: CountMatrix,
    pub n_prime: AlphabeticMatrix,
    /// `In` when `M(A) = ND, M(B) = DN`; `Out` when `M(A) = DN, M(B) = ND`.
    pub orientation: Orientation,
}

/// Given `M(A) = ND` and `M(B) = DN` (or the transposed roles) and `B`
/// contained in `B'`, builds `A'` containing `A` with `M(A') = N'D'` and
/// `M(B') = D'N'`. The states of `A'` are those of `A` followed by one
/// state per edge of `B'` missing from `B`, named by its edge id.
pub fn masking_step(
    a: &Automaton,
    b: &Automaton,
    b_prime: &Automaton,
    d: &CountMatrix,
    n: &AlphabeticMatrix,
) -> Result<MaskingResult> {
    let (q, r) = (a.num_states(), b.num_states());
    let fits_in = d.rows() == r && d.cols() == q && n.rows() == q && n.cols() == r;
    let fits_out = d.rows() == q && d.cols() == r && n.rows() == r && n.cols() == q;
    if fits_in && n.mul_count(d)? == a.adjacency() && AlphabeticMatrix::count_mul(d, n)? == b.adjacency() {
        return mask(a, b, b_prime, d, n, Orientation::In);
    }
    if fits_out && AlphabeticMatrix::count_mul(d, n)? == a.adjacency() && n.mul_count(d)? == b.adjacency() {
        return mask(a, b, b_prime, d, n, Orientation::Out);
    }
    let mismatch = |pairs: [(AlphabeticMatrix, AlphabeticMatrix); 2]| {
        pairs
            .iter()
            .find_map(|(x, y)| factorization_error(x, y))
            .unwrap_or_else(|| Error::Inconsistent("factorization check".into()))
    };
    if fits_in {
        Err(mismatch([
            (a.adjacency(), n.mul_count(d)?),
            (b.adjacency(), AlphabeticMatrix::count_mul(d, n)?),
        ]))
    } else if fits_out {
        Err(mismatch([
            (a.adjacency(), AlphabeticMatrix::count_mul(d, n)?),
            (b.adjacency(), n.mul_count(d)?),
        ]))
    } else {
        Err(Error::Dimension(format!(
            "D is {}x{} and N is {}x{} for automata with {q} and {r} states",
            d.rows(),
            d.cols(),
            n.rows(),
            n.cols()
        )))
    }
}

pub(crate) fn mask(
    a: &Automaton,
    b: &Automaton,
    b_prime: &Automaton,
    d: &CountMatrix,
    n: &AlphabeticMatrix,
    o: Orientation,
) -> Result<MaskingResult> {
    if let Some(v) = b.containment_violation(b_prime) {
        return Err(Error::Containment(v));
    }
    let q = a.num_states();
    let r_prime = b_prime.num_states();
    let rmap: Vec<usize> = b
        .states()
        .iter()
        .map(|s| b_prime.state_index(s).expect("checked containment"))
        .collect();
    let old: HashSet<&str> = b.edges().iter().map(|e| e.id.as_str()).collect();
    let added: Vec<usize> = (0..b_prime.num_edges())
        .filter(|&i| !old.contains(b_prime.edges()[i].id.as_str()))
        .collect();
    let size = q + added.len();

    let mut builder = Builder::new(a.alphabet().clone());
    for s in a.states() {
        builder.state(s);
    }
    let mut state_names: Vec<String> = a.states().to_vec();
    for &u in &added {
        let name = builder.fresh_state(&b_prime.edges()[u].id);
        builder.state(&name);
        state_names.push(name);
    }

    let (d_prime, n_prime) = match o {
        Orientation::In => {
            let mut dp = CountMatrix::zeros(r_prime, size);
            let mut np = AlphabeticMatrix::zeros(size, r_prime);
            for (r, &rp) in rmap.iter().enumerate() {
                for x in 0..q {
                    dp.set(rp, x, d.get(r, x));
                }
            }
            for x in 0..q {
                for (s, &sp) in rmap.iter().enumerate() {
                    for (sym, &c) in n.get(x, s) {
                        np.add_term(x, sp, sym.clone(), c);
                    }
                }
            }
            for (k, &u) in added.iter().enumerate() {
                let e = &b_prime.edges()[u];
                dp.set(e.src, q + k, 1);
                np.add_term(q + k, e.dst, b_prime.label_symbol(u).clone(), 1);
            }
            (dp, np)
        }
        Orientation::Out => {
            let mut dp = CountMatrix::zeros(size, r_prime);
            let mut np = AlphabeticMatrix::zeros(r_prime, size);
            for x in 0..q {
                for (r, &rp) in rmap.iter().enumerate() {
                    dp.set(x, rp, d.get(x, r));
                }
            }
            for (s, &sp) in rmap.iter().enumerate() {
                for x in 0..q {
                    for (sym, &c) in n.get(s, x) {
                        np.add_term(sp, x, sym.clone(), c);
                    }
                }
            }
            for (k, &u) in added.iter().enumerate() {
                let e = &b_prime.edges()[u];
                dp.set(q + k, e.dst, 1);
                np.add_term(e.src, q + k, b_prime.label_symbol(u).clone(), 1);
            }
            (dp, np)
        }
    };
    let (a_matrix, b_matrix) = match o {
        Orientation::In => (n_prime.mul_count(&d_prime)?, AlphabeticMatrix::count_mul(&d_prime, &n_prime)?),
        Orientation::Out => (AlphabeticMatrix::count_mul(&d_prime, &n_prime)?, n_prime.mul_count(&d_prime)?),
    };
    if let Some(err) = factorization_error(&b_prime.adjacency(), &b_matrix) {
        return Err(err);
    }

    for e in a.edges() {
        builder.reserve_id(&e.id);
    }
    for (i, e) in a.edges().iter().enumerate() {
        builder.edge(&e.id, e.src, a.label_symbol(i), e.dst);
    }
    for x in 0..size {
        for y in 0..size {
            if x < q && y < q {
                continue;
            }
            for (sym, &c) in a_matrix.get(x, y) {
                for _ in 0..c {
                    let id = builder.fresh_id(&format!("{}>{}", state_names[x], state_names[y]));
                    builder.edge(&id, x, sym, y);
                }
            }
        }
    }
    Ok(MaskingResult {
        automaton: builder.build()?,
        d_prime,
        n_prime,
        orientation: o,
    })
}

/// The automaton of contexts `(u, q, v)`: a path labeled `u` of length `i`
/// ends in `q` and a path labeled `v` of length `j` starts there. Removing
/// the first letter of `u` is an in-merge and removing the last letter of
/// `v` an out-merge, so these automata form a chain of splits above `a`.
struct Context {
    states: Vec<(Vec<usize>, usize, Vec<usize>)>,
    index: HashMap<(Vec<usize>, usize, Vec<usize>), usize>,
    automaton: Automaton,
}

fn words_into(a: &Automaton, len: usize) -> Vec<BTreeSet<Vec<usize>>> {
    let mut sets = vec![BTreeSet::from([Vec::new()]); a.num_states()];
    for _ in 0..len {
        let mut next = vec![BTreeSet::new(); a.num_states()];
        for (i, e) in a.edges().iter().enumerate() {
            for u in &sets[e.src] {
                let mut w = u.clone();
                w.push(a.label(i));
                next[e.dst].insert(w);
            }
        }
        sets = next;
    }
    sets
}

fn words_from(a: &Automaton, len: usize) -> Vec<BTreeSet<Vec<usize>>> {
    let mut sets = vec![BTreeSet::from([Vec::new()]); a.num_states()];
    for _ in 0..len {
        let mut next = vec![BTreeSet::new(); a.num_states()];
        for (i, e) in a.edges().iter().enumerate() {
            for v in &sets[e.dst] {
                let mut w = vec![a.label(i)];
                w.extend(v);
                next[e.src].insert(w);
            }
        }
        sets = next;
    }
    sets
}

fn context(a: &Automaton, i: usize, j: usize) -> Result<Context> {
    let left = words_into(a, i);
    let right = words_from(a, j);
    let mut states = Vec::new();
    for q in 0..a.num_states() {
        for u in &left[q] {
            for v in &right[q] {
                states.push((u.clone(), q, v.clone()));
            }
        }
    }
    let index: HashMap<_, _> = states.iter().cloned().enumerate().map(|(k, s)| (s, k)).collect();
    if i == 0 && j == 0 {
        return Ok(Context {
            states,
            index,
            automaton: a.clone(),
        });
    }
    let alphabet = a.alphabet();
    let name = |(u, q, v): &(Vec<usize>, usize, Vec<usize>)| {
        format!(
            "{}|{}|{}",
            alphabet.format_word(u),
            a.states()[*q],
            alphabet.format_word(v)
        )
    };
    let mut b = Builder::new(alphabet.clone());
    for s in &states {
        b.state(&name(s));
    }
    let out = a.graph().out_edges();
    for (k, (u, p, v)) in states.iter().enumerate() {
        for &e in &out[*p] {
            let letter = a.label(e);
            if j > 0 && v[0] != letter {
                continue;
            }
            let q = a.edges()[e].dst;
            let mut u2 = u.clone();
            u2.push(letter);
            let u2 = u2[u2.len() - i..].to_vec();
            let targets: Vec<Vec<usize>> = if j == 0 {
                vec![Vec::new()]
            } else {
                (0..alphabet.len())
                    .map(|c| {
                        let mut w = v[1..].to_vec();
                        w.push(c);
                        w
                    })
                    .collect()
            };
            for v2 in targets {
                if let Some(&t) = index.get(&(u2.clone(), q, v2)) {
                    let id = format!("{}>{}:{}", name(&states[k]), name(&states[t]), a.edges()[e].id);
                    b.edge(&id, k, alphabet.symbol(letter), t);
                }
            }
        }
    }
    Ok(Context {
        states,
        index,
        automaton: b.build()?,
    })
}

/// The merge map from the context automaton one level up onto `lower`.
fn merge_map(upper: &Context, lower: &Context, orientation: Orientation) -> Vec<usize> {
    upper
        .states
        .iter()
        .map(|(u, q, v)| {
            let key = match orientation {
                Orientation::In => (u[1..].to_vec(), *q, v.clone()),
                Orientation::Out => (u.clone(), *q, v[..v.len() - 1].to_vec()),
            };
            lower.index[&key]
        })
        .collect()
}

/// The standard `(m, n)`-local automaton renamed so that it contains the
/// top context automaton: the context `(u, q, v)` becomes the word `uv`.
fn standard_over(top: &Context, alphabet: &Alphabet, m: usize, n: usize) -> Result<Automaton> {
    let s = standard_local_automaton(alphabet, m, n)?;
    let k = alphabet.len();
    let word_index = |w: &[usize]| w.iter().fold(0, |acc, &c| acc * k + c);
    let c = &top.automaton;
    let mut names: Vec<Option<String>> = vec![None; s.num_states()];
    for (t, (u, _, v)) in top.states.iter().enumerate() {
        let mut w = u.clone();
        w.extend(v);
        let slot = &mut names[word_index(&w)];
        if slot.is_some() {
            return Err(Error::NotLocal);
        }
        *slot = Some(c.states()[t].clone());
    }
    let mut ids: Vec<Option<String>> = vec![None; s.num_edges()];
    for (i, e) in c.edges().iter().enumerate() {
        let (u, _, v) = &top.states[e.src];
        let (u2, _, v2) = &top.states[e.dst];
        let mut w = u.clone();
        w.extend(v);
        let last = *u2.iter().chain(v2).last().expect("m + n > 0");
        let slot = word_index(&w) * k + last;
        if s.label(slot) != c.label(i) || ids[slot].is_some() {
            return Err(Error::Inconsistent(format!("edge {} has no image", e.id)));
        }
        ids[slot] = Some(e.id.clone());
    }
    let mut b = Builder::new(alphabet.clone());
    let taken: HashSet<&String> = c.states().iter().collect();
    for (t, name) in names.iter().enumerate() {
        match name {
            Some(name) => b.state(name),
            None => {
                let mut name = s.states()[t].clone();
                while taken.contains(&name) || b.has_state(&name) {
                    name.push('\'');
                }
                b.state(&name)
            }
        };
    }
    for e in c.edges() {
        b.reserve_id(&e.id);
    }
    for (i, e) in s.edges().iter().enumerate() {
        let id = match &ids[i] {
            Some(id) => id.clone(),
            None => b.fresh_id(&format!("s{}", i + 1)),
        };
        b.edge(&id, e.src, s.label_symbol(i), e.dst);
    }
    b.build()
}

/// The `(m, n)` pipeline: context automata up to `(m, n)`, the standard
/// local automaton on top, then masking steps down the chain.
fn complete_with(a: &Automaton, m: usize, n: usize) -> Result<Automaton> {
    let mut levels: Vec<(usize, usize, Orientation)> = vec![(0, 0, Orientation::In)];
    levels.extend((1..=m).map(|i| (i, 0, Orientation::In)));
    levels.extend((1..=n).map(|j| (m, j, Orientation::Out)));
    let contexts = levels
        .iter()
        .map(|&(i, j, _)| context(a, i, j))
        .collect::<Result<Vec<_>>>()?;
    let top = contexts.last().expect("nonempty chain");
    let mut current = standard_over(top, a.alphabet(), m, n)?;
    for k in (0..contexts.len() - 1).rev() {
        let o = levels[k + 1].2;
        let (lower, upper) = (&contexts[k], &contexts[k + 1]);
        let map = merge_map(upper, lower, o);
        let (d, nm) = split_factorization(&lower.automaton, &upper.automaton, &map, o)?;
        current = mask(&lower.automaton, &upper.automaton, &current, &d, &nm, o)?.automaton;
    }
    Ok(current)
}

/// A complete local automaton containing the essential local automaton
/// `a`. With `(m, n)` a least locality pair, the automata of contexts
/// `(u, q, v)` with `|u| <= m` and `|v| <= n` form a chain of in-splits and
/// out-splits above `a` whose top embeds into the standard
/// `(m, n)`-local automaton; masking steps carry that completion back down
/// to an automaton containing `a`. Each candidate is audited for
/// containment, completeness and locality, and the pair is enlarged if an
/// audit fails.
pub fn complete_local(a: &Automaton) -> Result<Automaton> {
    if a.is_empty() || !a.is_essential() {
        return Err(Error::Precondition("automaton must be nonempty and essential".into()));
    }
    let mut seen = BTreeMap::new();
    for (i, e) in a.edges().iter().enumerate() {
        if let Some(prev) = seen.insert((e.src, e.dst, a.label(i)), &e.id) {
            return Err(Error::Precondition(format!(
                "parallel edges {prev} and {} carry the same label",
                e.id
            )));
        }
    }
    let witness = locality(a, None);
    let (mut m, mut n) = witness.least().ok_or(Error::NotLocal)?;
    if m + n == 0 {
        m = 1;
    }
    let mut last_failure = String::new();
    for _ in 0..3 {
        let candidate = complete_with(a, m, n)?;
        match audit(a, &candidate) {
            None => return Ok(candidate),
            Some(why) => last_failure = why,
        }
        m += 1;
        n += 1;
    }
    Err(Error::Inconsistent(format!("completion audit failed: {last_failure}")))
}

fn audit(a: &Automaton, candidate: &Automaton) -> Option<String> {
    if let Some(v) = a.containment_violation(candidate) {
        return Some(v);
    }
    if !is_complete(candidate) {
        return Some("result is not complete".into());
    }
    if !locality(candidate, None).is_local() {
        return Some("result is not local".into());
    }
    None
}
