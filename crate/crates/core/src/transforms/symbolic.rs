use std::collections::{BTreeMap, HashMap};

use super::builder::Builder;
use crate::automata::{concat_symbol, Automaton, ShiftPresentation};
use crate::error::{Error, Result};
use crate::symbol::{Alphabet, Symbol};

/// A map from the alphabet of a shift to some set of symbols.
pub type SymbolMap = BTreeMap<Symbol, Symbol>;

fn image<'a>(f: &'a SymbolMap, s: &Symbol) -> Result<&'a Symbol> {
    f.get(s)
        .ok_or_else(|| Error::Precondition(format!("map undefined on symbol {s}")))
}

/// Checks that distinct pairs concatenate to distinct symbols.
fn check_concatenation(pairs: &HashMap<(Symbol, Symbol), Symbol>) -> Result<()> {
    let mut seen: HashMap<&Symbol, &(Symbol, Symbol)> = HashMap::new();
    for (pair, s) in pairs {
        if let Some(prev) = seen.insert(s, pair) {
            return Err(Error::Bijection(format!(
                "({}, {}) and ({}, {}) both concatenate to {s}",
                prev.0, prev.1, pair.0, pair.1
            )));
        }
    }
    Ok(())
}

/// The in-splitting of a shift relative to `f`: its image under the 2-block
/// map `g(a1 a2) = f(a1) a2`, whose inverse is the 1-block map keeping the
/// last letter. States of the result are pairs `(f(a), q)` of a state `q`
/// of the essential presentation entered by an `a`-edge.
pub fn symbolic_in_split(p: &ShiftPresentation, f: &SymbolMap) -> Result<ShiftPresentation> {
    let a = p.to_automaton();
    for s in a.alphabet().symbols() {
        image(f, s)?;
    }
    let into = a.graph().in_edges();
    let name = |x: &Symbol, q: usize| format!("({x},{})", a.states()[q]);
    let mut pairs = HashMap::new();
    let mut b = Builder::new(Alphabet::default());
    for e in a.edges() {
        for &i in &into[e.src] {
            let x = image(f, a.label_symbol(i))?;
            b.state(&name(x, e.src));
        }
    }
    for (j, e) in a.edges().iter().enumerate() {
        let y = image(f, a.label_symbol(j))?;
        let mut sources: Vec<&Symbol> = into[e.src]
            .iter()
            .map(|&i| image(f, a.label_symbol(i)))
            .collect::<Result<_>>()?;
        sources.sort();
        sources.dedup();
        for x in sources {
            let label = concat_symbol(x, a.label_symbol(j));
            pairs.insert((x.clone(), a.label_symbol(j).clone()), label.clone());
            let src = b.state(&name(x, e.src));
            let dst = b.state(&name(y, e.dst));
            b.edge(&format!("{x}/{}", e.id), src, &label, dst);
        }
    }
    check_concatenation(&pairs)?;
    Ok(b.build()?.into())
}

/// The out-splitting of a shift relative to `f`, by `g(a1 a2) = a1 f(a2)`.
/// With `f` the identity this is the second higher block shift.
pub fn symbolic_out_split(p: &ShiftPresentation, f: &SymbolMap) -> Result<ShiftPresentation> {
    let a = p.to_automaton();
    for s in a.alphabet().symbols() {
        image(f, s)?;
    }
    let out = a.graph().out_edges();
    let name = |q: usize, y: &Symbol| format!("({},{y})", a.states()[q]);
    let mut pairs = HashMap::new();
    let mut b = Builder::new(Alphabet::default());
    for (q, edges) in out.iter().enumerate() {
        for &i in edges {
            b.state(&name(q, image(f, a.label_symbol(i))?));
        }
    }
    for (i, e) in a.edges().iter().enumerate() {
        let x = image(f, a.label_symbol(i))?;
        let mut targets: Vec<&Symbol> = out[e.dst]
            .iter()
            .map(|&j| image(f, a.label_symbol(j)))
            .collect::<Result<_>>()?;
        targets.sort();
        targets.dedup();
        for y in targets {
            let label = concat_symbol(a.label_symbol(i), y);
            pairs.insert((a.label_symbol(i).clone(), y.clone()), label.clone());
            let src = b.state(&name(e.src, x));
            let dst = b.state(&name(e.dst, y));
            b.edge(&format!("{}/{y}", e.id), src, &label, dst);
        }
    }
    check_concatenation(&pairs)?;
    Ok(b.build()?.into())
}

/// The symbol expansion of a shift relative to `a`: every `a` is followed
/// by a new symbol `ω`, allocated as `alphabet.fresh(a)`. Automata have each
/// `a`-edge `p -> q` replaced by `p -a-> r -ω-> q`; forbidden-word
/// presentations stay forbidden-word presentations.
pub fn symbol_expansion(p: &ShiftPresentation, a: &Symbol) -> Result<ShiftPresentation> {
    let alphabet = p.alphabet();
    let letter = alphabet
        .index_of(a)
        .ok_or_else(|| Error::UnknownSymbol(a.to_string()))?;
    let omega = alphabet.fresh(a.as_str());
    match p {
        ShiftPresentation::Forbidden(f) => {
            let mut extended = alphabet.clone();
            let w = extended.insert(omega);
            let mut words: Vec<Vec<usize>> = f
                .words()
                .iter()
                .map(|word| {
                    word.iter()
                        .flat_map(|&c| if c == letter { vec![c, w] } else { vec![c] })
                        .collect()
                })
                .collect();
            for c in 0..extended.len() {
                if c != w {
                    words.push(vec![letter, c]);
                }
                if c != letter {
                    words.push(vec![c, w]);
                }
            }
            Ok(crate::automata::ForbiddenWords::new(extended, words)?.into())
        }
        ShiftPresentation::Automaton(aut) => Ok(expand_automaton(aut, letter, &omega)?.into()),
    }
}

fn expand_automaton(a: &Automaton, letter: usize, omega: &Symbol) -> Result<Automaton> {
    let mut b = Builder::new(a.alphabet().clone());
    for s in a.states() {
        b.state(s);
    }
    for e in a.edges() {
        b.reserve_id(&e.id);
    }
    for (i, e) in a.edges().iter().enumerate() {
        if a.label(i) != letter {
            b.edge(&e.id, e.src, a.label_symbol(i), e.dst);
            continue;
        }
        let mid = b.fresh_state(&format!("{}'", e.id));
        let mid = b.state(&mid);
        b.edge(&e.id, e.src, a.label_symbol(i), mid);
        let id = b.fresh_id(&format!("{}'", e.id));
        b.edge(&id, mid, omega, e.dst);
    }
    b.build()
}

/// The inverse of [`symbol_expansion`]: deletes `omega`, which must always
/// follow `a` and only follow `a`. The result is an automaton presentation.
pub fn symbol_contraction(p: &ShiftPresentation, a: &Symbol, omega: &Symbol) -> Result<ShiftPresentation> {
    let aut = p.to_automaton();
    let letter = aut
        .alphabet()
        .index_of(a)
        .ok_or_else(|| Error::UnknownSymbol(a.to_string()))?;
    let w = aut
        .alphabet()
        .index_of(omega)
        .ok_or_else(|| Error::UnknownSymbol(omega.to_string()))?;
    let out = aut.graph().out_edges();
    for (i, e) in aut.edges().iter().enumerate() {
        for &j in &out[e.dst] {
            let (x, y) = (aut.label(i), aut.label(j));
            if (x == letter) != (y == w) {
                return Err(Error::Precondition(format!(
                    "{} followed by {} in the presentation",
                    aut.label_symbol(i),
                    aut.label_symbol(j)
                )));
            }
        }
    }
    let symbols: Vec<Symbol> = aut
        .alphabet()
        .symbols()
        .iter()
        .filter(|&s| s != omega)
        .cloned()
        .collect();
    let mut b = Builder::new(Alphabet::from_symbols(symbols)?);
    for s in aut.states() {
        b.state(s);
    }
    for (i, e) in aut.edges().iter().enumerate() {
        match aut.label(i) {
            l if l == w => {}
            l if l == letter => {
                for &j in &out[e.dst] {
                    let id = format!("{}+{}", e.id, aut.edges()[j].id);
                    b.edge(&id, e.src, a, aut.edges()[j].dst);
                }
            }
            _ => b.edge(&e.id, e.src, aut.label_symbol(i), e.dst),
        }
    }
    Ok(b.build()?.essential_part().into())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::{block_languages_equal, ForbiddenWords};
    use crate::symbol::sym;

    fn identity(alphabet: &Alphabet) -> SymbolMap {
        alphabet.symbols().iter().map(|s| (s.clone(), s.clone())).collect()
    }

    #[test]
    fn out_split_by_identity_is_the_higher_block_shift() {
        let p: ShiftPresentation = ForbiddenWords::parse(&["a", "b"], &["bb"]).unwrap().into();
        let f = identity(p.alphabet());
        let q = symbolic_out_split(&p, &f).unwrap().to_automaton();
        let mut labels: Vec<String> = q.alphabet().symbols().iter().map(|s| s.to_string()).collect();
        labels.sort();
        assert_eq!(labels, ["aa", "ab", "ba"]);
        assert!(q.is_deterministic());
    }

    #[test]
    fn in_split_of_one_letter_shift() {
        let p: ShiftPresentation = Automaton::from_edges(&["a"], &["1"], &[("1", "a", "1")])
            .unwrap()
            .into();
        let f: SymbolMap = [(sym("a"), sym("x"))].into();
        let q = symbolic_in_split(&p, &f).unwrap().to_automaton();
        assert_eq!((q.num_states(), q.num_edges()), (1, 1));
        assert_eq!(q.label_symbol(0), &sym("xa"));
    }

    #[test]
    fn clashing_concatenations_are_rejected() {
        let p: ShiftPresentation = ForbiddenWords::parse(&["a", "aa"], &[]).unwrap().into();
        let f = identity(p.alphabet());
        assert!(matches!(symbolic_out_split(&p, &f), Err(Error::Bijection(_))));
    }

    #[test]
    fn expanding_a_loop_gives_a_two_cycle() {
        let p: ShiftPresentation = Automaton::from_edges(&["a"], &["1"], &[("1", "a", "1")])
            .unwrap()
            .into();
        let q = symbol_expansion(&p, &sym("a")).unwrap().to_automaton();
        assert_eq!((q.num_states(), q.num_edges()), (2, 2));
        assert_eq!(q.alphabet().symbols()[1], sym("a#1"));
    }

    #[test]
    fn expansion_then_contraction_round_trips() {
        let even: ShiftPresentation = Automaton::from_edges(
            &["a", "b"],
            &["1", "2"],
            &[("1", "a", "1"), ("1", "b", "2"), ("2", "b", "1")],
        )
        .unwrap()
        .into();
        let x = symbol_expansion(&even, &sym("b")).unwrap();
        let back = symbol_contraction(&x, &sym("b"), &sym("b#1")).unwrap();
        assert!(block_languages_equal(&even.to_automaton(), &back.to_automaton()));

        let golden: ShiftPresentation = ForbiddenWords::parse(&["a", "b"], &["bb"]).unwrap().into();
        let x = symbol_expansion(&golden, &sym("a")).unwrap();
        assert!(matches!(x, ShiftPresentation::Forbidden(_)));
        let back = symbol_contraction(&x, &sym("a"), &sym("a#1")).unwrap();
        assert!(block_languages_equal(&golden.to_automaton(), &back.to_automaton()));
    }
}
