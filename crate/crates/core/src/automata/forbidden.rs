use super::{Automaton, ForbiddenWords};
use crate::graph::{Edge, Graph};

/// The automaton whose states are the allowed words of length `n`, the
/// longest forbidden length, with an edge `u -b-> v` whenever `v` is the
/// suffix of `ub`. It is deterministic and `(n, 0)`-local, and presents
/// the shift avoiding the forbidden words. The essential part is returned.
pub fn presentation_from_forbidden(f: &ForbiddenWords) -> Automaton {
    let alphabet = f.alphabet().clone();
    let k = alphabet.len();
    let n = f.words().iter().map(|w| w.len()).max().unwrap_or(0);
    let allowed = |w: &[usize]| {
        !f.words()
            .iter()
            .any(|bad| bad.len() <= w.len() && w.windows(bad.len()).any(|x| x == bad.as_slice()))
    };

    let mut words: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..n {
        words = words
            .iter()
            .flat_map(|w| {
                (0..k).map(move |a| {
                    let mut v = w.clone();
                    v.push(a);
                    v
                })
            })
            .collect();
    }
    words.retain(|w| allowed(w));
    let index: std::collections::HashMap<&[usize], usize> = words
        .iter()
        .enumerate()
        .map(|(i, w)| (w.as_slice(), i))
        .collect();

    let names = words
        .iter()
        .map(|w| {
            if w.is_empty() {
                "ε".to_string()
            } else {
                alphabet.format_word(w)
            }
        })
        .collect();
    let mut edges = Vec::new();
    let mut labels = Vec::new();
    for (i, w) in words.iter().enumerate() {
        for b in 0..k {
            let mut next: Vec<usize> = w.iter().skip(1).copied().collect();
            if n > 0 {
                next.push(b);
            }
            if let Some(&j) = index.get(next.as_slice()) {
                edges.push(Edge {
                    id: format!("e{}", edges.len() + 1),
                    src: i,
                    dst: j,
                });
                labels.push(b);
            }
        }
    }
    let graph = Graph::new(names, edges).expect("fresh names are distinct");
    Automaton::new(graph, labels, alphabet)
        .expect("labels in range")
        .essential_part()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_shift_when_nothing_is_forbidden() {
        let f = ForbiddenWords::parse(&["a", "b"], &[]).unwrap();
        let a = presentation_from_forbidden(&f);
        assert_eq!(a.num_states(), 1);
        assert_eq!(a.num_edges(), 2);
    }

    #[test]
    fn golden_mean_presentation() {
        let f = ForbiddenWords::parse(&["a", "b"], &["bb"]).unwrap();
        let a = presentation_from_forbidden(&f);
        assert!(a.is_deterministic());
        assert_eq!(a.states(), &["aa", "ab", "ba"]);
    }

    #[test]
    fn short_words_forbid_their_extensions() {
        let f = ForbiddenWords::parse(&["a", "b"], &["b", "aa"]).unwrap();
        // Only aa-free words avoiding b: the shift is empty.
        assert!(presentation_from_forbidden(&f).is_empty());
    }
}
