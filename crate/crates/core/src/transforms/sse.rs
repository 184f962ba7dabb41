use std::fmt;

use super::split::{graph_split, labeled_split, Orientation, SplitSpec};
use crate::automata::Automaton;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::matrix::{
    format_polynomial, matrix_product, relabel, AlphabeticMatrix, CountMatrix, WordBijection,
};
use crate::symbol::{Alphabet, Symbol};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SseKind {
    Integer,
    Symbolic,
}

impl fmt::Display for SseKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SseKind::Integer => "integer",
            SseKind::Symbolic => "symbolic",
        })
    }
}

/// One elementary equivalence `M = RS`, `M' = SR`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerStep {
    pub r: CountMatrix,
    pub s: CountMatrix,
}

/// One symbolic elementary equivalence `M <-> RS`, `M' <-> SR`: the
/// products are read through bijections from two-symbol words to symbols.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolicStep {
    pub r: AlphabeticMatrix,
    pub s: AlphabeticMatrix,
    pub rs: WordBijection,
    pub sr: WordBijection,
}

/// A chain of elementary equivalences from `start` to `end`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SseCertificate {
    Integer {
        start: CountMatrix,
        end: CountMatrix,
        steps: Vec<IntegerStep>,
    },
    Symbolic {
        start: AlphabeticMatrix,
        end: AlphabeticMatrix,
        steps: Vec<SymbolicStep>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SseVerdict {
    Valid { steps: usize },
    /// `step` is 1-based; 0 refers to an empty chain.
    Invalid { step: usize, reason: String },
}

impl SseVerdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, SseVerdict::Valid { .. })
    }
}

impl fmt::Display for SseVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SseVerdict::Valid { steps: 1 } => write!(f, "valid, 1 step"),
            SseVerdict::Valid { steps } => write!(f, "valid, {steps} steps"),
            SseVerdict::Invalid { step, reason } => write!(f, "invalid at step {step}: {reason}"),
        }
    }
}

impl SseCertificate {
    pub fn kind(&self) -> SseKind {
        match self {
            SseCertificate::Integer { .. } => SseKind::Integer,
            SseCertificate::Symbolic { .. } => SseKind::Symbolic,
        }
    }

    pub fn len(&self) -> usize {
        match self {
            SseCertificate::Integer { steps, .. } => steps.len(),
            SseCertificate::Symbolic { steps, .. } => steps.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Appends `next`, which must start where this chain ends.
    pub fn then(self, next: SseCertificate) -> Result<SseCertificate> {
        match (self, next) {
            (
                SseCertificate::Integer { start, end, mut steps },
                SseCertificate::Integer { start: s2, end: e2, steps: t2 },
            ) if end == s2 => {
                steps.extend(t2);
                Ok(SseCertificate::Integer { start, end: e2, steps })
            }
            (
                SseCertificate::Symbolic { start, end, mut steps },
                SseCertificate::Symbolic { start: s2, end: e2, steps: t2 },
            ) if end == s2 => {
                steps.extend(t2);
                Ok(SseCertificate::Symbolic { start, end: e2, steps })
            }
            _ => Err(Error::Precondition(
                "certificates do not chain: kinds or endpoints differ".into(),
            )),
        }
    }
}

fn count_difference(expected: &CountMatrix, found: &CountMatrix) -> Option<String> {
    if (expected.rows(), expected.cols()) != (found.rows(), found.cols()) {
        return Some(format!(
            "dimension mismatch: expected {}x{}, found {}x{}",
            expected.rows(),
            expected.cols(),
            found.rows(),
            found.cols()
        ));
    }
    (0..expected.rows())
        .flat_map(|i| (0..expected.cols()).map(move |j| (i, j)))
        .find(|&(i, j)| expected.get(i, j) != found.get(i, j))
        .map(|(i, j)| {
            format!(
                "entry ({}, {}): expected {}, found {}",
                i + 1,
                j + 1,
                expected.get(i, j),
                found.get(i, j)
            )
        })
}

fn alphabetic_difference(expected: &AlphabeticMatrix, found: &AlphabeticMatrix) -> Option<String> {
    if (expected.rows(), expected.cols()) != (found.rows(), found.cols()) {
        return Some(format!(
            "dimension mismatch: expected {}x{}, found {}x{}",
            expected.rows(),
            expected.cols(),
            found.rows(),
            found.cols()
        ));
    }
    expected.first_difference(found).map(|(i, j)| {
        format!(
            "entry ({}, {}): expected {}, found {}",
            i + 1,
            j + 1,
            format_polynomial(expected.get(i, j)),
            format_polynomial(found.get(i, j))
        )
    })
}

/// Checks every step of a certificate: `M_{i-1} = R_i S_i` and
/// `M_i = S_i R_i` (through the bijections for symbolic steps), with
/// `M_0` the start and `M_n` the end matrix.
pub fn verify_sse(cert: &SseCertificate) -> SseVerdict {
    let invalid = |step: usize, reason: String| SseVerdict::Invalid { step, reason };
    match cert {
        SseCertificate::Integer { start, end, steps } => {
            let mut m = start.clone();
            for (k, step) in steps.iter().enumerate() {
                let rs = match step.r.mul(&step.s) {
                    Ok(p) => p,
                    Err(e) => return invalid(k + 1, e.to_string()),
                };
                if let Some(d) = count_difference(&m, &rs) {
                    return invalid(k + 1, format!("R S does not match the matrix: {d}"));
                }
                m = match step.s.mul(&step.r) {
                    Ok(p) => p,
                    Err(e) => return invalid(k + 1, e.to_string()),
                };
            }
            match count_difference(end, &m) {
                Some(d) => invalid(steps.len(), format!("chain does not reach the end matrix: {d}")),
                None => SseVerdict::Valid { steps: steps.len() },
            }
        }
        SseCertificate::Symbolic { start, end, steps } => {
            let mut m = start.clone();
            for (k, step) in steps.iter().enumerate() {
                let rs = matrix_product(&step.r, &step.s).and_then(|p| relabel(&p, &step.rs));
                let rs = match rs {
                    Ok(p) => p,
                    Err(e) => return invalid(k + 1, format!("R S: {e}")),
                };
                if let Some(d) = alphabetic_difference(&m, &rs) {
                    return invalid(k + 1, format!("R S does not match the matrix: {d}"));
                }
                m = match matrix_product(&step.s, &step.r).and_then(|p| relabel(&p, &step.sr)) {
                    Ok(p) => p,
                    Err(e) => return invalid(k + 1, format!("S R: {e}")),
                };
            }
            match alphabetic_difference(end, &m) {
                Some(d) => invalid(steps.len(), format!("chain does not reach the end matrix: {d}")),
                None => SseVerdict::Valid { steps: steps.len() },
            }
        }
    }
}

/// The one-step certificate of a graph split: `R = E, S = D` for an
/// in-split and `R = D, S = E` for an out-split.
pub fn graph_split_certificate(g: &Graph, spec: &SplitSpec<CountMatrix>) -> Result<SseCertificate> {
    let h = graph_split(g, spec)?;
    let (r, s) = match spec.orientation {
        Orientation::In => (spec.factor.clone(), spec.division.clone()),
        Orientation::Out => (spec.division.clone(), spec.factor.clone()),
    };
    Ok(SseCertificate::Integer {
        start: g.adjacency(),
        end: h.result.adjacency(),
        steps: vec![IntegerStep { r, s }],
    })
}

/// The one-step symbolic certificate of a labeled split. The division
/// matrix is written with a fresh symbol `δ` and the bijections erase it.
pub fn labeled_split_certificate(
    a: &Automaton,
    spec: &SplitSpec<AlphabeticMatrix>,
) -> Result<SseCertificate> {
    let b = labeled_split(a, spec)?;
    let symbols = Alphabet::from_symbols(spec.factor.symbols().into_iter().collect())?;
    let delta = symbols.fresh("d");
    let d = &spec.division;
    let mut dl = AlphabeticMatrix::zeros(d.rows(), d.cols());
    for i in 0..d.rows() {
        for j in 0..d.cols() {
            dl.add_term(i, j, delta.clone(), d.get(i, j));
        }
    }
    let left = |x: &Symbol| ((delta.clone(), x.clone()), x.clone());
    let right = |x: &Symbol| ((x.clone(), delta.clone()), x.clone());
    let erase_right: WordBijection = symbols.symbols().iter().map(right).collect();
    let erase_left: WordBijection = symbols.symbols().iter().map(left).collect();
    let step = match spec.orientation {
        Orientation::In => SymbolicStep {
            r: spec.factor.clone(),
            s: dl,
            rs: erase_right,
            sr: erase_left,
        },
        Orientation::Out => SymbolicStep {
            r: dl,
            s: spec.factor.clone(),
            rs: erase_left,
            sr: erase_right,
        },
    };
    Ok(SseCertificate::Symbolic {
        start: a.adjacency(),
        end: b.result.adjacency(),
        steps: vec![step],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbol::sym;

    fn cm(rows: Vec<Vec<u64>>) -> CountMatrix {
        CountMatrix::from_rows(rows).unwrap()
    }

    fn conjugate_sofic() -> SseCertificate {
        let a = AlphabeticMatrix::parse(&[&["a+b", "c"], &["c", "0"]]).unwrap();
        let b = AlphabeticMatrix::parse(&[&["d", "e+f"], &["f", "g"]]).unwrap();
        let bij = |pairs: &[(&str, &str, &str)]| -> WordBijection {
            pairs.iter().map(|(x, y, z)| ((sym(x), sym(y)), sym(z))).collect()
        };
        SseCertificate::Symbolic {
            start: a,
            end: b,
            steps: vec![SymbolicStep {
                r: AlphabeticMatrix::parse(&[&["x", "y"], &["0", "x"]]).unwrap(),
                s: AlphabeticMatrix::parse(&[&["z", "t"], &["t", "0"]]).unwrap(),
                rs: bij(&[("x", "z", "a"), ("y", "t", "b"), ("x", "t", "c")]),
                sr: bij(&[("z", "x", "d"), ("z", "y", "e"), ("t", "x", "f"), ("t", "y", "g")]),
            }],
        }
    }

    #[test]
    fn symbolic_certificate_is_valid() {
        assert_eq!(verify_sse(&conjugate_sofic()), SseVerdict::Valid { steps: 1 });
        assert_eq!(verify_sse(&conjugate_sofic()).to_string(), "valid, 1 step");
    }

    #[test]
    fn corrupted_bijection_is_located() {
        let mut c = conjugate_sofic();
        if let SseCertificate::Symbolic { steps, .. } = &mut c {
            steps[0].sr.insert((sym("t"), sym("y")), sym("d"));
        }
        let v = verify_sse(&c);
        assert!(matches!(v, SseVerdict::Invalid { step: 1, .. }), "{v}");
    }

    #[test]
    fn integer_split_certificate() {
        let e = cm(vec![vec![2, 0, 1], vec![1, 1, 0]]);
        let d = cm(vec![vec![1, 0], vec![1, 0], vec![0, 1]]);
        let g = Graph::from_matrix(&cm(vec![vec![2, 1], vec![2, 0]])).unwrap();
        let cert = graph_split_certificate(&g, &SplitSpec::new(Orientation::In, d.clone(), e.clone()))
            .unwrap();
        assert!(verify_sse(&cert).is_valid());
        // Transposing S breaks the first step.
        let bad = SseCertificate::Integer {
            start: g.adjacency(),
            end: d.mul(&e).unwrap(),
            steps: vec![IntegerStep { r: e, s: d.transpose() }],
        };
        assert!(matches!(verify_sse(&bad), SseVerdict::Invalid { step: 1, .. }));
    }

    #[test]
    fn labeled_split_certificates_chain() {
        let a = Automaton::from_edges(
            &["a", "b", "c"],
            &["1", "2"],
            &[("1", "a", "1"), ("1", "c", "1"), ("1", "b", "2"), ("2", "a", "1")],
        )
        .unwrap();
        let d = cm(vec![vec![1, 0], vec![1, 0], vec![0, 1]]);
        let n = AlphabeticMatrix::parse(&[&["a+c", "0", "b"], &["0", "a", "0"]]).unwrap();
        let spec = SplitSpec::new(Orientation::In, d, n);
        let first = labeled_split_certificate(&a, &spec).unwrap();
        assert!(verify_sse(&first).is_valid());
        let b = labeled_split(&a, &spec).unwrap().result;
        let out = SplitSpec::new(
            Orientation::Out,
            cm(vec![vec![1, 1, 0], vec![0, 0, 1]]),
            AlphabeticMatrix::parse(&[&["a", "b"], &["c", "0"], &["a", "0"]]).unwrap(),
        );
        let second = labeled_split_certificate(&a, &out).unwrap();
        assert!(verify_sse(&second).is_valid());
        assert!(first.clone().then(second).is_err());
        let back = SseCertificate::Symbolic {
            start: b.adjacency(),
            end: b.adjacency(),
            steps: vec![],
        };
        assert_eq!(verify_sse(&first.then(back).unwrap()), SseVerdict::Valid { steps: 1 });
    }
}
