use crate::automata::{krieger_of, Automaton, ShiftPresentation};
use crate::error::{Error, Result};
use crate::graph::strongly_connected_components;
use crate::matrix::CountMatrix;

const MAX_ITERATIONS: usize = 10_000;
const TOLERANCE: f64 = 1e-12;

/// Topological entropy in natural-log units.
pub fn entropy(p: &ShiftPresentation) -> Result<f64> {
    entropy_of(&p.to_automaton())
}

/// Entropy of the shift presented by `a`: the log of the spectral radius of
/// its Krieger cover, which is right-resolving and so has the same growth
/// rate of words.
pub fn entropy_of(a: &Automaton) -> Result<f64> {
    let cover = krieger_of(a)?;
    let m = cover.automaton.essential_part().graph().adjacency();
    if m.rows() == 0 {
        return Err(Error::EmptyShift);
    }
    Ok(spectral_radius(&m).ln())
}

/// Perron value of a nonnegative square matrix: the largest spectral radius
/// over its irreducible diagonal blocks.
pub fn spectral_radius(m: &CountMatrix) -> f64 {
    let n = m.rows();
    let succ: Vec<Vec<usize>> = (0..n)
        .map(|i| (0..n).filter(|&j| m.get(i, j) > 0).collect())
        .collect();
    strongly_connected_components(&succ)
        .iter()
        .map(|comp| block_radius(m, comp))
        .fold(0.0, f64::max)
}

/// Power iteration on `B + I` for the irreducible block `B` on `comp`. Adding
/// the identity makes the block primitive, and the Collatz-Wielandt bounds
/// `min (Bx)_i / x_i <= rho <= max (Bx)_i / x_i` give a stopping rule.
fn block_radius(m: &CountMatrix, comp: &[usize]) -> f64 {
    let k = comp.len();
    let b: Vec<Vec<f64>> = comp
        .iter()
        .map(|&i| comp.iter().map(|&j| m.get(i, j) as f64).collect())
        .collect();
    if b.iter().all(|row| row.iter().all(|&x| x == 0.0)) {
        return 0.0;
    }
    let mut x = vec![1.0; k];
    let mut estimate = 0.0;
    for _ in 0..MAX_ITERATIONS {
        let y: Vec<f64> = (0..k)
            .map(|i| x[i] + (0..k).map(|j| b[i][j] * x[j]).sum::<f64>())
            .collect();
        let ratios = y.iter().zip(&x).map(|(a, b)| a / b);
        let (lo, hi) = ratios.fold((f64::INFINITY, 0.0f64), |(lo, hi), r| (lo.min(r), hi.max(r)));
        estimate = (lo + hi) / 2.0;
        let norm = y.iter().cloned().fold(0.0, f64::max);
        x = y.iter().map(|v| v / norm).collect();
        if hi - lo <= TOLERANCE * hi {
            break;
        }
    }
    estimate - 1.0
}
