use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::graph::Graph;
use crate::matrix::CountMatrix;

/// A finitely generated abelian group as `Z/d1 x ... x Z/dk` with
/// `d1 | d2 | ... | dk`, each `di != 1`. A factor 0 stands for `Z` and
/// sorts last.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbelianGroupInvariants(pub Vec<BigInt>);

impl AbelianGroupInvariants {
    pub fn is_trivial(&self) -> bool {
        self.0.is_empty()
    }

    pub fn rank(&self) -> usize {
        self.0.iter().filter(|d| d.is_zero()).count()
    }
}

impl fmt::Display for AbelianGroupInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|d| if d.is_zero() { "Z".to_string() } else { format!("Z/{d}") })
            .collect();
        write!(f, "{}", parts.join(" x "))
    }
}

/// The Bowen-Franks group `Z^n / Z^n (I - M)` and `det(I - M)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BowenFranks {
    pub group: AbelianGroupInvariants,
    pub determinant: BigInt,
}

fn identity_minus(m: &CountMatrix) -> Vec<Vec<BigInt>> {
    let n = m.rows();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let d = if i == j { BigInt::one() } else { BigInt::zero() };
                    d - BigInt::from(m.get(i, j))
                })
                .collect()
        })
        .collect()
}

pub fn bowen_franks(m: &CountMatrix) -> BowenFranks {
    let a = identity_minus(m);
    BowenFranks {
        determinant: determinant(&a),
        group: smith_normal_form(a),
    }
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn determinant(a: &[Vec<BigInt>]) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut m = a.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Invariant factors of the cokernel of an integer matrix (rows are the
/// relations), computed by Smith normal form.
pub fn smith_normal_form(mut a: Vec<Vec<BigInt>>) -> AbelianGroupInvariants {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut diagonal = Vec::new();
    for k in 0..rows.min(cols) {
        // Pivot on the smallest nonzero entry of the remaining block.
        loop {
            let pivot = (k..rows)
                .flat_map(|i| (k..cols).map(move |j| (i, j)))
                .filter(|&(i, j)| !a[i][j].is_zero())
                .min_by(|&(i, j), &(p, q)| a[i][j].abs().cmp(&a[p][q].abs()));
            let Some((pi, pj)) = pivot else {
                break;
            };
            a.swap(k, pi);
            for row in a.iter_mut() {
                row.swap(k, pj);
            }
            let mut clean = true;
            for i in k + 1..rows {
                let q = a[i][k].div_floor(&a[k][k]);
                if !q.is_zero() {
                    for j in k..cols {
                        let v = &q * &a[k][j];
                        a[i][j] -= v;
                    }
                }
                clean &= a[i][k].is_zero();
            }
            for j in k + 1..cols {
                let q = a[k][j].div_floor(&a[k][k]);
                if !q.is_zero() {
                    for row in a.iter_mut().skip(k) {
                        let v = &q * &row[k];
                        row[j] -= v;
                    }
                }
                clean &= a[k][j].is_zero();
            }
            if !clean {
                continue;
            }
            // The pivot must divide the rest of the block; otherwise fold
            // an offending row into row k and repeat.
            let offending = (k + 1..rows).find(|&i| {
                (k + 1..cols).any(|j| !(&a[i][j] % &a[k][k]).is_zero())
            });
            match offending {
                Some(i) => {
                    for j in k..cols {
                        let v = a[i][j].clone();
                        a[k][j] += v;
                    }
                }
                None => break,
            }
        }
        diagonal.push(a[k][k].abs());
    }
    // Relations beyond the rank leave free summands.
    let zeros = cols - diagonal.iter().filter(|d| !d.is_zero()).count();
    let mut factors: Vec<BigInt> = diagonal
        .into_iter()
        .filter(|d| !d.is_zero() && !d.is_one())
        .collect();
    factors.sort();
    factors.extend(std::iter::repeat_n(BigInt::zero(), zeros));
    AbelianGroupInvariants(factors)
}

/// Outcome of the flow-equivalence test for irreducible edge shifts.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FlowVerdict {
    Equivalent,
    NotEquivalent,
    /// One of the graphs is not essential and strongly connected.
    OutOfScope,
}

impl fmt::Display for FlowVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FlowVerdict::Equivalent => "equivalent",
            FlowVerdict::NotEquivalent => "not-equivalent",
            FlowVerdict::OutOfScope => "out-of-theorem-scope",
        })
    }
}

/// Flow equivalence of two irreducible edge shifts. Nontrivial graphs are
/// equivalent iff their Bowen-Franks groups and `det(I - M)` agree; single
/// cycles are equivalent to each other and to nothing else.
pub fn franks_flow_equivalent(g1: &Graph, g2: &Graph) -> FlowVerdict {
    let in_scope = |g: &Graph| !g.is_empty() && g.is_strongly_connected() && g.is_essential();
    if !in_scope(g1) || !in_scope(g2) {
        return FlowVerdict::OutOfScope;
    }
    match (g1.is_trivial(), g2.is_trivial()) {
        (true, true) => FlowVerdict::Equivalent,
        (false, false) => {
            if bowen_franks(&g1.adjacency()) == bowen_franks(&g2.adjacency()) {
                FlowVerdict::Equivalent
            } else {
                FlowVerdict::NotEquivalent
            }
        }
        _ => FlowVerdict::NotEquivalent,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: Vec<Vec<u64>>) -> CountMatrix {
        CountMatrix::from_rows(rows).unwrap()
    }

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_bowen_franks_groups() {
        let bf = bowen_franks(&m(vec![vec![4, 1], vec![1, 0]]));
        assert_eq!(bf.group.to_string(), "Z/4");
        assert_eq!(bf.determinant, BigInt::from(-4));
        let bf = bowen_franks(&m(vec![vec![1]]));
        assert_eq!(bf.group.to_string(), "Z");
        assert_eq!(bf.determinant, BigInt::zero());
        let bf = bowen_franks(&m(vec![vec![2]]));
        assert!(bf.group.is_trivial());
        assert_eq!(bf.determinant, BigInt::from(-1));
    }

    #[test]
    fn snf_orders_factors_by_divisibility() {
        let g = smith_normal_form(vec![big(&[2, 0]), big(&[0, 3])]);
        assert_eq!(g.to_string(), "Z/6");
        let g = smith_normal_form(vec![big(&[2, 0, 0]), big(&[0, 4, 0]), big(&[0, 0, 0])]);
        assert_eq!(g.to_string(), "Z/2 x Z/4 x Z");
        assert_eq!(g.rank(), 1);
    }

    #[test]
    fn determinant_with_row_swaps() {
        let a = vec![big(&[0, 1, 2]), big(&[1, 0, 3]), big(&[4, -3, 8])];
        assert_eq!(determinant(&a), BigInt::from(-2));
    }

    #[test]
    fn franks_verdicts() {
        let g = |rows| Graph::from_matrix(&m(rows)).unwrap();
        let c2 = g(vec![vec![0, 1], vec![1, 0]]);
        let c3 = g(vec![vec![0, 1, 0], vec![0, 0, 1], vec![1, 0, 0]]);
        assert_eq!(franks_flow_equivalent(&c2, &c3), FlowVerdict::Equivalent);
        let five = g(vec![vec![5]]);
        let two = g(vec![vec![2]]);
        assert_eq!(franks_flow_equivalent(&five, &two), FlowVerdict::NotEquivalent);
        assert_eq!(franks_flow_equivalent(&c2, &two), FlowVerdict::NotEquivalent);
        let reducible = g(vec![vec![1, 1], vec![0, 1]]);
        assert_eq!(franks_flow_equivalent(&reducible, &two), FlowVerdict::OutOfScope);
    }
}
