use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::symbol::Symbol;

/// A matrix of nonnegative integers, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CountMatrix {
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl CountMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CountMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<u64>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Ok(CountMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<u64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> CountMatrix {
        let mut t = CountMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, other: &CountMatrix) -> Result<CountMatrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = CountMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = a
                        .checked_mul(other.get(k, j))
                        .and_then(|p| p.checked_add(out.get(i, j)))
                        .ok_or(Error::Overflow)?;
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn trace(&self) -> u64 {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).sum()
    }

    /// `trace(M^k)` for `k = 1..=n`, computed in 128-bit arithmetic.
    pub fn trace_powers(&self, n: usize) -> Result<Vec<u128>> {
        if !self.is_square() {
            return Err(Error::Dimension("trace of a non-square matrix".into()));
        }
        let d = self.rows;
        let base: Vec<u128> = self.data.iter().map(|&x| x as u128).collect();
        let mut power = base.clone();
        let mut traces = Vec::with_capacity(n);
        for k in 1..=n {
            if k > 1 {
                let mut next = vec![0u128; d * d];
                for i in 0..d {
                    for l in 0..d {
                        let a = power[i * d + l];
                        if a == 0 {
                            continue;
                        }
                        for j in 0..d {
                            let v = a
                                .checked_mul(base[l * d + j])
                                .and_then(|p| p.checked_add(next[i * d + j]))
                                .ok_or(Error::Overflow)?;
                            next[i * d + j] = v;
                        }
                    }
                }
                power = next;
            }
            let mut t: u128 = 0;
            for i in 0..d {
                t = t.checked_add(power[i * d + i]).ok_or(Error::Overflow)?;
            }
            traces.push(t);
        }
        Ok(traces)
    }

    /// Simultaneous row and column permutation: entry `(i, j)` of the result
    /// is entry `(perm[i], perm[j])` of `self`.
    pub fn permuted(&self, perm: &[usize]) -> CountMatrix {
        let mut out = CountMatrix::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(perm[i], perm[j]));
            }
        }
        out
    }
}

impl fmt::Display for CountMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.rows)
            .map(|i| {
                let cells: Vec<String> = self.row(i).iter().map(|v| v.to_string()).collect();
                format!("[{}]", cells.join(","))
            })
            .collect();
        write!(f, "[{}]", rows.join(","))
    }
}

/// A homogeneous polynomial of degree one: symbol -> coefficient. Zero
/// coefficients are never stored.
pub type Polynomial = BTreeMap<Symbol, u64>;

/// A homogeneous polynomial of degree two over words of two symbols.
pub type Quadratic = BTreeMap<(Symbol, Symbol), u64>;

/// Parses `0`, `a`, `2*a`, `a+c+2*b` (whitespace around `+` allowed).
pub fn parse_polynomial(text: &str) -> Result<Polynomial> {
    let mut poly = Polynomial::new();
    let text = text.trim();
    if text == "0" {
        return Ok(poly);
    }
    for term in text.split('+') {
        let term = term.trim();
        let (coef, name) = match term.split_once('*') {
            Some((c, n)) => (
                c.trim()
                    .parse::<u64>()
                    .map_err(|_| Error::InvalidSymbol(term.to_string()))?,
                n.trim(),
            ),
            None => (1, term),
        };
        let symbol = Symbol::new(name)?;
        if coef > 0 {
            *poly.entry(symbol).or_insert(0) += coef;
        }
    }
    Ok(poly)
}

fn format_terms<K, F>(entry: &BTreeMap<K, u64>, name: F) -> String
where
    F: Fn(&K) -> String,
{
    if entry.is_empty() {
        return "0".into();
    }
    entry
        .iter()
        .map(|(k, &c)| {
            if c == 1 {
                name(k)
            } else {
                format!("{c}*{}", name(k))
            }
        })
        .collect::<Vec<_>>()
        .join("+")
}

pub fn format_polynomial(p: &Polynomial) -> String {
    format_terms(p, |s| s.to_string())
}

pub fn format_quadratic(q: &Quadratic) -> String {
    format_terms(q, |(a, b)| format!("{a}{b}"))
}

/// A matrix whose entries are degree-one polynomials over symbols.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlphabeticMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Polynomial>,
}

impl AlphabeticMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        AlphabeticMatrix {
            rows,
            cols,
            data: vec![Polynomial::new(); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<Polynomial>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        let data = rows
            .into_iter()
            .flatten()
            .map(|mut p| {
                p.retain(|_, c| *c > 0);
                p
            })
            .collect();
        Ok(AlphabeticMatrix {
            rows: r,
            cols: c,
            data,
        })
    }

    /// Convenience constructor from entry strings such as `"a+c"` or `"0"`.
    pub fn parse(rows: &[&[&str]]) -> Result<Self> {
        let parsed = rows
            .iter()
            .map(|row| row.iter().map(|e| parse_polynomial(e)).collect())
            .collect::<Result<Vec<Vec<_>>>>()?;
        Self::from_rows(parsed)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial {
        &self.data[i * self.cols + j]
    }

    pub fn add_term(&mut self, i: usize, j: usize, s: Symbol, c: u64) {
        if c > 0 {
            *self.data[i * self.cols + j].entry(s).or_insert(0) += c;
        }
    }

    pub fn to_rows(&self) -> Vec<Vec<Polynomial>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).clone()).collect())
            .collect()
    }

    pub fn symbols(&self) -> BTreeSet<Symbol> {
        self.data.iter().flat_map(|p| p.keys().cloned()).collect()
    }

    /// Sums coefficients entrywise.
    pub fn forget_labels(&self) -> CountMatrix {
        let mut m = CountMatrix::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j).values().sum());
            }
        }
        m
    }

    /// `self * d` for an integer matrix `d`.
    pub fn mul_count(&self, d: &CountMatrix) -> Result<AlphabeticMatrix> {
        if self.cols != d.rows() {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows,
                self.cols,
                d.rows(),
                d.cols()
            )));
        }
        let mut out = AlphabeticMatrix::zeros(self.rows, d.cols());
        for i in 0..self.rows {
            for k in 0..self.cols {
                for j in 0..d.cols() {
                    let c = d.get(k, j);
                    if c == 0 {
                        continue;
                    }
                    for (s, &v) in self.get(i, k) {
                        out.add_term(i, j, s.clone(), v * c);
                    }
                }
            }
        }
        Ok(out)
    }

    /// `d * self` for an integer matrix `d`.
    pub fn count_mul(d: &CountMatrix, n: &AlphabeticMatrix) -> Result<AlphabeticMatrix> {
        if d.cols() != n.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                d.rows(),
                d.cols(),
                n.rows,
                n.cols
            )));
        }
        let mut out = AlphabeticMatrix::zeros(d.rows(), n.cols);
        for i in 0..d.rows() {
            for k in 0..d.cols() {
                let c = d.get(i, k);
                if c == 0 {
                    continue;
                }
                for j in 0..n.cols {
                    for (s, &v) in n.get(k, j) {
                        out.add_term(i, j, s.clone(), v * c);
                    }
                }
            }
        }
        Ok(out)
    }

    /// First entry where the two matrices differ, if any.
    pub fn first_difference(&self, other: &AlphabeticMatrix) -> Option<(usize, usize)> {
        if self.rows != other.rows || self.cols != other.cols {
            return Some((0, 0));
        }
        (0..self.rows)
            .flat_map(|i| (0..self.cols).map(move |j| (i, j)))
            .find(|&(i, j)| self.get(i, j) != other.get(i, j))
    }
}

impl fmt::Display for AlphabeticMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.rows)
            .map(|i| {
                let cells: Vec<String> = (0..self.cols)
                    .map(|j| format_polynomial(self.get(i, j)))
                    .collect();
                format!("[{}]", cells.join(","))
            })
            .collect();
        write!(f, "[{}]", rows.join(","))
    }
}

/// A matrix whose entries are degree-two polynomials, i.e. formal sums of
/// two-symbol words. Produced by [`matrix_product`] and turned back into an
/// [`AlphabeticMatrix`] only through [`relabel`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Quadratic>,
}

impl QuadraticMatrix {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Quadratic {
        &self.data[i * self.cols + j]
    }

    pub fn words(&self) -> BTreeSet<(Symbol, Symbol)> {
        self.data.iter().flat_map(|q| q.keys().cloned()).collect()
    }

    pub fn forget_labels(&self) -> CountMatrix {
        let mut m = CountMatrix::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j).values().sum());
            }
        }
        m
    }
}

impl fmt::Display for QuadraticMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.rows)
            .map(|i| {
                let cells: Vec<String> = (0..self.cols)
                    .map(|j| format_quadratic(self.get(i, j)))
                    .collect();
                format!("[{}]", cells.join(","))
            })
            .collect();
        write!(f, "[{}]", rows.join(","))
    }
}

/// The product of two alphabetic matrices. Entry `(p, r)` is the sum over
/// `q` of the products of entries, each product a sum of two-symbol words.
pub fn matrix_product(a: &AlphabeticMatrix, b: &AlphabeticMatrix) -> Result<QuadraticMatrix> {
    if a.cols != b.rows {
        return Err(Error::Dimension(format!(
            "cannot multiply {}x{} by {}x{}",
            a.rows, a.cols, b.rows, b.cols
        )));
    }
    let mut data = vec![Quadratic::new(); a.rows * b.cols];
    for i in 0..a.rows {
        for k in 0..a.cols {
            for j in 0..b.cols {
                for (x, &cx) in a.get(i, k) {
                    for (y, &cy) in b.get(k, j) {
                        *data[i * b.cols + j]
                            .entry((x.clone(), y.clone()))
                            .or_insert(0) += cx * cy;
                    }
                }
            }
        }
    }
    Ok(QuadraticMatrix {
        rows: a.rows,
        cols: b.cols,
        data,
    })
}

/// A bijection from two-symbol words to symbols.
pub type WordBijection = BTreeMap<(Symbol, Symbol), Symbol>;

/// Checks that `bij` is injective.
pub fn check_bijection(bij: &WordBijection) -> Result<()> {
    let mut seen: HashMap<&Symbol, &(Symbol, Symbol)> = HashMap::new();
    for (w, s) in bij {
        if let Some(prev) = seen.insert(s, w) {
            return Err(Error::Bijection(format!(
                "{}{} and {}{} both map to {s}",
                prev.0, prev.1, w.0, w.1
            )));
        }
    }
    Ok(())
}

/// Substitutes each two-symbol word of `m` by its image under `bij`.
pub fn relabel(m: &QuadraticMatrix, bij: &WordBijection) -> Result<AlphabeticMatrix> {
    check_bijection(bij)?;
    let mut out = AlphabeticMatrix::zeros(m.rows, m.cols);
    for i in 0..m.rows {
        for j in 0..m.cols {
            for (w, &c) in m.get(i, j) {
                let s = bij.get(w).ok_or_else(|| {
                    Error::Bijection(format!("no image for word {}{}", w.0, w.1))
                })?;
                out.add_term(i, j, s.clone(), c);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbol::sym;

    fn conjugate_pair() -> (AlphabeticMatrix, AlphabeticMatrix) {
        let r = AlphabeticMatrix::parse(&[&["x", "y"], &["0", "x"]]).unwrap();
        let s = AlphabeticMatrix::parse(&[&["z", "t"], &["t", "0"]]).unwrap();
        (r, s)
    }

    fn bij(pairs: &[(&str, &str, &str)]) -> WordBijection {
        pairs
            .iter()
            .map(|(a, b, c)| ((sym(a), sym(b)), sym(c)))
            .collect()
    }

    #[test]
    fn products_of_symbolic_matrices() {
        let (r, s) = conjugate_pair();
        let rs = matrix_product(&r, &s).unwrap();
        assert_eq!(rs.to_string(), "[[xz+yt,xt],[xt,0]]");
        let sr = matrix_product(&s, &r).unwrap();
        assert_eq!(sr.to_string(), "[[zx,tx+zy],[tx,ty]]");
    }

    #[test]
    fn relabeling_products() {
        let (r, s) = conjugate_pair();
        let rs = matrix_product(&r, &s).unwrap();
        let m = relabel(&rs, &bij(&[("x", "z", "a"), ("y", "t", "b"), ("x", "t", "c")])).unwrap();
        assert_eq!(m, AlphabeticMatrix::parse(&[&["a+b", "c"], &["c", "0"]]).unwrap());
        let sr = matrix_product(&s, &r).unwrap();
        let m = relabel(
            &sr,
            &bij(&[("z", "x", "d"), ("z", "y", "e"), ("t", "x", "f"), ("t", "y", "g")]),
        )
        .unwrap();
        assert_eq!(m, AlphabeticMatrix::parse(&[&["d", "e+f"], &["f", "g"]]).unwrap());
        assert_eq!(m.forget_labels(), sr.forget_labels());
    }

    #[test]
    fn relabel_rejects_bad_bijections() {
        let (r, s) = conjugate_pair();
        let rs = matrix_product(&r, &s).unwrap();
        assert!(relabel(&rs, &bij(&[("x", "z", "a"), ("y", "t", "b")])).is_err());
        assert!(relabel(&rs, &bij(&[("x", "z", "a"), ("y", "t", "a"), ("x", "t", "c")])).is_err());
    }

    #[test]
    fn product_with_zero_is_zero() {
        let (r, _) = conjugate_pair();
        let z = AlphabeticMatrix::zeros(2, 2);
        let p = matrix_product(&r, &z).unwrap();
        assert!(p.words().is_empty());
    }

    #[test]
    fn trace_powers_of_golden_mean() {
        let m = CountMatrix::from_rows(vec![vec![1, 1], vec![1, 0]]).unwrap();
        assert_eq!(m.trace_powers(4).unwrap(), vec![1, 3, 4, 7]);
    }

    #[test]
    fn polynomial_round_trip() {
        let p = parse_polynomial("a + 2*b+c").unwrap();
        assert_eq!(format_polynomial(&p), "a+2*b+c");
        assert!(parse_polynomial("0").unwrap().is_empty());
    }
}
