use std::collections::BTreeMap;

/// Largest group for which a canonical multiplication table is attempted.
const CANONICAL_LIMIT: usize = 64;
/// Bound on the number of generator tuples tried when canonicalizing.
const TUPLE_LIMIT: usize = 20_000;

/// A finite group given by its multiplication table, with isomorphism
/// invariants and a name when it is recognized.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupDescriptor {
    pub order: usize,
    /// Orders of all elements, sorted.
    pub element_orders: Vec<usize>,
    /// Invariant factors `d1 | d2 | ...` (all > 1) when the group is abelian.
    pub abelian_invariants: Option<Vec<usize>>,
    pub name: Option<String>,
    /// Multiplication table; element 0 is the identity.
    pub table: Vec<Vec<usize>>,
    /// True when `table` is the canonical form, so that two canonical
    /// descriptors are isomorphic exactly when their tables are equal.
    pub canonical: bool,
}

impl GroupDescriptor {
    /// Builds the descriptor of the group with table `table` (indices into
    /// `0..n`) and identity `identity`.
    pub fn from_table(table: &[Vec<usize>], identity: usize) -> Self {
        let n = table.len();
        // Renumber so that the identity comes first.
        let mut perm: Vec<usize> = (0..n).collect();
        perm.swap(0, identity);
        let mut inv = vec![0; n];
        for (new, &old) in perm.iter().enumerate() {
            inv[old] = new;
        }
        let t: Vec<Vec<usize>> = (0..n)
            .map(|i| (0..n).map(|j| inv[table[perm[i]][perm[j]]]).collect())
            .collect();

        let orders: Vec<usize> = (0..n).map(|x| element_order(&t, x)).collect();
        let mut element_orders = orders.clone();
        element_orders.sort_unstable();
        let abelian = (0..n).all(|i| (0..n).all(|j| t[i][j] == t[j][i]));
        let abelian_invariants = abelian.then(|| invariant_factors(n, &orders));
        let name = match &abelian_invariants {
            Some(inv) if inv.is_empty() => Some("1".to_string()),
            Some(inv) => Some(
                inv.iter()
                    .map(|d| format!("Z/{d}"))
                    .collect::<Vec<_>>()
                    .join(" x "),
            ),
            None => nonabelian_name(n, &element_orders),
        };
        let (table, canonical) = match canonical_table(&t) {
            Some(c) => (c, true),
            None => (t, false),
        };
        GroupDescriptor {
            order: n,
            element_orders,
            abelian_invariants,
            name,
            table,
            canonical,
        }
    }

    /// The name, or a description by order when the group is not recognized.
    pub fn label(&self) -> String {
        self.name
            .clone()
            .unwrap_or_else(|| format!("nonabelian group of order {}", self.order))
    }

    pub fn is_isomorphic(&self, other: &GroupDescriptor) -> bool {
        if self.order != other.order
            || self.element_orders != other.element_orders
            || self.abelian_invariants != other.abelian_invariants
        {
            return false;
        }
        if self.abelian_invariants.is_some() {
            return true;
        }
        if self.canonical && other.canonical {
            return self.table == other.table;
        }
        isomorphic_tables(&self.table, &other.table)
    }
}

fn element_order(t: &[Vec<usize>], x: usize) -> usize {
    let mut k = 1;
    let mut y = x;
    while y != 0 {
        y = t[y][x];
        k += 1;
    }
    k
}

fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut ps = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            ps.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        ps.push(n);
    }
    ps
}

/// Invariant factors of an abelian group from its element orders. For each
/// prime `p`, the number of cyclic factors of order at least `p^k` is
/// `log_p |{x : x^(p^k) = 1}| - log_p |{x : x^(p^(k-1)) = 1}|`.
fn invariant_factors(n: usize, orders: &[usize]) -> Vec<usize> {
    let mut per_prime: Vec<Vec<usize>> = Vec::new();
    for p in prime_factors(n) {
        let mut logs = vec![0u32];
        let mut pk = 1;
        loop {
            pk *= p;
            let count = orders.iter().filter(|&&o| pk % o == 0).count();
            let log = (count as f64).log(p as f64).round() as u32;
            logs.push(log);
            if count == n || pk > n {
                break;
            }
        }
        // at_least[k] = number of cyclic factors of order >= p^k.
        let at_least: Vec<u32> = logs.windows(2).map(|w| w[1] - w[0]).collect();
        let mut powers = Vec::new();
        for (k, &c) in at_least.iter().enumerate() {
            let next = at_least.get(k + 1).copied().unwrap_or(0);
            for _ in 0..c - next {
                powers.push(p.pow(k as u32 + 1));
            }
        }
        powers.sort_unstable_by(|a, b| b.cmp(a));
        per_prime.push(powers);
    }
    let len = per_prime.iter().map(|v| v.len()).max().unwrap_or(0);
    let mut factors: Vec<usize> = (0..len)
        .map(|i| per_prime.iter().filter_map(|v| v.get(i)).product())
        .collect();
    factors.sort_unstable();
    factors
}

fn nonabelian_name(n: usize, orders: &[usize]) -> Option<String> {
    let involutions = orders.iter().filter(|&&o| o == 2).count();
    match (n, involutions) {
        (6, _) => Some("S3".into()),
        (8, 5) => Some("D4".into()),
        (8, 1) => Some("Q8".into()),
        _ => None,
    }
}

/// Elements generated by `gens`, in breadth-first order from the identity.
fn generated_order(t: &[Vec<usize>], gens: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; t.len()];
    let mut order = vec![0];
    seen[0] = true;
    let mut head = 0;
    while head < order.len() {
        let x = order[head];
        for &g in gens {
            let y = t[x][g];
            if !seen[y] {
                seen[y] = true;
                order.push(y);
            }
        }
        head += 1;
    }
    order
}

fn min_generating_size(t: &[Vec<usize>]) -> usize {
    let n = t.len();
    if n == 1 {
        return 0;
    }
    // Greedy upper bound, then exhaustive search below it.
    let mut gens = Vec::new();
    while generated_order(t, &gens).len() < n {
        let have = generated_order(t, &gens);
        let g = (0..n).find(|x| !have.contains(x)).unwrap();
        gens.push(g);
    }
    let mut best = gens.len();
    for k in 1..best {
        if tuples(n, k).any(|tuple| generated_order(t, &tuple).len() == n) {
            best = k;
            break;
        }
    }
    best
}

fn tuples(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = n.checked_pow(k as u32).unwrap_or(usize::MAX);
    (0..total).map(move |mut code| {
        let mut v = Vec::with_capacity(k);
        for _ in 0..k {
            v.push(code % n);
            code /= n;
        }
        v
    })
}

/// The lexicographically least table obtained by numbering elements in
/// breadth-first order from a minimal generating tuple.
fn canonical_table(t: &[Vec<usize>]) -> Option<Vec<Vec<usize>>> {
    let n = t.len();
    if n > CANONICAL_LIMIT {
        return None;
    }
    let k = min_generating_size(t);
    if n.checked_pow(k as u32).is_none_or(|c| c > TUPLE_LIMIT) {
        return None;
    }
    let mut best: Option<Vec<Vec<usize>>> = None;
    for tuple in tuples(n, k) {
        let order = generated_order(t, &tuple);
        if order.len() != n {
            continue;
        }
        let mut pos = vec![0; n];
        for (i, &x) in order.iter().enumerate() {
            pos[x] = i;
        }
        let table: Vec<Vec<usize>> = order
            .iter()
            .map(|&x| order.iter().map(|&y| pos[t[x][y]]).collect())
            .collect();
        if best.as_ref().is_none_or(|b| table < *b) {
            best = Some(table);
        }
    }
    best.or_else(|| Some(t.to_vec()))
}

/// Isomorphism by mapping a generating set and extending multiplicatively.
fn isomorphic_tables(a: &[Vec<usize>], b: &[Vec<usize>]) -> bool {
    let n = a.len();
    if n != b.len() {
        return false;
    }
    let mut gens = Vec::new();
    while generated_order(a, &gens).len() < n {
        let have = generated_order(a, &gens);
        gens.push((0..n).find(|x| !have.contains(x)).unwrap());
    }
    let oa: Vec<usize> = (0..n).map(|x| element_order(a, x)).collect();
    let ob: Vec<usize> = (0..n).map(|x| element_order(b, x)).collect();
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&g| (0..n).filter(|&y| ob[y] == oa[g]).collect())
        .collect();
    let mut choice = vec![0; gens.len()];
    fn try_extend(a: &[Vec<usize>], b: &[Vec<usize>], gens: &[usize], images: &[usize]) -> bool {
        let n = a.len();
        let mut map: BTreeMap<usize, usize> = BTreeMap::new();
        map.insert(0, 0);
        let mut queue = vec![0];
        while let Some(x) = queue.pop() {
            let fx = map[&x];
            for (g, &h) in gens.iter().zip(images) {
                let y = a[x][*g];
                let fy = b[fx][h];
                match map.get(&y) {
                    Some(&v) if v != fy => return false,
                    Some(_) => {}
                    None => {
                        map.insert(y, fy);
                        queue.push(y);
                    }
                }
            }
        }
        if map.len() != n {
            return false;
        }
        let mut hit = vec![false; n];
        for &v in map.values() {
            if hit[v] {
                return false;
            }
            hit[v] = true;
        }
        (0..n).all(|x| (0..n).all(|y| map[&a[x][y]] == b[map[&x]][map[&y]]))
    }
    loop {
        let images: Vec<usize> = choice
            .iter()
            .zip(&candidates)
            .map(|(&c, cand)| cand[c])
            .collect();
        if candidates.iter().all(|c| !c.is_empty()) && try_extend(a, b, &gens, &images) {
            return true;
        }
        // Next combination.
        let mut i = 0;
        loop {
            if i == choice.len() {
                return false;
            }
            if candidates[i].is_empty() {
                return false;
            }
            choice[i] += 1;
            if choice[i] < candidates[i].len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyclic(n: usize) -> Vec<Vec<usize>> {
        (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect()
    }

    fn product(a: &[Vec<usize>], b: &[Vec<usize>]) -> Vec<Vec<usize>> {
        let (n, m) = (a.len(), b.len());
        (0..n * m)
            .map(|x| {
                (0..n * m)
                    .map(|y| a[x / m][y / m] * m + b[x % m][y % m])
                    .collect()
            })
            .collect()
    }

    fn s3() -> Vec<Vec<usize>> {
        let perms: Vec<[usize; 3]> = vec![
            [0, 1, 2],
            [1, 0, 2],
            [0, 2, 1],
            [2, 1, 0],
            [1, 2, 0],
            [2, 0, 1],
        ];
        let idx = |p: [usize; 3]| perms.iter().position(|&q| q == p).unwrap();
        perms
            .iter()
            .map(|p| {
                perms
                    .iter()
                    .map(|q| idx([q[p[0]], q[p[1]], q[p[2]]]))
                    .collect()
            })
            .collect()
    }

    #[test]
    fn names_of_abelian_groups() {
        assert_eq!(GroupDescriptor::from_table(&cyclic(1), 0).label(), "1");
        assert_eq!(GroupDescriptor::from_table(&cyclic(2), 0).label(), "Z/2");
        assert_eq!(GroupDescriptor::from_table(&cyclic(6), 0).label(), "Z/6");
        let g = GroupDescriptor::from_table(&product(&cyclic(2), &cyclic(4)), 0);
        assert_eq!(g.label(), "Z/2 x Z/4");
        let g = GroupDescriptor::from_table(&product(&cyclic(2), &cyclic(3)), 0);
        assert_eq!(g.label(), "Z/6");
        let g = GroupDescriptor::from_table(&product(&cyclic(2), &cyclic(2)), 0);
        assert_eq!(g.label(), "Z/2 x Z/2");
    }

    #[test]
    fn nonabelian_groups() {
        let g = GroupDescriptor::from_table(&s3(), 0);
        assert_eq!(g.label(), "S3");
        assert!(g.canonical);
        assert!(!g.is_isomorphic(&GroupDescriptor::from_table(&cyclic(6), 0)));
        // A relabeled copy is isomorphic.
        let t = s3();
        let perm = [0, 5, 3, 4, 1, 2];
        let mut inv = [0; 6];
        for (i, &p) in perm.iter().enumerate() {
            inv[p] = i;
        }
        let u: Vec<Vec<usize>> = (0..6)
            .map(|i| (0..6).map(|j| inv[t[perm[i]][perm[j]]]).collect())
            .collect();
        let h = GroupDescriptor::from_table(&u, 0);
        assert!(g.is_isomorphic(&h));
        assert_eq!(g.table, h.table);
        assert!(isomorphic_tables(&t, &u));
    }

    #[test]
    fn identity_need_not_be_first() {
        let t = cyclic(3);
        let perm = [2, 0, 1];
        let mut inv = [0; 3];
        for (i, &p) in perm.iter().enumerate() {
            inv[p] = i;
        }
        let u: Vec<Vec<usize>> = (0..3)
            .map(|i| (0..3).map(|j| inv[t[perm[i]][perm[j]]]).collect())
            .collect();
        assert_eq!(GroupDescriptor::from_table(&u, inv[0]).label(), "Z/3");
    }
}
