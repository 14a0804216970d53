use std::collections::BTreeSet;

use super::HarmonicError;

/// Finite group given by its multiplication table on indices `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    table: Vec<Vec<usize>>,
    inv: Vec<usize>,
    identity: usize,
    /// Moduli when the group is `Z/n1 × … × Z/nk` with mixed-radix indexing.
    shape: Option<Vec<usize>>,
}

impl FiniteGroup {
    /// Validates closure, associativity, identity and inverses.
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Self, HarmonicError> {
        let n = table.len();
        if n == 0 {
            return Err(HarmonicError::InvalidGroup("empty table".into()));
        }
        if table.iter().any(|row| row.len() != n || row.iter().any(|&v| v >= n)) {
            return Err(HarmonicError::InvalidGroup(format!("table is not {n}×{n} with entries below {n}")));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|g| table[e][g] == g && table[g][e] == g))
            .ok_or_else(|| HarmonicError::InvalidGroup("no identity".into()))?;
        let mut inv = vec![0; n];
        for g in 0..n {
            inv[g] = (0..n)
                .find(|&h| table[g][h] == identity && table[h][g] == identity)
                .ok_or_else(|| HarmonicError::InvalidGroup(format!("element {g} has no inverse")))?;
        }
        for a in 0..n {
            for b in 0..n {
                let ab = table[a][b];
                for c in 0..n {
                    if table[ab][c] != table[a][table[b][c]] {
                        return Err(HarmonicError::InvalidGroup(format!("associativity fails at ({a}, {b}, {c})")));
                    }
                }
            }
        }
        Ok(FiniteGroup { table, inv, identity, shape: None })
    }

    fn from_closure(elements: usize, mul: impl Fn(usize, usize) -> usize) -> Self {
        let table = (0..elements).map(|a| (0..elements).map(|b| mul(a, b)).collect()).collect();
        FiniteGroup::from_table(table).expect("constructed groups satisfy the axioms")
    }

    /// Text format: a line `order N`, then `N` lines of `N` zero-based indices.
    /// Blank lines and lines starting with `#` are ignored.
    pub fn from_text(text: &str) -> Result<Self, HarmonicError> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines.next().ok_or_else(|| HarmonicError::Parse("missing `order N` line".into()))?;
        let n: usize = header
            .strip_prefix("order")
            .and_then(|s| s.trim().parse().ok())
            .ok_or_else(|| HarmonicError::Parse(format!("expected `order N`, got `{header}`")))?;
        let table: Vec<Vec<usize>> = lines
            .map(|l| {
                l.split_whitespace()
                    .map(|t| t.parse().map_err(|_| HarmonicError::Parse(format!("bad index `{t}`"))))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<_, _>>()?;
        if table.len() != n {
            return Err(HarmonicError::Parse(format!("expected {n} rows, found {}", table.len())));
        }
        FiniteGroup::from_table(table)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("order {}\n", self.order());
        for row in &self.table {
            let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            s.push_str(&cells.join(" "));
            s.push('\n');
        }
        s
    }

    pub fn cyclic(n: usize) -> Self {
        FiniteGroup::abelian(&[n])
    }

    /// `Z/n1 × … × Z/nk`; element `(a1, …, ak)` has index `a1 + n1·(a2 + n2·(…))`.
    pub fn abelian(moduli: &[usize]) -> Self {
        assert!(moduli.iter().all(|&m| m > 0), "moduli must be positive");
        let order: usize = moduli.iter().product();
        let mut g = FiniteGroup::from_closure(order, |a, b| {
            let (da, db) = (digits(a, moduli), digits(b, moduli));
            let sum: Vec<usize> = da.iter().zip(&db).zip(moduli).map(|((x, y), m)| (x + y) % m).collect();
            undigits(&sum, moduli)
        });
        g.shape = Some(moduli.to_vec());
        g
    }

    /// Direct product; `(a, b)` has index `a + |A|·b`.
    pub fn product(a: &FiniteGroup, b: &FiniteGroup) -> Self {
        let na = a.order();
        let mut g = FiniteGroup::from_closure(na * b.order(), |x, y| a.mul(x % na, y % na) + na * b.mul(x / na, y / na));
        if let (Some(sa), Some(sb)) = (&a.shape, &b.shape) {
            g.shape = Some(sa.iter().chain(sb).copied().collect());
        }
        g
    }

    /// Symmetric group on `n` letters, permutations in lexicographic order,
    /// composed as functions: `(σ·τ)(i) = σ(τ(i))`.
    pub fn symmetric(n: usize) -> Self {
        let perms = permutations(n);
        let index = |p: &Vec<usize>| perms.binary_search(p).expect("permutation is listed");
        FiniteGroup::from_closure(perms.len(), |a, b| {
            let c: Vec<usize> = (0..n).map(|i| perms[a][perms[b][i]]).collect();
            index(&c)
        })
    }

    /// Dihedral group of order `2n`: `r^k s^e` has index `k + n·e`.
    pub fn dihedral(n: usize) -> Self {
        FiniteGroup::from_closure(2 * n, |a, b| {
            let (k1, e1, k2, e2) = (a % n, a / n, b % n, b / n);
            // s r^k = r^{−k} s
            let k = if e1 == 0 { (k1 + k2) % n } else { (k1 + n - k2) % n };
            k + n * ((e1 + e2) % 2)
        })
    }

    /// Quaternion group `{±1, ±i, ±j, ±k}`, indexed `1, i, j, k, −1, −i, −j, −k`.
    pub fn quaternion() -> Self {
        // unit products among 1, i, j, k as (sign flip, unit)
        const UNIT: [[(usize, usize); 4]; 4] = [
            [(0, 0), (0, 1), (0, 2), (0, 3)],
            [(0, 1), (1, 0), (0, 3), (1, 2)],
            [(0, 2), (1, 3), (1, 0), (0, 1)],
            [(0, 3), (0, 2), (1, 1), (1, 0)],
        ];
        FiniteGroup::from_closure(8, |a, b| {
            let (s, u) = UNIT[a % 4][b % 4];
            u + 4 * ((a / 4 + b / 4 + s) % 2)
        })
    }

    /// Upper unitriangular 3×3 matrices over `Z/p`: `(a, b, c)` is the matrix with
    /// `a` and `b` on the superdiagonal and `c` in the corner, index `a + p·b + p²·c`.
    pub fn heisenberg(p: usize) -> Self {
        let split = |x: usize| (x % p, (x / p) % p, x / (p * p));
        FiniteGroup::from_closure(p * p * p, |x, y| {
            let ((a1, b1, c1), (a2, b2, c2)) = (split(x), split(y));
            (a1 + a2) % p + p * ((b1 + b2) % p) + p * p * ((c1 + c2 + a1 * b2) % p)
        })
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn shape(&self) -> Option<&[usize]> {
        self.shape.as_deref()
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order()).all(|a| (0..a).all(|b| self.table[a][b] == self.table[b][a]))
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    /// Subgroup generated by `gens`, as a sorted index list.
    pub fn generated(&self, gens: &[usize]) -> Vec<usize> {
        let mut set: BTreeSet<usize> = BTreeSet::from([self.identity]);
        let mut frontier = vec![self.identity];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if set.insert(y) {
                    frontier.push(y);
                }
            }
        }
        set.into_iter().collect()
    }

    /// A generating set of the subgroup `h`, chosen greedily in index order.
    pub fn generators_of(&self, h: &[usize]) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = vec![self.identity];
        for &x in h {
            if span.binary_search(&x).is_err() {
                gens.push(x);
                span = self.generated(&gens);
            }
        }
        gens
    }

    pub fn generators(&self) -> Vec<usize> {
        let all: Vec<usize> = (0..self.order()).collect();
        self.generators_of(&all)
    }

    pub fn is_subgroup(&self, h: &[usize]) -> bool {
        let set: BTreeSet<usize> = h.iter().copied().collect();
        set.contains(&self.identity) && h.iter().all(|&a| set.contains(&self.inv(a)) && h.iter().all(|&b| set.contains(&self.mul(a, b))))
    }

    pub(crate) fn require_subgroup(&self, h: &[usize]) -> Result<Vec<usize>, HarmonicError> {
        let mut sorted = h.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.iter().any(|&x| x >= self.order()) || !self.is_subgroup(&sorted) {
            return Err(HarmonicError::NotSubgroup);
        }
        Ok(sorted)
    }

    /// Center of the group.
    pub fn center(&self) -> Vec<usize> {
        (0..self.order()).filter(|&z| (0..self.order()).all(|g| self.mul(z, g) == self.mul(g, z))).collect()
    }

    /// Left cosets `gH` of a subgroup, each sorted, listed by smallest element.
    pub fn left_cosets(&self, h: &[usize]) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.order()];
        let mut out = Vec::new();
        for g in 0..self.order() {
            if seen[g] {
                continue;
            }
            let mut coset: Vec<usize> = h.iter().map(|&x| self.mul(g, x)).collect();
            coset.sort_unstable();
            for &x in &coset {
                seen[x] = true;
            }
            out.push(coset);
        }
        out
    }

    /// Double cosets `HaK`, each represented by its smallest element.
    pub fn double_cosets(&self, h: &[usize], k: &[usize]) -> Vec<(usize, Vec<usize>)> {
        let mut seen = vec![false; self.order()];
        let mut out = Vec::new();
        for a in 0..self.order() {
            if seen[a] {
                continue;
            }
            let set: BTreeSet<usize> = h.iter().flat_map(|&x| k.iter().map(move |&y| (x, y))).map(|(x, y)| self.mul(self.mul(x, a), y)).collect();
            for &x in &set {
                seen[x] = true;
            }
            out.push((a, set.into_iter().collect()));
        }
        out
    }

    /// All subgroups, found as closures of subsets of generators; practical for orders below 100.
    pub fn subgroups(&self) -> Vec<Vec<usize>> {
        let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut frontier = vec![vec![self.identity]];
        found.insert(vec![self.identity]);
        while let Some(h) = frontier.pop() {
            for g in 0..self.order() {
                if h.binary_search(&g).is_ok() {
                    continue;
                }
                let mut gens = self.generators_of(&h);
                gens.push(g);
                let bigger = self.generated(&gens);
                if found.insert(bigger.clone()) {
                    frontier.push(bigger);
                }
            }
        }
        let mut out: Vec<Vec<usize>> = found.into_iter().collect();
        out.sort_by_key(|h| (h.len(), h.clone()));
        out
    }
}

pub(crate) fn digits(mut x: usize, moduli: &[usize]) -> Vec<usize> {
    moduli
        .iter()
        .map(|m| {
            let d = x % m;
            x /= m;
            d
        })
        .collect()
}

fn undigits(d: &[usize], moduli: &[usize]) -> usize {
    d.iter().zip(moduli).rev().fold(0, |acc, (x, m)| acc * m + x)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut cur: Vec<usize> = (0..n).collect();
    let mut out = vec![cur.clone()];
    loop {
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).expect("a larger entry exists");
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
}
