use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::subspace::{kernel, unit, Ambient, Subspace};
use super::LieError;
use crate::rational::{fmt_q, Q};

/// Element of the dual space, in the dual basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Covector {
    coords: Vec<Q>,
}

impl Covector {
    pub fn new(coords: Vec<Q>) -> Self {
        Covector { coords }
    }

    pub fn zero(n: usize) -> Self {
        Covector { coords: vec![Q::zero(); n] }
    }

    pub fn coords(&self) -> &[Q] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn pair(&self, v: &[Q]) -> Q {
        self.coords.iter().zip(v).map(|(a, b)| a * b).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &Covector) -> Covector {
        Covector::new(self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect())
    }

    pub fn scale(&self, c: &Q) -> Covector {
        Covector::new(self.coords.iter().map(|a| a * c).collect())
    }

    /// Coordinates of the restriction to `s` in the canonical basis of `s`.
    pub fn restrict(&self, s: &Subspace) -> Vec<Q> {
        s.rows().iter().map(|r| self.pair(r)).collect()
    }
}

impl fmt::Display for Covector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.coords.iter().map(fmt_q).collect::<Vec<_>>().join(","))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructureReport {
    pub antisymmetric: bool,
    pub jacobi: bool,
    pub nilpotent_class: Option<usize>,
}

/// Finite-dimensional algebra over the rationals given by structure constants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    labels: Vec<String>,
    structure: BTreeMap<(usize, usize), Vec<(usize, Q)>>,
    table: Vec<Vec<Vec<Q>>>,
    class: Option<usize>,
}

impl LieAlgebra {
    /// Builds from brackets `[e_i, e_j]` given for `i < j`; pairs not listed are zero.
    /// Jacobi is not enforced here; see [`LieAlgebra::structure_check`].
    pub fn from_brackets(labels: Vec<String>, brackets: BTreeMap<(usize, usize), Vec<Q>>) -> Result<Self, LieError> {
        let n = labels.len();
        if n == 0 {
            return Err(LieError::EmptyAlgebra);
        }
        let mut table = vec![vec![vec![Q::zero(); n]; n]; n];
        let mut structure = BTreeMap::new();
        for ((i, j), v) in brackets {
            if i >= j || j >= n {
                return Err(LieError::InvalidPair { i, j });
            }
            if v.len() != n {
                return Err(LieError::DimensionMismatch { expected: n, got: v.len() });
            }
            let sparse: Vec<(usize, Q)> =
                v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (k, c.clone())).collect();
            if sparse.is_empty() {
                continue;
            }
            table[j][i] = v.iter().map(|c| -c.clone()).collect();
            table[i][j] = v;
            structure.insert((i, j), sparse);
        }
        let mut alg = LieAlgebra { labels, structure, table, class: None };
        alg.class = alg.compute_class();
        Ok(alg)
    }

    /// Builds from a bilinear bracket given on basis pairs.
    pub fn from_fn(labels: Vec<String>, f: impl Fn(usize, usize) -> Vec<Q>) -> Result<Self, LieError> {
        let n = labels.len();
        let mut m = BTreeMap::new();
        for i in 0..n {
            for j in i + 1..n {
                m.insert((i, j), f(i, j));
            }
        }
        Self::from_brackets(labels, m)
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn structure(&self) -> &BTreeMap<(usize, usize), Vec<(usize, Q)>> {
        &self.structure
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Q> {
        unit(self.dim(), i)
    }

    fn check_len(&self, v: &[Q]) -> Result<(), LieError> {
        if v.len() == self.dim() {
            Ok(())
        } else {
            Err(LieError::DimensionMismatch { expected: self.dim(), got: v.len() })
        }
    }

    pub fn bracket(&self, u: &[Q], v: &[Q]) -> Result<Vec<Q>, LieError> {
        self.check_len(u)?;
        self.check_len(v)?;
        Ok(self.br(u, v))
    }

    pub(crate) fn br(&self, u: &[Q], v: &[Q]) -> Vec<Q> {
        let n = self.dim();
        let mut out = vec![Q::zero(); n];
        for (&(i, j), sparse) in &self.structure {
            let c = &u[i] * &v[j] - &u[j] * &v[i];
            if c.is_zero() {
                continue;
            }
            for (k, s) in sparse {
                out[*k] += &c * s;
            }
        }
        out
    }

    pub fn structure_check(&self) -> StructureReport {
        let n = self.dim();
        let antisymmetric = (0..n).all(|i| {
            self.table[i][i].iter().all(Zero::is_zero)
                && (0..n).all(|j| self.table[i][j].iter().zip(&self.table[j][i]).all(|(a, b)| (a + b).is_zero()))
        });
        StructureReport { antisymmetric, jacobi: self.jacobi_violation().is_none(), nilpotent_class: self.class }
    }

    /// First basis triple on which the Jacobi identity fails.
    pub fn jacobi_violation(&self) -> Option<(usize, usize, usize)> {
        let n = self.dim();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let (a, b, c) = (self.basis_vector(i), self.basis_vector(j), self.basis_vector(k));
                    let t1 = self.br(&a, &self.br(&b, &c));
                    let t2 = self.br(&b, &self.br(&c, &a));
                    let t3 = self.br(&c, &self.br(&a, &b));
                    if t1.iter().zip(&t2).zip(&t3).any(|((x, y), z)| !(x + y + z).is_zero()) {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    pub fn nilpotent_class(&self) -> Option<usize> {
        self.class
    }

    pub fn require_nilpotent(&self) -> Result<usize, LieError> {
        self.class.ok_or(LieError::NotNilpotent)
    }

    /// Span of all brackets `[u, v]` with `u ∈ a`, `v ∈ b`.
    pub fn bracket_space(&self, a: &Subspace, b: &Subspace) -> Subspace {
        let mut out = Vec::new();
        for u in a.rows() {
            for v in b.rows() {
                out.push(self.br(u, v));
            }
        }
        Subspace::span(Ambient::Algebra, self.dim(), out)
    }

    pub fn full(&self) -> Subspace {
        Subspace::full(Ambient::Algebra, self.dim())
    }

    pub fn span(&self, vectors: impl IntoIterator<Item = Vec<Q>>) -> Subspace {
        Subspace::span(Ambient::Algebra, self.dim(), vectors)
    }

    /// Spans the listed basis elements.
    pub fn span_basis(&self, idx: &[usize]) -> Subspace {
        self.span(idx.iter().map(|&i| self.basis_vector(i)))
    }

    /// `C¹ = [g, g]`, `C^{k+1} = [g, C^k]`, stopping once the sequence is stable.
    pub fn lower_central_series(&self) -> Vec<Subspace> {
        let g = self.full();
        let mut out = Vec::new();
        let mut cur = self.bracket_space(&g, &g);
        loop {
            out.push(cur.clone());
            if cur.dim() == 0 {
                break;
            }
            let next = self.bracket_space(&g, &cur);
            if next == cur {
                break;
            }
            cur = next;
        }
        out
    }

    fn compute_class(&self) -> Option<usize> {
        let lcs = self.lower_central_series();
        (lcs.last().map(Subspace::dim) == Some(0)).then_some(lcs.len())
    }

    /// Ascending central series `z1 ⊂ z2 ⊂ …` of the subalgebra `s`, computed inside `s`.
    pub fn upper_central_series_in(&self, s: &Subspace) -> Vec<Subspace> {
        let n = self.dim();
        let mut out: Vec<Subspace> = Vec::new();
        let mut cur = Subspace::zero(Ambient::Algebra, n);
        loop {
            // W ∈ s with [W, s] ⊆ cur.
            let ann = cur.orth();
            let mut conds = Vec::new();
            for b in s.rows() {
                for a in ann.rows() {
                    // functional W ↦ ⟨a, [W, b]⟩ expressed on the coordinates of W in s
                    conds.push(s.rows().iter().map(|r| dot(a, &self.br(r, b))).collect::<Vec<Q>>());
                }
            }
            let ker = kernel(&conds, s.dim());
            let next = Subspace::span(
                Ambient::Algebra,
                n,
                ker.iter().map(|c| combine(s.rows(), c)).chain(cur.rows().iter().cloned()),
            );
            if next == cur {
                break;
            }
            out.push(next.clone());
            if next == *s {
                break;
            }
            cur = next;
        }
        out
    }

    pub fn upper_central_series(&self) -> Vec<Subspace> {
        self.upper_central_series_in(&self.full())
    }

    pub fn center(&self) -> Subspace {
        self.upper_central_series().into_iter().next().unwrap_or_else(|| Subspace::zero(Ambient::Algebra, self.dim()))
    }

    pub fn is_subalgebra(&self, s: &Subspace) -> bool {
        s.contains_space(&self.bracket_space(s, s))
    }

    pub fn is_ideal(&self, s: &Subspace) -> bool {
        s.contains_space(&self.bracket_space(&self.full(), s))
    }

    /// Row k of the result is the covector coordinate k of `Z(x)` as a linear form in `x`:
    /// `Z(x)_k = Σ_l M[k][l] x_l` with `M[k][l] = [e_k, Z]_l`.
    pub fn coadjoint_matrix(&self, z: &[Q]) -> Vec<Vec<Q>> {
        (0..self.dim()).map(|k| self.br(&self.basis_vector(k), z)).collect()
    }

    /// The covector `W ↦ ⟨x, [W, Z]⟩`.
    pub fn coadjoint_vector(&self, z: &[Q], x: &Covector) -> Result<Covector, LieError> {
        self.check_len(z)?;
        self.check_len(x.coords())?;
        Ok(self.coadj(z, x))
    }

    pub(crate) fn coadj(&self, z: &[Q], x: &Covector) -> Covector {
        Covector::new((0..self.dim()).map(|k| x.pair(&self.br(&self.basis_vector(k), z))).collect())
    }

    /// `exp(Z)(x) = Σ Zⁿ(x)/n!`, a finite sum on a nilpotent algebra.
    pub fn exp_coadjoint(&self, z: &[Q], x: &Covector) -> Result<Covector, LieError> {
        self.check_len(z)?;
        self.check_len(x.coords())?;
        let class = self.require_nilpotent()?;
        let mut term = x.clone();
        let mut acc = x.clone();
        for n in 1..=class {
            term = self.coadj(z, &term).scale(&Q::from_integer(n.into()).recip());
            if term.is_zero() {
                break;
            }
            acc = acc.add(&term);
        }
        Ok(acc)
    }

    /// `{W : ⟨x, [W, Z]⟩ = 0 for all Z ∈ e}`.
    pub fn perp_at(&self, e: &Subspace, x: &Covector) -> Result<Subspace, LieError> {
        self.check_len(x.coords())?;
        if e.ambient_dim() != self.dim() || e.ambient() != Ambient::Algebra {
            return Err(LieError::DimensionMismatch { expected: self.dim(), got: e.ambient_dim() });
        }
        Ok(self.span(kernel(&self.image_at(e, x), self.dim())))
    }

    /// `⊥` computed inside the subalgebra `f`, i.e. `f ∩ perp_at(e, x)`.
    pub fn perp_within(&self, f: &Subspace, e: &Subspace, x: &Covector) -> Result<Subspace, LieError> {
        Ok(f.intersect(&self.perp_at(e, x)?))
    }

    /// The covectors `Z(x)` for the canonical basis `Z` of `e`.
    pub fn image_at(&self, e: &Subspace, x: &Covector) -> Vec<Vec<Q>> {
        e.rows().iter().map(|z| self.coadj(z, x).coords).collect()
    }

    /// Dimension of `e(x) = {Z(x) : Z ∈ e}`.
    pub fn image_dim(&self, e: &Subspace, x: &Covector) -> usize {
        Subspace::span(Ambient::Dual, self.dim(), self.image_at(e, x)).dim()
    }

    /// Stabilizer `g_x = perp_at(g, x)`.
    pub fn stabilizer(&self, x: &Covector) -> Result<Subspace, LieError> {
        self.perp_at(&self.full(), x)
    }

    /// Annihilator in the other space.
    pub fn orth(&self, s: &Subspace) -> Subspace {
        s.orth()
    }

    /// Linear combination of basis labels, e.g. `e1-e2` or `1/2*e3+e4`.
    pub fn format_vector(&self, v: &[Q]) -> String {
        let mut out = String::new();
        for (i, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push(if neg { '-' } else { '+' });
            }
            if !mag.is_one() {
                out.push_str(&fmt_q(&mag));
                out.push('*');
            }
            out.push_str(&self.labels[i]);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    /// The same algebra written in the basis `f_i = Σ_j new_basis[i][j] e_j`.
    pub fn in_basis(&self, new_basis: &[Vec<Q>]) -> Result<LieAlgebra, LieError> {
        let n = self.dim();
        let s = self.span(new_basis.iter().cloned());
        if new_basis.len() != n || !s.is_full() {
            return Err(LieError::DimensionMismatch { expected: n, got: s.dim() });
        }
        // coordinates of v in the f-basis: solve Σ c_i f_i = v
        let cols: Vec<Vec<Q>> = (0..n).map(|j| new_basis.iter().map(|f| f[j].clone()).collect()).collect();
        let coords = |v: &[Q]| crate::rational::solve_affine(&cols, v, n).map(|(c, _)| c).expect("basis is invertible");
        let labels = (1..=n).map(|i| format!("f{i}")).collect();
        LieAlgebra::from_fn(labels, |i, j| coords(&self.br(&new_basis[i], &new_basis[j])))
    }

    /// Serializes in the bracket-file format accepted by [`super::parse_algebra`].
    pub fn to_bracket_file(&self) -> String {
        let mut s = format!("dim {}\nbasis {}\n", self.dim(), self.labels.join(" "));
        for &(i, j) in self.structure.keys() {
            let v = &self.table[i][j];
            s.push_str(&format!("bracket {} {} -> {}\n", self.labels[i], self.labels[j], self.format_vector(v)));
        }
        s
    }
}

pub(crate) fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn combine(rows: &[Vec<Q>], c: &[Q]) -> Vec<Q> {
    let n = rows.first().map(Vec::len).unwrap_or(0);
    let mut out = vec![Q::zero(); n];
    for (ci, r) in c.iter().zip(rows) {
        for (o, x) in out.iter_mut().zip(r) {
            *o += ci * x;
        }
    }
    out
}
