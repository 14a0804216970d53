use std::fmt;

use num_traits::Zero;
use serde::Serialize;

use crate::rational::{fmt_q, rref_in_place, solve_affine, Q};

/// Which side of the pairing a subspace lives on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Ambient {
    Algebra,
    Dual,
}

impl Ambient {
    pub fn flip(self) -> Ambient {
        match self {
            Ambient::Algebra => Ambient::Dual,
            Ambient::Dual => Ambient::Algebra,
        }
    }
}

/// A subspace stored by the reduced row-echelon form of a spanning set, so that
/// equal subspaces compare equal structurally.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: Ambient,
    n: usize,
    rows: Vec<Vec<Q>>,
}

impl Subspace {
    pub fn span<I>(ambient: Ambient, n: usize, vectors: I) -> Subspace
    where
        I: IntoIterator<Item = Vec<Q>>,
    {
        let mut rows: Vec<Vec<Q>> = vectors.into_iter().inspect(|v| assert_eq!(v.len(), n)).collect();
        let pivots = rref_in_place(&mut rows, n);
        rows.truncate(pivots.len());
        Subspace { ambient, n, rows }
    }

    pub fn zero(ambient: Ambient, n: usize) -> Subspace {
        Subspace { ambient, n, rows: Vec::new() }
    }

    pub fn full(ambient: Ambient, n: usize) -> Subspace {
        Subspace::span(ambient, n, (0..n).map(|i| unit(n, i)))
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<Q>] {
        &self.rows
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.n
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.iter().position(|x| !x.is_zero()).unwrap()).collect()
    }

    /// Coordinates of `v` in the canonical basis, if `v` lies in the subspace.
    pub fn coords(&self, v: &[Q]) -> Option<Vec<Q>> {
        let c: Vec<Q> = self.pivots().iter().map(|&p| v[p].clone()).collect();
        let mut r = v.to_vec();
        for (ci, row) in c.iter().zip(&self.rows) {
            for (x, y) in r.iter_mut().zip(row) {
                *x -= ci * y;
            }
        }
        r.iter().all(Zero::is_zero).then_some(c)
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        v.len() == self.n && self.coords(v).is_some()
    }

    pub fn contains_space(&self, other: &Subspace) -> bool {
        other.rows.iter().all(|r| self.contains(r))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        Subspace::span(self.ambient, self.n, self.rows.iter().chain(&other.rows).cloned())
    }

    /// Annihilator under the standard pairing, living on the other side.
    pub fn orth(&self) -> Subspace {
        Subspace::span(self.ambient.flip(), self.n, kernel(&self.rows, self.n))
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        let ann: Vec<Vec<Q>> = self.orth().rows.into_iter().chain(other.orth().rows).collect();
        Subspace::span(self.ambient, self.n, kernel(&ann, self.n))
    }

    /// Extends the canonical basis of `self` to a basis of `sup` using canonical rows of `sup`.
    pub fn extension_in(&self, sup: &Subspace) -> Vec<Vec<Q>> {
        let mut cur = self.clone();
        let mut extra = Vec::new();
        for r in &sup.rows {
            if !cur.contains(r) {
                cur = cur.sum(&Subspace::span(self.ambient, self.n, [r.clone()]));
                extra.push(r.clone());
            }
        }
        extra
    }
}

pub(crate) fn unit(n: usize, i: usize) -> Vec<Q> {
    let mut v = vec![Q::zero(); n];
    v[i] = num_traits::One::one();
    v
}

/// Basis of `{v : r·v = 0 for all rows r}`.
pub(crate) fn kernel(rows: &[Vec<Q>], n: usize) -> Vec<Vec<Q>> {
    let zeros = vec![Q::zero(); rows.len()];
    solve_affine(rows, &zeros, n).map(|(_, k)| k).unwrap_or_default()
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> =
            self.rows.iter().map(|r| format!("({})", r.iter().map(fmt_q).collect::<Vec<_>>().join(","))).collect();
        write!(f, "span[{}]", rows.join(", "))
    }
}
