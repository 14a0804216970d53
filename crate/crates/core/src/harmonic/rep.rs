use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::Serialize;

use super::state::gram_matrix;
use super::{Character, FiniteGroup, HarmonicError, StateSample};

const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };

/// Representation given by one matrix per group element.
#[derive(Clone, Debug)]
pub struct UnitaryRep {
    action: Vec<DMatrix<Complex64>>,
    dim: usize,
}

impl UnitaryRep {
    pub fn new(action: Vec<DMatrix<Complex64>>, dim: usize) -> Self {
        UnitaryRep { action, dim }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self, g: usize) -> &DMatrix<Complex64> {
        &self.action[g]
    }

    pub fn matrices(&self) -> &[DMatrix<Complex64>] {
        &self.action
    }

    /// Largest deviation from `ρ(a)ρ(b) = ρ(ab)` and `ρ(a)*ρ(a) = 1`.
    pub fn defect(&self, group: &FiniteGroup) -> f64 {
        let id = DMatrix::<Complex64>::identity(self.dim, self.dim);
        let mut worst: f64 = 0.0;
        for a in 0..group.order() {
            worst = worst.max((self.action[a].adjoint() * &self.action[a] - &id).norm());
            for b in 0..group.order() {
                worst = worst.max((&self.action[a] * &self.action[b] - &self.action[group.mul(a, b)]).norm());
            }
        }
        worst
    }

    /// Left regular representation on `C[G]`.
    pub fn regular(group: &FiniteGroup) -> Self {
        let n = group.order();
        let action = (0..n).map(|a| DMatrix::from_fn(n, n, |i, j| if group.mul(a, j) == i { ONE } else { Complex64::default() })).collect();
        UnitaryRep { action, dim: n }
    }
}

/// GNS module of a state: the group algebra modulo the Gram null space.
#[derive(Clone, Debug)]
pub struct GnsModule {
    pub rep: UnitaryRep,
    /// Class of `δ^e`.
    pub cyclic: DVector<Complex64>,
    /// Class of `δ^g` for every `g`, as columns.
    classes: DMatrix<Complex64>,
    /// Gram eigenvalues kept, matching the coordinates.
    eigenvalues: Vec<f64>,
}

impl GnsModule {
    pub fn dim(&self) -> usize {
        self.rep.dim()
    }

    /// `sup_g |m(g) − (e_e, g·e_e)|`.
    pub fn reconstruction_error(&self, m: &StateSample) -> f64 {
        let e = &self.cyclic;
        (0..m.group().order()).map(|g| (m.value(g) - e.dotc(&(self.rep.matrix(g) * e))).norm()).fold(0.0, f64::max)
    }
}

/// Hermitian eigenvalues sorted descending, with eigenvectors as matching columns.
fn sorted_eigen(h: DMatrix<Complex64>) -> (Vec<f64>, DMatrix<Complex64>) {
    let eig = h.symmetric_eigen();
    let mut idx: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    idx.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    let vals = idx.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vecs = DMatrix::from_fn(eig.eigenvectors.nrows(), idx.len(), |r, c| eig.eigenvectors[(r, idx[c])]);
    (vals, vecs)
}

/// GNS construction; eigenvalues below `tol · λ_max` are treated as null.
pub fn gns_finite(m: &StateSample, tol: f64) -> Result<GnsModule, HarmonicError> {
    let group = m.group();
    let n = group.order();
    let all: Vec<usize> = (0..n).collect();
    let (vals, vecs) = sorted_eigen(gram_matrix(m, &all));
    let top = vals[0];
    let min = *vals.last().expect("nonempty spectrum");
    if min < -tol.max(1e-10) * top.max(1.0) {
        return Err(HarmonicError::NotPositive(min));
    }
    let rank = vals.iter().take_while(|&&v| v > tol * top).count();
    // class of δ^g has coordinates √λ_k · conj(V_{gk}), so that (u_g, u_h) = m(g⁻¹h)
    let classes = DMatrix::from_fn(rank, n, |k, g| vecs[(g, k)].conj() * vals[k].sqrt());
    let action = (0..n)
        .map(|a| {
            DMatrix::from_fn(rank, rank, |k, l| {
                (0..n).map(|g| classes[(k, group.mul(a, g))] * classes[(l, g)].conj()).sum::<Complex64>() / vals[l]
            })
        })
        .collect();
    let cyclic = classes.column(group.identity()).into_owned();
    Ok(GnsModule { rep: UnitaryRep::new(action, rank), cyclic, classes, eigenvalues: vals[..rank].to_vec() })
}

/// Induced representation on `{f : f(gh) = conj χ(h) f(g)}` with the coset `ℓ²` norm,
/// in the basis `f_i` supported on the coset `r_i H` with `f_i(r_i) = 1`.
#[derive(Clone, Debug)]
pub struct InducedRep {
    pub rep: UnitaryRep,
    pub coset_reps: Vec<usize>,
    /// `f_0`, supported on `H` itself; its state is `χ•`.
    pub cyclic: DVector<Complex64>,
}

impl InducedRep {
    pub fn dim(&self) -> usize {
        self.rep.dim()
    }
}

pub fn ind_discrete(group: &FiniteGroup, chi: &Character) -> InducedRep {
    let h = chi.subgroup();
    let mut cosets = group.left_cosets(h);
    let home = cosets.iter().position(|c| c.binary_search(&group.identity()).is_ok()).expect("identity lies in some coset");
    cosets.swap(0, home);
    let reps: Vec<usize> = cosets.iter().enumerate().map(|(i, c)| if i == 0 { group.identity() } else { c[0] }).collect();
    let mut coset_of = vec![0; group.order()];
    for (i, c) in cosets.iter().enumerate() {
        for &x in c {
            coset_of[x] = i;
        }
    }
    let d = reps.len();
    let action = (0..group.order())
        .map(|g| {
            let gi = group.inv(g);
            let mut m = DMatrix::zeros(d, d);
            for (j, &rj) in reps.iter().enumerate() {
                // g⁻¹ r_j = r_i h'  ⇒  (g f_i)(r_j) = conj χ(h')
                let x = group.mul(gi, rj);
                let i = coset_of[x];
                let hp = group.mul(group.inv(reps[i]), x);
                m[(j, i)] = chi.value(hp).expect("h' lies in H").conj();
            }
            m
        })
        .collect();
    let mut cyclic = DVector::zeros(d);
    cyclic[0] = ONE;
    InducedRep { rep: UnitaryRep::new(action, d), coset_reps: reps, cyclic }
}

/// Unitary intertwiner from the GNS module of `χ•` onto the induced model.
#[derive(Clone, Debug)]
pub struct Equivalence {
    pub gns: GnsModule,
    pub induced: InducedRep,
    /// `T` with `T π(g) = ρ(g) T` and `T e_e = f_0`.
    pub intertwiner: DMatrix<Complex64>,
    /// Largest residual of the intertwining, unitarity and cyclic-vector identities.
    pub error: f64,
}

pub fn induction_equivalence(group: &FiniteGroup, chi: &Character) -> Result<Equivalence, HarmonicError> {
    let m = StateSample::extended(group, chi);
    let gns = gns_finite(&m, 1e-10)?;
    let induced = ind_discrete(group, chi);
    if gns.dim() != induced.dim() {
        return Err(HarmonicError::Audit(format!("GNS dimension {} but induced dimension {}", gns.dim(), induced.dim())));
    }
    let n = group.order();
    // T u_g = ρ(g) f_0 for all g, and U U* = Λ, so T = W U* Λ⁻¹
    let w = DMatrix::from_fn(induced.dim(), n, |r, g| (induced.rep.matrix(g) * &induced.cyclic)[r]);
    let lam_inv = DMatrix::from_diagonal(&DVector::from_iterator(gns.dim(), gns.eigenvalues.iter().map(|l| Complex64::new(1.0 / l, 0.0))));
    let t = w * gns.classes.adjoint() * lam_inv;
    let mut error = (t.adjoint() * &t - DMatrix::identity(gns.dim(), gns.dim())).norm();
    error = error.max((&t * &gns.cyclic - &induced.cyclic).norm());
    for g in 0..n {
        error = error.max((&t * gns.rep.matrix(g) - induced.rep.matrix(g) * &t).norm());
    }
    Ok(Equivalence { gns, induced, intertwiner: t, error })
}

/// Orthonormal basis of the null space of `a`, from the eigenvectors of `a*a` below `tol`.
fn null_space(a: &DMatrix<Complex64>, tol: f64) -> Vec<DVector<Complex64>> {
    let (vals, vecs) = sorted_eigen(a.adjoint() * a);
    (0..vals.len()).filter(|&i| vals[i] <= tol).map(|i| vecs.column(i).into_owned()).collect()
}

/// Orthonormal basis of `{ψ : ρ(h)ψ = χ(h)ψ for h ∈ H}`.
pub fn isotypic_vectors(group: &FiniteGroup, rep: &UnitaryRep, chi: &Character) -> Vec<DVector<Complex64>> {
    let d = rep.dim();
    let gens = group.generators_of(chi.subgroup());
    if gens.is_empty() {
        return (0..d).map(|i| DVector::from_fn(d, |r, _| if r == i { ONE } else { Complex64::default() })).collect();
    }
    let mut stacked = DMatrix::zeros(d * gens.len(), d);
    for (b, &h) in gens.iter().enumerate() {
        let block = rep.matrix(h) - DMatrix::identity(d, d) * chi.value(h).expect("generator lies in H");
        stacked.view_mut((b * d, 0), (d, d)).copy_from(&block);
    }
    null_space(&stacked, 1e-10)
}

#[derive(Clone, Debug, Serialize)]
pub struct MackeyReport {
    /// Double cosets `HaK` on which `χ(h) = η(a⁻¹ha)` for `h ∈ H ∩ aKa⁻¹`.
    pub bound: usize,
    /// `dim Hom_G(ind χ, ind η)` from the intertwining equations.
    pub exact: usize,
    pub double_cosets: usize,
}

/// Double cosets satisfying the Mackey–Shoda compatibility condition.
pub fn mackey_bound(group: &FiniteGroup, chi: &Character, eta: &Character) -> (usize, usize) {
    let h = chi.subgroup();
    let k = eta.subgroup();
    let dcs = group.double_cosets(h, k);
    let good = dcs
        .iter()
        .filter(|(a, _)| {
            let ai = group.inv(*a);
            h.iter().all(|&x| {
                let y = group.mul(group.mul(ai, x), *a);
                match eta.value(y) {
                    Some(v) => (chi.value(x).expect("x lies in H") - v).norm() <= 1e-9,
                    None => true,
                }
            })
        })
        .count();
    (good, dcs.len())
}

/// Dimension of the space of `T` with `T ρ₁(g) = ρ₂(g) T` over a generating set.
pub fn intertwiner_dim(group: &FiniteGroup, r1: &UnitaryRep, r2: &UnitaryRep) -> usize {
    let (d1, d2) = (r1.dim(), r2.dim());
    let gens = group.generators();
    let nn = d1 * d2;
    if gens.is_empty() {
        return nn;
    }
    // sparse rows of the stacked system in the unknowns vec(T), column-major:
    // vec(T ρ₁) = (ρ₁ᵀ ⊗ I) vec T and vec(ρ₂ T) = (I ⊗ ρ₂) vec T
    let mut rows: Vec<Vec<(usize, Complex64)>> = Vec::with_capacity(nn * gens.len());
    for &g in &gens {
        let (p1, p2) = (r1.matrix(g), r2.matrix(g));
        for c in 0..d1 {
            for r in 0..d2 {
                let mut row: Vec<(usize, Complex64)> = Vec::new();
                for l in 0..d1 {
                    row.push((l * d2 + r, p1[(l, c)]));
                }
                for l in 0..d2 {
                    row.push((c * d2 + l, -p2[(r, l)]));
                }
                row.sort_by_key(|e| e.0);
                let mut merged: Vec<(usize, Complex64)> = Vec::with_capacity(row.len());
                for (j, v) in row {
                    match merged.last_mut() {
                        Some(last) if last.0 == j => last.1 += v,
                        _ => merged.push((j, v)),
                    }
                }
                merged.retain(|e| e.1.norm() > 1e-14);
                if !merged.is_empty() {
                    rows.push(merged);
                }
            }
        }
    }
    // the system splits over connected components of unknowns that share a row
    let mut parent: Vec<usize> = (0..nn).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for row in &rows {
        let root = find(&mut parent, row[0].0);
        for &(j, _) in &row[1..] {
            let other = find(&mut parent, j);
            parent[other] = root;
        }
    }
    let mut local = vec![0usize; nn];
    let mut members: std::collections::BTreeMap<usize, Vec<usize>> = std::collections::BTreeMap::new();
    for j in 0..nn {
        let root = find(&mut parent, j);
        let m = members.entry(root).or_default();
        local[j] = m.len();
        m.push(j);
    }
    let mut blocks: std::collections::BTreeMap<usize, Vec<&Vec<(usize, Complex64)>>> = std::collections::BTreeMap::new();
    for row in &rows {
        blocks.entry(find(&mut parent, row[0].0)).or_default().push(row);
    }
    members
        .iter()
        .map(|(root, cols)| match blocks.get(root) {
            None => cols.len(),
            Some(block) => {
                let mut a = DMatrix::zeros(block.len(), cols.len());
                for (i, row) in block.iter().enumerate() {
                    for &(j, v) in row.iter() {
                        a[(i, local[j])] += v;
                    }
                }
                null_space(&a, 1e-8).len()
            }
        })
        .sum()
}

/// Mackey–Shoda bound against the brute-force intertwining number.
pub fn mackey_shoda(group: &FiniteGroup, chi: &Character, eta: &Character) -> Result<MackeyReport, HarmonicError> {
    let (bound, double_cosets) = mackey_bound(group, chi, eta);
    let exact = intertwiner_dim(group, &ind_discrete(group, chi).rep, &ind_discrete(group, eta).rep);
    if exact > bound {
        return Err(HarmonicError::Audit(format!("intertwining number {exact} exceeds the bound {bound}")));
    }
    Ok(MackeyReport { bound, exact, double_cosets })
}
