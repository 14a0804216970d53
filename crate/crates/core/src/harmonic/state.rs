use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::Serialize;

use super::group::digits;
use super::{Character, FiniteGroup, HarmonicError};

const SYMMETRY_TOL: f64 = 1e-12;

/// Function `m` on a finite group with `m(e) = 1` and `m(g⁻¹) = conj m(g)`.
#[derive(Clone, Debug)]
pub struct StateSample<'g> {
    group: &'g FiniteGroup,
    values: Vec<Complex64>,
}

impl<'g> StateSample<'g> {
    pub fn new(group: &'g FiniteGroup, values: Vec<Complex64>) -> Result<Self, HarmonicError> {
        if values.len() != group.order() {
            return Err(HarmonicError::LengthMismatch(values.len(), group.order()));
        }
        let e = values[group.identity()];
        if (e - 1.0).norm() > SYMMETRY_TOL {
            return Err(HarmonicError::NotAState(format!("m(e) = {e}")));
        }
        for g in 0..group.order() {
            if (values[group.inv(g)] - values[g].conj()).norm() > SYMMETRY_TOL {
                return Err(HarmonicError::NotAState(format!("m(g⁻¹) ≠ conj m(g) at g = {g}")));
            }
        }
        Ok(StateSample { group, values })
    }

    /// `m(g) = (φ, ρ(g)φ)` for a unitary representation given by one matrix per element.
    pub fn from_vector(group: &'g FiniteGroup, action: &[DMatrix<Complex64>], phi: &DVector<Complex64>) -> Result<Self, HarmonicError> {
        if action.len() != group.order() {
            return Err(HarmonicError::LengthMismatch(action.len(), group.order()));
        }
        let norm = phi.norm();
        if norm == 0.0 {
            return Err(HarmonicError::NotAState("zero vector".into()));
        }
        let phi = phi / Complex64::new(norm, 0.0);
        let values: Vec<Complex64> = action.iter().map(|r| phi.dotc(&(r * &phi))).collect();
        // symmetrize the rounding so that the exact symmetry check applies
        let mut values: Vec<Complex64> = (0..group.order()).map(|g| (values[g] + values[group.inv(g)].conj()) * 0.5).collect();
        values[group.identity()] = Complex64::new(1.0, 0.0);
        StateSample::new(group, values)
    }

    /// The zero extension `χ•` of a character of a subgroup.
    pub fn extended(group: &'g FiniteGroup, chi: &Character) -> Self {
        let values = (0..group.order()).map(|g| chi.value(g).unwrap_or_default()).collect();
        StateSample { group, values }
    }

    /// A character of an abelian group given by a dual index (same mixed-radix layout).
    pub fn dual_character(group: &'g FiniteGroup, j: usize) -> Result<Self, HarmonicError> {
        let shape = group.shape().ok_or(HarmonicError::NotCyclicProduct)?.to_vec();
        let values = (0..group.order()).map(|k| pairing(&shape, j, k)).collect();
        Ok(StateSample { group, values })
    }

    pub fn group(&self) -> &'g FiniteGroup {
        self.group
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn value(&self, g: usize) -> Complex64 {
        self.values[g]
    }

    /// Convex combination of states on the same group.
    pub fn mix(states: &[(f64, &StateSample<'g>)]) -> Result<Self, HarmonicError> {
        let group = states.first().ok_or_else(|| HarmonicError::NotAState("empty mixture".into()))?.1.group;
        let mut values = vec![Complex64::default(); group.order()];
        for (w, s) in states {
            for (v, x) in values.iter_mut().zip(&s.values) {
                *v += x * *w;
            }
        }
        StateSample::new(group, values)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GramReport {
    pub min_eigenvalue: f64,
    pub psd: bool,
}

pub(crate) fn gram_matrix(m: &StateSample, subset: &[usize]) -> DMatrix<Complex64> {
    let g = m.group;
    DMatrix::from_fn(subset.len(), subset.len(), |i, j| m.values[g.mul(g.inv(subset[i]), subset[j])])
}

/// Gram matrix `G_{gh} = m(g⁻¹h)` on `subset` and its smallest eigenvalue.
pub fn gram_psd(m: &StateSample, subset: &[usize], tol: f64) -> Result<GramReport, HarmonicError> {
    if let Some(&bad) = subset.iter().find(|&&x| x >= m.group.order()) {
        return Err(HarmonicError::Domain(bad));
    }
    if subset.is_empty() {
        return Ok(GramReport { min_eigenvalue: 0.0, psd: true });
    }
    let min = gram_matrix(m, subset).symmetric_eigenvalues().min();
    Ok(GramReport { min_eigenvalue: min, psd: min >= -tol })
}

#[derive(Clone, Debug, Serialize)]
pub struct Slack {
    pub min_slack: f64,
    pub holds: bool,
}

impl Slack {
    fn new(slacks: impl Iterator<Item = f64>) -> Self {
        let min_slack = slacks.fold(f64::INFINITY, f64::min);
        Slack { min_slack, holds: min_slack >= -SYMMETRY_TOL }
    }
}

/// The three inequalities on a list of pairs, plus the coset property of `{h : m(h) = 1}`.
#[derive(Clone, Debug, Serialize)]
pub struct InequalityReport {
    /// `|m(g)| ≤ 1`
    pub modulus: Slack,
    /// `|m(g) − m(h)| ≤ √(2 Re(1 − m(g⁻¹h)))`
    pub continuity: Slack,
    /// `|m(gh) − m(g)m(h)| ≤ √(1 − |m(g)|²) √(1 − |m(h)|²)`
    pub multiplicativity: Slack,
    pub subgroup_checked: usize,
    pub subgroup_violations: usize,
}

impl InequalityReport {
    pub fn all_hold(&self) -> bool {
        self.modulus.holds && self.continuity.holds && self.multiplicativity.holds && self.subgroup_violations == 0
    }
}

pub fn state_inequalities(m: &StateSample, pairs: &[(usize, usize)]) -> InequalityReport {
    let g = m.group;
    let v = |x: usize| m.values[x];
    let modulus = Slack::new(pairs.iter().flat_map(|&(a, b)| [1.0 - v(a).norm(), 1.0 - v(b).norm()]));
    let continuity = Slack::new(pairs.iter().map(|&(a, b)| {
        let bound = (2.0 * (1.0 - v(g.mul(g.inv(a), b))).re).max(0.0).sqrt();
        bound - (v(a) - v(b)).norm()
    }));
    let multiplicativity = Slack::new(pairs.iter().map(|&(a, b)| {
        let ra = (1.0 - v(a).norm_sqr()).max(0.0).sqrt();
        let rb = (1.0 - v(b).norm_sqr()).max(0.0).sqrt();
        ra * rb - (v(g.mul(a, b)) - v(a) * v(b)).norm()
    }));
    let mut subgroup_checked = 0;
    let mut subgroup_violations = 0;
    for &(a, b) in pairs {
        if (v(b) - 1.0).norm() <= 1e-12 {
            subgroup_checked += 1;
            if (v(g.mul(a, b)) - v(a)).norm() > 1e-9 {
                subgroup_violations += 1;
            }
        }
    }
    InequalityReport { modulus, continuity, multiplicativity, subgroup_checked, subgroup_violations }
}

fn pairing(shape: &[usize], j: usize, k: usize) -> Complex64 {
    let (dj, dk) = (digits(j, shape), digits(k, shape));
    let phase: f64 = dj.iter().zip(&dk).zip(shape).map(|((a, b), n)| ((a * b) % n) as f64 / *n as f64).sum();
    Complex64::from_polar(1.0, std::f64::consts::TAU * phase)
}

#[derive(Clone, Debug, Serialize)]
pub struct ConcentrationReport {
    /// Spectral mass at each dual index.
    pub spectrum: Vec<f64>,
    pub mass_outside: f64,
    pub concentrated: bool,
}

/// Discrete Bochner: the spectral measure of a state on `Z/n1 × … × Z/nk`, and whether
/// it is carried by `allowed` (dual indices in the same mixed-radix layout as elements).
pub fn concentration_check(m: &StateSample, allowed: &[usize]) -> Result<ConcentrationReport, HarmonicError> {
    let shape = m.group.shape().ok_or(HarmonicError::NotCyclicProduct)?.to_vec();
    let n = m.group.order();
    if let Some(&bad) = allowed.iter().find(|&&j| j >= n) {
        return Err(HarmonicError::Domain(bad));
    }
    let mut spectrum = Vec::with_capacity(n);
    for j in 0..n {
        let s: Complex64 = (0..n).map(|k| m.values[k] * pairing(&shape, j, k).conj()).sum::<Complex64>() / n as f64;
        if s.im.abs() > 1e-10 || s.re < -1e-10 {
            return Err(HarmonicError::NotPositive(s.re.min(-s.im.abs())));
        }
        spectrum.push(s.re.max(0.0));
    }
    let total: f64 = spectrum.iter().sum();
    if (total - 1.0).abs() > 1e-10 {
        return Err(HarmonicError::NotAState(format!("spectral mass {total}")));
    }
    let mass_outside: f64 = spectrum.iter().enumerate().filter(|(j, _)| !allowed.contains(j)).map(|(_, p)| p).sum();
    Ok(ConcentrationReport { spectrum, mass_outside, concentrated: mass_outside <= 1e-9 })
}
