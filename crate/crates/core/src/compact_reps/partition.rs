use serde::Serialize;

use super::{dominance_leq, weights_of_irrep, weyl_orbit, CompactError};

/// Quantum versus classical partition function at a regular torus element `Z`.
///
/// `lhs = Tr(e^{−H_Z})/dim` and `rhs = ∫_X e^{−⟨x,Z⟩}dx / vol(X)`, with Liouville measure
/// normalized so that `vol(X) = ∏ ⟨μ,α⟩/⟨ρ,α⟩` over positive roots with `⟨μ,α⟩ ≠ 0`.
#[derive(Clone, Debug, Serialize)]
pub struct PartitionReport {
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
    pub dim: usize,
    pub vol: f64,
}

fn pair(a: &[i64], z: &[f64]) -> f64 {
    a.iter().zip(z).map(|(x, y)| *x as f64 * y).sum()
}

/// Symplectic volume of `X(μ)` in the normalization above.
pub fn orbit_volume(mu: &[i64]) -> f64 {
    let n = mu.len();
    let mut v = 1.0;
    for i in 0..n {
        for j in i + 1..n {
            if mu[i] != mu[j] {
                v *= (mu[i] - mu[j]) as f64 / (j - i) as f64;
            }
        }
    }
    v
}

/// Fixed-point sum `Σ_{p∈W(μ)} e^{−⟨p,Z⟩ − shift} / ∏_{α∈R_p} ⟨α,Z⟩` with
/// `R_p = {α : ⟨p, α∨⟩ < 0}`.
fn harish_chandra_scaled(mu: &[i64], z: &[f64], shift: f64) -> f64 {
    let n = mu.len();
    weyl_orbit(mu)
        .iter()
        .map(|p| {
            let mut denom = 1.0;
            for i in 0..n {
                for j in 0..n {
                    if i != j && p[i] < p[j] {
                        denom *= z[i] - z[j];
                    }
                }
            }
            (-pair(p, z) - shift).exp() / denom
        })
        .sum()
}

pub fn partition_check(lambda: &[i64], mu: &[i64], z: &[f64]) -> Result<PartitionReport, CompactError> {
    if z.len() != mu.len() {
        return Err(CompactError::LengthMismatch(z.len(), mu.len()));
    }
    if !dominance_leq(lambda, mu)? {
        return Err(CompactError::Invalid(format!("{lambda:?} is not dominated by {mu:?}")));
    }
    for i in 0..z.len() {
        for j in i + 1..z.len() {
            if z[i] == z[j] || !(z[i] - z[j]).is_finite() {
                return Err(CompactError::SingularZ);
            }
        }
    }
    let weights = weights_of_irrep(lambda)?;
    let orbit = weyl_orbit(mu);
    // common scale keeps both sides finite at large |Z|
    let shift = weights.keys().chain(orbit.iter()).map(|w| -pair(w, z)).fold(f64::NEG_INFINITY, f64::max);
    let dim: usize = weights.values().sum();
    let lhs_s = weights.iter().map(|(w, m)| *m as f64 * (-pair(w, z) - shift).exp()).sum::<f64>() / dim as f64;
    let vol = orbit_volume(mu);
    let rhs_s = harish_chandra_scaled(mu, z, shift) / vol;
    let scale = shift.exp();
    Ok(PartitionReport { lhs: lhs_s * scale, rhs: rhs_s * scale, holds: lhs_s >= rhs_s, dim, vol })
}

/// First `t` on the grid `t_step, 2·t_step, …, t_max` at which the check fails for
/// `Z = −t·A`, or `None` if it holds throughout.
pub fn partition_crossover(lambda: &[i64], mu: &[i64], a: &[f64], t_max: f64, t_step: f64) -> Result<Option<f64>, CompactError> {
    if t_step <= 0.0 || t_max < t_step {
        return Err(CompactError::Invalid("need 0 < t_step ≤ t_max".into()));
    }
    let steps = (t_max / t_step).floor() as usize;
    for k in 1..=steps {
        let t = k as f64 * t_step;
        let z: Vec<f64> = a.iter().map(|v| -v * t).collect();
        if !partition_check(lambda, mu, &z)?.holds {
            return Ok(Some(t));
        }
    }
    Ok(None)
}

/// The oscillator analogue: `Σ_{n≥0} e^{−β(n+s)}` against `(1/2π)∫ e^{−β(p²+q²)/2} = 1/β`,
/// with `s = ½` when `half_shift` is set.
pub fn oscillator_partition(beta: f64, half_shift: bool) -> (f64, f64) {
    let s = if half_shift { 0.5 } else { 0.0 };
    ((-beta * s).exp() / (1.0 - (-beta).exp()), 1.0 / beta)
}
