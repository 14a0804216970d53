//! Weights, dominance and convexity for `u(n)`: Weyl orbits and hulls, weight
//! multisets, the quantum-module criterion, Kostant convexity, partition-function
//! inequalities and highest-weight states.

mod kostant;
mod partition;
mod states;

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::rational::Q;

pub use kostant::{conjugated_diagonal, kostant_ascent, kostant_sample, log_rho, log_rho_gradient, AscentReport, ProjectorPoint, SampleReport, Space};
pub use partition::{oscillator_partition, partition_check, partition_crossover, orbit_volume, PartitionReport};
pub use states::{highest_weight_state, HADRONS};

/// Integer weight `(λ1, …, λn)` of the diagonal torus of `U(n)`.
pub type WeightVector = Vec<i64>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CompactError {
    #[error("weight {0:?} is not weakly decreasing")]
    NonDominant(Vec<i64>),
    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("torus element is singular: some root pairing vanishes")]
    SingularZ,
    #[error("matrix is not unitary within tolerance ({0:e})")]
    NonUnitary(f64),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("ascent did not converge in {iterations} iterations (best residual {best_residual:e})")]
    NotConverged { iterations: usize, best_residual: f64 },
    #[error("dominance and hull criteria disagree for λ = {0:?}, μ = {1:?}")]
    Disagreement(Vec<i64>, Vec<i64>),
}

pub fn is_dominant(w: &[i64]) -> bool {
    w.windows(2).all(|p| p[0] >= p[1])
}

fn require_dominant(w: &[i64]) -> Result<(), CompactError> {
    if is_dominant(w) {
        Ok(())
    } else {
        Err(CompactError::NonDominant(w.to_vec()))
    }
}

fn require_len(a: usize, b: usize) -> Result<(), CompactError> {
    if a == b {
        Ok(())
    } else {
        Err(CompactError::LengthMismatch(a, b))
    }
}

/// `λ ≤ μ`: every partial sum of `λ` is at most that of `μ`, with equal totals.
pub fn dominance_leq(lambda: &[i64], mu: &[i64]) -> Result<bool, CompactError> {
    require_len(lambda.len(), mu.len())?;
    require_dominant(lambda)?;
    require_dominant(mu)?;
    Ok(majorized(lambda, mu))
}

fn majorized(lambda: &[i64], mu: &[i64]) -> bool {
    let (mut a, mut b) = (0, 0);
    for (l, m) in lambda.iter().zip(mu) {
        a += l;
        b += m;
        if a > b {
            return false;
        }
    }
    a == b
}

/// Distinct permutations of `mu`, in decreasing lexicographic order.
pub fn weyl_orbit<T: Ord + Clone>(mu: &[T]) -> Vec<Vec<T>> {
    let mut cur: Vec<T> = mu.to_vec();
    cur.sort_by(|a, b| b.cmp(a));
    let mut out = vec![cur.clone()];
    // previous permutation in lexicographic order, starting from the largest
    loop {
        let Some(i) = (1..cur.len()).rev().find(|&i| cur[i - 1] > cur[i]) else {
            return out;
        };
        let j = (i..cur.len()).rev().find(|&j| cur[j] < cur[i - 1]).expect("a smaller entry exists");
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
}

/// `p ∈ conv(W(μ))`, decided exactly by majorization.
pub fn hull_membership(p: &[Q], mu: &[i64]) -> Result<bool, CompactError> {
    require_len(p.len(), mu.len())?;
    let mut sorted_mu = mu.to_vec();
    sorted_mu.sort_by(|a, b| b.cmp(a));
    let mut sorted: Vec<Q> = p.to_vec();
    sorted.sort_by(|a, b| b.cmp(a));
    let (mut a, mut b) = (Q::zero(), Q::zero());
    for (x, m) in sorted.iter().zip(&sorted_mu) {
        a += x;
        b += Q::from_integer((*m).into());
        if a > b {
            return Ok(false);
        }
    }
    Ok(a == b)
}

/// Smallest majorization margin of `p` against `spectrum`: the minimum over `k < n` of
/// the gap between the top-`k` sums, and minus the mismatch of totals.
pub fn majorization_slack(p: &[f64], spectrum: &[f64]) -> f64 {
    let mut a: Vec<f64> = p.to_vec();
    let mut b: Vec<f64> = spectrum.to_vec();
    a.sort_by(|x, y| y.total_cmp(x));
    b.sort_by(|x, y| y.total_cmp(x));
    let (mut sa, mut sb) = (0.0, 0.0);
    let mut slack = f64::INFINITY;
    for k in 0..a.len() {
        sa += a[k];
        sb += b[k];
        if k + 1 < a.len() {
            slack = slack.min(sb - sa);
        }
    }
    slack.min(-(sa - sb).abs())
}

/// Gelfand–Tsetlin patterns with top row `lambda`, each as its list of rows (top first).
pub fn gt_patterns(lambda: &[i64]) -> Result<Vec<Vec<Vec<i64>>>, CompactError> {
    require_dominant(lambda)?;
    let mut out = Vec::new();
    let mut rows = vec![lambda.to_vec()];
    extend_patterns(&mut rows, &mut out);
    Ok(out)
}

fn extend_patterns(rows: &mut Vec<Vec<i64>>, out: &mut Vec<Vec<Vec<i64>>>) {
    let top = rows.last().expect("at least one row").clone();
    if top.len() <= 1 {
        out.push(rows.clone());
        return;
    }
    let mut next = vec![0; top.len() - 1];
    fill_row(&top, 0, &mut next, rows, out);
}

fn fill_row(top: &[i64], i: usize, next: &mut Vec<i64>, rows: &mut Vec<Vec<i64>>, out: &mut Vec<Vec<Vec<i64>>>) {
    if i == next.len() {
        rows.push(next.clone());
        extend_patterns(rows, out);
        rows.pop();
        return;
    }
    // interlacing: top[i] ≥ next[i] ≥ top[i+1]
    for v in (top[i + 1]..=top[i]).rev() {
        next[i] = v;
        fill_row(top, i + 1, next, rows, out);
    }
}

/// Weight multiset of the irreducible module with highest weight `lambda`.
///
/// The weight of a pattern has entries `rowsum_k − rowsum_{k−1}`, indexed by bottom row `k = 1..n`.
pub fn weights_of_irrep(lambda: &[i64]) -> Result<BTreeMap<Vec<i64>, usize>, CompactError> {
    let mut out = BTreeMap::new();
    for pat in gt_patterns(lambda)? {
        let n = pat.len();
        let sums: Vec<i64> = pat.iter().rev().map(|r| r.iter().sum()).collect();
        let w: Vec<i64> = (0..n).map(|k| sums[k] - if k == 0 { 0 } else { sums[k - 1] }).collect();
        *out.entry(w).or_insert(0) += 1;
    }
    Ok(out)
}

/// Dimension of the irreducible module: the number of Gelfand–Tsetlin patterns.
pub fn irrep_dim(lambda: &[i64]) -> Result<usize, CompactError> {
    Ok(weights_of_irrep(lambda)?.values().sum())
}

/// Quantum criterion by dominance.
pub fn quantum_check(lambda: &[i64], mu: &[i64]) -> Result<bool, CompactError> {
    dominance_leq(lambda, mu)
}

/// Quantum criterion by the weight hull: every weight of `H(λ)` lies in `conv(W(μ))`.
pub fn quantum_check_by_hull(lambda: &[i64], mu: &[i64]) -> Result<bool, CompactError> {
    require_len(lambda.len(), mu.len())?;
    require_dominant(mu)?;
    for w in weights_of_irrep(lambda)?.keys() {
        let p: Vec<Q> = w.iter().map(|&v| Q::from_integer(v.into())).collect();
        if !hull_membership(&p, mu)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Both criteria, failing if they disagree.
pub fn quantum_check_verified(lambda: &[i64], mu: &[i64]) -> Result<bool, CompactError> {
    let a = quantum_check(lambda, mu)?;
    if a != quantum_check_by_hull(lambda, mu)? {
        return Err(CompactError::Disagreement(lambda.to_vec(), mu.to_vec()));
    }
    Ok(a)
}

/// All dominant `λ ≤ μ`, by decreasing first entry and then increasing lexicographic tail.
///
/// Entries of such `λ` lie in `[μn, μ1]`, which bounds the search.
pub fn list_quantum_modules(mu: &[i64]) -> Result<Vec<WeightVector>, CompactError> {
    require_dominant(mu)?;
    let Some((&hi, &lo)) = mu.first().zip(mu.last()) else {
        return Ok(vec![Vec::new()]);
    };
    let total: i64 = mu.iter().sum();
    let n = mu.len();
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    search(mu, n, total, hi, lo, 0, &mut cur, &mut out);
    out.sort_by(|a, b| b[0].cmp(&a[0]).then_with(|| a[1..].cmp(&b[1..])));
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn search(mu: &[i64], n: usize, total: i64, cap: i64, lo: i64, partial: i64, cur: &mut Vec<i64>, out: &mut Vec<WeightVector>) {
    let k = cur.len();
    if k == n {
        if partial == total {
            out.push(cur.clone());
        }
        return;
    }
    let mu_partial: i64 = mu[..=k].iter().sum();
    let remaining = (n - k - 1) as i64;
    for v in (lo..=cap).rev() {
        let p = partial + v;
        // partial-sum bound, and the tail must still be able to reach the total
        if p > mu_partial || p + remaining * v < total {
            continue;
        }
        cur.push(v);
        search(mu, n, total, v, lo, p, cur, out);
        cur.pop();
    }
}
