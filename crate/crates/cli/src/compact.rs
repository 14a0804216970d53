use nalgebra::DMatrix;
use num_complex::Complex64;
use orbitkit::compact_reps::{
    highest_weight_state, is_dominant, kostant_ascent, kostant_sample, list_quantum_modules, partition_check,
    partition_crossover, weyl_orbit, Space,
};
use orbitkit::rng;
use serde_json::json;

use crate::io::{self, input};
use crate::Ctx;

fn dominant(name: &str, text: &str) -> anyhow::Result<Vec<i64>> {
    let w = io::parse_ints(name, text)?;
    if w.is_empty() {
        return Err(input(format!("--{name}: empty weight")));
    }
    if !is_dominant(&w) {
        return Err(input(format!("--{name}: weight {w:?} is not weakly decreasing")));
    }
    Ok(w)
}

fn join(w: &[i64]) -> String {
    w.iter().map(i64::to_string).collect::<Vec<_>>().join(",")
}

fn complex(z: Complex64) -> serde_json::Value {
    json!({ "re": z.re, "im": z.im })
}

pub fn quantum_list(ctx: &Ctx, mu: &str) -> anyhow::Result<bool> {
    let mu = dominant("mu", mu)?;
    let list = list_quantum_modules(&mu).map_err(input)?;
    let text: String = list.iter().map(|l| join(l) + "\n").collect();
    io::emit(ctx, &text)?;
    Ok(true)
}

pub fn convexity(ctx: &Ctx, spectrum: &str, samples: usize, seed: u64) -> anyhow::Result<bool> {
    let spectrum = io::parse_reals("spectrum", spectrum)?;
    let r = kostant_sample(&spectrum, samples, seed, ctx.tol).map_err(input)?;
    io::print_json(&serde_json::to_value(&r)?);
    Ok(r.pass_fraction == 1.0)
}

pub fn ascent(n: usize, k: usize, coeffs: &str, residual: f64) -> anyhow::Result<bool> {
    if !(residual > 0.0) {
        return Err(input("--residual must be positive"));
    }
    if n == 0 || k == 0 || k >= n {
        return Err(input("need 1 ≤ k < n"));
    }
    let coeffs = io::parse_reals("coeffs", coeffs)?;
    let pi: Vec<i64> = (0..n).map(|i| (i < k) as i64).collect();
    let mut vertices = weyl_orbit(&pi);
    vertices.sort();
    let space = if k == 1 { Space::Projective } else { Space::Grassmannian(k) };
    let r = kostant_ascent(&vertices, &coeffs, space, residual).map_err(|e| match e {
        orbitkit::compact_reps::CompactError::NotConverged { .. } => anyhow::Error::new(e),
        other => input(other),
    })?;
    io::print_json(&json!({
        "vertices": vertices,
        "target": r.target,
        "moment": r.moment,
        "residual": r.residual,
        "iterations": r.iterations,
        "log_rho": r.log_rho,
    }));
    Ok(r.residual < residual)
}

pub fn partition(_ctx: &Ctx, mu: &str, lambda: Option<&str>, z: &str, t_max: Option<f64>) -> anyhow::Result<bool> {
    let mu = dominant("mu", mu)?;
    let lambda = match lambda {
        Some(l) => dominant("lambda", l)?,
        None => mu.clone(),
    };
    let z = io::parse_reals("z", z)?;
    if let Some(t_max) = t_max {
        let t = partition_crossover(&lambda, &mu, &z, t_max, 0.25).map_err(input)?;
        io::print_json(&json!({ "crossover": t }));
        return Ok(true);
    }
    let r = partition_check(&lambda, &mu, &z).map_err(input)?;
    io::print_json(&serde_json::to_value(&r)?);
    Ok(r.holds)
}

pub fn state(ctx: &Ctx, mu: &str, samples: usize, seed: u64) -> anyhow::Result<bool> {
    let mu = dominant("mu", mu)?;
    let n = mu.len();
    let at_e = highest_weight_state(&mu, &DMatrix::identity(n, n)).map_err(input)?;
    let values: Vec<Complex64> = (0..samples)
        .map(|i| {
            let g = rng::haar_unitary(n, &mut rng::stream(seed, i as u64));
            highest_weight_state(&mu, &g).map_err(input)
        })
        .collect::<anyhow::Result<_>>()?;
    let max_abs = values.iter().map(|v| v.norm()).fold(0.0, f64::max);
    io::print_json(&json!({
        "identity": complex(at_e),
        "values": values.iter().map(|v| complex(*v)).collect::<Vec<_>>(),
        "max_abs": max_abs,
    }));
    Ok((at_e - 1.0).norm() <= ctx.tol && max_abs <= 1.0 + ctx.tol)
}
