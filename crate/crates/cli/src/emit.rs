use std::collections::BTreeSet;

use orbitkit::compact_reps::{hull_membership, irrep_dim, is_dominant, list_quantum_modules, weights_of_irrep, weyl_orbit};
use orbitkit::orbit_geometry::{euclidean_plane_basis, matrix_coadjoint_cloud};
use orbitkit::rational::Q;
use serde_json::json;

use crate::io::{self, input};
use crate::Ctx;

pub fn fig1(ctx: &Ctx, x: &str) -> anyhow::Result<bool> {
    let x = io::parse_reals("x", x)?;
    if x.len() != 3 {
        return Err(input(format!("--x: expected 3 coordinates (j, p1, p2), got {}", x.len())));
    }
    let angles: Vec<f64> = (0..24).map(|i| i as f64 * std::f64::consts::TAU / 24.0).collect();
    let shifts: Vec<f64> = (-4..=4).map(|i| i as f64 * 0.5).collect();
    let cloud = matrix_coadjoint_cloud(&euclidean_plane_basis(), &x, &[angles, shifts.clone(), shifts]).map_err(input)?;
    let header = ["j", "p1", "p2"].map(String::from);
    io::emit(ctx, &io::csv(&header, cloud.iter().map(|y| y.iter().map(|v| io::float(*v)).collect())))?;
    let radii: Vec<f64> = cloud.iter().map(|y| y[1].hypot(y[2])).collect();
    let lo = radii.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = radii.iter().copied().fold(0.0, f64::max);
    if ctx.output.is_some() {
        io::print_json(&json!({ "points": cloud.len(), "radius_min": lo, "radius_max": hi }));
    }
    Ok(hi - lo <= ctx.tol * hi.max(1.0))
}

/// Whether `p` lies on a proper face of the hull of the permutations of `mu`.
fn on_boundary(p: &[i64], mu: &[i64]) -> bool {
    let n = mu.len();
    (1..(1u32 << n) - 1).any(|mask| {
        let size = mask.count_ones() as usize;
        let top: i64 = mu[..size].iter().sum();
        let bottom: i64 = mu[n - size..].iter().sum();
        let s: i64 = (0..n).filter(|i| mask & (1 << i) != 0).map(|i| p[i]).sum();
        top != bottom && s == top
    })
}

/// Integer points with entries in `[lo, hi]` and coordinate sum `total`, lexicographically.
fn lattice_slice(n: usize, lo: i64, hi: i64, total: i64) -> Vec<Vec<i64>> {
    fn rec(n: usize, lo: i64, hi: i64, left: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        let rest = (n - cur.len()) as i64;
        if rest == 0 {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for v in lo..=hi {
            let after = left - v;
            if after < lo * (rest - 1) || after > hi * (rest - 1) {
                continue;
            }
            cur.push(v);
            rec(n, lo, hi, after, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, lo, hi, total, &mut Vec::with_capacity(n), &mut out);
    out
}

pub fn fig2(ctx: &Ctx, mu: &str) -> anyhow::Result<bool> {
    let mu = io::parse_ints("mu", mu)?;
    if mu.is_empty() || !is_dominant(&mu) {
        return Err(input(format!("--mu: weight {mu:?} is not weakly decreasing")));
    }
    if mu.len() > 6 {
        return Err(input("--mu: at most 6 entries are supported"));
    }
    let n = mu.len();
    let vertices = weyl_orbit(&mu);
    let vertex_set: BTreeSet<&Vec<i64>> = vertices.iter().collect();
    let mut interior = Vec::new();
    let mut boundary = Vec::new();
    for p in lattice_slice(n, mu[n - 1], mu[0], mu.iter().sum()) {
        let pq: Vec<Q> = p.iter().map(|&v| Q::from_integer(v.into())).collect();
        if vertex_set.contains(&p) || !hull_membership(&pq, &mu).map_err(input)? {
            continue;
        }
        if on_boundary(&p, &mu) {
            boundary.push(p);
        } else {
            interior.push(p);
        }
    }
    let modules = list_quantum_modules(&mu).map_err(input)?;

    let mut header: Vec<String> = ["layer", "module", "multiplicity"].map(String::from).to_vec();
    header.extend((1..=n).map(|i| format!("w{i}")));
    let row = |layer: &str, module: String, mult: usize, w: &[i64]| -> Vec<String> {
        let mut r = vec![layer.to_string(), module, mult.to_string()];
        r.extend(w.iter().map(i64::to_string));
        r
    };
    let mut rows = Vec::new();
    rows.extend(vertices.iter().map(|w| row("vertex", String::new(), 1, w)));
    rows.extend(interior.iter().map(|w| row("interior", String::new(), 1, w)));
    rows.extend(boundary.iter().map(|w| row("boundary", String::new(), 1, w)));
    for (i, lambda) in modules.iter().enumerate() {
        rows.push(row("module", i.to_string(), irrep_dim(lambda).map_err(input)?, lambda));
        for (w, m) in weights_of_irrep(lambda).map_err(input)? {
            rows.push(row("weight", i.to_string(), m, &w));
        }
    }
    io::emit(ctx, &io::csv(&header, rows))?;
    if ctx.output.is_some() {
        io::print_json(&json!({
            "vertices": vertices.len(),
            "interior": interior.len(),
            "boundary": boundary.len(),
            "modules": modules,
        }));
    }
    Ok(true)
}
